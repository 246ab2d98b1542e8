#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfactor/fe_core.h"
#include "dfactor/lfun.h"

namespace dfactor {

/// Height window; lo unset means "start at t0".
struct Window {
  std::optional<double> lo;
  double hi = 0.0;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  // Exactly one of catalog / datum is set.
  std::optional<std::string> catalog;
  std::optional<FunctionalEquationDatum> datum;
  std::vector<cplx> coefficients;  // coefficient-list entries only
  std::optional<double> growth_A;

  cplx a{1.0, 0.0};
  std::vector<Window> windows;
  std::vector<double> T_grid;
  std::vector<double> x_grid;
  double T_prime_factor = 2.0;
  std::optional<double> y;  // Landau y(T); psi(T) when unset
  std::vector<double> alpha_grid;
  long k_max = 3;
  std::vector<ComplexPoint> points;  // eval-delta
  double tol = 1e-10;
  bool certify = true;
  std::optional<double> t0;
  unsigned threads = 1;

  std::string output_path;
  OutputFormat format = OutputFormat::Csv;

  /// The L-function this config describes (catalog entry or inline datum).
  LFunction function() const;
};

/// Parses YAML. Complex numbers are [re, im]; windows are [lo, hi] with lo
/// possibly the string "t0". Throws ParseError on malformed text and
/// ValidationError (with the offending line) on invalid content.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace dfactor
