#include "dfactor/config.h"

#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <yaml-cpp/yaml.h>

#include "dfactor/errors.h"

namespace dfactor {

namespace {

[[noreturn]] void invalid(const YAML::Node& node, const std::string& msg) {
  const auto mark = node.Mark();
  if (mark.is_null()) throw ValidationError(msg);
  throw ValidationError(fmt::format("line {}: {}", mark.line + 1, msg));
}

double real_of(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) invalid(node, what + " must be a number");
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    invalid(node, fmt::format("{} must be a number, got '{}'", what, node.Scalar()));
  }
}

cplx complex_of(const YAML::Node& node, const std::string& what) {
  if (node.IsScalar()) return {real_of(node, what), 0.0};
  if (!node.IsSequence() || node.size() != 2) invalid(node, what + " must be [re, im]");
  return {real_of(node[0], what), real_of(node[1], what)};
}

std::vector<double> reals_of(const YAML::Node& node, const std::string& what) {
  std::vector<double> out;
  if (node.IsScalar()) {
    out.push_back(real_of(node, what));
    return out;
  }
  if (!node.IsSequence()) invalid(node, what + " must be a list of numbers");
  for (const auto& item : node) out.push_back(real_of(item, what));
  return out;
}

FunctionalEquationDatum datum_of(const YAML::Node& node) {
  if (!node.IsMap()) invalid(node, "datum must be a mapping");
  const std::string name = node["name"] ? node["name"].as<std::string>() : "custom";
  if (!node["Q"]) invalid(node, "datum needs Q");
  if (!node["gamma_factors"] || !node["gamma_factors"].IsSequence()) {
    invalid(node, "datum needs a gamma_factors list");
  }
  const double Q = real_of(node["Q"], "Q");
  const cplx omega = node["omega"] ? complex_of(node["omega"], "omega") : cplx(1.0, 0.0);
  std::vector<GammaFactor> factors;
  for (const auto& f : node["gamma_factors"]) {
    if (!f.IsMap() || !f["lambda"]) invalid(f, "gamma factor needs lambda and mu");
    const cplx mu = f["mu"] ? complex_of(f["mu"], "mu") : cplx(0.0, 0.0);
    factors.push_back({real_of(f["lambda"], "lambda"), mu});
  }
  try {
    return FunctionalEquationDatum(name, Q, omega, std::move(factors));
  } catch (const InvalidDatum& e) {
    invalid(node, e.what());
  }
}

void validate_windows(const YAML::Node& node, const std::vector<Window>& windows) {
  for (std::size_t i = 0; i < windows.size(); ++i) {
    const Window& w = windows[i];
    if (w.lo && !(w.hi > *w.lo)) {
      invalid(node, fmt::format("window {} is empty or reversed", i + 1));
    }
    if (i == 0) continue;
    const Window& prev = windows[i - 1];
    if (!w.lo) invalid(node, "only the first window may start at t0");
    if (*w.lo < prev.hi) {
      invalid(node, fmt::format("windows {} and {} overlap or are out of order", i, i + 1));
    }
  }
}

}  // namespace

LFunction RunConfig::function() const {
  if (catalog) return catalog_get(*catalog);
  if (!coefficients.empty()) return coefficient_list_function(*datum, coefficients, growth_A);
  const double A = growth_A.value_or(datum->degree() / 4.0);
  return LFunction(*datum, EvaluatorKind::DeltaOnly, {}, {}, A);
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(fmt::format("line {}, column {}: {}", e.mark.line + 1, e.mark.column + 1,
                                 e.msg));
  }
  if (!root.IsMap()) throw ParseError("config must be a mapping at top level");

  RunConfig cfg;
  try {
    if (root["catalog"] && root["datum"]) invalid(root["datum"], "give either catalog or datum");
    if (root["catalog"]) {
      cfg.catalog = root["catalog"].as<std::string>();
      try {
        catalog_get(*cfg.catalog);
      } catch (const UnknownEntry& e) {
        invalid(root["catalog"], e.what());
      }
    } else if (root["datum"]) {
      cfg.datum = datum_of(root["datum"]);
    } else {
      throw ValidationError("config needs a catalog name or a datum");
    }
    if (const auto c = root["coefficients"]) {
      if (cfg.catalog) invalid(c, "coefficients apply only to an inline datum");
      if (!c.IsSequence() || c.size() == 0) invalid(c, "coefficients must be a nonempty list");
      for (const auto& v : c) cfg.coefficients.push_back(complex_of(v, "coefficient"));
    }
    if (const auto g = root["growth_A"]) {
      cfg.growth_A = real_of(g, "growth_A");
      if (*cfg.growth_A < 0.0) invalid(g, "growth_A must be nonnegative");
    }
    if (const auto a = root["a"]) {
      cfg.a = complex_of(a, "a");
      if (cfg.a == cplx(0.0, 0.0)) invalid(a, "a must be nonzero");
    }
    if (const auto w = root["windows"]) {
      if (!w.IsSequence()) invalid(w, "windows must be a list of [lo, hi]");
      for (const auto& item : w) {
        if (!item.IsSequence() || item.size() != 2) invalid(item, "window must be [lo, hi]");
        Window win;
        if (item[0].IsScalar() && item[0].Scalar() == "t0") {
          win.lo.reset();
        } else {
          win.lo = real_of(item[0], "window start");
        }
        win.hi = real_of(item[1], "window end");
        cfg.windows.push_back(win);
      }
      validate_windows(w, cfg.windows);
    }
    if (const auto T = root["T"]) {
      cfg.T_grid = reals_of(T, "T");
      for (double v : cfg.T_grid) {
        if (!(v >= 3.0)) invalid(T, fmt::format("T = {} must be at least 3", v));
      }
    }
    if (const auto x = root["x"]) {
      cfg.x_grid = reals_of(x, "x");
      for (double v : cfg.x_grid) {
        if (v == 1.0) invalid(x, "x grid must exclude 1");
        if (!(v > 0.0)) invalid(x, fmt::format("x = {} must be positive", v));
      }
    }
    if (const auto f = root["T_prime_factor"]) {
      cfg.T_prime_factor = real_of(f, "T_prime_factor");
      if (!(cfg.T_prime_factor > 1.0 && cfg.T_prime_factor <= 2.0)) {
        invalid(f, "T_prime_factor must lie in (1, 2]");
      }
    }
    if (const auto y = root["y"]) {
      if (!(y.IsScalar() && y.Scalar() == "psi")) {
        cfg.y = real_of(y, "y");
        if (*cfg.y < 2.0) invalid(y, "y must be at least 2");
      }
    }
    if (const auto al = root["alpha"]) {
      cfg.alpha_grid = reals_of(al, "alpha");
      for (double v : cfg.alpha_grid) {
        if (v == 0.0) invalid(al, "alpha must be nonzero");
      }
    }
    if (const auto k = root["k_max"]) {
      cfg.k_max = k.as<long>();
      if (cfg.k_max < 1) invalid(k, "k_max must be positive");
    }
    if (const auto pts = root["points"]) {
      if (!pts.IsSequence()) invalid(pts, "points must be a list of [sigma, t]");
      for (const auto& p : pts) {
        const cplx s = complex_of(p, "point");
        cfg.points.emplace_back(s.real(), s.imag());
      }
    }
    if (const auto tol = root["tol"]) {
      cfg.tol = real_of(tol, "tol");
      if (!(cfg.tol >= 1e-12)) invalid(tol, "tol must be at least 1e-12");
    }
    if (const auto c = root["certify"]) cfg.certify = c.as<bool>();
    if (const auto t0 = root["t0"]) {
      cfg.t0 = real_of(t0, "t0");
      if (!(*cfg.t0 > 0.0)) invalid(t0, "t0 must be positive");
    }
    if (const auto th = root["threads"]) {
      const long n = th.as<long>();
      if (n < 1) invalid(th, "threads must be positive");
      cfg.threads = static_cast<unsigned>(n);
    }
    if (const auto out = root["output"]) {
      if (!out.IsMap()) invalid(out, "output must be a mapping with path and format");
      if (out["path"]) cfg.output_path = out["path"].as<std::string>();
      if (out["format"]) {
        const std::string f = out["format"].as<std::string>();
        if (f == "csv") {
          cfg.format = OutputFormat::Csv;
        } else if (f == "json") {
          cfg.format = OutputFormat::Json;
        } else {
          invalid(out["format"], fmt::format("unknown output format '{}'", f));
        }
      }
    }
  } catch (const YAML::Exception& e) {
    throw ValidationError(fmt::format("line {}: {}", e.mark.line + 1, e.msg));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot read config '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace dfactor
