#include <sstream>

#include "doctest.h"
#include "dfactor/commands.h"
#include "dfactor/config.h"
#include "dfactor/errors.h"

using namespace dfactor;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return std::string(e.kind()) + ": " + e.what();
  }
  return "";
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& cmd, const std::string& text) {
  std::ostringstream out, err;
  const int code = run_command(cmd, parse_config(text), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal config") {
  const RunConfig cfg = parse_config("catalog: zeta\na: [2, 0]\n");
  REQUIRE(cfg.catalog);
  CHECK(*cfg.catalog == "zeta");
  CHECK(cfg.a == cplx(2, 0));
  CHECK(cfg.format == OutputFormat::Csv);
}

TEST_CASE("inline datum and coefficients") {
  const RunConfig cfg = parse_config(R"(
datum:
  name: poly
  Q: 0.5641895835477563
  omega: [1, 0]
  gamma_factors:
    - {lambda: 0.5, mu: [0, 0]}
coefficients: [[1, 0], [0.5, 0]]
growth_A: 0.2
windows: [[t0, 50], [50, 80]]
output: {format: json}
)");
  REQUIRE(cfg.datum);
  CHECK(cfg.datum->name() == "poly");
  CHECK(cfg.coefficients.size() == 2);
  CHECK_FALSE(cfg.windows[0].lo);
  CHECK(*cfg.windows[1].lo == 50.0);
  CHECK(cfg.format == OutputFormat::Json);
  CHECK(cfg.function().kind() == EvaluatorKind::CoefficientList);
}

TEST_CASE("validation errors carry line context") {
  CHECK(error_of("catalog: zeta\na: [0, 0]\n") == "ValidationError: line 2: a must be nonzero");
  CHECK(error_of("catalog: zeta\nwindows: [[20, 60], [50, 80]]\n").find("overlap") !=
        std::string::npos);
  CHECK(error_of("catalog: zeta\nwindows: [[50, 80], [20, 30]]\n").find("ValidationError") == 0);
  CHECK(error_of("catalog: zeta\nx: [2, 1, 0.5]\n").find("exclude 1") != std::string::npos);
  CHECK(error_of("catalog: nope\n").find("ValidationError") == 0);
  CHECK(error_of("catalog: nope\n").find("line 1") != std::string::npos);
  CHECK(error_of("datum:\n  Q: -1\n  gamma_factors: [{lambda: 0.5}]\n").find("Q must be positive") !=
        std::string::npos);
  CHECK(error_of("datum:\n  Q: 1\n  gamma_factors: [{lambda: 0.25}]\n").find("line 2") !=
        std::string::npos);
  CHECK(error_of("catalog: zeta\na: [1, oops]\n").find("line 2") != std::string::npos);
  CHECK(error_of("catalog: [zeta\n").find("ParseError") == 0);
  CHECK(error_of("a: [1, 0]\n").find("ValidationError") == 0);
}

TEST_CASE("commands produce deterministic tables with provenance headers") {
  const std::string cfg = "catalog: zeta\na: [2, 0]\nwindows: [[t0, 60]]\nT: [100, 200]\n";
  const Run a = run("find-apoints", cfg);
  const Run b = run("find-apoints", cfg);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  for (const char* key : {"# d=", "# lamQ2=", "# Theta=", "# t0="}) {
    CHECK(a.out.find(key) != std::string::npos);
  }
  const Run rvm = run("verify-rvm", cfg);
  CHECK(rvm.code == kExitOk);
  CHECK(rvm.out.find("\n100,28,") != std::string::npos);
  CHECK(rvm.out.find("# t0=19.53125") != std::string::npos);
}

TEST_CASE("json output keeps 17-digit strings") {
  const Run r = run("info", "catalog: zeta\noutput: {format: json}\n");
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("\"lamQ2\": \"0.15915494309189535\"") != std::string::npos);
}

TEST_CASE("exit codes") {
  const Run theta = run("mean-value", "catalog: synthetic-theta\na: [2, 0]\nT: [400]\n");
  CHECK(theta.code == kExitValidation);
  CHECK(theta.err.find("CoefficientsUnavailable") != std::string::npos);
  CHECK(run("find-apoints", "catalog: zeta\n").code == kExitValidation);
  CHECK(run("bogus", "catalog: zeta\n").code == kExitValidation);
  CHECK(exit_code_for(CertificationMismatch("x")) == kExitCertification);
  CHECK(exit_code_for(NoConvergence("x")) == kExitNonConvergence);
  CHECK(exit_code_for(QuadratureInconclusive("x")) == kExitNonConvergence);
  CHECK(exit_code_for(std::runtime_error("x")) == kExitFailure);
  CHECK(command_names().size() == 8);
}

TEST_CASE("catalog command") {
  const Run r = run("catalog", "catalog: zeta\n");
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("synthetic-theta,delta-only,2,1,0,6,") != std::string::npos);
}

}
