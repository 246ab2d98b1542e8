#include "dfactor/commands.h"

#include <algorithm>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <functional>
#include <map>
#include "json.hpp"
#include <ostream>

#include "dfactor/apoints.h"
#include "dfactor/errors.h"
#include "dfactor/sums.h"

namespace dfactor {

namespace {

using Row = std::vector<std::string>;

std::string num(double v) { return fmt::format("{:.17g}", v); }
std::string num(cplx v) { return fmt::format("[{:.17g},{:.17g}]", v.real(), v.imag()); }

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.meta) fmt::print(os, "# {}={}\n", k, v);
  fmt::print(os, "{}\n", fmt::join(t.columns, ","));
  for (const auto& r : t.rows) fmt::print(os, "{}\n", fmt::join(r, ","));
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) doc["meta"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < t.columns.size(); ++i) rec[t.columns[i]] = r[i];
    doc["rows"].push_back(std::move(rec));
  }
  os << doc.dump(2) << '\n';
}

void add_invariants(Table& t, const FunctionalEquationDatum& datum, const DerivedInvariants& inv) {
  t.meta.emplace_back("datum", datum.name());
  t.meta.emplace_back("d", num(inv.d));
  t.meta.emplace_back("lamQ2", num(inv.lamQ2));
  t.meta.emplace_back("eta", num(inv.eta));
  t.meta.emplace_back("Theta", num(inv.theta));
  t.meta.emplace_back("t0", num(inv.t0));
}

struct Context {
  const RunConfig& cfg;
  LFunction L;
  DerivedInvariants inv;

  explicit Context(const RunConfig& c)
      : cfg(c), L(c.function()), inv(derive_invariants(L.datum(), c.t0)) {}

  const FunctionalEquationDatum& datum() const { return L.datum(); }

  FindOptions options() const {
    FindOptions o;
    o.tol = cfg.tol;
    o.certify = cfg.certify;
    o.threads = cfg.threads;
    o.t0_override = cfg.t0;
    return o;
  }

  Table table() const {
    Table t;
    add_invariants(t, datum(), inv);
    t.meta.emplace_back("a", num(cfg.a));
    return t;
  }

  APointSet points(double lo, double hi) const {
    return find_apoints(datum(), cfg.a, lo, hi, options());
  }

  void require_T_grid(const char* cmd) const {
    if (cfg.T_grid.empty()) throw ValidationError(fmt::format("{} needs a T grid", cmd));
    if (!std::is_sorted(cfg.T_grid.begin(), cfg.T_grid.end())) {
      throw ValidationError(fmt::format("{} needs an increasing T grid", cmd));
    }
    if (cfg.T_grid.front() <= inv.t0) {
      throw ValidationError(fmt::format("T = {} is not above t0 = {}", cfg.T_grid.front(), inv.t0));
    }
  }

  // Nontrivial points on (t0, T] for each T of the grid, built window by window.
  std::vector<APointSet> cumulative_sets() const {
    std::vector<APointSet> out;
    APointSet acc;
    double lo = inv.t0;
    for (double T : cfg.T_grid) {
      APointSet part = points(lo, T);
      if (out.empty()) acc = part;
      else acc.points.insert(acc.points.end(), part.points.begin(), part.points.end());
      acc.t_lo = inv.t0;
      acc.t_hi = T;
      APointSet strip = acc;
      strip.points = acc.nontrivial();
      out.push_back(std::move(strip));
      lo = T;
    }
    return out;
  }
};

Table cmd_info(const RunConfig& cfg) {
  Context ctx(cfg);
  Table t = ctx.table();
  t.meta.emplace_back("lam", num(ctx.inv.lam));
  t.meta.emplace_back("Q", num(ctx.datum().Q()));
  t.meta.emplace_back("omega", num(ctx.datum().omega()));
  t.meta.emplace_back("omega_star", num(ctx.inv.omega_star));
  t.meta.emplace_back("evaluator", to_string(ctx.L.kind()));
  t.meta.emplace_back("growth_A", num(ctx.L.growth_A()));
  t.columns = {"j", "lambda", "mu_re", "mu_im"};
  std::size_t j = 0;
  for (const auto& g : ctx.datum().gamma_factors()) {
    t.rows.push_back({std::to_string(++j), num(g.lambda), num(g.mu.real()), num(g.mu.imag())});
  }
  return t;
}

Table cmd_eval_delta(const RunConfig& cfg) {
  Context ctx(cfg);
  if (cfg.points.empty()) throw ValidationError("eval-delta needs a points list");
  Table t = ctx.table();
  t.columns = {"sigma", "t", "re", "im", "abs", "asym_re", "asym_im", "rel_err"};
  for (const auto& s : cfg.points) {
    const DeltaValue v = delta_exact(ctx.datum(), s);
    Row r{num(s.sigma), num(s.t)};
    if (v.kind == DeltaValue::Kind::Infinite) {
      r.insert(r.end(), {"inf", "inf", "inf", "", "", ""});
      t.rows.push_back(std::move(r));
      continue;
    }
    const cplx e = v.value();
    r.insert(r.end(), {num(e.real()), num(e.imag()), num(std::abs(e))});
    const bool asym_ok = std::abs(s.t) >= ctx.inv.t0 && s.sigma >= detail::kAsymptoticSigmaLo &&
                         s.sigma <= detail::kAsymptoticSigmaHi;
    if (asym_ok) {
      const cplx a = delta_asymptotic(ctx.inv, s);
      r.insert(r.end(), {num(a.real()), num(a.imag()), num(std::abs(e - a) / std::abs(e))});
    } else {
      r.insert(r.end(), {"", "", ""});
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

Table cmd_find_apoints(const RunConfig& cfg) {
  Context ctx(cfg);
  if (cfg.windows.empty()) throw ValidationError("find-apoints needs at least one window");
  Table t = ctx.table();
  t.columns = {"window", "k", "gamma", "beta", "residual", "newton_iters"};
  std::size_t w = 0;
  for (const auto& win : cfg.windows) {
    ++w;
    const double lo = win.lo.value_or(ctx.inv.t0);
    const APointSet set = ctx.points(lo, win.hi);
    t.meta.emplace_back(fmt::format("window{}", w),
                        fmt::format("[{:.17g},{:.17g}] count={}", lo, win.hi, set.size()));
    for (const auto& p : set.points) {
      t.rows.push_back({std::to_string(w), std::to_string(p.seed_index), num(p.gamma), num(p.beta),
                        num(p.residual), std::to_string(p.newton_iters)});
    }
  }
  return t;
}

Table cmd_verify_rvm(const RunConfig& cfg) {
  Context ctx(cfg);
  ctx.require_T_grid("verify-rvm");
  const FunctionalEquationDatum conj = conjugate_datum(ctx.datum());
  const DerivedInvariants inv_minus = derive_invariants(conj, cfg.t0);
  Table t = ctx.table();
  t.meta.emplace_back("t0_minus", num(inv_minus.t0));
  t.columns = {"T",           "count",      "prediction",      "abs_diff_over_psi",
               "count_minus", "prediction_minus", "minus_abs_diff_over_psi"};
  long plus = 0, minus = 0;
  double lo_plus = ctx.inv.t0, lo_minus = inv_minus.t0;
  for (double T : cfg.T_grid) {
    if (T <= inv_minus.t0) throw ValidationError(fmt::format("T = {} is not above t0_minus", T));
    plus += long(ctx.points(lo_plus, T).size());
    minus += long(find_apoints(ctx.datum(), cfg.a, -T, -lo_minus, ctx.options()).size());
    lo_plus = T;
    lo_minus = T;
    const double pred_plus = rvm_prediction(ctx.inv, T, 1) - rvm_prediction(ctx.inv, ctx.inv.t0, 1);
    const double pred_minus =
        rvm_prediction(ctx.inv, T, -1) - rvm_prediction(ctx.inv, inv_minus.t0, -1);
    const double ps = psi(T);
    t.rows.push_back({num(T), std::to_string(plus), num(pred_plus),
                      num(std::abs(double(plus) - pred_plus) / ps), std::to_string(minus),
                      num(pred_minus), num(std::abs(double(minus) - pred_minus) / ps)});
  }
  return t;
}

Table cmd_landau(const RunConfig& cfg) {
  Context ctx(cfg);
  ctx.require_T_grid("landau");
  if (cfg.x_grid.empty()) throw ValidationError("landau needs an x grid");
  Table t = ctx.table();
  t.meta.emplace_back("T_prime_factor", num(cfg.T_prime_factor));
  t.columns = {"T",       "T_prime", "x",         "y",           "sum_re",      "sum_im",
               "main_re", "main_im", "deviation", "error_budget", "budget_ratio"};
  for (double T : cfg.T_grid) {
    const double Tp = cfg.T_prime_factor * T;
    const APointSet set = ctx.points(T, Tp);
    for (double x : cfg.x_grid) {
      const LandauReport r = landau_report(set, ctx.inv, x, T, Tp, cfg.y);
      t.rows.push_back({num(T), num(Tp), num(x), num(r.y), num(r.empirical_sum.real()),
                        num(r.empirical_sum.imag()), num(r.main_term.real()),
                        num(r.main_term.imag()), num(r.deviation()), num(r.error_budget),
                        num(r.deviation() / r.error_budget)});
    }
  }
  return t;
}

Table cmd_equidist(const RunConfig& cfg) {
  Context ctx(cfg);
  ctx.require_T_grid("equidist");
  if (cfg.alpha_grid.empty()) throw ValidationError("equidist needs an alpha grid");
  Table t = ctx.table();
  t.columns = {"alpha", "T", "N", "star_discrepancy"};
  for (long k = 1; k <= cfg.k_max; ++k) t.columns.push_back(fmt::format("weyl_{}", k));
  t.columns.push_back("max_weyl_over_N");
  const auto sets = ctx.cumulative_sets();
  for (double alpha : cfg.alpha_grid) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].size() == 0) throw EmptyInput(fmt::format("no a-points up to T = {}", cfg.T_grid[i]));
      const EquidistReport r = equidist_report(sets[i], alpha, cfg.k_max);
      Row row{num(alpha), num(cfg.T_grid[i]), std::to_string(r.N), num(r.star_discrepancy)};
      double worst = 0.0;
      for (long k = 1; k <= cfg.k_max; ++k) {
        row.push_back(num(r.weyl_magnitudes[k]));
        worst = std::max(worst, r.weyl_magnitudes[k]);
      }
      row.push_back(num(worst / double(r.N)));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table cmd_mean_value(const RunConfig& cfg) {
  Context ctx(cfg);
  ctx.L.leading();  // Delta-only entries fail here, before any search
  ctx.require_T_grid("mean-value");
  Table t = ctx.table();
  const double exponent = ctx.L.growth_A() + 0.05;
  t.meta.emplace_back("growth_A", num(ctx.L.growth_A()));
  t.meta.emplace_back("budget_exponent", num(exponent));
  t.columns = {"T",         "N_plus",           "sum_re",         "sum_im", "prediction_re",
               "prediction_im", "deviation", "deviation_over_budget", "deviation_over_T_log_T"};
  for (const auto& set : ctx.cumulative_sets()) {
    const double T = set.t_hi;
    const cplx sum = mean_value_sum(ctx.L, set);
    const cplx pred = mean_value_prediction(ctx.L, cfg.a, double(set.size()));
    const double dev = std::abs(sum - pred);
    t.rows.push_back({num(T), std::to_string(set.size()), num(sum.real()), num(sum.imag()),
                      num(pred.real()), num(pred.imag()), num(dev),
                      num(dev / std::pow(T, exponent)), num(dev / (T * std::log(T)))});
  }
  return t;
}

Table cmd_catalog(const RunConfig&) {
  Table t;
  t.columns = {"name", "evaluator", "d", "lamQ2", "eta", "Theta", "t0", "growth_A"};
  for (const auto& name : catalog_names()) {
    const LFunction L = catalog_get(name);
    const DerivedInvariants inv = derive_invariants(L.datum());
    t.rows.push_back({name, to_string(L.kind()), num(inv.d), num(inv.lamQ2), num(inv.eta),
                      num(inv.theta), num(inv.t0), num(L.growth_A())});
  }
  return t;
}

const std::map<std::string, std::function<Table(const RunConfig&)>>& handlers() {
  static const std::map<std::string, std::function<Table(const RunConfig&)>> h{
      {"info", cmd_info},         {"eval-delta", cmd_eval_delta}, {"find-apoints", cmd_find_apoints},
      {"verify-rvm", cmd_verify_rvm}, {"landau", cmd_landau},   {"equidist", cmd_equidist},
      {"mean-value", cmd_mean_value}, {"catalog", cmd_catalog},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"info",   "eval-delta", "find-apoints", "verify-rvm",
                                              "landau", "equidist",   "mean-value",   "catalog"};
  return names;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CertificationMismatch*>(&e)) return kExitCertification;
  if (dynamic_cast<const NoConvergence*>(&e) || dynamic_cast<const EscapedStrip*>(&e) ||
      dynamic_cast<const QuadratureInconclusive*>(&e) ||
      dynamic_cast<const MultiplicityError*>(&e)) {
    return kExitNonConvergence;
  }
  if (dynamic_cast<const Error*>(&e)) return kExitValidation;
  return kExitFailure;
}

int run_command(const std::string& cmd, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  const auto it = handlers().find(cmd);
  if (it == handlers().end()) {
    fmt::print(err, "dtool: unknown command '{}'\n", cmd);
    return kExitValidation;
  }
  try {
    const Table t = it->second(cfg);
    if (cfg.format == OutputFormat::Json) {
      write_json(out, t);
    } else {
      write_csv(out, t);
    }
    out.flush();
    return kExitOk;
  } catch (const Error& e) {
    fmt::print(err, "dtool {}: {}: {}\n", cmd, e.kind(), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    fmt::print(err, "dtool {}: {}\n", cmd, e.what());
    return exit_code_for(e);
  }
}

}  // namespace dfactor
