#include "ineqlab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "ineqlab/decomp.hpp"
#include "ineqlab/error.hpp"
#include "ineqlab/functionals.hpp"
#include "ineqlab/limits.hpp"
#include "ineqlab/rearrange.hpp"
#include "ineqlab/report.hpp"
#include "ineqlab/transforms.hpp"
#include "ineqlab/varopt.hpp"

namespace ineqlab {
namespace {

const std::vector<std::string> kCommands = {"constants",    "verify",   "rearrange",  "transform-check",
                                            "decomp-check", "optimize", "limit-sweep"};

std::string normalize_key(std::string k) {
  while (!k.empty() && k.front() == '-') k.erase(k.begin());
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::domain, key + ": not a number: '" + v + "'");
  }
  if (used != v.size()) fail(ErrorKind::domain, key + ": not a number: '" + v + "'");
  if (!std::isfinite(x)) fail(ErrorKind::domain, key + ": value must be finite");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9) fail(ErrorKind::domain, key + ": not an integer: '" + v + "'");
  return static_cast<int>(x);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) fail(ErrorKind::domain, key + ": empty list");
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

// ---- grids and functions -------------------------------------------------

struct GridInfo {
  std::size_t points = 0;
  double r_min = 0.0, r_max = 0.0;
};

RadialGrid ball_grid(const RunConfig& c, int dim, double R) {
  if (c.r_max && std::abs(*c.r_max - R) > 1e-12 * R)
    fail(ErrorKind::domain, "a ball grid ends at R; set R instead of r_max");
  return RadialGrid(dim, c.r_min.value_or(1e-8 * R), R, c.grid_points);
}

RadialGrid space_grid(const RunConfig& c, int dim) {
  return RadialGrid(dim, c.r_min.value_or(1e-8), c.r_max.value_or(1e6), c.grid_points);
}

GridInfo info(const RadialGrid& g) { return {g.size(), g.r_min(), g.r_max()}; }

FamilySpec family_of(const RunConfig& c, FamilyKind fallback) {
  const FamilyKind k = c.family.value_or(fallback);
  return {k, c.family_param.value_or(default_family_param(k))};
}

// Test function in dimension `dim`: sampled input or a family member.
// Compact families live on B_R, the others on the whole-space grid.
RadialFn make_function(const RunConfig& c, int dim, const Params& fp, FamilyKind fallback) {
  if (!c.input.empty()) {
    std::ifstream in(c.input);
    if (!in) fail(ErrorKind::io, "cannot open input file " + c.input);
    const bool ball = c.domain.value_or("ball") == "ball";
    if (ball) return read_sampled_function(in, ball_grid(c, dim, fp.R), Domain::ball(fp.R));
    return read_sampled_function(in, space_grid(c, dim), Domain::whole_space());
  }
  const FamilySpec fs = family_of(c, fallback);
  if (family_is_compact(fs.kind)) return test_family(fs, fp, ball_grid(c, dim, fp.R));
  return test_family(fs, fp, space_grid(c, dim));
}

std::string family_label(const RunConfig& c, FamilyKind fallback) {
  if (!c.input.empty()) return "input";
  return std::string(to_string(family_of(c, fallback).kind));
}

// ---- contract bookkeeping -----------------------------------------------

struct Outcome {
  Report report;
  GridInfo grid;
  std::vector<std::string> violations;
  std::string headline;

  void check(bool ok, const std::string& what) {
    if (!ok) violations.push_back(what);
  }
  void columns(std::vector<std::string> cols) {
    for (const char* g : {"grid_points", "r_min", "r_max", "tol"}) cols.emplace_back(g);
    report.columns = std::move(cols);
  }
  void row(std::vector<Cell> cells, double tol) {
    cells.emplace_back(static_cast<double>(grid.points));
    cells.emplace_back(grid.r_min);
    cells.emplace_back(grid.r_max);
    cells.emplace_back(tol);
    report.rows.push_back(std::move(cells));
  }
};

bool finite(double x) { return std::isfinite(x); }

// ---- commands ------------------------------------------------------------

Outcome cmd_constants(const RunConfig& c) {
  if (c.kind.empty()) fail(ErrorKind::domain, "constants needs --kind");
  const auto k = parse_constant_kind(c.kind);
  if (!k) fail(ErrorKind::domain, "unknown constant kind: " + c.kind);
  Outcome o;
  const double v = constant(*k, c.params);
  o.columns({"kind", "value"});
  o.row({std::string(to_string(*k)), v}, c.tol);
  o.check(finite(v) && v > 0.0, "constant is not a positive finite number");
  o.headline = std::string(to_string(*k)) + " = " + format_number(v);
  return o;
}

Outcome cmd_verify(const RunConfig& c) {
  if (c.ineq.empty()) fail(ErrorKind::domain, "verify needs --ineq");
  const auto k = parse_inequality_kind(c.ineq);
  if (!k) fail(ErrorKind::domain, "unknown inequality: " + c.ineq);
  const Params& P = c.params;
  int dim = P.N;
  FamilyKind fallback = FamilyKind::cone;
  if (*k == InequalityKind::lower_dim) {
    if (!P.m) fail(ErrorKind::domain, "lower_dim needs --m");
    dim = *P.m;
  }
  if (*k == InequalityKind::log_sobolev) {
    dim = P.n.value_or(P.N);
    fallback = FamilyKind::gaussian;
  }
  Params fp = P;
  fp.N = dim;
  const RadialFn u = make_function(c, dim, fp, fallback);
  Params ep = P;
  if (*k == InequalityKind::log_sobolev) ep.N = dim;
  const InequalityReport rep = evaluate(*k, u, ep);

  Outcome o;
  o.grid = info(u.grid());
  o.columns({"ineq", "family", "family_param", "lhs", "rhs", "deficit", "holds"});
  const bool comparable = *k != InequalityKind::trudinger_moser && *k != InequalityKind::q_norm_bound &&
                          !(*k == InequalityKind::critical_hardy && !rep.diagnostics.contains("constant"));
  const bool holds = rep.holds(c.tol);
  const double fparam = c.input.empty() ? family_of(c, fallback).param : 0.0;
  o.row({rep.kind, family_label(c, fallback), fparam, rep.lhs, rep.rhs, rep.deficit, holds ? 1.0 : 0.0}, c.tol);
  o.report.diagnostics = rep.diagnostics;
  o.report.notes = rep.notes;
  o.check(finite(rep.lhs) && finite(rep.rhs), "lhs or rhs is not finite");
  if (comparable) o.check(holds, "deficit below -tol");
  else o.report.notes.push_back("no constant to compare against; only finiteness is asserted");
  o.headline = rep.kind + " deficit = " + format_number(rep.deficit);
  return o;
}

Outcome cmd_rearrange(const RunConfig& c) {
  const RadialFn u = make_function(c, c.params.N, c.params, FamilyKind::cone);
  const RearrangedFn us = decreasing_rearrangement(u);
  Outcome o;
  o.grid = info(u.grid());
  o.columns({"t", "u_star"});
  bool monotone = true;
  for (std::size_t i = 0; i < us.t.size(); ++i) {
    o.row({us.t[i], us.values[i]}, c.tol);
    if (i && us.values[i] > us.values[i - 1]) monotone = false;
  }
  o.check(monotone, "u* is not nonincreasing");
  const double p = c.params.p;
  const double lp = lq_norm(u, p);
  const double lz = lz_quasinorm(us, LZIndex{p, p, 0.0}, us.measure);
  const double gap = std::abs(lz - lp) / std::max(std::abs(lp), 1e-300);
  o.report.diagnostics["lp_norm"] = lp;
  o.report.diagnostics["lpp_quasinorm"] = lz;
  o.report.diagnostics["lpp_relative_gap"] = gap;
  o.report.diagnostics["measure"] = us.measure;
  o.check(gap <= c.tol, "L^{p,p} quasi-norm differs from the L^p norm");
  o.headline = "u* on " + std::to_string(us.t.size()) + " samples, L^{p,p}/L^p gap " + format_number(gap);
  return o;
}

Outcome cmd_transform(const RunConfig& c) {
  const Params& P = c.params;
  const std::string kind = c.kind.empty() ? "ball_to_space" : c.kind;
  TransformSpec spec;
  if (kind == "ball_to_space") {
    spec = TransformSpec::ball_to_space(P.N, P.p, P.R);
  } else if (kind == "dim_shift") {
    if (!P.m) fail(ErrorKind::domain, "dim_shift needs --m");
    spec = TransformSpec::dim_shift(*P.m, P.N, P.p);
  } else {
    fail(ErrorKind::domain, "unknown transform kind: " + kind);
  }
  spec.validate();
  Params fp = P;
  fp.N = spec.source_dim();
  const RadialFn u = make_function(c, spec.source_dim(), fp, FamilyKind::cone);
  const IdentityReport rep = verify_identities(spec, u);
  Outcome o;
  o.grid = info(u.grid());
  o.columns({"identity", "lhs", "rhs", "mismatch"});
  for (const auto& pr : rep.pairs) o.row({pr.name, pr.lhs, pr.rhs, pr.mismatch}, c.tol);
  o.report.notes = rep.notes;
  double worst = rep.max_mismatch();
  if (P.ell) {
    Params p1 = P;
    p1.N = 1;
    const RadialFn u1 = make_function(c, 1, p1, FamilyKind::gaussian);
    const IdentityReport t = tensor_identity_check(u1, *P.ell);
    for (const auto& pr : t.pairs) o.row({"tensor_" + pr.name, pr.lhs, pr.rhs, pr.mismatch}, c.tol);
    worst = std::max(worst, t.max_mismatch());
  }
  o.report.diagnostics["max_mismatch"] = worst;
  o.check(worst <= c.tol, "identity mismatch above tol");
  o.headline = kind + " max mismatch " + format_number(worst);
  return o;
}

Outcome cmd_decomp(const RunConfig& c) {
  const Params& P = c.params;
  if (!(P.a > 1.0)) fail(ErrorKind::domain, "decomp-check needs --a > 1");
  const double beta = P.beta_or_N();
  const RadialGrid grid = ball_grid(c, P.N, 1.0);
  Params fp = P;
  fp.R = std::min(P.R, 1.0);
  RadialFn u = [&] {
    if (!c.input.empty()) {
      std::ifstream in(c.input);
      if (!in) fail(ErrorKind::io, "cannot open input file " + c.input);
      return read_sampled_function(in, grid, Domain::ball(1.0));
    }
    const FamilySpec fs = family_of(c, FamilyKind::cone);
    if (!family_is_compact(fs.kind)) fail(ErrorKind::domain, "decomp-check needs a compactly supported family");
    return test_family(fs, fp, grid);
  }();
  const Partition part = build_partition(P.N);

  std::vector<int> ks;
  if (!c.values.empty()) {
    for (double v : c.values) {
      if (v != std::floor(v)) fail(ErrorKind::domain, "annulus indices must be integers");
      ks.push_back(static_cast<int>(v));
    }
  } else {
    const int k_max = static_cast<int>(std::ceil(std::log(1.0 / grid.r_min())));
    for (int k = -1; k <= k_max; ++k) ks.push_back(k);
  }

  Outcome o;
  o.grid = info(grid);
  o.columns({"k", "lhs", "rhs", "b_k", "ratio"});
  const double split = std::pow(2.0, P.N - 1.0);
  bool finite_all = true, split_ok = true;
  for (int k : ks) {
    const InequalityReport r = annulus_check(u, part, k, P.a, beta);
    const auto& d = r.diagnostics;
    o.row({static_cast<double>(k), r.lhs, r.rhs, d.at("b_k"), d.at("ratio")}, c.tol);
    finite_all = finite_all && finite(r.lhs) && finite(r.rhs);
    const double bound = split * (d.at("phi_grad_u") + d.at("u_grad_phi"));
    if (d.at("grad_uk") > bound * (1.0 + c.tol) + 1e-300) split_ok = false;
  }
  double pou = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double r = std::exp(-20.0 * (i + 0.5) / 10000.0);
    double s = 0.0;
    for (int k : part.active(r)) s += std::pow(part.phi(k, r), P.N);
    pou = std::max(pou, std::abs(s - 1.0));
  }
  const InequalityReport a = assemble_critical_hardy(u, P.a, beta);
  o.report.diagnostics = a.diagnostics;
  o.report.diagnostics["assembled_lhs"] = a.lhs;
  o.report.diagnostics["assembled_rhs"] = a.rhs;
  o.report.diagnostics["partition_error"] = pou;
  o.report.diagnostics["admissibility_k1"] = admissibility_value(DecayProfile::exp_decay(), P.N, 1);
  o.report.notes = a.notes;
  o.check(finite_all && finite(a.lhs) && finite(a.rhs), "an annulus or assembled side is not finite");
  o.check(split_ok, "power-splitting bound fails on an annulus");
  o.check(pou <= 1e-12, "partition of unity error above 1e-12");
  o.headline = std::to_string(ks.size()) + " annuli, assembled lhs " + format_number(a.lhs) + ", rhs " +
               format_number(a.rhs);
  return o;
}

Outcome cmd_optimize(const RunConfig& c) {
  const Params& P = c.params;
  const std::string kind = c.kind.empty() ? "sobolev" : c.kind;
  QuotientKind qk;
  if (kind == "hardy") qk = QuotientKind::hardy;
  else if (kind == "sobolev") qk = QuotientKind::sobolev;
  else if (kind == "critical_hardy") qk = QuotientKind::critical_hardy;
  else fail(ErrorKind::domain, "unknown quotient kind: " + kind);

  Params qp = P;
  if (qk == QuotientKind::critical_hardy) qp.p = P.N;
  std::optional<QuotientSpec> spec;
  std::optional<RadialFn> init;
  if (qk == QuotientKind::sobolev) {
    const RadialGrid g = space_grid(c, P.N);
    spec = QuotientSpec{qk, qp, g, Domain::whole_space()};
    const RadialFn u = make_function(c, P.N, qp, FamilyKind::talenti_bubble);
    if (u.domain().is_ball()) init = push_function(TransformSpec::ball_to_space(P.N, qp.p, u.domain().radius), u, g);
    else init = u;
  } else {
    const RadialGrid g = ball_grid(c, P.N, P.R);
    spec = QuotientSpec{qk, qp, g, Domain::ball(P.R)};
    init = make_function(c, P.N, qp, FamilyKind::cone);
    if (!init->domain().is_ball()) fail(ErrorKind::domain, "this quotient needs a compactly supported initializer");
  }
  const RayleighResult res = minimize_rayleigh(*spec, *init, c.max_iters, c.opt_tol);
  const double C = DiscreteQuotient(*spec).analytic_constant();

  Outcome o;
  o.grid = info(spec->grid);
  o.columns({"iter", "quotient", "step_size", "grad_norm"});
  bool decreasing = true;
  double lowest = res.initial_value;
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    const auto& r = res.trace.rows[i];
    o.row({r[0], r[1], r[2], r[3]}, c.tol);
    if (i && r[1] > res.trace.rows[i - 1][1]) decreasing = false;
    lowest = std::min(lowest, r[1]);
  }
  o.report.diagnostics["initial"] = res.initial_value;
  o.report.diagnostics["final"] = res.value;
  o.report.diagnostics["iterations"] = res.iterations;
  o.report.notes.push_back("status: " + res.status);
  o.check(decreasing, "quotient trace increases");
  if (std::isfinite(C)) {
    o.report.diagnostics["constant"] = C;
    o.report.diagnostics["relative_gap"] = (res.value - C) / C;
    o.check(lowest >= C - 1e-3, "an iterate falls below the best constant");
  }
  o.headline = kind + " quotient " + format_number(res.initial_value) + " -> " + format_number(res.value) + " (" +
               res.status + ", " + std::to_string(res.iterations) + " iterations)";
  return o;
}

std::vector<double> default_values(const std::string& kind, const Params& P) {
  if (kind == "lower_dim_coeff") return {10, 100, 1000, 10000};
  if (kind == "logsob_coeff") return {100, 1000, 10000};
  if (kind == "hardy_sequence") {
    const double top = (P.N - P.p) / P.p;
    return {0.8 * top, 0.4 * top, 0.2 * top, 0.1 * top};
  }
  if (kind == "critical_hardy_sequence") {
    const double top = (P.N - 1.0) / P.N;
    return {0.6 * top, 0.3 * top, 0.15 * top};
  }
  if (kind == "tm_series_radius") return {0.5, 1.0, 2.0};
  return default_deltas();
}

Outcome cmd_limit(const RunConfig& c) {
  if (c.kind.empty()) fail(ErrorKind::domain, "limit-sweep needs --kind");
  const Params& P = c.params;
  const std::vector<double> values = c.values.empty() ? default_values(c.kind, P) : c.values;
  for (std::size_t i = 2; i < values.size(); ++i)
    if ((values[i] - values[i - 1]) * (values[1] - values[0]) <= 0.0)
      fail(ErrorKind::domain, "sweep values must be strictly monotone");
  if (values.size() == 2 && values[0] == values[1]) fail(ErrorKind::domain, "sweep values must be strictly monotone");

  Outcome o;
  const int jobs = effective_jobs(c);

  // Runs f on every value with up to `jobs` workers; rows keep the input order.
  auto parallel_rows = [&](auto f) {
    std::vector<std::vector<double>> rows(values.size());
    std::size_t next = 0;
    while (next < values.size()) {
      std::vector<std::future<std::vector<double>>> batch;
      const std::size_t end = std::min(values.size(), next + static_cast<std::size_t>(std::max(jobs, 1)));
      for (std::size_t i = next; i < end; ++i)
        batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, f, values[i]));
      for (std::size_t i = next; i < end; ++i) rows[i] = batch[i - next].get();
      next = end;
    }
    return rows;
  };

  if (c.kind == "hardy_sequence" || c.kind == "critical_hardy_sequence") {
    const SequenceKind sk = c.kind == "hardy_sequence" ? SequenceKind::hardy : SequenceKind::critical_hardy;
    Params sp = P;
    if (sk == SequenceKind::critical_hardy) sp.p = P.N;
    const auto rows =
        parallel_rows([&](double e) { return minimizing_sequence_sweep(sk, sp, {e}, c.grid_points).rows.front(); });
    o.grid = info(RadialGrid::ball(P.N, P.R, c.grid_points));
    o.columns({"epsilon", "value", "limit", "gap_to_limit"});
    bool decreasing = true, above = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      o.row({rows[i][0], rows[i][1], rows[i][2], rows[i][3]}, c.tol);
      if (i && !(rows[i][1] < rows[i - 1][1])) decreasing = false;
      if (rows[i][1] < rows[i][2] - 1e-3) above = false;
    }
    o.check(decreasing, "quotient is not strictly decreasing along the sequence");
    o.check(above, "a quotient falls below the best constant");
    o.headline = c.kind + " last quotient " + format_number(rows.back()[1]) + " (constant " +
                 format_number(rows.back()[2]) + ")";
    return o;
  }

  if (c.kind == "tm_series_radius") {
    o.columns({"C_probe", "value", "ratio_check", "gap_to_limit"});
    const auto rows = parallel_rows([&](double C) {
      const double r = tm_series_radius(P.N, C);
      const double chk = tm_series_ratio_radius(P.N, C, 1000);
      return std::vector<double>{C, r, chk, std::abs(chk - r) / r};
    });
    bool ok = true;
    for (const auto& r : rows) {
      o.row({r[0], r[1], r[2], r[3]}, c.tol);
      ok = ok && finite(r[1]) && r[1] > 0.0;
    }
    o.check(ok, "radius is not positive and finite");
    o.headline = "tm series radius at C_probe = " + format_number(rows.front()[0]) + ": " +
                 format_number(rows.front()[1]);
    return o;
  }

  const auto sk = parse_sweep_kind(c.kind);
  if (!sk) fail(ErrorKind::domain, "unknown sweep kind: " + c.kind);
  std::optional<RadialFn> u;
  std::optional<RadialGrid> grid;
  if (*sk == SweepKind::improved_hardy_lhs || *sk == SweepKind::improved_sobolev_lhs) {
    // Test function supported in B_{R/2} inside the ball B_R.
    Params fp = P;
    fp.R = P.R / 2.0;
    const RadialGrid g = ball_grid(c, P.N, P.R);
    if (!c.input.empty()) {
      std::ifstream in(c.input);
      if (!in) fail(ErrorKind::io, "cannot open input file " + c.input);
      u = read_sampled_function(in, g, Domain::ball(P.R));
    } else {
      const FamilySpec fs = family_of(c, FamilyKind::cone);
      if (!family_is_compact(fs.kind)) fail(ErrorKind::domain, "improved sweeps need a compactly supported family");
      u = test_family(fs, fp, g, Domain::ball(P.R));
    }
    o.grid = info(g);
  } else if (*sk == SweepKind::weight_limit) {
    grid = RadialGrid(P.N, c.r_min.value_or(1e-6 * P.R), P.R, c.grid_points);
    o.grid = info(*grid);
  }
  const auto rows = parallel_rows([&](double x) { return sweep(*sk, P, {x}, u, grid).rows.front(); });
  const bool by_N = *sk == SweepKind::lower_dim_coeff || *sk == SweepKind::logsob_coeff;
  o.columns({by_N ? "N" : "delta", "value", "limit", "gap_to_limit"});
  SweepTable table({by_N ? "N" : "delta", "value", "limit", "gap_to_limit"});
  bool finite_all = true;
  for (const auto& r : rows) {
    o.row({r[0], r[1], r[2], r[3]}, c.tol);
    table.add_row(r);
    finite_all = finite_all && finite(r[3]);
  }
  o.check(finite_all, "a gap to the limit is not finite");
  const std::size_t n = rows.size();
  if (n >= 3) {
    const bool shrinking = rows[n - 1][3] < rows[n - 2][3] && rows[n - 2][3] < rows[n - 3][3];
    o.check(shrinking, "gap to the limit does not shrink over the last three rows");
  }
  if ((*sk == SweepKind::sobolev_decay || *sk == SweepKind::hardy_decay) && n >= 4) {
    try {
      o.report.diagnostics["decay_exponent"] = fit_decay_exponent(table);
    } catch (const Error& e) {
      o.report.notes.push_back(std::string("no decay fit: ") + e.what());
    }
  }
  o.headline = c.kind + " last gap " + format_number(rows.back()[3]);
  return o;
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalize_key(trim(raw_key));
  const std::string v = trim(raw_value);
  Params& P = c.params;
  if (key == "command") {
    if (std::find(kCommands.begin(), kCommands.end(), v) == kCommands.end())
      fail(ErrorKind::domain, "unknown command: " + v);
    c.command = v;
  } else if (key == "N") P.N = to_int(key, v);
  else if (key == "p") P.p = to_double(key, v);
  else if (key == "m") P.m = to_int(key, v);
  else if (key == "R") P.R = to_double(key, v);
  else if (key == "a") P.a = to_double(key, v);
  else if (key == "beta") P.beta = to_double(key, v);
  else if (key == "alpha") P.alpha = to_double(key, v);
  else if (key == "n") P.n = to_int(key, v);
  else if (key == "ell") P.ell = to_int(key, v);
  else if (key == "q") P.q = to_double(key, v);
  else if (key == "family") {
    const auto f = parse_family_kind(v);
    if (!f) fail(ErrorKind::domain, "unknown family: " + v);
    c.family = *f;
  } else if (key == "family_param") c.family_param = to_double(key, v);
  else if (key == "grid_points") {
    const int n = to_int(key, v);
    if (n < 16) fail(ErrorKind::domain, "grid_points must be at least 16");
    c.grid_points = static_cast<std::size_t>(n);
  } else if (key == "r_min") c.r_min = to_double(key, v);
  else if (key == "r_max") c.r_max = to_double(key, v);
  else if (key == "domain") {
    if (v != "ball" && v != "whole_space") fail(ErrorKind::domain, "domain must be ball or whole_space");
    c.domain = v;
  } else if (key == "tol") {
    c.tol = to_double(key, v);
    if (!(c.tol > 0.0)) fail(ErrorKind::domain, "tol must be positive");
  } else if (key == "opt_tol") {
    c.opt_tol = to_double(key, v);
    if (!(c.opt_tol > 0.0)) fail(ErrorKind::domain, "opt_tol must be positive");
  } else if (key == "max_iters") {
    c.max_iters = to_int(key, v);
    if (c.max_iters < 1) fail(ErrorKind::domain, "max_iters must be positive");
  } else if (key == "jobs") {
    c.jobs = to_int(key, v);
    if (c.jobs < 1) fail(ErrorKind::domain, "jobs must be positive");
  } else if (key == "output") c.output = v;
  else if (key == "format") {
    if (v != "csv" && v != "json") fail(ErrorKind::domain, "format must be csv or json");
    c.format = v;
  } else if (key == "kind") c.kind = v;
  else if (key == "ineq") c.ineq = v;
  else if (key == "input") c.input = v;
  else if (key == "values") c.values = to_list(key, v);
  else fail(ErrorKind::domain, "unknown setting: " + raw_key);
}

void load_config(RunConfig& c, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::domain, "config line " + std::to_string(lineno) + ": expected key = value");
    apply_setting(c, line.substr(0, eq), line.substr(eq + 1));
  }
}

std::vector<std::pair<std::string, std::string>> resolved_config(const RunConfig& c) {
  const Params& P = c.params;
  std::vector<std::pair<std::string, std::string>> out;
  auto num = [&](const char* k, double v) { out.emplace_back(k, format_number(v)); };
  out.emplace_back("command", c.command);
  num("N", P.N);
  num("p", P.p);
  out.emplace_back("m", P.m ? std::to_string(*P.m) : "unset");
  num("R", P.R);
  num("a", P.a);
  num("beta", P.beta_or_N());
  num("alpha", P.alpha);
  out.emplace_back("n", P.n ? std::to_string(*P.n) : "unset");
  out.emplace_back("ell", P.ell ? std::to_string(*P.ell) : "unset");
  num("q", P.q);
  out.emplace_back("family", c.family ? std::string(to_string(*c.family)) : "default");
  out.emplace_back("family_param", c.family_param ? format_number(*c.family_param) : "default");
  out.emplace_back("grid_points", std::to_string(c.grid_points));
  out.emplace_back("r_min", c.r_min ? format_number(*c.r_min) : "default");
  out.emplace_back("r_max", c.r_max ? format_number(*c.r_max) : "default");
  out.emplace_back("domain", c.domain.value_or("default"));
  out.emplace_back("kind", c.kind);
  out.emplace_back("ineq", c.ineq);
  out.emplace_back("input", c.input);
  out.emplace_back("values", join(c.values));
  out.emplace_back("format", c.format);
  num("tol", c.tol);
  num("opt_tol", c.opt_tol);
  out.emplace_back("max_iters", std::to_string(c.max_iters));
  return out;
}

int effective_jobs(const RunConfig& c) {
  if (c.jobs > 0) return c.jobs;
  if (const char* env = std::getenv("INEQLAB_JOBS")) {
    char* end = nullptr;
    const long j = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && j >= 1 && j <= 1024) return static_cast<int>(j);
  }
  return 1;
}

RunResult run(const RunConfig& c) {
  RunResult res;
  try {
    Outcome o;
    if (c.command == "constants") o = cmd_constants(c);
    else if (c.command == "verify") o = cmd_verify(c);
    else if (c.command == "rearrange") o = cmd_rearrange(c);
    else if (c.command == "transform-check") o = cmd_transform(c);
    else if (c.command == "decomp-check") o = cmd_decomp(c);
    else if (c.command == "optimize") o = cmd_optimize(c);
    else if (c.command == "limit-sweep") o = cmd_limit(c);
    else fail(ErrorKind::domain, c.command.empty() ? "no command given" : "unknown command: " + c.command);

    o.report.config = resolved_config(c);
    for (const auto& v : o.violations) o.report.notes.push_back("violated: " + v);
    res.report = c.format == "json" ? to_json(o.report) : to_csv(o.report);
    res.exit_code = o.violations.empty() ? 0 : 1;
    res.summary = c.command + ": " + o.headline +
                  (o.violations.empty() ? "; contracts hold" : "; violated: " + o.violations.front());
  } catch (const Error& e) {
    const bool input_error =
        e.kind() == ErrorKind::domain || e.kind() == ErrorKind::io || e.kind() == ErrorKind::singularity;
    res.exit_code = input_error ? 2 : 1;
    res.summary = c.command + ": error (" + std::string(to_string(e.kind())) + "): " + e.what();
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.summary = c.command + ": error: " + e.what();
  }
  return res;
}

}  // namespace ineqlab
