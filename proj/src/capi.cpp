#include "ineqlab/ineqlab.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include "ineqlab/commands.hpp"
#include "ineqlab/error.hpp"
#include "ineqlab/families.hpp"
#include "ineqlab/functionals.hpp"
#include "ineqlab/limits.hpp"
#include "ineqlab/varopt.hpp"

using namespace ineqlab;

struct ineqlab_fn {
  RadialFn fn;
};

struct ineqlab_table {
  SweepTable table;
};

struct ineqlab_config {
  RunConfig config;
};

namespace {

thread_local std::string g_last_error;

ineqlab_status code_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return INEQLAB_ERR_DOMAIN;
    case ErrorKind::singularity: return INEQLAB_ERR_SINGULARITY;
    case ErrorKind::numerical: return INEQLAB_ERR_NUMERICAL;
    case ErrorKind::inconsistency: return INEQLAB_ERR_INCONSISTENCY;
    case ErrorKind::io: return INEQLAB_ERR_IO;
  }
  return INEQLAB_ERR_INTERNAL;
}

template <class F>
ineqlab_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return INEQLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return INEQLAB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return INEQLAB_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorKind::domain, std::string(what) + " must not be NULL");
}

Params to_params(const ineqlab_params* c) {
  Params P;
  if (!c) return P;
  P.N = c->N;
  P.p = c->p;
  if (c->m != 0) P.m = c->m;
  P.R = c->R;
  P.a = c->a;
  if (!std::isnan(c->beta)) P.beta = c->beta;
  P.alpha = c->alpha;
  if (c->n != 0) P.n = c->n;
  if (c->ell != 0) P.ell = c->ell;
  P.q = c->q;
  return P;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ineqlab_version(void) { return "0.1.0"; }

const char* ineqlab_last_error(void) { return g_last_error.c_str(); }

void ineqlab_params_init(ineqlab_params* p) {
  if (!p) return;
  const Params d;
  p->N = d.N;
  p->p = d.p;
  p->m = 0;
  p->R = d.R;
  p->a = d.a;
  p->beta = std::nan("");
  p->alpha = d.alpha;
  p->n = 0;
  p->ell = 0;
  p->q = d.q;
}

ineqlab_status ineqlab_constant(const char* kind, const ineqlab_params* params, double* out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    const auto k = parse_constant_kind(kind);
    if (!k) fail(ErrorKind::domain, std::string("unknown constant kind: ") + kind);
    *out = constant(*k, to_params(params));
  });
}

ineqlab_status ineqlab_fn_family(const char* family, double param, const ineqlab_params* params, int dim,
                                 size_t points, ineqlab_fn** out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    const auto k = parse_family_kind(family);
    if (!k) fail(ErrorKind::domain, std::string("unknown family: ") + family);
    const Params P = to_params(params);
    const FamilySpec spec{*k, std::isnan(param) ? default_family_param(*k) : param};
    const RadialGrid g = family_is_compact(*k) ? RadialGrid::ball(dim, P.R, points) : RadialGrid::whole_space(dim, points);
    *out = new ineqlab_fn{test_family(spec, P, g)};
  });
}

ineqlab_status ineqlab_fn_from_values(int dim, double r_min, double r_max, const double* values, size_t count,
                                      int is_ball, ineqlab_fn** out) {
  return guarded([&] {
    need(values, "values");
    need(out, "out");
    RadialGrid g(dim, r_min, r_max, count);
    std::vector<double> v(values, values + count);
    const Domain d = is_ball ? Domain::ball(r_max) : Domain::whole_space();
    *out = new ineqlab_fn{RadialFn(std::move(g), std::move(v), d)};
  });
}

ineqlab_status ineqlab_fn_read(const char* path, int dim, double R, size_t points, ineqlab_fn** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, std::string("cannot open ") + path);
    *out = new ineqlab_fn{read_sampled_function(in, RadialGrid::ball(dim, R, points), Domain::ball(R))};
  });
}

void ineqlab_fn_free(ineqlab_fn* fn) { delete fn; }

size_t ineqlab_fn_size(const ineqlab_fn* fn) { return fn ? fn->fn.size() : 0; }

ineqlab_status ineqlab_fn_nodes(const ineqlab_fn* fn, double* r, double* values) {
  return guarded([&] {
    need(fn, "fn");
    for (std::size_t i = 0; i < fn->fn.size(); ++i) {
      if (r) r[i] = fn->fn.grid()[i];
      if (values) values[i] = fn->fn[i];
    }
  });
}

ineqlab_status ineqlab_evaluate(const char* ineq, const ineqlab_fn* u, const ineqlab_params* params, double* lhs,
                                double* rhs, double* deficit) {
  return guarded([&] {
    need(ineq, "ineq");
    need(u, "u");
    const auto k = parse_inequality_kind(ineq);
    if (!k) fail(ErrorKind::domain, std::string("unknown inequality: ") + ineq);
    const InequalityReport r = evaluate(*k, u->fn, to_params(params));
    if (lhs) *lhs = r.lhs;
    if (rhs) *rhs = r.rhs;
    if (deficit) *deficit = r.deficit;
  });
}

ineqlab_status ineqlab_minimize(const char* quotient, const ineqlab_fn* init, const ineqlab_params* params,
                                int max_iters, double tol, double* value, ineqlab_fn** minimizer, int* iterations) {
  return guarded([&] {
    need(quotient, "quotient");
    need(init, "init");
    need(value, "value");
    const std::string q = quotient;
    QuotientKind k;
    if (q == "hardy") k = QuotientKind::hardy;
    else if (q == "sobolev") k = QuotientKind::sobolev;
    else if (q == "critical_hardy") k = QuotientKind::critical_hardy;
    else fail(ErrorKind::domain, "unknown quotient: " + q);
    const QuotientSpec spec{k, to_params(params), init->fn.grid(), init->fn.domain()};
    const RayleighResult res = minimize_rayleigh(spec, init->fn, max_iters, tol);
    *value = res.value;
    if (iterations) *iterations = res.iterations;
    if (minimizer) {
      std::vector<double> v = res.minimizer;
      *minimizer = new ineqlab_fn{RadialFn(spec.grid, std::move(v), spec.domain)};
    }
  });
}

ineqlab_status ineqlab_sweep(const char* kind, const ineqlab_params* params, const double* values, size_t count,
                             const ineqlab_fn* u, ineqlab_table** out) {
  return guarded([&] {
    need(kind, "kind");
    need(values, "values");
    need(out, "out");
    const auto k = parse_sweep_kind(kind);
    if (!k) fail(ErrorKind::domain, std::string("unknown sweep kind: ") + kind);
    std::optional<RadialFn> fn;
    if (u) fn = u->fn;
    *out = new ineqlab_table{sweep(*k, to_params(params), std::vector<double>(values, values + count), fn)};
  });
}

void ineqlab_table_free(ineqlab_table* t) { delete t; }
size_t ineqlab_table_rows(const ineqlab_table* t) { return t ? t->table.size() : 0; }
size_t ineqlab_table_cols(const ineqlab_table* t) { return t ? t->table.columns.size() : 0; }

const char* ineqlab_table_column(const ineqlab_table* t, size_t col) {
  if (!t || col >= t->table.columns.size()) return nullptr;
  return t->table.columns[col].c_str();
}

double ineqlab_table_get(const ineqlab_table* t, size_t row, size_t col) {
  if (!t || row >= t->table.size() || col >= t->table.columns.size()) return std::nan("");
  return t->table.rows[row][col];
}

ineqlab_status ineqlab_fit_decay_exponent(const ineqlab_table* t, double* out) {
  return guarded([&] {
    need(t, "table");
    need(out, "out");
    *out = fit_decay_exponent(t->table);
  });
}

ineqlab_status ineqlab_tm_series_radius(int N, double C, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = tm_series_radius(N, C);
  });
}

ineqlab_config* ineqlab_config_new(void) { return new (std::nothrow) ineqlab_config{}; }
void ineqlab_config_free(ineqlab_config* c) { delete c; }

ineqlab_status ineqlab_config_set(ineqlab_config* c, const char* key, const char* value) {
  return guarded([&] {
    need(c, "config");
    need(key, "key");
    need(value, "value");
    apply_setting(c->config, key, value);
  });
}

ineqlab_status ineqlab_config_load(ineqlab_config* c, const char* path) {
  return guarded([&] {
    need(c, "config");
    need(path, "path");
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, std::string("cannot open config file ") + path);
    load_config(c->config, in);
  });
}

int ineqlab_run(const ineqlab_config* c, char** report, char** summary) {
  if (!c) {
    g_last_error = "config must not be NULL";
    return 2;
  }
  const RunResult r = run(c->config);
  if (report) *report = dup(r.report);
  if (summary) *summary = dup(r.summary);
  g_last_error = r.exit_code == 0 ? "" : r.summary;
  return r.exit_code;
}

int ineqlab_execute(const ineqlab_config* c) {
  if (!c) {
    g_last_error = "config must not be NULL";
    return 2;
  }
  const RunResult r = run(c->config);
  int code = r.exit_code;
  if (!r.report.empty()) {
    if (c->config.output.empty()) {
      std::fwrite(r.report.data(), 1, r.report.size(), stdout);
      std::fflush(stdout);
    } else {
      std::ofstream f(c->config.output, std::ios::binary);
      f << r.report;
      f.close();
      if (!f) {
        std::fprintf(stderr, "%s: cannot write %s\n", c->config.command.c_str(), c->config.output.c_str());
        return 2;
      }
    }
  }
  std::fprintf(stderr, "%s\n", r.summary.c_str());
  return code;
}

void ineqlab_string_free(char* s) { std::free(s); }

}  // extern "C"
