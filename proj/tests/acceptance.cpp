// One PASS/FAIL line per acceptance criterion. Exit status 1 when any fails.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ineqlab/constants.hpp"
#include "ineqlab/decomp.hpp"
#include "ineqlab/error.hpp"
#include "ineqlab/families.hpp"
#include "ineqlab/functionals.hpp"
#include "ineqlab/limits.hpp"
#include "ineqlab/rearrange.hpp"
#include "ineqlab/transforms.hpp"
#include "ineqlab/varopt.hpp"
#include "oracles.hpp"

using namespace ineqlab;
using std::numbers::pi;

namespace {

int failed = 0;

Params make(int N, double p) {
  Params P;
  P.N = N;
  P.p = p;
  return P;
}

RadialFn cone(int N, std::size_t n = RadialGrid::kDefaultCount) {
  return test_family({FamilyKind::cone, 0}, make(N, 2), RadialGrid::ball(N, 1.0, n));
}

// Runs one criterion; an exception counts as a failure with its message.
template <class F>
void criterion(int id, const char* title, F&& body) {
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "threw: " << e.what();
  }
  if (!ok) ++failed;
  std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.str().c_str());
  std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

int main() {
  criterion(1, "closed-form Sobolev constant", [](std::ostream& d) {
    const double S = constant(ConstantKind::sobolev, make(3, 2));
    const double closed = 3 * std::pow(pi / 2, 4.0 / 3.0);
    const double orc = oracle::sobolev(3, 2).convert_to<double>();
    d << "S = " << S << ", rel err " << rel(S, closed) << " (closed form), " << rel(S, orc) << " (oracle)";
    return rel(S, closed) <= 1e-10 && rel(S, orc) <= 1e-10;
  });

  criterion(2, "variational recovery of the Sobolev constant", [](std::ostream& d) {
    const QuotientSpec s{QuotientKind::sobolev, make(3, 2), RadialGrid::whole_space(3), Domain::whole_space()};
    const RadialFn init = push_function(TransformSpec::ball_to_space(3, 2.0, 1.0), cone(3), s.grid);
    const RayleighResult r = minimize_rayleigh(s, init, 5000);
    const double S = oracle::sobolev(3, 2).convert_to<double>();
    d << r.initial_value << " -> " << r.value << " in " << r.iterations << " iterations, rel gap " << rel(r.value, S);
    return r.iterations <= 5000 && rel(r.value, S) <= 0.02;
  });

  criterion(3, "Hardy minimizing sequence", [](std::ostream& d) {
    const auto q = minimizing_sequence_sweep(SequenceKind::hardy, make(3, 2), {0.4, 0.2, 0.1, 0.05}).column("quotient");
    bool ok = true;
    for (std::size_t i = 0; i < q.size(); ++i) {
      d << q[i] << " ";
      ok = ok && q[i] >= 0.25 - 1e-3 && (i == 0 || q[i] < q[i - 1]);
    }
    return ok;
  });

  criterion(4, "transformation identities", [](std::ostream& d) {
    const auto b = TransformSpec::ball_to_space(3, 2.0, 1.0);
    const double m4096 = verify_identities(b, cone(3)).max_mismatch();
    std::vector<double> e;
    for (std::size_t n : {512u, 1024u, 2048u}) e.push_back(verify_identities(b, cone(3, n)).max_mismatch());
    const double o1 = std::log2(e[0] / e[1]), o2 = std::log2(e[1] / e[2]);
    const auto s = TransformSpec::dim_shift(3, 4, 2.0);
    auto bubble = [](std::size_t n) {
      return test_family({FamilyKind::talenti_bubble, 0}, make(3, 2), RadialGrid::whole_space(3, n));
    };
    const double d4096 = verify_identities(s, bubble(4096)).max_mismatch();
    std::vector<double> f;
    for (std::size_t n : {512u, 1024u, 2048u}) f.push_back(verify_identities(s, bubble(n)).max_mismatch());
    const double p1 = std::log2(f[0] / f[1]), p2 = std::log2(f[1] / f[2]);
    d << "ball_to_space " << m4096 << " (orders " << o1 << ", " << o2 << "); dim_shift " << d4096 << " (mismatches "
      << f[0] << ", " << f[1] << ", " << f[2] << ", orders " << p1 << ", " << p2 << ")";
    return m4096 <= 1e-5 && o1 >= 1.8 && o2 >= 1.8 && d4096 <= 1e-5 && p1 >= 1.8 && p2 >= 1.8;
  });

  criterion(5, "equivalence transport", [](std::ostream& d) {
    const Params P = make(3, 2);
    Params half = P;
    half.R = 0.5;
    const RadialGrid g = RadialGrid::ball(3, 1.0);
    const auto b = TransformSpec::ball_to_space(3, 2.0, 1.0);
    const std::vector<RadialFn> us = {test_family({FamilyKind::cone, 0}, P, g),
                                      test_family({FamilyKind::cone, 0}, half, g),
                                      test_family({FamilyKind::moser_seq, 20}, half, g),
                                      test_family({FamilyKind::log_power, 0.5}, P, g)};
    double worst = 0.0;
    for (const RadialFn& u : us) {
      const RadialFn w = push_function(b, u);
      worst = std::max(worst, relative_mismatch(evaluate(InequalityKind::improved_sobolev, u, P).deficit,
                                                evaluate(InequalityKind::sobolev, w, P).deficit));
    }
    d << us.size() << " members, worst relative mismatch " << worst;
    return worst <= 1e-3;
  });

  criterion(6, "decay exponents", [](std::ostream& d) {
    const std::vector<double> deltas = {1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 3e-6, 1e-6};
    bool ok = true;
    for (int N : {3, 4}) {
      const double s = fit_decay_exponent(sweep(SweepKind::sobolev_decay, make(N, 2), deltas));
      const double h = fit_decay_exponent(sweep(SweepKind::hardy_decay, make(N, 2), deltas));
      d << "N=" << N << " sobolev " << s << " hardy " << h << "; ";
      ok = ok && std::abs(s - (N - 1)) <= 0.05 && std::abs(h - N) <= 0.05;
    }
    return ok;
  });

  criterion(7, "limits as N grows", [](std::ostream& d) {
    Params P = make(3, 2);
    P.m = 3;
    const SweepTable ld = sweep(SweepKind::lower_dim_coeff, P, {10, 100, 1000, 10000});
    const auto v = ld.column("value");
    const auto g = ld.column("gap_to_limit");
    bool shrinking = true;
    for (std::size_t i = 1; i < g.size(); ++i) shrinking = shrinking && std::abs(g[i]) < std::abs(g[i - 1]);
    Params Q = make(3, 2);
    Q.n = 1;
    const double ls = sweep(SweepKind::logsob_coeff, Q, {10000}).column("value")[0];
    const double target = 2 / (pi * std::numbers::e);
    d << "lower_dim " << v.back() << " (gaps shrinking: " << (shrinking ? "yes" : "no") << "), logsob " << ls;
    return rel(v.back(), 0.25) <= 0.02 && shrinking && rel(ls, target) <= 0.01;
  });

  criterion(8, "log-Sobolev sharpness on Gaussians", [](std::ostream& d) {
    Params P = make(3, 2);
    P.n = 1;
    double best = INFINITY, lowest = INFINITY, best_sigma = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double sigma = std::pow(10.0, -1.0 + 2.0 * i / 19.0);
      const RadialFn g = test_family({FamilyKind::gaussian, sigma}, P, RadialGrid::whole_space(1));
      const double def = evaluate(InequalityKind::log_sobolev, g, P).deficit;
      if (std::abs(def) < best) best = std::abs(def), best_sigma = sigma;
      lowest = std::min(lowest, def);
    }
    const RadialFn g1 = test_family({FamilyKind::gaussian, 1.0}, P, RadialGrid::whole_space(1));
    const auto r = evaluate(InequalityKind::log_sobolev, g1, P);
    const double eq = -(1 + std::log(2 * pi)) / 2;
    d << "best |deficit| " << best << " at sigma " << best_sigma << ", min deficit " << lowest << ", standard member "
      << r.lhs << " / " << r.rhs;
    return best <= 1e-4 && lowest >= -1e-6 && rel(r.lhs, eq) <= 1e-6 && rel(r.rhs, eq) <= 1e-6;
  });

  criterion(9, "Trudinger-Moser dichotomy", [](std::ostream& d) {
    auto lhs = [](double alpha, double k) {
      Params P = make(2, 2);
      P.alpha = alpha;
      P.R = 1.0;
      return evaluate(InequalityKind::trudinger_moser,
                      test_family({FamilyKind::moser_seq, k}, P, RadialGrid::ball(2, 1.0)), P)
          .lhs;
    };
    const double first = lhs(0.9 * 4 * pi, 10);
    double hi = first, big = 0.0;
    for (double k = 10; k <= 1e4 * 1.0001; k *= std::sqrt(10.0)) {
      hi = std::max(hi, lhs(0.9 * 4 * pi, k));
      big = std::max(big, lhs(1.1 * 4 * pi, k));
    }
    d << "0.9 alpha: max " << hi << " vs lhs(10) " << first << "; 1.1 alpha: max " << big << " (needs > 1e6)";
    return hi <= 1.1 * first && big > 1e6;
  });

  criterion(10, "partition machinery", [](std::ostream& d) {
    double pou = 0.0;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ls(-20.0, 0.0);
    for (int N : {2, 3, 4}) {
      const Partition part = build_partition(N);
      for (int i = 0; i < 10000; ++i) {
        const double r = std::exp(ls(rng));
        double s = 0.0;
        for (int k : part.active(r)) s += std::pow(part.phi(k, r), N);
        pou = std::max(pou, std::abs(s - 1.0));
      }
    }
    double adm[3];
    for (int N : {2, 3, 4}) {
      adm[N - 2] = INFINITY;
      for (int k = 1; k <= 1000; ++k) adm[N - 2] = std::min(adm[N - 2], admissibility_value(DecayProfile::exp_decay(), N, k));
    }
    bool finite = true;
    for (int N : {2, 3, 4}) {
      const RadialGrid g = RadialGrid::ball(N, 1.0);
      const Params P = make(N, N);
      for (const RadialFn& u : {test_family({FamilyKind::cone, 0}, P, g), test_family({FamilyKind::moser_seq, 20}, P, g),
                                test_family({FamilyKind::log_power, (N - 1.0) / N}, P, g)})
        for (double beta : {2.0 * N + 1, 2.0 * N + 3}) finite = finite && std::isfinite(assemble_critical_hardy(u, 2.0, beta).lhs);
    }
    d << "partition error " << pou << "; admissibility inf N=2,3,4: " << adm[0] << ", " << adm[1] << ", " << adm[2]
      << " (needs >= 0.031); assembled lhs finite: " << (finite ? "yes" : "no");
    return pou <= 1e-12 && adm[0] >= 0.031 && adm[1] >= 0.031 && adm[2] >= 0.031 && finite;
  });

  criterion(11, "rearrangement", [](std::ostream& d) {
    double worst = 0.0;
    bool chain = true;
    for (int N : {2, 3}) {
      const RadialGrid g = RadialGrid::ball(N, 1.0);
      const Params P = make(N, 1.5);
      for (const RadialFn& u : {test_family({FamilyKind::cone, 0}, P, g), test_family({FamilyKind::moser_seq, 20}, P, g),
                                test_family({FamilyKind::log_power, (N - 1.0) / N}, P, g)}) {
        const RearrangedFn us = decreasing_rearrangement(u);
        for (double p : {1.0, 2.0, double(N)})
          worst = std::max(worst, rel(lz_quasinorm(us, LZIndex{p, p, 0.0}, us.measure), lq_norm(u, p)));
        const ChainRecord c = embedding_chain_check(u, 2.0 * N);
        chain = chain && c.monotone;
      }
      const ChainRecord h = embedding_chain_check(test_family({FamilyKind::hardy_seq, 0.2}, P, g), 2.0 * N);
      chain = chain && h.monotone;
    }
    const RearrangedFn cs = decreasing_rearrangement(cone(2));
    double cerr = 0.0;
    for (std::size_t i = 0; i < cs.t.size(); ++i) cerr = std::max(cerr, std::abs(cs.values[i] - (1 - std::sqrt(cs.t[i] / pi))));
    d << "L^{p,p} vs L^p worst " << worst << ", cone u* error " << cerr << ", chains monotone: " << (chain ? "yes" : "no");
    return worst <= 1e-4 && cerr <= 1e-4 && chain;
  });

  criterion(12, "discrete gradient check", [](std::ostream& d) {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (auto [kind, N, ball] : {std::tuple{QuotientKind::hardy, 3, true}, std::tuple{QuotientKind::sobolev, 3, false},
                                 std::tuple{QuotientKind::critical_hardy, 2, true}}) {
      const QuotientSpec s{kind, make(N, 2), ball ? RadialGrid::ball(N, 1.0, 512) : RadialGrid::whole_space(N, 512),
                           ball ? Domain::ball(1.0) : Domain::whole_space()};
      const DiscreteQuotient Q(s);
      std::vector<double> u(s.grid.size());
      for (std::size_t i = 0; i < u.size(); ++i)
        u[i] = ball ? (1 - s.grid[i]) * (1.2 + 0.3 * s.grid[i] * s.grid[i]) : 1 / (1 + s.grid[i] * s.grid[i]);
      const auto grad = Q.gradient(u);
      for (int k = 0; k < 20; ++k) {
        std::vector<double> dir(u.size()), up(u), um(u);
        for (std::size_t i = 0; i < u.size(); ++i) dir[i] = nd(rng) * std::abs(u[i]);
        const double h = 1e-6;
        for (std::size_t i = 0; i < u.size(); ++i) up[i] += h * dir[i], um[i] -= h * dir[i];
        const double fd = (Q.value(up) - Q.value(um)) / (2 * h);
        double an = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) an += grad[i] * dir[i];
        worst = std::max(worst, std::abs(an - fd) / std::abs(fd));
      }
    }
    d << "worst relative error " << worst << " over 60 directions";
    return worst <= 1e-5;
  });

  std::printf("%d of 12 criteria failed\n", failed);
  return failed ? 1 : 0;
}
