#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "krein/extensions.hpp"
#include "krein/krein_core.hpp"
#include "krein/oracle_fd.hpp"
#include "krein/point_interaction.hpp"
#include "krein/weyl_spectral.hpp"

using namespace krein;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

struct Rng {
  std::mt19937_64 gen{7};
  double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

  ExtParams stable() {
    for (;;) {
      const double phi = (*this)(0.0, kPi);
      const double zeta = (*this)(-3.0, 3.0);
      if (std::abs(std::tanh(zeta)) < 0.98 * std::abs(std::cos(phi))) {
        return {zeta, phi, (*this)(0.0, kTwoPi), (*this)(0.0, kTwoPi)};
      }
    }
  }

  ExtParams unstable() {
    for (;;) {
      const double phi = (*this)(0.0, kPi);
      const double zeta = (*this)(-3.0, 3.0);
      if (std::abs(phi - kPi / 2) > 1e-3 && std::abs(std::tanh(zeta)) > 1.02 * std::abs(std::cos(phi)) + 1e-3) {
        return {zeta, phi, (*this)(0.0, kTwoPi), (*this)(0.0, kTwoPi)};
      }
    }
  }
};

Eigen::Vector2cd eigen_eigenvalues(const CMat2& m) {
  Eigen::Matrix2cd e;
  e << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return Eigen::ComplexEigenSolver<Eigen::Matrix2cd>(e).eigenvalues();
}

std::vector<double> expand(const SpectrumReport& rep) {
  std::vector<double> out;
  for (const auto& e : rep.eigenvalues) out.insert(out.end(), e.multiplicity, e.r);
  return out;
}

Outcome algebraic_certificates() {
  Rng rng;
  const CMat2 J = pauli_basis().sigma3;
  double worst = 0.0;
  bool positive = true;
  for (int k = 0; k < 1000; ++k) {
    const CsymParams cp(rng(-3.0, 3.0), rng(0.0, kTwoPi));
    const CMat2 C = build_C(cp);
    const CMat2 R = build_R_omega(cp.omega());
    worst = std::max(worst, distance(C * C, CMat2::identity()));
    worst = std::max(worst, anticommutator(J, R).norm2());
    const auto ev = hermitian_eigenvalues(J * C);
    positive = positive && ev[0] > 0.0 && (J * C - (J * C).adjoint()).norm2() < 1e-10;

    const ExtParams p(rng(-3.0, 3.0), rng(0.0, kPi), rng(0.0, kTwoPi), rng(0.0, kTwoPi));
    const CMat2 K = build_K(p);
    worst = std::max(worst, distance(K.adjoint() * J * K, J));
    worst = std::max(worst, std::abs(K.det() + std::exp(cplx(0.0, -2.0 * p.xi()))));
    worst = std::max(worst, distance(J * K * J, build_K(ExtParams(-p.zeta(), p.phi(), p.xi(), p.omega()))));
  }
  return {worst < 1e-10 && positive, format("max residual %.2e, JC > 0 on all draws: %s", worst, positive ? "yes" : "no")};
}

Outcome stability_dichotomy() {
  int disagreements = 0;
  int stable = 0;
  int upsilon = 0;
  for (int a = 0; a < 80; ++a) {
    for (int b = 0; b < 80; ++b) {
      const ExtParams p(-2.0 + a * (4.0 / 80.0), b * (kPi / 80.0), 0.0, 0.0);
      const auto ev = eigen_eigenvalues(build_K(p));
      const bool unimodular = std::abs(std::abs(ev(0)) - 1.0) < 1e-8 && std::abs(std::abs(ev(1)) - 1.0) < 1e-8;
      const auto cls = classify(p);
      disagreements += unimodular != cls.is_stable;
      stable += cls.is_stable;
      upsilon += cls.in_upsilon;
    }
  }
  return {disagreements == 0 && upsilon > 0,
          format("%d disagreements over 6400 cells (%d stable, %d in Upsilon)", disagreements, stable, upsilon)};
}

Outcome commutant() {
  Rng rng;
  double worst_stable = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ExtParams p = rng.stable();
    const double chi = solve_chi(p.zeta(), p.phi());
    worst_stable = std::max(worst_stable, commutator(build_K(p), build_C({chi, p.omega()})).norm2());
  }
  double best_unstable = INFINITY;
  for (int k = 0; k < 200; ++k) {
    const ExtParams p = rng.unstable();
    const CMat2 K = build_K(p);
    std::vector<double> omegas{p.omega()};
    for (int j = 0; j < 36; ++j) omegas.push_back(j * kTwoPi / 36.0);
    for (double w : omegas) {
      for (int j = 0; j <= 3200; ++j) {
        const double chi = -8.0 + j * 0.005;
        best_unstable = std::min(best_unstable, commutator(K, build_C({chi, w})).norm2());
      }
    }
  }
  return {worst_stable < 1e-10 && best_unstable >= 1e-6,
          format("stable max ||[K,C]|| %.2e; unstable min over scan %.3e", worst_stable, best_unstable)};
}

Outcome model_closed_form() {
  const PointInteractionModel model;
  struct Case {
    ExtParams p;
    std::vector<double> expected;
  };
  const std::vector<Case> cases{{{0.0, kPi / 4, 0.0, 0.0}, {-1.4571068, -0.0428932}},
                                {{0.0, kPi / 2, 0.0, 0.0}, {-0.25, -0.25}},
                                {{0.0, kPi / 2, kPi / 2, 0.0}, {}}};
  bool ok = true;
  double value_err = 0.0;
  double agree = 0.0;
  for (const auto& c : cases) {
    const auto closed = expand(closed_form_eigenvalues(c.p));
    const auto solver = expand(find_discrete_spectrum(model, c.p));
    if (closed.size() != c.expected.size() || solver.size() != c.expected.size()) {
      ok = false;
      continue;
    }
    for (std::size_t j = 0; j < closed.size(); ++j) {
      value_err = std::max(value_err, std::abs(closed[j] - c.expected[j]));
      agree = std::max(agree, std::abs(closed[j] - solver[j]));
    }
  }
  const auto ups = closed_form_eigenvalues(cases[1].p);
  ok = ok && ups.eigenvalues.size() == 1 && ups.eigenvalues[0].multiplicity == 2;
  return {ok && value_err < 5e-8 && agree < 1e-10,
          format("max |r - stated| %.2e (stated to 7-8 digits), solver vs closed form %.2e", value_err, agree)};
}

Outcome oracle_agreement() {
  OracleConfig cfg;
  const auto rep = scan_spectrum({0.0, kPi / 4, 0.0, 0.0}, cfg);
  const auto closed = expand(closed_form_eigenvalues({0.0, kPi / 4, 0.0, 0.0}));
  bool ok = rep.roots.size() == 2;
  double rel = INFINITY;
  if (ok) rel = std::max(std::abs(rep.roots[0] / closed[0] - 1.0), std::abs(rep.roots[1] / closed[1] - 1.0));

  const auto ups = scan_spectrum({0.0, kPi / 2, 0.0, 0.0}, cfg);
  const bool ups_ok = ups.roots.empty() && ups.degenerate.size() == 1 && std::abs(ups.degenerate[0] / -0.25 - 1.0) < 1e-3;
  const auto a0 = scan_spectrum({0.0, kPi / 2, kPi / 2, 0.0}, cfg);
  const bool a0_ok = a0.roots.empty() && a0.degenerate.empty();
  double ups_rel = ups_ok ? std::abs(ups.degenerate[0] / -0.25 - 1.0) : INFINITY;

  std::vector<double> err;
  for (int n : {1000, 2000, 4000}) {
    OracleConfig c2 = cfg;
    c2.N = n;
    const auto r = scan_spectrum({0.0, kPi / 4, 0.0, 0.0}, c2);
    err.push_back(r.roots.size() == 2 ? std::abs(r.roots[0] - closed[0]) : INFINITY);
  }
  const double order1 = std::log2(err[0] / err[1]);
  const double order2 = std::log2(err[1] / err[2]);
  const bool second_order = std::abs(order1 - 2.0) < 0.2 && std::abs(order2 - 2.0) < 0.2;
  return {ok && rel < 1e-3 && ups_ok && a0_ok && second_order,
          format("max rel error %.2e (double root %.2e, Dirichlet case empty: %s), observed orders %.3f %.3f", rel,
                 ups_rel, a0_ok ? "yes" : "no", order1, order2)};
}

Outcome reality_and_nonreality() {
  Rng rng;
  const PointInteractionModel model;
  double smallest = INFINITY;
  for (int k = 0; k < 20; ++k) {
    const auto rel = cayley_to_relation(build_K(rng.stable()));
    for (int a = 0; a < 40; ++a) {
      for (int b = 0; b < 40; ++b) {
        const cplx mu(-5.0 + 10.0 * a / 39.0, 0.05 + 4.95 * b / 39.0);
        smallest = std::min(smallest, std::abs(det_condition(model, rel, mu)));
      }
    }
  }
  const ExtParams p(1.0, kPi / 3, 0.0, 0.0);
  const auto roots = nonreal_spectrum_probe(model, p, {-2.0, 2.0, -2.0, 2.0, 40, 40});
  const auto rel = cayley_to_relation(build_K(p));
  double match = 0.0;
  double min_im = INFINITY;
  const auto ep = k_eigenvalues(p);
  std::vector<cplx> predicted;
  for (const cplx k : {ep.k_plus, ep.k_minus}) {
    const cplx r = kI * (1.0 + k) / (1.0 - k);
    predicted.push_back(-r * r / 4.0);
  }
  for (const cplx z : roots) {
    min_im = std::min(min_im, std::abs(z.imag()));
    double best = INFINITY;
    for (const cplx w : predicted) best = std::min(best, std::abs(z - w));
    match = std::max(match, best);
  }
  const bool ok = smallest > 0.0 && roots.size() == 2 && min_im > 1e-6 && match < 1e-10;
  std::string where;
  for (const cplx z : roots) where += format(" %.6f%+.6fi", z.real(), z.imag());
  return {ok, format("stable min |det| %.3e; unstable roots%s, min |Im| %.3e, vs -r^2/4 %.1e", smallest, where.c_str(),
                     min_im, match)};
}

Outcome omega_invariance() {
  const PointInteractionModel model;
  const std::vector<std::array<double, 3>> bases{{0.2, 0.5, 0.3}, {0.0, kPi / 4, 0.0}, {-0.4, 2.0, 1.0}};
  double spec_diff = 0.0;
  double oracle_diff = 0.0;
  bool counts = true;
  OracleConfig cfg;
  cfg.N = 2000;
  cfg.L = 10.0;
  cfg.r_min = -5.0;
  for (const auto& b : bases) {
    const auto s0 = expand(find_discrete_spectrum(model, {b[0], b[1], b[2], 0.0}));
    const auto o0 = scan_spectrum({b[0], b[1], b[2], 0.0}, cfg).roots;
    for (double w : {1.0, kPi}) {
      const auto s = expand(find_discrete_spectrum(model, {b[0], b[1], b[2], w}));
      const auto o = scan_spectrum({b[0], b[1], b[2], w}, cfg).roots;
      if (s.size() != s0.size() || o.size() != o0.size()) {
        counts = false;
        continue;
      }
      for (std::size_t j = 0; j < s.size(); ++j) spec_diff = std::max(spec_diff, std::abs(s[j] - s0[j]));
      for (std::size_t j = 0; j < o.size(); ++j) oracle_diff = std::max(oracle_diff, std::abs(o[j] - o0[j]));
    }
  }
  return {counts && spec_diff < 1e-10 && oracle_diff < 1e-4,
          format("max spectrum diff %.2e, max oracle root diff %.2e", spec_diff, oracle_diff)};
}

Outcome nevanlinna() {
  Rng rng;
  const PointInteractionModel model;
  double min_eig = INFINITY;
  for (int k = 0; k < 100; ++k) {
    std::vector<cplx> pts;
    const int n = 2 + static_cast<int>(rng(0.0, 11.0));
    for (int j = 0; j < n; ++j) pts.emplace_back(rng(-5.0, 5.0), rng(0.05, 5.0));
    min_eig = std::min(min_eig, kernel_gram(model, pts).min_eigenvalue);
  }
  double max_inside = 0.0;
  for (int a = 0; a < 40; ++a) {
    for (int b = 0; b < 40; ++b) {
      const cplx mu(-5.0 + 10.0 * a / 39.0, 0.01 + 4.99 * b / 39.0);
      max_inside = std::max(max_inside, std::abs(cayley_theta(model.eval(mu))));
    }
  }
  double circle = 0.0;
  for (int a = 0; a < 200; ++a) {
    const double r = -1e-3 - 10.0 * a / 199.0;
    circle = std::max(circle, std::abs(std::abs(cayley_theta(model.boundary_eval(r))) - 1.0));
  }
  return {min_eig >= -1e-10 && max_inside < 1.0 && circle < 1e-12,
          format("min Gram eigenvalue %.3e, max |theta| on C+ %.6f, max ||theta(r)|-1| %.1e", min_eig, max_inside, circle)};
}

Outcome limit_property() {
  Rng rng;
  bool bounded = true;
  double at20 = 0.0;
  for (int chi = 1; chi <= 20; ++chi) {
    for (int j = 0; j < 8; ++j) {
      const double v = limit_transition(rng(0.0, kTwoPi), chi);
      bounded = bounded && v <= 2.0 * std::exp(-double(chi));
      if (chi == 20) at20 = std::max(at20, v);
    }
  }
  return {bounded && at20 < 1e-8, format("bound holds for chi = 1..20: %s; value at chi = 20: %.3e", bounded ? "yes" : "no", at20)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "algebraic certificate suite", 5.0, algebraic_certificates},
      {2, "stability dichotomy on 80x80 grid", 5.0, stability_dichotomy},
      {3, "commutant check", 0.0, commutant},
      {4, "model eigenvalues, closed form", 1.0, model_closed_form},
      {5, "oracle agreement and O(h^2) convergence", 30.0, oracle_agreement},
      {6, "reality for stable, nonreality for unstable", 10.0, reality_and_nonreality},
      {7, "omega-invariance of spectrum", 0.0, omega_invariance},
      {8, "Nevanlinna kernel and Cayley image", 0.0, nevanlinna},
      {9, "limit property of the transition family", 0.0, limit_property},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::string budget = c.budget_s > 0.0 ? format(", budget %.0f s", c.budget_s) : "";
    std::printf("%s criterion %d: %s | %s | %.3f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                budget.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
