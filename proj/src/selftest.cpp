#include "krein/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "krein/errors.hpp"
#include "krein/extensions.hpp"
#include "krein/krein_core.hpp"
#include "krein/oracle_fd.hpp"
#include "krein/point_interaction.hpp"
#include "krein/weyl_spectral.hpp"

namespace krein {

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr int kDraws = 500;

struct Sampler {
  std::mt19937_64 rng{kSeed};

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  ExtParams any() { return {uniform(-3.0, 3.0), uniform(0.0, kPi), uniform(0.0, kTwoPi), uniform(0.0, kTwoPi)}; }

  ExtParams stable() {
    for (;;) {
      const double phi = uniform(0.0, kPi);
      const double bound = std::atanh(std::min(std::abs(std::cos(phi)), 0.999));
      const double zeta = uniform(-0.95, 0.95) * bound;
      if (std::abs(std::tanh(zeta)) < 0.98 * std::abs(std::cos(phi))) {
        return {zeta, phi, uniform(0.0, kTwoPi), uniform(0.0, kTwoPi)};
      }
    }
  }

  ExtParams unstable() {
    for (;;) {
      const double phi = uniform(0.0, kPi);
      const double zeta = uniform(-3.0, 3.0);
      if (std::abs(std::tanh(zeta)) > 1.02 * std::abs(std::cos(phi)) + 1e-3) {
        return {zeta, phi, uniform(0.0, kTwoPi), uniform(0.0, kTwoPi)};
      }
    }
  }
};

std::string fmt(const char* label, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s = %.3g", label, v);
  return buf;
}

CheckResult max_residual(const std::string& name, double tol, const std::function<double(Sampler&)>& f) {
  Sampler s;
  double worst = 0.0;
  for (int k = 0; k < kDraws; ++k) worst = std::max(worst, f(s));
  return {name, worst < tol, fmt("max residual", worst)};
}

CheckResult check_csym_family() {
  const CMat2 J = pauli_basis().sigma3;
  return max_residual("csym family is a positive involution", 1e-10, [&](Sampler& s) {
    const CMat2 C = build_C({s.uniform(-5.0, 5.0), s.uniform(0.0, kTwoPi)});
    const auto rep = verify_csym(C, J);
    return rep.is_positive ? rep.involution_residual : 1.0;
  });
}

CheckResult check_r_omega() {
  const CMat2 J = pauli_basis().sigma3;
  return max_residual("R_omega anticommutes with J", 1e-12, [&](Sampler& s) {
    const CMat2 R = build_R_omega(s.uniform(0.0, kTwoPi));
    return std::max(anticommutator(J, R).norm2(), distance(R * R, CMat2::identity()));
  });
}

CheckResult check_factor_roundtrip() {
  const CMat2 J = pauli_basis().sigma3;
  return max_residual("C = J exp(chi R_omega) factors back", 1e-8, [&](Sampler& s) {
    const CsymParams p{s.uniform(-4.0, 4.0), s.uniform(0.0, kTwoPi)};
    const CMat2 Y = factor_exponent(build_C(p), J);
    return distance(Y, p.chi() * build_R_omega(p.omega()));
  });
}

CheckResult check_transition_roundtrip() {
  const CMat2 J = pauli_basis().sigma3;
  return max_residual("transition operator round trip", 1e-9, [&](Sampler& s) {
    const CsymParams p{s.uniform(-4.0, 4.0), s.uniform(0.0, kTwoPi)};
    const CMat2 C = build_C(p);
    const CMat2 T = transition_from_C(C, J);
    const auto pr = projections_from_T(T, J);
    return std::max({distance(T, transition_family(p)), distance(c_from_transition(T, J), C),
                     distance(pr.plus + pr.minus, CMat2::identity())});
  });
}

CheckResult check_limit() {
  Sampler s;
  double worst_ratio = 0.0;
  for (int chi = 1; chi <= 20; ++chi) {
    const double r = limit_transition(s.uniform(0.0, kTwoPi), chi);
    worst_ratio = std::max(worst_ratio, r / (2.0 * std::exp(-double(chi))));
  }
  return {"transition tends to -R_omega", worst_ratio <= 1.0, fmt("max ratio to 2e^-chi", worst_ratio)};
}

CheckResult check_k_algebra() {
  const CMat2 J = pauli_basis().sigma3;
  return max_residual("K is J-unitary with the stated determinant and adjoint", 1e-10, [&](Sampler& s) {
    const ExtParams p = s.any();
    const CMat2 K = build_K(p);
    const double unitary = distance(K.adjoint() * J * K, J);
    const double det = std::abs(K.det() + std::exp(cplx(0.0, -2.0 * p.xi())));
    const double adj = distance(J * K * J, build_K(adjoint_params(p)));
    return std::max({unitary, det, adj}) / std::max(1.0, K.norm2() * K.norm2());
  });
}

CheckResult check_dichotomy() {
  Sampler s;
  int disagreements = 0;
  for (int k = 0; k < kDraws; ++k) {
    const ExtParams p = k % 2 ? s.stable() : s.unstable();
    const auto ep = k_eigenvalues(p);
    const bool unimodular = std::abs(std::abs(ep.k_plus) - 1.0) < 1e-8 && std::abs(std::abs(ep.k_minus) - 1.0) < 1e-8;
    disagreements += unimodular != classify(p).is_stable;
  }
  const auto ups = classify(ExtParams(0.0, kPi / 2, 0.3, 0.0));
  disagreements += !(ups.in_upsilon && ups.is_stable);
  return {"unimodular eigenvalues iff stable", disagreements == 0, fmt("disagreements", disagreements)};
}

CheckResult check_commutant() {
  return max_residual("K commutes with its C-symmetry", 1e-10, [](Sampler& s) {
    const ExtParams p = s.stable();
    const CMat2 K = build_K(p);
    return commutator(K, csym_of_extension(p)).norm2() / std::max(1.0, K.norm2());
  });
}

CheckResult check_bounded_powers() {
  Sampler s;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const ExtParams p = s.stable();
    const CMat2 K = build_K(p);
    const double bound = std::exp(std::abs(classify(p).chi.value_or(0.0)));
    CMat2 P = CMat2::identity();
    for (int n = 1; n <= 1000; ++n) {
      P = P * K;
      worst = std::max(worst, P.norm2() / bound);
    }
  }
  return {"powers of stable K are bounded", worst <= 1.0 + 1e-9, fmt("max ||K^n|| / e^|chi|", worst)};
}

CheckResult check_relation() {
  return max_residual("Cayley relation is J-self-adjoint", 1e-10, [](Sampler& s) {
    return krein_adjoint_residual(cayley_to_relation(build_K(s.any())));
  });
}

CheckResult check_channel_vs_closed_form() {
  Sampler s;
  const PointInteractionModel m;
  double worst = 0.0;
  int count_mismatch = 0;
  for (int k = 0; k < 100; ++k) {
    const ExtParams p = s.stable();
    const auto a = find_discrete_spectrum(m, p);
    const auto b = closed_form_eigenvalues(p);
    std::vector<double> ra;
    std::vector<double> rb;
    for (const auto& e : a.eigenvalues) ra.insert(ra.end(), e.multiplicity, e.r);
    for (const auto& e : b.eigenvalues) {
      if (a.scan_interval.contains(e.r)) rb.insert(rb.end(), e.multiplicity, e.r);
    }
    if (ra.size() != rb.size()) {
      ++count_mismatch;
      continue;
    }
    for (std::size_t j = 0; j < ra.size(); ++j) worst = std::max(worst, std::abs(ra[j] - rb[j]) / std::max(1.0, std::abs(rb[j])));
  }
  return {"channel solver matches closed form", count_mismatch == 0 && worst < 1e-10,
          fmt("max rel diff", worst) + ", count mismatches " + std::to_string(count_mismatch)};
}

CheckResult check_omega_independence() {
  Sampler s;
  const PointInteractionModel m;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const ExtParams p = s.stable();
    const auto base = closed_form_eigenvalues(p);
    for (double w : {0.0, 1.0, kPi}) {
      const auto other = closed_form_eigenvalues(ExtParams(p.zeta(), p.phi(), p.xi(), w));
      if (other.eigenvalues.size() != base.eigenvalues.size()) return {"spectrum is omega-independent", false, "count differs"};
      for (std::size_t j = 0; j < base.eigenvalues.size(); ++j) {
        worst = std::max(worst, std::abs(other.eigenvalues[j].r - base.eigenvalues[j].r));
      }
    }
  }
  return {"spectrum is omega-independent", worst < 1e-10, fmt("max diff", worst)};
}

CheckResult check_nevanlinna() {
  Sampler s;
  const PointInteractionModel m;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    std::vector<cplx> pts;
    for (int j = 0; j < 8; ++j) pts.emplace_back(s.uniform(-5.0, 5.0), s.uniform(0.05, 5.0));
    worst = std::min(worst, kernel_gram(m, pts).min_eigenvalue);
  }
  const auto nev = sample_nevanlinna(m, -5.0, 5.0, 0.05, 5.0, 20);
  bool cayley = true;
  for (int a = 0; a < 20; ++a) {
    for (int b = 0; b < 20; ++b) {
      const cplx mu(-5.0 + 10.0 * a / 19.0, 0.05 + 4.95 * b / 19.0);
      cayley = cayley && std::abs(cayley_theta(m.eval(mu))) < 1.0;
    }
    const double r = -0.05 - 5.0 * a / 19.0;
    cayley = cayley && std::abs(std::abs(cayley_theta(m.boundary_eval(r))) - 1.0) < 1e-12;
  }
  const bool ok = worst >= -1e-10 && nev.min_im_ratio > 0.0 && nev.max_conj_residual < 1e-12 && cayley;
  return {"Weyl function is Nevanlinna", ok, fmt("min Gram eigenvalue", worst)};
}

CheckResult check_gamma_maps() {
  Sampler s;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const BoundaryData bd{{s.uniform(-1, 1), s.uniform(-1, 1)}, {s.uniform(-1, 1), s.uniform(-1, 1)},
                          {s.uniform(-1, 1), s.uniform(-1, 1)}, {s.uniform(-1, 1), s.uniform(-1, 1)}};
    const auto g = gamma_maps(bd);
    const auto G0 = gamma0_matrix();
    const auto G1 = gamma1_matrix();
    const std::array<cplx, 4> v{bd.f_plus, bd.f_minus, bd.df_plus, bd.df_minus};
    for (int row = 0; row < 2; ++row) {
      cplx a = 0.0;
      cplx b = 0.0;
      for (int c = 0; c < 4; ++c) {
        a += G0[row][c] * v[c];
        b += G1[row][c] * v[c];
      }
      worst = std::max({worst, std::abs(a - g.gamma0[row]), std::abs(b - g.gamma1[row])});
    }
  }
  return {"boundary maps match their matrices", worst < 1e-14, fmt("max residual", worst)};
}

CheckResult check_oracle() {
  const ExtParams p(0.0, kPi / 4, 0.0, 0.0);
  OracleConfig cfg;
  cfg.r_min = -3.0;
  cfg.N = 2000;
  cfg.L = 10.0;
  const auto rep = scan_spectrum(p, cfg);
  const auto closed = closed_form_eigenvalues(p);
  if (rep.roots.size() != closed.eigenvalues.size()) {
    return {"shooting oracle reproduces the closed form", false, "root count " + std::to_string(rep.roots.size())};
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < rep.roots.size(); ++j) {
    worst = std::max(worst, std::abs(rep.roots[j] - closed.eigenvalues[j].r) / std::abs(closed.eigenvalues[j].r));
  }
  return {"shooting oracle reproduces the closed form", worst < 1e-3, fmt("max rel error", worst)};
}

CheckResult guarded(const char* name, CheckResult (*check)()) {
  try {
    return check();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  return {
      guarded("csym family", check_csym_family),
      guarded("R_omega", check_r_omega),
      guarded("factor", check_factor_roundtrip),
      guarded("transition", check_transition_roundtrip),
      guarded("limit", check_limit),
      guarded("K algebra", check_k_algebra),
      guarded("dichotomy", check_dichotomy),
      guarded("commutant", check_commutant),
      guarded("bounded powers", check_bounded_powers),
      guarded("relation", check_relation),
      guarded("channel solver", check_channel_vs_closed_form),
      guarded("omega", check_omega_independence),
      guarded("nevanlinna", check_nevanlinna),
      guarded("gamma maps", check_gamma_maps),
      guarded("oracle", check_oracle),
  };
}

}  // namespace krein
