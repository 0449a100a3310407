#include <doctest.h>

#include <cmath>

#include "krein/errors.hpp"
#include "krein/point_interaction.hpp"
#include "reference.hpp"

using namespace krein;

TEST_CASE("free Weyl function") {
  CHECK(std::abs(m_free(-1.0) + 2.0) < 1e-15);
  CHECK(std::abs(m_free(kI) - cplx(-std::sqrt(2.0), std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(m_free(-0.25) + 1.0) < 1e-15);
  ref::Rng rng(40);
  for (int k = 0; k < 500; ++k) {
    const cplx mu(rng(-10, 10), rng(-10, 10));
    CHECK(sqrt_upper(mu).imag() >= 0.0);
    CHECK(std::abs(sqrt_upper(mu) * sqrt_upper(mu) - mu) < 1e-12 * (1 + std::abs(mu)));
  }
  const PointInteractionModel m;
  CHECK(m.boundary_eval(-4.0) == doctest::Approx(-4.0));
  CHECK_THROWS_AS(m.boundary_eval(0.0), DomainError);
  CHECK_THROWS_AS(m.boundary_eval(1.0), DomainError);
  CHECK(PointInteractionModel::essential_spectrum().lo == 0.0);
}

TEST_CASE("level inversion of the model") {
  const PointInteractionModel m;
  const auto sol = m.solve_level(-1.0);
  REQUIRE(sol);
  REQUIRE(sol->size() == 1);
  CHECK(std::abs((*sol)[0] + 0.25) < 1e-15);
  CHECK(m.solve_level(1.0)->empty());
  ref::Rng rng(41);
  for (int k = 0; k < 200; ++k) {
    const cplx level(rng(-5, -0.01), rng(-5, 5));
    const auto s = m.solve_level(level);
    REQUIRE(s->size() == 1);
    CHECK(std::abs(m.eval((*s)[0]) - level) < 1e-12 * (1 + std::abs(level)));
  }
}

TEST_CASE("boundary maps") {
  const cplx c(0.3, 0.1);
  const cplx d(-1.2, 0.4);
  auto g = gamma_maps({c, c, d, -d});
  CHECK(std::abs(g.gamma0[0] - c) < 1e-15);
  CHECK(std::abs(g.gamma0[1]) < 1e-15);
  CHECK(std::abs(g.gamma1[0] - 2.0 * d) < 1e-15);
  CHECK(std::abs(g.gamma1[1]) < 1e-15);

  g = gamma_maps({c, -c, d, d});
  CHECK(std::abs(g.gamma0[0]) < 1e-15);
  CHECK(std::abs(g.gamma0[1] - c) < 1e-15);
  CHECK(std::abs(g.gamma1[1] - 2.0 * d) < 1e-15);

  g = gamma_maps({0.0, 0.0, d, c});
  CHECK(std::abs(g.gamma0[0]) + std::abs(g.gamma0[1]) == 0.0);

  // Stacked (Gamma0; Gamma1) is an invertible 4x4 map.
  Eigen::Matrix4cd M;
  const auto G0 = gamma0_matrix();
  const auto G1 = gamma1_matrix();
  for (int c2 = 0; c2 < 4; ++c2) {
    M(0, c2) = G0[0][c2];
    M(1, c2) = G0[1][c2];
    M(2, c2) = G1[0][c2];
    M(3, c2) = G1[1][c2];
  }
  CHECK(std::abs(M.determinant()) > 0.1);
}

TEST_CASE("Weyl function from the boundary maps") {
  // Even solution e^{i k |x|} and odd solution sign(x) e^{i k |x|}, k = sqrt(mu):
  // Gamma1 = m(mu) Gamma0 on both.
  ref::Rng rng(42);
  for (int k = 0; k < 100; ++k) {
    const cplx mu(rng(-5, 5), rng(0.01, 5));
    const cplx kk = sqrt_upper(mu);
    const auto even = gamma_maps({1.0, 1.0, kI * kk, -kI * kk});
    const auto odd = gamma_maps({1.0, -1.0, kI * kk, kI * kk});
    CHECK(std::abs(even.gamma1[0] - m_free(mu) * even.gamma0[0]) < 1e-12);
    CHECK(std::abs(odd.gamma1[1] - m_free(mu) * odd.gamma0[1]) < 1e-12);
  }
}

TEST_CASE("closed-form eigenvalues") {
  auto rep = closed_form_eigenvalues({0.0, kPi / 2, 0.0, 0.0});
  REQUIRE(rep.eigenvalues.size() == 1);
  CHECK(rep.eigenvalues[0].r == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(rep.eigenvalues[0].multiplicity == 2);

  rep = closed_form_eigenvalues({0.0, kPi / 4, 0.0, 0.0});
  REQUIRE(rep.eigenvalues.size() == 2);
  CHECK(rep.eigenvalues[0].r == doctest::Approx(-1.4571068).epsilon(1e-7));
  CHECK(rep.eigenvalues[0].channel == Channel::minus);
  CHECK(rep.eigenvalues[1].r == doctest::Approx(-0.0428932).epsilon(1e-6));
  CHECK(rep.eigenvalues[1].channel == Channel::plus);

  CHECK(closed_form_eigenvalues({0.0, kPi / 2, kPi / 2, 0.0}).eigenvalues.empty());
  CHECK_THROWS_AS(closed_form_eigenvalues({1.0, kPi / 3, 0.0, 0.0}), PreconditionViolation);

  // Every closed-form eigenvalue makes the raw boundary relation singular.
  ref::Rng rng(43);
  for (int k = 0; k < 300; ++k) {
    const ExtParams p = rng.stable();
    const ref::M2 K = ref::k_matrix(p.zeta(), p.phi(), p.xi(), p.omega());
    for (const auto& e : closed_form_eigenvalues(p).eigenvalues) {
      CHECK(e.r < 0.0);
      const cplx m = -2.0 * std::sqrt(-e.r);
      Eigen::JacobiSVD<ref::M2> svd(cplx(0.0, 1.0) * (ref::M2::Identity() + K) - m * (ref::M2::Identity() - K));
      const double smin = svd.singularValues()(1);
      CHECK(smin < 1e-9 * (1 + std::abs(m)) * std::cosh(p.zeta()));
      if (e.multiplicity == 2) CHECK(svd.singularValues()(0) < 1e-9 * (1 + std::abs(m)));
    }
  }
}
