#include <doctest.h>

#include <cmath>

#include "krein/cmat2.hpp"
#include "krein/errors.hpp"
#include "reference.hpp"

using namespace krein;

namespace {

CMat2 random_matrix(ref::Rng& rng, double scale = 2.0) {
  return {cplx(rng(-scale, scale), rng(-scale, scale)), cplx(rng(-scale, scale), rng(-scale, scale)),
          cplx(rng(-scale, scale), rng(-scale, scale)), cplx(rng(-scale, scale), rng(-scale, scale))};
}

}  // namespace

TEST_CASE("products and inverses agree with Eigen") {
  ref::Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const CMat2 a = random_matrix(rng);
    const CMat2 b = random_matrix(rng);
    const auto ea = ref::to_eigen(a);
    const auto eb = ref::to_eigen(b);
    CHECK(ref::dist(a * b, ea * eb) < 1e-13);
    CHECK(std::abs(a.det() - ea.determinant()) < 1e-13);
    CHECK(ref::dist(a.adjoint(), ea.adjoint()) < 1e-15);
    if (std::abs(ea.determinant()) > 1e-3) CHECK(ref::dist(a.inverse(), ea.inverse()) < 1e-9 * (1 + ref::opnorm(ea.inverse())));
  }
}

TEST_CASE("singular values match an SVD") {
  ref::Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const CMat2 a = random_matrix(rng);
    Eigen::JacobiSVD<ref::M2> svd(ref::to_eigen(a));
    CHECK(a.norm2() == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
    CHECK(a.min_singular() == doctest::Approx(svd.singularValues()(1)).epsilon(1e-9));
  }
}

TEST_CASE("closed-form exponential matches the Pade exponential") {
  ref::Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const CMat2 a = random_matrix(rng, 1.5);
    const ref::M2 e = ref::to_eigen(a).exp();
    CHECK(ref::dist(expm(a), e) < 1e-11 * (1 + ref::opnorm(e)));
  }
  CHECK(ref::dist(expm(CMat2::zero()), ref::M2::Identity()) == 0.0);
  const CMat2 nilpotent(0.0, 1.0, 0.0, 0.0);
  CHECK(ref::dist(expm(nilpotent), (ref::M2() << 1, 1, 0, 1).finished()) < 1e-15);
}

TEST_CASE("Hermitian logarithm inverts the exponential") {
  ref::Rng rng(4);
  for (int k = 0; k < 200; ++k) {
    const double a = rng(-3, 3);
    const double d = rng(-3, 3);
    const cplx b(rng(-2, 2), rng(-2, 2));
    const CMat2 h(a, b, std::conj(b), d);
    const CMat2 pos = expm(h);
    CHECK(distance(hermitian_log(pos), h) < 1e-10);
    const auto ev = hermitian_eigenvalues(pos);
    CHECK(ev[0] <= ev[1]);
    CHECK(ev[0] > 0.0);
    const CMat2 s = hermitian_inv_sqrt(pos);
    CHECK(distance(s * pos * s, CMat2::identity()) < 1e-10);
  }
  CHECK_THROWS_AS(hermitian_log(CMat2::diag(1.0, -1.0)), PreconditionViolation);
}

TEST_CASE("inverse refuses singular input") {
  CHECK_THROWS_AS(CMat2(1.0, 2.0, 2.0, 4.0).inverse(), SingularMatrix);
  CHECK_THROWS_AS(CMat2::zero().inverse(), SingularMatrix);
  CHECK(CMat2::identity().is_finite());
  CHECK_FALSE(CMat2(std::nan(""), 0.0, 0.0, 1.0).is_finite());
}
