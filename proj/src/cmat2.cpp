#include "krein/cmat2.hpp"

#include <algorithm>
#include <cmath>

#include "krein/errors.hpp"

namespace krein {

CMat2& CMat2::operator+=(const CMat2& o) {
  for (int k = 0; k < 4; ++k) e_[k] += o.e_[k];
  return *this;
}

CMat2& CMat2::operator-=(const CMat2& o) {
  for (int k = 0; k < 4; ++k) e_[k] -= o.e_[k];
  return *this;
}

CMat2& CMat2::operator*=(cplx s) {
  for (auto& v : e_) v *= s;
  return *this;
}

CMat2 CMat2::adjoint() const {
  return {std::conj(e_[0]), std::conj(e_[2]), std::conj(e_[1]), std::conj(e_[3])};
}

double CMat2::frobenius() const {
  double s = 0.0;
  for (const auto& v : e_) s += std::norm(v);
  return std::sqrt(s);
}

// sigma_max^2 = (F^2 + sqrt(F^4 - 4|det|^2)) / 2
double CMat2::norm2() const {
  // largest eigenvalue of A A*, with a cancellation-free discriminant
  const double p = std::norm(e_[0]) + std::norm(e_[1]);
  const double q = std::norm(e_[2]) + std::norm(e_[3]);
  const cplx off = e_[0] * std::conj(e_[2]) + e_[1] * std::conj(e_[3]);
  const double disc = std::hypot(p - q, 2.0 * std::abs(off));
  return std::sqrt(0.5 * (p + q + disc));
}

double CMat2::min_singular() const {
  const double smax = norm2();
  if (smax == 0.0) return 0.0;
  return std::abs(det()) / smax;
}

CMat2 CMat2::inverse(double rel_tol) const {
  const double smax = norm2();
  if (smax == 0.0 || min_singular() <= rel_tol * smax) {
    throw SingularMatrix("2x2 matrix is singular to working precision");
  }
  const cplx d = det();
  return {e_[3] / d, -e_[1] / d, -e_[2] / d, e_[0] / d};
}

bool CMat2::is_finite() const {
  return std::all_of(e_.begin(), e_.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

CMat2 operator+(CMat2 a, const CMat2& b) { return a += b; }
CMat2 operator-(CMat2 a, const CMat2& b) { return a -= b; }
CMat2 operator-(const CMat2& a) { return cplx(-1.0) * a; }

CMat2 operator*(const CMat2& a, const CMat2& b) {
  return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
          a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

CMat2 operator*(cplx s, CMat2 a) { return a *= s; }
CMat2 operator*(CMat2 a, cplx s) { return a *= s; }

CMat2 expm(const CMat2& m) {
  const cplx a = 0.5 * m.trace();
  const CMat2 n = m - CMat2::scalar(a);
  const cplx s = std::sqrt(-n.det());
  const cplx sinhc = std::abs(s) < 1e-8 ? 1.0 + s * s / 6.0 : std::sinh(s) / s;
  return std::exp(a) * (CMat2::scalar(std::cosh(s)) + sinhc * n);
}

namespace {

// Split a Hermitian matrix into mean * I + traceless part with eigenvalues +-spread.
struct HermitianSplit {
  double mean;
  double spread;
  CMat2 traceless;
};

HermitianSplit split_hermitian(const CMat2& m) {
  const CMat2 h = 0.5 * (m + m.adjoint());
  const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double half_diff = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double spread = std::hypot(half_diff, std::abs(h(0, 1)));
  return {mean, spread, h - CMat2::scalar(mean)};
}

}  // namespace

std::array<double, 2> hermitian_eigenvalues(const CMat2& m) {
  const auto sp = split_hermitian(m);
  return {sp.mean - sp.spread, sp.mean + sp.spread};
}

CMat2 hermitian_log(const CMat2& h) {
  const auto sp = split_hermitian(h);
  const double lo = sp.mean - sp.spread;
  const double hi = sp.mean + sp.spread;
  if (!(lo > 0.0)) throw PreconditionViolation("matrix logarithm needs a positive-definite argument");
  // (log hi - log lo) / (hi - lo) written as atanh(s/m)/s so that s -> 0 stays accurate.
  const double ratio = sp.spread / sp.mean;
  const double slope = sp.spread < 1e-300 ? 1.0 / sp.mean : std::atanh(ratio) / sp.spread;
  return CMat2::scalar(0.5 * (std::log(hi) + std::log(lo))) + slope * sp.traceless;
}

CMat2 hermitian_inv_sqrt(const CMat2& h) {
  const auto sp = split_hermitian(h);
  const double lo = sp.mean - sp.spread;
  const double hi = sp.mean + sp.spread;
  if (!(lo > 0.0)) throw PreconditionViolation("inverse square root needs a positive-definite argument");
  const double f_hi = 1.0 / std::sqrt(hi);
  const double f_lo = 1.0 / std::sqrt(lo);
  // divided difference (f_hi - f_lo) / (2 s) = -1 / (sqrt(hi) sqrt(lo) (sqrt(hi) + sqrt(lo)))
  const double slope = -f_hi * f_lo / (std::sqrt(hi) + std::sqrt(lo));
  return CMat2::scalar(0.5 * (f_hi + f_lo)) + slope * sp.traceless;
}

}  // namespace krein
