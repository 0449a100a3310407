#pragma once

#include <array>
#include <complex>

namespace krein {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

/// Dense 2x2 complex matrix, row-major (a11, a12, a21, a22).
///
/// Carrier for the fundamental symmetries, the C-symmetry family, the
/// extension parameter K and the relation R. Every operation is closed form.
class CMat2 {
 public:
  constexpr CMat2() = default;
  constexpr CMat2(cplx a11, cplx a12, cplx a21, cplx a22) : e_{a11, a12, a21, a22} {}

  static constexpr CMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr CMat2 zero() { return {}; }
  static constexpr CMat2 diag(cplx d1, cplx d2) { return {d1, 0.0, 0.0, d2}; }
  static constexpr CMat2 scalar(cplx s) { return {s, 0.0, 0.0, s}; }

  constexpr cplx operator()(int row, int col) const { return e_[2 * row + col]; }
  constexpr cplx& operator()(int row, int col) { return e_[2 * row + col]; }
  constexpr const std::array<cplx, 4>& entries() const { return e_; }

  CMat2& operator+=(const CMat2& o);
  CMat2& operator-=(const CMat2& o);
  CMat2& operator*=(cplx s);

  CMat2 adjoint() const;
  cplx trace() const { return e_[0] + e_[3]; }
  cplx det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

  /// Throws SingularMatrix when the smallest singular value is below
  /// `rel_tol` times the largest one.
  CMat2 inverse(double rel_tol = 1e-14) const;

  /// Largest singular value (operator 2-norm).
  double norm2() const;
  /// Smallest singular value.
  double min_singular() const;
  double frobenius() const;

  bool is_finite() const;

 private:
  std::array<cplx, 4> e_{};
};

CMat2 operator+(CMat2 a, const CMat2& b);
CMat2 operator-(CMat2 a, const CMat2& b);
CMat2 operator-(const CMat2& a);
CMat2 operator*(const CMat2& a, const CMat2& b);
CMat2 operator*(cplx s, CMat2 a);
CMat2 operator*(CMat2 a, cplx s);

inline CMat2 commutator(const CMat2& a, const CMat2& b) { return a * b - b * a; }
inline CMat2 anticommutator(const CMat2& a, const CMat2& b) { return a * b + b * a; }

/// ||a - b|| in the operator 2-norm.
inline double distance(const CMat2& a, const CMat2& b) { return (a - b).norm2(); }

/// Matrix exponential via e^{aI + N} = e^a (cosh s I + sinh s / s N), N traceless,
/// s^2 = -det N.
CMat2 expm(const CMat2& m);

/// Eigenvalues (ascending) of the Hermitian part (m + m*)/2.
std::array<double, 2> hermitian_eigenvalues(const CMat2& m);

/// Principal logarithm of a Hermitian positive-definite matrix.
/// Throws PreconditionViolation when an eigenvalue is not positive.
CMat2 hermitian_log(const CMat2& h);

/// H^{-1/2} for Hermitian positive-definite H.
CMat2 hermitian_inv_sqrt(const CMat2& h);

}  // namespace krein
