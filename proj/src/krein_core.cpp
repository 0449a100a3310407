#include "krein/krein_core.hpp"

#include <algorithm>
#include <cmath>

#include "krein/errors.hpp"

namespace krein {

double wrap_angle(double angle) {
  if (!std::isfinite(angle)) throw NonFiniteInput("angle must be finite");
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi after the shift
  if (w >= kTwoPi) w = 0.0;
  return w;
}

PauliBasis pauli_basis() {
  return {CMat2{0.0, 1.0, 1.0, 0.0}, CMat2{0.0, -kI, kI, 0.0}, CMat2{1.0, 0.0, 0.0, -1.0}};
}

CsymParams::CsymParams(double chi, double omega) : chi_(chi), omega_(0.0) {
  if (!std::isfinite(chi)) throw NonFiniteInput("chi must be finite");
  omega_ = wrap_angle(omega);
}

CMat2 build_R_omega(double omega) {
  return {0.0, std::polar(1.0, -omega), std::polar(1.0, omega), 0.0};
}

CMat2 build_C(const CsymParams& p) {
  const double ch = std::cosh(p.chi());
  const double sh = std::sinh(p.chi());
  return {ch, sh * std::polar(1.0, -p.omega()), -sh * std::polar(1.0, p.omega()), -ch};
}

namespace {

void require_finite(const CMat2& m, const char* what) {
  if (!m.is_finite()) throw NonFiniteInput(std::string(what) + " has non-finite entries");
}

void require_fundamental_symmetry(const CMat2& J, double tol) {
  require_finite(J, "J");
  if (distance(J, J.adjoint()) > tol || distance(J * J, CMat2::identity()) > tol) {
    throw PreconditionViolation("J is not a fundamental symmetry (J = J*, J^2 = I)");
  }
}

void require_transition(const CMat2& T, const CMat2& J, double tol) {
  require_finite(T, "T");
  if (distance(T, T.adjoint()) > tol) throw PreconditionViolation("transition operator must be self-adjoint");
  if (!(T.norm2() < 1.0)) throw PreconditionViolation("transition operator must be a strict contraction");
  if (anticommutator(J, T).norm2() > tol) throw PreconditionViolation("transition operator must anticommute with J");
}

}  // namespace

PositivityReport verify_csym(const CMat2& C, const CMat2& J, double tol) {
  require_finite(C, "C");
  require_fundamental_symmetry(J, tol);

  PositivityReport rep;
  rep.involution_residual = distance(C * C, CMat2::identity());
  rep.is_involution = rep.involution_residual <= tol;

  const CMat2 jc = J * C;
  rep.hermitian_residual = distance(jc, jc.adjoint());
  rep.min_eig_JC = hermitian_eigenvalues(jc)[0];
  rep.is_positive = rep.hermitian_residual <= tol && rep.min_eig_JC > 0.0;
  return rep;
}

CMat2 factor_exponent(const CMat2& C, const CMat2& J, double tol) {
  const auto rep = verify_csym(C, J, tol);
  if (!rep.is_involution) throw PreconditionViolation("C is not an involution");
  if (!rep.is_positive) throw PreconditionViolation("JC is not positive definite");

  const CMat2 Y = hermitian_log(J * C);
  const double scale = std::max(1.0, C.norm2());
  if (anticommutator(J, Y).norm2() > tol * std::max(1.0, Y.norm2()) ||
      distance(J * expm(Y), C) > tol * scale) {
    throw Error("factor_exponent: C = J e^Y with {J, Y} = 0 not reproduced within tolerance");
  }
  return Y;
}

CMat2 transition_from_C(const CMat2& C, const CMat2& J) {
  require_finite(C, "C");
  const CMat2 g = J * C;
  const CMat2 id = CMat2::identity();
  return (id - g) * (id + g).inverse();
}

CMat2 c_from_transition(const CMat2& T, const CMat2& J, double tol) {
  require_fundamental_symmetry(J, tol);
  require_transition(T, J, tol);
  const CMat2 id = CMat2::identity();
  return J * (id - T) * (id + T).inverse();
}

CMat2 transition_family(const CsymParams& p) {
  return -std::tanh(0.5 * p.chi()) * build_R_omega(p.omega());
}

LProjections projections_from_T(const CMat2& T, const CMat2& J, double tol) {
  require_fundamental_symmetry(J, tol);
  require_transition(T, J, tol);
  const CMat2 id = CMat2::identity();
  const CMat2 p_plus = 0.5 * (id + J);
  const CMat2 p_minus = 0.5 * (id - J);
  const CMat2 inv = (id - T).inverse();
  return {inv * (p_plus - T * p_minus), inv * (p_minus - T * p_plus)};
}

double limit_transition(double omega, double chi) {
  if (!std::isfinite(chi) || !std::isfinite(omega)) throw NonFiniteInput("chi and omega must be finite");
  if (chi < 0.0) throw PreconditionViolation("limit_transition requires chi >= 0");
  // T + R_omega = (1 - tanh(chi/2)) R_omega, with 1 - tanh(x/2) = 2/(e^x + 1).
  const CsymParams p(chi, omega);
  return ((2.0 / (std::exp(chi) + 1.0)) * build_R_omega(p.omega())).norm2();
}

cplx cayley_theta(cplx m_value) {
  const cplx den = m_value + kI;
  if (std::abs(den) <= 1e-15) throw SingularMatrix("Cayley transform has a pole at m = -i");
  return (m_value - kI) / den;
}

CMat2 cayley_theta(const CMat2& m_value) {
  const CMat2 shift = CMat2::scalar(kI);
  return (m_value - shift) * (m_value + shift).inverse();
}

double z_unitarity_residual(const BlockOp4& U) {
  const CMat2 id = CMat2::identity();
  const double r00 = (U.u00.adjoint() * U.u00 - U.u10.adjoint() * U.u10 - id).norm2();
  const double r01 = (U.u00.adjoint() * U.u01 - U.u10.adjoint() * U.u11).norm2();
  const double r11 = (U.u01.adjoint() * U.u01 - U.u11.adjoint() * U.u11 + id).norm2();
  return std::max({r00, r01, r11});
}

CMat2 kshmulyan_transform(const CMat2& theta, const BlockOp4& U, double tol) {
  const double scale = std::max({1.0, U.u00.norm2(), U.u01.norm2(), U.u10.norm2(), U.u11.norm2()});
  if (z_unitarity_residual(U) > tol * scale * scale) {
    throw PreconditionViolation("U is not Z-unitary for Z = diag(I, -I)");
  }
  const CMat2 den = U.u00 + U.u01 * theta;
  return (U.u10 + U.u11 * theta) * den.inverse();
}

}  // namespace krein
