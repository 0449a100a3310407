#pragma once

#include "krein/cmat2.hpp"

namespace krein {

/// Default tolerance for algebraic identities in double precision.
inline constexpr double kDefaultTol = 1e-10;

/// Reduce an angle into [0, 2pi).
double wrap_angle(double angle);

struct PauliBasis {
  CMat2 sigma1;
  CMat2 sigma2;
  CMat2 sigma3;
};

/// sigma1, sigma2, sigma3. The fundamental symmetry J is sigma3, the
/// anticommuting symmetry R is sigma1 and i R J is sigma2.
PauliBasis pauli_basis();

/// Index (chi, omega) of the C-symmetry family. omega is kept in [0, 2pi).
class CsymParams {
 public:
  CsymParams(double chi, double omega);

  double chi() const { return chi_; }
  double omega() const { return omega_; }

 private:
  double chi_;
  double omega_;
};

/// R e^{i omega J} = [[0, e^{-i omega}], [e^{i omega}, 0]].
CMat2 build_R_omega(double omega);

/// C_{chi,omega} = J e^{chi R_omega}.
CMat2 build_C(const CsymParams& p);

struct PositivityReport {
  bool is_involution = false;
  double involution_residual = 0.0;
  /// ||JC - (JC)*||
  double hermitian_residual = 0.0;
  /// smallest eigenvalue of the Hermitian part of JC
  double min_eig_JC = 0.0;
  bool is_positive = false;
};

/// Checks C^2 = I and JC > 0. Throws NonFiniteInput for NaN/Inf entries and
/// PreconditionViolation when J is not a fundamental symmetry.
PositivityReport verify_csym(const CMat2& C, const CMat2& J, double tol = kDefaultTol);

/// Hermitian Y with C = J e^Y and {J, Y} = 0, i.e. Y = log(JC).
CMat2 factor_exponent(const CMat2& C, const CMat2& J, double tol = kDefaultTol);

/// T = (I - JC)(I + JC)^{-1}.
CMat2 transition_from_C(const CMat2& C, const CMat2& J);

/// C = J (I - T)(I + T)^{-1}; T must be a self-adjoint strict contraction
/// anticommuting with J.
CMat2 c_from_transition(const CMat2& T, const CMat2& J, double tol = kDefaultTol);

/// -tanh(chi/2) R_omega, the transition operator of C_{chi,omega} in closed form.
CMat2 transition_family(const CsymParams& p);

struct LProjections {
  CMat2 plus;   ///< projection onto L+ along L-
  CMat2 minus;  ///< projection onto L- along L+
};

LProjections projections_from_T(const CMat2& T, const CMat2& J, double tol = kDefaultTol);

/// ||T_{chi,omega} + R_omega||; tends to 0 as chi grows. Requires chi >= 0.
double limit_transition(double omega, double chi);

/// (m - i)/(m + i). Throws SingularMatrix at the pole m = -i.
cplx cayley_theta(cplx m_value);

/// Matrix form (M - iI)(M + iI)^{-1}.
CMat2 cayley_theta(const CMat2& m_value);

/// 4x4 operator on H + H written in 2x2 blocks.
struct BlockOp4 {
  CMat2 u00;
  CMat2 u01;
  CMat2 u10;
  CMat2 u11;
};

/// ||U* Z U - Z|| with Z = diag(I, -I), measured blockwise (max over blocks).
double z_unitarity_residual(const BlockOp4& U);

/// Theta_U = (U10 + U11 Theta)(U00 + U01 Theta)^{-1}.
CMat2 kshmulyan_transform(const CMat2& theta, const BlockOp4& U, double tol = kDefaultTol);

}  // namespace krein
