#pragma once

#include <optional>

#include "krein/cmat2.hpp"
#include "krein/krein_core.hpp"

namespace krein {

/// Absolute tolerance for the exact-intent parameter tests zeta = 0 and phi = pi/2.
inline constexpr double kParamTol = 1e-12;

/// Parameters (zeta, phi, xi, omega) of the J-unitary matrix K.
/// phi is clamped to [0, pi]; xi and omega are reduced to [0, 2pi).
class ExtParams {
 public:
  ExtParams(double zeta, double phi, double xi, double omega);

  double zeta() const { return zeta_; }
  double phi() const { return phi_; }
  double xi() const { return xi_; }
  double omega() const { return omega_; }

 private:
  double zeta_;
  double phi_;
  double xi_;
  double omega_;
};

struct ExtensionClass {
  bool in_upsilon = false;
  bool is_self_adjoint = false;
  bool is_stable = false;
  /// Solution of cos(phi) tanh(chi) = -tanh(zeta) for stable parameters outside Upsilon.
  std::optional<double> chi;
};

struct EigenPair {
  cplx k_plus;
  cplx k_minus;
  /// Present for stable parameters; k+ = -e^{-i xi} e^{-i t}, k- = e^{-i xi} e^{i t}.
  std::optional<double> t;
};

/// A J-self-adjoint relation {(Phi c, Psi c) : c in C^2}. The stacked 4x2
/// matrix (Phi; Psi) has orthonormal columns.
struct ResolventParam {
  CMat2 phi;
  CMat2 psi;
  /// i(I + K)(I - K)^{-1} when I - K is invertible.
  std::optional<CMat2> matrix;
};

CMat2 build_K(const ExtParams& p);

/// Parameters of the adjoint operator: zeta negated.
ExtParams adjoint_params(const ExtParams& p);

ExtensionClass classify(const ExtParams& p, double param_tol = kParamTol);

/// Unique chi with cos(phi) tanh(chi) = -tanh(zeta). Throws
/// PreconditionViolation unless |tanh zeta| < |cos phi|.
double solve_chi(double zeta, double phi);

EigenPair k_eigenvalues(const ExtParams& p, double param_tol = kParamTol);

/// C_{chi,omega} commuting with K. sigma3 is returned for Upsilon, where every
/// member of the family commutes with the scalar K.
CMat2 csym_of_extension(const ExtParams& p, double param_tol = kParamTol);

ResolventParam cayley_to_relation(const CMat2& K, double tol = kDefaultTol);

/// ||Phi* sigma3 Psi - Psi* sigma3 Phi||; zero iff the relation is
/// sigma3-self-adjoint (R = sigma3 R* sigma3 in the matrix case).
double krein_adjoint_residual(const ResolventParam& rel);

}  // namespace krein
