#include "krein/extensions.hpp"

#include <algorithm>
#include <cmath>

#include "krein/errors.hpp"

namespace krein {

ExtParams::ExtParams(double zeta, double phi, double xi, double omega)
    : zeta_(zeta), phi_(phi), xi_(0.0), omega_(0.0) {
  if (!std::isfinite(zeta) || !std::isfinite(phi)) throw NonFiniteInput("zeta and phi must be finite");
  phi_ = std::clamp(phi, 0.0, kPi);
  xi_ = wrap_angle(xi);
  omega_ = wrap_angle(omega);
}

CMat2 build_K(const ExtParams& p) {
  const double ch = std::cosh(p.zeta());
  const double sh = std::sinh(p.zeta());
  const CMat2 inner{-std::polar(ch, -p.phi()), std::polar(sh, -p.omega()), -std::polar(sh, p.omega()),
                    std::polar(ch, p.phi())};
  return std::polar(1.0, -p.xi()) * inner;
}

ExtParams adjoint_params(const ExtParams& p) { return {-p.zeta(), p.phi(), p.xi(), p.omega()}; }

namespace {

bool stability_inequality(double zeta, double phi) {
  return std::abs(std::tanh(zeta)) < std::abs(std::cos(phi));
}

}  // namespace

ExtensionClass classify(const ExtParams& p, double param_tol) {
  ExtensionClass c;
  c.is_self_adjoint = std::abs(p.zeta()) <= param_tol;
  c.in_upsilon = c.is_self_adjoint && std::abs(p.phi() - 0.5 * kPi) <= param_tol;
  c.is_stable = c.in_upsilon || stability_inequality(p.zeta(), p.phi());
  if (c.is_stable && !c.in_upsilon) c.chi = solve_chi(p.zeta(), p.phi());
  return c;
}

double solve_chi(double zeta, double phi) {
  if (!stability_inequality(zeta, phi)) {
    throw PreconditionViolation("no chi solves cos(phi) tanh(chi) = -tanh(zeta): requires |tanh zeta| < |cos phi|");
  }
  return std::atanh(-std::tanh(zeta) / std::cos(phi));
}

EigenPair k_eigenvalues(const ExtParams& p, double param_tol) {
  const cplx phase = std::polar(1.0, -p.xi());
  const auto cls = classify(p, param_tol);

  if (cls.in_upsilon) return {kI * phase, kI * phase, 0.5 * kPi};

  if (cls.is_stable) {
    const double chi = *cls.chi;
    const double t = wrap_angle(std::arg(cplx(std::cos(p.phi()), std::sin(p.phi()) * std::cosh(chi))));
    EigenPair ep{-phase * std::polar(1.0, -t), phase * std::polar(1.0, t), t};

    // Labels follow the eigenprojections: (K - k+ I)(I + C) = 0, (K - k- I)(I - C) = 0.
    const CMat2 K = build_K(p);
    const CMat2 C = build_C(CsymParams(chi, p.omega()));
    const CMat2 id = CMat2::identity();
    const auto label_residual = [&](cplx kp, cplx km) {
      return ((K - CMat2::scalar(kp)) * (id + C)).norm2() + ((K - CMat2::scalar(km)) * (id - C)).norm2();
    };
    if (label_residual(ep.k_minus, ep.k_plus) < label_residual(ep.k_plus, ep.k_minus)) {
      std::swap(ep.k_plus, ep.k_minus);
    }
    return ep;
  }

  // Roots of det(K - kI) = 0 with the complex square root; modulus != 1 here.
  const double sc = std::sin(p.phi()) * std::cosh(p.zeta());
  const cplx root = std::sqrt(cplx(1.0 - sc * sc, 0.0));
  return {phase * (root + kI * sc), phase * (-root + kI * sc), std::nullopt};
}

CMat2 csym_of_extension(const ExtParams& p, double param_tol) {
  const auto cls = classify(p, param_tol);
  if (!cls.is_stable) {
    throw PreconditionViolation("extension has no stable C-symmetry: requires |tanh zeta| < |cos phi| or (zeta, phi) = (0, pi/2)");
  }
  if (cls.in_upsilon) return pauli_basis().sigma3;

  const CMat2 C = build_C(CsymParams(*cls.chi, p.omega()));
  const CMat2 K = build_K(p);
  if (commutator(K, C).norm2() > kDefaultTol * std::max(1.0, K.norm2() * C.norm2())) {
    throw Error("csym_of_extension: [K, C] does not vanish within tolerance");
  }
  return C;
}

ResolventParam cayley_to_relation(const CMat2& K, double tol) {
  if (!K.is_finite()) throw NonFiniteInput("K has non-finite entries");
  const CMat2 j = pauli_basis().sigma3;
  const double scale = std::max(1.0, K.norm2() * K.norm2());
  if (distance(K.adjoint() * j * K, j) > tol * scale) {
    throw PreconditionViolation("K is not J-unitary (K* sigma3 K != sigma3)");
  }

  const CMat2 id = CMat2::identity();
  const CMat2 phi0 = id - K;
  const CMat2 psi0 = kI * (id + K);
  // Gram matrix of the stacked pair equals 2(I + K*K), always positive definite.
  const CMat2 norm = hermitian_inv_sqrt(phi0.adjoint() * phi0 + psi0.adjoint() * psi0);

  ResolventParam rel{phi0 * norm, psi0 * norm, std::nullopt};
  if (phi0.min_singular() > 1e-12 * std::max(1.0, phi0.norm2())) rel.matrix = psi0 * phi0.inverse();
  return rel;
}

double krein_adjoint_residual(const ResolventParam& rel) {
  const CMat2 j = pauli_basis().sigma3;
  return (rel.phi.adjoint() * j * rel.psi - rel.psi.adjoint() * j * rel.phi).norm2();
}

}  // namespace krein
