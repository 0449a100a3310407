#pragma once

#include <array>

#include "krein/weyl_spectral.hpp"

namespace krein {

/// 2 x 4 complex matrix acting on (f(+0), f(-0), f'(+0), f'(-0)).
using Mat2x4 = std::array<std::array<cplx, 4>, 2>;

/// sqrt on the branch Im sqrt(mu) >= 0 (cut along [0, inf)).
cplx sqrt_upper(cplx mu);

/// m(mu) = 2 i sqrt(mu) with Im sqrt(mu) > 0: the Weyl function of -d^2/dx^2
/// on even functions with a point interaction at the origin.
cplx m_free(cplx mu);

/// The 1-D Laplacian with a point interaction at x = 0.
///
/// Real domain is (-inf, 0); [0, inf) is the essential spectrum and is never
/// scanned. Bound states of a channel a + b m(r) = 0 sit at |r| = (a / 2b)^2.
class PointInteractionModel final : public WeylFn {
 public:
  cplx eval(cplx mu) const override { return m_free(mu); }
  std::vector<Interval> real_domain() const override;
  double boundary_eval(double r) const override;
  std::string name() const override { return "pointint"; }
  std::optional<Interval> default_scan(std::span<const ChannelCondition> channels) const override;
  /// 2 i sqrt(mu) = level has the single solution mu = -level^2 / 4 when Re level < 0.
  std::optional<std::vector<cplx>> solve_level(cplx level) const override;

  static constexpr Interval essential_spectrum() { return {0.0, std::numeric_limits<double>::infinity()}; }
};

/// One-sided traces at the origin.
struct BoundaryData {
  cplx f_plus;
  cplx f_minus;
  cplx df_plus;
  cplx df_minus;
};

struct GammaValues {
  std::array<cplx, 2> gamma0;
  std::array<cplx, 2> gamma1;
};

/// Gamma0 f = (u(0), v(+0)), Gamma1 f = 2 (u'(+0), v'(0)) for the even part u
/// and odd part v of f.
GammaValues gamma_maps(const BoundaryData& bd);

/// Constant matrices of gamma_maps: Gamma0 = G0 bd, Gamma1 = G1 bd.
Mat2x4 gamma0_matrix();
Mat2x4 gamma1_matrix();

/// Negative eigenvalues in closed form: r = -tan^2((xi + t)/2)/4 when the tangent
/// is positive, r = -cot^2((xi - t)/2)/4 when the cotangent is negative.
SpectrumReport closed_form_eigenvalues(const ExtParams& p, double param_tol = kParamTol);

}  // namespace krein
