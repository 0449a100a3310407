#include "krein/point_interaction.hpp"

#include <algorithm>
#include <cmath>

#include "krein/errors.hpp"

namespace krein {

cplx sqrt_upper(cplx mu) {
  const cplx s = std::sqrt(mu);
  return s.imag() < 0.0 ? -s : s;
}

cplx m_free(cplx mu) { return 2.0 * kI * sqrt_upper(mu); }

std::vector<Interval> PointInteractionModel::real_domain() const {
  return {Interval{-std::numeric_limits<double>::infinity(), 0.0}};
}

double PointInteractionModel::boundary_eval(double r) const {
  if (!(r < 0.0)) throw DomainError("m(r) is real only for r < 0; [0, inf) is the essential spectrum");
  return -2.0 * std::sqrt(-r);
}

std::optional<Interval> PointInteractionModel::default_scan(std::span<const ChannelCondition> channels) const {
  // four times the largest predicted |r| = (a / 2b)^2, at least 100
  double depth = 100.0;
  for (const auto& ch : channels) {
    if (std::abs(ch.b) > 1e-14) depth = std::max(depth, (ch.a / ch.b) * (ch.a / ch.b));
  }
  return Interval{-depth, -1e-12};
}

std::optional<std::vector<cplx>> PointInteractionModel::solve_level(cplx level) const {
  // sqrt(mu) = -i level / 2 must lie in the open upper half plane
  const cplx root = -0.5 * kI * level;
  if (!(root.imag() > 0.0)) return std::vector<cplx>{};
  return std::vector<cplx>{root * root};
}

GammaValues gamma_maps(const BoundaryData& bd) {
  return {{0.5 * (bd.f_plus + bd.f_minus), 0.5 * (bd.f_plus - bd.f_minus)},
          {bd.df_plus - bd.df_minus, bd.df_plus + bd.df_minus}};
}

Mat2x4 gamma0_matrix() { return {{{0.5, 0.5, 0.0, 0.0}, {0.5, -0.5, 0.0, 0.0}}}; }

Mat2x4 gamma1_matrix() { return {{{0.0, 0.0, 1.0, -1.0}, {0.0, 0.0, 1.0, 1.0}}}; }

SpectrumReport closed_form_eigenvalues(const ExtParams& p, double param_tol) {
  const auto chans = channel_conditions(p, param_tol);
  const PointInteractionModel model;

  SpectrumReport rep;
  rep.method = SpectrumMethod::closed_form;
  rep.scan_interval = *model.default_scan(chans);

  // a + b m(r) = 0 with m(r) = -2 sqrt(|r|) < 0 has the root r = -(a/b)^2/4 iff a/b > 0
  std::vector<SpectralPoint> pts;
  for (const auto& ch : chans) {
    if (std::abs(ch.b) <= 1e-14 || ch.a * ch.b <= 0.0) continue;
    const double q = ch.a / ch.b;
    pts.push_back({-0.25 * q * q, 1, ch.channel, 0.0});
  }

  const bool upsilon = classify(p, param_tol).in_upsilon;
  if (pts.size() == 2 && (upsilon || std::abs(pts[0].r - pts[1].r) <= 1e-10 * std::max(1.0, std::abs(pts[0].r)))) {
    pts = {{pts[0].r, 2, Channel::both, 0.0}};
  }

  for (auto& pt : pts) {
    double res = 0.0;
    for (const auto& ch : chans) {
      if (pt.channel == Channel::both || pt.channel == ch.channel) {
        res = std::max(res, std::abs(ch.a + ch.b * model.boundary_eval(pt.r)));
      }
    }
    pt.residual = res;
  }
  std::sort(pts.begin(), pts.end(), [](const SpectralPoint& x, const SpectralPoint& y) { return x.r < y.r; });
  rep.eigenvalues = std::move(pts);
  return rep;
}

}  // namespace krein
