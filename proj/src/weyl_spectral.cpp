#include "krein/weyl_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "krein/errors.hpp"

namespace krein {

const char* to_string(Channel c) {
  switch (c) {
    case Channel::plus: return "plus";
    case Channel::minus: return "minus";
    case Channel::both: return "both";
  }
  return "?";
}

const char* to_string(SpectrumMethod m) {
  return m == SpectrumMethod::closed_form ? "closed_form" : "bisection";
}

std::optional<Interval> WeylFn::default_scan(std::span<const ChannelCondition>) const { return std::nullopt; }

std::optional<std::vector<cplx>> WeylFn::solve_level(cplx) const { return std::nullopt; }

bool interval_in_domain(const WeylFn& m, Interval iv) {
  if (!(iv.lo < iv.hi)) return false;
  const auto domain = m.real_domain();
  return std::any_of(domain.begin(), domain.end(),
                     [&](const Interval& d) { return d.lo <= iv.lo && iv.hi <= d.hi; });
}

ChannelCondition make_channel(double a, double b, Channel channel) {
  const double n = std::hypot(a, b);
  if (!(n > 0.0) || !std::isfinite(n)) throw PreconditionViolation("channel condition needs (a, b) != (0, 0)");
  a /= n;
  b /= n;
  // trig of exact multiples of pi/2 leaves ~1e-17 residue
  if (std::abs(a) <= 1e-15) a = 0.0;
  if (std::abs(b) <= 1e-15) b = 0.0;
  if (a < 0.0 || (a == 0.0 && b < 0.0)) {
    a = -a;
    b = -b;
  }
  return {a, b, channel};
}

std::array<ChannelCondition, 2> channel_conditions(const ExtParams& p, double param_tol) {
  const auto cls = classify(p, param_tol);
  if (!cls.is_stable) {
    throw PreconditionViolation("channel conditions need a stable extension: |tanh zeta| < |cos phi| or (zeta, phi) = (0, pi/2)");
  }
  const double t = *k_eigenvalues(p, param_tol).t;
  const double th_plus = 0.5 * (p.xi() + t);
  const double th_minus = 0.5 * (p.xi() - t);
  return {make_channel(std::sin(th_plus), std::cos(th_plus), Channel::plus),
          make_channel(std::cos(th_minus), -std::sin(th_minus), Channel::minus)};
}

bool channels_coincide(const ChannelCondition& x, const ChannelCondition& y, double tol) {
  return std::max(std::abs(x.a - y.a), std::abs(x.b - y.b)) <= tol;
}

namespace {

constexpr double kZeroB = 1e-14;

double bisect(const std::function<double(double)>& f, double lo, double hi, double flo, double tol) {
  double fhi = f(hi);
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

std::vector<double> bracket_roots(const std::function<double(double)>& f, Interval iv, double step, double tol,
                                  const WeylFn& m) {
  const auto n = static_cast<long>(std::ceil(iv.length() / step));
  const auto domain = m.real_domain();
  const auto inside = [&](double r) {
    return std::any_of(domain.begin(), domain.end(), [&](const Interval& d) { return d.contains(r); });
  };

  std::vector<double> rs(n + 1);
  std::vector<double> fs(n + 1);
  for (long k = 0; k <= n; ++k) {
    double r = k == n ? iv.hi : iv.lo + iv.length() * static_cast<double>(k) / static_cast<double>(n);
    if (k == 0 && !inside(r)) r = std::nextafter(r, iv.hi);
    if (k == n && !inside(r)) r = std::nextafter(r, iv.lo);
    rs[k] = r;
    fs[k] = f(r);
  }

  std::vector<double> roots;
  for (long k = 0; k <= n; ++k) {
    if (fs[k] == 0.0) {
      roots.push_back(rs[k]);
      continue;
    }
    if (k < n && fs[k + 1] != 0.0 && (fs[k] < 0.0) != (fs[k + 1] < 0.0)) {
      roots.push_back(bisect(f, rs[k], rs[k + 1], fs[k], tol));
    }
  }
  return roots;
}

}  // namespace

SpectrumReport find_discrete_spectrum(const WeylFn& m, const ExtParams& p, const SpectrumOptions& opts) {
  const auto chans = channel_conditions(p, opts.param_tol);

  std::optional<Interval> iv = opts.interval ? opts.interval : m.default_scan(chans);
  if (!iv) throw PreconditionViolation("no scan interval given and the Weyl function provides no default");
  if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi) || !(iv->lo < iv->hi)) {
    throw ConfigError("scan interval must be finite with lo < hi");
  }
  if (!interval_in_domain(m, *iv)) throw DomainError("scan interval is not inside the real domain of m");

  const double step = opts.step.value_or(1e-3 * iv->length());
  if (!(step > 0.0)) throw ConfigError("scan step must be positive");

  std::vector<ChannelCondition> active;
  std::vector<int> mult;
  if (channels_coincide(chans[0], chans[1], opts.coincide_tol)) {
    active.push_back({chans[0].a, chans[0].b, Channel::both});
    mult.push_back(2);
  } else {
    active.assign(chans.begin(), chans.end());
    mult = {1, 1};
  }

  SpectrumReport rep;
  rep.scan_interval = *iv;
  rep.method = SpectrumMethod::bisection;
  for (std::size_t c = 0; c < active.size(); ++c) {
    const auto ch = active[c];
    if (std::abs(ch.b) <= kZeroB) continue;  // Gamma0 f = 0: no root at regular points
    const auto f = [&](double r) { return ch.a + ch.b * m.boundary_eval(r); };
    for (double r : bracket_roots(f, *iv, step, opts.bisect_tol, m)) {
      rep.eigenvalues.push_back({r, mult[c], ch.channel, std::abs(f(r))});
    }
  }
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](const SpectralPoint& x, const SpectralPoint& y) { return x.r < y.r; });
  return rep;
}

cplx det_condition(const WeylFn& m, const ResolventParam& rel, cplx mu) {
  return (rel.psi - m.eval(mu) * rel.phi).det();
}

std::vector<cplx> relation_levels(const ResolventParam& rel) {
  const CMat2& f = rel.phi;
  const CMat2& s = rel.psi;
  // det(Psi - x Phi) = det Phi x^2 + b x + det Psi
  const cplx qa = f.det();
  const cplx qb = -(s(0, 0) * f(1, 1) + f(0, 0) * s(1, 1) - s(0, 1) * f(1, 0) - f(0, 1) * s(1, 0));
  const cplx qc = s.det();

  std::vector<cplx> out;
  if (std::abs(qa) <= 1e-13) {
    if (std::abs(qb) > 1e-13) out.push_back(-qc / qb);
    return out;
  }
  const cplx disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  const cplx sgn = std::real(std::conj(qb) * disc) >= 0.0 ? 1.0 : -1.0;
  const cplx q = -0.5 * (qb + sgn * disc);
  if (std::abs(q) == 0.0) {
    out.push_back(0.0);
    out.push_back(0.0);
    return out;
  }
  out.push_back(q / qa);
  out.push_back(qc / q);
  return out;
}

namespace {

bool on_cut(double x1, double y0, double y1) { return y0 <= 0.0 && 0.0 <= y1 && x1 >= 0.0; }

void add_unique(std::vector<cplx>& roots, cplx z) {
  for (const auto& w : roots) {
    if (std::abs(w - z) <= 1e-9 * (1.0 + std::abs(z))) return;
  }
  roots.push_back(z);
}

void sort_roots(std::vector<cplx>& roots) {
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (std::abs(a.real() - b.real()) > 1e-9 * (1.0 + std::abs(a.real()))) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

}  // namespace

std::vector<cplx> winding_root_search(const WeylFn& m, const ResolventParam& rel, const ComplexRect& grid,
                                      const ProbeOptions& opts) {
  if (grid.nre < 1 || grid.nim < 1 || !(grid.re_lo < grid.re_hi) || !(grid.im_lo < grid.im_hi)) {
    throw ConfigError("probe rectangle must have positive extent and at least one cell");
  }
  const auto det = [&](cplx mu) { return det_condition(m, rel, mu); };

  const auto winding = [&](double x0, double x1, double y0, double y1) {
    const std::array<cplx, 5> corners{cplx(x0, y0), cplx(x1, y0), cplx(x1, y1), cplx(x0, y1), cplx(x0, y0)};
    double total = 0.0;
    cplx prev = det(corners[0]);
    for (int e = 0; e < 4; ++e) {
      for (int s = 1; s <= opts.edge_samples; ++s) {
        const double u = static_cast<double>(s) / opts.edge_samples;
        const cplx cur = det(corners[e] + u * (corners[e + 1] - corners[e]));
        if (cur == 0.0 || prev == 0.0) return 0;
        total += std::arg(cur / prev);
        prev = cur;
      }
    }
    return static_cast<int>(std::lround(total / kTwoPi));
  };

  const auto newton = [&](cplx z) -> std::optional<cplx> {
    for (int it = 0; it < 60; ++it) {
      const double h = 1e-7 * (1.0 + std::abs(z));
      const cplx d = det(z);
      const cplx dd = (det(z + h) - det(z - h)) / (2.0 * h);
      if (dd == 0.0) return std::nullopt;
      const cplx step = d / dd;
      z -= step;
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
      if (std::abs(step) <= opts.newton_tol * (1.0 + std::abs(z))) return z;
    }
    return std::nullopt;
  };

  std::vector<cplx> roots;
  std::function<void(double, double, double, double, int)> search = [&](double x0, double x1, double y0, double y1,
                                                                       int depth) {
    if (on_cut(x1, y0, y1)) return;
    const int w = winding(x0, x1, y0, y1);
    if (w == 0) return;
    if (std::abs(w) >= 2 && depth < 4) {
      const double xm = 0.5 * (x0 + x1);
      const double ym = 0.5 * (y0 + y1);
      search(x0, xm, y0, ym, depth + 1);
      search(xm, x1, y0, ym, depth + 1);
      search(x0, xm, ym, y1, depth + 1);
      search(xm, x1, ym, y1, depth + 1);
      return;
    }
    const auto z = newton(cplx(0.5 * (x0 + x1), 0.5 * (y0 + y1)));
    if (!z) return;
    const double mx = 0.1 * (x1 - x0);
    const double my = 0.1 * (y1 - y0);
    if (z->real() >= x0 - mx && z->real() <= x1 + mx && z->imag() >= y0 - my && z->imag() <= y1 + my) {
      add_unique(roots, *z);
    }
  };

  const double dx = (grid.re_hi - grid.re_lo) / grid.nre;
  const double dy = (grid.im_hi - grid.im_lo) / grid.nim;
  for (int i = 0; i < grid.nre; ++i) {
    for (int j = 0; j < grid.nim; ++j) {
      search(grid.re_lo + i * dx, grid.re_lo + (i + 1) * dx, grid.im_lo + j * dy, grid.im_lo + (j + 1) * dy, 0);
    }
  }
  sort_roots(roots);
  return roots;
}

std::vector<cplx> nonreal_spectrum_probe(const WeylFn& m, const ExtParams& p, const ComplexRect& grid,
                                         const ProbeOptions& opts) {
  const ResolventParam rel = cayley_to_relation(build_K(p));

  std::vector<cplx> candidates;
  bool closed = opts.use_closed_form;
  if (closed) {
    for (const cplx level : relation_levels(rel)) {
      const auto sol = m.solve_level(level);
      if (!sol) {
        closed = false;
        break;
      }
      for (const cplx z : *sol) add_unique(candidates, z);
    }
  }
  if (!closed) candidates = winding_root_search(m, rel, grid, opts);

  std::vector<cplx> out;
  for (const cplx z : candidates) {
    const bool in_rect = z.real() >= grid.re_lo && z.real() <= grid.re_hi && z.imag() >= grid.im_lo &&
                         z.imag() <= grid.im_hi;
    if (in_rect && std::abs(z.imag()) > opts.imag_tol) out.push_back(z);
  }
  sort_roots(out);
  return out;
}

KernelGram kernel_gram(const WeylFn& m, std::span<const cplx> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  for (const cplx z : points) {
    if (!(z.imag() != 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PreconditionViolation("kernel points must be finite and non-real");
    }
  }
  KernelGram out;
  out.gram.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx xi_bar = std::conj(points[i]);
    const cplx m_xi_bar = m.eval(xi_bar);
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx mu = points[j];
      const cplx den = mu - xi_bar;
      if (std::abs(den) <= 1e-14 * (1.0 + std::abs(mu))) {
        throw PreconditionViolation("kernel points contain a conjugate pair mu_j = conj(mu_i)");
      }
      out.gram(i, j) = (m.eval(mu) - m_xi_bar) / den;
    }
  }
  if (n > 0) {
    const Eigen::MatrixXcd herm = 0.5 * (out.gram + out.gram.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  return out;
}

NevanlinnaCheck sample_nevanlinna(const WeylFn& m, double re_lo, double re_hi, double im_lo, double im_hi, int n) {
  NevanlinnaCheck out{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = n == 1 ? re_lo : re_lo + (re_hi - re_lo) * i / (n - 1);
      const double y = n == 1 ? im_lo : im_lo + (im_hi - im_lo) * j / (n - 1);
      const cplx mu(x, y);
      const cplx v = m.eval(mu);
      out.min_im_ratio = std::min(out.min_im_ratio, v.imag() / y);
      out.max_conj_residual = std::max(out.max_conj_residual, std::abs(m.eval(std::conj(mu)) - std::conj(v)));
    }
  }
  return out;
}

}  // namespace krein
