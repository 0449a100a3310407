#include "krein/oracle_fd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "krein/errors.hpp"

namespace krein {

const char* to_string(OuterBoundary b) { return b == OuterBoundary::dirichlet ? "dirichlet" : "decaying"; }

OuterBoundary outer_boundary_from_string(const std::string& s) {
  if (s == "dirichlet") return OuterBoundary::dirichlet;
  if (s == "decaying") return OuterBoundary::decaying;
  throw ConfigError("outer boundary must be 'dirichlet' or 'decaying', got '" + s + "'");
}

void OracleConfig::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("oracle: L must be positive");
  if (N < 100) throw ConfigError("oracle: N must be at least 100");
  if (!(h() < 0.1)) throw ConfigError("oracle: grid spacing L/N must be below 0.1");
  if (!(r_min < r_max) || !(r_max < 0.0) || !std::isfinite(r_min)) {
    throw ConfigError("oracle: scan range must satisfy r_min < r_max < 0");
  }
  if (!(scan_step > 0.0)) throw ConfigError("oracle: scan step must be positive");
  if (!(bisect_tol > 0.0)) throw ConfigError("oracle: bisection tolerance must be positive");
}

Mat2x4 interface_system(const ExtParams& p) {
  const CMat2 K = build_K(p);
  const CMat2 id = CMat2::identity();
  const CMat2 a = kI * (id + K);
  const CMat2 b = id - K;
  const Mat2x4 g0 = gamma0_matrix();
  const Mat2x4 g1 = gamma1_matrix();
  Mat2x4 out{};
  for (int i = 0; i < 2; ++i) {
    for (int c = 0; c < 4; ++c) {
      out[i][c] = a(i, 0) * g0[0][c] + a(i, 1) * g0[1][c] - b(i, 0) * g1[0][c] - b(i, 1) * g1[1][c];
    }
  }
  return out;
}

namespace {

struct InterfaceTrace {
  double value;
  double inward_derivative;  ///< derivative along the direction of integration
};

// Three-point recursion f_{j+1} = (2 - h^2 r) f_j - f_{j-1} from the outer end
// to the interface; both half-lines are mirror images, so one pass serves both.
InterfaceTrace integrate_half_line(double r, const OracleConfig& cfg) {
  const double h = cfg.h();
  const double a = 2.0 - h * h * r;
  double f0 = 0.0;
  double f1 = h;
  if (cfg.outer == OuterBoundary::decaying) {
    f0 = 1.0;
    f1 = 0.5 * (a + std::sqrt(a * a - 4.0));
  }
  double fm1 = f0;  // f_{j-1}
  double fj = f1;   // f_j
  double fm2 = 0.0;
  for (int j = 1; j < cfg.N; ++j) {
    const double next = a * fj - fm1;
    fm2 = fm1;
    fm1 = fj;
    fj = next;
    if (std::abs(fj) > 1e150) {
      fj *= 1e-150;
      fm1 *= 1e-150;
      fm2 *= 1e-150;
    }
  }
  // fj = f_N (interface), fm1 = f_{N-1}, fm2 = f_{N-2}
  return {fj, (3.0 * fj - 4.0 * fm1 + fm2) / (2.0 * h)};
}

cplx apply_row(const std::array<cplx, 4>& row, const std::array<double, 4>& v) {
  return row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
}

double golden_min(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace

cplx shoot(double r, const ExtParams& p, const OracleConfig& cfg) {
  if (!(r < 0.0)) throw PreconditionViolation("shoot: spectral parameter must be negative");
  const auto tr = integrate_half_line(r, cfg);
  const double s = std::hypot(tr.value, tr.inward_derivative);
  const double g = tr.value / s;
  const double d = tr.inward_derivative / s;
  // right family: f(+0) = g, f'(+0) = -d; left family: f(-0) = g, f'(-0) = d
  const std::array<double, 4> right{g, 0.0, -d, 0.0};
  const std::array<double, 4> left{0.0, g, 0.0, d};
  const Mat2x4 M = interface_system(p);
  return apply_row(M[0], right) * apply_row(M[1], left) - apply_row(M[1], right) * apply_row(M[0], left);
}

MatchReport scan_spectrum(const ExtParams& p, const OracleConfig& cfg, bool keep_trace) {
  cfg.validate();
  const auto n = static_cast<long>(std::ceil((cfg.r_max - cfg.r_min) / cfg.scan_step));
  std::vector<double> rs(n + 1);
  std::vector<cplx> ds(n + 1);
  for (long k = 0; k <= n; ++k) {
    rs[k] = k == n ? cfg.r_max : cfg.r_min + (cfg.r_max - cfg.r_min) * static_cast<double>(k) / static_cast<double>(n);
    ds[k] = shoot(rs[k], p, cfg);
  }

  MatchReport rep;
  if (keep_trace) {
    rep.det_trace.reserve(rs.size());
    for (long k = 0; k <= n; ++k) rep.det_trace.push_back({rs[k], ds[k]});
  }

  const auto big = std::max_element(ds.begin(), ds.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  const double scale = std::abs(*big);
  if (scale == 0.0) {
    rep.warnings.push_back("matching determinant vanishes identically over the scan");
    return rep;
  }
  const cplx phase = *big / scale;
  rep.dephased = std::all_of(ds.begin(), ds.end(), [&](cplx d) {
    const cplx u = d / phase;
    return std::abs(u.imag()) <= 1e-6 * std::abs(u) + 1e-12 * scale;
  });

  const auto shoot_at = [&](double r) { return shoot(r, p, cfg); };

  if (rep.dephased) {
    const auto f = [&](double r) { return (shoot_at(r) / phase).real(); };
    std::vector<double> fs(n + 1);
    for (long k = 0; k <= n; ++k) fs[k] = (ds[k] / phase).real();

    for (long k = 0; k < n; ++k) {
      if (fs[k] == 0.0) {
        rep.roots.push_back(rs[k]);
        continue;
      }
      if (fs[k + 1] != 0.0 && (fs[k] < 0.0) != (fs[k + 1] < 0.0)) {
        double lo = rs[k], hi = rs[k + 1], flo = fs[k];
        while (hi - lo > cfg.bisect_tol) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double fm = f(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        rep.roots.push_back(0.5 * (lo + hi));
      }
    }
    for (long k = 1; k < n; ++k) {
      const double a = fs[k - 1], b = fs[k], c = fs[k + 1];
      const bool same_sign = (a < 0.0) == (b < 0.0) && (b < 0.0) == (c < 0.0) && a != 0.0 && c != 0.0;
      if (!same_sign || !(std::abs(b) < std::abs(a)) || !(std::abs(b) <= std::abs(c))) continue;
      const double r_star = golden_min([&](double r) { return std::abs(f(r)); }, rs[k - 1], rs[k + 1]);
      if (std::abs(f(r_star)) <= 1e-6 * std::max(std::abs(a), std::abs(c))) rep.degenerate.push_back(r_star);
    }
  } else {
    rep.warnings.push_back("determinant is not real up to a global phase; roots taken from |det| minima");
    const auto g = [&](double r) { return std::abs(shoot_at(r)); };
    for (long k = 1; k < n; ++k) {
      const double a = std::abs(ds[k - 1]), b = std::abs(ds[k]), c = std::abs(ds[k + 1]);
      if (!(b < a) || !(b <= c)) continue;
      const double r_star = golden_min(g, rs[k - 1], rs[k + 1]);
      if (g(r_star) <= 1e-6 * std::max(a, c)) rep.roots.push_back(r_star);
    }
  }

  for (double r : rep.roots) rep.root_residuals.push_back(std::abs(shoot_at(r)));
  const double floor_band = 10.0 * cfg.scan_step;
  for (double r : rep.roots) {
    if (r > cfg.r_max - floor_band) {
      rep.warnings.push_back("root near the scan floor r_max; it may be merging into the essential spectrum");
      break;
    }
  }
  return rep;
}

}  // namespace krein
