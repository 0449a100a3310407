#pragma once

#include <string>
#include <vector>

#include "krein/extensions.hpp"
#include "krein/point_interaction.hpp"

namespace krein {

/// Boundary condition at x = +-L for the shooting integration.
enum class OuterBoundary {
  /// f(+-L) = 0.
  dirichlet,
  /// Start from the discrete solution that decays outward, so the half-line
  /// tail beyond L is represented exactly by the recursion.
  decaying,
};

const char* to_string(OuterBoundary b);
OuterBoundary outer_boundary_from_string(const std::string& s);

struct OracleConfig {
  double L = 20.0;
  int N = 4000;
  double r_min = -10.0;
  double r_max = -1e-6;
  double scan_step = 1e-3;
  double bisect_tol = 1e-12;
  OuterBoundary outer = OuterBoundary::decaying;

  double h() const { return L / N; }
  /// Throws ConfigError unless L > 0, N >= 100, h < 0.1, r_min < r_max < 0,
  /// scan_step > 0 and bisect_tol > 0.
  void validate() const;
};

struct DetSample {
  double r;
  cplx det;
};

struct MatchReport {
  std::vector<double> roots;
  /// Roots of even order: |det| touches zero without a sign change.
  std::vector<double> degenerate;
  /// |det| at each root after refinement (normalized determinant).
  std::vector<double> root_residuals;
  /// True when det was real up to one global phase over the scan.
  bool dephased = false;
  std::vector<std::string> warnings;
  std::vector<DetSample> det_trace;
};

/// 2x4 matrix M with M (f(+0), f(-0), f'(+0), f'(-0))^T = 0 encoding
/// i(I + K) Gamma0 f = (I - K) Gamma1 f.
Mat2x4 interface_system(const ExtParams& p);

/// Matching determinant at spectral parameter r < 0: columns are M applied to
/// the right and left one-parameter solution families, each scaled to unit
/// trace norm.
cplx shoot(double r, const ExtParams& p, const OracleConfig& cfg);

/// Scans cfg.[r_min, r_max] for zeros of the matching determinant.
MatchReport scan_spectrum(const ExtParams& p, const OracleConfig& cfg, bool keep_trace = false);

}  // namespace krein
