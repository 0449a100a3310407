#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "krein/extensions.hpp"

namespace krein {

/// One sweep axis: a single value "v" or an inclusive grid "lo:hi:n".
struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  std::vector<double> values() const;
};

/// Throws ConfigError on malformed text.
AxisSpec parse_axis(const std::string& text);

struct SweepSpec {
  AxisSpec zeta;
  AxisSpec phi;
  AxisSpec xi;
  AxisSpec omega;
  /// Multiply angle axes by pi/180 before use.
  bool degrees = false;

  std::size_t size() const;
};

struct SweepRow {
  double zeta = 0.0;
  double phi = 0.0;
  double xi = 0.0;
  double omega = 0.0;
  bool stable = false;
  bool upsilon = false;
  bool self_adjoint = false;
  std::optional<double> chi;
  double k_plus_abs = 0.0;
  double k_minus_abs = 0.0;
  std::optional<double> eig1;
  std::optional<double> eig2;
};

/// Classification and point-interaction eigenvalues for one parameter set.
SweepRow evaluate_cell(const ExtParams& p, double param_tol = kParamTol);

/// Rows in grid order (zeta outermost, omega innermost) regardless of the
/// number of workers.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers, double param_tol = kParamTol);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace krein
