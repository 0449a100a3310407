#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "krein/cmat2.hpp"
#include "krein/extensions.hpp"

namespace krein {

/// Open real interval (lo, hi); lo may be -inf.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double r) const { return lo < r && r < hi; }
  double length() const { return hi - lo; }
};

enum class Channel { plus, minus, both };

const char* to_string(Channel c);

/// Channel condition a + b m(r) = 0, stored projectively: a^2 + b^2 = 1 and the
/// first nonzero component positive. b = 0 encodes Gamma0 f = 0.
struct ChannelCondition {
  double a = 0.0;
  double b = 0.0;
  Channel channel = Channel::plus;
};

/// Scalar Weyl function m(mu) of a simple symmetric operator with defect <1,1>.
///
/// Implementations must be reentrant; sweeps evaluate them concurrently.
class WeylFn {
 public:
  virtual ~WeylFn() = default;

  virtual cplx eval(cplx mu) const = 0;
  /// Real points of rho(A_0) as a union of open intervals.
  virtual std::vector<Interval> real_domain() const = 0;
  /// Real value m(r) for r in the real domain; throws DomainError elsewhere.
  virtual double boundary_eval(double r) const = 0;
  virtual std::string name() const = 0;

  /// Scan interval used when the caller does not supply one.
  virtual std::optional<Interval> default_scan(std::span<const ChannelCondition> channels) const;

  /// All mu on the physical sheet with m(mu) = level, when the model can invert m
  /// in closed form; nullopt otherwise.
  virtual std::optional<std::vector<cplx>> solve_level(cplx level) const;
};

/// True when (lo, hi) lies inside one interval of the real domain.
bool interval_in_domain(const WeylFn& m, Interval iv);

ChannelCondition make_channel(double a, double b, Channel channel);

/// Plus channel tan((xi + t)/2) + m(r) = 0 and minus channel
/// cot((xi - t)/2) - m(r) = 0 as projective pairs. Throws PreconditionViolation
/// for unstable parameters.
std::array<ChannelCondition, 2> channel_conditions(const ExtParams& p, double param_tol = kParamTol);

bool channels_coincide(const ChannelCondition& x, const ChannelCondition& y, double tol);

struct SpectralPoint {
  double r = 0.0;
  int multiplicity = 1;
  Channel channel = Channel::plus;
  double residual = 0.0;
};

enum class SpectrumMethod { closed_form, bisection };

const char* to_string(SpectrumMethod m);

struct SpectrumReport {
  std::vector<SpectralPoint> eigenvalues;  ///< ascending in r
  Interval scan_interval;
  SpectrumMethod method = SpectrumMethod::bisection;
};

struct SpectrumOptions {
  std::optional<Interval> interval;
  /// Bracketing step; defaults to 1e-3 of the interval length.
  std::optional<double> step;
  double bisect_tol = 1e-14;
  double coincide_tol = 1e-10;
  double param_tol = kParamTol;
};

/// Real eigenvalues in rho(A_0) via sign-change bracketing and bisection of
/// a + b m(r) for each channel.
SpectrumReport find_discrete_spectrum(const WeylFn& m, const ExtParams& p, const SpectrumOptions& opts = {});

/// det(Psi - m(mu) Phi); vanishes exactly on the spectrum of the extension in rho(A_0).
cplx det_condition(const WeylFn& m, const ResolventParam& rel, cplx mu);

/// Axis-aligned rectangle in the mu plane sampled by an nre x nim grid of cells.
struct ComplexRect {
  double re_lo = -5.0;
  double re_hi = 5.0;
  double im_lo = -5.0;
  double im_hi = 5.0;
  int nre = 40;
  int nim = 40;
};

struct ProbeOptions {
  double imag_tol = 1e-9;     ///< roots with |Im mu| <= imag_tol are treated as real
  double newton_tol = 1e-13;  ///< relative step size at which refinement stops
  int edge_samples = 16;      ///< samples per cell edge for the winding number
  bool use_closed_form = true;
};

/// Non-real zeros of det_condition inside the rectangle. Uses the model's
/// closed-form inverse of m when available, otherwise a winding-number cell
/// search with Newton refinement. Cells touching [0, inf) are skipped in the
/// search because m has its cut there.
std::vector<cplx> nonreal_spectrum_probe(const WeylFn& m, const ExtParams& p, const ComplexRect& grid,
                                         const ProbeOptions& opts = {});

/// Every zero of det_condition in the rectangle (real ones included) found by
/// the winding-number search alone; exposed for cross-checks.
std::vector<cplx> winding_root_search(const WeylFn& m, const ResolventParam& rel, const ComplexRect& grid,
                                      const ProbeOptions& opts = {});

/// Roots x of det(Psi - x Phi) = 0, i.e. the eigenvalues of the relation.
std::vector<cplx> relation_levels(const ResolventParam& rel);

struct KernelGram {
  Eigen::MatrixXcd gram;
  double min_eigenvalue = 0.0;
};

/// Gram matrix of the Nevanlinna kernel N(xi, mu) = (m(mu) - m(conj xi)) / (mu - conj xi).
/// Throws PreconditionViolation for real points or mu_j = conj mu_i.
KernelGram kernel_gram(const WeylFn& m, std::span<const cplx> points);

struct NevanlinnaCheck {
  double min_im_ratio = 0.0;      ///< min over samples of Im m(mu) / Im mu
  double max_conj_residual = 0.0; ///< max |m(conj mu) - conj m(mu)|
};

/// Samples the Nevanlinna property on an n x n grid of [re_lo, re_hi] x [im_lo, im_hi] in C+.
NevanlinnaCheck sample_nevanlinna(const WeylFn& m, double re_lo, double re_hi, double im_lo, double im_hi, int n);

}  // namespace krein
