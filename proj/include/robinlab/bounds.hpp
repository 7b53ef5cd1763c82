#pragma once

// Special-function machinery and envelope fitting: modified Bessel functions
// of the second kind, free-space heat and resolvent kernels, the
// Laplace-transform identity linking them, and fitted envelope constants for
// the Gaussian heat-kernel bound and the logarithmic Green-function bound.
//
// The analytic bounds assert existence of constants; the checkable content at
// desk scale is (a) the special functions are accurate, (b) the identities
// close under quadrature, and (c) fitted constants are finite and stable
// under mesh refinement.  Every fit records where its maximum ratio occurred
// so a reported constant can be audited.

#include <string>
#include <utility>
#include <vector>

#include "robinlab/spectral.hpp"

namespace robinlab {

// Which evaluation branch produced a Bessel value.
enum class BesselRegime { Series, Asymptotic };

struct BesselResult {
  double nu = 0.0;
  double x = 0.0;
  double value = 0.0;
  BesselRegime regime = BesselRegime::Series;
};

// Modified Bessel function of the second kind K_nu(x) for nu >= 0, x > 0.
// Relative accuracy 1e-10 on x in [1e-6, 700]; the series branch serves small
// arguments and the continued-fraction (asymptotic) branch large ones, with a
// crossover chosen so the branches agree on an overlap band.  Throws
// RangeOverflow when the value exceeds double range (tiny x at large order)
// and RangeUnderflow when e^{-x} underflows to zero (x beyond ~705).
BesselResult bessel_k(double nu, double x);

// Individual branches, exposed so the overlap-band agreement is testable.
double bessel_k_series(double nu, double x);      // intended for x <= 8
double bessel_k_asymptotic(double nu, double x);  // intended for x >= 4

// Free-space heat kernel (4 pi t)^{-n/2} exp(-r^2 / (4t)) at separation r.
double free_heat_kernel(double t, double r, int n);

// Free-space resolvent kernel at spectral shift lambda > 0 and separation
// r > 0 in dimension n in {2, 3}:
//   (1/2pi) (2 pi r / sqrt(lambda))^{(2-n)/2} K_{(n-2)/2}(sqrt(lambda) r).
// For n = 3 this reduces to exp(-sqrt(lambda) r) / (4 pi r).
double free_green(double lambda, double r, int n);

// Residual of the identity
//   int_0^inf t^{-nu-1} exp(-a t - b/t) dt = 2 (b/a)^{-nu/2} K_nu(2 sqrt(ab))
// evaluated by adaptive composite Gauss quadrature against the closed form.
// Throws QuadratureNonConvergence when panel refinement stalls.
double laplace_transform_identity_check(double nu, double a, double b);

// Fitted envelope constant: C = max over samples of kernel value divided by
// envelope value, with the maximizing sample recorded.
struct EnvelopeFit {
  double constant = 0.0;
  double gamma = 0.0;       // Gaussian shape parameter (0 when not applicable)
  double lambda = 0.0;      // resolvent shift (0 when not applicable)
  int n = 0;                // ambient dimension
  long samples_checked = 0;
  int worst_i = -1;         // node pair achieving the maximum ratio
  int worst_j = -1;
  double worst_parameter = 0.0;  // t (heat) or lambda (resolvent) at the max
  std::string note;
};

// Serializes a fit as structured text {C, gamma_or_lambda, n, samples,
// worst_pair, mesh_h}.
void write_envelope_fit(const EnvelopeFit& fit, double mesh_h, std::ostream& out);

// Gaussian envelope fit over one or more heat-kernel grids (typically a
// t-sweep on one mesh): envelope(t, d) = max(t^{-n/2}, 1) *
// exp(-d^2 / (4 (1+gamma) a1 t)) with a1 the largest coefficient eigenvalue.
// Requires gamma in (0, 1); throws EmptySampleSet when no kernel samples are
// supplied.
EnvelopeFit gaussian_envelope_fit(const std::vector<KernelGrid>& kernels, double a1, double gamma,
                                  int n);

// Log-envelope fit for a resolvent kernel in dimension n: for n = 2 the
// envelope is |ln(1 + 1/d)| over off-diagonal pairs.  For n = 1 (the oracle
// interval, below the analytic range) a constant envelope is used and labeled
// as such.  For n >= 3 no desk-scale discretization exists; the fit is
// returned flagged out of scope with no samples.  An explicit pair list may
// restrict the fit; a diagonal pair in it throws DiagonalPairRejected.
EnvelopeFit green_envelope_fit(const KernelGrid& green, double lambda, int n,
                               const std::vector<std::pair<int, int>>& pairs = {});

// Relative change of the fitted constant under refinement: |fine - coarse| /
// coarse.  Small values mean the constant has stabilized.
double envelope_stability(const EnvelopeFit& coarse, const EnvelopeFit& fine);

// Smallest C validating the closed-form Bessel envelope
//   K_nu(x) <= C [1 + Gamma(nu) 2^{nu-1} x^{-nu}] [1 + (2x/pi)^{1/2}]^{-1} e^{-x}  (nu > 0)
//   K_0(x)  <= C [ln(1 + 1/x)]                  [1 + (2x/pi)^{1/2}]^{-1} e^{-x}
// over a positive grid.
struct BesselBoundReport {
  double nu = 0.0;
  double constant = 0.0;
  double worst_x = 0.0;
  bool finite = false;
};

BesselBoundReport bessel_bound_check(double nu, const std::vector<double>& x_grid);

}  // namespace robinlab
