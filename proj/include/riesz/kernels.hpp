#pragma once

// Closed-form convolution kernel of the bilinear frequency average and the
// real-order Bessel evaluation backing it, plus cross-validation of the
// closed form against the sampled-transform pipeline.

#include <string>
#include <vector>

namespace riesz {

enum class BesselMethod { power_series, integral_representation, automatic };

// J_nu(x) for real order nu >= 0, x >= 0.  The automatic policy uses the
// ascending power series for x <= nu + 8 and the real-order integral
// representation (cosine integral minus the exponential correction term)
// beyond; absolute error <= 1e-10 for x <= 100.  The two methods overlap on
// x in [1, 30] and can be forced individually for cross-checks.
double bessel_j(double nu, double x, BesselMethod method = BesselMethod::automatic);

// Radial closed form of the kernel in dimension 2n: with r = |(y,z)|,
//   K(r) = Gamma(alpha+1) pi^{-alpha} R^{2n} J_{alpha+n}(2 pi R r) / (R r)^{alpha+n},
// continuously extended at r = 0 by pi^n Gamma(alpha+1)/Gamma(alpha+1+n) R^{2n}.
double closed_form_kernel_radial(double r, double alpha, double R, int n);

// Point form: y and z are points of R^n (n in {1, 2}); depends on |(y,z)| only.
double closed_form_kernel(const std::vector<double>& y, const std::vector<double>& z,
                          double alpha, double R, int n);

struct KernelTransformReport {
    double max_rel_err = 0.0;  // sup |closed - sampled| / sup |closed| on the window
    double sup_kernel = 0.0;   // sup |closed form| over the window
    long long compared = 0;    // grid nodes inside the window
};

// Samples the multiplier (1 - (|xi|^2+|eta|^2)/R^2)_+^alpha on a 2n-dimensional
// frequency grid of side L with N points per axis, inverse-transforms it, and
// compares against the closed form on all nodes with |(y,z)| <= window_radius
// (coordinates wrapped to [-L/2, L/2)).  The deviation is normalised by the
// window sup of the closed form; for small alpha the slowly decaying kernel
// makes the periodisation error dominate, which this report makes visible.
KernelTransformReport kernel_vs_transform(double alpha, double R, int n,
                                          double window_radius, double L, int N);

// integral of |K| over the centred ball of radius W in R^{2n}, by radial
// quadrature with step dr; diverges with W below the integrability index.
double kernel_window_mass(double alpha, double R, int n, double W, double dr = 0.005);

// masses for a list of windows (shared radial sweep).
std::vector<double> kernel_window_masses(double alpha, double R, int n,
                                         const std::vector<double>& windows,
                                         double dr = 0.005);

// CSV rows (r, K(r)) for plotting radial decay.
void export_kernel_profile_csv(double alpha, double R, int n, double r_max,
                               int count, const std::string& path);

}  // namespace riesz
