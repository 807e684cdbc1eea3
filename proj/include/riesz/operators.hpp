#pragma once

// Operator layer: linear and bilinear frequency-cutoff averages, their
// maximal and square-function variants, time-grid quadrature over the
// decomposition parameter, and the sampled convolution kernel of a single
// dyadic shell.

#include <string>
#include <vector>

#include "riesz/grid.hpp"
#include "riesz/symbols.hpp"

namespace riesz {

// ---------------------------------------------------------------------------
// Quadrature grids over the auxiliary parameter t and the radius R.
// ---------------------------------------------------------------------------

enum class TGridRule { uniform_in_t, gauss_legendre };

// Nodes/weights for integrals over (0, T].  Invariant: weights are positive
// and sum to T (exactly for the uniform and square-root-panel rules, to
// rounding for the double-exponential endpoint rule).
struct TGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  TGridRule rule = TGridRule::gauss_legendre;
  double T = 0.0;
};

// Midpoint rule with `count` equal cells on (0, T].
TGrid make_tgrid_uniform(double T, int count);

// Panelled Gauss rule on (0, T] with user-supplied interior breakpoints
// (points where the integrand has a square-root kink).  Each panel is split
// at its midpoint and mapped through a square-root substitution from both
// ends, so kinks at panel boundaries are integrated to near machine
// precision.  When `endpoint_singular` is set (needed when the power at the
// upper endpoints drops below 1/2) the panels use a double-exponential rule
// instead, which tolerates integrable endpoint singularities.
TGrid make_tgrid_gauss(double T, std::vector<double> breakpoints,
                       int points_per_half_panel, bool endpoint_singular = false);

// Same, but chooses points_per_half_panel so the total node count stays
// within `node_budget` (at least 4 per half panel).
TGrid make_tgrid_budget(double T, std::vector<double> breakpoints,
                        int node_budget, bool endpoint_singular = false);

// Logarithmically spaced t-values for square functions integrating dt/t.
// Weight of every node is log(t_{i+1}/t_i) = constant.
struct LogTGrid {
  std::vector<double> nodes;
  double log_step = 0.0;  // uniform spacing in log t
};

LogTGrid make_log_tgrid(double t_min, double t_max, int nodes_per_decade);

// Radius grid for maximal operators: sorted, log-spaced, capped at the
// Nyquist radius of the discretisation it will be used with.
struct RGrid {
  std::vector<double> values;  // ascending
  int j_cap = 20;              // largest dyadic shell index sweeps may use
};

RGrid make_rgrid(double r_min, double r_max, int nodes_per_decade,
                 double nyquist_radius, int j_cap = 20);

// Largest radius representable without aliasing on an N-point grid of side L.
double nyquist_radius(const SampledField& f);

// ---------------------------------------------------------------------------
// Linear operators.
// ---------------------------------------------------------------------------

// Frequency-side multiplication by (1 - |xi|^2/t^2)_+^delta.  Requires t > 0.
SampledField bochner_riesz_linear(const SampledField& f, double delta, double t);

// Single dyadic shell of the bilinear symbol applied as a bilinear operator:
// psi(2^j(1 - phi)) (1 - (|xi|^2+|eta|^2)/R^2)_+^alpha with
// phi = 1 - |xi|^2/R^2.  Requires j >= 2.
SampledField shell_piece(const SampledField& f, const SampledField& g,
                         double alpha, double R, int j,
                         BilinearPath path = BilinearPath::auto_select);

// Intermediate linear average used inside the shell decomposition:
// multiplier psi(2^j(1 - |xi|^2/R^2)) (R^2 - |xi|^2 - t^2)_+^{beta-1}.
// Implemented directly (not via the normalised symbol table) so that the
// scaling relation with `s_piece` is a genuine cross-check.
SampledField shell_average(const SampledField& f, int j, double beta,
                           double R, double t);

// Normalised variant: multiplier psi(2^j phi) (phi - t^2)_+^{beta-1} with
// phi = 1 - |xi|^2/R^2 and t in [0, sqrt(2^{1-j})].
SampledField shell_average_normalised(const SampledField& f, int j,
                                      double beta, double R, double t);

// ---------------------------------------------------------------------------
// Bilinear operator and its maximal variant.
// ---------------------------------------------------------------------------

// Bilinear frequency average at radius R with smoothness alpha.  Requires
// 0 < R <= Nyquist radius of the common grid.
SampledField bilinear_average(const SampledField& f, const SampledField& g,
                              double alpha, double R,
                              BilinearPath path = BilinearPath::auto_select);

// Nodewise sup over the radius grid of |bilinear_average|.  Output is a
// physical field with nonnegative real values (imag = 0).
SampledField maximal_bilinear(const SampledField& f, const SampledField& g,
                              double alpha, const RGrid& rgrid,
                              BilinearPath path = BilinearPath::auto_select);

// ---------------------------------------------------------------------------
// Decomposition of one shell into a weighted product of linear averages.
// ---------------------------------------------------------------------------

// Collects the square-root kink locations of the t-integrand for the given
// data: sqrt(R^2 - |xi|^2) over active modes of f inside shell j, and |eta|
// over active modes of g, clamped to (0, R sqrt(2^{1-j})).  Modes count as
// active when their coefficient exceeds `cutoff` times the spectral maximum.
std::vector<double> decomposition_breakpoints(const SampledField& f,
                                              const SampledField& g, int j,
                                              double R, double cutoff = 1e-13);

// Quadrature check of the shell identity
//   shell_piece(f,g) = c(split) R^{-2 alpha} *
//       int_0^{R_j} shell_average(f; t) . bochner_riesz_linear(g; t)
//                   . t^{2 delta + 1} dt,   R_j = R sqrt(2^{1-j}),
// evaluated on `tgrid`.  Returns sup |lhs - rhs| / sup |lhs|.
double decomposition_identity_check(const SampledField& f,
                                    const SampledField& g, int j,
                                    const DecompositionSplit& split, double R,
                                    const TGrid& tgrid,
                                    BilinearPath path = BilinearPath::auto_select);

// Cauchy-Schwarz domination on the same quadrature grid: returns the largest
// over grid nodes of |shell_piece| - c(split) R^{-2 alpha} * sqrt(int |shell_average . t^{2 delta+1}|^2 dt)
// * sqrt(int |bochner_riesz_linear|^2 dt), normalised by sup |shell_piece|.
// Nonpositive up to quadrature error when the identity holds.
double cauchy_schwarz_excess(const SampledField& f, const SampledField& g,
                             int j, const DecompositionSplit& split, double R,
                             const TGrid& tgrid,
                             BilinearPath path = BilinearPath::auto_select);

// ---------------------------------------------------------------------------
// Square functions.
// ---------------------------------------------------------------------------

// Continuous square function with derivative-type weight:
//   G(x) = ( int |k_t * f(x)|^2 dt/t )^{1/2},
//   hat k_t(xi) = 2 (alpha+1) (|xi|^2/t^2) (1 - |xi|^2/t^2)_+^alpha.
// Warns on stderr when the t-grid does not cover the spectral band of f with
// a factor-8 margin on both sides.
SampledField square_function(const SampledField& f, double alpha,
                             const LogTGrid& tgrid);

// Per-mode constant: square_function applied to a pure tone of frequency m
// returns |amplitude| * square_constant(alpha) at every node.
double square_constant(double alpha);

// Localised square function: multiplier psi(nu^{-1}(1 - |xi|^2/t^2)) on a
// shell of width nu around |xi| = t.  Requires 0 < nu < 1/16.
SampledField local_square_function(const SampledField& f, double nu,
                                   const LogTGrid& tgrid);

// Averaged square function at fixed radius R:
//   ( R^{-1} int_0^R |bochner_riesz_linear(g; delta, t)(x)|^2 dt )^{1/2}
// with uniform-in-t quadrature on `count` cells.
SampledField averaged_square_function(const SampledField& g, double delta,
                                      double R, int count = 256);

// Nodewise sup of averaged_square_function over the radius grid.
SampledField averaged_square_function_sup(const SampledField& g, double delta,
                                          const RGrid& rgrid, int count = 256);

// Telescoping identity: sup nodewise error of
//   B_t^delta g = sum_{k=1..d} (B_t^{delta+k-1} - B_t^{delta+k}) g + B_t^{delta+d} g.
// Requires d >= 1.
double telescoping_check(const SampledField& g, double delta, double t, int d);

// ---------------------------------------------------------------------------
// Hardy-Littlewood maximal function on the sampled torus.
// ---------------------------------------------------------------------------

// Centered box averages over half-widths given in grid cells; the result at
// x is the max over radii of the average of |f| on the window.  Radii must
// include 0 (so the output dominates |f|) and satisfy 2r+1 <= N.
SampledField hl_maximal(const SampledField& f, const std::vector<int>& radii);

// Dyadic default: {0, 1, 2, 4, ..., N/4}.
std::vector<int> dyadic_radii(int N);

// ---------------------------------------------------------------------------
// Shell kernel on the line.
// ---------------------------------------------------------------------------

struct ShellKernelReport {
  std::vector<double> x;         // sample abscissae (nonnegative)
  std::vector<double> kernel;    // K_j(x), dimension one
  std::vector<double> envelope;  // 2|A_j(x)| with K_j = 2 Re[e^{2 pi i x} A_j]
  double constant = 0.0;         // sup over x of envelope * 2^j (1+2^{-j}|x|)^2
};

// Dense-quadrature evaluation of K_j(x) = int psi(2^j(1-xi^2)) e^{2 pi i x xi} dxi
// in dimension one.  The x-grid must reach |x| >= 2^{j+4} so the constant is
// measured past the turning point of the weight; otherwise throws.
ShellKernelReport shell_kernel(int j, const std::vector<double>& xgrid,
                               const BumpSystem* bumps = nullptr);

// Default abscissae: 0 together with log-spaced points on [0.1, 2^{j+4}].
std::vector<double> shell_kernel_xgrid(int j, int per_decade = 300);

// ---------------------------------------------------------------------------
// CSV export of field profiles.
// ---------------------------------------------------------------------------

// Writes "index,coord,re,im,abs" rows along the first axis (through the row
// at the midpoint on the remaining axis when dim = 2).  Header lines starting
// with '#' echo the grid parameters.
void export_profile_csv(const SampledField& f, const std::string& path);

}  // namespace riesz
