#pragma once

// Empirical operator-norm probes over the deterministic test bank, dyadic
// decay-rate fitting, convergence-to-product probes, and region-scan data
// emission (CSV plus an SVG renderer that draws from the CSV alone).

#include <functional>
#include <string>
#include <vector>

#include "riesz/exponents.hpp"
#include "riesz/grid.hpp"
#include "riesz/operators.hpp"

namespace riesz {

// Lebesgue exponent triple with 1/p = 1/p1 + 1/p2.
struct ExponentTriple {
    double p1 = 2.0;
    double p2 = 2.0;
    double p = 1.0;
};

// Derives p from (p1, p2); infinities allowed.
ExponentTriple holder_triple(double p1, double p2);

using BilinearOp =
    std::function<SampledField(const SampledField&, const SampledField&)>;

// lp_norm(op(f,g), p) / (lp_norm(f,p1) lp_norm(g,p2)); rejects zero-norm
// inputs.
double empirical_ratio(const BilinearOp& op, const SampledField& f,
                       const SampledField& g, const ExponentTriple& triple);

struct ProbeReport {
    std::string tag;
    int dim = 1;
    double L = 32.0;
    int N = 0;
    ExponentTriple triple;
    double alpha = 0.0;
    std::string param_name;  // optional sweep parameter column (R or j)
    double param = 0.0;
    std::vector<double> ratios;  // one per bank entry, in bank order
    double max_ratio = 0.0;
    double wall_seconds = 0.0;
    std::string note;  // always labels the result as a lower bound
};

// Max of empirical_ratio over the bank (parallel map, deterministic
// index-order reduction).  The report records every per-entry ratio.
ProbeReport empirical_norm(const BilinearOp& op, const std::string& tag,
                           const TestBank& bank, const ExponentTriple& triple,
                           double alpha);

struct DecayFit {
    std::vector<int> included_j;
    std::vector<double> log2_norms;  // aligned with included_j
    std::vector<int> excluded_j;     // shells with no resolvable content
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms of fit residuals
    bool valid = false;
    std::string note;
};

// Least-squares slope of log2 || sup_R |shell_piece| ||_p against j over
// [j_lo, j_hi].  Empty shells (norm below 1e-14 of the largest) are excluded
// and listed; fits spanning fewer than 6 shell indices are refused.
DecayFit dyadic_decay_fit(const SampledField& f, const SampledField& g,
                          double alpha, const ExponentTriple& triple, int j_lo,
                          int j_hi, const RGrid& rgrid,
                          BilinearPath path = BilinearPath::auto_select);

struct ConvergenceReport {
    std::vector<double> radii;
    std::vector<double> errors;  // ||bilinear_average - f g||_p per radius
    double band_radius = 0.0;    // sqrt(rad(f)^2 + rad(g)^2), spectral radii
    double final_error = 0.0;
    bool tail_monotone = false;  // non-increasing once R exceeds band_radius
};

// ||bilinear_average(f,g;alpha,R) - f g||_p along the ascending radius grid.
ConvergenceReport convergence_probe(const SampledField& f, const SampledField& g,
                                    double alpha, const RGrid& rgrid, double p,
                                    BilinearPath path = BilinearPath::auto_select);

struct RegionPoint {
    Frac p1;
    Frac p2;
    double alpha = 0.0;
    RegionVerdict verdict;
};

// Diagonal scan p1 = p2 = p over the given exponents and alpha values.
std::vector<RegionPoint> region_scan(int n, const std::vector<Frac>& ps,
                                     const std::vector<double>& alphas);

// CSV schemas.  Headers echo the supplied config line(s) as '#' comments;
// bodies are deterministic for identical inputs.
void write_region_csv(const std::vector<RegionPoint>& points, int n,
                      const std::string& path, const std::string& config_echo);
void write_ratios_csv(const ProbeReport& report, const std::string& path,
                      const std::string& config_echo);

// Renders the region plot purely from a region CSV written above; performs
// no classification of its own.
void write_region_svg_from_csv(const std::string& csv_path,
                               const std::string& svg_path);

}  // namespace riesz
