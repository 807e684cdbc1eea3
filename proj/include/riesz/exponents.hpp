#pragma once

// Exact arithmetic for the exponent thresholds governing bilinear
// Bochner-Riesz boundedness, and region classification for threshold plots.
//
// Conventions:
//   * Lebesgue exponents live in [1, infinity]; infinity is Frac::pos_inf().
//   * alpha_p(n, p) = max{ n|1/p - 1/2| - 1/2, 0 }.
//   * peak_exponent(n) ("frak p") = min{ p0(n), 2(n+2)/n } with
//     p0(n) = 2 + 12/(4n - 6 - k), n = k (mod 3), k in {0,1,2}; the n = 2
//     denominator vanishes and p0(2) is taken as +infinity.
//   * alpha_star(n, p1, p2) is the four-case piecewise threshold for n >= 2,
//     p1, p2 >= 2; symmetric, continuous across case seams.
//   * threshold_dim1(p1, p2) covers n = 1 with 1 < p1, p2 < infinity.
//   * critical_index(n) = n - 1/2: above it the convolution kernel is
//     integrable and boundedness is trivial for all exponents.

#include <string>

#include "riesz/fraction.hpp"

namespace riesz {

Frac critical_index(int n);            // n >= 1
Frac alpha_p(int n, const Frac& p);    // p in [1, inf]
Frac p_zero(int n);                    // n >= 2; +inf at n = 2
Frac peak_exponent(int n);             // n >= 2
Frac alpha_star(int n, const Frac& p1, const Frac& p2);  // n >= 2, p1,p2 >= 2
Frac threshold_dim1(const Frac& p1, const Frac& p2);     // 1 < p1,p2 < inf

// The derived exponent p with 1/p = 1/p1 + 1/p2, exact.
Frac derived_exponent(const Frac& p1, const Frac& p2);

enum class Regime {
    above_critical_trivial,  // alpha > n - 1/2, kernel integrable
    covered_multidim,        // n >= 2 theorem hypotheses met
    covered_dim1,            // n = 1 theorem hypotheses met
    below_critical_unknown,  // no covering statement applies
};

std::string regime_name(Regime r);

struct RegionVerdict {
    Regime regime;
    double threshold;     // the governing lower bound on alpha for this point
    std::string theorem;  // by meaning: above-critical / bilinear-nd / bilinear-1d / none
};

// Classifies (n, p1, p2, alpha). The above-critical test runs first and wins
// for every exponent pair; otherwise the dimension-appropriate threshold is
// consulted. Exponent combinations outside every covered hypothesis map to
// below_critical_unknown with the critical index as the reported bound.
RegionVerdict classify_region(int n, const Frac& p1, const Frac& p2, double alpha);

}  // namespace riesz
