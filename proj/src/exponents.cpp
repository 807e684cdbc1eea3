#include "riesz/exponents.hpp"

#include <stdexcept>

namespace riesz {

Frac critical_index(int n) {
    if (n < 1) throw std::domain_error("critical_index: n must be >= 1");
    return Frac(2 * n - 1, 2);
}

Frac alpha_p(int n, const Frac& p) {
    if (n < 1) throw std::domain_error("alpha_p: n must be >= 1");
    if (!p.is_inf() && p < Frac(1)) throw std::domain_error("alpha_p: p must be >= 1");
    // n|1/p - 1/2| - 1/2, clamped at zero. 1/inf = 0 exactly.
    Frac inv_p = p.reciprocal();
    Frac value = Frac(n) * frac_abs(inv_p - Frac(1, 2)) - Frac(1, 2);
    return frac_max(value, Frac(0));
}

Frac p_zero(int n) {
    if (n < 2) throw std::domain_error("p_zero: n must be >= 2");
    int k = n % 3;
    long long d = 4LL * n - 6 - k;
    if (d == 0) return Frac::pos_inf();  // happens exactly at n = 2
    return Frac(2) + Frac(12, d);
}

Frac peak_exponent(int n) {
    if (n < 2) throw std::domain_error("peak_exponent: n must be >= 2");
    return frac_min(p_zero(n), Frac(2LL * (n + 2), n));
}

Frac alpha_star(int n, const Frac& p1, const Frac& p2) {
    if (n < 2) throw std::domain_error("alpha_star: n must be >= 2");
    if (p1 < Frac(2) || p2 < Frac(2))
        throw std::domain_error("alpha_star: exponents must be >= 2");
    const Frac pk = peak_exponent(n);
    // weight(q) = (1 - 2/q) / (1 - 2/pk) interpolates linearly in 1/q between
    // 0 at q = 2 and 1 at q = pk, gluing the cases continuously.
    const Frac denom = Frac(1) - Frac(2) / pk;
    auto weight = [&](const Frac& q) { return (Frac(1) - Frac(2) / q) / denom; };
    const Frac a_pk = alpha_p(n, pk);

    const bool hi1 = p1 >= pk;  // ties belong to the top case
    const bool hi2 = p2 >= pk;
    if (hi1 && hi2) return alpha_p(n, p1) + alpha_p(n, p2);
    if (hi1 && !hi2) return alpha_p(n, p1) + weight(p2) * a_pk;
    if (!hi1 && hi2) return weight(p1) * a_pk + alpha_p(n, p2);
    return (weight(p1) + weight(p2)) * a_pk;
}

Frac threshold_dim1(const Frac& p1, const Frac& p2) {
    if (p1 <= Frac(1) || p2 <= Frac(1) || p1.is_inf() || p2.is_inf())
        throw std::domain_error("threshold_dim1: exponents must lie in (1, infinity)");
    const bool lo1 = p1 < Frac(2);
    const bool lo2 = p2 < Frac(2);
    if (!lo1 && !lo2) return Frac(0);
    if (lo1 && !lo2) return p1.reciprocal() - Frac(1, 2);
    if (!lo1 && lo2) return p2.reciprocal() - Frac(1, 2);
    // both below 2: 1/p - 1 with 1/p = 1/p1 + 1/p2
    return p1.reciprocal() + p2.reciprocal() - Frac(1);
}

Frac derived_exponent(const Frac& p1, const Frac& p2) {
    Frac inv = p1.reciprocal() + p2.reciprocal();
    return inv.reciprocal();
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::above_critical_trivial: return "above-critical-trivial";
        case Regime::covered_multidim: return "covered-n>=2";
        case Regime::covered_dim1: return "covered-n=1";
        case Regime::below_critical_unknown: return "below-critical-unknown";
    }
    throw std::logic_error("regime_name: unreachable");
}

RegionVerdict classify_region(int n, const Frac& p1, const Frac& p2, double alpha) {
    if (n < 1) throw std::domain_error("classify_region: n must be >= 1");
    const double crit = critical_index(n).to_double();
    if (alpha > crit)
        return {Regime::above_critical_trivial, crit, "above-critical"};

    if (n >= 2 && p1 >= Frac(2) && p2 >= Frac(2)) {
        const double thr = alpha_star(n, p1, p2).to_double();
        if (alpha > thr) return {Regime::covered_multidim, thr, "bilinear-nd"};
        return {Regime::below_critical_unknown, thr, "none"};
    }
    if (n == 1 && p1 > Frac(1) && p2 > Frac(1) && !p1.is_inf() && !p2.is_inf()) {
        const double thr = threshold_dim1(p1, p2).to_double();
        if (alpha > thr) return {Regime::covered_dim1, thr, "bilinear-1d"};
        return {Regime::below_critical_unknown, thr, "none"};
    }
    return {Regime::below_critical_unknown, crit, "none"};
}

}  // namespace riesz
