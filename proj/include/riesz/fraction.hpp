#pragma once

// Exact rational arithmetic with a distinguished +infinity value.
//
// Exponent formulas in this project are piecewise-rational with seams at
// rational points; evaluating them in floating point would smear the seams and
// make "continuous across the boundary" tests meaningless. All exponent
// bookkeeping therefore runs on Frac and is converted to double only at the
// very end.

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace riesz {

struct Frac {
    long long num = 0;
    long long den = 1;   // always > 0 for finite values; 0 marks +infinity
    // +infinity is canonically {1, 0}. Negative infinity is never needed.

    constexpr Frac() = default;
    constexpr Frac(long long v) : num(v), den(1) {}
    Frac(long long n, long long d) : num(n), den(d) {
        if (d == 0) throw std::domain_error("Frac: zero denominator");
        normalize();
    }

    static constexpr Frac pos_inf() {
        Frac f;
        f.num = 1;
        f.den = 0;
        return f;
    }

    constexpr bool is_inf() const { return den == 0; }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    double to_double() const {
        if (is_inf()) return std::numeric_limits<double>::infinity();
        return static_cast<double>(num) / static_cast<double>(den);
    }

    std::string str() const {
        if (is_inf()) return "inf";
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Frac operator+(const Frac& a, const Frac& b) {
        if (a.is_inf() || b.is_inf()) return pos_inf();
        return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Frac operator-(const Frac& a, const Frac& b) {
        if (b.is_inf()) throw std::domain_error("Frac: subtracting infinity");
        if (a.is_inf()) return pos_inf();
        return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Frac operator*(const Frac& a, const Frac& b) {
        if (a.is_inf() || b.is_inf()) {
            // 0 * inf arises only through bugs; flag it rather than guess.
            if ((a.is_inf() && b.num == 0) || (b.is_inf() && a.num == 0))
                throw std::domain_error("Frac: 0 * infinity");
            if (a.num < 0 || b.num < 0)
                throw std::domain_error("Frac: negative * infinity");
            return pos_inf();
        }
        return Frac(a.num * b.num, a.den * b.den);
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.is_inf()) {
            if (a.is_inf()) throw std::domain_error("Frac: inf / inf");
            return Frac(0);
        }
        if (b.num == 0) throw std::domain_error("Frac: division by zero");
        if (a.is_inf()) return pos_inf();
        return Frac(a.num * b.den, a.den * b.num);
    }
    friend Frac operator-(const Frac& a) {
        if (a.is_inf()) throw std::domain_error("Frac: negating infinity");
        Frac r = a;
        r.num = -r.num;
        return r;
    }

    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num == b.num && a.den == b.den;  // both stored normalized
    }
    friend std::strong_ordering operator<=>(const Frac& a, const Frac& b) {
        if (a.is_inf() && b.is_inf()) return std::strong_ordering::equal;
        if (a.is_inf()) return std::strong_ordering::greater;
        if (b.is_inf()) return std::strong_ordering::less;
        // cross-multiply in 128-bit so large dens can't overflow
        __int128 lhs = static_cast<__int128>(a.num) * b.den;
        __int128 rhs = static_cast<__int128>(b.num) * a.den;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // reciprocal maps 0 <-> +infinity, the convention used for exponents
    // (1/p = 0 exactly when p = infinity)
    Frac reciprocal() const {
        if (is_inf()) return Frac(0);
        if (num == 0) return pos_inf();
        if (num < 0) throw std::domain_error("Frac: reciprocal of negative");
        return Frac(den, num);
    }
};

inline Frac frac_abs(const Frac& a) {
    if (a.is_inf()) return a;
    return a.num < 0 ? -a : a;
}
inline Frac frac_max(const Frac& a, const Frac& b) { return a < b ? b : a; }
inline Frac frac_min(const Frac& a, const Frac& b) { return a < b ? a : b; }

}  // namespace riesz
