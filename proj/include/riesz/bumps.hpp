#pragma once

// Smooth partition machinery: a mollifier-based step theta, the dyadic-shell
// bump psi, the center bump psi0 with its two-piece split, an exactly
// telescoping partition residual, and finite-difference derivative bounds.
//
// theta is the normalized integral of the standard mollifier
// m(v) = exp(-1/(v(1-v))) on (0,1), arranged so that
//   theta(s) = 1 for s <= 1,   theta(s) = 0 for s >= 2,   theta smooth,
// non-increasing. Derived bumps:
//   psi(s)   = theta(s) - theta(2s)          (support [1/2, 2], psi(1) = 1)
//   psi0(t)  = 1 - theta(4(1-t))             (t >= 0; vanishes for t >= 3/4)
//   mu(t)    = theta((32/3) t)               (seam for the psi0 split)
//   psi0_1   = psi0 * mu                     (support [0, 3/16])
//   psi0_2   = psi0 - psi0_1                 (support [3/32, 3/4])
//
// Dyadic arguments are produced with ldexp, so the telescoping sum
//   sum_{2<=j<=J} psi(2^j (1-t)) + psi0(t) = 1 - theta(2^{J+1} (1-t))
// cancels term-by-term on identical doubles and holds to machine precision.
//
// theta itself is evaluated through a dense cubic-Hermite table (values by
// per-cell Gauss-Legendre integration, slopes analytic), giving ~1e-13
// absolute accuracy at ~50ns per call; evaluation is deterministic, which is
// what the exact-cancellation arguments above rely on.

#include <functional>
#include <string>
#include <vector>

namespace riesz {

class BumpSystem {
  public:
    // n_der: highest derivative order for which sup-norm estimates are
    // tabulated (>= 2). The table covers psi on its support.
    explicit BumpSystem(int n_der);

    double theta(double s) const;
    double psi(double s) const;
    double psi0(double t) const;    // t >= 0
    double psi0_1(double t) const;  // t >= 0
    double psi0_2(double t) const;  // t >= 0

    // 1 - psi0(t) - sum_{2<=j<=J} psi(2^j(1-t)); equals theta(2^{J+1}(1-t)).
    // t must lie in [0, 1): at t = 1 every term vanishes and the identity
    // cannot hold, so that input is rejected.
    double partition_residual(double t, int J) const;

    int n_der() const { return n_der_; }

    // sup over the support of |d^k psi / ds^k|, k = 0..n_der (index k)
    const std::vector<double>& deriv_sup() const { return deriv_sup_; }

    ~BumpSystem();
    BumpSystem(const BumpSystem&) = delete;
    BumpSystem& operator=(const BumpSystem&) = delete;

  private:
    struct Table;
    Table* table_;
    int n_der_;
    std::vector<double> deriv_sup_;
};

// Shared instance with the dimension-1 derivative depth (n_der = 22).
const BumpSystem& standard_bumps();

// sup over [a, b] of the k-th derivative of f, by central finite differences
// with Richardson extrapolation on a step ladder (the stablest consecutive
// pair wins). f must be smooth and evaluable a little beyond [a, b].
double estimate_deriv_sup(const std::function<double(double)>& f, double a,
                          double b, int k, int samples = 801);

struct MembershipReport {
    double bound;  // max over k <= N of estimated sup |d^k h|
    bool pass;     // bound <= 1 (small numerical headroom applied)
};

// Smooth-class membership: h supported in [a, b], derivatives through order N
// bounded by 1. Orders beyond the system's tabulated depth are refused rather
// than guessed (finite differences degrade without warning there).
MembershipReport cN_membership(const std::function<double(double)>& h, double a,
                               double b, int N, const BumpSystem& sys);

struct ScaledBump {
    int k;
    double rho;
    std::function<double(double)> eval;  // x -> x^{-k-rho} psi(x)
    std::vector<double> deriv_sup;       // orders 0..N
};

// The rescaled family x -> x^{-k-rho} psi(x) with derivative sups through
// order N; callers compare growth in k against the 2^{N+k} k^{N+1} envelope.
ScaledBump scaled_family(int k, double rho, int N, const BumpSystem& sys);

// CSV table (x, psi, psi0, psi0_1, psi0_2) on [0, 2] with M+1 rows.
void export_bump_table(const BumpSystem& sys, const std::string& path, int M);

}  // namespace riesz
