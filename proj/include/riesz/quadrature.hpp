#pragma once

// Quadrature building blocks for the radial t-integrals.
//
// Three rules cover every integrand family that appears:
//   * plain Gauss-Legendre panels - smooth integrands (Bessel envelopes,
//     bump-function moments);
//   * sqrt-substitution panels - integrands with half-integer kinks
//     (R^2 phi - t^2)_+^{beta-1}, (1 - eta^2/t^2)_+^delta at interior
//     breakpoints: each panel half is mapped by t = a + s^2 (resp.
//     t = b - s^2), which turns sqrt kinks at the panel ends into analytic
//     functions of s while leaving polynomials polynomial;
//   * tanh-sinh panels - genuinely singular (but integrable) endpoint
//     behavior, e.g. (R^2 phi - t^2)^(beta-1) with beta < 1.
//
// All weights are strictly positive; each rule reproduces the panel length
// exactly up to its truncation error, which the grid invariant checks lean on.

#include <functional>
#include <vector>

namespace riesz {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
// the Legendre recurrence and cached per order. Thread-safe.
const QuadRule& gauss_legendre(int q);

// q-point Gauss-Legendre scaled to [a, b].
QuadRule gl_on_interval(double a, double b, int q);

// 2q nodes on [a, b]: the panel is split at its midpoint and each half is
// integrated in the variable s with t = a + s^2 / t = b - s^2.
QuadRule sqrt_panel(double a, double b, int q);

// Up to 2*(2*nhalf+1) tanh-sinh nodes on the open interval (a, b) (one fan
// per half-panel), absorbing any integrable endpoint singularity at a or b;
// cluster nodes that round onto an endpoint are dropped, so integrands may
// blow up there.
QuadRule tanh_sinh_panel(double a, double b, int nhalf);

enum class PanelKind {
    gauss,      // plain Gauss-Legendre per panel
    sqrt_kink,  // sqrt-substitution halves per panel
    tanh_sinh,  // tanh-sinh halves per panel
};

// Concatenates per-panel rules over consecutive breakpoints. Breakpoints are
// sorted, deduplicated (gap < 1e-14 merges), and clamped to [lo, hi]; lo and
// hi are always included. `points_per_panel` means GL order q for gauss and
// sqrt_kink, and nhalf for tanh_sinh.
QuadRule paneled_rule(double lo, double hi, std::vector<double> breakpoints,
                      PanelKind kind, int points_per_panel);

// Adaptive scalar integration (Gauss-Kronrod); used only for one-off oracle
// integrals, never inside grid-sized loops.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12);

}  // namespace riesz
