#include "riesz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace riesz {

namespace {

QuadRule compute_gauss_legendre(int q) {
    if (q < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
    if (q == 1) return {{0.0}, {2.0}};
    std::vector<std::pair<double, double>> pts(q);
    // Roots of P_q by Newton from the Chebyshev-like initial guess; the
    // recurrence also yields P_q' for the weight formula 2/((1-x^2) P_q'^2).
    for (int i = 0; i < q; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= q; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        pts[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    std::sort(pts.begin(), pts.end());
    QuadRule rule;
    rule.nodes.reserve(q);
    rule.weights.reserve(q);
    for (auto& [x, w] : pts) {
        rule.nodes.push_back(x);
        rule.weights.push_back(w);
    }
    return rule;
}

}  // namespace

const QuadRule& gauss_legendre(int q) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, compute_gauss_legendre(q)).first;
    return it->second;
}

QuadRule gl_on_interval(double a, double b, int q) {
    const QuadRule& base = gauss_legendre(q);
    QuadRule out;
    out.nodes.reserve(q);
    out.weights.reserve(q);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < q; ++i) {
        out.nodes.push_back(mid + half * base.nodes[i]);
        out.weights.push_back(half * base.weights[i]);
    }
    return out;
}

QuadRule sqrt_panel(double a, double b, int q) {
    if (!(b > a)) throw std::domain_error("sqrt_panel: need b > a");
    const QuadRule& base = gauss_legendre(q);
    QuadRule out;
    out.nodes.reserve(2 * q);
    out.weights.reserve(2 * q);
    const double m = 0.5 * (a + b);
    // left half: t = a + s^2, s in (0, sqrt(m-a)], dt = 2 s ds
    const double sl = std::sqrt(m - a);
    for (int i = 0; i < q; ++i) {
        double s = 0.5 * sl * (base.nodes[i] + 1.0);
        double ws = 0.5 * sl * base.weights[i];
        out.nodes.push_back(a + s * s);
        out.weights.push_back(2.0 * s * ws);
    }
    // right half: t = b - s^2, emitted with s descending so t stays ascending
    const double sr = std::sqrt(b - m);
    for (int i = q - 1; i >= 0; --i) {
        double s = 0.5 * sr * (base.nodes[i] + 1.0);
        double ws = 0.5 * sr * base.weights[i];
        out.nodes.push_back(b - s * s);
        out.weights.push_back(2.0 * s * ws);
    }
    return out;
}

QuadRule tanh_sinh_panel(double a, double b, int nhalf) {
    if (!(b > a)) throw std::domain_error("tanh_sinh_panel: need b > a");
    if (nhalf < 4) throw std::domain_error("tanh_sinh_panel: nhalf too small");
    QuadRule out;
    const double hmax = 3.4;  // sinh argument cutoff; weights below ~1e-16 there
    const double h = hmax / nhalf;
    auto fan = [&](double lo, double hi) {
        // nodes on [lo, hi] clustering doubly-exponentially at both ends;
        // we use one fan per half-panel so each endpoint of [a, b] gets the
        // full cluster depth.
        for (int k = -nhalf; k <= nhalf; ++k) {
            double t = k * h;
            double sh = 0.5 * M_PI * std::sinh(t);
            double u = std::tanh(sh);
            double w = h * 0.5 * M_PI * std::cosh(t) / (std::cosh(sh) * std::cosh(sh));
            double x = lo + (hi - lo) * 0.5 * (u + 1.0);
            // deep-cluster nodes can round onto a or b, where callers place
            // their singularities; the lost weight is below 1e-20 of the panel
            if (x <= a || x >= b) continue;
            out.nodes.push_back(x);
            out.weights.push_back((hi - lo) * 0.5 * w);
        }
    };
    const double m = 0.5 * (a + b);
    fan(a, m);
    fan(m, b);
    return out;
}

QuadRule paneled_rule(double lo, double hi, std::vector<double> breakpoints,
                      PanelKind kind, int points_per_panel) {
    if (!(hi > lo)) throw std::domain_error("paneled_rule: need hi > lo");
    breakpoints.push_back(lo);
    breakpoints.push_back(hi);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> brk;
    for (double b : breakpoints) {
        if (b < lo || b > hi) continue;
        if (!brk.empty() && b - brk.back() < 1e-14) continue;
        brk.push_back(b);
    }
    QuadRule out;
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        QuadRule panel;
        switch (kind) {
            case PanelKind::gauss: panel = gl_on_interval(brk[i], brk[i + 1], points_per_panel); break;
            case PanelKind::sqrt_kink: panel = sqrt_panel(brk[i], brk[i + 1], points_per_panel); break;
            case PanelKind::tanh_sinh: panel = tanh_sinh_panel(brk[i], brk[i + 1], points_per_panel); break;
        }
        out.nodes.insert(out.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        out.weights.insert(out.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return out;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 15>::integrate(f, a, b, 12, rel_tol);
}

}  // namespace riesz
