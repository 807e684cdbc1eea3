#include "riesz/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "riesz/bumps.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// (v)_+^a with the strict-positivity convention shared across the project:
// exact 0.0 at and below the boundary, exact fast paths for a = 0, 1.
double pow_plus(double v, double a) {
    if (!(v > 0.0)) return 0.0;
    if (a == 0.0) return 1.0;
    if (a == 1.0) return v;
    return std::pow(v, a);
}

void require_physical(const SampledField& f, const char* who) {
    if (f.space != Space::physical)
        throw std::invalid_argument(std::string(who) + ": physical-space field required");
}

void require_same_grid(const SampledField& f, const SampledField& g, const char* who) {
    if (f.dim != g.dim || f.N != g.N || f.L != g.L || f.space != g.space)
        throw std::invalid_argument(std::string(who) + ": fields live on different grids");
}

// Squared frequency norm of a flat index into a centered spectrum.
double node_xi_sq(const SampledField& F, size_t flat) {
    if (F.dim == 1) {
        double x = F.freq_of_index(static_cast<int>(flat));
        return x * x;
    }
    int i = static_cast<int>(flat) / F.N;
    int j = static_cast<int>(flat) % F.N;
    double x = F.freq_of_index(i);
    double y = F.freq_of_index(j);
    return x * x + y * y;
}

}  // namespace

// ---------------------------------------------------------------------------
// t-grids and R-grids
// ---------------------------------------------------------------------------

TGrid make_tgrid_uniform(double T, int count) {
    if (!(T > 0.0)) throw std::invalid_argument("make_tgrid_uniform: T must be positive");
    if (count < 1) throw std::invalid_argument("make_tgrid_uniform: count must be >= 1");
    TGrid grid;
    grid.rule = TGridRule::uniform_in_t;
    grid.T = T;
    grid.nodes.resize(static_cast<size_t>(count));
    grid.weights.assign(static_cast<size_t>(count), T / count);
    for (int i = 0; i < count; ++i) grid.nodes[static_cast<size_t>(i)] = (i + 0.5) * T / count;
    return grid;
}

TGrid make_tgrid_gauss(double T, std::vector<double> breakpoints,
                       int points_per_half_panel, bool endpoint_singular) {
    if (!(T > 0.0)) throw std::invalid_argument("make_tgrid_gauss: T must be positive");
    if (points_per_half_panel < 1)
        throw std::invalid_argument("make_tgrid_gauss: need at least one point per half panel");
    QuadRule rule = paneled_rule(0.0, T, std::move(breakpoints),
                                 endpoint_singular ? PanelKind::tanh_sinh : PanelKind::sqrt_kink,
                                 points_per_half_panel);
    TGrid grid;
    grid.rule = TGridRule::gauss_legendre;
    grid.T = T;
    grid.nodes = std::move(rule.nodes);
    grid.weights = std::move(rule.weights);
    return grid;
}

TGrid make_tgrid_budget(double T, std::vector<double> breakpoints, int node_budget,
                        bool endpoint_singular) {
    if (!(T > 0.0)) throw std::invalid_argument("make_tgrid_budget: T must be positive");
    if (node_budget < 8)
        throw std::invalid_argument("make_tgrid_budget: budget must allow at least 8 nodes");
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> brk;
    for (double b : breakpoints) {
        if (!(b > T * 1e-12) || !(b < T * (1.0 - 1e-12))) continue;
        if (!brk.empty() && b - brk.back() < 1e-12 * T) continue;
        brk.push_back(b);
    }
    // min nodes per panel: 2*q with q = 4, or 4*nhalf + 2 with nhalf = 4
    int min_per_panel = endpoint_singular ? 18 : 8;
    int max_panels = std::max(1, node_budget / min_per_panel);
    while (static_cast<int>(brk.size()) + 1 > max_panels) {
        // drop the breakpoint with the smallest gap to its left neighbour
        size_t victim = 0;
        double best_gap = std::numeric_limits<double>::infinity();
        double prev = 0.0;
        for (size_t i = 0; i < brk.size(); ++i) {
            double gap = brk[i] - prev;
            if (gap < best_gap) {
                best_gap = gap;
                victim = i;
            }
            prev = brk[i];
        }
        brk.erase(brk.begin() + static_cast<std::ptrdiff_t>(victim));
    }
    int panels = static_cast<int>(brk.size()) + 1;
    int order;
    if (endpoint_singular)
        order = std::max(4, (node_budget / panels - 2) / 4);  // nhalf
    else
        order = std::max(4, node_budget / (2 * panels));  // GL order per half
    return make_tgrid_gauss(T, std::move(brk), order, endpoint_singular);
}

LogTGrid make_log_tgrid(double t_min, double t_max, int nodes_per_decade) {
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw std::invalid_argument("make_log_tgrid: need 0 < t_min < t_max");
    if (nodes_per_decade < 1)
        throw std::invalid_argument("make_log_tgrid: nodes_per_decade must be >= 1");
    double decades = std::log10(t_max / t_min);
    int count = std::max(1, static_cast<int>(std::ceil(decades * nodes_per_decade)));
    LogTGrid grid;
    grid.log_step = std::log(t_max / t_min) / count;
    grid.nodes.resize(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        grid.nodes[static_cast<size_t>(i)] = t_min * std::exp((i + 0.5) * grid.log_step);
    return grid;
}

RGrid make_rgrid(double r_min, double r_max, int nodes_per_decade, double nyq, int j_cap) {
    if (!(r_min > 0.0) || !(r_max >= r_min))
        throw std::invalid_argument("make_rgrid: need 0 < r_min <= r_max");
    if (r_max > nyq * (1.0 + 1e-9))
        throw std::invalid_argument("make_rgrid: r_max exceeds the aliasing-free radius");
    if (nodes_per_decade < 1)
        throw std::invalid_argument("make_rgrid: nodes_per_decade must be >= 1");
    if (j_cap < 2) throw std::invalid_argument("make_rgrid: j_cap must be >= 2");
    RGrid grid;
    grid.j_cap = j_cap;
    if (r_max == r_min) {
        grid.values = {r_min};
        return grid;
    }
    double decades = std::log10(r_max / r_min);
    int count = std::max(2, static_cast<int>(std::ceil(decades * nodes_per_decade)) + 1);
    grid.values.resize(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        double u = static_cast<double>(i) / (count - 1);
        grid.values[static_cast<size_t>(i)] = r_min * std::pow(r_max / r_min, u);
    }
    grid.values.back() = r_max;
    return grid;
}

double nyquist_radius(const SampledField& f) { return f.N / (2.0 * f.L); }

// ---------------------------------------------------------------------------
// linear operators
// ---------------------------------------------------------------------------

SampledField bochner_riesz_linear(const SampledField& f, double delta, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("bochner_riesz_linear: t must be positive");
    SymbolSpec spec;
    spec.kind = SymbolKind::br_disc;
    spec.t = t;
    spec.delta = delta;
    return apply_linear(spec, f);
}

SampledField shell_piece(const SampledField& f, const SampledField& g, double alpha,
                         double R, int j, BilinearPath path) {
    if (j < 2) throw std::invalid_argument("shell_piece: shell index must be >= 2");
    SymbolSpec spec;
    spec.kind = SymbolKind::piece;
    spec.alpha = alpha;
    spec.R = R;
    spec.j = j;
    return apply_bilinear(spec, f, g, path);
}

SampledField shell_average(const SampledField& f, int j, double beta, double R, double t) {
    if (j < 2) throw std::invalid_argument("shell_average: shell index must be >= 2");
    if (!(R > 0.0)) throw std::invalid_argument("shell_average: R must be positive");
    if (!(t >= 0.0)) throw std::invalid_argument("shell_average: t must be nonnegative");
    require_physical(f, "shell_average");
    const BumpSystem& bumps = standard_bumps();
    SampledField F = forward_transform(f);
    const double R_sq = R * R;
    for (size_t k = 0; k < F.size(); ++k) {
        double xi_sq = node_xi_sq(F, k);
        double phi = 1.0 - xi_sq / R_sq;
        double w = bumps.psi(std::ldexp(phi, j));
        if (w != 0.0) w *= pow_plus(R_sq - xi_sq - t * t, beta - 1.0);
        F.values[k] *= w;
    }
    return inverse_transform(F);
}

SampledField shell_average_normalised(const SampledField& f, int j, double beta,
                                      double R, double t) {
    if (j < 2) throw std::invalid_argument("shell_average_normalised: shell index must be >= 2");
    double t_max = std::sqrt(std::ldexp(1.0, 1 - j));
    if (!(t >= 0.0) || t > t_max * (1.0 + 1e-12))
        throw std::invalid_argument(
            "shell_average_normalised: t outside [0, sqrt(2^{1-j})]");
    SymbolSpec spec;
    spec.kind = SymbolKind::s_piece;
    spec.R = R;
    spec.j = j;
    spec.t = t;
    spec.beta = beta;
    return apply_linear(spec, f);
}

// ---------------------------------------------------------------------------
// bilinear operator and maximal variant
// ---------------------------------------------------------------------------

SampledField bilinear_average(const SampledField& f, const SampledField& g, double alpha,
                              double R, BilinearPath path) {
    if (!(R > 0.0)) throw std::invalid_argument("bilinear_average: R must be positive");
    if (R > nyquist_radius(f) * (1.0 + 1e-9))
        throw std::invalid_argument("bilinear_average: R exceeds the aliasing-free radius");
    SymbolSpec spec;
    spec.kind = SymbolKind::full;
    spec.alpha = alpha;
    spec.R = R;
    return apply_bilinear(spec, f, g, path);
}

SampledField maximal_bilinear(const SampledField& f, const SampledField& g, double alpha,
                              const RGrid& rgrid, BilinearPath path) {
    if (rgrid.values.empty())
        throw std::invalid_argument("maximal_bilinear: empty radius grid");
    require_same_grid(f, g, "maximal_bilinear");
    require_physical(f, "maximal_bilinear");
    if (rgrid.values.back() > nyquist_radius(f) * (1.0 + 1e-9))
        throw std::invalid_argument("maximal_bilinear: radius grid exceeds the aliasing-free range");
    SampledField out = make_field(f.dim, f.L, f.N, Space::physical);
    for (double R : rgrid.values) {
        SampledField fld = bilinear_average(f, g, alpha, R, path);
        for (size_t k = 0; k < out.size(); ++k) {
            double mag = std::abs(fld.values[k]);
            if (mag > out.values[k].real()) out.values[k] = mag;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// shell decomposition over the auxiliary parameter
// ---------------------------------------------------------------------------

std::vector<double> decomposition_breakpoints(const SampledField& f, const SampledField& g,
                                              int j, double R, double cutoff) {
    if (j < 2) throw std::invalid_argument("decomposition_breakpoints: shell index must be >= 2");
    if (!(R > 0.0)) throw std::invalid_argument("decomposition_breakpoints: R must be positive");
    require_same_grid(f, g, "decomposition_breakpoints");
    require_physical(f, "decomposition_breakpoints");
    const BumpSystem& bumps = standard_bumps();
    const double T = R * std::sqrt(std::ldexp(1.0, 1 - j));
    SampledField F = forward_transform(f);
    SampledField G = forward_transform(g);
    double fmax = 0.0, gmax = 0.0;
    for (size_t k = 0; k < F.size(); ++k) fmax = std::max(fmax, std::abs(F.values[k]));
    for (size_t k = 0; k < G.size(); ++k) gmax = std::max(gmax, std::abs(G.values[k]));
    std::vector<double> brk;
    for (size_t k = 0; k < F.size(); ++k) {
        if (std::abs(F.values[k]) <= cutoff * fmax) continue;
        double xi_sq = node_xi_sq(F, k);
        double phi = 1.0 - xi_sq / (R * R);
        if (bumps.psi(std::ldexp(phi, j)) == 0.0) continue;
        double kink = std::sqrt(std::max(0.0, R * R - xi_sq));
        if (kink > T * 1e-9 && kink < T * (1.0 - 1e-12)) brk.push_back(kink);
    }
    for (size_t k = 0; k < G.size(); ++k) {
        if (std::abs(G.values[k]) <= cutoff * gmax) continue;
        double kink = std::sqrt(node_xi_sq(G, k));
        if (kink > T * 1e-9 && kink < T * (1.0 - 1e-12)) brk.push_back(kink);
    }
    std::sort(brk.begin(), brk.end());
    std::vector<double> out;
    for (double b : brk)
        if (out.empty() || b - out.back() > 1e-9 * T) out.push_back(b);
    return out;
}

namespace {

// Shared core of the identity check and the Cauchy-Schwarz bound: walks the
// t-grid once, accumulating the weighted product field and, if requested, the
// two quadratic means.
struct DecompositionSums {
    SampledField product;    // int shell_average . disc_average . t^{2 delta+1} dt
    std::vector<double> a2;  // int |shell_average . t^{2 delta+1}|^2 dt
    std::vector<double> b2;  // int |disc_average|^2 dt
};

DecompositionSums accumulate_decomposition(const SampledField& f, const SampledField& g,
                                           int j, const DecompositionSplit& split, double R,
                                           const TGrid& tgrid, bool want_squares) {
    DecompositionSums sums{make_field(f.dim, f.L, f.N, Space::physical), {}, {}};
    if (want_squares) {
        sums.a2.assign(sums.product.size(), 0.0);
        sums.b2.assign(sums.product.size(), 0.0);
    }
    for (size_t i = 0; i < tgrid.nodes.size(); ++i) {
        double t = tgrid.nodes[i];
        double w = tgrid.weights[i];
        double tpow = std::pow(t, 2.0 * split.delta + 1.0);
        SampledField Bf = shell_average(f, j, split.beta, R, t);
        SampledField Bg = bochner_riesz_linear(g, split.delta, t);
        for (size_t k = 0; k < sums.product.size(); ++k) {
            std::complex<double> af = Bf.values[k] * tpow;
            sums.product.values[k] += w * af * Bg.values[k];
            if (want_squares) {
                sums.a2[k] += w * std::norm(af);
                sums.b2[k] += w * std::norm(Bg.values[k]);
            }
        }
    }
    return sums;
}

}  // namespace

double decomposition_identity_check(const SampledField& f, const SampledField& g, int j,
                                    const DecompositionSplit& split, double R,
                                    const TGrid& tgrid, BilinearPath path) {
    if (j < 2) throw std::invalid_argument("decomposition_identity_check: shell index must be >= 2");
    if (tgrid.nodes.empty())
        throw std::invalid_argument("decomposition_identity_check: empty t-grid");
    require_same_grid(f, g, "decomposition_identity_check");
    require_physical(f, "decomposition_identity_check");
    const double T = R * std::sqrt(std::ldexp(1.0, 1 - j));
    if (std::abs(tgrid.T - T) > 1e-9 * T)
        throw std::invalid_argument(
            "decomposition_identity_check: t-grid must span (0, R sqrt(2^{1-j})]");
    SampledField lhs = shell_piece(f, g, split.alpha, R, j, path);
    DecompositionSums sums = accumulate_decomposition(f, g, j, split, R, tgrid, false);
    const double scale = split.c * std::pow(R, -2.0 * split.alpha);
    double sup_err = 0.0, sup_lhs = 0.0;
    for (size_t k = 0; k < lhs.size(); ++k) {
        sup_err = std::max(sup_err, std::abs(scale * sums.product.values[k] - lhs.values[k]));
        sup_lhs = std::max(sup_lhs, std::abs(lhs.values[k]));
    }
    return sup_lhs > 0.0 ? sup_err / sup_lhs : sup_err;
}

double cauchy_schwarz_excess(const SampledField& f, const SampledField& g, int j,
                             const DecompositionSplit& split, double R, const TGrid& tgrid,
                             BilinearPath path) {
    if (j < 2) throw std::invalid_argument("cauchy_schwarz_excess: shell index must be >= 2");
    if (tgrid.nodes.empty()) throw std::invalid_argument("cauchy_schwarz_excess: empty t-grid");
    require_same_grid(f, g, "cauchy_schwarz_excess");
    require_physical(f, "cauchy_schwarz_excess");
    SampledField lhs = shell_piece(f, g, split.alpha, R, j, path);
    DecompositionSums sums = accumulate_decomposition(f, g, j, split, R, tgrid, true);
    const double scale = split.c * std::pow(R, -2.0 * split.alpha);
    double sup_excess = -std::numeric_limits<double>::infinity();
    double sup_lhs = 0.0;
    for (size_t k = 0; k < lhs.size(); ++k) {
        double bound = scale * std::sqrt(sums.a2[k]) * std::sqrt(sums.b2[k]);
        sup_excess = std::max(sup_excess, std::abs(lhs.values[k]) - bound);
        sup_lhs = std::max(sup_lhs, std::abs(lhs.values[k]));
    }
    return sup_lhs > 0.0 ? sup_excess / sup_lhs : 0.0;
}

// ---------------------------------------------------------------------------
// square functions
// ---------------------------------------------------------------------------

namespace {

// Shared driver: out(x) = sqrt( sum_i log_step |inverse(F . w(., t_i))(x)|^2 ),
// with w given as a callable of (xi_sq, t).
template <typename Weight>
SampledField log_square_function(const SampledField& f, const LogTGrid& tgrid,
                                 Weight&& weight, const char* who) {
    require_physical(f, who);
    if (tgrid.nodes.empty()) throw std::invalid_argument(std::string(who) + ": empty t-grid");
    SampledField F = forward_transform(f);
    std::vector<double> acc(F.size(), 0.0);
    SampledField H = make_field(f.dim, f.L, f.N, Space::frequency);
    for (double t : tgrid.nodes) {
        bool any = false;
        for (size_t k = 0; k < F.size(); ++k) {
            double w = weight(node_xi_sq(F, k), t);
            H.values[k] = w * F.values[k];
            if (w != 0.0 && F.values[k] != std::complex<double>(0.0)) any = true;
        }
        if (!any) continue;
        SampledField h = inverse_transform(H);
        for (size_t k = 0; k < acc.size(); ++k) acc[k] += tgrid.log_step * std::norm(h.values[k]);
    }
    SampledField out = make_field(f.dim, f.L, f.N, Space::physical);
    for (size_t k = 0; k < acc.size(); ++k) out.values[k] = std::sqrt(acc[k]);
    return out;
}

// Warns when the t-grid misses [band_min / lo_margin, band_max * hi_margin];
// the broadband square functions want an x8 safety factor on both sides,
// while the localised one only needs the thin shell just above each |xi|.
void check_band_coverage(const SampledField& F, const LogTGrid& tgrid, const char* who,
                         double lo_margin = 8.0, double hi_margin = 8.0) {
    double amax = 0.0;
    for (const auto& v : F.values) amax = std::max(amax, std::abs(v));
    if (amax == 0.0) return;
    double band_min = std::numeric_limits<double>::infinity();
    double band_max = 0.0;
    for (size_t k = 0; k < F.size(); ++k) {
        if (std::abs(F.values[k]) <= 1e-12 * amax) continue;
        double r = std::sqrt(node_xi_sq(F, k));
        if (r == 0.0) continue;  // constant mode: annihilated by every t
        band_min = std::min(band_min, r);
        band_max = std::max(band_max, r);
    }
    if (band_max == 0.0) return;
    if (tgrid.nodes.front() > band_min / lo_margin * (1.0 + 1e-9) ||
        tgrid.nodes.back() < band_max * hi_margin * (1.0 - 1e-9)) {
        std::cerr << "warning: " << who << ": t-grid [" << tgrid.nodes.front() << ", "
                  << tgrid.nodes.back() << "] lacks the required margin around the spectral "
                  << "band [" << band_min << ", " << band_max << "]\n";
    }
}

}  // namespace

double square_constant(double alpha) { return std::sqrt((alpha + 1.0) / (2.0 * alpha + 1.0)); }

SampledField square_function(const SampledField& f, double alpha, const LogTGrid& tgrid) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("square_function: alpha must be >= 0");
    require_physical(f, "square_function");
    check_band_coverage(forward_transform(f), tgrid, "square_function");
    return log_square_function(
        f, tgrid,
        [alpha](double xi_sq, double t) {
            double s = xi_sq / (t * t);
            return 2.0 * (alpha + 1.0) * s * pow_plus(1.0 - s, alpha);
        },
        "square_function");
}

SampledField local_square_function(const SampledField& f, double nu, const LogTGrid& tgrid) {
    if (!(nu > 0.0) || !(nu < 1.0 / 16.0))
        throw std::invalid_argument("local_square_function: width must lie in (0, 1/16)");
    require_physical(f, "local_square_function");
    // The multiplier shell lives at 1 - xi^2/t^2 ~ nu, i.e. t just above |xi|:
    // the grid only has to straddle [band_min, band_max * (1 + 2 nu)].
    check_band_coverage(forward_transform(f), tgrid, "local_square_function", 1.0,
                        1.0 + 2.0 * nu);
    const BumpSystem& bumps = standard_bumps();
    return log_square_function(
        f, tgrid,
        [nu, &bumps](double xi_sq, double t) {
            return bumps.psi((1.0 - xi_sq / (t * t)) / nu);
        },
        "local_square_function");
}

SampledField averaged_square_function(const SampledField& g, double delta, double R,
                                      int count) {
    if (!(R > 0.0)) throw std::invalid_argument("averaged_square_function: R must be positive");
    if (count < 1) throw std::invalid_argument("averaged_square_function: count must be >= 1");
    require_physical(g, "averaged_square_function");
    std::vector<double> acc(g.size(), 0.0);
    const double w = R / count;
    for (int i = 0; i < count; ++i) {
        double t = (i + 0.5) * R / count;
        SampledField B = bochner_riesz_linear(g, delta, t);
        for (size_t k = 0; k < acc.size(); ++k) acc[k] += w * std::norm(B.values[k]);
    }
    SampledField out = make_field(g.dim, g.L, g.N, Space::physical);
    for (size_t k = 0; k < acc.size(); ++k) out.values[k] = std::sqrt(acc[k] / R);
    return out;
}

SampledField averaged_square_function_sup(const SampledField& g, double delta,
                                          const RGrid& rgrid, int count) {
    if (rgrid.values.empty())
        throw std::invalid_argument("averaged_square_function_sup: empty radius grid");
    SampledField out = make_field(g.dim, g.L, g.N, Space::physical);
    for (double R : rgrid.values) {
        SampledField fld = averaged_square_function(g, delta, R, count);
        for (size_t k = 0; k < out.size(); ++k)
            if (fld.values[k].real() > out.values[k].real()) out.values[k] = fld.values[k];
    }
    return out;
}

double telescoping_check(const SampledField& g, double delta, double t, int d) {
    if (d < 1) throw std::invalid_argument("telescoping_check: depth must be >= 1");
    std::vector<SampledField> B;
    B.reserve(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) B.push_back(bochner_riesz_linear(g, delta + k, t));
    SampledField acc = make_field(g.dim, g.L, g.N, Space::physical);
    for (int k = 1; k <= d; ++k) {
        const auto& hi = B[static_cast<size_t>(k) - 1];
        const auto& lo = B[static_cast<size_t>(k)];
        for (size_t m = 0; m < acc.size(); ++m) acc.values[m] += hi.values[m] - lo.values[m];
    }
    for (size_t m = 0; m < acc.size(); ++m) acc.values[m] += B[static_cast<size_t>(d)].values[m];
    double sup = 0.0;
    for (size_t m = 0; m < acc.size(); ++m)
        sup = std::max(sup, std::abs(acc.values[m] - B[0].values[m]));
    return sup;
}

// ---------------------------------------------------------------------------
// Hardy-Littlewood maximal function
// ---------------------------------------------------------------------------

namespace {

// Circular sliding-window means of a real vector, half-width r.
std::vector<double> window_mean_1d(const std::vector<double>& v, int r) {
    int N = static_cast<int>(v.size());
    std::vector<double> out(v.size());
    double sum = 0.0;
    for (int d = -r; d <= r; ++d) sum += v[static_cast<size_t>(((d % N) + N) % N)];
    for (int k = 0; k < N; ++k) {
        out[static_cast<size_t>(k)] = sum / (2 * r + 1);
        int drop = ((k - r) % N + N) % N;
        int add = ((k + r + 1) % N + N) % N;
        sum += v[static_cast<size_t>(add)] - v[static_cast<size_t>(drop)];
    }
    return out;
}

}  // namespace

std::vector<int> dyadic_radii(int N) {
    std::vector<int> radii = {0};
    for (int r = 1; 2 * r + 1 <= N && r <= N / 4; r *= 2) radii.push_back(r);
    return radii;
}

SampledField hl_maximal(const SampledField& f, const std::vector<int>& radii) {
    require_physical(f, "hl_maximal");
    if (radii.empty()) throw std::invalid_argument("hl_maximal: empty radius list");
    if (std::find(radii.begin(), radii.end(), 0) == radii.end())
        throw std::invalid_argument("hl_maximal: radius list must include 0");
    for (int r : radii)
        if (r < 0 || 2 * r + 1 > f.N)
            throw std::invalid_argument("hl_maximal: window exceeds the grid");
    std::vector<double> mag(f.size());
    for (size_t k = 0; k < f.size(); ++k) mag[k] = std::abs(f.values[k]);
    SampledField out = make_field(f.dim, f.L, f.N, Space::physical);
    for (int r : radii) {
        std::vector<double> avg;
        if (f.dim == 1) {
            avg = window_mean_1d(mag, r);
        } else {
            // separable pass: rows then columns
            avg.assign(mag.size(), 0.0);
            std::vector<double> line(static_cast<size_t>(f.N));
            for (int i = 0; i < f.N; ++i) {
                for (int jj = 0; jj < f.N; ++jj)
                    line[static_cast<size_t>(jj)] = mag[static_cast<size_t>(i) * f.N + jj];
                std::vector<double> row = window_mean_1d(line, r);
                for (int jj = 0; jj < f.N; ++jj)
                    avg[static_cast<size_t>(i) * f.N + jj] = row[static_cast<size_t>(jj)];
            }
            for (int jj = 0; jj < f.N; ++jj) {
                for (int i = 0; i < f.N; ++i)
                    line[static_cast<size_t>(i)] = avg[static_cast<size_t>(i) * f.N + jj];
                std::vector<double> col = window_mean_1d(line, r);
                for (int i = 0; i < f.N; ++i)
                    avg[static_cast<size_t>(i) * f.N + jj] = col[static_cast<size_t>(i)];
            }
        }
        for (size_t k = 0; k < out.size(); ++k)
            if (avg[k] > out.values[k].real()) out.values[k] = avg[k];
    }
    return out;
}

// ---------------------------------------------------------------------------
// shell kernel on the line
// ---------------------------------------------------------------------------

std::vector<double> shell_kernel_xgrid(int j, int per_decade) {
    double x_max = std::ldexp(1.0, j + 4) * 1.0001;
    double decades = std::log10(x_max / 0.1);
    int count = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
    std::vector<double> x = {0.0};
    for (int i = 0; i < count; ++i)
        x.push_back(0.1 * std::pow(x_max / 0.1, static_cast<double>(i) / (count - 1)));
    return x;
}

ShellKernelReport shell_kernel(int j, const std::vector<double>& xgrid,
                               const BumpSystem* bumps) {
    if (j < 2) throw std::invalid_argument("shell_kernel: shell index must be >= 2");
    if (xgrid.empty()) throw std::invalid_argument("shell_kernel: empty x-grid");
    const BumpSystem& sys = bumps ? *bumps : standard_bumps();
    double x_need = std::ldexp(1.0, j + 4);
    double x_max = 0.0;
    for (double x : xgrid) x_max = std::max(x_max, std::abs(x));
    if (x_max < x_need)
        throw std::invalid_argument(
            "shell_kernel: x-grid must reach 2^{j+4} to resolve the decay constant");
    // support of the shell weight on the positive half-line
    const double a = std::sqrt(1.0 - std::ldexp(1.0, 1 - j));
    const double b = std::sqrt(1.0 - std::ldexp(1.0, -1 - j));
    ShellKernelReport report;
    report.x.reserve(xgrid.size());
    report.kernel.reserve(xgrid.size());
    report.envelope.reserve(xgrid.size());
    const double scale = std::ldexp(1.0, j);
    for (double x_signed : xgrid) {
        double x = std::abs(x_signed);
        // carrier-removed amplitude A_j(x) = int_a^b psi(2^j(1-xi^2)) e^{2 pi i x (xi-1)} dxi;
        // panel count tracks the residual phase so fixed-order Gauss stays exact
        int panels = std::max(8, static_cast<int>(std::ceil(4.0 * x * (b - a))));
        std::complex<double> A = 0.0;
        for (int p = 0; p < panels; ++p) {
            double lo = a + (b - a) * p / panels;
            double hi = a + (b - a) * (p + 1) / panels;
            QuadRule rule = gl_on_interval(lo, hi, 12);
            for (size_t q = 0; q < rule.nodes.size(); ++q) {
                double xi = rule.nodes[q];
                double w = sys.psi(std::ldexp(1.0 - xi * xi, j));
                if (w == 0.0) continue;
                double phase = kTwoPi * x * (xi - 1.0);
                A += rule.weights[q] * w * std::complex<double>(std::cos(phase), std::sin(phase));
            }
        }
        double carrier = kTwoPi * x;
        double kj = 2.0 * (std::cos(carrier) * A.real() - std::sin(carrier) * A.imag());
        double env = 2.0 * std::abs(A);
        report.x.push_back(x);
        report.kernel.push_back(kj);
        report.envelope.push_back(env);
        double grow = 1.0 + std::ldexp(x, -j);
        report.constant = std::max(report.constant, env * scale * grow * grow);
    }
    return report;
}

// ---------------------------------------------------------------------------
// CSV export
// ---------------------------------------------------------------------------

void export_profile_csv(const SampledField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_profile_csv: cannot open " + path);
    out << "# dim=" << f.dim << " L=" << f.L << " N=" << f.N
        << " space=" << (f.space == Space::physical ? "physical" : "frequency") << "\n";
    out << "index,coord,re,im,abs\n";
    out.precision(17);
    auto emit = [&](int idx, std::complex<double> v) {
        double coord = f.space == Space::physical ? f.coord_of_index(idx)
                                                  : f.freq_of_index(idx);
        out << idx << ',' << coord << ',' << v.real() << ',' << v.imag() << ','
            << std::abs(v) << '\n';
    };
    if (f.dim == 1) {
        for (int i = 0; i < f.N; ++i) emit(i, f.at(i));
    } else {
        for (int i = 0; i < f.N; ++i) emit(i, f.at(f.N / 2, i));
    }
    if (!out) throw std::runtime_error("export_profile_csv: write failed for " + path);
}

}  // namespace riesz
