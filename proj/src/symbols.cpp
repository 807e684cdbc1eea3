#include "riesz/symbols.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "riesz/fft.hpp"
#include "riesz/parallel.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {

namespace {

// (v)_+^a with the strict-positivity convention: 0 at v <= 0 even for a = 0.
// Small integer powers bypass pow(), which dominates the bilinear hot loops.
inline double pos_pow(double v, double a) {
    if (!(v > 0.0)) return 0.0;
    if (a == 0.0) return 1.0;
    if (a == 1.0) return v;
    if (a == 2.0) return v * v;
    return std::pow(v, a);
}

const BumpSystem& bumps_of(const SymbolSpec& s) {
    return s.bumps ? *s.bumps : standard_bumps();
}

void require_linear(const SymbolSpec& s, const char* who) {
    if (symbol_is_bilinear(s.kind))
        throw std::invalid_argument(std::string(who) + ": bilinear symbol kind");
}

void require_bilinear(const SymbolSpec& s, const char* who) {
    if (!symbol_is_bilinear(s.kind))
        throw std::invalid_argument(std::string(who) + ": linear symbol kind");
}

// multiplicative weight carried by the xi variable alone; 0 annihilates the
// whole eta-row, which both bilinear paths exploit to skip work (the skipped
// values are exact zeros, so path agreement is unaffected)
inline double xi_row_weight(const SymbolSpec& s, double xi_sq, const BumpSystem& b) {
    const double phi = 1.0 - xi_sq / (s.R * s.R);
    switch (s.kind) {
        case SymbolKind::full:
            return phi > 0.0 ? 1.0 : 0.0;
        case SymbolKind::piece:
            return b.psi(std::ldexp(phi, s.j));
        case SymbolKind::tail: {
            const double t = xi_sq / (s.R * s.R);
            if (s.tail_part == 0) return b.psi0(t);
            if (s.tail_part == 1) return b.psi0_1(t);
            if (s.tail_part == 2) return b.psi0_2(t);
            throw std::domain_error("eval_symbol: tail_part must be 0, 1, or 2");
        }
        default:
            throw std::logic_error("xi_row_weight: bilinear kinds only");
    }
}

// the shared joint factor of full/piece/tail; the single expression keeps
// the dyadic pieces telescoping against the full symbol at machine precision
inline double joint_factor(const SymbolSpec& s, double xi_sq, double eta_sq) {
    return pos_pow(1.0 - (xi_sq + eta_sq) / (s.R * s.R), s.alpha);
}

}  // namespace

bool symbol_is_bilinear(SymbolKind k) {
    return k == SymbolKind::full || k == SymbolKind::piece || k == SymbolKind::tail;
}

double eval_symbol_radial(const SymbolSpec& spec, double xi_sq,
                          std::optional<double> eta_sq) {
    if (xi_sq < 0.0 || (eta_sq && *eta_sq < 0.0))
        throw std::domain_error("eval_symbol: squared norms must be >= 0");
    const BumpSystem& b = bumps_of(spec);
    if (symbol_is_bilinear(spec.kind)) {
        if (!eta_sq)
            throw std::invalid_argument("eval_symbol: bilinear kind requires eta");
        double w = xi_row_weight(spec, xi_sq, b);
        if (w == 0.0) return 0.0;
        return w * joint_factor(spec, xi_sq, *eta_sq);
    }
    if (eta_sq)
        throw std::invalid_argument("eval_symbol: linear kind takes no eta");
    switch (spec.kind) {
        case SymbolKind::localized: {
            const double phi = 1.0 - xi_sq / (spec.R * spec.R);
            const double nu = spec.nu > 0.0 ? spec.nu : std::ldexp(1.0, -spec.j);
            return b.psi(phi / nu);
        }
        case SymbolKind::br_disc:
            return pos_pow(1.0 - xi_sq / (spec.t * spec.t), spec.delta);
        case SymbolKind::s_piece: {
            const double phi = 1.0 - xi_sq / (spec.R * spec.R);
            double w = b.psi(std::ldexp(phi, spec.j));
            if (w == 0.0) return 0.0;
            return w * pos_pow(phi - spec.t * spec.t, spec.beta - 1.0);
        }
        default:
            throw std::logic_error("eval_symbol_radial: unreachable");
    }
}

double eval_symbol(const SymbolSpec& spec, const std::vector<double>& xi,
                   const std::optional<std::vector<double>>& eta) {
    auto sq = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return s;
    };
    if (eta) return eval_symbol_radial(spec, sq(xi), sq(*eta));
    return eval_symbol_radial(spec, sq(xi), std::nullopt);
}

// --- scalar identity ------------------------------------------------------

double c_alpha(double beta, double delta) {
    if (!(beta > 0.5)) throw std::domain_error("c_alpha: beta must be > 1/2");
    if (!(delta > -0.5)) throw std::domain_error("c_alpha: delta must be > -1/2");
    return 2.0 * std::tgamma(beta + delta + 1.0) /
           (std::tgamma(beta) * std::tgamma(delta + 1.0));
}

DecompositionSplit make_split(double beta, double delta) {
    return {beta + delta, beta, delta, c_alpha(beta, delta)};
}

SteinWeissReport steinweiss_check(const DecompositionSplit& split, double R,
                                  double phi, double eta_norm) {
    if (!(R > 0)) throw std::domain_error("steinweiss_check: R must be positive");
    if (!(phi > 0 && phi <= 1))
        throw std::domain_error("steinweiss_check: phi must lie in (0, 1]");
    if (eta_norm < 0) throw std::domain_error("steinweiss_check: |eta| must be >= 0");

    const double a = eta_norm;
    const double b = R * std::sqrt(phi);
    if (a >= b) return {0.0, 0.0, 0.0};

    const double lhs = pos_pow(1.0 - (a * a) / (R * R * phi), split.alpha);

    // Substitutions t = sqrt(a^2 + sigma^2) (lower half) and
    // t = sqrt(b^2 - tau^2) (upper half) collapse the integrand to
    //   (b^2 - a^2 - sigma^2)^{beta-1} sigma^{2 delta+1}   and
    //   (b^2 - a^2 - tau^2)^{delta}    tau^{2 beta-1},
    // continuous on their closed intervals whenever beta > 1/2, delta > -1/2.
    const double m = 0.5 * (a + b);
    const double c2 = b * b - a * a;
    const double sig_max = std::sqrt(m * m - a * a);
    const double tau_max = std::sqrt(b * b - m * m);
    const double be = split.beta, de = split.delta;

    auto f_low = [&](double sig) {
        return pos_pow(c2 - sig * sig, be - 1.0) * std::pow(sig, 2.0 * de + 1.0);
    };
    auto f_high = [&](double tau) {
        return pos_pow(c2 - tau * tau, de) * std::pow(tau, 2.0 * be - 1.0);
    };
    // sigma^{2 delta + 1} and tau^{2 beta - 1} have fractional-power kinks at
    // the origin; the doubly-exponential panel absorbs them, and two node
    // densities give an a-posteriori error estimate
    auto ts_value = [&](int nhalf) {
        QuadRule r1 = tanh_sinh_panel(0.0, sig_max, nhalf);
        QuadRule r2 = tanh_sinh_panel(0.0, tau_max, nhalf);
        double s = 0.0;
        for (size_t i = 0; i < r1.nodes.size(); ++i) s += r1.weights[i] * f_low(r1.nodes[i]);
        for (size_t i = 0; i < r2.nodes.size(); ++i) s += r2.weights[i] * f_high(r2.nodes[i]);
        return s;
    };
    const double I = ts_value(56);
    const double I_coarse = ts_value(40);
    if (I != 0.0 && std::abs(I - I_coarse) / std::abs(I) > 1e-9)
        throw std::runtime_error(
            "steinweiss_check: quadrature did not converge; estimated relative "
            "error " +
            std::to_string(std::abs(I - I_coarse) / std::abs(I)));

    const double rhs =
        split.c * std::pow(R, -2.0 * split.alpha) * std::pow(phi, -split.alpha) * I;
    const double rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
    return {lhs, rhs, rel};
}

// --- application to fields -------------------------------------------------

SampledField apply_linear(const SymbolSpec& spec, const SampledField& f) {
    require_linear(spec, "apply_linear");
    if (f.space != Space::physical)
        throw std::invalid_argument("apply_linear: physical-space input expected");
    SampledField F = forward_transform(f);
    const int N = F.N;
    if (F.dim == 1) {
        for (int i = 0; i < N; ++i) {
            double xi = F.freq_of_index(i);
            F.at(i) *= eval_symbol_radial(spec, xi * xi, std::nullopt);
        }
    } else {
        for (int i = 0; i < N; ++i) {
            double xi = F.freq_of_index(i);
            for (int j = 0; j < N; ++j) {
                double xj = F.freq_of_index(j);
                F.at(i, j) *= eval_symbol_radial(spec, xi * xi + xj * xj, std::nullopt);
            }
        }
    }
    return inverse_transform(F);
}

namespace {

std::atomic<std::size_t> g_tensor_budget{std::size_t(2) * 1024 * 1024 * 1024};

// natural-order DFT index -> signed mode number
inline int nat_mode(int i, int N) { return i < N / 2 ? i : i - N; }

bool tensor_fits(int dim, int N) {
    // the product array plus the transform's two staging buffers
    std::size_t total = 1;
    for (int r = 0; r < 2 * dim; ++r) total *= static_cast<std::size_t>(N);
    return 3 * total * sizeof(std::complex<double>) <= g_tensor_budget.load();
}

SampledField bilinear_tensor(const SymbolSpec& spec, const SampledField& f,
                             const SampledField& g) {
    const int n = f.dim, N = f.N;
    const double L = f.L;
    if (!tensor_fits(n, N))
        throw std::length_error("apply_bilinear: tensor intermediate exceeds the memory budget");
    const BumpSystem& bumps = bumps_of(spec);

    size_t half = f.values.size();       // N^n
    size_t total = half * half;          // N^{2n}
    std::vector<std::complex<double>> P(total);
    for (size_t i = 0; i < half; ++i) {
        const std::complex<double> fi = f.values[i];
        std::complex<double>* row = P.data() + i * half;
        const std::complex<double>* gv = g.values.data();
        for (size_t j = 0; j < half; ++j) row[j] = fi * gv[j];
    }
    std::vector<std::complex<double>> Phat = fft_nd(P, 2 * n, N, -1);
    P.clear();
    P.shrink_to_fit();

    // squared norms per N^n multi-index, natural DFT order
    std::vector<double> nsq(half);
    if (n == 1) {
        for (int i = 0; i < N; ++i) {
            double v = nat_mode(i, N) / L;
            nsq[static_cast<size_t>(i)] = v * v;
        }
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double a = nat_mode(i, N) / L, b = nat_mode(j, N) / L;
                nsq[static_cast<size_t>(i) * N + j] = a * a + b * b;
            }
    }

    // multiply by the symbol and fold the anti-diagonal xi+eta in one pass;
    // on the sampled torus e^{2 pi i x.(xi+eta)} aliases exactly to the
    // mode-sum grid point, so the diagonal restriction is a single rank-n
    // inverse transform of the folded array
    std::vector<std::complex<double>> folded(half, {0.0, 0.0});
    for (size_t i = 0; i < half; ++i) {
        const double w = xi_row_weight(spec, nsq[i], bumps);
        if (w == 0.0) continue;
        const std::complex<double>* row = Phat.data() + i * half;
        if (n == 1) {
            const size_t s0 = i;  // fold target (i + j) mod N
            for (size_t j = 0; j < half; ++j) {
                double v = w * joint_factor(spec, nsq[i], nsq[j]);
                if (v != 0.0) folded[(s0 + j) & (half - 1)] += v * row[j];
            }
        } else {
            const int i1 = static_cast<int>(i) / N, i2 = static_cast<int>(i) % N;
            for (size_t j = 0; j < half; ++j) {
                double v = w * joint_factor(spec, nsq[i], nsq[j]);
                if (v == 0.0) continue;
                const int j1 = static_cast<int>(j) / N, j2 = static_cast<int>(j) % N;
                folded[static_cast<size_t>((i1 + j1) & (N - 1)) * N + ((i2 + j2) & (N - 1))] +=
                    v * row[j];
            }
        }
    }
    Phat.clear();
    Phat.shrink_to_fit();

    std::vector<std::complex<double>> vals = fft_nd(folded, n, N, +1);
    // forward tensor scale (L/N)^{2n} times inverse measure (1/L)^{2n}
    const double scale = std::pow(1.0 / N, 2 * n);
    SampledField out = make_field(n, L, N, Space::physical);
    for (size_t k = 0; k < out.values.size(); ++k) out.values[k] = vals[k] * scale;
    return out;
}

SampledField bilinear_loop(const SymbolSpec& spec, const SampledField& f,
                           const SampledField& g) {
    const int n = f.dim, N = f.N;
    const double L = f.L;
    const BumpSystem& bumps = bumps_of(spec);
    SampledField Fhat = forward_transform(f);
    SampledField Ghat = forward_transform(g);

    // centered squared norms, one entry per frequency node
    const size_t half = Fhat.values.size();
    std::vector<double> nsq(half);
    for (size_t i = 0; i < half; ++i) {
        if (n == 1) {
            double v = Fhat.freq_of_index(static_cast<int>(i));
            nsq[i] = v * v;
        } else {
            double a = Fhat.freq_of_index(static_cast<int>(i) / N);
            double b = Fhat.freq_of_index(static_cast<int>(i) % N);
            nsq[i] = a * a + b * b;
        }
    }

    // one masked inverse transform per xi node, then accumulation against the
    // xi carrier wave; parallel chunks own disjoint xi ranges and are reduced
    // in index order afterwards, so results are deterministic
    const double cell = std::pow(1.0 / L, n);  // frequency measure of one xi node
    const int T = resolve_threads();
    std::vector<SampledField> partial(static_cast<size_t>(std::max(T, 1)));
    for (auto& p : partial) p = make_field(n, L, N, Space::physical);

    parallel_chunks(static_cast<long long>(half), [&](long long lo, long long hi, int chunk) {
        SampledField& out = partial[static_cast<size_t>(chunk)];
        for (long long ii = lo; ii < hi; ++ii) {
            const size_t i = static_cast<size_t>(ii);
            const std::complex<double> fc = Fhat.values[i];
            if (fc == std::complex<double>(0.0, 0.0)) continue;
            const double w = xi_row_weight(spec, nsq[i], bumps);
            if (w == 0.0) continue;

            SampledField H = make_field(n, L, N, Space::frequency);
            for (size_t k = 0; k < half; ++k) {
                double v = w * joint_factor(spec, nsq[i], nsq[k]);
                if (v != 0.0) H.values[k] = v * Ghat.values[k];
            }
            SampledField h = inverse_transform(H);

            const std::complex<double> amp = fc * cell;
            if (n == 1) {
                const int mi = static_cast<int>(i) - N / 2;
                for (int k = 0; k < N; ++k) {
                    double ang = 2.0 * M_PI * static_cast<double>(k) * mi / N;
                    out.at(k) += amp * std::polar(1.0, ang) * h.at(k);
                }
            } else {
                const int m1 = static_cast<int>(i) / N - N / 2;
                const int m2 = static_cast<int>(i) % N - N / 2;
                for (int k1 = 0; k1 < N; ++k1)
                    for (int k2 = 0; k2 < N; ++k2) {
                        double ang =
                            2.0 * M_PI *
                            (static_cast<double>(k1) * m1 + static_cast<double>(k2) * m2) / N;
                        out.at(k1, k2) += amp * std::polar(1.0, ang) * h.at(k1, k2);
                    }
            }
        }
    }, T);

    SampledField out = std::move(partial.front());
    for (size_t c = 1; c < partial.size(); ++c) out = axpy(out, 1.0, partial[c]);
    return out;
}

}  // namespace

void set_tensor_budget(std::size_t bytes) { g_tensor_budget.store(bytes); }
std::size_t tensor_budget() { return g_tensor_budget.load(); }

SampledField apply_bilinear(const SymbolSpec& spec, const SampledField& f,
                            const SampledField& g, BilinearPath path) {
    require_bilinear(spec, "apply_bilinear");
    if (f.dim != g.dim || f.N != g.N || f.L != g.L)
        throw std::invalid_argument("apply_bilinear: fields live on different grids");
    if (f.space != Space::physical || g.space != Space::physical)
        throw std::invalid_argument("apply_bilinear: physical-space inputs expected");
    switch (path) {
        case BilinearPath::tensor: return bilinear_tensor(spec, f, g);
        case BilinearPath::loop: return bilinear_loop(spec, f, g);
        case BilinearPath::auto_select:
            return tensor_fits(f.dim, f.N) ? bilinear_tensor(spec, f, g)
                                           : bilinear_loop(spec, f, g);
    }
    throw std::logic_error("apply_bilinear: unreachable");
}

ReconstructionReport reconstruct_bilinear(double alpha, double R, int J,
                                          const SampledField& f, const SampledField& g,
                                          BilinearPath path) {
    if (J < 2) throw std::domain_error("reconstruct_bilinear: J must be >= 2");
    SymbolSpec tail;
    tail.kind = SymbolKind::tail;
    tail.alpha = alpha;
    tail.R = R;
    SampledField acc = apply_bilinear(tail, f, g, path);
    for (int j = 2; j <= J; ++j) {
        SymbolSpec piece = tail;
        piece.kind = SymbolKind::piece;
        piece.j = j;
        acc = axpy(acc, 1.0, apply_bilinear(piece, f, g, path));
    }

    // exact telescoping tail on the symbol side, maximized at eta = 0 (a
    // grid node), so the xi sweep alone is the true sup over the grid
    const BumpSystem& bumps = standard_bumps();
    double bound = 0.0;
    const int N = f.N;
    auto consider = [&](double xisq) {
        double phi = 1.0 - xisq / (R * R);
        if (phi <= 0.0) return;
        double v = bumps.theta(std::ldexp(phi, J + 1)) * pos_pow(phi, alpha);
        bound = std::max(bound, v);
    };
    if (f.dim == 1) {
        for (int i = 0; i < N; ++i) {
            double xi = (i - N / 2) / f.L;
            consider(xi * xi);
        }
    } else {
        for (int i = 0; i < N; ++i)
            for (int j2 = 0; j2 < N; ++j2) {
                double a = (i - N / 2) / f.L, b = (j2 - N / 2) / f.L;
                consider(a * a + b * b);
            }
    }
    return {std::move(acc), bound};
}

// --- identity checks --------------------------------------------------------

SecondDyadicReport second_dyadic_check(double gamma, double s, int K,
                                       const BumpSystem& bumps, int samples) {
    if (!(gamma > -1.0)) throw std::domain_error("second_dyadic_check: gamma must be > -1");
    if (K < 2) throw std::domain_error("second_dyadic_check: K must be >= 2");
    if (!(s > 0)) throw std::domain_error("second_dyadic_check: s must be positive");
    if (samples < 2) throw std::domain_error("second_dyadic_check: samples must be >= 2");

    SecondDyadicReport rep{0.0, 0.0};
    for (int i = 0; i < samples; ++i) {
        double xi = s * static_cast<double>(i) / (samples - 1);
        double u = (xi / s) * (xi / s);
        double one_minus = 1.0 - u;
        double base = pos_pow(one_minus, gamma);

        long double part = 1.0L;
        part -= static_cast<long double>(bumps.psi0(u));
        for (int k = 2; k <= K; ++k)
            part -= static_cast<long double>(bumps.theta(std::ldexp(one_minus, k)) -
                                             bumps.theta(std::ldexp(one_minus, k + 1)));
        double direct = base * static_cast<double>(part);
        double tail = base * bumps.theta(std::ldexp(one_minus, K + 1));

        rep.sup_deviation = std::max(rep.sup_deviation, std::abs(direct - tail));
        rep.sup_residual = std::max(rep.sup_residual, std::abs(direct));
    }
    return rep;
}

double taylor_expansion_check(double rho, int j, double t, double u, int terms) {
    if (!(rho > 0)) throw std::domain_error("taylor_expansion_check: rho must be positive");
    if (terms < 1) throw std::domain_error("taylor_expansion_check: terms must be >= 1");
    if (std::ldexp(t * t, j) >= 1.0)
        throw std::domain_error("taylor_expansion_check: series diverges (2^j t^2 >= 1)");
    if (!(u > 0.0) || t * t >= u)
        throw std::domain_error("taylor_expansion_check: need 0 < t^2 < u");

    const double exact = std::pow(u, -rho) * std::pow(1.0 - t * t / u, -rho);
    // the series as written: 2^{j rho} (2^j u)^{-rho} sum_k c_k (2^j t^2 / (2^j u))^k
    const double pref = std::pow(std::ldexp(1.0, j), rho) * std::pow(std::ldexp(u, j), -rho);
    const double ratio = std::ldexp(t * t, j) / std::ldexp(u, j);
    double sum = 0.0, term = 1.0;
    for (int k = 0; k < terms; ++k) {
        sum += term;
        term *= (rho + k) / (k + 1.0) * ratio;
    }
    const double series = pref * sum;
    return std::abs(exact - series) / std::abs(exact);
}

void dump_symbol_csv(const SymbolSpec& spec, const std::string& path,
                     const std::vector<double>& xi_values,
                     const std::vector<double>& eta_values) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("dump_symbol_csv: cannot open " + path);
    os << "xi,eta,value\n";
    os.precision(17);
    if (symbol_is_bilinear(spec.kind)) {
        for (double xi : xi_values)
            for (double eta : eta_values)
                os << xi << ',' << eta << ','
                   << eval_symbol_radial(spec, xi * xi, eta * eta) << '\n';
    } else {
        for (double xi : xi_values)
            os << xi << ',' << 0.0 << ',' << eval_symbol_radial(spec, xi * xi, std::nullopt)
               << '\n';
    }
    if (!os) throw std::runtime_error("dump_symbol_csv: write failed for " + path);
}

}  // namespace riesz
