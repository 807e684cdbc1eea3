#include "riesz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "riesz/fft.hpp"

namespace riesz {

namespace {

bool power_of_two(int N) { return N > 0 && (N & (N - 1)) == 0; }

void check_grid(int dim, double L, int N) {
    if (dim != 1 && dim != 2) throw std::domain_error("field: dim must be 1 or 2");
    if (!(L > 0)) throw std::domain_error("field: L must be positive");
    if (!power_of_two(N)) throw std::domain_error("field: N must be a power of two");
}

void check_same_grid(const SampledField& a, const SampledField& b) {
    if (a.dim != b.dim || a.N != b.N || a.L != b.L || a.space != b.space)
        throw std::invalid_argument("fields live on different grids");
}

// rotate between natural DFT order (index = mode mod N) and centered order
// (index = mode + N/2) along every axis; the shift by N/2 is an involution
std::vector<std::complex<double>> center_shift(const std::vector<std::complex<double>>& v,
                                               int dim, int N) {
    std::vector<std::complex<double>> out(v.size());
    const int h = N / 2;
    if (dim == 1) {
        for (int i = 0; i < N; ++i) out[static_cast<size_t>((i + h) % N)] = v[static_cast<size_t>(i)];
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                out[static_cast<size_t>((i + h) % N) * N + (j + h) % N] =
                    v[static_cast<size_t>(i) * N + j];
    }
    return out;
}

double u64_to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

}  // namespace

SampledField make_field(int dim, double L, int N, Space space) {
    check_grid(dim, L, N);
    SampledField f;
    f.dim = dim;
    f.L = L;
    f.N = N;
    f.space = space;
    size_t total = static_cast<size_t>(N);
    if (dim == 2) total *= static_cast<size_t>(N);
    f.values.assign(total, {0.0, 0.0});
    return f;
}

SampledField forward_transform(const SampledField& f) {
    if (f.space != Space::physical)
        throw std::invalid_argument("forward_transform: input must be physical-space");
    SampledField F = f;
    F.space = Space::frequency;
    auto spec = fft_nd(f.values, f.dim, f.N, -1);
    const double scale = std::pow(f.L / f.N, f.dim);
    for (auto& z : spec) z *= scale;
    F.values = center_shift(spec, f.dim, f.N);
    return F;
}

SampledField inverse_transform(const SampledField& F) {
    if (F.space != Space::frequency)
        throw std::invalid_argument("inverse_transform: input must be frequency-space");
    SampledField f = F;
    f.space = Space::physical;
    auto natural = center_shift(F.values, F.dim, F.N);
    auto vals = fft_nd(natural, F.dim, F.N, +1);
    const double scale = std::pow(1.0 / F.L, F.dim);
    for (auto& z : vals) z *= scale;
    f.values = std::move(vals);
    return f;
}

double lp_norm(const SampledField& f, double p) {
    if (f.space != Space::physical)
        throw std::invalid_argument("lp_norm: physical-space fields only");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& z : f.values) m = std::max(m, std::abs(z));
        return m;
    }
    if (!(p > 0)) throw std::domain_error("lp_norm: p must be positive");
    const double cell = std::pow(f.L / f.N, f.dim);
    double acc = 0.0;
    for (const auto& z : f.values) acc += std::pow(std::abs(z), p) * cell;
    return std::pow(acc, 1.0 / p);
}

double freq_l2_norm(const SampledField& F) {
    if (F.space != Space::frequency)
        throw std::invalid_argument("freq_l2_norm: frequency-space fields only");
    const double cell = std::pow(1.0 / F.L, F.dim);
    double acc = 0.0;
    for (const auto& z : F.values) acc += std::norm(z) * cell;
    return std::sqrt(acc);
}

SampledField pointwise_product(const SampledField& f, const SampledField& g) {
    check_same_grid(f, g);
    SampledField h = f;
    for (size_t i = 0; i < h.values.size(); ++i) h.values[i] *= g.values[i];
    return h;
}

SampledField axpy(const SampledField& f, std::complex<double> c, const SampledField& g) {
    check_same_grid(f, g);
    SampledField h = f;
    for (size_t i = 0; i < h.values.size(); ++i) h.values[i] += c * g.values[i];
    return h;
}

SampledField gaussian_field(int dim, double L, int N, const std::vector<double>& center,
                            double sigma, const std::vector<double>& modulation,
                            std::complex<double> amplitude) {
    check_grid(dim, L, N);
    if (static_cast<int>(center.size()) != dim || static_cast<int>(modulation.size()) != dim)
        throw std::invalid_argument("gaussian_field: center/modulation dim mismatch");
    if (!(sigma > 0)) throw std::domain_error("gaussian_field: sigma must be positive");
    SampledField f = make_field(dim, L, N, Space::physical);
    auto nearest_image = [&](double x, double c) {
        double d = x - c;
        d -= L * std::round(d / L);
        return d;
    };
    if (dim == 1) {
        for (int k = 0; k < N; ++k) {
            double x = f.coord_of_index(k);
            double d = nearest_image(x, center[0]);
            double phase = 2.0 * M_PI * x * modulation[0];
            f.at(k) = amplitude * std::exp(-M_PI * d * d / (sigma * sigma)) *
                      std::complex<double>(std::cos(phase), std::sin(phase));
        }
    } else {
        for (int i = 0; i < N; ++i) {
            double xi = f.coord_of_index(i);
            double di = nearest_image(xi, center[0]);
            for (int j = 0; j < N; ++j) {
                double xj = f.coord_of_index(j);
                double dj = nearest_image(xj, center[1]);
                double r2 = di * di + dj * dj;
                double phase = 2.0 * M_PI * (xi * modulation[0] + xj * modulation[1]);
                f.at(i, j) = amplitude * std::exp(-M_PI * r2 / (sigma * sigma)) *
                             std::complex<double>(std::cos(phase), std::sin(phase));
            }
        }
    }
    return f;
}

SampledField tone_field(int dim, double L, int N, const std::vector<int>& m,
                        std::complex<double> amplitude) {
    check_grid(dim, L, N);
    if (static_cast<int>(m.size()) != dim)
        throw std::invalid_argument("tone_field: mode dim mismatch");
    SampledField f = make_field(dim, L, N, Space::physical);
    if (dim == 1) {
        for (int k = 0; k < N; ++k) {
            double phase = 2.0 * M_PI * k * m[0] / N;
            f.at(k) = amplitude * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                double phase = 2.0 * M_PI * (i * m[0] + j * m[1]) / static_cast<double>(N);
                f.at(i, j) = amplitude * std::complex<double>(std::cos(phase), std::sin(phase));
            }
    }
    return f;
}

std::string generator_name(GeneratorKind g) {
    switch (g) {
        case GeneratorKind::gaussian: return "gaussian";
        case GeneratorKind::modulated_gaussian: return "modulated-gaussian";
        case GeneratorKind::random_bandlimited: return "random-bandlimited";
    }
    throw std::logic_error("generator_name: unreachable");
}

namespace {

SampledField random_entry(GeneratorKind kind, std::mt19937_64& rng, const BankSpec& p) {
    auto unit = [&rng] { return u64_to_unit(rng()); };
    const int n = p.dim;
    switch (kind) {
        case GeneratorKind::gaussian:
        case GeneratorKind::modulated_gaussian: {
            std::vector<double> center(n), mod(n, 0.0);
            for (int a = 0; a < n; ++a) center[a] = p.L / 2 + 4.0 * (unit() - 0.5);
            double sigma = 0.8 + 0.8 * unit();
            if (kind == GeneratorKind::modulated_gaussian)
                for (int a = 0; a < n; ++a) mod[a] = 4.0 * (unit() - 0.5);
            std::complex<double> amp(0.5 + 1.5 * unit(), 0.0);
            return gaussian_field(n, p.L, p.N, center, sigma, mod, amp);
        }
        case GeneratorKind::random_bandlimited: {
            // fill random coefficients on |xi| <= N/(8L) (index radius N/8,
            // safely inside the N/(4L) support contract), smooth decay so the
            // field looks like a generic band-limited wave packet
            SampledField F = make_field(n, p.L, p.N, Space::frequency);
            const int h = p.N / 2;
            const double radius = p.N / 8.0;
            size_t modes = 0;
            if (n == 1) {
                for (int i = 0; i < p.N; ++i) {
                    double m = i - h;
                    if (std::abs(m) > radius) continue;
                    double u = unit(), v = unit();
                    double decay = std::exp(-(m * m) / (radius * radius));
                    F.at(i) = std::complex<double>(2 * u - 1, 2 * v - 1) * decay;
                    ++modes;
                }
            } else {
                for (int i = 0; i < p.N; ++i)
                    for (int j = 0; j < p.N; ++j) {
                        double mi = i - h, mj = j - h;
                        double r2 = mi * mi + mj * mj;
                        if (r2 > radius * radius) continue;
                        double u = unit(), v = unit();
                        double decay = std::exp(-r2 / (radius * radius));
                        F.at(i, j) = std::complex<double>(2 * u - 1, 2 * v - 1) * decay;
                        ++modes;
                    }
            }
            const double scale = 1.0 / std::sqrt(static_cast<double>(modes));
            for (auto& z : F.values) z *= p.L * scale;  // O(1) physical amplitude
            return inverse_transform(F);
        }
    }
    throw std::logic_error("random_entry: unreachable");
}

}  // namespace

TestBank make_test_bank(std::uint64_t seed,
                        const std::vector<std::pair<GeneratorKind, int>>& generators,
                        const BankSpec& params) {
    check_grid(params.dim, params.L, params.N);
    if (generators.empty()) throw std::invalid_argument("make_test_bank: empty generator set");
    int total = 0;
    for (auto& [g, c] : generators) {
        if (c < 1) throw std::invalid_argument("make_test_bank: generator count must be >= 1");
        total += c;
    }
    if (total < 1) throw std::invalid_argument("make_test_bank: need at least one entry");

    TestBank bank;
    bank.seed = seed;
    std::mt19937_64 rng(seed);
    for (auto& [kind, count] : generators)
        for (int c = 0; c < count; ++c) {
            BankEntry e;
            e.tag = kind;
            e.f = random_entry(kind, rng, params);
            e.g = random_entry(kind, rng, params);
            bank.entries.push_back(std::move(e));
        }
    return bank;
}

TestBank default_bank(int dim) {
    return default_bank(dim, 32.0, dim == 1 ? 1024 : 128);
}

TestBank default_bank(int dim, double L, int N) {
    BankSpec spec;
    spec.dim = dim;
    spec.L = L;
    spec.N = N;
    return make_test_bank(42,
                          {{GeneratorKind::gaussian, 8},
                           {GeneratorKind::modulated_gaussian, 8},
                           {GeneratorKind::random_bandlimited, 16}},
                          spec);
}

}  // namespace riesz
