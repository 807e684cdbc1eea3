#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "riesz/field_io.hpp"
#include "riesz/grid.hpp"

using riesz::SampledField;
using riesz::Space;

namespace {

SampledField random_field(int dim, double L, int N, std::uint64_t seed) {
    SampledField f = riesz::make_field(dim, L, N, Space::physical);
    std::mt19937_64 rng(seed);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    for (auto& v : f.values) v = {u(), u()};
    return f;
}

double sup_diff(const SampledField& a, const SampledField& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

}  // namespace

TEST_SUITE("grid") {
    TEST_CASE("index/coordinate conventions") {
        SampledField f = riesz::make_field(1, 32.0, 64, Space::physical);
        CHECK(f.size() == 64);
        CHECK(f.freq_of_index(32) == 0.0);      // centered frequency storage
        CHECK(f.freq_of_index(33) == doctest::Approx(1.0 / 32.0));
        CHECK(f.coord_of_index(0) == 0.0);
        CHECK(f.coord_of_index(1) == doctest::Approx(0.5));
        SampledField h = riesz::make_field(2, 32.0, 16, Space::physical);
        CHECK(h.size() == 256);
    }

    TEST_CASE("transform round trip and Plancherel") {
        for (int dim : {1, 2}) {
            int N = dim == 1 ? 256 : 32;
            SampledField f = random_field(dim, 32.0, N, 7);
            SampledField F = riesz::forward_transform(f);
            CHECK(F.space == Space::frequency);
            SampledField back = riesz::inverse_transform(F);
            CHECK(sup_diff(f, back) < 1e-12);
            // Plancherel with the (L/N)^n forward measure
            CHECK(riesz::lp_norm(f, 2.0) ==
                  doctest::Approx(riesz::freq_l2_norm(F)).epsilon(1e-12));
        }
    }

    TEST_CASE("transform linearity") {
        SampledField f = random_field(1, 32.0, 128, 3);
        SampledField g = random_field(1, 32.0, 128, 4);
        std::complex<double> c(0.7, -0.4);
        SampledField lhs = riesz::forward_transform(riesz::axpy(f, c, g));
        SampledField rhs =
            riesz::axpy(riesz::forward_transform(f), c, riesz::forward_transform(g));
        CHECK(sup_diff(lhs, rhs) < 1e-12);
    }

    TEST_CASE("pure tone transforms to a single weighted spike") {
        const int N = 128;
        const double L = 32.0;
        SampledField t = riesz::tone_field(1, L, N, {5});
        SampledField T = riesz::forward_transform(t);
        for (int i = 0; i < N; ++i) {
            if (i == N / 2 + 5)
                CHECK(std::abs(T.at(i) - std::complex<double>(L, 0.0)) < 1e-10);
            else
                CHECK(std::abs(T.at(i)) < 1e-10);
        }
        // two-dimensional tone
        SampledField t2 = riesz::tone_field(2, L, 16, {3, -2});
        SampledField T2 = riesz::forward_transform(t2);
        CHECK(std::abs(T2.at(8 + 3, 8 - 2) - std::complex<double>(L * L, 0.0)) < 1e-8);
    }

    TEST_CASE("Gaussian norm matches the closed form") {
        // exp(-pi x^2 / sigma^2) has L2 norm (sigma^2/2)^{1/4}
        for (double sigma : {1.0, 2.5}) {
            SampledField g = riesz::gaussian_field(1, 32.0, 1024, {16.0}, sigma, {0.0});
            CHECK(riesz::lp_norm(g, 2.0) ==
                  doctest::Approx(std::pow(sigma * sigma / 2.0, 0.25)).epsilon(1e-10));
        }
        // modulation does not change any L^p norm
        SampledField a = riesz::gaussian_field(1, 32.0, 512, {16.0}, 2.0, {0.0});
        SampledField b = riesz::gaussian_field(1, 32.0, 512, {16.0}, 2.0, {3.0});
        for (double p : {1.0, 2.0, 4.0})
            CHECK(riesz::lp_norm(a, p) == doctest::Approx(riesz::lp_norm(b, p)).epsilon(1e-12));
    }

    TEST_CASE("norm calculus") {
        SampledField f = riesz::make_field(1, 32.0, 64, Space::physical);
        for (auto& v : f.values) v = 2.0;  // constant field
        CHECK(riesz::lp_norm(f, std::numeric_limits<double>::infinity()) ==
              doctest::Approx(2.0));
        CHECK(riesz::lp_norm(f, 2.0) == doctest::Approx(2.0 * std::sqrt(32.0)).epsilon(1e-14));
        CHECK(riesz::lp_norm(f, 1.0) == doctest::Approx(2.0 * 32.0).epsilon(1e-14));
        // homogeneity and triangle inequality on random data
        SampledField u = random_field(1, 32.0, 128, 11);
        SampledField w = random_field(1, 32.0, 128, 12);
        for (double p : {1.0, 1.5, 2.0, 4.0}) {
            CHECK(riesz::lp_norm(riesz::axpy(u, 2.0, u), p) ==
                  doctest::Approx(3.0 * riesz::lp_norm(u, p)).epsilon(1e-12));
            CHECK(riesz::lp_norm(riesz::axpy(u, 1.0, w), p) <=
                  riesz::lp_norm(u, p) + riesz::lp_norm(w, p) + 1e-12);
        }
    }

    TEST_CASE("translation leaves the spectrum magnitude invariant") {
        SampledField f = random_field(1, 32.0, 128, 21);
        SampledField shifted = f;
        for (int i = 0; i < 128; ++i) shifted.values[i] = f.values[(i + 17) % 128];
        SampledField F = riesz::forward_transform(f);
        SampledField G = riesz::forward_transform(shifted);
        for (int i = 0; i < 128; ++i)
            CHECK(std::abs(std::abs(F.at(i)) - std::abs(G.at(i))) < 1e-12);
    }

    TEST_CASE("pointwise product") {
        SampledField f = random_field(1, 32.0, 64, 31);
        SampledField g = random_field(1, 32.0, 64, 32);
        SampledField p = riesz::pointwise_product(f, g);
        for (int i = 0; i < 64; ++i)
            CHECK(std::abs(p.at(i) - f.at(i) * g.at(i)) == 0.0);
        SampledField other = riesz::make_field(1, 32.0, 128, Space::physical);
        CHECK_THROWS_AS(riesz::pointwise_product(f, other), std::invalid_argument);
    }

    TEST_CASE("bank is deterministic and structured as documented") {
        riesz::TestBank a = riesz::default_bank(1);
        riesz::TestBank b = riesz::default_bank(1);
        CHECK(a.seed == 42);
        CHECK(a.entries.size() == 32);
        REQUIRE(a.entries.size() == b.entries.size());
        for (size_t e = 0; e < a.entries.size(); ++e) {
            CHECK(a.entries[e].f.N == 1024);
            for (size_t i = 0; i < a.entries[e].f.size(); ++i) {
                CHECK(a.entries[e].f.values[i] == b.entries[e].f.values[i]);
                CHECK(a.entries[e].g.values[i] == b.entries[e].g.values[i]);
            }
        }
        int gaussians = 0, modulated = 0, bandlimited = 0;
        for (const auto& e : a.entries) {
            if (e.tag == riesz::GeneratorKind::gaussian) ++gaussians;
            if (e.tag == riesz::GeneratorKind::modulated_gaussian) ++modulated;
            if (e.tag == riesz::GeneratorKind::random_bandlimited) ++bandlimited;
        }
        CHECK(gaussians == 8);
        CHECK(modulated == 8);
        CHECK(bandlimited == 16);
    }

    TEST_CASE("bandlimited bank entries have compact spectrum") {
        riesz::TestBank bank = riesz::default_bank(1, 32.0, 256);
        double limit = 256 / (4.0 * 32.0);  // N/(4L)
        for (const auto& e : bank.entries) {
            if (e.tag != riesz::GeneratorKind::random_bandlimited) continue;
            SampledField F = riesz::forward_transform(e.f);
            double peak = 0.0;
            for (const auto& v : F.values) peak = std::max(peak, std::abs(v));
            for (int i = 0; i < F.N; ++i)
                if (std::abs(F.freq_of_index(i)) > limit + 1e-12)
                    CHECK(std::abs(F.at(i)) < 1e-12 * peak);
        }
    }

    TEST_CASE("two-dimensional bank uses the small grid") {
        riesz::TestBank bank = riesz::default_bank(2);
        CHECK(bank.entries.size() == 32);
        CHECK(bank.entries.front().f.dim == 2);
        CHECK(bank.entries.front().f.N == 128);
    }

    TEST_CASE("serialization round trip is exact") {
        SampledField f = random_field(2, 32.0, 16, 77);
        const char* path = "grid_io_roundtrip.bin";
        riesz::save_field(f, path, 77);
        SampledField g = riesz::load_field(path);
        CHECK(g.dim == f.dim);
        CHECK(g.L == f.L);
        CHECK(g.N == f.N);
        CHECK(g.space == f.space);
        for (size_t i = 0; i < f.size(); ++i) CHECK(f.values[i] == g.values[i]);
        std::remove(path);
        CHECK_THROWS(riesz::load_field("no_such_file.bin"));
    }
}
