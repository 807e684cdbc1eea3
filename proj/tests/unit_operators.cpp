#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "riesz/grid.hpp"
#include "riesz/operators.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/symbols.hpp"

using riesz::SampledField;

namespace {

SampledField random_field(int dim, double L, int N, std::uint64_t seed) {
    SampledField f = riesz::make_field(dim, L, N, riesz::Space::physical);
    std::mt19937_64 rng(seed);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    for (auto& v : f.values) v = {u(), u()};
    return f;
}

double sup_abs_diff(const SampledField& a, const SampledField& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

double weight_sum(const riesz::TGrid& g) {
    double s = 0.0;
    for (double w : g.weights) s += w;
    return s;
}

}  // namespace

TEST_SUITE("operators") {
    TEST_CASE("t-grids preserve total measure") {
        riesz::TGrid u = riesz::make_tgrid_uniform(2.0, 8);
        CHECK(u.rule == riesz::TGridRule::uniform_in_t);
        CHECK(u.T == 2.0);
        CHECK(u.nodes.size() == 8);
        CHECK(weight_sum(u) == doctest::Approx(2.0).epsilon(1e-15));
        for (double t : u.nodes) {
            CHECK(t > 0.0);
            CHECK(t < 2.0);
        }

        riesz::TGrid g = riesz::make_tgrid_gauss(1.5, {0.5, 1.0}, 10);
        CHECK(weight_sum(g) == doctest::Approx(1.5).epsilon(1e-13));
        for (size_t i = 1; i < g.nodes.size(); ++i) CHECK(g.nodes[i] > g.nodes[i - 1]);
        for (double w : g.weights) CHECK(w > 0.0);

        riesz::TGrid ts = riesz::make_tgrid_gauss(1.5, {0.5, 1.0}, 12, true);
        CHECK(weight_sum(ts) == doctest::Approx(1.5).epsilon(1e-11));

        riesz::TGrid b = riesz::make_tgrid_budget(1.0, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7},
                                                  64);
        CHECK(b.nodes.size() <= 64);
        CHECK(weight_sum(b) == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("log-spaced t-grid") {
        riesz::LogTGrid g = riesz::make_log_tgrid(0.1, 10.0, 50);
        CHECK(g.nodes.size() == 100);
        CHECK(g.log_step == doctest::Approx(std::log(100.0) / 100.0).epsilon(1e-14));
        for (size_t i = 1; i < g.nodes.size(); ++i)
            CHECK(g.nodes[i] / g.nodes[i - 1] ==
                  doctest::Approx(std::exp(g.log_step)).epsilon(1e-12));
        CHECK(g.nodes.front() > 0.1);
        CHECK(g.nodes.back() < 10.0);
        CHECK_THROWS(riesz::make_log_tgrid(0.0, 1.0, 10));
        CHECK_THROWS(riesz::make_log_tgrid(2.0, 1.0, 10));
    }

    TEST_CASE("radius grid respects the aliasing bound") {
        riesz::RGrid r = riesz::make_rgrid(0.5, 8.0, 12, 16.0);
        CHECK(r.values.front() == doctest::Approx(0.5));
        CHECK(r.values.back() == doctest::Approx(8.0));
        for (size_t i = 1; i < r.values.size(); ++i) CHECK(r.values[i] > r.values[i - 1]);
        CHECK_THROWS(riesz::make_rgrid(1.0, 20.0, 8, 16.0));
        CHECK_THROWS(riesz::make_rgrid(-1.0, 8.0, 8, 16.0));
        SampledField f = riesz::make_field(1, 32.0, 128, riesz::Space::physical);
        CHECK(riesz::nyquist_radius(f) == doctest::Approx(2.0).epsilon(1e-15));
    }

    TEST_CASE("linear average scales a tone by its symbol value") {
        const double L = 32.0;
        const int N = 128;
        SampledField tone = riesz::tone_field(1, L, N, {5});
        double xi = 5.0 / L;
        SampledField out = riesz::bochner_riesz_linear(tone, 0.7, 1.0);
        double factor = std::pow(1.0 - xi * xi, 0.7);
        double worst = 0.0;
        for (int i = 0; i < N; ++i)
            worst = std::max(worst, std::abs(out.at(i) - factor * tone.at(i)));
        CHECK(worst < 1e-12);
        // cutoff below the tone frequency annihilates it
        SampledField zero = riesz::bochner_riesz_linear(tone, 1.0, 0.1);
        CHECK(riesz::lp_norm(zero, std::numeric_limits<double>::infinity()) < 1e-11);
        CHECK_THROWS(riesz::bochner_riesz_linear(tone, 1.0, 0.0));
    }

    TEST_CASE("shell average obeys the normalisation relation") {
        const int j = 3;
        const double beta = 1.5, R = 1.2, t = 0.15;
        SampledField f = random_field(1, 32.0, 128, 51);
        SampledField lhs = riesz::shell_average_normalised(f, j, beta, R, t);
        SampledField rhs = riesz::shell_average(f, j, beta, R, R * t);
        double scale = std::pow(R, -2.0 * (beta - 1.0));
        double worst = 0.0, mag = 0.0;
        for (size_t i = 0; i < lhs.size(); ++i) {
            worst = std::max(worst, std::abs(lhs.values[i] - scale * rhs.values[i]));
            mag = std::max(mag, std::abs(lhs.values[i]));
        }
        CHECK(worst <= 1e-12 * std::max(mag, 1.0));
    }

    TEST_CASE("shell piece selects exactly its dyadic band") {
        const double L = 32.0, R = 1.0;
        const int N = 128;
        SampledField f = riesz::tone_field(1, L, N, {28});  // phi = 0.234375
        SampledField g = riesz::tone_field(1, L, N, {4});
        const auto& b = riesz::standard_bumps();
        double xi_sq = std::pow(28.0 / L, 2.0), eta_sq = std::pow(4.0 / L, 2.0);
        double phi = 1.0 - xi_sq;
        SampledField in_band = riesz::shell_piece(f, g, 1.0, R, 2);
        double value = b.psi(std::ldexp(phi, 2)) * (1.0 - xi_sq - eta_sq);
        SampledField expect = riesz::tone_field(1, L, N, {32}, value);
        CHECK(sup_abs_diff(in_band, expect) < 1e-12);
        SampledField off_band = riesz::shell_piece(f, g, 1.0, R, 5);
        CHECK(riesz::lp_norm(off_band, std::numeric_limits<double>::infinity()) < 1e-12);
        CHECK_THROWS(riesz::shell_piece(f, g, 1.0, R, 1));
    }

    TEST_CASE("shell decomposition identity on a compact example") {
        const double L = 32.0, R = 1.0;
        const int N = 128;
        const int j = 2;
        SampledField f = riesz::tone_field(1, L, N, {28});
        SampledField g = riesz::axpy(riesz::tone_field(1, L, N, {4}),
                                     std::complex<double>(0.0, 0.6),
                                     riesz::tone_field(1, L, N, {-3}));
        const double T = R * std::sqrt(std::ldexp(1.0, 1 - j));
        auto brk = riesz::decomposition_breakpoints(f, g, j, R);
        for (double t : brk) {
            CHECK(t > 0.0);
            CHECK(t < T * (1.0 + 1e-12));
        }

        riesz::TGrid grid_poly = riesz::make_tgrid_budget(T, brk, 240);
        CHECK(riesz::decomposition_identity_check(f, g, j, riesz::make_split(1.0, 0.0), R,
                                                  grid_poly) <= 1e-10);
        CHECK(riesz::decomposition_identity_check(f, g, j, riesz::make_split(1.5, 0.5), R,
                                                  grid_poly) <= 1e-9);
        riesz::TGrid grid_sing = riesz::make_tgrid_budget(T, brk, 300, true);
        CHECK(riesz::decomposition_identity_check(f, g, j, riesz::make_split(0.8, 0.7), R,
                                                  grid_sing) <= 1e-6);

        CHECK(riesz::cauchy_schwarz_excess(f, g, j, riesz::make_split(1.0, 0.0), R,
                                           grid_poly) <= 1e-10);

        riesz::TGrid mismatched = riesz::make_tgrid_uniform(0.3, 32);
        CHECK_THROWS_AS(riesz::decomposition_identity_check(
                            f, g, j, riesz::make_split(1.0, 0.0), R, mismatched),
                        std::invalid_argument);
    }

    TEST_CASE("maximal function is a nodewise supremum") {
        SampledField f = random_field(1, 32.0, 128, 61);
        SampledField g = random_field(1, 32.0, 128, 62);
        riesz::RGrid single;
        single.values = {0.9};
        SampledField one = riesz::maximal_bilinear(f, g, 1.0, single);
        SampledField direct = riesz::bilinear_average(f, g, 1.0, 0.9);
        double worst = 0.0;
        for (size_t i = 0; i < one.size(); ++i) {
            CHECK(one.values[i].imag() == 0.0);
            CHECK(one.values[i].real() >= 0.0);
            worst = std::max(worst, std::abs(one.values[i].real() - std::abs(direct.values[i])));
        }
        CHECK(worst < 1e-13);

        riesz::RGrid more;
        more.values = {0.7, 0.9, 1.3, 1.9};
        SampledField sup = riesz::maximal_bilinear(f, g, 1.0, more);
        for (size_t i = 0; i < sup.size(); ++i)
            CHECK(sup.values[i].real() >= one.values[i].real() - 1e-12);
        // radius above the aliasing bound is rejected
        riesz::RGrid bad;
        bad.values = {2.5};
        CHECK_THROWS(riesz::maximal_bilinear(f, g, 1.0, bad));
    }

    TEST_CASE("square-function constant") {
        for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
            double c = riesz::square_constant(alpha);
            CHECK(c * c == doctest::Approx((alpha + 1.0) / (2.0 * alpha + 1.0)).epsilon(1e-12));
            double oracle = std::sqrt(riesz::integrate_adaptive(
                [alpha](double s) {
                    double w = 2.0 * (alpha + 1.0) * s * s * std::pow(1.0 - s * s, alpha);
                    return w * w / s;
                },
                1e-12, 1.0, 1e-13));
            CHECK(c == doctest::Approx(oracle).epsilon(1e-9));
        }
    }

    TEST_CASE("square function of a tone is flat at the per-mode constant") {
        const double L = 32.0;
        const int N = 128;
        SampledField f = riesz::tone_field(1, L, N, {6}, 1.3);
        double xi = 6.0 / L;
        riesz::LogTGrid tg = riesz::make_log_tgrid(xi / 10.0, xi * 20.0, 512);
        SampledField G = riesz::square_function(f, 1.0, tg);
        double expect = 1.3 * riesz::square_constant(1.0);
        for (size_t i = 0; i < G.size(); ++i)
            CHECK(G.values[i].real() == doctest::Approx(expect).epsilon(2e-3));
    }

    TEST_CASE("localised square function scales like sqrt(nu)") {
        const double L = 32.0;
        const int N = 128;
        SampledField f = riesz::tone_field(1, L, N, {6});
        double xi = 6.0 / L;
        riesz::LogTGrid tg = riesz::make_log_tgrid(xi * 0.99, xi * 1.1, 8192);
        SampledField a = riesz::local_square_function(f, 0.01, tg);
        SampledField c = riesz::local_square_function(f, 0.04, tg);
        double ra = a.values[0].real(), rc = c.values[0].real();
        CHECK(ra > 0.0);
        CHECK(rc / ra == doctest::Approx(2.0).epsilon(0.08));
        CHECK_THROWS(riesz::local_square_function(f, 0.1, tg));
    }

    TEST_CASE("averaged square function and its radial supremum") {
        SampledField g = random_field(1, 32.0, 128, 71);
        SampledField at1 = riesz::averaged_square_function(g, 0.4, 1.0, 128);
        riesz::RGrid single;
        single.values = {1.0};
        SampledField sup1 = riesz::averaged_square_function_sup(g, 0.4, single, 128);
        CHECK(sup_abs_diff(at1, sup1) == 0.0);
        riesz::RGrid pair;
        pair.values = {1.0, 1.7};
        SampledField sup2 = riesz::averaged_square_function_sup(g, 0.4, pair, 128);
        for (size_t i = 0; i < sup2.size(); ++i)
            CHECK(sup2.values[i].real() >= sup1.values[i].real() - 1e-13);
    }

    TEST_CASE("integer-step telescoping is exact") {
        SampledField g = random_field(1, 32.0, 128, 81);
        for (int d = 1; d <= 5; ++d) CHECK(riesz::telescoping_check(g, 0.3, 3.7, d) <= 1e-10);
        CHECK_THROWS(riesz::telescoping_check(g, 0.3, 3.7, 0));
    }

    TEST_CASE("box maximal function") {
        SampledField c = riesz::make_field(1, 32.0, 64, riesz::Space::physical);
        for (auto& v : c.values) v = 1.5;
        SampledField m = riesz::hl_maximal(c, riesz::dyadic_radii(64));
        for (size_t i = 0; i < m.size(); ++i)
            CHECK(m.values[i].real() == doctest::Approx(1.5).epsilon(1e-14));

        SampledField f = random_field(1, 32.0, 128, 91);
        SampledField hf = riesz::hl_maximal(f, riesz::dyadic_radii(128));
        for (size_t i = 0; i < f.size(); ++i)
            CHECK(hf.values[i].real() >= std::abs(f.values[i]) - 1e-13);

        // averaged cutoffs are dominated by the box maximal function,
        // uniformly over the cutoff radius
        double worst_ratio = 0.0;
        for (double t : {0.5, 1.0, 2.0}) {
            SampledField bt = riesz::bochner_riesz_linear(f, 1.0, t);
            for (size_t i = 0; i < f.size(); ++i)
                worst_ratio = std::max(
                    worst_ratio, std::abs(bt.values[i]) / std::max(hf.values[i].real(), 1e-30));
        }
        CHECK(worst_ratio < 50.0);

        CHECK_THROWS(riesz::hl_maximal(f, std::vector<int>{1, 2}));  // 0 missing

        // separable two-dimensional window: constant stays constant
        SampledField c2 = riesz::make_field(2, 32.0, 32, riesz::Space::physical);
        for (auto& v : c2.values) v = 0.7;
        SampledField m2 = riesz::hl_maximal(c2, riesz::dyadic_radii(32));
        for (size_t i = 0; i < m2.size(); ++i)
            CHECK(m2.values[i].real() == doctest::Approx(0.7).epsilon(1e-14));
    }

    TEST_CASE("dyadic radii ladder") {
        auto r = riesz::dyadic_radii(128);
        REQUIRE(!r.empty());
        CHECK(r.front() == 0);
        CHECK(r.back() == 32);
        for (size_t i = 2; i < r.size(); ++i) CHECK(r[i] == 2 * r[i - 1]);
    }

    TEST_CASE("single-shell kernel envelope") {
        const int j = 8;
        std::vector<double> x = riesz::shell_kernel_xgrid(j);
        CHECK(x.back() >= std::ldexp(1.0, j + 4));
        riesz::ShellKernelReport rep = riesz::shell_kernel(j, x);
        REQUIRE(rep.kernel.size() == x.size());
        REQUIRE(rep.envelope.size() == x.size());
        CHECK(rep.constant > 0.0);
        for (size_t i = 0; i < x.size(); ++i)
            CHECK(std::abs(rep.kernel[i]) <= rep.envelope[i] + 1e-12);
        CHECK_THROWS(riesz::shell_kernel(j, std::vector<double>{0.0, 1.0, 2.0}));
    }

    TEST_CASE("profile export") {
        SampledField f = riesz::tone_field(1, 32.0, 64, {3});
        const char* path = "profile_dump.csv";
        riesz::export_profile_csv(f, path);
        std::FILE* fp = std::fopen(path, "rb");
        REQUIRE(fp != nullptr);
        char c0 = 0;
        size_t got = std::fread(&c0, 1, 1, fp);
        std::fclose(fp);
        std::remove(path);
        CHECK(got == 1u);
        CHECK(c0 == '#');
    }
}
