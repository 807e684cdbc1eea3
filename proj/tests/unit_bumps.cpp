#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "riesz/bumps.hpp"

using riesz::standard_bumps;

TEST_SUITE("bumps") {
    TEST_CASE("step function plateaus") {
        const auto& b = standard_bumps();
        CHECK(b.theta(0.0) == 1.0);
        CHECK(b.theta(0.03125) == 1.0);
        CHECK(b.theta(1.0) == 1.0);
        CHECK(b.theta(2.0) == 0.0);
        CHECK(b.theta(16.0) == 0.0);
        double mid = b.theta(1.5);
        CHECK(mid > 0.0);
        CHECK(mid < 1.0);
        // non-increasing
        double prev = 2.0;
        for (int i = 0; i <= 300; ++i) {
            double v = b.theta(0.5 + i * 0.006);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }

    TEST_CASE("shell bump") {
        const auto& b = standard_bumps();
        CHECK(b.psi(1.0) == 1.0);  // theta(1) - theta(2) exactly
        CHECK(b.psi(0.49) == 0.0);
        CHECK(b.psi(2.0) == 0.0);
        CHECK(b.psi(2.5) == 0.0);
        CHECK(b.psi(0.8) > 0.0);
        CHECK(b.psi(1.6) > 0.0);
        // psi(s) = theta(s) - theta(2s) pointwise, by definition
        for (double s : {0.6, 0.9, 1.1, 1.4, 1.9})
            CHECK(b.psi(s) == doctest::Approx(b.theta(s) - b.theta(2.0 * s)).epsilon(1e-15));
    }

    TEST_CASE("center bump and its exact two-piece split") {
        const auto& b = standard_bumps();
        CHECK(b.psi0(0.0) == 1.0);
        CHECK(b.psi0(0.75) == 0.0);
        CHECK(b.psi0(0.9) == 0.0);
        // split supports: psi0_1 lives on [0, 3/16], psi0_2 on [3/32, 3/4]
        CHECK(b.psi0_1(0.2) == 0.0);
        CHECK(b.psi0_2(0.05) == 0.0);
        for (int i = 0; i <= 400; ++i) {
            double t = i * 0.002;
            CHECK(b.psi0_1(t) + b.psi0_2(t) == b.psi0(t));  // exact re-sum
        }
    }

    TEST_CASE("partition residual equals the tail formula") {
        const auto& b = standard_bumps();
        for (double t : {0.0, 0.1, 0.3, 0.5, 0.77, 0.96, 0.999}) {
            for (int J : {2, 5, 12, 20}) {
                double residual = b.partition_residual(t, J);
                double tail = b.theta(std::ldexp(1.0 - t, J + 1));
                CHECK(std::abs(residual - tail) <= 1e-14);
                CHECK(residual >= -1e-14);
            }
            // residual is non-increasing in J
            CHECK(b.partition_residual(t, 14) <= b.partition_residual(t, 6) + 1e-14);
        }
        CHECK_THROWS_AS(b.partition_residual(1.0, 8), std::domain_error);
        CHECK_THROWS_AS(b.partition_residual(-0.1, 8), std::domain_error);
        CHECK_THROWS_AS(b.partition_residual(0.5, 1), std::domain_error);
    }

    TEST_CASE("derivative table sanity") {
        const auto& b = standard_bumps();
        CHECK(b.n_der() == 22);
        REQUIRE(b.deriv_sup().size() == 23u);
        CHECK(b.deriv_sup()[0] == doctest::Approx(1.0).epsilon(1e-6));
        for (double v : b.deriv_sup()) CHECK(v > 0.0);
    }

    TEST_CASE("finite-difference derivative estimator against known functions") {
        double d1 = riesz::estimate_deriv_sup([](double x) { return std::sin(x); }, 0.0,
                                              M_PI / 2.0, 1);
        CHECK(d1 == doctest::Approx(1.0).epsilon(1e-6));
        double d3 = riesz::estimate_deriv_sup([](double x) { return std::sin(x); }, 0.0,
                                              M_PI / 2.0, 3);
        CHECK(d3 == doctest::Approx(1.0).epsilon(1e-4));
        double d2 = riesz::estimate_deriv_sup([](double x) { return x * x; }, -1.0, 1.0, 2);
        CHECK(d2 == doctest::Approx(2.0).epsilon(1e-5));
    }

    TEST_CASE("smooth-class membership") {
        const auto& b = standard_bumps();
        // normalize psi so that derivatives through order 3 fit under 1
        double k3 = 0.0;
        for (int k = 0; k <= 3; ++k) k3 = std::max(k3, b.deriv_sup()[k]);
        auto h = [&](double s) { return b.psi(s) / (1.05 * k3); };
        riesz::MembershipReport ok = riesz::cN_membership(h, 0.5, 2.0, 3, b);
        CHECK(ok.pass);
        auto loud = [&](double s) { return 3.0 * b.psi(s); };
        riesz::MembershipReport bad = riesz::cN_membership(loud, 0.5, 2.0, 3, b);
        CHECK_FALSE(bad.pass);
        CHECK_THROWS_AS(riesz::cN_membership(h, 0.5, 2.0, 99, b), std::domain_error);
    }

    TEST_CASE("rescaled bump family") {
        const auto& b = standard_bumps();
        riesz::ScaledBump s2 = riesz::scaled_family(2, 0.5, 3, b);
        CHECK(s2.eval(1.0) == doctest::Approx(1.0).epsilon(1e-12));  // x=1: scale factor 1
        CHECK(s2.eval(0.3) == 0.0);
        CHECK(s2.eval(2.4) == 0.0);
        REQUIRE(s2.deriv_sup.size() == 4u);
        // growth in k stays under the documented envelope 2^{N+k} k^{N+1}
        // (up to one family-wide constant)
        double cmax = 0.0;
        for (int k = 1; k <= 6; ++k) {
            riesz::ScaledBump sk = riesz::scaled_family(k, 0.5, 3, b);
            double envelope = std::ldexp(std::pow(k, 4.0), 3 + k);
            cmax = std::max(cmax, sk.deriv_sup[3] / envelope);
        }
        CHECK(cmax < 1e3);
        CHECK_THROWS_AS(riesz::scaled_family(-1, 0.5, 3, b), std::domain_error);
    }

    TEST_CASE("bump table export") {
        const char* path = "bump_table.csv";
        riesz::export_bump_table(standard_bumps(), path, 64);
        std::FILE* fp = std::fopen(path, "rb");
        REQUIRE(fp != nullptr);
        char head[2] = {0, 0};
        size_t got = std::fread(head, 1, 1, fp);
        std::fclose(fp);
        std::remove(path);
        CHECK(got == 1u);
        CHECK((head[0] == 'x' || head[0] == '#'));
    }
}
