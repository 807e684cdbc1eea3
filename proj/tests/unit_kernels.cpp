#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "riesz/kernels.hpp"

namespace {

// closed form for half-integer order: J_{1/2}(x) = sqrt(2/(pi x)) sin x
double j_half(double x) { return std::sqrt(2.0 / (3.14159265358979323846 * x)) * std::sin(x); }

double bisect_first_zero(double lo, double hi) {
    double flo = riesz::bessel_j(0.0, lo, riesz::BesselMethod::power_series);
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = riesz::bessel_j(0.0, mid, riesz::BesselMethod::power_series);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("kernels") {
    TEST_CASE("bessel: special values and the half-integer closed form") {
        CHECK(riesz::bessel_j(0.0, 0.0) == 1.0);
        CHECK(riesz::bessel_j(0.5, 0.0) == 0.0);
        CHECK(riesz::bessel_j(3.0, 0.0) == 0.0);
        for (double x : {0.3, 1.0, 2.0, 5.0, 11.0, 24.0}) {
            double got = riesz::bessel_j(0.5, x);
            CHECK(std::abs(got - j_half(x)) <= 1e-10 * std::max(1.0, std::abs(j_half(x))));
        }
        // first positive zero of J_0
        double z = bisect_first_zero(2.0, 3.0);
        CHECK(std::abs(z - 2.404825557695773) <= 1e-10);
    }

    TEST_CASE("bessel: power series and integral representation agree") {
        std::vector<double> xs;
        for (int i = 0; i <= 40; ++i) xs.push_back(std::exp(std::log(1.0) + i * (std::log(30.0) - std::log(1.0)) / 40.0));
        for (double nu : {0.0, 0.5, 1.0, 1.5, 2.0, 3.7}) {
            for (double x : xs) {
                double a = riesz::bessel_j(nu, x, riesz::BesselMethod::power_series);
                double b = riesz::bessel_j(nu, x, riesz::BesselMethod::integral_representation);
                CHECK(std::abs(a - b) <= 1e-9);
            }
        }
    }

    TEST_CASE("bessel: matches the standard library implementation") {
        for (double nu : {0.0, 0.5, 1.0, 2.0, 3.7}) {
            for (double x = 0.25; x <= 40.0; x += 0.75) {
                double got = riesz::bessel_j(nu, x);
                double ref = std::cyl_bessel_j(nu, x);
                CHECK(std::abs(got - ref) <= 1e-9);
            }
        }
    }

    TEST_CASE("bessel: automatic policy is seamless at the switch point") {
        for (double nu : {0.0, 1.0, 2.5}) {
            double seam = nu + 8.0;
            // below the seam the automatic policy is the series, above it the integral
            CHECK(riesz::bessel_j(nu, seam - 0.01) ==
                  riesz::bessel_j(nu, seam - 0.01, riesz::BesselMethod::power_series));
            CHECK(riesz::bessel_j(nu, seam + 0.01) ==
                  riesz::bessel_j(nu, seam + 0.01, riesz::BesselMethod::integral_representation));
            double a = riesz::bessel_j(nu, seam, riesz::BesselMethod::power_series);
            double b = riesz::bessel_j(nu, seam, riesz::BesselMethod::integral_representation);
            CHECK(std::abs(a - b) <= 1e-9);
        }
    }

    TEST_CASE("bessel: rejects negative order and negative argument") {
        CHECK_THROWS_AS(riesz::bessel_j(-0.5, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(riesz::bessel_j(1.0, -1.0), std::invalid_argument);
    }

    TEST_CASE("closed form: origin values") {
        const double pi = 3.14159265358979323846;
        // alpha = 0, n = 1: pi^1 Gamma(1)/Gamma(2) = pi
        CHECK(std::abs(riesz::closed_form_kernel_radial(0.0, 0.0, 1.0, 1) - pi) <= 1e-12);
        // alpha = 1, n = 1: pi / 2
        CHECK(std::abs(riesz::closed_form_kernel_radial(0.0, 1.0, 1.0, 1) - pi / 2.0) <= 1e-12);
        // alpha = 1, n = 2: pi^2 Gamma(2)/Gamma(4) = pi^2/6
        CHECK(std::abs(riesz::closed_form_kernel_radial(0.0, 1.0, 1.0, 2) - pi * pi / 6.0) <=
              1e-12);
        // the radial profile is continuous across the series/plateau seam
        double origin = riesz::closed_form_kernel_radial(0.0, 1.0, 1.0, 1);
        double nearby = riesz::closed_form_kernel_radial(1e-7, 1.0, 1.0, 1);
        CHECK(std::abs(nearby - origin) <= 1e-6 * std::abs(origin));
    }

    TEST_CASE("closed form: dilation identity holds bitwise") {
        for (int n : {1, 2}) {
            for (double alpha : {0.0, 1.0, 1.5}) {
                for (double R : {0.5, 2.0, 3.7}) {
                    for (double r : {0.0, 0.3, 1.7, 4.2}) {
                        double lhs = riesz::closed_form_kernel_radial(r, alpha, R, n);
                        double rhs = std::pow(R, 2 * n) *
                                     riesz::closed_form_kernel_radial(R * r, alpha, 1.0, n);
                        CHECK(lhs == rhs);
                    }
                }
            }
        }
    }

    TEST_CASE("closed form: point evaluation is radial") {
        double r_sq = 0.6 * 0.6 + (-0.8) * (-0.8) + 1.2 * 1.2 + 0.9 * 0.9;
        double lhs = riesz::closed_form_kernel({0.6, -0.8}, {1.2, 0.9}, 1.0, 2.0, 2);
        double rhs = riesz::closed_form_kernel_radial(std::sqrt(r_sq), 1.0, 2.0, 2);
        CHECK(lhs == rhs);
        double one = riesz::closed_form_kernel({0.7}, {-0.4}, 0.5, 1.3, 1);
        double one_r = riesz::closed_form_kernel_radial(std::sqrt(0.7 * 0.7 + (-0.4) * (-0.4)),
                                                        0.5, 1.3, 1);
        CHECK(one == one_r);
        CHECK_THROWS_AS(riesz::closed_form_kernel({1.0}, {1.0, 2.0}, 1.0, 1.0, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(riesz::closed_form_kernel_radial(1.0, 1.0, 1.0, 3),
                        std::invalid_argument);
        CHECK_THROWS_AS(riesz::closed_form_kernel_radial(1.0, -0.5, 1.0, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(riesz::closed_form_kernel_radial(1.0, 1.0, 0.0, 1),
                        std::invalid_argument);
    }

    TEST_CASE("transform cross-check: sampled multiplier reproduces the closed form") {
        riesz::KernelTransformReport coarse = riesz::kernel_vs_transform(1.0, 1.0, 1, 6.0, 32.0, 256);
        CHECK(coarse.compared > 0);
        CHECK(coarse.sup_kernel > 0.0);
        CHECK(coarse.max_rel_err <= 1e-3);
        // doubling the period distances the periodic images and shrinks the error
        riesz::KernelTransformReport fine = riesz::kernel_vs_transform(1.0, 1.0, 1, 6.0, 64.0, 512);
        CHECK(fine.max_rel_err < 0.7 * coarse.max_rel_err);
        CHECK_THROWS_AS(riesz::kernel_vs_transform(1.0, 1.0, 1, 20.0, 32.0, 256),
                        std::invalid_argument);
        CHECK_THROWS_AS(riesz::kernel_vs_transform(1.0, 1.0, 1, 6.0, 32.0, 4),
                        std::invalid_argument);
    }

    TEST_CASE("window mass: integrable tail at high order, divergent at order zero") {
        std::vector<double> conv = riesz::kernel_window_masses(2.0, 1.0, 1, {2.0, 4.0, 8.0});
        CHECK(conv[0] > 0.0);
        CHECK(conv[2] - conv[1] < conv[1] - conv[0]);
        std::vector<double> div = riesz::kernel_window_masses(0.0, 1.0, 1, {2.0, 4.0, 8.0});
        CHECK(div[1] > div[0] * 1.05);
        CHECK(div[2] > div[1] * 1.05);
        // the scalar entry point is the one-window case
        CHECK(riesz::kernel_window_mass(2.0, 1.0, 1, 4.0) == conv[1]);
        CHECK_THROWS_AS(riesz::kernel_window_masses(1.0, 1.0, 1, {}), std::invalid_argument);
        CHECK_THROWS_AS(riesz::kernel_window_masses(1.0, 1.0, 1, {1.0}, -0.1),
                        std::invalid_argument);
        CHECK_THROWS_AS(riesz::kernel_window_masses(1.0, 1.0, 1, {-2.0}), std::invalid_argument);
    }

    TEST_CASE("profile export: header, row count, failure modes") {
        const std::string path = "unit_kernels_profile.csv";
        riesz::export_kernel_profile_csv(1.0, 2.0, 1, 5.0, 40, path);
        std::ifstream in(path);
        REQUIRE(in.good());
        std::string line;
        std::getline(in, line);
        CHECK(line.rfind("# alpha=1", 0) == 0);
        std::getline(in, line);
        CHECK(line == "r,K");
        int rows = 0;
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        CHECK(rows == 40);
        in.close();
        std::remove(path.c_str());
        CHECK_THROWS_AS(riesz::export_kernel_profile_csv(1.0, 1.0, 1, 5.0, 1, path),
                        std::invalid_argument);
        CHECK_THROWS(riesz::export_kernel_profile_csv(1.0, 1.0, 1, 5.0, 10,
                                                      "/nonexistent-dir/unit_kernels.csv"));
    }
}
