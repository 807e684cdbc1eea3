#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "riesz/bumps.hpp"
#include "riesz/grid.hpp"
#include "riesz/symbols.hpp"

using riesz::SampledField;
using riesz::SymbolKind;
using riesz::SymbolSpec;

namespace {

SampledField random_field(int dim, double L, int N, std::uint64_t seed) {
    SampledField f = riesz::make_field(dim, L, N, riesz::Space::physical);
    std::mt19937_64 rng(seed);
    auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
    for (auto& v : f.values) v = {u(), u()};
    return f;
}

double sup_rel(const SampledField& a, const SampledField& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        num = std::max(num, std::abs(a.values[i] - b.values[i]));
        den = std::max(den, std::abs(a.values[i]));
    }
    return den > 0.0 ? num / den : num;
}

}  // namespace

TEST_SUITE("symbols") {
    TEST_CASE("full symbol values and support") {
        SymbolSpec s;
        s.kind = SymbolKind::full;
        s.alpha = 2.0;
        s.R = 2.0;
        CHECK(riesz::eval_symbol_radial(s, 0.0, 0.0) == 1.0);
        CHECK(riesz::eval_symbol_radial(s, 2.0, 2.0) == 0.0);   // on the sphere
        CHECK(riesz::eval_symbol_radial(s, 3.0, 2.0) == 0.0);   // outside
        CHECK(riesz::eval_symbol_radial(s, 1.0, 1.0) ==
              doctest::Approx(0.25).epsilon(1e-15));  // (1 - 2/4)^2
        // vector front-end agrees with the radial form
        CHECK(riesz::eval_symbol(s, {1.0}, std::vector<double>{1.0}) ==
              riesz::eval_symbol_radial(s, 1.0, 1.0));
    }

    TEST_CASE("dilation covariance of the full symbol") {
        SymbolSpec unit;
        unit.kind = SymbolKind::full;
        unit.alpha = 1.3;
        unit.R = 1.0;
        SymbolSpec scaled = unit;
        scaled.R = 3.0;
        for (double xi : {0.3, 1.1, 2.0, 2.9})
            for (double eta : {0.0, 0.7, 1.6})
                CHECK(riesz::eval_symbol_radial(scaled, xi * xi, eta * eta) ==
                      doctest::Approx(riesz::eval_symbol_radial(
                                          unit, xi * xi / 9.0, eta * eta / 9.0))
                          .epsilon(1e-14));
    }

    TEST_CASE("dyadic pieces + tail + residual reproduce the full symbol") {
        const int J = 12;
        const double R = 2.0, eta_sq = 0.5;
        const auto& b = riesz::standard_bumps();
        SymbolSpec full;
        full.kind = SymbolKind::full;
        full.alpha = 0.7;
        full.R = R;
        SymbolSpec tail = full;
        tail.kind = SymbolKind::tail;
        double worst = 0.0;
        for (int i = 0; i < 1500; ++i) {
            double u = i / 1500.0;  // |xi|^2 / R^2
            double xi_sq = u * R * R;
            double sum = riesz::eval_symbol_radial(tail, xi_sq, eta_sq);
            for (int j = 2; j <= J; ++j) {
                SymbolSpec piece = full;
                piece.kind = SymbolKind::piece;
                piece.j = j;
                sum += riesz::eval_symbol_radial(piece, xi_sq, eta_sq);
            }
            double joint = riesz::eval_symbol_radial(full, xi_sq, eta_sq);
            double residual = b.theta(std::ldexp(1.0 - u, J + 1)) * joint;
            worst = std::max(worst, std::abs(joint - sum - residual));
        }
        CHECK(worst <= 1e-14);
    }

    TEST_CASE("linear kinds") {
        const auto& b = riesz::standard_bumps();
        SymbolSpec disc;
        disc.kind = SymbolKind::br_disc;
        disc.delta = 1.0;
        disc.t = 2.0;
        CHECK(riesz::eval_symbol_radial(disc, 1.0, std::nullopt) ==
              doctest::Approx(0.75).epsilon(1e-15));
        CHECK(riesz::eval_symbol_radial(disc, 4.0, std::nullopt) == 0.0);

        SymbolSpec sp;
        sp.kind = SymbolKind::s_piece;
        sp.beta = 1.5;
        sp.R = 1.0;
        sp.j = 3;
        sp.t = 0.2;
        double expect = b.psi(1.2) * std::sqrt(0.15 - 0.04);
        CHECK(riesz::eval_symbol_radial(sp, 0.85, std::nullopt) ==
              doctest::Approx(expect).epsilon(1e-13));

        SymbolSpec loc;
        loc.kind = SymbolKind::localized;
        loc.R = 1.0;
        loc.nu = 0.05;
        // phi = nu exactly on the bump peak argument 1
        CHECK(riesz::eval_symbol_radial(loc, 1.0 - 0.05, std::nullopt) ==
              doctest::Approx(1.0).epsilon(1e-13));
        CHECK(riesz::eval_symbol_radial(loc, 1.0 - 0.2, std::nullopt) == 0.0);

        // argument-shape misuse
        SymbolSpec full;
        full.kind = SymbolKind::full;
        CHECK_THROWS_AS(riesz::eval_symbol_radial(full, 1.0, std::nullopt),
                        std::invalid_argument);
        CHECK_THROWS_AS(riesz::eval_symbol_radial(disc, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(riesz::eval_symbol_radial(disc, -1.0, std::nullopt),
                        std::domain_error);
    }

    TEST_CASE("scalar identity constant") {
        CHECK(riesz::c_alpha(1.0, 0.0) == 2.0);
        CHECK(riesz::c_alpha(1.0, 1.0) == 4.0);
        double beta = 1.7, delta = 0.4;
        double oracle = 2.0 * std::tgamma(beta + delta + 1.0) /
                        (std::tgamma(beta) * std::tgamma(delta + 1.0));
        CHECK(riesz::c_alpha(beta, delta) == doctest::Approx(oracle).epsilon(1e-15));
        CHECK_THROWS_AS(riesz::c_alpha(0.5, 0.0), std::domain_error);
        CHECK_THROWS_AS(riesz::c_alpha(1.0, -0.5), std::domain_error);
        riesz::DecompositionSplit split = riesz::make_split(1.5, 0.5);
        CHECK(split.alpha == 2.0);
        CHECK(split.beta == 1.5);
        CHECK(split.delta == 0.5);
        CHECK(split.c == riesz::c_alpha(1.5, 0.5));
    }

    TEST_CASE("scalar radial-integral identity at pinned parameters") {
        riesz::SteinWeissReport r =
            riesz::steinweiss_check(riesz::make_split(1.0, 1.0), 2.0, 0.5, 0.3);
        CHECK(r.rel_err <= 1e-10);
        CHECK(r.lhs == doctest::Approx(std::pow(1.0 - 0.09 / 2.0, 2.0)).epsilon(1e-14));
        // degenerate contact point |eta| = R sqrt(phi): both sides vanish
        riesz::SteinWeissReport edge =
            riesz::steinweiss_check(riesz::make_split(1.0, 0.0), 1.0, 0.25, 0.5);
        CHECK(edge.lhs == 0.0);
        CHECK(edge.rel_err == 0.0);
        CHECK_THROWS_AS(riesz::steinweiss_check(riesz::make_split(1.0, 0.0), -1.0, 0.5, 0.1),
                        std::domain_error);
        CHECK_THROWS_AS(riesz::steinweiss_check(riesz::make_split(1.0, 0.0), 1.0, 1.5, 0.1),
                        std::domain_error);
    }

    TEST_CASE("linear application scales a tone by the symbol value") {
        const double L = 32.0;
        const int N = 128;
        SampledField tone = riesz::tone_field(1, L, N, {5});
        SymbolSpec disc;
        disc.kind = SymbolKind::br_disc;
        disc.delta = 1.0;
        disc.t = 2.0;
        SampledField out = riesz::apply_linear(disc, tone);
        double xi = 5.0 / L;
        double factor = 1.0 - xi * xi / 4.0;
        double worst = 0.0;
        for (int i = 0; i < N; ++i)
            worst = std::max(worst, std::abs(out.at(i) - factor * tone.at(i)));
        CHECK(worst < 1e-13);
        SampledField freq = riesz::forward_transform(tone);
        CHECK_THROWS_AS(riesz::apply_linear(disc, freq), std::invalid_argument);
    }

    TEST_CASE("tensor and loop bilinear paths agree") {
        SymbolSpec full;
        full.kind = SymbolKind::full;
        full.alpha = 1.0;
        {
            SampledField f = random_field(1, 32.0, 64, 101);
            SampledField g = random_field(1, 32.0, 64, 102);
            full.R = 0.8;
            SampledField t = riesz::apply_bilinear(full, f, g, riesz::BilinearPath::tensor);
            SampledField l = riesz::apply_bilinear(full, f, g, riesz::BilinearPath::loop);
            CHECK(sup_rel(t, l) < 1e-12);
            // symmetry of the symbol makes the operator symmetric
            SampledField swapped =
                riesz::apply_bilinear(full, g, f, riesz::BilinearPath::tensor);
            CHECK(sup_rel(t, swapped) < 1e-12);
        }
        {
            SampledField f = random_field(2, 32.0, 16, 103);
            SampledField g = random_field(2, 32.0, 16, 104);
            full.R = 0.2;
            SampledField t = riesz::apply_bilinear(full, f, g, riesz::BilinearPath::tensor);
            SampledField l = riesz::apply_bilinear(full, f, g, riesz::BilinearPath::loop);
            CHECK(sup_rel(t, l) < 1e-12);
        }
    }

    TEST_CASE("tensor memory budget gates the path choice") {
        std::size_t saved = riesz::tensor_budget();
        riesz::set_tensor_budget(1024);  // far below any N
        SampledField f = random_field(1, 32.0, 64, 105);
        SampledField g = random_field(1, 32.0, 64, 106);
        SymbolSpec full;
        full.kind = SymbolKind::full;
        full.alpha = 1.0;
        full.R = 0.8;
        CHECK_THROWS_AS(riesz::apply_bilinear(full, f, g, riesz::BilinearPath::tensor),
                        std::length_error);
        // auto_select silently falls back to the loop path
        SampledField a = riesz::apply_bilinear(full, f, g, riesz::BilinearPath::auto_select);
        SampledField l = riesz::apply_bilinear(full, f, g, riesz::BilinearPath::loop);
        CHECK(sup_rel(a, l) == 0.0);
        riesz::set_tensor_budget(saved);
    }

    TEST_CASE("reconstruction report") {
        SampledField f = random_field(1, 32.0, 64, 107);
        SampledField g = random_field(1, 32.0, 64, 108);
        CHECK_THROWS_AS(riesz::reconstruct_bilinear(1.0, 0.8, 1, f, g), std::domain_error);
        riesz::ReconstructionReport shallow = riesz::reconstruct_bilinear(1.0, 0.8, 3, f, g);
        CHECK(shallow.residual_bound > 0.0);  // wide-spectrum input, shells unresolved
    }

    TEST_CASE("second dyadic partition on the linear symbol") {
        riesz::SecondDyadicReport r = riesz::second_dyadic_check(0.5, 0.3, 12);
        CHECK(r.sup_deviation <= 1e-12);
        riesz::SecondDyadicReport r2 = riesz::second_dyadic_check(1.0, 1.0, 8);
        CHECK(r2.sup_deviation <= 1e-12);
        CHECK(r2.sup_residual >= 0.0);
    }

    TEST_CASE("binomial expansion check") {
        double coarse = riesz::taylor_expansion_check(0.5, 3, 0.25, 0.5, 4);
        double fine = riesz::taylor_expansion_check(0.5, 3, 0.25, 0.5, 12);
        CHECK(fine <= 1e-9);
        CHECK(fine < coarse);
        CHECK_THROWS_AS(riesz::taylor_expansion_check(0.5, 6, 0.5, 0.5, 5),
                        std::domain_error);
        CHECK_THROWS_AS(riesz::taylor_expansion_check(0.5, 0, 0.9, 0.5, 5),
                        std::domain_error);
    }

    TEST_CASE("symbol table export") {
        SymbolSpec full;
        full.kind = SymbolKind::full;
        full.alpha = 1.0;
        full.R = 1.0;
        const char* path = "symbol_dump.csv";
        riesz::dump_symbol_csv(full, path, {0.0, 0.5, 1.0}, {0.0, 0.5});
        std::ifstream in(path);
        REQUIRE(in.good());
        std::string header;
        std::getline(in, header);
        CHECK(header == "xi,eta,value");
        int rows = 0;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        in.close();
        std::remove(path);
        CHECK(rows == 6);
    }
}
