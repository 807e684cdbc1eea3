#pragma once

// Multiplier symbols, the scalar radial-integral identity behind the
// decomposition, and the two independent algorithms for applying bilinear
// symbols to sampled fields.
//
// Radial conventions, with phi = (1 - |xi|^2/R^2)_+:
//   full:      m(xi, eta) = (1 - (|xi|^2 + |eta|^2)/R^2)_+^alpha
//   piece_j:   psi(2^j phi) * m(xi, eta)    (support: phi in [2^-j-1, 2^-j+1])
//   tail:      psi0(|xi|^2/R^2) * m(xi, eta), optionally with the psi0 split
//   localized: psi(nu^{-1} phi)                                   (linear)
//   br_disc:   (1 - |xi|^2/t^2)_+^delta                           (linear)
//   s_piece:   psi(2^j phi) * (phi - t^2)_+^{beta-1}, t normalized (linear)
//
// piece and tail share the full symbol's code path for their m factor, so
// summing all pieces against the bump partition telescopes at machine
// precision; the residual after truncating at J is exactly
// theta(2^{J+1} phi) * m.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riesz/bumps.hpp"
#include "riesz/grid.hpp"

namespace riesz {

enum class SymbolKind { full, piece, tail, localized, br_disc, s_piece };

bool symbol_is_bilinear(SymbolKind k);

struct SymbolSpec {
    SymbolKind kind = SymbolKind::full;
    double alpha = 0.0;  // full, piece, tail
    double R = 1.0;      // full, piece, tail, localized, s_piece
    int j = 0;           // piece, s_piece, localized (width 2^-j when nu == 0)
    double t = 0.0;      // br_disc radius; s_piece normalized radial offset
    double beta = 0.0;   // s_piece
    double delta = 0.0;  // br_disc
    double nu = 0.0;     // localized width; 0 means use 2^-j
    int tail_part = 0;   // 0: whole psi0; 1 / 2: split pieces
    const BumpSystem* bumps = nullptr;  // nullptr = standard_bumps()
};

// Radial evaluation on squared norms (the hot path). eta_sq must be supplied
// exactly for the bilinear kinds and must be absent for the linear ones.
double eval_symbol_radial(const SymbolSpec& spec, double xi_sq,
                          std::optional<double> eta_sq);

// Vector front-end: norms are taken internally.
double eval_symbol(const SymbolSpec& spec, const std::vector<double>& xi,
                   const std::optional<std::vector<double>>& eta = std::nullopt);

// --- scalar identity ----------------------------------------------------

// 2 Gamma(beta+delta+1) / (Gamma(beta) Gamma(delta+1)); the constant that
// makes the radial integral below reproduce (1 - |eta|^2/(R^2 phi))_+^alpha.
double c_alpha(double beta, double delta);

struct DecompositionSplit {
    double alpha;
    double beta;
    double delta;
    double c;  // c_alpha(beta, delta)
};

DecompositionSplit make_split(double beta, double delta);

struct SteinWeissReport {
    double lhs;
    double rhs;
    double rel_err;
};

// lhs = (1 - eta^2/(R^2 phi))_+^alpha;
// rhs = c R^{-2 alpha} phi^{-alpha}
//       * integral_0^R (R^2 phi - t^2)_+^{beta-1} t^{2 delta+1}
//                      (1 - eta^2/t^2)_+^delta dt,
// evaluated adaptively after sqrt substitutions at both singular endpoints.
SteinWeissReport steinweiss_check(const DecompositionSplit& split, double R,
                                  double phi, double eta_norm);

// --- application to fields ----------------------------------------------

SampledField apply_linear(const SymbolSpec& spec, const SampledField& f);

enum class BilinearPath { auto_select, tensor, loop };

// Tensor-path memory budget (bytes) for the 2n-dimensional product array;
// auto_select falls back to the loop path above it, an explicit tensor
// request throws. Default 2 GiB.
void set_tensor_budget(std::size_t bytes);
std::size_t tensor_budget();

// sum_{xi,eta} m(xi,eta) fhat(xi) ghat(eta) e^{2 pi i x.(xi+eta)} over the
// discrete frequency measure, by the requested path. The two paths are
// algorithmically independent: the tensor path transforms the outer-product
// field once and folds the anti-diagonal, the loop path runs one masked
// inverse transform per xi node through the ordinary field machinery.
SampledField apply_bilinear(const SymbolSpec& spec, const SampledField& f,
                            const SampledField& g,
                            BilinearPath path = BilinearPath::auto_select);

struct ReconstructionReport {
    SampledField field;     // tail piece + sum of shell pieces through J
    double residual_bound;  // sup over grid xi of theta(2^{J+1} phi) m(xi, 0)
};

ReconstructionReport reconstruct_bilinear(double alpha, double R, int J,
                                          const SampledField& f, const SampledField& g,
                                          BilinearPath path = BilinearPath::auto_select);

// --- identity checks on dense parameter grids ----------------------------

struct SecondDyadicReport {
    double sup_deviation;  // max |direct residual - theta-tail formula|
    double sup_residual;   // max |direct residual|
};

// Applies the dyadic partition to (1 - u)_+^gamma with u = |xi|^2/s^2 on a
// dense xi-grid in [0, s]; the truncation residual must equal
// theta(2^{K+1}(1-u)) (1-u)_+^gamma pointwise.
SecondDyadicReport second_dyadic_check(double gamma, double s, int K,
                                       const BumpSystem& bumps = standard_bumps(),
                                       int samples = 4097);

// Truncated binomial series for u^{-rho} (1 - t^2/u)^{-rho} against the
// closed form; geometric decay in `terms` whenever t^2 < u. The divergent
// regime 2^j t^2 >= 1 (and the empty-series regime t^2 >= u) is rejected.
double taylor_expansion_check(double rho, int j, double t, double u, int terms);

// --- figures --------------------------------------------------------------

// CSV rows (xi, eta, value); linear kinds emit eta = 0 rows only.
void dump_symbol_csv(const SymbolSpec& spec, const std::string& path,
                     const std::vector<double>& xi_values,
                     const std::vector<double>& eta_values);

}  // namespace riesz
