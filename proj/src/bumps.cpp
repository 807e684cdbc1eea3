#include "riesz/bumps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "riesz/quadrature.hpp"

namespace riesz {

namespace {

// the C-infinity mollifier on (0,1); identically 0 outside
double mollifier(double v) {
    if (v <= 0.0 || v >= 1.0) return 0.0;
    return std::exp(-1.0 / (v * (1.0 - v)));
}

constexpr int kTableCells = 16384;

}  // namespace

struct BumpSystem::Table {
    // cubic-Hermite data for theta on [1, 2]
    std::vector<double> value;  // theta at 1 + i/kTableCells
    std::vector<double> slope;  // theta' there (analytic: -m(s-1)/Z)
    double Z = 0.0;             // mollifier mass

    double eval(double s) const {
        if (s <= 1.0) return 1.0;
        if (s >= 2.0) return 0.0;
        double u = (s - 1.0) * kTableCells;
        int cell = static_cast<int>(u);
        if (cell >= kTableCells) cell = kTableCells - 1;
        double x = u - cell;  // local coordinate in [0,1)
        const double h = 1.0 / kTableCells;
        double v0 = value[cell], v1 = value[cell + 1];
        double d0 = slope[cell] * h, d1 = slope[cell + 1] * h;
        // standard Hermite basis
        double x2 = x * x, x3 = x2 * x;
        return (2 * x3 - 3 * x2 + 1) * v0 + (x3 - 2 * x2 + x) * d0 +
               (-2 * x3 + 3 * x2) * v1 + (x3 - x2) * d1;
    }
};

BumpSystem::BumpSystem(int n_der) : table_(new Table), n_der_(n_der) {
    if (n_der < 2) throw std::domain_error("BumpSystem: n_der must be >= 2");

    // per-cell Gauss-Legendre moments of the mollifier, accumulated from the
    // right so theta(2) = 0 exactly and theta(1) = 1 after normalization
    const int M = kTableCells;
    std::vector<double> cell_mass(M);
    const QuadRule& gl = gauss_legendre(8);
    for (int i = 0; i < M; ++i) {
        double a = static_cast<double>(i) / M;      // v-coordinates in (0,1)
        double b = static_cast<double>(i + 1) / M;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double acc = 0.0;
        for (size_t q = 0; q < gl.nodes.size(); ++q)
            acc += half * gl.weights[q] * mollifier(mid + half * gl.nodes[q]);
        cell_mass[i] = acc;
    }
    table_->value.assign(M + 1, 0.0);
    for (int i = M - 1; i >= 0; --i)
        table_->value[i] = table_->value[i + 1] + cell_mass[i];
    table_->Z = table_->value[0];
    for (auto& v : table_->value) v /= table_->Z;
    table_->value.front() = 1.0;
    table_->value.back() = 0.0;
    table_->slope.resize(M + 1);
    for (int i = 0; i <= M; ++i)
        table_->slope[i] = -mollifier(static_cast<double>(i) / M) / table_->Z;

    deriv_sup_.resize(n_der_ + 1);
    auto psi_fn = [this](double s) { return psi(s); };
    for (int k = 0; k <= n_der_; ++k)
        deriv_sup_[k] = estimate_deriv_sup(psi_fn, 0.45, 2.05, k);
}

BumpSystem::~BumpSystem() { delete table_; }

double BumpSystem::theta(double s) const { return table_->eval(s); }

double BumpSystem::psi(double s) const {
    // 2*s is exact in binary floating point, which the telescoping relies on
    return theta(s) - theta(2.0 * s);
}

double BumpSystem::psi0(double t) const {
    if (t < 0.0) throw std::domain_error("psi0: t must be >= 0");
    return 1.0 - theta(std::ldexp(1.0 - t, 2));
}

double BumpSystem::psi0_1(double t) const {
    if (t < 0.0) throw std::domain_error("psi0_1: t must be >= 0");
    return psi0(t) * theta((32.0 / 3.0) * t);
}

double BumpSystem::psi0_2(double t) const {
    // complement against psi0 so the two pieces re-sum to psi0 exactly
    return psi0(t) - psi0_1(t);
}

double BumpSystem::partition_residual(double t, int J) const {
    if (!(t >= 0.0 && t < 1.0))
        throw std::domain_error("partition_residual: t must lie in [0, 1)");
    if (J < 2) throw std::domain_error("partition_residual: J must be >= 2");
    const double u = 1.0 - t;
    long double acc = 1.0L;
    acc -= static_cast<long double>(psi0(t));
    for (int j = 2; j <= J; ++j) {
        double arg = std::ldexp(u, j);
        acc -= static_cast<long double>(theta(arg) - theta(std::ldexp(u, j + 1)));
    }
    return static_cast<double>(acc);
}

const BumpSystem& standard_bumps() {
    static BumpSystem sys(22);
    return sys;
}

double estimate_deriv_sup(const std::function<double(double)>& f, double a,
                          double b, int k, int samples) {
    if (k < 0) throw std::domain_error("estimate_deriv_sup: negative order");
    if (samples < 2) throw std::domain_error("estimate_deriv_sup: need samples >= 2");
    if (k == 0) {
        double m = 0.0;
        for (int i = 0; i < samples; ++i) {
            double x = a + (b - a) * i / (samples - 1);
            m = std::max(m, std::abs(f(x)));
        }
        return m;
    }
    // central k-th difference with binomial weights, O(h^2) accurate;
    // Richardson combination of the h and h/2 evaluations lifts it to O(h^4)
    std::vector<double> binom(k + 1);
    binom[0] = 1.0;
    for (int i = 1; i <= k; ++i) binom[i] = binom[i - 1] * (k - i + 1) / i;
    auto diff = [&](double x, double h) {
        double acc = 0.0;
        for (int i = 0; i <= k; ++i) {
            double sign = (i % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom[i] * f(x + (0.5 * k - i) * h);
        }
        return acc / std::pow(h, k);
    };
    // ladder of base steps; for each sample point keep the Richardson value
    // from the pair whose successors agree best (guards against both
    // truncation error at large h and cancellation noise at small h)
    std::vector<double> hs;
    for (double h = 0.25; h >= 1.0 / 512.0; h *= 0.5) hs.push_back(h);
    double sup = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x = a + (b - a) * i / (samples - 1);
        std::vector<double> rich;
        for (double h : hs) rich.push_back((4.0 * diff(x, 0.5 * h) - diff(x, h)) / 3.0);
        double best = rich[0];
        double best_gap = std::abs(rich[1] - rich[0]);
        for (size_t j = 1; j + 1 < rich.size(); ++j) {
            double gap = std::abs(rich[j + 1] - rich[j]);
            if (gap < best_gap) {
                best_gap = gap;
                best = rich[j + 1];
            }
        }
        sup = std::max(sup, std::abs(best));
    }
    return sup;
}

MembershipReport cN_membership(const std::function<double(double)>& h, double a,
                               double b, int N, const BumpSystem& sys) {
    if (N < 0) throw std::domain_error("cN_membership: N must be >= 0");
    if (N > sys.n_der())
        throw std::domain_error(
            "cN_membership: order exceeds the tabulated derivative depth; "
            "finite differences are unreliable there");
    double bound = 0.0;
    for (int k = 0; k <= N; ++k)
        bound = std::max(bound, estimate_deriv_sup(h, a, b, k));
    return {bound, bound <= 1.0 + 1e-6};
}

ScaledBump scaled_family(int k, double rho, int N, const BumpSystem& sys) {
    if (k < 0) throw std::domain_error("scaled_family: k must be >= 0");
    if (!(rho > 0)) throw std::domain_error("scaled_family: rho must be positive");
    ScaledBump out;
    out.k = k;
    out.rho = rho;
    const double expo = -(k + rho);
    out.eval = [&sys, expo](double x) {
        if (x <= 0.0) return 0.0;
        double p = sys.psi(x);
        if (p == 0.0) return 0.0;
        return std::pow(x, expo) * p;
    };
    out.deriv_sup.resize(N + 1);
    for (int d = 0; d <= N; ++d)
        out.deriv_sup[d] = estimate_deriv_sup(out.eval, 0.45, 2.05, d);
    return out;
}

void export_bump_table(const BumpSystem& sys, const std::string& path, int M) {
    if (M < 1) throw std::domain_error("export_bump_table: M must be >= 1");
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("export_bump_table: cannot open " + path);
    os << "x,psi,psi0,psi0_1,psi0_2\n";
    os.precision(17);
    for (int i = 0; i <= M; ++i) {
        double x = 2.0 * i / M;
        os << x << ',' << sys.psi(x) << ',' << sys.psi0(x) << ',' << sys.psi0_1(x)
           << ',' << sys.psi0_2(x) << '\n';
    }
    if (!os) throw std::runtime_error("export_bump_table: write failed for " + path);
}

}  // namespace riesz
