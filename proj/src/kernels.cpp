#include "riesz/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>

#include "riesz/fft.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;

// --- compensated (double-double) arithmetic -------------------------------
// The ascending series alternates with terms up to ~1e11 times the result at
// the far end of the method-overlap window (x ~ 30), so plain doubles lose
// the agreement budget to cancellation.  A two-double accumulator keeps the
// term recurrence and the sum at ~31 significant digits.

struct DD {
    double hi = 0.0, lo = 0.0;
};

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    DD r = two_sum(s.hi, lo);
    return r;
}

DD dd_mul_d(DD a, double b) {
    double p = a.hi * b;
    double err = std::fma(a.hi, b, -p);
    double lo = err + a.lo * b;
    return two_sum(p, lo);
}

DD dd_div_d(DD a, double b) {
    double q1 = a.hi / b;
    double r = std::fma(-q1, b, a.hi) + a.lo;
    double q2 = r / b;
    return two_sum(q1, q2);
}

DD dd_div_dd(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD p = dd_mul_d(b, q1);
    DD r = dd_add(a, DD{-p.hi, -p.lo});
    double q2 = r.hi / b.hi;
    return two_sum(q1, q2);
}

double bessel_series(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    // leading factor (x/2)^nu / Gamma(nu+1); a plain-double prefactor only
    // scales the result, it does not feed the cancellation
    double log_lead = nu * std::log(x / 2.0) - std::lgamma(nu + 1.0);
    if (log_lead < -700.0) return 0.0;
    DD term = {std::exp(log_lead), 0.0};
    DD sum = term;
    const double q = x * x / 4.0;
    for (int k = 0; k < 500; ++k) {
        // nu + k + 1 must enter at full dd width: rounding it per-k would
        // scatter ~1e-16 relative errors across terms of size ~1e11
        DD dnu = two_sum(nu, k + 1.0);
        term = dd_div_dd(dd_div_d(dd_mul_d(term, -q), k + 1.0), dnu);
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-24 * (std::abs(sum.hi) + 1e-300)) break;
    }
    return sum.hi + sum.lo;
}

double bessel_integral(double nu, double x) {
    // Watson's real-order representation, exact for nu >= 0, x > 0:
    //   J_nu(x) = (1/pi) int_0^pi cos(nu theta - x sin theta) d theta
    //           - (sin(nu pi)/pi) int_0^inf e^{-nu t - x sinh t} dt.
    double osc = integrate_adaptive(
                     [nu, x](double th) { return std::cos(nu * th - x * std::sin(th)); }, 0.0,
                     kPi, 1e-13) /
                 kPi;
    double s = std::sin(nu * kPi);
    double corr = 0.0;
    if (s != 0.0) {
        double t_cut = std::asinh(750.0 / x) + 1.0;
        corr = s / kPi *
               integrate_adaptive(
                   [nu, x](double t) { return std::exp(-nu * t - x * std::sinh(t)); }, 0.0,
                   t_cut, 1e-13);
    }
    return osc - corr;
}

}  // namespace

double bessel_j(double nu, double x, BesselMethod method) {
    if (!(nu >= 0.0)) throw std::invalid_argument("bessel_j: order must be >= 0");
    if (!(x >= 0.0)) throw std::invalid_argument("bessel_j: argument must be >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    switch (method) {
        case BesselMethod::power_series:
            return bessel_series(nu, x);
        case BesselMethod::integral_representation:
            return bessel_integral(nu, x);
        case BesselMethod::automatic:
        default:
            return x <= nu + 8.0 ? bessel_series(nu, x) : bessel_integral(nu, x);
    }
}

// ---------------------------------------------------------------------------
// closed-form kernel
// ---------------------------------------------------------------------------

namespace {

void validate_kernel_args(double alpha, double R, int n) {
    if (n != 1 && n != 2) throw std::invalid_argument("kernel: dimension must be 1 or 2");
    if (!(R > 0.0)) throw std::invalid_argument("kernel: R must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("kernel: alpha must be >= 0");
}

// radial profile at R = 1; the public entry scales it so the dilation
// identity K_R(r) = R^{2n} K_1(R r) holds bitwise
double kernel_unit_radial(double rr, double alpha, int n) {
    double nu = alpha + n;
    if (rr < 1e-12)
        return std::pow(kPi, n) * std::exp(std::lgamma(alpha + 1.0) - std::lgamma(nu + 1.0));
    double c = std::exp(std::lgamma(alpha + 1.0)) * std::pow(kPi, -alpha);
    return c * bessel_j(nu, kTwoPi * rr) / std::pow(rr, nu);
}

}  // namespace

double closed_form_kernel_radial(double r, double alpha, double R, int n) {
    validate_kernel_args(alpha, R, n);
    double R2n = std::pow(R, 2 * n);
    return R2n * kernel_unit_radial(R * std::abs(r), alpha, n);
}

double closed_form_kernel(const std::vector<double>& y, const std::vector<double>& z,
                          double alpha, double R, int n) {
    validate_kernel_args(alpha, R, n);
    if (static_cast<int>(y.size()) != n || static_cast<int>(z.size()) != n)
        throw std::invalid_argument("closed_form_kernel: point dimensions must equal n");
    double r_sq = 0.0;
    for (double v : y) r_sq += v * v;
    for (double v : z) r_sq += v * v;
    return closed_form_kernel_radial(std::sqrt(r_sq), alpha, R, n);
}

// ---------------------------------------------------------------------------
// cross-validation against the sampled transform
// ---------------------------------------------------------------------------

KernelTransformReport kernel_vs_transform(double alpha, double R, int n,
                                          double window_radius, double L, int N) {
    validate_kernel_args(alpha, R, n);
    if (!(L > 0.0) || N < 8) throw std::invalid_argument("kernel_vs_transform: bad grid");
    if (!(window_radius > 0.0) || window_radius > L / 2.0)
        throw std::invalid_argument("kernel_vs_transform: window must fit inside [-L/2, L/2)");
    const int rank = 2 * n;
    long long total = 1;
    for (int d = 0; d < rank; ++d) total *= N;
    std::vector<std::complex<double>> spec(static_cast<size_t>(total));
    // frequency samples in FFT-natural order: axis index i holds mode
    // m = i (i < N/2) or i - N (i >= N/2), i.e. frequency m / L
    for (long long idx = 0; idx < total; ++idx) {
        long long rest = idx;
        double xi_sq = 0.0;
        for (int d = rank - 1; d >= 0; --d) {
            int i = static_cast<int>(rest % N);
            rest /= N;
            int m = i < N / 2 ? i : i - N;
            double x = m / L;
            xi_sq += x * x;
        }
        double v = 1.0 - xi_sq / (R * R);
        double w;
        if (!(v > 0.0))
            w = 0.0;
        else if (alpha == 0.0)
            w = 1.0;
        else if (alpha == 1.0)
            w = v;
        else
            w = std::pow(v, alpha);
        spec[static_cast<size_t>(idx)] = w;
    }
    std::vector<std::complex<double>> phys = fft_nd(spec, rank, N, +1);
    const double measure = std::pow(1.0 / L, rank);
    KernelTransformReport report;
    double sup_err = 0.0;
    for (long long idx = 0; idx < total; ++idx) {
        long long rest = idx;
        double r_sq = 0.0;
        for (int d = rank - 1; d >= 0; --d) {
            int k = static_cast<int>(rest % N);
            rest /= N;
            double x = L * k / N;
            if (x >= L / 2.0) x -= L;
            r_sq += x * x;
        }
        if (r_sq > window_radius * window_radius) continue;
        double closed = closed_form_kernel_radial(std::sqrt(r_sq), alpha, R, n);
        double sampled = phys[static_cast<size_t>(idx)].real() * measure;
        sup_err = std::max(sup_err, std::abs(closed - sampled));
        report.sup_kernel = std::max(report.sup_kernel, std::abs(closed));
        ++report.compared;
    }
    report.max_rel_err = report.sup_kernel > 0.0 ? sup_err / report.sup_kernel : sup_err;
    return report;
}

// ---------------------------------------------------------------------------
// windowed mass and profiles
// ---------------------------------------------------------------------------

std::vector<double> kernel_window_masses(double alpha, double R, int n,
                                         const std::vector<double>& windows, double dr) {
    validate_kernel_args(alpha, R, n);
    if (windows.empty()) throw std::invalid_argument("kernel_window_masses: no windows");
    if (!(dr > 0.0)) throw std::invalid_argument("kernel_window_masses: dr must be positive");
    double w_max = 0.0;
    for (double w : windows) {
        if (!(w > 0.0)) throw std::invalid_argument("kernel_window_masses: windows must be > 0");
        w_max = std::max(w_max, w);
    }
    // sphere area in R^{2n}: 2 pi (n=1), 2 pi^2 (n=2)
    const double area = n == 1 ? kTwoPi : 2.0 * kPi * kPi;
    long long cells = static_cast<long long>(std::ceil(w_max / dr));
    std::vector<double> out(windows.size(), 0.0);
    double cumulative = 0.0;
    // midpoint sweep, reading off the cumulative integral at each window edge
    std::vector<size_t> order(windows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return windows[a] < windows[b]; });
    size_t which = 0;
    for (long long c = 0; c < cells; ++c) {
        double r = (c + 0.5) * dr;
        while (which < order.size() && windows[order[which]] <= r - 0.5 * dr + 1e-15) {
            out[order[which]] = cumulative;
            ++which;
        }
        double k = std::abs(closed_form_kernel_radial(r, alpha, R, n));
        cumulative += k * area * std::pow(r, 2 * n - 1) * dr;
    }
    while (which < order.size()) {
        out[order[which]] = cumulative;
        ++which;
    }
    return out;
}

double kernel_window_mass(double alpha, double R, int n, double W, double dr) {
    return kernel_window_masses(alpha, R, n, {W}, dr)[0];
}

void export_kernel_profile_csv(double alpha, double R, int n, double r_max, int count,
                               const std::string& path) {
    validate_kernel_args(alpha, R, n);
    if (count < 2) throw std::invalid_argument("export_kernel_profile_csv: count must be >= 2");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_kernel_profile_csv: cannot open " + path);
    out << "# alpha=" << alpha << " R=" << R << " n=" << n << " r_max=" << r_max
        << " count=" << count << "\n";
    out << "r,K\n";
    out.precision(17);
    for (int i = 0; i < count; ++i) {
        double r = r_max * i / (count - 1);
        out << r << ',' << closed_form_kernel_radial(r, alpha, R, n) << '\n';
    }
    if (!out) throw std::runtime_error("export_kernel_profile_csv: write failed for " + path);
}

}  // namespace riesz
