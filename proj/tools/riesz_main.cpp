// Command-line entry point.  Subcommands: verify, probe, region, kernel,
// bench.  Options come from a JSON config file plus flag overrides (flags
// win).  Exit codes: 0 all assertions pass, 1 assertion failure (first
// failing check is named on stderr), 2 configuration error.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "riesz/exponents.hpp"
#include "riesz/grid.hpp"
#include "riesz/kernels.hpp"
#include "riesz/operators.hpp"
#include "riesz/probe.hpp"
#include "riesz/verify.hpp"

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return json::parse(in);
}

// JSON supplies a value only when the flag was not given on the command line.
template <typename T>
void merge(const json& cfg, const CLI::App* cmd, const std::string& flag,
           const std::string& key, T& value) {
    if (cmd->get_option(flag)->count() > 0) return;
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return std::string(buf);
}

riesz::Frac parse_frac(const std::string& s) {
    if (s == "inf") return riesz::Frac::pos_inf();
    size_t slash = s.find('/');
    size_t used = 0;
    if (slash == std::string::npos) {
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("bad exponent literal: " + s);
        return riesz::Frac(v);
    }
    long long num = std::stoll(s.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument("bad exponent literal: " + s);
    long long den = std::stoll(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1) throw std::invalid_argument("bad exponent literal: " + s);
    return riesz::Frac(num, den);
}

void print_check(const riesz::CheckResult& r) {
    std::printf("%s (%s): %s — %s (%.1fs)\n", r.name.c_str(), r.title.c_str(),
                r.pass ? "PASS" : "FAIL", r.detail.c_str(), r.seconds);
    std::fflush(stdout);
}

int run_verify(const std::string& suite, const riesz::SuiteOptions& opt) {
    std::vector<riesz::CheckResult> results;
    if (suite == "all") {
        results = riesz::run_all_checks();
    } else {
        results.push_back(riesz::run_suite(suite, opt));
    }
    std::string first_fail;
    for (const auto& r : results) {
        print_check(r);
        if (!r.pass && first_fail.empty()) first_fail = r.name;
    }
    if (!first_fail.empty()) {
        std::cerr << "first failing check: " << first_fail << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for bilinear frequency-ball averages"};
    app.require_subcommand(1);
    app.fallthrough();

    int threads = 0;
    app.add_option("--threads", threads, "cap on worker threads (default: RIESZ_THREADS or 1)");

    // ---- verify -----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a named verification suite (or all)");
    std::string verify_config, suite = "all";
    double tol = 0.0;
    int trials = 0;
    std::vector<double> t_extra;
    verify->add_option("--config", verify_config, "JSON config file");
    verify->add_option("--suite", suite,
                       "one of: all, partition, steinweiss, decomposition, plancherel, "
                       "kernel, telescope, shellbound");
    verify->add_option("--tol", tol, "override the pinned tolerance");
    verify->add_option("--trials", trials, "override the pinned trial count");
    verify->add_option("--t-extra", t_extra, "extra partition sample points t");

    // ---- probe ------------------------------------------------------------
    auto* probe = app.add_subcommand("probe", "empirical norms, decay fit, or convergence");
    std::string probe_config, kind = "norms", probe_out;
    int probe_n = 1, probe_N = 512, j_lo = 3, j_hi = 9, per_decade = 0;
    double probe_alpha = 1.0, p1 = 2.0, p2 = 2.0;
    double r_min = 0.0, r_max = 0.0, sigma = 2.5;
    double conv_p = std::numeric_limits<double>::infinity();
    bool probe_stamp = false;
    probe->add_option("--config", probe_config, "JSON config file");
    probe->add_option("--kind", kind, "norms | decay | convergence")
        ->check(CLI::IsMember({"norms", "decay", "convergence"}));
    probe->add_option("--n", probe_n, "ambient dimension (1 or 2)");
    probe->add_option("--N", probe_N, "grid points per axis for decay/convergence fields");
    probe->add_option("--alpha", probe_alpha, "order of the average");
    probe->add_option("--p1", p1, "first input exponent");
    probe->add_option("--p2", p2, "second input exponent");
    probe->add_option("--p", conv_p, "output norm exponent for convergence");
    probe->add_option("--j-lo", j_lo, "first shell index for the decay fit");
    probe->add_option("--j-hi", j_hi, "last shell index for the decay fit");
    probe->add_option("--r-min", r_min, "radius grid start (0 = kind default)");
    probe->add_option("--r-max", r_max, "radius grid end (0 = kind default)");
    probe->add_option("--per-decade", per_decade, "radius grid density (0 = kind default)");
    probe->add_option("--sigma", sigma, "Gaussian width for convergence fields");
    probe->add_option("--out", probe_out, "CSV output path");
    probe->add_flag("--timestamps", probe_stamp, "embed a timestamp in CSV headers");

    // ---- region -----------------------------------------------------------
    auto* region = app.add_subcommand("region", "classify (1/p, alpha) points, emit CSV/SVG");
    std::string region_config, region_out = "region.csv", region_svg;
    int region_n = 2;
    std::vector<std::string> region_ps;
    double alpha_min = 0.0, alpha_max = 1.5, alpha_step = 0.05;
    bool region_stamp = false;
    region->add_option("--config", region_config, "JSON config file");
    region->add_option("--n", region_n, "ambient dimension (1 or 2)");
    region->add_option("--p", region_ps, "diagonal exponents p1=p2=p (integers, a/b, or inf)");
    region->add_option("--alpha-min", alpha_min, "smallest alpha sample");
    region->add_option("--alpha-max", alpha_max, "largest alpha sample");
    region->add_option("--alpha-step", alpha_step, "alpha sample spacing");
    region->add_option("--out", region_out, "CSV output path");
    region->add_option("--svg", region_svg, "optional SVG path (rendered from the CSV)");
    region->add_flag("--timestamps", region_stamp, "embed a timestamp in CSV headers");

    // ---- kernel -----------------------------------------------------------
    auto* kernel = app.add_subcommand("kernel", "closed-form kernel radial profile CSV");
    std::string kernel_config, kernel_out = "kernel.csv";
    double k_alpha = 1.0, k_R = 1.0, k_rmax = 10.0;
    int k_n = 1, k_count = 400;
    kernel->add_option("--config", kernel_config, "JSON config file");
    kernel->add_option("--alpha", k_alpha, "order of the average");
    kernel->add_option("--R", k_R, "radius");
    kernel->add_option("--n", k_n, "ambient dimension (1 or 2)");
    kernel->add_option("--r-max", k_rmax, "profile extent");
    kernel->add_option("--count", k_count, "number of radial samples");
    kernel->add_option("--out", kernel_out, "CSV output path");

    // ---- bench ------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "tensor vs loop bilinear timing");
    std::string bench_config;
    int bench_N = 1024, bench_reps = 3;
    bench->add_option("--config", bench_config, "JSON config file");
    bench->add_option("--N", bench_N, "grid points per axis");
    bench->add_option("--reps", bench_reps, "repetitions (best time kept)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // malformed flags are configuration errors
    }

    try {
        if (verify->parsed()) {
            json cfg = load_config(verify_config);
            merge(cfg, verify, "--suite", "suite", suite);
            merge(cfg, verify, "--tol", "tol", tol);
            merge(cfg, verify, "--trials", "trials", trials);
            merge(cfg, verify, "--t-extra", "t_extra", t_extra);
            merge(cfg, &app, "--threads", "threads", threads);
            if (threads > 0) setenv("RIESZ_THREADS", std::to_string(threads).c_str(), 1);
            riesz::SuiteOptions opt;
            opt.tol = tol;
            opt.trials = trials;
            opt.t_extra = t_extra;
            return run_verify(suite, opt);
        }

        if (probe->parsed()) {
            json cfg = load_config(probe_config);
            merge(cfg, probe, "--kind", "kind", kind);
            merge(cfg, probe, "--n", "n", probe_n);
            merge(cfg, probe, "--N", "N", probe_N);
            merge(cfg, probe, "--alpha", "alpha", probe_alpha);
            merge(cfg, probe, "--p1", "p1", p1);
            merge(cfg, probe, "--p2", "p2", p2);
            merge(cfg, probe, "--p", "p", conv_p);
            merge(cfg, probe, "--j-lo", "j_lo", j_lo);
            merge(cfg, probe, "--j-hi", "j_hi", j_hi);
            merge(cfg, probe, "--r-min", "r_min", r_min);
            merge(cfg, probe, "--r-max", "r_max", r_max);
            merge(cfg, probe, "--per-decade", "per_decade", per_decade);
            merge(cfg, probe, "--sigma", "sigma", sigma);
            merge(cfg, probe, "--out", "out", probe_out);
            merge(cfg, probe, "--timestamps", "timestamps", probe_stamp);
            merge(cfg, &app, "--threads", "threads", threads);
            if (threads > 0) setenv("RIESZ_THREADS", std::to_string(threads).c_str(), 1);
            const double L = 32.0;

            if (kind == "norms") {
                if (r_min <= 0.0) r_min = 2.0;
                if (r_max <= 0.0) r_max = 8.0;
                if (per_decade <= 0) per_decade = 5;
                riesz::TestBank bank = riesz::default_bank(probe_n);
                double nyq = riesz::nyquist_radius(bank.entries.front().f);
                riesz::RGrid rgrid = riesz::make_rgrid(r_min, r_max, per_decade, nyq);
                riesz::ExponentTriple triple = riesz::holder_triple(p1, p2);
                double alpha = probe_alpha;
                riesz::BilinearOp op = [alpha, &rgrid](const riesz::SampledField& f,
                                                       const riesz::SampledField& g) {
                    return riesz::maximal_bilinear(f, g, alpha, rgrid);
                };
                riesz::ProbeReport rep =
                    riesz::empirical_norm(op, "maximal_bilinear", bank, triple, alpha);
                std::printf("empirical max ratio = %.12g over %zu bank entries (%.1fs)\n",
                            rep.max_ratio, rep.ratios.size(), rep.wall_seconds);
                std::printf("note: %s\n", rep.note.c_str());
                if (!probe_out.empty()) {
                    std::ostringstream echo;
                    echo << "command=probe kind=norms n=" << probe_n << " alpha=" << alpha
                         << " p1=" << p1 << " p2=" << p2 << " r_min=" << r_min
                         << " r_max=" << r_max << " per_decade=" << per_decade
                         << " seed=" << bank.seed;
                    if (probe_stamp) echo << "\ntimestamp=" << iso_now();
                    riesz::write_ratios_csv(rep, probe_out, echo.str());
                    std::printf("wrote %s\n", probe_out.c_str());
                }
                return 0;
            }

            if (kind == "decay") {
                riesz::SampledField f =
                    riesz::gaussian_field(1, L, probe_N, {16.0}, 1.0, {4.0});
                riesz::SampledField g =
                    riesz::gaussian_field(1, L, probe_N, {16.0}, 4.0, {0.0});
                riesz::RGrid rgrid;
                for (int j = j_lo; j <= j_hi; ++j)
                    for (double u : {0.6, 0.9, 1.2, 1.5, 1.8})
                        rgrid.values.push_back(4.0 / std::sqrt(1.0 - u * std::ldexp(1.0, -j)));
                std::sort(rgrid.values.begin(), rgrid.values.end());
                riesz::DecayFit fit =
                    riesz::dyadic_decay_fit(f, g, probe_alpha, riesz::holder_triple(p1, p2),
                                            j_lo, j_hi, rgrid, riesz::BilinearPath::loop);
                if (!fit.valid) {
                    std::cerr << "first failing check: decay-fit (" << fit.note << ")\n";
                    return 1;
                }
                std::printf("decay fit: slope=%.6f intercept=%.6f rms_residual=%.3e\n",
                            fit.slope, fit.intercept, fit.residual);
                std::printf("shells used:");
                for (int j : fit.included_j) std::printf(" %d", j);
                std::printf("\n");
                return 0;
            }

            // convergence
            if (r_min <= 0.0) r_min = 0.5;
            if (r_max <= 0.0) r_max = probe_N / (4.0 * L);
            if (per_decade <= 0) per_decade = 24;
            riesz::SampledField f =
                riesz::gaussian_field(1, L, probe_N, {16.0}, sigma, {0.0});
            riesz::RGrid rgrid =
                riesz::make_rgrid(r_min, r_max, per_decade, probe_N / (2.0 * L));
            riesz::ConvergenceReport rep =
                riesz::convergence_probe(f, f, probe_alpha, rgrid, conv_p);
            std::printf("band radius %.6g, final error %.6e, tail %s\n", rep.band_radius,
                        rep.final_error, rep.tail_monotone ? "monotone" : "NOT monotone");
            if (!probe_out.empty()) {
                std::ofstream out(probe_out);
                if (!out) throw std::runtime_error("cannot open " + probe_out);
                out << "# command=probe kind=convergence N=" << probe_N << " L=" << L
                    << " alpha=" << probe_alpha << " sigma=" << sigma << " p=" << conv_p
                    << " r_min=" << r_min << " r_max=" << r_max
                    << " per_decade=" << per_decade << "\n";
                if (probe_stamp) out << "# timestamp=" << iso_now() << "\n";
                out << "# band_radius=" << rep.band_radius
                    << " tail_monotone=" << (rep.tail_monotone ? 1 : 0) << "\n";
                out << "radius,error\n";
                out.precision(12);
                for (size_t i = 0; i < rep.radii.size(); ++i)
                    out << rep.radii[i] << ',' << rep.errors[i] << '\n';
                std::printf("wrote %s\n", probe_out.c_str());
            }
            return 0;
        }

        if (region->parsed()) {
            json cfg = load_config(region_config);
            merge(cfg, region, "--n", "n", region_n);
            merge(cfg, region, "--p", "p", region_ps);
            merge(cfg, region, "--alpha-min", "alpha_min", alpha_min);
            merge(cfg, region, "--alpha-max", "alpha_max", alpha_max);
            merge(cfg, region, "--alpha-step", "alpha_step", alpha_step);
            merge(cfg, region, "--out", "out", region_out);
            merge(cfg, region, "--svg", "svg", region_svg);
            merge(cfg, region, "--timestamps", "timestamps", region_stamp);
            if (alpha_step <= 0.0) throw std::invalid_argument("alpha-step must be positive");
            if (region_ps.empty()) {
                if (region_n == 2)
                    region_ps = {"2",   "5/2", "3",  "7/2", "4", "9/2", "5",
                                 "6",   "8",   "12", "16",  "32", "inf"};
                else
                    region_ps = {"1", "6/5", "4/3", "3/2", "2", "3", "4", "8", "inf"};
            }
            std::vector<riesz::Frac> ps;
            for (const auto& s : region_ps) ps.push_back(parse_frac(s));
            std::vector<double> alphas;
            for (double a = alpha_min; a <= alpha_max + 1e-12; a += alpha_step)
                alphas.push_back(a);
            auto points = riesz::region_scan(region_n, ps, alphas);
            std::ostringstream echo;
            echo << "command=region n=" << region_n << " alpha_min=" << alpha_min
                 << " alpha_max=" << alpha_max << " alpha_step=" << alpha_step << " p=";
            for (size_t i = 0; i < region_ps.size(); ++i)
                echo << (i ? "," : "") << region_ps[i];
            if (region_stamp) echo << "\ntimestamp=" << iso_now();
            riesz::write_region_csv(points, region_n, region_out, echo.str());
            std::printf("wrote %s (%zu points)\n", region_out.c_str(), points.size());
            if (!region_svg.empty()) {
                riesz::write_region_svg_from_csv(region_out, region_svg);
                std::printf("wrote %s\n", region_svg.c_str());
            }
            return 0;
        }

        if (kernel->parsed()) {
            json cfg = load_config(kernel_config);
            merge(cfg, kernel, "--alpha", "alpha", k_alpha);
            merge(cfg, kernel, "--R", "R", k_R);
            merge(cfg, kernel, "--n", "n", k_n);
            merge(cfg, kernel, "--r-max", "r_max", k_rmax);
            merge(cfg, kernel, "--count", "count", k_count);
            merge(cfg, kernel, "--out", "out", kernel_out);
            riesz::export_kernel_profile_csv(k_alpha, k_R, k_n, k_rmax, k_count, kernel_out);
            std::printf("wrote %s; kernel at the origin = %.12g\n", kernel_out.c_str(),
                        riesz::closed_form_kernel_radial(0.0, k_alpha, k_R, k_n));
            return 0;
        }

        if (bench->parsed()) {
            json cfg = load_config(bench_config);
            merge(cfg, bench, "--N", "N", bench_N);
            merge(cfg, bench, "--reps", "reps", bench_reps);
            merge(cfg, &app, "--threads", "threads", threads);
            if (threads > 0) setenv("RIESZ_THREADS", std::to_string(threads).c_str(), 1);
            riesz::BenchResult r = riesz::bench_bilinear_paths(bench_N, bench_reps);
            std::printf("tensor %.4fs | loop %.4fs | speedup %.2fx | agreement %.3e\n",
                        r.tensor_seconds, r.loop_seconds, r.speedup, r.agreement);
            if (r.agreement > 1e-10) {
                std::cerr << "first failing check: bench-agreement\n";
                return 1;
            }
            return 0;
        }
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
