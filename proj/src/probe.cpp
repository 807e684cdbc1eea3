#include "riesz/probe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "riesz/parallel.hpp"

namespace riesz {

namespace {

double spectral_radius(const SampledField& f, double cutoff = 1e-12) {
    SampledField F = forward_transform(f);
    double amax = 0.0;
    for (const auto& v : F.values) amax = std::max(amax, std::abs(v));
    if (amax == 0.0) return 0.0;
    double rad = 0.0;
    for (size_t k = 0; k < F.size(); ++k) {
        if (std::abs(F.values[k]) <= cutoff * amax) continue;
        double r_sq;
        if (F.dim == 1) {
            double x = F.freq_of_index(static_cast<int>(k));
            r_sq = x * x;
        } else {
            double x = F.freq_of_index(static_cast<int>(k) / F.N);
            double y = F.freq_of_index(static_cast<int>(k) % F.N);
            r_sq = x * x + y * y;
        }
        rad = std::max(rad, r_sq);
    }
    return std::sqrt(rad);
}

}  // namespace

ExponentTriple holder_triple(double p1, double p2) {
    if (!(p1 >= 1.0) || !(p2 >= 1.0))
        throw std::invalid_argument("holder_triple: exponents must lie in [1, inf]");
    double inv = (std::isinf(p1) ? 0.0 : 1.0 / p1) + (std::isinf(p2) ? 0.0 : 1.0 / p2);
    ExponentTriple t;
    t.p1 = p1;
    t.p2 = p2;
    t.p = inv == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv;
    return t;
}

double empirical_ratio(const BilinearOp& op, const SampledField& f,
                       const SampledField& g, const ExponentTriple& triple) {
    double nf = lp_norm(f, triple.p1);
    double ng = lp_norm(g, triple.p2);
    if (!(nf > 0.0) || !(ng > 0.0))
        throw std::invalid_argument("empirical_ratio: zero-norm input");
    SampledField out = op(f, g);
    return lp_norm(out, triple.p) / (nf * ng);
}

ProbeReport empirical_norm(const BilinearOp& op, const std::string& tag,
                           const TestBank& bank, const ExponentTriple& triple,
                           double alpha) {
    if (bank.entries.empty()) throw std::invalid_argument("empirical_norm: empty bank");
    ProbeReport report;
    report.tag = tag;
    report.dim = bank.entries.front().f.dim;
    report.L = bank.entries.front().f.L;
    report.N = bank.entries.front().f.N;
    report.triple = triple;
    report.alpha = alpha;
    report.ratios.assign(bank.entries.size(), 0.0);
    report.note = "empirical max over the bank: a lower bound for the true operator norm";
    auto t0 = std::chrono::steady_clock::now();
    parallel_chunks(static_cast<long long>(bank.entries.size()),
                    [&](long long lo, long long hi, int) {
                        for (long long i = lo; i < hi; ++i) {
                            const auto& e = bank.entries[static_cast<size_t>(i)];
                            report.ratios[static_cast<size_t>(i)] =
                                empirical_ratio(op, e.f, e.g, triple);
                        }
                    });
    auto t1 = std::chrono::steady_clock::now();
    report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    for (double r : report.ratios) report.max_ratio = std::max(report.max_ratio, r);
    return report;
}

DecayFit dyadic_decay_fit(const SampledField& f, const SampledField& g, double alpha,
                          const ExponentTriple& triple, int j_lo, int j_hi,
                          const RGrid& rgrid, BilinearPath path) {
    if (j_lo < 2 || j_hi < j_lo)
        throw std::invalid_argument("dyadic_decay_fit: need 2 <= j_lo <= j_hi");
    if (rgrid.values.empty()) throw std::invalid_argument("dyadic_decay_fit: empty radius grid");
    DecayFit fit;
    std::vector<double> norms(static_cast<size_t>(j_hi - j_lo + 1), 0.0);
    for (int j = j_lo; j <= j_hi; ++j) {
        SampledField sup = make_field(f.dim, f.L, f.N, Space::physical);
        for (double R : rgrid.values) {
            SampledField piece = shell_piece(f, g, alpha, R, j, path);
            for (size_t k = 0; k < sup.size(); ++k) {
                double mag = std::abs(piece.values[k]);
                if (mag > sup.values[k].real()) sup.values[k] = mag;
            }
        }
        norms[static_cast<size_t>(j - j_lo)] = lp_norm(sup, triple.p);
    }
    double max_norm = 0.0;
    for (double v : norms) max_norm = std::max(max_norm, v);
    if (max_norm == 0.0) {
        fit.note = "every shell is empty on this radius grid; fit rejected";
        for (int j = j_lo; j <= j_hi; ++j) fit.excluded_j.push_back(j);
        return fit;
    }
    for (int j = j_lo; j <= j_hi; ++j) {
        double v = norms[static_cast<size_t>(j - j_lo)];
        if (v > 1e-14 * max_norm) {
            fit.included_j.push_back(j);
            fit.log2_norms.push_back(std::log2(v));
        } else {
            fit.excluded_j.push_back(j);
        }
    }
    if (fit.included_j.size() < 2) {
        fit.note = "fewer than two resolvable shells; fit rejected";
        return fit;
    }
    int span = fit.included_j.back() - fit.included_j.front();
    if (span < 6) {
        fit.note = "shell-index span below 6; fit refused (variance too high)";
        return fit;
    }
    // least squares on (j, log2 norm)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double m = static_cast<double>(fit.included_j.size());
    for (size_t i = 0; i < fit.included_j.size(); ++i) {
        double x = fit.included_j[i];
        double y = fit.log2_norms[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    double rss = 0.0;
    for (size_t i = 0; i < fit.included_j.size(); ++i) {
        double r = fit.log2_norms[i] - (fit.slope * fit.included_j[i] + fit.intercept);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / m);
    fit.valid = true;
    return fit;
}

ConvergenceReport convergence_probe(const SampledField& f, const SampledField& g,
                                    double alpha, const RGrid& rgrid, double p,
                                    BilinearPath path) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("convergence_probe: alpha must be >= 0");
    if (rgrid.values.empty()) throw std::invalid_argument("convergence_probe: empty radius grid");
    ConvergenceReport report;
    SampledField fg = pointwise_product(f, g);
    double bf = spectral_radius(f);
    double bg = spectral_radius(g);
    report.band_radius = std::sqrt(bf * bf + bg * bg);
    for (double R : rgrid.values) {
        SampledField avg = bilinear_average(f, g, alpha, R, path);
        SampledField diff = axpy(avg, -1.0, fg);
        report.radii.push_back(R);
        report.errors.push_back(lp_norm(diff, p));
    }
    report.final_error = report.errors.back();
    size_t capture = report.radii.size() - 1;
    for (size_t i = 0; i < report.radii.size(); ++i) {
        if (report.radii[i] >= report.band_radius) {
            capture = i;
            break;
        }
    }
    report.tail_monotone = true;
    double slack_floor = 1e-15 * std::max(1.0, report.errors.front());
    for (size_t i = capture; i + 1 < report.errors.size(); ++i) {
        if (report.errors[i + 1] > report.errors[i] * (1.0 + 1e-9) + slack_floor) {
            report.tail_monotone = false;
            break;
        }
    }
    return report;
}

std::vector<RegionPoint> region_scan(int n, const std::vector<Frac>& ps,
                                     const std::vector<double>& alphas) {
    if (n != 1 && n != 2) throw std::invalid_argument("region_scan: dimension must be 1 or 2");
    std::vector<RegionPoint> points;
    points.reserve(ps.size() * alphas.size());
    for (const Frac& p : ps) {
        for (double a : alphas) {
            RegionPoint pt;
            pt.p1 = p;
            pt.p2 = p;
            pt.alpha = a;
            pt.verdict = classify_region(n, p, p, a);
            points.push_back(pt);
        }
    }
    return points;
}

namespace {

void write_config_comment(std::ofstream& out, const std::string& config_echo) {
    std::istringstream lines(config_echo);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
}

}  // namespace

void write_region_csv(const std::vector<RegionPoint>& points, int n,
                      const std::string& path, const std::string& config_echo) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_region_csv: cannot open " + path);
    write_config_comment(out, config_echo);
    out << "n,p1,p2,inv_p,alpha,regime,threshold\n";
    out.precision(12);
    for (const auto& pt : points) {
        double inv_p = pt.p1.is_inf() ? 0.0 : pt.p1.reciprocal().to_double();
        out << n << ',' << pt.p1.str() << ',' << pt.p2.str() << ',' << inv_p << ','
            << pt.alpha << ',' << regime_name(pt.verdict.regime) << ','
            << pt.verdict.threshold << '\n';
    }
    if (!out) throw std::runtime_error("write_region_csv: write failed for " + path);
}

void write_ratios_csv(const ProbeReport& report, const std::string& path,
                      const std::string& config_echo) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_ratios_csv: cannot open " + path);
    write_config_comment(out, config_echo);
    out << "# tag=" << report.tag << " dim=" << report.dim << " L=" << report.L
        << " N=" << report.N << " note=" << report.note << "\n";
    out << "entry_id,ratio,p1,p2,p,alpha,R_or_j\n";
    out.precision(12);
    for (size_t i = 0; i < report.ratios.size(); ++i) {
        out << i << ',' << report.ratios[i] << ',' << report.triple.p1 << ','
            << report.triple.p2 << ',' << report.triple.p << ',' << report.alpha << ',';
        if (!report.param_name.empty()) out << report.param;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_ratios_csv: write failed for " + path);
}

// ---------------------------------------------------------------------------
// SVG renderer (reads the CSV back; no classification logic here)
// ---------------------------------------------------------------------------

namespace {

struct CsvRegionRow {
    double inv_p, alpha, threshold;
    std::string regime;
};

std::vector<CsvRegionRow> read_region_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_region_csv: cannot open " + path);
    std::vector<CsvRegionRow> rows;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 7) continue;
        CsvRegionRow row;
        row.inv_p = std::stod(cells[3]);
        row.alpha = std::stod(cells[4]);
        row.regime = cells[5];
        row.threshold = std::stod(cells[6]);
        rows.push_back(row);
    }
    return rows;
}

const char* regime_color(const std::string& regime) {
    if (regime == "above-critical-trivial") return "#b0b0b0";
    if (regime == "covered-n>=2" || regime == "covered-n=1") return "#5a5a5a";
    return "#f0f0f0";
}

}  // namespace

void write_region_svg_from_csv(const std::string& csv_path, const std::string& svg_path) {
    std::vector<CsvRegionRow> rows = read_region_csv(csv_path);
    if (rows.empty()) throw std::runtime_error("write_region_svg_from_csv: no data rows");
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
        xs.push_back(r.inv_p);
        ys.push_back(r.alpha);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const double W = 640, H = 480, ml = 60, mb = 40, mt = 20, mr = 20;
    double x_lo = xs.front(), x_hi = xs.back();
    double y_lo = ys.front(), y_hi = ys.back();
    if (x_hi == x_lo) x_hi = x_lo + 1;
    if (y_hi == y_lo) y_hi = y_lo + 1;
    double cw = (W - ml - mr) / static_cast<double>(xs.size());
    double ch = (H - mt - mb) / static_cast<double>(ys.size());
    auto px = [&](double v) { return ml + (v - x_lo) / (x_hi - x_lo) * (W - ml - mr - cw); };
    auto py = [&](double v) { return H - mb - ch - (v - y_lo) / (y_hi - y_lo) * (H - mt - mb - ch); };
    std::ofstream out(svg_path);
    if (!out) throw std::runtime_error("write_region_svg_from_csv: cannot open " + svg_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out.precision(8);
    for (const auto& r : rows) {
        out << "<rect x=\"" << px(r.inv_p) << "\" y=\"" << py(r.alpha) << "\" width=\"" << cw
            << "\" height=\"" << ch << "\" fill=\"" << regime_color(r.regime) << "\"/>\n";
    }
    // threshold curve sampled from the CSV rows (one value per inv_p)
    std::vector<std::pair<double, double>> curve;
    for (const auto& r : rows) curve.emplace_back(r.inv_p, r.threshold);
    std::sort(curve.begin(), curve.end());
    curve.erase(std::unique(curve.begin(), curve.end()), curve.end());
    out << "<polyline fill=\"none\" stroke=\"#c03030\" stroke-width=\"2\" points=\"";
    for (const auto& [x, t] : curve) {
        double ty = std::min(std::max(t, y_lo), y_hi);
        out << px(x) + cw / 2 << ',' << py(ty) + ch / 2 << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 8
        << "\" font-size=\"14\" text-anchor=\"middle\">1/p</text>\n";
    out << "<text x=\"16\" y=\"" << H / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << H / 2
        << ")\">alpha</text>\n";
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write_region_svg_from_csv: write failed");
}

}  // namespace riesz
