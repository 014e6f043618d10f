#include "toepqr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "json.hpp"
#include "toepqr/errors.hpp"
#include "toepqr/oracles.hpp"
#include "toepqr/rng.hpp"
#include "toepqr/seminormal.hpp"
#include "toepqr/vec.hpp"

namespace toepqr::bench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double guarded_ratio(double num, double den) {
    if (!(den > 0.0) || !std::isfinite(den)) return kNaN;
    return num / den;
}

std::vector<double> diff_norm2_input(std::span<const double> a, std::span<const double> b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

// Median over the finite entries; NaN if none.
double median_of(std::vector<double> v) {
    std::erase_if(v, [](double x) { return !std::isfinite(x); });
    if (v.empty()) return kNaN;
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size();
    if (k % 2 == 1) return v[k / 2];
    return 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

std::uint64_t median_tally(std::vector<std::uint64_t> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];  // lower median keeps the value integral
}

std::string fmt_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return nlohmann::json(x).dump();  // shortest round-trip form
}

}  // namespace

double metric_e1(const Toeplitz& t, double alpha, const RFactor& rf) {
    const oracle::DenseMatrix g = oracle::gram(t, alpha);
    const oracle::DenseMatrix r = oracle::from_rows(rf.rows);
    const oracle::DenseMatrix rtr = oracle::matmul(oracle::transpose(r), r);
    const double den = kUnitRoundoff * oracle::norm1(g);
    return guarded_ratio(oracle::norm1(oracle::subtract(rtr, g)), den);
}

double metric_e2(std::span<const double> x, std::span<const double> x_true, double cond1) {
    const double den = kUnitRoundoff * cond1 * cond1 * norm2(x_true);
    return guarded_ratio(norm2(diff_norm2_input(x, x_true)), den);
}

double metric_e3(const Toeplitz& t, std::span<const double> b, std::span<const double> x,
                 double x_true_norm2, double cond1) {
    const std::vector<double> ax = matvec(t, x);
    const double den = kUnitRoundoff * cond1 * oracle::norm1(t) * x_true_norm2;
    return guarded_ratio(norm2(diff_norm2_input(ax, b)), den);
}

void compute_metrics(const Toeplitz& t, std::span<const double> x_true,
                     std::span<const double> b, std::span<const double> x,
                     const RFactor& rf, std::uint64_t tally, MetricsRow& row) {
    row.cond1 = oracle::cond1_triangular(oracle::from_rows(rf.rows));
    row.e1 = metric_e1(t, 0.0, rf);
    const double xnorm = norm2(x_true);
    row.e2 = metric_e2(x, x_true, row.cond1);
    row.e3 = metric_e3(t, b, x, xnorm, row.cond1);
    try {
        const std::vector<double> xc = oracle::solve_normal_cholesky(t, b);
        row.e3c = metric_e3(t, b, xc, xnorm, row.cond1);
    } catch (const NotPositiveDefinite&) {
        row.e3c = kNaN;  // reference method failed; the row is still valid
    }
    row.tally = tally;
}

BenchResult run_bench(const BenchConfig& config) {
    if (config.count < 0) throw Error("bench: count must be >= 0");
    BenchResult result;
    std::uint64_t cell_index = 0;
    for (const int n : config.n_values) {
        for (const double ms : config.mu_sigma_values) {
            const std::uint64_t cell_seed = rng::derive(config.seed, cell_index++);
            EnsembleConfig ec;
            ec.n = n;
            ec.mu = ms;
            ec.sigma = 1.0;
            ec.count = config.count;
            ec.seed = cell_seed;
            ec.family = config.family;

            std::vector<const MetricsRow*> ok;
            const std::size_t first = result.rows.size();
            for (int i = 0; i < config.count; ++i) {
                MetricsRow row;
                row.n = n;
                row.mu_sigma = ms;
                row.seed = rng::derive(cell_seed, static_cast<std::uint64_t>(i));
                try {
                    const Instance inst = gen_instance(ec, i);
                    const RFactor rf = factor(inst.t);
                    const SolveReport report = solve(inst.t, inst.b);
                    compute_metrics(inst.t, inst.x_true, inst.b, report.x, rf,
                                    report.tally, row);
                    row.status = "ok";
                } catch (const DowndateBreakdown&) {
                    row.status = "breakdown";
                } catch (const ZeroPivot&) {
                    row.status = "breakdown";
                } catch (const SingularTriangular&) {
                    row.status = "breakdown";
                } catch (const NotPositiveDefinite&) {
                    row.status = "breakdown";
                }
                if (row.status == "breakdown") {
                    row.cond1 = row.e1 = row.e2 = row.e3 = row.e3c = kNaN;
                    row.tally = 0;
                }
                result.rows.push_back(row);
            }
            if (config.count > 0) {
                for (std::size_t r = first; r < result.rows.size(); ++r) {
                    if (result.rows[r].status == "ok") ok.push_back(&result.rows[r]);
                }
                MetricsRow med;
                med.n = n;
                med.mu_sigma = ms;
                med.seed = cell_seed;
                med.status = "median";
                auto gather = [&](double MetricsRow::*field) {
                    std::vector<double> vals;
                    vals.reserve(ok.size());
                    for (const MetricsRow* r : ok) vals.push_back(r->*field);
                    return median_of(std::move(vals));
                };
                med.cond1 = gather(&MetricsRow::cond1);
                med.e1 = gather(&MetricsRow::e1);
                med.e2 = gather(&MetricsRow::e2);
                med.e3 = gather(&MetricsRow::e3);
                med.e3c = gather(&MetricsRow::e3c);
                std::vector<std::uint64_t> tallies;
                tallies.reserve(ok.size());
                for (const MetricsRow* r : ok) tallies.push_back(r->tally);
                med.tally = median_tally(std::move(tallies));
                result.rows.push_back(std::move(med));
            }
        }
    }
    return result;
}

void write_csv(const BenchResult& result, std::ostream& out) {
    out << "n,mu_sigma,seed,cond1,e1,e2,e3,e3c,tally,status\n";
    for (const MetricsRow& r : result.rows) {
        out << r.n << ',' << fmt_double(r.mu_sigma) << ',' << r.seed << ','
            << fmt_double(r.cond1) << ',' << fmt_double(r.e1) << ',' << fmt_double(r.e2)
            << ',' << fmt_double(r.e3) << ',' << fmt_double(r.e3c) << ',' << r.tally
            << ',' << r.status << '\n';
    }
}

void write_json(const BenchResult& result, std::ostream& out) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const MetricsRow& r : result.rows) {
        nlohmann::ordered_json row;
        row["n"] = r.n;
        row["mu_sigma"] = r.mu_sigma;
        row["seed"] = r.seed;
        row["cond1"] = r.cond1;  // NaN serializes as null
        row["e1"] = r.e1;
        row["e2"] = r.e2;
        row["e3"] = r.e3;
        row["e3c"] = r.e3c;
        row["tally"] = r.tally;
        row["status"] = r.status;
        rows.push_back(std::move(row));
    }
    nlohmann::ordered_json doc;
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

}  // namespace toepqr::bench
