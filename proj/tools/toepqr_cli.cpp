// Command-line interface: factor / solve / lsq / bench.
//
// Exit codes: 0 success; 1 usage, I/O, or input-shape problems; 2 numerical
// breakdown (factorization or triangular solve failed); 3 invariant
// violation detected in --self-check mode.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "toepqr/ensemble.hpp"
#include "toepqr/errors.hpp"
#include "toepqr/json_io.hpp"
#include "toepqr/lattice.hpp"
#include "toepqr/metrics.hpp"
#include "toepqr/oracles.hpp"
#include "toepqr/seminormal.hpp"
#include "toepqr/toeplitz.hpp"
#include "toepqr/vec.hpp"

namespace {

using namespace toepqr;

struct SelfCheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hankel inputs self-describe through their "kind" field and are always
// routed through the row-reversal adapter; --hankel additionally asserts
// that the input really is Hankel.
Toeplitz load_matrix(const std::string& path, bool hankel_flag) {
    io::MatrixVariant mv = io::read_matrix_file(path);
    if (std::holds_alternative<Hankel>(mv)) {
        return hankel_to_toeplitz(std::get<Hankel>(mv));
    }
    if (hankel_flag) {
        throw IoError("--hankel given but input kind is \"toeplitz\"");
    }
    return std::move(std::get<Toeplitz>(mv));
}

std::pair<Toeplitz, std::vector<double>> load_system(const std::string& path,
                                                     const std::string& rhs_path,
                                                     bool hankel_flag) {
    io::MatrixVariant mv = io::read_matrix_file(path);
    std::vector<double> b = io::read_vector_file(rhs_path);
    if (std::holds_alternative<Hankel>(mv)) {
        return hankel_adapter(std::get<Hankel>(mv), b);
    }
    if (hankel_flag) {
        throw IoError("--hankel given but input kind is \"toeplitz\"");
    }
    return {std::move(std::get<Toeplitz>(mv)), std::move(b)};
}

StorageMode parse_storage(const std::string& s) {
    if (s == "dense") return StorageMode::Dense;
    if (s == "rotreverse") return StorageMode::RotationReverse;
    if (s == "checkpoint") return StorageMode::Checkpointed;
    throw IoError("--storage must be dense, rotreverse, or checkpoint");
}

struct FactorArgs {
    std::string input;
    std::string out;
    std::string rotlog;
    double alpha = 0.0;
    bool tally = false;
    bool hankel = false;
};

int run_factor(const FactorArgs& a) {
    const Toeplitz t = load_matrix(a.input, a.hankel);
    FactorOptions opts;
    opts.alpha = a.alpha;
    const RFactor rf = factor(t, opts);
    io::write_json_output(a.out, io::rfactor_to_json(rf, a.tally));
    if (a.tally && !a.out.empty() && a.out != "-") {
        std::cout << "tally " << rf.tally.mults << '\n';
    }
    if (!a.rotlog.empty()) {
        io::write_json_output(a.rotlog, io::rotation_log_to_json(rf.log));
    }
    return 0;
}

struct SolveArgs {
    std::string input;
    std::string rhs;
    std::string storage = "dense";
    std::string truth;
    double alpha = 0.0;
    int refine = 0;
    bool metrics = false;
    bool self_check = false;
    bool hankel = false;
};

void attach_metrics(const Toeplitz& t, std::span<const double> b, const SolveArgs& a,
                    SolveReport& report) {
    FactorOptions fopts;
    fopts.alpha = a.alpha;
    const RFactor rf = factor(t, fopts);
    const double cond1 = oracle::cond1_triangular(oracle::from_rows(rf.rows));
    report.cond1 = cond1;
    SolveMetrics sm;
    sm.e1 = bench::metric_e1(t, a.alpha, rf);
    if (!a.truth.empty()) {
        const std::vector<double> x_true = io::read_vector_file(a.truth);
        if (static_cast<int>(x_true.size()) != t.n()) {
            throw ShapeError("--truth vector length must equal n");
        }
        sm.e2 = bench::metric_e2(report.x, x_true, cond1);
        sm.e3 = bench::metric_e3(t, b, report.x, norm2(x_true), cond1);
    }
    report.metrics = sm;
}

// Invariants verified in --self-check mode:
//   (a) every recorded rotation has c^2 + s^2 = 1 to within 64 ulp;
//   (b) the factor reproduces the normal matrix: e1 <= 100 n;
//   (c) an independent solve in a different storage mode agrees with the
//       reported solution to within 1e4 * kappa1 * n * eps relative.
void self_check(const Toeplitz& t, std::span<const double> b, const SolveArgs& a,
                const SolveOptions& opts, const SolveReport& report) {
    const double eps = bench::kUnitRoundoff;
    FactorOptions fopts;
    fopts.alpha = a.alpha;
    const RFactor rf = factor(t, fopts);

    for (std::size_t i = 0; i < rf.log.rotations.size(); ++i) {
        const Rotation& r = rf.log.rotations[i];
        const double drift = std::abs(r.c * r.c + r.s * r.s - 1.0);
        if (!(drift <= 64.0 * eps)) {
            std::ostringstream msg;
            msg << "self-check: rotation " << i << " has c^2+s^2-1 = " << drift;
            throw SelfCheckFailure(msg.str());
        }
    }

    const double e1 = bench::metric_e1(t, a.alpha, rf);
    if (!(e1 <= 100.0 * t.n())) {
        std::ostringstream msg;
        msg << "self-check: factorization error e1 = " << e1 << " exceeds " << 100 * t.n();
        throw SelfCheckFailure(msg.str());
    }

    SolveOptions alt = opts;
    alt.storage_mode = (opts.storage_mode == StorageMode::Dense)
                           ? StorageMode::RotationReverse
                           : StorageMode::Dense;
    const SolveReport other = (t.m() == t.n()) ? solve(t, b, alt) : least_squares(t, b, alt);
    double diff2 = 0.0;
    for (std::size_t i = 0; i < report.x.size(); ++i) {
        const double d = report.x[i] - other.x[i];
        diff2 += d * d;
    }
    const double cond1 = oracle::cond1_triangular(oracle::from_rows(rf.rows));
    const double rel = std::sqrt(diff2) / std::max(norm2(report.x), eps);
    const double band = 1e4 * cond1 * t.n() * eps;
    if (!(rel <= band)) {
        std::ostringstream msg;
        msg << "self-check: storage modes disagree, relative difference " << rel
            << " exceeds " << band;
        throw SelfCheckFailure(msg.str());
    }
}

int run_solve(const SolveArgs& a, bool least_squares_mode) {
    auto [t, b] = load_system(a.input, a.rhs, a.hankel);
    SolveOptions opts;
    opts.alpha = a.alpha;
    opts.refine_steps = a.refine;
    opts.storage_mode = parse_storage(a.storage);
    SolveReport report = least_squares_mode ? least_squares(t, b, opts) : solve(t, b, opts);
    if (a.metrics) attach_metrics(t, b, a, report);
    if (a.self_check) self_check(t, b, a, opts, report);
    io::write_json_output("-", io::solve_report_to_json(report));
    return 0;
}

struct BenchArgs {
    std::vector<int> n_values;
    std::vector<double> mu_sigma_values{0.0};
    int count = 5;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string family = "random";
};

int run_bench(const BenchArgs& a) {
    bench::BenchConfig cfg;
    cfg.n_values = a.n_values;
    cfg.mu_sigma_values = a.mu_sigma_values;
    cfg.count = a.count;
    cfg.seed = a.seed;
    if (a.family == "random") {
        cfg.family = bench::Family::Random;
    } else if (a.family == "singular") {
        cfg.family = bench::Family::NearSingular;
    } else {
        throw IoError("--family must be random or singular");
    }
    const bench::BenchResult result = bench::run_bench(cfg);
    if (a.format == "csv") {
        bench::write_csv(result, std::cout);
    } else if (a.format == "json") {
        bench::write_json(result, std::cout);
    } else {
        throw IoError("--format must be csv or json");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz/Hankel normal-equation factorization and weakly stable solver"};
    app.require_subcommand(1);

    FactorArgs fa;
    CLI::App* factor_cmd = app.add_subcommand("factor", "Factor A^T A + alpha I = R^T R");
    factor_cmd->add_option("--input", fa.input, "matrix JSON file")->required();
    factor_cmd->add_option("--alpha", fa.alpha, "ridge term added to the diagonal of A^T A");
    factor_cmd->add_option("--out", fa.out, "write the factor JSON here instead of stdout");
    factor_cmd->add_flag("--tally", fa.tally, "include the multiplication count");
    factor_cmd->add_option("--rotlog", fa.rotlog, "also write the rotation log JSON here");
    factor_cmd->add_flag("--hankel", fa.hankel, "require a Hankel input (row-reversal route)");

    SolveArgs sa;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve the square system T x = b");
    SolveArgs la;
    CLI::App* lsq_cmd = app.add_subcommand("lsq", "Minimize ||A x - b||_2 for m >= n");
    for (auto [cmd, args] : {std::pair{solve_cmd, &sa}, std::pair{lsq_cmd, &la}}) {
        cmd->add_option("--input", args->input, "matrix JSON file")->required();
        cmd->add_option("--rhs", args->rhs, "right-hand-side JSON file")->required();
        cmd->add_option("--alpha", args->alpha, "ridge term for the normal matrix");
        cmd->add_option("--refine", args->refine, "iterative refinement steps");
        cmd->add_option("--storage", args->storage,
                        "factor storage: dense | rotreverse | checkpoint");
        cmd->add_flag("--metrics", args->metrics,
                      "attach cond1 and normalized error metrics to the report");
        cmd->add_option("--truth", args->truth,
                        "known solution JSON (enables the e2/e3 metrics)");
        cmd->add_flag("--self-check", args->self_check,
                      "verify internal invariants; exit 3 on violation");
        cmd->add_flag("--hankel", args->hankel, "require a Hankel input");
    }

    BenchArgs ba;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Run the seeded random-ensemble measurement grid");
    bench_cmd->add_option("--n", ba.n_values, "problem sizes")->delimiter(',');
    bench_cmd->add_option("--mu-sigma", ba.mu_sigma_values, "entry mean/stddev ratios")
        ->delimiter(',');
    bench_cmd->add_option("--count", ba.count, "instances per cell");
    bench_cmd->add_option("--seed", ba.seed, "master seed");
    bench_cmd->add_option("--format", ba.format, "csv | json");
    bench_cmd->add_option("--family", ba.family,
                          "instance family: random | singular (equal first "
                          "off-diagonals stress case)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (factor_cmd->parsed()) return run_factor(fa);
        if (solve_cmd->parsed()) return run_solve(sa, false);
        if (lsq_cmd->parsed()) return run_solve(la, true);
        if (bench_cmd->parsed()) return run_bench(ba);
        std::cerr << "error: no subcommand selected\n";
        return 1;
    } catch (const SelfCheckFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const DowndateBreakdown& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ZeroPivot& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SingularTriangular& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const RankDeficient& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
