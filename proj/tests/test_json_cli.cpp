#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "toepqr/errors.hpp"
#include "toepqr/json_io.hpp"
#include "toepqr/lattice.hpp"
#include "toepqr/toeplitz.hpp"

using namespace toepqr;
using nlohmann::json;

namespace {

std::string fixture(const char* name) {
    return std::string(TOEPQR_FIXTURE_DIR) + "/" + name;
}

struct CliResult {
    int code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + TOEPQR_CLI_PATH + "\" " + args +
                            " > cli_stdout.tmp 2> cli_stderr.tmp";
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp("cli_stdout.tmp");
    return r;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

json matrix_json(const Toeplitz& t) {
    json j;
    j["kind"] = "toeplitz";
    j["col"] = t.col;
    j["row"] = t.row;
    return j;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse_matrix rejects malformed payloads with typed errors") {
    CHECK_THROWS_AS(io::parse_matrix(json::parse(R"({"col":[1],"row":[1]})")), IoError);
    CHECK_THROWS_AS(
        io::parse_matrix(json::parse(R"({"kind":"circulant","col":[1],"row":[1]})")),
        IoError);
    CHECK_THROWS_AS(io::parse_matrix(json::parse(R"({"kind":"toeplitz","row":[1]})")),
                    IoError);
    CHECK_THROWS_AS(
        io::parse_matrix(json::parse(R"({"kind":"toeplitz","col":"x","row":[1]})")),
        IoError);
    CHECK_THROWS_AS(
        io::parse_matrix(json::parse(R"({"kind":"toeplitz","col":[1,"a"],"row":[1,2]})")),
        IoError);
    CHECK_THROWS_AS(
        io::parse_matrix(json::parse(R"({"kind":"toeplitz","col":[2,1],"row":[3,1]})")),
        MismatchedCorner);
    CHECK_THROWS_AS(
        io::parse_matrix(json::parse(R"({"kind":"hankel","col":[1,2],"row":[9,3]})")),
        MismatchedCorner);

    json inf_col = json::parse(R"({"kind":"toeplitz","col":[1,0],"row":[1,0]})");
    inf_col["col"][1] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(io::parse_matrix(inf_col), NonFiniteInput);
}

TEST_CASE("parse_vector validates shape and finiteness") {
    CHECK(io::parse_vector(json::parse("[1, 2.5, -3]")) ==
          std::vector<double>{1.0, 2.5, -3.0});
    CHECK_THROWS_AS(io::parse_vector(json::parse(R"({"x": 1})")), IoError);
    CHECK_THROWS_AS(io::parse_vector(json::parse("[]")), ShapeError);
    json v = json::parse("[1, 2]");
    v[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(io::parse_vector(v), NonFiniteInput);
}

TEST_CASE("factor JSON round trip is bitwise") {
    const Toeplitz t = testutil::random_toeplitz(6, 6, 0.0, 1.0, 321);
    const RFactor rf = factor(t);
    const json j = json::parse(io::rfactor_to_json(rf, true).dump());
    CHECK(j.contains("tally"));
    CHECK(j["tally"].get<std::uint64_t>() == rf.tally.mults);
    const RFactor back = io::rfactor_from_json(j);
    REQUIRE(back.n == rf.n);
    REQUIRE(back.rows.size() == rf.rows.size());
    for (std::size_t i = 0; i < rf.rows.size(); ++i) {
        REQUIRE(back.rows[i].size() == rf.rows[i].size());
        for (std::size_t k = 0; k < rf.rows[i].size(); ++k) {
            CHECK(back.rows[i][k] == rf.rows[i][k]);
        }
    }
    CHECK_FALSE(json::parse(io::rfactor_to_json(rf, false).dump()).contains("tally"));
}

TEST_CASE("factor JSON readers reject inconsistent payloads") {
    const Toeplitz t = testutil::random_toeplitz(4, 4, 0.0, 1.0, 5);
    json j = json::parse(io::rfactor_to_json(factor(t)).dump());
    json short_row = j;
    short_row["rows"][1].erase(0);
    CHECK_THROWS_AS(io::rfactor_from_json(short_row), ShapeError);
    json no_n = j;
    no_n.erase("n");
    CHECK_THROWS_AS(io::rfactor_from_json(no_n), IoError);
}

TEST_CASE("rotation log survives serialization and still regenerates bitwise") {
    const Toeplitz t = testutil::random_toeplitz(8, 8, 0.0, 1.0, 404);
    const RFactor rf = factor(t);
    const json j = json::parse(io::rotation_log_to_json(rf.log).dump());
    const RotationLog back = io::rotation_log_from_json(j);
    REQUIRE(back.n == rf.log.n);
    REQUIRE(back.rotations.size() == rf.log.rotations.size());
    for (std::size_t i = 0; i < back.rotations.size(); ++i) {
        CHECK(back.rotations[i].kind == rf.log.rotations[i].kind);
        CHECK(back.rotations[i].c == rf.log.rotations[i].c);
        CHECK(back.rotations[i].s == rf.log.rotations[i].s);
    }
    // The carried vectors after the final step are exact zeros; the reader
    // restores them implicitly, so the reverse sweeps must agree bitwise.
    std::vector<std::vector<double>> a(rf.n), b(rf.n);
    regenerate_reverse(rf.log, [&](int k, std::span<const double> row) {
        a[k - 1].assign(row.begin(), row.end());
    });
    regenerate_reverse(back, [&](int k, std::span<const double> row) {
        b[k - 1].assign(row.begin(), row.end());
    });
    CHECK(a == b);
}

TEST_CASE("rotation log readers reject inconsistent payloads") {
    const Toeplitz t = testutil::random_toeplitz(4, 4, 0.0, 1.0, 6);
    json j = json::parse(io::rotation_log_to_json(factor(t).log).dump());
    json missing = j;
    missing["rotations"].erase(0);
    CHECK_THROWS_AS(io::rotation_log_from_json(missing), ShapeError);
    json bad_kind = j;
    bad_kind["rotations"][0][2] = "twist";
    CHECK_THROWS_AS(io::rotation_log_from_json(bad_kind), IoError);
}

TEST_CASE("cli factor emits the library's rows bitwise") {
    const CliResult r = run_cli("factor --input " + fixture("tridiag3.json"));
    REQUIRE(r.code == 0);
    const RFactor got = io::rfactor_from_json(json::parse(r.out));
    const RFactor want = factor(build_toeplitz({2, 1, 0}, {2, 1, 0}));
    REQUIRE(got.n == 3);
    for (int i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < want.rows[i].size(); ++k) {
            CHECK(got.rows[i][k] == want.rows[i][k]);
        }
    }
}

TEST_CASE("cli factor writes files and reports the tally") {
    const CliResult r = run_cli("factor --input " + fixture("tridiag3.json") +
                                " --out cli_factor.json --tally --rotlog cli_rotlog.json");
    REQUIRE(r.code == 0);
    CHECK(r.out == "tally 47\n");
    const json jf = json::parse(slurp("cli_factor.json"));
    CHECK(jf["tally"].get<std::uint64_t>() == 47);
    CHECK(jf["n"] == 3);
    const RotationLog log = io::rotation_log_from_json(json::parse(slurp("cli_rotlog.json")));
    CHECK(log.n == 3);
    CHECK(log.rotations.size() == 6);
}

TEST_CASE("cli solve returns the right-hand side for the identity") {
    const CliResult r = run_cli("solve --input " + fixture("identity4.json") +
                                " --rhs " + fixture("b4.json"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["x"].get<std::vector<double>>() ==
          std::vector<double>{2.5, -1.0, 0.5, 4.0});
    CHECK(j["residual"] == 0.0);
}

TEST_CASE("cli solve attaches metrics when a truth vector is supplied") {
    const CliResult r =
        run_cli("solve --input " + fixture("tridiag3.json") + " --rhs " +
                fixture("b3.json") + " --metrics --truth " + fixture("x3.json"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.contains("cond1"));
    REQUIRE(j.contains("metrics"));
    CHECK(j["metrics"].contains("e1"));
    CHECK(j["metrics"].contains("e2"));
    CHECK(j["metrics"].contains("e3"));
    CHECK(j["metrics"]["e2"].get<double>() <= 10.0);
}

TEST_CASE("cli solve passes its own invariant check") {
    const CliResult r = run_cli("solve --input " + fixture("tridiag3.json") +
                                " --rhs " + fixture("b3.json") +
                                " --self-check --storage rotreverse --refine 1");
    CHECK(r.code == 0);
}

TEST_CASE("cli routes hankel systems through the reversal adapter") {
    const CliResult r = run_cli("solve --input " + fixture("hankel2.json") +
                                " --rhs " + fixture("hb2.json") + " --hankel");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const std::vector<double> x = j["x"].get<std::vector<double>>();
    REQUIRE(x.size() == 2);
    CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli exit codes distinguish usage, io, and numerical failures") {
    CHECK(run_cli("solve --input missing.json --rhs also_missing.json").code == 1);
    CHECK(run_cli("factor --input " + fixture("malformed.json")).code == 1);
    CHECK(run_cli("factor --input " + fixture("bad_corner.json")).code == 1);
    CHECK(run_cli("solve --input " + fixture("tridiag3.json") + " --rhs " +
                  fixture("b3.json") + " --hankel")
              .code == 1);
    CHECK(run_cli("factor").code == 1);           // missing required --input
    CHECK(run_cli("").code == 1);                 // missing subcommand
    CHECK(run_cli("--help").code == 0);
    // Singular normal matrix: numerical breakdown, not a usage error...
    CHECK(run_cli("solve --input " + fixture("ones5.json") + " --rhs " +
                  fixture("bones5.json"))
              .code == 2);
    // ...and a ridge term restores solvability.
    CHECK(run_cli("solve --input " + fixture("ones5.json") + " --rhs " +
                  fixture("bones5.json") + " --alpha 1")
              .code == 0);
    // Rectangular input needs lsq, not solve.
    const Toeplitz rect = testutil::random_toeplitz(6, 3, 0.0, 1.0, 77);
    write_text("cli_rect.json", matrix_json(rect).dump());
    write_text("cli_rect_b.json", json(std::vector<double>(6, 1.0)).dump());
    CHECK(run_cli("solve --input cli_rect.json --rhs cli_rect_b.json").code == 1);
    CHECK(run_cli("lsq --input cli_rect.json --rhs cli_rect_b.json").code == 0);
}

TEST_CASE("cli bench is byte-reproducible and speaks both formats") {
    const std::string args = "bench --n 8,12 --mu-sigma 0,10 --count 3 --seed 7";
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("n,mu_sigma,seed,cond1,e1,e2,e3,e3c,tally,status\n", 0) == 0);
    // 2 sizes x 2 ratios x (3 instances + median) + header.
    int lines = 0;
    for (char c : a.out) lines += (c == '\n');
    CHECK(lines == 17);

    const CliResult j = run_cli(args + " --format json");
    REQUIRE(j.code == 0);
    const json doc = json::parse(j.out);
    CHECK(doc["rows"].size() == 16);
    CHECK(run_cli("bench --n 8 --format yaml").code == 1);
    CHECK(run_cli("bench --n 8 --family bogus").code == 1);
}

TEST_CASE("cli factor stays within the multiplication budget at n = 200") {
    const Toeplitz t = testutil::random_toeplitz(200, 200, 0.0, 1.0, 2024);
    write_text("cli_n200.json", matrix_json(t).dump());
    const CliResult r =
        run_cli("factor --input cli_n200.json --out cli_n200_factor.json --tally");
    REQUIRE(r.code == 0);
    const json jf = json::parse(slurp("cli_n200_factor.json"));
    const std::uint64_t tally = jf["tally"].get<std::uint64_t>();
    CHECK(tally == 7 * 200 * 200 - 5 * 200 - 1);
    CHECK(tally <= 7 * 200 * 200 + 200 * 200);
}

}  // TEST_SUITE
