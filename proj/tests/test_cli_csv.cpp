#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gsieve/cli_support.hpp"
#include "gsieve/csv.hpp"

using namespace gsieve;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(static_cast<bool>(f));
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(GSIEVE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("parse_sweep forms") {
    CHECK(parse_sweep("8") == std::vector<std::int64_t>{8});
    CHECK(parse_sweep("4:32:*2") == std::vector<std::int64_t>{4, 8, 16, 32});
    CHECK(parse_sweep("2:10:+3") == std::vector<std::int64_t>{2, 5, 8});
    CHECK(parse_sweep("5:5:+1") == std::vector<std::int64_t>{5});
    CHECK_THROWS_AS(parse_sweep("4:32"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("4:32:%2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("4:32:*1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_sweep("10:4:+2"), std::invalid_argument);  // empty
}

TEST_CASE("parse_n_rule forms") {
    NRule plain = parse_n_rule("100");
    CHECK(!plain.is_rule);
    CHECK(apply_n_rule(plain, 999) == 100);

    NRule rule = parse_n_rule("pow:1.5,div:16");
    CHECK(rule.is_rule);
    CHECK(apply_n_rule(rule, 256) == 256);   // 256^1.5/16 = 4096/16
    CHECK(apply_n_rule(rule, 1024) == 2048);

    CHECK_THROWS_AS(parse_n_rule("pow:1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_rule("pow:1.5,div:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_rule("12x"), std::invalid_argument);
}

TEST_CASE("parse enums and bound lists") {
    CHECK(parse_set_kind("squares") == SetKind::squares);
    CHECK(parse_seq_kind("spike") == SeqKind::spike);
    auto bs = parse_bounds_list("thm3,huxley");
    REQUIRE(bs.size() == 2);
    CHECK(bs[0] == BoundName::thm3);
    CHECK(bs[1] == BoundName::huxley);
    CHECK_THROWS_AS(parse_set_kind("cubes"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bounds_list("huxley,,thm3"), std::invalid_argument);
}

TEST_CASE("render_csv format contract") {
    CHECK(render_csv({}) == "set,Q,N,seq,seed,nodes,Z,lhs,bound,rhs,ratio,seconds\n");

    ExperimentConfig cfg;
    cfg.set = SetKind::all;
    cfg.Q = 4;
    cfg.N = 25;
    cfg.seq = SeqKind::spike;
    cfg.seed = 0;
    cfg.bounds.push_back({BoundName::huxley});
    cfg.bounds.push_back({BoundName::trivial});
    SieveReport rep = run_experiment(cfg);
    std::string csv = render_csv(to_records({rep}, true));
    CHECK(count_lines(csv) == 3);  // header + one row per bound
    CHECK(csv.back() == '\n');
    CHECK(csv.find('\r') == std::string::npos);
    // Rows sorted by bound name: huxley before trivial.
    CHECK(csv.find(",huxley,") < csv.find(",trivial,"));

    // 17-significant-digit round trip for the floating fields.
    CHECK(format_sig17(1.0 / 3.0) == "0.33333333333333331");
    double v = 12345.678901234567;
    CHECK(std::stod(format_sig17(v)) == v);

    // Deterministic: a rerun of the same config renders identical bytes.
    std::string again = render_csv(to_records({run_experiment(cfg)}, true));
    CHECK(csv == again);

    // Sorting across reports: set, then Q, then N.
    ExperimentConfig c2 = cfg;
    c2.Q = 2;
    SieveReport rep2 = run_experiment(c2);
    std::string multi = render_csv(to_records({rep, rep2}, true));
    CHECK(multi.find("all,2,25") < multi.find("all,4,25"));
}

TEST_CASE("cli end-to-end: verify and scan") {
    std::string out1 = "/tmp/gsieve_cli_t1.csv";
    CHECK(run_cli("verify --set all --Q 4 --N 25 --seq spike --seed 0 "
                  "--bounds huxley --output " + out1) == 0);
    std::string csv = slurp(out1);
    CHECK(csv.rfind("set,Q,N,seq,seed,nodes,Z,lhs,bound,rhs,ratio,seconds\n", 0) == 0);
    CHECK(count_lines(csv) == 2);

    // Identical rerun emits byte-identical CSV (seconds zeroed by default).
    std::string out2 = "/tmp/gsieve_cli_t2.csv";
    CHECK(run_cli("verify --set all --Q 4 --N 25 --seq spike --seed 0 "
                  "--bounds huxley --output " + out2) == 0);
    CHECK(slurp(out2) == csv);

    std::string out3 = "/tmp/gsieve_cli_t3.csv";
    CHECK(run_cli("scan --set squares --Q 2:8:*2 --N 64 --bounds thm3,huxley "
                  "--threads 2 --output " + out3) == 0);
    std::string scan_csv = slurp(out3);
    CHECK(count_lines(scan_csv) == 1 + 3 * 2);  // 3 Q values x 2 bounds
    CHECK(scan_csv.find("squares,2,64") < scan_csv.find("squares,4,64"));

    std::string out4 = "/tmp/gsieve_cli_t4.csv";
    CHECK(run_cli("verify --set primes --Q 256 --N-rule pow:1.5,div:16 "
                  "--seq random_phase --seed 7 --bounds thm4 --output " + out4) == 0);
    CHECK(slurp(out4).find("primes,256,256,random_phase,7,") != std::string::npos);

    std::remove(out1.c_str());
    std::remove(out2.c_str());
    std::remove(out3.c_str());
    std::remove(out4.c_str());
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("verify --N 25") == 2);                      // missing --Q
    CHECK(run_cli("verify --Q 4 --N 25 --frobnicate") == 2);   // unknown flag
    CHECK(run_cli("verify --Q 4:32 --N 25") == 2);             // malformed sweep
    CHECK(run_cli("verify --Q 4") == 2);                       // neither N nor rule
    CHECK(run_cli("verify --Q 4 --N 25 --output /nonexistent_dir/x.csv") == 3);
    CHECK(run_cli("verify --Q 4000000 --N 25") == 4);          // element budget
}

TEST_CASE("cli extremal, counts, approx") {
    CHECK(run_cli("counts --set all --Q 8") == 0);
    CHECK(run_cli("extremal --set all --Q 4 --N 16 --samples 1") == 0);
    CHECK(run_cli("approx --re 0.5 --im 0.25 --tau 4") == 0);
}
