#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

// Drives the installed binary end to end through popen. Slow paths use
// reduced quadrature orders; correctness of the numbers themselves is the
// unit suites' job, here we pin the surface: output shape and exit codes.

namespace {

#ifndef HACF_CLI_PATH
#error "HACF_CLI_PATH must point at the CLI binary"
#endif

struct RunResult {
    int exit_code = -1;
    std::string out;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(HACF_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const char* kFastOrders = "--n-phi 8 --n-theta 16 --n-r 8";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("harmonic verdicts and exit codes") {
    RunResult yes = run_cli("harmonic --expr \"x - 3*y*t - 2*x^3\"");
    CHECK(yes.exit_code == 0);
    CHECK(yes.out == "H1-harmonic: yes\n");

    RunResult no = run_cli("harmonic --expr \"x^2\"");
    CHECK(no.exit_code == 1);
    CHECK(no.out == "H1-harmonic: no; residual = 2\n");

    RunResult basis = run_cli("harmonic --basis 2");
    CHECK(basis.exit_code == 0);
    CHECK(basis.out == "t\nx*y\nx^2 - y^2\n");

    RunResult none = run_cli("harmonic");
    CHECK(none.exit_code == 2);
}

TEST_CASE("parse errors exit 2 and point at the offset") {
    RunResult res = run_cli("harmonic --expr \"x + \"");
    CHECK(res.exit_code == 2);
    CHECK(contains(res.out, "offset 4"));

    RunResult bad = run_cli("functional --kind I --expr \"x +* y\"");
    CHECK(bad.exit_code == 2);
    CHECK(contains(bad.out, "parse error"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("").exit_code == 2);                       // missing subcommand
    CHECK(run_cli("frobnicate").exit_code == 2);             // unknown subcommand
    CHECK(run_cli("functional --kind I").exit_code == 2);    // missing --expr
    CHECK(run_cli("functional --kind Q --expr x").exit_code == 2);
    CHECK(run_cli("functional --expr x --r-count 2").exit_code == 2);
    CHECK(run_cli("functional --expr x --r-min 0.5 --r-max 0.1").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("numeric overflow exits 3") {
    std::string big(200, '0');
    RunResult res = run_cli("functional --kind I --expr \"1" + big +
                            "*x^4\" --r-min 1 --r-max 3 --r-count 3 " + kFastOrders);
    CHECK(res.exit_code == 3);
    CHECK(contains(res.out, "non-finite"));
}

TEST_CASE("functional CSV shape") {
    RunResult res = run_cli("functional --kind I --expr x --r-min 0.1 --r-max 0.4 --r-count 4 " +
                            std::string(kFastOrders));
    CHECK(res.exit_code == 0);
    CHECK(contains(res.out, "r,value\n"));
    CHECK(contains(res.out, "# orders: n_phi=8 n_theta=16 n_r=8"));
    CHECK(contains(res.out, "9.869604401089"));  // pi^2 rows
    CHECK(contains(res.out, "# verdict=Constant"));

    RunResult table = run_cli(
        "functional --kind I --expr x --r-min 0.1 --r-max 0.4 --r-count 4 --format table " +
        std::string(kFastOrders));
    CHECK(table.exit_code == 0);
    CHECK(!contains(table.out, "r,value"));
    CHECK(contains(table.out, "verdict=Constant"));
}

TEST_CASE("output is byte-identical across runs") {
    std::string cmd = "functional --kind J --expr \"x - 3*y*t - 2*x^3\" --r-min 0.05 "
                      "--r-max 0.3 --r-count 5 " +
                      std::string(kFastOrders);
    RunResult a = run_cli(cmd), b = run_cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("coeffs rows") {
    RunResult res = run_cli("coeffs --expr \"x - 3*y*t - 2*x^3\"");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.out, "kind,k,h,value\n"));
    CHECK(contains(res.out, "diag,1,,9.869604401089"));
    CHECK(contains(res.out, "diag,3,,81.4242363089"));
    CHECK(contains(res.out, "cross,3,1,-18.8495559215"));

    RunResult both = run_cli("coeffs --expr \"x + x^2 - y^2\" --setting both");
    CHECK(both.exit_code == 0);
    CHECK(contains(both.out, "euclid_diag,1,,6.283185307179"));
}

TEST_CASE("counterexample pipeline at reduced orders") {
    RunResult res = run_cli("counterexample --n-phi 16 --n-theta 32 --n-r 16 --r-count 6 "
                            "--alpha 2 1 --euclid-baseline");
    CHECK(res.exit_code == 0);
    CHECK(contains(res.out, "check harmonic_exact"));
    CHECK(contains(res.out, "check I_decreasing"));
    CHECK(contains(res.out, "check J_decreasing"));
    CHECK(contains(res.out, "check generalized_identity_rel"));
    CHECK(contains(res.out, "check euclid_increasing"));
    CHECK(!contains(res.out, "FAIL"));
    CHECK(contains(res.out, "counterexample: PASS"));
}

TEST_CASE("csv lands in --out") {
    std::string path = "/tmp/hacf_cli_test_out.csv";
    std::remove(path.c_str());
    RunResult res = run_cli("functional --kind I --expr x --r-min 0.1 --r-max 0.4 --r-count 4 "
                            "--out " + path + " " + kFastOrders);
    CHECK(res.exit_code == 0);
    CHECK(res.out.empty());  // everything went to the file

    FILE* f = fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string content;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) content.append(buf.data(), n);
    fclose(f);
    CHECK(contains(content, "r,value\n"));
    CHECK(contains(content, "# verdict=Constant"));
    std::remove(path.c_str());
}

TEST_SUITE_END();
