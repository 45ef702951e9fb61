#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "bmkit/scheme.hpp"

namespace {

struct CliResult {
    int status;
    std::string out;
};

CliResult run_cli(const std::string &args) {
    std::string cmd = std::string(BMKIT_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    CliResult res{-1, {}};
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) {
        res.out += buf.data();
    }
    int rc = pclose(pipe);
    res.status = WEXITSTATUS(rc);
    return res;
}

}  // namespace

TEST_CASE("cli bound") {
    CliResult r = run_cli("bound --n1 4 --n2 4 --pb 1/2");
    CHECK(r.status == 0);
    CHECK(r.out == "15/16\n");
    CHECK(run_cli("bound --n1 5 --n2 9 --pb 3/4").out == "1023/1024\n");
    CHECK(run_cli("bound --n1 3 --n2 9 --pb 1/1").out == "1/1\n");
    CHECK(run_cli("bound --n1 0 --n2 4 --pb 1/2").status == 2);
    CHECK(run_cli("bound --n1 4 --n2 4 --pb 0.5").status == 2);
}

TEST_CASE("cli verify") {
    CliResult steane = run_cli("verify --code steane --scheme optimal --pb 1/2");
    CHECK(steane.status == 0);
    CHECK(steane.out.find("condition 5: pass") != std::string::npos);
    CHECK(steane.out.find("127/128") != std::string::npos);
    CHECK(run_cli("verify --code five-qubit --scheme optimal").status == 0);
    CHECK(run_cli("verify --code rotated --r 3 --m 4 --scheme optimal").status == 0);
    CHECK(run_cli("verify --code nonsense").status == 2);
}

TEST_CASE("cli verify rejects a mutated scheme file with a witness") {
    bmkit::BuiltScheme b = bmkit::build_optimal_five_qubit();
    b.scheme.bases[0] = bmkit::PauliLetter::Z;
    std::string path = "/tmp/bmkit_mutated_scheme.txt";
    std::ofstream(path) << b.scheme.serialize();
    CliResult r = run_cli("verify --scheme-file " + path);
    CHECK(r.status == 1);
    CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("cli exact") {
    CliResult r = run_cli("exact --code rotated --r 5 --m 5 --scheme static-simple --pb 1/2 --workers 2");
    CHECK(r.status == 0);
    CHECK(r.out.find("6625/8192") != std::string::npos);
    CliResult qpc = run_cli("exact --code qpc --r 2 --m 2 --scheme optimal --pb 1/2 --format csv");
    CHECK(qpc.status == 0);
    CHECK(qpc.out.find("15,16") != std::string::npos);
    CliResult json = run_cli("exact --code steane --scheme optimal --pb 1/2 --format json");
    CHECK(json.status == 0);
    CHECK(json.out.find("\"exact_num\": \"127\"") != std::string::npos);
    CliResult ledger = run_cli("exact --code qpc --r 1 --m 2 --scheme optimal --pb 1/2 --ledger");
    CHECK(ledger.status == 0);
    CHECK(ledger.out.find("->") != std::string::npos);
    // The cap trips with advice on huge schemes.
    CliResult cap = run_cli("exact --code rotated --r 6 --m 6 --scheme static-simple --pb 1/3");
    CHECK(cap.status == 3);
}

TEST_CASE("cli mc") {
    CliResult r = run_cli("mc --code tree --branching 2,2 --scheme optimal --trials 20000 --seed 7 --pb 1/2");
    CHECK(r.status == 0);
    CHECK(r.out.find("trials 20000") != std::string::npos);
    // Identical seeds and configs give identical output regardless of workers.
    CliResult a = run_cli("mc --code five-qubit --scheme optimal --trials 5000 --seed 3 --pb 3/4 --format csv");
    CliResult b = run_cli("mc --code five-qubit --scheme optimal --trials 5000 --seed 3 --pb 3/4 --format csv --workers 3");
    auto strip_wall = [](std::string s) {
        auto pos = s.rfind(',');
        return s.substr(0, pos);
    };
    CHECK(a.status == 0);
    CHECK(strip_wall(a.out) == strip_wall(b.out));
}

TEST_CASE("cli physbm") {
    CliResult r = run_cli("physbm");
    CHECK(r.status == 0);
    CHECK(r.out.find("P_B = 1/2") != std::string::npos);
    CHECK(r.out.find("|1100>") != std::string::npos);
    CHECK(r.out.find("Psi+") != std::string::npos);
}

TEST_CASE("cli compare-rotated") {
    CliResult r = run_cli("compare-rotated --dmax 3 --workers 2 --format csv");
    CHECK(r.status == 0);
    // d = 2 row: feedforward bound 15/16.
    CHECK(r.out.find("2,") != std::string::npos);
    CHECK(r.out.find("15,16") != std::string::npos);
    // d = 5 requires --big.
    CHECK(run_cli("compare-rotated --dmax 5").status == 3);
}

TEST_CASE("cli round-trips scheme and code files") {
    bmkit::StabilizerCode code = bmkit::rotated_surface(3, 3);
    std::string code_path = "/tmp/bmkit_code.txt";
    std::ofstream(code_path) << code.serialize();
    bmkit::BuiltScheme b = bmkit::build_optimal_rotated_surface(3, 3);
    std::string scheme_path = "/tmp/bmkit_scheme.txt";
    std::ofstream(scheme_path) << b.scheme.serialize();
    CliResult r = run_cli("verify --scheme-file " + scheme_path);
    CHECK(r.status == 0);
    CliResult e = run_cli("exact --scheme-file " + scheme_path + " --pb 1/2");
    CHECK(e.status == 0);
    CHECK(e.out.find("511/512") != std::string::npos);
}
