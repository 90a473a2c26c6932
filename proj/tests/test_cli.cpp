#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef _WIN32
#include <unistd.h>
#endif

#ifndef ISAC_CLI_PATH
#error "ISAC_CLI_PATH must point at the built CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("isac_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

/** Run the CLI with `args`, capturing exit code, stdout, and stderr. */
RunResult run_cli(const std::string& args) {
    static int serial = 0;
    fs::path out = scratch_dir() / ("out" + std::to_string(serial) + ".txt");
    fs::path err = scratch_dir() / ("err" + std::to_string(serial) + ".txt");
    ++serial;
    std::string cmd = std::string(ISAC_CLI_PATH) + " " + args + " > " +
                      out.string() + " 2> " + err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
#ifdef _WIN32
    r.exit_code = status;
#else
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string spec_file() {
    static const std::string path = [] {
        fs::path p = scratch_dir() / "bin.json";
        RunResult r = run_cli(
            "make-binary --lambda 0.3 --alpha 0.7 --p 0.5 --q 0.5 --out " +
            p.string());
        REQUIRE(r.exit_code == 0);
        return p.string();
    }();
    return path;
}

} // namespace

TEST_CASE("check-degraded reports the binary example") {
    RunResult r = run_cli("check-degraded " + spec_file());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("physically_degraded: yes") != std::string::npos);
    CHECK(r.out.find("stochastically_degraded: yes") != std::string::npos);
    CHECK(r.out.find("reversely_degraded: no") != std::string::npos);
    CHECK(r.out.find("witness") != std::string::npos);

    RunResult j = run_cli("check-degraded " + spec_file() + " --json");
    CHECK(j.exit_code == 0);
    CHECK(j.out.find("\"stochastically_degraded\": true") !=
          std::string::npos);
}

TEST_CASE("strict mode works without an input law") {
    fs::path stripped = scratch_dir() / "nolaw.json";
    {
        std::ifstream in(spec_file());
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        auto pos = text.find("  \"input_law\"");
        REQUIRE(pos != std::string::npos);
        auto end = text.find("  \"binary_params\"");
        REQUIRE(end != std::string::npos);
        std::ofstream(stripped) << text.substr(0, pos) + text.substr(end);
    }
    RunResult no_strict = run_cli("check-degraded " + stripped.string());
    CHECK(no_strict.exit_code == 1);  // no law present, strict not requested
    RunResult strict =
        run_cli("check-degraded " + stripped.string() + " --strict");
    CHECK(strict.exit_code == 0);
    CHECK(strict.out.find("mode: strict-uniform") != std::string::npos);
}

TEST_CASE("estimators prints both tables with their distortions") {
    RunResult r = run_cli("estimators " + spec_file());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("estimator for S1") != std::string::npos);
    CHECK(r.out.find("estimator for S2") != std::string::npos);
    CHECK(r.out.find("1.50000000000e-01") != std::string::npos);
    CHECK(r.out.find("1.75000000000e-01") != std::string::npos);
}

TEST_CASE("region writes the requested CSV") {
    fs::path csv = scratch_dir() / "region3.csv";
    RunResult r = run_cli("region " + spec_file() +
                          " --theorem 3 --grid 5 --samples 3 --seed 7 "
                          "--out " +
                          csv.string());
    CHECK(r.exit_code == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("p,q,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 25 + 3);

    // Theorem 1 on the same file sweeps auxiliary laws instead.
    fs::path csv1 = scratch_dir() / "region1.csv";
    RunResult r1 = run_cli("region " + spec_file() +
                           " --theorem 1 --grid 1 --samples 2 --seed 3 "
                           "--out " +
                           csv1.string());
    CHECK(r1.exit_code == 0);
    CHECK(slurp(csv1).rfind("law0,", 0) == 0);
}

TEST_CASE("lemma1 emits grid CSVs of the documented shape") {
    RunResult r = run_cli("lemma1 --lambda 0.3 --alpha 0.7 --grid 11");
    CHECK(r.exit_code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 122);  // 121 rows
    CHECK(r.out.rfind("p,q,r_closed,r_oracle,d1,d2,max_term_gap", 0) == 0);

    RunResult pt = run_cli(
        "lemma1 --lambda 0.3 --alpha 0.7 --p 0.5 --q 0.5");
    CHECK(pt.exit_code == 0);
    CHECK(pt.out.find("4.30907765238e-01") != std::string::npos);

    RunResult both = run_cli(
        "lemma1 --lambda 0.3 --alpha 0.7 --p 0.5 --q 0.5 --grid 5");
    CHECK(both.exit_code == 1);  // modes are mutually exclusive
    RunResult neither = run_cli("lemma1 --lambda 0.3 --alpha 0.7");
    CHECK(neither.exit_code == 1);
}

TEST_CASE("simulate reports distortions near the analytic floors") {
    RunResult r = run_cli("simulate " + spec_file() + " -n 200000 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("analytic_d1: 1.50000000000e-01") != std::string::npos);
    CHECK(r.out.find("empirical_d1:") != std::string::npos);
    CHECK(r.out.find("l1_gap:") != std::string::npos);
}

TEST_CASE("every subcommand is byte-deterministic across reruns") {
    const std::string csv_a = (scratch_dir() / "det_a.csv").string();
    const std::string csv_b = (scratch_dir() / "det_b.csv").string();
    const std::vector<std::string> cmds = {
        "check-degraded " + spec_file(),
        "check-degraded " + spec_file() + " --json",
        "estimators " + spec_file(),
        "estimators " + spec_file() + " --json",
        "lemma1 --lambda 0.3 --alpha 0.7 --grid 5",
        "simulate " + spec_file() + " -n 5000 --seed 11",
    };
    for (const std::string& cmd : cmds) {
        RunResult a = run_cli(cmd);
        RunResult b = run_cli(cmd);
        INFO(cmd);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
    RunResult a = run_cli("region " + spec_file() +
                          " --theorem 2 --grid 1 --samples 3 --seed 9 "
                          "--out " +
                          csv_a);
    RunResult b = run_cli("region " + spec_file() +
                          " --theorem 2 --grid 1 --samples 3 --seed 9 "
                          "--out " +
                          csv_b);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp(csv_a) == slurp(csv_b));
}

TEST_CASE("error paths use the documented exit codes") {
    RunResult missing = run_cli("check-degraded /no/such/file.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("I/O error") != std::string::npos);

    // Corrupt a kernel row: domain error, exit 1, row named.
    fs::path bad = scratch_dir() / "bad.json";
    {
        std::string text = slurp(spec_file());
        auto pos = text.find("0.3");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 3, "0.2");  // state kernel row now sums to 0.9
        std::ofstream(bad) << text;
    }
    RunResult malformed = run_cli("check-degraded " + bad.string());
    CHECK(malformed.exit_code == 1);
    CHECK(malformed.err.find("row 0") != std::string::npos);

    RunResult badflag = run_cli("region " + spec_file() +
                                " --theorem 9 --out /tmp/x.csv");
    CHECK(badflag.exit_code == 1);
    RunResult nosub = run_cli("");
    CHECK(nosub.exit_code == 1);
}

TEST_CASE("help pages name their modes and stay on exit code 0") {
    RunResult top = run_cli("--help");
    CHECK(top.exit_code == 0);
    CHECK(top.out.find("check-degraded") != std::string::npos);
    CHECK(top.out.find("lemma1") != std::string::npos);

    RunResult rg = run_cli("region --help");
    CHECK(rg.exit_code == 0);
    CHECK(rg.out.find("Theorem 1") != std::string::npos);
    CHECK(rg.out.find("Theorem 4") != std::string::npos);

    RunResult es = run_cli("estimators --help");
    CHECK(es.exit_code == 0);
    CHECK(es.out.find("argmin") != std::string::npos);

    RunResult cd = run_cli("check-degraded --help");
    CHECK(cd.exit_code == 0);
    CHECK(cd.out.find("physically degraded") != std::string::npos);

    RunResult l1 = run_cli("lemma1 --help");
    CHECK(l1.exit_code == 0);
    CHECK(l1.out.find("Y1=S1*X") != std::string::npos);

    RunResult sm = run_cli("simulate --help");
    CHECK(sm.exit_code == 0);
    CHECK(sm.out.find("distortions") != std::string::npos);
}

TEST_CASE("make-binary emits a loadable spec with binary parameters") {
    fs::path p = scratch_dir() / "mk.json";
    RunResult r = run_cli(
        "make-binary --lambda 0.2 --alpha 0.9 --p 0.1 --q 0.8 --out " +
        p.string());
    CHECK(r.exit_code == 0);
    std::string text = slurp(p);
    CHECK(text.find("\"alphabets\"") != std::string::npos);
    CHECK(text.find("\"binary_params\"") != std::string::npos);
    RunResult use = run_cli("estimators " + p.string());
    CHECK(use.exit_code == 0);
    RunResult bad = run_cli(
        "make-binary --lambda 1.2 --alpha 0.9 --p 0.1 --q 0.8 --out " +
        p.string());
    CHECK(bad.exit_code == 1);
}
