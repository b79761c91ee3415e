#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exitCode = -1;
    std::string out;
};

std::string binPath() {
    const char* p = std::getenv("MATHISSON_TOP_BIN");
    REQUIRE(p != nullptr);
    return p;
}

std::string srcPath() {
    const char* p = std::getenv("MATHISSON_TOP_SRC");
    REQUIRE(p != nullptr);
    return p;
}

// runs through /bin/sh; stderr folded into stdout
RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratchDir() {
    fs::path d = fs::temp_directory_path() / "mtop_cli_test";
    fs::create_directories(d);
    return d;
}

void writeText(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    REQUIRE(f.good());
    f << text;
}

std::string readText(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const std::string kBaseConfig =
    "x = 0, 0, 0, 0\n"
    "u = 1.25, 0.25, -0.5, 0.25\n"
    "udot = 0, 0, 0.1, 0.05\n"
    "s = 0.2, 1, 0, 0\n"
    "m = 1.0\n"
    "m0 = 1.0\n"
    "A = 0.5\n"
    "signature = +1, -1, -1, -1\n"
    "method = rk45\n"
    "h0 = 1e-3\n"
    "tol_abs = 1e-10\n"
    "tol_rel = 1e-10\n"
    "tau_end = 2.0\n"
    "max_steps = 100000\n"
    "out = cli_test_out.csv\n";

}  // namespace

TEST_CASE("simulate reproduces the checked-in golden csv byte for byte") {
    fs::path out = scratchDir() / "golden_regen.csv";
    RunResult r = run(binPath() + " simulate " + srcPath() + "/tests/data/golden.cfg --out " +
                      out.string());
    CHECK(r.exitCode == 0);
    CHECK(contains(r.out, "samples:"));
    CHECK(readText(out) == readText(fs::path(srcPath()) / "tests" / "data" / "golden.csv"));
}

TEST_CASE("simulate with zero acceleration reports an exactly zero residual") {
    fs::path cfg = scratchDir() / "straight.cfg";
    fs::path out = scratchDir() / "straight.csv";
    std::string text = kBaseConfig;
    text.replace(text.find("udot = 0, 0, 0.1, 0.05"), 22, "udot = 0, 0, 0, 0");
    writeText(cfg, text);
    RunResult r = run(binPath() + " simulate " + cfg.string() + " --out " + out.string());
    CHECK(r.exitCode == 0);
    CHECK(contains(r.out, "max_residual_norm: 0.000000e+00"));
    CHECK(contains(r.out, "first_integral_drift: 0.000000e+00"));

    // straight line: every sample row ends with a zero residual column
    std::istringstream lines(readText(out));
    std::string line;
    std::getline(lines, line);
    CHECK(contains(line, "tau,x0"));
    while (std::getline(lines, line)) {
        CHECK(line.substr(line.rfind(',') + 1) == "0");
    }
}

TEST_CASE("simulate rejects a non-positive mass with a field-level message") {
    fs::path cfg = scratchDir() / "badm.cfg";
    std::string text = kBaseConfig;
    text.replace(text.find("m = 1.0"), 7, "m = -1.0");
    writeText(cfg, text);
    RunResult r = run(binPath() + " simulate " + cfg.string());
    CHECK(r.exitCode == 1);
    CHECK(contains(r.out, "key 'm'"));
}

TEST_CASE("simulate reports the failure time when the step size collapses") {
    fs::path cfg = scratchDir() / "blowup.cfg";
    writeText(cfg,
              "x = 0, 0, 0, 0\n"
              "u = 1, 0.2, 0.1, 0\n"
              "udot = 0, 0.1, 0.3, 0.1\n"
              "s = 0, 0, 0, 1\n"
              "m = 1.0\n"
              "m0 = 1.0\n"
              "A = 0\n"
              "signature = +1, +1, +1, +1\n"
              "method = rk45\n"
              "h0 = 1e-3\n"
              "tol_abs = 1e-10\n"
              "tol_rel = 1e-10\n"
              "tau_end = 50\n"
              "max_steps = 2000000\n"
              "out = blowup.csv\n");
    RunResult r = run(binPath() + " simulate " + cfg.string());
    CHECK(r.exitCode == 2);
    CHECK(contains(r.out, "numerical failure"));
    CHECK(contains(r.out, "tau"));
}

TEST_CASE("check reports are deterministic for a fixed seed") {
    RunResult a = run(binPath() + " check zermelo --seed 11");
    RunResult b = run(binPath() + " check zermelo --seed 11");
    CHECK(a.exitCode == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "PASS"));

    RunResult bad = run(binPath() + " check nosuchsuite");
    CHECK(bad.exitCode == 1);
}

TEST_CASE("seed flag wins over the environment variable") {
    RunResult flagOnly = run(binPath() + " check zermelo --seed 7");
    RunResult envLoses = run("MATHISSON_TOP_SEED=3 " + binPath() + " check zermelo --seed 7");
    RunResult envOnly = run("MATHISSON_TOP_SEED=7 " + binPath() + " check zermelo");
    RunResult other = run(binPath() + " check zermelo --seed 3");
    CHECK(flagOnly.out == envLoses.out);
    CHECK(flagOnly.out == envOnly.out);
    CHECK(flagOnly.out != other.out);
}

TEST_CASE("convert round-trips a spin vector through the tensor form") {
    fs::path sv = scratchDir() / "sv.txt";
    fs::path st = scratchDir() / "st.txt";
    fs::path sv2 = scratchDir() / "sv2.txt";
    writeText(sv, "0, 0.9, 0.4, -0.2\n");
    RunResult r1 = run(binPath() + " convert --vector " + sv.string() + " --u 2 0 0 0 --out " +
                       st.string());
    CHECK(r1.exitCode == 0);
    RunResult r2 = run(binPath() + " convert --tensor " + st.string() + " --u 2 0 0 0 --out " +
                       sv2.string());
    CHECK(r2.exitCode == 0);

    std::istringstream ss(readText(sv2));
    double want[4] = {0.0, 0.9, 0.4, -0.2};
    for (int i = 0; i < 4; ++i) {
        std::string tok;
        std::getline(ss, tok, ',');
        CHECK(std::abs(std::stod(tok) - want[i]) <= 1e-12);
    }

    // transversality violation: s.u != 0 for u along the time axis
    fs::path bad = scratchDir() / "bad_sv.txt";
    writeText(bad, "0.5, 0.9, 0.4, -0.2\n");
    RunResult r3 = run(binPath() + " convert --vector " + bad.string() + " --u 2 0 0 0");
    CHECK(r3.exitCode == 2);
    CHECK(contains(r3.out, "constraint violation"));

    fs::path garbage = scratchDir() / "garbage.txt";
    writeText(garbage, "not numbers\n");
    RunResult r4 = run(binPath() + " convert --vector " + garbage.string() + " --u 2 0 0 0");
    CHECK(r4.exitCode == 1);
    CHECK(contains(r4.out, "parse error"));
}

TEST_CASE("json output carries the run metadata") {
    fs::path out = scratchDir() / "golden.json";
    RunResult r = run(binPath() + " simulate " + srcPath() +
                      "/tests/data/golden.cfg --format json --out " + out.string());
    CHECK(r.exitCode == 0);
    std::string text = readText(out);
    CHECK(text.front() == '{');
    CHECK(contains(text, "\"metadata\""));
    CHECK(contains(text, "\"version\""));
    CHECK(contains(text, "\"samples\""));
    CHECK(contains(text, "\"first_integral\""));
}

TEST_CASE("spin projection onto the transversality surface is logged") {
    fs::path cfg = scratchDir() / "proj.cfg";
    std::string text = kBaseConfig;
    text.replace(text.find("s = 0.2, 1, 0, 0"), 16, "s = 0.3, 0.9, 0.4, -0.2");
    text += "pirani_project = true\npirani_enforce = true\n";
    writeText(cfg, text);
    fs::path out = scratchDir() / "proj.csv";
    RunResult r = run(binPath() + " simulate " + cfg.string() + " --out " + out.string());
    CHECK(r.exitCode == 0);
    CHECK(contains(r.out, "projected spin onto s.u = 0"));

    // without the projection the enforcement gate rejects the same data
    std::string strict = text;
    strict.replace(strict.find("pirani_project = true"), 21, "pirani_project = false");
    fs::path cfg2 = scratchDir() / "proj_strict.cfg";
    writeText(cfg2, strict);
    RunResult r2 = run(binPath() + " simulate " + cfg2.string());
    CHECK(r2.exitCode == 1);
    CHECK(contains(r2.out, "key 's'"));
}
