#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

// STABLESDE_CLI_PATH is injected by the build so the suite drives the real
// binary through a shell, the same way a user would.

namespace {

namespace fs = std::filesystem;

const std::string cli = STABLESDE_CLI_PATH;

fs::path scratch_dir() {
    static const fs::path p = [] {
        const fs::path q = fs::temp_directory_path() / "stablesde_cli_tests";
        fs::remove_all(q);
        fs::create_directories(q);
        return q;
    }();
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = scratch_dir() / ("stdout." + std::to_string(counter));
    const fs::path err = scratch_dir() / ("stderr." + std::to_string(counter));
    ++counter;
    const std::string cmd = cli + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    for (std::string line; std::getline(ss, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(tok);
    return out;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("constants reports the closed form and its quadrature residual") {
    const RunResult r = run_cli("constants --d 1 --alpha 1.5");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "d,alpha,surface_area,c_d_alpha,sigma,quad_residual");
    const auto f = fields_of(rows[1]);
    REQUIRE(f.size() == 6);
    CHECK(f[0] == "1");
    CHECK(std::stod(f[2]) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::stod(f[3]) == doctest::Approx(0.29920671030107451).epsilon(1e-12));
    CHECK(std::stod(f[4]) == doctest::Approx(1.8452701486440284).epsilon(1e-12));
    CHECK(std::stod(f[5]) < 1e-8);

    CHECK(run_cli("constants --alpha 2.5").code == 1);
}

TEST_CASE("sample is reproducible and respects the pareto support") {
    const fs::path f1 = scratch_dir() / "pareto_a.csv";
    const fs::path f2 = scratch_dir() / "pareto_b.csv";
    const std::string opts = "sample --kind pareto --n 256 --d 1 --alpha 1.5 --seed 7 --out ";
    REQUIRE(run_cli(opts + f1.string()).code == 0);
    REQUIRE(run_cli(opts + f2.string()).code == 0);
    const std::string body = slurp(f1);
    CHECK(body == slurp(f2));

    const auto rows = lines_of(body);
    REQUIRE(rows.size() == 257);
    CHECK(rows[0] == "idx,x1");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = fields_of(rows[i]);
        REQUIRE(f.size() == 2);
        CHECK(std::fabs(std::stod(f[1])) > 1.0);
    }

    const std::string manifest = slurp(f1.string() + ".manifest");
    CHECK(manifest.find("[sample]") != std::string::npos);
    CHECK(manifest.find("kind = \"pareto\"") != std::string::npos);

    CHECK(run_cli("sample --kind pareto --n 0").code == 1);
    CHECK(run_cli("sample --kind stable1d --d 2 --n 4").code == 1);
    CHECK(run_cli("sample --kind wedge --n 4").code == 1);
}

TEST_CASE("coupling decay reproduces the linear-drift contraction") {
    const RunResult r =
        run_cli("coupling-decay --drift ou --eta 0.1 --steps 3 --ensemble 32 --x0 4 --y0 0 --seed 5");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "k,mean_distance");
    const double want[4] = {4.0, 3.6, 3.24, 2.916};
    for (int k = 0; k < 4; ++k) {
        const auto f = fields_of(rows[static_cast<std::size_t>(k) + 1]);
        REQUIRE(f.size() == 2);
        CHECK(f[0] == std::to_string(k));
        CHECK(std::stod(f[1]) == doctest::Approx(want[k]).epsilon(1e-12));
    }
}

TEST_CASE("check-drift verdicts map to exit codes") {
    const RunResult ok = run_cli("check-drift --drift ou");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("dissipativity: ok") != std::string::npos);

    const RunResult bad = run_cli("check-drift --drift ou-sine:0.5 --theta2 0.5");
    CHECK(bad.code == 3);
    CHECK(bad.out.find("FALSIFIED") != std::string::npos);
    CHECK(bad.err.find("falsified") != std::string::npos);
}

TEST_CASE("cf-gap writes a slope sidecar and reruns byte-identically from its manifest") {
    const fs::path f = scratch_dir() / "gap.csv";
    const RunResult r = run_cli("cf-gap --alpha 1.5 --scheme pareto --eta-grid 2^-6..2^-9 --out " +
                                f.string());
    REQUIRE(r.code == 0);
    const std::string body = slurp(f);
    CHECK(body.rfind("eta,gap,w1_lower\n", 0) == 0);
    CHECK(lines_of(body).size() == 5);

    const std::string slope = slurp(f.string() + ".slope");
    CHECK(slope.find("slope = ") != std::string::npos);
    const std::size_t th = slope.find("theory = ");
    REQUIRE(th != std::string::npos);
    CHECK(std::stod(slope.substr(th + 9)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const RunResult rerun = run_cli("--config " + f.string() + ".manifest");
    REQUIRE(rerun.code == 0);
    CHECK(slurp(f) == body);
    CHECK(slurp(f.string() + ".slope") == slope);
}

TEST_CASE("rate-study emits the csv footer on stdout") {
    const RunResult r = run_cli("rate-study --method cf-gap --scheme stable --alpha 1.5 "
                                "--eta-grid 2^-5..2^-7");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() >= 5);
    CHECK(rows[0] == "eta,distance");
    CHECK(r.out.find("# scheme=stable method=cf-gap alpha=1.5") != std::string::npos);
    CHECK(r.out.find("theory=1") != std::string::npos);
}

TEST_CASE("worker count does not change simulate output") {
    const fs::path fa = scratch_dir() / "sim_w1.csv";
    const fs::path fb = scratch_dir() / "sim_w4.csv";
    const std::string opts =
        "simulate --scheme pareto --drift ou --eta 0.05 --steps 50 --ensemble 300 "
        "--alpha 1.5 --seed 3 --out ";
    REQUIRE(run_cli(opts + fa.string() + " --workers 1").code == 0);
    REQUIRE(run_cli(opts + fb.string() + " --workers 4").code == 0);
    const std::string body = slurp(fa);
    CHECK(!body.empty());
    CHECK(body == slurp(fb));
}

TEST_CASE("numerical failure exits with its own code") {
    const RunResult r = run_cli("cf-gap --alpha 1.5 --eta-grid 2^-4..2^-5 --quad-tol 1e-17");
    CHECK(r.code == 2);
    CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("moments tracks the chain from its start weight") {
    const RunResult r = run_cli("moments --beta 1.2 --steps 8 --ensemble 100 --seed 2");
    REQUIRE(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == "k,moment_beta");
    CHECK(rows[1] == "0,0"); // chains start at the origin
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(fields_of(rows[i])[1]) > 0.0);

    CHECK(run_cli("moments --steps 4").code == 1); // --beta is required
}

TEST_CASE("usage errors and help") {
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("frobnicate").code == 1);
    CHECK(run_cli("cf-gap --eta-grid 2^-9..2^-6").code == 1); // increasing grid
}

} // TEST_SUITE
