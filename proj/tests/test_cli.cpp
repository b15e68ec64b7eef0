// Exit-code and output contract of the command-line tool; spawns the real
// binary (path injected by the build).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "stefankpp/io.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(STEFANKPP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    REQUIRE(st != -1);
    REQUIRE(WIFEXITED(st));
    return WEXITSTATUS(st);
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* tag) {
        path = fs::temp_directory_path() / (std::string("skpp_cli_") + tag + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("cstar: success and flag validation") {
    TempDir tmp("cstar");
    CHECK(run_cli("cstar --a 1 --b 1 --d 1 --mu 1 --out " + tmp.path.string()) == 0);
    CHECK(fs::exists(tmp.path / "profile.csv"));
    CHECK(fs::exists(tmp.path / "manifest.txt"));
    auto man = stefankpp::io::parse_keyvalues(tmp.path / "manifest.txt");
    CHECK(std::fabs(stefankpp::io::get_double(man, "c_star") - 0.364370723318968) < 1e-6);

    CHECK(run_cli("cstar --a 0 --b 1 --d 1 --mu 1") == 1);
    CHECK(run_cli("cstar --a 1 --b 1 --d 1") == 1); // missing required flag
}

TEST_CASE("run: missing config exits 1") {
    TempDir tmp("run");
    CHECK(run_cli("run fb1d /nonexistent.cfg --out " + tmp.path.string()) == 1);
    // manifest is written even on failure
    CHECK(fs::exists(tmp.path / "manifest.txt"));
}

TEST_CASE("run fb1d: trajectory with receding front") {
    TempDir tmp("fb1d");
    const fs::path cfg = tmp.path / "eqlow.cfg";
    {
        std::ofstream out(cfg);
        out << "# left-moving free boundary\na=1\nb=1\nd=1\nmu=1\nT=2\nh=0.05\nL=50\n"
            << "orientation=-1\nsigma0=0.5\nsnapshots=1;2\n";
    }
    const fs::path outdir = tmp.path / "out";
    CHECK(run_cli("run fb1d " + cfg.string() + " --out " + outdir.string()) == 0);
    CHECK(fs::exists(outdir / "trajectory.csv"));
    CHECK(fs::exists(outdir / "snapshot_001.csv"));

    std::ifstream in(outdir / "trajectory.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,rho");
    double last = 0.0;
    while (std::getline(in, line)) last = std::stod(line.substr(line.find(',') + 1));
    CHECK(last < 0.0); // rho drifted left

    // unknown config key is rejected
    {
        std::ofstream out(cfg, std::ios::app);
        out << "bogus=1\n";
    }
    CHECK(run_cli("run fb1d " + cfg.string() + " --out " + outdir.string()) == 1);
}

TEST_CASE("run cone2d: margin abort exits 3 with partial output") {
    TempDir tmp("cone");
    const fs::path cfg = tmp.path / "tight.cfg";
    {
        std::ofstream out(cfg);
        // expanding ball in a box too small for the run length: the front
        // reaches the 10-cell margin of every face mid-run
        out << "shape=ball\nball_r=1.5\na=1\nb=1\nd=1\nmu=1\n"
            << "T=4\nhx=0.1\nbox=-3,3,-3,3\nsnap_every=0.5\n";
    }
    const fs::path outdir = tmp.path / "out";
    CHECK(run_cli("run cone2d " + cfg.string() + " --out " + outdir.string()) == 3);
    auto man = stefankpp::io::parse_keyvalues(outdir / "manifest.txt");
    CHECK(stefankpp::io::get_string_or(man, "partial_output", "") == "1");
}

TEST_CASE("verify compare exits 0 with zero violation on the identical case") {
    TempDir tmp("cmp");
    CHECK(run_cli("verify compare --out " + tmp.path.string()) == 0);
    auto rep = stefankpp::io::parse_keyvalues(tmp.path / "report.txt");
    CHECK(stefankpp::io::get_double(rep, "violation_identical") == 0.0);
}

TEST_CASE("verify super: R below the admissible threshold exits 2") {
    TempDir tmp("sup");
    CHECK(run_cli("verify super --delta 0.1 --R-factor 0.5 --out " + tmp.path.string()) == 2);
    CHECK(run_cli("verify super --delta 0.1 --R-factor 2.0 --out " + tmp.path.string()) == 0);
    auto rep = stefankpp::io::parse_keyvalues(tmp.path / "report.txt");
    CHECK(stefankpp::io::get_string_or(rep, "pass", "") == "1");
}

TEST_CASE("plotdata: empty directory exits 1, fb1d run produces rho_pred") {
    TempDir tmp("plot");
    CHECK(run_cli("plotdata --run " + tmp.path.string() + " --out " + tmp.path.string()) == 1);

    const fs::path cfg = tmp.path / "eqlow.cfg";
    {
        std::ofstream out(cfg);
        out << "a=1\nb=1\nd=1\nmu=1\nT=2\nh=0.05\nL=50\norientation=-1\nsigma0=0.5\n";
    }
    const fs::path rundir = tmp.path / "run";
    REQUIRE(run_cli("run fb1d " + cfg.string() + " --out " + rundir.string()) == 0);
    const fs::path plotdir = tmp.path / "plots";
    CHECK(run_cli("plotdata --run " + rundir.string() + " --out " + plotdir.string()) == 0);
    std::ifstream in(plotdir / "rho_pred.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,rho,pred");
}

TEST_CASE("deterministic outputs: identical runs are byte-identical") {
    TempDir tmp("det");
    const fs::path cfg = tmp.path / "c.cfg";
    {
        std::ofstream out(cfg);
        out << "shape=ball\nball_r=1.5\na=1\nb=1\nd=1\nmu=1\nT=1\nhx=0.1\n"
            << "box=-5,5,-5,5\nsnap_every=0.5\n";
    }
    const fs::path o1 = tmp.path / "o1", o2 = tmp.path / "o2";
    REQUIRE(run_cli("run cone2d " + cfg.string() + " --out " + o1.string()) == 0);
    REQUIRE(run_cli("run cone2d " + cfg.string() + " --out " + o2.string()) == 0);
    for (const char* name : {"snapshot_002.txt", "front_002.csv"}) {
        std::ifstream a(o1 / name), b(o2 / name);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
        CHECK(!sa.str().empty());
    }
}
