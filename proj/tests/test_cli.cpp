#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    std::string cmd = std::string(TWLAB_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file " << p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

std::size_t data_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::size_t rows = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("twlab_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("figure1 command" * doctest::timeout(600)) {
    fs::path dir = fresh_dir("figure1");
    REQUIRE(run_cli("figure1 --seed 3 --out " + dir.string()) == 0);

    std::string csv = slurp(dir / "curves.csv");
    CHECK(data_rows(csv) == 291 * 4);

    std::string svg = slurp(dir / "figure1.svg");
    CHECK(count_occurrences(svg, "<polyline") == 4);
    CHECK(svg.find("viewBox") != std::string::npos);

    // deterministic re-run is byte identical
    fs::path dir2 = fresh_dir("figure1_rerun");
    REQUIRE(run_cli("figure1 --seed 3 --out " + dir2.string()) == 0);
    CHECK(slurp(dir2 / "curves.csv") == csv);

    fs::path dir3 = fresh_dir("figure1_other_seed");
    REQUIRE(run_cli("figure1 --seed 4 --out " + dir3.string()) == 0);
    CHECK(slurp(dir3 / "curves.csv") != csv);
}

TEST_CASE("verify-ordering command" * doctest::timeout(600)) {
    SUBCASE("small clean run") {
        fs::path dir = fresh_dir("verify");
        int code = run_cli("verify-ordering --beta 1 --beta-prime 4 --s 1 --trials 10 --n 60 "
                           "--k 4 --grid-L 6 --grid-h 0.02 --seed 5 --out " + dir.string());
        CHECK(code == 0);
        std::string report = slurp(dir / "report.json");
        CHECK(report.find("\"pathwise\": 0") != std::string::npos);
        CHECK(report.find("\"coupled_pairs\": 0") != std::string::npos);
        CHECK(report.find("\"alpha\"") != std::string::npos);
    }
    SUBCASE("missing beta-prime is a usage error") {
        CHECK(run_cli("verify-ordering --beta 1") == 2);
    }
    SUBCASE("strict mode refuses an inadmissible s") {
        fs::path dir = fresh_dir("verify_strict");
        CHECK(run_cli("verify-ordering --beta 1 --beta-prime 4 --s 2 --strict --out " +
                      dir.string()) == 2);
    }
    SUBCASE("inadmissible s probes and reports instead of failing") {
        fs::path dir = fresh_dir("verify_probe");
        int code = run_cli("verify-ordering --beta 1 --beta-prime 4 --s 2 --trials 5 --n 10 "
                           "--k 2 --grid-L 6 --grid-h 0.02 --seed 5 --out " + dir.string());
        CHECK(code == 0);
        std::string report = slurp(dir / "report.json");
        CHECK(report.find("\"expected_failure_mode\": true") != std::string::npos);
        CHECK(report.find("\"admissible\": false") != std::string::npos);
    }
}

TEST_CASE("lpp command" * doctest::timeout(600)) {
    SUBCASE("couplings hold") {
        fs::path dir = fresh_dir("lpp");
        int code = run_cli("lpp --N 2 --trials 400 --seed 6 --out " + dir.string());
        CHECK(code == 0);
        std::string report = slurp(dir / "coupling_report.json");
        CHECK(report.find("\"identity_vs_slash\": 0") != std::string::npos);
        CHECK(report.find("\"center\": 0") != std::string::npos);
        CHECK(report.find("\"reflection\": 0") != std::string::npos);
        std::string csv = slurp(dir / "lpp.csv");
        CHECK(csv.find("mean") != std::string::npos);
        CHECK(csv.find("sd") != std::string::npos);
    }
    SUBCASE("odd N is a usage error") {
        CHECK(run_cli("lpp --N 3") == 2);
    }
    SUBCASE("bad geometric parameter is a usage error") {
        CHECK(run_cli("lpp --N 2 --weights geom:1.5") == 2);
        CHECK(run_cli("lpp --N 2 --weights bogus") == 2);
    }
}

TEST_CASE("tails command" * doctest::timeout(600)) {
    SUBCASE("synthetic self-test") {
        fs::path dir = fresh_dir("tails");
        int code = run_cli("tails --beta 2 --synthetic --trials 40000 --seed 7 --out " +
                           dir.string());
        CHECK(code == 0);
        std::string report = slurp(dir / "tails.json");
        CHECK(report.find("1.3333333333333333") != std::string::npos);   // 2*beta/3
        CHECK(report.find("0.083333333333333") != std::string::npos);    // beta/24
        CHECK(report.find("\"partial\": false") != std::string::npos);
    }
    SUBCASE("small sample yields a partial report") {
        fs::path dir = fresh_dir("tails_partial");
        int code = run_cli("tails --beta 2 --synthetic --trials 2000 --seed 7 --out " +
                           dir.string());
        CHECK(code == 0);
        std::string report = slurp(dir / "tails.json");
        CHECK(report.find("\"partial\": true") != std::string::npos);
    }
}

TEST_CASE("sample command" * doctest::timeout(600)) {
    fs::path dir = fresh_dir("sample");
    int code = run_cli("sample --beta 2 --trials 5 --grid-L 5 --grid-h 0.05 --seed 8 --out " +
                       dir.string());
    CHECK(code == 0);
    CHECK(data_rows(slurp(dir / "samples.csv")) == 5);

    fs::path dir2 = fresh_dir("sample_ens");
    code = run_cli("sample --ensemble --n 6 --beta 2 --trials 4 --seed 8 --out " + dir2.string());
    CHECK(code == 0);
    CHECK(data_rows(slurp(dir2 / "samples.csv")) == 24);
}

TEST_CASE("unknown subcommand is a usage error") {
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("") == 2);
}

TEST_CASE("unwritable output path is an i/o error") {
    // a path through a regular file cannot become a directory
    fs::path block = fs::temp_directory_path() / "twlab_cli_blocker";
    std::ofstream(block).put('x');
    CHECK(run_cli("figure1 --n 4 --k 2 --out " + (block / "sub").string()) == 3);
}
