#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef POLYGAP_CLI_PATH
#define POLYGAP_CLI_PATH "./polygap"
#endif
#ifndef POLYGAP_DATA_DIR
#define POLYGAP_DATA_DIR "../data"
#endif

namespace {

struct CliResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

CliResult run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout.tmp";
    const std::string err_path = "cli_stderr.tmp";
    const std::string cmd = std::string(POLYGAP_CLI_PATH) + " " + args + " >" +
                            out_path + " 2>" + err_path;
    const int rc = std::system(cmd.c_str());
    CliResult r;
    r.status = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::string data(const std::string& name) {
    return std::string(POLYGAP_DATA_DIR) + "/" + name;
}

constexpr double kPi2 = 9.869604401089358;

// value of a named column in the first CSV data row
double csv_field(const std::string& text, const std::string& column) {
    std::istringstream in(text);
    std::string header;
    while (std::getline(in, header))
        if (!header.empty() && header[0] != '#') break;
    std::string row;
    while (std::getline(in, row))
        if (!row.empty() && row[0] != '#') break;
    std::istringstream hs(header), rs(row);
    std::string h, v;
    while (std::getline(hs, h, ',') && std::getline(rs, v, ','))
        if (h == column) return std::stod(v);
    throw std::runtime_error("column not found: " + column);
}

} // namespace

TEST_CASE("eigs on the unit square") {
    const CliResult r = run_cli("eigs " + data("unit_square.poly") + " --n 2");
    REQUIRE(r.status == 0);
    CHECK(csv_field(r.out, "lambda1") == Catch::Approx(2 * kPi2).epsilon(1e-10));
    CHECK(csv_field(r.out, "xi") == Catch::Approx(6 * kPi2).epsilon(1e-10));
    CHECK(r.out.find("closed_form_rectangle") != std::string::npos);
}

TEST_CASE("eigs rejects a two-vertex file") {
    const std::string path = "cli_two_vertex.poly";
    {
        std::ofstream f(path);
        f << "0 0\n1 0\n";
    }
    const CliResult r = run_cli("eigs " + path);
    CHECK(r.status == 1);
    CHECK(r.err.find("error") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("eigs on the equilateral triangle") {
    const CliResult r = run_cli("eigs " + data("equilateral.poly") + " --tol 1e-6");
    REQUIRE(r.status == 0);
    CHECK(csv_field(r.out, "xi") == Catch::Approx(64 * kPi2 / 9).epsilon(1e-6));
}

TEST_CASE("sector command matches the closed form") {
    const CliResult r = run_cli("sector --alpha 1 --n 2");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("index,value,method") == 0);
    CHECK(csv_field(r.out, "value") == Catch::Approx(14.68197).margin(1e-4));
}

TEST_CASE("scan is deterministic and finds the equilateral corner") {
    const CliResult a = run_cli("scan --grid 2 --tol 1e-3 --svg cli_scan.svg");
    REQUIRE(a.status == 0);
    const CliResult b = run_cli("scan --grid 2 --tol 1e-3");
    CHECK(a.out == b.out); // byte-identical rerun
    CHECK(a.out.find("# min xi") != std::string::npos);
    CHECK(a.out.find("alpha=0.333333333333") != std::string::npos);
    CHECK(slurp("cli_scan.svg").find("<svg") == 0);
    std::remove("cli_scan.svg");
}

TEST_CASE("collapse on the rectangle family fits a flat exponent") {
    const CliResult r = run_cli("collapse " + data("family_rectangle.fam"));
    REQUIRE(r.status == 0);
    const auto pos = r.out.find("# fitted_exponent slope=");
    REQUIRE(pos != std::string::npos);
    const double slope = std::stod(r.out.substr(pos + 24));
    CHECK(std::fabs(slope) < 0.01);
    CHECK(r.out.find("bounded") != std::string::npos);
}

TEST_CASE("certify on the unit square confirms the universal floor") {
    const CliResult r = run_cli("certify " + data("unit_square.poly"));
    REQUIRE(r.status == 0);
    CHECK(r.out.find("universal_pi^2") != std::string::npos);
    CHECK(r.out.find("<= xi: OK") != std::string::npos);
    CHECK(r.out.find("VIOLATED") == std::string::npos);
}

TEST_CASE("certify on a thin triangle skips FEM but keeps the sector bound") {
    const CliResult r = run_cli("certify " + data("thin_triangle.poly"));
    REQUIRE(r.status == 0);
    CHECK(r.out.find("FEM skipped") != std::string::npos);
    CHECK(r.out.find("sector_sandwich") != std::string::npos);
    CHECK(r.out.find("unboundedness trend") != std::string::npos);
}

TEST_CASE("timings go to stderr, not stdout") {
    const CliResult r = run_cli("eigs " + data("rect_2x1.poly"));
    REQUIRE(r.status == 0);
    CHECK(r.out.find("elapsed") == std::string::npos);
    CHECK(r.err.find("elapsed") != std::string::npos);
}
