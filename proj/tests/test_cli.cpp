#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "wrinklevar/cli.hpp"
#include "wrinklevar/io.hpp"

using namespace wrinklevar;

namespace {

std::string temp_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("wrinklevar_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

std::string write_config(const std::string& dir, const std::string& text) {
    const std::string path = dir + "/run.cfg";
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify runs the full hypothesis suite") {
    const std::string dir = temp_dir("verify");
    const std::string cfg = write_config(dir,
                                         "verify.h1_samples = 3000\n"
                                         "verify.h2_samples = 3000\n"
                                         "verify.demo_grid = 129\n");
    CHECK(run_command({"verify", "--config", cfg, "--out", dir}) == 0);
    const std::string report = read_text_file(dir + "/report.txt");
    CHECK(report.find("H1_midpoint_convexity PASS") != std::string::npos);
    CHECK(report.find("H2_growth PASS") != std::string::npos);
    CHECK(report.find("H3_blowup PASS") != std::string::npos);
    CHECK(report.find("planar_polyconvexity PASS") != std::string::npos);
    CHECK(report.find("rank_one_failure PASS") != std::string::npos);
    CHECK(report.find("dist_det_weak_convergence PASS") != std::string::npos);
    CHECK(report.find("ALL_CHECKS PASS") != std::string::npos);
    CHECK(std::filesystem::exists(dir + "/manifest.txt"));
}

TEST_CASE("minimize on the identity problem exits cleanly") {
    const std::string dir = temp_dir("minimize");
    const std::string cfg = write_config(dir,
                                         "grid.nx = 9\ngrid.ny = 9\n"
                                         "grid.lx = 1\ngrid.ly = 1\n"
                                         "bc.lambda = 1\n"
                                         "minimizer.perturb_delta_rel = 0\n");
    CHECK(run_command({"minimize", "--config", cfg, "--out", dir}) == 0);
    CHECK(std::filesystem::exists(dir + "/trace.csv"));
    CHECK(std::filesystem::exists(dir + "/fields.csv"));
    const std::string manifest = read_text_file(dir + "/manifest.txt");
    CHECK(manifest.find("# converged = true") != std::string::npos);
    CHECK(manifest.find("# energy_total = 0") != std::string::npos);
}

TEST_CASE("analyze consumes saved fields") {
    const std::string dir = temp_dir("analyze");
    const std::string cfg = write_config(dir,
                                         "grid.nx = 17\ngrid.ny = 9\n"
                                         "bc.lambda = 1.15\n"
                                         "verify.residual_tests = 4\n");
    REQUIRE(run_command({"minimize", "--config", cfg, "--out", dir}) == 0);
    CHECK(run_command({"analyze", "--config", cfg, "--out", dir}) == 0);
    const std::string report = read_text_file(dir + "/report.txt");
    CHECK(report.find("wrinkle_metrics") != std::string::npos);
    CHECK(report.find("equilibrium_residual") != std::string::npos);
}

TEST_CASE("sweep writes the table") {
    const std::string dir = temp_dir("sweep");
    const std::string cfg = write_config(dir,
                                         "grid.nx = 17\ngrid.ny = 9\n"
                                         "sweep.lambda_from = 1.05\nsweep.lambda_to = 1.15\n"
                                         "sweep.steps = 2\n"
                                         "minimizer.perturb_delta_rel = 0\n");
    CHECK(run_command({"sweep", "--config", cfg, "--out", dir}) == 0);
    const std::string table = read_text_file(dir + "/sweep.csv");
    CHECK(table.find("lambda,membrane,bending,load,total,amplitude,wavelength,"
                     "sign_changes,converged") != std::string::npos);
}

TEST_CASE("usage and config errors exit with code 2") {
    CHECK(run_command({"transmogrify"}) == 2);
    CHECK(run_command({}) == 2);
    CHECK(run_command({"minimize", "--config", "/nonexistent/path.cfg"}) == 2);
    const std::string dir = temp_dir("badcfg");
    const std::string cfg = write_config(dir, "material.nu = 2\n");
    CHECK(run_command({"minimize", "--config", cfg, "--out", dir}) == 2);
}

TEST_CASE("repeated runs are byte-identical") {
    const std::string base = temp_dir("determ");
    const std::string cfg = write_config(base,
                                         "grid.nx = 17\ngrid.ny = 9\n"
                                         "bc.lambda = 1.2\nseed = 7\n"
                                         "verify.h1_samples = 2000\n"
                                         "verify.h2_samples = 2000\n"
                                         "verify.demo_grid = 65\n");
    const std::string r1 = base + "/run1";
    const std::string r2 = base + "/run2";
    REQUIRE(run_command({"minimize", "--config", cfg, "--out", r1}) == 0);
    REQUIRE(run_command({"minimize", "--config", cfg, "--out", r2}) == 0);
    CHECK(read_text_file(r1 + "/trace.csv") == read_text_file(r2 + "/trace.csv"));
    CHECK(read_text_file(r1 + "/fields.csv") == read_text_file(r2 + "/fields.csv"));

    REQUIRE(run_command({"verify", "--config", cfg, "--out", r1}) == 0);
    REQUIRE(run_command({"verify", "--config", cfg, "--out", r2}) == 0);
    CHECK(read_text_file(r1 + "/report.txt") == read_text_file(r2 + "/report.txt"));
}

}  // TEST_SUITE
