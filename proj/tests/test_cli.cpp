#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "dsm2d/config.hpp"
#include "dsm2d/io.hpp"
#include "dsm2d/runner.hpp"
#include "test_helpers.hpp"

using namespace dsm2d;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(DSM2D_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool same_bytes(const std::string& a, const std::string& b) {
    return testutil::slurp(a) == testutil::slurp(b);
}

}  // namespace

TEST_CASE("run produces the full artifact set and a faithful manifest") {
    testutil::TempDir dir("cli_run");
    const int rc = run_cli("run --preset example1 --out " + dir.str());
    REQUIRE(rc == 0);

    for (const char* name :
         {"farfield_mono.csv", "farfield_multi.csv", "map_dsm_multi.csv", "map_dsm_multi.pgm",
          "map_dsm_mono.csv", "map_mdsm_mono.csv", "jaccard_dsm_multi.csv",
          "jaccard_dsm_mono.csv", "jaccard_mdsm_mono.csv", "peaks_mdsm_mono.csv",
          "manifest.json"})
        CHECK(std::filesystem::exists(dir.file(name)));

    // the config echo in the manifest parses back to the exact configuration
    std::ifstream in(dir.file("manifest.json"));
    REQUIRE(in.good());
    const Json manifest = Json::parse(in);
    ExperimentConfig expected = preset("example1");
    expected.output_dir = dir.str();
    CHECK(config_from_json(manifest.at("config")) == expected);
    CHECK(manifest.at("seed").get<std::uint64_t>() == expected.noise.seed);
    CHECK(manifest.contains("files"));
    CHECK(manifest.at("files").size() == 14);  // 2 datasets + 3 indicators x 4 files
}

TEST_CASE("staged execution reproduces the one-shot run byte for byte") {
    testutil::TempDir staged("cli_staged");
    testutil::TempDir oneshot("cli_oneshot");

    REQUIRE(run_cli("simulate --preset example1 --out " + staged.str()) == 0);
    REQUIRE(run_cli("image --preset example1 --out " + staged.str()) == 0);
    REQUIRE(run_cli("evaluate --preset example1 --out " + staged.str()) == 0);
    REQUIRE(run_cli("run --preset example1 --out " + oneshot.str()) == 0);

    for (const char* name : {"farfield_mono.csv", "farfield_multi.csv", "map_dsm_multi.csv",
                             "map_dsm_mono.csv", "map_mdsm_mono.csv", "jaccard_dsm_multi.csv",
                             "jaccard_mdsm_mono.csv", "peaks_dsm_mono.csv"})
        CHECK(same_bytes(staged.file(name), oneshot.file(name)));
}

TEST_CASE("image on an all-zero data file reports degenerate data") {
    testutil::TempDir dir("cli_zero");

    ExperimentConfig cfg = preset("example1");
    cfg.noise.snr_db.reset();
    cfg.indicators = {IndicatorKind::mdsm_mono};
    const std::string cfg_path = dir.file("config.json");
    {
        std::ofstream out(cfg_path);
        out << to_json(cfg).dump(2);
    }

    FarFieldData zero;
    zero.mode = DataMode::monostatic;
    zero.n_tx = zero.n_rx = cfg.aperture.n;
    zero.k0 = cfg.medium().wavenumber;
    zero.values.assign(cfg.aperture.n, Complex(0.0, 0.0));
    write_farfield_csv(dir.file("farfield_mono.csv"), zero);

    CHECK(run_cli("image --config " + cfg_path + " --out " + dir.str()) == 3);
}

TEST_CASE("malformed data files are I/O-class failures") {
    testutil::TempDir dir("cli_malformed");
    ExperimentConfig cfg = preset("example1");
    cfg.indicators = {IndicatorKind::dsm_mono};
    const std::string cfg_path = dir.file("config.json");
    {
        std::ofstream out(cfg_path);
        out << to_json(cfg).dump(2);
    }
    {
        std::ofstream out(dir.file("farfield_mono.csv"));
        out << "mode,n_tx,n_rx,k0\nmono,36,36,not_a_number\n";
    }
    CHECK(run_cli("image --config " + cfg_path + " --out " + dir.str()) == 4);
}

TEST_CASE("configuration failures exit with code 2") {
    testutil::TempDir dir("cli_cfg");
    CHECK(run_cli("run --preset bogus --out " + dir.str()) == 2);
    CHECK(run_cli("run --out " + dir.str()) == 2);           // neither preset nor config
    CHECK(run_cli("run --preset example1 --indicator nope --out " + dir.str()) == 2);
    CHECK(run_cli("run --preset example1 --snr-db loud --out " + dir.str()) == 2);
    CHECK(run_cli("run --preset example1 --engine warp --out " + dir.str()) == 2);
    CHECK(run_cli("totally-unknown-subcommand") == 2);
}

TEST_CASE("threshold overrides flow through to the curve files") {
    testutil::TempDir dir("cli_kappa");
    ExperimentConfig cfg = preset("example1");
    cfg.noise.snr_db.reset();
    cfg.indicators = {IndicatorKind::mdsm_mono};
    cfg.thresholds = {0.0, 1.0};
    const std::string cfg_path = dir.file("config.json");
    {
        std::ofstream out(cfg_path);
        out << to_json(cfg).dump(2);
    }
    REQUIRE(run_cli("run --config " + cfg_path + " --out " + dir.str()) == 0);

    std::ifstream curve_in(dir.file("jaccard_mdsm_mono.csv"));
    const JaccardCurve curve = parse_jaccard_csv(curve_in);
    REQUIRE(curve.thresholds.size() == 2);
    CHECK(curve.thresholds[0] == 0.0);
    CHECK(curve.thresholds[1] == 1.0);
}

TEST_CASE("seed and noise overrides change the outputs deterministically") {
    testutil::TempDir a("cli_seed_a");
    testutil::TempDir b("cli_seed_b");
    testutil::TempDir c("cli_seed_c");
    const std::string common = "run --preset example1 --indicator mdsm-mono ";
    REQUIRE(run_cli(common + "--seed 11 --out " + a.str()) == 0);
    REQUIRE(run_cli(common + "--seed 11 --out " + b.str()) == 0);
    REQUIRE(run_cli(common + "--seed 12 --out " + c.str()) == 0);

    CHECK(same_bytes(a.file("map_mdsm_mono.csv"), b.file("map_mdsm_mono.csv")));
    CHECK_FALSE(same_bytes(a.file("map_mdsm_mono.csv"), c.file("map_mdsm_mono.csv")));
}

TEST_CASE("library-level runner computes structure maps without data files") {
    testutil::TempDir dir("runner_psi");
    ExperimentConfig cfg = preset("example1");
    cfg.indicators = {IndicatorKind::psi1, IndicatorKind::psi2};
    cfg.output_dir = dir.str();
    run(cfg, dir.str());
    CHECK(std::filesystem::exists(dir.file("map_psi1.csv")));
    CHECK(std::filesystem::exists(dir.file("map_psi2.pgm")));
    CHECK(std::filesystem::exists(dir.file("jaccard_psi2.csv")));
    CHECK_FALSE(std::filesystem::exists(dir.file("farfield_mono.csv")));
}
