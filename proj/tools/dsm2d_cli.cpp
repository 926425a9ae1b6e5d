// dsm2d command-line runner.
//
// Usage:
//   dsm2d_cli run      (--preset NAME | --config FILE) [overrides]
//   dsm2d_cli simulate (--preset NAME | --config FILE) [overrides]
//   dsm2d_cli image    (--preset NAME | --config FILE) [overrides]
//   dsm2d_cli evaluate (--preset NAME | --config FILE) [overrides]
//
// Overrides: --out DIR, --seed U64, --indicator NAME (repeatable),
//            --engine asymptotic|mom, --snr-db VALUE|off
//
// Exit codes: 0 success, 2 configuration error, 3 numerical or degenerate
// data error, 4 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsm2d/config.hpp"
#include "dsm2d/errors.hpp"
#include "dsm2d/runner.hpp"

namespace {

struct CliOptions {
    std::string preset;
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> indicators;
    std::string engine;
    std::string snr_db;
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--preset", opt.preset, "built-in preset: example1|example2|example3");
    cmd->add_option("--config", opt.config_path, "experiment configuration JSON file");
    cmd->add_option("--out", opt.out_dir, "output directory (default: config output_dir)");
    cmd->add_option("--seed", opt.seed, "noise seed override");
    cmd->add_option("--indicator", opt.indicators,
                    "restrict to these indicators: dsm-multi|dsm-mono|mdsm-mono|psi1|psi2");
    cmd->add_option("--engine", opt.engine, "forward engine override: asymptotic|mom");
    cmd->add_option("--snr-db", opt.snr_db, "noise SNR in dB, or 'off'");
}

dsm2d::ExperimentConfig build_config(const CliOptions& opt) {
    if (opt.preset.empty() == opt.config_path.empty())
        throw dsm2d::ConfigError("exactly one of --preset or --config is required");

    dsm2d::ExperimentConfig cfg =
        opt.preset.empty() ? dsm2d::load_config_file(opt.config_path) : dsm2d::preset(opt.preset);

    if (opt.seed) cfg.noise.seed = *opt.seed;
    if (!opt.indicators.empty()) {
        cfg.indicators.clear();
        for (const std::string& name : opt.indicators)
            cfg.indicators.push_back(dsm2d::indicator_from_name(name));
    }
    if (!opt.engine.empty()) {
        if (opt.engine == "asymptotic")
            cfg.engine.kind = dsm2d::EngineConfig::Kind::asymptotic;
        else if (opt.engine == "mom")
            cfg.engine.kind = dsm2d::EngineConfig::Kind::mom;
        else
            throw dsm2d::ConfigError("--engine must be 'asymptotic' or 'mom'");
    }
    if (!opt.snr_db.empty()) {
        if (opt.snr_db == "off") {
            cfg.noise.snr_db.reset();
        } else {
            try {
                std::size_t pos = 0;
                const double v = std::stod(opt.snr_db, &pos);
                if (pos != opt.snr_db.size()) throw std::invalid_argument(opt.snr_db);
                cfg.noise.snr_db = v;
            } catch (const std::exception&) {
                throw dsm2d::ConfigError("--snr-db expects a number or 'off'");
            }
        }
    }
    if (!opt.out_dir.empty()) cfg.output_dir = opt.out_dir;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D inverse-scattering toolkit: direct sampling method pipelines"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* cmd_run = app.add_subcommand("run", "simulate, image and evaluate in one go");
    CLI::App* cmd_sim = app.add_subcommand("simulate", "generate far-field data files");
    CLI::App* cmd_img = app.add_subcommand("image", "compute indicator maps from data files");
    CLI::App* cmd_eval = app.add_subcommand("evaluate", "score maps against the exact support");
    for (CLI::App* cmd : {cmd_run, cmd_sim, cmd_img, cmd_eval}) add_common_options(cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // bad flags are configuration errors
    }

    try {
        const dsm2d::ExperimentConfig cfg = build_config(opt);
        const std::string out = cfg.output_dir;
        if (cmd_run->parsed()) {
            dsm2d::run(cfg, out);
        } else if (cmd_sim->parsed()) {
            dsm2d::simulate(cfg, out);
        } else if (cmd_img->parsed()) {
            dsm2d::image(cfg, out);
        } else {
            dsm2d::evaluate(cfg, out);
        }
        std::cout << "wrote results to " << out << "\n";
        return 0;
    } catch (const dsm2d::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dsm2d::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dsm2d::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dsm2d::DegenerateDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dsm2d::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const dsm2d::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const dsm2d::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
