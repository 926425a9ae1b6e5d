#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dsm2d/config.hpp"
#include "dsm2d/errors.hpp"
#include "dsm2d/farfield.hpp"
#include "dsm2d/imaging.hpp"
#include "dsm2d/io.hpp"
#include "dsm2d/metrics.hpp"
#include "dsm2d/mom.hpp"

// Experiment pipeline. Three file-coupled stages, each runnable on its own:
//   simulate  -> farfield_mono.csv / farfield_multi.csv
//   image     -> map_<indicator>.csv + map_<indicator>.pgm
//   evaluate  -> jaccard_<indicator>.csv + peaks_<indicator>.csv
// run() chains the three and writes manifest.json (config echo, seed, file
// hashes). With a fixed config and seed every output file is byte-identical
// across runs; only the manifest timestamp varies.

namespace dsm2d {

inline std::string farfield_filename(DataMode mode) {
    return mode == DataMode::monostatic ? "farfield_mono.csv" : "farfield_multi.csv";
}

inline std::string indicator_stem(IndicatorKind kind) {
    std::string s = indicator_name(kind);
    for (char& c : s)
        if (c == '-') c = '_';
    return s;
}

inline std::string map_csv_filename(IndicatorKind k) { return "map_" + indicator_stem(k) + ".csv"; }
inline std::string map_pgm_filename(IndicatorKind k) { return "map_" + indicator_stem(k) + ".pgm"; }
inline std::string jaccard_filename(IndicatorKind k) { return "jaccard_" + indicator_stem(k) + ".csv"; }
inline std::string peaks_filename(IndicatorKind k) { return "peaks_" + indicator_stem(k) + ".csv"; }

namespace detail {

inline void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

inline std::string join(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

inline std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot hash missing file: " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
    return s;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Per-dataset noise seeds: keep the mono and multi noise streams distinct.
inline std::uint64_t noise_seed(const ExperimentConfig& cfg, DataMode mode) {
    return cfg.noise.seed + (mode == DataMode::multistatic ? 1 : 0);
}

inline std::vector<DataMode> modes_to_simulate(const ExperimentConfig& cfg) {
    std::vector<DataMode> modes;
    for (DataMode m : {DataMode::monostatic, DataMode::multistatic})
        if (cfg.needs_mode(m) && cfg.mode_allowed(m)) modes.push_back(m);
    return modes;
}

inline FarFieldData simulate_mode(const ExperimentConfig& cfg, const Scene& scene, DataMode mode) {
    FarFieldData data;
    if (mode == DataMode::monostatic) {
        const DirectionSet dirs = cfg.directions(true);
        data = cfg.engine.kind == EngineConfig::Kind::mom
                   ? mom_monostatic_sweep(scene, cfg.engine.pixels_per_wavelength, dirs)
                   : monostatic_sweep(scene, dirs);
    } else {
        const DirectionSet tx = cfg.directions(false);
        data = cfg.engine.kind == EngineConfig::Kind::mom
                   ? mom_multistatic_matrix(scene, cfg.engine.pixels_per_wavelength, tx, tx)
                   : multistatic_matrix(scene, tx, tx);
    }
    if (cfg.noise.snr_db) data = add_awgn(data, *cfg.noise.snr_db, noise_seed(cfg, mode));
    return data;
}

inline FarFieldData load_farfield(const ExperimentConfig& cfg, const std::string& out_dir,
                                  DataMode mode) {
    const std::string path = join(out_dir, farfield_filename(mode));
    if (!std::filesystem::exists(path))
        throw IoError("image stage: missing input '" + path + "' (run simulate first)");
    FarFieldData data = parse_farfield_csv(path);
    if (data.mode != mode) throw ParseError(path + ": unexpected data mode");
    const double k0 = cfg.medium().wavenumber;
    if (std::abs(data.k0 - k0) > 1e-9 * k0)
        throw ConfigError("image stage: wavenumber in '" + path +
                          "' does not match the configuration");
    if (mode == DataMode::multistatic && (data.n_tx != cfg.aperture.n || data.n_rx != cfg.aperture.n))
        throw ConfigError("image stage: data shape in '" + path +
                          "' does not match the configured aperture");
    if (mode == DataMode::monostatic && data.n_rx != cfg.aperture.n)
        throw ConfigError("image stage: data shape in '" + path +
                          "' does not match the configured aperture");
    return data;
}

}  // namespace detail

/// Generates the far-field datasets required by the configured indicators.
inline void simulate(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    detail::ensure_directory(out_dir);
    const Scene scene = cfg.scene();
    for (DataMode mode : detail::modes_to_simulate(cfg)) {
        try {
            const FarFieldData data = detail::simulate_mode(cfg, scene, mode);
            write_farfield_csv(detail::join(out_dir, farfield_filename(mode)), data);
        } catch (const DegenerateDataError& e) {
            throw DegenerateDataError(std::string("simulate stage: ") + e.what());
        } catch (const NumericalError& e) {
            throw NumericalError(std::string("simulate stage: ") + e.what());
        }
    }
}

/// Computes the configured indicator maps from the on-disk far-field data.
inline void image(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    detail::ensure_directory(out_dir);
    const Scene scene = cfg.scene();
    const Medium med = scene.medium();
    const SamplingGrid grid = cfg.grid();

    for (IndicatorKind kind : cfg.indicators) {
        IndicatorMap map;
        try {
            switch (kind) {
                case IndicatorKind::psi1:
                    map = psi1_map(scene, grid, med);
                    break;
                case IndicatorKind::psi2:
                    map = psi2_map(scene, grid, med);
                    break;
                case IndicatorKind::dsm_multi: {
                    const FarFieldData data =
                        detail::load_farfield(cfg, out_dir, DataMode::multistatic);
                    const DirectionSet tx = cfg.directions(false);
                    map = dsm_multi(data, tx, tx, grid, med);
                    break;
                }
                case IndicatorKind::dsm_mono:
                case IndicatorKind::mdsm_mono: {
                    const FarFieldData data =
                        detail::load_farfield(cfg, out_dir, DataMode::monostatic);
                    const DirectionSet dirs = cfg.directions(true);
                    map = kind == IndicatorKind::dsm_mono ? dsm_mono(data, dirs, grid, med)
                                                          : mdsm_mono(data, dirs, grid, med);
                    break;
                }
                case IndicatorKind::dsm_single:
                    throw UsageError("image stage: dsm-single is not a configurable indicator");
            }
        } catch (const DegenerateDataError& e) {
            throw DegenerateDataError(std::string("image stage: ") + e.what());
        }
        write_map_csv(detail::join(out_dir, map_csv_filename(kind)), map);
        write_pgm(detail::join(out_dir, map_pgm_filename(kind)), map);
    }
}

/// Scores the on-disk indicator maps against the exact support.
inline void evaluate(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    detail::ensure_directory(out_dir);
    const Scene scene = cfg.scene();
    const SamplingGrid grid = cfg.grid();
    const SupportMap exact = exact_support(scene, grid);

    for (IndicatorKind kind : cfg.indicators) {
        const std::string path = detail::join(out_dir, map_csv_filename(kind));
        if (!std::filesystem::exists(path))
            throw IoError("evaluate stage: missing input '" + path + "' (run image first)");
        IndicatorMap parsed = parse_map_csv(path, kind);
        if (parsed.grid.nx != grid.nx || parsed.grid.ny != grid.ny)
            throw ConfigError("evaluate stage: map in '" + path +
                              "' does not match the configured grid");
        // rebuild on the configured grid so support comparisons are exact
        IndicatorMap map{grid, std::move(parsed.values), kind};

        const JaccardCurve curve = jaccard_curve(map, exact, cfg.thresholds);
        write_jaccard_csv(detail::join(out_dir, jaccard_filename(kind)), curve);
        write_peaks_csv(detail::join(out_dir, peaks_filename(kind)),
                        peak_locations(map, cfg.peak_kappa));
    }
}

/// Full pipeline plus manifest.
inline void run(const ExperimentConfig& cfg, const std::string& out_dir) {
    simulate(cfg, out_dir);
    image(cfg, out_dir);
    evaluate(cfg, out_dir);

    Json manifest;
    manifest["tool"] = "dsm2d";
    manifest["created_utc"] = detail::utc_timestamp();
    manifest["seed"] = cfg.noise.seed;
    manifest["config"] = to_json(cfg);

    Json warnings = Json::array();
    const Scene scene = cfg.scene();
    for (std::size_t m = 0; m < scene.size(); ++m) {
        const Inhomogeneity& t = scene.inhomogeneities()[m];
        const double ratio = t.small_obstacle_ratio(scene.medium());
        if (ratio >= 1.0)
            warnings.push_back("target " + std::to_string(m + 1) +
                               " violates the small-obstacle assumption (ratio " +
                               format_double(ratio) + ")");
    }
    if (exact_support(scene, cfg.grid()).count() == 0)
        warnings.push_back(
            "exact support covers no grid pixel; empty-vs-empty Jaccard scores use the "
            "100-percent convention");
    manifest["warnings"] = warnings;

    Json files;
    std::vector<std::string> names;
    for (DataMode mode : detail::modes_to_simulate(cfg)) names.push_back(farfield_filename(mode));
    for (IndicatorKind k : cfg.indicators) {
        names.push_back(map_csv_filename(k));
        names.push_back(map_pgm_filename(k));
        names.push_back(jaccard_filename(k));
        names.push_back(peaks_filename(k));
    }
    for (const std::string& name : names)
        files[name] = "fnv1a64:" + detail::hex64(detail::fnv1a64_file(detail::join(out_dir, name)));
    manifest["files"] = files;

    std::ofstream out(detail::join(out_dir, "manifest.json"), std::ios::binary);
    if (!out) throw IoError("cannot write manifest in '" + out_dir + "'");
    out << manifest.dump(2) << '\n';
}

}  // namespace dsm2d
