#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsm2d/errors.hpp"
#include "dsm2d/farfield.hpp"
#include "dsm2d/geometry.hpp"
#include "dsm2d/imaging.hpp"
#include "dsm2d/scene.hpp"

// Experiment configuration. The JSON schema is documented in the README;
// lengths are meters, angles radians, permittivities multiples of eps0
// (field "eps_rel").

namespace dsm2d {

using Json = nlohmann::ordered_json;

struct TargetConfig {
    Vec2 center;
    double radius = 0.0;
    double eps_rel = 1.0;

    bool operator==(const TargetConfig&) const = default;
};

struct ApertureConfig {
    std::size_t n = 0;
    double arc_start = 0.0;
    double arc_end = two_pi;
    /// Optional restriction of the data modes this aperture may produce;
    /// empty means "whatever the requested indicators need".
    std::vector<DataMode> modes;

    bool operator==(const ApertureConfig&) const = default;
};

struct EngineConfig {
    enum class Kind { asymptotic, mom };
    Kind kind = Kind::asymptotic;
    std::size_t pixels_per_wavelength = 10;  // only used by the mom engine

    bool operator==(const EngineConfig&) const = default;
};

struct NoiseConfig {
    std::optional<double> snr_db;  ///< nullopt: noise off
    std::uint64_t seed = 1;

    bool operator==(const NoiseConfig&) const = default;
};

struct ExperimentConfig {
    std::string name;
    double wavelength = 0.0;
    double mu0 = 0.0;
    double eps0 = 0.0;
    std::vector<TargetConfig> targets;
    Vec2 roi_center;
    double roi_side = 0.0;
    ApertureConfig aperture;
    Vec2 grid_center;
    double grid_side = 0.0;
    std::size_t grid_n = 50;
    EngineConfig engine;
    NoiseConfig noise;
    std::vector<IndicatorKind> indicators;
    std::vector<double> thresholds;
    double peak_kappa = 0.5;
    std::string output_dir = "out";

    bool operator==(const ExperimentConfig&) const = default;

    Medium medium() const { return make_medium(wavelength, mu0, eps0); }

    Scene scene() const {
        const Medium med = medium();
        std::vector<Inhomogeneity> inhoms;
        inhoms.reserve(targets.size());
        for (const TargetConfig& t : targets)
            inhoms.emplace_back(t.center, t.radius, t.eps_rel * med.eps0);
        return Scene(med, std::move(inhoms), Roi{roi_center, roi_side});
    }

    SamplingGrid grid() const { return make_grid(grid_center, grid_side, grid_n); }

    DirectionSet directions(bool monostatic) const {
        return make_direction_set(aperture.n, aperture.arc_start, aperture.arc_end, monostatic);
    }

    bool wants(IndicatorKind kind) const {
        return std::find(indicators.begin(), indicators.end(), kind) != indicators.end();
    }

    bool needs_mode(DataMode mode) const {
        if (mode == DataMode::multistatic) return wants(IndicatorKind::dsm_multi);
        return wants(IndicatorKind::dsm_mono) || wants(IndicatorKind::mdsm_mono);
    }

    bool mode_allowed(DataMode mode) const {
        if (aperture.modes.empty()) return true;
        return std::find(aperture.modes.begin(), aperture.modes.end(), mode) !=
               aperture.modes.end();
    }

    void validate() const;
};

inline void ExperimentConfig::validate() const {
    try {
        (void)medium();
        (void)scene();
        (void)grid();
        (void)directions(false);
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    if (indicators.empty()) throw ConfigError("invalid configuration: no indicators requested");
    if (wants(IndicatorKind::dsm_single))
        throw ConfigError(
            "invalid configuration: dsm-single needs a designated transmit and is not a "
            "pipeline indicator (use dsm-multi)");
    for (DataMode mode : {DataMode::monostatic, DataMode::multistatic}) {
        if (needs_mode(mode) && !mode_allowed(mode))
            throw ConfigError(
                "invalid configuration: a requested indicator needs a data mode the aperture "
                "does not provide");
    }
    double prev = -1.0;
    for (double k : thresholds) {
        if (!(k >= 0.0 && k <= 1.0))
            throw ConfigError("invalid configuration: thresholds must lie in [0,1]");
        if (!(k > prev)) throw ConfigError("invalid configuration: thresholds must be ascending");
        prev = k;
    }
    if (thresholds.empty()) throw ConfigError("invalid configuration: empty threshold list");
    if (!(peak_kappa >= 0.0 && peak_kappa <= 1.0))
        throw ConfigError("invalid configuration: peak_kappa must lie in [0,1]");
    if (engine.kind == EngineConfig::Kind::mom && engine.pixels_per_wavelength < 10)
        throw ConfigError(
            "invalid configuration: mom engine needs pixels_per_wavelength >= 10");
    for (const TargetConfig& t : targets)
        if (!(t.eps_rel > 0.0))
            throw ConfigError("invalid configuration: eps_rel must be positive");
}

// ------------------------------------------------------------------- JSON

namespace detail {

inline Json vec2_to_json(Vec2 v) { return Json::array({v.x, v.y}); }

inline Vec2 vec2_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("config: " + where + " must be a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
T config_get(const Json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("config: missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config: field '" + key + "' has the wrong type");
    }
}

inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> known,
                                const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known)
            if (item.key() == k) ok = true;
        if (!ok) throw ConfigError("config: unknown field '" + item.key() + "' in " + where);
    }
}

}  // namespace detail

inline Json to_json(const ExperimentConfig& cfg) {
    Json j;
    j["name"] = cfg.name;
    j["medium"] = {{"wavelength", cfg.wavelength}, {"mu0", cfg.mu0}, {"eps0", cfg.eps0}};
    Json targets = Json::array();
    for (const TargetConfig& t : cfg.targets)
        targets.push_back({{"center", detail::vec2_to_json(t.center)},
                           {"radius", t.radius},
                           {"eps_rel", t.eps_rel}});
    j["scene"] = {{"targets", targets},
                  {"roi", {{"center", detail::vec2_to_json(cfg.roi_center)},
                           {"side", cfg.roi_side}}}};
    Json aperture = {{"n", cfg.aperture.n},
                     {"arc_start", cfg.aperture.arc_start},
                     {"arc_end", cfg.aperture.arc_end}};
    if (!cfg.aperture.modes.empty()) {
        Json modes = Json::array();
        for (DataMode m : cfg.aperture.modes)
            modes.push_back(m == DataMode::monostatic ? "mono" : "multi");
        aperture["modes"] = modes;
    }
    j["aperture"] = aperture;
    j["grid"] = {{"center", detail::vec2_to_json(cfg.grid_center)},
                 {"side", cfg.grid_side},
                 {"n_per_side", cfg.grid_n}};
    j["engine"] = {{"kind", cfg.engine.kind == EngineConfig::Kind::mom ? "mom" : "asymptotic"},
                   {"pixels_per_wavelength", cfg.engine.pixels_per_wavelength}};
    j["noise"] = {{"snr_db", cfg.noise.snr_db ? Json(*cfg.noise.snr_db) : Json("off")},
                  {"seed", cfg.noise.seed}};
    Json indicators = Json::array();
    for (IndicatorKind k : cfg.indicators) indicators.push_back(indicator_name(k));
    j["indicators"] = indicators;
    j["thresholds"] = cfg.thresholds;
    j["peak_kappa"] = cfg.peak_kappa;
    j["output_dir"] = cfg.output_dir;
    return j;
}

inline ExperimentConfig config_from_json(const Json& j) {
    using detail::config_get;
    if (!j.is_object()) throw ConfigError("config: document must be a JSON object");
    detail::reject_unknown_keys(j,
                                {"name", "medium", "scene", "aperture", "grid", "engine",
                                 "noise", "indicators", "thresholds", "peak_kappa",
                                 "output_dir"},
                                "the top level");

    ExperimentConfig cfg;
    cfg.name = j.contains("name") ? config_get<std::string>(j, "name") : "";

    const Json& med = j.contains("medium") ? j.at("medium") : throw ConfigError("config: missing field 'medium'");
    detail::reject_unknown_keys(med, {"wavelength", "mu0", "eps0"}, "'medium'");
    cfg.wavelength = config_get<double>(med, "wavelength");
    cfg.mu0 = config_get<double>(med, "mu0");
    cfg.eps0 = config_get<double>(med, "eps0");

    const Json& scene = j.contains("scene") ? j.at("scene") : throw ConfigError("config: missing field 'scene'");
    detail::reject_unknown_keys(scene, {"targets", "roi"}, "'scene'");
    if (!scene.contains("targets") || !scene.at("targets").is_array())
        throw ConfigError("config: scene.targets must be an array");
    for (const Json& t : scene.at("targets")) {
        detail::reject_unknown_keys(t, {"center", "radius", "eps_rel"}, "a target");
        TargetConfig target;
        target.center = detail::vec2_from_json(
            t.contains("center") ? t.at("center") : throw ConfigError("config: target missing 'center'"),
            "target center");
        target.radius = config_get<double>(t, "radius");
        target.eps_rel = config_get<double>(t, "eps_rel");
        cfg.targets.push_back(target);
    }
    const Json& roi = scene.contains("roi") ? scene.at("roi") : throw ConfigError("config: missing field 'scene.roi'");
    detail::reject_unknown_keys(roi, {"center", "side"}, "'scene.roi'");
    cfg.roi_center = detail::vec2_from_json(
        roi.contains("center") ? roi.at("center") : throw ConfigError("config: roi missing 'center'"),
        "roi center");
    cfg.roi_side = config_get<double>(roi, "side");

    const Json& ap = j.contains("aperture") ? j.at("aperture") : throw ConfigError("config: missing field 'aperture'");
    detail::reject_unknown_keys(ap, {"n", "arc_start", "arc_end", "modes"}, "'aperture'");
    cfg.aperture.n = config_get<std::size_t>(ap, "n");
    cfg.aperture.arc_start = config_get<double>(ap, "arc_start");
    cfg.aperture.arc_end = config_get<double>(ap, "arc_end");
    if (ap.contains("modes")) {
        for (const Json& m : ap.at("modes")) {
            const std::string s = m.get<std::string>();
            if (s == "mono")
                cfg.aperture.modes.push_back(DataMode::monostatic);
            else if (s == "multi")
                cfg.aperture.modes.push_back(DataMode::multistatic);
            else
                throw ConfigError("config: aperture mode must be 'mono' or 'multi'");
        }
    }

    const Json& grid = j.contains("grid") ? j.at("grid") : throw ConfigError("config: missing field 'grid'");
    detail::reject_unknown_keys(grid, {"center", "side", "n_per_side"}, "'grid'");
    cfg.grid_center = detail::vec2_from_json(
        grid.contains("center") ? grid.at("center") : throw ConfigError("config: grid missing 'center'"),
        "grid center");
    cfg.grid_side = config_get<double>(grid, "side");
    cfg.grid_n = config_get<std::size_t>(grid, "n_per_side");

    if (j.contains("engine")) {
        const Json& eng = j.at("engine");
        detail::reject_unknown_keys(eng, {"kind", "pixels_per_wavelength"}, "'engine'");
        const std::string kind = config_get<std::string>(eng, "kind");
        if (kind == "asymptotic")
            cfg.engine.kind = EngineConfig::Kind::asymptotic;
        else if (kind == "mom")
            cfg.engine.kind = EngineConfig::Kind::mom;
        else
            throw ConfigError("config: engine.kind must be 'asymptotic' or 'mom'");
        if (eng.contains("pixels_per_wavelength"))
            cfg.engine.pixels_per_wavelength = config_get<std::size_t>(eng, "pixels_per_wavelength");
    }

    if (j.contains("noise")) {
        const Json& noise = j.at("noise");
        detail::reject_unknown_keys(noise, {"snr_db", "seed"}, "'noise'");
        if (noise.contains("snr_db")) {
            const Json& s = noise.at("snr_db");
            if (s.is_number())
                cfg.noise.snr_db = s.get<double>();
            else if (s.is_null() || (s.is_string() && s.get<std::string>() == "off"))
                cfg.noise.snr_db.reset();
            else
                throw ConfigError("config: noise.snr_db must be a number, null, or \"off\"");
        }
        if (noise.contains("seed")) cfg.noise.seed = config_get<std::uint64_t>(noise, "seed");
    }

    if (!j.contains("indicators")) throw ConfigError("config: missing field 'indicators'");
    for (const Json& name : j.at("indicators")) {
        try {
            cfg.indicators.push_back(indicator_from_name(name.get<std::string>()));
        } catch (const Error& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }

    if (j.contains("thresholds")) {
        cfg.thresholds = config_get<std::vector<double>>(j, "thresholds");
    } else {
        for (int k = 0; k <= 100; ++k) cfg.thresholds.push_back(k / 100.0);
    }
    if (j.contains("peak_kappa")) cfg.peak_kappa = config_get<double>(j, "peak_kappa");
    if (j.contains("output_dir")) cfg.output_dir = config_get<std::string>(j, "output_dir");
    return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
    return config_from_json(j);
}

// ----------------------------------------------------------------- presets

/// Built-in experiment presets with the reference parameters:
/// a 0.4 m wavelength background, a 4-wavelength square ROI sampled with
/// 50x50 pixels, N = 36 directions on the full circle (example3: N = 19 on
/// the upper half-circle), 20 dB noise.
inline ExperimentConfig preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.wavelength = 0.4;
    cfg.mu0 = 1.256e-6;
    cfg.eps0 = 8.856e-12;
    const double lambda = cfg.wavelength;
    cfg.roi_center = {0.0, 0.0};
    cfg.roi_side = 4.0 * lambda;
    cfg.grid_center = {0.0, 0.0};
    cfg.grid_side = 4.0 * lambda;
    cfg.grid_n = 50;
    cfg.aperture = {36, 0.0, two_pi, {}};
    cfg.noise.snr_db = 20.0;
    cfg.noise.seed = 1;
    cfg.indicators = {IndicatorKind::dsm_multi, IndicatorKind::dsm_mono,
                      IndicatorKind::mdsm_mono};
    for (int k = 0; k <= 100; ++k) cfg.thresholds.push_back(k / 100.0);

    const std::vector<TargetConfig> three_disks = {
        {{0.75 * lambda, -0.75 * lambda}, 0.075 * lambda, 5.0},
        {{-1.0 * lambda, -0.5 * lambda}, 0.075 * lambda, 5.0},
        {{-0.75 * lambda, 1.0 * lambda}, 0.075 * lambda, 5.0},
    };

    if (name == "example1") {
        cfg.targets = three_disks;
    } else if (name == "example2") {
        cfg.targets = {{{-0.75 * lambda, -0.75 * lambda}, 1.0 * lambda, 5.0}};
        cfg.engine.kind = EngineConfig::Kind::mom;
        cfg.engine.pixels_per_wavelength = 10;
    } else if (name == "example3") {
        cfg.targets = three_disks;
        cfg.aperture = {19, 0.0, pi, {}};
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected example1|example2|example3)");
    }
    return cfg;
}

}  // namespace dsm2d
