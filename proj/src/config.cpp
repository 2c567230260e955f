#include "spdc/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc::config {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Entry {
    std::string value;
    int line;
};

double to_number(const std::string& key, const Entry& e,
                 const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError(path + ":" + std::to_string(e.line) + ": key '" +
                          key + "' expects a number, got '" + e.value + "'");
    return v;
}

long to_integer(const std::string& key, const Entry& e,
                const std::string& path) {
    const double v = to_number(key, e, path);
    if (v != std::floor(v))
        throw ConfigError(path + ":" + std::to_string(e.line) + ": key '" +
                          key + "' expects an integer");
    return static_cast<long>(v);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (crystal_medium.empty())
        throw ConfigError("crystal.medium must not be empty");
    if (!(crystal_length_mm > 0))
        throw ConfigError("crystal.length_mm must be positive");
    if (crystal_cut_deg && !(*crystal_cut_deg > 0 && *crystal_cut_deg < 90))
        throw ConfigError("crystal.cut must be 'auto' or in (0, 90) degrees");
    if (!(pump_wavelength_um > 0))
        throw ConfigError("pump.wavelength_um must be positive");
    if (!(pump_fwhm_fs > 0)) throw ConfigError("pump.fwhm_fs must be positive");
    if (pump_n_pulses != 1 && pump_n_pulses != 2)
        throw ConfigError("pump.n_pulses must be 1 or 2");
    if (pump_delay_fs && pump_quartz_length_mm)
        throw ConfigError(
            "pump.delay_fs and pump.quartz_length_mm are mutually exclusive; "
            "set only one");
    if (pump_n_pulses == 2 && !pump_delay_fs && !pump_quartz_length_mm)
        throw ConfigError(
            "two-pulse pump needs pump.delay_fs or pump.quartz_length_mm");
    if (pump_delay_fs && !(*pump_delay_fs >= 0))
        throw ConfigError("pump.delay_fs must be >= 0");
    if (pump_quartz_length_mm && !(*pump_quartz_length_mm >= 0))
        throw ConfigError("pump.quartz_length_mm must be >= 0");
    if (!(focal_length_cm > 0))
        throw ConfigError("detector.focal_length_cm must be positive");
    if (!(filter_center_nm > 0))
        throw ConfigError("detector.filter_center_nm must be positive");
    if (!(filter_fwhm_nm > 0))
        throw ConfigError("detector.filter_fwhm_nm must be positive");
    if (!(scan_min_mm < scan_max_mm))
        throw ConfigError("detector.scan_min_mm must be below scan_max_mm");
    if (scan_points < 2)
        throw ConfigError("detector.scan_points must be >= 2");
    if (!(quad_rel_tol > 0 && quad_rel_tol < 1))
        throw ConfigError("quadrature.rel_tol must be in (0, 1)");
    if (quad_max_evals < 100)
        throw ConfigError("quadrature.max_evals must be >= 100");
    if (!(window_fraction > 0 && window_fraction <= 1))
        throw ConfigError("analysis.window_fraction must be in (0, 1]");
    if (!(q_observable > 0) || !(q_high_visibility >= q_observable))
        throw ConfigError(
            "analysis.q_observable must be positive and not above "
            "analysis.q_high_visibility");
    if (!(filter_ratio_threshold > 0))
        throw ConfigError("analysis.filter_ratio_threshold must be positive");
}

std::string ExperimentConfig::canonical_text() const {
    std::ostringstream os;
    os << "crystal.medium = " << crystal_medium << "\n";
    os << "crystal.length_mm = " << format_g(crystal_length_mm) << "\n";
    os << "crystal.cut = "
       << (crystal_cut_deg ? format_g(*crystal_cut_deg) : std::string("auto"))
       << "\n";
    os << "crystal.idler_polarization = "
       << (idler_polarization == dispersion::Axis::ordinary ? "ordinary"
                                                            : "extraordinary")
       << "\n";
    os << "pump.wavelength_um = " << format_g(pump_wavelength_um) << "\n";
    os << "pump.fwhm_fs = " << format_g(pump_fwhm_fs) << "\n";
    os << "pump.n_pulses = " << pump_n_pulses << "\n";
    if (pump_delay_fs)
        os << "pump.delay_fs = " << format_g(*pump_delay_fs) << "\n";
    if (pump_quartz_length_mm)
        os << "pump.quartz_length_mm = " << format_g(*pump_quartz_length_mm)
           << "\n";
    os << "detector.focal_length_cm = " << format_g(focal_length_cm) << "\n";
    os << "detector.filter_center_nm = " << format_g(filter_center_nm) << "\n";
    os << "detector.filter_fwhm_nm = " << format_g(filter_fwhm_nm) << "\n";
    os << "detector.filter_shape = "
       << (filter_shape == detection::FilterShape::gaussian ? "gaussian"
                                                            : "rectangular")
       << "\n";
    os << "detector.scan_min_mm = " << format_g(scan_min_mm) << "\n";
    os << "detector.scan_max_mm = " << format_g(scan_max_mm) << "\n";
    os << "detector.scan_points = " << scan_points << "\n";
    os << "quadrature.rel_tol = " << format_g(quad_rel_tol) << "\n";
    os << "quadrature.max_evals = " << quad_max_evals << "\n";
    os << "analysis.window_fraction = " << format_g(window_fraction) << "\n";
    os << "analysis.q_observable = " << format_g(q_observable) << "\n";
    os << "analysis.q_high_visibility = " << format_g(q_high_visibility)
       << "\n";
    os << "analysis.filter_ratio_threshold = "
       << format_g(filter_ratio_threshold) << "\n";
    return os.str();
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");

    std::map<std::string, Entry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (entries.count(key))
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        entries[key] = {value, lineno};
    }

    ExperimentConfig cfg;
    auto take = [&](const std::string& key) -> std::optional<Entry> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        Entry e = it->second;
        entries.erase(it);
        return e;
    };

    if (auto e = take("crystal.medium")) cfg.crystal_medium = e->value;
    if (auto e = take("crystal.length_mm"))
        cfg.crystal_length_mm = to_number("crystal.length_mm", *e, path);
    if (auto e = take("crystal.cut")) {
        if (e->value == "auto")
            cfg.crystal_cut_deg.reset();
        else
            cfg.crystal_cut_deg = to_number("crystal.cut", *e, path);
    }
    if (auto e = take("crystal.idler_polarization")) {
        if (e->value == "ordinary")
            cfg.idler_polarization = dispersion::Axis::ordinary;
        else if (e->value == "extraordinary")
            cfg.idler_polarization = dispersion::Axis::extraordinary;
        else
            throw ConfigError(path + ":" + std::to_string(e->line) +
                              ": crystal.idler_polarization must be "
                              "ordinary|extraordinary");
    }
    if (auto e = take("pump.wavelength_um"))
        cfg.pump_wavelength_um = to_number("pump.wavelength_um", *e, path);
    if (auto e = take("pump.fwhm_fs"))
        cfg.pump_fwhm_fs = to_number("pump.fwhm_fs", *e, path);
    if (auto e = take("pump.n_pulses"))
        cfg.pump_n_pulses =
            static_cast<int>(to_integer("pump.n_pulses", *e, path));
    if (auto e = take("pump.delay_fs"))
        cfg.pump_delay_fs = to_number("pump.delay_fs", *e, path);
    if (auto e = take("pump.quartz_length_mm"))
        cfg.pump_quartz_length_mm =
            to_number("pump.quartz_length_mm", *e, path);
    if (auto e = take("detector.focal_length_cm"))
        cfg.focal_length_cm = to_number("detector.focal_length_cm", *e, path);
    if (auto e = take("detector.filter_center_nm"))
        cfg.filter_center_nm =
            to_number("detector.filter_center_nm", *e, path);
    if (auto e = take("detector.filter_fwhm_nm"))
        cfg.filter_fwhm_nm = to_number("detector.filter_fwhm_nm", *e, path);
    if (auto e = take("detector.filter_shape")) {
        if (e->value == "gaussian")
            cfg.filter_shape = detection::FilterShape::gaussian;
        else if (e->value == "rectangular")
            cfg.filter_shape = detection::FilterShape::rectangular;
        else
            throw ConfigError(path + ":" + std::to_string(e->line) +
                              ": detector.filter_shape must be "
                              "gaussian|rectangular");
    }
    if (auto e = take("detector.scan_min_mm"))
        cfg.scan_min_mm = to_number("detector.scan_min_mm", *e, path);
    if (auto e = take("detector.scan_max_mm"))
        cfg.scan_max_mm = to_number("detector.scan_max_mm", *e, path);
    if (auto e = take("detector.scan_points"))
        cfg.scan_points =
            static_cast<int>(to_integer("detector.scan_points", *e, path));
    if (auto e = take("quadrature.rel_tol"))
        cfg.quad_rel_tol = to_number("quadrature.rel_tol", *e, path);
    if (auto e = take("quadrature.max_evals"))
        cfg.quad_max_evals = to_integer("quadrature.max_evals", *e, path);
    if (auto e = take("analysis.window_fraction"))
        cfg.window_fraction = to_number("analysis.window_fraction", *e, path);
    if (auto e = take("analysis.q_observable"))
        cfg.q_observable = to_number("analysis.q_observable", *e, path);
    if (auto e = take("analysis.q_high_visibility"))
        cfg.q_high_visibility =
            to_number("analysis.q_high_visibility", *e, path);
    if (auto e = take("analysis.filter_ratio_threshold"))
        cfg.filter_ratio_threshold =
            to_number("analysis.filter_ratio_threshold", *e, path);

    if (!entries.empty()) {
        const auto& first = *entries.begin();
        throw ConfigError(path + ":" + std::to_string(first.second.line) +
                          ": unknown key '" + first.first + "'");
    }

    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return cfg;
}

ExperimentSetup build_setup(const ExperimentConfig& cfg,
                            dispersion::MediumStore& store) {
    cfg.validate();

    pump::PumpTrain train;
    train.omega_p = units::omega_from_wavelength(cfg.pump_wavelength_um);
    train.fwhm_fs = cfg.pump_fwhm_fs;
    train.n_pulses = cfg.pump_n_pulses;
    if (cfg.pump_delay_fs) {
        train.delay_fs = *cfg.pump_delay_fs;
    } else if (cfg.pump_quartz_length_mm) {
        const pump::DelayLine line{*cfg.pump_quartz_length_mm * 1000.0,
                                   store.pair("quartz")};
        train.delay_fs = pump::quartz_delay(line, cfg.pump_wavelength_um);
    } else {
        train.delay_fs = 0.0;
    }

    dispersion::CrystalCut cut;
    cut.media = store.pair(cfg.crystal_medium);
    cut.length_um = cfg.crystal_length_mm * 1000.0;
    cut.cut_angle =
        cfg.crystal_cut_deg ? units::deg_to_rad(*cfg.crystal_cut_deg) : 0.0;

    detection::DetectorModel det;
    det.focal_length_um = cfg.focal_length_cm * 1e4;
    det.filter_center_um = cfg.filter_center_nm * 1e-3;
    det.filter_fwhm_um = cfg.filter_fwhm_nm * 1e-3;
    det.filter_shape = cfg.filter_shape;
    det.scan_x_um.resize(cfg.scan_points);
    const double lo = cfg.scan_min_mm * 1000.0;
    const double hi = cfg.scan_max_mm * 1000.0;
    for (int i = 0; i < cfg.scan_points; ++i)
        det.scan_x_um[i] =
            lo + (hi - lo) * i / static_cast<double>(cfg.scan_points - 1);

    detection::QuadratureControls controls;
    controls.rel_tol = cfg.quad_rel_tol;
    controls.max_evals = static_cast<std::size_t>(cfg.quad_max_evals);

    analysis::Thresholds th;
    th.q_observable = cfg.q_observable;
    th.q_high_visibility = cfg.q_high_visibility;
    th.filter_ratio = cfg.filter_ratio_threshold;

    return ExperimentSetup{
        kernel::CrystalSystem(cut, train, cfg.idler_polarization),
        std::move(det), controls, th, cfg.window_fraction, train.delay_fs};
}

}  // namespace spdc::config
