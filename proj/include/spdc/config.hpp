#pragma once

#include <optional>
#include <string>

#include "spdc/analysis.hpp"
#include "spdc/detection.hpp"
#include "spdc/kernel.hpp"

namespace spdc::config {

// Experiment description as read from a `key = value` config file. Units in
// the file are the operator-friendly ones (mm, nm, cm); conversion to the
// internal um/fs system happens in build_system().
struct ExperimentConfig {
    // crystal
    std::string crystal_medium = "BBO";
    double crystal_length_mm = 3.0;
    std::optional<double> crystal_cut_deg;   // nullopt = solve ("auto")
    dispersion::Axis idler_polarization = dispersion::Axis::extraordinary;

    // pump
    double pump_wavelength_um = 0.4;
    double pump_fwhm_fs = 140.0;
    int pump_n_pulses = 2;
    std::optional<double> pump_delay_fs;
    std::optional<double> pump_quartz_length_mm;

    // detector
    double focal_length_cm = 20.0;
    double filter_center_nm = 800.0;
    double filter_fwhm_nm = 1.0;
    detection::FilterShape filter_shape = detection::FilterShape::rectangular;
    double scan_min_mm = -15.0;
    double scan_max_mm = 15.0;
    int scan_points = 401;

    // quadrature
    double quad_rel_tol = 1e-4;
    long quad_max_evals = 200000;

    // analysis
    double window_fraction = 0.5;
    double q_observable = 2.0;
    double q_high_visibility = 5.0;
    double filter_ratio_threshold = 1.4;

    void validate() const;   // throws ConfigError naming the offending key

    // Canonical `key = value` rendering of the full effective config,
    // fixed key order; the audit trail embedded in every output file.
    std::string canonical_text() const;
};

// Parses and validates a config file. Unknown keys are rejected; every
// error message carries the file name and line number.
ExperimentConfig load_config(const std::string& path);

// Everything needed to run scans, assembled from a validated config.
struct ExperimentSetup {
    kernel::CrystalSystem system;
    detection::DetectorModel detector;
    detection::QuadratureControls controls;
    analysis::Thresholds thresholds;
    double window_fraction;
    double delay_fs;   // resolved inter-pulse delay
};

ExperimentSetup build_setup(const ExperimentConfig& cfg,
                            dispersion::MediumStore& store);

}  // namespace spdc::config
