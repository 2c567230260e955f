#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spdc/detection.hpp"
#include "spdc/kernel.hpp"

namespace spdc::analysis {

// Q = L |u_p^-1 - u_i^-1| / T_p (Eq.-8-style interference criterion) for
// the system's configured idler branch. Throws ConfigError when T_p = 0
// (the single-pulse case has no Q).
double q_parameter(const kernel::CrystalSystem& sys);

// Same with an explicit idler branch (the criteria report shows both).
double q_parameter(const kernel::CrystalSystem& sys, dispersion::Axis idler);

// Idler emission-time indeterminacy Delta_t_i = L |u_i^-1 - u_p^-1|, fs.
double idler_smear(const kernel::CrystalSystem& sys);
double idler_smear(const kernel::CrystalSystem& sys, dispersion::Axis idler);

struct FilterCriterion {
    double delta_omega = 0.0;   // filter FWHM in rad/fs
    double ratio = 0.0;         // pi / (delta_omega * T_p)
    bool ok = false;
};

// Spectral-selection condition: the filter band must stay well inside one
// pump-spectrum modulation period; ok iff ratio >= threshold.
FilterCriterion filter_criterion(double filter_fwhm_um, double center_um,
                                 double delay_fs, double threshold);

struct Window {
    double lo_um = 0.0;
    double hi_um = 0.0;
};

// Central fraction of the scanned interval.
Window central_window(const detection::AngularSpectrum& spectrum,
                      double fraction);

// Fringe visibility (mean of interior local maxima vs minima after 3-point
// moving-average smoothing) inside the window. Shallow adjacent extremum
// pairs below prominence*(curve range) are pruned as noise. Throws
// NotEnoughFringesError (< 2 maxima or < 1 minimum) — distinct from V = 0.
double visibility(const detection::AngularSpectrum& spectrum,
                  const Window& window, double prominence = 5e-4);

// Non-throwing variant for sweeps and reports.
std::optional<double> visibility_opt(const detection::AngularSpectrum& spectrum,
                                     const Window& window,
                                     double prominence = 5e-4);

// Detector positions of the interior local maxima used by the visibility
// metric (diagnostics and the peak-agreement checks).
std::vector<double> argmax_positions(const detection::AngularSpectrum& spectrum,
                                     const Window& window,
                                     double prominence = 5e-4);

// Predicted fringe-maximum positions: solves
// (omega_s0 + omega_i*(theta) - omega_p) T_p = 2 pi m over the scan range at
// the filter-center signal frequency, mapped to x through the lens and the
// exit-face refraction. Sorted ascending. Requires a two-pulse pump.
std::vector<double> predicted_peaks(const kernel::CrystalSystem& sys,
                                    const detection::DetectorModel& detector);

struct Thresholds {
    double q_observable = 2.0;
    double q_high_visibility = 5.0;
    double filter_ratio = 1.4;
};

// Criteria summary; visibility and peaks are filled only when a scan was run.
struct InterferenceReport {
    double q = 0.0;                   // configured idler branch
    double q_ordinary = 0.0;
    double q_extraordinary = 0.0;
    double delta_t_i_fs = 0.0;
    double delay_fs = 0.0;
    double filter_ratio = 0.0;
    double filter_delta_omega = 0.0;
    bool q_ok = false;
    bool q_high_visibility = false;
    bool filter_ok = false;
    std::optional<double> visibility;
    bool fringes_found = false;
    std::vector<double> peak_positions_x_um;

    // Line-oriented `key = value` rendering.
    std::string to_text() const;
    // CSV row; column order matches csv_header().
    static std::string csv_header();
    std::string to_csv_row() const;
};

InterferenceReport make_report(const kernel::CrystalSystem& sys,
                               const detection::DetectorModel& detector,
                               const Thresholds& thresholds);

InterferenceReport make_report(const kernel::CrystalSystem& sys,
                               const detection::DetectorModel& detector,
                               const Thresholds& thresholds,
                               const detection::AngularSpectrum& spectrum,
                               double window_fraction);

}  // namespace spdc::analysis
