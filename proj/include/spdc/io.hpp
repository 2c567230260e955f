#pragma once

#include <string>
#include <vector>

#include "spdc/detection.hpp"

namespace spdc::io {

// Angular-spectrum CSV: '#'-prefixed config echo, header row
// `x_um,theta_s_rad,rate`, one row per scan point, >= 9 significant digits.
// Predicted peak positions, when given, are appended as comment lines.
std::string spectrum_csv(const detection::AngularSpectrum& spectrum,
                         const std::vector<double>& predicted_peaks_x_um);

// One sweep row: parameter value, Q, visibility (or `undefined`), runtime.
struct SweepRow {
    double parameter = 0.0;
    double q = 0.0;
    bool has_visibility = false;
    double visibility = 0.0;
    double runtime_s = 0.0;
};

std::string sweep_csv(const std::string& parameter_name,
                      const std::string& config_echo,
                      const std::vector<SweepRow>& rows);

// Minimal gnuplot script plotting a spectrum CSV.
std::string gnuplot_script(const std::string& csv_path);

void write_file(const std::string& path, const std::string& content);

}  // namespace spdc::io
