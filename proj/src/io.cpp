#include "spdc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc::io {

namespace {

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string echo_as_comments(const std::string& config_echo) {
    std::ostringstream os;
    std::istringstream in(config_echo);
    std::string line;
    while (std::getline(in, line)) os << "# " << line << "\n";
    return os.str();
}

}  // namespace

std::string spectrum_csv(const detection::AngularSpectrum& spectrum,
                         const std::vector<double>& predicted_peaks_x_um) {
    std::ostringstream os;
    os << echo_as_comments(spectrum.config_echo);
    os << "x_um,theta_s_rad,rate\n";
    for (const auto& p : spectrum.points)
        os << format_g(p.x_um) << ',' << format_g(p.theta_s) << ','
           << format_g(p.rate) << "\n";
    for (double x : predicted_peaks_x_um)
        os << "# predicted_peak_x_um = " << format_g(x) << "\n";
    return os.str();
}

std::string sweep_csv(const std::string& parameter_name,
                      const std::string& config_echo,
                      const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << echo_as_comments(config_echo);
    os << parameter_name << ",q,visibility,runtime_s\n";
    for (const auto& r : rows) {
        os << format_g(r.parameter) << ',' << format_g(r.q) << ','
           << (r.has_visibility ? format_g(r.visibility)
                                : std::string("undefined"))
           << ',' << format_g(r.runtime_s) << "\n";
    }
    return os.str();
}

std::string gnuplot_script(const std::string& csv_path) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set xlabel 'detector position x (um)'\n"
       << "set ylabel 'signal rate (arb. units)'\n"
       << "set grid\n"
       << "plot '" << csv_path << "' using 1:3 with lines title 'SPDC angular spectrum'\n"
       << "pause -1\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw Error("failed writing output file '" + path + "'");
}

}  // namespace spdc::io
