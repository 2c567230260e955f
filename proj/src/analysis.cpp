#include "spdc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/numeric.hpp"
#include "spdc/units.hpp"

namespace spdc::analysis {

using dispersion::Axis;
using kernel::CrystalSystem;

namespace {

double group_delay_mismatch(const CrystalSystem& sys, Axis idler) {
    const double lambda_i = 2.0 * sys.pump_train().wavelength_um();
    const double u_i = sys.crystal().media.group_velocity(
        idler, lambda_i, sys.theta_pm());
    return sys.crystal().length_um *
           std::fabs(1.0 / sys.u_pump() - 1.0 / u_i);
}

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

double q_parameter(const CrystalSystem& sys, Axis idler) {
    const double tp = sys.pump_train().delay_fs;
    if (!(tp > 0))
        throw ConfigError(
            "Q criterion undefined: inter-pulse delay is zero (single-pulse "
            "pump has no Q)");
    return group_delay_mismatch(sys, idler) / tp;
}

double q_parameter(const CrystalSystem& sys) {
    return q_parameter(sys, sys.idler_axis());
}

double idler_smear(const CrystalSystem& sys, Axis idler) {
    return group_delay_mismatch(sys, idler);
}

double idler_smear(const CrystalSystem& sys) {
    return idler_smear(sys, sys.idler_axis());
}

FilterCriterion filter_criterion(double filter_fwhm_um, double center_um,
                                 double delay_fs, double threshold) {
    if (!(filter_fwhm_um > 0) || !(center_um > 0) || !(delay_fs > 0))
        throw ConfigError("filter criterion needs positive bandwidth, center "
                          "wavelength and delay");
    FilterCriterion fc;
    fc.delta_omega =
        units::bandwidth_omega_from_wavelength(filter_fwhm_um, center_um);
    fc.ratio = units::pi / (fc.delta_omega * delay_fs);
    fc.ok = fc.ratio >= threshold;
    return fc;
}

Window central_window(const detection::AngularSpectrum& spectrum,
                      double fraction) {
    if (spectrum.points.empty()) throw ConfigError("empty spectrum");
    const double lo = spectrum.points.front().x_um;
    const double hi = spectrum.points.back().x_um;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * fraction * (hi - lo);
    return {mid - half, mid + half};
}

namespace {

struct Extremum {
    std::size_t index;
    double value;
    bool is_max;
};

// Smoothed curve inside the window plus its pruned alternating extrema.
struct FringeScan {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<Extremum> extrema;
};

FringeScan scan_extrema(const detection::AngularSpectrum& spectrum,
                        const Window& window, double prominence) {
    FringeScan fs;
    std::vector<double> raw;
    for (const auto& p : spectrum.points) {
        if (p.x_um < window.lo_um || p.x_um > window.hi_um) continue;
        fs.x.push_back(p.x_um);
        raw.push_back(p.rate);
    }
    const std::size_t n = raw.size();
    fs.y = raw;
    for (std::size_t i = 1; i + 1 < n; ++i)
        fs.y[i] = (raw[i - 1] + raw[i] + raw[i + 1]) / 3.0;
    if (n < 3) return fs;

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (fs.y[i] > fs.y[i - 1] && fs.y[i] >= fs.y[i + 1])
            fs.extrema.push_back({i, fs.y[i], true});
        else if (fs.y[i] < fs.y[i - 1] && fs.y[i] <= fs.y[i + 1])
            fs.extrema.push_back({i, fs.y[i], false});
    }

    const auto [mn, mx] = std::minmax_element(fs.y.begin(), fs.y.end());
    const double prom = prominence * (*mx - *mn);
    // prune adjacent max/min pairs with contrast below the noise guard
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < fs.extrema.size(); ++i) {
            if (std::fabs(fs.extrema[i].value - fs.extrema[i + 1].value) <
                prom) {
                fs.extrema.erase(fs.extrema.begin() + i,
                                 fs.extrema.begin() + i + 2);
                changed = true;
                break;
            }
        }
    }
    return fs;
}

}  // namespace

double visibility(const detection::AngularSpectrum& spectrum,
                  const Window& window, double prominence) {
    const FringeScan fs = scan_extrema(spectrum, window, prominence);
    double sum_max = 0.0, sum_min = 0.0;
    std::size_t n_max = 0, n_min = 0;
    for (const auto& e : fs.extrema) {
        if (e.is_max) {
            sum_max += e.value;
            ++n_max;
        } else {
            sum_min += e.value;
            ++n_min;
        }
    }
    if (n_max < 2 || n_min < 1)
        throw NotEnoughFringesError(
            "visibility undefined: window holds " + std::to_string(n_max) +
            " maxima and " + std::to_string(n_min) +
            " minima (need >= 2 and >= 1)");
    const double i_max = sum_max / static_cast<double>(n_max);
    const double i_min = sum_min / static_cast<double>(n_min);
    return (i_max - i_min) / (i_max + i_min);
}

std::optional<double> visibility_opt(const detection::AngularSpectrum& spectrum,
                                     const Window& window, double prominence) {
    try {
        return visibility(spectrum, window, prominence);
    } catch (const NotEnoughFringesError&) {
        return std::nullopt;
    }
}

std::vector<double> argmax_positions(const detection::AngularSpectrum& spectrum,
                                     const Window& window, double prominence) {
    const FringeScan fs = scan_extrema(spectrum, window, prominence);
    std::vector<double> xs;
    for (const auto& e : fs.extrema)
        if (e.is_max) xs.push_back(fs.x[e.index]);
    return xs;
}

std::vector<double> predicted_peaks(const CrystalSystem& sys,
                                    const detection::DetectorModel& detector) {
    const auto& train = sys.pump_train();
    if (train.n_pulses != 2)
        throw ConfigError("predicted_peaks needs a two-pulse pump");
    detector.validate();

    const double omega_s0 =
        units::omega_from_wavelength(detector.filter_center_um);
    const double n_s = sys.n_signal(omega_s0);
    const double x_hi = std::max(std::fabs(detector.scan_x_um.front()),
                                 std::fabs(detector.scan_x_um.back()));
    const double theta_max =
        x_hi / detector.focal_length_um / n_s;

    const auto nu_star = [&](double theta) {
        const kernel::SignalMode mode{omega_s0, theta};
        return omega_s0 + detection::solve_idler_frequency(sys, mode) -
               train.omega_p;
    };
    const double nu0 = nu_star(0.0);
    const double nu_edge = nu_star(theta_max);
    // nu*(theta) decreases monotonically from nu0 as |theta| grows
    const double step = units::two_pi / train.delay_fs;
    const int m_hi = static_cast<int>(std::floor(nu0 / step));
    const int m_lo = static_cast<int>(std::ceil(nu_edge / step));

    std::vector<double> peaks;
    for (int m = m_lo; m <= m_hi; ++m) {
        const double target = m * step;
        const auto g = [&](double th) { return nu_star(th) - target; };
        double theta_m;
        if (g(0.0) == 0.0) {
            theta_m = 0.0;
        } else {
            theta_m = numeric::brent_root(g, 0.0, theta_max, 1e-12);
        }
        const double x =
            detector.focal_length_um * n_s * theta_m;
        if (theta_m < 1e-12) {
            peaks.push_back(0.0);
        } else {
            peaks.push_back(-x);
            peaks.push_back(x);
        }
    }
    std::sort(peaks.begin(), peaks.end());
    // keep only peaks inside the scanned interval
    std::vector<double> inside;
    for (double x : peaks)
        if (x >= detector.scan_x_um.front() && x <= detector.scan_x_um.back())
            inside.push_back(x);
    return inside;
}

std::string InterferenceReport::to_text() const {
    std::ostringstream os;
    os << "q = " << format_g(q) << "\n"
       << "q_ordinary = " << format_g(q_ordinary) << "\n"
       << "q_extraordinary = " << format_g(q_extraordinary) << "\n"
       << "delta_t_i_fs = " << format_g(delta_t_i_fs) << "\n"
       << "delay_fs = " << format_g(delay_fs) << "\n"
       << "filter_ratio = " << format_g(filter_ratio) << "\n"
       << "filter_delta_omega_rad_fs = " << format_g(filter_delta_omega)
       << "\n"
       << "q_ok = " << (q_ok ? "true" : "false") << "\n"
       << "q_high_visibility = " << (q_high_visibility ? "true" : "false")
       << "\n"
       << "filter_ok = " << (filter_ok ? "true" : "false") << "\n";
    if (visibility)
        os << "visibility = " << format_g(*visibility) << "\n";
    else
        os << "visibility = "
           << (fringes_found ? "0" : "undefined (not enough fringes)") << "\n";
    if (!peak_positions_x_um.empty()) {
        os << "peak_positions_x_um =";
        for (double x : peak_positions_x_um) os << " " << format_g(x);
        os << "\n";
    }
    return os.str();
}

std::string InterferenceReport::csv_header() {
    return "q,q_ordinary,q_extraordinary,delta_t_i_fs,delay_fs,filter_ratio,"
           "q_ok,filter_ok,visibility";
}

std::string InterferenceReport::to_csv_row() const {
    std::ostringstream os;
    os << format_g(q) << ',' << format_g(q_ordinary) << ','
       << format_g(q_extraordinary) << ',' << format_g(delta_t_i_fs) << ','
       << format_g(delay_fs) << ',' << format_g(filter_ratio) << ','
       << (q_ok ? "true" : "false") << ',' << (filter_ok ? "true" : "false")
       << ',' << (visibility ? format_g(*visibility) : "undefined");
    return os.str();
}

InterferenceReport make_report(const CrystalSystem& sys,
                               const detection::DetectorModel& detector,
                               const Thresholds& thresholds) {
    InterferenceReport rep;
    rep.q_ordinary = q_parameter(sys, Axis::ordinary);
    rep.q_extraordinary = q_parameter(sys, Axis::extraordinary);
    rep.q = q_parameter(sys);
    rep.delta_t_i_fs = idler_smear(sys);
    rep.delay_fs = sys.pump_train().delay_fs;
    const FilterCriterion fc =
        filter_criterion(detector.filter_fwhm_um, detector.filter_center_um,
                         sys.pump_train().delay_fs, thresholds.filter_ratio);
    rep.filter_ratio = fc.ratio;
    rep.filter_delta_omega = fc.delta_omega;
    rep.filter_ok = fc.ok;
    rep.q_ok = rep.q >= thresholds.q_observable;
    rep.q_high_visibility = rep.q >= thresholds.q_high_visibility;
    return rep;
}

InterferenceReport make_report(const CrystalSystem& sys,
                               const detection::DetectorModel& detector,
                               const Thresholds& thresholds,
                               const detection::AngularSpectrum& spectrum,
                               double window_fraction) {
    InterferenceReport rep = make_report(sys, detector, thresholds);
    const Window win = central_window(spectrum, window_fraction);
    rep.visibility = visibility_opt(spectrum, win);
    rep.fringes_found = rep.visibility.has_value();
    rep.peak_positions_x_um = predicted_peaks(sys, detector);
    return rep;
}

}  // namespace spdc::analysis
