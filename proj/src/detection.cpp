#include "spdc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "spdc/errors.hpp"
#include "spdc/numeric.hpp"
#include "spdc/units.hpp"

namespace spdc::detection {

using kernel::CrystalSystem;
using kernel::SignalMode;

namespace {
constexpr double ln2 = 0.6931471805599453;
}

void DetectorModel::validate() const {
    if (!(focal_length_um > 0))
        throw ConfigError("detector: focal length must be positive");
    if (!(filter_center_um > 0))
        throw ConfigError("detector: filter center must be positive");
    if (!(filter_fwhm_um > 0))
        throw ConfigError("detector: filter FWHM must be positive");
    if (scan_x_um.size() < 2)
        throw ConfigError("detector: scan needs at least 2 positions");
    for (std::size_t i = 1; i < scan_x_um.size(); ++i)
        if (!(scan_x_um[i] > scan_x_um[i - 1]))
            throw ConfigError("detector: scan positions must be strictly "
                              "increasing");
}

double solve_idler_frequency(const CrystalSystem& sys,
                             const SignalMode& signal) {
    signal.validate();
    const double omega_c = sys.pump_train().omega_p - signal.omega;
    const auto f = [&](double wi) {
        return sys.longitudinal_mismatch(signal, wi);
    };
    const auto [lo, hi] =
        numeric::expand_bracket(f, omega_c, 0.02, 0.5 * omega_c);
    const double root = numeric::brent_root(f, lo, hi, 1e-14);
    // contract: |Delta| L / 2 < 1e-6
    const double resid =
        std::fabs(f(root)) * sys.crystal().length_um / 2.0;
    if (resid > 1e-6)
        throw NoRootError("idler root residual |Delta| L/2 = " +
                          std::to_string(resid) + " exceeds 1e-6");
    return root;
}

double singles_rate(const CrystalSystem& sys, const SignalMode& signal,
                    const QuadratureControls& controls) {
    signal.validate();
    const double wi_star = solve_idler_frequency(sys, signal);
    const double slope = std::fabs(sys.mismatch_slope(signal, wi_star));
    const double L = sys.crystal().length_um;
    const auto& train = sys.pump_train();

    // window: sinc main lobe + side lobes, or the pump envelope support
    // plus one fringe period, whichever is wider
    const double lobe = units::two_pi / (slope * L);
    const double sigma_env = std::sqrt(2.0 * ln2) / train.fwhm_fs;
    double half = controls.sinc_lobes * lobe;
    double env_half = 5.0 * sigma_env;
    if (train.n_pulses == 2) env_half += units::two_pi / train.delay_fs;
    half = std::max(half, env_half);

    const auto integrand = [&](double wi) {
        const kernel::BiphotonAmplitude amp =
            sys.biphoton_amplitude(signal, wi);
        const double a = std::abs(amp.value);
        return a * a * sys.inv_u_iz(signal, wi);
    };
    return numeric::adaptive_integrate(integrand, wi_star - half,
                                       wi_star + half, controls.rel_tol,
                                       controls.max_evals);
}

double singles_rate_deltalimit(const CrystalSystem& sys,
                               const SignalMode& signal) {
    const double wi_star = solve_idler_frequency(sys, signal);
    const auto& train = sys.pump_train();
    const double omega_sum = signal.omega + wi_star;
    const double e0 = pump::envelope_gaussian(train, omega_sum);
    const double cf = pump::fringe_cosine(train, omega_sum);
    return e0 * e0 * cf * cf;
}

double filter_transmission(const DetectorModel& detector, double omega) {
    const double w0 = units::omega_from_wavelength(detector.filter_center_um);
    const double dw = units::bandwidth_omega_from_wavelength(
        detector.filter_fwhm_um, detector.filter_center_um);
    const double nu = omega - w0;
    if (detector.filter_shape == FilterShape::rectangular)
        return std::fabs(nu) <= dw / 2.0 ? 1.0 : 0.0;
    return std::exp(-4.0 * ln2 * nu * nu / (dw * dw));
}

FilterQuadrature filter_quadrature(const DetectorModel& detector) {
    static const numeric::GaussLegendre gl = numeric::gauss_legendre(15);
    const double w0 = units::omega_from_wavelength(detector.filter_center_um);
    const double dw = units::bandwidth_omega_from_wavelength(
        detector.filter_fwhm_um, detector.filter_center_um);
    const double half =
        detector.filter_shape == FilterShape::rectangular ? dw / 2.0
                                                          : 1.5 * dw;
    FilterQuadrature fq;
    fq.omegas.reserve(gl.nodes.size());
    fq.weights.reserve(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double w = w0 + gl.nodes[i] * half;
        fq.omegas.push_back(w);
        fq.weights.push_back(gl.weights[i] * half *
                             filter_transmission(detector, w));
    }
    return fq;
}

double theta_internal(const CrystalSystem& sys, const DetectorModel& detector,
                      double x_um) {
    const double theta_ext = x_um / detector.focal_length_um;
    const double n_s =
        sys.n_signal(units::omega_from_wavelength(detector.filter_center_um));
    return theta_ext / n_s;
}

AngularSpectrum angular_scan(const CrystalSystem& sys,
                             const DetectorModel& detector,
                             const QuadratureControls& controls,
                             unsigned n_threads, bool use_deltalimit) {
    detector.validate();
    const FilterQuadrature fq = filter_quadrature(detector);

    const std::size_t n = detector.scan_x_um.size();
    AngularSpectrum spectrum;
    spectrum.points.resize(n);

    const auto compute_point = [&](std::size_t idx) {
        const double x = detector.scan_x_um[idx];
        const double theta = theta_internal(sys, detector, x);
        double rate = 0.0;
        // fixed accumulation order over the filter nodes
        for (std::size_t j = 0; j < fq.omegas.size(); ++j) {
            const SignalMode mode{fq.omegas[j], theta};
            const double r =
                use_deltalimit ? singles_rate_deltalimit(sys, mode)
                               : singles_rate(sys, mode, controls);
            rate += fq.weights[j] * r;
        }
        spectrum.points[idx] = {x, theta, rate};
    };

    std::vector<std::exception_ptr> errors;
    std::vector<std::size_t> error_idx;
    if (n_threads <= 1) {
        errors.resize(1);
        error_idx.assign(1, n);
        for (std::size_t i = 0; i < n; ++i) {
            try {
                compute_point(i);
            } catch (...) {
                errors[0] = std::current_exception();
                error_idx[0] = i;
                break;
            }
        }
    } else {
        errors.resize(n_threads);
        error_idx.assign(n_threads, n);
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < n_threads; ++t) {
            workers.emplace_back([&, t] {
                for (std::size_t i = t; i < n; i += n_threads) {
                    try {
                        compute_point(i);
                    } catch (...) {
                        errors[t] = std::current_exception();
                        error_idx[t] = i;
                        return;
                    }
                }
            });
        }
        for (auto& w : workers) w.join();
    }

    std::size_t first = n;
    std::exception_ptr failure;
    for (std::size_t t = 0; t < errors.size(); ++t)
        if (errors[t] && error_idx[t] < first) {
            first = error_idx[t];
            failure = errors[t];
        }
    if (failure) {
        std::ostringstream os;
        os << "angular scan failed at x = " << detector.scan_x_um[first]
           << " um: ";
        try {
            std::rethrow_exception(failure);
        } catch (const std::exception& e) {
            throw Error(os.str() + e.what());
        }
    }
    return spectrum;
}

}  // namespace spdc::detection
