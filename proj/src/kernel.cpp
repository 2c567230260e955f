#include "spdc/kernel.hpp"

#include <cmath>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/numeric.hpp"
#include "spdc/units.hpp"

namespace spdc::kernel {

using dispersion::Axis;
using units::c_um_per_fs;

void SignalMode::validate() const {
    if (!(omega > 0)) throw KinematicError("signal mode: omega must be > 0");
    if (!(std::fabs(theta) < 0.2))
        throw KinematicError(
            "signal mode: |theta| must stay below 0.2 rad (near-collinear "
            "window), got " +
            std::to_string(theta));
}

CrystalSystem::CrystalSystem(dispersion::CrystalCut crystal,
                             pump::PumpTrain pump_train, Axis idler_axis)
    : crystal_(std::move(crystal)),
      pump_(pump_train),
      idler_axis_(idler_axis),
      signal_axis_(idler_axis == Axis::ordinary ? Axis::extraordinary
                                                : Axis::ordinary) {
    pump_.validate();
    if (!(crystal_.length_um > 0))
        throw ConfigError("crystal length must be positive");
    const double lambda_p = pump_.wavelength_um();
    theta_pm_ = crystal_.cut_angle > 0
                    ? crystal_.cut_angle
                    : dispersion::phase_matching_angle(crystal_.media, lambda_p);
    if (!(theta_pm_ > 0 && theta_pm_ < units::pi / 2))
        throw ConfigError("cut angle must lie in (0, pi/2)");
    k_pump_ = crystal_.media.index_e(lambda_p, theta_pm_) *
              pump_.omega_p / c_um_per_fs;
    u_pump_ = crystal_.media.group_velocity_e(lambda_p, theta_pm_);
}

double CrystalSystem::n_signal(double omega) const {
    return crystal_.media.index(signal_axis_,
                                units::wavelength_from_omega(omega), theta_pm_);
}

double CrystalSystem::n_idler(double omega) const {
    return crystal_.media.index(idler_axis_,
                                units::wavelength_from_omega(omega), theta_pm_);
}

double CrystalSystem::k_signal(double omega) const {
    return n_signal(omega) * omega / c_um_per_fs;
}

double CrystalSystem::k_idler(double omega) const {
    return n_idler(omega) * omega / c_um_per_fs;
}

double CrystalSystem::u_signal(double omega) const {
    return crystal_.media.group_velocity(
        signal_axis_, units::wavelength_from_omega(omega), theta_pm_);
}

double CrystalSystem::u_idler(double omega) const {
    return crystal_.media.group_velocity(
        idler_axis_, units::wavelength_from_omega(omega), theta_pm_);
}

double CrystalSystem::idler_transverse(const SignalMode& signal) const {
    return -k_signal(signal.omega) * std::sin(signal.theta);
}

IdlerMode CrystalSystem::idler_mode(const SignalMode& signal,
                                    double omega_i) const {
    const double k_ix = idler_transverse(signal);
    const double k_i = k_idler(omega_i);
    const double arg = k_i * k_i - k_ix * k_ix;
    if (!(arg > 0)) {
        std::ostringstream os;
        os << "evanescent idler: |k_ix| = " << std::fabs(k_ix)
           << " rad/um exceeds k_i = " << k_i << " rad/um at omega_i = "
           << omega_i;
        throw KinematicError(os.str());
    }
    return IdlerMode{omega_i, k_ix, std::sqrt(arg)};
}

double CrystalSystem::longitudinal_mismatch(const SignalMode& signal,
                                            double omega_i) const {
    const IdlerMode idler = idler_mode(signal, omega_i);
    const double k_sz = k_signal(signal.omega) * std::cos(signal.theta);
    const double detune = signal.omega + omega_i - pump_.omega_p;
    return k_pump_ - k_sz - idler.k_iz + detune / u_pump_;
}

double CrystalSystem::inv_u_iz(const SignalMode& signal,
                               double omega_i) const {
    const IdlerMode idler = idler_mode(signal, omega_i);
    const double k_i = k_idler(omega_i);
    return k_i / (idler.k_iz * u_idler(omega_i));
}

double CrystalSystem::mismatch_slope(const SignalMode& signal,
                                     double omega_i) const {
    return 1.0 / u_pump_ - inv_u_iz(signal, omega_i);
}

BiphotonAmplitude CrystalSystem::biphoton_amplitude(const SignalMode& signal,
                                                    double omega_i) const {
    const double delta = longitudinal_mismatch(signal, omega_i);
    const double omega_sum = signal.omega + omega_i;
    BiphotonAmplitude amp;
    amp.envelope = pump::envelope_gaussian(pump_, omega_sum);
    amp.cosine = pump::fringe_cosine(pump_, omega_sum);
    amp.sinc = numeric::sinc(delta * crystal_.length_um / 2.0);
    amp.value = {amp.envelope * amp.cosine * amp.sinc, 0.0};
    return amp;
}

}  // namespace spdc::kernel
