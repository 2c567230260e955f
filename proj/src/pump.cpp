#include "spdc/pump.hpp"

#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/units.hpp"

namespace spdc::pump {

namespace {
constexpr double ln2 = 0.6931471805599453;
}

double PumpTrain::wavelength_um() const {
    return units::wavelength_from_omega(omega_p);
}

void PumpTrain::validate() const {
    if (!(omega_p > 0)) throw ConfigError("pump: omega_p must be positive");
    if (!(fwhm_fs > 0)) throw ConfigError("pump: fwhm_fs must be positive");
    if (n_pulses != 1 && n_pulses != 2)
        throw ConfigError("pump: n_pulses must be 1 or 2");
    if (delay_fs < 0) throw ConfigError("pump: delay_fs must be >= 0");
    if (n_pulses == 2 && !(delay_fs > 0))
        throw ConfigError("pump: two-pulse train needs delay_fs > 0");
    // quasi-monochromatic assumption: spectral bandwidth << omega_p
    const double bandwidth = 4.0 * ln2 / fwhm_fs;
    if (bandwidth > 0.2 * omega_p)
        throw ConfigError("pump: pulse too short for the quasi-monochromatic "
                          "model (bandwidth > 0.2 omega_p)");
}

double quartz_delay(const DelayLine& line, double lambda_p_um) {
    if (line.length_um == 0.0) return 0.0;
    const double uo = line.media.o.group_velocity(lambda_p_um);
    const double ue = line.media.e.group_velocity(lambda_p_um);
    return line.length_um * std::fabs(1.0 / uo - 1.0 / ue);
}

double envelope_gaussian(const PumpTrain& train, double omega) {
    const double nu = omega - train.omega_p;
    const double tau = train.fwhm_fs;
    return std::exp(-nu * nu * tau * tau / (8.0 * ln2));
}

double fringe_cosine(const PumpTrain& train, double omega) {
    if (train.n_pulses != 2) return 1.0;
    return std::cos((omega - train.omega_p) * train.delay_fs / 2.0);
}

double envelope_spectrum(const PumpTrain& train, double omega) {
    return envelope_gaussian(train, omega) * fringe_cosine(train, omega);
}

double envelope_time_single(const PumpTrain& train, double t_fs) {
    const double tau = train.fwhm_fs;
    return std::exp(-2.0 * ln2 * t_fs * t_fs / (tau * tau));
}

std::complex<double> envelope_time(const PumpTrain& train, double t_fs) {
    if (train.n_pulses != 2) return {envelope_time_single(train, t_fs), 0.0};
    const double phase = -train.omega_p * train.delay_fs;
    return envelope_time_single(train, t_fs) +
           envelope_time_single(train, t_fs + train.delay_fs) *
               std::complex<double>(std::cos(phase), std::sin(phase));
}

}  // namespace spdc::pump
