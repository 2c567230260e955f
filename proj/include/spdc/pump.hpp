#pragma once

#include <complex>

#include "spdc/dispersion.hpp"

namespace spdc::pump {

// Two-pulse pump train. The single-pulse envelope is Gaussian with
// fwhm_fs the intensity FWHM; amplitudes are normalized to E0(omega_p) = 1.
struct PumpTrain {
    double omega_p = 0.0;    // rad/fs central frequency
    double fwhm_fs = 0.0;    // intensity-FWHM pulse duration tau
    double delay_fs = 0.0;   // inter-pulse delay T_p
    int n_pulses = 1;        // 1 or 2

    double wavelength_um() const;
    void validate() const;   // throws ConfigError on bad invariants
};

// Birefringent quartz-rod delay line.
struct DelayLine {
    double length_um = 0.0;
    dispersion::UniaxialPair media;
};

// T_p = L_q |u_o^-1 - u_e^-1| at the pump wavelength, in fs.
double quartz_delay(const DelayLine& line, double lambda_p_um);

// Gaussian single-pulse spectral amplitude E0(omega), peak 1 at omega_p.
double envelope_gaussian(const PumpTrain& train, double omega);

// Two-pulse fringe factor cos((omega - omega_p) T_p / 2); 1 for n_pulses = 1.
double fringe_cosine(const PumpTrain& train, double omega);

// Production envelope spectrum: E0(omega) * fringe cosine. Real by
// construction (fringe phase referenced to omega_p).
double envelope_spectrum(const PumpTrain& train, double omega);

// Time-domain envelope as in the two-pulse field decomposition:
// E0(t) + E0(t + T_p) exp(-i omega_p T_p). Single pulse: E0(t).
std::complex<double> envelope_time(const PumpTrain& train, double t_fs);

// Time-domain single-pulse envelope E0(t), peak 1 at t = 0.
double envelope_time_single(const PumpTrain& train, double t_fs);

}  // namespace spdc::pump
