#pragma once

#include <complex>

#include "spdc/dispersion.hpp"
#include "spdc/pump.hpp"

namespace spdc::kernel {

// Detected signal mode: angular frequency and internal scattering angle.
struct SignalMode {
    double omega = 0.0;   // rad/fs
    double theta = 0.0;   // rad, internal angle; |theta| < 0.2 near-collinear

    void validate() const;
};

struct IdlerMode {
    double omega = 0.0;   // rad/fs
    double k_ix = 0.0;    // rad/um transverse
    double k_iz = 0.0;    // rad/um longitudinal, forward root
};

// Eq.-style joint amplitude with its factors exposed for diagnostics:
// value = envelope * cosine * sinc (+0i). envelope is the Gaussian pump
// factor alone; cosine the two-pulse fringe factor.
struct BiphotonAmplitude {
    std::complex<double> value;
    double envelope = 0.0;
    double cosine = 0.0;
    double sinc = 0.0;
};

// Phase-matched crystal context for one experiment: resolves the cut angle,
// assigns type-II polarizations (signal is the complement of the configured
// idler axis), and caches the pump wavevector and group velocity. The e-wave
// index is always evaluated at the fixed cut angle (walk-off and noncollinear
// e-index variation neglected, consistent with the near-collinear treatment).
class CrystalSystem {
public:
    // cut_angle <= 0 requests the solved degenerate type-II angle.
    CrystalSystem(dispersion::CrystalCut crystal, pump::PumpTrain pump_train,
                  dispersion::Axis idler_axis);

    const dispersion::CrystalCut& crystal() const { return crystal_; }
    const pump::PumpTrain& pump_train() const { return pump_; }
    dispersion::Axis idler_axis() const { return idler_axis_; }
    dispersion::Axis signal_axis() const { return signal_axis_; }

    double theta_pm() const { return theta_pm_; }
    double k_pump() const { return k_pump_; }      // rad/um
    double u_pump() const { return u_pump_; }      // um/fs

    double n_signal(double omega) const;
    double n_idler(double omega) const;
    double k_signal(double omega) const;
    double k_idler(double omega) const;
    double u_signal(double omega) const;
    double u_idler(double omega) const;

    // k_ix = -k_s sin(theta_s): transverse momentum conservation against the
    // collinear pump (the near-collinear reading of the paper's k_ix).
    double idler_transverse(const SignalMode& signal) const;

    // Forward idler mode at omega_i for the transverse component fixed by
    // the signal; throws KinematicError for an evanescent idler.
    IdlerMode idler_mode(const SignalMode& signal, double omega_i) const;

    // Delta = k_p - k_sz - k_iz + (omega_s + omega_i - omega_p)/u_p, rad/um.
    double longitudinal_mismatch(const SignalMode& signal,
                                 double omega_i) const;

    // d(Delta)/d(omega_i) = 1/u_p - 1/u_iz; u_iz = u_i k_iz / k_i.
    double mismatch_slope(const SignalMode& signal, double omega_i) const;

    // Inverse z-component idler group velocity (the dk_iz/domega_i Jacobian).
    double inv_u_iz(const SignalMode& signal, double omega_i) const;

    // Joint spectral amplitude: envelope_spectrum(omega_s + omega_i) times
    // sinc(Delta L / 2).
    BiphotonAmplitude biphoton_amplitude(const SignalMode& signal,
                                         double omega_i) const;

private:
    dispersion::CrystalCut crystal_;
    pump::PumpTrain pump_;
    dispersion::Axis idler_axis_;
    dispersion::Axis signal_axis_;
    double theta_pm_ = 0.0;
    double k_pump_ = 0.0;
    double u_pump_ = 0.0;
};

}  // namespace spdc::kernel
