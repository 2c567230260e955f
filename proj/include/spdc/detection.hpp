#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spdc/kernel.hpp"

namespace spdc::detection {

enum class FilterShape { gaussian, rectangular };

// Signal-arm detector: lens mapping x = F * theta_ext plus a narrow-band
// spectral filter; the scan is a strictly monotone list of positions.
struct DetectorModel {
    double focal_length_um = 0.0;
    double filter_center_um = 0.0;
    double filter_fwhm_um = 0.0;
    FilterShape filter_shape = FilterShape::rectangular;
    std::vector<double> scan_x_um;

    void validate() const;
};

struct QuadratureControls {
    double rel_tol = 1e-4;
    std::size_t max_evals = 200000;
    // idler window half-width in sinc lobes around the stationary point
    // (main lobe + side lobes; >= 7 covers the spec minimum of 6 side lobes)
    int sinc_lobes = 9;
};

struct SpectrumPoint {
    double x_um = 0.0;
    double theta_s = 0.0;
    double rate = 0.0;
};

struct AngularSpectrum {
    std::vector<SpectrumPoint> points;
    std::string config_echo;   // full effective config, '#'-prefixed lines
};

// Root of Delta(omega_i) = 0 near omega_p - omega_s; bracketed and
// deterministic. Throws NoRootError without a sign change in the bracket.
double solve_idler_frequency(const kernel::CrystalSystem& sys,
                             const kernel::SignalMode& signal);

// Eq.-(5) singles rate: integral over the idler frequency of
// |F|^2 / u_iz, over the sinc main lobe plus side lobes and the pump
// envelope support, adaptively refined to controls.rel_tol.
double singles_rate(const kernel::CrystalSystem& sys,
                    const kernel::SignalMode& signal,
                    const QuadratureControls& controls);

// Delta-function-limit fast path: |E0(nu*)|^2 cos^2(nu* T_p / 2) at the
// solved stationary idler frequency.
double singles_rate_deltalimit(const kernel::CrystalSystem& sys,
                               const kernel::SignalMode& signal);

// Internal scattering angle for a detector position: external angle x/F
// refracted at the exit face by the signal index at the filter center.
double theta_internal(const kernel::CrystalSystem& sys,
                      const DetectorModel& detector, double x_um);

// Full scan: filter-weighted signal-frequency average of singles_rate at
// each detector position. n_threads > 1 distributes positions over threads;
// results are bitwise identical to the serial evaluation. Set use_deltalimit
// to scan the Eq.-(6) fast path instead of the full quadrature.
AngularSpectrum angular_scan(const kernel::CrystalSystem& sys,
                             const DetectorModel& detector,
                             const QuadratureControls& controls,
                             unsigned n_threads = 1,
                             bool use_deltalimit = false);

// Filter transmission at omega (peak 1).
double filter_transmission(const DetectorModel& detector, double omega);

// Fixed Gauss-Legendre discretization of the filter integral:
// 15 nodes across +-1.5 FWHM (gaussian) or the exact support (rectangular).
struct FilterQuadrature {
    std::vector<double> omegas;
    std::vector<double> weights;   // node weight times transmission
};
FilterQuadrature filter_quadrature(const DetectorModel& detector);

}  // namespace spdc::detection
