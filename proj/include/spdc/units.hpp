#pragma once

#include <cmath>

// Unit system used throughout: time in fs, length in um, angular frequency
// in rad/fs, wavevectors in rad/um. Keeps every quantity O(1)-O(1e3).
namespace spdc::units {

inline constexpr double c_um_per_fs = 0.299792458;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

inline double omega_from_wavelength(double lambda_um) {
    return two_pi * c_um_per_fs / lambda_um;
}

inline double wavelength_from_omega(double omega_rad_fs) {
    return two_pi * c_um_per_fs / omega_rad_fs;
}

// FWHM of a filter in angular frequency from its FWHM in wavelength.
inline double bandwidth_omega_from_wavelength(double fwhm_um, double center_um) {
    return two_pi * c_um_per_fs * fwhm_um / (center_um * center_um);
}

inline double deg_to_rad(double deg) { return deg * pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / pi; }

}  // namespace spdc::units
