#pragma once

#include <map>
#include <string>
#include <vector>

namespace spdc::dispersion {

enum class Axis { ordinary, extraordinary };

// Supported Sellmeier variants (lambda in um):
//   pole_quadratic: n^2 = c0 + c1/(l^2 - c2) + c3*l^2          (4 coeffs)
//   two_pole:       n^2 = c0 + c1*l^2/(l^2-c2) + c3*l^2/(l^2-c4) (5 coeffs)
enum class SellmeierForm { pole_quadratic, two_pole };

// One principal axis of a crystal: named Sellmeier model with a validated
// wavelength range.
struct OpticalMedium {
    std::string name;
    Axis axis = Axis::ordinary;
    SellmeierForm form = SellmeierForm::pole_quadratic;
    std::vector<double> coeffs;
    double range_lo_um = 0.0;
    double range_hi_um = 0.0;
    std::string source;

    // Principal refractive index n(lambda); throws DomainError outside the
    // validated range.
    double index(double lambda_um) const;
    // Analytic dn/dlambda of the Sellmeier form.
    double dn_dlambda(double lambda_um) const;
    // n_g = n - lambda dn/dlambda
    double group_index(double lambda_um) const;
    // u = c / n_g, in um/fs
    double group_velocity(double lambda_um) const;
};

// Ordinary/extraordinary model pair of one uniaxial crystal.
struct UniaxialPair {
    OpticalMedium o;
    OpticalMedium e;

    // Index-ellipsoid e-wave index at angle theta from the optic axis:
    // 1/n^2 = cos^2/n_o^2 + sin^2/n_e^2. theta = 0 reduces to n_o.
    double index_e(double lambda_um, double theta) const;
    double dn_dlambda_e(double lambda_um, double theta) const;
    double group_index_e(double lambda_um, double theta) const;
    double group_velocity_e(double lambda_um, double theta) const;

    // Index/group velocity for a wave of the given polarization; theta is
    // only consulted for the extraordinary wave.
    double index(Axis axis, double lambda_um, double theta) const;
    double group_velocity(Axis axis, double lambda_um, double theta) const;
};

struct CrystalCut {
    UniaxialPair media;
    double cut_angle = 0.0;   // rad between optic axis and propagation
    double length_um = 0.0;
};

// Collinear frequency-degenerate type-II phase-matching angle for an e-wave
// pump at lambda_p: n_e(theta, l_p) = [n_o(2 l_p) + n_e(theta, 2 l_p)]/2.
// Throws NoRootError when no angle in (0, pi/2) matches.
double phase_matching_angle(const UniaxialPair& media, double lambda_p_um);

// Residual collinear mismatch k_p - k_s - k_i (rad/um) at a given angle;
// used by tests and the angle solver.
double collinear_mismatch(const UniaxialPair& media, double lambda_p_um,
                          double theta);

// Line-oriented `key = value` crystal data file parser. Keys: name, axis,
// formula, coefficients, valid_range_um, source. Decimal point only.
OpticalMedium parse_medium_file(const std::string& path);

// Loads and caches media from a data directory; file naming convention is
// <name lowercased>_<o|e>.dat.
class MediumStore {
public:
    explicit MediumStore(std::string data_dir);

    const OpticalMedium& medium(const std::string& name, Axis axis);
    UniaxialPair pair(const std::string& name);

    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::map<std::string, OpticalMedium> cache_;
};

// Data directory resolution: $SPDC_DATA_DIR if set, else "data".
std::string default_data_dir();

}  // namespace spdc::dispersion
