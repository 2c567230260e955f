#include "spdc/dispersion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/numeric.hpp"
#include "spdc/units.hpp"

namespace spdc::dispersion {

namespace {

double n_squared(const OpticalMedium& m, double l) {
    const double l2 = l * l;
    const auto& c = m.coeffs;
    switch (m.form) {
        case SellmeierForm::pole_quadratic:
            return c[0] + c[1] / (l2 - c[2]) + c[3] * l2;
        case SellmeierForm::two_pole:
            return c[0] + c[1] * l2 / (l2 - c[2]) + c[3] * l2 / (l2 - c[4]);
    }
    return 0.0;
}

double dn2_dlambda(const OpticalMedium& m, double l) {
    const double l2 = l * l;
    const auto& c = m.coeffs;
    switch (m.form) {
        case SellmeierForm::pole_quadratic:
            return -2.0 * l * c[1] / ((l2 - c[2]) * (l2 - c[2])) +
                   2.0 * c[3] * l;
        case SellmeierForm::two_pole:
            return -2.0 * l *
                   (c[1] * c[2] / ((l2 - c[2]) * (l2 - c[2])) +
                    c[3] * c[4] / ((l2 - c[4]) * (l2 - c[4])));
    }
    return 0.0;
}

void check_range(const OpticalMedium& m, double l) {
    if (l < m.range_lo_um || l > m.range_hi_um) {
        std::ostringstream os;
        os << "wavelength " << l << " um outside validated range ["
           << m.range_lo_um << ", " << m.range_hi_um << "] um of medium '"
           << m.name << "' ("
           << (m.axis == Axis::ordinary ? "ordinary" : "extraordinary") << ")";
        throw DomainError(os.str());
    }
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok, const std::string& path, int line) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ConfigError(path + ":" + std::to_string(line) +
                          ": bad number '" + tok + "'");
    return v;
}

}  // namespace

double OpticalMedium::index(double lambda_um) const {
    check_range(*this, lambda_um);
    const double n2 = n_squared(*this, lambda_um);
    if (!(n2 > 1.0))
        throw DomainError("non-physical index from medium '" + name + "' at " +
                          std::to_string(lambda_um) + " um");
    return std::sqrt(n2);
}

double OpticalMedium::dn_dlambda(double lambda_um) const {
    check_range(*this, lambda_um);
    return dn2_dlambda(*this, lambda_um) /
           (2.0 * std::sqrt(n_squared(*this, lambda_um)));
}

double OpticalMedium::group_index(double lambda_um) const {
    return index(lambda_um) - lambda_um * dn_dlambda(lambda_um);
}

double OpticalMedium::group_velocity(double lambda_um) const {
    return units::c_um_per_fs / group_index(lambda_um);
}

double UniaxialPair::index_e(double lambda_um, double theta) const {
    const double no = o.index(lambda_um);
    const double ne = e.index(lambda_um);
    const double ct = std::cos(theta), st = std::sin(theta);
    return 1.0 / std::sqrt(ct * ct / (no * no) + st * st / (ne * ne));
}

double UniaxialPair::dn_dlambda_e(double lambda_um, double theta) const {
    const double no = o.index(lambda_um);
    const double ne = e.index(lambda_um);
    const double dno = o.dn_dlambda(lambda_um);
    const double dne = e.dn_dlambda(lambda_um);
    const double nth = index_e(lambda_um, theta);
    const double ct = std::cos(theta), st = std::sin(theta);
    return nth * nth * nth *
           (ct * ct * dno / (no * no * no) + st * st * dne / (ne * ne * ne));
}

double UniaxialPair::group_index_e(double lambda_um, double theta) const {
    return index_e(lambda_um, theta) - lambda_um * dn_dlambda_e(lambda_um, theta);
}

double UniaxialPair::group_velocity_e(double lambda_um, double theta) const {
    return units::c_um_per_fs / group_index_e(lambda_um, theta);
}

double UniaxialPair::index(Axis axis, double lambda_um, double theta) const {
    return axis == Axis::ordinary ? o.index(lambda_um)
                                  : index_e(lambda_um, theta);
}

double UniaxialPair::group_velocity(Axis axis, double lambda_um,
                                    double theta) const {
    return axis == Axis::ordinary ? o.group_velocity(lambda_um)
                                  : group_velocity_e(lambda_um, theta);
}

double collinear_mismatch(const UniaxialPair& media, double lambda_p_um,
                          double theta) {
    const double ld = 2.0 * lambda_p_um;
    const double wp = units::omega_from_wavelength(lambda_p_um);
    const double wd = 0.5 * wp;
    const double kp = media.index_e(lambda_p_um, theta) * wp / units::c_um_per_fs;
    const double ks = media.o.index(ld) * wd / units::c_um_per_fs;
    const double ki = media.index_e(ld, theta) * wd / units::c_um_per_fs;
    return kp - ks - ki;
}

double phase_matching_angle(const UniaxialPair& media, double lambda_p_um) {
    const auto f = [&](double th) {
        return collinear_mismatch(media, lambda_p_um, th);
    };
    const double lo = 1e-9, hi = units::pi / 2.0 - 1e-9;
    const double flo = f(lo), fhi = f(hi);
    if ((flo > 0) == (fhi > 0))
        throw NoRootError(
            "no collinear degenerate type-II phase-matching angle in (0, "
            "pi/2) for pump " +
            std::to_string(lambda_p_um) + " um in '" + media.o.name + "'");
    return numeric::brent_root(f, lo, hi, 1e-15);
}

OpticalMedium parse_medium_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open crystal data file '" + path + "'");

    OpticalMedium m;
    bool have_name = false, have_axis = false, have_formula = false,
         have_coeffs = false, have_range = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "name") {
            m.name = value;
            have_name = true;
        } else if (key == "axis") {
            if (value == "ordinary")
                m.axis = Axis::ordinary;
            else if (value == "extraordinary")
                m.axis = Axis::extraordinary;
            else
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": axis must be ordinary|extraordinary");
            have_axis = true;
        } else if (key == "formula") {
            if (value == "pole_quadratic")
                m.form = SellmeierForm::pole_quadratic;
            else if (value == "two_pole")
                m.form = SellmeierForm::two_pole;
            else
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": unknown formula '" + value + "'");
            have_formula = true;
        } else if (key == "coefficients") {
            std::stringstream ss(value);
            std::string tok;
            while (std::getline(ss, tok, ','))
                m.coeffs.push_back(parse_number(trim(tok), path, lineno));
            have_coeffs = true;
        } else if (key == "valid_range_um") {
            std::stringstream ss(value);
            std::string a, b;
            if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": valid_range_um needs two numbers");
            m.range_lo_um = parse_number(trim(a), path, lineno);
            m.range_hi_um = parse_number(trim(b), path, lineno);
            have_range = true;
        } else if (key == "source") {
            m.source = value;
        } else {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    if (!have_name || !have_axis || !have_formula || !have_coeffs ||
        !have_range)
        throw ConfigError(path +
                          ": missing required key (need name, axis, formula, "
                          "coefficients, valid_range_um)");
    const std::size_t need =
        m.form == SellmeierForm::pole_quadratic ? 4 : 5;
    if (m.coeffs.size() != need)
        throw ConfigError(path + ": formula expects " + std::to_string(need) +
                          " coefficients, got " +
                          std::to_string(m.coeffs.size()));
    if (!(m.range_lo_um > 0) || !(m.range_hi_um > m.range_lo_um))
        throw ConfigError(path + ": invalid valid_range_um");
    return m;
}

MediumStore::MediumStore(std::string data_dir) : dir_(std::move(data_dir)) {}

const OpticalMedium& MediumStore::medium(const std::string& name, Axis axis) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    const std::string key =
        lower + (axis == Axis::ordinary ? "_o" : "_e");
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const std::string path = dir_ + "/" + key + ".dat";
    OpticalMedium m = parse_medium_file(path);
    if (m.axis != axis)
        throw ConfigError(path + ": axis in file disagrees with filename");
    return cache_.emplace(key, std::move(m)).first->second;
}

UniaxialPair MediumStore::pair(const std::string& name) {
    return UniaxialPair{medium(name, Axis::ordinary),
                        medium(name, Axis::extraordinary)};
}

std::string default_data_dir() {
    if (const char* env = std::getenv("SPDC_DATA_DIR")) return env;
    return "data";
}

}  // namespace spdc::dispersion
