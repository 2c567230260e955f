#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad or inconsistent user configuration (maps to CLI exit code 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Wavelength outside a medium's validated Sellmeier range.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Evanescent idler or otherwise kinematically impossible mode.
class KinematicError : public Error {
public:
    explicit KinematicError(const std::string& msg) : Error(msg) {}
};

// No phase-matching angle / no stationary idler frequency in the bracket.
class NoRootError : public Error {
public:
    explicit NoRootError(const std::string& msg) : Error(msg) {}
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& msg, double achieved)
        : Error(msg), achieved_rel_error(achieved) {}
    double achieved_rel_error;
};

// Fringe-visibility request on a curve without enough extrema; distinct
// from V = 0.
class NotEnoughFringesError : public Error {
public:
    explicit NotEnoughFringesError(const std::string& msg) : Error(msg) {}
};

class OracleError : public Error {
public:
    explicit OracleError(const std::string& msg) : Error(msg) {}
};

}  // namespace spdc
