#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

enum class ErrorKind {
    invalid_dimension,     // n < 1
    invalid_radii,         // violated 0 < r1 < r2
    concentric_geometry,   // t = 0: no bispherical frame exists (alpha -> inf)
    touching_boundaries,   // t >= r2 - r1: shell boundaries touch or cross
    invalid_argument,      // other precondition violations
    no_convergence,        // iterative solver exceeded its iteration budget
    quadrature_failure,    // adaptive integration exceeded its panel budget
    io_failure,            // file could not be written/read
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_dimension: return "invalid_dimension";
        case ErrorKind::invalid_radii: return "invalid_radii";
        case ErrorKind::concentric_geometry: return "concentric_geometry";
        case ErrorKind::touching_boundaries: return "touching_boundaries";
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::no_convergence: return "no_convergence";
        case ErrorKind::quadrature_failure: return "quadrature_failure";
        case ErrorKind::io_failure: return "io_failure";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace steklov
