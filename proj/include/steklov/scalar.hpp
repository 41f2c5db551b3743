#pragma once

// Scalar abstraction: every numerical routine in this library is templated
// over a real type `Real`. Two instantiations ship:
//   * Float64  — IEEE binary64, for fast interactive use;
//   * Extended — a 50-significant-digit binary float, for results whose
//     resolution exceeds what binary64 can represent (relative eigenvalue
//     changes down to ~1e-24 appear in the reference convergence table).

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace steklov {

using Float64 = double;
// 50 significant decimal digits; expression templates disabled so arithmetic
// expressions have the value type itself (std::min/std::max etc. just work).
using Extended = boost::multiprecision::number<boost::multiprecision::backends::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

template <class Real>
struct ScalarTraits;

template <>
struct ScalarTraits<Float64> {
    static constexpr const char* name = "binary64";
    // Significant decimal digits used when printing values.
    static constexpr int output_digits = 15;
    static Float64 epsilon() { return std::numeric_limits<Float64>::epsilon(); }
    // Default relative tolerance for adaptive quadrature.
    static Float64 default_quad_tol() { return 1e-13; }
    // Default certification threshold for the validation gap.
    static Float64 default_cert_tol() { return 1e-9; }
};

template <>
struct ScalarTraits<Extended> {
    static constexpr const char* name = "extended";
    static constexpr int output_digits = 30;
    static Extended epsilon() { return std::numeric_limits<Extended>::epsilon(); }
    static Extended default_quad_tol() { return Extended("1e-28"); }
    static Extended default_cert_tol() { return Extended("1e-12"); }
};

// pi in the active precision (computed once per type, thread-safe init).
template <class Real>
const Real& pi_value() {
    using std::acos;
    static const Real value = acos(Real(-1));
    return value;
}

// Integer power by repeated multiplication; exact flop count, no pow() calls.
// Exponents in this library are small (dimension-derived, |e| <= ~16).
template <class Real>
Real powi(Real base, int e) {
    if (e < 0) return Real(1) / powi(base, -e);
    Real result(1);
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

// base^(k/2) for integer k (possibly negative); used for the
// (cosh xi - cos theta)^(n/2) prefactors where n is an integer dimension.
template <class Real>
Real half_power(Real base, int k) {
    using std::sqrt;
    if (k < 0) return Real(1) / half_power(base, -k);
    Real result = powi(base, k / 2);
    if (k & 1) result *= sqrt(base);
    return result;
}

// Format with a fixed number of significant digits; the default ostream
// formatting is deterministic, which keeps emitted reports byte-stable.
template <class Real>
std::string format_real(const Real& x, int digits = ScalarTraits<Real>::output_digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

}  // namespace steklov
