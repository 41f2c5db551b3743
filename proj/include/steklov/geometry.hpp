#pragma once

// Bispherical geometry of an eccentric spherical shell in R^(n+2).
//
// The shell is the region between an inner sphere of radius r1 and an outer
// sphere of radius r2 whose centers sit a distance t apart on the x1-axis
// (0 <= t < r2 - r1). For t > 0 there is a unique bispherical coordinate
// system (xi, theta, phi_1..phi_n) in which both boundary spheres are level
// sets of xi: the inner sphere is xi = xi1, the outer sphere is xi = xi2,
// with xi1 > xi2 > 0.

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/scalar.hpp"

namespace steklov {

template <class Real>
struct ShellConfig {
    int n = 1;    // ambient dimension is n + 2
    Real r1 = 0;  // inner radius
    Real r2 = 0;  // outer radius
    Real t = 0;   // distance between the two centers
};

template <class Real>
struct BisphericalFrame {
    Real alpha = 0;  // coordinate scale
    Real xi1 = 0;    // inner sphere level set (larger)
    Real xi2 = 0;    // outer sphere level set (smaller)
    Real t0 = 0;     // x1-offset of the outer center: t0 = alpha*coth(xi2)
};

template <class Real>
struct BisphericalPoint {
    Real xi = 0;
    Real theta = 0;               // in [0, pi]
    std::vector<Real> phis;       // n angles; last in [0, 2*pi), others in [0, pi]
};

// Validates the shell parameters common to every entry point.
// Throws on n < 1, violated 0 < r1 < r2, negative t, or t >= r2 - r1.
// t = 0 is accepted here (the concentric closed form handles it); frame
// derivation itself additionally rejects t = 0.
template <class Real>
void validate_config(const ShellConfig<Real>& cfg) {
    if (cfg.n < 1) {
        throw Error(ErrorKind::invalid_dimension, "dimension parameter n must be >= 1");
    }
    if (!(cfg.r1 > 0) || !(cfg.r2 > cfg.r1)) {
        throw Error(ErrorKind::invalid_radii, "radii must satisfy 0 < r1 < r2");
    }
    if (!(cfg.t >= 0)) {
        throw Error(ErrorKind::invalid_argument, "center distance t must be >= 0");
    }
    if (!(cfg.t < cfg.r2 - cfg.r1)) {
        throw Error(ErrorKind::touching_boundaries,
                    "boundaries touch: t must be strictly less than r2 - r1");
    }
}

// Derives the bispherical frame for an eccentric (t > 0) shell:
//   alpha = sqrt(((r2+r1)^2 - t^2) ((r2-r1)^2 - t^2)) / (2t)
//   xi_j  = ln(alpha/r_j + sqrt((alpha/r_j)^2 + 1))   (= asinh(alpha/r_j))
//   t0    = alpha * coth(xi2)
// The log form of asinh is stable for large alpha/r_j (small t).
template <class Real>
BisphericalFrame<Real> derive_frame(const ShellConfig<Real>& cfg) {
    using std::log;
    using std::sqrt;
    using std::tanh;
    validate_config(cfg);
    if (!(cfg.t > 0)) {
        throw Error(ErrorKind::concentric_geometry,
                    "no bispherical frame exists for concentric spheres (t = 0)");
    }
    const Real sum2 = (cfg.r2 + cfg.r1) * (cfg.r2 + cfg.r1) - cfg.t * cfg.t;
    const Real diff2 = (cfg.r2 - cfg.r1) * (cfg.r2 - cfg.r1) - cfg.t * cfg.t;
    BisphericalFrame<Real> frame;
    frame.alpha = sqrt(sum2 * diff2) / (2 * cfg.t);
    const auto log_asinh = [](Real x) { return log(x + sqrt(x * x + 1)); };
    frame.xi1 = log_asinh(frame.alpha / cfg.r1);
    frame.xi2 = log_asinh(frame.alpha / cfg.r2);
    frame.t0 = frame.alpha / tanh(frame.xi2);
    return frame;
}

// Metric scale factor h(xi, theta) = alpha / (cosh xi - cos theta); the
// bispherical metric is h^2 (dxi^2 + dtheta^2 + ...).
template <class Real>
Real scale_factor(const BisphericalFrame<Real>& frame, const Real& xi, const Real& theta) {
    using std::cos;
    using std::cosh;
    const Real denom = cosh(xi) - cos(theta);
    if (!(denom > std::numeric_limits<Real>::min())) {
        throw Error(ErrorKind::invalid_argument,
                    "degenerate bispherical point (xi = 0, theta = 0)");
    }
    return frame.alpha / denom;
}

// Maps a bispherical point to Cartesian coordinates in R^(n+2), where
// n = p.phis.size() >= 1. Base case (n = 1):
//   (x1, x2, x3) = alpha/(cosh xi - cos theta) *
//                  (sinh xi, sin theta cos phi1, sin theta sin phi1)
// Each further angle splits the last component by cos/sin.
template <class Real>
std::vector<Real> to_cartesian(const BisphericalFrame<Real>& frame,
                               const BisphericalPoint<Real>& p) {
    using std::cos;
    using std::sin;
    using std::sinh;
    const int n = static_cast<int>(p.phis.size());
    if (n < 1) {
        throw Error(ErrorKind::invalid_dimension,
                    "a bispherical point needs at least one azimuthal angle");
    }
    const Real h = scale_factor(frame, p.xi, p.theta);  // rejects the degenerate point
    std::vector<Real> x(static_cast<std::size_t>(n) + 2);
    x[0] = h * sinh(p.xi);
    Real cur = h * sin(p.theta);
    for (int j = 0; j + 1 < n; ++j) {
        x[static_cast<std::size_t>(j) + 1] = cur * cos(p.phis[static_cast<std::size_t>(j)]);
        cur *= sin(p.phis[static_cast<std::size_t>(j)]);
    }
    x[static_cast<std::size_t>(n)] = cur * cos(p.phis[static_cast<std::size_t>(n) - 1]);
    x[static_cast<std::size_t>(n) + 1] = cur * sin(p.phis[static_cast<std::size_t>(n) - 1]);
    return x;
}

// Inverse map on the axisymmetric slice: given the axial coordinate x1 and
// the distance rho >= 0 from the x1-axis, recovers (xi, theta):
//   xi    = (1/2) ln(((x1+alpha)^2 + rho^2) / ((x1-alpha)^2 + rho^2))
//   theta = atan2(2 alpha rho, x1^2 + rho^2 - alpha^2)
// Both forms are branch-safe; the two coordinate foci (+-alpha, 0) are the
// only excluded inputs.
template <class Real>
std::pair<Real, Real> from_cartesian_axisym(const BisphericalFrame<Real>& frame,
                                            const Real& x1, const Real& rho) {
    using std::atan2;
    using std::log;
    if (!(rho >= 0)) {
        throw Error(ErrorKind::invalid_argument, "rho must be >= 0");
    }
    const Real dplus = (x1 + frame.alpha) * (x1 + frame.alpha) + rho * rho;
    const Real dminus = (x1 - frame.alpha) * (x1 - frame.alpha) + rho * rho;
    const Real tiny = std::numeric_limits<Real>::min();
    if (!(dplus > tiny) || !(dminus > tiny)) {
        throw Error(ErrorKind::invalid_argument,
                    "point coincides with a coordinate focus (+-alpha, 0)");
    }
    const Real xi = log(dplus / dminus) / 2;
    const Real theta = atan2(2 * frame.alpha * rho, x1 * x1 + rho * rho - frame.alpha * frame.alpha);
    return {xi, theta};
}

// Axisymmetric part of the volume element:
//   alpha^(n+2) sin^n(theta) / (cosh xi - cos theta)^(n+2)
// The product of azimuthal sin^(n-j)(phi_j) factors is deliberately omitted;
// it integrates to a constant that cancels in every ratio computed here.
template <class Real>
Real axisym_volume_weight(const BisphericalFrame<Real>& frame, int n, const Real& xi,
                          const Real& theta) {
    using std::cos;
    using std::cosh;
    using std::sin;
    const Real denom = cosh(xi) - cos(theta);
    return powi(frame.alpha, n + 2) * powi(sin(theta), n) / powi(denom, n + 2);
}

// Axisymmetric part of the surface element on the outer sphere xi = xi2:
//   alpha^(n+1) sin^n(theta) / (cosh xi2 - cos theta)^(n+1)
template <class Real>
Real surface_weight(const BisphericalFrame<Real>& frame, int n, const Real& theta) {
    using std::cos;
    using std::cosh;
    using std::sin;
    const Real denom = cosh(frame.xi2) - cos(theta);
    return powi(frame.alpha, n + 1) * powi(sin(theta), n) / powi(denom, n + 1);
}

// --- closed-form helpers used by consistency checks ------------------------

// W_i = integral of sin^i over [0, pi]: W_0 = pi, W_1 = 2, W_i = W_{i-2}(i-1)/i.
template <class Real>
Real wallis_integral(int i) {
    if (i < 0) throw Error(ErrorKind::invalid_argument, "negative sin-power");
    Real w = (i % 2 == 0) ? pi_value<Real>() : Real(2);
    for (int j = (i % 2 == 0) ? 2 : 3; j <= i; j += 2) {
        w *= Real(j - 1) / Real(j);
    }
    return w;
}

// Integral over the n azimuthal angles of prod_j sin^(n-j)(phi_j):
// the constant that axisym_volume_weight/surface_weight leave out.
template <class Real>
Real angular_constant(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_dimension, "n must be >= 1");
    Real a = 2 * pi_value<Real>();  // the last angle ranges over [0, 2*pi)
    for (int i = 1; i <= n - 1; ++i) {
        a *= wallis_integral<Real>(i);
    }
    return a;
}

// Surface area of a sphere of radius r in R^dim (dim >= 2), built from the
// recursion s_dim = s_{dim-1} * W_{dim-2} starting at the circle s_2 = 2*pi.
template <class Real>
Real sphere_surface_area(int dim, const Real& r) {
    if (dim < 2) throw Error(ErrorKind::invalid_dimension, "dim must be >= 2");
    Real s = 2 * pi_value<Real>();
    for (int d = 3; d <= dim; ++d) {
        s *= wallis_integral<Real>(d - 2);
    }
    return s * powi(r, dim - 1);
}

}  // namespace steklov
