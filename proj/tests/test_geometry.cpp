#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "steklov/geometry.hpp"

namespace {

using steklov::BisphericalFrame;
using steklov::BisphericalPoint;
using steklov::Extended;
using steklov::Float64;
using steklov::ShellConfig;

template <class F>
bool throws_kind(F&& f, steklov::ErrorKind kind) {
    try {
        std::forward<F>(f)();
    } catch (const steklov::Error& e) {
        return e.kind() == kind;
    } catch (...) {
        return false;
    }
    return false;
}

ShellConfig<Float64> example_shell() {
    ShellConfig<Float64> cfg;
    cfg.n = 1;
    cfg.r1 = 1;
    cfg.r2 = 3;
    cfg.t = 1;
    return cfg;
}

// A spread of valid eccentric shells used by the property tests.
std::vector<ShellConfig<Float64>> sample_shells() {
    std::vector<ShellConfig<Float64>> out;
    const double radii[][2] = {{1, 3}, {0.5, 1}, {2, 2.5}};
    const double ratios[] = {0.1, 0.5, 0.9, 0.98};
    for (const auto& rr : radii) {
        for (double ratio : ratios) {
            ShellConfig<Float64> cfg;
            cfg.n = 1;
            cfg.r1 = rr[0];
            cfg.r2 = rr[1];
            cfg.t = ratio * (rr[1] - rr[0]);
            out.push_back(cfg);
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("frame of the 1-3-1 shell matches its closed form") {
    // r1=1, r2=3, t=1: alpha = 3*sqrt(5)/2, t0 = 9/2, and xi1 = 2*xi2
    // (cosh(xi2) = 3/2 makes the double-angle identity exact).
    const auto frame = steklov::derive_frame(example_shell());
    const double alpha_exact = 1.5 * std::sqrt(5.0);
    CHECK(std::abs(frame.alpha - alpha_exact) <= 4e-16 * alpha_exact);
    CHECK(std::abs(frame.xi2 - 0.96242365011920689) <= 1e-15);
    CHECK(std::abs(frame.xi1 - 2 * frame.xi2) <= 8e-16);
    CHECK(std::abs(frame.t0 - 4.5) <= 2e-15);
    CHECK(frame.xi1 > frame.xi2);
    CHECK(frame.xi2 > 0);
}

TEST_CASE("frame in extended precision carries ~50 digits") {
    ShellConfig<Extended> cfg;
    cfg.n = 1;
    cfg.r1 = 1;
    cfg.r2 = 3;
    cfg.t = 1;
    const auto frame = steklov::derive_frame(cfg);
    using std::abs;
    const Extended alpha_exact = 3 * sqrt(Extended(5)) / 2;
    CHECK(abs(frame.alpha - alpha_exact) <= Extended("1e-48"));
    CHECK(abs(frame.xi2 - Extended("0.96242365011920689499551782684873684627036866877132")) <=
          Extended("1e-45"));
    CHECK(abs(frame.t0 - Extended("4.5")) <= Extended("1e-45"));
}

TEST_CASE("frame invariants hold across radii and offsets") {
    using std::sinh;
    using std::tanh;
    for (const auto& cfg : sample_shells()) {
        CAPTURE(cfg.r1);
        CAPTURE(cfg.r2);
        CAPTURE(cfg.t);
        const auto frame = steklov::derive_frame(cfg);
        // Both spheres are xi-level sets of the derived frame.
        CHECK(std::abs(frame.alpha / sinh(frame.xi1) - cfg.r1) <= 1e-13 * cfg.r1);
        CHECK(std::abs(frame.alpha / sinh(frame.xi2) - cfg.r2) <= 1e-13 * cfg.r2);
        // Center offsets reproduce the prescribed center distance.
        const double c1 = frame.alpha / tanh(frame.xi1);
        const double c2 = frame.alpha / tanh(frame.xi2);
        CHECK(std::abs((c2 - c1) - cfg.t) <= 1e-11 * cfg.r2);
        CHECK(frame.t0 == c2);
        CHECK(frame.xi1 > frame.xi2);
        CHECK(frame.xi2 > 0);
    }
}

TEST_CASE("invalid shells are rejected with specific error kinds") {
    auto cfg = example_shell();

    cfg.n = 0;
    CHECK(throws_kind([&] { steklov::validate_config(cfg); }, steklov::ErrorKind::invalid_dimension));

    cfg = example_shell();
    cfg.r1 = 0;
    CHECK(throws_kind([&] { steklov::validate_config(cfg); }, steklov::ErrorKind::invalid_radii));

    cfg = example_shell();
    cfg.r2 = cfg.r1;
    CHECK(throws_kind([&] { steklov::validate_config(cfg); }, steklov::ErrorKind::invalid_radii));

    cfg = example_shell();
    cfg.t = -0.5;
    CHECK(throws_kind([&] { steklov::validate_config(cfg); }, steklov::ErrorKind::invalid_argument));

    cfg = example_shell();
    cfg.t = cfg.r2 - cfg.r1;  // inner sphere touches the outer one
    CHECK(throws_kind([&] { steklov::validate_config(cfg); },
                      steklov::ErrorKind::touching_boundaries));

    cfg = example_shell();
    cfg.t = 5;  // inner sphere pokes outside
    CHECK(throws_kind([&] { steklov::validate_config(cfg); },
                      steklov::ErrorKind::touching_boundaries));

    // t = 0 is a valid shell but has no bispherical frame.
    cfg = example_shell();
    cfg.t = 0;
    CHECK_NOTHROW(steklov::validate_config(cfg));
    CHECK(throws_kind([&] { steklov::derive_frame(cfg); },
                      steklov::ErrorKind::concentric_geometry));
}

TEST_CASE("scale factor matches alpha/(cosh xi - cos theta)") {
    const auto frame = steklov::derive_frame(example_shell());
    // At (xi2, pi/2): alpha / cosh(xi2) = (3 sqrt5 / 2) / (3/2) = sqrt 5.
    const double h = steklov::scale_factor(frame, frame.xi2, std::acos(0.0) * 1.0);
    CHECK(std::abs(h - std::sqrt(5.0)) <= 1e-14);
    CHECK(throws_kind([&] { steklov::scale_factor(frame, 0.0, 0.0); },
                      steklov::ErrorKind::invalid_argument));
}

TEST_CASE("cartesian map lands on the correct spheres") {
    const auto frame = steklov::derive_frame(example_shell());
    using std::cos;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    using std::tanh;

    // n = 1 base case against the explicit formula.
    BisphericalPoint<Float64> p;
    p.xi = frame.xi2;
    p.theta = 1.1;
    p.phis = {0.7};
    const auto x = steklov::to_cartesian(frame, p);
    REQUIRE(x.size() == 3);
    const double h = steklov::scale_factor(frame, p.xi, p.theta);
    CHECK(std::abs(x[0] - h * sinh(p.xi)) <= 1e-14 * std::abs(x[0]));
    CHECK(std::abs(x[1] - h * sin(p.theta) * cos(p.phis[0])) <= 1e-14);
    CHECK(std::abs(x[2] - h * sin(p.theta) * sin(p.phis[0])) <= 1e-14);
    // The point sits on the outer sphere: |x - (t0, 0, 0)| = r2.
    const double d2 = (x[0] - frame.t0) * (x[0] - frame.t0) + x[1] * x[1] + x[2] * x[2];
    CHECK(std::abs(sqrt(d2) - 3.0) <= 1e-13);

    // Higher ambient dimensions: point on the *inner* sphere, n = 3.
    BisphericalPoint<Float64> q;
    q.xi = frame.xi1;
    q.theta = 2.0;
    q.phis = {0.4, 1.3, 5.2};
    const auto y = steklov::to_cartesian(frame, q);
    REQUIRE(y.size() == 5);
    const double c1 = frame.alpha / tanh(frame.xi1);
    double dist2 = (y[0] - c1) * (y[0] - c1);
    for (std::size_t i = 1; i < y.size(); ++i) dist2 += y[i] * y[i];
    CHECK(std::abs(sqrt(dist2) - 1.0) <= 1e-13);

    BisphericalPoint<Float64> bad;
    bad.xi = 1.0;
    bad.theta = 1.0;
    CHECK(throws_kind([&] { steklov::to_cartesian(frame, bad); },
                      steklov::ErrorKind::invalid_dimension));
}

TEST_CASE("axisymmetric inverse map round-trips the forward map") {
    const auto frame = steklov::derive_frame(example_shell());
    const double xis[] = {frame.xi2, 1.2, frame.xi1};
    const double thetas[] = {0.0, 0.3, 1.5707963267948966, 2.8};
    for (double xi : xis) {
        for (double theta : thetas) {
            CAPTURE(xi);
            CAPTURE(theta);
            BisphericalPoint<Float64> p;
            p.xi = xi;
            p.theta = theta;
            p.phis = {0.0};  // phi = 0 keeps the point in the half-plane x3 = 0, x2 >= 0
            const auto x = steklov::to_cartesian(frame, p);
            const auto [xi_rec, theta_rec] = steklov::from_cartesian_axisym(frame, x[0], x[1]);
            CHECK(std::abs(xi_rec - xi) <= 1e-12 * std::max(1.0, std::abs(xi)));
            CHECK(std::abs(theta_rec - theta) <= 1e-12);
        }
    }
}

TEST_CASE("axisymmetric inverse map: known point and focus rejection") {
    const auto frame = steklov::derive_frame(example_shell());
    // The "north pole" of the outer sphere, (x1, rho) = (t0, r2), has
    // xi = xi2 and theta = acos(1/cosh xi2).
    const auto [xi, theta] = steklov::from_cartesian_axisym(frame, frame.t0, 3.0);
    CHECK(std::abs(xi - frame.xi2) <= 1e-14);
    CHECK(std::abs(theta - std::acos(2.0 / 3.0)) <= 1e-14);

    CHECK(throws_kind([&] { steklov::from_cartesian_axisym(frame, frame.alpha, 0.0); },
                      steklov::ErrorKind::invalid_argument));
    CHECK(throws_kind([&] { steklov::from_cartesian_axisym(frame, -frame.alpha, 0.0); },
                      steklov::ErrorKind::invalid_argument));
    CHECK(throws_kind([&] { steklov::from_cartesian_axisym(frame, 1.0, -0.1); },
                      steklov::ErrorKind::invalid_argument));
}

TEST_CASE("volume and surface weights match their closed forms") {
    const auto frame = steklov::derive_frame(example_shell());
    const double half_pi = 2 * std::atan(1.0);
    // n = 1 at (xi2, pi/2): surface weight = alpha^2 / cosh(xi2)^2 = 5,
    // volume weight = alpha^3 / cosh(xi2)^3 = 5*sqrt(5).
    CHECK(std::abs(steklov::surface_weight(frame, 1, half_pi) - 5.0) <= 1e-13);
    CHECK(std::abs(steklov::axisym_volume_weight(frame, 1, frame.xi2, half_pi) -
                   5.0 * std::sqrt(5.0)) <= 1e-12);
    // Independent recomputation with std::pow at a generic point, n = 2.
    const double xi = 1.3, theta = 0.8;
    const double denom = std::cosh(xi) - std::cos(theta);
    const double expected =
        std::pow(frame.alpha, 4.0) * std::pow(std::sin(theta), 2.0) / std::pow(denom, 4.0);
    CHECK(std::abs(steklov::axisym_volume_weight(frame, 2, xi, theta) - expected) <=
          1e-13 * expected);
}

TEST_CASE("sin-power integrals, angular constants, and sphere areas") {
    const double pi = std::acos(-1.0);
    CHECK(steklov::wallis_integral<Float64>(0) == doctest::Approx(pi).epsilon(1e-15));
    CHECK(steklov::wallis_integral<Float64>(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(steklov::wallis_integral<Float64>(2) == doctest::Approx(pi / 2).epsilon(1e-15));
    CHECK(steklov::wallis_integral<Float64>(3) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(steklov::wallis_integral<Float64>(4) == doctest::Approx(3 * pi / 8).epsilon(1e-15));
    CHECK(throws_kind([] { steklov::wallis_integral<Float64>(-1); },
                      steklov::ErrorKind::invalid_argument));

    CHECK(steklov::angular_constant<Float64>(1) == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(steklov::angular_constant<Float64>(2) == doctest::Approx(4 * pi).epsilon(1e-15));
    CHECK(steklov::angular_constant<Float64>(3) == doctest::Approx(2 * pi * pi).epsilon(1e-15));
    CHECK(throws_kind([] { steklov::angular_constant<Float64>(0); },
                      steklov::ErrorKind::invalid_dimension));

    CHECK(steklov::sphere_surface_area<Float64>(2, 2.0) == doctest::Approx(4 * pi).epsilon(1e-15));
    CHECK(steklov::sphere_surface_area<Float64>(3, 2.0) == doctest::Approx(16 * pi).epsilon(1e-15));
    CHECK(steklov::sphere_surface_area<Float64>(4, 1.0) ==
          doctest::Approx(2 * pi * pi).epsilon(1e-15));
    CHECK(steklov::sphere_surface_area<Float64>(5, 1.0) ==
          doctest::Approx(8 * pi * pi / 3).epsilon(1e-15));
    CHECK(throws_kind([] { steklov::sphere_surface_area<Float64>(1, 1.0); },
                      steklov::ErrorKind::invalid_dimension));
}

TEST_CASE("surface weight integrates to the outer sphere's area") {
    // angular_constant(n) * int_0^pi surface_weight dtheta must equal the
    // area of a radius-r2 sphere in R^(n+2), for every n. The theta integral
    // is evaluated with the independent Simpson oracle.
    const double pi = std::acos(-1.0);
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        auto cfg = example_shell();
        cfg.n = n;
        const auto frame = steklov::derive_frame(cfg);
        const double integral = oracle::simpson(
            [&](double theta) { return steklov::surface_weight(frame, n, theta); }, 0.0, pi,
            20000);
        const double area = steklov::angular_constant<Float64>(n) * integral;
        const double expected = steklov::sphere_surface_area<Float64>(n + 2, 3.0);
        CHECK(std::abs(area - expected) <= 1e-9 * expected);
    }
}

}  // TEST_SUITE("geometry")
