#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "steklov/trideig.hpp"

namespace {

using steklov::Extended;
using steklov::Float64;
using steklov::TridiagonalMatrix;

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

TridiagonalMatrix<Float64> make_tridiag(std::vector<double> diag, std::vector<double> off) {
    TridiagonalMatrix<Float64> T;
    T.size = static_cast<int>(diag.size());
    T.diag = std::move(diag);
    T.offdiag = std::move(off);
    return T;
}

TridiagonalMatrix<Float64> from_oracle(const oracle::TridiagData& t) {
    return make_tridiag(t.diag, t.off);
}

}  // namespace

TEST_SUITE("trideig") {

TEST_CASE("1x1 and 2x2 matrices in closed form") {
    const auto T1 = make_tridiag({3.5}, {});
    const auto p1 = steklov::smallest_eigenvalues(T1, 1, 1e-14);
    REQUIRE(p1.size() == 1);
    CHECK(std::abs(p1[0].value - 3.5) <= 1e-14);
    CHECK(p1[0].vector == std::vector<double>{1.0});
    CHECK(p1[0].index == 1);

    // [[a, b], [b, c]]: eigenvalues ((a+c) -+ sqrt((a-c)^2 + 4 b^2)) / 2.
    const double cases[][3] = {{1.0, 0.5, -2.0}, {0.0, 1.0, 0.0}, {4.0, -3.0, 4.0}};
    for (const auto& abc : cases) {
        const double a = abc[0], b = abc[1], c = abc[2];
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        const double disc = std::sqrt((a - c) * (a - c) + 4 * b * b);
        const double lo = (a + c - disc) / 2;
        const double hi = (a + c + disc) / 2;
        const auto T = make_tridiag({a, c}, {b});
        const auto pairs = steklov::smallest_eigenvalues(T, 2, 1e-14);
        REQUIRE(pairs.size() == 2);
        const double scale = std::max(1.0, steklov::tridiagonal_inf_norm(T));
        CHECK(std::abs(pairs[0].value - lo) <= 1e-13 * scale);
        CHECK(std::abs(pairs[1].value - hi) <= 1e-13 * scale);
        CHECK(pairs[0].index == 1);
        CHECK(pairs[1].index == 2);
    }
}

TEST_CASE("Sturm count survives an exact zero pivot") {
    // [[1, 1], [1, 1]] has eigenvalues {0, 2}; at shift 1 the first pivot is
    // exactly zero and the sign-preserving substitution must still count 1.
    const auto T = make_tridiag({1.0, 1.0}, {1.0});
    CHECK(steklov::sturm_count(T, 1.0) == 1);
    CHECK(steklov::sturm_count(T, -0.5) == 0);
    CHECK(steklov::sturm_count(T, 2.5) == 2);
    const auto pairs = steklov::smallest_eigenvalues(T, 2, 1e-14);
    CHECK(std::abs(pairs[0].value - 0.0) <= 1e-14);
    CHECK(std::abs(pairs[1].value - 2.0) <= 1e-14);
}

TEST_CASE("random tridiagonal spectra match a dense Jacobi solver") {
    std::mt19937_64 rng(0x5EED0001ULL);
    std::uniform_int_distribution<int> size_dist(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        CAPTURE(trial);
        const std::size_t n = static_cast<std::size_t>(size_dist(rng));
        const double scale = (trial % 3 == 0) ? 100.0 : 1.0;
        const auto data = oracle::random_tridiagonal(rng, n, scale);
        const auto T = from_oracle(data);
        const auto reference = oracle::symmetric_eigenvalues(oracle::dense_from_tridiagonal(data));
        const auto pairs = steklov::smallest_eigenvalues(T, static_cast<int>(n), 1e-14);
        REQUIRE(pairs.size() == n);
        const double tol = 1e-12 * std::max(1.0, steklov::tridiagonal_inf_norm(T));
        for (std::size_t i = 0; i < n; ++i) {
            CAPTURE(i);
            CHECK(std::abs(pairs[i].value - reference[i]) <= tol);
        }
    }
}

TEST_CASE("Sturm counts agree with the oracle away from eigenvalues") {
    std::mt19937_64 rng(0x5EED0002ULL);
    std::uniform_int_distribution<int> size_dist(2, 8);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(size_dist(rng));
        const auto data = oracle::random_tridiagonal(rng, n);
        const auto T = from_oracle(data);
        const auto reference = oracle::symmetric_eigenvalues(oracle::dense_from_tridiagonal(data));
        std::uniform_real_distribution<double> shift_dist(reference.front() - 0.5,
                                                          reference.back() + 0.5);
        for (int s = 0; s < 3; ++s) {
            const double shift = shift_dist(rng);
            // Skip shifts that fall on top of an eigenvalue, where the count
            // is legitimately ambiguous at roundoff scale.
            bool near = false;
            for (double ev : reference) near = near || std::abs(ev - shift) < 1e-9;
            if (near) continue;
            CAPTURE(trial);
            CAPTURE(shift);
            CHECK(steklov::sturm_count(T, shift) == oracle::count_below(reference, shift));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("eigenpairs come back normalized, signed, ordered, and accurate") {
    std::mt19937_64 rng(0x5EED0003ULL);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int trial = 0; trial < 50; ++trial) {
        CAPTURE(trial);
        const auto data = oracle::random_tridiagonal(rng, 6);
        const auto T = from_oracle(data);
        const auto pairs = steklov::smallest_eigenvalues(T, 6, 1e-14);
        const double norm = steklov::tridiagonal_inf_norm(T);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            CAPTURE(i);
            // Ascending values, 1-based indices.
            CHECK(pairs[i].index == static_cast<int>(i) + 1);
            if (i > 0) CHECK(pairs[i].value >= pairs[i - 1].value - 4 * eps * norm);
            // Unit 2-norm.
            double s = 0;
            for (double x : pairs[i].vector) s += x * x;
            CHECK(std::abs(std::sqrt(s) - 1.0) <= 16 * eps);
            // First nonzero component positive.
            for (double x : pairs[i].vector) {
                if (x != 0) {
                    CHECK(x > 0);
                    break;
                }
            }
            // Small residual.
            CHECK(steklov::eigen_residual(T, pairs[i].value, pairs[i].vector) <=
                  64 * eps * std::max(1.0, norm));
        }
    }
}

TEST_CASE("inverse iteration flags a genuinely ambiguous shift") {
    // diag(-1, 1) at shift 0: the iteration map flips the sign of the first
    // component each step, so the direction never settles and the residual
    // stays at 1/sqrt(2). The 50-step cap must fire.
    const auto T = make_tridiag({-1.0, 1.0}, {0.0});
    CHECK(throws_kind([&] { steklov::eigenvector_inverse_iteration(T, 0.0); },
                      steklov::ErrorKind::no_convergence));
}

TEST_CASE("an exactly repeated eigenvalue still yields a clean eigenvector") {
    const auto T = make_tridiag({1.0, 1.0}, {0.0});
    const auto pairs = steklov::smallest_eigenvalues(T, 2, 1e-14);
    for (const auto& p : pairs) {
        CHECK(std::abs(p.value - 1.0) <= 1e-14);
        CHECK(steklov::eigen_residual(T, p.value, p.vector) <= 1e-14);
    }
}

TEST_CASE("argument validation") {
    const auto T = make_tridiag({1.0, 2.0}, {0.5});
    CHECK(throws_kind([&] { steklov::smallest_eigenvalues(T, 0, 1e-14); },
                      steklov::ErrorKind::invalid_argument));
    CHECK(throws_kind([&] { steklov::smallest_eigenvalues(T, 3, 1e-14); },
                      steklov::ErrorKind::invalid_argument));
    // Tolerances below the unit roundoff are lies; refuse them.
    CHECK(throws_kind([&] { steklov::smallest_eigenvalues(T, 1, 1e-17); },
                      steklov::ErrorKind::invalid_argument));
    CHECK_NOTHROW(steklov::smallest_eigenvalues(T, 1, 1e-15));
}

TEST_CASE("extended precision reproduces the double spectrum of a small matrix") {
    TridiagonalMatrix<Extended> T;
    T.size = 4;
    T.diag = {Extended(2), Extended(-1), Extended("0.5"), Extended(3)};
    T.offdiag = {Extended(1), Extended("0.25"), Extended("-0.75")};

    oracle::TridiagData data;
    data.diag = {2.0, -1.0, 0.5, 3.0};
    data.off = {1.0, 0.25, -0.75};
    const auto reference = oracle::symmetric_eigenvalues(oracle::dense_from_tridiagonal(data));

    const Extended eps = std::numeric_limits<Extended>::epsilon();
    const auto pairs = steklov::smallest_eigenvalues(T, 4, 4 * eps);
    REQUIRE(pairs.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK(std::abs(pairs[i].value.convert_to<double>() - reference[i]) <= 1e-13);
        CHECK(steklov::eigen_residual(T, pairs[i].value, pairs[i].vector) <=
              64 * eps * steklov::tridiagonal_inf_norm(T));
    }
}

}  // TEST_SUITE("trideig")
