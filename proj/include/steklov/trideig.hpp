#pragma once

// Eigenvalues and eigenvectors of symmetric tridiagonal matrices, computed to
// near-machine accuracy in the active scalar precision.
//
// The solver bisects on the Sturm count (the number of negative pivots of the
// shifted LDL^T recurrence), which (a) mirrors the determinant recurrence the
// spectral analysis of these sections is built on, (b) works verbatim in any
// precision, and (c) computes only the few smallest eigenvalues needed.
// Eigenvectors come from inverse iteration with a deterministic all-ones
// start, so repeated runs are bit-identical.

#include <cstddef>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/finite_section.hpp"
#include "steklov/scalar.hpp"

namespace steklov {

template <class Real>
struct EigenPair {
    Real value{};
    std::vector<Real> vector;  // unit 2-norm, first nonzero component positive
    int index = 1;             // 1-based rank among ascending eigenvalues
};

// Number of eigenvalues of T strictly below lam: counts negative pivots of
//   q_i = (d_i - lam) - e_{i-1}^2 / q_{i-1}.
// Pivots smaller than eps*||T||inf are replaced by that threshold with the
// sign preserved (zero counts as +), the standard guard against breakdown.
template <class Real>
int sturm_count(const TridiagonalMatrix<Real>& T, const Real& lam) {
    using std::abs;
    const Real tiny = ScalarTraits<Real>::epsilon() * tridiagonal_inf_norm(T);
    int count = 0;
    Real q(1);
    for (int i = 0; i < T.size; ++i) {
        Real d = T.diag[static_cast<std::size_t>(i)] - lam;
        if (i > 0) {
            const Real e = T.offdiag[static_cast<std::size_t>(i) - 1];
            d -= e * e / q;
        }
        if (abs(d) < tiny) {
            d = (d < 0) ? -tiny : tiny;
        }
        if (d < 0) ++count;
        q = d;
    }
    return count;
}

// Infinity norm of T v - lam v.
template <class Real>
Real eigen_residual(const TridiagonalMatrix<Real>& T, const Real& lam,
                    const std::vector<Real>& v) {
    using std::abs;
    Real res(0);
    for (int i = 0; i < T.size; ++i) {
        Real r = (T.diag[static_cast<std::size_t>(i)] - lam) * v[static_cast<std::size_t>(i)];
        if (i > 0) r += T.offdiag[static_cast<std::size_t>(i) - 1] * v[static_cast<std::size_t>(i) - 1];
        if (i + 1 < T.size) r += T.offdiag[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i) + 1];
        if (abs(r) > res) res = abs(r);
    }
    return res;
}

namespace detail {

// Solves (T - lam I) y = rhs by the Thomas algorithm with a sign-preserving
// tiny-pivot substitution; adequate for inverse iteration, where amplifying
// the near-null direction is the whole point.
template <class Real>
void shifted_tridiagonal_solve(const TridiagonalMatrix<Real>& T, const Real& lam,
                               std::vector<Real>& y) {
    using std::abs;
    const int N = T.size;
    const Real tiny = ScalarTraits<Real>::epsilon() * tridiagonal_inf_norm(T) +
                      std::numeric_limits<Real>::min();
    std::vector<Real> diag(static_cast<std::size_t>(N));
    std::vector<Real> upper(N > 1 ? static_cast<std::size_t>(N) - 1 : 0);
    for (int i = 0; i < N; ++i) diag[static_cast<std::size_t>(i)] = T.diag[static_cast<std::size_t>(i)] - lam;
    for (int i = 0; i + 1 < N; ++i) upper[static_cast<std::size_t>(i)] = T.offdiag[static_cast<std::size_t>(i)];
    // Forward elimination.
    for (int i = 0; i < N; ++i) {
        Real& piv = diag[static_cast<std::size_t>(i)];
        if (abs(piv) < tiny) piv = (piv < 0) ? -tiny : tiny;
        if (i + 1 < N) {
            const Real factor = T.offdiag[static_cast<std::size_t>(i)] / piv;
            diag[static_cast<std::size_t>(i) + 1] -= factor * upper[static_cast<std::size_t>(i)];
            y[static_cast<std::size_t>(i) + 1] -= factor * y[static_cast<std::size_t>(i)];
        }
    }
    // Back substitution.
    for (int i = N - 1; i >= 0; --i) {
        Real v = y[static_cast<std::size_t>(i)];
        if (i + 1 < N) v -= upper[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i) + 1];
        y[static_cast<std::size_t>(i)] = v / diag[static_cast<std::size_t>(i)];
    }
}

template <class Real>
void normalize_2(std::vector<Real>& v) {
    using std::sqrt;
    Real s(0);
    for (const Real& x : v) s += x * x;
    const Real norm = sqrt(s);
    for (Real& x : v) x /= norm;
}

template <class Real>
void fix_sign(std::vector<Real>& v) {
    for (const Real& x : v) {
        if (x != 0) {
            if (x < 0) {
                for (Real& y : v) y = -y;
            }
            return;
        }
    }
}

}  // namespace detail

// Inverse iteration from an all-ones start. Accepts when either the direction
// stabilizes (||y -+ x||inf <= 64 eps between normalized iterates) or the
// residual drops to 64 eps ||T||inf; errors out after 50 iterations. When lam
// approximates an eigenvalue to near machine precision (as produced by
// bisection below), one or two iterations suffice and the residual bound of
// EigenPair holds.
template <class Real>
std::vector<Real> eigenvector_inverse_iteration(const TridiagonalMatrix<Real>& T,
                                                const Real& lam) {
    using std::abs;
    using std::sqrt;
    const int N = T.size;
    if (N < 1) throw Error(ErrorKind::invalid_argument, "empty matrix");
    if (N == 1) return {Real(1)};
    const Real eps = ScalarTraits<Real>::epsilon();
    const Real norm = tridiagonal_inf_norm(T);
    std::vector<Real> x(static_cast<std::size_t>(N), 1 / sqrt(Real(N)));
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<Real> y = x;
        detail::shifted_tridiagonal_solve(T, lam, y);
        detail::normalize_2(y);
        Real dminus(0), dplus(0);
        for (int i = 0; i < N; ++i) {
            dminus = std::max(dminus, abs(y[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]));
            dplus = std::max(dplus, abs(y[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(i)]));
        }
        x = std::move(y);
        const bool direction_stable = std::min(dminus, dplus) <= 64 * eps;
        if (direction_stable || eigen_residual(T, lam, x) <= 64 * eps * norm) {
            detail::fix_sign(x);
            return x;
        }
    }
    throw Error(ErrorKind::no_convergence, "inverse iteration did not stabilize in 50 steps");
}

// The `count` smallest eigenvalues of T, ascending, each bracketed by
// bisection on sturm_count to relative width rel_tol (floored at 4 eps
// relative / 4 eps ||T||inf absolute) and paired with an inverse-iteration
// eigenvector.
template <class Real>
std::vector<EigenPair<Real>> smallest_eigenvalues(const TridiagonalMatrix<Real>& T, int count,
                                                  const Real& rel_tol) {
    using std::abs;
    const int N = T.size;
    if (count < 1 || count > N) {
        throw Error(ErrorKind::invalid_argument, "eigenvalue count must be in [1, N]");
    }
    const Real eps = ScalarTraits<Real>::epsilon();
    if (rel_tol < eps) {
        throw Error(ErrorKind::invalid_argument,
                    "requested tolerance is below the unit roundoff of the active precision");
    }
    const Real rel_eff = std::max(rel_tol, 4 * eps);
    const Real norm = tridiagonal_inf_norm(T);
    // Gershgorin bracket, padded so the count at the top is exactly N.
    Real lo = T.diag[0], hi = T.diag[0];
    for (int i = 0; i < N; ++i) {
        Real radius(0);
        if (i > 0) radius += abs(T.offdiag[static_cast<std::size_t>(i) - 1]);
        if (i + 1 < N) radius += abs(T.offdiag[static_cast<std::size_t>(i)]);
        lo = std::min(lo, T.diag[static_cast<std::size_t>(i)] - radius);
        hi = std::max(hi, T.diag[static_cast<std::size_t>(i)] + radius);
    }
    const Real pad = 4 * eps * norm + std::numeric_limits<Real>::min();
    lo -= pad;
    hi += pad;
    const int max_iter = std::numeric_limits<Real>::digits + 64;
    std::vector<EigenPair<Real>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int j = 1; j <= count; ++j) {
        Real a = lo, b = hi;
        for (int iter = 0; iter < max_iter; ++iter) {
            const Real width_goal =
                std::max(rel_eff * std::max(abs(a), abs(b)), 4 * eps * norm);
            if (b - a <= width_goal) break;
            const Real mid = (a + b) / 2;
            if (sturm_count(T, mid) >= j) {
                b = mid;
            } else {
                a = mid;
            }
        }
        EigenPair<Real> pair;
        pair.value = (a + b) / 2;
        pair.index = j;
        pair.vector = eigenvector_inverse_iteration(T, pair.value);
        out.push_back(std::move(pair));
    }
    return out;
}

}  // namespace steklov
