#pragma once

// Finite sections of the Dirichlet-to-Neumann operator of the eccentric
// shell, expressed in the Gegenbauer basis. The N x N section is the
// symmetric tridiagonal matrix
//   L_N = (diag(d_0..d_{N-1}) - T_N) / (2 alpha),
// with
//   c_m = tanh((m + n/2)(xi1 - xi2))^(-1/2)
//   d_k = (n + 2k) c_k^2 cosh(xi2) - n sinh(xi2)
//   w_k = sqrt((k + n - 1) k)
// and off-diagonal entries w_k c_{k-1} c_k of T_N.

#include <cstddef>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/geometry.hpp"
#include "steklov/scalar.hpp"

namespace steklov {

template <class Real>
struct TridiagonalMatrix {
    int size = 0;
    std::vector<Real> diag;     // size entries
    std::vector<Real> offdiag;  // size - 1 entries
};

// Row-sum infinity norm of a symmetric tridiagonal matrix.
template <class Real>
Real tridiagonal_inf_norm(const TridiagonalMatrix<Real>& T) {
    using std::abs;
    Real norm(0);
    for (int i = 0; i < T.size; ++i) {
        Real row = abs(T.diag[static_cast<std::size_t>(i)]);
        if (i > 0) row += abs(T.offdiag[static_cast<std::size_t>(i) - 1]);
        if (i + 1 < T.size) row += abs(T.offdiag[static_cast<std::size_t>(i)]);
        if (row > norm) norm = row;
    }
    return norm;
}

// tanh(a) for a > 0 without cancellation as a grows:
//   tanh(a) = -expm1(-2a) / (1 + exp(-2a)).
// This keeps c_m - 1 accurate even when c_m approaches 1 exponentially.
template <class Real>
Real tanh_positive(const Real& a) {
    using std::exp;
    using std::expm1;
    const Real e = exp(-2 * a);
    return -expm1(-2 * a) / (1 + e);
}

// c_m = tanh((m + n/2)(xi1 - xi2))^(-1/2); always > 1, decreasing to 1.
template <class Real>
Real coupling_c(const BisphericalFrame<Real>& frame, int n, int m) {
    using std::sqrt;
    if (m < 0) throw Error(ErrorKind::invalid_argument, "mode index must be >= 0");
    const Real a = (Real(m) + Real(n) / 2) * (frame.xi1 - frame.xi2);
    return 1 / sqrt(tanh_positive(a));
}

// d_k = (n + 2k) c_k^2 cosh(xi2) - n sinh(xi2).
template <class Real>
Real diag_d(const BisphericalFrame<Real>& frame, int n, int k) {
    using std::cosh;
    using std::sinh;
    if (k < 0) throw Error(ErrorKind::invalid_argument, "mode index must be >= 0");
    const Real c = coupling_c(frame, n, k);
    return (n + 2 * k) * c * c * cosh(frame.xi2) - n * sinh(frame.xi2);
}

// w_k = sqrt((k + n - 1) k).
template <class Real>
Real offdiag_w(int n, int k) {
    using std::sqrt;
    if (k < 1) throw Error(ErrorKind::invalid_argument, "coupling index must be >= 1");
    return sqrt(Real(k + n - 1) * Real(k));
}

// Assembles L_N. Entries carry the global 1/(2 alpha) factor; the
// off-diagonals carry the minus sign of (diag - T_N).
template <class Real>
TridiagonalMatrix<Real> assemble(const BisphericalFrame<Real>& frame, int n, int N) {
    using std::cosh;
    using std::sinh;
    if (N < 1) throw Error(ErrorKind::invalid_argument, "section size must be >= 1");
    TridiagonalMatrix<Real> T;
    T.size = N;
    T.diag.resize(static_cast<std::size_t>(N));
    T.offdiag.resize(static_cast<std::size_t>(N) - 1);
    const Real two_alpha = 2 * frame.alpha;
    const Real ch = cosh(frame.xi2);
    const Real sh = sinh(frame.xi2);
    std::vector<Real> c(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
        c[static_cast<std::size_t>(k)] = coupling_c(frame, n, k);
    }
    for (int k = 0; k < N; ++k) {
        const Real ck = c[static_cast<std::size_t>(k)];
        T.diag[static_cast<std::size_t>(k)] = ((n + 2 * k) * ck * ck * ch - n * sh) / two_alpha;
        if (k >= 1) {
            T.offdiag[static_cast<std::size_t>(k) - 1] =
                -offdiag_w<Real>(n, k) * c[static_cast<std::size_t>(k) - 1] * ck / two_alpha;
        }
    }
    return T;
}

}  // namespace steklov
