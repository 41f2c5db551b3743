#pragma once

// Gegenbauer (ultraspherical) polynomials G_m^(lambda) and their expansion in
// cosines. The eigenfunction series of this library uses lambda = n/2, where
// n + 2 is the ambient dimension; lambda = 1/2 reduces to Legendre
// polynomials. The raw (unnormalized) convention is used throughout:
//   G_0 = 1,  G_1 = 2*lambda*s,
//   m G_m = 2(m + lambda - 1) s G_{m-1} - (m + 2 lambda - 2) G_{m-2}.

#include <utility>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/scalar.hpp"

namespace steklov {

// G_m^(lambda)(s) by forward recurrence.
template <class Real>
Real gegenbauer_eval(const Real& lambda, int m, const Real& s) {
    if (m < 0) throw Error(ErrorKind::invalid_argument, "polynomial order must be >= 0");
    Real prev(1);
    if (m == 0) return prev;
    Real cur = 2 * lambda * s;
    for (int j = 2; j <= m; ++j) {
        Real next = (2 * (j + lambda - 1) * s * cur - (j + 2 * lambda - 2) * prev) / j;
        prev = cur;
        cur = next;
    }
    return cur;
}

// d/ds G_m^(lambda)(s) = 2*lambda * G_{m-1}^(lambda+1)(s); 0 for m = 0.
template <class Real>
Real gegenbauer_deriv(const Real& lambda, int m, const Real& s) {
    if (m < 0) throw Error(ErrorKind::invalid_argument, "polynomial order must be >= 0");
    if (m == 0) return Real(0);
    return 2 * lambda * gegenbauer_eval(lambda + 1, m - 1, s);
}

// G_m^(lambda)(cos theta) = sum_{k=0..m} a_k a_{m-k} cos((m-2k) theta), where
// a_j = lambda^(j)/j! is the normalized rising factorial. Frequencies descend
// from m to -m in steps of 2; all coefficients are positive for lambda > 0.
template <class Real>
struct CosExpansion {
    int order = 0;
    std::vector<std::pair<int, Real>> terms;  // (frequency, coefficient)
};

template <class Real>
CosExpansion<Real> cos_expansion(const Real& lambda, int m) {
    if (m < 0) throw Error(ErrorKind::invalid_argument, "polynomial order must be >= 0");
    // a[j] = lambda (lambda+1) ... (lambda+j-1) / j!, built by ratio updates
    // so no factorial or gamma evaluation ever overflows.
    std::vector<Real> a(static_cast<std::size_t>(m) + 1);
    a[0] = Real(1);
    for (int j = 1; j <= m; ++j) {
        a[static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(j) - 1] * (lambda + (j - 1)) / j;
    }
    CosExpansion<Real> ex;
    ex.order = m;
    ex.terms.reserve(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        ex.terms.emplace_back(m - 2 * k, a[static_cast<std::size_t>(k)] *
                                             a[static_cast<std::size_t>(m - k)]);
    }
    return ex;
}

// Evaluates a cosine expansion at theta (test/diagnostic helper).
template <class Real>
Real eval_cos_expansion(const CosExpansion<Real>& ex, const Real& theta) {
    using std::cos;
    Real sum(0);
    for (const auto& [p, coeff] : ex.terms) {
        sum += coeff * cos(p * theta);
    }
    return sum;
}

// G_m^(lambda)(1) = rising_factorial(2*lambda, m)/m!, the polynomial maximum
// over [-1, 1] for lambda > 0.
template <class Real>
Real gegenbauer_at_one(const Real& lambda, int m) {
    Real v(1);
    for (int j = 1; j <= m; ++j) {
        v *= (2 * lambda + (j - 1)) / j;
    }
    return v;
}

}  // namespace steklov
