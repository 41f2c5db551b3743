#pragma once

// Independent reference implementations used only by the tests. These are
// deliberately written with different algorithms than the library under test
// (dense Jacobi rotations instead of Sturm bisection, composite Simpson
// instead of adaptive Gauss-Legendre) so that agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Dense symmetric eigensolver: cyclic Jacobi rotations, double precision.
// Returns all eigenvalues in ascending order.
// ---------------------------------------------------------------------------
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (const auto& row : a) {
        if (row.size() != n) throw std::invalid_argument("matrix must be square");
    }
    if (n == 0) return {};
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        double frob = off * 2;
        for (std::size_t p = 0; p < n; ++p) frob += a[p][p] * a[p][p];
        if (off <= 1e-30 * (frob + 1e-300)) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                // Rotate rows/columns p and q: A <- J^T A J.
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = a[i][i];
    std::sort(vals.begin(), vals.end());
    return vals;
}

// Number of oracle eigenvalues strictly below x.
inline int count_below(const std::vector<double>& vals, double x) {
    int c = 0;
    for (double v : vals)
        if (v < x) ++c;
    return c;
}

// ---------------------------------------------------------------------------
// Composite Simpson integration, double precision.
// ---------------------------------------------------------------------------
template <class F>
double simpson(F&& f, double a, double b, int intervals) {
    if (intervals < 2) intervals = 2;
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3;
}

// ---------------------------------------------------------------------------
// Seeded random tridiagonal matrices (as plain arrays of doubles).
// ---------------------------------------------------------------------------
struct TridiagData {
    std::vector<double> diag;
    std::vector<double> off;
};

inline TridiagData random_tridiagonal(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TridiagData t;
    t.diag.resize(n);
    t.off.resize(n > 0 ? n - 1 : 0);
    for (auto& d : t.diag) d = scale * u(rng);
    for (auto& e : t.off) e = scale * u(rng);
    return t;
}

inline std::vector<std::vector<double>> dense_from_tridiagonal(const TridiagData& t) {
    const std::size_t n = t.diag.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = t.diag[i];
        if (i + 1 < n) {
            a[i][i + 1] = t.off[i];
            a[i + 1][i] = t.off[i];
        }
    }
    return a;
}

// Relative closeness helper usable with any scalar type.
template <class Real>
bool close_rel(const Real& a, const Real& b, const Real& tol) {
    using std::abs;
    Real scale = abs(a);
    if (abs(b) > scale) scale = abs(b);
    if (scale < Real(1)) scale = Real(1);
    return abs(a - b) <= tol * scale;
}

}  // namespace oracle
