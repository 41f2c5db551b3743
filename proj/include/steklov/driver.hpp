#pragma once

// High-level drivers: the section-doubling convergence ladder, the
// Rayleigh-quotient validation schedule, closed-form reference values, the
// published convergence table, and the threaded parameter sweep.

#include <future>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "steklov/errors.hpp"
#include "steklov/finite_section.hpp"
#include "steklov/geometry.hpp"
#include "steklov/rayleigh.hpp"
#include "steklov/scalar.hpp"
#include "steklov/trideig.hpp"

namespace steklov {

enum class ConvergenceStatus {
    converged,          // successive relative change fell below eta_tol
    converged_at_floor, // change saturated at the precision floor instead
    not_converged,      // ladder exhausted k_max without either
};

inline const char* to_string(ConvergenceStatus s) {
    switch (s) {
        case ConvergenceStatus::converged: return "converged";
        case ConvergenceStatus::converged_at_floor: return "converged_at_floor";
        case ConvergenceStatus::not_converged: return "not_converged";
    }
    return "unknown";
}

template <class Real>
struct ConvergenceStep {
    int k = 0;   // ladder index, section order N = 2^k
    int N = 0;
    Real sigma{};
    Real eta{};  // |sigma_prev - sigma| / |sigma|; infinity on the first step
};

template <class Real>
struct ConvergenceReport {
    ShellConfig<Real> config;
    int rank = 1;
    std::vector<ConvergenceStep<Real>> steps;
    int final_N = 0;
    ConvergenceStatus status = ConvergenceStatus::not_converged;
    std::string precision;  // scalar profile the ladder ran under

    const Real& final_sigma() const { return steps.back().sigma; }
    const Real& final_eta() const { return steps.back().eta; }
};

// Runs section orders N = 2^k upward until the eigenvalue settles. The rank-th
// smallest eigenvalue of each section is monotone from above in N, so the
// relative step eta is an honest convergence indicator. Two consecutive steps
// at the rounding floor (128 eps) report converged_at_floor: the value is as
// good as the precision allows but eta_tol itself was not certified.
// Exhausting k_max reports (not throws) not_converged.
template <class Real>
ConvergenceReport<Real> converge_sigma(const ShellConfig<Real>& cfg, int rank = 1,
                                       const Real& eta_tol = Real(1e-12), int k_max = 12) {
    using std::abs;
    if (rank < 1) throw Error(ErrorKind::invalid_argument, "rank must be >= 1");
    if (!(eta_tol > 0)) throw Error(ErrorKind::invalid_argument, "eta_tol must be > 0");
    if (k_max > 22) throw Error(ErrorKind::invalid_argument, "k_max too large (limit 22)");
    const BisphericalFrame<Real> frame = derive_frame(cfg);

    int k0 = 1;
    while ((1 << k0) < rank) ++k0;  // smallest section holding the requested rank
    if (k_max < k0) {
        throw Error(ErrorKind::invalid_argument, "k_max too small for the requested rank");
    }

    ConvergenceReport<Real> report;
    report.config = cfg;
    report.rank = rank;
    report.precision = ScalarTraits<Real>::name;

    const Real eig_tol = 4 * ScalarTraits<Real>::epsilon();
    const Real floor_tol = 128 * ScalarTraits<Real>::epsilon();
    Real sigma_prev{};
    int floor_streak = 0;
    for (int k = k0; k <= k_max; ++k) {
        const int N = 1 << k;
        const TridiagonalMatrix<Real> T = assemble(frame, cfg.n, N);
        const std::vector<EigenPair<Real>> pairs = smallest_eigenvalues(T, rank, eig_tol);
        const Real sigma = pairs[static_cast<std::size_t>(rank - 1)].value;
        ConvergenceStep<Real> step;
        step.k = k;
        step.N = N;
        step.sigma = sigma;
        step.eta = (k == k0) ? std::numeric_limits<Real>::infinity()
                             : Real(abs((sigma_prev - sigma) / sigma));
        report.steps.push_back(step);
        report.final_N = N;
        if (k > k0) {
            if (step.eta < eta_tol) {
                report.status = ConvergenceStatus::converged;
                return report;
            }
            if (step.eta <= floor_tol) {
                if (++floor_streak >= 2) {
                    report.status = ConvergenceStatus::converged_at_floor;
                    return report;
                }
            } else {
                floor_streak = 0;
            }
        }
        sigma_prev = sigma;
    }
    report.status = ConvergenceStatus::not_converged;
    return report;
}

template <class Real>
struct ValidationStep {
    int m = 0;
    Real gap{};  // |sigma_ref - R(u_m)|
};

template <class Real>
struct ValidationReport {
    std::vector<ValidationStep<Real>> steps;
    bool certified = false;
    Real cert_tol{};
};

// Certifies a converged eigenvalue by rebuilding trial functions at
// increasing truncation orders and measuring the Rayleigh-quotient gap.
// Stops at the first order whose gap beats cert_tol. The default schedule
// doubles from 4 up to the ladder's final section order. Validating an
// unconverged report is refused: its final sigma is not a reference value.
template <class Real>
ValidationReport<Real> validate_sigma(const ShellConfig<Real>& cfg,
                                      const ConvergenceReport<Real>& report,
                                      std::vector<int> m_schedule = {},
                                      const Real& cert_tol = ScalarTraits<Real>::default_cert_tol(),
                                      const Real& quad_tol = ScalarTraits<Real>::default_quad_tol()) {
    if (report.status == ConvergenceStatus::not_converged) {
        throw Error(ErrorKind::invalid_argument,
                    "cannot validate: the convergence ladder did not settle");
    }
    if (report.steps.empty()) {
        throw Error(ErrorKind::invalid_argument, "cannot validate an empty report");
    }
    if (m_schedule.empty()) {
        for (int m = 4; m < report.final_N; m *= 2) m_schedule.push_back(m);
        m_schedule.push_back(report.final_N);
    }
    for (int m : m_schedule) {
        if (m < 1 || m < report.rank) {
            throw Error(ErrorKind::invalid_argument,
                        "validation schedule entries must be >= max(1, rank)");
        }
    }
    const BisphericalFrame<Real> frame = derive_frame(cfg);
    const Real sigma_ref = report.final_sigma();
    ValidationReport<Real> out;
    out.cert_tol = cert_tol;
    for (int m : m_schedule) {
        ValidationStep<Real> step;
        step.m = m;
        step.gap = validation_gap(frame, cfg.n, m, sigma_ref, report.rank, quad_tol);
        out.steps.push_back(step);
        if (step.gap < cert_tol) {
            out.certified = true;
            break;
        }
    }
    return out;
}

// First eigenvalue of the concentric shell (t = 0), where separation of
// variables gives it in closed form.
template <class Real>
Real concentric_exact(int n, const Real& r1, const Real& r2) {
    if (n < 1) throw Error(ErrorKind::invalid_dimension, "dimension parameter must be >= 1");
    if (!(r1 > 0) || !(r2 > r1)) {
        throw Error(ErrorKind::invalid_radii, "radii must satisfy 0 < r1 < r2");
    }
    const Real p1 = powi(r1, n);
    const Real p2 = powi(r2, n);
    return n * p1 / (r2 * (p2 - p1));
}

// Offset-independent lower bound for the first eigenvalue; may be vacuous
// (non-positive) when the shell is thick.
template <class Real>
Real eccentric_lower_bound(int n, const Real& r1, const Real& r2) {
    if (n < 1) throw Error(ErrorKind::invalid_dimension, "dimension parameter must be >= 1");
    if (!(r1 > 0) || !(r2 > r1)) {
        throw Error(ErrorKind::invalid_radii, "radii must satisfy 0 < r1 < r2");
    }
    return ((n + 1) * r1 - n * r2) / (2 * r2 * (r2 - r1));
}

template <class Real>
struct Table1Row {
    int n = 0;
    Real t_ratio{};
    int k = 0;
    Real eta{};
};

// Reference convergence table: the shell r1 = 1, r2 = 3 at five offsets for
// n = 1 and n = 2, reporting the last two ladder steps of each run (the step
// that still misses eta_tol = 1e-12 and the one that clears it).
template <class Real>
std::vector<Table1Row<Real>> table1() {
    std::vector<Table1Row<Real>> rows;
    const int ratio_fifties[] = {10, 20, 30, 40, 49};  // 0.2 0.4 0.6 0.8 0.98
    for (int n = 1; n <= 2; ++n) {
        for (int rf : ratio_fifties) {
            const Real ratio = Real(rf) / 50;
            ShellConfig<Real> cfg;
            cfg.n = n;
            cfg.r1 = Real(1);
            cfg.r2 = Real(3);
            cfg.t = ratio * (cfg.r2 - cfg.r1);
            const ConvergenceReport<Real> report = converge_sigma(cfg, 1, Real(1e-12), 9);
            const std::size_t sz = report.steps.size();
            for (std::size_t i = sz - 2; i < sz; ++i) {
                Table1Row<Real> row;
                row.n = n;
                row.t_ratio = ratio;
                row.k = report.steps[i].k;
                row.eta = report.steps[i].eta;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

template <class Real>
struct SweepGrid {
    std::vector<int> ns;
    std::vector<Real> r1s;
    std::vector<Real> r2s;
    std::vector<Real> t_ratios;  // offset as a fraction of r2 - r1; 0 = concentric
    std::vector<int> ranks;
};

template <class Real>
struct SweepOptions {
    Real eta_tol = Real(1e-12);
    int k_max = 12;
    bool validate = false;  // also compute the final validation gap per record
    Real cert_tol = ScalarTraits<Real>::default_cert_tol();
    Real quad_tol = ScalarTraits<Real>::default_quad_tol();
    int threads = 0;  // 0 = hardware concurrency
};

template <class Real>
struct SweepRecord {
    int n = 0;
    Real r1{};
    Real r2{};
    Real t_ratio{};
    int rank = 1;
    bool ok = false;          // record computed without error
    std::string error;        // failure message when !ok
    Real sigma{};
    int final_N = 0;
    Real eta_final{};
    bool has_eta = false;
    Real gap_final{};
    bool has_gap = false;
    ConvergenceStatus status = ConvergenceStatus::not_converged;
};

namespace detail {

template <class Real>
void run_sweep_record(SweepRecord<Real>& rec, const SweepOptions<Real>& opts) {
    try {
        if (rec.t_ratio == 0) {
            if (rec.rank != 1) {
                throw Error(ErrorKind::concentric_geometry,
                            "higher modes need an eccentric configuration");
            }
            rec.sigma = concentric_exact(rec.n, rec.r1, rec.r2);
            rec.final_N = 0;
            rec.status = ConvergenceStatus::converged;
            rec.ok = true;
            return;
        }
        ShellConfig<Real> cfg;
        cfg.n = rec.n;
        cfg.r1 = rec.r1;
        cfg.r2 = rec.r2;
        cfg.t = rec.t_ratio * (rec.r2 - rec.r1);
        const ConvergenceReport<Real> report =
            converge_sigma(cfg, rec.rank, opts.eta_tol, opts.k_max);
        rec.sigma = report.final_sigma();
        rec.final_N = report.final_N;
        rec.eta_final = report.final_eta();
        rec.has_eta = true;
        rec.status = report.status;
        if (opts.validate && report.status != ConvergenceStatus::not_converged) {
            const ValidationReport<Real> v =
                validate_sigma(cfg, report, {}, opts.cert_tol, opts.quad_tol);
            rec.gap_final = v.steps.back().gap;
            rec.has_gap = true;
        }
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.ok = false;
        rec.error = e.what();
    }
}

}  // namespace detail

// Cross-product sweep (rank varies fastest, then t_ratio, r2, r1, n) with
// per-record failure capture: one bad configuration reports its error in its
// own row instead of aborting the batch. Records are computed by stride-
// partitioned workers and returned in grid order regardless of thread count.
template <class Real>
std::vector<SweepRecord<Real>> sweep(const SweepGrid<Real>& grid,
                                     const SweepOptions<Real>& opts = {}) {
    if (grid.ns.empty() || grid.r1s.empty() || grid.r2s.empty() || grid.t_ratios.empty() ||
        grid.ranks.empty()) {
        throw Error(ErrorKind::invalid_argument, "sweep grid has an empty axis");
    }
    std::vector<SweepRecord<Real>> records;
    for (int n : grid.ns)
        for (const Real& r1 : grid.r1s)
            for (const Real& r2 : grid.r2s)
                for (const Real& t_ratio : grid.t_ratios)
                    for (int rank : grid.ranks) {
                        SweepRecord<Real> rec;
                        rec.n = n;
                        rec.r1 = r1;
                        rec.r2 = r2;
                        rec.t_ratio = t_ratio;
                        rec.rank = rank;
                        records.push_back(rec);
                    }
    const std::size_t total = records.size();
    std::size_t threads = opts.threads > 0
                              ? static_cast<std::size_t>(opts.threads)
                              : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, total);
    if (threads <= 1) {
        for (SweepRecord<Real>& rec : records) detail::run_sweep_record(rec, opts);
        return records;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        futures.push_back(std::async(std::launch::async, [&records, &opts, w, threads, total] {
            for (std::size_t i = w; i < total; i += threads) {
                detail::run_sweep_record(records[i], opts);
            }
        }));
    }
    for (std::future<void>& f : futures) f.get();
    return records;
}

}  // namespace steklov
