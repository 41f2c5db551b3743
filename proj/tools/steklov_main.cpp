// Command-line front end: eigenvalue convergence, certification, parameter
// sweeps, the reference convergence table, higher modes, and eigenfunction
// evaluation, in either binary64 or extended (50-digit) arithmetic.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "steklov/driver.hpp"
#include "steklov/errors.hpp"
#include "steklov/finite_section.hpp"
#include "steklov/geometry.hpp"
#include "steklov/rayleigh.hpp"
#include "steklov/scalar.hpp"
#include "steklov/svg.hpp"
#include "steklov/tables.hpp"

namespace {

using steklov::Cell;
using steklov::Error;
using steklov::ErrorKind;
using steklov::MetaEntry;
using steklov::Table;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;       // usage or computation failure
constexpr int kExitUncertified = 2; // ran fine but did not meet the requested bar

struct CliOptions {
    std::string precision = "float64";
    std::string format = "text";
    std::string out;
    std::string svg;

    // single-configuration commands
    int n = 1;
    std::string r1 = "1";
    std::string r2 = "3";
    std::string t;
    std::string t_ratio;
    int rank = 1;
    std::string eta_tol = "1e-12";
    int k_max = 12;
    bool validate = false;
    std::string cert_tol;  // empty = precision default
    std::string quad_tol;  // empty = precision default
    std::vector<int> m_schedule;

    // sweep
    std::vector<int> sweep_n{1};
    std::vector<std::string> sweep_r1{"1"};
    std::vector<std::string> sweep_r2{"3"};
    std::vector<std::string> sweep_t_ratio;
    std::vector<int> sweep_rank{1};
    int threads = 0;

    // modes
    int mode_count = 3;

    // eigenfunction
    int m_order = 32;
    int nxi = 21;
    int ntheta = 41;
    std::string grid_file;
};

template <class Real>
Real parse_real(const std::string& s, const char* what) {
    try {
        if constexpr (std::is_same_v<Real, steklov::Float64>) {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing characters");
            return v;
        } else {
            return Real(s);
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorKind::invalid_argument,
                    std::string("cannot parse ") + what + " value '" + s + "'");
    }
}

inline double to_plot_double(double v) { return v; }
inline double to_plot_double(const steklov::Extended& v) { return v.convert_to<double>(); }

template <class Real>
steklov::ShellConfig<Real> build_config(const CliOptions& opt) {
    steklov::ShellConfig<Real> cfg;
    cfg.n = opt.n;
    cfg.r1 = parse_real<Real>(opt.r1, "--r1");
    cfg.r2 = parse_real<Real>(opt.r2, "--r2");
    if (!opt.t.empty() && !opt.t_ratio.empty()) {
        throw Error(ErrorKind::invalid_argument, "give either --t or --t-ratio, not both");
    }
    if (opt.t.empty() && opt.t_ratio.empty()) {
        throw Error(ErrorKind::invalid_argument, "one of --t or --t-ratio is required");
    }
    if (!opt.t.empty()) {
        cfg.t = parse_real<Real>(opt.t, "--t");
    } else {
        cfg.t = parse_real<Real>(opt.t_ratio, "--t-ratio") * (cfg.r2 - cfg.r1);
    }
    return cfg;
}

template <class Real>
Real tol_or_default(const std::string& flag, const Real& fallback, const char* what) {
    return flag.empty() ? fallback : parse_real<Real>(flag, what);
}

void emit_payload(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::io_failure, "cannot open output file " + out_path);
    f << payload;
    if (!f) throw Error(ErrorKind::io_failure, "failed writing " + out_path);
}

void emit_svg(const std::string& svg_path, const std::vector<steklov::Series>& series,
              const steklov::AxesSpec& axes) {
    if (svg_path.empty()) return;
    emit_payload(svg_path, steklov::render_line_chart(series, axes));
}

template <class Real>
Cell real_cell(const Real& v) {
    using std::isinf;
    using std::isnan;
    if (isinf(v) || isnan(v)) return Cell::none();
    return Cell::number(steklov::format_real(v));
}

// ---- table builders ----

template <class Real>
Table convergence_table(const steklov::ConvergenceReport<Real>& rep) {
    Table t;
    t.columns = {"k", "N", "sigma", "eta"};
    for (const auto& step : rep.steps) {
        t.rows.push_back({Cell::integer(step.k), Cell::integer(step.N), real_cell(step.sigma),
                          real_cell(step.eta)});
    }
    return t;
}

template <class Real>
Table validation_table(const steklov::ValidationReport<Real>& rep) {
    Table t;
    t.columns = {"m", "E"};
    for (const auto& step : rep.steps) {
        t.rows.push_back({Cell::integer(step.m), real_cell(step.gap)});
    }
    return t;
}

template <class Real>
Table table1_table(const std::vector<steklov::Table1Row<Real>>& rows) {
    Table t;
    t.columns = {"n", "t_ratio", "k", "eta"};
    for (const auto& row : rows) {
        t.rows.push_back({Cell::integer(row.n), real_cell(row.t_ratio), Cell::integer(row.k),
                          real_cell(row.eta)});
    }
    return t;
}

template <class Real>
Table sweep_table(const std::vector<steklov::SweepRecord<Real>>& records, bool include_error) {
    Table t;
    t.columns = {"n",     "r1",      "r2",        "t_ratio", "rank",
                 "sigma", "final_N", "eta_final", "E_final", "converged"};
    if (include_error) t.columns.push_back("error");
    for (const auto& rec : records) {
        std::vector<Cell> row;
        row.push_back(Cell::integer(rec.n));
        row.push_back(real_cell(rec.r1));
        row.push_back(real_cell(rec.r2));
        row.push_back(real_cell(rec.t_ratio));
        row.push_back(Cell::integer(rec.rank));
        if (rec.ok) {
            row.push_back(real_cell(rec.sigma));
            row.push_back(Cell::integer(rec.final_N));
            row.push_back(rec.has_eta ? real_cell(rec.eta_final) : Cell::none());
            row.push_back(rec.has_gap ? real_cell(rec.gap_final) : Cell::none());
            row.push_back(Cell::boolean(rec.status == steklov::ConvergenceStatus::converged));
        } else {
            row.push_back(Cell::none());
            row.push_back(Cell::none());
            row.push_back(Cell::none());
            row.push_back(Cell::none());
            row.push_back(Cell::boolean(false));
        }
        if (include_error) row.push_back(rec.ok ? Cell::none() : Cell::text(rec.error));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---- shared meta/summary helpers ----

template <class Real>
void append_config_meta(std::vector<MetaEntry>& meta, const steklov::ShellConfig<Real>& cfg,
                        int rank) {
    meta.emplace_back("n", Cell::integer(cfg.n));
    meta.emplace_back("r1", real_cell(cfg.r1));
    meta.emplace_back("r2", real_cell(cfg.r2));
    meta.emplace_back("t", real_cell(cfg.t));
    meta.emplace_back("t_ratio", real_cell(Real(cfg.t / (cfg.r2 - cfg.r1))));
    meta.emplace_back("rank", Cell::integer(rank));
    if (rank > 1) meta.emplace_back("note", Cell::text("axisymmetric-restricted"));
}

template <class Real>
std::string config_line(const steklov::ShellConfig<Real>& cfg, int rank) {
    std::string s = "config: n=" + std::to_string(cfg.n) + " r1=" + steklov::format_real(cfg.r1) +
                    " r2=" + steklov::format_real(cfg.r2) + " t=" + steklov::format_real(cfg.t) +
                    " t_ratio=" + steklov::format_real(Real(cfg.t / (cfg.r2 - cfg.r1))) +
                    " rank=" + std::to_string(rank);
    return s;
}

const char* kAxisymNote = "note: rank > 1 eigenvalues are axisymmetric-restricted";

std::string render_payload(const std::string& format, const Table& table,
                           const std::vector<MetaEntry>& meta,
                           const std::vector<std::string>& text_lines) {
    if (format == "csv") return steklov::to_csv(table);
    if (format == "json") return steklov::to_json(table, meta);
    std::string out;
    for (const auto& line : text_lines) {
        out += line;
        out += '\n';
    }
    if (!table.columns.empty()) {
        out += steklov::to_text(table);
    }
    return out;
}

// ---- commands ----

template <class Real>
int run_eigen(const CliOptions& opt) {
    const auto cfg = build_config<Real>(opt);
    const Real eta_tol = parse_real<Real>(opt.eta_tol, "--eta-tol");
    const auto report = steklov::converge_sigma(cfg, opt.rank, eta_tol, opt.k_max);

    bool certified = false;
    steklov::ValidationReport<Real> vrep;
    if (opt.validate && report.status != steklov::ConvergenceStatus::not_converged) {
        const Real cert_tol = tol_or_default(opt.cert_tol,
                                             steklov::ScalarTraits<Real>::default_cert_tol(),
                                             "--cert-tol");
        const Real quad_tol = tol_or_default(opt.quad_tol,
                                             steklov::ScalarTraits<Real>::default_quad_tol(),
                                             "--quad-tol");
        std::vector<int> schedule = opt.m_schedule;
        vrep = steklov::validate_sigma(cfg, report, schedule, cert_tol, quad_tol);
        certified = vrep.certified;
    }

    Table table = convergence_table(report);
    std::vector<MetaEntry> meta;
    meta.emplace_back("command", Cell::text("eigen"));
    meta.emplace_back("precision", Cell::text(report.precision));
    append_config_meta(meta, cfg, opt.rank);
    meta.emplace_back("sigma", real_cell(report.final_sigma()));
    meta.emplace_back("final_N", Cell::integer(report.final_N));
    meta.emplace_back("status", Cell::text(steklov::to_string(report.status)));
    if (opt.rank == 1) {
        meta.emplace_back("concentric_sigma", real_cell(steklov::concentric_exact(cfg.n, cfg.r1, cfg.r2)));
        meta.emplace_back("lower_bound", real_cell(steklov::eccentric_lower_bound(cfg.n, cfg.r1, cfg.r2)));
    }
    if (opt.validate) {
        meta.emplace_back("certified", Cell::boolean(certified));
        if (!vrep.steps.empty()) {
            meta.emplace_back("E_final", real_cell(vrep.steps.back().gap));
            meta.emplace_back("E_order", Cell::integer(vrep.steps.back().m));
        }
    }

    std::vector<std::string> lines;
    lines.push_back("command: eigen");
    lines.push_back(std::string("precision: ") + report.precision);
    lines.push_back(config_line(cfg, opt.rank));
    if (opt.rank > 1) lines.push_back(kAxisymNote);
    lines.push_back("");
    std::vector<std::string> tail;
    tail.push_back(std::string("status: ") + steklov::to_string(report.status));
    tail.push_back("sigma: " + steklov::format_real(report.final_sigma()));
    tail.push_back("final_N: " + std::to_string(report.final_N));
    if (opt.rank == 1) {
        tail.push_back("concentric_sigma: " +
                       steklov::format_real(steklov::concentric_exact(cfg.n, cfg.r1, cfg.r2)));
        tail.push_back("lower_bound: " +
                       steklov::format_real(steklov::eccentric_lower_bound(cfg.n, cfg.r1, cfg.r2)));
    }
    std::string payload;
    if (opt.format == "text") {
        payload = render_payload("text", table, meta, lines);
        for (const auto& line : tail) payload += line + "\n";
        if (opt.validate) {
            payload += "validation:\n" + steklov::to_text(validation_table(vrep));
            payload += std::string("certified: ") + (certified ? "true" : "false") + "\n";
        }
    } else {
        payload = render_payload(opt.format, table, meta, {});
    }
    emit_payload(opt.out, payload);

    if (!opt.svg.empty()) {
        steklov::Series eta_series;
        eta_series.label = "eta";
        for (const auto& step : report.steps) {
            eta_series.x.push_back(step.k);
            eta_series.y.push_back(to_plot_double(step.eta));
        }
        steklov::AxesSpec axes;
        axes.title = "eigenvalue convergence";
        axes.xlabel = "ladder step k (section order N = 2^k)";
        axes.ylabel = "relative change eta";
        axes.logy = true;
        emit_svg(opt.svg, {eta_series}, axes);
    }

    if (report.status == steklov::ConvergenceStatus::converged && (!opt.validate || certified)) {
        return kExitOk;
    }
    return kExitUncertified;
}

template <class Real>
int run_validate(const CliOptions& opt) {
    const auto cfg = build_config<Real>(opt);
    const Real eta_tol = parse_real<Real>(opt.eta_tol, "--eta-tol");
    const auto report = steklov::converge_sigma(cfg, opt.rank, eta_tol, opt.k_max);
    const Real cert_tol = tol_or_default(opt.cert_tol,
                                         steklov::ScalarTraits<Real>::default_cert_tol(),
                                         "--cert-tol");
    const Real quad_tol = tol_or_default(opt.quad_tol,
                                         steklov::ScalarTraits<Real>::default_quad_tol(),
                                         "--quad-tol");

    std::vector<MetaEntry> meta;
    meta.emplace_back("command", Cell::text("validate"));
    meta.emplace_back("precision", Cell::text(report.precision));
    append_config_meta(meta, cfg, opt.rank);
    meta.emplace_back("sigma", real_cell(report.final_sigma()));
    meta.emplace_back("final_N", Cell::integer(report.final_N));
    meta.emplace_back("status", Cell::text(steklov::to_string(report.status)));
    meta.emplace_back("cert_tol", real_cell(cert_tol));

    if (report.status == steklov::ConvergenceStatus::not_converged) {
        Table empty;
        empty.columns = {"m", "E"};
        meta.emplace_back("certified", Cell::boolean(false));
        std::vector<std::string> lines = {"command: validate",
                                          std::string("precision: ") + report.precision,
                                          config_line(cfg, opt.rank),
                                          "status: not_converged",
                                          "certified: false (ladder did not settle)"};
        emit_payload(opt.out, render_payload(opt.format, empty, meta,
                                             opt.format == "text" ? lines
                                                                  : std::vector<std::string>{}));
        return kExitUncertified;
    }

    const auto vrep = steklov::validate_sigma(cfg, report, opt.m_schedule, cert_tol, quad_tol);
    Table table = validation_table(vrep);
    meta.emplace_back("certified", Cell::boolean(vrep.certified));

    std::vector<std::string> lines;
    lines.push_back("command: validate");
    lines.push_back(std::string("precision: ") + report.precision);
    lines.push_back(config_line(cfg, opt.rank));
    if (opt.rank > 1) lines.push_back(kAxisymNote);
    lines.push_back("sigma: " + steklov::format_real(report.final_sigma()) +
                    "  (final_N: " + std::to_string(report.final_N) +
                    ", status: " + steklov::to_string(report.status) + ")");
    lines.push_back("cert_tol: " + steklov::format_real(cert_tol));
    lines.push_back("");
    std::string payload = render_payload(opt.format, table, meta,
                                         opt.format == "text" ? lines
                                                              : std::vector<std::string>{});
    if (opt.format == "text") {
        payload += std::string("certified: ") + (vrep.certified ? "true" : "false") + "\n";
    }
    emit_payload(opt.out, payload);

    if (!opt.svg.empty()) {
        steklov::Series gap_series;
        gap_series.label = "E";
        for (const auto& step : vrep.steps) {
            gap_series.x.push_back(step.m);
            gap_series.y.push_back(to_plot_double(step.gap));
        }
        steklov::AxesSpec axes;
        axes.title = "validation gap";
        axes.xlabel = "truncation order m";
        axes.ylabel = "|sigma_ref - R(u_m)|";
        axes.logy = true;
        emit_svg(opt.svg, {gap_series}, axes);
    }

    const bool ok = report.status == steklov::ConvergenceStatus::converged && vrep.certified;
    return ok ? kExitOk : kExitUncertified;
}

template <class Real>
int run_table1(const CliOptions& opt) {
    const auto rows = steklov::table1<Real>();
    Table table = table1_table(rows);
    std::vector<MetaEntry> meta;
    meta.emplace_back("command", Cell::text("table1"));
    meta.emplace_back("precision", Cell::text(steklov::ScalarTraits<Real>::name));
    meta.emplace_back("r1", Cell::integer(1));
    meta.emplace_back("r2", Cell::integer(3));
    meta.emplace_back("eta_tol", Cell::number("1e-12"));

    std::vector<std::string> lines = {
        "command: table1",
        std::string("precision: ") + steklov::ScalarTraits<Real>::name,
        "shell: r1=1 r2=3, eta_tol=1e-12; last two ladder steps per configuration",
        ""};
    emit_payload(opt.out, render_payload(opt.format, table, meta,
                                         opt.format == "text" ? lines
                                                              : std::vector<std::string>{}));

    if (!opt.svg.empty()) {
        std::map<std::pair<int, std::string>, steklov::Series> by_config;
        for (const auto& row : rows) {
            const auto key = std::make_pair(row.n, steklov::format_real(row.t_ratio));
            auto& series = by_config[key];
            if (series.label.empty()) {
                series.label = "n=" + std::to_string(row.n) + " t_ratio=" + key.second;
            }
            series.x.push_back(row.k);
            series.y.push_back(to_plot_double(row.eta));
        }
        std::vector<steklov::Series> all;
        for (auto& [key, series] : by_config) all.push_back(std::move(series));
        steklov::AxesSpec axes;
        axes.title = "reference convergence table";
        axes.xlabel = "ladder step k";
        axes.ylabel = "relative change eta";
        axes.logy = true;
        emit_svg(opt.svg, all, axes);
    }
    return kExitOk;
}

template <class Real>
int run_sweep(const CliOptions& opt) {
    if (opt.sweep_t_ratio.empty()) {
        throw Error(ErrorKind::invalid_argument, "sweep requires --t-ratio values");
    }
    steklov::SweepGrid<Real> grid;
    grid.ns = opt.sweep_n;
    for (const auto& s : opt.sweep_r1) grid.r1s.push_back(parse_real<Real>(s, "--r1"));
    for (const auto& s : opt.sweep_r2) grid.r2s.push_back(parse_real<Real>(s, "--r2"));
    for (const auto& s : opt.sweep_t_ratio) {
        grid.t_ratios.push_back(parse_real<Real>(s, "--t-ratio"));
    }
    grid.ranks = opt.sweep_rank;

    steklov::SweepOptions<Real> sweep_opts;
    sweep_opts.eta_tol = parse_real<Real>(opt.eta_tol, "--eta-tol");
    sweep_opts.k_max = opt.k_max;
    sweep_opts.validate = opt.validate;
    sweep_opts.cert_tol = tol_or_default(opt.cert_tol,
                                         steklov::ScalarTraits<Real>::default_cert_tol(),
                                         "--cert-tol");
    sweep_opts.quad_tol = tol_or_default(opt.quad_tol,
                                         steklov::ScalarTraits<Real>::default_quad_tol(),
                                         "--quad-tol");
    sweep_opts.threads = opt.threads;
    const auto records = steklov::sweep(grid, sweep_opts);

    std::vector<MetaEntry> meta;
    meta.emplace_back("command", Cell::text("sweep"));
    meta.emplace_back("precision", Cell::text(steklov::ScalarTraits<Real>::name));
    meta.emplace_back("eta_tol", real_cell(sweep_opts.eta_tol));
    meta.emplace_back("k_max", Cell::integer(opt.k_max));
    meta.emplace_back("validated", Cell::boolean(opt.validate));
    bool any_higher_rank = false;
    for (int r : grid.ranks) any_higher_rank = any_higher_rank || r > 1;
    if (any_higher_rank) meta.emplace_back("note", Cell::text("axisymmetric-restricted"));

    std::string payload;
    if (opt.format == "csv") {
        payload = steklov::to_csv(sweep_table(records, false));
    } else if (opt.format == "json") {
        payload = steklov::to_json(sweep_table(records, true), meta);
    } else {
        std::vector<std::string> lines = {
            "command: sweep", std::string("precision: ") + steklov::ScalarTraits<Real>::name};
        if (any_higher_rank) lines.push_back(kAxisymNote);
        lines.push_back("");
        payload = render_payload("text", sweep_table(records, true), meta, lines);
    }
    emit_payload(opt.out, payload);

    if (!opt.svg.empty()) {
        std::map<std::string, steklov::Series> by_curve;
        for (const auto& rec : records) {
            if (!rec.ok) continue;
            const std::string key = "n=" + std::to_string(rec.n) +
                                    " r1=" + steklov::format_real(rec.r1) +
                                    " r2=" + steklov::format_real(rec.r2) +
                                    " rank=" + std::to_string(rec.rank);
            auto& series = by_curve[key];
            if (series.label.empty()) series.label = key;
            series.x.push_back(to_plot_double(rec.t_ratio));
            series.y.push_back(to_plot_double(rec.sigma));
        }
        std::vector<steklov::Series> all;
        for (auto& [key, series] : by_curve) all.push_back(std::move(series));
        steklov::AxesSpec axes;
        axes.title = "eigenvalue versus offset";
        axes.xlabel = "t / (r2 - r1)";
        axes.ylabel = "sigma";
        emit_svg(opt.svg, all, axes);
    }

    bool all_ok = true;
    for (const auto& rec : records) {
        all_ok = all_ok && rec.ok && rec.status == steklov::ConvergenceStatus::converged;
    }
    return all_ok ? kExitOk : kExitUncertified;
}

template <class Real>
int run_modes(const CliOptions& opt) {
    if (opt.mode_count < 1) {
        throw Error(ErrorKind::invalid_argument, "--count must be >= 1");
    }
    const auto cfg = build_config<Real>(opt);
    const Real eta_tol = parse_real<Real>(opt.eta_tol, "--eta-tol");
    std::vector<steklov::ConvergenceReport<Real>> reports;
    for (int rank = 1; rank <= opt.mode_count; ++rank) {
        reports.push_back(steklov::converge_sigma(cfg, rank, eta_tol, opt.k_max));
    }

    Table table;
    table.columns = {"rank", "sigma", "final_N", "eta_final", "converged"};
    for (const auto& rep : reports) {
        table.rows.push_back({Cell::integer(rep.rank), real_cell(rep.final_sigma()),
                              Cell::integer(rep.final_N), real_cell(rep.final_eta()),
                              Cell::boolean(rep.status == steklov::ConvergenceStatus::converged)});
    }
    std::vector<MetaEntry> meta;
    meta.emplace_back("command", Cell::text("modes"));
    meta.emplace_back("precision", Cell::text(steklov::ScalarTraits<Real>::name));
    append_config_meta(meta, cfg, 1);
    meta.emplace_back("count", Cell::integer(opt.mode_count));
    if (opt.mode_count > 1) meta.emplace_back("note", Cell::text("axisymmetric-restricted"));

    std::vector<std::string> lines = {"command: modes",
                                      std::string("precision: ") +
                                          steklov::ScalarTraits<Real>::name,
                                      config_line(cfg, 1)};
    if (opt.mode_count > 1) lines.push_back(kAxisymNote);
    lines.push_back("");
    emit_payload(opt.out, render_payload(opt.format, table, meta,
                                         opt.format == "text" ? lines
                                                              : std::vector<std::string>{}));

    if (!opt.svg.empty()) {
        steklov::Series series;
        series.label = "sigma";
        for (const auto& rep : reports) {
            series.x.push_back(rep.rank);
            series.y.push_back(to_plot_double(rep.final_sigma()));
        }
        steklov::AxesSpec axes;
        axes.title = "axisymmetric-restricted spectrum";
        axes.xlabel = "rank";
        axes.ylabel = "sigma";
        emit_svg(opt.svg, {series}, axes);
    }

    bool all_converged = true;
    for (const auto& rep : reports) {
        all_converged = all_converged && rep.status == steklov::ConvergenceStatus::converged;
    }
    return all_converged ? kExitOk : kExitUncertified;
}

template <class Real>
std::vector<std::pair<Real, Real>> load_grid_points(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::io_failure, "cannot open grid file " + path);
    nlohmann::json doc;
    try {
        f >> doc;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::io_failure,
                    std::string("cannot parse grid file: ") + e.what());
    }
    const nlohmann::json* arr = nullptr;
    if (doc.is_array()) {
        arr = &doc;
    } else if (doc.is_object() && doc.contains("points") && doc["points"].is_array()) {
        arr = &doc["points"];
    } else {
        throw Error(ErrorKind::io_failure,
                    "grid file must be an array of points or {\"points\": [...]}");
    }
    const auto as_real = [](const nlohmann::json& v, const char* what) -> Real {
        if (v.is_string()) return parse_real<Real>(v.get<std::string>(), what);
        if (v.is_number()) return Real(v.get<double>());
        throw Error(ErrorKind::io_failure, std::string("grid point field ") + what +
                                               " must be a number or numeric string");
    };
    std::vector<std::pair<Real, Real>> points;
    for (const auto& item : *arr) {
        if (item.is_array() && item.size() == 2) {
            points.emplace_back(as_real(item[0], "xi"), as_real(item[1], "theta"));
        } else if (item.is_object() && item.contains("xi") && item.contains("theta")) {
            points.emplace_back(as_real(item["xi"], "xi"), as_real(item["theta"], "theta"));
        } else {
            throw Error(ErrorKind::io_failure,
                        "grid points must be [xi, theta] pairs or {\"xi\":..., \"theta\":...}");
        }
    }
    if (points.empty()) throw Error(ErrorKind::io_failure, "grid file holds no points");
    return points;
}

template <class Real>
int run_eigenfunction(const CliOptions& opt) {
    if (opt.m_order < 1) throw Error(ErrorKind::invalid_argument, "--m must be >= 1");
    const auto cfg = build_config<Real>(opt);
    const auto frame = steklov::derive_frame(cfg);
    const auto u = steklov::truncated_eigenfunction(frame, cfg.n, opt.m_order, opt.rank);

    std::vector<std::pair<Real, Real>> points;
    if (!opt.grid_file.empty()) {
        points = load_grid_points<Real>(opt.grid_file);
    } else {
        if (opt.nxi < 1 || opt.ntheta < 2) {
            throw Error(ErrorKind::invalid_argument, "--nxi must be >= 1 and --ntheta >= 2");
        }
        const Real pi = steklov::pi_value<Real>();
        for (int i = 0; i < opt.nxi; ++i) {
            const Real xi = opt.nxi == 1
                                ? frame.xi2
                                : frame.xi2 + (frame.xi1 - frame.xi2) * Real(i) / (opt.nxi - 1);
            for (int j = 0; j < opt.ntheta; ++j) {
                const Real theta = pi * Real(j) / (opt.ntheta - 1);
                points.emplace_back(xi, theta);
            }
        }
    }

    Table table;
    table.columns = {"xi", "theta", "u", "du_dxi", "du_dtheta"};
    for (const auto& [xi, theta] : points) {
        const Real value = steklov::eval(u, xi, theta);
        const auto grad = steklov::eval_gradient(u, xi, theta);
        table.rows.push_back({real_cell(xi), real_cell(theta), real_cell(value),
                              real_cell(grad.du_dxi), real_cell(grad.du_dtheta)});
    }

    std::vector<MetaEntry> meta;
    meta.emplace_back("command", Cell::text("eigenfunction"));
    meta.emplace_back("precision", Cell::text(steklov::ScalarTraits<Real>::name));
    append_config_meta(meta, cfg, opt.rank);
    meta.emplace_back("m", Cell::integer(opt.m_order));
    meta.emplace_back("sigma_m", real_cell(u.sigma));
    meta.emplace_back("alpha", real_cell(frame.alpha));
    meta.emplace_back("xi1", real_cell(frame.xi1));
    meta.emplace_back("xi2", real_cell(frame.xi2));
    meta.emplace_back("t0", real_cell(frame.t0));

    std::vector<std::string> lines = {"command: eigenfunction",
                                      std::string("precision: ") +
                                          steklov::ScalarTraits<Real>::name,
                                      config_line(cfg, opt.rank)};
    if (opt.rank > 1) lines.push_back(kAxisymNote);
    lines.push_back("m: " + std::to_string(opt.m_order) +
                    "  sigma_m: " + steklov::format_real(u.sigma));
    lines.push_back("frame: alpha=" + steklov::format_real(frame.alpha) +
                    " xi1=" + steklov::format_real(frame.xi1) +
                    " xi2=" + steklov::format_real(frame.xi2) +
                    " t0=" + steklov::format_real(frame.t0));
    lines.push_back("");
    emit_payload(opt.out, render_payload(opt.format, table, meta,
                                         opt.format == "text" ? lines
                                                              : std::vector<std::string>{}));

    if (!opt.svg.empty()) {
        steklov::Series trace;
        trace.label = "u on outer boundary";
        const Real pi = steklov::pi_value<Real>();
        const int samples = std::max(opt.ntheta, 65);
        for (int j = 0; j < samples; ++j) {
            const Real theta = pi * Real(j) / (samples - 1);
            trace.x.push_back(to_plot_double(theta));
            trace.y.push_back(to_plot_double(steklov::eval(u, frame.xi2, theta)));
        }
        steklov::AxesSpec axes;
        axes.title = "boundary trace of the trial eigenfunction";
        axes.xlabel = "theta";
        axes.ylabel = "u(xi2, theta)";
        emit_svg(opt.svg, {trace}, axes);
    }
    return kExitOk;
}

template <class F>
int with_precision(const std::string& precision, F&& f) {
    if (precision == "extended") return f.template operator()<steklov::Extended>();
    return f.template operator()<steklov::Float64>();
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions opt;
    CLI::App app{"First Steklov-Dirichlet eigenvalue of an eccentric spherical shell"};
    app.require_subcommand(1);
    app.add_option("--precision", opt.precision,
                   "scalar profile: float64 (binary64) or extended (50 decimal digits)")
        ->check(CLI::IsMember({"float64", "binary64", "double", "extended"}))
        ->capture_default_str();

    const auto add_format = [&](CLI::App* cmd) {
        // Let app-level flags (--precision) appear after the subcommand name.
        cmd->fallthrough();
        cmd->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"text", "csv", "json"}))
            ->capture_default_str();
        cmd->add_option("--out", opt.out, "write output to a file instead of stdout");
        cmd->add_option("--svg", opt.svg, "also render an SVG chart to this path");
    };
    const auto add_shell = [&](CLI::App* cmd) {
        cmd->add_option("--n", opt.n, "dimension parameter (shell lives in R^(n+2))")
            ->capture_default_str();
        cmd->add_option("--r1", opt.r1, "inner radius")->capture_default_str();
        cmd->add_option("--r2", opt.r2, "outer radius")->capture_default_str();
        auto* t_opt = cmd->add_option("--t", opt.t, "center offset");
        cmd->add_option("--t-ratio", opt.t_ratio, "center offset as a fraction of r2 - r1")
            ->excludes(t_opt);
    };
    const auto add_ladder = [&](CLI::App* cmd) {
        cmd->add_option("--eta-tol", opt.eta_tol, "relative convergence tolerance")
            ->capture_default_str();
        cmd->add_option("--kmax", opt.k_max, "largest ladder step (section order 2^kmax)")
            ->capture_default_str();
    };

    CLI::App* eigen = app.add_subcommand("eigen", "converge the eigenvalue for one shell");
    add_shell(eigen);
    add_ladder(eigen);
    eigen->add_option("--rank", opt.rank, "which eigenvalue (1 = lowest)")->capture_default_str();
    eigen->add_flag("--validate", opt.validate, "also certify via the Rayleigh-quotient gap");
    eigen->add_option("--cert-tol", opt.cert_tol, "certification tolerance (default per precision)");
    eigen->add_option("--quad-tol", opt.quad_tol, "quadrature tolerance (default per precision)");
    eigen->add_option("--m-schedule", opt.m_schedule, "validation truncation orders")
        ->delimiter(',');
    add_format(eigen);

    CLI::App* validate = app.add_subcommand("validate", "certify a converged eigenvalue");
    add_shell(validate);
    add_ladder(validate);
    validate->add_option("--rank", opt.rank, "which eigenvalue (1 = lowest)")
        ->capture_default_str();
    validate->add_option("--cert-tol", opt.cert_tol,
                         "certification tolerance (default per precision)");
    validate->add_option("--quad-tol", opt.quad_tol,
                         "quadrature tolerance (default per precision)");
    validate->add_option("--m-schedule", opt.m_schedule, "validation truncation orders")
        ->delimiter(',');
    add_format(validate);

    CLI::App* table1 = app.add_subcommand("table1", "reference convergence table (r1=1, r2=3)");
    add_format(table1);

    CLI::App* sweep = app.add_subcommand("sweep", "eigenvalues over a configuration grid");
    sweep->add_option("--n", opt.sweep_n, "dimension parameters")->delimiter(',');
    sweep->add_option("--r1", opt.sweep_r1, "inner radii")->delimiter(',');
    sweep->add_option("--r2", opt.sweep_r2, "outer radii")->delimiter(',');
    sweep->add_option("--t-ratio", opt.sweep_t_ratio,
                      "offsets as fractions of r2 - r1 (0 = concentric)")
        ->delimiter(',');
    sweep->add_option("--rank", opt.sweep_rank, "eigenvalue ranks")->delimiter(',');
    add_ladder(sweep);
    sweep->add_flag("--validate", opt.validate, "also compute the final validation gap");
    sweep->add_option("--cert-tol", opt.cert_tol, "certification tolerance (default per precision)");
    sweep->add_option("--quad-tol", opt.quad_tol, "quadrature tolerance (default per precision)");
    sweep->add_option("--threads", opt.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    add_format(sweep);

    CLI::App* modes = app.add_subcommand("modes", "first few axisymmetric-restricted eigenvalues");
    add_shell(modes);
    add_ladder(modes);
    modes->add_option("--count", opt.mode_count, "how many eigenvalues")->capture_default_str();
    add_format(modes);

    CLI::App* efn = app.add_subcommand("eigenfunction", "evaluate the trial eigenfunction");
    add_shell(efn);
    efn->add_option("--rank", opt.rank, "which eigenvalue (1 = lowest)")->capture_default_str();
    efn->add_option("--m", opt.m_order, "truncation order")->capture_default_str();
    efn->add_option("--nxi", opt.nxi, "grid points across the shell")->capture_default_str();
    efn->add_option("--ntheta", opt.ntheta, "grid points around the shell")->capture_default_str();
    efn->add_option("--grid-file", opt.grid_file,
                    "JSON file of evaluation points instead of a regular grid");
    add_format(efn);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eigen) return with_precision(opt.precision, [&]<class Real>() { return run_eigen<Real>(opt); });
        if (*validate) return with_precision(opt.precision, [&]<class Real>() { return run_validate<Real>(opt); });
        if (*table1) return with_precision(opt.precision, [&]<class Real>() { return run_table1<Real>(opt); });
        if (*sweep) return with_precision(opt.precision, [&]<class Real>() { return run_sweep<Real>(opt); });
        if (*modes) return with_precision(opt.precision, [&]<class Real>() { return run_modes<Real>(opt); });
        if (*efn) return with_precision(opt.precision, [&]<class Real>() { return run_eigenfunction<Real>(opt); });
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    std::cerr << "error: no command selected\n";
    return kExitError;
}
