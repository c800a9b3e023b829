#include "prop/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "prop/errors.hpp"
#include "prop/models.hpp"
#include "prop/version.hpp"

namespace prop {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double wall_now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct PointTask {
    double dt = 0.0;
    double area = 0.0; // wpi
    double phi = 0.0;  // wpi
    Method method = Method::Ito;
};

struct PointOutput {
    SummaryRow row;
    std::string csv; // full file content
    std::string file_name;
    std::vector<std::string> derived; // extra manifest lines
};

int record_stride(const ExperimentConfig& cfg, double dt) {
    double interval = cfg.record_interval;
    if (interval <= 0.0) interval = cfg.T / 1000.0;
    return std::max(1, static_cast<int>(std::llround(interval / dt)));
}

// ---- per-system execution ------------------------------------------------

PointOutput run_point_twolevel(const ExperimentConfig& cfg, const PointTask& task) {
    TwoLevelSpec spec;
    spec.mu = cfg.tl_mu;
    spec.T = cfg.T;
    HamiltonianModel model = build_two_level(spec);

    ItoConfig icfg;
    icfg.eps = cfg.epsilon;
    icfg.n_t = cfg.n_t;
    Propagator prop = make_propagator(model, icfg);

    State psi({ReprKind::Levels, 2});
    psi.amp[0] = 1.0;

    std::vector<double> ts, pop, nrm;
    RunOptions opts;
    opts.method = task.method;
    opts.freeze = cfg.cheb_freeze;
    opts.record_stride = record_stride(cfg, task.dt);

    const double w0 = wall_now();
    RunStats stats = propagate(prop, psi, 0.0, cfg.T, task.dt, opts,
                               [&](double t, const State& s) {
                                   ts.push_back(t);
                                   pop.push_back(std::norm(s.amp[0]));
                                   nrm.push_back(inner(s, s).real());
                               });
    const double wall = wall_now() - w0;

    std::vector<double> oracle(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        oracle[i] = std::norm(two_level_analytic(spec, ts[i]).first);
    ErrorMetrics em = error_metrics(ts, pop, oracle, nrm);

    PointOutput out;
    out.csv = "t,eps_sol,eps_norm\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out.csv += fmt(ts[i]) + "," + fmt(em.eps_sol[i]) + "," + fmt(em.eps_norm[i]) + "\n";
    out.row = {"dt=" + fmt(task.dt), task.dt,
               std::max(stats.diag.n_t_used, prop.current_n_t()), stats.diag.m_k,
               stats.diag.n_cheby, em.eps_sol_max, em.eps_norm_max, stats.diag.k_used,
               wall, false, ""};
    out.derived.push_back("e0 = " + fmt(spec.e0()));
    const SpectralBounds b = prop.bounds();
    out.derived.push_back("bounds = " + fmt(b.e_min()) + " .. " + fmt(b.e_max()));
    return out;
}

PointOutput run_point_oscillator(const ExperimentConfig& cfg, const PointTask& task) {
    DrivenOscillatorSpec spec;
    spec.omega0 = cfg.osc_omega0;
    spec.T = cfg.T;
    spec.n_grid = static_cast<std::size_t>(cfg.osc_grid_points);
    spec.r_max = cfg.osc_r_max;
    spec.e0 = cfg.osc_e0;
    HamiltonianModel model = build_oscillator(spec);

    ItoConfig icfg;
    icfg.eps = cfg.epsilon;
    icfg.n_t = cfg.n_t;
    Propagator prop = make_propagator(model, icfg);

    State phi0 = oscillator_ground_state(spec, model.fgrid());
    State psi = phi0;

    std::vector<double> ts, pop, nrm;
    RunOptions opts;
    opts.method = task.method;
    opts.freeze = cfg.cheb_freeze;
    opts.record_stride = record_stride(cfg, task.dt);

    const double w0 = wall_now();
    RunStats stats = propagate(prop, psi, 0.0, cfg.T, task.dt, opts,
                               [&](double t, const State& s) {
                                   ts.push_back(t);
                                   pop.push_back(std::norm(inner(phi0, s)));
                                   nrm.push_back(inner(s, s).real());
                               });
    const double wall = wall_now() - w0;

    const std::vector<double> oracle = oscillator_oracle(spec, ts);
    ErrorMetrics em = error_metrics(ts, pop, oracle, nrm);

    PointOutput out;
    out.csv = "t,eps_sol,eps_norm\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out.csv += fmt(ts[i]) + "," + fmt(em.eps_sol[i]) + "," + fmt(em.eps_norm[i]) + "\n";
    out.row = {"dt=" + fmt(task.dt), task.dt,
               std::max(stats.diag.n_t_used, prop.current_n_t()), stats.diag.m_k,
               stats.diag.n_cheby, em.eps_sol_max, em.eps_norm_max, stats.diag.k_used,
               wall, false, ""};
    out.derived.push_back("e0 = " + fmt(spec.e0));
    const SpectralBounds b = prop.bounds();
    out.derived.push_back("bounds = " + fmt(b.e_min()) + " .. " + fmt(b.e_max()));
    return out;
}

PointOutput run_point_wpi(const ExperimentConfig& cfg, const PointTask& task) {
    WpiSpec spec;
    spec.n_grid = 128;
    spec.tau_pulse = cfg.wpi_tau_pulse;
    spec.delay = cfg.wpi_delay;
    spec.carrier = cfg.wpi_carrier;
    spec.phase_zero = cfg.wpi_phase_zero;
    spec.area = task.area;

    const double w0 = wall_now();
    const double r = wpi_ratio(spec, task.phi, task.method, task.dt, cfg.epsilon, cfg.n_t);
    double eps_rel = 0.0;
    if (task.method != Method::Ito) {
        WpiSpec ref = spec;
        const double r_ito = wpi_ratio(ref, task.phi, Method::Ito, cfg.wpi_reference_dt,
                                       cfg.wpi_reference_epsilon, cfg.n_t);
        eps_rel = std::abs(r_ito - r) / r_ito;
    }
    const double wall = wall_now() - w0;

    PointOutput out;
    out.csv = "phi,R,eps_sol_rel\n";
    out.csv += fmt(task.phi) + "," + fmt(r) + "," + fmt(eps_rel) + "\n";
    out.row = {"area=" + fmt(task.area) + ",phi=" + fmt(task.phi), task.dt, cfg.n_t, 0, 0,
               eps_rel, 0.0, 0, wall, false, ""};
    out.derived.push_back("e0(area=" + fmt(task.area) + ") = " + fmt(spec.e0));
    return out;
}

PointOutput run_point(const ExperimentConfig& cfg, const PointTask& task) {
    try {
        switch (cfg.system) {
        case SystemKind::TwoLevel: return run_point_twolevel(cfg, task);
        case SystemKind::Oscillator: return run_point_oscillator(cfg, task);
        case SystemKind::Wpi: return run_point_wpi(cfg, task);
        }
        throw ConfigError("unreachable system");
    } catch (const ConvergenceError& e) {
        // row marked failed, run continues
        PointOutput out;
        out.row.label = "dt=" + fmt(task.dt);
        out.row.dt = task.dt;
        out.row.failed = true;
        out.row.fail_reason = e.what();
        out.csv = "error\n" + std::string(e.what()) + "\n";
        return out;
    }
}

std::vector<PointOutput> run_tasks(const ExperimentConfig& cfg,
                                   const std::vector<PointTask>& tasks, int threads) {
    std::vector<PointOutput> results(tasks.size());
    if (threads <= 1 || tasks.size() <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = run_point(cfg, tasks[i]);
        return results;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            results[i] = run_point(cfg, tasks[i]);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(tasks.size()));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

void write_file(const fs::path& p, const std::string& content, std::vector<std::string>& files) {
    std::ofstream f(p, std::ios::binary);
    f << content;
    files.push_back(p.string());
}

std::string manifest_text(const ExperimentConfig& cfg, const std::string& command,
                          const std::vector<PointOutput>& outs, double wall_total) {
    std::string m;
    m += "[meta]\n";
    m += "artifact_version = " + std::string(kVersion) + "\n";
    m += "command = " + command + "\n";
    m += "kernel_lane = " + std::string(kernels::active_name()) + "\n";
    m += "wall_seconds = " + fmt(wall_total) + "\n";
    m += "\n[experiment]\n";
    m += "system = " + cfg.system_name() + "\n";
    if (command == "compare") {
        std::string ms;
        for (Method mm : cfg.methods) ms += std::string(ms.empty() ? "" : ",") + method_name(mm);
        m += "methods = " + ms + "\n";
    } else {
        m += "method = " + std::string(method_name(cfg.method)) + "\n";
    }
    m += "T = " + fmt(cfg.T) + "\n";
    std::string dts;
    for (double d : cfg.dt_list) dts += std::string(dts.empty() ? "" : ",") + fmt(d);
    m += "dt_list = " + dts + "\n";
    m += "epsilon = " + fmt(cfg.epsilon) + "\n";
    m += "n_t = " + std::to_string(cfg.n_t) + "\n";
    m += "record_interval = " + fmt(cfg.record_interval) + "\n";
    if (cfg.system == SystemKind::Oscillator) {
        m += "\n[oscillator]\n";
        m += "omega0 = " + fmt(cfg.osc_omega0) + "\n";
        m += "e0 = " + fmt(cfg.osc_e0) + "\n";
        m += "grid_points = " + std::to_string(cfg.osc_grid_points) + "\n";
        m += "r_max = " + fmt(cfg.osc_r_max) + "\n";
    }
    if (cfg.system == SystemKind::Wpi) {
        m += "\n[wpi]\n";
        std::string ph, ar;
        for (double v : cfg.wpi_phi_list) ph += std::string(ph.empty() ? "" : ",") + fmt(v);
        for (double v : cfg.wpi_area_list) ar += std::string(ar.empty() ? "" : ",") + fmt(v);
        m += "phi_list = " + ph + "\n";
        m += "area_list = " + ar + "\n";
        m += "carrier = " + fmt(cfg.wpi_carrier) + "\n";
        m += "phase_zero = " + fmt(cfg.wpi_phase_zero) + "\n";
        m += "tau_pulse = " + fmt(cfg.wpi_tau_pulse) + "\n";
        m += "delay = " + fmt(cfg.wpi_delay) + "\n";
        m += "reference_dt = " + fmt(cfg.wpi_reference_dt) + "\n";
        m += "reference_epsilon = " + fmt(cfg.wpi_reference_epsilon) + "\n";
    }
    m += "\n[cheb]\n";
    m += std::string("freeze = ") + (cfg.cheb_freeze == Freeze::Left ? "left" : "mid") + "\n";
    m += "\n[derived]\n";
    for (const auto& o : outs)
        for (const auto& d : o.derived) m += d + "\n";
    m += "\n[results]\n";
    m += "columns = label,dt,n_t,m_k,n_cheby,eps_sol_max,eps_norm_max,k_max,wall_seconds,"
         "status\n";
    for (const auto& o : outs) {
        const auto& r = o.row;
        m += r.label + "," + fmt(r.dt) + "," + std::to_string(r.n_t) + "," +
             std::to_string(r.m_k) + "," + std::to_string(r.n_cheby) + "," +
             fmt(r.eps_sol_max) + "," + fmt(r.eps_norm_max) + "," + std::to_string(r.k_max) +
             "," + fmt(r.wall_seconds) + "," + (r.failed ? "failed:" + r.fail_reason : "ok") +
             "\n";
    }
    return m;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == '=' || c == ',' || c == ' ') c = '_';
    return s;
}

} // namespace

RunResult run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                         int threads) {
    fs::create_directories(out_dir);
    const double w0 = wall_now();

    std::vector<PointTask> tasks;
    if (cfg.system == SystemKind::Wpi) {
        for (double area : cfg.wpi_area_list)
            for (double phi : cfg.wpi_phi_list)
                tasks.push_back({cfg.dt_list.front(), area, phi, cfg.method});
    } else {
        for (double dt : cfg.dt_list) tasks.push_back({dt, 0.0, 0.0, cfg.method});
    }

    auto outs = run_tasks(cfg, tasks, threads);

    RunResult res;
    std::string summary =
        "label,dt,n_t,m_k,n_cheby,eps_sol_max,eps_norm_max,k_max,wall_seconds,status\n";
    for (std::size_t i = 0; i < outs.size(); ++i) {
        const auto& r = outs[i].row;
        summary += r.label + "," + fmt(r.dt) + "," + std::to_string(r.n_t) + "," +
                   std::to_string(r.m_k) + "," + std::to_string(r.n_cheby) + "," +
                   fmt(r.eps_sol_max) + "," + fmt(r.eps_norm_max) + "," +
                   std::to_string(r.k_max) + "," + fmt(r.wall_seconds) + "," +
                   (r.failed ? "failed:" + r.fail_reason : "ok") + "\n";
        write_file(fs::path(out_dir) / (cfg.prefix + "_" + sanitize(r.label) + ".csv"),
                   outs[i].csv, res.files);
        res.summary.push_back(r);
    }
    if (cfg.system == SystemKind::Wpi && cfg.wpi_phi_list.size() > 1) {
        // one combined interference curve per pulse area
        std::size_t idx = 0;
        for (double area : cfg.wpi_area_list) {
            std::string curve = "phi,R,eps_sol_rel\n";
            for (std::size_t j = 0; j < cfg.wpi_phi_list.size(); ++j, ++idx) {
                const auto& body = outs[idx].csv;
                const auto nl = body.find('\n');
                if (nl != std::string::npos) curve += body.substr(nl + 1);
            }
            write_file(fs::path(out_dir) /
                           (cfg.prefix + "_curve_" + sanitize("area=" + fmt(area)) + ".csv"),
                       curve, res.files);
        }
    }
    write_file(fs::path(out_dir) / (cfg.prefix + "_summary.csv"), summary, res.files);
    write_file(fs::path(out_dir) / (cfg.prefix + "_manifest.txt"),
               manifest_text(cfg, "run", outs, wall_now() - w0), res.files);
    return res;
}

RunResult compare_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                             int threads) {
    fs::create_directories(out_dir);
    const double w0 = wall_now();

    std::vector<PointTask> tasks;
    for (Method m : cfg.methods)
        for (double dt : cfg.dt_list) {
            PointTask t;
            t.dt = dt;
            t.method = m;
            if (cfg.system == SystemKind::Wpi) {
                t.area = cfg.wpi_area_list.front();
                t.phi = cfg.wpi_phi_list.front();
            }
            tasks.push_back(t);
        }

    auto outs = run_tasks(cfg, tasks, threads);

    RunResult res;
    std::string frontier = "method,dt,eps_sol_max,wall_seconds,status\n";
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& r = outs[i].row;
        frontier += std::string(method_name(tasks[i].method)) + "," + fmt(tasks[i].dt) + "," +
                    fmt(r.eps_sol_max) + "," + fmt(r.wall_seconds) + "," +
                    (r.failed ? "failed" : "ok") + "\n";
        res.summary.push_back(r);
    }
    write_file(fs::path(out_dir) / (cfg.prefix + "_frontier.csv"), frontier, res.files);
    write_file(fs::path(out_dir) / (cfg.prefix + "_manifest.txt"),
               manifest_text(cfg, "compare", outs, wall_now() - w0), res.files);
    return res;
}

// ---------------------------------------------------------------- validate

namespace {

double cheb_poly(int j, double x) {
    double p0 = 1.0, p1 = x;
    if (j == 0) return p0;
    for (int k = 2; k <= j; ++k) {
        const double p2 = 2.0 * x * p1 - p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

void add_row(ValidationReport& rep, const std::string& name, double tol, double achieved) {
    rep.rows.push_back({name, tol, achieved, achieved <= tol});
}

} // namespace

ValidationReport validate(unsigned long long seed, FaultInjection fault) {
    ValidationReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    // quadrature exactness: polynomial of degree N-1 from random Chebyshev
    // coefficients, sampled at the N roots, transformed back
    {
        const int n = 12;
        std::vector<cplx> coeffs(n);
        for (auto& c : coeffs) c = {uni(rng), uni(rng)};
        const auto roots = chebyshev_roots(n);
        std::vector<cplx> samples(roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i) {
            cplx acc{0.0, 0.0};
            for (int j = 0; j < n; ++j) acc += coeffs[static_cast<std::size_t>(j)] *
                                               cheb_poly(j, roots[i]);
            samples[i] = acc;
        }
        const auto back = samples_to_cheb(samples);
        double worst = 0.0;
        for (int j = 0; j < n; ++j)
            worst = std::max(worst,
                             std::abs(back[static_cast<std::size_t>(j)] -
                                      coeffs[static_cast<std::size_t>(j)]));
        add_row(rep, "quadrature_exactness", 1e-13, worst);
    }

    // orthogonality: samples of P_k give the unit coefficient
    {
        const int n = 16, k = 5;
        const auto roots = chebyshev_roots(n);
        std::vector<cplx> samples(roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i)
            samples[i] = cheb_poly(k, roots[i]);
        const auto back = samples_to_cheb(samples);
        double worst = 0.0;
        for (int j = 0; j < n; ++j) {
            const double expect = (j == k) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(back[static_cast<std::size_t>(j)] - expect));
        }
        add_row(rep, "orthogonality", 1e-13, worst);
    }

    // monomial table row sums: sum_k C_{j,k}/k! = P_j(1) = 1. High rows
    // cancel catastrophically (terms reach ~1e15 at j=40), so the error is
    // taken relative to the summed term magnitude per row.
    {
        const int m = 41;
        auto table = monomial_table(m);
        if (fault == FaultInjection::MonomialTable)
            table[static_cast<std::size_t>(5) * m + 2] += 1e-3; // test hook
        double worst = 0.0;
        for (int j = 0; j < m; ++j) {
            double sum = 0.0, mag = 0.0, fact = 1.0;
            for (int k = 0; k <= j; ++k) {
                if (k > 0) fact *= k;
                const double term =
                    table[static_cast<std::size_t>(j) * m + static_cast<std::size_t>(k)] /
                    fact;
                sum += term;
                mag += std::abs(term);
            }
            worst = std::max(worst, std::abs(sum - 1.0) / std::max(1.0, mag));
        }
        add_row(rep, "monomial_row_sums", 1e-9, worst);
    }

    // monomial table reproduces P_j pointwise, error relative to the summed
    // term magnitude (the monomial form of high-order P_j cancels heavily)
    {
        const int m = 41;
        const auto table = monomial_table(m);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const double x = uni(rng);
            for (int j = 0; j < m; ++j) {
                double sum = 0.0, mag = 0.0, fact = 1.0, xp = 1.0;
                for (int k = 0; k <= j; ++k) {
                    if (k > 0) {
                        fact *= k;
                        xp *= x;
                    }
                    const double term = table[static_cast<std::size_t>(j) * m +
                                              static_cast<std::size_t>(k)] *
                                        xp / fact;
                    sum += term;
                    mag += std::abs(term);
                }
                worst = std::max(worst,
                                 std::abs(sum - cheb_poly(j, x)) / std::max(1.0, mag));
            }
        }
        add_row(rep, "monomial_pointwise", 1e-9, worst);
    }

    // cheb_to_taylor round trip, m = 30: decaying Chebyshev coefficients ->
    // monomial coefficients -> re-expansion recovers the source
    {
        const int m = 30;
        const double t = 2.0;
        std::vector<cplx> bar(m);
        double w = 1.0;
        for (auto& c : bar) {
            c = cplx{uni(rng) * w, uni(rng) * w};
            w *= 0.3;
        }
        const auto phi = cheb_to_taylor_scalar(bar, m, t);
        const auto roots = chebyshev_roots(m);
        std::vector<cplx> samples(roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const double tau = 0.5 * t * (roots[i] + 1.0);
            cplx acc{0.0, 0.0};
            double p = 1.0;
            for (int j = 0; j < m; ++j) {
                acc += phi[static_cast<std::size_t>(j)] * p;
                p *= tau / (j + 1);
            }
            samples[i] = acc;
        }
        const auto back = samples_to_cheb(samples);
        double worst = 0.0, scale = 0.0;
        for (int j = 0; j < m; ++j) {
            worst = std::max(worst, std::abs(back[static_cast<std::size_t>(j)] -
                                             bar[static_cast<std::size_t>(j)]));
            scale = std::max(scale, std::abs(bar[static_cast<std::size_t>(j)]));
        }
        add_row(rep, "cheb_to_taylor_roundtrip", 1e-10, worst / scale);
    }

    // F_m series at x -> 0 equals t^m/m!
    {
        double worst = 0.0;
        for (int m = 1; m <= 8; ++m) {
            const double t = 0.7;
            double fact = 1.0;
            for (int j = 2; j <= m; ++j) fact *= j;
            const double expect = std::pow(t, m) / fact;
            const double got = fm_scalar(0.0, m, t).real();
            worst = std::max(worst, std::abs(got - expect) / expect);
        }
        add_row(rep, "fm_taylor_limit", 1e-11, worst);
    }

    // zero-inhomogeneity equivalence: time-independent H over a step
    {
        std::vector<double> h0 = {0.1, 0.3, 0.3, -0.2};
        std::vector<double> mu = {0.0, 1.0, 1.0, 0.0};
        HamiltonianModel model = HamiltonianModel::levels(2, h0, mu, {});
        ItoConfig icfg;
        icfg.eps = 1e-12;
        Propagator prop(model, model.spectral_range(0.0), icfg);
        State psi({ReprKind::Levels, 2});
        psi.amp[0] = {0.8, 0.1};
        psi.amp[1] = {0.2, std::sqrt(1.0 - 0.64 - 0.01 - 0.04)};
        StepDiagnostics d;
        const double dt = 3.0;
        State a = prop.ito_step(psi, 0.0, dt, d);
        State b = prop.standard_step(psi, 0.0, dt);
        add_row(rep, "zero_inhomogeneity_equivalence", 1e-13, dist(a, b));
    }

    // grid Hermiticity, Parseval round trip, kinetic eigenfunction
    {
        DrivenOscillatorSpec spec;
        spec.e0 = 0.5;
        HamiltonianModel model = build_oscillator(spec);
        const auto& g = model.fgrid();
        State a({ReprKind::Grid, g.n()}), b({ReprKind::Grid, g.n()});
        for (std::size_t i = 0; i < g.n(); ++i) {
            a.amp[i] = {uni(rng), uni(rng)};
            b.amp[i] = {uni(rng), uni(rng)};
        }
        State ha(a.repr), hb(b.repr);
        model.apply_frozen_into(0.37, a, ha);
        model.apply_frozen_into(0.37, b, hb);
        const double herm = std::abs(inner(b, ha) - inner(hb, a)) / (norm(a) * norm(b));
        add_row(rep, "hermiticity", 1e-12, herm);

        State c = a;
        g.fft(c.data());
        g.ifft(c.data());
        add_row(rep, "parseval_roundtrip", 1e-13, dist(c, a) / norm(a));

        // T exp(ikr) = k^2/2m exp(ikr) for a representable k
        const double kk = g.k()[5];
        State pw({ReprKind::Grid, g.n()});
        for (std::size_t i = 0; i < g.n(); ++i)
            pw.amp[i] = std::exp(cplx{0.0, kk * g.r()[i]});
        State hpw(pw.repr);
        model.apply_h0(pw, hpw);
        // subtract the potential part, leaving T psi
        for (std::size_t i = 0; i < g.n(); ++i)
            hpw.amp[i] -= model.potential()[i] * pw.amp[i];
        const double ek = kk * kk / (2.0 * spec.mass);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i)
            worst = std::max(worst, std::abs(hpw.amp[i] - ek * pw.amp[i]));
        add_row(rep, "kinetic_eigenfunction", 1e-10, worst / std::max(1.0, ek));
    }

    // F_1 closed form on a diagonal two-level H
    {
        std::vector<double> h0 = {0.7, 0.0, 0.0, -0.4};
        std::vector<double> mu = {0.0, 0.0, 0.0, 0.0};
        HamiltonianModel model = HamiltonianModel::levels(2, h0, mu, {});
        SpectralBounds b{0.15, 1.0};
        ItoConfig icfg;
        icfg.eps = 1e-13;
        Propagator prop(model, b, icfg);
        State psi({ReprKind::Levels, 2});
        psi.amp[0] = {0.6, 0.0};
        psi.amp[1] = {0.0, 0.8};
        State phi0({ReprKind::Levels, 2});
        phi0.amp[0] = {0.3, -0.2};
        phi0.amp[1] = {-0.1, 0.5};
        const double dt = 0.8;
        const State got = prop.inhomo_step(0.0, psi, {phi0}, dt);
        State expect({ReprKind::Levels, 2});
        for (int i = 0; i < 2; ++i) {
            const double e = h0[static_cast<std::size_t>(3 * i)];
            const cplx u = std::exp(cplx{0.0, -e * dt});
            const cplx f1 = (u - 1.0) / cplx{0.0, -e};
            expect.amp[static_cast<std::size_t>(i)] =
                u * psi.amp[static_cast<std::size_t>(i)] +
                f1 * phi0.amp[static_cast<std::size_t>(i)];
        }
        add_row(rep, "f1_closed_form", 1e-12, dist(got, expect));
    }

    // kernel lane equivalence on random vectors
    {
        const std::size_t n = 257;
        std::vector<cplx> x(n), y(n), out1(n), out2(n);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = {uni(rng), uni(rng)};
            y[i] = {uni(rng), uni(rng)};
            v[i] = uni(rng);
        }
        const cplx a{0.3, -0.7}, b{-1.1, 0.2};
        const auto& act = kernels::active();
        const auto& ref = kernels::scalar::ops;
        double worst = 0.0;
        act.axpby(a, x.data(), b, y.data(), out1.data(), n);
        ref.axpby(a, x.data(), b, y.data(), out2.data(), n);
        for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(out1[i] - out2[i]));
        worst = std::max(worst, std::abs(act.norm2sq(x.data(), n) - ref.norm2sq(x.data(), n)));
        worst = std::max(worst, std::abs(act.dot(x.data(), y.data(), n) -
                                         ref.dot(x.data(), y.data(), n)));
        add_row(rep, "kernel_lane_equivalence", 1e-12, worst);
    }

    return rep;
}

} // namespace prop
