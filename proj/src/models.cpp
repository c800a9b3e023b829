#include "prop/models.hpp"

#include <algorithm>
#include <cmath>

#include "prop/errors.hpp"

namespace prop {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1], Newton-refined at startup
struct GaussLegendre16 {
    double x[16];
    double w[16];
    GaussLegendre16() {
        const int n = 16;
        for (int i = 0; i < n; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                // P_n(xi) and P_n'(xi)
                double p0 = 1.0, p1 = xi;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
                const double dx = p1 / dp;
                xi -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            x[i] = xi;
            w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        }
    }
};

const GaussLegendre16& gl16() {
    static const GaussLegendre16 g;
    return g;
}

template <class F>
cplx gl_panels(const F& f, double a, double b, int n_panels) {
    const auto& g = gl16();
    cplx acc{0.0, 0.0};
    const double h = (b - a) / n_panels;
    for (int p = 0; p < n_panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        const double hw = 0.5 * h;
        for (int i = 0; i < 16; ++i) acc += hw * g.w[i] * f(mid + hw * g.x[i]);
    }
    return acc;
}

// adaptive refinement until two successive levels agree to 1e-13
template <class F>
cplx integrate(const F& f, double a, double b) {
    if (!(b > a)) return {0.0, 0.0};
    int n = std::max(1, static_cast<int>(std::ceil((b - a) / 0.1)));
    cplx prev = gl_panels(f, a, b, n);
    for (int level = 0; level < 12; ++level) {
        n *= 2;
        const cplx cur = gl_panels(f, a, b, n);
        if (std::abs(cur - prev) < 1e-13 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw ConvergenceError("oscillator oracle: quadrature did not converge",
                           std::abs(prev));
}

} // namespace

// ---------------------------------------------------------------- two-level

HamiltonianModel build_two_level(const TwoLevelSpec& spec) {
    std::vector<double> h0 = {0.0, 0.0, 0.0, 0.0};
    std::vector<double> mu = {0.0, spec.mu, spec.mu, 0.0};
    // RWA field E(t) = 1/2 E0 sin^2(pi t / T)
    Pulse p;
    p.e0 = 0.5 * spec.e0();
    p.t_start = 0.0;
    p.t_env = spec.T;
    p.omega0 = 0.0;
    p.phase = 0.0;
    return HamiltonianModel::levels(2, std::move(h0), std::move(mu), {p});
}

std::pair<cplx, cplx> two_level_analytic(const TwoLevelSpec& spec, double t) {
    const double theta = 0.25 * spec.mu * spec.e0() *
                         (t - spec.T / (2.0 * M_PI) * std::sin(2.0 * M_PI * t / spec.T));
    return {cplx{std::cos(theta), 0.0}, cplx{0.0, std::sin(theta)}};
}

// ---------------------------------------------------------------- oscillator

namespace {
double osc_field(const DrivenOscillatorSpec& spec, double e0, double t) {
    if (t < 0.0 || t > spec.T) return 0.0;
    const double s = std::sin(M_PI * t / spec.T);
    return e0 * s * s * std::cos(spec.omega0 * t);
}
} // namespace

std::vector<cplx> oscillator_alpha(const DrivenOscillatorSpec& spec,
                                   const std::vector<double>& times) {
    // alpha(t) = -i/sqrt(2 m w) e^{-i w t} int_0^t f(tau) e^{i w tau} dtau
    const double w = spec.omega;
    const double pref = 1.0 / std::sqrt(2.0 * spec.mass * w);
    auto integrand = [&](double tau) {
        return osc_field(spec, spec.e0, tau) * std::exp(cplx{0.0, w * tau});
    };
    std::vector<cplx> out(times.size());
    cplx acc{0.0, 0.0};
    double prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < prev) throw DimensionError("oscillator_alpha: times must ascend from 0");
        if (t > prev) acc += integrate(integrand, prev, t);
        prev = t;
        out[i] = cplx{0.0, -pref} * std::exp(cplx{0.0, -w * t}) * acc;
    }
    return out;
}

std::vector<double> oscillator_oracle(const DrivenOscillatorSpec& spec,
                                      const std::vector<double>& times) {
    const auto a = oscillator_alpha(spec, times);
    std::vector<double> p0(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p0[i] = std::exp(-std::norm(a[i]));
    return p0;
}

double oscillator_depletion_amplitude(const DrivenOscillatorSpec& spec) {
    DrivenOscillatorSpec res = spec;
    res.omega0 = res.omega; // depletion defined by the resonant drive
    res.e0 = 1.0;
    const double a1 = std::abs(oscillator_alpha(res, {res.T}).back());
    const double target = 1e-13;
    // bisect P0(T; e0) = exp(-(e0 a1)^2) - target
    double lo = 0.0, hi = 1.0;
    while (std::exp(-(hi * a1) * (hi * a1)) > target) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::exp(-(mid * a1) * (mid * a1)) > target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14 * hi) break;
    }
    return 0.5 * (lo + hi);
}

HamiltonianModel build_oscillator(DrivenOscillatorSpec& spec) {
    if (spec.e0 == 0.0) spec.e0 = oscillator_depletion_amplitude(spec);
    FourierGrid g(spec.n_grid, -spec.r_max, spec.r_max);
    std::vector<double> v(g.n()), mu(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double r = g.r()[i];
        v[i] = 0.5 * spec.mass * spec.omega * spec.omega * r * r;
        mu[i] = r;
    }
    Pulse p;
    p.e0 = spec.e0;
    p.t_start = 0.0;
    p.t_env = spec.T;
    p.omega0 = spec.omega0;
    p.phase = 0.0;
    return HamiltonianModel::grid(std::move(g), std::move(v), std::move(mu), spec.mass, {p});
}

State oscillator_ground_state(const DrivenOscillatorSpec& spec, const FourierGrid& g) {
    State psi({ReprKind::Grid, g.n()});
    const double a = spec.mass * spec.omega;
    const double norm_c = std::pow(a / M_PI, 0.25) * std::sqrt(g.dr());
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double r = g.r()[i];
        psi.amp[i] = norm_c * std::exp(-0.5 * a * r * r);
    }
    scale_inplace(cplx{1.0 / norm(psi), 0.0}, psi);
    return psi;
}

// ---------------------------------------------------------------- WPI

namespace {

HamiltonianModel wpi_model_nofield(const WpiSpec& spec) {
    FourierGrid g(spec.n_grid, spec.r_min, spec.r_max);
    std::vector<double> vg(g.n()), ve(g.n()), mu(g.n(), spec.mu);
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double r = g.r()[i];
        vg[i] = 0.5 * spec.mass * spec.omega_g * spec.omega_g * r * r;
        ve[i] = 0.5 * spec.mass * spec.omega_e * spec.omega_e * (r - spec.r_e) * (r - spec.r_e);
    }
    return HamiltonianModel::two_surface(std::move(g), std::move(vg), std::move(ve),
                                         std::move(mu), spec.mass, {});
}

} // namespace

State wpi_ground_state(const WpiSpec& spec, const FourierGrid& g) {
    // relax exp(-H0 delta) on the lower surface; the two-surface model with
    // zero field keeps the surfaces uncoupled, so relax on a single surface
    FourierGrid gg(spec.n_grid, spec.r_min, spec.r_max);
    std::vector<double> vg(gg.n()), mu0(gg.n(), 0.0);
    for (std::size_t i = 0; i < gg.n(); ++i)
        vg[i] = 0.5 * spec.mass * spec.omega_g * spec.omega_g * gg.r()[i] * gg.r()[i];
    HamiltonianModel h = HamiltonianModel::grid(std::move(gg), std::move(vg),
                                                std::move(mu0), spec.mass, {});
    const SpectralBounds b = h.spectral_range(0.0);

    const double delta = 0.3;
    ScalarSeries decay = scalar_func_series(
        [&](double x) { return cplx{std::exp(-(x - b.e_min()) * delta), 0.0}; }, b.center,
        b.half_width, 1e-14, 4096);
    // shifted by e_min so coefficients stay O(1); the shift only rescales the
    // norm, removed by renormalization

    State psi({ReprKind::Grid, h.fgrid().n()});
    const double a = spec.mass * spec.omega_g;
    for (std::size_t i = 0; i < h.fgrid().n(); ++i) {
        const double r = h.fgrid().r()[i];
        psi.amp[i] = std::exp(-0.5 * a * r * r);
    }
    scale_inplace(cplx{1.0 / norm(psi), 0.0}, psi);

    State htmp(psi.repr);
    auto apply_norm_op = [&](const State& in, State& out) {
        h.apply_frozen_into(0.0, in, htmp);
        kernels::active().axpby(cplx{1.0 / b.half_width, 0.0}, htmp.data(),
                                cplx{-b.center / b.half_width, 0.0}, in.data(), out.data(),
                                in.size());
    };
    double resid = 1.0;
    for (int it = 0; it < 400 && resid > 1e-10; ++it) {
        psi = apply_operator_series(decay, apply_norm_op, psi);
        scale_inplace(cplx{1.0 / norm(psi), 0.0}, psi);
        h.apply_frozen_into(0.0, psi, htmp);
        const cplx e = inner(psi, htmp);
        State r = axpy(-e, psi, htmp);
        resid = norm(r);
    }
    if (resid > 1e-10)
        throw ConvergenceError("wpi_ground_state: relaxation residual above 1e-10", resid);

    // embed on the lower surface of the two-surface representation
    State out({ReprKind::TwoSurface, g.n()});
    std::copy(psi.amp.begin(), psi.amp.end(), out.amp.begin());
    return out;
}

double wpi_excited_population(const State& psi) {
    if (psi.repr.kind != ReprKind::TwoSurface)
        throw DimensionError("wpi_excited_population: need a two-surface state");
    const std::size_t n = psi.repr.points;
    return kernels::active().norm2sq(psi.data() + n, n);
}

namespace {

HamiltonianModel wpi_model(const WpiSpec& spec, double e0, double phi) {
    HamiltonianModel m = wpi_model_nofield(spec);
    Pulse pump;
    pump.e0 = e0;
    pump.t_start = 0.0;
    pump.t_env = spec.tau_pulse;
    pump.omega0 = spec.carrier;
    pump.phase = 0.0;
    Pulse control = pump;
    control.t_start = spec.delay;
    control.phase = phi + spec.phase_zero;
    m.pulses() = {pump, control};
    return m;
}

double wpi_pump_transfer(const WpiSpec& spec, double e0) {
    WpiSpec s = spec;
    s.e0 = e0;
    HamiltonianModel m = wpi_model(s, e0, 0.0);
    State psi = wpi_ground_state(s, m.fgrid());
    ItoConfig cfg;
    Propagator prop(m, m.spectral_range(max_field(m.pulses())), cfg);
    RunOptions opts;
    opts.method = Method::Split;
    opts.record_stride = 1 << 30;
    propagate(prop, psi, 0.0, s.tau_pulse, 1e-4, opts);
    return wpi_excited_population(psi);
}

} // namespace

double wpi_calibrate_amplitude(const WpiSpec& spec) {
    const double target = std::sin(spec.area / 2.0) * std::sin(spec.area / 2.0);
    double lo = 0.0, hi = 4.0;
    while (wpi_pump_transfer(spec, hi) < target) {
        hi *= 2.0;
        if (hi > 256.0)
            throw ConvergenceError("wpi_calibrate_amplitude: target transfer unreachable",
                                   target);
    }
    for (int i = 0; i < 48; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (wpi_pump_transfer(spec, mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

HamiltonianModel build_wpi(WpiSpec& spec, double phi) {
    if (spec.e0 == 0.0) spec.e0 = wpi_calibrate_amplitude(spec);
    return wpi_model(spec, spec.e0, phi);
}

double wpi_ratio(WpiSpec& spec, double phi, Method method, double dt, double eps, int n_t) {
    HamiltonianModel m = build_wpi(spec, phi);
    State psi = wpi_ground_state(spec, m.fgrid());

    ItoConfig cfg;
    cfg.eps = eps;
    cfg.n_t = n_t;
    Propagator prop(m, m.spectral_range(max_field(m.pulses())), cfg);
    RunOptions opts;
    opts.method = method;
    opts.record_stride = 1 << 30;

    propagate(prop, psi, 0.0, spec.t1(), dt, opts);
    const double pop1 = wpi_excited_population(psi);
    if (pop1 < 1e-300)
        throw ConvergenceError("wpi_ratio: zero pump excitation", 0.0);
    propagate(prop, psi, spec.t1(), spec.delay, dt, opts);
    propagate(prop, psi, spec.delay, spec.t_final(), dt, opts);
    const double pop_t = wpi_excited_population(psi);
    const double ratio = pop_t / pop1;
    return ratio * ratio; // squared populations
}

// ---------------------------------------------------------------- metrics

ErrorMetrics error_metrics(const std::vector<double>& times,
                           const std::vector<double>& numeric,
                           const std::vector<double>& oracle,
                           const std::vector<double>& norms) {
    if (times.size() != numeric.size() || times.size() != oracle.size() ||
        (!norms.empty() && norms.size() != times.size()))
        throw DimensionError("error_metrics: trace length mismatch");
    ErrorMetrics em;
    em.times = times;
    em.eps_sol.resize(times.size());
    em.eps_norm.assign(times.size(), 0.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        em.eps_sol[i] = std::abs(numeric[i] - oracle[i]);
        em.eps_sol_max = std::max(em.eps_sol_max, em.eps_sol[i]);
        if (!norms.empty()) {
            em.eps_norm[i] = std::abs(1.0 - norms[i]);
            em.eps_norm_max = std::max(em.eps_norm_max, em.eps_norm[i]);
        }
    }
    return em;
}

} // namespace prop
