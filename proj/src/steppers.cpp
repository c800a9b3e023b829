#include "prop/steppers.hpp"

#include <algorithm>
#include <cmath>

#include "prop/errors.hpp"

namespace prop {

namespace {
constexpr double kZeroFloor = 1e-300;

double clamp_series_eps(double eps) {
    // operator-function expansions stay near machine precision regardless of
    // the step tolerance; 5e-15 is the cosine-transform noise floor
    return std::clamp(eps, 5e-15, 1e-14);
}
} // namespace

cplx fm_scalar(double x, int m, double t) {
    const cplx z{0.0, -x};
    const double arg = std::abs(x * t);
    if (arg < std::max(0.5, static_cast<double>(m))) {
        // Taylor tail sum_a (-ix)^a t^{a+m} / (a+m)!
        cplx term{1.0, 0.0};
        for (int j = 1; j <= m; ++j) term *= t / static_cast<double>(j);
        cplx acc = term;
        for (int a = 0; a < 200; ++a) {
            term *= z * t / static_cast<double>(a + m + 1);
            acc += term;
            if (std::abs(term) < 1e-18 * std::abs(acc)) break;
        }
        return acc;
    }
    cplx s{0.0, 0.0};
    cplx term{1.0, 0.0};
    for (int j = 0; j < m; ++j) {
        s += term;
        term *= z * t / static_cast<double>(j + 1);
    }
    return (std::exp(cplx{0.0, -x * t}) - s) / std::pow(z, m);
}

Propagator::Propagator(const HamiltonianModel& model, SpectralBounds bounds, ItoConfig cfg)
    : model_(model), bounds_(bounds), cfg_(cfg), series_eps_(clamp_series_eps(cfg.eps)),
      n_t_(cfg.n_t) {
    if (cfg_.n_t < 2 || cfg_.eps <= 0.0) throw ConfigError("ItoConfig: need n_t >= 2, eps > 0");
}

Propagator make_propagator(const HamiltonianModel& model, ItoConfig cfg) {
    return Propagator(model, model.spectral_range(max_field(model.pulses())), cfg);
}

const ScalarSeries& Propagator::exp_series(double dtau) {
    auto it = exp_cache_.find(dtau);
    if (it == exp_cache_.end()) {
        ScalarSeries s = scalar_func_series(
            [dtau](double x) { return std::exp(cplx{0.0, -x * dtau}); }, bounds_.center,
            bounds_.half_width, series_eps_, cfg_.n_cheby_cap);
        it = exp_cache_.emplace(dtau, std::move(s)).first;
        series_watermark_ = std::max(series_watermark_, static_cast<int>(it->second.coeffs.size()));
    }
    return it->second;
}

const ScalarSeries& Propagator::fm_series(int m, double dtau) {
    const auto key = std::make_pair(m, dtau);
    auto it = fm_cache_.find(key);
    if (it == fm_cache_.end()) {
        ScalarSeries s = scalar_func_series(
            [m, dtau](double x) { return fm_scalar(x, m, dtau); }, bounds_.center,
            bounds_.half_width, series_eps_, cfg_.n_cheby_cap);
        it = fm_cache_.emplace(key, std::move(s)).first;
        series_watermark_ = std::max(series_watermark_, static_cast<int>(it->second.coeffs.size()));
    }
    return it->second;
}

State Propagator::apply_series_frozen(const ScalarSeries& s, double w_n, const State& psi) {
    const double c = bounds_.center, hw = bounds_.half_width;
    State htmp(psi.repr);
    auto apply_norm = [&](const State& in, State& out) {
        model_.apply_frozen_into(w_n, in, htmp);
        // out = (H in - c in) / hw
        kernels::active().axpby(cplx{1.0 / hw, 0.0}, htmp.data(), cplx{-c / hw, 0.0},
                                in.data(), out.data(), in.size());
    };
    return apply_operator_series(s, apply_norm, psi);
}

State Propagator::standard_step_frozen(const State& psi, double w_n, double dtau) {
    if (dtau == 0.0) return psi;
    return apply_series_frozen(exp_series(dtau), w_n, psi);
}

State Propagator::standard_step(const State& psi, double t_n, double dtau) {
    return standard_step_frozen(psi, model_.field_at(t_n + 0.5 * dtau), dtau);
}

State Propagator::cheb_step(const State& psi, double t_n, double dt, Freeze freeze) {
    const double tf = (freeze == Freeze::Mid) ? t_n + 0.5 * dt : t_n;
    return standard_step_frozen(psi, model_.field_at(tf), dt);
}

void Propagator::build_lambdas(double w_n, const State& psi_n,
                               const std::vector<State>& taylor, int m,
                               std::vector<State>& lambda) {
    lambda.clear();
    lambda.reserve(static_cast<std::size_t>(m) + 1);
    lambda.push_back(psi_n);
    State htmp(psi_n.repr);
    for (int j = 1; j <= m; ++j) {
        model_.apply_frozen_into(w_n, lambda.back(), htmp);
        State next(psi_n.repr);
        // next = -i htmp + Phi^{(j-1)}
        kernels::active().axpby(cplx{0.0, -1.0}, htmp.data(), cplx{1.0, 0.0},
                                taylor[static_cast<std::size_t>(j - 1)].data(), next.data(),
                                next.size());
        lambda.push_back(std::move(next));
    }
}

void Propagator::build_basis(double w_n, const State& seed, int count,
                             std::vector<State>& basis) {
    // basis[i] = P_i(H_norm) seed
    const double c = bounds_.center, hw = bounds_.half_width;
    State htmp(seed.repr);
    if (basis.empty()) basis.push_back(seed);
    if (static_cast<int>(basis.size()) >= count) return;
    if (basis.size() == 1 && count > 1) {
        model_.apply_frozen_into(w_n, basis[0], htmp);
        State p1(seed.repr);
        kernels::active().axpby(cplx{1.0 / hw, 0.0}, htmp.data(), cplx{-c / hw, 0.0},
                                basis[0].data(), p1.data(), p1.size());
        basis.push_back(std::move(p1));
    }
    while (static_cast<int>(basis.size()) < count) {
        const State& p1 = basis[basis.size() - 1];
        const State& p0 = basis[basis.size() - 2];
        model_.apply_frozen_into(w_n, p1, htmp);
        State p2(seed.repr);
        kernels::active().axpbypcz(cplx{2.0 / hw, 0.0}, htmp.data(), cplx{-2.0 * c / hw, 0.0},
                                   p1.data(), cplx{-1.0, 0.0}, p0.data(), p2.data(), p2.size());
        basis.push_back(std::move(p2));
    }
}

State Propagator::eval_inhomo(const std::vector<State>& lambda,
                              const std::vector<State>& basis, const ScalarSeries& fm,
                              int m, double s) {
    // sum_{j<m} s^j/j! lambda_j + F_m(H_n) lambda_m via the basis expansion
    State acc(lambda[0].repr);
    double p = 1.0;
    for (int j = 0; j < m; ++j) {
        axpy_inplace(cplx{p, 0.0}, lambda[static_cast<std::size_t>(j)], acc);
        p *= s / static_cast<double>(j + 1);
    }
    for (std::size_t i = 0; i < fm.coeffs.size(); ++i)
        axpy_inplace(fm.coeffs[i], basis[i], acc);
    return acc;
}

State Propagator::inhomo_step(double w_n, const State& psi_n,
                              const std::vector<State>& taylor, double dt) {
    const int m = static_cast<int>(taylor.size());
    if (m < 1) throw DimensionError("inhomo_step: empty taylor coefficients");
    if (m > cfg_.m_cap)
        throw ConvergenceError("inhomo_step: order exceeds m_cap", static_cast<double>(m));
    std::vector<State> lambda;
    build_lambdas(w_n, psi_n, taylor, m, lambda);
    const ScalarSeries& fm = fm_series(m, dt);
    std::vector<State> basis;
    build_basis(w_n, lambda[static_cast<std::size_t>(m)],
                static_cast<int>(fm.coeffs.size()), basis);
    return eval_inhomo(lambda, basis, fm, m, dt);
}

State Propagator::ito_step(const State& psi, double t_n, double dt, StepDiagnostics& diag) {
    while (true) {
        const int n_t = n_t_;
        const auto roots = chebyshev_roots(n_t);
        std::vector<double> offs(roots.size() + 1);
        for (std::size_t l = 0; l < roots.size(); ++l)
            offs[l] = 0.5 * dt * (roots[l] + 1.0);
        offs.back() = dt;

        const double w_n = model_.field_at(t_n + 0.5 * dt);

        // k = 0: march the frozen-H_n solution through the sample times
        std::vector<State> psik; // at tau_0 .. tau_{n_t-1}
        psik.reserve(offs.size());
        {
            State cur = psi;
            double prev = 0.0;
            for (double o : offs) {
                cur = standard_step_frozen(cur, w_n, o - prev);
                prev = o;
                psik.push_back(cur);
            }
        }
        State end = std::move(psik.back());
        psik.pop_back();
        diag.n_t_used = std::max(diag.n_t_used, n_t);

        bool restart = false;
        double residual = 0.0;
        for (int k = 1; k <= cfg_.k_cap; ++k) {
            // inhomogeneity samples Phi_{k-1}(tau_l) = -i (E(tau_l) - w_n) mu psi_{k-1}(tau_l)
            std::vector<State> phi;
            phi.reserve(psik.size());
            for (std::size_t l = 0; l < psik.size(); ++l) {
                State p = model_.residual_apply(t_n + offs[l], w_n, psik[l]);
                scale_inplace(cplx{0.0, -1.0}, p);
                phi.push_back(std::move(p));
            }
            auto bar = samples_to_cheb(phi);
            std::vector<double> norms(bar.size());
            for (std::size_t j = 0; j < bar.size(); ++j) norms[j] = norm(bar[j]);

            const Truncation tr = truncate_by_ratio(norms, cfg_.eps);
            if (tr.zero) {
                // vanishing inhomogeneity: the frozen solution is exact
                diag.k_used = std::max(diag.k_used, k);
                return end;
            }
            if (!tr.ok) {
                if (n_t_ >= cfg_.n_t_cap)
                    throw ConvergenceError(
                        "ito_step: inhomogeneity not resolvable within n_t_cap", tr.achieved);
                n_t_ = std::min(2 * n_t_, cfg_.n_t_cap);
                restart = true;
                break;
            }
            const int m = tr.m;
            if (m > cfg_.m_cap)
                throw ConvergenceError("ito_step: expansion order exceeds m_cap",
                                       static_cast<double>(m));
            diag.m_k = std::max(diag.m_k, m);

            bar.resize(static_cast<std::size_t>(m));
            const auto taylor = cheb_to_taylor(bar, m, dt);

            std::vector<State> lambda;
            build_lambdas(w_n, psi, taylor, m, lambda);

            int nf_max = 0;
            std::vector<const ScalarSeries*> fms(offs.size());
            for (std::size_t idx = 0; idx < offs.size(); ++idx) {
                fms[idx] = &fm_series(m, offs[idx]);
                nf_max = std::max(nf_max, static_cast<int>(fms[idx]->coeffs.size()));
            }
            std::vector<State> basis;
            build_basis(w_n, lambda[static_cast<std::size_t>(m)], nf_max, basis);

            double sample_residual = 0.0;
            for (std::size_t l = 0; l < psik.size(); ++l) {
                State upd = eval_inhomo(lambda, basis, *fms[l], m, offs[l]);
                if (cfg_.strict_samples)
                    sample_residual = std::max(sample_residual, dist(upd, psik[l]));
                psik[l] = std::move(upd);
            }
            State new_end = eval_inhomo(lambda, basis, *fms.back(), m, dt);

            residual = dist(new_end, end);
            if (cfg_.strict_samples) residual = std::max(residual, sample_residual);
            end = std::move(new_end);
            diag.k_used = std::max(diag.k_used, k);
            if (residual < cfg_.eps) {
                diag.n_cheby = std::max(diag.n_cheby, series_watermark_);
                return end;
            }
        }
        if (restart) continue;
        throw ConvergenceError("ito_step: no convergence within k_cap", residual);
    }
}

namespace {
struct Rk4Buffers {
    State h, k1, k2, k3, k4, arg;
    void fit(const Repr& r) {
        for (State* s : {&h, &k1, &k2, &k3, &k4, &arg}) {
            if (!(s->repr == r)) *s = State(r);
        }
    }
};
} // namespace

State Propagator::rk4_step(const State& psi, double t, double dt) {
    const auto& ops = kernels::active();
    thread_local Rk4Buffers buf;
    buf.fit(psi.repr);
    State& h = buf.h;
    State& k1 = buf.k1;
    State& k2 = buf.k2;
    State& k3 = buf.k3;
    State& k4 = buf.k4;
    State& arg = buf.arg;
    const cplx mi{0.0, -1.0};

    model_.apply_frozen_into(model_.field_at(t), psi, h);
    ops.scale(mi, h.data(), k1.data(), h.size());

    const double wmid = model_.field_at(t + 0.5 * dt);
    ops.axpby(cplx{1.0, 0.0}, psi.data(), cplx{0.5 * dt, 0.0}, k1.data(), arg.data(), arg.size());
    model_.apply_frozen_into(wmid, arg, h);
    ops.scale(mi, h.data(), k2.data(), h.size());

    ops.axpby(cplx{1.0, 0.0}, psi.data(), cplx{0.5 * dt, 0.0}, k2.data(), arg.data(), arg.size());
    model_.apply_frozen_into(wmid, arg, h);
    ops.scale(mi, h.data(), k3.data(), h.size());

    ops.axpby(cplx{1.0, 0.0}, psi.data(), cplx{dt, 0.0}, k3.data(), arg.data(), arg.size());
    model_.apply_frozen_into(model_.field_at(t + dt), arg, h);
    ops.scale(mi, h.data(), k4.data(), h.size());

    State out = psi;
    ops.axpy(cplx{dt / 6.0, 0.0}, k1.data(), out.data(), out.size());
    ops.axpy(cplx{dt / 3.0, 0.0}, k2.data(), out.data(), out.size());
    ops.axpy(cplx{dt / 3.0, 0.0}, k3.data(), out.data(), out.size());
    ops.axpy(cplx{dt / 6.0, 0.0}, k4.data(), out.data(), out.size());
    return out;
}

const std::vector<cplx>& Propagator::kinetic_phase(double dt) {
    auto it = kin_phase_cache_.find(dt);
    if (it == kin_phase_cache_.end()) {
        const auto& g = model_.fgrid();
        std::vector<cplx> ph(g.n());
        for (std::size_t j = 0; j < g.n(); ++j) {
            const double e = g.k()[j] * g.k()[j] / (2.0 * model_.mass());
            ph[j] = std::exp(cplx{0.0, -e * dt});
        }
        it = kin_phase_cache_.emplace(dt, std::move(ph)).first;
    }
    return it->second;
}

State Propagator::split_step(const State& psi, double t, double dt) {
    const auto& ops = kernels::active();
    const Repr repr = model_.repr();
    if (repr.kind == ReprKind::Levels)
        throw DimensionError("split_step: kinetic/potential split needs a grid representation");

    const double w = model_.field_at(t + 0.5 * dt);
    const auto& kin = kinetic_phase(dt);
    const std::size_t n = repr.points;
    State out = psi;

    if (repr.kind == ReprKind::Grid) {
        const auto& v = model_.potential();
        const auto& mu = model_.mu_diag();
        thread_local std::vector<cplx> ph;
        ph.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            ph[i] = std::exp(cplx{0.0, -(v[i] + w * mu[i]) * 0.5 * dt});
        ops.diag_mul(ph.data(), out.data(), out.data(), n);
        model_.fgrid().fft(out.data());
        ops.diag_mul(kin.data(), out.data(), out.data(), n);
        model_.fgrid().ifft(out.data());
        ops.diag_mul(ph.data(), out.data(), out.data(), n);
        return out;
    }

    // two surfaces: analytic exponential of the 2x2 potential+coupling block
    const auto& v = model_.potential(); // Vg then Ve
    const auto& mu = model_.mu_diag();
    const double h = 0.5 * dt;
    thread_local std::vector<cplx> pg, pe, pc; // diagonal and coupling factors
    pg.resize(n);
    pe.resize(n);
    pc.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = v[i], b = v[n + i], c = w * mu[i];
        const double mean = 0.5 * (a + b), dl = 0.5 * (a - b);
        const double rho = std::sqrt(dl * dl + c * c);
        const cplx phase = std::exp(cplx{0.0, -mean * h});
        const double cr = std::cos(rho * h);
        const double sr = rho > 1e-300 ? std::sin(rho * h) / rho : h;
        pg[i] = phase * cplx{cr, -sr * dl};
        pe[i] = phase * cplx{cr, +sr * dl};
        pc[i] = phase * cplx{0.0, -sr * c};
    }
    auto apply_pot = [&](State& s) {
        for (std::size_t i = 0; i < n; ++i) {
            const cplx g = s.amp[i], e = s.amp[n + i];
            s.amp[i] = pg[i] * g + pc[i] * e;
            s.amp[n + i] = pc[i] * g + pe[i] * e;
        }
    };
    apply_pot(out);
    model_.fgrid().fft(out.data());
    model_.fgrid().fft(out.data() + n);
    ops.diag_mul(kin.data(), out.data(), out.data(), n);
    ops.diag_mul(kin.data(), out.data() + n, out.data() + n, n);
    model_.fgrid().ifft(out.data());
    model_.fgrid().ifft(out.data() + n);
    apply_pot(out);
    return out;
}

RunStats propagate(Propagator& prop, State& psi, double t0, double T, double dt,
                   const RunOptions& opts, const Observer& observer) {
    if (!(dt > 0.0)) throw ConfigError("propagate: dt must be positive");
    RunStats stats;
    if (observer) observer(t0, psi);
    double t = t0;
    long step = 0;
    while (t < T - 1e-12 * std::max(1.0, std::abs(T))) {
        const double step_dt = std::min(dt, T - t);
        switch (opts.method) {
        case Method::Ito: {
            StepDiagnostics d;
            psi = prop.ito_step(psi, t, step_dt, d);
            stats.diag.merge(d);
            break;
        }
        case Method::Cheb:
            psi = prop.cheb_step(psi, t, step_dt, opts.freeze);
            break;
        case Method::Split:
            psi = prop.split_step(psi, t, step_dt);
            break;
        case Method::Rk4:
            psi = prop.rk4_step(psi, t, step_dt);
            break;
        }
        t += step_dt;
        ++step;
        if (observer && (step % opts.record_stride == 0 || t >= T - 1e-12))
            observer(t, psi);
    }
    stats.steps = step;
    stats.diag.n_cheby = std::max(stats.diag.n_cheby, prop.series_watermark());
    return stats;
}

} // namespace prop
