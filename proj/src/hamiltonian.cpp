#include "prop/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "prop/errors.hpp"

namespace prop {

namespace {
// scratch for momentum-space round trips, one per thread
thread_local std::vector<cplx> g_scratch;
thread_local std::vector<double> g_veff;
} // namespace

HamiltonianModel HamiltonianModel::levels(std::size_t n, std::vector<double> h0,
                                          std::vector<double> mu, std::vector<Pulse> pulses) {
    if (h0.size() != n * n || mu.size() != n * n)
        throw DimensionError("levels: matrix size mismatch");
    HamiltonianModel m;
    m.repr_ = {ReprKind::Levels, n};
    m.h0_ = std::move(h0);
    m.mu_ = std::move(mu);
    m.pulses_ = std::move(pulses);
    return m;
}

HamiltonianModel HamiltonianModel::grid(FourierGrid g, std::vector<double> v,
                                        std::vector<double> mu_r, double mass,
                                        std::vector<Pulse> pulses) {
    if (v.size() != g.n() || mu_r.size() != g.n())
        throw DimensionError("grid: diagonal size mismatch");
    HamiltonianModel m;
    m.repr_ = {ReprKind::Grid, g.n()};
    m.v_ = std::move(v);
    m.mu_r_ = std::move(mu_r);
    m.mass_ = mass;
    m.kin_.resize(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) m.kin_[j] = g.k()[j] * g.k()[j] / (2.0 * mass);
    m.grid_ = std::move(g);
    m.pulses_ = std::move(pulses);
    return m;
}

HamiltonianModel HamiltonianModel::two_surface(FourierGrid g, std::vector<double> vg,
                                               std::vector<double> ve, std::vector<double> mu_r,
                                               double mass, std::vector<Pulse> pulses) {
    if (vg.size() != g.n() || ve.size() != g.n() || mu_r.size() != g.n())
        throw DimensionError("two_surface: diagonal size mismatch");
    HamiltonianModel m;
    m.repr_ = {ReprKind::TwoSurface, g.n()};
    m.v_ = std::move(vg);
    m.v_.insert(m.v_.end(), ve.begin(), ve.end());
    m.mu_r_ = std::move(mu_r);
    m.mass_ = mass;
    m.kin_.resize(g.n());
    for (std::size_t j = 0; j < g.n(); ++j) m.kin_[j] = g.k()[j] * g.k()[j] / (2.0 * mass);
    m.grid_ = std::move(g);
    m.pulses_ = std::move(pulses);
    return m;
}

void HamiltonianModel::check(const State& s) const {
    if (!(s.repr == repr_)) throw DimensionError("state does not match model representation");
}

// out[offset..offset+N) += T in[offset..offset+N)
void HamiltonianModel::kinetic_axpy(const cplx* in, cplx* out, std::size_t offset) const {
    const std::size_t n = grid_.n();
    if (g_scratch.size() < n) g_scratch.resize(n);
    cplx* w = g_scratch.data();
    std::copy(in + offset, in + offset + n, w);
    grid_.fft(w);
    kernels::active().diag_mul_real(kin_.data(), w, w, n);
    grid_.ifft(w);
    kernels::active().axpy(cplx{1.0, 0.0}, w, out + offset, n);
}

void HamiltonianModel::apply_h0(const State& in, State& out) const {
    check(in);
    out.repr = repr_;
    out.amp.assign(repr_.size(), cplx{0.0, 0.0});
    switch (repr_.kind) {
    case ReprKind::Levels: {
        const std::size_t n = repr_.points;
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) acc += h0_[i * n + j] * in.amp[j];
            out.amp[i] = acc;
        }
        break;
    }
    case ReprKind::Grid:
        kernels::active().diag_mul_real(v_.data(), in.data(), out.data(), repr_.points);
        kinetic_axpy(in.data(), out.data(), 0);
        break;
    case ReprKind::TwoSurface: {
        const std::size_t n = repr_.points;
        kernels::active().diag_mul_real(v_.data(), in.data(), out.data(), 2 * n);
        kinetic_axpy(in.data(), out.data(), 0);
        kinetic_axpy(in.data(), out.data(), n);
        break;
    }
    }
}

void HamiltonianModel::apply_mu(const State& in, State& out) const {
    check(in);
    out.repr = repr_;
    out.amp.assign(repr_.size(), cplx{0.0, 0.0});
    switch (repr_.kind) {
    case ReprKind::Levels: {
        const std::size_t n = repr_.points;
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) acc += mu_[i * n + j] * in.amp[j];
            out.amp[i] = acc;
        }
        break;
    }
    case ReprKind::Grid:
        kernels::active().diag_mul_real(mu_r_.data(), in.data(), out.data(), repr_.points);
        break;
    case ReprKind::TwoSurface: {
        // blockwise off-diagonal: out_g = mu this. in_e, out_e = mu in_g
        const std::size_t n = repr_.points;
        kernels::active().diag_mul_real(mu_r_.data(), in.data() + n, out.data(), n);
        kernels::active().diag_mul_real(mu_r_.data(), in.data(), out.data() + n, n);
        break;
    }
    }
}

State HamiltonianModel::apply_h_at(double t, const State& psi) const {
    return apply_frozen(field_at(t), psi);
}

State HamiltonianModel::apply_frozen(double w_n, const State& psi) const {
    State out(repr_);
    apply_frozen_into(w_n, psi, out);
    return out;
}

void HamiltonianModel::apply_frozen_into(double w_n, const State& in, State& out) const {
    check(in);
    out.repr = repr_;
    if (out.amp.size() != repr_.size()) out.amp.resize(repr_.size());
    switch (repr_.kind) {
    case ReprKind::Levels: {
        const std::size_t n = repr_.points;
        for (std::size_t i = 0; i < n; ++i) {
            cplx acc{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                acc += (h0_[i * n + j] + w_n * mu_[i * n + j]) * in.amp[j];
            out.amp[i] = acc;
        }
        break;
    }
    case ReprKind::Grid: {
        const std::size_t n = repr_.points;
        if (w_n != 0.0) {
            if (g_veff.size() < n) g_veff.resize(n);
            for (std::size_t i = 0; i < n; ++i) g_veff[i] = v_[i] + w_n * mu_r_[i];
            kernels::active().diag_mul_real(g_veff.data(), in.data(), out.data(), n);
        } else {
            kernels::active().diag_mul_real(v_.data(), in.data(), out.data(), n);
        }
        kinetic_axpy(in.data(), out.data(), 0);
        break;
    }
    case ReprKind::TwoSurface: {
        const std::size_t n = repr_.points;
        kernels::active().diag_mul_real(v_.data(), in.data(), out.data(), 2 * n);
        if (w_n != 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                out.amp[i] += w_n * mu_r_[i] * in.amp[n + i];
                out.amp[n + i] += w_n * mu_r_[i] * in.amp[i];
            }
        }
        kinetic_axpy(in.data(), out.data(), 0);
        kinetic_axpy(in.data(), out.data(), n);
        break;
    }
    }
}

State HamiltonianModel::residual_apply(double t, double w_n, const State& psi) const {
    check(psi);
    const double dv = field_at(t) - w_n;
    State out(repr_);
    if (dv == 0.0) return out; // exactly zero by construction
    apply_mu(psi, out);
    scale_inplace(cplx{dv, 0.0}, out);
    return out;
}

SpectralBounds HamiltonianModel::spectral_range(double w_max) const {
    double emin = 0.0, emax = 0.0;
    switch (repr_.kind) {
    case ReprKind::Levels: {
        // Gershgorin rows of H0 +- w_max |mu|
        const std::size_t n = repr_.points;
        emin = 1e300;
        emax = -1e300;
        for (std::size_t i = 0; i < n; ++i) {
            double radius = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double od = std::abs(h0_[i * n + j]) + w_max * std::abs(mu_[i * n + j]);
                if (j == i)
                    continue;
                radius += od;
            }
            const double di = h0_[i * n + i];
            const double wi = w_max * std::abs(mu_[i * n + i]);
            emax = std::max(emax, di + wi + radius);
            emin = std::min(emin, di - wi - radius);
        }
        break;
    }
    case ReprKind::Grid:
    case ReprKind::TwoSurface: {
        const double vmax = *std::max_element(v_.begin(), v_.end());
        const double vmin = *std::min_element(v_.begin(), v_.end());
        double mumax = 0.0;
        for (double m : mu_r_) mumax = std::max(mumax, std::abs(m));
        const double tmax = grid_.k_max() * grid_.k_max() / (2.0 * mass_);
        emax = vmax + w_max * mumax + tmax;
        emin = vmin - w_max * mumax;
        break;
    }
    }
    SpectralBounds b;
    b.center = 0.5 * (emax + emin);
    b.half_width = 1.05 * 0.5 * (emax - emin);
    if (b.half_width <= 0.0) b.half_width = 1.0; // degenerate spectrum (H == const)
    return b;
}

} // namespace prop
