#pragma once

// Hamiltonian H(t) = H0 + E(t) mu on one of three representations:
// dense levels, single Fourier-grid surface, two coupled surfaces.
// Within a step the interaction can be frozen at a field value w_n,
// H_n = H0 + w_n mu, leaving the residual V_n(t) = (E(t) - w_n) mu.

#include <cstddef>
#include <vector>

#include "prop/fourier_grid.hpp"
#include "prop/pulse.hpp"
#include "prop/state.hpp"

namespace prop {

struct SpectralBounds {
    double center = 0.0;
    double half_width = 1.0;
    double e_min() const { return center - half_width; }
    double e_max() const { return center + half_width; }
};

class HamiltonianModel {
public:
    // dense real-symmetric h0 and mu (row-major n x n)
    static HamiltonianModel levels(std::size_t n, std::vector<double> h0,
                                   std::vector<double> mu, std::vector<Pulse> pulses);

    // single surface: V(r) and mu(r) diagonal, kinetic via momentum space
    static HamiltonianModel grid(FourierGrid g, std::vector<double> v,
                                 std::vector<double> mu_r, double mass,
                                 std::vector<Pulse> pulses);

    // two surfaces: diag(T+Vg, T+Ve), coupling E(t) mu(r) off-diagonal blockwise
    static HamiltonianModel two_surface(FourierGrid g, std::vector<double> vg,
                                        std::vector<double> ve, std::vector<double> mu_r,
                                        double mass, std::vector<Pulse> pulses);

    Repr repr() const { return repr_; }
    const FourierGrid& fgrid() const { return grid_; }
    double mass() const { return mass_; }
    const std::vector<Pulse>& pulses() const { return pulses_; }
    std::vector<Pulse>& pulses() { return pulses_; }
    const std::vector<double>& potential() const { return v_; }
    const std::vector<double>& mu_diag() const { return mu_r_; }

    double field_at(double t) const { return total_field(pulses_, t); }

    // out = H0 in  /  out = mu in
    void apply_h0(const State& in, State& out) const;
    void apply_mu(const State& in, State& out) const;

    // (H0 + E(t) mu) psi
    State apply_h_at(double t, const State& psi) const;
    // (H0 + w_n mu) psi
    State apply_frozen(double w_n, const State& psi) const;
    void apply_frozen_into(double w_n, const State& in, State& out) const;
    // (E(t) - w_n) mu psi; exactly zero when E(t) == w_n
    State residual_apply(double t, double w_n, const State& psi) const;

    // guaranteed eigenvalue bracket for H0 + w mu over |w| <= w_max,
    // half-width widened by 5%
    SpectralBounds spectral_range(double w_max) const;

private:
    void check(const State& s) const;
    void kinetic_axpy(const cplx* in, cplx* out, std::size_t offset) const;

    Repr repr_;
    // levels
    std::vector<double> h0_, mu_;
    // grid
    FourierGrid grid_;
    std::vector<double> v_;    // N (grid) or 2N (two-surface: Vg then Ve)
    std::vector<double> mu_r_; // N
    std::vector<double> kin_;  // k^2 / 2m
    double mass_ = 1.0;

    std::vector<Pulse> pulses_;
};

} // namespace prop
