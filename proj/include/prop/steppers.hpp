#pragma once

// Time steppers: standard Chebyshev (no time ordering), the inhomogeneous
// Chebyshev step (lambda recursion + F_m), the iteratively time-ordered
// outer loop, and RK4 / Strang split baselines.

#include <functional>
#include <map>
#include <vector>

#include "prop/chebyshev.hpp"
#include "prop/hamiltonian.hpp"

namespace prop {

struct ItoConfig {
    int n_t = 8;              // initial local sampling count
    double eps = 1e-9;        // truncation ratio + iteration residual
    int k_cap = 25;           // max time-ordering iterations
    int m_cap = 60;           // max inhomogeneity expansion order
    int n_cheby_cap = 1024;   // max operator-series length
    int n_t_cap = 128;        // max local sampling count
    bool strict_samples = false; // also require convergence at every tau_l
};

struct StepDiagnostics {
    int m_k = 0;      // largest inhomogeneity expansion order
    int n_cheby = 0;  // longest operator series used
    int k_used = 0;   // iterations to convergence
    int n_t_used = 0; // final local sampling count

    void merge(const StepDiagnostics& o) {
        m_k = std::max(m_k, o.m_k);
        n_cheby = std::max(n_cheby, o.n_cheby);
        k_used = std::max(k_used, o.k_used);
        n_t_used = std::max(n_t_used, o.n_t_used);
    }
};

// field freeze point for the standard-Chebyshev baseline
enum class Freeze { Mid, Left };

// F_m(x; t) = (-ix)^{-m} (e^{-ixt} - sum_{j<m} (-ixt)^j / j!) evaluated
// through its Taylor tail for |x t| < max(0.5, m) where the direct form
// cancels catastrophically.
cplx fm_scalar(double x, int m, double t);

// One propagation context: model + fixed spectral bounds + series caches.
// Not safe for concurrent use; run independent propagations on their own
// instances.
class Propagator {
public:
    Propagator(const HamiltonianModel& model, SpectralBounds bounds, ItoConfig cfg);

    const HamiltonianModel& model() const { return model_; }
    const SpectralBounds& bounds() const { return bounds_; }
    ItoConfig& config() { return cfg_; }
    int current_n_t() const { return n_t_; }
    int series_watermark() const { return series_watermark_; }

    // e^{-i H_n dtau} psi with H_n frozen at the interval midpoint
    State standard_step(const State& psi, double t_n, double dtau);
    // same with an explicitly frozen field value
    State standard_step_frozen(const State& psi, double w_n, double dtau);
    // baseline stepper with selectable freeze point
    State cheb_step(const State& psi, double t_n, double dt, Freeze freeze);

    // inhomogeneous Chebyshev step: psi(t_n+dt) from the monomial
    // coefficients of the inhomogeneity (taylor[j] = Phi^{(j)}, j < m)
    State inhomo_step(double w_n, const State& psi_n, const std::vector<State>& taylor,
                      double dt);

    // iteratively time-ordered step
    State ito_step(const State& psi, double t_n, double dt, StepDiagnostics& diag);

    // classical RK4 on dpsi/dt = -i H(t) psi
    State rk4_step(const State& psi, double t, double dt);

    // Strang split e^{-iV dt/2} e^{-iT dt} e^{-iV dt/2}, field folded into V
    // at the interval midpoint; grid representations only
    State split_step(const State& psi, double t, double dt);

private:
    const ScalarSeries& exp_series(double dtau);
    const ScalarSeries& fm_series(int m, double dtau);
    State apply_series_frozen(const ScalarSeries& s, double w_n, const State& psi);
    void build_lambdas(double w_n, const State& psi_n, const std::vector<State>& taylor,
                       int m, std::vector<State>& lambda);
    void build_basis(double w_n, const State& seed, int count, std::vector<State>& basis);
    State eval_inhomo(const std::vector<State>& lambda, const std::vector<State>& basis,
                      const ScalarSeries& fm, int m, double s);
    const std::vector<cplx>& kinetic_phase(double dt);

    const HamiltonianModel& model_;
    SpectralBounds bounds_;
    ItoConfig cfg_;
    double series_eps_;
    int n_t_;
    int series_watermark_ = 0;

    std::map<double, ScalarSeries> exp_cache_;
    std::map<std::pair<int, double>, ScalarSeries> fm_cache_;
    std::map<double, std::vector<cplx>> kin_phase_cache_;
};

enum class Method { Ito, Cheb, Split, Rk4 };

struct RunOptions {
    Method method = Method::Ito;
    Freeze freeze = Freeze::Left; // for Method::Cheb
    int record_stride = 1;        // observer cadence in steps
};

// observer(t, psi) at t0, every record_stride-th boundary, and T
using Observer = std::function<void(double t, const State& psi)>;

struct RunStats {
    StepDiagnostics diag;
    long steps = 0;
};

// March psi from t0 to T in steps of dt (last step shortened to land on T).
RunStats propagate(Propagator& prop, State& psi, double t0, double T, double dt,
                   const RunOptions& opts, const Observer& observer = {});

// Convenience: propagator with bounds from the model's own pulses.
Propagator make_propagator(const HamiltonianModel& model, ItoConfig cfg);

} // namespace prop
