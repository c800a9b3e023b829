#pragma once

// The three benchmark systems with constructors and independent oracles:
// resonantly driven two-level atom (analytic), linearly driven harmonic
// oscillator (coherent-state quadrature oracle), and two-surface wave-packet
// interferometry (self-referenced against the time-ordered propagator).

#include <utility>
#include <vector>

#include "prop/hamiltonian.hpp"
#include "prop/steppers.hpp"

namespace prop {

// ---------------------------------------------------------------- two-level

struct TwoLevelSpec {
    double mu = 1.0;   // transition dipole (a.u.)
    double T = 9000.0; // final time (a.u.)
    // pi-pulse condition 1/4 mu E0 T = pi/2
    double e0() const { return 2.0 * M_PI / (mu * T); }
};

HamiltonianModel build_two_level(const TwoLevelSpec& spec);

// closed-form amplitudes (c_g, c_e)
std::pair<cplx, cplx> two_level_analytic(const TwoLevelSpec& spec, double t);

// ---------------------------------------------------------------- oscillator

struct DrivenOscillatorSpec {
    double mass = 1.0;
    double omega = 1.0;
    double omega0 = 1.0;   // carrier: omega (resonant) or 0 (envelope only)
    double T = 100.0;
    std::size_t n_grid = 128;
    double r_max = 10.0;   // grid spans [-r_max, r_max]
    double e0 = 0.0;       // 0: solve the depletion condition at build time
};

// driven-coherent-state amplitude alpha(t) at the requested times, by
// composite Gauss-Legendre quadrature refined until two refinement levels
// agree to 1e-13 (independent of every propagator)
std::vector<cplx> oscillator_alpha(const DrivenOscillatorSpec& spec,
                                   const std::vector<double>& times);

// ground-state population P0(t) = exp(-|alpha|^2)
std::vector<double> oscillator_oracle(const DrivenOscillatorSpec& spec,
                                      const std::vector<double>& times);

// amplitude making the resonant drive deplete the ground state,
// P0(T) = 1e-13 (bisection on the quadrature oracle)
double oscillator_depletion_amplitude(const DrivenOscillatorSpec& spec);

HamiltonianModel build_oscillator(DrivenOscillatorSpec& spec); // fills spec.e0 if 0

// grid-discretized Gaussian ground state (normalized)
State oscillator_ground_state(const DrivenOscillatorSpec& spec, const FourierGrid& g);

// ---------------------------------------------------------------- WPI

struct WpiSpec {
    std::size_t n_grid = 128;
    double r_min = -10.0, r_max = 12.0;
    double r_e = 3.5;
    double mass = 1.0, omega_g = 1.0, omega_e = 1.0, mu = 1.0;
    double tau_pulse = 0.3;              // pulse duration
    double delay = 2.0 * M_PI;           // control start - pump start
    double carrier = 6.8;                // calibrated blue of the 6.125 vertical
    double phase_zero = 0.044;           // interferometric zero of the control phase
    double area = M_PI / 2.0;            // pulse area (operational definition)
    double e0 = 0.0;                     // 0: calibrate from area at build time
    double t1() const { return tau_pulse; }                 // end of pump
    double t_final() const { return delay + tau_pulse; }    // end of control
};

// model with pump (phase 0) and control (extra phase phi, measured from the
// interferometric zero)
HamiltonianModel build_wpi(WpiSpec& spec, double phi); // fills spec.e0 if 0

// ground eigenstate of the lower surface by imaginary-time relaxation
// (series-evaluated e^{-H0 tau}, residual < 1e-10)
State wpi_ground_state(const WpiSpec& spec, const FourierGrid& g);

// amplitude such that the pump alone transfers sin^2(area/2) of the
// population (operational pulse-area calibration)
double wpi_calibrate_amplitude(const WpiSpec& spec);

// excited-surface population
double wpi_excited_population(const State& psi);

// R(phi) = |<psi_e(T)|psi_e(T)>|^2 / |<psi_e(t1)|psi_e(t1)>|^2
double wpi_ratio(WpiSpec& spec, double phi, Method method, double dt, double eps,
                 int n_t = 10);

// ---------------------------------------------------------------- metrics

struct ErrorMetrics {
    std::vector<double> times;
    std::vector<double> eps_sol;  // |oracle - numeric| per recorded time
    std::vector<double> eps_norm; // |1 - <psi|psi>|
    double eps_sol_max = 0.0;
    double eps_norm_max = 0.0;
};

ErrorMetrics error_metrics(const std::vector<double>& times,
                           const std::vector<double>& numeric,
                           const std::vector<double>& oracle,
                           const std::vector<double>& norms);

} // namespace prop
