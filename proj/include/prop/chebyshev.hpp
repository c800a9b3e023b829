#pragma once

// Chebyshev machinery: root grids, sampling -> coefficient cosine transform,
// coefficient-ratio truncation, the Chebyshev -> Taylor coefficient
// transformation, and scalar function expansion over an energy interval.

#include <functional>
#include <vector>

#include "prop/state.hpp"

namespace prop {

// roots of P_n, ascending in (-1, 1)
std::vector<double> chebyshev_roots(int n);
// angles theta_i with x_i = cos(theta_i) for the ascending roots
std::vector<double> chebyshev_node_angles(int n);

// coeffs[j] = (2 - delta_j0)/N sum_i samples_i P_j(x_i), samples at the
// ascending roots of P_N
std::vector<cplx> samples_to_cheb(const std::vector<cplx>& samples);
std::vector<State> samples_to_cheb(const std::vector<State>& samples);

struct Truncation {
    int m = 0;          // expansion keeps coefficients 0 .. m-1
    bool zero = false;  // series identically zero (all coefficients < 1e-300)
    bool ok = false;    // false: no index satisfied the ratio, enlarge N_t
    double achieved = 0.0;
};

// Smallest m with ||coeffs[m]|| / max_j ||coeffs[j]|| < eps. The first
// omitted coefficient is the tested one. ok=false if no m <= N-1 works.
Truncation truncate_by_ratio(const std::vector<double>& norms, double eps);

// Lower-triangular C[j*m+k] with P_j(x) = sum_k C[j,k] x^k / k!,
// C_{j+1,k} = 2k C_{j,k-1} - C_{j-1,k}. Refuses m > 60 (entries scale like
// 2^(j-1) j! and the transformation below is unstable far before overflow).
std::vector<double> monomial_table(int m);

// Appendix-style back substitution: from Chebyshev coefficients bar[0..m-1]
// over an interval of length t to monomial coefficients phi[j'] with
// f(tau) = sum_j' tau^{j'} / j'! phi[j'].
std::vector<State> cheb_to_taylor(const std::vector<State>& bar, int m, double t);
std::vector<cplx> cheb_to_taylor_scalar(const std::vector<cplx>& bar, int m, double t);

struct ScalarSeries {
    std::vector<cplx> coeffs;  // over the scaled variable y in [-1, 1]
    double center = 0.0;
    double half_width = 1.0;
    double trunc_ratio = 0.0;  // achieved trailing ratio
};

// Chebyshev expansion of f(center + half_width * y), sampled at root grids of
// doubling size until the trailing two coefficients drop below eps relative
// to the largest, then truncated to the last coefficient above that ratio.
ScalarSeries scalar_func_series(const std::function<cplx(double)>& f, double center,
                                double half_width, double eps, int n_max = 1024);

// evaluate a ScalarSeries at a point of the underlying variable
cplx eval_scalar_series(const ScalarSeries& s, double x);

// Clenshaw-style application of sum_j c_j P_j(A_norm) to psi, where apply_norm
// computes A_norm * v. Throws ConvergenceError if the recurrence norm grows
// beyond 1e3 * ||psi|| (spectral bounds violated).
using ApplyNorm = std::function<void(const State& in, State& out)>;
State apply_operator_series(const ScalarSeries& s, const ApplyNorm& apply_norm,
                            const State& psi);

} // namespace prop
