#include "prop/chebyshev.hpp"

#include <algorithm>
#include <cmath>

#include "prop/errors.hpp"

namespace prop {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroFloor = 1e-300;
} // namespace

std::vector<double> chebyshev_node_angles(int n) {
    if (n < 1) throw DimensionError("chebyshev order must be >= 1");
    std::vector<double> th(static_cast<std::size_t>(n));
    // ascending nodes x_i = cos(theta_i): theta descending
    for (int i = 0; i < n; ++i)
        th[static_cast<std::size_t>(i)] = kPi * (static_cast<double>(n - 1 - i) + 0.5) / n;
    return th;
}

std::vector<double> chebyshev_roots(int n) {
    auto th = chebyshev_node_angles(n);
    std::vector<double> x(th.size());
    for (std::size_t i = 0; i < th.size(); ++i) x[i] = std::cos(th[i]);
    return x;
}

std::vector<cplx> samples_to_cheb(const std::vector<cplx>& samples) {
    if (samples.empty()) throw DimensionError("samples_to_cheb: empty input");
    const int n = static_cast<int>(samples.size());
    const auto th = chebyshev_node_angles(n);
    std::vector<cplx> coeffs(samples.size());
    for (int j = 0; j < n; ++j) {
        cplx acc{0.0, 0.0};
        for (int i = 0; i < n; ++i)
            acc += samples[static_cast<std::size_t>(i)] *
                   std::cos(j * th[static_cast<std::size_t>(i)]);
        coeffs[static_cast<std::size_t>(j)] = acc * ((j == 0 ? 1.0 : 2.0) / n);
    }
    return coeffs;
}

std::vector<State> samples_to_cheb(const std::vector<State>& samples) {
    if (samples.empty()) throw DimensionError("samples_to_cheb: empty input");
    const int n = static_cast<int>(samples.size());
    const auto th = chebyshev_node_angles(n);
    std::vector<State> coeffs;
    coeffs.reserve(samples.size());
    for (int j = 0; j < n; ++j) {
        State acc(samples[0].repr);
        for (int i = 0; i < n; ++i) {
            const double w = std::cos(j * th[static_cast<std::size_t>(i)]);
            axpy_inplace(cplx{w, 0.0}, samples[static_cast<std::size_t>(i)], acc);
        }
        scale_inplace(cplx{(j == 0 ? 1.0 : 2.0) / n, 0.0}, acc);
        coeffs.push_back(std::move(acc));
    }
    return coeffs;
}

Truncation truncate_by_ratio(const std::vector<double>& norms, double eps) {
    Truncation t;
    if (norms.empty()) throw DimensionError("truncate: empty series");
    const double mx = *std::max_element(norms.begin(), norms.end());
    if (mx < kZeroFloor) {
        t.m = 1;
        t.zero = true;
        t.ok = true;
        return t;
    }
    double best = 1e300;
    for (std::size_t m = 1; m < norms.size(); ++m) {
        const double ratio = norms[m] / mx;
        best = std::min(best, ratio);
        if (ratio < eps) {
            t.m = static_cast<int>(m);
            t.ok = true;
            t.achieved = ratio;
            return t;
        }
    }
    t.ok = false;
    t.achieved = best;
    return t;
}

std::vector<double> monomial_table(int m) {
    if (m < 1) throw DimensionError("monomial_table: order must be >= 1");
    if (m > 60)
        throw ConvergenceError("monomial_table: order > 60 refused "
                               "(factorial-scaled entries, unstable transform)",
                               static_cast<double>(m));
    const std::size_t mm = static_cast<std::size_t>(m);
    std::vector<double> c(mm * mm, 0.0);
    c[0] = 1.0;                 // C_{0,0}
    if (m > 1) c[mm + 1] = 1.0; // C_{1,1}
    for (int j = 1; j + 1 < m; ++j) {
        for (int k = 0; k <= j + 1; ++k) {
            double v = -c[static_cast<std::size_t>(j - 1) * mm + static_cast<std::size_t>(k)];
            if (k >= 1)
                v += 2.0 * k *
                     c[static_cast<std::size_t>(j) * mm + static_cast<std::size_t>(k - 1)];
            c[static_cast<std::size_t>(j + 1) * mm + static_cast<std::size_t>(k)] = v;
        }
    }
    return c;
}

namespace {

template <class Vec, class Axpy, class Scale>
std::vector<Vec> cheb_to_taylor_impl(const std::vector<Vec>& bar, int m, double t,
                                     const Vec& zero, const Axpy& axpy_fn,
                                     const Scale& scale_fn) {
    if (m < 1 || static_cast<std::size_t>(m) > bar.size())
        throw DimensionError("cheb_to_taylor: bad order");
    const auto C = monomial_table(m);
    const std::size_t mm = static_cast<std::size_t>(m);

    std::vector<double> pw(mm), fact(mm);
    pw[0] = 1.0;
    fact[0] = 1.0;
    for (std::size_t j = 1; j < mm; ++j) {
        pw[j] = pw[j - 1] * (t / 2.0);
        fact[j] = fact[j - 1] * static_cast<double>(j);
    }

    std::vector<Vec> phi(mm, zero);
    phi[mm - 1] = bar[mm - 1];
    scale_fn(C[(mm - 1) * mm + (mm - 1)] / pw[mm - 1], phi[mm - 1]);
    for (int k = m - 2; k >= 0; --k) {
        const std::size_t ku = static_cast<std::size_t>(k);
        Vec s = zero;
        for (std::size_t j = ku; j < mm; ++j) axpy_fn(C[j * mm + ku], bar[j], s);
        for (std::size_t jp = ku + 1; jp < mm; ++jp)
            axpy_fn(-pw[jp] / fact[jp - ku], phi[jp], s);
        scale_fn(1.0 / pw[ku], s);
        phi[ku] = std::move(s);
    }
    return phi;
}

} // namespace

std::vector<State> cheb_to_taylor(const std::vector<State>& bar, int m, double t) {
    State zero(bar.at(0).repr);
    return cheb_to_taylor_impl(
        bar, m, t, zero,
        [](double a, const State& x, State& acc) { axpy_inplace(cplx{a, 0.0}, x, acc); },
        [](double a, State& x) { scale_inplace(cplx{a, 0.0}, x); });
}

std::vector<cplx> cheb_to_taylor_scalar(const std::vector<cplx>& bar, int m, double t) {
    return cheb_to_taylor_impl(
        bar, m, t, cplx{0.0, 0.0},
        [](double a, const cplx& x, cplx& acc) { acc += a * x; },
        [](double a, cplx& x) { x *= a; });
}

ScalarSeries scalar_func_series(const std::function<cplx(double)>& f, double center,
                                double half_width, double eps, int n_max) {
    if (n_max < 4) throw DimensionError("scalar_func_series: n_max too small");
    double achieved = 1e300;
    for (int n = 16; n <= n_max; n *= 2) {
        const auto th = chebyshev_node_angles(n);
        std::vector<cplx> samples(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            samples[static_cast<std::size_t>(i)] =
                f(center + half_width * std::cos(th[static_cast<std::size_t>(i)]));
        auto coeffs = samples_to_cheb(samples);

        double mx = 0.0;
        for (const auto& c : coeffs) mx = std::max(mx, std::abs(c));
        if (mx < kZeroFloor) {
            ScalarSeries s;
            s.coeffs = {cplx{0.0, 0.0}};
            s.center = center;
            s.half_width = half_width;
            return s;
        }
        const double r1 = std::abs(coeffs[static_cast<std::size_t>(n - 1)]) / mx;
        const double r2 = std::abs(coeffs[static_cast<std::size_t>(n - 2)]) / mx;
        achieved = std::min(achieved, std::max(r1, r2));
        if (r1 < eps && r2 < eps) {
            // drop the converged tail
            int keep = n;
            while (keep > 1 &&
                   std::abs(coeffs[static_cast<std::size_t>(keep - 1)]) / mx < eps)
                --keep;
            ScalarSeries s;
            s.coeffs.assign(coeffs.begin(), coeffs.begin() + keep + 1);
            s.center = center;
            s.half_width = half_width;
            s.trunc_ratio = std::abs(s.coeffs.back()) / mx;
            return s;
        }
    }
    throw ConvergenceError("scalar_func_series: no convergence within n_max", achieved);
}

cplx eval_scalar_series(const ScalarSeries& s, double x) {
    const double y = (x - s.center) / s.half_width;
    cplx acc = s.coeffs[0];
    double p0 = 1.0, p1 = y;
    if (s.coeffs.size() > 1) acc += s.coeffs[1] * p1;
    for (std::size_t j = 2; j < s.coeffs.size(); ++j) {
        const double p2 = 2.0 * y * p1 - p0;
        acc += s.coeffs[j] * p2;
        p0 = p1;
        p1 = p2;
    }
    return acc;
}

State apply_operator_series(const ScalarSeries& s, const ApplyNorm& apply_norm,
                            const State& psi) {
    State acc(psi.repr);
    kernels::active().scale(s.coeffs[0], psi.data(), acc.data(), psi.size());
    if (s.coeffs.size() == 1) return acc;

    const double guard = 1e6 * kernels::active().norm2sq(psi.data(), psi.size());
    State p0 = psi;
    State p1(psi.repr), tmp(psi.repr);
    apply_norm(p0, p1);
    kernels::active().axpy(s.coeffs[1], p1.data(), acc.data(), acc.size());
    for (std::size_t j = 2; j < s.coeffs.size(); ++j) {
        apply_norm(p1, tmp);
        // p2 = 2 tmp - p0, rotate buffers
        kernels::active().axpby(cplx{2.0, 0.0}, tmp.data(), cplx{-1.0, 0.0}, p0.data(),
                                p0.data(), p0.size());
        std::swap(p0, p1); // p1 now newest, p0 previous
        kernels::active().axpy(s.coeffs[j], p1.data(), acc.data(), acc.size());
        if ((j & 7) == 0 &&
            kernels::active().norm2sq(p1.data(), p1.size()) > guard)
            throw ConvergenceError("apply_operator_series: recurrence divergence "
                                   "(spectral bounds violated)",
                                   std::sqrt(kernels::active().norm2sq(p1.data(), p1.size())));
    }
    return acc;
}

} // namespace prop
