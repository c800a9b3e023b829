#include <doctest.h>

#include <cmath>
#include <random>

#include "prop/chebyshev.hpp"
#include "prop/errors.hpp"

using prop::cplx;

namespace {
double cheb_poly(int j, double x) {
    double p0 = 1.0, p1 = x;
    if (j == 0) return 1.0;
    for (int k = 2; k <= j; ++k) {
        const double p2 = 2.0 * x * p1 - p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}
} // namespace

TEST_CASE("chebyshev roots") {
    CHECK_THROWS_AS(prop::chebyshev_roots(0), prop::DimensionError);

    auto r1 = prop::chebyshev_roots(1);
    REQUIRE(r1.size() == 1);
    CHECK(std::abs(r1[0]) < 1e-15);

    auto r2 = prop::chebyshev_roots(2);
    CHECK(r2[0] == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(r2[1] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));

    auto r8 = prop::chebyshev_roots(8);
    for (std::size_t i = 0; i + 1 < r8.size(); ++i) CHECK(r8[i] < r8[i + 1]); // ascending
    for (double x : r8) CHECK(std::abs(cheb_poly(8, x)) < 1e-14);
}

TEST_CASE("samples_to_cheb projections") {
    // constant samples -> only c0
    {
        std::vector<cplx> s(9, cplx{1.7, -0.3});
        auto c = prop::samples_to_cheb(s);
        CHECK(std::abs(c[0] - cplx{1.7, -0.3}) < 1e-14);
        for (std::size_t j = 1; j < c.size(); ++j) CHECK(std::abs(c[j]) < 1e-14);
    }
    // samples of P_1 -> unit c1
    {
        auto roots = prop::chebyshev_roots(7);
        std::vector<cplx> s(roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i) s[i] = roots[i];
        auto c = prop::samples_to_cheb(s);
        for (std::size_t j = 0; j < c.size(); ++j) {
            const double expect = (j == 1) ? 1.0 : 0.0;
            CHECK(std::abs(c[j] - expect) < 1e-14);
        }
    }
    // x^3 = (3 P1 + P3)/4 at N = 4 roots
    {
        auto roots = prop::chebyshev_roots(4);
        std::vector<cplx> s(roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i) s[i] = std::pow(roots[i], 3);
        auto c = prop::samples_to_cheb(s);
        CHECK(std::abs(c[0]) < 1e-15);
        CHECK(std::abs(c[1] - 0.75) < 1e-15);
        CHECK(std::abs(c[2]) < 1e-15);
        CHECK(std::abs(c[3] - 0.25) < 1e-15);
    }
    CHECK_THROWS_AS(prop::samples_to_cheb(std::vector<cplx>{}), prop::DimensionError);
}

TEST_CASE("quadrature exactness for degree < N") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 14;
    std::vector<cplx> coeffs(n);
    for (auto& c : coeffs) c = {u(rng), u(rng)};
    auto roots = prop::chebyshev_roots(n);
    std::vector<cplx> samples(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += coeffs[static_cast<std::size_t>(j)] * cheb_poly(j, roots[i]);
        samples[i] = acc;
    }
    auto back = prop::samples_to_cheb(samples);
    for (int j = 0; j < n; ++j)
        CHECK(std::abs(back[static_cast<std::size_t>(j)] - coeffs[static_cast<std::size_t>(j)]) <
              1e-13);
}

TEST_CASE("truncation by coefficient ratio") {
    using prop::truncate_by_ratio;
    {
        auto t = truncate_by_ratio({1.0, 1e-3, 1e-8, 1e-15, 1e-16}, 1e-12);
        CHECK(t.ok);
        CHECK_FALSE(t.zero);
        CHECK(t.m == 3);
    }
    {
        auto t = truncate_by_ratio({2.5, 0.0, 0.0, 0.0}, 1e-10); // constant samples
        CHECK(t.ok);
        CHECK(t.m == 1);
    }
    {
        auto t = truncate_by_ratio({0.0, 0.0, 0.0}, 1e-10); // identically zero
        CHECK(t.ok);
        CHECK(t.zero);
        CHECK(t.m == 1);
    }
    {
        auto t = truncate_by_ratio({1.0, 0.9, 0.8, 0.7}, 1e-10); // needs larger N_t
        CHECK_FALSE(t.ok);
    }
    {
        // denominator is the largest coefficient, not coeffs[0]
        auto t = truncate_by_ratio({1e-6, 1.0, 1e-3, 1e-14}, 1e-10);
        CHECK(t.ok);
        CHECK(t.m == 3);
    }
}

TEST_CASE("monomial table") {
    // C2 row: P2 = 2x^2 - 1 -> (-1, 0, 4)
    auto c3 = prop::monomial_table(3);
    CHECK(c3[2 * 3 + 0] == doctest::Approx(-1.0));
    CHECK(c3[2 * 3 + 1] == doctest::Approx(0.0));
    CHECK(c3[2 * 3 + 2] == doctest::Approx(4.0));

    // diagonal C_{j,j} = 2^{j-1} j!
    auto c = prop::monomial_table(20);
    double fact = 1.0;
    for (int j = 1; j < 20; ++j) {
        fact *= j;
        const double expect = std::pow(2.0, j - 1) * fact;
        CHECK(c[static_cast<std::size_t>(j) * 20 + static_cast<std::size_t>(j)] ==
              doctest::Approx(expect).epsilon(1e-13));
    }

    // row sums: P_j(1) = 1
    for (int j = 0; j < 20; ++j) {
        double sum = 0.0, f = 1.0;
        for (int k = 0; k <= j; ++k) {
            if (k > 0) f *= k;
            sum += c[static_cast<std::size_t>(j) * 20 + static_cast<std::size_t>(k)] / f;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    }

    CHECK_THROWS_AS(prop::monomial_table(61), prop::ConvergenceError);
}

TEST_CASE("cheb_to_taylor small orders") {
    prop::State v0({prop::ReprKind::Levels, 2});
    v0.amp = {cplx{1.0, 0.5}, cplx{-0.25, 2.0}};
    prop::State v1({prop::ReprKind::Levels, 2});
    v1.amp = {cplx{0.3, -0.1}, cplx{0.7, 0.2}};

    // m=1: Phi^(0) = bar0
    auto t1 = prop::cheb_to_taylor({v0}, 1, 2.5);
    CHECK(prop::dist(t1[0], v0) < 1e-15);

    // m=2: Phi^(1) = (2/t) bar1, Phi^(0) = bar0 - bar1
    const double t = 2.5;
    auto t2 = prop::cheb_to_taylor({v0, v1}, 2, t);
    prop::State e1 = v1;
    prop::scale_inplace(cplx{2.0 / t, 0.0}, e1);
    CHECK(prop::dist(t2[1], e1) < 1e-15);
    prop::State e0 = prop::axpy(cplx{-1.0, 0.0}, v1, v0);
    CHECK(prop::dist(t2[0], e0) < 1e-15);
}

TEST_CASE("cheb_to_taylor round trip recovers the source coefficients") {
    // Start from decaying Chebyshev coefficients (the only kind the ratio
    // truncation lets through), transform to monomial coefficients, re-expand
    // the monomial sum in Chebyshev polynomials: the source returns. The
    // reverse coefficient-level comparison is not meaningful at large m; the
    // transformation amplifies rounding noise through its factorial-scaled
    // entries, which is also why orders beyond 60 are refused outright.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int m : {6, 14, 20, 30}) {
        const double t = 1.8;
        std::vector<cplx> bar(static_cast<std::size_t>(m));
        double w = 1.0;
        for (auto& c : bar) {
            c = cplx{u(rng), u(rng)} * w;
            w *= 0.3;
        }
        auto phi = prop::cheb_to_taylor_scalar(bar, m, t);
        auto roots = prop::chebyshev_roots(m);
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
        auto back = prop::samples_to_cheb(samples);
        double worst = 0.0, scale = 0.0;
        for (int j = 0; j < m; ++j) {
            worst = std::max(worst, std::abs(back[static_cast<std::size_t>(j)] -
                                             bar[static_cast<std::size_t>(j)]));
            scale = std::max(scale, std::abs(bar[static_cast<std::size_t>(j)]));
        }
        CHECK(worst / scale < 1e-10);
    }
}

TEST_CASE("cheb_to_taylor small-order coefficient identity") {
    // at small m the Taylor-side identity itself holds to near machine
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int m = 6;
    const double t = 1.3;
    std::vector<cplx> taylor(static_cast<std::size_t>(m));
    for (auto& c : taylor) c = {u(rng), u(rng)};
    auto roots = prop::chebyshev_roots(m);
    std::vector<cplx> samples(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const double tau = 0.5 * t * (roots[i] + 1.0);
        cplx acc{0.0, 0.0};
        double p = 1.0;
        for (int j = 0; j < m; ++j) {
            acc += taylor[static_cast<std::size_t>(j)] * p;
            p *= tau / (j + 1);
        }
        samples[i] = acc;
    }
    auto bar = prop::samples_to_cheb(samples);
    auto back = prop::cheb_to_taylor_scalar(bar, m, t);
    for (int j = 0; j < m; ++j)
        CHECK(std::abs(back[static_cast<std::size_t>(j)] -
                       taylor[static_cast<std::size_t>(j)]) < 1e-11);
}

TEST_CASE("cheb_to_taylor function-level cycle on a smooth function") {
    // bar -> taylor -> resample at the nodes reproduces the function values
    const int m = 30;
    const double t = 1.8;
    auto roots = prop::chebyshev_roots(m);
    std::vector<cplx> samples(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const double tau = 0.5 * t * (roots[i] + 1.0);
        samples[i] = std::exp(-0.3 * tau) *
                     cplx{std::cos(3.0 * tau / t), std::sin(2.0 * tau / t)};
    }
    auto bar = prop::samples_to_cheb(samples);
    auto phi = prop::cheb_to_taylor_scalar(bar, m, t);
    double worst = 0.0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const double tau = 0.5 * t * (roots[i] + 1.0);
        cplx acc{0.0, 0.0};
        double p = 1.0;
        for (int j = 0; j < m; ++j) {
            acc += phi[static_cast<std::size_t>(j)] * p;
            p *= tau / (j + 1);
        }
        worst = std::max(worst, std::abs(acc - samples[i]));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("scalar function series") {
    // constant
    {
        auto s = prop::scalar_func_series([](double) { return cplx{2.0, -1.0}; }, 0.0, 1.0,
                                          1e-14);
        CHECK(std::abs(s.coeffs[0] - cplx{2.0, -1.0}) < 1e-14);
        CHECK(s.coeffs.size() <= 2);
    }
    // e^{-i x dt} coefficients are (2-d_j0)(-i)^j J_j(hw dt) e^{-i c dt}
    {
        const double c = 1.3, hw = 2.4, dt = 1.7;
        auto s = prop::scalar_func_series(
            [&](double x) { return std::exp(cplx{0.0, -x * dt}); }, c, hw, 1e-14);
        const cplx phase = std::exp(cplx{0.0, -c * dt});
        REQUIRE(s.coeffs.size() >= 5);
        for (std::size_t j = 0; j < 5; ++j) {
            const double bj = std::cyl_bessel_j(static_cast<double>(j), hw * dt);
            const cplx expect =
                phase * (j == 0 ? 1.0 : 2.0) * std::pow(cplx{0.0, -1.0}, j) * bj;
            CHECK(std::abs(s.coeffs[j] - expect) < 1e-10);
        }
    }
    // non-convergence carries the achieved ratio
    {
        CHECK_THROWS_AS(prop::scalar_func_series(
                            [](double x) { return cplx{x >= 0.0 ? 1.0 : 0.0, 0.0}; }, 0.0,
                            1.0, 1e-14, 64),
                        prop::ConvergenceError);
    }
}

TEST_CASE("apply_operator_series") {
    using prop::State;
    // identity series returns psi
    {
        prop::ScalarSeries s;
        s.coeffs = {cplx{1.0, 0.0}};
        State psi({prop::ReprKind::Levels, 3});
        psi.amp = {cplx{0.1, 0.2}, cplx{0.3, -0.4}, cplx{0.5, 0.0}};
        auto out = prop::apply_operator_series(
            s, [](const State& in, State& o) { o = in; }, psi);
        CHECK(prop::dist(out, psi) < 1e-15);
    }
    // diagonal 2x2 exponential matches per-eigenvalue scalars
    {
        const double e0 = -0.8, e1 = 1.9, dt = 2.2;
        const double c = 0.5 * (e0 + e1), hw = 1.05 * 0.5 * (e1 - e0);
        auto s = prop::scalar_func_series(
            [&](double x) { return std::exp(cplx{0.0, -x * dt}); }, c, hw, 1e-14);
        State psi({prop::ReprKind::Levels, 2});
        psi.amp = {cplx{0.6, 0.1}, cplx{-0.2, 0.77}};
        auto apply_norm = [&](const State& in, State& o) {
            o = in;
            o.amp[0] *= (e0 - c) / hw;
            o.amp[1] *= (e1 - c) / hw;
        };
        auto out = prop::apply_operator_series(s, apply_norm, psi);
        CHECK(std::abs(out.amp[0] - std::exp(cplx{0.0, -e0 * dt}) * psi.amp[0]) < 1e-12);
        CHECK(std::abs(out.amp[1] - std::exp(cplx{0.0, -e1 * dt}) * psi.amp[1]) < 1e-12);
        // unitary function preserves the norm
        CHECK(prop::norm(out) == doctest::Approx(prop::norm(psi)).epsilon(1e-11));
    }
    // recurrence divergence when the bounds lie
    {
        const double dt = 4.0;
        auto s = prop::scalar_func_series(
            [&](double x) { return std::exp(cplx{0.0, -x * dt}); }, 0.0, 1.0, 1e-14);
        State psi({prop::ReprKind::Levels, 1});
        psi.amp = {cplx{1.0, 0.0}};
        auto bad = [](const State& in, State& o) {
            o = in;
            o.amp[0] *= 3.0; // "eigenvalue" far outside [-1, 1]
        };
        CHECK_THROWS_AS(prop::apply_operator_series(s, bad, psi), prop::ConvergenceError);
    }
}
