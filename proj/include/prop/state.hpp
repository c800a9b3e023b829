#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "prop/errors.hpp"
#include "prop/kernels.hpp"

namespace prop {

using cplx = std::complex<double>;

enum class ReprKind { Levels, Grid, TwoSurface };

// Representation tag: Levels(n), Grid(N), TwoSurface(N). `points` is the
// number of levels / grid points; TwoSurface states hold 2*points amplitudes
// (ground surface first, then excited).
struct Repr {
    ReprKind kind = ReprKind::Levels;
    std::size_t points = 0;

    std::size_t size() const { return kind == ReprKind::TwoSurface ? 2 * points : points; }
    bool operator==(const Repr&) const = default;
};

// Complex amplitude vector on a representation. Grid amplitudes carry the
// sqrt(dr) quadrature weight so the plain Euclidean norm is the L2 norm.
struct State {
    std::vector<cplx> amp;
    Repr repr;

    State() = default;
    State(Repr r, cplx fill = {0.0, 0.0}) : amp(r.size(), fill), repr(r) {}

    std::size_t size() const { return amp.size(); }
    cplx* data() { return amp.data(); }
    const cplx* data() const { return amp.data(); }
};

inline void check_same(const State& a, const State& b) {
    if (!(a.repr == b.repr) || a.size() != b.size())
        throw DimensionError("state representation mismatch");
}

inline double norm(const State& s) {
    return std::sqrt(kernels::active().norm2sq(s.data(), s.size()));
}

// conjugate-linear in the first argument
inline cplx inner(const State& a, const State& b) {
    check_same(a, b);
    return kernels::active().dot(a.data(), b.data(), a.size());
}

// y + alpha * x
inline State axpy(cplx alpha, const State& x, const State& y) {
    check_same(x, y);
    State out = y;
    kernels::active().axpy(alpha, x.data(), out.data(), out.size());
    return out;
}

// in-place y += alpha * x
inline void axpy_inplace(cplx alpha, const State& x, State& y) {
    check_same(x, y);
    kernels::active().axpy(alpha, x.data(), y.data(), y.size());
}

inline void scale_inplace(cplx alpha, State& x) {
    kernels::active().scale(alpha, x.data(), x.data(), x.size());
}

inline double dist(const State& a, const State& b) {
    check_same(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const cplx d = a.amp[i] - b.amp[i];
        acc += d.real() * d.real() + d.imag() * d.imag();
    }
    return std::sqrt(acc);
}

} // namespace prop
