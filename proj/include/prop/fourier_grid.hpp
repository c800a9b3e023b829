#pragma once

// Equidistant spatial grid with FFT-based momentum representation.
// Kinetic energy acts diagonally in momentum space; the grid owns the
// bit-reversal table and per-stage twiddle factors for its radix-2 FFT.

#include <complex>
#include <cstddef>
#include <vector>

#include "prop/state.hpp"

namespace prop {

class FourierGrid {
public:
    FourierGrid() = default;
    // n_points must be a power of two, r_max > r_min.
    FourierGrid(std::size_t n_points, double r_min, double r_max);

    std::size_t n() const { return n_; }
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    double dr() const { return dr_; }
    const std::vector<double>& r() const { return r_; }
    // momentum grid in FFT ordering (positive then negative frequencies)
    const std::vector<double>& k() const { return k_; }
    double k_max() const { return k_max_; }

    // unnormalized forward DFT: X_k = sum_n x_n e^{-2 pi i k n / N}
    void fft(cplx* data) const;
    // inverse with 1/N normalization
    void ifft(cplx* data) const;

private:
    void transform(cplx* data, bool inverse) const;

    std::size_t n_ = 0;
    double r_min_ = 0.0, r_max_ = 0.0, dr_ = 0.0, k_max_ = 0.0;
    std::vector<double> r_, k_;
    std::vector<std::size_t> bitrev_;
    std::vector<std::vector<cplx>> tw_fwd_, tw_inv_; // per-stage twiddles
};

} // namespace prop
