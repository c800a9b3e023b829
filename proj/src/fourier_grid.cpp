#include "prop/fourier_grid.hpp"

#include <cmath>

#include "prop/errors.hpp"

namespace prop {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
} // namespace

FourierGrid::FourierGrid(std::size_t n_points, double r_min, double r_max)
    : n_(n_points), r_min_(r_min), r_max_(r_max) {
    if (!is_pow2(n_points)) throw DimensionError("grid size must be a power of two");
    if (!(r_max > r_min)) throw DimensionError("r_max must exceed r_min");

    dr_ = (r_max_ - r_min_) / static_cast<double>(n_);
    r_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) r_[i] = r_min_ + dr_ * static_cast<double>(i);

    // FFT ordering: k_j = 2 pi j / (N dr) for j < N/2, negative branch after
    k_.resize(n_);
    const double dk = 2.0 * kPi / (static_cast<double>(n_) * dr_);
    for (std::size_t j = 0; j < n_; ++j) {
        const double idx = (j < n_ / 2) ? static_cast<double>(j)
                                        : static_cast<double>(j) - static_cast<double>(n_);
        k_[j] = dk * idx;
    }
    k_max_ = kPi / dr_;

    bitrev_.resize(n_);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n_) ++log2n;
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t rev = 0;
        for (std::size_t b = 0; b < log2n; ++b)
            if (i & (std::size_t{1} << b)) rev |= std::size_t{1} << (log2n - 1 - b);
        bitrev_[i] = rev;
    }

    // per-stage twiddles, angles computed directly per index for accuracy
    for (std::size_t half = 1; half < n_; half *= 2) {
        std::vector<cplx> fw(half), iv(half);
        for (std::size_t j = 0; j < half; ++j) {
            const double ang = kPi * static_cast<double>(j) / static_cast<double>(half);
            fw[j] = {std::cos(ang), -std::sin(ang)};
            iv[j] = {std::cos(ang), std::sin(ang)};
        }
        tw_fwd_.push_back(std::move(fw));
        tw_inv_.push_back(std::move(iv));
    }
}

void FourierGrid::transform(cplx* data, bool inverse) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    const auto& stages = inverse ? tw_inv_ : tw_fwd_;
    const auto& ops = kernels::active();
    std::size_t s = 0;
    for (std::size_t half = 1; half < n_; half *= 2, ++s)
        ops.fft_stage(data, n_, half, stages[s].data());
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n_);
        ops.scale(cplx{inv_n, 0.0}, data, data, n_);
    }
}

void FourierGrid::fft(cplx* data) const { transform(data, false); }
void FourierGrid::ifft(cplx* data) const { transform(data, true); }

} // namespace prop
