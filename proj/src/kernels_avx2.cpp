// AVX2+FMA variants of the complex-vector kernels. Compiled with -mavx2 -mfma;
// callers must check cpu_has_avx2() (the dispatcher in kernels.cpp does).

#if defined(__x86_64__) || defined(_M_X64)

#include "prop/kernels.hpp"

#include <immintrin.h>

namespace prop::kernels::avx2 {

namespace {

// 2 packed complex<double> per __m256d: [re0, im0, re1, im1]

inline __m256d cmul(__m256d a, __m256d b) {
    __m256d ar = _mm256_movedup_pd(a);        // [ar0, ar0, ar1, ar1]
    __m256d ai = _mm256_unpackhi_pd(a, a);    // [ai0, ai0, ai1, ai1]
    __m256d bs = _mm256_permute_pd(b, 0x5);   // [bi0, br0, bi1, br1]
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

// scalar * packed: s split into broadcast re/im
inline __m256d cmul_scalar(__m256d sr, __m256d si, __m256d x) {
    __m256d xs = _mm256_permute_pd(x, 0x5);
    return _mm256_fmaddsub_pd(sr, x, _mm256_mul_pd(si, xs));
}

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

} // namespace

static void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        __m256d yv = _mm256_loadu_pd(dp(y + i));
        _mm256_storeu_pd(dp(y + i), _mm256_add_pd(yv, cmul_scalar(ar, ai, xv)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

static void scale(cplx a, const cplx* x, cplx* out, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        _mm256_storeu_pd(dp(out + i), cmul_scalar(ar, ai, xv));
    }
    for (; i < n; ++i) out[i] = a * x[i];
}

static void axpby(cplx a, const cplx* x, cplx b, const cplx* y, cplx* out, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
    const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        __m256d yv = _mm256_loadu_pd(dp(y + i));
        __m256d r = _mm256_add_pd(cmul_scalar(ar, ai, xv), cmul_scalar(br, bi, yv));
        _mm256_storeu_pd(dp(out + i), r);
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

static void axpbypcz(cplx a, const cplx* x, cplx b, const cplx* y, cplx c, const cplx* z,
                     cplx* out, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
    const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
    const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        __m256d yv = _mm256_loadu_pd(dp(y + i));
        __m256d zv = _mm256_loadu_pd(dp(z + i));
        __m256d r = _mm256_add_pd(cmul_scalar(ar, ai, xv), cmul_scalar(br, bi, yv));
        _mm256_storeu_pd(dp(out + i), _mm256_add_pd(r, cmul_scalar(cr, ci, zv)));
    }
    for (; i < n; ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

static void diag_mul_real(const double* v, const cplx* x, cplx* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m128d v2 = _mm_loadu_pd(v + i);                       // [v0, v1]
        __m256d vv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(v2), 0x50);
        // 0x50 -> [v0, v0, v1, v1]
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        _mm256_storeu_pd(dp(out + i), _mm256_mul_pd(vv, xv));
    }
    for (; i < n; ++i) out[i] = v[i] * x[i];
}

static void diag_axpy_real(const double* v, const cplx* x, cplx* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m128d v2 = _mm_loadu_pd(v + i);
        __m256d vv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(v2), 0x50);
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        __m256d ov = _mm256_loadu_pd(dp(out + i));
        _mm256_storeu_pd(dp(out + i), _mm256_fmadd_pd(vv, xv, ov));
    }
    for (; i < n; ++i) out[i] += v[i] * x[i];
}

static void diag_mul(const cplx* v, const cplx* x, cplx* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vv = _mm256_loadu_pd(dp(v + i));
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        _mm256_storeu_pd(dp(out + i), cmul(vv, xv));
    }
    for (; i < n; ++i) out[i] = v[i] * x[i];
}

static double norm2sq(const cplx* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

static cplx dot(const cplx* x, const cplx* y, std::size_t n) {
    const __m256d odd_neg = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        __m256d yv = _mm256_loadu_pd(dp(y + i));
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);                       // xr*yr + xi*yi
        __m256d ys = _mm256_xor_pd(_mm256_permute_pd(yv, 0x5), odd_neg); // [yi, -yr]
        acc_im = _mm256_fmadd_pd(xv, ys, acc_im);                       // xr*yi - xi*yr
    }
    alignas(32) double lr[4], li[4];
    _mm256_store_pd(lr, acc_re);
    _mm256_store_pd(li, acc_im);
    double re = lr[0] + lr[1] + lr[2] + lr[3];
    double im = li[0] + li[1] + li[2] + li[3];
    for (; i < n; ++i) {
        const cplx p = std::conj(x[i]) * y[i];
        re += p.real();
        im += p.imag();
    }
    return {re, im};
}

static void fft_stage(cplx* data, std::size_t n, std::size_t half, const cplx* tw) {
    const std::size_t step = 2 * half;
    if (half == 1) {
        // adjacent butterflies, twiddle = 1
        std::size_t base = 0;
        for (; base + 2 <= n; base += 2) {
            __m256d v = _mm256_loadu_pd(dp(data + base));            // [a, b]
            __m256d sw = _mm256_permute2f128_pd(v, v, 0x01);         // [b, a]
            __m256d sum = _mm256_add_pd(v, sw);                      // [a+b, ...]
            __m256d dif = _mm256_sub_pd(sw, v);                      // [..., a-b]
            _mm256_storeu_pd(dp(data + base), _mm256_blend_pd(sum, dif, 0xC));
        }
        for (; base < n; base += 2) {
            const cplx u = data[base], t = data[base + 1];
            data[base] = u + t;
            data[base + 1] = u - t;
        }
        return;
    }
    for (std::size_t base = 0; base < n; base += step) {
        std::size_t j = 0;
        for (; j + 2 <= half; j += 2) {
            __m256d u = _mm256_loadu_pd(dp(data + base + j));
            __m256d w = _mm256_loadu_pd(dp(tw + j));
            __m256d v = _mm256_loadu_pd(dp(data + base + j + half));
            __m256d t = cmul(w, v);
            _mm256_storeu_pd(dp(data + base + j), _mm256_add_pd(u, t));
            _mm256_storeu_pd(dp(data + base + j + half), _mm256_sub_pd(u, t));
        }
        for (; j < half; ++j) {
            const cplx u = data[base + j];
            const cplx t = tw[j] * data[base + j + half];
            data[base + j] = u + t;
            data[base + j + half] = u - t;
        }
    }
}

const Ops ops = {axpy,          scale,    axpby, axpbypcz, diag_mul_real,
                 diag_axpy_real, diag_mul, norm2sq, dot,    fft_stage};

} // namespace prop::kernels::avx2

#endif // x86-64
