#include "prop/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace prop::kernels {

namespace scalar {

static void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

static void scale(cplx a, const cplx* x, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i];
}

static void axpby(cplx a, const cplx* x, cplx b, const cplx* y, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

static void axpbypcz(cplx a, const cplx* x, cplx b, const cplx* y, cplx c, const cplx* z,
                     cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i] + c * z[i];
}

static void diag_mul_real(const double* v, const cplx* x, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i] * x[i];
}

static void diag_axpy_real(const double* v, const cplx* x, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += v[i] * x[i];
}

static void diag_mul(const cplx* v, const cplx* x, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i] * x[i];
}

static double norm2sq(const cplx* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return acc;
}

static cplx dot(const cplx* x, const cplx* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx p = std::conj(x[i]) * y[i];
        re += p.real();
        im += p.imag();
    }
    return {re, im};
}

static void fft_stage(cplx* data, std::size_t n, std::size_t half, const cplx* tw) {
    const std::size_t step = 2 * half;
    for (std::size_t base = 0; base < n; base += step) {
        for (std::size_t j = 0; j < half; ++j) {
            const cplx u = data[base + j];
            const cplx t = tw[j] * data[base + j + half];
            data[base + j] = u + t;
            data[base + j + half] = u - t;
        }
    }
}

const Ops ops = {axpy,          scale,    axpby, axpbypcz, diag_mul_real,
                 diag_axpy_real, diag_mul, norm2sq, dot,    fft_stage};

} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

static const Ops* resolve() {
#if defined(__x86_64__) || defined(_M_X64)
    const char* env = std::getenv("PROP_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar::ops;
    if (cpu_has_avx2()) return &avx2::ops;
    if (env && std::strcmp(env, "avx2") == 0) return &scalar::ops; // asked but unsupported
#endif
    return &scalar::ops;
}

const Ops& active() {
    static const Ops* table = resolve();
    return *table;
}

const char* active_name() {
#if defined(__x86_64__) || defined(_M_X64)
    return &active() == &scalar::ops ? "scalar" : "avx2";
#else
    return "scalar";
#endif
}

} // namespace prop::kernels
