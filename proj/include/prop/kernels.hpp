#pragma once

// Complex-vector kernels used by the propagator inner loops.
//
// Every kernel exists as a scalar reference implementation and, on x86-64
// with AVX2+FMA, as a vectorized variant. The active set is chosen once at
// startup from CPUID; PROP_SIMD=scalar|avx2 overrides the choice (avx2 only
// honored if the CPU supports it). Scalar and SIMD lanes are equivalence
// tested against each other in tests/test_kernels.cpp.

#include <complex>
#include <cstddef>

namespace prop::kernels {

using cplx = std::complex<double>;

struct Ops {
    // y[i] += a * x[i]
    void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
    // out[i] = a * x[i]
    void (*scale)(cplx a, const cplx* x, cplx* out, std::size_t n);
    // out[i] = a * x[i] + b * y[i]
    void (*axpby)(cplx a, const cplx* x, cplx b, const cplx* y, cplx* out, std::size_t n);
    // out[i] = a * x[i] + b * y[i] + c * z[i]
    void (*axpbypcz)(cplx a, const cplx* x, cplx b, const cplx* y, cplx c, const cplx* z,
                     cplx* out, std::size_t n);
    // out[i] = v[i] * x[i], v real diagonal
    void (*diag_mul_real)(const double* v, const cplx* x, cplx* out, std::size_t n);
    // out[i] += v[i] * x[i], v real diagonal
    void (*diag_axpy_real)(const double* v, const cplx* x, cplx* out, std::size_t n);
    // out[i] = v[i] * x[i], v complex diagonal (phase multiply)
    void (*diag_mul)(const cplx* v, const cplx* x, cplx* out, std::size_t n);
    // sum |x[i]|^2
    double (*norm2sq)(const cplx* x, std::size_t n);
    // sum conj(x[i]) * y[i]
    cplx (*dot)(const cplx* x, const cplx* y, std::size_t n);
    // radix-2 DIT FFT pass over interleaved complex data, one stage.
    // half: butterfly half-size, tw: half twiddles for this stage.
    void (*fft_stage)(cplx* data, std::size_t n, std::size_t half, const cplx* tw);
};

namespace scalar {
extern const Ops ops;
}

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const Ops ops;    // only safe to call if cpu_has_avx2()
}
bool cpu_has_avx2();
#endif

// Active dispatch table (resolved at first use, stable afterwards).
const Ops& active();
const char* active_name();

} // namespace prop::kernels
