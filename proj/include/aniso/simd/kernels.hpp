#pragma once

// Inner-loop kernels shared by the pattern transform, Fourier synthesis and
// the weighted sequence norms. Each kernel has a portable scalar reference and
// optional AVX2 / NEON variants; the variant is chosen once at runtime.
//
// Complex data is interleaved (std::complex<double> layout). Vector variants
// reassociate the sums, so results agree with the scalar reference to rounding
// and not bit-for-bit.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace aniso::simd {

using cplx = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

struct Kernels {
    Isa isa;
    // sum_i table[idx[i]] * x[i]
    cplx (*cdot_indexed)(std::span<const cplx> table, std::span<const std::uint32_t> idx,
                         std::span<const cplx> x);
    // sum_i a[i] * b[i]
    cplx (*cdot)(std::span<const cplx> a, std::span<const cplx> b);
    // sum_i (w[i] |c[i]|)^2
    double (*sum_sq_weighted)(std::span<const double> w, std::span<const cplx> c);
    // sum_i w[i] |c[i]|
    double (*sum_abs_weighted)(std::span<const double> w, std::span<const cplx> c);
    // max_i w[i] |c[i]|  (0 for empty input)
    double (*max_abs_weighted)(std::span<const double> w, std::span<const cplx> c);
};

// Best kernel set for this CPU. ANISO_SIMD=scalar|avx2|neon overrides the choice
// when the requested set is available.
const Kernels& kernels();

bool available(Isa isa);
// Throws std::invalid_argument when the set was not compiled in or the CPU lacks it.
const Kernels& kernels_for(Isa isa);

std::string_view isa_name(Isa isa);

namespace detail {
const Kernels& scalar_kernels();
#if defined(ANISO_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif
#if defined(ANISO_HAVE_NEON)
const Kernels& neon_kernels();
#endif
} // namespace detail

} // namespace aniso::simd
