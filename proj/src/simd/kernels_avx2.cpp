// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "aniso/simd/kernels.hpp"

namespace aniso::simd {

namespace {

inline const double* dp(const cplx* c) { return reinterpret_cast<const double*>(c); }

// Two complex products per register: [ar0 ai0 ar1 ai1] * [br0 bi0 br1 bi1].
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline cplx hsum_complex(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

// |c|^2 for two complex values, duplicated into the re/im lanes.
inline __m256d norm2_dup(__m256d c) {
    const __m256d sq = _mm256_mul_pd(c, c);
    return _mm256_hadd_pd(sq, sq);
}

// [w0 w0 w1 w1]
inline __m256d weight_dup(const double* w) {
    const __m128d pair = _mm_loadu_pd(w);
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(pair), 0x50);
}

cplx cdot_indexed_avx2(std::span<const cplx> table, std::span<const std::uint32_t> idx,
                       std::span<const cplx> x) {
    const std::size_t n = idx.size();
    const double* tab = dp(table.data());
    const double* xs = dp(x.data());
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d t0 = _mm256_set_m128d(_mm_loadu_pd(tab + 2 * std::size_t(idx[i + 1])),
                                            _mm_loadu_pd(tab + 2 * std::size_t(idx[i])));
        const __m256d t1 = _mm256_set_m128d(_mm_loadu_pd(tab + 2 * std::size_t(idx[i + 3])),
                                            _mm_loadu_pd(tab + 2 * std::size_t(idx[i + 2])));
        acc0 = _mm256_add_pd(acc0, cmul(t0, _mm256_loadu_pd(xs + 2 * i)));
        acc1 = _mm256_add_pd(acc1, cmul(t1, _mm256_loadu_pd(xs + 2 * i + 4)));
    }
    cplx s = hsum_complex(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += table[idx[i]] * x[i];
    return s;
}

cplx cdot_avx2(std::span<const cplx> a, std::span<const cplx> b) {
    const std::size_t n = a.size();
    const double* pa = dp(a.data());
    const double* pb = dp(b.data());
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
        acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(pa + 2 * i + 4), _mm256_loadu_pd(pb + 2 * i + 4)));
    }
    cplx s = hsum_complex(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_weighted_avx2(std::span<const double> w, std::span<const cplx> c) {
    const std::size_t n = c.size();
    const double* pc = dp(c.data());
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d wd = weight_dup(w.data() + i);
        const __m256d v = _mm256_mul_pd(wd, _mm256_loadu_pd(pc + 2 * i));
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum_complex(acc).real() + hsum_complex(acc).imag();
    for (; i < n; ++i) s += w[i] * w[i] * std::norm(c[i]);
    return s;
}

double sum_abs_weighted_avx2(std::span<const double> w, std::span<const cplx> c) {
    const std::size_t n = c.size();
    const double* pc = dp(c.data());
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d mag = _mm256_sqrt_pd(norm2_dup(_mm256_loadu_pd(pc + 2 * i)));
        // Lanes 0 and 2 carry |c_i|, |c_{i+1}|; lanes 1 and 3 duplicate them.
        acc = _mm256_fmadd_pd(weight_dup(w.data() + i), mag, acc);
    }
    const cplx h = hsum_complex(acc);
    double s = 0.5 * (h.real() + h.imag());
    for (; i < n; ++i) s += w[i] * std::abs(c[i]);
    return s;
}

double max_abs_weighted_avx2(std::span<const double> w, std::span<const cplx> c) {
    const std::size_t n = c.size();
    const double* pc = dp(c.data());
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d mag = _mm256_sqrt_pd(norm2_dup(_mm256_loadu_pd(pc + 2 * i)));
        acc = _mm256_max_pd(acc, _mm256_mul_pd(weight_dup(w.data() + i), mag));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) s = std::max(s, w[i] * std::abs(c[i]));
    return s;
}

constexpr Kernels kAvx2{
    Isa::Avx2,           cdot_indexed_avx2,     cdot_avx2, sum_sq_weighted_avx2,
    sum_abs_weighted_avx2, max_abs_weighted_avx2,
};

} // namespace

const Kernels& detail::avx2_kernels() { return kAvx2; }

} // namespace aniso::simd
