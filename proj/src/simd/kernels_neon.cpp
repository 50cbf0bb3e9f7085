// AArch64 Advanced SIMD variant; one complex double per 128-bit register.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "aniso/simd/kernels.hpp"

namespace aniso::simd {

namespace {

inline const double* dp(const cplx* c) { return reinterpret_cast<const double*>(c); }

// [ar ai] * [br bi] = [ar br - ai bi, ar bi + ai br]
inline float64x2_t cmul(float64x2_t a, float64x2_t b) {
    const float64x2_t b_re = vdupq_laneq_f64(b, 0);
    const float64x2_t b_im = vdupq_laneq_f64(b, 1);
    const float64x2_t a_sw = vextq_f64(a, a, 1);
    const float64x2_t sign = {-1.0, 1.0};
    return vfmaq_f64(vmulq_f64(a, b_re), vmulq_f64(a_sw, b_im), sign);
}

cplx cdot_indexed_neon(std::span<const cplx> table, std::span<const std::uint32_t> idx,
                       std::span<const cplx> x) {
    const double* tab = dp(table.data());
    const double* xs = dp(x.data());
    float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
    const std::size_t n = idx.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc0 = vaddq_f64(acc0, cmul(vld1q_f64(tab + 2 * std::size_t(idx[i])), vld1q_f64(xs + 2 * i)));
        acc1 = vaddq_f64(acc1, cmul(vld1q_f64(tab + 2 * std::size_t(idx[i + 1])), vld1q_f64(xs + 2 * i + 2)));
    }
    const float64x2_t acc = vaddq_f64(acc0, acc1);
    cplx s{vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
    for (; i < n; ++i) s += table[idx[i]] * x[i];
    return s;
}

cplx cdot_neon(std::span<const cplx> a, std::span<const cplx> b) {
    const double* pa = dp(a.data());
    const double* pb = dp(b.data());
    float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
    const std::size_t n = a.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc0 = vaddq_f64(acc0, cmul(vld1q_f64(pa + 2 * i), vld1q_f64(pb + 2 * i)));
        acc1 = vaddq_f64(acc1, cmul(vld1q_f64(pa + 2 * i + 2), vld1q_f64(pb + 2 * i + 2)));
    }
    const float64x2_t acc = vaddq_f64(acc0, acc1);
    cplx s{vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_weighted_neon(std::span<const double> w, std::span<const cplx> c) {
    const double* pc = dp(c.data());
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const float64x2_t v = vmulq_n_f64(vld1q_f64(pc + 2 * i), w[i]);
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

double sum_abs_weighted_neon(std::span<const double> w, std::span<const cplx> c) {
    const double* pc = dp(c.data());
    float64x2_t acc = vdupq_n_f64(0.0);
    const std::size_t n = c.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(pc + 2 * i);
        const float64x2_t b = vld1q_f64(pc + 2 * i + 2);
        // pairwise add of squares gives [|c_i|^2, |c_{i+1}|^2]
        const float64x2_t mag = vsqrtq_f64(vpaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b)));
        acc = vfmaq_f64(acc, vld1q_f64(w.data() + i), mag);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += w[i] * std::abs(c[i]);
    return s;
}

double max_abs_weighted_neon(std::span<const double> w, std::span<const cplx> c) {
    const double* pc = dp(c.data());
    float64x2_t acc = vdupq_n_f64(0.0);
    const std::size_t n = c.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(pc + 2 * i);
        const float64x2_t b = vld1q_f64(pc + 2 * i + 2);
        const float64x2_t mag = vsqrtq_f64(vpaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b)));
        acc = vmaxq_f64(acc, vmulq_f64(vld1q_f64(w.data() + i), mag));
    }
    double s = vmaxvq_f64(acc);
    for (; i < n; ++i) s = std::max(s, w[i] * std::abs(c[i]));
    return s;
}

constexpr Kernels kNeon{
    Isa::Neon,           cdot_indexed_neon,     cdot_neon, sum_sq_weighted_neon,
    sum_abs_weighted_neon, max_abs_weighted_neon,
};

} // namespace

const Kernels& detail::neon_kernels() { return kNeon; }

} // namespace aniso::simd
