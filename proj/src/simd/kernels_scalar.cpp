#include <algorithm>
#include <cmath>

#include "aniso/simd/kernels.hpp"

namespace aniso::simd {

namespace {

cplx cdot_indexed_scalar(std::span<const cplx> table, std::span<const std::uint32_t> idx,
                         std::span<const cplx> x) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const cplx t = table[idx[i]];
        re += t.real() * x[i].real() - t.imag() * x[i].imag();
        im += t.real() * x[i].imag() + t.imag() * x[i].real();
    }
    return {re, im};
}

cplx cdot_scalar(std::span<const cplx> a, std::span<const cplx> b) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    }
    return {re, im};
}

double sum_sq_weighted_scalar(std::span<const double> w, std::span<const cplx> c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        s += w[i] * w[i] * (c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
    return s;
}

double sum_abs_weighted_scalar(std::span<const double> w, std::span<const cplx> c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        s += w[i] * std::sqrt(c[i].real() * c[i].real() + c[i].imag() * c[i].imag());
    return s;
}

double max_abs_weighted_scalar(std::span<const double> w, std::span<const cplx> c) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        s = std::max(s, w[i] * std::sqrt(c[i].real() * c[i].real() + c[i].imag() * c[i].imag()));
    return s;
}

constexpr Kernels kScalar{
    Isa::Scalar,           cdot_indexed_scalar,     cdot_scalar, sum_sq_weighted_scalar,
    sum_abs_weighted_scalar, max_abs_weighted_scalar,
};

} // namespace

const Kernels& detail::scalar_kernels() { return kScalar; }

} // namespace aniso::simd
