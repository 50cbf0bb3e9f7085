#include "aniso/fspaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "aniso/errors.hpp"
#include "aniso/simd/kernels.hpp"

namespace aniso {

double inv_t_norm2_sq(std::span<const Int> k, const PatternMatrix& pmt) {
    const int d = pmt.dim();
    const IntMatrix& adj = pmt.adjugate();
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        Wide n = 0;
        for (int j = 0; j < d; ++j) n += static_cast<Wide>(adj(i, j)) * k[j];
        const double v = static_cast<double>(n);
        acc += v * v;
    }
    const double m = static_cast<double>(pmt.m());
    return acc / (m * m);
}

double weight(std::span<const Int> k, const WeightSpec& ws) {
    if (ws.beta == 0.0) return 1.0;
    const double r2 = ws.norm2 * ws.norm2 * inv_t_norm2_sq(k, *ws.pmt);
    return std::pow(1.0 + r2, 0.5 * ws.beta);
}

double weighted_lq(std::span<const double> w, std::span<const cplx> c, double q) {
    const auto& K = simd::kernels();
    if (std::isinf(q)) return K.max_abs_weighted(w, c);
    if (q == 1.0) return K.sum_abs_weighted(w, c);
    if (q == 2.0) return std::sqrt(K.sum_sq_weighted(w, c));
    // General q: scale by the maximum first so that large weights cannot overflow.
    const double mx = K.max_abs_weighted(w, c);
    if (mx == 0.0) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += std::pow(w[i] * std::abs(c[i]) / mx, q);
    return mx * std::pow(acc, 1.0 / q);
}

double a_norm(const FourierSeries& f, double alpha, const WeightSpec& ws) {
    WeightSpec w = ws;
    w.beta = alpha;
    std::vector<double> weights(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) weights[i] = weight(f.index(i), w);
    return weighted_lq(weights, f.coeffs(), ws.q);
}

SubmultReport check_submultiplicativity(std::size_t trials, double beta, const Pattern& p, bool relaxed,
                                        std::uint64_t seed, Int range) {
    const double norm2 = p.spectral().norm2;
    if (!relaxed && !is_expanding(p.spectral())) {
        std::ostringstream os;
        os << "largest eigenvalue magnitude " << p.spectral().eig_mags.back() << " < 2";
        throw NotExpanding(os.str());
    }
    if (relaxed && norm2 < 1.0 - kExpandingSlack) throw NotExpanding("||M||_2 < 1");

    const WeightSpec ws = WeightSpec::make(beta, p);
    const double c = relaxed ? std::pow(2.0 * norm2, beta) : std::pow(norm2, beta);
    const int d = p.dim();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Int> dist(-range, range);

    SubmultReport rep;
    rep.constant = c;
    IntVec k(d), z(d);
    for (std::size_t t = 0; t < trials; ++t) {
        for (int i = 0; i < d; ++i) k[i] = dist(rng);
        for (int i = 0; i < d; ++i) z[i] = dist(rng);
        const IntVec mz = p.matrix_t().matrix().apply(z);
        IntVec kz(d);
        for (int i = 0; i < d; ++i) kz[i] = k[i] + mz[i];
        const double lhs = weight(kz, ws);
        const double rhs = c * weight(k, ws) * weight(z, ws);
        const double ratio = lhs / rhs;
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > 1.0 + 1e-12) ++rep.violations;
        ++rep.trials;
    }
    return rep;
}

} // namespace aniso
