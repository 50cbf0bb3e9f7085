#pragma once

// Ellipsoidal weights sigma_beta^M(k) = (1 + ||M||_2^2 ||M^{-T} k||_2^2)^{beta/2}
// and the weighted l_q norms of finite Fourier series.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "aniso/intlat.hpp"
#include "aniso/ptransform.hpp"

namespace aniso {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct WeightSpec {
    double beta = 0.0;
    const PatternMatrix* pmt = nullptr;  // M^T
    double norm2 = 1.0;                  // ||M||_2
    double q = 2.0;                      // in [1, inf]

    static WeightSpec make(double beta, const Pattern& p, double q = 2.0) {
        return {beta, &p.matrix_t(), p.spectral().norm2, q};
    }
};

// ||M^{-T} k||_2^2 from adj(M^T) k / det, with pmt the pattern matrix of M^T.
double inv_t_norm2_sq(std::span<const Int> k, const PatternMatrix& pmt);

double weight(std::span<const Int> k, const WeightSpec& ws);

// ||{sigma_alpha(k) c_k(f)} | l_q|| with q taken from ws (ws.beta is ignored).
double a_norm(const FourierSeries& f, double alpha, const WeightSpec& ws);

// l_q norm of w_i |c_i| for already computed weights.
double weighted_lq(std::span<const double> w, std::span<const cplx> c, double q);

struct SubmultReport {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0;  // max over trials of LHS / RHS
    double constant = 0.0;   // C
};

// Samples (k, z) and checks sigma_beta(k + M^T z) <= C sigma_beta(k) sigma_beta(z).
// Strict mode needs an expanding M (NotExpanding otherwise) and uses C = ||M||_2^beta;
// relaxed mode only needs ||M||_2 >= 1 and uses C = 2^beta ||M||_2^beta.
SubmultReport check_submultiplicativity(std::size_t trials, double beta, const Pattern& p,
                                        bool relaxed = false, std::uint64_t seed = 1,
                                        Int range = 64);

} // namespace aniso
