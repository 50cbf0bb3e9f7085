#pragma once

// Fundamental interpolants of translate spaces and the interpolation operator.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aniso/intlat.hpp"
#include "aniso/ptransform.hpp"

namespace aniso {

struct FundamentalInterpolant {
    FourierSeries series;  // c_k(I_M)
    PatternPtr pattern;
    CoeffVector a_hat;     // (m c_h^M(phi))^{-1}; 0 on degenerate classes
    std::vector<IntVec> incorrect_modes;
    // Largest R such that every h + M^T z with ||z||_inf <= R is represented
    // (absent entries are exact zeros). nullopt: the stored support is exact.
    std::optional<int> coverage;
    // Position in pattern->freqs() of the class of each stored mode (may be left
    // empty by hand-built interpolants; consumers then recompute it).
    std::vector<std::uint32_t> classes;
};

// ifun.classes if populated, otherwise computed.
std::vector<std::uint32_t> mode_classes(const FundamentalInterpolant& ifun);

// c_k -> e^{-2 pi i k^T y} c_k for the pattern point y = M^{-1} g.
FourierSeries translate(const FourierSeries& f, const LatticePoint& y, const Pattern& p);

// sum_k c_k e^{i k^T x}.
cplx evaluate(const FourierSeries& f, std::span<const double> x);

// a_hat with c_{h + M^T z}(xi) = a_hat_h c_{h + M^T z}(phi) for every stored mode.
// Throws NotInSpace naming the first inconsistent index pair.
CoeffVector membership_coeffs(const FourierSeries& xi, const FourierSeries& phi, const PatternPtr& p,
                              double tol = 1e-10);

struct ExistenceReport {
    CoeffVector folded;              // c_h^M(phi)
    std::vector<std::size_t> zeros;  // positions in freqs() with |c_h^M| <= eps
    double eps = 0.0;
    bool exists() const { return zeros.empty(); }
};

inline constexpr double kExistenceRelTol = 1e-12;

ExistenceReport check_existence(const FourierSeries& phi, const PatternPtr& p,
                                double rel_tol = kExistenceRelTol);

// c_k(I_M) = c_k(phi) / (m c^M_{[k]}(phi)). With allow_incorrect, degenerate
// classes get c_h(I_M) = 1/m on h ∈ G_S(M^T) and lose their other modes;
// without it they raise NonExistent.
FundamentalInterpolant fundamental_interpolant(const FourierSeries& phi, const PatternPtr& p,
                                               bool allow_incorrect = false,
                                               std::optional<int> coverage = std::nullopt,
                                               double rel_tol = kExistenceRelTol);

// c_k(L_M f) = m c^M_{[k]}(f) c_k(I_M) over the support of I_M.
FourierSeries interpolation_operator(const SampleVector& samples, const FundamentalInterpolant& ifun);

// Restriction to G_S(M^T).
FourierSeries fourier_partial_sum(const FourierSeries& f, const Pattern& p);

} // namespace aniso
