#pragma once

#include <vector>

#include "aniso/intlat.hpp"

namespace aniso {

// Floating point spectral quantities of a pattern matrix M.
struct SpectralData {
    std::vector<double> gram_eigs;  // eigenvalues of M^T M, ascending
    double norm2 = 0.0;             // ||M||_2
    double inv_norm2 = 0.0;         // ||M^{-1}||_2
    double kappa = 0.0;             // ||M||_2 ||M^{-1}||_2
    std::vector<double> eig_mags;   // |lambda_i(M)|, ascending
};

inline constexpr double kJacobiTolerance = 1e-13;
inline constexpr double kExpandingSlack = 1e-12;

// Throws ConvergenceFailure if the symmetric Jacobi sweep does not settle
// within 10 d^2 sweeps.
SpectralData spectral_data(const PatternMatrix& pm);

// |lambda_d(M)| >= 2 (up to kExpandingSlack).
bool is_expanding(const SpectralData& sd);

// Eigenvalues of a symmetric matrix (row-major, n x n) by cyclic Jacobi, ascending.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

} // namespace aniso
