#pragma once

// Numerical check of the ellipsoidal periodic Strang-Fix conditions and the
// constants entering the interpolation error bounds.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aniso/fspaces.hpp"
#include "aniso/interp.hpp"

namespace aniso {

enum class SFMode { Strict, Relaxed };

struct SFParams {
    double s = 1.0;      // order, > 0
    double alpha = 0.0;  // >= 0
    double q = 2.0;      // [1, inf]
    SFMode mode = SFMode::Strict;
};

struct SFWitness {
    IntVec h;
    IntVec z;
    double ratio = 0.0;
    std::string reason;
};

inline constexpr double kOriginTol = 1e-10;
inline constexpr double kShellTol = 1e-6;

struct SFReport {
    SFParams params;
    int zmax = 0;
    // b_z for ||z||_inf <= zmax, odometer order over [-zmax, zmax]^d.
    std::vector<double> b;
    double gamma_sf = 0.0;
    double last_shell_fraction = 0.0;  // q-th power mass of the outermost shell / total
    bool pass = false;
    std::optional<SFWitness> witness;  // first violated condition
    SFWitness peak;                    // (h, z) attaining the largest sigma_alpha(z) b_z

    double b_at(std::span<const Int> z) const;
};

// Tightest b_z over h ∈ G_S(M^T) and gamma_SF over ||z||_inf <= zmax.
// Throws InsufficientSupport if the interpolant does not represent those shells.
SFReport verify_sfc(const FundamentalInterpolant& ifun, const SFParams& params, int zmax);

struct SFOrderLevel {
    int j = 0;
    Int m = 0;
    double norm2 = 0.0;
    double gamma_sf = 0.0;
    bool single_pass = false;
};

struct SFOrderReport {
    SFParams params;
    std::vector<SFOrderLevel> levels;
    double growth = 0.0;  // least-squares slope of log gamma_SF against log ||M_j||_2, j >= 1
    double allowed = 0.0;
    bool pass = false;
    std::optional<SFWitness> witness;  // largest ratio on the finest level
};

inline constexpr double kGrowthSlack = 0.5;

// Order check over the dilation family M_j = 2^j M_0, j = 0..levels-1. A valid
// order keeps gamma_SF / ||M_j||_2^alpha bounded; an overclaimed order makes it
// grow polynomially. Passes iff every level passes verify_sfc and the fitted
// growth exponent is at most alpha + kGrowthSlack.
SFOrderReport verify_sfc_order(const std::function<FundamentalInterpolant(const PatternPtr&)>& build,
                               const IntMatrix& m0, int levels, const SFParams& params, int zmax);

struct TruncatedConstant {
    double value = 0.0;
    double last_shell_fraction = 0.0;
};

// m max_h (|c_h|^q + ||M||^{alpha q} sum_{z != 0} |sigma_alpha(z) c_{h + M^T z}|^q)^{1/q}
// truncated to ||z||_inf <= zmax (sup form for q = inf).
TruncatedConstant gamma_ip(const FundamentalInterpolant& ifun, double alpha, double q, int zmax);

struct GammaSm {
    double value = 0.0;    // prefactor * (partial + tail)^{1/p}: an upper value
    double partial = 0.0;  // sum over 0 < ||z||_inf <= Z
    double tail = 0.0;     // bound on the rest
    // The smaller constant (1+d)^{alpha/2} 2^{-mu} (sum ||2|z| - 1||^{-p mu})^{1/p}; it does not
    // bound the aliasing error in general and is reported for comparison only.
    double printed = 0.0;
};

// (1+d)^{alpha/2} 2^{mu} (sum_{z != 0} ||(2|z| - 1)_+||_2^{-p mu})^{1/p}, 1/p + 1/q = 1
// (sup form for q = 1). Throws DivergentSeries unless mu > d (1 - 1/q).
GammaSm gamma_sm(double mu, double alpha, double q, int d, int zcut = 100);

struct CRho {
    double rho = 0.0;
    double c = 0.0;
    bool rho_is_s = true;
};

CRho c_rho(double gamma_sf, double gamma_ip, double gamma_sm, double s, double mu, double alpha, int d);

} // namespace aniso
