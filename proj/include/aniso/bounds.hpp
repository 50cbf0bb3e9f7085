#pragma once

// Interpolation error in A^alpha_{M,q} and audits of the error bounds.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aniso/boxspline.hpp"
#include "aniso/interp.hpp"
#include "aniso/strangfix.hpp"

namespace aniso {

struct Dirichlet {};

// Either the Dirichlet kernel sum_{h in G_S(M^T)} e^{i h x} or a periodized box spline.
struct KernelSpec {
    std::variant<Dirichlet, BoxSplineSpec> kind;

    // "dirichlet" or the box-spline text "d; p1,p2,...".
    static KernelSpec parse(const std::string& text);
    std::string to_string() const;
    bool is_dirichlet() const { return std::holds_alternative<Dirichlet>(kind); }
};

FourierSeries dirichlet_kernel(const Pattern& p);

struct BuiltInterpolant {
    FundamentalInterpolant ifun;
    double tail_bound = 0.0;  // periodization tail, 0 for Dirichlet
};

BuiltInterpolant build_interpolant(const KernelSpec& kernel, const PatternPtr& p, const PeriodizationWindow& win,
                                   bool allow_incorrect = false);

struct ErrorBreakdown {
    double total = 0.0;     // ||f - L_M f||
    double trig = 0.0;      // ||S_M f - L_M S_M f||
    double partial = 0.0;   // ||f - S_M f||
    double aliasing = 0.0;  // ||L_M (f - S_M f)||
    double node_residual = 0.0;  // max_y |L_M f(2 pi y) - f(2 pi y)|
};

ErrorBreakdown interp_error(const FourierSeries& f, const FundamentalInterpolant& ifun, double alpha, double q);

struct TheoremCheck {
    double measured = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // measured / rhs, 0 when both vanish
    bool holds(double tol = 1e-9) const { return ratio <= 1.0 + tol; }
};

inline constexpr double kTheoremTol = 1e-9;

// ||f - L_M f|A^alpha|| <= (1/||M||)^s gamma_SF ||f|A^{alpha+s}|| for f in T_M;
// relaxed mode replaces 1/||M|| by kappa/||M||. gamma_SF comes from sf.
TheoremCheck check_trig_theorem(const FourierSeries& f, const FundamentalInterpolant& ifun, const SFReport& sf);

// ||f - S_M f|A^alpha|| <= (2/||M||)^{mu-alpha} ||f|A^mu||.
TheoremCheck check_partial_sum_theorem(const FourierSeries& f, const Pattern& p, double alpha, double mu, double q);

// ||L_M(f - S_M f)|A^alpha|| <= gamma_IP gamma_Sm (1/||M||)^{mu-alpha} ||f|A^mu||.
TheoremCheck check_aliasing_theorem(const FourierSeries& f, const FundamentalInterpolant& ifun, double alpha,
                                    double mu, double q, int zmax);

struct ExperimentSpec {
    IntMatrix base;             // M_0
    std::vector<int> scales{0, 1, 2, 3};
    KernelSpec kernel;
    PeriodizationWindow window;
    double alpha = 0.0;
    double mu = 6.0;
    double q = 2.0;
    std::optional<double> order;  // claimed Strang-Fix order; default from the kernel
    SFMode mode = SFMode::Strict;
    // Test function c_k = sigma^{M_0}_{-gamma}(k) on ||k||_inf <= profile_radius.
    double profile_decay = 0.0;   // gamma; 0 selects mu + d/2 + 1
    int profile_radius = 32;
};

struct BoundRow {
    int j = 0;
    Int m = 0;
    double norm2 = 0.0;
    double error = 0.0;      // measured error plus profile tail mass
    double bound = 0.0;      // C_rho (1/||M||)^rho ||f|A^mu|| (kappa/||M|| when relaxed)
    double ratio = 0.0;
    double node_residual = 0.0;
    double gamma_sf = 0.0;
    double gamma_ip = 0.0;
    double c_rho = 0.0;
    bool sf_pass = false;
    ErrorBreakdown parts;
};

struct BoundReport {
    std::vector<BoundRow> rows;
    double rho = 0.0;
    double order = 0.0;
    double gamma_sm = 0.0;
    double f_norm_mu = 0.0;
    double profile_tail = 0.0;
    double fitted_rate = 0.0;  // least-squares slope of log error vs log ||M_j||, j >= 1
    double fit_residual = 0.0;
    bool verdict = false;      // every ratio <= 1 + kTheoremTol and every SF check passed
};

FourierSeries decay_profile(const Pattern& base, double gamma, int radius);

// Bound on the A^alpha_q mass of the profile beyond ||k||_inf > radius.
double profile_tail_mass(int d, double gamma, double alpha, double q, int radius);

BoundReport convergence_study(const ExperimentSpec& spec);

std::string bound_report_csv(const BoundReport& r);
std::string bound_report_svg(const BoundReport& r);

} // namespace aniso
