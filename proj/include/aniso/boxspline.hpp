#pragma once

// Box splines in the Fourier domain and their periodization on a pattern.
//
//   hat B(xi) = prod_dir sinc(dir^T xi / 2)^{p_dir},   sinc(t) = sin(t) / t,
//   c_k(B^M)  = hat B(2 pi M^{-T} k) / m.

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "aniso/intlat.hpp"
#include "aniso/ptransform.hpp"

namespace aniso {

struct BoxSplineSpec {
    int d = 2;
    std::vector<IntVec> directions;
    std::vector<int> p;  // multiplicity per direction, >= 1

    // Directions e_1, e_2, e_1 + e_2.
    static BoxSplineSpec three_directional(int p1, int p2, int p3);
    // Directions e_j (j = 1..d), then e_i + e_j (i < j).
    static BoxSplineSpec symmetric(int d, std::vector<int> p);
    // The above plus e_i - e_j (i < j); d = 2 gives the 4-direction box spline.
    static BoxSplineSpec full(int d, std::vector<int> p);

    // "d; p1,p2,..." choosing the family from the number of multiplicities.
    static BoxSplineSpec parse(const std::string& text);
    std::string to_string() const;

    void validate() const;
};

double sinc(double t);

double boxspline_hat(std::span<const double> xi, const BoxSplineSpec& spec);

// (1/m) hat B(2 pi M^{-T} k); the sinc arguments are reduced from exact rationals,
// so coefficients at sinc zeros are exactly 0.
double periodized_coeff(std::span<const Int> k, const BoxSplineSpec& spec, const Pattern& p);

struct PeriodizationWindow {
    int radius = 32;
    double tail_eps = 1e-8;
    // Norm over z used for the reported tail (1, 2, ..., or kInf for the largest omitted term).
    double tail_q = std::numeric_limits<double>::infinity();
};

struct PeriodizedSeries {
    FourierSeries series;
    int radius = 0;           // every h + M^T z with ||z||_inf <= radius is represented
    double tail_bound = 0.0;  // bound on the omitted terms, relative to m c_0 = 1
};

// Decay exponent r with |hat B(xi + 2 pi z)| <= (4 / (pi n))^r for ||z||_inf = n >= 4
// and xi in [-pi, pi]^d. Uses only the directions e_i and e_i + e_j.
int tail_decay_exponent(const BoxSplineSpec& spec);

// Rigorous bound on (sum_{||z||_inf > R} sup_xi |hat B(xi + 2 pi z)|^q)^{1/q}.
double periodization_tail(const BoxSplineSpec& spec, int radius, double q);

// Throws TailTooLarge when the tail bound exceeds win.tail_eps.
PeriodizedSeries periodize(const BoxSplineSpec& spec, const PatternPtr& p, const PeriodizationWindow& win);

// Minimum over hyperplanes spanned by directions of the total multiplicity outside it.
int sf_order(const BoxSplineSpec& spec);

} // namespace aniso
