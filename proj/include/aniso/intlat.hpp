#pragma once

// Exact integer arithmetic for sampling patterns on the torus.
//
// A regular integer matrix M defines the lattice M^{-1} Z^d. Its pattern P_S(M)
// is the set of lattice points in [-1/2, 1/2)^d and its generating set
// G_S(M) = M [-1/2, 1/2)^d ∩ Z^d. Pattern points are carried as the integer
// vector g = M y, so nothing in this module ever touches floating point.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace aniso {

using Int = std::int64_t;
using Wide = __int128;
using IntVec = std::vector<Int>;

// Frequency index k ∈ Z^d.
using FreqIndex = IntVec;

class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int d) : d_(d), a_(static_cast<std::size_t>(d) * d, 0) {}
    IntMatrix(int d, std::vector<Int> row_major);
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(int d);

    int dim() const noexcept { return d_; }
    Int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * d_ + j]; }
    Int& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * d_ + j]; }
    const std::vector<Int>& data() const noexcept { return a_; }

    IntMatrix transposed() const;
    IntMatrix scaled(Int c) const;
    IntMatrix operator*(const IntMatrix& o) const;
    // Overflow-checked product M v.
    IntVec apply(std::span<const Int> v) const;

    std::string to_string() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    int d_ = 0;
    std::vector<Int> a_;
};

// Exact determinant; cofactor expansion for d <= 4, Bareiss elimination beyond.
Wide determinant(const IntMatrix& a);

struct Fraction {
    Int num = 0;
    Int den = 1;  // > 0, gcd(num, den) == 1
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;
    friend bool operator==(const Fraction&, const Fraction&) = default;
};

Fraction make_fraction(Wide num, Wide den);
Fraction parse_fraction(const std::string& text);

// Validated regular integer matrix with exact determinant and adjugate.
class PatternMatrix {
public:
    // Throws SingularMatrix when det = 0 and OverflowRisk when exact
    // intermediates would not fit 128-bit arithmetic.
    static PatternMatrix validate(const IntMatrix& raw);

    int dim() const noexcept { return m_.dim(); }
    const IntMatrix& matrix() const noexcept { return m_; }
    const IntMatrix& adjugate() const noexcept { return adj_; }
    Int det() const noexcept { return det_; }
    Int m() const noexcept { return det_ < 0 ? -det_ : det_; }
    int det_sign() const noexcept { return det_ < 0 ? -1 : 1; }

    // The pattern matrix of M^T (adj(M^T) = adj(M)^T).
    PatternMatrix transposed() const;

    // Returns n with M^{-1} k = n / m exactly (n = sign(det) adj k).
    std::vector<Wide> scaled_inverse(std::span<const Int> k) const;
    // M^{-1} k ∈ [-1/2, 1/2)^d, decided by -m <= 2 n_i < m.
    bool in_cell(std::span<const Int> k) const;
    // z with k - M z ∈ G_S(M); z_i = floor((2 n_i + m) / (2 m)).
    IntVec quotient(std::span<const Int> k) const;
    // Canonical representative of k modulo M, i.e. k - M quotient(k).
    IntVec reduce(std::span<const Int> k) const;
    // M^{-1} k as exact fractions.
    std::vector<Fraction> coordinates(std::span<const Int> k) const;

    // Half-widths of the integer bounding box of M [-1/2, 1/2]^d.
    IntVec box_radius() const;

    friend bool operator==(const PatternMatrix& a, const PatternMatrix& b) { return a.m_ == b.m_; }

private:
    IntMatrix m_;
    IntMatrix adj_;
    Int det_ = 0;
};

// A pattern point y = M^{-1} g, stored by its integer image g ∈ G_S(M).
struct LatticePoint {
    IntVec g;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

// G_S(M) (or G_S(M^T) when transposed), lexicographically sorted.
std::vector<IntVec> enumerate_generating_set(const PatternMatrix& pm, bool transposed);

// P_S(M) in the order of enumerate_generating_set(pm, false).
std::vector<LatticePoint> enumerate_pattern(const PatternMatrix& pm);

// Unique h ∈ G_S(M^T) with h ≡ k mod M^T.
FreqIndex reduce_freq(std::span<const Int> k, const PatternMatrix& pm);

bool is_pattern_member(const LatticePoint& a, const PatternMatrix& pm);

// Group law on P_S(M): [a + b] reduced into [-1/2, 1/2)^d.
LatticePoint pattern_add(const LatticePoint& a, const LatticePoint& b, const PatternMatrix& pm);
LatticePoint pattern_negate(const LatticePoint& a, const PatternMatrix& pm);

// Matrix text format: d on the first line, then d rows of d integers.
IntMatrix parse_matrix(const std::string& text);
std::string format_matrix(const IntMatrix& a);

// Integer floor division for 128-bit operands (b > 0).
Wide floor_div(Wide a, Wide b);
// a mod b in [0, b) for b > 0.
Wide floor_mod(Wide a, Wide b);

} // namespace aniso
