#include "aniso/intlat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "aniso/errors.hpp"

namespace aniso {

namespace {

constexpr long double kWideLimit = 0x1p120L;
constexpr long double kIntLimit = 0x1p62L;
constexpr long double kMaxEnumeration = 2.0e8L;

Wide wabs(Wide v) { return v < 0 ? -v : v; }

Int narrow(Wide v, const char* what) {
    if (v > static_cast<Wide>(std::numeric_limits<Int>::max()) ||
        v < static_cast<Wide>(std::numeric_limits<Int>::min()))
        throw OverflowRisk(what);
    return static_cast<Int>(v);
}

Wide det_cofactor(const IntMatrix& a) {
    const int d = a.dim();
    if (d == 0) return 1;
    if (d == 1) return a(0, 0);
    if (d == 2) return static_cast<Wide>(a(0, 0)) * a(1, 1) - static_cast<Wide>(a(0, 1)) * a(1, 0);
    Wide sum = 0;
    for (int j = 0; j < d; ++j) {
        if (a(0, j) == 0) continue;
        IntMatrix minor(d - 1);
        for (int r = 1; r < d; ++r)
            for (int c = 0, cc = 0; c < d; ++c)
                if (c != j) minor(r - 1, cc++) = a(r, c);
        const Wide term = static_cast<Wide>(a(0, j)) * det_cofactor(minor);
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

// Fraction-free Gaussian elimination; every intermediate is a minor of a.
Wide det_bareiss(const IntMatrix& a) {
    const int d = a.dim();
    std::vector<Wide> w(a.data().begin(), a.data().end());
    auto at = [&](int i, int j) -> Wide& { return w[static_cast<std::size_t>(i) * d + j]; };
    Wide sign = 1;
    Wide prev = 1;
    for (int k = 0; k < d - 1; ++k) {
        if (at(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < d; ++i)
                if (at(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            for (int j = 0; j < d; ++j) std::swap(at(k, j), at(swap, j));
            sign = -sign;
        }
        for (int i = k + 1; i < d; ++i)
            for (int j = k + 1; j < d; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return sign * at(d - 1, d - 1);
}

long double hadamard_bound(const IntMatrix& a) {
    long double bound = 1.0L;
    for (int i = 0; i < a.dim(); ++i) {
        long double row = 0.0L;
        for (int j = 0; j < a.dim(); ++j) row += static_cast<long double>(a(i, j)) * a(i, j);
        bound *= std::max(1.0L, std::sqrt(row));
    }
    return bound;
}

Wide gcd_wide(Wide a, Wide b) {
    a = wabs(a);
    b = wabs(b);
    while (b != 0) {
        const Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

Wide floor_div(Wide a, Wide b) {
    Wide q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Wide floor_mod(Wide a, Wide b) {
    Wide r = a % b;
    if (r < 0) r += b;
    return r;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(int d, std::vector<Int> row_major) : d_(d), a_(std::move(row_major)) {
    if (d < 1 || a_.size() != static_cast<std::size_t>(d) * d)
        throw ParseError("matrix data does not match dimension " + std::to_string(d));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
    : d_(static_cast<int>(rows.size())) {
    for (const auto& r : rows) {
        if (r.size() != rows.size()) throw ParseError("matrix must be square");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(int d) {
    IntMatrix e(d);
    for (int i = 0; i < d; ++i) e(i, i) = 1;
    return e;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(d_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::scaled(Int c) const {
    IntMatrix s(d_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        s.a_[i] = narrow(static_cast<Wide>(a_[i]) * c, "matrix scaling overflows 64 bits");
    return s;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix p(d_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            Wide s = 0;
            for (int k = 0; k < d_; ++k) s += static_cast<Wide>((*this)(i, k)) * o(k, j);
            p(i, j) = narrow(s, "matrix product overflows 64 bits");
        }
    return p;
}

IntVec IntMatrix::apply(std::span<const Int> v) const {
    IntVec out(d_);
    for (int i = 0; i < d_; ++i) {
        Wide s = 0;
        for (int j = 0; j < d_; ++j) s += static_cast<Wide>((*this)(i, j)) * v[j];
        out[i] = narrow(s, "matrix-vector product overflows 64 bits");
    }
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < d_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < d_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

Wide determinant(const IntMatrix& a) {
    if (hadamard_bound(a) > kWideLimit) throw OverflowRisk("determinant exceeds 128-bit range");
    return a.dim() <= 4 ? det_cofactor(a) : det_bareiss(a);
}

// ---------------------------------------------------------------------------
// Fraction

Fraction make_fraction(Wide num, Wide den) {
    if (den == 0) throw ParseError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const Wide g = gcd_wide(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {narrow(num, "fraction numerator"), narrow(den, "fraction denominator")};
}

std::string Fraction::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Fraction parse_fraction(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const Int n = std::stoll(text, &used);
            if (used != text.size()) throw ParseError("bad fraction '" + text + "'");
            return {n, 1};
        }
        const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        const Int n = std::stoll(a, &used);
        if (used != a.size()) throw ParseError("bad fraction '" + text + "'");
        const Int d = std::stoll(b, &used);
        if (used != b.size()) throw ParseError("bad fraction '" + text + "'");
        return make_fraction(n, d);
    } catch (const std::logic_error&) {
        throw ParseError("bad fraction '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// PatternMatrix

PatternMatrix PatternMatrix::validate(const IntMatrix& raw) {
    const int d = raw.dim();
    if (d < 1) throw ParseError("matrix dimension must be at least 1");
    if (hadamard_bound(raw) > kIntLimit) throw OverflowRisk("determinant bound exceeds 2^62");

    PatternMatrix pm;
    pm.m_ = raw;
    pm.det_ = narrow(determinant(raw), "determinant");
    if (pm.det_ == 0) throw SingularMatrix();

    pm.adj_ = IntMatrix(d);
    if (d == 1) {
        pm.adj_(0, 0) = 1;
    } else {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                IntMatrix minor(d - 1);
                for (int r = 0, rr = 0; r < d; ++r) {
                    if (r == i) continue;
                    for (int c = 0, cc = 0; c < d; ++c)
                        if (c != j) minor(rr, cc++) = raw(r, c);
                    ++rr;
                }
                const Wide cof = determinant(minor);
                pm.adj_(j, i) = narrow((i + j) % 2 == 0 ? cof : -cof, "adjugate entry");
            }
    }
    return pm;
}

PatternMatrix PatternMatrix::transposed() const {
    PatternMatrix t;
    t.m_ = m_.transposed();
    t.adj_ = adj_.transposed();
    t.det_ = det_;
    return t;
}

std::vector<Wide> PatternMatrix::scaled_inverse(std::span<const Int> k) const {
    const int d = dim();
    long double bound = 0.0L;
    Int amax = 0;
    for (Int v : adj_.data()) amax = std::max(amax, v < 0 ? -v : v);
    for (int j = 0; j < d; ++j) bound += std::fabs(static_cast<long double>(k[j]));
    if (bound * static_cast<long double>(amax) > kWideLimit)
        throw OverflowRisk("adjugate product exceeds 128-bit range");

    std::vector<Wide> n(d);
    const Wide s = det_sign();
    for (int i = 0; i < d; ++i) {
        Wide acc = 0;
        for (int j = 0; j < d; ++j) acc += static_cast<Wide>(adj_(i, j)) * k[j];
        n[i] = s * acc;
    }
    return n;
}

bool PatternMatrix::in_cell(std::span<const Int> k) const {
    const Wide mm = m();
    for (Wide n : scaled_inverse(k))
        if (2 * n < -mm || 2 * n >= mm) return false;
    return true;
}

IntVec PatternMatrix::quotient(std::span<const Int> k) const {
    const Wide mm = m();
    const auto n = scaled_inverse(k);
    IntVec z(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) z[i] = narrow(floor_div(2 * n[i] + mm, 2 * mm), "quotient");
    return z;
}

IntVec PatternMatrix::reduce(std::span<const Int> k) const {
    const int d = dim();
    const IntVec z = quotient(k);
    IntVec h(d);
    for (int i = 0; i < d; ++i) {
        Wide acc = k[i];
        for (int j = 0; j < d; ++j) acc -= static_cast<Wide>(m_(i, j)) * z[j];
        h[i] = narrow(acc, "reduced representative");
    }
    return h;
}

std::vector<Fraction> PatternMatrix::coordinates(std::span<const Int> k) const {
    const auto n = scaled_inverse(k);
    std::vector<Fraction> out;
    out.reserve(n.size());
    for (Wide v : n) out.push_back(make_fraction(v, m()));
    return out;
}

IntVec PatternMatrix::box_radius() const {
    IntVec r(dim());
    for (int i = 0; i < dim(); ++i) {
        Wide twice = 0;
        for (int j = 0; j < dim(); ++j) twice += wabs(m_(i, j));
        r[i] = narrow(twice / 2, "bounding box");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Enumeration and the pattern group

std::vector<IntVec> enumerate_generating_set(const PatternMatrix& pm, bool transposed) {
    const PatternMatrix a = transposed ? pm.transposed() : pm;
    const int d = a.dim();
    const IntVec r = a.box_radius();

    long double volume = 1.0L;
    for (Int ri : r) volume *= 2.0L * static_cast<long double>(ri) + 1.0L;
    if (volume > kMaxEnumeration) throw OverflowRisk("enumeration bounding box too large");

    std::vector<IntVec> out;
    out.reserve(static_cast<std::size_t>(a.m()));
    IntVec k(d);
    for (int i = 0; i < d; ++i) k[i] = -r[i];
    // Odometer with the first coordinate outermost gives lexicographic order.
    for (;;) {
        if (a.in_cell(k)) out.push_back(k);
        int i = d - 1;
        while (i >= 0 && k[i] == r[i]) {
            k[i] = -r[i];
            --i;
        }
        if (i < 0) break;
        ++k[i];
    }
    return out;
}

std::vector<LatticePoint> enumerate_pattern(const PatternMatrix& pm) {
    std::vector<LatticePoint> pts;
    for (auto& g : enumerate_generating_set(pm, false)) pts.push_back({std::move(g)});
    return pts;
}

FreqIndex reduce_freq(std::span<const Int> k, const PatternMatrix& pm) {
    return pm.transposed().reduce(k);
}

bool is_pattern_member(const LatticePoint& a, const PatternMatrix& pm) {
    return static_cast<int>(a.g.size()) == pm.dim() && pm.in_cell(a.g);
}

LatticePoint pattern_add(const LatticePoint& a, const LatticePoint& b, const PatternMatrix& pm) {
    if (!is_pattern_member(a, pm)) throw NotAMember("left operand is not in P_S(M)");
    if (!is_pattern_member(b, pm)) throw NotAMember("right operand is not in P_S(M)");
    IntVec s(a.g.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.g[i] + b.g[i];
    return {pm.reduce(s)};
}

LatticePoint pattern_negate(const LatticePoint& a, const PatternMatrix& pm) {
    if (!is_pattern_member(a, pm)) throw NotAMember("operand is not in P_S(M)");
    IntVec s(a.g.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = -a.g[i];
    return {pm.reduce(s)};
}

IntMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    int d = 0;
    if (!(is >> d) || d < 1 || d > 16) throw ParseError("matrix: expected dimension on first line");
    std::vector<Int> vals;
    Int v = 0;
    while (is >> v) vals.push_back(v);
    if (!is.eof()) throw ParseError("matrix: non-integer entry");
    if (vals.size() != static_cast<std::size_t>(d) * d)
        throw ParseError("matrix: expected " + std::to_string(d * d) + " entries, got " +
                         std::to_string(vals.size()));
    return IntMatrix(d, std::move(vals));
}

std::string format_matrix(const IntMatrix& a) {
    std::ostringstream os;
    os << a.dim() << '\n';
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) os << (j ? " " : "") << a(i, j);
        os << '\n';
    }
    return os.str();
}

} // namespace aniso
