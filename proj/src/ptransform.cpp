#include "aniso/ptransform.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "aniso/errors.hpp"
#include "aniso/parallel.hpp"
#include "aniso/simd/kernels.hpp"

namespace aniso {

namespace {

bool lex_less(std::span<const Int> a, std::span<const Int> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool lex_equal(std::span<const Int> a, std::span<const Int> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

// Merge of two sorted series with coefficient combiner op(a, b).
template <class Op>
FourierSeries merge(const FourierSeries& x, const FourierSeries& y, Op op) {
    if (x.dim() != y.dim()) throw std::invalid_argument("FourierSeries dimension mismatch");
    FourierSeries::Builder b(x.dim());
    b.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && lex_less(x.index(i), y.index(j)))) {
            b.add(x.index(i), op(x.coeff(i), cplx{}));
            ++i;
        } else if (i == x.size() || lex_less(y.index(j), x.index(i))) {
            b.add(y.index(j), op(cplx{}, y.coeff(j)));
            ++j;
        } else {
            b.add(x.index(i), op(x.coeff(i), y.coeff(j)));
            ++i;
            ++j;
        }
    }
    return std::move(b).build();
}

} // namespace

FourierSeries FourierSeries::from_modes(int d, std::vector<Int> flat, std::vector<cplx> coeffs) {
    const auto du = static_cast<std::size_t>(d);
    if (flat.size() != coeffs.size() * du) throw std::invalid_argument("FourierSeries: index/coeff size mismatch");
    const std::size_t n = coeffs.size();
    auto key = [&](std::size_t i) { return std::span<const Int>(flat.data() + i * du, du); };

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const bool sorted = std::is_sorted(order.begin(), order.end(),
                                       [&](std::size_t a, std::size_t b) { return lex_less(key(a), key(b)); });
    if (!sorted)
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return lex_less(key(a), key(b)); });

    FourierSeries out(d);
    out.idx_.reserve(flat.size());
    out.c_.reserve(n);
    for (std::size_t p = 0; p < n;) {
        const std::size_t first = order[p];
        cplx sum = coeffs[first];
        std::size_t q = p + 1;
        while (q < n && lex_equal(key(order[q]), key(first))) sum += coeffs[order[q++]];
        if (sum != cplx{}) {
            const auto k = key(first);
            out.idx_.insert(out.idx_.end(), k.begin(), k.end());
            out.c_.push_back(sum);
        }
        p = q;
    }
    return out;
}

std::optional<std::size_t> FourierSeries::find(std::span<const Int> k) const {
    if (k.size() != static_cast<std::size_t>(d_)) return std::nullopt;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (lex_less(index(mid), k))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size() && lex_equal(index(lo), k)) return lo;
    return std::nullopt;
}

cplx FourierSeries::at(std::span<const Int> k) const {
    const auto i = find(k);
    return i ? c_[*i] : cplx{};
}

FourierSeries FourierSeries::operator+(const FourierSeries& o) const {
    return merge(*this, o, [](cplx a, cplx b) { return a + b; });
}

FourierSeries FourierSeries::operator-(const FourierSeries& o) const {
    return merge(*this, o, [](cplx a, cplx b) { return a - b; });
}

FourierSeries FourierSeries::scaled(cplx s) const {
    std::vector<cplx> c(c_);
    for (auto& v : c) v *= s;
    return with_coeffs(std::move(c));
}

FourierSeries FourierSeries::with_coeffs(std::vector<cplx> c) const {
    if (c.size() != c_.size()) throw std::invalid_argument("FourierSeries::with_coeffs: size mismatch");
    FourierSeries out(d_);
    out.idx_.reserve(idx_.size());
    out.c_.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == cplx{}) continue;
        out.idx_.insert(out.idx_.end(), index(i).begin(), index(i).end());
        out.c_.push_back(c[i]);
    }
    return out;
}

std::shared_ptr<const Pattern> Pattern::create(const PatternMatrix& pm) {
    auto p = std::make_shared<Pattern>(Pattern{});
    p->pm_ = pm;
    p->pmt_ = pm.transposed();
    p->sd_ = spectral_data(pm);
    p->points_ = enumerate_pattern(pm);
    p->freqs_ = enumerate_generating_set(pm, true);

    const int d = pm.dim();
    const Int m = pm.m();
    if (m > static_cast<Int>(UINT32_MAX)) throw OverflowRisk("pattern too large for phase tables");
    p->u_.resize(p->points_.size() * static_cast<std::size_t>(d));
    for (std::size_t j = 0; j < p->points_.size(); ++j) {
        const auto n = pm.scaled_inverse(p->points_[j].g);
        // y ∈ [-1/2,1/2)^d means |n_i| <= m/2, so the numerators fit Int.
        for (int i = 0; i < d; ++i) p->u_[j * d + i] = static_cast<Int>(n[i]);
    }

    p->roots_.resize(static_cast<std::size_t>(m));
    for (Int j = 0; j < m; ++j) {
        // Reduce to the shortest arc so that symmetric entries are exact conjugates.
        const Int jj = 2 * j > m ? j - m : j;
        const double t = -2.0 * std::numbers::pi * static_cast<double>(jj) / static_cast<double>(m);
        p->roots_[j] = {std::cos(t), std::sin(t)};
    }
    return p;
}

std::optional<std::size_t> Pattern::freq_position(std::span<const Int> h) const {
    auto it = std::lower_bound(freqs_.begin(), freqs_.end(), h,
                               [](const IntVec& a, std::span<const Int> b) { return lex_less(a, b); });
    if (it != freqs_.end() && lex_equal(*it, h)) return static_cast<std::size_t>(it - freqs_.begin());
    return std::nullopt;
}

std::optional<std::size_t> Pattern::point_position(std::span<const Int> g) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), g,
                               [](const LatticePoint& a, std::span<const Int> b) { return lex_less(a.g, b); });
    if (it != points_.end() && lex_equal(it->g, g)) return static_cast<std::size_t>(it - points_.begin());
    return std::nullopt;
}

std::size_t Pattern::class_of(std::span<const Int> k) const {
    const IntVec h = pmt_.reduce(k);
    const auto pos = freq_position(h);
    if (!pos) throw std::logic_error("reduced frequency missing from generating set");
    return *pos;
}

std::uint32_t Pattern::phase_index(std::span<const Int> k, std::size_t point) const {
    const auto u = numerator(point);
    Wide acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += static_cast<Wide>(k[i]) * u[i];
    return static_cast<std::uint32_t>(floor_mod(acc, m()));
}

std::vector<double> Pattern::point_coordinates(std::size_t point) const {
    const auto u = numerator(point);
    std::vector<double> y(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) y[i] = static_cast<double>(u[i]) / static_cast<double>(m());
    return y;
}

Int character_sum(std::span<const Int> k, const PatternMatrix& pm) {
    const IntVec h = reduce_freq(k, pm);
    return std::all_of(h.begin(), h.end(), [](Int v) { return v == 0; }) ? pm.m() : 0;
}

namespace {

void check_length(const PatternPtr& p, std::size_t n) {
    if (!p) throw std::invalid_argument("vector without pattern");
    if (n != static_cast<std::size_t>(p->m())) throw std::invalid_argument("vector length differs from m");
}

// Forward: out_h = sum_y e^{-2 pi i h^T y} in_y. Backward: out_y = sum_h e^{2 pi i h^T y} in_h.
std::vector<cplx> dense_apply(const Pattern& p, std::span<const cplx> in, bool forward) {
    const std::size_t m = static_cast<std::size_t>(p.m());
    const Int mi = p.m();
    std::vector<cplx> out(m);
    const auto& K = simd::kernels();
    parallel_for(m, [&](std::size_t b, std::size_t e) {
        std::vector<std::uint32_t> idx(m);
        for (std::size_t r = b; r < e; ++r) {
            if (forward) {
                const auto& h = p.freqs()[r];
                for (std::size_t c = 0; c < m; ++c) idx[c] = p.phase_index(h, c);
            } else {
                for (std::size_t c = 0; c < m; ++c) {
                    const std::uint32_t j = p.phase_index(p.freqs()[c], r);
                    idx[c] = static_cast<std::uint32_t>(j == 0 ? 0 : mi - j);
                }
            }
            out[r] = K.cdot_indexed(p.roots(), idx, in);
        }
    }, 16);
    return out;
}

} // namespace

CoeffVector dft_forward(const SampleVector& s) {
    check_length(s.pattern, s.values.size());
    return {s.pattern, dense_apply(*s.pattern, s.values, true)};
}

SampleVector dft_inverse(const CoeffVector& c) {
    check_length(c.pattern, c.values.size());
    auto v = dense_apply(*c.pattern, c.values, false);
    const double inv = 1.0 / static_cast<double>(c.pattern->m());
    for (auto& x : v) x *= inv;
    return {c.pattern, std::move(v)};
}

CoeffVector discrete_coeffs(const SampleVector& s) {
    CoeffVector c = dft_forward(s);
    const double inv = 1.0 / static_cast<double>(s.pattern->m());
    for (auto& x : c.values) x *= inv;
    return c;
}

CoeffVector alias_fold(const FourierSeries& f, const PatternPtr& pattern) {
    if (f.dim() != pattern->dim()) throw std::invalid_argument("alias_fold: dimension mismatch");
    std::vector<std::size_t> cls(f.size());
    parallel_for(f.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) cls[i] = pattern->class_of(f.index(i));
    }, 4096);
    // Sequential accumulation keeps the summation order (and the result) fixed.
    std::vector<cplx> out(static_cast<std::size_t>(pattern->m()));
    for (std::size_t i = 0; i < f.size(); ++i) out[cls[i]] += f.coeff(i);
    return {pattern, std::move(out)};
}

SampleVector sample_at_nodes(const FourierSeries& f, const PatternPtr& pattern) {
    // e^{i k^T 2 pi y} only depends on the class of k, so f(2 pi y) = m * inverse DFT of the fold.
    SampleVector s = dft_inverse(alias_fold(f, pattern));
    const double m = static_cast<double>(pattern->m());
    for (auto& v : s.values) v *= m;
    return s;
}

} // namespace aniso
