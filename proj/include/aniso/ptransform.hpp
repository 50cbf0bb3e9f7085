#pragma once

// Pattern discrete Fourier transform, discrete Fourier coefficients and the
// aliasing (folding) operator.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "aniso/intlat.hpp"
#include "aniso/spectral.hpp"

namespace aniso {

using cplx = std::complex<double>;

// Finite Fourier series sum_k c_k e^{i k^T x}. Indices are kept
// lexicographically sorted and unique; exact zeros are not stored.
class FourierSeries {
public:
    explicit FourierSeries(int d = 1) : d_(d) {}

    // Sorts, sums duplicate indices and drops exact zeros.
    static FourierSeries from_modes(int d, std::vector<Int> flat_indices, std::vector<cplx> coeffs);

    class Builder {
    public:
        explicit Builder(int d) : d_(d) {}
        void reserve(std::size_t n) {
            idx_.reserve(n * static_cast<std::size_t>(d_));
            c_.reserve(n);
        }
        void add(std::span<const Int> k, cplx c) {
            idx_.insert(idx_.end(), k.begin(), k.end());
            c_.push_back(c);
        }
        FourierSeries build() && { return from_modes(d_, std::move(idx_), std::move(c_)); }

    private:
        int d_;
        std::vector<Int> idx_;
        std::vector<cplx> c_;
    };

    int dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return c_.size(); }
    bool empty() const noexcept { return c_.empty(); }

    std::span<const Int> index(std::size_t i) const {
        return {idx_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
    }
    cplx coeff(std::size_t i) const { return c_[i]; }
    const std::vector<cplx>& coeffs() const noexcept { return c_; }
    const std::vector<Int>& flat_indices() const noexcept { return idx_; }

    std::optional<std::size_t> find(std::span<const Int> k) const;
    // c_k, zero when k is not stored.
    cplx at(std::span<const Int> k) const;

    FourierSeries operator+(const FourierSeries& o) const;
    FourierSeries operator-(const FourierSeries& o) const;
    FourierSeries scaled(cplx s) const;
    // Same support with replacement coefficients (zeros are dropped).
    FourierSeries with_coeffs(std::vector<cplx> c) const;

    template <class Pred>
    FourierSeries filter(Pred&& keep) const {
        FourierSeries out(d_);
        for (std::size_t i = 0; i < size(); ++i)
            if (keep(index(i), c_[i])) {
                out.idx_.insert(out.idx_.end(), index(i).begin(), index(i).end());
                out.c_.push_back(c_[i]);
            }
        return out;
    }

private:
    int d_;
    std::vector<Int> idx_;
    std::vector<cplx> c_;
};

// Immutable bundle of everything derived from M that the transforms share:
// the ordered pattern, the ordered generating set of M^T, the numerators
// u_y = sign(det) adj(M) g_y (so y = u_y / m) and the table e^{-2 pi i j / m}.
class Pattern {
public:
    static std::shared_ptr<const Pattern> create(const PatternMatrix& pm);
    static std::shared_ptr<const Pattern> create(const IntMatrix& raw) {
        return create(PatternMatrix::validate(raw));
    }

    const PatternMatrix& matrix() const noexcept { return pm_; }
    const PatternMatrix& matrix_t() const noexcept { return pmt_; }
    const SpectralData& spectral() const noexcept { return sd_; }
    int dim() const noexcept { return pm_.dim(); }
    Int m() const noexcept { return pm_.m(); }

    const std::vector<LatticePoint>& points() const noexcept { return points_; }
    const std::vector<IntVec>& freqs() const noexcept { return freqs_; }
    const std::vector<cplx>& roots() const noexcept { return roots_; }
    std::span<const Int> numerator(std::size_t point) const {
        return {u_.data() + point * static_cast<std::size_t>(dim()), static_cast<std::size_t>(dim())};
    }

    std::optional<std::size_t> freq_position(std::span<const Int> h) const;
    std::optional<std::size_t> point_position(std::span<const Int> g) const;
    // Position of reduce_freq(k) in freqs().
    std::size_t class_of(std::span<const Int> k) const;
    // j with e^{-2 pi i k^T y} = roots()[j] for the pattern point at `point`.
    std::uint32_t phase_index(std::span<const Int> k, std::size_t point) const;

    // y as doubles (for synthesis at 2 pi y).
    std::vector<double> point_coordinates(std::size_t point) const;

private:
    PatternMatrix pm_, pmt_;
    SpectralData sd_;
    std::vector<LatticePoint> points_;
    std::vector<IntVec> freqs_;
    std::vector<Int> u_;
    std::vector<cplx> roots_;
};

using PatternPtr = std::shared_ptr<const Pattern>;

// Values a_y on P_S(M) in Pattern::points() order.
struct SampleVector {
    PatternPtr pattern;
    std::vector<cplx> values;
};

// Values indexed by G_S(M^T) in Pattern::freqs() order.
struct CoeffVector {
    PatternPtr pattern;
    std::vector<cplx> values;
};

// m if k ≡ 0 mod M^T, else 0.
Int character_sum(std::span<const Int> k, const PatternMatrix& pm);

// hat a_h = sum_y a_y e^{-2 pi i h^T y}.
CoeffVector dft_forward(const SampleVector& s);
// a_y = (1/m) sum_h hat a_h e^{2 pi i h^T y}.
SampleVector dft_inverse(const CoeffVector& c);
// c^M_h = (1/m) sum_y phi(2 pi y) e^{-2 pi i h^T y}.
CoeffVector discrete_coeffs(const SampleVector& s);
// For each h ∈ G_S(M^T): sum of the coefficients of f in the class of h.
CoeffVector alias_fold(const FourierSeries& f, const PatternPtr& pattern);

// f(2 pi y) for every pattern point, using exact phases.
SampleVector sample_at_nodes(const FourierSeries& f, const PatternPtr& pattern);

} // namespace aniso
