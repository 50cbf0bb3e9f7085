#include "aniso/interp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aniso/errors.hpp"
#include "aniso/parallel.hpp"
#include "aniso/simd/kernels.hpp"

namespace aniso {

namespace {

std::string fmt_index(std::span<const Int> k) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << ")";
    return os.str();
}

} // namespace

FourierSeries translate(const FourierSeries& f, const LatticePoint& y, const Pattern& p) {
    if (!is_pattern_member(y, p.matrix())) throw NotAMember("translate: point " + fmt_index(y.g));
    const auto pos = p.point_position(y.g);
    std::vector<cplx> c(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) c[i] = p.roots()[p.phase_index(f.index(i), *pos)] * f.coeff(i);
    return f.with_coeffs(std::move(c));
}

cplx evaluate(const FourierSeries& f, std::span<const double> x) {
    const int d = f.dim();
    if (static_cast<int>(x.size()) != d) throw std::invalid_argument("evaluate: dimension mismatch");
    std::vector<cplx> e(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double t = 0.0;
        const auto k = f.index(i);
        for (int j = 0; j < d; ++j) t += static_cast<double>(k[j]) * x[j];
        e[i] = {std::cos(t), std::sin(t)};
    }
    return simd::kernels().cdot(e, f.coeffs());
}

CoeffVector membership_coeffs(const FourierSeries& xi, const FourierSeries& phi, const PatternPtr& p,
                              double tol) {
    const std::size_t m = static_cast<std::size_t>(p->m());
    std::vector<cplx> a(m);
    std::vector<std::size_t> ref(m, SIZE_MAX);  // phi mode fixing a_h
    std::vector<char> fixed(m, 0);

    double scale = 0.0;
    for (const auto& c : phi.coeffs()) scale = std::max(scale, std::abs(c));
    for (const auto& c : xi.coeffs()) scale = std::max(scale, std::abs(c));
    const double abs_tol = tol * std::max(scale, 1e-300);

    // Fix a_h from the phi mode of largest magnitude in each class, then check all modes.
    std::vector<double> best(m, 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const std::size_t c = p->class_of(phi.index(i));
        if (std::abs(phi.coeff(i)) > best[c]) {
            best[c] = std::abs(phi.coeff(i));
            ref[c] = i;
        }
    }
    for (std::size_t c = 0; c < m; ++c)
        if (ref[c] != SIZE_MAX) {
            a[c] = xi.at(phi.index(ref[c])) / phi.coeff(ref[c]);
            fixed[c] = 1;
        }

    auto fail = [&](std::span<const Int> k, std::size_t c) {
        std::ostringstream os;
        os << "mode " << fmt_index(k) << " is inconsistent with class representative "
           << fmt_index(p->freqs()[c]);
        throw NotInSpace(os.str());
    };
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const std::size_t c = p->class_of(phi.index(i));
        if (std::abs(xi.at(phi.index(i)) - a[c] * phi.coeff(i)) > abs_tol) fail(phi.index(i), c);
    }
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (phi.find(xi.index(i))) continue;
        // phi vanishes here, so xi has to as well.
        if (std::abs(xi.coeff(i)) > abs_tol) fail(xi.index(i), p->class_of(xi.index(i)));
    }
    for (std::size_t c = 0; c < m; ++c)
        if (!fixed[c]) a[c] = 0.0;
    return {p, std::move(a)};
}

ExistenceReport check_existence(const FourierSeries& phi, const PatternPtr& p, double rel_tol) {
    ExistenceReport rep;
    rep.folded = alias_fold(phi, p);
    double mx = 0.0;
    for (const auto& v : rep.folded.values) mx = std::max(mx, std::abs(v));
    rep.eps = rel_tol * mx;
    for (std::size_t c = 0; c < rep.folded.values.size(); ++c)
        if (std::abs(rep.folded.values[c]) <= rep.eps) rep.zeros.push_back(c);
    return rep;
}

FundamentalInterpolant fundamental_interpolant(const FourierSeries& phi, const PatternPtr& p,
                                               bool allow_incorrect, std::optional<int> coverage,
                                               double rel_tol) {
    const ExistenceReport ex = check_existence(phi, p, rel_tol);
    if (!ex.exists() && !allow_incorrect) {
        std::ostringstream os;
        os << ex.zeros.size() << " congruence class(es) with vanishing folded coefficient, first "
           << fmt_index(p->freqs()[ex.zeros.front()]);
        throw NonExistent(os.str());
    }

    const std::size_t m = static_cast<std::size_t>(p->m());
    const double md = static_cast<double>(m);
    std::vector<char> degenerate(m, 0);
    for (std::size_t c : ex.zeros) degenerate[c] = 1;

    FundamentalInterpolant out;
    out.pattern = p;
    out.coverage = coverage;
    out.a_hat = {p, std::vector<cplx>(m)};
    for (std::size_t c = 0; c < m; ++c)
        if (!degenerate[c]) out.a_hat.values[c] = 1.0 / (md * ex.folded.values[c]);

    FourierSeries::Builder b(phi.dim());
    b.reserve(phi.size() + ex.zeros.size());
    std::vector<std::size_t> cls(phi.size());
    parallel_for(phi.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) cls[i] = p->class_of(phi.index(i));
    }, 4096);
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (!degenerate[cls[i]]) b.add(phi.index(i), phi.coeff(i) * out.a_hat.values[cls[i]]);
    for (std::size_t c : ex.zeros) {
        b.add(p->freqs()[c], 1.0 / md);
        out.incorrect_modes.push_back(p->freqs()[c]);
    }
    out.series = std::move(b).build();
    out.classes = mode_classes(out);
    return out;
}

std::vector<std::uint32_t> mode_classes(const FundamentalInterpolant& ifun) {
    if (ifun.classes.size() == ifun.series.size()) return ifun.classes;
    std::vector<std::uint32_t> cls(ifun.series.size());
    parallel_for(cls.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            cls[i] = static_cast<std::uint32_t>(ifun.pattern->class_of(ifun.series.index(i)));
    }, 4096);
    return cls;
}

FourierSeries interpolation_operator(const SampleVector& samples, const FundamentalInterpolant& ifun) {
    if (samples.pattern.get() != ifun.pattern.get() &&
        !(samples.pattern->matrix() == ifun.pattern->matrix()))
        throw std::invalid_argument("interpolation_operator: samples live on a different pattern");
    const CoeffVector cm = discrete_coeffs(samples);
    const double m = static_cast<double>(ifun.pattern->m());
    const std::vector<std::uint32_t> cls = mode_classes(ifun);
    std::vector<cplx> c(ifun.series.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = m * cm.values[cls[i]] * ifun.series.coeff(i);
    return ifun.series.with_coeffs(std::move(c));
}

FourierSeries fourier_partial_sum(const FourierSeries& f, const Pattern& p) {
    return f.filter([&](std::span<const Int> k, cplx) { return p.matrix_t().in_cell(k); });
}

} // namespace aniso
