#include "aniso/boxspline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "aniso/errors.hpp"
#include "aniso/parallel.hpp"

namespace aniso {

namespace {

constexpr double kPi = std::numbers::pi;

IntVec unit(int d, int i) {
    IntVec e(d, 0);
    e[i] = 1;
    return e;
}

IntVec pair_dir(int d, int i, int j, Int sign) {
    IntVec e(d, 0);
    e[i] = 1;
    e[j] = sign;
    return e;
}

int multiplicity_of(const BoxSplineSpec& spec, const IntVec& dir) {
    int total = 0;
    for (std::size_t a = 0; a < spec.directions.size(); ++a) {
        IntVec neg(dir.size());
        for (std::size_t i = 0; i < dir.size(); ++i) neg[i] = -dir[i];
        if (spec.directions[a] == dir || spec.directions[a] == neg) total += spec.p[a];
    }
    return total;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw ParseError("bad multiplicity '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos)
            throw ParseError("bad multiplicity '" + item + "'");
        out.push_back(v);
    }
    return out;
}

} // namespace

BoxSplineSpec BoxSplineSpec::three_directional(int p1, int p2, int p3) {
    return symmetric(2, {p1, p2, p3});
}

BoxSplineSpec BoxSplineSpec::symmetric(int d, std::vector<int> p) {
    BoxSplineSpec s;
    s.d = d;
    for (int i = 0; i < d; ++i) s.directions.push_back(unit(d, i));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) s.directions.push_back(pair_dir(d, i, j, 1));
    s.p = std::move(p);
    s.validate();
    return s;
}

BoxSplineSpec BoxSplineSpec::full(int d, std::vector<int> p) {
    BoxSplineSpec s;
    s.d = d;
    for (int i = 0; i < d; ++i) s.directions.push_back(unit(d, i));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) s.directions.push_back(pair_dir(d, i, j, 1));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) s.directions.push_back(pair_dir(d, i, j, -1));
    s.p = std::move(p);
    s.validate();
    return s;
}

BoxSplineSpec BoxSplineSpec::parse(const std::string& text) {
    const auto semi = text.find(';');
    if (semi == std::string::npos) throw ParseError("box spline spec must look like 'd; p1,p2,...'");
    int d = 0;
    try {
        d = std::stoi(text.substr(0, semi));
    } catch (const std::exception&) {
        throw ParseError("bad dimension in box spline spec '" + text + "'");
    }
    if (d < 1) throw ParseError("box spline dimension must be >= 1");
    auto p = parse_ints(text.substr(semi + 1));
    const std::size_t sym = static_cast<std::size_t>(d) * (d + 1) / 2;
    const std::size_t all = static_cast<std::size_t>(d) * d;
    for (int v : p)
        if (v < 1) throw ParseError("box spline multiplicities must be >= 1");
    if (p.size() == sym) return symmetric(d, std::move(p));
    if (p.size() == all && d > 1) return full(d, std::move(p));
    throw ParseError("expected " + std::to_string(sym) + " or " + std::to_string(all) +
                     " multiplicities for d = " + std::to_string(d));
}

std::string BoxSplineSpec::to_string() const {
    std::ostringstream os;
    os << d << ";";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : " ") << p[i];
    return os.str();
}

void BoxSplineSpec::validate() const {
    if (d < 1) throw std::invalid_argument("box spline dimension must be >= 1");
    if (p.size() != directions.size())
        throw std::invalid_argument("box spline needs one multiplicity per direction (" +
                                    std::to_string(directions.size()) + ")");
    for (int v : p)
        if (v < 1) throw std::invalid_argument("box spline multiplicities must be >= 1");
    for (const auto& dir : directions)
        if (static_cast<int>(dir.size()) != d) throw std::invalid_argument("direction of wrong dimension");
}

double sinc(double t) {
    if (std::abs(t) < 1e-4) {
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    return std::sin(t) / t;
}

double boxspline_hat(std::span<const double> xi, const BoxSplineSpec& spec) {
    double out = 1.0;
    for (std::size_t a = 0; a < spec.directions.size(); ++a) {
        double t = 0.0;
        for (int i = 0; i < spec.d; ++i) t += static_cast<double>(spec.directions[a][i]) * xi[i];
        out *= std::pow(sinc(0.5 * t), spec.p[a]);
    }
    return out;
}

namespace {

// sinc(pi a / m) with the sine argument reduced exactly modulo 2 pi.
double sinc_rational(Wide a, Int m) {
    if (a == 0) return 1.0;
    const Wide r = floor_mod(a + m, 2 * static_cast<Wide>(m)) - m;  // in [-m, m)
    if (r == 0 || r == -m) return 0.0;  // a multiple of m
    const double t = kPi * static_cast<double>(a) / static_cast<double>(m);
    if (std::abs(t) < 1e-4) return sinc(t);
    return std::sin(kPi * static_cast<double>(r) / static_cast<double>(m)) / t;
}

double coeff_from_numerator(std::span<const Wide> n, const BoxSplineSpec& spec, Int m) {
    double out = 1.0 / static_cast<double>(m);
    for (std::size_t a = 0; a < spec.directions.size(); ++a) {
        Wide t = 0;
        for (int i = 0; i < spec.d; ++i) t += static_cast<Wide>(spec.directions[a][i]) * n[i];
        const double s = sinc_rational(t, m);
        if (s == 0.0) return 0.0;
        double f = 1.0;
        for (int e = 0; e < spec.p[a]; ++e) f *= s;
        out *= f;
    }
    return out;
}

} // namespace

double periodized_coeff(std::span<const Int> k, const BoxSplineSpec& spec, const Pattern& p) {
    if (static_cast<int>(k.size()) != spec.d || spec.d != p.dim())
        throw std::invalid_argument("periodized_coeff: dimension mismatch");
    const auto n = p.matrix_t().scaled_inverse(k);
    return coeff_from_numerator(n, spec, p.m());
}

int tail_decay_exponent(const BoxSplineSpec& spec) {
    const int d = spec.d;
    int r = -1;
    for (int i = 0; i < d; ++i) {
        int ri = multiplicity_of(spec, unit(d, i));
        for (int j = 0; j < d; ++j) {
            if (j == i) continue;
            ri += std::min(multiplicity_of(spec, unit(d, j)),
                           multiplicity_of(spec, pair_dir(d, std::min(i, j), std::max(i, j), 1)));
        }
        r = r < 0 ? ri : std::min(r, ri);
    }
    return r;
}

double periodization_tail(const BoxSplineSpec& spec, int radius, double q) {
    const int d = spec.d;
    const int r = tail_decay_exponent(spec);
    const bool sup = std::isinf(q);
    if (!sup && r * q <= d) return std::numeric_limits<double>::infinity();
    if (sup && r == 0) return 1.0;

    // Shells radius < n <= n_ext are summed point by point; beyond that the
    // uniform bound (4 / (pi n))^r over at most 2 d 3^{d-1} n^{d-1} points per shell.
    const int n_ext = std::max(radius, 4) * (d <= 2 ? 8 : d == 3 ? 2 : 1) + 4;
    std::vector<double> half_l1(spec.directions.size());
    for (std::size_t a = 0; a < spec.directions.size(); ++a) {
        Int s = 0;
        for (Int v : spec.directions[a]) s += v < 0 ? -v : v;
        half_l1[a] = 0.5 * static_cast<double>(s);
    }

    double acc = 0.0;
    IntVec z(d, -n_ext);
    for (;;) {
        Int inf_norm = 0;
        for (Int v : z) inf_norm = std::max(inf_norm, v < 0 ? -v : v);
        if (inf_norm > radius) {
            double u = 1.0;
            for (std::size_t a = 0; a < spec.directions.size(); ++a) {
                Int t = 0;
                for (int i = 0; i < d; ++i) t += spec.directions[a][i] * z[i];
                const double gap = kPi * (std::abs(static_cast<double>(t)) - half_l1[a]);
                if (gap > 1.0) u *= std::pow(1.0 / gap, spec.p[a]);
            }
            acc = sup ? std::max(acc, u) : acc + std::pow(u, q);
        }
        int i = d - 1;
        while (i >= 0 && z[i] == n_ext) z[i--] = -n_ext;
        if (i < 0) break;
        ++z[i];
    }

    const double base = 4.0 / (kPi * n_ext);
    if (sup) return std::max(acc, std::pow(base, r));
    const double rq = r * q;
    const double rest = 2.0 * d * std::pow(3.0, d - 1) * std::pow(4.0 / kPi, rq) *
                        std::pow(static_cast<double>(n_ext), d - rq) / (rq - d);
    return std::pow(acc + rest, 1.0 / q);
}

PeriodizedSeries periodize(const BoxSplineSpec& spec, const PatternPtr& p, const PeriodizationWindow& win) {
    spec.validate();
    if (spec.d != p->dim()) throw std::invalid_argument("periodize: dimension mismatch");
    if (win.radius < 1) throw std::invalid_argument("periodization radius must be >= 1");

    const double tail = periodization_tail(spec, win.radius, win.tail_q);
    if (!(tail <= win.tail_eps)) throw TailTooLarge(tail, win.tail_eps);

    const int d = spec.d;
    const std::size_t m = static_cast<std::size_t>(p->m());
    const Int side = 2 * static_cast<Int>(win.radius) + 1;
    std::size_t shell_count = 1;
    for (int i = 0; i < d; ++i) shell_count *= static_cast<std::size_t>(side);

    std::vector<Int> flat(m * shell_count * d);
    std::vector<cplx> coeffs(m * shell_count);
    const IntMatrix& mt = p->matrix_t().matrix();
    parallel_for(m, [&](std::size_t b, std::size_t e) {
        IntVec z(d), k(d);
        for (std::size_t c = b; c < e; ++c) {
            const IntVec& h = p->freqs()[c];
            std::fill(z.begin(), z.end(), -static_cast<Int>(win.radius));
            for (std::size_t t = 0; t < shell_count; ++t) {
                const IntVec mz = mt.apply(z);
                for (int i = 0; i < d; ++i) k[i] = h[i] + mz[i];
                const std::size_t slot = c * shell_count + t;
                std::copy(k.begin(), k.end(), flat.begin() + static_cast<std::ptrdiff_t>(slot * d));
                coeffs[slot] = periodized_coeff(k, spec, *p);
                int i = d - 1;
                while (i >= 0 && z[i] == win.radius) z[i--] = -win.radius;
                if (i >= 0) ++z[i];
            }
        }
    }, 1);

    PeriodizedSeries out;
    out.series = FourierSeries::from_modes(d, std::move(flat), std::move(coeffs));
    out.radius = win.radius;
    out.tail_bound = tail;
    return out;
}

int sf_order(const BoxSplineSpec& spec) {
    spec.validate();
    const int d = spec.d;
    const int n = static_cast<int>(spec.directions.size());
    int total = 0;
    for (int v : spec.p) total += v;
    if (d == 1) return total;

    int best = total;
    // Enumerate (d-1)-subsets of directions; each independent one spans a hyperplane.
    std::vector<int> pick(d - 1);
    for (int i = 0; i < d - 1; ++i) pick[i] = i;
    if (n < d - 1) return total;
    for (;;) {
        IntVec normal(d);
        bool independent = false;
        for (int col = 0; col < d; ++col) {
            IntMatrix minor(d - 1);
            for (int r = 0; r < d - 1; ++r)
                for (int c = 0, cc = 0; c < d; ++c)
                    if (c != col) minor(r, cc++) = spec.directions[pick[r]][c];
            const Wide det = determinant(minor);
            normal[col] = static_cast<Int>((col % 2 ? -1 : 1) * det);
            if (det != 0) independent = true;
        }
        if (independent) {
            int outside = 0;
            for (int a = 0; a < n; ++a) {
                Wide dot = 0;
                for (int i = 0; i < d; ++i) dot += static_cast<Wide>(normal[i]) * spec.directions[a][i];
                if (dot != 0) outside += spec.p[a];
            }
            best = std::min(best, outside);
        }
        int i = d - 2;
        while (i >= 0 && pick[i] == n - (d - 1) + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < d - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

} // namespace aniso
