#pragma once

// Slow reference computations used as test oracles. They deliberately avoid the
// library's exact phase tables, class reduction and SIMD kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "aniso/intlat.hpp"
#include "aniso/ptransform.hpp"

namespace oracle {

using aniso::cplx;
using aniso::Int;
using aniso::IntMatrix;
using aniso::IntVec;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Laplace expansion.
inline long double det(const std::vector<long double>& a, int d) {
    if (d == 1) return a[0];
    long double s = 0;
    for (int j = 0; j < d; ++j) {
        std::vector<long double> minor;
        for (int r = 1; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if (c != j) minor.push_back(a[r * d + c]);
        s += ((j % 2) ? -1 : 1) * a[j] * det(minor, d - 1);
    }
    return s;
}

inline long double det(const IntMatrix& m) {
    std::vector<long double> a(m.data().begin(), m.data().end());
    return det(a, m.dim());
}

// M^{-1} by Gauss-Jordan in long double.
inline std::vector<long double> inverse(const IntMatrix& m) {
    const int d = m.dim();
    std::vector<long double> a(m.data().begin(), m.data().end()), inv(d * d, 0);
    for (int i = 0; i < d; ++i) inv[i * d + i] = 1;
    for (int c = 0; c < d; ++c) {
        int piv = c;
        for (int r = c + 1; r < d; ++r)
            if (std::abs(a[r * d + c]) > std::abs(a[piv * d + c])) piv = r;
        for (int k = 0; k < d; ++k) {
            std::swap(a[c * d + k], a[piv * d + k]);
            std::swap(inv[c * d + k], inv[piv * d + k]);
        }
        const long double p = a[c * d + c];
        for (int k = 0; k < d; ++k) {
            a[c * d + k] /= p;
            inv[c * d + k] /= p;
        }
        for (int r = 0; r < d; ++r) {
            if (r == c) continue;
            const long double f = a[r * d + c];
            for (int k = 0; k < d; ++k) {
                a[r * d + k] -= f * a[c * d + k];
                inv[r * d + k] -= f * inv[c * d + k];
            }
        }
    }
    return inv;
}

// True iff M^{-1} g lies in [-1/2, 1/2)^d; the test is exact for the small
// matrices used here because det * M^{-1} g is an integer.
inline bool in_cell(const IntMatrix& m, const IntVec& g) {
    const int d = m.dim();
    const auto inv = inverse(m);
    const long double D = std::abs(det(m));
    for (int i = 0; i < d; ++i) {
        long double y = 0;
        for (int j = 0; j < d; ++j) y += inv[i * d + j] * g[j];
        const long double n = std::round(y * 2 * D);  // 2 m y, integer
        if (n < -D || n >= D) return false;
    }
    return true;
}

// Scan of the box |g_i| <= sum_j |M_ij|.
inline std::vector<IntVec> generating_set(const IntMatrix& m) {
    const int d = m.dim();
    IntVec r(d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) r[i] += std::abs(m(i, j));
    std::vector<IntVec> out;
    IntVec g(d);
    for (int i = 0; i < d; ++i) g[i] = -r[i];
    while (true) {
        if (in_cell(m, g)) out.push_back(g);
        int i = d - 1;
        while (i >= 0 && g[i] == r[i]) {
            g[i] = -r[i];
            --i;
        }
        if (i < 0) break;
        ++g[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<double> solve_y(const IntMatrix& m, const IntVec& g) {
    const int d = m.dim();
    const auto inv = inverse(m);
    std::vector<double> y(d, 0.0);
    for (int i = 0; i < d; ++i) {
        long double s = 0;
        for (int j = 0; j < d; ++j) s += inv[i * d + j] * g[j];
        y[i] = static_cast<double>(s);
    }
    return y;
}

// Pattern points y in the library's point order.
inline std::vector<std::vector<double>> points(const aniso::Pattern& p) {
    std::vector<std::vector<double>> ys;
    for (const auto& pt : p.points()) ys.push_back(solve_y(p.matrix().matrix(), pt.g));
    return ys;
}

inline cplx expi(double t) { return {std::cos(t), std::sin(t)}; }

inline double dot(std::span<const Int> k, const std::vector<double>& y) {
    double t = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) t += static_cast<double>(k[i]) * y[i];
    return t;
}

// f(2 pi y) by direct summation.
inline cplx sample(const aniso::FourierSeries& f, const std::vector<double>& y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.coeff(i) * expi(kTwoPi * dot(f.index(i), y));
    return s;
}

inline std::vector<cplx> sample_all(const aniso::FourierSeries& f, const aniso::Pattern& p) {
    std::vector<cplx> v;
    for (const auto& y : points(p)) v.push_back(sample(f, y));
    return v;
}

// F(M)_{h,y} = e^{-2 pi i h^T y} / sqrt(m), rows in freqs() order.
inline std::vector<cplx> dft_matrix(const aniso::Pattern& p) {
    const auto ys = points(p);
    const std::size_t m = ys.size();
    std::vector<cplx> f(m * m);
    const double s = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) f[r * m + c] = s * expi(-kTwoPi * dot(p.freqs()[r], ys[c]));
    return f;
}

// c^M_h = (1/m) sum_y v_y e^{-2 pi i h^T y}.
inline std::vector<cplx> discrete_coeffs(const std::vector<cplx>& v, const aniso::Pattern& p) {
    const auto ys = points(p);
    std::vector<cplx> c;
    for (const auto& h : p.freqs()) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < ys.size(); ++j) s += v[j] * expi(-kTwoPi * dot(h, ys[j]));
        c.push_back(s / static_cast<double>(ys.size()));
    }
    return c;
}

// Brute-force search for h in G_S(M^T) with k - h ∈ M^T Z^d.
inline IntVec reduce(const IntVec& k, const aniso::Pattern& p) {
    const IntMatrix mt = p.matrix().matrix().transposed();
    const auto inv = inverse(mt);
    const int d = mt.dim();
    for (const auto& h : p.freqs()) {
        bool integral = true;
        for (int i = 0; i < d && integral; ++i) {
            long double z = 0;
            for (int j = 0; j < d; ++j) z += inv[i * d + j] * (k[j] - h[j]);
            integral = std::abs(z - std::round(z)) < 1e-9;
        }
        if (integral) return h;
    }
    return {};
}

// ||A||_2 by power iteration on A^T A.
inline double norm2(const IntMatrix& a, int iters = 2000) {
    const int d = a.dim();
    std::vector<double> v(d, 1.0), w(d);
    for (int i = 0; i < d; ++i) v[i] += 0.1 * i;
    double lam = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> av(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) av[i] += a(i, j) * v[j];
        for (int j = 0; j < d; ++j) {
            w[j] = 0.0;
            for (int i = 0; i < d; ++i) w[j] += a(i, j) * av[i];
        }
        double n = 0.0;
        for (double x : w) n += x * x;
        n = std::sqrt(n);
        lam = n;
        for (int j = 0; j < d; ++j) v[j] = w[j] / n;
    }
    return std::sqrt(lam);
}

// sigma_beta(k) from long double inverse.
inline double weight(const IntVec& k, double beta, const aniso::Pattern& p) {
    const IntMatrix mt = p.matrix().matrix().transposed();
    const auto inv = inverse(mt);
    const int d = mt.dim();
    long double s = 0;
    for (int i = 0; i < d; ++i) {
        long double x = 0;
        for (int j = 0; j < d; ++j) x += inv[i * d + j] * k[j];
        s += x * x;
    }
    const double n = norm2(p.matrix().matrix());
    return std::pow(1.0 + n * n * static_cast<double>(s), beta / 2.0);
}

inline double lq(const std::vector<double>& v, double q) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), q);
    return std::pow(s, 1.0 / q);
}

// ||f | A^alpha_{M,q}|| summed naively.
inline double a_norm(const aniso::FourierSeries& f, double alpha, double q, const aniso::Pattern& p) {
    std::vector<double> v;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const IntVec k(f.index(i).begin(), f.index(i).end());
        v.push_back(weight(k, alpha, p) * std::abs(f.coeff(i)));
    }
    return lq(v, q);
}

// Random regular matrix with entries in [-range, range] and 0 < |det| <= max_det.
inline IntMatrix random_regular(std::mt19937_64& rng, int d, Int range, Int max_det) {
    std::uniform_int_distribution<Int> u(-range, range);
    while (true) {
        std::vector<Int> a(static_cast<std::size_t>(d) * d);
        for (auto& x : a) x = u(rng);
        IntMatrix m(d, a);
        const long double D = std::abs(det(m));
        if (D >= 1 && D <= max_det) return m;
    }
}

// Random series with n modes, indices in [-range, range]^d.
inline aniso::FourierSeries random_series(std::mt19937_64& rng, int d, int n, Int range) {
    std::uniform_int_distribution<Int> u(-range, range);
    std::normal_distribution<double> g;
    aniso::FourierSeries::Builder b(d);
    for (int i = 0; i < n; ++i) {
        IntVec k(d);
        for (auto& x : k) x = u(rng);
        b.add(k, {g(rng), g(rng)});
    }
    return std::move(b).build();
}

// Random f ∈ T_M: every h ∈ G_S(M^T) with probability 1/2.
inline aniso::FourierSeries random_trig(std::mt19937_64& rng, const aniso::Pattern& p) {
    std::normal_distribution<double> g;
    std::bernoulli_distribution keep(0.5);
    aniso::FourierSeries::Builder b(p.dim());
    for (const auto& h : p.freqs())
        if (keep(rng)) b.add(h, {g(rng), g(rng)});
    return std::move(b).build();
}

} // namespace oracle
