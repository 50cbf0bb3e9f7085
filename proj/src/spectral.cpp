#include "aniso/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "aniso/errors.hpp"

namespace aniso {

namespace {

using cld = std::complex<long double>;

// Roots of x^3 + a x^2 + b x + c with exact integer coefficients.
std::vector<cld> cubic_roots(long double a, long double b, long double c) {
    // Depressed cubic t^3 + p t + q with x = t - a/3.
    const long double p = b - a * a / 3.0L;
    const long double q = 2.0L * a * a * a / 27.0L - a * b / 3.0L + c;
    const long double disc = q * q / 4.0L + p * p * p / 27.0L;
    long double t = 0.0L;
    if (disc <= 0.0L && p < 0.0L) {
        const long double r = std::sqrt(-p / 3.0L);
        const long double arg = std::clamp(-q / (2.0L * r * r * r), -1.0L, 1.0L);
        t = 2.0L * r * std::cos(std::acos(arg) / 3.0L);
    } else {
        const long double s = std::sqrt(std::max(disc, 0.0L));
        t = std::cbrt(-q / 2.0L + s) + std::cbrt(-q / 2.0L - s);
    }
    long double x = t - a / 3.0L;
    for (int it = 0; it < 8; ++it) {
        const long double f = ((x + a) * x + b) * x + c;
        const long double df = (3.0L * x + 2.0L * a) * x + b;
        if (df == 0.0L) break;
        const long double step = f / df;
        x -= step;
        if (std::fabs(step) <= 1e-18L * std::max(1.0L, std::fabs(x))) break;
    }
    // Deflate: (x - r)(x^2 + B x + C).
    const long double B = a + x;
    const long double C = (x != 0.0L) ? -c / x : b + B * x;
    const cld sq = std::sqrt(cld(B * B - 4.0L * C, 0.0L));
    return {cld(x, 0.0L), (-B + sq) / 2.0L, (-B - sq) / 2.0L};
}

std::vector<double> eigenvalue_magnitudes(const PatternMatrix& pm) {
    const IntMatrix& a = pm.matrix();
    const int d = pm.dim();
    std::vector<double> mags;
    if (d == 1) {
        mags.push_back(std::fabs(static_cast<double>(a(0, 0))));
    } else if (d == 2) {
        const long double tr = static_cast<long double>(a(0, 0)) + a(1, 1);
        const long double det = static_cast<long double>(pm.det());
        const cld sq = std::sqrt(cld(tr * tr - 4.0L * det, 0.0L));
        mags.push_back(static_cast<double>(std::abs((cld(tr) + sq) / 2.0L)));
        mags.push_back(static_cast<double>(std::abs((cld(tr) - sq) / 2.0L)));
    } else if (d == 3) {
        const long double tr = static_cast<long double>(a(0, 0)) + a(1, 1) + a(2, 2);
        long double minors = 0.0L;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                minors += static_cast<long double>(a(i, i)) * a(j, j) -
                          static_cast<long double>(a(i, j)) * a(j, i);
        for (const cld& r : cubic_roots(-tr, minors, -static_cast<long double>(pm.det())))
            mags.push_back(static_cast<double>(std::abs(r)));
    } else {
        Eigen::MatrixXd m(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) m(i, j) = static_cast<double>(a(i, j));
        Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
        if (es.info() != Eigen::Success) throw ConvergenceFailure("eigenvalues of M did not converge");
        for (int i = 0; i < d; ++i) mags.push_back(std::abs(es.eigenvalues()(i)));
    }
    std::sort(mags.begin(), mags.end());
    return mags;
}

} // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    double frob = 0.0;
    for (double v : a) frob += v * v;
    frob = std::sqrt(frob);

    const int max_sweeps = 10 * n * n;
    bool converged = false;
    for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
        if (std::sqrt(off) <= kJacobiTolerance * frob) {
            converged = true;
            break;
        }
        if (sweep == max_sweeps) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (at(p, q) == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    if (!converged) throw ConvergenceFailure("Jacobi iteration exceeded sweep cap");
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

SpectralData spectral_data(const PatternMatrix& pm) {
    const int d = pm.dim();
    const IntMatrix& a = pm.matrix();
    std::vector<double> gram(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Wide s = 0;
            for (int k = 0; k < d; ++k) s += static_cast<Wide>(a(k, i)) * a(k, j);
            gram[static_cast<std::size_t>(i) * d + j] = static_cast<double>(s);
        }

    SpectralData sd;
    sd.gram_eigs = symmetric_eigenvalues(std::move(gram), d);
    if (sd.gram_eigs.front() <= 0.0) throw ConvergenceFailure("non-positive Gram eigenvalue");
    sd.norm2 = std::sqrt(sd.gram_eigs.back());
    sd.inv_norm2 = 1.0 / std::sqrt(sd.gram_eigs.front());
    sd.kappa = std::sqrt(sd.gram_eigs.back() / sd.gram_eigs.front());
    sd.eig_mags = eigenvalue_magnitudes(pm);
    return sd;
}

bool is_expanding(const SpectralData& sd) {
    return !sd.eig_mags.empty() && sd.eig_mags.back() >= 2.0 - kExpandingSlack;
}

} // namespace aniso
