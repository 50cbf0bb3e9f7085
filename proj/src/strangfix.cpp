#include "aniso/strangfix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aniso/errors.hpp"

namespace aniso {

namespace {

struct ZBox {
    int d;
    int zmax;
    std::size_t side;
    std::size_t size;

    ZBox(int d_, int zmax_) : d(d_), zmax(zmax_), side(2 * static_cast<std::size_t>(zmax_) + 1), size(1) {
        for (int i = 0; i < d; ++i) size *= side;
    }

    std::optional<std::size_t> index(std::span<const Int> z) const {
        std::size_t idx = 0;
        for (int i = 0; i < d; ++i) {
            if (z[i] < -zmax || z[i] > zmax) return std::nullopt;
            idx = idx * side + static_cast<std::size_t>(z[i] + zmax);
        }
        return idx;
    }

    IntVec at(std::size_t idx) const {
        IntVec z(d);
        for (int i = d - 1; i >= 0; --i) {
            z[i] = static_cast<Int>(idx % side) - zmax;
            idx /= side;
        }
        return z;
    }

    static Int inf_norm(std::span<const Int> z) {
        Int n = 0;
        for (Int v : z) n = std::max(n, v < 0 ? -v : v);
        return n;
    }
};

void require_coverage(const FundamentalInterpolant& ifun, int zmax) {
    if (zmax < 1) throw std::invalid_argument("zmax must be >= 1");
    if (ifun.coverage && *ifun.coverage < zmax) {
        std::ostringstream os;
        os << "interpolant covers shells up to " << *ifun.coverage << ", requested " << zmax;
        throw InsufficientSupport(os.str());
    }
}

double lq_accumulate(double acc, double v, double q) {
    return std::isinf(q) ? std::max(acc, v) : acc + std::pow(v, q);
}

double lq_finish(double acc, double q) { return std::isinf(q) ? acc : std::pow(acc, 1.0 / q); }

bool is_zero(std::span<const Int> v) {
    return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

} // namespace

double SFReport::b_at(std::span<const Int> z) const {
    const ZBox box(static_cast<int>(z.size()), zmax);
    const auto i = box.index(z);
    return i ? b[*i] : 0.0;
}

SFReport verify_sfc(const FundamentalInterpolant& ifun, const SFParams& params, int zmax) {
    if (!(params.s > 0.0)) throw std::invalid_argument("Strang-Fix order must be positive");
    require_coverage(ifun, zmax);

    const Pattern& p = *ifun.pattern;
    const int d = p.dim();
    const double m = static_cast<double>(p.m());
    const SpectralData& sd = p.spectral();
    const double kappa_fac = params.mode == SFMode::Strict ? std::pow(sd.kappa, -params.s) : 1.0;
    const double outer_fac = kappa_fac * std::pow(sd.norm2, -params.alpha);

    // ||M^{-T} h||_2^s per class.
    std::vector<double> hpow(p.freqs().size());
    for (std::size_t c = 0; c < hpow.size(); ++c)
        hpow[c] = std::pow(inv_t_norm2_sq(p.freqs()[c], p.matrix_t()), 0.5 * params.s);

    const ZBox box(d, zmax);
    SFReport rep;
    rep.params = params;
    rep.zmax = zmax;
    rep.b.assign(box.size, 0.0);
    std::vector<std::size_t> arg_h(box.size, 0);

    auto fail = [&](IntVec h, IntVec z, double ratio, std::string why) {
        if (!rep.witness) rep.witness = SFWitness{std::move(h), std::move(z), ratio, std::move(why)};
    };

    // Condition (i): z = 0, including classes without a stored mode.
    const std::size_t origin = *box.index(IntVec(d, 0));
    for (std::size_t c = 0; c < p.freqs().size(); ++c) {
        const IntVec& h = p.freqs()[c];
        const double lhs = std::abs(1.0 - m * ifun.series.at(h));
        if (is_zero(h)) {
            if (lhs > kOriginTol) fail(h, IntVec(d, 0), lhs, "|1 - m c_0| exceeds tolerance");
            continue;
        }
        const double ratio = lhs / (kappa_fac * hpow[c]);
        if (ratio > rep.b[origin]) {
            rep.b[origin] = ratio;
            arg_h[origin] = c;
        }
    }

    // Condition (ii): every stored mode h + M^T z with z != 0.
    const std::vector<std::uint32_t> cls = mode_classes(ifun);
    for (std::size_t i = 0; i < ifun.series.size(); ++i) {
        const auto k = ifun.series.index(i);
        const IntVec z = p.matrix_t().quotient(k);
        if (is_zero(z)) continue;
        const auto zi = box.index(z);
        if (!zi) continue;
        const std::size_t c = cls[i];
        const double lhs = m * std::abs(ifun.series.coeff(i));
        if (is_zero(p.freqs()[c])) {
            if (lhs > kOriginTol) fail(p.freqs()[c], z, lhs, "nonzero coefficient at M^T z");
            continue;
        }
        const double ratio = lhs / (outer_fac * hpow[c]);
        if (ratio > rep.b[*zi]) {
            rep.b[*zi] = ratio;
            arg_h[*zi] = c;
        }
    }

    const WeightSpec ws = WeightSpec::make(params.alpha, p, params.q);
    double total = 0.0, shell = 0.0, peak = -1.0;
    std::size_t peak_at = origin;
    for (std::size_t zi = 0; zi < box.size; ++zi) {
        const IntVec z = box.at(zi);
        const double v = weight(z, ws) * rep.b[zi];
        if (!std::isfinite(v)) fail(p.freqs()[arg_h[zi]], z, v, "non-finite ratio");
        total = lq_accumulate(total, v, params.q);
        if (ZBox::inf_norm(z) == zmax) shell = lq_accumulate(shell, v, params.q);
        if (v > peak) {
            peak = v;
            peak_at = zi;
        }
    }
    rep.gamma_sf = lq_finish(total, params.q);
    rep.last_shell_fraction = total > 0.0 ? shell / total : 0.0;

    // For q = inf the sup must be attained strictly inside the window.
    const bool tail_ok = std::isinf(params.q) ? (total == 0.0 || shell < total)
                                              : rep.last_shell_fraction < kShellTol;
    if (!tail_ok) {
        fail(p.freqs()[arg_h[peak_at]], box.at(peak_at), rep.last_shell_fraction,
             "outermost shell carries too much of gamma_SF");
    }
    rep.peak = {p.freqs()[arg_h[peak_at]], box.at(peak_at), peak, "largest sigma_alpha(z) b_z"};
    rep.pass = !rep.witness && std::isfinite(rep.gamma_sf);
    return rep;
}

SFOrderReport verify_sfc_order(const std::function<FundamentalInterpolant(const PatternPtr&)>& build,
                               const IntMatrix& m0, int levels, const SFParams& params, int zmax) {
    if (levels < 2) throw std::invalid_argument("order check needs at least two levels");
    SFOrderReport out;
    out.params = params;
    out.allowed = params.alpha + kGrowthSlack;
    bool all_pass = true;
    SFWitness finest_peak;
    for (int j = 0; j < levels; ++j) {
        const PatternPtr p = Pattern::create(m0.scaled(Int{1} << j));
        const FundamentalInterpolant ifun = build(p);
        const SFReport rep = verify_sfc(ifun, params, zmax);
        out.levels.push_back({j, p->m(), p->spectral().norm2, rep.gamma_sf, rep.pass});
        if (!rep.pass) {
            all_pass = false;
            if (!out.witness) out.witness = rep.witness;
        }
        finest_peak = rep.peak;
    }

    // Fit over j >= 1; the coarsest pattern is usually far from asymptotic.
    std::vector<std::pair<double, double>> pts;
    for (const auto& l : out.levels)
        if ((l.j >= 1 || levels == 2) && l.gamma_sf > 0.0) pts.push_back({std::log(l.norm2), std::log(l.gamma_sf)});
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(pts.size());
        out.growth = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    out.pass = all_pass && out.growth <= out.allowed;
    if (!out.pass && !out.witness) {
        out.witness = finest_peak;
        out.witness->reason = "gamma_SF grows faster than ||M||^(alpha + slack); peak on the finest level";
    }
    return out;
}

TruncatedConstant gamma_ip(const FundamentalInterpolant& ifun, double alpha, double q, int zmax) {
    require_coverage(ifun, zmax);
    const Pattern& p = *ifun.pattern;
    const std::size_t m = static_cast<std::size_t>(p.m());
    const WeightSpec ws = WeightSpec::make(alpha, p, q);
    const double mfac = std::isinf(q) ? std::pow(p.spectral().norm2, alpha)
                                      : std::pow(p.spectral().norm2, alpha * q);

    std::vector<double> inner(m, 0.0), outer(m, 0.0), shell(m, 0.0);
    const std::vector<std::uint32_t> cls = mode_classes(ifun);
    for (std::size_t i = 0; i < ifun.series.size(); ++i) {
        const auto k = ifun.series.index(i);
        const IntVec z = p.matrix_t().quotient(k);
        const Int n = ZBox::inf_norm(z);
        if (n > zmax) continue;
        const std::size_t c = cls[i];
        const double a = std::abs(ifun.series.coeff(i));
        if (n == 0) {
            inner[c] = std::isinf(q) ? a : std::pow(a, q);
            continue;
        }
        const double v = weight(z, ws) * a;
        outer[c] = lq_accumulate(outer[c], v, q);
        if (n == zmax) shell[c] = lq_accumulate(shell[c], v, q);
    }

    TruncatedConstant out;
    double best = 0.0, mass = 0.0, shell_mass = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
        const double v = std::isinf(q) ? std::max(inner[c], mfac * outer[c])
                                       : lq_finish(inner[c] + mfac * outer[c], q);
        best = std::max(best, v);
        mass += std::isinf(q) ? 0.0 : inner[c] + mfac * outer[c];
        shell_mass += std::isinf(q) ? 0.0 : mfac * shell[c];
    }
    out.value = static_cast<double>(m) * best;
    out.last_shell_fraction = mass > 0.0 ? shell_mass / mass : 0.0;
    return out;
}

GammaSm gamma_sm(double mu, double alpha, double q, int d, int zcut) {
    if (q < 1.0) throw std::invalid_argument("q must be >= 1");
    const double bound = d * (1.0 - (std::isinf(q) ? 0.0 : 1.0 / q));
    if (!(mu > bound + 1e-12)) {
        std::ostringstream os;
        os << "mu = " << mu << " must exceed d(1 - 1/q) = " << bound;
        throw DivergentSeries(os.str());
    }
    // For h in G_S(M^T), |(M^{-T} h)_i + z_i| >= (|z_i| - 1/2)_+, so
    // sigma_{-p mu}(h + M^T z) <= (||M||_2 / 2)^{-p mu} ||(2|z| - 1)_+||^{-p mu}.
    const double pre = std::pow(1.0 + d, 0.5 * alpha) * std::pow(2.0, mu);
    const double printed_pre = std::pow(1.0 + d, 0.5 * alpha) * std::pow(2.0, -mu);
    GammaSm out;
    if (q == 1.0) {
        // Smallest norms over z != 0: 1 for ||(2|z| - 1)_+|| (at unit vectors), sqrt(d) for ||2|z| - 1||.
        out.partial = 1.0;
        out.value = pre;
        out.printed = printed_pre * std::pow(static_cast<double>(d), -0.5 * mu);
        return out;
    }
    const double p = std::isinf(q) ? 1.0 : q / (q - 1.0);
    const double e = p * mu;

    IntVec z(d, -zcut);
    double acc = 0.0, acc_printed = 0.0;
    for (;;) {
        if (!is_zero(z)) {
            double n2 = 0.0, n2_printed = 0.0;
            for (Int v : z) {
                const double t = 2.0 * std::abs(static_cast<double>(v)) - 1.0;
                n2_printed += t * t;
                if (t > 0.0) n2 += t * t;
            }
            acc += std::pow(n2, -0.5 * e);
            acc_printed += std::pow(n2_printed, -0.5 * e);
        }
        int i = d - 1;
        while (i >= 0 && z[i] == zcut) z[i--] = -zcut;
        if (i < 0) break;
        ++z[i];
    }
    out.partial = acc;
    // For ||z||_inf = n both norms are >= 2n - 1 >= n, and there are at most 2 d 3^{d-1} n^{d-1} such z.
    out.tail = 2.0 * d * std::pow(3.0, d - 1) * std::pow(static_cast<double>(zcut), d - e) / (e - d);
    out.value = pre * std::pow(out.partial + out.tail, 1.0 / p);
    out.printed = printed_pre * std::pow(acc_printed + out.tail, 1.0 / p);
    return out;
}

CRho c_rho(double gamma_sf, double gamma_ip_v, double gamma_sm_v, double s, double mu, double alpha, int d) {
    CRho out;
    out.rho_is_s = s <= mu - alpha;
    out.rho = out.rho_is_s ? s : mu - alpha;
    const double sf = out.rho_is_s ? gamma_sf : std::pow(1.0 + d, s + alpha - mu) * gamma_sf;
    out.c = sf + std::pow(2.0, mu - alpha) + gamma_ip_v * gamma_sm_v;
    return out;
}

} // namespace aniso
