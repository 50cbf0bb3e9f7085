#include "aniso/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "aniso/errors.hpp"
#include "aniso/fspaces.hpp"

namespace aniso {

KernelSpec KernelSpec::parse(const std::string& text) {
    std::string t = text;
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t\r\n") + 1);
    std::string lower = t;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "dirichlet") return {Dirichlet{}};
    return {BoxSplineSpec::parse(t)};
}

std::string KernelSpec::to_string() const {
    if (is_dirichlet()) return "dirichlet";
    return std::get<BoxSplineSpec>(kind).to_string();
}

FourierSeries dirichlet_kernel(const Pattern& p) {
    FourierSeries::Builder b(p.dim());
    b.reserve(p.freqs().size());
    for (const auto& h : p.freqs()) b.add(h, 1.0);
    return std::move(b).build();
}

BuiltInterpolant build_interpolant(const KernelSpec& kernel, const PatternPtr& p, const PeriodizationWindow& win,
                                   bool allow_incorrect) {
    if (kernel.is_dirichlet()) return {fundamental_interpolant(dirichlet_kernel(*p), p, allow_incorrect), 0.0};
    const PeriodizedSeries ps = periodize(std::get<BoxSplineSpec>(kernel.kind), p, win);
    return {fundamental_interpolant(ps.series, p, allow_incorrect, ps.radius), ps.tail_bound};
}

ErrorBreakdown interp_error(const FourierSeries& f, const FundamentalInterpolant& ifun, double alpha, double q) {
    const PatternPtr& p = ifun.pattern;
    const WeightSpec ws = WeightSpec::make(alpha, *p, q);

    const SampleVector samples = sample_at_nodes(f, p);
    const FourierSeries lf = interpolation_operator(samples, ifun);
    const FourierSeries s = fourier_partial_sum(f, *p);
    const FourierSeries ls = interpolation_operator(sample_at_nodes(s, p), ifun);
    const FourierSeries rest = f - s;
    const FourierSeries lrest = interpolation_operator(sample_at_nodes(rest, p), ifun);

    ErrorBreakdown out;
    out.total = a_norm(f - lf, alpha, ws);
    out.trig = a_norm(s - ls, alpha, ws);
    out.partial = a_norm(rest, alpha, ws);
    out.aliasing = a_norm(lrest, alpha, ws);

    const SampleVector back = sample_at_nodes(lf, p);
    for (std::size_t i = 0; i < back.values.size(); ++i)
        out.node_residual = std::max(out.node_residual, std::abs(back.values[i] - samples.values[i]));
    return out;
}

namespace {

TheoremCheck make_check(double measured, double rhs) {
    TheoremCheck c{measured, rhs, 0.0};
    if (measured == 0.0)
        c.ratio = 0.0;
    else
        c.ratio = rhs > 0.0 ? measured / rhs : std::numeric_limits<double>::infinity();
    return c;
}

double rate_base(const Pattern& p, SFMode mode) {
    const auto& sd = p.spectral();
    return mode == SFMode::Strict ? 1.0 / sd.norm2 : sd.kappa / sd.norm2;
}

} // namespace

TheoremCheck check_trig_theorem(const FourierSeries& f, const FundamentalInterpolant& ifun, const SFReport& sf) {
    const Pattern& p = *ifun.pattern;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!p.matrix_t().in_cell(f.index(i)))
            throw std::invalid_argument("trig-polynomial bound needs f supported in G_S(M^T)");
    const double q = sf.params.q;
    const WeightSpec ws = WeightSpec::make(sf.params.alpha, p, q);
    const FourierSeries lf = interpolation_operator(sample_at_nodes(f, ifun.pattern), ifun);
    const double measured = a_norm(f - lf, sf.params.alpha, ws);
    const double rhs = std::pow(rate_base(p, sf.params.mode), sf.params.s) * sf.gamma_sf *
                       a_norm(f, sf.params.alpha + sf.params.s, ws);
    return make_check(measured, rhs);
}

TheoremCheck check_partial_sum_theorem(const FourierSeries& f, const Pattern& p, double alpha, double mu, double q) {
    if (mu < alpha) throw std::invalid_argument("partial-sum bound needs mu >= alpha");
    const WeightSpec ws = WeightSpec::make(alpha, p, q);
    const double measured = a_norm(f - fourier_partial_sum(f, p), alpha, ws);
    const double rhs = std::pow(2.0 / p.spectral().norm2, mu - alpha) * a_norm(f, mu, ws);
    return make_check(measured, rhs);
}

TheoremCheck check_aliasing_theorem(const FourierSeries& f, const FundamentalInterpolant& ifun, double alpha,
                                    double mu, double q, int zmax) {
    const Pattern& p = *ifun.pattern;
    if (mu < alpha) throw std::invalid_argument("aliasing bound needs mu >= alpha");
    const GammaSm gsm = gamma_sm(mu, alpha, q, p.dim());
    const TruncatedConstant gip = gamma_ip(ifun, alpha, q, zmax);
    const WeightSpec ws = WeightSpec::make(alpha, p, q);
    const FourierSeries rest = f - fourier_partial_sum(f, p);
    const double measured = a_norm(interpolation_operator(sample_at_nodes(rest, ifun.pattern), ifun), alpha, ws);
    const double rhs = gip.value * gsm.value * std::pow(p.spectral().norm2, alpha - mu) * a_norm(f, mu, ws);
    return make_check(measured, rhs);
}

FourierSeries decay_profile(const Pattern& base, double gamma, int radius) {
    const int d = base.dim();
    const WeightSpec ws = WeightSpec::make(-gamma, base);
    FourierSeries::Builder b(d);
    IntVec k(d, -radius);
    for (;;) {
        b.add(k, weight(k, ws));
        int i = d - 1;
        while (i >= 0 && k[i] == radius) k[i--] = -radius;
        if (i < 0) break;
        ++k[i];
    }
    return std::move(b).build();
}

double profile_tail_mass(int d, double gamma, double alpha, double q, int radius) {
    // ||M^{-T} k|| >= ||k|| / ||M|| gives sigma_{alpha-gamma}(k) <= n^{alpha-gamma} on ||k||_inf = n.
    const double e = gamma - alpha;
    if (std::isinf(q)) return std::pow(radius + 1.0, -e);
    if (e * q <= d) return std::numeric_limits<double>::infinity();
    const double mass = 2.0 * d * std::pow(3.0, d - 1) * std::pow(static_cast<double>(radius), d - e * q) / (e * q - d);
    return std::pow(mass, 1.0 / q);
}

BoundReport convergence_study(const ExperimentSpec& spec) {
    const PatternPtr base = Pattern::create(spec.base);
    const int d = base->dim();
    if (spec.mu < spec.alpha || spec.alpha < 0.0) throw std::invalid_argument("need mu >= alpha >= 0");
    const double gamma = spec.profile_decay > 0.0 ? spec.profile_decay : spec.mu + 0.5 * d + 1.0;

    BoundReport rep;
    if (spec.order)
        rep.order = *spec.order;
    else if (spec.kernel.is_dirichlet())
        rep.order = spec.mu - spec.alpha;
    else
        rep.order = sf_order(std::get<BoxSplineSpec>(spec.kernel.kind)) - spec.alpha;
    const GammaSm gsm = gamma_sm(spec.mu, spec.alpha, spec.q, d);
    rep.gamma_sm = gsm.value;

    const FourierSeries f = decay_profile(*base, gamma, spec.profile_radius);
    // sigma^{M} is invariant under M -> 2^j M, so the norm is level independent.
    rep.f_norm_mu = a_norm(f, spec.mu, WeightSpec::make(spec.mu, *base, spec.q));
    rep.profile_tail = profile_tail_mass(d, gamma, spec.alpha, spec.q, spec.profile_radius);

    rep.verdict = true;
    for (int j : spec.scales) {
        const PatternPtr p = Pattern::create(spec.base.scaled(Int{1} << j));
        if (!is_expanding(p->spectral())) throw NotExpanding("M_" + std::to_string(j) + " is not expanding");
        const BuiltInterpolant built = build_interpolant(spec.kernel, p, spec.window);
        const int zmax = spec.window.radius;

        BoundRow row;
        row.j = j;
        row.m = p->m();
        row.norm2 = p->spectral().norm2;
        const SFReport sf = verify_sfc(built.ifun, {rep.order, spec.alpha, spec.q, spec.mode}, zmax);
        row.sf_pass = sf.pass;
        row.gamma_sf = sf.gamma_sf;
        row.gamma_ip = gamma_ip(built.ifun, spec.alpha, spec.q, zmax).value;
        const CRho cr = c_rho(row.gamma_sf, row.gamma_ip, rep.gamma_sm, rep.order, spec.mu, spec.alpha, d);
        rep.rho = cr.rho;
        row.c_rho = cr.c;
        row.parts = interp_error(f, built.ifun, spec.alpha, spec.q);
        row.node_residual = row.parts.node_residual;
        row.error = row.parts.total + rep.profile_tail;
        row.bound = cr.c * std::pow(rate_base(*p, spec.mode), cr.rho) * rep.f_norm_mu;
        row.ratio = make_check(row.error, row.bound).ratio;
        rep.verdict = rep.verdict && row.sf_pass && row.ratio <= 1.0 + kTheoremTol;
        rep.rows.push_back(row);
    }

    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.rows)
        if (r.j >= 1 && r.error > 0.0) pts.push_back({std::log(r.norm2), std::log(r.error)});
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double n = static_cast<double>(pts.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double icpt = (sy - slope * sx) / n;
        double res = 0.0;
        for (auto [x, y] : pts) res += (y - icpt - slope * x) * (y - icpt - slope * x);
        rep.fitted_rate = slope;
        rep.fit_residual = std::sqrt(res / n);
    }
    return rep;
}

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string bound_report_csv(const BoundReport& r) {
    std::string out = "j,m,norm2,error,bound,ratio\n";
    for (const auto& row : r.rows)
        out += std::to_string(row.j) + "," + std::to_string(row.m) + "," + g17(row.norm2) + "," + g17(row.error) +
               "," + g17(row.bound) + "," + g17(row.ratio) + "\n";
    return out;
}

std::string bound_report_svg(const BoundReport& r) {
    const double W = 640, H = 440, L = 80, R = 30, T = 40, B = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& row : r.rows) {
        xmin = std::min(xmin, std::log10(row.norm2));
        xmax = std::max(xmax, std::log10(row.norm2));
        for (double v : {row.error, row.bound})
            if (v > 0.0) {
                ymin = std::min(ymin, std::log10(v));
                ymax = std::max(ymax, std::log10(v));
            }
    }
    if (r.rows.empty() || ymin > ymax) {
        xmin = 0, xmax = 1, ymin = -1, ymax = 0;
    }
    xmin = std::floor(xmin * 10) / 10 - 0.05;
    xmax = std::ceil(xmax * 10) / 10 + 0.05;
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
    if (xmax - xmin < 0.2) xmax = xmin + 0.2;
    if (ymax - ymin < 1) ymax = ymin + 1;

    auto px = [&](double lx) { return L + (lx - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double ly) { return H - B - (ly - ymin) / (ymax - ymin) * (H - T - B); };
    std::ostringstream os;
    os.precision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); ++e) {
        const double y = py(e);
        os << "<line x1=\"" << L << "\" y1=\"" << y << "\" x2=\"" << W - R << "\" y2=\"" << y
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    for (const auto& row : r.rows) {
        const double x = px(std::log10(row.norm2));
        os << "<line x1=\"" << x << "\" y1=\"" << H - B << "\" x2=\"" << x << "\" y2=\"" << H - B + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << x << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << row.norm2
           << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">||M_j||_2</text>\n";

    auto polyline = [&](auto value, const char* colour) {
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (const auto& row : r.rows)
            if (value(row) > 0.0) os << px(std::log10(row.norm2)) << "," << py(std::log10(value(row))) << " ";
        os << "\"/>\n";
        for (const auto& row : r.rows)
            if (value(row) > 0.0)
                os << "<circle cx=\"" << px(std::log10(row.norm2)) << "\" cy=\"" << py(std::log10(value(row)))
                   << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    };
    polyline([](const BoundRow& row) { return row.error; }, "#1f77b4");
    polyline([](const BoundRow& row) { return row.bound; }, "#d62728");

    os << "<text x=\"" << L + 10 << "\" y=\"" << T + 18 << "\" fill=\"#1f77b4\">measured error</text>\n";
    os << "<text x=\"" << L + 10 << "\" y=\"" << T + 34 << "\" fill=\"#d62728\">bound C_rho ||M||^-rho ||f||</text>\n";
    os << "<text x=\"" << W - R - 10 << "\" y=\"" << T + 18 << "\" text-anchor=\"end\">fitted slope "
       << r.fitted_rate << " (rho = " << r.rho << ")</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace aniso
