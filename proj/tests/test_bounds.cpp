#include <doctest.h>

#include <random>

#include "aniso/bounds.hpp"
#include "aniso/errors.hpp"
#include "oracles.hpp"

using namespace aniso;

namespace {

FourierSeries single(IntVec k, cplx c = 1.0) {
    FourierSeries::Builder b(static_cast<int>(k.size()));
    b.add(k, c);
    return std::move(b).build();
}

const IntMatrix kTwoE2{{2, 0}, {0, 2}};
const IntMatrix kShear8{{8, 3}, {0, 8}};

FundamentalInterpolant dirichlet(const PatternPtr& p) {
    return build_interpolant(KernelSpec::parse("dirichlet"), p, {}).ifun;
}

} // namespace

TEST_CASE("kernel spec") {
    CHECK(KernelSpec::parse("dirichlet").is_dirichlet());
    CHECK(KernelSpec::parse(" Dirichlet ").is_dirichlet());
    const auto k = KernelSpec::parse("2; 2,2,2");
    CHECK_FALSE(k.is_dirichlet());
    CHECK(KernelSpec::parse(k.to_string()).to_string() == k.to_string());
    CHECK_THROWS_AS(KernelSpec::parse("gauss"), ParseError);
}

TEST_CASE("interpolation error") {
    const auto p = Pattern::create(kShear8);
    const auto dir = dirichlet(p);
    std::mt19937_64 rng(1);
    const auto t = oracle::random_trig(rng, *p);
    CHECK(interp_error(t, dir, 1.0, 2.0).total < 1e-10);

    // One mode outside G_S: L_M f is the aliased mode.
    const IntVec k0{21, -30};
    const IntVec h0 = oracle::reduce(k0, *p);
    for (double q : {1.0, 2.0, kInf}) {
        const auto e = interp_error(single(k0), dir, 1.5, q);
        const double a = oracle::weight(k0, 1.5, *p), b = oracle::weight(h0, 1.5, *p);
        CHECK(e.total == doctest::Approx(oracle::lq({a, b}, q)).epsilon(1e-11));
        CHECK(e.partial == doctest::Approx(a).epsilon(1e-11));
        CHECK(e.aliasing == doctest::Approx(b).epsilon(1e-11));
        CHECK(e.trig == 0.0);
    }

    const auto bs = build_interpolant(KernelSpec::parse("2; 2,2,2"), p, {}).ifun;
    for (int t2 = 0; t2 < 5; ++t2) {
        const auto f = oracle::random_series(rng, 2, 40, 40);
        const auto e = interp_error(f, bs, 0.5, 2.0);
        CHECK(e.total <= e.trig + e.partial + e.aliasing + 1e-10);
        CHECK(e.node_residual < 1e-6);
    }
}

TEST_CASE("partial-sum bound") {
    const auto p = Pattern::create(kShear8);
    std::mt19937_64 rng0(2);
    CHECK(check_partial_sum_theorem(oracle::random_trig(rng0, *p), *p, 0.0, 3.0, 2.0).measured == 0.0);
    const IntVec k0{30, 44};
    const auto c = check_partial_sum_theorem(single(k0), *p, 1.0, 4.0, 2.0);
    const double expect = oracle::weight(k0, -3.0, *p) * std::pow(oracle::norm2(kShear8) / 2.0, 3.0);
    CHECK(c.ratio == doctest::Approx(expect).epsilon(1e-10));
    CHECK(c.holds());

    std::mt19937_64 rng(3);
    for (const IntMatrix& a : {kShear8, IntMatrix{{1, 5}, {0, 1}}, IntMatrix{{3, 1}, {1, -2}}})
        for (int t = 0; t < 20; ++t) {
            const auto pa = Pattern::create(a);
            for (double q : {1.0, 2.0, kInf})
                CHECK(check_partial_sum_theorem(oracle::random_series(rng, 2, 30, 25), *pa, 0.5, 2.5, q).holds());
        }
}

TEST_CASE("aliasing bound") {
    const auto p = Pattern::create(kShear8);
    const auto dir = dirichlet(p);
    std::mt19937_64 rng(4);
    CHECK(check_aliasing_theorem(oracle::random_trig(rng, *p), dir, 0.0, 4.0, 2.0, 2).measured == 0.0);

    const IntVec k0{-19, 27};
    const IntVec h0 = oracle::reduce(k0, *p);
    const double alpha = 1.0, mu = 4.0;
    const auto c = check_aliasing_theorem(single(k0), dir, alpha, mu, 2.0, 2);
    CHECK(c.measured == doctest::Approx(oracle::weight(h0, alpha, *p)).epsilon(1e-11));
    const double rhs = gamma_ip(dir, alpha, 2.0, 2).value * gamma_sm(mu, alpha, 2.0, 2).value *
                       std::pow(oracle::norm2(kShear8), alpha - mu) * oracle::weight(k0, mu, *p);
    CHECK(c.rhs == doctest::Approx(rhs).epsilon(1e-9));
    CHECK(c.holds());

    const auto bs = build_interpolant(KernelSpec::parse("2; 2,2,2"), p, {}).ifun;
    for (int t = 0; t < 5; ++t)
        CHECK(check_aliasing_theorem(oracle::random_series(rng, 2, 30, 60), bs, 0.0, 6.0, 2.0, 32).holds());

    // Smooth profile: mass sits right next to the cell, where the aliases are largest.
    const IntMatrix base{{2, 1}, {0, 2}};
    const auto profile = decay_profile(*Pattern::create(base), 8.0, 24);
    for (int j = 0; j <= 2; ++j) {
        const auto pj = Pattern::create(base.scaled(Int{1} << j));
        const auto ij = build_interpolant(KernelSpec::parse("2; 2,2,2"), pj, {}).ifun;
        for (double q : {1.0, 2.0, kInf}) {
            CAPTURE(j);
            CAPTURE(q);
            CHECK(check_aliasing_theorem(profile, ij, 0.0, 6.0, q, 32).holds());
        }
    }
}

TEST_CASE("trigonometric-polynomial bound") {
    const auto p = Pattern::create(kTwoE2);
    const auto bs = build_interpolant(KernelSpec::parse("2; 2,2,2"), p, {}).ifun;
    const auto sf = verify_sfc(bs, {4.0, 0.0, 2.0, SFMode::Strict}, 32);
    REQUIRE(sf.pass);
    CHECK(check_trig_theorem(FourierSeries(2), bs, sf).ratio == 0.0);
    CHECK(check_trig_theorem(dirichlet_kernel(*p), bs, sf).holds());
    CHECK_THROWS_AS(check_trig_theorem(single({5, 5}), bs, sf), std::invalid_argument);

    const auto q = Pattern::create(kShear8);
    const auto bq = build_interpolant(KernelSpec::parse("2; 2,2,2"), q, {}).ifun;
    const auto sq = verify_sfc(bq, {4.0, 0.0, 2.0, SFMode::Strict}, 32);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) CHECK(check_trig_theorem(oracle::random_trig(rng, *q), bq, sq).holds());
}

TEST_CASE("decay profile") {
    const auto p = Pattern::create(kTwoE2);
    const auto f = decay_profile(*p, 5.0, 4);
    CHECK(f.size() == 81);
    CHECK(f.at(IntVec{0, 0}) == cplx(1.0));
    CHECK(f.at(IntVec{1, 0}).real() == doctest::Approx(oracle::weight(IntVec{1, 0}, -5.0, *p)));
    // Tail bound against a direct partial sum over radius < ||k||_inf <= 60.
    double direct = 0.0;
    for (Int a = -60; a <= 60; ++a)
        for (Int b = -60; b <= 60; ++b)
            if (std::max(std::abs(a), std::abs(b)) > 4) direct += std::pow(oracle::weight(IntVec{a, b}, -5.0, *p), 2.0);
    CHECK(std::sqrt(direct) <= profile_tail_mass(2, 5.0, 0.0, 2.0, 4));
}

TEST_CASE("small convergence study and report formats") {
    ExperimentSpec spec;
    spec.base = IntMatrix{{2, 1}, {0, 2}};
    spec.scales = {0, 1, 2};
    spec.kernel = KernelSpec::parse("2; 2,2,2");
    spec.window = {16, 1e-6, kInf};
    spec.profile_radius = 16;
    const auto r = convergence_study(spec);
    CHECK(r.rho == 4.0);
    REQUIRE(r.rows.size() == 3);
    for (const auto& row : r.rows) {
        CHECK(row.ratio <= 1.0);
        CHECK(row.node_residual < 1e-6);
        CHECK(row.sf_pass);
    }
    // Doubling M shrinks (1/||M||)^rho by 2^rho.
    const auto scaled = [](const BoundRow& row) { return row.bound / row.c_rho; };
    CHECK(scaled(r.rows[1]) / scaled(r.rows[2]) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(r.verdict);
    const auto csv = bound_report_csv(r);
    CHECK(csv.rfind("j,m,norm2,error,bound,ratio\n", 0) == 0);
    CHECK(csv == bound_report_csv(convergence_study(spec)));
    const auto svg = bound_report_svg(r);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("slope") != std::string::npos);
}
