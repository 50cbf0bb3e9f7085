#include <doctest.h>

#include "aniso/bounds.hpp"
#include "aniso/errors.hpp"
#include "aniso/strangfix.hpp"
#include "oracles.hpp"

using namespace aniso;

namespace {

const IntMatrix kTwoE2{{2, 0}, {0, 2}};

FundamentalInterpolant box222(const PatternPtr& p, int radius = 32) {
    return build_interpolant(KernelSpec::parse("2; 2,2,2"), p, {radius, 1e-6, kInf}).ifun;
}

// b_z by direct maximization over h, following the defining inequalities.
double oracle_b(const FundamentalInterpolant& ifun, const IntVec& z, const SFParams& prm) {
    const Pattern& p = *ifun.pattern;
    const double m = static_cast<double>(p.m());
    const double n2 = oracle::norm2(p.matrix().matrix());
    const double kappa = p.spectral().kappa;
    const double strict = prm.mode == SFMode::Strict ? std::pow(kappa, -prm.s) : 1.0;
    const auto inv = oracle::inverse(p.matrix().matrix().transposed());
    const auto mz = p.matrix().matrix().transposed().apply(z);
    const bool origin = z == IntVec(z.size(), 0);
    double b = 0.0;
    for (const auto& h : p.freqs()) {
        long double s = 0;
        for (int i = 0; i < 2; ++i) {
            long double x = 0;
            for (int j = 0; j < 2; ++j) x += inv[i * 2 + j] * h[j];
            s += x * x;
        }
        const double r = std::sqrt(static_cast<double>(s));
        const IntVec k{h[0] + mz[0], h[1] + mz[1]};
        const double c = std::abs(ifun.series.at(k));
        if (origin) {
            if (h == IntVec{0, 0}) continue;
            b = std::max(b, std::abs(1.0 - m * c) / (strict * std::pow(r, prm.s)));
        } else {
            if (h == IntVec{0, 0}) continue;
            b = std::max(b, m * c / (strict * std::pow(n2, -prm.alpha) * std::pow(r, prm.s)));
        }
    }
    return b;
}

} // namespace

TEST_CASE("Dirichlet interpolant satisfies every order with b = 0") {
    const auto p = Pattern::create(IntMatrix{{8, 3}, {0, 8}});
    const auto ifun = build_interpolant(KernelSpec::parse("dirichlet"), p, {}).ifun;
    const auto r = verify_sfc(ifun, {3.0, 0.0, 2.0, SFMode::Strict}, 4);
    CHECK(r.pass);
    CHECK(r.gamma_sf == 0.0);
    for (double b : r.b) CHECK(b == 0.0);
    CHECK(gamma_ip(ifun, 0.0, 2.0, 4).value == doctest::Approx(1.0));
}

TEST_CASE("box spline on 2 E_2 at its order") {
    const auto p = Pattern::create(kTwoE2);
    const auto ifun = box222(p);
    const SFParams prm{4.0, 0.0, 2.0, SFMode::Strict};
    const auto r = verify_sfc(ifun, prm, 32);
    CHECK(r.pass);
    CHECK(std::isfinite(r.gamma_sf));
    CHECK(r.gamma_sf > 0.0);
    CHECK(r.last_shell_fraction < kShellTol);
    for (const IntVec& z : {IntVec{0, 0}, IntVec{1, 0}, IntVec{-1, 2}, IntVec{3, 3}})
        CHECK(r.b_at(z) == doctest::Approx(oracle_b(ifun, z, prm)).epsilon(1e-9));
    CHECK_THROWS_AS(verify_sfc(ifun, prm, 33), InsufficientSupport);

    const SFParams rel{4.0, 1.0, 2.0, SFMode::Relaxed};
    const auto rr = verify_sfc(ifun, rel, 8);
    CHECK(rr.b_at(IntVec{1, 1}) == doctest::Approx(oracle_b(ifun, IntVec{1, 1}, rel)).epsilon(1e-9));
}

TEST_CASE("overclaimed order fails the family check") {
    const IntMatrix m0{{2, 1}, {0, 2}};
    auto build = [](const PatternPtr& p) { return box222(p, 16); };
    const auto ok = verify_sfc_order(build, m0, 3, {4.0, 0.0, 2.0, SFMode::Strict}, 16);
    CHECK(ok.pass);
    CHECK(ok.growth <= ok.allowed);
    const auto bad = verify_sfc_order(build, m0, 3, {8.0, 0.0, 2.0, SFMode::Strict}, 16);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.witness.has_value());
    CHECK(std::isfinite(bad.witness->ratio));
    CHECK(bad.growth > 3.0);
}

TEST_CASE("gamma_IP") {
    const auto p = Pattern::create(kTwoE2);
    const auto ifun = box222(p);
    const double g2 = gamma_ip(ifun, 0.0, 2.0, 16).value;
    CHECK(std::isfinite(g2));
    CHECK(std::abs(g2 - gamma_ip(ifun, 0.0, 2.0, 24).value) < 1e-4);
    const double ginf = gamma_ip(ifun, 1.0, kInf, 16).value;
    CHECK(gamma_ip(ifun, 1.0, 200.0, 16).value == doctest::Approx(ginf).epsilon(0.01));
}

TEST_CASE("gamma_Sm") {
    // q = 1: sup attained at unit vectors, ||(2|z| - 1)_+|| = 1 there (and ||2|z| - 1|| = sqrt 2).
    const auto g1 = gamma_sm(4.0, 0.0, 1.0, 2);
    CHECK(g1.value == doctest::Approx(16.0));
    CHECK(g1.printed == doctest::Approx(std::pow(2.0, -4.0) * std::pow(2.0, -2.0)));
    CHECK(gamma_sm(4.0, 2.0, 1.0, 2).value == doctest::Approx(3.0 * 16.0));
    const auto a = gamma_sm(4.0, 0.0, 2.0, 2, 100);
    const auto b = gamma_sm(4.0, 0.0, 2.0, 2, 60);
    CHECK(std::abs(a.value - b.value) < 1e-8);
    CHECK(a.tail < 1e-8);
    // The sum over z dominates sup_h sum_z sigma_{-p mu}(h + M^T z) (||M||_2 / 2)^{p mu}.
    const auto p = Pattern::create(IntMatrix{{2, 1}, {0, 2}});
    const double n2 = p->spectral().norm2;
    const IntMatrix mt = p->matrix_t().matrix();
    double worst = 0.0;
    for (const auto& h : p->freqs()) {
        double s = 0.0;
        for (Int z1 = -30; z1 <= 30; ++z1)
            for (Int z2 = -30; z2 <= 30; ++z2) {
                if (!z1 && !z2) continue;
                const auto mz = mt.apply(IntVec{z1, z2});
                s += oracle::weight(IntVec{h[0] + mz[0], h[1] + mz[1]}, -8.0, *p);
            }
        worst = std::max(worst, s);
    }
    const double sum_bound = std::pow(a.value / std::pow(2.0, 4.0), 2.0) * std::pow(n2 / 2.0, -8.0);
    CHECK(worst <= sum_bound);
    CHECK(worst > std::pow(a.printed / std::pow(2.0, -4.0), 2.0) * std::pow(2.0, -8.0) * std::pow(n2, -8.0));
    CHECK_THROWS_AS(gamma_sm(1.0, 0.0, 2.0, 2), DivergentSeries);
    CHECK_THROWS_AS(gamma_sm(2.0, 0.0, kInf, 2), DivergentSeries);
    CHECK_NOTHROW(gamma_sm(2.5, 0.0, kInf, 2));
}

TEST_CASE("C_rho case selection") {
    const auto c1 = c_rho(1.0, 1.0, 1.0, 4.0, 6.0, 0.0, 2);
    CHECK(c1.rho == 4.0);
    CHECK(c1.rho_is_s);
    const auto c2 = c_rho(1.0, 1.0, 1.0, 4.0, 3.0, 0.0, 2);
    CHECK(c2.rho == 3.0);
    CHECK_FALSE(c2.rho_is_s);
    CHECK(c2.c == doctest::Approx(3.0 + 8.0 + 1.0));
    CHECK(c_rho(1.0, 1.0, 1.0, 2.0, 2.0, 0.0, 2).c == doctest::Approx(6.0));
}
