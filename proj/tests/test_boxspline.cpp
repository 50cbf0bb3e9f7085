#include <doctest.h>

#include <numbers>

#include "aniso/boxspline.hpp"
#include "aniso/errors.hpp"
#include "aniso/fspaces.hpp"
#include "oracles.hpp"

using namespace aniso;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct product formula at 2 pi M^{-T} k / m, no rational reduction.
double naive_coeff(const IntVec& k, const BoxSplineSpec& spec, const Pattern& p) {
    const auto inv = oracle::inverse(p.matrix().matrix().transposed());
    const int d = spec.d;
    std::vector<double> xi(d, 0.0);
    for (int i = 0; i < d; ++i) {
        long double s = 0;
        for (int j = 0; j < d; ++j) s += inv[i * d + j] * k[j];
        xi[i] = 2.0 * kPi * static_cast<double>(s);
    }
    double v = 1.0;
    for (std::size_t j = 0; j < spec.directions.size(); ++j) {
        double t = 0.0;
        for (int i = 0; i < d; ++i) t += spec.directions[j][i] * xi[i];
        t /= 2.0;
        v *= std::pow(t == 0.0 ? 1.0 : std::sin(t) / t, spec.p[j]);
    }
    return v / static_cast<double>(p.m());
}

} // namespace

TEST_CASE("spec construction and parsing") {
    const auto s = BoxSplineSpec::parse("2; 2,2,2");
    CHECK(s.directions == std::vector<IntVec>{{1, 0}, {0, 1}, {1, 1}});
    CHECK(s.p == std::vector<int>{2, 2, 2});
    CHECK(BoxSplineSpec::parse(s.to_string()).p == s.p);
    const auto f = BoxSplineSpec::parse("2; 1,1,1,1");
    CHECK(f.directions.size() == 4);
    CHECK(f.directions[3] == IntVec{1, -1});
    CHECK(BoxSplineSpec::parse("3; 1,1,1,1,1,1").directions.size() == 6);
    CHECK_THROWS_AS(BoxSplineSpec::parse("2; 1,1"), ParseError);
    CHECK_THROWS_AS(BoxSplineSpec::parse("2 1,1,1"), ParseError);
    CHECK_THROWS_AS(BoxSplineSpec::parse("2; 1,0,1"), ParseError);
}

TEST_CASE("Fourier transform") {
    const auto s = BoxSplineSpec::three_directional(1, 1, 1);
    CHECK(boxspline_hat(std::vector<double>{0.0, 0.0}, s) == 1.0);
    CHECK(boxspline_hat(std::vector<double>{kPi, 0.0}, s) == doctest::Approx(4.0 / (kPi * kPi)).epsilon(1e-14));
    CHECK(std::abs(boxspline_hat(std::vector<double>{2 * kPi, 0.0}, s)) < 1e-15);
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-9) == doctest::Approx(1.0));
}

TEST_CASE("periodized coefficients") {
    const auto p = Pattern::create(IntMatrix{{2, 0}, {0, 2}});
    const auto s = BoxSplineSpec::three_directional(1, 1, 1);
    CHECK(periodized_coeff(IntVec{0, 0}, s, *p) == 0.25);
    CHECK(periodized_coeff(IntVec{1, 0}, s, *p) == doctest::Approx(0.25 * 4.0 / (kPi * kPi)).epsilon(1e-14));
    CHECK(periodized_coeff(IntVec{2, 0}, s, *p) == 0.0);  // exact sinc zero

    const auto q = Pattern::create(IntMatrix{{8, 3}, {0, 8}});
    const auto s2 = BoxSplineSpec::three_directional(2, 1, 3);
    for (Int a = -20; a <= 20; a += 3)
        for (Int b = -20; b <= 20; b += 4) {
            const IntVec k{a, b};
            CHECK(periodized_coeff(k, s2, *q) == doctest::Approx(naive_coeff(k, s2, *q)).epsilon(1e-12).scale(1e-15));
        }
}

TEST_CASE("periodize window and tail") {
    const auto p = Pattern::create(IntMatrix{{2, 0}, {0, 2}});
    const auto s = BoxSplineSpec::three_directional(2, 2, 2);
    const auto ps = periodize(s, p, {16, 1e-6, kInf});
    CHECK(ps.radius == 16);
    CHECK(ps.tail_bound < 1e-6);
    CHECK(ps.series.size() <= static_cast<std::size_t>(4 * 33 * 33));
    CHECK(ps.series.at(IntVec{0, 0}) == cplx(0.25));
    for (std::size_t i = 0; i < ps.series.size(); ++i) CHECK(ps.series.coeff(i).imag() == 0.0);
    // Every window index is either stored or an exact zero.
    for (Int a = -33; a <= 32; ++a)
        for (Int b = -33; b <= 32; ++b) {
            const IntVec k{a, b};
            if (!ps.series.find(k)) CHECK(periodized_coeff(k, s, *p) == 0.0);
        }
    CHECK_THROWS_AS(periodize(s, p, {16, 1e-8, kInf}), TailTooLarge);
    CHECK(periodize(s, p, {32, 1e-8, kInf}).tail_bound < 1e-8);
}

TEST_CASE("tail bound dominates the omitted terms") {
    const auto p = Pattern::create(IntMatrix{{2, 1}, {0, 2}});
    const auto s = BoxSplineSpec::three_directional(2, 2, 2);
    const int R = 6;
    const double bound = periodization_tail(s, R, kInf);
    // Largest omitted term |m c_{h + M^T z}| for ||z||_inf in (R, 3R].
    const IntMatrix mt = p->matrix().matrix().transposed();
    double worst = 0.0;
    for (const auto& h : p->freqs())
        for (Int z1 = -3 * R; z1 <= 3 * R; ++z1)
            for (Int z2 = -3 * R; z2 <= 3 * R; ++z2) {
                if (std::max(std::abs(z1), std::abs(z2)) <= R) continue;
                const auto mz = mt.apply(IntVec{z1, z2});
                const IntVec k{h[0] + mz[0], h[1] + mz[1]};
                worst = std::max(worst, std::abs(periodized_coeff(k, s, *p)) * static_cast<double>(p->m()));
            }
    CHECK(worst <= bound);
    CHECK(periodization_tail(s, R, 2.0) >= periodization_tail(s, R, kInf));
    CHECK(periodization_tail(s, R, 1.0) >= periodization_tail(s, R, 2.0));
}

TEST_CASE("Strang-Fix order of box splines") {
    CHECK(sf_order(BoxSplineSpec::three_directional(1, 1, 1)) == 2);
    CHECK(sf_order(BoxSplineSpec::three_directional(2, 2, 2)) == 4);
    CHECK(sf_order(BoxSplineSpec::three_directional(1, 2, 3)) == 3);
    CHECK(sf_order(BoxSplineSpec::full(2, {1, 1, 1, 1})) == 3);
    CHECK(sf_order(BoxSplineSpec::symmetric(3, {1, 1, 1, 1, 1, 1})) == 3);
}
