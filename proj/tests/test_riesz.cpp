#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "expsys/riesz.hpp"
#include "oracles.hpp"

#include <complex>
#include <memory>
#include <numbers>

using namespace expsys;

namespace {

std::shared_ptr<const ConvexWeight> share(ConvexDecreasingFunction f)
{
    return std::make_shared<ConvexDecreasingFunction>(std::move(f));
}

const ConvexBody kSegment = ConvexBody::segment({0, -1}, {0, 1});

}  // namespace

TEST_CASE("log|sin| in the stable form matches direct evaluation where that is safe")
{
    const auto g = TestEntireFunction::sine_type(1.3);
    for (double x = -9; x < 9; x += 0.77)
        for (double y = -4; y < 4; y += 0.61) {
            const double ref = std::log(std::abs(std::sin(1.3 * std::complex<double>(x, y))));
            CHECK(g.u({x, y}) == doctest::Approx(ref).epsilon(1e-12));
        }
    // far from the axis the direct form overflows
    CHECK(std::isfinite(g.u({3.0, 900.0})));
    CHECK(g.u({3.0, 900.0}) == doctest::Approx(1.3 * 900.0 - std::numbers::ln2));
}

TEST_CASE("majorants hold on sampled circles")
{
    std::vector<TestEntireFunction> gs{TestEntireFunction::sine_type(1.0),
                                       TestEntireFunction::polynomial(random_points(12, 20.0, 8))};
    gs.push_back(TestEntireFunction::product(gs));
    for (const auto& g : gs)
        for (double rho : {0.3, 1.7, 5.0, 33.0, 120.0})
            for (int j = 0; j < 720; ++j) {
                const double th = 2 * std::numbers::pi * j / 720 + 1e-3;
                const PlanePoint z{rho * std::cos(th), rho * std::sin(th)};
                CHECK(g.u(z) <= g.majorant(z) + 1e-12);
            }
}

TEST_CASE("zero counting of the sine-type function")
{
    const auto g = TestEntireFunction::sine_type(1.0);
    const auto Z = g.zeros_within(10.0);
    CHECK(Z.total_multiplicity() == 7);
    const auto poly = TestEntireFunction::polynomial(PointDistribution({{{1, 1}, 2}, {{5, 0}, 1}}));
    CHECK(poly.zeros_within(2.0).total_multiplicity() == 2);
    CHECK(poly.zeros_within(5.0).total_multiplicity() == 3);
}

TEST_CASE("Riesz integral against V*")
{
    const double R = 8.0;
    const RadialSubharmonic h(share(ConvexDecreasingFunction::constant(1.0)), R, 2.0);
    CHECK(riesz_integral_against_Vstar(PointDistribution({{{R / 2, 0}, 1}}), h) == doctest::Approx(1.0 / R));
    CHECK(riesz_integral_against_Vstar(PointDistribution({{{0.1, 0}, 1}, {{9, 0}, 3}}), h) == 0.0);

    const auto Z = random_points(300, 12.0, 21);
    double brute = 0.0;
    for (const auto& e : Z.entries()) {
        const double t = std::hypot(e.z.re, e.z.im);
        double v = 0.0;
        if (t > 2.0 && t <= R)
            v = 1.0 / t - 1.0 / R;
        else if (t > 0.5 && t <= 2.0)
            v = t / 4.0 - 1.0 / R;
        brute += static_cast<double>(e.mult) * std::max(v, 0.0);
    }
    CHECK(riesz_integral_against_Vstar(Z, h) == doctest::Approx(brute).epsilon(1e-13));
}

TEST_CASE("support-mass integral")
{
    const RadialSubharmonic h(share(ConvexDecreasingFunction::constant(1.0)), 2.0, 1.0);
    const ConvexBody unit = ConvexBody::segment({0, 0}, {0.5, 0});  // perimeter 1
    const double expect = (0.125 + std::log(2.0) - 0.5) / (2 * std::numbers::pi);
    CHECK(support_mass_integral_against_Vstar(unit, h) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(expect == doctest::Approx(0.0506).epsilon(1e-3));
    CHECK(support_mass_integral_against_Vstar(scale(unit, 2.0), h) ==
          doctest::Approx(2 * support_mass_integral_against_Vstar(unit, h)));
    const ConvexBody disk = ConvexBody::disk({0, 0}, 1.0);
    const ConvexBody square = ConvexBody::polygon({{0, 0}, {std::numbers::pi / 2, 0},
                                                   {std::numbers::pi / 2, std::numbers::pi / 2},
                                                   {0, std::numbers::pi / 2}});
    CHECK(support_mass_integral_against_Vstar(disk, h) ==
          doctest::Approx(support_mass_integral_against_Vstar(square, h)).epsilon(1e-14));
    CHECK_THROWS(support_mass_integral_against_Vstar(ConvexBody::point({0, 0}), h));
}

TEST_CASE("Riesz-mass inequality for sin z on the segment")
{
    const auto g = TestEntireFunction::sine_type(1.0);
    const RadialSubharmonic h(share(ConvexDecreasingFunction::constant(1.0)), 40.0, 2.5);
    const auto rep = lemma22_check(g, kSegment, h, {.circle_samples = 4096});
    CHECK(rep.slack >= -1e-6);
    CHECK(rep.slack == doctest::Approx(rep.rhs - rep.lhs));
    CHECK(rep.quadrature_error_estimate < 1e-5);

    // lhs by hand: zeros pi k inside (r, R] and their reflections into (r^2/R, r]
    double lhs = 0.0;
    for (int k = -12; k <= 12; ++k) {
        const double t = std::abs(std::numbers::pi * k);
        if (t > 2.5 && t <= 40.0)
            lhs += 1.0 / t - 1.0 / 40.0;
        else if (t > 2.5 * 2.5 / 40.0 && t <= 2.5)
            lhs += std::max(t / 6.25 - 1.0 / 40.0, 0.0);
    }
    CHECK(rep.lhs == doctest::Approx(lhs).epsilon(1e-14));

    // circle integral by an independent Simpson rule in theta
    const auto integrand = [&](double th) {
        const PlanePoint z{2.5 * std::cos(th), 2.5 * std::sin(th)};
        return std::log(std::abs(std::sin(std::complex<double>(z.re, z.im)))) - std::abs(z.im);
    };
    // |Im z| has kinks at 0 and pi
    const double w = oracle::simpson(integrand, 0.0, std::numbers::pi, 20000) +
                     oracle::simpson(integrand, std::numbers::pi, 2 * std::numbers::pi, 20000);
    const double expect = 2.5 / std::numbers::pi * w * (-1.0 / 6.25);
    CHECK(std::abs(rep.boundary_term - expect) <= rep.quadrature_error_estimate);
}

TEST_CASE("inequality with all zeros outside the disk")
{
    const auto g = TestEntireFunction::polynomial(PointDistribution({{{50, 3}, 2}, {{-41, -7}, 1}}));
    const RadialSubharmonic h(share(ConvexDecreasingFunction::power(0.5)), 32.0, 4.0);
    const auto rep = lemma22_check(g, g.growth_body(), h);
    CHECK(rep.lhs == 0.0);
    CHECK(rep.boundary_term >= 0.0);
    CHECK(rep.slack >= -1e-6);
}

TEST_CASE("degenerate equality case u = M")
{
    // g = 1 gives u = 0; a body shrunk to the origin gives M = 0 up to 1e-300
    const auto g = TestEntireFunction::polynomial(PointDistribution());
    const RadialSubharmonic h(share(ConvexDecreasingFunction::constant(1.0)), 16.0, 2.0);
    CHECK_THROWS(lemma22_check(g, ConvexBody::point({0, 0}), h));
    const ConvexBody tiny = ConvexBody::segment({0, -1e-300}, {0, 1e-300});
    const auto rep = lemma22_check(g, tiny, h);
    CHECK(rep.lhs == 0.0);
    CHECK(std::abs(rep.boundary_term) <= 1e-250);
    CHECK(rep.slack == rep.support_mass + rep.boundary_term);
    CHECK(rep.slack >= 0.0);
}

TEST_CASE("relocation and hypothesis failures")
{
    const auto g = TestEntireFunction::sine_type(1.0);
    const RadialSubharmonic h(share(ConvexDecreasingFunction::constant(1.0)), 40.0, std::numbers::pi);
    CHECK_THROWS_AS(lemma22_check(g, kSegment, h), RelocateRadius);
    const auto rep = lemma22_check_relocating(g, kSegment, h);
    CHECK(rep.test_radius > std::numbers::pi);
    CHECK_THROWS_AS(lemma22_check_relocating(g, kSegment, h, {.min_relative_gap = 0.5}), RelocationExhausted);

    const ConvexBody small = ConvexBody::segment({0, -0.5}, {0, 0.5});
    const RadialSubharmonic h2(share(ConvexDecreasingFunction::constant(1.0)), 40.0, 2.5);
    CHECK_THROWS_AS(lemma22_check(g, small, h2), HypothesisFailure);
}

TEST_CASE("negated V makes the inequality fail")
{
    const auto g = TestEntireFunction::sine_type(1.0);
    const RadialSubharmonic h(share(ConvexDecreasingFunction::constant(1.0)), 40.0, 2.5);
    const auto rep = lemma22_check(g, kSegment, h, {.negate_v = true});
    CHECK(rep.slack < -rep.quadrature_error_estimate);
}

TEST_CASE("seeded suite: slack within error, doubling samples helps")
{
    const auto cases = lemma_suite(20, 42);
    REQUIRE(cases.size() == 20);
    for (const auto& c : cases) {
        const RadialSubharmonic h(share(c.f), c.R, c.r);
        const auto a = lemma22_check_relocating(c.g, c.g.growth_body(), h, {.circle_samples = 4096});
        CHECK(a.slack >= -a.quadrature_error_estimate);
        const auto b = lemma22_check_relocating(c.g, c.g.growth_body(), h, {.circle_samples = 8192});
        CHECK(std::abs(b.boundary_term - a.boundary_term) <= a.quadrature_error_estimate);
    }
}

TEST_CASE("deficit")
{
    const auto g = TestEntireFunction::sine_type(1.0);
    const auto one = ConvexDecreasingFunction::constant(1.0);
    const double d = theorem2_deficit(g, kSegment, one, 2.0, 100.0);
    const double ref = 2.0 / std::numbers::pi * (oracle::harmonic(31) - std::log(50.0));
    CHECK(d == doctest::Approx(ref).epsilon(1e-12));

    const auto none = TestEntireFunction::polynomial(PointDistribution());
    CHECK(theorem2_deficit(none, kSegment, one, 2.0, 100.0) == doctest::Approx(-2.0 / std::numbers::pi * std::log(50.0)));
    CHECK(theorem2_deficit(g, kSegment, one.scaled(2.0), 2.0, 100.0) == doctest::Approx(2 * d));

    const std::vector<double> rs{2, 4, 8}, Rs{10, 100, 1000, 10000};
    const auto rows = theorem2_sweep(g, kSegment, one, rs, Rs);
    CHECK(rows.size() == 12);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& row : rows) {
        CHECK(row.deficit == doctest::Approx(theorem2_deficit(g, kSegment, one, row.r, row.R)).epsilon(1e-12));
        lo = std::min(lo, row.deficit);
        hi = std::max(hi, row.deficit);
    }
    CHECK(hi - lo < 1.0);
    CHECK_THROWS(theorem2_deficit(g, kSegment, one, 1.0, 10.0));
}
