#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "expsys/criteria.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace expsys;

namespace {

constexpr double kPi = std::numbers::pi;

// perimeter 4 pi, threshold 2
const ConvexBody kBody = ConvexBody::segment({0, -kPi}, {0, kPi});

std::vector<double> moduli(const PointDistribution& Z)
{
    std::vector<double> out;
    for (const auto& e : Z.entries())
        for (std::int64_t m = 0; m < e.mult; ++m)
            out.push_back(std::hypot(e.z.re, e.z.im));
    return out;
}

// each point of modulus x adds its own term to the integral of Z^rad
double ng_oracle(const std::vector<double>& x, double r)
{
    double s = 0.0;
    for (double t : x)
        if (t <= r)
            s += std::log(r / std::max(t, 1.0));
    return s / r;
}

double b1_oracle(const std::vector<double>& x, double r, double p)
{
    double s = 0.0;
    for (double t : x)
        if (t <= r) {
            const double lo = std::max(t, 1.0);
            s += (1.0 - std::pow(lo / r, -p)) / -p + (1.0 - std::pow(lo / r, p)) / p;
        }
    return s / (2.0 * r);
}

double b2_oracle(const std::vector<double>& x, double r, double a)
{
    double s = 0.0;
    for (double t : x)
        if (t <= a * r)
            s += 1.0 / std::max(t, r) - 1.0 / (a * r);
    return s / std::log(a);
}

double b3_oracle(const std::vector<double>& x, double r, double p)
{
    double s = 0.0;
    for (double t : x) {
        if (t <= r) {
            const double lo = std::max(t, 1.0);
            s += 2.0 * std::log(r / lo) - (1.0 - std::pow(lo / r, p)) / p;
        }
        s += std::pow(r / std::max(t, r), p) / p;
    }
    return s / (2.0 * r);
}

SweepGrid small_grid() { return SweepGrid::geometric(1.5, 60.0, 12, 1.5, 8.0, 6); }

}  // namespace

TEST_CASE("functionals match per-point closed forms")
{
    const auto Z = random_points(400, 600.0, 17);
    const auto x = moduli(Z);
    const auto grid = small_grid();

    const auto ng = evaluate_NG(Z, kBody, grid);
    REQUIRE(ng.values.size() == grid.r_values.size());
    for (const auto& v : ng.values)
        CHECK(v.value == doctest::Approx(ng_oracle(x, v.r)).epsilon(1e-12));

    for (double p : {0.3, 0.75}) {
        const auto b1 = evaluate_B1(Z, kBody, p, grid);
        for (const auto& v : b1.values)
            CHECK(v.value == doctest::Approx(b1_oracle(x, v.r, p)).epsilon(1e-12));
    }
    for (double p : {1.5, 2.0, 7.0, 100.0}) {
        const auto b3 = evaluate_B3(Z, kBody, p, grid);
        for (const auto& v : b3.values)
            CHECK(v.value == doctest::Approx(b3_oracle(x, v.r, p)).epsilon(1e-12));
    }
    const auto b2 = evaluate_B2(Z, kBody, grid);
    REQUIRE(b2.values.size() == grid.r_values.size() * grid.a_values.size());
    for (const auto& v : b2.values)
        CHECK(v.value == doctest::Approx(b2_oracle(x, v.r, v.a)).epsilon(1e-12));
}

TEST_CASE("reduction identities")
{
    const auto Z = radial_lattice(2.0, 200000);
    const auto grid = SweepGrid::for_truncation(Z.truncation_radius());

    const auto ng = evaluate_NG(Z, kBody, grid);
    const auto b1 = evaluate_B1(Z, kBody, 0.0, grid);
    REQUIRE(ng.values.size() == b1.values.size());
    for (std::size_t i = 0; i < ng.values.size(); ++i)
        CHECK(std::abs(ng.values[i].value - b1.values[i].value) <= 1e-10);
    CHECK(ng.verdict_ge == b1.verdict_ge);

    const auto one = ConvexDecreasingFunction::constant(1.0);
    const auto b2 = evaluate_B2(Z, kBody, grid);
    const auto t2 = evaluate_T1_II2(Z, one, 4 * kPi, grid);
    REQUIRE(b2.values.size() == t2.values.size());
    for (std::size_t i = 0; i < b2.values.size(); ++i)
        CHECK(std::abs(b2.values[i].value - t2.values[i].value) <= 1e-10);
    CHECK(std::abs(*b2.outer_sup - *t2.outer_sup) <= 1e-10);
    CHECK(std::abs(*b2.outer_inf - *t2.outer_inf) <= 1e-10);
    CHECK(b2.verdict_ge == t2.verdict_ge);

    // large p approaches the density condition
    const auto b3 = evaluate_B3(Z, kBody, 100.0, grid);
    CHECK(std::abs(b3.estimate - ng.estimate) <= 0.01 * ng.estimate);
}

TEST_CASE("dense-lattice limits")
{
    const double rho = 2.0;
    const auto Z = radial_lattice(rho, 200000);
    const double T = Z.truncation_radius();
    const auto grid = SweepGrid::for_truncation(T);

    const auto ng = evaluate_NG(Z, kBody, grid);
    const double r_top = ng.values.back().r;
    CHECK(ng.values.back().value == doctest::Approx(rho * (r_top - 1.0) / r_top).epsilon(1e-3));
    CHECK(ng.threshold == doctest::Approx(2.0));
    CHECK(ng.verdict_ge == Verdict::evidence_satisfied);
    CHECK(ng.verdict_gt == Verdict::evidence_violated);

    // B1 converges like r^(p-1); use radii up to the clipping limit
    const auto wide = SweepGrid::geometric(2.0, 0.8 * T, 24);
    const auto b1 = evaluate_B1(Z, kBody, 0.5, wide);
    CHECK(std::abs(b1.estimate - rho / 0.75) <= 0.01 * rho / 0.75);

    const auto b3 = evaluate_B3(Z, kBody, 2.0, grid);
    CHECK(std::abs(b3.estimate - rho * 4.0 / 3.0) <= 0.01 * rho * 4.0 / 3.0);

    const auto b2 = evaluate_B2(Z, kBody, grid);
    CHECK(b2.estimate == doctest::Approx(rho).epsilon(1e-5));
    CHECK(b2.verdict_ge == Verdict::evidence_satisfied);

    const auto one = ConvexDecreasingFunction::constant(1.0);
    const auto ii1 = evaluate_T1_II1(Z, one, 2 * kPi * rho, grid);
    CHECK(ii1.estimate == doctest::Approx(rho).epsilon(1e-3));
    CHECK(ii1.verdict_ge == Verdict::evidence_satisfied);
    const auto ii2 = evaluate_T1_II2(Z, one, 2 * kPi * rho, grid);
    CHECK(ii2.verdict_ge == Verdict::evidence_satisfied);

    // density 1 against threshold 2
    const auto sparse = radial_lattice(1.0, 100000);
    const auto low = evaluate_NG(sparse, kBody, SweepGrid::for_truncation(sparse.truncation_radius()));
    CHECK(low.verdict_ge == Verdict::evidence_violated);
}

TEST_CASE("empty distribution")
{
    const PointDistribution Z;
    const auto grid = small_grid();
    const auto one = ConvexDecreasingFunction::constant(1.0);
    for (const auto& rep : {evaluate_NG(Z, kBody, grid), evaluate_B1(Z, kBody, 0.5, grid),
                            evaluate_B3(Z, kBody, 2.0, grid), evaluate_B2(Z, kBody, grid),
                            evaluate_T1_II1(Z, one, 1.0, grid), evaluate_T1_II2(Z, one, 1.0, grid)}) {
        for (const auto& v : rep.values)
            CHECK(v.value == 0.0);
        CHECK(rep.verdict_ge == Verdict::evidence_violated);
    }
    const auto t1 = evaluate_T1_I(Z, one, 4 * kPi, grid);
    for (const auto& v : t1.values)
        CHECK(v.value == doctest::Approx(-2.0 * std::log(v.R / v.r)));
    CHECK(t1.verdict_ge == Verdict::evidence_violated);
}

TEST_CASE("argument errors")
{
    const auto Z = random_points(10, 10.0, 1);
    CHECK_THROWS_AS(evaluate_NG(Z, kBody, SweepGrid::geometric(0.5, 10.0, 5)), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_B1(Z, kBody, 1.0, small_grid()), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_B1(Z, kBody, -0.1, small_grid()), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_B3(Z, kBody, 1.0, small_grid()), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_NG(Z, ConvexBody::point({0, 0}), small_grid()), std::invalid_argument);
    SweepGrid bad = small_grid();
    std::swap(bad.r_values[0], bad.r_values[1]);
    CHECK_THROWS_AS(evaluate_B2(Z, kBody, bad), std::invalid_argument);

    const auto inv_ln = ConvexDecreasingFunction::reciprocal_log(1);
    CHECK_THROWS_WITH_AS(evaluate_T1_II2(Z, inv_ln, 1.0, small_grid()), "condition II.2 inapplicable",
                         InapplicableCriterion);
    CHECK_THROWS_WITH_AS(evaluate_T1_II1(Z, ConvexDecreasingFunction::power(1.0), 1.0, small_grid()),
                         "condition II.1 inapplicable", InapplicableCriterion);
    CHECK_NOTHROW(evaluate_T1_II1(Z, inv_ln, 1.0, SweepGrid::geometric(2.0, 60.0, 12, 1.5, 8.0, 6)));
    CHECK_THROWS_AS(evaluate_T1_I(Z, inv_ln, 1.0, small_grid()), std::invalid_argument);
}

TEST_CASE("classification of weights")
{
    const auto inv_ln = ConvexDecreasingFunction::reciprocal_log(1);
    const auto c = classify_f(inv_ln);
    CHECK(c.if_diverges == Verdict::evidence_satisfied);
    CHECK(c.lni_infinite == Verdict::evidence_violated);
    CHECK(std::abs(inv_ln.log_window_integral(1.0, 1.0) - 0.5 * std::log(2.0)) <= 1e-9);
    // (1/2)(ln ln(ar) - ln ln r) for large r
    CHECK(inv_ln.log_window_integral(1e6, 1.0) == doctest::Approx(0.5 * std::log1p(1e-6)).epsilon(1e-9));

    const auto one = ConvexDecreasingFunction::constant(1.0);
    const auto k = classify_f(one);
    CHECK(k.if_diverges == Verdict::evidence_satisfied);
    CHECK(k.lni_infinite == Verdict::evidence_satisfied);
    for (const auto& w : k.windows)
        CHECK(std::abs(w.value - w.log_a) <= 1e-12 * std::max(1.0, w.log_a));

    const auto pw = classify_f(ConvexDecreasingFunction::power(0.5));
    CHECK(pw.if_diverges == Verdict::evidence_violated);
    CHECK(pw.lni_infinite == Verdict::evidence_violated);

    for (int depth : {2, 3}) {
        const auto d = classify_f(ConvexDecreasingFunction::reciprocal_log(depth));
        CHECK(d.if_diverges == Verdict::evidence_satisfied);
        CHECK(d.lni_infinite == Verdict::evidence_violated);
    }
    const auto pl = classify_f(ConvexDecreasingFunction::piecewise_linear({1, 4, 16}, {2, 1, 0.5}));
    CHECK(pl.lni_infinite == Verdict::evidence_satisfied);
}

TEST_CASE("unbounded deficit criterion")
{
    const auto one = ConvexDecreasingFunction::constant(1.0);
    const auto above = radial_lattice(2.2, 220000);
    const auto grid = SweepGrid::for_truncation(above.truncation_radius());
    const auto rep = evaluate_T1_I(above, one, 4 * kPi, grid);
    CHECK(rep.verdict_ge == Verdict::evidence_satisfied);
    CHECK(rep.trend.slope == doctest::Approx(0.2).epsilon(0.05));

    const auto x = moduli(above);
    for (std::size_t i = 0; i < rep.values.size(); i += 97) {
        const auto& v = rep.values[i];
        double brute = 0.0;
        for (double t : x)
            if (t > v.r && t <= v.R)
                brute += 1.0 / t;
        CHECK(v.value == doctest::Approx(brute - 2.0 * std::log(v.R / v.r)).epsilon(1e-9));
    }

    // zeros of sin z against the segment of length 2: bounded deficit
    const auto sine = sine_lattice(1.0, 10000);
    const auto exact =
        evaluate_T1_I(sine, one, 4.0, SweepGrid::for_truncation(sine.truncation_radius(), 2.0, 24, 2.0, 64.0, 12));
    CHECK(exact.verdict_ge != Verdict::evidence_satisfied);
}

TEST_CASE("ratio with a logarithmic weight on the sine lattice")
{
    const auto Z = sine_lattice(1.0, 200000);
    const auto grid = SweepGrid::for_truncation(Z.truncation_radius());
    const auto rep = evaluate_T1_II1(Z, ConvexDecreasingFunction::reciprocal_log(1), 4.0, grid);
    CHECK(std::abs(rep.estimate - 2.0 / kPi) <= 0.05 * 2.0 / kPi);
    const auto tr = evaluate_T1_II1(Z, ConvexDecreasingFunction::reciprocal_log(1), 4.0, grid, {},
                                    Numerator::transformed);
    CHECK(std::abs(tr.estimate - 2.0 / kPi) <= 0.05 * 2.0 / kPi);
}

TEST_CASE("monotonicity under added points")
{
    const auto base = radial_lattice(2.0, 40000);
    const auto extra = random_points(100, base.truncation_radius(), 99);
    const auto more = base.merged_with(extra);
    const auto grid = SweepGrid::for_truncation(base.truncation_radius());
    const auto one = ConvexDecreasingFunction::constant(1.0);
    const auto inv_ln = ConvexDecreasingFunction::reciprocal_log(1);

    auto compare = [](const CriterionReport& a, const CriterionReport& b) {
        REQUIRE(a.values.size() == b.values.size());
        for (std::size_t i = 0; i < a.values.size(); ++i)
            CHECK(b.values[i].value >= a.values[i].value);
    };
    compare(evaluate_NG(base, kBody, grid), evaluate_NG(more, kBody, grid));
    compare(evaluate_B1(base, kBody, 0.5, grid), evaluate_B1(more, kBody, 0.5, grid));
    compare(evaluate_B2(base, kBody, grid), evaluate_B2(more, kBody, grid));
    compare(evaluate_B3(base, kBody, 2.0, grid), evaluate_B3(more, kBody, 2.0, grid));
    compare(evaluate_T1_I(base, inv_ln, 1.0, grid), evaluate_T1_I(more, inv_ln, 1.0, grid));
    compare(evaluate_T1_II1(base, inv_ln, 1.0, grid), evaluate_T1_II1(more, inv_ln, 1.0, grid));
    compare(evaluate_T1_II2(base, one, 1.0, grid), evaluate_T1_II2(more, one, 1.0, grid));
}

TEST_CASE("threshold scaling flips at the critical density")
{
    const auto big = scale(kBody, 2.0);
    const auto grid = SweepGrid::for_truncation(1e5);
    const auto Z = radial_lattice(2.0, 200000);
    const auto a = evaluate_NG(Z, kBody, grid), b = evaluate_NG(Z, big, grid);
    CHECK(b.threshold == doctest::Approx(2.0 * a.threshold));
    for (std::size_t i = 0; i < a.values.size(); ++i)
        CHECK(a.values[i].value == b.values[i].value);
    CHECK(a.verdict_ge == Verdict::evidence_satisfied);
    CHECK(b.verdict_ge == Verdict::evidence_violated);

    // critical density 4 for the doubled body
    for (double factor : {0.99, 1.01}) {
        const double rho = 4.0 * factor;
        const auto L = radial_lattice(rho, static_cast<std::int64_t>(rho * 1e5));
        const auto g = SweepGrid::for_truncation(L.truncation_radius());
        const Verdict expect = factor > 1.0 ? Verdict::evidence_satisfied : Verdict::evidence_violated;
        CHECK(evaluate_NG(L, big, g).verdict_ge == expect);
        CHECK(evaluate_B2(L, big, g).verdict_ge == expect);
        CHECK(evaluate_T1_II2(L, ConvexDecreasingFunction::constant(1.0), perimeter(big), g).verdict_ge == expect);
    }
}

TEST_CASE("parallel evaluation is deterministic")
{
    const auto Z = random_points(3000, 5000.0, 5);
    const auto grid = SweepGrid::for_truncation(5000.0);
    const auto a = evaluate_B3(Z, kBody, 2.0, grid, {.jobs = 1});
    const auto b = evaluate_B3(Z, kBody, 2.0, grid, {.jobs = 4});
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i)
        CHECK(a.values[i].value == b.values[i].value);
    CHECK(a.estimate == b.estimate);
}
