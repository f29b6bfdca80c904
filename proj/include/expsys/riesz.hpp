#pragma once

#include "expsys/distributions.hpp"
#include "expsys/geometry.hpp"
#include "expsys/subharmonic.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace expsys {

/// The test circle passes too close to a zero of the test function.
struct RelocateRadius : std::runtime_error {
    RelocateRadius() : std::runtime_error("relocate test radius") {}
};

/// u <= support(mirror(body)) + c failed at a sampled point.
struct HypothesisFailure : std::runtime_error {
    HypothesisFailure() : std::runtime_error("hypothesis failure") {}
};

/** u = ln|g| for an entire function g of exponential type, together with a convex body S
    and offset c such that u(z) <= support(mirror(S), z) + c.

    sine_type(sigma): g = sin(sigma z), S = segment from -i sigma to i sigma, c = 0.
    polynomial: g = prod (z - z_k)^m_k with S a body having the origin in its interior;
    c is the maximum over x >= 0 of d ln(x + rho_max) - eps x, where d is the degree,
    rho_max the largest zero modulus and eps the inradius of S about the origin.
    product: sum of the u's; bodies add in the Minkowski sense and offsets add. */
class TestEntireFunction {
public:
    static TestEntireFunction sine_type(double sigma);
    static TestEntireFunction polynomial(PointDistribution zeros, ConvexBody growth_body);
    static TestEntireFunction polynomial(PointDistribution zeros);
    static TestEntireFunction product(const std::vector<TestEntireFunction>& factors);

    const std::string& kind_name() const { return kind_; }
    const ConvexBody& growth_body() const { return body_; }
    double offset() const { return c_; }

    double u(PlanePoint z) const;
    /// support(mirror(growth_body), z) + offset
    double majorant(PlanePoint z) const;

    /// zeros with modulus <= radius, with multiplicities
    PointDistribution zeros_within(double radius) const;
    /// smallest | |z_k| - rho | over zeros, relative to rho
    double relative_gap_to_zeros(double rho) const;

private:
    TestEntireFunction(std::string kind, ConvexBody body, double c) : kind_(std::move(kind)), body_(std::move(body)), c_(c) {}

    std::string kind_;
    ConvexBody body_;
    double c_;
    std::vector<double> sigmas_;       // sine factors
    std::vector<WeightedPoint> roots_; // polynomial factors
};

struct RieszMassReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    double quadrature_error_estimate = 0.0;
    double support_mass = 0.0;
    double boundary_term = 0.0;
    double test_radius = 0.0;
};

/// sum of mult * V*(z_k); V* vanishes outside r^2/R < |z| <= R
double riesz_integral_against_Vstar(const PointDistribution& masses, const RadialSubharmonic& h);

/// (perimeter / 2 pi) * integral of V*(t) dt over [r^2/R, R]
double support_mass_integral_against_Vstar(const ConvexBody& body, const RadialSubharmonic& h, double* error = nullptr);

struct LemmaOptions {
    int circle_samples = 4096;
    double min_relative_gap = 1e-3;
    /// replaces V by -V everywhere; used only to exercise the failure path
    bool negate_v = false;
};

/** Both sides of the Riesz-mass inequality for u = ln|g| and M = support(mirror(body)) + c:

        sum V*(z_k)  <=  (perimeter/2pi) int V*(t) dt + (r/pi) int (u - M)(r e^{it}) dV/drho(r) dt.

    The circle integral uses the periodic trapezoid rule with 2N nodes; the error
    estimate is |T_2N - T_N| plus the radial quadrature error and a rounding floor.
    Throws RelocateRadius when the circle |z| = r comes within min_relative_gap * r of a
    zero, and HypothesisFailure when u > M at a sample. */
RieszMassReport lemma22_check(const TestEntireFunction& g, const ConvexBody& body, const RadialSubharmonic& h,
                              const LemmaOptions& opts = {});

/** int_{(r,R]} f(t^2)/t d(zero count) - (perimeter/2pi) int_r^R f(t^2)/t dt. */
double theorem2_deficit(const TestEntireFunction& g, const ConvexBody& body, const ConvexDecreasingFunction& f,
                        double r, double R);

struct DeficitRow {
    double r;
    double R;
    double deficit;
};

/// deficits over all pairs r < R of the two grids, sharing one zero table
std::vector<DeficitRow> theorem2_sweep(const TestEntireFunction& g, const ConvexBody& body,
                                       const ConvexDecreasingFunction& f, const std::vector<double>& r_values,
                                       const std::vector<double>& R_values);

struct SuiteCase {
    std::string name;
    TestEntireFunction g;
    ConvexDecreasingFunction f;
    double r;
    double R;
};

/// Relocation budget exhausted: every tried radius passed too close to a zero.
struct RelocationExhausted : std::runtime_error {
    RelocationExhausted() : std::runtime_error("test radius relocation exhausted") {}
};

/// lemma22_check that moves r up by 0.37% after each RelocateRadius, at most `attempts` times
RieszMassReport lemma22_check_relocating(const TestEntireFunction& g, const ConvexBody& body,
                                         const RadialSubharmonic& h, const LemmaOptions& opts = {},
                                         int attempts = 5);

/// `count` seeded cases mixing sine-type and polynomial functions, r in {2,4,8}, R in {32,64}
std::vector<SuiteCase> lemma_suite(int count, std::uint64_t seed);

}  // namespace expsys
