#pragma once

#include "expsys/convexfun.hpp"
#include "expsys/geometry.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace expsys {

struct WeightedPoint {
    PlanePoint z;
    std::int64_t mult = 1;
};

/** A finite distribution of exponents: points of the plane with positive integer
    multiplicities. Equal points are merged on construction and entries are kept in
    lexicographic order. `truncation_radius` records how far the distribution is a
    faithful sample of the infinite one it stands for (infinity when unknown). */
class PointDistribution {
public:
    PointDistribution() = default;
    explicit PointDistribution(std::vector<WeightedPoint> entries, std::string label = {},
                               double truncation_radius = std::numeric_limits<double>::infinity());

    const std::vector<WeightedPoint>& entries() const { return entries_; }
    const std::string& label() const { return label_; }
    double truncation_radius() const { return truncation_; }
    std::int64_t total_multiplicity() const;
    bool empty() const { return entries_.empty(); }

    /// Union with multiplicities added; the truncation radius is the smaller one.
    PointDistribution merged_with(const PointDistribution& other) const;

private:
    std::vector<WeightedPoint> entries_;
    std::string label_;
    double truncation_ = std::numeric_limits<double>::infinity();
};

/// Right-continuous step function r -> total multiplicity in the closed disk of radius r.
struct RadialCounting {
    std::vector<double> jump_radii;              // strictly increasing, >= 0
    std::vector<std::int64_t> cumulative_counts; // strictly increasing

    std::int64_t operator()(double r) const;
    std::int64_t total() const { return cumulative_counts.empty() ? 0 : cumulative_counts.back(); }
    /// multiplicity sitting exactly at the origin
    std::int64_t origin_mass() const;
};

RadialCounting radial_counting(const PointDistribution& Z);

struct DensityEstimate {
    double value = 0.0;
    double at_r = 0.0;
};

/// max over the grid of Z^rad(r)/r
DensityEstimate upper_density(const PointDistribution& Z, std::span<const double> r_grid);

/// Sum of mult * g(|z|) over the points with r < |z| <= R.
double stieltjes_integral(const PointDistribution& Z, const std::function<double(double)>& g, double r,
                          double R);

/** Prefix sums of g over the jumps of Z^rad, for many window queries with the same g.
    sum(r, R) equals stieltjes_integral(Z, g, r, R) up to rounding. */
class StieltjesPrefix {
public:
    StieltjesPrefix(const RadialCounting& counting, const std::function<double(double)>& g);
    double sum(double r, double R) const;

private:
    std::vector<double> radii_;
    std::vector<double> prefix_;  // prefix_[i] = sum over jumps 0..i-1
};

/** Integrals of Z^rad(t) k(t) over [a, b], exact between jumps.

    Power kernels t^q are integrated in closed form. General kernels are integrated on
    each step by adaptive quadrature; their domain starts at `t_min`. Both keep a prefix
    table over the jumps so a query costs two binary searches. */
class CountingMoment {
public:
    static CountingMoment power(const RadialCounting& counting, double q);
    static CountingMoment kernel(const RadialCounting& counting, std::function<double(double)> k, double t_min);

    double operator()(double a, double b) const;

private:
    CountingMoment() = default;
    void build(const RadialCounting& counting);
    double kernel_integral(double a, double b) const;
    double prefix_at(double x) const;

    bool is_power_ = false;
    double q_ = 0.0;
    std::function<double(double)> k_;
    double t_min_ = 0.0;

    std::int64_t origin_ = 0;
    std::vector<double> breaks_;         // breaks_[0] is the start of the table
    std::vector<std::int64_t> counts_;   // Z^rad minus the origin mass on [breaks_[i], breaks_[i+1])
    std::vector<double> prefix_;         // integral from breaks_[0] to breaks_[i]
};

/// Integral of Z^rad(t) t^q over [a, b].
double power_moment(const PointDistribution& Z, double q, double a, double b);

/** Integral over [r, R] of Z^rad(t)/t^2 (f(t^2) - 2t f'_+(t^2)) dt, the integration-by-parts
    replacement of the Stieltjes integral of f(t^2)/t (equal to it up to a bounded term when
    the density of Z is finite). */
double transformed_integrand(const PointDistribution& Z, const ConvexDecreasingFunction& f, double r, double R);

/// Integrand kernel used by transformed_integrand.
std::function<double(double)> transformed_kernel(const ConvexDecreasingFunction& f);

/// Stable value of the integral of t^q over [a, b], 0 < a <= b.
double power_integral(double q, double a, double b);

// Generators. Each records its truncation radius.

/// zeros of sin(sigma z): pi k / sigma for |k| <= count
PointDistribution sine_lattice(double sigma, std::int64_t count);

/// points at radii (k - offset)/density, k = 1..count, on the ray of angle `angle`;
/// Z^rad(t) stays within 1 of density * t
PointDistribution radial_lattice(double density, std::int64_t count, double offset = 0.5, double angle = 0.0);

/// points r1 * ratio^k, k = 0..count-1, on the positive axis
PointDistribution geometric_radii(double r1, double ratio, std::int64_t count);

/// `count` points with uniform angle and radius uniform on [0, r_max], seeded mt19937_64
PointDistribution random_points(std::int64_t count, double r_max, std::uint64_t seed);

}  // namespace expsys
