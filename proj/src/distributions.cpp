#include "expsys/distributions.hpp"

#include "expsys/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace expsys {

namespace {

bool lex_less(PlanePoint a, PlanePoint b) { return a.re < b.re || (a.re == b.re && a.im < b.im); }

void check_point(PlanePoint z)
{
    if (!std::isfinite(z.re) || !std::isfinite(z.im))
        throw std::invalid_argument("point coordinates must be finite");
}

std::vector<WeightedPoint> merge_sorted(std::vector<WeightedPoint> v)
{
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return lex_less(a.z, b.z); });
    std::vector<WeightedPoint> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!out.empty() && out.back().z == e.z)
            out.back().mult += e.mult;
        else
            out.push_back(e);
    }
    return out;
}

// Integral of a general kernel over [a, b], split geometrically for long ranges.
template <class K>
double integrate_kernel(const K& k, double a, double b)
{
    double sum = 0.0;
    while (a < b) {
        const double c = std::min(b, 2.0 * a);
        sum += integrate(k, a, c);
        a = c;
    }
    return sum;
}

}  // namespace

PointDistribution::PointDistribution(std::vector<WeightedPoint> entries, std::string label, double truncation_radius)
    : label_(std::move(label)), truncation_(truncation_radius)
{
    for (const auto& e : entries) {
        check_point(e.z);
        if (e.mult < 1)
            throw std::invalid_argument("multiplicities must be positive integers");
    }
    if (!(truncation_radius > 0.0))
        throw std::invalid_argument("truncation radius must be positive");
    entries_ = merge_sorted(std::move(entries));
}

std::int64_t PointDistribution::total_multiplicity() const
{
    std::int64_t n = 0;
    for (const auto& e : entries_)
        n += e.mult;
    return n;
}

PointDistribution PointDistribution::merged_with(const PointDistribution& other) const
{
    std::vector<WeightedPoint> all = entries_;
    all.insert(all.end(), other.entries_.begin(), other.entries_.end());
    return PointDistribution(std::move(all), label_, std::min(truncation_, other.truncation_));
}

std::int64_t RadialCounting::operator()(double r) const
{
    const auto it = std::upper_bound(jump_radii.begin(), jump_radii.end(), r);
    if (it == jump_radii.begin())
        return 0;
    return cumulative_counts[static_cast<std::size_t>(it - jump_radii.begin()) - 1];
}

std::int64_t RadialCounting::origin_mass() const
{
    return (!jump_radii.empty() && jump_radii.front() == 0.0) ? cumulative_counts.front() : 0;
}

RadialCounting radial_counting(const PointDistribution& Z)
{
    std::vector<std::pair<double, std::int64_t>> radii;
    radii.reserve(Z.entries().size());
    for (const auto& e : Z.entries())
        radii.emplace_back(modulus(e.z), e.mult);
    std::sort(radii.begin(), radii.end());

    RadialCounting rc;
    std::int64_t total = 0;
    for (const auto& [rho, m] : radii) {
        total += m;
        if (!rc.jump_radii.empty() && rc.jump_radii.back() == rho) {
            rc.cumulative_counts.back() = total;
        } else {
            rc.jump_radii.push_back(rho);
            rc.cumulative_counts.push_back(total);
        }
    }
    return rc;
}

DensityEstimate upper_density(const PointDistribution& Z, std::span<const double> r_grid)
{
    if (r_grid.empty())
        throw std::invalid_argument("empty radius grid");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0))
            throw std::invalid_argument("grid radii must be positive");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw std::invalid_argument("grid radii must be increasing");
    }
    const RadialCounting rc = radial_counting(Z);
    DensityEstimate best{0.0, r_grid.front()};
    for (double r : r_grid) {
        const double v = static_cast<double>(rc(r)) / r;
        if (v > best.value)
            best = {v, r};
    }
    return best;
}

double stieltjes_integral(const PointDistribution& Z, const std::function<double(double)>& g, double r, double R)
{
    if (!(r < R))
        throw std::invalid_argument("empty window");
    double sum = 0.0;
    for (const auto& e : Z.entries()) {
        const double rho = modulus(e.z);
        if (rho > r && rho <= R)
            sum += static_cast<double>(e.mult) * g(rho);
    }
    return sum;
}

StieltjesPrefix::StieltjesPrefix(const RadialCounting& counting, const std::function<double(double)>& g)
{
    // the origin never lies in a window (r, R] with r >= 0, and g may be singular there
    std::int64_t prev = counting.origin_mass();
    prefix_.push_back(0.0);
    for (std::size_t i = 0; i < counting.jump_radii.size(); ++i) {
        if (counting.jump_radii[i] == 0.0)
            continue;
        const auto m = counting.cumulative_counts[i] - prev;
        prev = counting.cumulative_counts[i];
        radii_.push_back(counting.jump_radii[i]);
        prefix_.push_back(prefix_.back() + static_cast<double>(m) * g(radii_.back()));
    }
}

double StieltjesPrefix::sum(double r, double R) const
{
    if (!(r < R))
        throw std::invalid_argument("empty window");
    if (r < 0.0)
        throw std::invalid_argument("window must start at r >= 0");
    const auto lo = static_cast<std::size_t>(std::upper_bound(radii_.begin(), radii_.end(), r) - radii_.begin());
    const auto hi = static_cast<std::size_t>(std::upper_bound(radii_.begin(), radii_.end(), R) - radii_.begin());
    return prefix_[hi] - prefix_[lo];
}

double power_integral(double q, double a, double b)
{
    if (a == b)
        return 0.0;
    const double L = std::log(b / a);
    if (q == -1.0)
        return L;
    const double e = q + 1.0;
    return std::pow(a, e) * std::expm1(e * L) / e;
}

CountingMoment CountingMoment::power(const RadialCounting& counting, double q)
{
    if (!std::isfinite(q))
        throw std::invalid_argument("moment exponent must be finite");
    CountingMoment m;
    m.is_power_ = true;
    m.q_ = q;
    m.build(counting);
    return m;
}

CountingMoment CountingMoment::kernel(const RadialCounting& counting, std::function<double(double)> k, double t_min)
{
    if (!(t_min > 0.0))
        throw std::invalid_argument("kernel domain must start at a positive radius");
    CountingMoment m;
    m.k_ = std::move(k);
    m.t_min_ = t_min;
    m.build(counting);
    return m;
}

double CountingMoment::kernel_integral(double a, double b) const
{
    if (is_power_)
        return power_integral(q_, a, b);
    return integrate_kernel(k_, a, b);
}

void CountingMoment::build(const RadialCounting& counting)
{
    origin_ = counting.origin_mass();
    std::vector<double> radii;
    std::vector<std::int64_t> counts;
    for (std::size_t i = 0; i < counting.jump_radii.size(); ++i) {
        if (counting.jump_radii[i] > 0.0) {
            radii.push_back(counting.jump_radii[i]);
            counts.push_back(counting.cumulative_counts[i] - origin_);
        }
    }
    if (radii.empty())
        return;
    const double start = std::max(t_min_, radii.front());
    const auto first = static_cast<std::size_t>(std::upper_bound(radii.begin(), radii.end(), start) - radii.begin());
    breaks_.push_back(start);
    counts_.push_back(first == 0 ? 0 : counts[first - 1]);
    for (std::size_t i = first; i < radii.size(); ++i) {
        breaks_.push_back(radii[i]);
        counts_.push_back(counts[i]);
    }
    prefix_.assign(breaks_.size(), 0.0);
    for (std::size_t i = 1; i < breaks_.size(); ++i)
        prefix_[i] = prefix_[i - 1] + static_cast<double>(counts_[i - 1]) * kernel_integral(breaks_[i - 1], breaks_[i]);
}

double CountingMoment::prefix_at(double x) const
{
    if (breaks_.empty() || x <= breaks_.front())
        return 0.0;
    const auto i = static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin()) - 1;
    if (x == breaks_[i] || counts_[i] == 0)
        return prefix_[i];
    return prefix_[i] + static_cast<double>(counts_[i]) * kernel_integral(breaks_[i], x);
}

double CountingMoment::operator()(double a, double b) const
{
    if (!(a > 0.0) || !(a <= b))
        throw std::invalid_argument("moment window needs 0 < a <= b");
    if (a < t_min_)
        throw std::domain_error("moment window starts below the kernel domain");
    double v = prefix_at(b) - prefix_at(a);
    if (origin_ > 0)
        v += static_cast<double>(origin_) * kernel_integral(a, b);
    return v;
}

double power_moment(const PointDistribution& Z, double q, double a, double b)
{
    return CountingMoment::power(radial_counting(Z), q)(a, b);
}

std::function<double(double)> transformed_kernel(const ConvexDecreasingFunction& f)
{
    return [f](double t) {
        const double x = t * t;
        const double xd = x > f.domain_start() ? x : std::nextafter(f.domain_start(), HUGE_VAL);
        return (f.value(x) - 2.0 * t * f.derivative(xd).right) / x;
    };
}

double transformed_integrand(const PointDistribution& Z, const ConvexDecreasingFunction& f, double r, double R)
{
    if (!(r < R))
        throw std::invalid_argument("empty window");
    if (r * r < f.domain_start())
        throw std::domain_error("weight undefined below r^2");
    const RadialCounting rc = radial_counting(Z);
    if (f.is_constant())
        return f.value(r * r) * CountingMoment::power(rc, -2.0)(r, R);
    return CountingMoment::kernel(rc, transformed_kernel(f), r)(r, R);
}

PointDistribution sine_lattice(double sigma, std::int64_t count)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("sigma must be positive");
    if (count < 0)
        throw std::invalid_argument("count must be nonnegative");
    std::vector<WeightedPoint> pts;
    pts.reserve(static_cast<std::size_t>(2 * count + 1));
    for (std::int64_t k = -count; k <= count; ++k)
        pts.push_back({{std::numbers::pi * static_cast<double>(k) / sigma, 0.0}, 1});
    const double trunc = count > 0 ? std::numbers::pi * static_cast<double>(count) / sigma : std::numbers::pi / sigma;
    return PointDistribution(std::move(pts), "sine_lattice", trunc);
}

PointDistribution radial_lattice(double density, std::int64_t count, double offset, double angle)
{
    if (!(density > 0.0) || !std::isfinite(density))
        throw std::invalid_argument("density must be positive");
    if (count < 1)
        throw std::invalid_argument("count must be positive");
    if (!(offset >= 0.0 && offset < 1.0))
        throw std::invalid_argument("offset must lie in [0, 1)");
    std::vector<WeightedPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    const double c = std::cos(angle), s = std::sin(angle);
    for (std::int64_t k = 1; k <= count; ++k) {
        const double rho = (static_cast<double>(k) - offset) / density;
        pts.push_back({{rho * c, rho * s}, 1});
    }
    return PointDistribution(std::move(pts), "radial_lattice", (static_cast<double>(count) - offset) / density);
}

PointDistribution geometric_radii(double r1, double ratio, std::int64_t count)
{
    if (!(r1 > 0.0) || !(ratio > 1.0))
        throw std::invalid_argument("geometric radii need r1 > 0 and ratio > 1");
    if (count < 1)
        throw std::invalid_argument("count must be positive");
    std::vector<WeightedPoint> pts;
    double rho = r1;
    for (std::int64_t k = 0; k < count; ++k, rho *= ratio)
        pts.push_back({{rho, 0.0}, 1});
    return PointDistribution(std::move(pts), "geometric", rho / ratio);
}

PointDistribution random_points(std::int64_t count, double r_max, std::uint64_t seed)
{
    if (count < 0 || !(r_max > 0.0))
        throw std::invalid_argument("random points need count >= 0 and r_max > 0");
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> radius(0.0, r_max);
    std::vector<WeightedPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) {
        const double th = angle(gen);
        const double rho = radius(gen);
        pts.push_back({{rho * std::cos(th), rho * std::sin(th)}, 1});
    }
    return PointDistribution(std::move(pts), "random", r_max);
}

}  // namespace expsys
