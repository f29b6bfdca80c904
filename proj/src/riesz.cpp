#include "expsys/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace expsys {

namespace {

constexpr double kPi = std::numbers::pi;

// ln|sin(sigma z)| = sigma |Im z| + ln|1 - exp(2i sigma z')| - ln 2 with Im z' = |Im z|
double log_abs_sine(double sigma, PlanePoint z)
{
    const double x = z.re, y = std::abs(z.im);
    const std::complex<double> e = std::polar(std::exp(-2.0 * sigma * y), 2.0 * sigma * x);
    return sigma * y + std::log(std::abs(1.0 - e)) - std::numbers::ln2;
}

ConvexBody default_polynomial_body() { return ConvexBody::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }

}  // namespace

TestEntireFunction TestEntireFunction::sine_type(double sigma)
{
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("sigma must be positive");
    TestEntireFunction g("sine_type", ConvexBody::segment({0.0, -sigma}, {0.0, sigma}), 0.0);
    g.sigmas_.push_back(sigma);
    return g;
}

TestEntireFunction TestEntireFunction::polynomial(PointDistribution zeros, ConvexBody growth_body)
{
    const double eps = origin_inradius(growth_body);
    if (!(eps > 0.0))
        throw std::invalid_argument("polynomial growth body must contain the origin in its interior");
    double degree = 0.0, rho_max = 0.0;
    for (const auto& e : zeros.entries()) {
        degree += static_cast<double>(e.mult);
        rho_max = std::max(rho_max, modulus(e.z));
    }
    double c = 0.0;
    if (degree > 0.0) {
        if (degree / eps >= rho_max)
            c = degree * std::log(degree / eps) - degree + eps * rho_max;
        else
            c = degree * std::log(rho_max);
    }
    TestEntireFunction g("polynomial", std::move(growth_body), c);
    g.roots_ = zeros.entries();
    return g;
}

TestEntireFunction TestEntireFunction::polynomial(PointDistribution zeros)
{
    return polynomial(std::move(zeros), default_polynomial_body());
}

TestEntireFunction TestEntireFunction::product(const std::vector<TestEntireFunction>& factors)
{
    if (factors.empty())
        throw std::invalid_argument("empty product");
    ConvexBody body = factors.front().body_;
    double c = factors.front().c_;
    for (std::size_t i = 1; i < factors.size(); ++i) {
        body = minkowski_sum(body, factors[i].body_);
        c += factors[i].c_;
    }
    TestEntireFunction g("product", std::move(body), c);
    for (const auto& f : factors) {
        g.sigmas_.insert(g.sigmas_.end(), f.sigmas_.begin(), f.sigmas_.end());
        g.roots_.insert(g.roots_.end(), f.roots_.begin(), f.roots_.end());
    }
    return g;
}

double TestEntireFunction::u(PlanePoint z) const
{
    double s = 0.0;
    for (double sigma : sigmas_)
        s += log_abs_sine(sigma, z);
    for (const auto& e : roots_)
        s += static_cast<double>(e.mult) * std::log(std::hypot(z.re - e.z.re, z.im - e.z.im));
    return s;
}

double TestEntireFunction::majorant(PlanePoint z) const { return support(mirror(body_), z) + c_; }

PointDistribution TestEntireFunction::zeros_within(double radius) const
{
    std::vector<WeightedPoint> pts;
    for (double sigma : sigmas_) {
        const auto n = static_cast<std::int64_t>(std::floor(radius * sigma / kPi));
        for (std::int64_t k = -n; k <= n; ++k) {
            const double x = kPi * static_cast<double>(k) / sigma;
            if (std::abs(x) <= radius)
                pts.push_back({{x, 0.0}, 1});
        }
    }
    for (const auto& e : roots_)
        if (modulus(e.z) <= radius)
            pts.push_back(e);
    return PointDistribution(std::move(pts), kind_, radius);
}

double TestEntireFunction::relative_gap_to_zeros(double rho) const
{
    double gap = std::numeric_limits<double>::infinity();
    for (double sigma : sigmas_) {
        const double k = std::round(rho * sigma / kPi);
        gap = std::min(gap, std::abs(kPi * k / sigma - rho));
    }
    for (const auto& e : roots_)
        gap = std::min(gap, std::abs(modulus(e.z) - rho));
    return gap / rho;
}

double riesz_integral_against_Vstar(const PointDistribution& masses, const RadialSubharmonic& h)
{
    double s = 0.0;
    for (const auto& e : masses.entries())
        s += static_cast<double>(e.mult) * h.inversion(e.z);
    return s;
}

double support_mass_integral_against_Vstar(const ConvexBody& body, const RadialSubharmonic& h, double* error)
{
    const double prm = perimeter(body);
    if (!(prm > 0.0))
        throw std::invalid_argument("zero-perimeter body has no arc-length measure");
    double e = 0.0;
    const double v = prm / (2.0 * kPi) * h.inversion_radial_integral(&e);
    if (error)
        *error = prm / (2.0 * kPi) * e;
    return v;
}

RieszMassReport lemma22_check(const TestEntireFunction& g, const ConvexBody& body, const RadialSubharmonic& h,
                              const LemmaOptions& opts)
{
    if (!h.has_inner())
        throw std::invalid_argument("lemma check needs an inner radius");
    if (opts.circle_samples < 8)
        throw std::invalid_argument("circle_samples must be at least 8");
    const double r = h.r();
    if (g.relative_gap_to_zeros(r) < opts.min_relative_gap)
        throw RelocateRadius();

    const double sign = opts.negate_v ? -1.0 : 1.0;
    const ConvexBody mbody = mirror(body);
    const double c = g.offset();

    RieszMassReport rep;
    rep.test_radius = r;
    rep.lhs = sign * riesz_integral_against_Vstar(g.zeros_within(h.R()), h);
    double radial_err = 0.0;
    rep.support_mass = sign * support_mass_integral_against_Vstar(body, h, &radial_err);

    // trapezoid sums on N and 2N nodes from one pass over the fine grid
    const int n2 = 2 * opts.circle_samples;
    double sum_even = 0.0, sum_all = 0.0, abs_all = 0.0;
    for (int j = 0; j < n2; ++j) {
        const double th = 2.0 * kPi * j / n2;
        const PlanePoint z{r * std::cos(th), r * std::sin(th)};
        const double M = support(mbody, z) + c;
        const double w = g.u(z) - M;
        if (w > 1e-12 * (1.0 + std::abs(M)))
            throw HypothesisFailure();
        sum_all += w;
        abs_all += std::abs(w);
        if (j % 2 == 0)
            sum_even += w;
    }
    const double dV = sign * h.normal_derivative(r);
    // (r/pi) * (2pi/n) * sum(w) * dV
    const double coarse = 2.0 * r * dV * sum_even / opts.circle_samples;
    rep.boundary_term = 2.0 * r * dV * sum_all / n2;
    rep.rhs = rep.support_mass + rep.boundary_term;
    rep.slack = rep.rhs - rep.lhs;
    const double rounding =
        1e-12 * (std::abs(rep.lhs) + std::abs(rep.support_mass) + 2.0 * r * std::abs(dV) * abs_all / n2);
    rep.quadrature_error_estimate = std::abs(rep.boundary_term - coarse) + radial_err + rounding;
    return rep;
}

RieszMassReport lemma22_check_relocating(const TestEntireFunction& g, const ConvexBody& body,
                                         const RadialSubharmonic& h, const LemmaOptions& opts, int attempts)
{
    RadialSubharmonic cur = h;
    for (int i = 0;; ++i) {
        try {
            return lemma22_check(g, body, cur, opts);
        } catch (const RelocateRadius&) {
            if (i >= attempts)
                throw RelocationExhausted();
            cur = cur.with_inner(cur.r() * 1.0037);
        }
    }
}

double theorem2_deficit(const TestEntireFunction& g, const ConvexBody& body, const ConvexDecreasingFunction& f,
                        double r, double R)
{
    if (!(r > 1.0) || !(r < R))
        throw std::invalid_argument("deficit needs 1 < r < R");
    if (r * r < f.domain_start())
        throw std::domain_error("window outside the domain of f");
    const PointDistribution Z = g.zeros_within(R);
    const double counted = stieltjes_integral(Z, [&f](double t) { return f.value(t * t) / t; }, r, R);
    return counted - perimeter(body) / (2.0 * kPi) * f.weight_integral(r, R);
}

std::vector<DeficitRow> theorem2_sweep(const TestEntireFunction& g, const ConvexBody& body,
                                       const ConvexDecreasingFunction& f, const std::vector<double>& r_values,
                                       const std::vector<double>& R_values)
{
    if (r_values.empty() || R_values.empty())
        return {};
    const double R_max = *std::max_element(R_values.begin(), R_values.end());
    for (double r : r_values) {
        if (!(r > 1.0))
            throw std::invalid_argument("deficit needs 1 < r < R");
        if (r * r < f.domain_start())
            throw std::domain_error("window outside the domain of f");
    }
    const double t_min = std::sqrt(f.domain_start());
    const StieltjesPrefix counted(radial_counting(g.zeros_within(R_max)),
                                  [&f, t_min](double t) { return t < t_min ? 0.0 : f.value(t * t) / t; });
    const double scale = perimeter(body) / (2.0 * kPi);
    std::vector<DeficitRow> rows;
    for (double r : r_values)
        for (double R : R_values)
            if (r < R)
                rows.push_back({r, R, counted.sum(r, R) - scale * f.weight_integral(r, R)});
    return rows;
}

std::vector<SuiteCase> lemma_suite(int count, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double radii[] = {2.0, 4.0, 8.0};
    const double outer[] = {32.0, 64.0};
    const ConvexDecreasingFunction weights[] = {
        ConvexDecreasingFunction::constant(1.0), ConvexDecreasingFunction::power(1.0),
        ConvexDecreasingFunction::power(0.5), ConvexDecreasingFunction::reciprocal_log(1)};

    auto random_polynomial = [&](double R) {
        const int n = 3 + static_cast<int>(U(gen) * 10);
        std::vector<WeightedPoint> pts;
        for (int k = 0; k < n; ++k) {
            const double rho = 1.5 * R * U(gen), th = 2.0 * kPi * U(gen);
            pts.push_back({{rho * std::cos(th), rho * std::sin(th)}, 1 + static_cast<std::int64_t>(U(gen) * 3)});
        }
        return TestEntireFunction::polynomial(PointDistribution(std::move(pts)));
    };

    std::vector<SuiteCase> cases;
    for (int i = 0; i < count; ++i) {
        const double r = radii[(i / 3) % 3];
        const double R = outer[i % 2];
        const auto& f = weights[static_cast<std::size_t>(i) % 4];
        const double sigma = 0.5 + 1.5 * U(gen);
        std::string name = "case" + std::to_string(i) + "_";
        switch (i % 3) {
        case 0:
            cases.push_back({name + "sine", TestEntireFunction::sine_type(sigma), f, r, R});
            break;
        case 1:
            cases.push_back({name + "polynomial", random_polynomial(R), f, r, R});
            break;
        default:
            cases.push_back({name + "product",
                             TestEntireFunction::product({TestEntireFunction::sine_type(sigma), random_polynomial(R)}),
                             f, r, R});
            break;
        }
    }
    return cases;
}

}  // namespace expsys
