#include "expsys/convexfun.hpp"

#include "expsys/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace expsys {

namespace {

constexpr double kChordTol = 1e-10;

double iterated_log(double x, int depth)
{
    for (int i = 0; i < depth; ++i)
        x = std::log(x);
    return x;
}

double tower_of_e(int height)
{
    double t = 1.0;
    for (int i = 0; i < height; ++i)
        t = std::exp(t);
    return t;
}

// Integral over [u1, u2] of g, split so that each piece spans at most a factor 2 in u.
template <class G>
double integrate_log_scale(G&& g, double u1, double u2)
{
    double sum = 0.0;
    double a = u1;
    while (a < u2) {
        double b = a > 0.0 ? std::min(u2, std::max(2.0 * a, a + 1.0)) : std::min(u2, a + 1.0);
        sum += integrate(g, a, b);
        a = b;
    }
    return sum;
}

/// cubic blend of a kink: B'' is the unit hat on [0, 2 delta]
double blend(double u, double d)
{
    if (u <= d)
        return u * u * u / (6.0 * d * d);
    const double w = 2.0 * d - u;
    return (u - d) + w * w * w / (6.0 * d * d);
}

double blend_d1(double u, double d)
{
    if (u <= d)
        return u * u / (2.0 * d * d);
    const double w = 2.0 * d - u;
    return 1.0 - w * w / (2.0 * d * d);
}

double blend_d2(double u, double d)
{
    return (u <= d ? u : 2.0 * d - u) / (d * d);
}

}  // namespace

double ConvexWeight::domain_end() const { return std::numeric_limits<double>::infinity(); }

ConvexDecreasingFunction::ConvexDecreasingFunction(Kind k, double r0)
    : kind_(std::move(k)), r0_(r0), start_(r0)
{
}

ConvexDecreasingFunction ConvexDecreasingFunction::constant(double c, double r0)
{
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("constant weight must be positive");
    if (!(r0 > 0.0))
        throw std::invalid_argument("r0 must be positive");
    return {ConstantKind{c}, r0};
}

ConvexDecreasingFunction ConvexDecreasingFunction::power(double p, double r0)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("power exponent must be positive");
    if (!(r0 > 0.0))
        throw std::invalid_argument("r0 must be positive");
    return {PowerKind{p}, r0};
}

ConvexDecreasingFunction ConvexDecreasingFunction::reciprocal_log(int depth)
{
    // the tower of height 4 already overflows a double
    if (depth < 1 || depth > 3)
        throw std::invalid_argument("iterated logarithm depth must be 1, 2 or 3");
    return {ReciprocalLogKind{depth}, tower_of_e(depth)};
}

ConvexDecreasingFunction ConvexDecreasingFunction::piecewise_linear(std::vector<double> x, std::vector<double> v)
{
    if (x.size() != v.size() || x.size() < 2)
        throw std::invalid_argument("piecewise-linear weight needs at least two knots");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(v[i]))
            throw std::invalid_argument("non-finite knot");
        if (!(v[i] > 0.0))
            throw std::invalid_argument("piecewise-linear weight must be positive");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw std::invalid_argument("knots must be strictly increasing");
    }
    if (!(x.front() > 0.0))
        throw std::invalid_argument("knots must be positive");
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double s = (v[i + 1] - v[i]) / (x[i + 1] - x[i]);
        if (s > 0.0)
            throw std::invalid_argument("piecewise-linear weight must be decreasing");
        if (s < prev)
            throw std::invalid_argument("piecewise-linear weight must be convex");
        prev = s;
    }
    const double r0 = x.front();
    return {PiecewiseLinearKind{std::move(x), std::move(v)}, r0};
}

std::string ConvexDecreasingFunction::kind_name() const
{
    static constexpr const char* names[] = {"constant", "power", "reciprocal_log", "piecewise_linear"};
    return names[kind_.index()];
}

double ConvexDecreasingFunction::natural_value(double x) const
{
    return std::visit(
        [x](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ConstantKind>) {
                return k.c;
            } else if constexpr (std::is_same_v<T, PowerKind>) {
                return std::pow(x, -k.p);
            } else if constexpr (std::is_same_v<T, ReciprocalLogKind>) {
                return 1.0 / iterated_log(x, k.depth);
            } else {
                if (x >= k.x.back())
                    return k.v.back();
                const auto i = static_cast<std::size_t>(std::upper_bound(k.x.begin(), k.x.end(), x) - k.x.begin()) - 1;
                const double s = (k.v[i + 1] - k.v[i]) / (k.x[i + 1] - k.x[i]);
                return k.v[i] + s * (x - k.x[i]);
            }
        },
        kind_);
}

OneSided ConvexDecreasingFunction::natural_derivative(double x) const
{
    return std::visit(
        [x](const auto& k) -> OneSided {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ConstantKind>) {
                return {0.0, 0.0};
            } else if constexpr (std::is_same_v<T, PowerKind>) {
                const double d = -k.p * std::pow(x, -k.p - 1.0);
                return {d, d};
            } else if constexpr (std::is_same_v<T, ReciprocalLogKind>) {
                double l = x, dl = 1.0;  // L_j and the derivative of L_n
                for (int j = 0; j < k.depth; ++j) {
                    dl /= l;
                    l = std::log(l);
                }
                const double d = -dl / (l * l);
                return {d, d};
            } else {
                const auto& xs = k.x;
                const std::size_t n = xs.size();
                auto slope = [&](std::size_t i) { return (k.v[i + 1] - k.v[i]) / (xs[i + 1] - xs[i]); };
                if (x > xs.back())
                    return {0.0, 0.0};
                if (x == xs.back())
                    return {slope(n - 2), 0.0};
                const auto i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
                if (x == xs[i] && i > 0)
                    return {slope(i - 1), slope(i)};
                return {slope(i), slope(i)};
            }
        },
        kind_);
}

double ConvexDecreasingFunction::value(double x) const
{
    if (!(x >= start_))
        throw std::domain_error("argument below the domain start r0");
    if (x < r0_)
        return factor_ * (natural_value(r0_) + natural_derivative(r0_).right * (x - r0_));
    return factor_ * natural_value(x);
}

OneSided ConvexDecreasingFunction::derivative(double x) const
{
    if (!(x > start_))
        throw std::domain_error("one-sided derivatives need x > r0");
    const double s0 = factor_ * natural_derivative(r0_).right;
    if (x < r0_)
        return {s0, s0};
    if (x == r0_)
        return {s0, factor_ * natural_derivative(x).right};
    const OneSided d = natural_derivative(x);
    return {factor_ * d.left, factor_ * d.right};
}

double ConvexDecreasingFunction::second_derivative(double x) const
{
    if (!(x > start_))
        throw std::domain_error("second derivative needs x > r0");
    if (x < r0_)
        return 0.0;
    const double d2 = std::visit(
        [x](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ConstantKind>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, PowerKind>) {
                return k.p * (k.p + 1.0) * std::pow(x, -k.p - 2.0);
            } else if constexpr (std::is_same_v<T, ReciprocalLogKind>) {
                // ln L_n' = -sum_{j<n} ln L_j, so L_n'' = L_n' * (-sum_{j<n} L_j'/L_j)
                double l = x, dl = 1.0, sum = 0.0;
                for (int j = 0; j < k.depth; ++j) {
                    sum += dl / l;
                    dl /= l;
                    l = std::log(l);
                }
                const double ddl = -dl * sum;
                return 2.0 * dl * dl / (l * l * l) - ddl / (l * l);
            } else {
                const auto& xs = k.x;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    if (x != xs[i])
                        continue;
                    const double sl = i > 0 ? (k.v[i] - k.v[i - 1]) / (xs[i] - xs[i - 1]) : 0.0;
                    const double sr = i + 1 < xs.size() ? (k.v[i + 1] - k.v[i]) / (xs[i + 1] - xs[i]) : 0.0;
                    if (sl != sr)
                        throw std::domain_error("piecewise-linear weight is not twice differentiable at a knot");
                }
                return 0.0;
            }
        },
        kind_);
    if (x == r0_ && start_ < r0_ && d2 != 0.0)
        throw std::domain_error("extended weight is not twice differentiable at r0");
    return factor_ * d2;
}

double ConvexDecreasingFunction::value_at_log(double y) const
{
    if (y < 700.0)
        return value(std::exp(y));
    return factor_ * std::visit(
        [y](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ConstantKind>)
                return k.c;
            else if constexpr (std::is_same_v<T, PowerKind>)
                return std::exp(-k.p * y);
            else if constexpr (std::is_same_v<T, ReciprocalLogKind>)
                return 1.0 / iterated_log(y, k.depth - 1);
            else
                return k.v.back();
        },
        kind_);
}

double ConvexDecreasingFunction::log_window_integral(double s, double log_a) const
{
    if (!(log_a >= 0.0))
        throw std::invalid_argument("window must have a >= 1");
    if (log_a == 0.0)
        return 0.0;
    if (2.0 * s < std::log(start_) - 1e-12)
        throw std::domain_error("window extends below the domain of the weight");

    const double u_nat = 0.5 * std::log(r0_);
    const double end = s + log_a;
    double below = 0.0;
    if (s < u_nat) {
        // affine part f(x) = f(r0) + s0 (x - r0): integrand (f(r0) - s0 r0) + s0 t^2 in du
        const double hi = std::min(end, u_nat);
        const double s0 = natural_derivative(r0_).right;
        const double a0 = natural_value(r0_) - s0 * r0_;
        below = factor_ * (a0 * (hi - s) + s0 * 0.5 * (std::exp(2.0 * hi) - std::exp(2.0 * s)));
        if (end <= u_nat)
            return below;
        log_a = end - u_nat;
        s = u_nat;
    }

    const double natural = std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ConstantKind>) {
                return k.c * log_a;
            } else if constexpr (std::is_same_v<T, PowerKind>) {
                return std::exp(-2.0 * k.p * s) * (-std::expm1(-2.0 * k.p * log_a)) / (2.0 * k.p);
            } else if constexpr (std::is_same_v<T, ReciprocalLogKind>) {
                if (k.depth == 1)  // f(t^2)/t = 1/(2 t ln t)
                    return 0.5 * std::log1p(log_a / s);
                return integrate_log_scale([this](double u) { return value_at_log(2.0 * u) / factor_; }, s, s + log_a);
            } else {
                double sum = 0.0;
                double u = s;
                const double u_end = s + log_a;
                const auto& xs = k.x;
                for (std::size_t i = 0; i + 1 < xs.size() && u < u_end; ++i) {
                    const double seg_end = 0.5 * std::log(xs[i + 1]);
                    if (seg_end <= u)
                        continue;
                    const double hi = std::min(seg_end, u_end);
                    const double sl = (k.v[i + 1] - k.v[i]) / (xs[i + 1] - xs[i]);
                    sum += (k.v[i] - sl * xs[i]) * (hi - u) + sl * 0.5 * (std::exp(2.0 * hi) - std::exp(2.0 * u));
                    u = hi;
                }
                if (u < u_end)
                    sum += k.v.back() * (u_end - u);
                return sum;
            }
        },
        kind_);
    return below + factor_ * natural;
}

double ConvexDecreasingFunction::weight_integral(double r, double R) const
{
    if (!(r > 0.0) || !(R >= r))
        throw std::invalid_argument("weight integral needs 0 < r <= R");
    return log_window_integral(std::log(r), std::log(R / r));
}

ConvexDecreasingFunction ConvexDecreasingFunction::extended_below(double new_start) const
{
    if (!(new_start > 0.0))
        throw std::invalid_argument("extension start must be positive");
    ConvexDecreasingFunction g = *this;
    // a vertical tangent at r0 would break the affine continuation; move r0 up slightly
    while (!std::isfinite(g.natural_derivative(g.r0_).right))
        g.r0_ *= 1.0 + 1e-6;
    g.start_ = std::min(new_start, g.r0_);
    return g;
}

ConvexDecreasingFunction ConvexDecreasingFunction::scaled(double factor) const
{
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw std::invalid_argument("scale factor must be positive");
    ConvexDecreasingFunction g = *this;
    g.factor_ *= factor;
    return g;
}

bool chord_inequality_check(const ConvexWeight& f, double x1, double x2)
{
    if (!(x1 > f.domain_start()) || !(x2 > x1))
        throw std::invalid_argument("chord check needs r0 < x1 < x2");
    const OneSided d1 = f.derivative(x1);
    const OneSided d2 = f.derivative(x2);
    const double chord = (f.value(x2) - f.value(x1)) / (x2 - x1);
    const double tol = kChordTol;
    return d2.left <= tol && d2.right <= tol
        && d2.left >= chord - tol && d2.right >= chord - tol
        && chord >= d1.left - tol && chord >= d1.right - tol;
}

SmoothingStage::SmoothingStage(int n, std::vector<double> knots, std::vector<double> values)
    : n_(n), x_(std::move(knots)), v_(std::move(values))
{
    if (x_.size() < 2 || x_.size() != v_.size())
        throw std::invalid_argument("smoothing stage needs at least two knots");
    const std::size_t K = x_.size();
    slope_.resize(K - 1);
    for (std::size_t i = 0; i + 1 < K; ++i)
        slope_[i] = (v_[i + 1] - v_[i]) / (x_[i + 1] - x_[i]);
    delta_.assign(K, 0.0);
    const double cap = std::ldexp(1.0, -n - 2);
    for (std::size_t k = 1; k + 1 < K; ++k)
        delta_[k] = std::min(cap, 0.25 * std::min(x_[k] - x_[k - 1], x_[k + 1] - x_[k]));
}

SmoothingStage::Local SmoothingStage::locate(double x) const
{
    if (!(x >= x_.front() && x <= x_.back()))
        throw std::domain_error("argument outside the smoothing window");
    const std::size_t K = x_.size();
    auto seg = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    seg = std::min(seg == 0 ? 0 : seg - 1, K - 2);
    if (seg > 0 && x - x_[seg] < delta_[seg])
        return {seg, static_cast<std::ptrdiff_t>(seg), x - x_[seg] + delta_[seg]};
    if (seg + 2 < K && x_[seg + 1] - x < delta_[seg + 1])
        return {seg, static_cast<std::ptrdiff_t>(seg + 1), x - x_[seg + 1] + delta_[seg + 1]};
    return {seg, -1, 0.0};
}

double SmoothingStage::chord_value(double x) const
{
    const Local loc = locate(x);
    return v_[loc.seg] + slope_[loc.seg] * (x - x_[loc.seg]);
}

double SmoothingStage::value(double x) const
{
    const Local loc = locate(x);
    if (loc.knot < 0)
        return v_[loc.seg] + slope_[loc.seg] * (x - x_[loc.seg]);
    const auto k = static_cast<std::size_t>(loc.knot);
    const double jump = std::max(0.0, slope_[k] - slope_[k - 1]);
    return v_[k] + slope_[k - 1] * (x - x_[k]) + jump * blend(loc.u, delta_[k]);
}

OneSided SmoothingStage::derivative(double x) const
{
    if (!(x > x_.front()))
        throw std::domain_error("one-sided derivatives need x > r0");
    const Local loc = locate(x);
    double d = slope_[loc.seg];
    if (loc.knot >= 0) {
        const auto k = static_cast<std::size_t>(loc.knot);
        d = slope_[k - 1] + std::max(0.0, slope_[k] - slope_[k - 1]) * blend_d1(loc.u, delta_[k]);
    }
    return {d, d};
}

double SmoothingStage::second_derivative(double x) const
{
    const Local loc = locate(x);
    if (loc.knot < 0)
        return 0.0;
    const auto k = static_cast<std::size_t>(loc.knot);
    return std::max(0.0, slope_[k] - slope_[k - 1]) * blend_d2(loc.u, delta_[k]);
}

SmoothingSequence build_smoothing(const ConvexDecreasingFunction& f, int n_max, const SmoothingOptions& opts)
{
    if (n_max < 1)
        throw std::invalid_argument("n_max must be at least 1");
    const double x_begin = opts.x_begin > 0.0 ? opts.x_begin : f.r0();
    if (x_begin < f.domain_start())
        throw std::invalid_argument("smoothing window starts below the domain of f");
    const double f_begin = f.value(x_begin);
    if (!std::isfinite(f_begin) || f_begin > opts.value_cap)
        throw std::invalid_argument("knot sequence cannot start");
    const double x_end = opts.x_end > 0.0 ? opts.x_end : x_begin + opts.window;
    if (!(x_end > x_begin))
        throw std::invalid_argument("empty smoothing window");

    SmoothingSequence seq{f, {}};
    std::vector<double> xs{x_begin, x_end};
    std::vector<double> vs{f_begin, f.value(x_end)};
    for (int n = 1; n <= n_max; ++n) {
        const double gap = std::ldexp(1.0, -n);
        std::vector<double> nx, nv;
        nx.reserve(2 * xs.size());
        nv.reserve(2 * xs.size());
        // bisect each previous segment until both the spacing and the value gap are <= 2^-n;
        // previous knots are kept so the chord interpolants decrease with n
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            std::vector<std::pair<double, double>> stack{{xs[i + 1], vs[i + 1]}};
            double a = xs[i], fa = vs[i];
            nx.push_back(a);
            nv.push_back(fa);
            while (!stack.empty()) {
                auto [b, fb] = stack.back();
                if (b - a > gap || std::abs(fa - fb) > gap) {
                    const double m = 0.5 * (a + b);
                    stack.emplace_back(m, f.value(m));
                    continue;
                }
                stack.pop_back();
                if (!stack.empty()) {
                    nx.push_back(b);
                    nv.push_back(fb);
                }
                a = b;
                fa = fb;
            }
        }
        nx.push_back(xs.back());
        nv.push_back(vs.back());
        xs = std::move(nx);
        vs = std::move(nv);
        seq.stages.push_back(std::make_shared<SmoothingStage>(n, xs, vs));
    }
    return seq;
}

}  // namespace expsys
