#include "expsys/subharmonic.hpp"

#include "expsys/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace expsys {

namespace {

template <class G>
double integrate_geometric(G&& g, double a, double b, double* error)
{
    double sum = 0.0, err = 0.0;
    while (a < b) {
        const double c = std::min(b, 2.0 * a);
        double e = 0.0;
        sum += integrate(g, a, c, &e);
        err += e;
        a = c;
    }
    if (error)
        *error = err;
    return sum;
}

}  // namespace

RadialSubharmonic::RadialSubharmonic(std::shared_ptr<const ConvexWeight> weight, double R, double r)
    : f_(std::move(weight)), R_(R), r_(r)
{
    if (!f_)
        throw std::invalid_argument("missing weight");
    if (!(R > 0.0) || !std::isfinite(R))
        throw std::invalid_argument("R must be positive");
    if (!(r >= 0.0) || !(r < R))
        throw std::invalid_argument("inner radius must satisfy 0 < r < R");
    if (R * R < f_->domain_start() || R * R > f_->domain_end())
        throw std::domain_error("R^2 outside the domain of the weight");
    tail_ = f_->value(R * R) / R;
}

double RadialSubharmonic::F_R(double x) const
{
    if (!(x > 0.0))
        throw std::invalid_argument("F_R needs x > 0");
    if (x >= R_)
        return 0.0;
    return std::max(f_->value(x * x) / x - tail_, 0.0);
}

OneSided RadialSubharmonic::F_R_derivative(double x) const
{
    if (!(x > 0.0))
        throw std::invalid_argument("F_R needs x > 0");
    if (x > R_)
        return {0.0, 0.0};
    const double x2 = x * x;
    const double base = -f_->value(x2) / x2;
    const OneSided d = f_->derivative(x2);
    if (x == R_)
        return {base + 2.0 * d.left, 0.0};
    return {base + 2.0 * d.left, base + 2.0 * d.right};
}

double RadialSubharmonic::v(double rho) const
{
    if (!(rho > 0.0))
        throw std::invalid_argument("v needs rho > 0");
    return f_->value(rho * rho) / rho - tail_;
}

double RadialSubharmonic::v_derivative(double rho) const
{
    if (!(rho > 0.0))
        throw std::invalid_argument("v needs rho > 0");
    const double x2 = rho * rho;
    return -f_->value(x2) / x2 + 2.0 * f_->derivative(x2).right;
}

double RadialSubharmonic::inversion_radial(double t) const
{
    if (!has_inner())
        throw std::logic_error("inversion needs an inner radius");
    if (t > R_)
        return 0.0;
    if (t > r_)
        return F_R(t);
    if (t > r_ * r_ / R_) {
        const double y = r_ * r_ / t;  // reflected radius
        return std::max(t / (r_ * r_) * f_->value(y * y) - tail_, 0.0);
    }
    return 0.0;
}

double RadialSubharmonic::inversion(PlanePoint z) const { return inversion_radial(modulus(z)); }

double RadialSubharmonic::normal_derivative(double rho) const { return F_R_derivative(rho).left; }

double RadialSubharmonic::inversion_radial_integral(double* error) const
{
    if (!has_inner())
        throw std::logic_error("inversion needs an inner radius");
    const double r2 = r_ * r_;
    double e1 = 0.0, e2 = 0.0;
    const double inner = integrate_geometric(
        [&](double t) {
            const double y = r2 / t;
            return t / r2 * f_->value(y * y) - tail_;
        },
        r2 / R_, r_, &e1);
    const double outer = integrate_geometric([&](double t) { return f_->value(t * t) / t - tail_; }, r_, R_, &e2);
    if (error)
        *error = e1 + e2;
    return inner + outer;
}

double laplacian_closed_form(const ConvexWeight& f, double r)
{
    if (!(r > 0.0))
        throw std::invalid_argument("laplacian needs r > 0");
    const double x = r * r;
    return f.value(x) / (x * r) + 4.0 * r * f.second_derivative(x);
}

double normal_derivative_bound(const ConvexWeight& f1, double r)
{
    if (!(r > 1.0))
        throw std::invalid_argument("bound valid only for r > 1");
    return 3.0 * f1.value(r) / (r * (r - 1.0));
}

std::vector<ProfileRow> radial_profile(const RadialSubharmonic& h, double rho_min, double rho_max, int count)
{
    if (!(rho_min > 0.0) || !(rho_max > rho_min) || count < 2)
        throw std::invalid_argument("profile needs 0 < rho_min < rho_max and count >= 2");
    std::vector<ProfileRow> rows;
    rows.reserve(static_cast<std::size_t>(count));
    const double q = std::log(rho_max / rho_min) / (count - 1);
    for (int i = 0; i < count; ++i) {
        const double rho = i + 1 == count ? rho_max : rho_min * std::exp(q * i);
        ProfileRow row{rho, h.F_R(rho), h.has_inner() ? h.inversion_radial(rho) : 0.0,
                       std::numeric_limits<double>::quiet_NaN()};
        try {
            row.laplacian = laplacian_closed_form(h.weight(), rho);
        } catch (const std::domain_error&) {
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace expsys
