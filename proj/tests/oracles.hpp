#pragma once

// Reference computations used only by the tests. They are deliberately naive and
// share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// composite Simpson rule with n (even) panels
template <class F>
double simpson(F&& f, double a, double b, int n = 20000)
{
    if (n % 2)
        ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Simpson on a geometric partition of [a, b] into `pieces` subintervals
template <class F>
double simpson_log(F&& f, double a, double b, int pieces = 64, int n = 2000)
{
    const double q = std::pow(b / a, 1.0 / pieces);
    double s = 0.0, lo = a;
    for (int i = 0; i < pieces; ++i) {
        const double hi = i + 1 == pieces ? b : lo * q;
        s += simpson(f, lo, hi, n);
        lo = hi;
    }
    return s;
}

/// 5-point polar Laplacian of a radial profile: u'' + u'/rho with step h = 1e-4 rho
template <class F>
double polar_laplacian(F&& u, double rho)
{
    const double h = 1e-4 * rho;
    const double u_m2 = u(rho - 2 * h), u_m1 = u(rho - h), u0 = u(rho), u_p1 = u(rho + h), u_p2 = u(rho + 2 * h);
    const double d2 = (-u_p2 + 16 * u_p1 - 30 * u0 + 16 * u_m1 - u_m2) / (12 * h * h);
    const double d1 = (-u_p2 + 8 * u_p1 - 8 * u_m1 + u_m2) / (12 * h);
    return d2 + d1 / rho;
}

/** second-order 5-point polar stencil of u(x, y) at (rho cos th, rho sin th):
    u_rr + u_r/rho + u_thth/rho^2 with steps h = 1e-4 rho and k = 1e-2 */
template <class U>
double polar_five_point(U&& u, double rho, double th)
{
    const double h = 1e-4 * rho, k = 1e-2;
    auto at = [&](double r, double t) { return u(r * std::cos(t), r * std::sin(t)); };
    const double c = at(rho, th), rp = at(rho + h, th), rm = at(rho - h, th), tp = at(rho, th + k),
                 tm = at(rho, th - k);
    return (rp - 2 * c + rm) / (h * h) + (rp - rm) / (2 * h * rho) + (tp - 2 * c + tm) / (rho * rho * k * k);
}

/// central difference first derivative
template <class F>
double derivative(F&& u, double x, double h)
{
    return (u(x + h) - u(x - h)) / (2 * h);
}

/// points of a convex polygon: sorted random angles on an ellipse, counter-clockwise
inline std::vector<std::pair<double, double>> random_convex_polygon(std::mt19937_64& gen, int n)
{
    std::uniform_real_distribution<double> U(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> S(0.5, 3.0);
    std::vector<double> th(static_cast<std::size_t>(n));
    for (auto& t : th)
        t = U(gen);
    std::sort(th.begin(), th.end());
    const double a = S(gen), b = S(gen), cx = S(gen) - 1.5, cy = S(gen) - 1.5;
    std::vector<std::pair<double, double>> pts;
    for (double t : th)
        pts.emplace_back(cx + a * std::cos(t), cy + b * std::sin(t));
    return pts;
}

inline double polygon_perimeter(const std::vector<std::pair<double, double>>& v)
{
    double p = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % v.size()];
        p += std::hypot(b.first - a.first, b.second - a.second);
    }
    return p;
}

/// max of Re(s conj z) = s.x z.x + s.y z.y over the vertices
inline double vertex_support(const std::vector<std::pair<double, double>>& v, double zx, double zy)
{
    double best = -INFINITY;
    for (const auto& [x, y] : v)
        best = std::max(best, x * zx + y * zy);
    return best;
}

/// harmonic number H_n
inline double harmonic(std::int64_t n)
{
    double s = 0.0;
    for (std::int64_t k = n; k >= 1; --k)
        s += 1.0 / static_cast<double>(k);
    return s;
}

/// ordinary least-squares slope of y against x
inline double ols_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace oracle
