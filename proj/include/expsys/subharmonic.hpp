#pragma once

#include "expsys/convexfun.hpp"
#include "expsys/geometry.hpp"

#include <memory>
#include <vector>

namespace expsys {

/** The radial functions built from a convex decreasing weight f and radii r < R:

        F_R(x) = (f(x^2)/x - f(R^2)/R)^+,   V(z) = F_R(|z|),
        v(rho) = f(rho^2)/rho - f(R^2)/R    (no cutoff),

    and the inversion V* of V across the circle |z| = r. The inner radius is optional;
    only inversion queries need it. */
class RadialSubharmonic {
public:
    RadialSubharmonic(std::shared_ptr<const ConvexWeight> weight, double R, double r = 0.0);

    const ConvexWeight& weight() const { return *f_; }
    double R() const { return R_; }
    double r() const { return r_; }
    bool has_inner() const { return r_ > 0.0; }
    RadialSubharmonic with_inner(double r) const { return {f_, R_, r}; }

    double F_R(double x) const;
    OneSided F_R_derivative(double x) const;

    double v(double rho) const;
    double v_derivative(double rho) const;

    /// V*(z) and its radial profile t -> V*(t)
    double inversion(PlanePoint z) const;
    double inversion_radial(double t) const;

    /// radial derivative of V on the circle |z| = rho, taken from the left
    double normal_derivative(double rho) const;

    /// integral of V*(t) dt over [r^2/R, R], split at r
    double inversion_radial_integral(double* error = nullptr) const;

private:
    std::shared_ptr<const ConvexWeight> f_;
    double R_;
    double r_;
    double tail_;  // f(R^2)/R
};

/// f(r^2)/r^3 + 4 r f''(r^2), the Laplacian of rho -> f(rho^2)/rho at rho = r
double laplacian_closed_form(const ConvexWeight& f, double r);

/// 3 f_1(r)/(r(r - 1)); throws "bound valid only for r > 1" for r <= 1
double normal_derivative_bound(const ConvexWeight& f1, double r);

struct ProfileRow {
    double rho;
    double F_R;
    double V_star;     // 0 when no inner radius is set
    double laplacian;  // NaN where the weight is not twice differentiable
};

/// samples on a geometric grid of `count` radii over [rho_min, rho_max]
std::vector<ProfileRow> radial_profile(const RadialSubharmonic& h, double rho_min, double rho_max, int count);

}  // namespace expsys
