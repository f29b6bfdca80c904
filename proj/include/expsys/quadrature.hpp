#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace expsys {

/// Adaptive Gauss-Kronrod (31 points) on a finite interval.
template <class F>
double integrate(F&& f, double a, double b, double* error = nullptr)
{
    if (a == b)
        return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13, error);
}

}  // namespace expsys
