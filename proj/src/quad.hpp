#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "supou/errors.hpp"

namespace supou::quad {

// Adaptive Gauss-Kronrod on [a,b]; either endpoint may be infinite.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol) {
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, rel_tol, &error);
    if (!std::isfinite(value)) {
        throw NumericError("quadrature produced a non-finite value");
    }
    return value;
}

}  // namespace supou::quad
