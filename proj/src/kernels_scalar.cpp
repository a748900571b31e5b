#include <cmath>

#include "supou/kernels.hpp"

namespace supou::kernels {

double decay_sum_scalar(const double* tau, const double* xi, const double* zeta,
                        std::size_t n, double t, double prune_tol,
                        std::uint8_t* prune_mask) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double contribution = zeta[i] * std::exp(-xi[i] * (t - tau[i]));
        sum += contribution;
        prune_mask[i] = contribution < prune_tol ? 1 : 0;
    }
    return sum;
}

}  // namespace supou::kernels
