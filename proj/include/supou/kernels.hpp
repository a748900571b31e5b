#pragma once

#include <cstddef>
#include <cstdint>

namespace supou::kernels {

// The path-evaluation inner loop: given the active atom arrays (arrival tau,
// decay rate xi, jump size zeta) and a query time t >= tau[i], accumulate
//
//     sum_i zeta[i] * exp(-xi[i] * (t - tau[i]))
//
// and set prune_mask[i] = 1 where the contribution fell below prune_tol.
// The caller compacts the arrays afterwards; a contribution below the
// threshold stays below it at all later times, so pruning is one-way.
using DecaySumFn = double (*)(const double* tau, const double* xi, const double* zeta,
                              std::size_t n, double t, double prune_tol,
                              std::uint8_t* prune_mask);

double decay_sum_scalar(const double* tau, const double* xi, const double* zeta,
                        std::size_t n, double t, double prune_tol,
                        std::uint8_t* prune_mask);

#if defined(__x86_64__) || defined(_M_X64)
#define SUPOU_KERNELS_X86 1
double decay_sum_avx2(const double* tau, const double* xi, const double* zeta,
                      std::size_t n, double t, double prune_tol,
                      std::uint8_t* prune_mask);
#endif

enum class Impl { Scalar, Avx2 };

// Resolved once per process: SUPOU_KERNEL=scalar|avx2 overrides, otherwise
// AVX2 is used when the CPU supports it. A fixed choice per process keeps
// re-runs of the same manifest byte-identical.
Impl active_impl();
const char* impl_name(Impl impl);
DecaySumFn decay_sum();

}  // namespace supou::kernels
