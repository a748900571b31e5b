#include "supou/kernels.hpp"

#if defined(SUPOU_KERNELS_X86)

#include <immintrin.h>

#include <cmath>

namespace supou::kernels {

namespace {

// exp() on 4 doubles, Cephes-style: argument reduction against a split log 2,
// rational approximation on the reduced argument, exponent reassembly via the
// IEEE exponent field. Accurate to a couple of ulp over the normal range.
// Arguments below -708 are flushed to zero; the decay sum only ever sees
// nonpositive arguments and anything that small is below every prune
// threshold in use.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

    const __m256d n =
        _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);
    const __m256d r2 = _mm256_mul_pd(r, r);

    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(9.99999999999999999910e-1));
    p = _mm256_mul_pd(p, r);

    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.0));

    // e^r = 1 + 2 p / (q - p)
    __m256d er = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    er = _mm256_fmadd_pd(er, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

    // scale by 2^n through the exponent bits
    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i biased = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
    const __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(biased, 52));
    __m256d result = _mm256_mul_pd(er, scale);

    const __m256d underflow = _mm256_cmp_pd(x, _mm256_set1_pd(-708.0), _CMP_LT_OQ);
    return _mm256_andnot_pd(underflow, result);
}

}  // namespace

double decay_sum_avx2(const double* tau, const double* xi, const double* zeta,
                      std::size_t n, double t, double prune_tol,
                      std::uint8_t* prune_mask) {
    const __m256d tv = _mm256_set1_pd(t);
    const __m256d tol = _mm256_set1_pd(prune_tol);
    __m256d acc = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d tau_v = _mm256_loadu_pd(tau + i);
        const __m256d xi_v = _mm256_loadu_pd(xi + i);
        const __m256d zeta_v = _mm256_loadu_pd(zeta + i);
        const __m256d arg = _mm256_mul_pd(xi_v, _mm256_sub_pd(tau_v, tv));  // -xi*(t-tau)
        const __m256d contribution = _mm256_mul_pd(zeta_v, exp_pd(arg));
        acc = _mm256_add_pd(acc, contribution);

        const int below = _mm256_movemask_pd(_mm256_cmp_pd(contribution, tol, _CMP_LT_OQ));
        prune_mask[i + 0] = (below >> 0) & 1;
        prune_mask[i + 1] = (below >> 1) & 1;
        prune_mask[i + 2] = (below >> 2) & 1;
        prune_mask[i + 3] = (below >> 3) & 1;
    }

    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);

    for (; i < n; ++i) {
        const double contribution = zeta[i] * std::exp(-xi[i] * (t - tau[i]));
        sum += contribution;
        prune_mask[i] = contribution < prune_tol ? 1 : 0;
    }
    return sum;
}

}  // namespace supou::kernels

#endif  // SUPOU_KERNELS_X86
