#include "supou/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace supou::kernels {

namespace {

bool avx2_available() {
#if defined(SUPOU_KERNELS_X86) && defined(SUPOU_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Impl resolve_impl() {
    if (const char* env = std::getenv("SUPOU_KERNEL")) {
        const std::string requested(env);
        if (requested == "scalar") return Impl::Scalar;
        if (requested == "avx2") {
            if (!avx2_available()) {
                throw std::runtime_error("SUPOU_KERNEL=avx2 requested but AVX2 is unavailable");
            }
            return Impl::Avx2;
        }
        throw std::runtime_error("SUPOU_KERNEL must be 'scalar' or 'avx2', got '" + requested +
                                 "'");
    }
    return avx2_available() ? Impl::Avx2 : Impl::Scalar;
}

}  // namespace

Impl active_impl() {
    static const Impl impl = resolve_impl();
    return impl;
}

const char* impl_name(Impl impl) {
    switch (impl) {
        case Impl::Scalar: return "scalar";
        case Impl::Avx2: return "avx2";
    }
    return "unknown";
}

DecaySumFn decay_sum() {
#if defined(SUPOU_KERNELS_X86) && defined(SUPOU_HAVE_AVX2)
    if (active_impl() == Impl::Avx2) return &decay_sum_avx2;
#endif
    return &decay_sum_scalar;
}

}  // namespace supou::kernels
