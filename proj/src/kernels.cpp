#include "gpe2/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace gpe2::kernels {

const Kernels& avx2_kernels_impl();

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Kernels& avx2_kernels() {
    return avx2_supported() ? avx2_kernels_impl() : scalar_kernels();
}

const Kernels& active() {
    static const Kernels* chosen = [] {
        if (const char* env = std::getenv("GPE2_KERNELS")) {
            if (std::strcmp(env, "scalar") == 0) return &scalar_kernels();
            if (std::strcmp(env, "avx2") == 0) return &avx2_kernels();
        }
        return avx2_supported() ? &avx2_kernels_impl() : &scalar_kernels();
    }();
    return *chosen;
}

} // namespace gpe2::kernels
