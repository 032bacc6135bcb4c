#include "noisebench/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace noisebench::kernels {

#if defined(NOISEBENCH_HAVE_AVX2)
// Defined in avx2.cpp, which is the only TU compiled with -mavx2; code here
// must not touch it unless the CPU reports AVX2.
const Backend* avx2_backend_table();
#endif

const Backend* avx2_backend() {
#if defined(NOISEBENCH_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2"))
        return avx2_backend_table();
#endif
    return nullptr;
}

namespace {

const Backend& select_backend() {
    const char* env = std::getenv("NOISEBENCH_SIMD");
    const std::string_view mode = env ? std::string_view{env} : std::string_view{"auto"};
    if (mode == "scalar")
        return scalar_backend();
    const Backend* avx2 = avx2_backend();
    if (mode == "avx2" && avx2 == nullptr)
        return scalar_backend(); // requested variant unavailable; degrade quietly
    return avx2 ? *avx2 : scalar_backend();
}

} // namespace

const Backend& active_backend() {
    static const Backend& selected = select_backend();
    return selected;
}

} // namespace noisebench::kernels
