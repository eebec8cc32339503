#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"
#include "nlp/simd/kernels.hpp"

namespace nlp::simd {

const KernelSet* avx2_kernels() {
#if defined(__x86_64__) || defined(_M_X64)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& active() {
    static const KernelSet& chosen = [] () -> const KernelSet& {
        const char* env = std::getenv("NLP_SIMD");
        if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
        if (const KernelSet* k = avx2_kernels()) return *k;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace nlp::simd
