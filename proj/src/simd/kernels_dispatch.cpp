#include <atomic>

#include "emqm/simd/kernels.hpp"

namespace emqm::simd {

const KernelTable* avx2_table();  // defined in kernels_avx2.cpp (null if not built)

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* detect() {
    if (const KernelTable* t = avx2_table(); t && cpu_has_avx2()) return t;
    return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
    static std::atomic<const KernelTable*> s{detect()};
    return s;
}

}  // namespace

bool avx2_available() { return avx2_table() != nullptr && cpu_has_avx2(); }

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

bool force_backend(std::string_view name) {
    if (name == "scalar") {
        slot().store(&scalar_table(), std::memory_order_relaxed);
        return true;
    }
    if (name == "avx2" && avx2_available()) {
        slot().store(avx2_table(), std::memory_order_relaxed);
        return true;
    }
    return false;
}

std::string_view active_name() { return active().name; }

}  // namespace emqm::simd
