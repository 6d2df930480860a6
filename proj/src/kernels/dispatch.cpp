#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "svfix/error.hpp"
#include "svfix/kernels.hpp"

namespace svfix::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(SVFIX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend pick_default() {
    const char* env = std::getenv("SVFIX_KERNEL");
    if (env != nullptr && std::strlen(env) > 0) {
        const std::string s(env);
        if (s == "scalar") return Backend::Scalar;
        if (s == "avx2") {
            if (backend_supported(Backend::Avx2)) return Backend::Avx2;
            return Backend::Scalar;  // requested ISA unavailable, fall back
        }
        // "auto" and anything unrecognized fall through to detection
    }
    return backend_supported(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& state() {
    static std::atomic<Backend> current{pick_default()};
    return current;
}

}  // namespace

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Scalar: return true;
        case Backend::Avx2: return cpu_has_avx2();
    }
    return false;
}

Backend active_backend() { return state().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw ContractViolation(std::string("kernel backend not supported on this host: ") +
                                backend_name(b));
    state().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "?";
}

const KernelTable& table_for(Backend b) {
#if defined(SVFIX_HAVE_AVX2)
    if (b == Backend::Avx2) return detail::avx2_table;
#endif
    (void)b;
    return detail::scalar_table;
}

const KernelTable& table() { return table_for(active_backend()); }

}  // namespace svfix::kernels
