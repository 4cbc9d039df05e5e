#include "toreesnn/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace toreesnn::kernels {

#if !defined(TOREESNN_HAVE_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !defined(TOREESNN_HAVE_NEON)
const KernelTable* neon_table() { return nullptr; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(TOREESNN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend() {
    if (const char* env = std::getenv("TOREESNN_KERNELS")) {
        if (std::string(env) == "scalar") return Backend::Scalar;
    }
    return detect_backend();
}

const KernelTable* table_for(Backend b) {
    switch (b) {
        case Backend::Scalar: return &scalar_table();
        case Backend::Avx2: return cpu_has_avx2() ? avx2_table() : nullptr;
        case Backend::Neon: return neon_table();
    }
    return nullptr;
}

struct Selection {
    std::atomic<Backend> backend;
    std::atomic<const KernelTable*> table;
    Selection() {
        const Backend b = initial_backend();
        backend.store(b);
        table.store(table_for(b));
    }
};

Selection& selection() {
    static Selection s;
    return s;
}

}  // namespace

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

Backend detect_backend() {
    if (cpu_has_avx2()) return Backend::Avx2;
    if (neon_table() != nullptr) return Backend::Neon;
    return Backend::Scalar;
}

bool backend_available(Backend b) { return table_for(b) != nullptr; }

Backend active_backend() { return selection().backend.load(); }

void set_backend(Backend b) {
    const KernelTable* t = table_for(b);
    if (t == nullptr)
        throw std::invalid_argument("kernel backend not available: " + std::string(backend_name(b)));
    selection().table.store(t);
    selection().backend.store(b);
}

const KernelTable& active() { return *selection().table.load(std::memory_order_relaxed); }

}  // namespace toreesnn::kernels
