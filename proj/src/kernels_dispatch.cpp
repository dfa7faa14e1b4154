#include "gvar/kernels.hpp"

#include <cstdlib>
#include <string>

#include "gvar/errors.hpp"

namespace gvar::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::optional<Backend>& forced_backend() {
    static std::optional<Backend> forced;
    return forced;
}

// Auto-detection, evaluated once. GVAR_KERNELS=scalar pins the reference
// path; GVAR_KERNELS=avx2 asks for the SIMD path but silently degrades to
// scalar on CPUs that cannot run it (an env override must never SIGILL).
// Unrecognized values fall through to detection.
Backend detect() {
    if (const char* env = std::getenv("GVAR_KERNELS")) {
        const std::string value = env;
        if (value == "scalar") return Backend::Scalar;
        if (value == "avx2" && cpu_has_avx2()) return Backend::Avx2;
        if (value == "avx2") return Backend::Scalar;
    }
    return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

} // namespace

Backend active_backend() {
    if (forced_backend()) return *forced_backend();
    static const Backend detected = detect();
    return detected;
}

void force_backend(std::optional<Backend> backend) {
    if (backend == Backend::Avx2 && !cpu_has_avx2()) {
        throw DomainError("cannot force avx2 kernels: CPU lacks AVX2");
    }
    forced_backend() = backend;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

void block_moment_sweep(const double* window, std::size_t n0, std::size_t n1,
                        double* means, double* vars) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::Avx2) {
        detail::block_moment_sweep_avx2(window, n0, n1, means, vars);
        return;
    }
#endif
    detail::block_moment_sweep_scalar(window, n0, n1, means, vars);
}

MinMax minmax(const double* x, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::Avx2) {
        return detail::minmax_avx2(x, n);
    }
#endif
    return detail::minmax_scalar(x, n);
}

} // namespace gvar::kernels
