#pragma once

#include <cstddef>
#include <optional>

namespace gvar::kernels {

enum class Backend {
    Scalar,
    Avx2,
};

/// Backend chosen for this process: AVX2 when the CPU supports it, scalar
/// otherwise. Overridable via force_backend() or the GVAR_KERNELS environment
/// variable ("scalar" / "avx2"), checked once at first use.
Backend active_backend();

/// Test hook. Passing a backend the CPU cannot run throws DomainError;
/// std::nullopt restores automatic selection.
void force_backend(std::optional<Backend> backend);

const char* backend_name(Backend b);

/// Moving-block moment sweep over one window.
///
/// For each of the k = n0 - n1 + 1 contiguous blocks of length n1 inside
/// window[0..n0), writes the block sample mean to means[j] and the unbiased
/// sample variance (divisor n1 - 1, deviations taken from that block's own
/// mean) to vars[j].
///
/// Requires n1 >= 2 and n1 <= n0; callers validate. All backends accumulate
/// in identical order, so scalar and SIMD results are bit-identical.
void block_moment_sweep(const double* window, std::size_t n0, std::size_t n1,
                        double* means, double* vars);

struct MinMax {
    double min;
    double max;
};

/// Min and max of x[0..n), n >= 1.
MinMax minmax(const double* x, std::size_t n);

namespace detail {
void block_moment_sweep_scalar(const double* window, std::size_t n0, std::size_t n1,
                               double* means, double* vars);
MinMax minmax_scalar(const double* x, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void block_moment_sweep_avx2(const double* window, std::size_t n0, std::size_t n1,
                             double* means, double* vars);
MinMax minmax_avx2(const double* x, std::size_t n);
#endif
} // namespace detail

} // namespace gvar::kernels
