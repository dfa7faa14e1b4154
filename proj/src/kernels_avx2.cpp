#include <immintrin.h>

#include <algorithm>

#include "gvar/kernels.hpp"

namespace gvar::kernels::detail {

// Vectorizes across blocks: lane l of a vector carries block j + l, and the
// i-th elements of four consecutive blocks are the contiguous doubles
// window[j + i .. j + i + 3]. Each lane performs the same adds, the same
// divide, and the same multiply-adds (no FMA) in the same order as the
// scalar kernel, so results are bit-identical to it.
void block_moment_sweep_avx2(const double* window, std::size_t n0, std::size_t n1,
                             double* means, double* vars) {
    const std::size_t blocks = n0 - n1 + 1;
    const __m256d len = _mm256_set1_pd(static_cast<double>(n1));
    const __m256d dof = _mm256_set1_pd(static_cast<double>(n1 - 1));
    std::size_t j = 0;
    for (; j + 4 <= blocks; j += 4) {
        __m256d sum = _mm256_setzero_pd();
        for (std::size_t i = 0; i < n1; ++i) {
            sum = _mm256_add_pd(sum, _mm256_loadu_pd(window + j + i));
        }
        const __m256d mean = _mm256_div_pd(sum, len);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t i = 0; i < n1; ++i) {
            const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(window + j + i), mean);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
        }
        _mm256_storeu_pd(means + j, mean);
        _mm256_storeu_pd(vars + j, _mm256_div_pd(acc, dof));
    }
    if (j < blocks) {
        // Remaining blocks are the leading blocks of the shortened window
        // starting at offset j.
        block_moment_sweep_scalar(window + j, n0 - j, n1, means + j, vars + j);
    }
}

MinMax minmax_avx2(const double* x, std::size_t n) {
    if (n < 8) return minmax_scalar(x, n);
    __m256d vmin = _mm256_loadu_pd(x);
    __m256d vmax = vmin;
    std::size_t i = 4;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        vmin = _mm256_min_pd(vmin, v);
        vmax = _mm256_max_pd(vmax, v);
    }
    alignas(32) double lo[4];
    alignas(32) double hi[4];
    _mm256_store_pd(lo, vmin);
    _mm256_store_pd(hi, vmax);
    MinMax r{lo[0], hi[0]};
    for (int l = 1; l < 4; ++l) {
        r.min = std::min(r.min, lo[l]);
        r.max = std::max(r.max, hi[l]);
    }
    for (; i < n; ++i) {
        r.min = std::min(r.min, x[i]);
        r.max = std::max(r.max, x[i]);
    }
    return r;
}

} // namespace gvar::kernels::detail
