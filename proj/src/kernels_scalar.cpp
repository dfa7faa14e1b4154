#include <algorithm>

#include "gvar/kernels.hpp"

namespace gvar::kernels::detail {

// Reference implementation. The SIMD variants replay exactly this operation
// sequence per block (sum in index order, divide, then squared deviations in
// index order), so their outputs are bit-identical; keep the loop structure
// in sync with kernels_avx2.cpp when changing anything here.
void block_moment_sweep_scalar(const double* window, std::size_t n0, std::size_t n1,
                               double* means, double* vars) {
    const std::size_t blocks = n0 - n1 + 1;
    const double len = static_cast<double>(n1);
    const double dof = static_cast<double>(n1 - 1);
    for (std::size_t j = 0; j < blocks; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n1; ++i) sum += window[j + i];
        const double mean = sum / len;
        double acc = 0.0;
        for (std::size_t i = 0; i < n1; ++i) {
            const double d = window[j + i] - mean;
            acc += d * d;
        }
        means[j] = mean;
        vars[j] = acc / dof;
    }
}

MinMax minmax_scalar(const double* x, std::size_t n) {
    MinMax r{x[0], x[0]};
    for (std::size_t i = 1; i < n; ++i) {
        r.min = std::min(r.min, x[i]);
        r.max = std::max(r.max, x[i]);
    }
    return r;
}

} // namespace gvar::kernels::detail
