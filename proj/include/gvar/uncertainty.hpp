#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gvar/dates.hpp"
#include "gvar/market_data.hpp"

namespace gvar {

/// Moving-block window pair: n0 observations of history, scanned with
/// contiguous blocks of length n1. n1 >= 2 so the unbiased variance divisor
/// n1 - 1 stays positive.
struct BlockConfig {
    int n0 = 20;
    int n1 = 8;

    int block_count() const { return n0 - n1 + 1; }

    /// Throws InvalidBlockConfig unless 2 <= n1 <= n0.
    void validate() const;
};

/// Extremal mean estimates over one window: min and max of the block means.
struct MeanUncertainty {
    double lower = 0.0; // min block mean
    double upper = 0.0; // max block mean

    double diff() const { return upper - lower; }
};

/// Extremal variance estimates over one window: min and max of the per-block
/// unbiased sample variances.
struct VolatilityUncertainty {
    double lower_var = 0.0;
    double upper_var = 0.0;

    double lower_sigma() const;
    double upper_sigma() const;

    /// sigma_upper / sigma_lower; undefined when lower_var == 0.
    std::optional<double> ratio() const;
};

struct UncertaintyRecord {
    std::size_t index = 0; // position in the source ReturnSeries
    Date date;
    MeanUncertainty mean;
    VolatilityUncertainty vol;

    double mean_diff() const { return mean.diff(); }
    std::optional<double> vol_ratio() const { return vol.ratio(); }
};

using UncertaintySeries = std::vector<UncertaintyRecord>;

/// Sample mean of each contiguous block of length n1 inside the window;
/// output j covers window[j .. j + n1 - 1], j = 0 .. n0 - n1.
/// Throws WindowLengthMismatch if window.size() != cfg.n0, InvalidBlockConfig
/// if the window pair is illegal.
std::vector<double> block_means(std::span<const double> window, const BlockConfig& cfg);

/// (min, max) of the block means.
MeanUncertainty mean_uncertainty(std::span<const double> window, const BlockConfig& cfg);

/// (min, max) of the per-block unbiased variances, each block deviating from
/// its own mean.
VolatilityUncertainty volatility_uncertainty(std::span<const double> window, const BlockConfig& cfg);

/// Per-date extremal estimates over the trailing n0 observations
/// {Z_{s-n0+1} .. Z_s}. The first n0 - 1 observations are warm-up and emit
/// no record. Throws SeriesTooShort when the series is shorter than n0.
UncertaintySeries rolling_uncertainty(const ReturnSeries& returns, const BlockConfig& cfg);

} // namespace gvar
