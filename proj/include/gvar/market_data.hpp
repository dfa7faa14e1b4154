#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gvar/dates.hpp"

namespace gvar {

struct PricePoint {
    Date date;
    double close; // > 0
};

/// Ordered series of index levels. Dates are strictly increasing and every
/// close is positive; both are enforced on construction.
class PriceSeries {
public:
    PriceSeries() = default;

    /// Sorts by date, then validates. Throws DuplicateDate / NonPositivePrice /
    /// EmptySeries.
    explicit PriceSeries(std::vector<PricePoint> points);

    const std::vector<PricePoint>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<PricePoint> entries_;
};

struct ReturnPoint {
    Date date;
    double value; // log return
};

/// Log returns sampled every `stride` rows over a `horizon`-row span.
/// Entry k covers prices rows t_k - horizon .. t_k with t_k = horizon + k*stride.
class ReturnSeries {
public:
    ReturnSeries() = default;
    ReturnSeries(std::vector<ReturnPoint> points, int horizon, int stride);

    const std::vector<ReturnPoint>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    int horizon() const { return horizon_; }
    int stride() const { return stride_; }

    /// Return values only, in order; the usual input to the estimators.
    std::vector<double> values() const;

private:
    std::vector<ReturnPoint> entries_;
    int horizon_ = 1;
    int stride_ = 1;
};

struct EventFlag {
    Date date;
    bool is_abnormal;
};

/// Per-observation abnormal-fluctuation labels: flag set iff the log return
/// is strictly below the (negative) threshold.
struct EventLabels {
    std::vector<EventFlag> flags; // aligned one-to-one with a ReturnSeries
    double threshold = -0.05;

    std::size_t abnormal_count() const;
};

struct CsvOptions {
    char delimiter = ',';
    std::string date_column = "date";
    std::string close_column = "close";
    std::string date_format = "%Y-%m-%d";
};

/// Parse delimited price data with a header row. Rows are sorted by date
/// afterwards. Throws MissingColumn, UnparseableDate, NonPositivePrice (with
/// the offending row index), MalformedRow, DuplicateDate, EmptySeries.
PriceSeries parse_price_csv(std::string_view text, const CsvOptions& opts = {});

/// Log returns ln(X_{t} / X_{t-horizon}) sampled at t = horizon, horizon+stride, ...
/// Requires len(prices) > horizon (SeriesTooShort otherwise).
ReturnSeries log_returns(const PriceSeries& prices, int horizon, int stride);

/// Flag every observation with value < threshold. Requires threshold < 0.
EventLabels label_events(const ReturnSeries& returns, double threshold = -0.05);

} // namespace gvar
