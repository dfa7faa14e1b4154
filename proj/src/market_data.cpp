#include "gvar/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

#include "gvar/errors.hpp"

namespace gvar {

namespace {

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

double parse_close(std::string_view field, std::size_t row) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc{} || ptr != last) {
        throw MalformedRow("row " + std::to_string(row) + ": close value '" +
                           std::string(field) + "' is not a number");
    }
    return value;
}

} // namespace

PriceSeries::PriceSeries(std::vector<PricePoint> points) : entries_(std::move(points)) {
    if (entries_.empty()) throw EmptySeries("price series is empty");
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const PricePoint& a, const PricePoint& b) { return a.date < b.date; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i > 0 && entries_[i].date == entries_[i - 1].date) {
            throw DuplicateDate("duplicate date " + entries_[i].date.iso());
        }
        if (!(entries_[i].close > 0.0) || !std::isfinite(entries_[i].close)) {
            throw NonPositivePrice("row " + std::to_string(i) + " (" + entries_[i].date.iso() +
                                   "): close must be a positive finite number");
        }
    }
}

ReturnSeries::ReturnSeries(std::vector<ReturnPoint> points, int horizon, int stride)
    : entries_(std::move(points)), horizon_(horizon), stride_(stride) {
    if (horizon_ < 1 || stride_ < 1) {
        throw DomainError("horizon and stride must be positive");
    }
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (!(entries_[i - 1].date < entries_[i].date)) {
            throw DuplicateDate("return dates must be strictly increasing at " +
                                entries_[i].date.iso());
        }
    }
}

std::vector<double> ReturnSeries::values() const {
    std::vector<double> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.value);
    return out;
}

std::size_t EventLabels::abnormal_count() const {
    std::size_t n = 0;
    for (const auto& f : flags) n += f.is_abnormal ? 1 : 0;
    return n;
}

PriceSeries parse_price_csv(std::string_view text, const CsvOptions& opts) {
    // Plain delimiter splitting; index-level CSVs do not use quoted fields.
    std::size_t line_start = 0;
    std::size_t row = 0;
    std::size_t date_col = std::string_view::npos;
    std::size_t close_col = std::string_view::npos;
    std::size_t columns = 0;
    std::vector<PricePoint> points;
    while (line_start <= text.size()) {
        const std::size_t line_end = std::min(text.find('\n', line_start), text.size());
        const std::string_view line = strip_cr(text.substr(line_start, line_end - line_start));
        line_start = line_end + 1;
        if (line.empty()) continue;
        const auto fields = split(line, opts.delimiter);
        if (row == 0) {
            columns = fields.size();
            for (std::size_t c = 0; c < fields.size(); ++c) {
                if (fields[c] == opts.date_column) date_col = c;
                if (fields[c] == opts.close_column) close_col = c;
            }
            if (date_col == std::string_view::npos) {
                throw MissingColumn("header lacks date column '" + opts.date_column + "'");
            }
            if (close_col == std::string_view::npos) {
                throw MissingColumn("header lacks close column '" + opts.close_column + "'");
            }
        } else {
            if (fields.size() != columns) {
                throw MalformedRow("row " + std::to_string(row) + ": expected " +
                                   std::to_string(columns) + " fields, got " +
                                   std::to_string(fields.size()));
            }
            const Date date = parse_date(fields[date_col], opts.date_format);
            const double close = parse_close(fields[close_col], row);
            if (!(close > 0.0) || !std::isfinite(close)) {
                throw NonPositivePrice("row " + std::to_string(row) + " (" + date.iso() +
                                       "): close must be positive, got " +
                                       std::string(fields[close_col]));
            }
            points.push_back(PricePoint{date, close});
        }
        ++row;
    }
    if (row == 0) throw EmptySeries("input has no header row");
    return PriceSeries(std::move(points)); // sorts; throws EmptySeries when no data rows
}

ReturnSeries log_returns(const PriceSeries& prices, int horizon, int stride) {
    if (horizon < 1 || stride < 1) {
        throw DomainError("horizon and stride must be positive");
    }
    const auto& entries = prices.entries();
    if (entries.size() <= static_cast<std::size_t>(horizon)) {
        throw SeriesTooShort("need more than " + std::to_string(horizon) +
                             " prices, got " + std::to_string(entries.size()));
    }
    std::vector<ReturnPoint> points;
    points.reserve((entries.size() - horizon - 1) / stride + 1);
    for (std::size_t t = static_cast<std::size_t>(horizon); t < entries.size();
         t += static_cast<std::size_t>(stride)) {
        const double ratio = entries[t].close / entries[t - horizon].close;
        points.push_back(ReturnPoint{entries[t].date, std::log(ratio)});
    }
    return ReturnSeries(std::move(points), horizon, stride);
}

EventLabels label_events(const ReturnSeries& returns, double threshold) {
    if (!(threshold < 0.0)) throw DomainError("event threshold must be negative");
    EventLabels labels;
    labels.threshold = threshold;
    labels.flags.reserve(returns.size());
    for (const auto& e : returns.entries()) {
        labels.flags.push_back(EventFlag{e.date, e.value < threshold});
    }
    return labels;
}

} // namespace gvar
