#include "gvar/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gvar/errors.hpp"

namespace gvar {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw MalformedRow("'" + std::string(text) + "' is not a number");
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error("read failed on '" + path + "'");
    return std::move(buf).str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error("write failed on '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        throw Error("cannot rename '" + tmp.string() + "' to '" + path + "': " + ec.message());
    }
}

namespace {

// Iterate non-empty lines, tolerating a trailing newline and CRLF endings.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) fn(line);
        if (end == text.size()) break;
        start = end + 1;
    }
}

std::vector<std::string_view> split_fields(std::string_view line, std::size_t expected,
                                           std::string_view format) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (fields.size() != expected) {
        throw MalformedRow(std::string(format) + " row needs " + std::to_string(expected) +
                           " fields, got " + std::to_string(fields.size()));
    }
    return fields;
}

void expect_header(std::string_view line, std::string_view header, std::string_view format) {
    if (line != header) {
        throw MalformedRow(std::string(format) + " header must be '" + std::string(header) +
                           "', got '" + std::string(line) + "'");
    }
}

std::int64_t parse_int_field(std::string_view text) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw MalformedRow("'" + std::string(text) + "' is not an integer");
    }
    return v;
}

bool parse_bool_field(std::string_view text) {
    if (text == "0") return false;
    if (text == "1") return true;
    throw MalformedRow("'" + std::string(text) + "' is not a 0/1 flag");
}

constexpr std::string_view kReturnsHeader = "date,log_return";
constexpr std::string_view kUncertaintyHeader =
    "date,lower_mean,upper_mean,mean_diff,lower_vol,upper_vol,vol_ratio";
constexpr std::string_view kTraceHeader =
    "date,q,g_var,violated,running_rate,n0,n1,mu,sigma_lower,sigma_upper";
constexpr std::string_view kSignalsHeader = "date,indicator,value,tier,crisis_flag";

std::string write_signal_rows(const std::vector<SignalRow>& rows) {
    std::string out{kSignalsHeader};
    out += '\n';
    for (const auto& row : rows) {
        out += row.signal.date.iso();
        out += ',';
        out += indicator_name(row.signal.indicator);
        out += ',';
        out += fmt_double(row.signal.value);
        out += ',';
        out += std::to_string(row.signal.tier);
        out += ',';
        out += row.crisis ? '1' : '0';
        out += '\n';
    }
    return out;
}

} // namespace

std::string write_returns_csv(const ReturnSeries& r) {
    std::string out{kReturnsHeader};
    out += '\n';
    for (const auto& e : r.entries()) {
        out += e.date.iso();
        out += ',';
        out += fmt_double(e.value);
        out += '\n';
    }
    return out;
}

ReturnSeries read_returns_csv(std::string_view text, int horizon, int stride) {
    std::vector<ReturnPoint> points;
    bool saw_header = false;
    for_each_line(text, [&](std::string_view line) {
        if (!saw_header) {
            expect_header(line, kReturnsHeader, "returns");
            saw_header = true;
            return;
        }
        const auto f = split_fields(line, 2, "returns");
        points.push_back(ReturnPoint{parse_date(f[0]), parse_double(f[1])});
    });
    if (!saw_header) throw MalformedRow("returns file is empty");
    return ReturnSeries(std::move(points), horizon, stride);
}

std::string write_uncertainty_csv(const UncertaintySeries& u) {
    std::string out{kUncertaintyHeader};
    out += '\n';
    for (const auto& rec : u) {
        const auto ratio = rec.vol.ratio();
        out += rec.date.iso();
        out += ',';
        out += fmt_double(rec.mean.lower);
        out += ',';
        out += fmt_double(rec.mean.upper);
        out += ',';
        out += fmt_double(rec.mean.diff());
        out += ',';
        out += fmt_double(rec.vol.lower_sigma());
        out += ',';
        out += fmt_double(rec.vol.upper_sigma());
        out += ',';
        out += ratio ? fmt_double(*ratio) : "nan";
        out += '\n';
    }
    return out;
}

UncertaintySeries read_uncertainty_csv(std::string_view text) {
    UncertaintySeries series;
    bool saw_header = false;
    for_each_line(text, [&](std::string_view line) {
        if (!saw_header) {
            expect_header(line, kUncertaintyHeader, "uncertainty");
            saw_header = true;
            return;
        }
        const auto f = split_fields(line, 7, "uncertainty");
        UncertaintyRecord rec;
        rec.index = series.size();
        rec.date = parse_date(f[0]);
        rec.mean.lower = parse_double(f[1]);
        rec.mean.upper = parse_double(f[2]);
        const double lower_sigma = parse_double(f[4]);
        const double upper_sigma = parse_double(f[5]);
        rec.vol.lower_var = lower_sigma * lower_sigma;
        rec.vol.upper_var = upper_sigma * upper_sigma;
        series.push_back(rec);
    });
    if (!saw_header) throw MalformedRow("uncertainty file is empty");
    return series;
}

std::string write_trace_csv(const std::vector<TraceRecord>& trace) {
    std::string out{kTraceHeader};
    out += '\n';
    for (const auto& rec : trace) {
        out += rec.date.iso();
        out += ',';
        out += fmt_double(rec.q);
        out += ',';
        out += fmt_double(rec.g_var);
        out += ',';
        out += rec.violated ? '1' : '0';
        out += ',';
        out += fmt_double(rec.running_rate);
        out += ',';
        out += std::to_string(rec.n0);
        out += ',';
        out += std::to_string(rec.n1);
        out += ',';
        out += fmt_double(rec.mu);
        out += ',';
        out += fmt_double(rec.sigma_lower);
        out += ',';
        out += fmt_double(rec.sigma_upper);
        out += '\n';
    }
    return out;
}

std::vector<TraceRecord> read_trace_csv(std::string_view text) {
    std::vector<TraceRecord> trace;
    bool saw_header = false;
    for_each_line(text, [&](std::string_view line) {
        if (!saw_header) {
            expect_header(line, kTraceHeader, "trace");
            saw_header = true;
            return;
        }
        const auto f = split_fields(line, 10, "trace");
        TraceRecord rec;
        rec.index = trace.size();
        rec.date = parse_date(f[0]);
        rec.q = parse_double(f[1]);
        rec.g_var = parse_double(f[2]);
        rec.violated = parse_bool_field(f[3]);
        rec.running_rate = parse_double(f[4]);
        rec.n0 = static_cast<int>(parse_int_field(f[5]));
        rec.n1 = static_cast<int>(parse_int_field(f[6]));
        rec.mu = parse_double(f[7]);
        rec.sigma_lower = parse_double(f[8]);
        rec.sigma_upper = parse_double(f[9]);
        rec.outside_closed_form = rec.q > 0.0;
        trace.push_back(rec);
    });
    if (!saw_header) throw MalformedRow("trace file is empty");
    return trace;
}

std::string write_signals_csv(const std::vector<WarningSignal>& signals,
                              const std::vector<CorroboratedWarning>& corroborated) {
    std::vector<SignalRow> rows;
    rows.reserve(signals.size());
    for (const auto& sig : signals) {
        bool crisis = false;
        for (const auto& row : corroborated) {
            if (row.index == sig.index) {
                crisis = row.crisis;
                break;
            }
        }
        rows.push_back(SignalRow{sig, crisis});
    }
    return write_signal_rows(rows);
}

std::vector<SignalRow> read_signals_csv(std::string_view text) {
    std::vector<SignalRow> rows;
    bool saw_header = false;
    for_each_line(text, [&](std::string_view line) {
        if (!saw_header) {
            expect_header(line, kSignalsHeader, "signals");
            saw_header = true;
            return;
        }
        const auto f = split_fields(line, 5, "signals");
        SignalRow row;
        row.signal.index = rows.size();
        row.signal.date = parse_date(f[0]);
        row.signal.indicator = parse_indicator(f[1]);
        row.signal.value = parse_double(f[2]);
        row.signal.tier = static_cast<int>(parse_int_field(f[3]));
        row.crisis = parse_bool_field(f[4]);
        rows.push_back(row);
    });
    if (!saw_header) throw MalformedRow("signals file is empty");
    return rows;
}

std::string write_backtest_table(
    const std::vector<std::pair<std::string, BacktestReport>>& rows) {
    std::string out = "index,theo_viol,fact_viol,alpha_hat,lr_uc,lr_ind\n";
    for (const auto& [name, report] : rows) {
        out += name;
        out += ',';
        out += fmt_double(report.theo_viol);
        out += ',';
        out += std::to_string(report.fact_viol);
        out += ',';
        out += fmt_double(report.alpha_hat);
        out += ',';
        out += fmt_double(report.lr_uc_p);
        out += ',';
        out += report.lr_ind_p ? fmt_double(*report.lr_ind_p) : "nan";
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json json_or_null(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

} // namespace

nlohmann::json to_json(const ConfusionCounts& c) {
    return {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}};
}

nlohmann::json to_json(const EvaluationReport& r) {
    return {
        {"counts", to_json(r.counts)},
        {"horizon", r.horizon},
        {"precision", json_or_null(r.precision)},
        {"miss", json_or_null(r.miss)},
        {"recall", json_or_null(r.recall)},
        {"f1", json_or_null(r.f1)},
    };
}

nlohmann::json to_json(const BacktestReport& r) {
    nlohmann::json j{
        {"theo_viol", r.theo_viol},
        {"fact_viol", r.fact_viol},
        {"total", r.total},
        {"alpha_hat", r.alpha_hat},
        {"lr_uc_stat", r.lr_uc_stat},
        {"lr_uc_p", r.lr_uc_p},
        {"lr_ind_stat", r.lr_ind_stat},
        {"lr_ind_p", json_or_null(r.lr_ind_p)},
        {"pass_uc", r.pass_uc},
    };
    if (r.pass_ind) {
        j["pass_ind"] = *r.pass_ind;
    } else {
        j["pass_ind"] = nullptr;
    }
    return j;
}

namespace {

nlohmann::json cell_json(const MonotonicityCell& c) {
    return {
        {"n0", c.windows.n0},
        {"n1", c.windows.n1},
        {"mean_lower_var", c.mean_lower_var},
        {"mean_upper_var", c.mean_upper_var},
    };
}

nlohmann::json direction_json(const MonotonicityDirection& d) {
    nlohmann::json j = cell_json(d.cell);
    j["lower_diff"] = d.lower_diff;
    j["lower_diff_se"] = d.lower_diff_se;
    j["upper_diff"] = d.upper_diff;
    j["upper_diff_se"] = d.upper_diff_se;
    j["lower_conforms"] = d.lower_conforms;
    j["upper_conforms"] = d.upper_conforms;
    return j;
}

} // namespace

nlohmann::json to_json(const MonotonicityReport& r) {
    return {
        {"base", cell_json(r.base)},
        {"enlarged", direction_json(r.enlarged)},
        {"shrunk", direction_json(r.shrunk)},
        {"replications", r.replications},
        {"seed", r.seed},
        {"all_conform", r.all_conform()},
        {"sampling_method", sampling_method()},
    };
}

nlohmann::json to_json(const ConvergenceReport& r) {
    return {
        {"t_burn", r.t_burn},
        {"max_abs_dev", r.max_abs_dev},
        {"terminal_rate", r.terminal_rate},
        {"violations", r.alm.violations},
        {"observations", r.alm.observations},
        {"sampling_method", sampling_method()},
    };
}

} // namespace gvar
