#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gvar/evaluation.hpp"
#include "gvar/gvar_alm.hpp"
#include "gvar/market_data.hpp"
#include "gvar/synthetic.hpp"
#include "gvar/uncertainty.hpp"
#include "gvar/warnings.hpp"

namespace gvar {

/// Shortest decimal form that parses back to exactly the same double
/// (std::to_chars). NaN renders as "nan", infinities as "inf"/"-inf".
std::string fmt_double(double v);

/// Inverse of fmt_double; throws MalformedRow on anything but a full parse.
double parse_double(std::string_view text);

/// Whole-file read; throws Error when the file cannot be opened.
std::string read_file(const std::string& path);

/// Write via a temporary file in the same directory followed by a rename, so
/// readers never observe a partial file. Throws Error on IO failure.
void write_file_atomic(const std::string& path, std::string_view content);

// ---------------------------------------------------------------------------
// Delimited formats. Each writer emits a header row plus one row per record;
// each reader accepts exactly what the writer emits, so write(read(write(x)))
// is byte-identical to write(x).
// ---------------------------------------------------------------------------

/// Columns: date,log_return
std::string write_returns_csv(const ReturnSeries& r);
ReturnSeries read_returns_csv(std::string_view text, int horizon = 1, int stride = 1);

/// Columns: date,lower_mean,upper_mean,mean_diff,lower_vol,upper_vol,vol_ratio
/// The vol columns are standard deviations; an undefined ratio is "nan".
std::string write_uncertainty_csv(const UncertaintySeries& u);
UncertaintySeries read_uncertainty_csv(std::string_view text);

/// Columns: date,q,g_var,violated,running_rate,n0,n1,mu,sigma_lower,sigma_upper
std::string write_trace_csv(const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> read_trace_csv(std::string_view text);

/// Columns: date,indicator,value,tier,crisis_flag. crisis_flag marks signals
/// whose date is flagged as a crisis in the corroborated view.
struct SignalRow {
    WarningSignal signal;
    bool crisis = false;
};
std::string write_signals_csv(const std::vector<WarningSignal>& signals,
                              const std::vector<CorroboratedWarning>& corroborated);
std::vector<SignalRow> read_signals_csv(std::string_view text);

/// Columns: index,theo_viol,fact_viol,alpha_hat,lr_uc,lr_ind — one row per
/// named series, mirroring the coverage-table layout.
std::string write_backtest_table(const std::vector<std::pair<std::string, BacktestReport>>& rows);

// ---------------------------------------------------------------------------
// JSON report fragments (keys sorted by nlohmann's ordering; doubles use the
// same shortest round-trip form). Undefined metrics serialize as null.
// ---------------------------------------------------------------------------

nlohmann::json to_json(const ConfusionCounts& c);
nlohmann::json to_json(const EvaluationReport& r);
nlohmann::json to_json(const BacktestReport& r);
nlohmann::json to_json(const MonotonicityReport& r);
nlohmann::json to_json(const ConvergenceReport& r);

} // namespace gvar
