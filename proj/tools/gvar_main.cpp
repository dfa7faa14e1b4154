// gvar: risk-analytics pipeline driver.
//
// Subcommands:
//   analyze   load prices, compute uncertainty series, adaptive quantile trace
//             and warning signals; write the per-index data files
//   backtest  score warnings against labeled events and run the violation
//             coverage tests; write evaluation JSON and the coverage table
//   simulate  regime-model experiments: window monotonicity and violation-rate
//             convergence
//   report    analyze + backtest plus one consolidated JSON report
//
// Exit status: 0 success, 1 configuration error, 2 data error.

#include <algorithm>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gvar/errors.hpp"
#include "gvar/evaluation.hpp"
#include "gvar/gvar_alm.hpp"
#include "gvar/kernels.hpp"
#include "gvar/market_data.hpp"
#include "gvar/presets.hpp"
#include "gvar/serialize.hpp"
#include "gvar/synthetic.hpp"
#include "gvar/uncertainty.hpp"
#include "gvar/warnings.hpp"

namespace {

using nlohmann::json;

struct CliOverrides {
    std::string config_path;
    std::string output;
    std::string preset;
    std::string alpha;
    std::optional<std::int64_t> seed;
};

struct IndexJob {
    std::string name;
    std::string input;
    gvar::CsvOptions csv;
    gvar::BlockConfig blocks;
    gvar::ThresholdConfig thresholds;
};

struct SimulateSpec {
    gvar::RegimeModel model;
    bool run_monotonicity = false;
    gvar::BlockConfig monotonicity_blocks{20, 8};
    int monotonicity_w0 = 1;
    int monotonicity_w1 = 1;
    int monotonicity_replications = 10000;
    bool run_convergence = false;
    gvar::BlockConfig convergence_init{20, 8};
    std::size_t t_burn = 2000;
};

struct RunConfig {
    std::filesystem::path output = "out";
    int horizon = 2;
    int stride = 2;
    std::size_t eval_horizon = 1;
    double event_threshold = -0.05;
    gvar::Rational alpha{1, 20};
    gvar::AlmOptions alm; // alpha/init are filled per run / per index
    std::size_t corroboration_window = 3;
    std::vector<IndexJob> indexes;
    std::optional<SimulateSpec> simulate;
};

json threshold_json(const gvar::ThresholdConfig& t) {
    return {
        {"lower_mean_line", t.lower_mean_line},
        {"mean_diff_line", t.mean_diff_line},
        {"upper_vol_line", t.upper_vol_line},
        {"vol_ratio_line", t.vol_ratio_line},
        {"gvar_level", t.gvar_level},
        {"gvar_trend", t.gvar_trend},
        {"gvar_deep", t.gvar_deep},
        {"gvar_deep_near", t.gvar_deep_near},
    };
}

json preset_json(const gvar::Preset& p) {
    return {
        {"name", p.name},
        {"blocks", {{"n0", p.blocks.n0}, {"n1", p.blocks.n1}}},
        {"thresholds", threshold_json(p.thresholds)},
    };
}

// --- config parsing -------------------------------------------------------

[[noreturn]] void config_fail(const std::string& message) { throw gvar::ConfigError(message); }

const json& require_key(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        config_fail(where + " is missing required key '" + key + "'");
    }
    return *it;
}

gvar::Rational rational_from(const json& value, const std::string& where) {
    try {
        if (value.is_string()) return gvar::parse_rational(value.get<std::string>());
        if (value.is_number()) return gvar::parse_rational(gvar::fmt_double(value.get<double>()));
    } catch (const gvar::ConfigError& e) {
        config_fail(where + ": " + e.what());
    }
    config_fail(where + " must be a rational string like \"1/20\" or a number");
}

gvar::BlockConfig blocks_from(const json& obj, const std::string& where) {
    gvar::BlockConfig cfg;
    cfg.n0 = require_key(obj, "n0", where).get<int>();
    cfg.n1 = require_key(obj, "n1", where).get<int>();
    cfg.validate();
    return cfg;
}

void apply_threshold_overrides(gvar::ThresholdConfig& t, const json& obj) {
    t.lower_mean_line = obj.value("lower_mean_line", t.lower_mean_line);
    t.mean_diff_line = obj.value("mean_diff_line", t.mean_diff_line);
    t.upper_vol_line = obj.value("upper_vol_line", t.upper_vol_line);
    t.vol_ratio_line = obj.value("vol_ratio_line", t.vol_ratio_line);
    t.gvar_level = obj.value("gvar_level", t.gvar_level);
    t.gvar_trend = obj.value("gvar_trend", t.gvar_trend);
    t.gvar_deep = obj.value("gvar_deep", t.gvar_deep);
    t.gvar_deep_near = obj.value("gvar_deep_near", t.gvar_deep_near);
}

IndexJob parse_index(const json& obj, const CliOverrides& cli) {
    IndexJob job;
    job.name = require_key(obj, "name", "index entry").get<std::string>();
    job.input = require_key(obj, "input", "index '" + job.name + "'").get<std::string>();
    job.csv.date_column = obj.value("date_column", job.csv.date_column);
    job.csv.close_column = obj.value("close_column", job.csv.close_column);
    job.csv.date_format = obj.value("date_format", job.csv.date_format);
    if (const auto delim = obj.value("delimiter", std::string{","}); delim.size() == 1) {
        job.csv.delimiter = delim[0];
    } else {
        config_fail("index '" + job.name + "': delimiter must be a single character");
    }

    // Threshold lines vary per market: resolve a preset first (the entry's
    // own, else the --preset default), then apply inline overrides.
    std::string preset_name = obj.value("preset", std::string{});
    if (preset_name.empty()) preset_name = cli.preset;
    const bool has_inline = obj.contains("blocks") && obj.contains("thresholds");
    if (preset_name.empty() && !has_inline) {
        config_fail("index '" + job.name +
                    "': set \"preset\" or provide explicit \"blocks\" and \"thresholds\"");
    }
    if (!preset_name.empty()) {
        const gvar::Preset& preset = gvar::find_preset(preset_name);
        job.blocks = preset.blocks;
        job.thresholds = preset.thresholds;
    }
    if (obj.contains("blocks")) {
        job.blocks = blocks_from(obj.at("blocks"), "index '" + job.name + "' blocks");
    }
    if (obj.contains("thresholds")) {
        apply_threshold_overrides(job.thresholds, obj.at("thresholds"));
    }
    job.thresholds.validate();
    return job;
}

SimulateSpec parse_simulate(const json& obj) {
    SimulateSpec spec;
    const json& model = require_key(obj, "model", "simulate");
    spec.model.mu = model.value("mu", 0.0);
    spec.model.sigmas = require_key(model, "sigmas", "simulate.model").get<std::vector<double>>();
    spec.model.regime_len = require_key(model, "regime_len", "simulate.model").get<int>();
    spec.model.seed = model.value("seed", std::uint64_t{0});
    spec.model.validate();

    const bool any_section = obj.contains("monotonicity") || obj.contains("convergence");
    if (obj.contains("monotonicity")) {
        const json& p = obj.at("monotonicity");
        spec.run_monotonicity = true;
        spec.monotonicity_blocks.n0 = p.value("n0", spec.monotonicity_blocks.n0);
        spec.monotonicity_blocks.n1 = p.value("n1", spec.monotonicity_blocks.n1);
        spec.monotonicity_w0 = p.value("w0", spec.monotonicity_w0);
        spec.monotonicity_w1 = p.value("w1", spec.monotonicity_w1);
        spec.monotonicity_replications = p.value("replications", spec.monotonicity_replications);
    }
    if (obj.contains("convergence")) {
        const json& c = obj.at("convergence");
        spec.run_convergence = true;
        spec.convergence_init.n0 = c.value("n0", spec.convergence_init.n0);
        spec.convergence_init.n1 = c.value("n1", spec.convergence_init.n1);
        spec.t_burn = c.value("t_burn", spec.t_burn);
    }
    if (!any_section) {
        spec.run_monotonicity = true;
        spec.run_convergence = true;
    }
    return spec;
}

RunConfig load_config(const CliOverrides& cli) {
    std::string text;
    try {
        text = gvar::read_file(cli.config_path);
    } catch (const gvar::Error& e) {
        config_fail(e.what()); // a missing config file is a configuration error
    }
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        config_fail("config '" + cli.config_path + "' is not valid JSON: " + e.what());
    }

    RunConfig cfg;
    cfg.output = root.value("output", std::string{"out"});
    if (!cli.output.empty()) cfg.output = cli.output;
    if (root.contains("sampling")) {
        const json& s = root.at("sampling");
        cfg.horizon = s.value("horizon", cfg.horizon);
        cfg.stride = s.value("stride", cfg.stride);
    }
    if (cfg.horizon < 1 || cfg.stride < 1) config_fail("sampling horizon/stride must be positive");
    if (root.contains("evaluation")) {
        const json& e = root.at("evaluation");
        const auto h = e.value("horizon", static_cast<std::int64_t>(cfg.eval_horizon));
        if (h < 0) config_fail("evaluation horizon must be nonnegative");
        cfg.eval_horizon = static_cast<std::size_t>(h);
        cfg.event_threshold = e.value("event_threshold", cfg.event_threshold);
        if (!(cfg.event_threshold < 0.0)) config_fail("event_threshold must be negative");
    }
    if (root.contains("alpha")) cfg.alpha = rational_from(root.at("alpha"), "alpha");
    if (!cli.alpha.empty()) cfg.alpha = gvar::parse_rational(cli.alpha);
    if (cfg.alpha.num <= 0 || cfg.alpha.compare_ratio(1, 2) <= 0) {
        config_fail("alpha must lie in (0, 1/2), got " + cfg.alpha.str());
    }
    if (root.contains("alm")) {
        const json& a = root.at("alm");
        cfg.alm.w0 = a.value("w0", cfg.alm.w0);
        cfg.alm.w1 = a.value("w1", cfg.alm.w1);
        cfg.alm.n0_min = a.value("n0_min", cfg.alm.n0_min);
        cfg.alm.n0_max = a.value("n0_max", cfg.alm.n0_max);
        cfg.alm.sigma_floor = a.value("sigma_floor", cfg.alm.sigma_floor);
        if (a.contains("sigma_cap") && !a.at("sigma_cap").is_null()) {
            cfg.alm.sigma_cap = a.at("sigma_cap").get<double>();
        }
    }
    const auto corr = root.value("corroboration_window", std::int64_t{3});
    if (corr < 0) config_fail("corroboration_window must be nonnegative");
    cfg.corroboration_window = static_cast<std::size_t>(corr);
    if (root.contains("indexes")) {
        for (const json& entry : root.at("indexes")) {
            cfg.indexes.push_back(parse_index(entry, cli));
        }
    }
    if (root.contains("simulate")) {
        cfg.simulate = parse_simulate(root.at("simulate"));
        if (cli.seed) cfg.simulate->model.seed = static_cast<std::uint64_t>(*cli.seed);
    }
    return cfg;
}

// --- pipeline -------------------------------------------------------------

struct IndexArtifacts {
    IndexJob job;
    gvar::ReturnSeries returns;
    gvar::EventLabels labels;
    gvar::UncertaintySeries uncertainty;
    gvar::AlmResult alm;
    std::vector<gvar::WarningSignal> mean_family;
    std::vector<gvar::WarningSignal> vol_family;
    std::vector<gvar::WarningSignal> gvar_family;
    std::vector<gvar::CorroboratedWarning> corroborated;
};

IndexArtifacts compute_index(const IndexJob& job, const RunConfig& cfg) {
    IndexArtifacts art;
    art.job = job;
    const std::string text = gvar::read_file(job.input);
    const gvar::PriceSeries prices = gvar::parse_price_csv(text, job.csv);
    art.returns = gvar::log_returns(prices, cfg.horizon, cfg.stride);
    art.labels = gvar::label_events(art.returns, cfg.event_threshold);
    art.uncertainty = gvar::rolling_uncertainty(art.returns, job.blocks);
    gvar::AlmOptions opts = cfg.alm;
    opts.alpha = cfg.alpha;
    opts.init = job.blocks;
    art.alm = gvar::run_alm_gvar(art.returns, opts);
    art.mean_family = gvar::mean_signals(art.uncertainty, job.thresholds);
    art.vol_family = gvar::volatility_signals(art.uncertainty, job.thresholds);
    art.gvar_family = gvar::gvar_signals(art.alm.quantile_series(), job.thresholds);
    art.corroborated = gvar::corroborate(art.mean_family, art.vol_family, art.gvar_family,
                                         cfg.corroboration_window);
    return art;
}

// All indexes are computed before anything is written: a failing input leaves
// no partial outputs, and independent indexes run concurrently.
std::vector<IndexArtifacts> compute_all(const RunConfig& cfg) {
    if (cfg.indexes.empty()) config_fail("config lists no indexes");
    std::vector<std::future<IndexArtifacts>> futures;
    futures.reserve(cfg.indexes.size());
    for (const IndexJob& job : cfg.indexes) {
        futures.push_back(std::async(std::launch::async,
                                     [&job, &cfg] { return compute_index(job, cfg); }));
    }
    std::vector<IndexArtifacts> all;
    all.reserve(futures.size());
    for (auto& f : futures) all.push_back(f.get());
    return all;
}

std::vector<gvar::WarningSignal> merged_signals(const IndexArtifacts& art) {
    std::vector<gvar::WarningSignal> all;
    all.reserve(art.mean_family.size() + art.vol_family.size() + art.gvar_family.size());
    all.insert(all.end(), art.mean_family.begin(), art.mean_family.end());
    all.insert(all.end(), art.vol_family.begin(), art.vol_family.end());
    all.insert(all.end(), art.gvar_family.begin(), art.gvar_family.end());
    std::stable_sort(all.begin(), all.end(),
                     [](const gvar::WarningSignal& a, const gvar::WarningSignal& b) {
                         return a.index < b.index;
                     });
    return all;
}

std::vector<bool> violation_flags(const gvar::AlmResult& alm) {
    std::vector<bool> flags;
    flags.reserve(alm.trace.size());
    for (const auto& rec : alm.trace) flags.push_back(rec.violated);
    return flags;
}

std::string out_path(const RunConfig& cfg, const std::string& file) {
    return (cfg.output / file).string();
}

void write_analyze_outputs(const std::vector<IndexArtifacts>& all, const RunConfig& cfg) {
    json summary;
    summary["alpha"] = cfg.alpha.str();
    summary["kernels"] = gvar::kernels::backend_name(gvar::kernels::active_backend());
    for (const IndexArtifacts& art : all) {
        const std::string& name = art.job.name;
        gvar::write_file_atomic(out_path(cfg, name + "_returns.csv"),
                                gvar::write_returns_csv(art.returns));
        gvar::write_file_atomic(out_path(cfg, name + "_uncertainty.csv"),
                                gvar::write_uncertainty_csv(art.uncertainty));
        gvar::write_file_atomic(out_path(cfg, name + "_trace.csv"),
                                gvar::write_trace_csv(art.alm.trace));
        gvar::write_file_atomic(out_path(cfg, name + "_signals.csv"),
                                gvar::write_signals_csv(merged_signals(art), art.corroborated));
        json crisis_dates = json::array();
        for (const auto& row : art.corroborated) {
            if (row.crisis) crisis_dates.push_back(row.date.iso());
        }
        std::size_t outside = 0;
        for (const auto& rec : art.alm.trace) outside += rec.outside_closed_form ? 1 : 0;
        summary["indexes"][name] = {
            {"observations", art.returns.size()},
            {"abnormal_events", art.labels.abnormal_count()},
            {"signals",
             {{"mean", art.mean_family.size()},
              {"volatility", art.vol_family.size()},
              {"gvar", art.gvar_family.size()}}},
            {"violations", art.alm.violations},
            {"scored", art.alm.observations},
            {"violation_rate", art.alm.violation_rate()},
            {"outside_closed_form", outside},
            {"crisis_dates", crisis_dates},
        };
    }
    gvar::write_file_atomic(out_path(cfg, "analyze.json"), summary.dump(2) + "\n");
}

json evaluation_json(const IndexArtifacts& art, const RunConfig& cfg) {
    const auto evaluate = [&](const std::vector<gvar::WarningSignal>& family) {
        const gvar::ConfusionCounts counts =
            gvar::match_warnings(family, art.labels, cfg.eval_horizon);
        return gvar::to_json(gvar::classification_metrics(counts, cfg.eval_horizon));
    };
    const gvar::BacktestReport backtest =
        gvar::backtest_violations(violation_flags(art.alm), cfg.alpha);
    return {
        {"abnormal_events", art.labels.abnormal_count()},
        {"families",
         {{"mean", evaluate(art.mean_family)},
          {"volatility", evaluate(art.vol_family)},
          {"gvar", evaluate(art.gvar_family)}}},
        {"backtest", gvar::to_json(backtest)},
    };
}

void write_backtest_outputs(const std::vector<IndexArtifacts>& all, const RunConfig& cfg) {
    std::vector<std::pair<std::string, gvar::BacktestReport>> rows;
    for (const IndexArtifacts& art : all) {
        rows.emplace_back(art.job.name,
                          gvar::backtest_violations(violation_flags(art.alm), cfg.alpha));
        gvar::write_file_atomic(out_path(cfg, art.job.name + "_evaluation.json"),
                                evaluation_json(art, cfg).dump(2) + "\n");
    }
    gvar::write_file_atomic(out_path(cfg, "backtest.csv"), gvar::write_backtest_table(rows));
}

void write_simulate_outputs(const RunConfig& cfg) {
    if (!cfg.simulate) config_fail("config has no \"simulate\" section");
    const SimulateSpec& spec = *cfg.simulate;
    if (spec.run_monotonicity) {
        const gvar::MonotonicityReport report = gvar::window_monotonicity_experiment(
            spec.model, spec.monotonicity_blocks, spec.monotonicity_w0, spec.monotonicity_w1,
            spec.monotonicity_replications);
        gvar::write_file_atomic(out_path(cfg, "monotonicity.json"),
                                gvar::to_json(report).dump(2) + "\n");
    }
    if (spec.run_convergence) {
        gvar::AlmOptions opts = cfg.alm;
        opts.alpha = cfg.alpha;
        opts.init = spec.convergence_init;
        const gvar::ConvergenceReport report =
            gvar::convergence_experiment(spec.model, opts, spec.t_burn);
        json j = gvar::to_json(report);
        j["seed"] = spec.model.seed;
        gvar::write_file_atomic(out_path(cfg, "convergence.json"), j.dump(2) + "\n");
        gvar::write_file_atomic(out_path(cfg, "convergence_trace.csv"),
                                gvar::write_trace_csv(report.alm.trace));
    }
}

void write_report_outputs(const std::vector<IndexArtifacts>& all, const RunConfig& cfg) {
    json report;
    report["alpha"] = cfg.alpha.str();
    report["sampling"] = {{"horizon", cfg.horizon}, {"stride", cfg.stride}};
    for (const IndexArtifacts& art : all) {
        json entry = evaluation_json(art, cfg);
        json crisis_dates = json::array();
        for (const auto& row : art.corroborated) {
            if (row.crisis) crisis_dates.push_back(row.date.iso());
        }
        entry["crisis_dates"] = crisis_dates;
        entry["signals"] = {{"mean", art.mean_family.size()},
                            {"volatility", art.vol_family.size()},
                            {"gvar", art.gvar_family.size()}};
        report["indexes"][art.job.name] = entry;
    }
    gvar::write_file_atomic(out_path(cfg, "report.json"), report.dump(2) + "\n");
}

int dispatch(const std::string& command, const CliOverrides& cli) {
    const RunConfig cfg = load_config(cli);
    std::filesystem::create_directories(cfg.output);
    if (command == "simulate") {
        write_simulate_outputs(cfg);
        return 0;
    }
    const std::vector<IndexArtifacts> all = compute_all(cfg);
    if (command == "analyze") {
        write_analyze_outputs(all, cfg);
    } else if (command == "backtest") {
        write_backtest_outputs(all, cfg);
    } else { // report
        write_analyze_outputs(all, cfg);
        write_backtest_outputs(all, cfg);
        write_report_outputs(all, cfg);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uncertainty-aware risk analytics: extremal moment estimation, adaptive "
                 "worst-case value-at-risk, and early-warning signals"};
    app.require_subcommand(0, 1);

    CliOverrides cli;
    std::string print_preset;
    app.add_option("--print-preset", print_preset,
                   "Print a built-in preset (sp500, ixic, ftse, gdaxi, csi300) as JSON and exit");

    const auto add_common = [&cli](CLI::App* cmd) {
        cmd->add_option("--config", cli.config_path, "JSON run configuration")->required();
        cmd->add_option("--output", cli.output, "Output directory (overrides config)");
        cmd->add_option("--preset", cli.preset,
                        "Default preset for index entries that name none");
        cmd->add_option("--alpha", cli.alpha, "Risk level, e.g. 1/20 or 0.05 (overrides config)");
        cmd->add_option("--seed", cli.seed, "Simulation seed (overrides config)");
    };
    add_common(app.add_subcommand("analyze",
                                  "Write returns, uncertainty, quantile trace and signals"));
    add_common(app.add_subcommand("backtest", "Write evaluation reports and the coverage table"));
    add_common(app.add_subcommand("simulate", "Run the regime-model experiments"));
    add_common(app.add_subcommand("report", "Analyze + backtest + consolidated report"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!print_preset.empty()) {
            std::cout << preset_json(gvar::find_preset(print_preset)).dump(2) << "\n";
            return 0;
        }
        const auto subcommands = app.get_subcommands();
        if (subcommands.empty()) {
            std::cerr << "error: expected a subcommand (analyze, backtest, simulate, report)\n"
                      << app.help();
            return 1;
        }
        return dispatch(subcommands.front()->get_name(), cli);
    } catch (const gvar::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gvar::InvalidBlockConfig& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gvar::InvalidModel& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gvar::InvalidWindows& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gvar::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gvar::Error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
