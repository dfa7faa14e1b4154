#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gvar/gvar_alm.hpp"
#include "gvar/market_data.hpp"
#include "gvar/rational.hpp"
#include "gvar/uncertainty.hpp"

namespace gvar {

/// Regime-switching Gaussian return model: observation s in regime j is an
/// independent draw from N(mu, sigma_j^2); regimes have equal length
/// regime_len, so the series length is sigmas.size() * regime_len.
struct RegimeModel {
    double mu = 0.0;
    std::vector<double> sigmas; // one per regime, all > 0
    int regime_len = 50;        // observations per regime
    std::uint64_t seed = 0;

    std::size_t length() const { return sigmas.size() * static_cast<std::size_t>(regime_len); }

    /// Throws InvalidModel unless regime_len >= 1, sigmas nonempty, all > 0.
    void validate() const;
};

/// Name of the Gaussian sampling method, recorded in experiment metadata so
/// runs are reproducible across builds ("mt19937_64+inverse-cdf").
const char* sampling_method();

/// Raw draws from the model; deterministic for a fixed seed.
std::vector<double> generate_regime_values(const RegimeModel& model);

/// Same draws wrapped as a dated ReturnSeries (synthetic consecutive daily
/// labels starting at 2000-01-03, horizon = stride = 1).
ReturnSeries generate_regime_series(const RegimeModel& model);

/// Monte Carlo moments of the extremal variance estimators under one window
/// pair.
struct MonotonicityCell {
    BlockConfig windows;
    double mean_lower_var = 0.0; // MC average of the minimal block variance
    double mean_upper_var = 0.0; // MC average of the maximal block variance
};

/// Paired comparison of an adjusted window pair against the base pair.
/// diff = adjusted - base, averaged over replications on common draws;
/// se is the standard error of that paired difference.
struct MonotonicityDirection {
    MonotonicityCell cell;
    double lower_diff = 0.0;
    double lower_diff_se = 0.0;
    double upper_diff = 0.0;
    double upper_diff_se = 0.0;
    bool lower_conforms = false; // required sign holds within 3 standard errors
    bool upper_conforms = false;
};

struct MonotonicityReport {
    MonotonicityCell base;
    MonotonicityDirection enlarged; // {n0 + w0, n1 - w1}: expects lower <=, upper >=
    MonotonicityDirection shrunk;   // {n0 - w0, n1 + w1}: expects lower >=, upper <=
    int replications = 0;
    std::uint64_t seed = 0;

    bool all_conform() const {
        return enlarged.lower_conforms && enlarged.upper_conforms &&
               shrunk.lower_conforms && shrunk.upper_conforms;
    }
};

/// Monte Carlo check of the window-monotonicity property: enlarging the pair
/// to {n0 + w0, n1 - w1} should not raise the expected minimal block variance
/// nor lower the expected maximal one, and the shrunken pair reverses both.
/// Each replication draws a fresh series from `model` (seed derived from
/// model.seed and the replication number) and evaluates all three window
/// pairs on trailing windows of that same series. Inequalities are asserted
/// within a 3-standard-error margin of the paired differences.
/// Throws InvalidWindows when any window pair is illegal or longer than the
/// series, InvalidModel / InvalidBlockConfig for bad inputs, DomainError for
/// replications < 1.
MonotonicityReport window_monotonicity_experiment(const RegimeModel& model,
                                                  const BlockConfig& cfg, int w0, int w1,
                                                  int replications);

/// One adaptive-loop run over a generated series, with the deviation summary
/// used by the convergence experiments.
struct ConvergenceReport {
    AlmResult alm;
    std::size_t t_burn = 2000;   // series index from which deviations count
    double max_abs_dev = 0.0;    // max |running rate - alpha| over index >= t_burn
    double terminal_rate = 0.0;
};

/// Generate from the model and run the adaptive loop; summary covers trace
/// records at series index >= t_burn. Throws SeriesTooShort when the model is
/// shorter than t_burn or too short to score anything.
ConvergenceReport convergence_experiment(const RegimeModel& model, const AlmOptions& opts,
                                         std::size_t t_burn = 2000);

/// Replication seed helper: deterministic stream-splitting of a base seed,
/// used so experiment replications are independent but reproducible.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

} // namespace gvar
