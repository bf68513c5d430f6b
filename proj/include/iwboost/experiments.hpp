// Run configuration and the experiment runners behind the CLI.

#pragma once

#include "iwboost/baselines.hpp"
#include "iwboost/eliminate.hpp"
#include "iwboost/learnability.hpp"
#include "iwboost/synth.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace iwboost {

struct RunConfig {
    std::size_t K = 10;
    std::size_t round_cap = 0;
    std::uint64_t seed = 0;
    PoolConfig pool;
    double rho_tolerance = kDefaultRhoTolerance;
    double holdout_fraction = 0.0;  // in [0, 1)

    /// Throws ContractViolation when K < 1 or the fraction is out of range.
    void validate() const;
    TrainOptions train_options() const;
};

/// Least squares y = slope * x + intercept.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

double error_rate(const TrainedModel& model, const Dataset& data);
double error_rate(const SammeModel& model, const Dataset& data);

/// Per-round diagnostics of one epoch, rebuilt from the stored rounds.
struct RoundTrace {
    std::size_t k = 0;
    double z = 1.0;
    double z_product = 1.0;
    double misclassified = 0.0;  // fraction with Psi_{y_i(p)}(p) <= 0
};
std::vector<RoundTrace> epoch_trace(const TrainedEpoch& epoch);

/// Slope of log prod Z_s against k for one epoch; nullopt with fewer than
/// two rounds.
std::optional<LinearFit> decay_fit(std::span<const RoundTrace> trace);

struct TrainRun {
    TrainedModel model;
    std::size_t training_size = 0;
    std::optional<double> holdout_error;
};

/// Trains on the whole set, or on the training part of holdout_split when
/// a holdout fraction is configured.
TrainRun run_train(const Dataset& data, const RunConfig& config);

// ---------------------------------------------------------------------------

/// Two observations x = 0 and x = 1 labelled 1 and 2 inside a three-label
/// alphabet.
Dataset ms13_dataset();

struct Ms13Result {
    std::vector<double> samme_errors;  // entry K-1: training error after K rounds
    double samme_min_error = 0.0;
    TrainedModel tau;
    double tau_error = 0.0;
    std::size_t tau_K = 0;
    bool pass = false;
};

/// SAMME with the two constant hypotheses for every K <= max_K against the
/// iterative-elimination booster with stumps at tau_K.
Ms13Result repro_ms13(std::size_t max_K = 200, std::size_t tau_K = 10);

struct DecayRow {
    std::size_t epoch = 0;
    RoundTrace round;
};

struct DecayResult {
    TrainedModel model;
    std::vector<DecayRow> rows;
    std::vector<std::optional<LinearFit>> fits;  // per epoch
    bool monotone = true;     // prod Z nonincreasing within every epoch
    bool bound_holds = true;  // misclassified <= prod Z everywhere
};
DecayResult decay(const Dataset& data, const RunConfig& config);

struct GenGapConfig {
    std::string generator = "regions";
    std::vector<std::size_t> sizes{50, 100, 200, 400};
    std::size_t seeds = 20;
    std::size_t test_size = 2000;
    std::size_t num_labels = 3;
    double margin = 0.0;
    std::size_t K = 10;
    std::uint64_t seed = 0;
    unsigned workers = 0;  // 0 selects the hardware concurrency
};

struct GenGapRow {
    std::size_t size = 0;
    std::vector<double> train_errors;  // seed order
    std::vector<double> test_errors;
    std::vector<double> gaps;
    double median_gap = 0.0;
};

struct GenGapResult {
    std::vector<GenGapRow> rows;
    LinearFit fit;  // median gap against size^(-1/2)
    bool nonincreasing = true;
};
GenGapResult gen_gap(const GenGapConfig& config);

struct CompareResult {
    double tau_training_error = 0.0;
    std::optional<double> tau_holdout_error;
    std::size_t tau_rounds = 0;
    std::size_t tau_epochs = 0;
    double samme_training_error = 0.0;
    std::optional<double> samme_holdout_error;
    std::size_t samme_rounds = 0;
};
CompareResult compare(const Dataset& data, const RunConfig& config, std::size_t samme_rounds);

/// Deterministic 64-bit seed for (base, a, b).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

}  // namespace iwboost
