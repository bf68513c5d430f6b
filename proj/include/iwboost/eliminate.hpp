// Label elimination across epochs, the trained model, and prediction.

#pragma once

#include "iwboost/boost_epoch.hpp"
#include "iwboost/core.hpp"
#include "iwboost/weak_learn.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace iwboost {

/// Bookkeeping that turns one epoch's Psi table into the next label set.
struct EliminationStep {
    std::vector<LabelVector> candidates;   // B_i(p): labels with Psi < 0, ascending
    std::size_t count = 0;                 // N_i
    std::vector<LabelVector> eliminated;   // last N_i elements of B_i(p)
    std::vector<LabelVector> permutation;  // pi^p_i: position j -> j-th surviving label
    std::size_t next_label_size = 0;       // |A_{i+1}|
    std::vector<std::size_t> truth_lost;   // observations whose target was eliminated here
};

/// Labels of A_i with strictly negative Psi for observation p, ascending.
/// Throws NumericFailure when none exists.
LabelVector candidates(const ScoreTable& psi, std::size_t p);

/// N_i = min_p |B_i(p)|.
std::size_t elimination_count(std::span<const LabelVector> all_candidates);

/// The `count` largest elements of the ascending set B.
LabelVector select_eliminated(std::span<const Label> candidates, std::size_t count);

/// Increasing map from {0..m-|eliminated|-1} onto the surviving labels.
LabelVector build_permutation(std::size_t m, std::span<const Label> eliminated);

struct Relabeled {
    LabelVector next_targets;             // y_{i+1}
    std::vector<std::size_t> truth_lost;  // ascending observation indices
};

/// y_{i+1}(p) = pi^{-1}(y_i(p)) where y_i(p) survives. Otherwise p is
/// reported as truth-lost and continues with the surviving label of largest
/// Psi (smallest index on ties) as its target.
Relabeled relabel(std::span<const Label> targets, const EliminationStep& step, const ScoreTable& psi);

/// Builds the complete elimination step for a finished epoch.
EliminationStep eliminate(const EpochRecord& epoch, std::span<const Label> targets);

struct TrainOptions {
    std::size_t min_rounds = 10;  // K
    std::size_t round_cap = 0;    // per epoch; 0 selects 50 * K * |A_i|
    PoolConfig pool;
    /// Called after every round of every epoch with the 1-based epoch index.
    std::function<void(std::size_t epoch, const RoundState&)> observer;
};

struct TrainedEpoch {
    EpochRecord record;
    EliminationStep step;
    LabelVector targets;  // y_i used during the epoch
};

struct TrainedModel {
    std::size_t num_labels = 0;  // |A|
    std::size_t dim = 0;
    std::size_t min_rounds = 0;
    std::vector<double> training_features;  // row-major |P| x dim
    LabelVector training_labels;
    std::vector<TrainedEpoch> epochs;
    LabelVector training_predictions;
    std::vector<std::size_t> truth_lost;  // ascending

    std::size_t num_observations() const noexcept { return training_labels.size(); }
    std::size_t num_epochs() const noexcept { return epochs.size(); }  // I
    std::vector<std::size_t> label_sizes() const;
    double training_error() const;
};

/// Alternates run_epoch and elimination until one label survives for every
/// observation. Epoch failures are rethrown with the epoch index prefixed.
TrainedModel train(const Dataset& data, const TrainOptions& options);

/// Same, drawing each epoch's hypotheses from `pools` instead of stumps.
TrainedModel train(const Dataset& data, const TrainOptions& options, const PoolBuilder& pools);

/// How predict() drops N_i labels at a point that is not a training row.
enum class OutOfSampleRule {
    /// The N_i largest labels with negative Psi, as in training; when fewer
    /// are negative the rest go in order of smallest Psi.
    TrainingOrder,
    /// The N_i labels with the smallest Psi.
    SmallestPsi,
};

/// Label for a feature vector. Training rows return their stored training
/// prediction; other points replay each epoch's ensemble and eliminate by
/// `rule`. Psi ties eliminate the larger label first.
Label predict(const TrainedModel& model, std::span<const double> x,
              OutOfSampleRule rule = OutOfSampleRule::TrainingOrder);

/// Psi_a(x) for every label of epoch `epoch`, accumulated in round order.
std::vector<double> epoch_scores(const TrainedEpoch& epoch, std::span<const double> x);

}  // namespace iwboost
