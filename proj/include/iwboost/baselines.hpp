// Reference SAMME and binary AdaBoost, used for equivalence checks and to
// reproduce SAMME's failure on the two-point counterexample.

#pragma once

#include "iwboost/core.hpp"
#include "iwboost/weak_learn.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace iwboost {

struct WeightedHypothesis {
    HypothesisRealization hypothesis;
    double alpha = 0.0;
    double epsilon = 0.0;
    double z = 1.0;
};

/// Weighted-majority ensemble. A perfect hypothesis, when found, replaces the
/// vote entirely.
struct SammeModel {
    std::string algorithm;  // "samme" or "adaboost"
    std::size_t num_labels = 0;
    std::size_t dim = 0;
    std::vector<WeightedHypothesis> rounds;
    std::optional<HypothesisRealization> perfect;

    /// argmax_a sum_s alpha_s [h_s(p) = a] on training observation p
    /// (smallest label on ties).
    Label predict_training(std::size_t p) const;
    LabelVector training_predictions() const;
};

/// Label for a feature vector; needs stump parameters on every hypothesis.
Label predict(const SammeModel& model, std::span<const double> x);

/// K rounds of SAMME with its (m-1)^2/m weight. Throws
/// WeakLearnabilityViolation when a round's error reaches (m-1)/m.
SammeModel samme_train(const Dataset& data, std::size_t rounds, const StumpPool& pool);
SammeModel samme_train(std::span<const Label> y, std::size_t num_labels, std::size_t rounds,
                       const StumpPool& pool);

/// Classical binary AdaBoost on +/-1 margins, alpha = log((1-eps)/eps) / 2.
SammeModel adaboost_train(const Dataset& data, std::size_t rounds, const StumpPool& pool);

}  // namespace iwboost
