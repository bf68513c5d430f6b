// One epoch of the inner boosting loop over a fixed label set A_i.

#pragma once

#include "iwboost/core.hpp"
#include "iwboost/weak_learn.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace iwboost {

struct RoundRecord {
    HypothesisRealization hypothesis;
    double alpha = 0.0;
    double epsilon = 0.0;
    double edge = 0.0;
    double gamma = 0.0;  // edge minus the random-guess score
    double z = 1.0;      // normalizer of the reweighting step
};

/// Result of run_epoch(). When `perfect` is set, `perfect_hypothesis` holds
/// the zero-error classifier found at round `terminal_round`, and `rounds`
/// holds only the rounds that preceded it.
struct EpochRecord {
    std::size_t label_size = 0;
    std::vector<RoundRecord> rounds;
    ScoreTable psi{0, 0};
    std::size_t terminal_round = 0;  // K_i
    bool perfect = false;
    std::optional<HypothesisRealization> perfect_hypothesis;
};

/// State exposed to an observer after every completed (non-perfect) round.
struct RoundState {
    std::size_t round;                            // k, 1-based
    std::span<const Label> targets;               // y_i
    const RoundRecord& record;
    const ObservationDistribution& next_weights;  // d_{k+1}
    const ScoreTable& psi;                        // after round k
    double z_product;                             // prod_{s<=k} Z_s
};
using RoundObserver = std::function<void(const RoundState&)>;

/// Weight of the k-th hypothesis inside an epoch:
/// log((m-1)(1-eps)/eps) / (2(m-1)). Requires 0 < eps < (m-1)/m.
double compute_alpha(double epsilon, std::size_t m);

/// SAMME weight with coefficient (m-1)^2/m. Same domain as compute_alpha.
double compute_alpha_samme(double epsilon, std::size_t m);

struct Reweighted {
    ObservationDistribution weights;
    double z;
};

/// d(p) * exp(-alpha * [(m-1)[h=y] - [h!=y]]), normalized; z is the
/// pre-normalization mass summed in observation order.
Reweighted reweight(const ObservationDistribution& d, std::span<const Label> h,
                    std::span<const Label> y, double alpha, std::size_t m);

/// Z as a function of the round error eps when alpha is chosen by
/// compute_alpha. Strictly concave on [0, 1], equal to 1 with zero slope at
/// eps = 1 - 1/m.
double phi(double epsilon, std::size_t m);

/// Adds one round to the F/Psi table.
void update_psi(ScoreTable& table, std::span<const Label> h, double alpha);

struct EpochOptions {
    std::size_t min_rounds = 1;  // K
    std::size_t round_cap = 0;   // 0 selects 50 * K * m
};

/// Runs the inner loop from uniform weights until the first round k >= K at
/// which every observation has a label with Psi < 0, or until a hypothesis
/// makes no mistakes.
///
/// Throws WeakLearnabilityViolation when a round's best error reaches
/// (m-1)/m and EpochDivergence when the round cap passes without the
/// stopping condition.
EpochRecord run_epoch(std::span<const Label> y, std::size_t m, const StumpPool& pool,
                      const EpochOptions& options, const RoundObserver& observer = {});

/// True when every observation has at least one strictly negative Psi entry.
bool every_row_has_negative(const ScoreTable& table);

}  // namespace iwboost
