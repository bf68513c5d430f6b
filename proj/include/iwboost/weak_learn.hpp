// Single-threshold hypothesis pools and the optimal weak learner.

#pragma once

#include "iwboost/core.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

namespace iwboost {

struct PoolConfig {
    /// Axis-aligned stumps on every feature.
    bool axis_aligned = true;
    /// Extra hyperplane normals; each must have the dataset's dimension.
    std::vector<std::vector<double>> directions;
};

/// Deduplicated set of hypotheses over a fixed set of observations, in
/// canonical order. Immutable after construction.
///
/// Stump pools built by enumerate_stumps() also keep the distinct
/// observation partitions the stumps induce, which lets best_hypothesis()
/// score all label pairs of a partition from per-label masses instead of a
/// full pass per hypothesis.
class StumpPool {
public:
    /// Hand-built pool; duplicates (by realized vector) keep the first copy.
    static StumpPool from_realizations(std::vector<LabelVector> realizations, std::size_t label_size);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t label_size() const noexcept { return label_size_; }
    std::size_t num_observations() const noexcept { return num_observations_; }

    const HypothesisRealization& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<HypothesisRealization>& entries() const noexcept { return entries_; }

    /// Position of an identical realized vector, or size() when absent.
    std::size_t find(std::span<const Label> realized) const;
    bool contains(std::span<const Label> realized) const { return find(realized) != size(); }

    /// Closure under every bijection of {0..m-1}, checked on the adjacent
    /// transpositions that generate the symmetric group.
    bool closed_under_permutations() const;

    /// Probability mass of correct predictions for every entry, canonical order.
    std::vector<double> correct_mass(std::span<const Label> y, const ObservationDistribution& d) const;

private:
    friend StumpPool enumerate_stumps(const Dataset&, const LabelSet&, const PoolConfig&);

    struct Partition {
        std::vector<std::uint8_t> above;
    };
    struct Split {
        std::size_t partition;
        Label above;
        Label below;
    };

    StumpPool(std::size_t label_size, std::size_t num_observations)
        : label_size_(label_size), num_observations_(num_observations) {}
    bool try_add(HypothesisRealization h);

    std::size_t label_size_;
    std::size_t num_observations_;
    std::vector<HypothesisRealization> entries_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> index_;  // realized-vector hash
    std::vector<Partition> partitions_;
    std::vector<Split> splits_;  // parallel to entries_ for stump pools
};

/// Enumerates axis-aligned (and configured directional) stumps with labels in
/// `labels`: constants first, then each projection's midpoint thresholds in
/// ascending order with every ordered label pair.
StumpPool enumerate_stumps(const Dataset& data, const LabelSet& labels, const PoolConfig& config = {});

struct BestHypothesis {
    std::size_t index;
    const HypothesisRealization* hypothesis;
    double edge;     // 1 - 2 * epsilon
    double epsilon;  // d-mass of misclassified observations
};

/// Maximizes score(h, y, d) over the pool. Scores within 1e-12 of the running
/// best count as ties and the earlier entry wins.
BestHypothesis best_hypothesis(const StumpPool& pool, std::span<const Label> y,
                               const ObservationDistribution& d);

/// Relabels h through the bijection perm (perm[a] is the image of a).
HypothesisRealization permute_realization(const HypothesisRealization& h, std::span<const Label> perm);

/// Builds the pool for a given label-set size; used per epoch and by the
/// learnability checks.
using PoolBuilder = std::function<StumpPool(std::size_t label_size)>;

PoolBuilder stump_pool_builder(const Dataset& data, PoolConfig config = {});

}  // namespace iwboost
