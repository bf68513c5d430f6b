// Weak-learnability checks as finite zero-sum games.
//
// The payoff of hypothesis h against observation p is +1 when h(p) = y(p)
// and -1 otherwise. The distribution player picks d over observations to
// minimize the best hypothesis' expected payoff; the game value is that
// minimum, and a pool is weakly learnable over m labels when the value beats
// the random-guess score (2 - m) / m by a positive margin.

#pragma once

#include "iwboost/core.hpp"
#include "iwboost/weak_learn.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace iwboost {

inline constexpr double kDefaultRhoTolerance = 1e-9;

struct SolverError : Error {
    SolverError(const std::string& m, double gap) : Error("SolverError", m), gap(gap) {}
    double gap;
};

/// Refusal of an exhaustive check that would exceed its size guard.
struct GuardExceeded : Error {
    explicit GuardExceeded(const std::string& m) : Error("GuardExceeded", m) {}
};

struct GameValueReport {
    double value = 0.0;               // min_d max_h score(h, y, d)
    double dual_value = 0.0;          // max_q min_p from the hypothesis player's program
    std::vector<double> witness_d;    // minimax distribution over observations
    std::vector<double> witness_mix;  // optimal mixture over distinct realizations
    double threshold = 0.0;           // (2 - m) / m, when a label-set size applies
    double margin = 0.0;              // value - threshold
    bool pass = false;                // margin > rho tolerance
};

/// Solves the matrix game for distinct realizations in `pool` (duplicates
/// are ignored). Both players' programs are solved independently; a duality
/// gap above 1e-8 raises SolverError.
GameValueReport game_value(std::span<const LabelVector> pool, std::span<const Label> y);
GameValueReport game_value(const StumpPool& pool, std::span<const Label> y);

/// game_value plus the verdict against (2 - m) / m.
GameValueReport weak_learnability(const StumpPool& pool, std::span<const Label> y, std::size_t m,
                                  double rho_tolerance = kDefaultRhoTolerance);
GameValueReport weak_learnability(std::span<const LabelVector> pool, std::span<const Label> y,
                                  std::size_t m, double rho_tolerance = kDefaultRhoTolerance);

enum class LabelingMode {
    /// Check the supplied labeling. For a subset size s, only observations
    /// whose label lies in {0..s-1} take part.
    Given,
    /// Check every labeling of the observations into {0..s-1}.
    Exhaustive,
};

struct LearnabilityOptions {
    LabelingMode mode = LabelingMode::Given;
    double rho_tolerance = kDefaultRhoTolerance;
    std::size_t max_labels = 6;         // exhaustive guard on |A|
    std::size_t max_observations = 12;  // exhaustive guard on |P|
    std::size_t max_labelings = 200000; // exhaustive guard on game solves per subset size
};

struct SubsetReport {
    std::size_t subset_size = 0;
    LabelVector labeling;            // worst labeling found (0-based)
    std::vector<std::size_t> observations;  // observations that took part
    GameValueReport game;            // report for the worst labeling
    std::size_t labelings_checked = 0;
};

struct IterativeReport {
    std::vector<SubsetReport> subsets;  // ascending subset size
    double min_margin = 0.0;
    bool pass = false;
};

/// Checks weak learnability over every prefix label set {0..s-1}, s >= 2,
/// with hypotheses from pools(s). In exhaustive mode, labelings that differ
/// only by renaming labels are checked once when the pool is closed under
/// permutations.
IterativeReport iterative_weak_learnability(std::span<const Label> y, std::size_t num_labels,
                                            const PoolBuilder& pools,
                                            const LearnabilityOptions& options = {});

}  // namespace iwboost
