// Seeded synthetic datasets and splits.

#pragma once

#include "iwboost/core.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace iwboost {

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);

/// Uniform integer in [0, n) by rejection, n >= 1.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

struct SynthParams {
    std::string generator = "interval";  // "interval" or "regions"
    std::size_t num_observations = 100;
    std::size_t num_labels = 3;          // 2..5
    double margin = 0.0;                 // points closer than this to a deciding cut are redrawn
    std::uint64_t seed = 0;
};

/// interval: x ~ U[0,1), label floor(x * |A|).
/// regions: (x, y) ~ U[0,1)^2 labelled by an axis-alternating decision list
///   whose cuts give every label the same area.
/// Throws ContractViolation on an unknown generator or out-of-range sizes.
Dataset synth(const SynthParams& params);

/// Cut positions of the regions generator; cut j splits on x for even j and
/// on y for odd j, and points below it take label j.
std::vector<double> region_cuts(std::size_t num_labels);

/// Seeded Fisher-Yates permutation of {0..n-1}.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

struct Split {
    Dataset train;
    Dataset holdout;
};

/// The holdout set is the first floor(fraction * |P|) entries of
/// seeded_permutation(|P|, seed); the remainder, in permuted order, trains.
/// Both parts must be nonempty.
Split holdout_split(const Dataset& data, double fraction, std::uint64_t seed);

}  // namespace iwboost
