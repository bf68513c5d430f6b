#include "iwboost/synth.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace iwboost {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw ContractViolation("uniform_below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r < limit) return r % n;
    }
}

std::vector<double> region_cuts(std::size_t num_labels) {
    // Remaining rectangle [x0,1] x [y0,1]; each cut peels off area 1/k.
    const double share = 1.0 / static_cast<double>(num_labels);
    std::vector<double> cuts;
    double x0 = 0.0, y0 = 0.0;
    for (std::size_t j = 0; j + 1 < num_labels; ++j) {
        if (j % 2 == 0) {
            const double c = x0 + share / (1.0 - y0);
            cuts.push_back(c);
            x0 = c;
        } else {
            const double c = y0 + share / (1.0 - x0);
            cuts.push_back(c);
            y0 = c;
        }
    }
    return cuts;
}

namespace {

Dataset interval(const SynthParams& sp, std::mt19937_64& rng) {
    const double k = static_cast<double>(sp.num_labels);
    std::vector<double> features;
    LabelVector labels;
    while (labels.size() < sp.num_observations) {
        const double x = uniform01(rng);
        const double scaled = x * k;
        const double frac = scaled - std::floor(scaled);
        if (sp.margin > 0.0 && x * k >= 1.0 && frac / k < sp.margin) continue;
        if (sp.margin > 0.0 && x * k < k - 1.0 && (1.0 - frac) / k < sp.margin) continue;
        features.push_back(x);
        labels.push_back(static_cast<Label>(std::min(std::floor(scaled), k - 1.0)));
    }
    return Dataset(std::move(features), 1, std::move(labels), sp.num_labels);
}

Dataset regions(const SynthParams& sp, std::mt19937_64& rng) {
    const auto cuts = region_cuts(sp.num_labels);
    std::vector<double> features;
    LabelVector labels;
    while (labels.size() < sp.num_observations) {
        const double pt[2] = {uniform01(rng), uniform01(rng)};
        Label label = static_cast<Label>(sp.num_labels - 1);
        bool reject = false;
        for (std::size_t j = 0; j < cuts.size(); ++j) {
            const double v = pt[j % 2];
            if (std::abs(v - cuts[j]) < sp.margin) {
                reject = true;
                break;
            }
            if (v < cuts[j]) {
                label = static_cast<Label>(j);
                break;
            }
        }
        if (reject) continue;
        features.insert(features.end(), pt, pt + 2);
        labels.push_back(label);
    }
    return Dataset(std::move(features), 2, std::move(labels), sp.num_labels);
}

}  // namespace

Dataset synth(const SynthParams& params) {
    if (params.num_labels < 2 || params.num_labels > 5)
        throw ContractViolation("synth: number of labels must lie in 2..5");
    if (params.num_observations == 0) throw ContractViolation("synth: need at least one observation");
    if (!(params.margin >= 0.0) || params.margin >= 0.5 / static_cast<double>(params.num_labels))
        throw ContractViolation("synth: margin must lie in [0, 1/(2|A|))");
    std::mt19937_64 rng(params.seed);
    if (params.generator == "interval") return interval(params, rng);
    if (params.generator == "regions") return regions(params, rng);
    throw ContractViolation("synth: unknown generator '" + params.generator + "'");
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    return perm;
}

Split holdout_split(const Dataset& data, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ContractViolation("holdout fraction must lie in (0, 1)");
    const auto perm = seeded_permutation(data.size(), seed);
    const auto cut = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(data.size())));
    if (cut == 0) throw ContractViolation("holdout fraction selects no observations");
    if (cut >= data.size()) throw ContractViolation("holdout leaves no training observations");
    const std::span<const std::size_t> all(perm);
    return {data.subset(all.subspan(cut)), data.subset(all.first(cut))};
}

}  // namespace iwboost
