#include "iwboost/weak_learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace iwboost {

namespace {

constexpr double kTieTolerance = 1e-12;

template <typename T>
std::uint64_t fnv1a(std::span<const T> values) {
    std::uint64_t h = 1469598103934665603ULL;
    for (T v : values) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
    }
    return h;
}

// Distinct values of a projection in ascending order, and the cut points
// between consecutive ones.
std::vector<double> midpoint_thresholds(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<double> cuts;
    cuts.reserve(values.size());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double lo = values[i];
        const double hi = values[i + 1];
        double mid = lo + (hi - lo) / 2.0;
        // Adjacent doubles: the midpoint rounds onto lo and would no longer
        // separate the two values.
        if (!(mid > lo)) mid = hi;
        cuts.push_back(mid);
    }
    return cuts;
}

}  // namespace

bool StumpPool::try_add(HypothesisRealization h) {
    const std::uint64_t key = fnv1a<Label>(h.realized);
    auto& bucket = index_[key];
    for (std::size_t i : bucket)
        if (entries_[i].realized == h.realized) return false;
    bucket.push_back(entries_.size());
    entries_.push_back(std::move(h));
    return true;
}

StumpPool StumpPool::from_realizations(std::vector<LabelVector> realizations, std::size_t label_size) {
    if (label_size < 1) throw ContractViolation("pool label size must be positive");
    const std::size_t n = realizations.empty() ? 0 : realizations.front().size();
    StumpPool pool(label_size, n);
    for (auto& r : realizations) {
        if (r.size() != n) throw ContractViolation("pool realizations have different lengths");
        for (Label a : r)
            if (a < 0 || static_cast<std::size_t>(a) >= label_size)
                throw ContractViolation("pool realization label outside the label set");
        pool.try_add(HypothesisRealization{std::nullopt, std::move(r)});
    }
    return pool;
}

std::size_t StumpPool::find(std::span<const Label> realized) const {
    auto it = index_.find(fnv1a<Label>(realized));
    if (it == index_.end()) return size();
    for (std::size_t i : it->second)
        if (std::equal(realized.begin(), realized.end(), entries_[i].realized.begin(),
                       entries_[i].realized.end()))
            return i;
    return size();
}

bool StumpPool::closed_under_permutations() const {
    LabelVector image;
    for (std::size_t a = 0; a + 1 < label_size_; ++a) {
        for (const auto& h : entries_) {
            image = h.realized;
            for (Label& v : image) {
                if (v == static_cast<Label>(a)) v = static_cast<Label>(a + 1);
                else if (v == static_cast<Label>(a + 1)) v = static_cast<Label>(a);
            }
            if (!contains(image)) return false;
        }
    }
    return true;
}

std::vector<double> StumpPool::correct_mass(std::span<const Label> y,
                                            const ObservationDistribution& d) const {
    if (y.size() != num_observations_ || d.size() != num_observations_)
        throw ContractViolation("pool scoring: length mismatch");
    for (Label a : y)
        if (a < 0 || static_cast<std::size_t>(a) >= label_size_)
            throw ContractViolation("target label outside the pool's label set");

    std::vector<double> mass(entries_.size(), 0.0);
    if (splits_.size() == entries_.size() && !partitions_.empty()) {
        const std::size_t m = label_size_;
        std::vector<double> above_mass(partitions_.size() * m, 0.0);
        std::vector<double> below_mass(partitions_.size() * m, 0.0);
        for (std::size_t j = 0; j < partitions_.size(); ++j) {
            const auto& above = partitions_[j].above;
            double* wa = above_mass.data() + j * m;
            double* wb = below_mass.data() + j * m;
            for (std::size_t p = 0; p < num_observations_; ++p) {
                if (above[p]) wa[y[p]] += d[p];
                else wb[y[p]] += d[p];
            }
        }
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const Split& s = splits_[i];
            mass[i] = above_mass[s.partition * m + s.above] + below_mass[s.partition * m + s.below];
        }
        return mass;
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& r = entries_[i].realized;
        double c = 0.0;
        for (std::size_t p = 0; p < num_observations_; ++p)
            if (r[p] == y[p]) c += d[p];
        mass[i] = c;
    }
    return mass;
}

StumpPool enumerate_stumps(const Dataset& data, const LabelSet& labels, const PoolConfig& config) {
    const std::size_t m = labels.size();
    if (m < 2) throw ContractViolation("enumerate_stumps needs at least 2 labels");
    const std::size_t n = data.size();
    const std::size_t dim = data.dim();
    for (const auto& dir : config.directions)
        if (dir.size() != dim)
            throw ContractViolation("pool direction has dimension " + std::to_string(dir.size()) +
                                    ", data has " + std::to_string(dim));

    StumpPool pool(m, n);
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> partition_index;

    auto add_partition = [&](std::vector<std::uint8_t> above) -> std::size_t {
        const std::uint64_t key = fnv1a<std::uint8_t>(above);
        auto& bucket = partition_index[key];
        for (std::size_t j : bucket)
            if (pool.partitions_[j].above == above) return j;
        bucket.push_back(pool.partitions_.size());
        pool.partitions_.push_back({std::move(above)});
        return pool.partitions_.size() - 1;
    };
    auto add_stump = [&](StumpParams params, std::size_t partition) {
        const auto& above = pool.partitions_[partition].above;
        LabelVector realized(n);
        for (std::size_t p = 0; p < n; ++p)
            realized[p] = above[p] ? params.label_above : params.label_below;
        const Label a = params.label_above;
        const Label b = params.label_below;
        if (pool.try_add(HypothesisRealization{std::move(params), std::move(realized)}))
            pool.splits_.push_back({partition, a, b});
    };

    // Constants: threshold -inf puts every observation above.
    const std::size_t everything = add_partition(std::vector<std::uint8_t>(n, 1));
    for (std::size_t a = 0; a < m; ++a) {
        StumpParams c;
        c.threshold = -std::numeric_limits<double>::infinity();
        c.label_above = c.label_below = static_cast<Label>(a);
        add_stump(std::move(c), everything);
    }

    auto enumerate_projection = [&](const StumpParams& base) {
        std::vector<double> proj(n);
        for (std::size_t p = 0; p < n; ++p) proj[p] = base.project(data.row(p));
        for (double cut : midpoint_thresholds(proj)) {
            std::vector<std::uint8_t> above(n);
            for (std::size_t p = 0; p < n; ++p) above[p] = proj[p] >= cut ? 1 : 0;
            const std::size_t part = add_partition(std::move(above));
            for (std::size_t hi = 0; hi < m; ++hi) {
                for (std::size_t lo = 0; lo < m; ++lo) {
                    if (hi == lo) continue;
                    StumpParams s = base;
                    s.threshold = cut;
                    s.label_above = static_cast<Label>(hi);
                    s.label_below = static_cast<Label>(lo);
                    add_stump(std::move(s), part);
                }
            }
        }
    };

    if (config.axis_aligned) {
        for (std::size_t axis = 0; axis < dim; ++axis) {
            StumpParams base;
            base.axis = axis;
            enumerate_projection(base);
        }
    }
    for (const auto& dir : config.directions) {
        StumpParams base;
        base.direction = dir;
        enumerate_projection(base);
    }
    return pool;
}

BestHypothesis best_hypothesis(const StumpPool& pool, std::span<const Label> y,
                               const ObservationDistribution& d) {
    if (pool.empty()) throw ContractViolation("best_hypothesis on an empty pool");
    const std::vector<double> mass = pool.correct_mass(y, d);
    std::size_t best = 0;
    for (std::size_t i = 1; i < mass.size(); ++i)
        if (mass[i] > mass[best] + kTieTolerance) best = i;
    const HypothesisRealization& h = pool[best];
    const double epsilon = weighted_error(h.realized, y, d);
    return {best, &h, 1.0 - 2.0 * epsilon, epsilon};
}

HypothesisRealization permute_realization(const HypothesisRealization& h, std::span<const Label> perm) {
    const std::size_t m = perm.size();
    std::vector<bool> hit(m, false);
    for (Label v : perm) {
        if (v < 0 || static_cast<std::size_t>(v) >= m || hit[v])
            throw ContractViolation("permutation is not a bijection");
        hit[v] = true;
    }
    HypothesisRealization out = h;
    for (Label& v : out.realized) {
        if (v < 0 || static_cast<std::size_t>(v) >= m)
            throw ContractViolation("realization label outside the permutation's domain");
        v = perm[v];
    }
    if (out.params) {
        out.params->label_above = perm[out.params->label_above];
        out.params->label_below = perm[out.params->label_below];
    }
    return out;
}

PoolBuilder stump_pool_builder(const Dataset& data, PoolConfig config) {
    return [&data, config = std::move(config)](std::size_t m) {
        return enumerate_stumps(data, LabelSet(m), config);
    };
}

}  // namespace iwboost
