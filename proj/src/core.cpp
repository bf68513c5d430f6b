#include "iwboost/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>

namespace iwboost {

namespace {

// Exact bitwise key for a feature row; -0.0 and 0.0 are folded together.
std::vector<std::uint64_t> row_key(std::span<const double> row) {
    std::vector<std::uint64_t> key(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
        double v = row[j] == 0.0 ? 0.0 : row[j];
        std::memcpy(&key[j], &v, sizeof v);
    }
    return key;
}

}  // namespace

std::optional<std::size_t> find_conflicting_duplicate(std::span<const double> features,
                                                      std::size_t dim,
                                                      std::span<const Label> labels) {
    std::map<std::vector<std::uint64_t>, Label> seen;
    for (std::size_t p = 0; p < labels.size(); ++p) {
        auto [it, inserted] = seen.emplace(row_key(features.subspan(p * dim, dim)), labels[p]);
        if (!inserted && it->second != labels[p]) return p;
    }
    return std::nullopt;
}

Dataset::Dataset(std::vector<double> features, std::size_t dim, LabelVector labels,
                 std::size_t num_labels)
    : features_(std::move(features)), dim_(dim), labels_(std::move(labels)),
      num_labels_(num_labels) {
    if (labels_.empty()) throw ContractViolation("dataset has no observations");
    if (dim_ == 0) throw ContractViolation("dataset feature dimension must be at least 1");
    if (features_.size() != labels_.size() * dim_)
        throw ContractViolation("feature matrix size does not match |P| x dim");
    if (num_labels_ < 2) throw ContractViolation("label alphabet needs at least 2 labels");
    for (Label y : labels_) {
        if (y < 0 || static_cast<std::size_t>(y) >= num_labels_)
            throw ContractViolation("label " + std::to_string(y + 1) + " outside 1.." +
                                    std::to_string(num_labels_));
    }
    for (double v : features_) {
        if (!std::isfinite(v)) throw ContractViolation("feature values must be finite");
    }
    if (auto p = find_conflicting_duplicate(features_, dim_, labels_)) {
        throw ConsistencyError("row " + std::to_string(*p + 1) +
                                   " duplicates an earlier row with a different label",
                               0);
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<double> features;
    features.reserve(indices.size() * dim_);
    LabelVector labels;
    labels.reserve(indices.size());
    for (std::size_t p : indices) {
        auto r = row(p);
        features.insert(features.end(), r.begin(), r.end());
        labels.push_back(labels_[p]);
    }
    return Dataset(std::move(features), dim_, std::move(labels), num_labels_);
}

LabelSet::LabelSet(std::size_t size) : size_(size) {
    if (size_ < 1) throw ContractViolation("label set must be nonempty");
}

ObservationDistribution ObservationDistribution::uniform(std::size_t n) {
    if (n == 0) throw ContractViolation("distribution over zero observations");
    return ObservationDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                                   Unchecked{});
}

ObservationDistribution::ObservationDistribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty()) throw ContractViolation("distribution over zero observations");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw ContractViolation("distribution weights must be finite and nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ContractViolation("distribution weights must sum to 1");
}

ObservationDistribution ObservationDistribution::normalized(std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0) || !std::isfinite(total))
        throw NumericFailure("cannot normalize weights with total " + std::to_string(total));
    for (double& w : weights) w /= total;
    return ObservationDistribution(std::move(weights), Unchecked{});
}

double StumpParams::project(std::span<const double> x) const {
    if (direction.empty()) return x[axis];
    if (direction.size() != x.size())
        throw ContractViolation("stump direction dimension does not match observation");
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += direction[j] * x[j];
    return s;
}

ScoreTable::ScoreTable(std::size_t num_observations, std::size_t label_size)
    : n_(num_observations), m_(label_size), f_(n_ * m_, 0.0), psi_(n_ * m_, 0.0) {}

void ScoreTable::add_round(std::span<const Label> realized, double alpha) {
    if (realized.size() != n_) throw ContractViolation("realization length mismatch");
    const double m = static_cast<double>(m_);
    for (std::size_t p = 0; p < n_; ++p) {
        const Label hp = realized[p];
        if (hp < 0 || static_cast<std::size_t>(hp) >= m_)
            throw ContractViolation("hypothesis label outside the score table alphabet");
        double* psi = psi_.data() + p * m_;
        for (std::size_t a = 0; a < m_; ++a) {
            const double indicator = static_cast<std::size_t>(hp) == a ? 1.0 : 0.0;
            psi[a] += alpha * (m * indicator - 1.0);
        }
        f_[p * m_ + hp] += alpha;
    }
    ++round_;
}

double score(std::span<const Label> h, std::span<const Label> y, const ObservationDistribution& d) {
    if (h.size() != y.size() || h.size() != d.size())
        throw ContractViolation("score: length mismatch");
    double s = 0.0;
    for (std::size_t p = 0; p < h.size(); ++p) s += (h[p] == y[p] ? d[p] : -d[p]);
    return s;
}

double weighted_error(std::span<const Label> h, std::span<const Label> y,
                      const ObservationDistribution& d) {
    if (h.size() != y.size() || h.size() != d.size())
        throw ContractViolation("weighted_error: length mismatch");
    double e = 0.0;
    for (std::size_t p = 0; p < h.size(); ++p)
        if (h[p] != y[p]) e += d[p];
    return e;
}

double random_guess_score(std::size_t m) {
    if (m < 2) throw ContractViolation("random_guess_score needs m >= 2");
    const double md = static_cast<double>(m);
    return (2.0 - md) / md;
}

}  // namespace iwboost
