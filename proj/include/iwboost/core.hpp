// Core domain types for iterative-elimination multi-class boosting.
//
// Labels are 0-based everywhere inside the library. Files and the CLI use
// 1-based labels; conversion happens only in csv.cpp, model_io.cpp and
// report.cpp.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwboost {

using Label = std::int32_t;
using LabelVector = std::vector<Label>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Precondition broken by the caller.
struct ContractViolation : Error {
    explicit ContractViolation(const std::string& m) : Error("ContractViolation", m) {}
};

/// Input file errors carry the 1-based line number they were detected on.
struct InputError : Error {
    InputError(std::string kind, const std::string& m, std::size_t line)
        : Error(std::move(kind), m), line(line) {}
    std::size_t line;
};
struct FormatError : InputError {
    FormatError(const std::string& m, std::size_t line) : InputError("FormatError", m, line) {}
};
struct LabelError : InputError {
    LabelError(const std::string& m, std::size_t line) : InputError("LabelError", m, line) {}
};
struct ConsistencyError : InputError {
    ConsistencyError(const std::string& m, std::size_t line)
        : InputError("ConsistencyError", m, line) {}
};

/// The best hypothesis did not beat random guessing.
struct WeakLearnabilityViolation : Error {
    explicit WeakLearnabilityViolation(const std::string& m)
        : Error("WeakLearnabilityViolation", m) {}
};

/// An epoch ran past its round cap without every observation acquiring a
/// negative score.
struct EpochDivergence : Error {
    explicit EpochDivergence(const std::string& m) : Error("EpochDivergence", m) {}
};

struct NumericFailure : Error {
    explicit NumericFailure(const std::string& m) : Error("NumericFailure", m) {}
};

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

/// Observations (row-major features) with ground-truth labels in
/// {0..num_labels-1}. Immutable after construction.
class Dataset {
public:
    /// Throws ContractViolation on shape/label errors and ConsistencyError
    /// (line 0) when two identical rows carry different labels.
    Dataset(std::vector<double> features, std::size_t dim, LabelVector labels,
            std::size_t num_labels);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t num_labels() const noexcept { return num_labels_; }

    std::span<const double> row(std::size_t p) const {
        return {features_.data() + p * dim_, dim_};
    }
    const std::vector<double>& features() const noexcept { return features_; }
    const LabelVector& labels() const noexcept { return labels_; }

    /// Rows in `indices` order; labels follow.
    Dataset subset(std::span<const std::size_t> indices) const;

private:
    std::vector<double> features_;
    std::size_t dim_;
    LabelVector labels_;
    std::size_t num_labels_;
};

/// Index of the first row whose label disagrees with an identical earlier
/// row, if any.
std::optional<std::size_t> find_conflicting_duplicate(std::span<const double> features,
                                                      std::size_t dim,
                                                      std::span<const Label> labels);

// ---------------------------------------------------------------------------
// Label sets and distributions
// ---------------------------------------------------------------------------

/// The label alphabet of an epoch: always {0..size-1}.
class LabelSet {
public:
    explicit LabelSet(std::size_t size);
    std::size_t size() const noexcept { return size_; }
    bool contains(Label a) const noexcept {
        return a >= 0 && static_cast<std::size_t>(a) < size_;
    }

private:
    std::size_t size_;
};

/// Nonnegative weights over observations summing to one.
class ObservationDistribution {
public:
    static ObservationDistribution uniform(std::size_t n);

    /// Validates nonnegativity and unit mass (tolerance 1e-12).
    explicit ObservationDistribution(std::vector<double> weights);

    /// Normalizes positive-mass weights; throws NumericFailure when the total
    /// is zero or not finite.
    static ObservationDistribution normalized(std::vector<double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t p) const { return weights_[p]; }
    std::span<const double> weights() const noexcept { return weights_; }

private:
    struct Unchecked {};
    ObservationDistribution(std::vector<double> weights, Unchecked) : weights_(std::move(weights)) {}
    std::vector<double> weights_;
};

// ---------------------------------------------------------------------------
// Hypotheses
// ---------------------------------------------------------------------------

/// Single-threshold classifier: label_above when proj(x) >= threshold,
/// label_below otherwise. proj is x[axis] when direction is empty and the dot
/// product with direction otherwise.
struct StumpParams {
    std::size_t axis = 0;
    std::vector<double> direction;
    double threshold = 0.0;
    Label label_above = 0;
    Label label_below = 0;

    double project(std::span<const double> x) const;
    Label evaluate(std::span<const double> x) const {
        return project(x) >= threshold ? label_above : label_below;
    }
    bool operator==(const StumpParams&) const = default;
};

/// A hypothesis as its realized labels over the training observations,
/// optionally with the stump that produced them (hand-built pools such as
/// the two-constant counterexample have no parameters).
struct HypothesisRealization {
    std::optional<StumpParams> params;
    LabelVector realized;
};

// ---------------------------------------------------------------------------
// Score tables
// ---------------------------------------------------------------------------

/// Accumulated votes F and centered scores Psi, both |P| x m, row-major.
/// Psi[p][a] = m*F[p][a] - sum_a' F[p][a'], so each Psi row sums to zero.
class ScoreTable {
public:
    ScoreTable(std::size_t num_observations, std::size_t label_size);

    std::size_t num_observations() const noexcept { return n_; }
    std::size_t label_size() const noexcept { return m_; }
    std::size_t round() const noexcept { return round_; }

    double f(std::size_t p, Label a) const { return f_[p * m_ + a]; }
    double psi(std::size_t p, Label a) const { return psi_[p * m_ + a]; }
    std::span<const double> psi_row(std::size_t p) const { return {psi_.data() + p * m_, m_}; }
    std::span<const double> f_row(std::size_t p) const { return {f_.data() + p * m_, m_}; }

    /// Adds one round: F[p][h(p)] += alpha, Psi[p][a] += alpha*(m*[h(p)=a] - 1).
    void add_round(std::span<const Label> realized, double alpha);

private:
    std::size_t n_;
    std::size_t m_;
    std::size_t round_ = 0;
    std::vector<double> f_;
    std::vector<double> psi_;
};

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

/// sum_p ([h(p)=y(p)] - [h(p)!=y(p)]) d(p), in [-1, 1].
double score(std::span<const Label> h, std::span<const Label> y, const ObservationDistribution& d);

/// Mass of d on observations where h disagrees with y.
double weighted_error(std::span<const Label> h, std::span<const Label> y,
                      const ObservationDistribution& d);

/// (2 - m) / m, the expected score of guessing uniformly among m labels.
double random_guess_score(std::size_t m);

}  // namespace iwboost
