#include "iwboost/baselines.hpp"

#include <limits>

#include "iwboost/boost_epoch.hpp"

#include <cmath>

namespace iwboost {

namespace {

Label weighted_vote(const SammeModel& model, auto&& label_of_round) {
    if (model.algorithm == "adaboost") {
        // Label 0 votes +1, label 1 votes -1.
        double margin = 0.0;
        for (const auto& r : model.rounds) margin += r.alpha * (label_of_round(r) == 0 ? 1.0 : -1.0);
        return margin >= 0.0 ? 0 : 1;
    }
    std::vector<double> votes(model.num_labels, 0.0);
    for (const auto& r : model.rounds) votes[label_of_round(r)] += r.alpha;
    Label best = 0;
    for (std::size_t a = 1; a < votes.size(); ++a)
        if (votes[a] > votes[best]) best = static_cast<Label>(a);
    return best;
}

}  // namespace

Label SammeModel::predict_training(std::size_t p) const {
    if (perfect) return perfect->realized.at(p);
    return weighted_vote(*this, [p](const WeightedHypothesis& r) { return r.hypothesis.realized.at(p); });
}

LabelVector SammeModel::training_predictions() const {
    const std::size_t n = perfect ? perfect->realized.size()
                                  : (rounds.empty() ? 0 : rounds.front().hypothesis.realized.size());
    LabelVector out(n);
    for (std::size_t p = 0; p < n; ++p) out[p] = predict_training(p);
    return out;
}

Label predict(const SammeModel& model, std::span<const double> x) {
    if (x.size() != model.dim)
        throw ContractViolation("predict: expected " + std::to_string(model.dim) + " features, got " +
                                std::to_string(x.size()));
    auto eval = [&x](const HypothesisRealization& h) {
        if (!h.params) throw ContractViolation("predict: model hypotheses carry no stump parameters");
        return h.params->evaluate(x);
    };
    if (model.perfect) return eval(*model.perfect);
    return weighted_vote(model, [&](const WeightedHypothesis& r) { return eval(r.hypothesis); });
}

SammeModel samme_train(const Dataset& data, std::size_t rounds, const StumpPool& pool) {
    SammeModel model = samme_train(data.labels(), data.num_labels(), rounds, pool);
    model.dim = data.dim();
    return model;
}

namespace {

// The SAMME weight can exceed the exponent range of double once a round's
// error is tiny; then the update is redone in the log domain and Z is +inf.
Reweighted samme_reweight(const ObservationDistribution& d, std::span<const Label> h, std::span<const Label> y,
                          double alpha, std::size_t m) {
    try {
        return reweight(d, h, y, alpha, m);
    } catch (const NumericFailure&) {
    }
    const double md = static_cast<double>(m);
    std::vector<double> logw(d.size(), -std::numeric_limits<double>::infinity());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < d.size(); ++p) {
        if (d[p] <= 0.0) continue;
        logw[p] = std::log(d[p]) + (h[p] == y[p] ? -alpha * (md - 1.0) : alpha);
        top = std::max(top, logw[p]);
    }
    std::vector<double> w(d.size());
    for (std::size_t p = 0; p < d.size(); ++p) w[p] = std::exp(logw[p] - top);
    return {ObservationDistribution::normalized(std::move(w)), std::numeric_limits<double>::infinity()};
}

}  // namespace

SammeModel samme_train(std::span<const Label> y, std::size_t num_labels, std::size_t rounds,
                       const StumpPool& pool) {
    if (num_labels < 2) throw ContractViolation("samme_train: need at least 2 labels");
    if (pool.label_size() != num_labels)
        throw ContractViolation("samme_train: pool built for a different label set");
    SammeModel model;
    model.algorithm = "samme";
    model.num_labels = num_labels;

    auto d = ObservationDistribution::uniform(y.size());
    for (std::size_t k = 1; k <= rounds; ++k) {
        const BestHypothesis best = best_hypothesis(pool, y, d);
        if (best.epsilon == 0.0) {
            model.perfect = *best.hypothesis;
            break;
        }
        const double alpha = compute_alpha_samme(best.epsilon, num_labels);
        auto next = samme_reweight(d, best.hypothesis->realized, y, alpha, num_labels);
        model.rounds.push_back({*best.hypothesis, alpha, best.epsilon, next.z});
        d = std::move(next.weights);
    }
    return model;
}

SammeModel adaboost_train(const Dataset& data, std::size_t rounds, const StumpPool& pool) {
    if (data.num_labels() != 2) throw ContractViolation("adaboost_train: binary labels required");
    if (pool.label_size() != 2) throw ContractViolation("adaboost_train: pool must be binary");
    SammeModel model;
    model.algorithm = "adaboost";
    model.num_labels = 2;
    model.dim = data.dim();

    const auto& y = data.labels();
    auto d = ObservationDistribution::uniform(y.size());
    for (std::size_t k = 1; k <= rounds; ++k) {
        const BestHypothesis best = best_hypothesis(pool, y, d);
        if (best.epsilon == 0.0) {
            model.perfect = *best.hypothesis;
            break;
        }
        if (!(best.epsilon < 0.5))
            throw WeakLearnabilityViolation("adaboost_train: round error " + std::to_string(best.epsilon) +
                                            " is not below 1/2");
        const double alpha = 0.5 * std::log((1.0 - best.epsilon) / best.epsilon);
        const auto& h = best.hypothesis->realized;
        std::vector<double> w(y.size());
        double z = 0.0;
        for (std::size_t p = 0; p < y.size(); ++p) {
            const double margin = h[p] == y[p] ? 1.0 : -1.0;
            w[p] = d[p] * std::exp(-alpha * margin);
            z += w[p];
        }
        model.rounds.push_back({*best.hypothesis, alpha, best.epsilon, z});
        d = ObservationDistribution::normalized(std::move(w));
    }
    return model;
}

}  // namespace iwboost
