#include "iwboost/eliminate.hpp"

#include <algorithm>
#include <numeric>

namespace iwboost {

LabelVector candidates(const ScoreTable& psi, std::size_t p) {
    LabelVector b;
    const auto row = psi.psi_row(p);
    for (std::size_t a = 0; a < row.size(); ++a)
        if (row[a] < 0.0) b.push_back(static_cast<Label>(a));
    if (b.empty())
        throw NumericFailure("observation " + std::to_string(p + 1) +
                             " has no negative score at the end of its epoch");
    return b;
}

std::size_t elimination_count(std::span<const LabelVector> all_candidates) {
    if (all_candidates.empty()) throw ContractViolation("elimination_count: no observations");
    std::size_t n = all_candidates.front().size();
    for (const auto& b : all_candidates) n = std::min(n, b.size());
    if (n == 0) throw ContractViolation("elimination_count: an observation has no candidates");
    return n;
}

LabelVector select_eliminated(std::span<const Label> candidates, std::size_t count) {
    if (count > candidates.size())
        throw ContractViolation("select_eliminated: count exceeds the candidate set");
    return LabelVector(candidates.end() - static_cast<std::ptrdiff_t>(count), candidates.end());
}

LabelVector build_permutation(std::size_t m, std::span<const Label> eliminated) {
    std::vector<bool> gone(m, false);
    for (Label a : eliminated) {
        if (a < 0 || static_cast<std::size_t>(a) >= m)
            throw ContractViolation("build_permutation: eliminated label outside the label set");
        gone[a] = true;
    }
    LabelVector pi;
    for (std::size_t a = 0; a < m; ++a)
        if (!gone[a]) pi.push_back(static_cast<Label>(a));
    return pi;
}

Relabeled relabel(std::span<const Label> targets, const EliminationStep& step, const ScoreTable& psi) {
    Relabeled out;
    out.next_targets.resize(targets.size());
    for (std::size_t p = 0; p < targets.size(); ++p) {
        const LabelVector& pi = step.permutation[p];
        const auto it = std::find(pi.begin(), pi.end(), targets[p]);
        if (it != pi.end()) {
            out.next_targets[p] = static_cast<Label>(it - pi.begin());
            continue;
        }
        out.truth_lost.push_back(p);
        std::size_t best = 0;
        for (std::size_t j = 1; j < pi.size(); ++j)
            if (psi.psi(p, pi[j]) > psi.psi(p, pi[best])) best = j;
        out.next_targets[p] = static_cast<Label>(best);
    }
    return out;
}

EliminationStep eliminate(const EpochRecord& epoch, std::span<const Label> targets) {
    const std::size_t n = targets.size();
    const std::size_t m = epoch.label_size;
    EliminationStep step;
    step.candidates.resize(n);
    step.eliminated.resize(n);
    step.permutation.resize(n);

    if (epoch.perfect) {
        // Everything but the perfect hypothesis' label goes.
        const LabelVector& h = epoch.perfect_hypothesis->realized;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t a = 0; a < m; ++a)
                if (static_cast<Label>(a) != h[p]) step.candidates[p].push_back(static_cast<Label>(a));
            step.eliminated[p] = step.candidates[p];
            step.permutation[p] = {h[p]};
        }
        step.count = m - 1;
    } else {
        for (std::size_t p = 0; p < n; ++p) step.candidates[p] = candidates(epoch.psi, p);
        step.count = elimination_count(step.candidates);
        for (std::size_t p = 0; p < n; ++p) {
            step.eliminated[p] = select_eliminated(step.candidates[p], step.count);
            step.permutation[p] = build_permutation(m, step.eliminated[p]);
        }
    }
    step.next_label_size = m - step.count;
    for (std::size_t p = 0; p < n; ++p)
        if (std::find(step.eliminated[p].begin(), step.eliminated[p].end(), targets[p]) !=
            step.eliminated[p].end())
            step.truth_lost.push_back(p);
    return step;
}

std::vector<std::size_t> TrainedModel::label_sizes() const {
    std::vector<std::size_t> sizes;
    for (const auto& e : epochs) sizes.push_back(e.record.label_size);
    return sizes;
}

double TrainedModel::training_error() const {
    if (training_labels.empty()) return 0.0;
    std::size_t wrong = 0;
    for (std::size_t p = 0; p < training_labels.size(); ++p)
        if (training_predictions[p] != training_labels[p]) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(training_labels.size());
}

TrainedModel train(const Dataset& data, const TrainOptions& options) {
    return train(data, options, stump_pool_builder(data, options.pool));
}

TrainedModel train(const Dataset& data, const TrainOptions& options, const PoolBuilder& pools) {
    if (options.min_rounds < 1) throw ContractViolation("train: K must be at least 1");
    TrainedModel model;
    model.num_labels = data.num_labels();
    model.dim = data.dim();
    model.min_rounds = options.min_rounds;
    model.training_features = data.features();
    model.training_labels = data.labels();

    const std::size_t n = data.size();
    LabelVector targets = data.labels();
    std::vector<bool> lost(n, false);
    std::size_t m = data.num_labels();

    for (std::size_t i = 1; m > 1; ++i) {
        TrainedEpoch epoch;
        epoch.targets = targets;
        try {
            const StumpPool pool = pools(m);
            RoundObserver observer;
            if (options.observer)
                observer = [&options, i](const RoundState& s) { options.observer(i, s); };
            epoch.record = run_epoch(targets, m, pool, {options.min_rounds, options.round_cap}, observer);
        } catch (const WeakLearnabilityViolation& e) {
            throw WeakLearnabilityViolation("epoch " + std::to_string(i) + ": " + e.what());
        } catch (const EpochDivergence& e) {
            throw EpochDivergence("epoch " + std::to_string(i) + ": " + e.what());
        }
        epoch.step = eliminate(epoch.record, targets);
        Relabeled next = relabel(targets, epoch.step, epoch.record.psi);
        for (std::size_t p : next.truth_lost) lost[p] = true;
        targets = std::move(next.next_targets);
        m = epoch.step.next_label_size;
        model.epochs.push_back(std::move(epoch));
    }

    model.training_predictions.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        Label label = 0;
        for (auto it = model.epochs.rbegin(); it != model.epochs.rend(); ++it)
            label = it->step.permutation[p][label];
        model.training_predictions[p] = label;
        if (lost[p]) model.truth_lost.push_back(p);
    }
    return model;
}

std::vector<double> epoch_scores(const TrainedEpoch& epoch, std::span<const double> x) {
    const std::size_t m = epoch.record.label_size;
    const double md = static_cast<double>(m);
    std::vector<double> psi(m, 0.0);
    for (const auto& round : epoch.record.rounds) {
        if (!round.hypothesis.params)
            throw ContractViolation("predict: model hypotheses carry no stump parameters");
        const Label h = round.hypothesis.params->evaluate(x);
        for (std::size_t a = 0; a < m; ++a) {
            const double indicator = static_cast<std::size_t>(h) == a ? 1.0 : 0.0;
            psi[a] += round.alpha * (md * indicator - 1.0);
        }
    }
    return psi;
}

Label predict(const TrainedModel& model, std::span<const double> x, OutOfSampleRule rule) {
    if (x.size() != model.dim)
        throw ContractViolation("predict: expected " + std::to_string(model.dim) + " features, got " +
                                std::to_string(x.size()));
    for (std::size_t p = 0; p < model.num_observations(); ++p) {
        const double* row = model.training_features.data() + p * model.dim;
        if (std::equal(x.begin(), x.end(), row)) return model.training_predictions[p];
    }

    LabelVector original(model.num_labels);
    std::iota(original.begin(), original.end(), 0);
    for (const auto& epoch : model.epochs) {
        const std::size_t m = epoch.record.label_size;
        LabelVector survivors;
        if (epoch.record.perfect) {
            if (!epoch.record.perfect_hypothesis->params)
                throw ContractViolation("predict: model hypotheses carry no stump parameters");
            survivors = {epoch.record.perfect_hypothesis->params->evaluate(x)};
        } else {
            const std::vector<double> psi = epoch_scores(epoch, x);
            std::vector<bool> gone(m, false);
            std::size_t removed = 0;
            if (rule == OutOfSampleRule::TrainingOrder) {
                for (std::size_t a = m; a-- > 0 && removed < epoch.step.count;)
                    if (psi[a] < 0.0) {
                        gone[a] = true;
                        ++removed;
                    }
            }
            LabelVector order(m);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](Label a, Label b) {
                if (psi[a] != psi[b]) return psi[a] < psi[b];
                return a > b;
            });
            for (std::size_t j = 0; j < m && removed < epoch.step.count; ++j)
                if (!gone[order[j]]) {
                    gone[order[j]] = true;
                    ++removed;
                }
            for (std::size_t a = 0; a < m; ++a)
                if (!gone[a]) survivors.push_back(static_cast<Label>(a));
        }
        LabelVector next(survivors.size());
        for (std::size_t j = 0; j < survivors.size(); ++j) next[j] = original[survivors[j]];
        original = std::move(next);
    }
    return original.front();
}

}  // namespace iwboost
