#include "iwboost/boost_epoch.hpp"

#include <cmath>
#include <sstream>

namespace iwboost {

namespace {

double check_log_ratio(double epsilon, std::size_t m, const char* who) {
    if (m < 2) throw ContractViolation(std::string(who) + ": label-set size must be at least 2");
    if (!(epsilon > 0.0))
        throw ContractViolation(std::string(who) + ": epsilon must be positive (a zero-error round ends the epoch)");
    const double md = static_cast<double>(m);
    if (!(epsilon < (md - 1.0) / md)) {
        std::ostringstream os;
        os << who << ": round error " << epsilon << " does not beat random guessing among " << m
           << " labels (needs < " << (md - 1.0) / md << ")";
        throw WeakLearnabilityViolation(os.str());
    }
    const double ratio = std::log((md - 1.0) * (1.0 - epsilon) / epsilon);
    if (!(ratio > 0.0)) {
        std::ostringstream os;
        os << who << ": round error " << epsilon << " is indistinguishable from random guessing";
        throw WeakLearnabilityViolation(os.str());
    }
    return ratio;
}

}  // namespace

double compute_alpha(double epsilon, std::size_t m) {
    const double ratio = check_log_ratio(epsilon, m, "compute_alpha");
    return ratio / (2.0 * (static_cast<double>(m) - 1.0));
}

double compute_alpha_samme(double epsilon, std::size_t m) {
    const double ratio = check_log_ratio(epsilon, m, "compute_alpha_samme");
    const double md = static_cast<double>(m);
    return (md - 1.0) * (md - 1.0) / md * ratio;
}

Reweighted reweight(const ObservationDistribution& d, std::span<const Label> h,
                    std::span<const Label> y, double alpha, std::size_t m) {
    if (!(alpha > 0.0)) throw ContractViolation("reweight: alpha must be positive");
    if (h.size() != d.size() || y.size() != d.size())
        throw ContractViolation("reweight: length mismatch");
    const double shrink = std::exp(-alpha * (static_cast<double>(m) - 1.0));
    const double grow = std::exp(alpha);
    std::vector<double> w(d.size());
    double z = 0.0;
    for (std::size_t p = 0; p < d.size(); ++p) {
        w[p] = d[p] * (h[p] == y[p] ? shrink : grow);
        z += w[p];
    }
    if (!(z > 0.0) || !std::isfinite(z))
        throw NumericFailure("reweight: normalizer is " + std::to_string(z));
    return {ObservationDistribution::normalized(std::move(w)), z};
}

double phi(double epsilon, std::size_t m) {
    if (m < 2) throw ContractViolation("phi: label-set size must be at least 2");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ContractViolation("phi: epsilon outside [0, 1]");
    const double k = static_cast<double>(m) - 1.0;
    const double e = 1.0 / (2.0 * k);
    return std::pow(k, -0.5) * std::sqrt(epsilon * (1.0 - epsilon)) +
           std::pow(k, e) * std::pow(1.0 - epsilon, e) * std::pow(epsilon, 1.0 - e);
}

void update_psi(ScoreTable& table, std::span<const Label> h, double alpha) {
    if (!(alpha > 0.0)) throw ContractViolation("update_psi: alpha must be positive");
    table.add_round(h, alpha);
}

bool every_row_has_negative(const ScoreTable& table) {
    for (std::size_t p = 0; p < table.num_observations(); ++p) {
        bool negative = false;
        for (double v : table.psi_row(p))
            if (v < 0.0) { negative = true; break; }
        if (!negative) return false;
    }
    return true;
}

EpochRecord run_epoch(std::span<const Label> y, std::size_t m, const StumpPool& pool,
                      const EpochOptions& options, const RoundObserver& observer) {
    if (m < 2) throw ContractViolation("run_epoch: label-set size must be at least 2");
    if (options.min_rounds < 1) throw ContractViolation("run_epoch: K must be at least 1");
    if (pool.empty()) throw ContractViolation("run_epoch: empty hypothesis pool");
    if (pool.label_size() != m) throw ContractViolation("run_epoch: pool built for a different label set");
    if (y.size() != pool.num_observations()) throw ContractViolation("run_epoch: label vector length mismatch");

    const std::size_t cap = options.round_cap ? options.round_cap : 50 * options.min_rounds * m;
    const double random_guess = random_guess_score(m);

    EpochRecord record;
    record.label_size = m;
    record.psi = ScoreTable(y.size(), m);

    auto d = ObservationDistribution::uniform(y.size());
    double z_product = 1.0;
    for (std::size_t k = 1;; ++k) {
        if (k > cap) {
            std::ostringstream os;
            os << "epoch did not reach a negative score for every observation within " << cap
               << " rounds (|A_i| = " << m << ")";
            throw EpochDivergence(os.str());
        }
        const BestHypothesis best = best_hypothesis(pool, y, d);
        if (best.epsilon == 0.0) {
            record.perfect = true;
            record.perfect_hypothesis = *best.hypothesis;
            record.terminal_round = k;
            return record;
        }

        RoundRecord round;
        round.hypothesis = *best.hypothesis;
        round.epsilon = best.epsilon;
        round.edge = best.edge;
        round.gamma = best.edge - random_guess;
        round.alpha = compute_alpha(best.epsilon, m);
        auto next = reweight(d, round.hypothesis.realized, y, round.alpha, m);
        round.z = next.z;
        update_psi(record.psi, round.hypothesis.realized, round.alpha);
        z_product *= round.z;
        d = std::move(next.weights);
        record.rounds.push_back(std::move(round));

        if (observer) observer(RoundState{k, y, record.rounds.back(), d, record.psi, z_product});

        if (k >= options.min_rounds && every_row_has_negative(record.psi)) {
            record.terminal_round = k;
            return record;
        }
    }
}

}  // namespace iwboost
