#include "iwboost/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace iwboost {

void RunConfig::validate() const {
    if (K < 1) throw ContractViolation("K must be at least 1");
    if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0))
        throw ContractViolation("holdout fraction must lie in [0, 1)");
    if (!(rho_tolerance >= 0.0)) throw ContractViolation("rho tolerance must be nonnegative");
}

TrainOptions RunConfig::train_options() const {
    TrainOptions options;
    options.min_rounds = K;
    options.round_cap = round_cap;
    options.pool = pool;
    return options;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ContractViolation("linear_fit: need at least two paired points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw ContractViolation("linear_fit: x values are all equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

double median(std::vector<double> values) {
    if (values.empty()) throw ContractViolation("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

namespace {

template <class Model>
double error_rate_impl(const Model& model, const Dataset& data) {
    std::size_t wrong = 0;
    for (std::size_t p = 0; p < data.size(); ++p)
        if (predict(model, data.row(p)) != data.labels()[p]) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(data.size());
}

}  // namespace

double error_rate(const TrainedModel& model, const Dataset& data) { return error_rate_impl(model, data); }
double error_rate(const SammeModel& model, const Dataset& data) { return error_rate_impl(model, data); }

std::vector<RoundTrace> epoch_trace(const TrainedEpoch& epoch) {
    const std::size_t n = epoch.targets.size();
    ScoreTable table(n, epoch.record.label_size);
    std::vector<RoundTrace> trace;
    double product = 1.0;
    for (std::size_t k = 0; k < epoch.record.rounds.size(); ++k) {
        const RoundRecord& r = epoch.record.rounds[k];
        table.add_round(r.hypothesis.realized, r.alpha);
        product *= r.z;
        std::size_t wrong = 0;
        for (std::size_t p = 0; p < n; ++p)
            if (table.psi(p, epoch.targets[p]) <= 0.0) ++wrong;
        trace.push_back({k + 1, r.z, product, static_cast<double>(wrong) / static_cast<double>(n)});
    }
    return trace;
}

std::optional<LinearFit> decay_fit(std::span<const RoundTrace> trace) {
    if (trace.size() < 2) return std::nullopt;
    std::vector<double> k, log_z;
    for (const auto& r : trace) {
        k.push_back(static_cast<double>(r.k));
        log_z.push_back(std::log(r.z_product));
    }
    return linear_fit(k, log_z);
}

TrainRun run_train(const Dataset& data, const RunConfig& config) {
    config.validate();
    TrainRun run;
    if (config.holdout_fraction > 0.0) {
        const Split split = holdout_split(data, config.holdout_fraction, config.seed);
        run.model = train(split.train, config.train_options());
        run.training_size = split.train.size();
        run.holdout_error = error_rate(run.model, split.holdout);
    } else {
        run.model = train(data, config.train_options());
        run.training_size = data.size();
    }
    return run;
}

Dataset ms13_dataset() { return Dataset({0.0, 1.0}, 1, {0, 1}, 3); }

Ms13Result repro_ms13(std::size_t max_K, std::size_t tau_K) {
    const Dataset data = ms13_dataset();
    const StumpPool constants = StumpPool::from_realizations({{0, 0}, {1, 1}}, 3);
    Ms13Result result;
    result.samme_min_error = 1.0;
    for (std::size_t K = 1; K <= max_K; ++K) {
        const SammeModel samme = samme_train(data.labels(), 3, K, constants);
        const LabelVector pred = samme.training_predictions();
        std::size_t wrong = 0;
        for (std::size_t p = 0; p < data.size(); ++p)
            if (pred[p] != data.labels()[p]) ++wrong;
        const double err = static_cast<double>(wrong) / static_cast<double>(data.size());
        result.samme_errors.push_back(err);
        result.samme_min_error = std::min(result.samme_min_error, err);
    }
    TrainOptions options;
    options.min_rounds = tau_K;
    result.tau = train(data, options);
    result.tau_K = tau_K;
    result.tau_error = result.tau.training_error();
    result.pass = result.samme_min_error >= 0.5 && result.tau_error == 0.0;
    return result;
}

DecayResult decay(const Dataset& data, const RunConfig& config) {
    config.validate();
    DecayResult result;
    result.model = train(data, config.train_options());
    for (std::size_t i = 0; i < result.model.epochs.size(); ++i) {
        const auto trace = epoch_trace(result.model.epochs[i]);
        double previous = 1.0;
        for (const auto& r : trace) {
            if (r.z_product > previous) result.monotone = false;
            if (r.misclassified > r.z_product) result.bound_holds = false;
            previous = r.z_product;
            result.rows.push_back({i + 1, r});
        }
        result.fits.push_back(decay_fit(trace));
    }
    return result;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over a simple combination
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

GenGapResult gen_gap(const GenGapConfig& config) {
    if (config.sizes.empty() || config.seeds == 0 || config.test_size == 0)
        throw ContractViolation("gen-gap needs sizes, seeds and a test set");
    const std::size_t jobs = config.sizes.size() * config.seeds;
    std::vector<double> train_err(jobs), test_err(jobs);
    std::vector<std::exception_ptr> failures(jobs);

    auto run_job = [&](std::size_t job) {
        const std::size_t si = job / config.seeds;
        const std::size_t s = job % config.seeds;
        try {
            SynthParams sp;
            sp.generator = config.generator;
            sp.num_labels = config.num_labels;
            sp.margin = config.margin;
            sp.num_observations = config.sizes[si];
            sp.seed = derive_seed(config.seed, config.sizes[si], 2 * s);
            const Dataset training = synth(sp);
            sp.num_observations = config.test_size;
            sp.seed = derive_seed(config.seed, config.sizes[si], 2 * s + 1);
            const Dataset test = synth(sp);
            TrainOptions options;
            options.min_rounds = config.K;
            const TrainedModel model = train(training, options);
            train_err[job] = model.training_error();
            test_err[job] = error_rate(model, test);
        } catch (...) {
            failures[job] = std::current_exception();
        }
    };

    unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t j; (j = next.fetch_add(1)) < jobs;) run_job(j);
        });
    for (std::size_t j; (j = next.fetch_add(1)) < jobs;) run_job(j);
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    GenGapResult result;
    std::vector<double> inv_sqrt, medians;
    for (std::size_t si = 0; si < config.sizes.size(); ++si) {
        GenGapRow row;
        row.size = config.sizes[si];
        for (std::size_t s = 0; s < config.seeds; ++s) {
            const std::size_t job = si * config.seeds + s;
            row.train_errors.push_back(train_err[job]);
            row.test_errors.push_back(test_err[job]);
            row.gaps.push_back(test_err[job] - train_err[job]);
        }
        row.median_gap = median(row.gaps);
        if (!result.rows.empty() && row.median_gap > result.rows.back().median_gap)
            result.nonincreasing = false;
        inv_sqrt.push_back(1.0 / std::sqrt(static_cast<double>(row.size)));
        medians.push_back(row.median_gap);
        result.rows.push_back(std::move(row));
    }
    if (result.rows.size() >= 2) result.fit = linear_fit(inv_sqrt, medians);
    return result;
}

CompareResult compare(const Dataset& data, const RunConfig& config, std::size_t samme_rounds) {
    config.validate();
    if (samme_rounds < 1) throw ContractViolation("SAMME needs at least one round");
    CompareResult result;
    std::optional<Split> split;
    if (config.holdout_fraction > 0.0) split = holdout_split(data, config.holdout_fraction, config.seed);
    const Dataset& training = split ? split->train : data;

    const TrainedModel tau = train(training, config.train_options());
    result.tau_training_error = tau.training_error();
    result.tau_epochs = tau.num_epochs();
    for (const auto& e : tau.epochs) result.tau_rounds += e.record.terminal_round;

    const StumpPool pool = enumerate_stumps(training, LabelSet(training.num_labels()), config.pool);
    const SammeModel samme = samme_train(training, samme_rounds, pool);
    result.samme_rounds = samme_rounds;
    result.samme_training_error = error_rate(samme, training);
    if (split) {
        result.tau_holdout_error = error_rate(tau, split->holdout);
        result.samme_holdout_error = error_rate(samme, split->holdout);
    }
    return result;
}

}  // namespace iwboost
