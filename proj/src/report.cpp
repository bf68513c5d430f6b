#include "iwboost/report.hpp"

#include <cstdio>
#include <ostream>

namespace iwboost {

namespace {

Json one_based(std::span<const Label> labels) {
    Json out = Json::array();
    for (Label a : labels) out.push_back(a + 1);
    return out;
}

Json one_based_indices(std::span<const std::size_t> indices) {
    Json out = Json::array();
    for (std::size_t p : indices) out.push_back(p + 1);
    return out;
}

std::string csv_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Json metrics_json(const TrainRun& run, const RunConfig& config, std::optional<double> seconds) {
    const TrainedModel& model = run.model;
    Json j;
    j["format_version"] = kReportFormatVersion;
    j["algorithm"] = "tau-ks";
    j["K"] = config.K;
    j["round_cap"] = config.round_cap;
    j["seed"] = config.seed;
    j["num_labels"] = model.num_labels;
    j["num_observations"] = model.num_observations();
    j["num_epochs"] = model.num_epochs();

    Json epochs = Json::array();
    for (std::size_t i = 0; i < model.epochs.size(); ++i) {
        const TrainedEpoch& e = model.epochs[i];
        Json ej;
        ej["epoch"] = i + 1;
        ej["label_size"] = e.record.label_size;
        ej["terminal_round"] = e.record.terminal_round;
        ej["elimination_count"] = e.step.count;
        ej["perfect"] = e.record.perfect;
        Json rounds = Json::array();
        const auto trace = epoch_trace(e);
        for (std::size_t k = 0; k < e.record.rounds.size(); ++k) {
            const RoundRecord& r = e.record.rounds[k];
            Json rj;
            rj["k"] = k + 1;
            rj["alpha"] = r.alpha;
            rj["epsilon"] = r.epsilon;
            rj["z"] = r.z;
            rj["gamma"] = r.gamma;
            rj["z_product"] = trace[k].z_product;
            rj["misclassified"] = trace[k].misclassified;
            rounds.push_back(std::move(rj));
        }
        ej["rounds"] = std::move(rounds);
        if (const auto fit = decay_fit(trace)) {
            ej["decay_slope"] = fit->slope;
            ej["decay_r2"] = fit->r2;
        } else {
            ej["decay_slope"] = nullptr;
            ej["decay_r2"] = nullptr;
        }
        ej["truth_lost"] = e.step.truth_lost.size();
        epochs.push_back(std::move(ej));
    }
    j["epochs"] = std::move(epochs);
    j["training_error"] = model.training_error();
    j["truth_lost"] = model.truth_lost.size();
    j["truth_lost_observations"] = one_based_indices(model.truth_lost);
    if (config.holdout_fraction > 0.0) {
        j["holdout_fraction"] = config.holdout_fraction;
        j["holdout_error"] = run.holdout_error ? Json(*run.holdout_error) : Json(nullptr);
    } else {
        j["holdout_error"] = nullptr;
    }
    if (seconds) j["wall_clock_seconds"] = *seconds;
    return j;
}

Json game_json(const GameValueReport& report) {
    Json j;
    j["value"] = report.value;
    j["dual_value"] = report.dual_value;
    j["threshold"] = report.threshold;
    j["margin"] = report.margin;
    j["verdict"] = report.pass ? "PASS" : "FAIL";
    j["witness_d"] = report.witness_d;
    return j;
}

Json subset_json(const SubsetReport& report) {
    Json j;
    j["subset_size"] = report.subset_size;
    j["labeling"] = one_based(report.labeling);
    j["observations"] = one_based_indices(report.observations);
    const Json game = game_json(report.game);
    for (const auto& [k, v] : game.items()) j[k] = v;
    if (report.labelings_checked == 0) j["verdict"] = "SKIPPED";
    j["labelings_checked"] = report.labelings_checked;
    return j;
}

Json learnability_json(const IterativeReport& report, std::size_t num_labels, LabelingMode mode) {
    Json j;
    j["format_version"] = kReportFormatVersion;
    j["num_labels"] = num_labels;
    j["mode"] = mode == LabelingMode::Given ? "given" : "exhaustive";
    Json subsets = Json::array();
    for (const auto& s : report.subsets) subsets.push_back(subset_json(s));
    j["subsets"] = std::move(subsets);
    j["min_margin"] = report.min_margin;
    j["verdict"] = report.pass ? "PASS" : "FAIL";
    return j;
}

Json ms13_json(const Ms13Result& result) {
    Json j;
    j["format_version"] = kReportFormatVersion;
    Json samme;
    samme["max_K"] = result.samme_errors.size();
    samme["min_training_error"] = result.samme_min_error;
    samme["training_errors"] = result.samme_errors;
    j["samme"] = std::move(samme);
    Json tau;
    tau["K"] = result.tau_K;
    tau["training_error"] = result.tau_error;
    tau["num_epochs"] = result.tau.num_epochs();
    tau["label_sizes"] = result.tau.label_sizes();
    Json terminal = Json::array();
    for (const auto& e : result.tau.epochs) terminal.push_back(e.record.terminal_round);
    tau["terminal_rounds"] = std::move(terminal);
    tau["training_predictions"] = one_based(result.tau.training_predictions);
    j["tau_ks"] = std::move(tau);
    j["verdict"] = result.pass ? "PASS" : "FAIL";
    return j;
}

Json gen_gap_json(const GenGapResult& result, const GenGapConfig& config) {
    Json j;
    j["format_version"] = kReportFormatVersion;
    j["generator"] = config.generator;
    j["num_labels"] = config.num_labels;
    j["seeds"] = config.seeds;
    j["test_size"] = config.test_size;
    j["K"] = config.K;
    j["seed"] = config.seed;
    Json rows = Json::array();
    for (const auto& r : result.rows) {
        Json rj;
        rj["size"] = r.size;
        rj["median_gap"] = r.median_gap;
        rj["median_train_error"] = median(r.train_errors);
        rj["median_test_error"] = median(r.test_errors);
        rj["gaps"] = r.gaps;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    j["fit_slope"] = result.fit.slope;
    j["fit_intercept"] = result.fit.intercept;
    j["fit_r2"] = result.fit.r2;
    j["nonincreasing"] = result.nonincreasing;
    j["verdict"] = result.nonincreasing && result.fit.slope >= 0.0 ? "PASS" : "FAIL";
    return j;
}

Json compare_json(const CompareResult& result, const RunConfig& config) {
    Json j;
    j["format_version"] = kReportFormatVersion;
    j["K"] = config.K;
    j["holdout_fraction"] = config.holdout_fraction;
    Json tau;
    tau["training_error"] = result.tau_training_error;
    tau["holdout_error"] = result.tau_holdout_error ? Json(*result.tau_holdout_error) : Json(nullptr);
    tau["epochs"] = result.tau_epochs;
    tau["rounds"] = result.tau_rounds;
    j["tau_ks"] = std::move(tau);
    Json samme;
    samme["training_error"] = result.samme_training_error;
    samme["holdout_error"] =
        result.samme_holdout_error ? Json(*result.samme_holdout_error) : Json(nullptr);
    samme["rounds"] = result.samme_rounds;
    j["samme"] = std::move(samme);
    return j;
}

void write_decay_csv(std::ostream& out, const DecayResult& result) {
    out << "epoch,k,z,z_product,misclassified\n";
    for (const auto& row : result.rows)
        out << row.epoch << ',' << row.round.k << ',' << csv_real(row.round.z) << ','
            << csv_real(row.round.z_product) << ',' << csv_real(row.round.misclassified) << '\n';
}

void write_gen_gap_csv(std::ostream& out, const GenGapResult& result) {
    out << "size,median_gap,median_train_error,median_test_error\n";
    for (const auto& r : result.rows)
        out << r.size << ',' << csv_real(r.median_gap) << ',' << csv_real(median(r.train_errors)) << ','
            << csv_real(median(r.test_errors)) << '\n';
}

std::string error_line(const std::exception& e) {
    Json j;
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        j["error"] = err->kind();
        j["message"] = err->what();
        if (const auto* in = dynamic_cast<const InputError*>(&e)) j["line"] = in->line;
    } else {
        j["error"] = "InternalError";
        j["message"] = e.what();
    }
    return j.dump();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace iwboost
