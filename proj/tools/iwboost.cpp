// iwboost command-line interface.
//
// Exit status: 0 success, 1 a reproduction check failed, 2 usage, contract
// or input errors, 3 weak-learnability violation or epoch divergence,
// 4 numeric or solver failure. Errors are reported as one JSON line on
// stderr.

#include "iwboost/csv.hpp"
#include "iwboost/experiments.hpp"
#include "iwboost/learnability.hpp"
#include "iwboost/model_io.hpp"
#include "iwboost/report.hpp"
#include "iwboost/synth.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace iwboost;

namespace {

struct Common {
    std::size_t K = 10;
    std::size_t round_cap = 0;
    std::uint64_t seed = 0;
    std::size_t num_labels = 0;  // 0 infers from the data
    std::string pool = "axis";
    double holdout = 0.0;
    std::string out;
};

void add_run_flags(CLI::App* app, Common& c, std::size_t default_K) {
    c.K = default_K;
    app->add_option("--K", c.K, "minimum epoch length")->capture_default_str();
    app->add_option("--round-cap", c.round_cap, "per-epoch round cap (0: 50*K*|A_i|)")->capture_default_str();
    app->add_option("--seed", c.seed, "seed for splits and synthetic data")->capture_default_str();
    app->add_option("--pool", c.pool, "'axis', or a file of extra hyperplane normals")->capture_default_str();
    app->add_option("--holdout", c.holdout, "holdout fraction in [0,1)")->capture_default_str();
}

std::optional<std::size_t> labels_override(const Common& c) {
    if (c.num_labels == 0) return std::nullopt;
    return c.num_labels;
}

// One normal per non-empty line; values separated by commas or whitespace.
PoolConfig load_pool(const std::string& source, std::size_t dim) {
    PoolConfig config;
    if (source == "axis") return config;
    std::ifstream in(source);
    if (!in) throw FormatError("cannot open pool file '" + source + "'", 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream fields(line);
        std::vector<double> normal;
        std::string tok;
        while (fields >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size()) throw FormatError("bad direction component '" + tok + "'", line_no);
            normal.push_back(v);
        }
        if (normal.empty()) continue;
        if (normal.size() != dim)
            throw FormatError("direction has " + std::to_string(normal.size()) + " components, expected " +
                                  std::to_string(dim),
                              line_no);
        config.directions.push_back(std::move(normal));
    }
    return config;
}

RunConfig run_config(const Common& c, std::size_t dim) {
    RunConfig config;
    config.K = c.K;
    config.round_cap = c.round_cap;
    config.seed = c.seed;
    config.holdout_fraction = c.holdout;
    config.pool = load_pool(c.pool, dim);
    config.validate();
    return config;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ContractViolation("cannot write '" + path + "'");
    out << text;
}

int exit_code(const std::exception& e) {
    if (dynamic_cast<const WeakLearnabilityViolation*>(&e) || dynamic_cast<const EpochDivergence*>(&e))
        return 3;
    if (dynamic_cast<const NumericFailure*>(&e) || dynamic_cast<const SolverError*>(&e)) return 4;
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iwboost: iterative-elimination multi-class boosting"};
    app.require_subcommand(1);
    int status = 0;

    // train ---------------------------------------------------------------
    Common tr;
    std::string tr_data, tr_metrics, tr_algorithm = "tau-ks";
    std::size_t tr_rounds = 100;
    bool tr_timing = false;
    auto* train_cmd = app.add_subcommand("train", "train a model and write metrics JSON");
    train_cmd->add_option("data", tr_data, "training CSV")->required();
    add_run_flags(train_cmd, tr, 10);
    train_cmd->add_option("--num-labels", tr.num_labels, "label alphabet size (default: max label)");
    train_cmd->add_option("--out", tr.out, "model file")->required();
    train_cmd->add_option("--metrics", tr_metrics, "metrics JSON (default: stdout)");
    train_cmd->add_option("--algorithm", tr_algorithm, "tau-ks, samme or adaboost")
        ->check(CLI::IsMember({"tau-ks", "samme", "adaboost"}))
        ->capture_default_str();
    train_cmd->add_option("--rounds", tr_rounds, "rounds for samme/adaboost")->capture_default_str();
    train_cmd->add_flag("--timing", tr_timing, "record wall-clock time in the metrics");
    train_cmd->callback([&] {
        const Dataset data = load_csv(tr_data, labels_override(tr));
        const RunConfig config = run_config(tr, data.dim());
        if (tr_algorithm != "tau-ks") {
            const StumpPool pool = enumerate_stumps(data, LabelSet(data.num_labels()), config.pool);
            SammeModel model = tr_algorithm == "samme" ? samme_train(data, tr_rounds, pool)
                                                       : adaboost_train(data, tr_rounds, pool);
            save_model(tr.out, model);
            Json j;
            j["format_version"] = kReportFormatVersion;
            j["algorithm"] = tr_algorithm;
            j["rounds"] = model.rounds.size();
            j["training_error"] = error_rate(model, data);
            emit(tr_metrics, dump(j));
            return;
        }
        const auto start = std::chrono::steady_clock::now();
        TrainRun run = run_train(data, config);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        save_model(tr.out, run.model);
        emit(tr_metrics, dump(metrics_json(run, config, tr_timing ? std::optional(seconds) : std::nullopt)));
    });

    // predict -------------------------------------------------------------
    std::string pr_model, pr_data, pr_out;
    auto* predict_cmd = app.add_subcommand("predict", "write predictions as CSV");
    predict_cmd->add_option("--model", pr_model, "model file")->required();
    predict_cmd->add_option("data", pr_data, "feature CSV (a label column is ignored)")->required();
    predict_cmd->add_option("--out", pr_out, "predictions CSV (default: stdout)");
    predict_cmd->callback([&] {
        const AnyModel model = load_model(pr_model);
        const FeatureTable table = load_feature_csv(pr_data);
        if (table.dim != model_dim(model))
            throw ContractViolation("model expects " + std::to_string(model_dim(model)) + " features, CSV has " +
                                    std::to_string(table.dim));
        LabelVector predictions;
        for (std::size_t p = 0; p < table.rows(); ++p)
            predictions.push_back(predict(model, std::span(table.features).subspan(p * table.dim, table.dim)));
        std::ostringstream os;
        write_predictions(os, predictions);
        emit(pr_out, os.str());
    });

    // eval ----------------------------------------------------------------
    std::string ev_model, ev_data, ev_out;
    auto* eval_cmd = app.add_subcommand("eval", "error rate of a model on a labelled CSV");
    eval_cmd->add_option("--model", ev_model, "model file")->required();
    eval_cmd->add_option("data", ev_data, "labelled CSV")->required();
    eval_cmd->add_option("--out", ev_out, "JSON report (default: stdout)");
    eval_cmd->callback([&] {
        const AnyModel model = load_model(ev_model);
        const Dataset data = load_csv(ev_data, model_num_labels(model));
        if (data.dim() != model_dim(model))
            throw ContractViolation("model expects " + std::to_string(model_dim(model)) + " features, CSV has " +
                                    std::to_string(data.dim()));
        std::size_t wrong = 0;
        for (std::size_t p = 0; p < data.size(); ++p)
            if (predict(model, data.row(p)) != data.labels()[p]) ++wrong;
        Json j;
        j["format_version"] = kReportFormatVersion;
        j["observations"] = data.size();
        j["misclassified"] = wrong;
        j["error_rate"] = static_cast<double>(wrong) / static_cast<double>(data.size());
        emit(ev_out, dump(j));
    });

    // check-learnability --------------------------------------------------
    Common cl;
    std::string cl_data, cl_mode = "given";
    double cl_rho = kDefaultRhoTolerance;
    auto* check_cmd = app.add_subcommand("check-learnability", "iterative weak-learnability game values");
    check_cmd->add_option("data", cl_data, "labelled CSV")->required();
    check_cmd->add_option("--num-labels", cl.num_labels, "label alphabet size (default: max label)");
    check_cmd->add_option("--pool", cl.pool, "'axis', or a file of extra hyperplane normals")->capture_default_str();
    check_cmd->add_option("--mode", cl_mode, "given or exhaustive")
        ->check(CLI::IsMember({"given", "exhaustive"}))
        ->capture_default_str();
    check_cmd->add_option("--rho-tol", cl_rho, "margin tolerance")->capture_default_str();
    check_cmd->add_option("--out", cl.out, "JSON report (default: stdout)");
    check_cmd->callback([&] {
        const Dataset data = load_csv(cl_data, labels_override(cl));
        LearnabilityOptions options;
        options.mode = cl_mode == "given" ? LabelingMode::Given : LabelingMode::Exhaustive;
        options.rho_tolerance = cl_rho;
        const IterativeReport report = iterative_weak_learnability(
            data.labels(), data.num_labels(), stump_pool_builder(data, load_pool(cl.pool, data.dim())), options);
        emit(cl.out, dump(learnability_json(report, data.num_labels(), options.mode)));
    });

    // compare -------------------------------------------------------------
    Common co;
    std::string co_data;
    std::size_t co_rounds = 100;
    auto* compare_cmd = app.add_subcommand("compare", "iterative elimination against SAMME");
    compare_cmd->add_option("data", co_data, "labelled CSV")->required();
    add_run_flags(compare_cmd, co, 10);
    compare_cmd->add_option("--num-labels", co.num_labels, "label alphabet size (default: max label)");
    compare_cmd->add_option("--samme-rounds", co_rounds, "SAMME rounds")->capture_default_str();
    compare_cmd->add_option("--out", co.out, "JSON report (default: stdout)");
    compare_cmd->callback([&] {
        const Dataset data = load_csv(co_data, labels_override(co));
        const RunConfig config = run_config(co, data.dim());
        emit(co.out, dump(compare_json(compare(data, config, co_rounds), config)));
    });

    // repro-ms13 ----------------------------------------------------------
    std::size_t ms_K = 10, ms_max = 200;
    std::string ms_out;
    auto* ms_cmd = app.add_subcommand("repro-ms13", "two-point counterexample: SAMME against elimination");
    ms_cmd->add_option("--K", ms_K, "minimum epoch length for the elimination run")->capture_default_str();
    ms_cmd->add_option("--max-K", ms_max, "largest SAMME round count checked")->capture_default_str();
    ms_cmd->add_option("--out", ms_out, "JSON report (default: stdout)");
    ms_cmd->callback([&] {
        const Ms13Result result = repro_ms13(ms_max, ms_K);
        emit(ms_out, dump(ms13_json(result)));
        if (!result.pass) status = 1;
    });

    // decay ---------------------------------------------------------------
    Common de;
    std::string de_data;
    SynthParams de_synth;
    de_synth.generator = "interval";
    de_synth.num_observations = 60;
    de_synth.num_labels = 3;
    de_synth.margin = 0.02;
    auto* decay_cmd = app.add_subcommand("decay", "per-round prod Z and misclassified fraction (CSV)");
    decay_cmd->add_option("--data", de_data, "labelled CSV (default: synthetic separable set)");
    add_run_flags(decay_cmd, de, 40);
    decay_cmd->add_option("--num-labels", de.num_labels, "label alphabet size");
    decay_cmd->add_option("--generator", de_synth.generator, "synthetic generator")->capture_default_str();
    decay_cmd->add_option("--n", de_synth.num_observations, "synthetic observations")->capture_default_str();
    decay_cmd->add_option("--margin", de_synth.margin, "synthetic margin")->capture_default_str();
    decay_cmd->add_option("--out", de.out, "CSV table (default: stdout)");
    decay_cmd->callback([&] {
        std::optional<Dataset> data;
        if (!de_data.empty()) {
            data = load_csv(de_data, labels_override(de));
        } else {
            if (de.num_labels) de_synth.num_labels = de.num_labels;
            de_synth.seed = de.seed;
            data = synth(de_synth);
        }
        const RunConfig config = run_config(de, data->dim());
        std::ostringstream os;
        write_decay_csv(os, decay(*data, config));
        emit(de.out, os.str());
    });

    // gen-gap -------------------------------------------------------------
    GenGapConfig gg;
    std::string gg_out, gg_json;
    auto* gg_cmd = app.add_subcommand("gen-gap", "median holdout-training gap against sample size (CSV)");
    gg_cmd->add_option("--sizes", gg.sizes, "training set sizes")->capture_default_str();
    gg_cmd->add_option("--seeds", gg.seeds, "seeds per size")->capture_default_str();
    gg_cmd->add_option("--test-size", gg.test_size, "fresh test set size")->capture_default_str();
    gg_cmd->add_option("--num-labels", gg.num_labels, "label alphabet size")->capture_default_str();
    gg_cmd->add_option("--generator", gg.generator, "synthetic generator")->capture_default_str();
    gg_cmd->add_option("--margin", gg.margin, "synthetic margin")->capture_default_str();
    gg_cmd->add_option("--K", gg.K, "minimum epoch length")->capture_default_str();
    gg_cmd->add_option("--seed", gg.seed, "base seed")->capture_default_str();
    gg_cmd->add_option("--workers", gg.workers, "worker threads (0: all cores)")->capture_default_str();
    gg_cmd->add_option("--out", gg_out, "CSV table (default: stdout)");
    gg_cmd->add_option("--json", gg_json, "full JSON report");
    gg_cmd->callback([&] {
        if (gg.K < 1) throw ContractViolation("K must be at least 1");
        const GenGapResult result = gen_gap(gg);
        std::ostringstream os;
        write_gen_gap_csv(os, result);
        emit(gg_out, os.str());
        if (!gg_json.empty()) emit(gg_json, dump(gen_gap_json(result, gg)));
    });

    // synth ---------------------------------------------------------------
    SynthParams sy;
    std::string sy_out;
    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic dataset as CSV");
    synth_cmd->add_option("--generator", sy.generator, "interval or regions")->capture_default_str();
    synth_cmd->add_option("--n", sy.num_observations, "observations")->capture_default_str();
    synth_cmd->add_option("--num-labels", sy.num_labels, "labels (2..5)")->capture_default_str();
    synth_cmd->add_option("--margin", sy.margin, "minimum distance to a deciding cut")->capture_default_str();
    synth_cmd->add_option("--seed", sy.seed, "seed")->capture_default_str();
    synth_cmd->add_option("--out", sy_out, "CSV file (default: stdout)");
    synth_cmd->callback([&] {
        std::ostringstream os;
        write_csv(os, synth(sy));
        emit(sy_out, os.str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        Json j;
        j["error"] = "UsageError";
        j["message"] = e.what();
        std::cerr << j.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_line(e) << '\n';
        return exit_code(e);
    }
    return status;
}
