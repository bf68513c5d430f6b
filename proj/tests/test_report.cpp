#include "iwboost/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace iwboost;

TEST_SUITE("report") {

TEST_CASE("metrics report fields") {
    SynthParams sp;
    sp.num_observations = 50;
    sp.num_labels = 4;
    RunConfig c;
    c.K = 15;
    const TrainRun run = run_train(synth(sp), c);
    const Json j = metrics_json(run, c);
    CHECK(j["format_version"] == 1);
    CHECK(j["num_epochs"] == run.model.num_epochs());
    CHECK(j["holdout_error"].is_null());
    CHECK_FALSE(j.contains("wall_clock_seconds"));
    const double n = static_cast<double>(run.model.num_observations());
    CHECK(j["training_error"].get<double>() == j["truth_lost"].get<double>() / n);
    for (const auto& e : j["epochs"]) {
        CHECK(e.contains("terminal_round"));
        CHECK(e.contains("elimination_count"));
        CHECK(e.contains("label_size"));
        for (const auto& r : e["rounds"]) {
            CHECK(r["z"].get<double>() > 0.0);
            CHECK(r["z"].get<double>() <= 1.0);
            CHECK(r["alpha"].get<double>() > 0.0);
            CHECK(r["gamma"].get<double>() > 0.0);
        }
    }
    CHECK(metrics_json(run, c, 1.5)["wall_clock_seconds"] == 1.5);
    CHECK(dump(j) == dump(metrics_json(run, c)));
}

TEST_CASE("learnability report fields") {
    const Dataset data({0.0, 1.0, 2.0}, 1, {0, 1, 2}, 3);
    const auto r = iterative_weak_learnability(data.labels(), 3, stump_pool_builder(data));
    const Json j = learnability_json(r, 3, LabelingMode::Given);
    CHECK(j["verdict"] == "PASS");
    REQUIRE(j["subsets"].size() == 2);
    for (const char* key : {"subset_size", "labeling", "value", "threshold", "margin", "verdict", "witness_d"})
        CHECK(j["subsets"][0].contains(key));
    CHECK(j["subsets"][1]["labeling"] == Json::array({1, 2, 3}));
}

TEST_CASE("error lines are single-line JSON") {
    const std::string line = error_line(LabelError("label 0 is below 1", 7));
    CHECK(line.find('\n') == std::string::npos);
    const Json j = Json::parse(line);
    CHECK(j["error"] == "LabelError");
    CHECK(j["line"] == 7);
    CHECK(Json::parse(error_line(std::runtime_error("x")))["error"] == "InternalError");
}

TEST_CASE("tables") {
    SynthParams sp;
    sp.num_observations = 30;
    RunConfig c;
    c.K = 5;
    std::ostringstream os;
    write_decay_csv(os, decay(synth(sp), c));
    CHECK(os.str().rfind("epoch,k,z,z_product,misclassified\n", 0) == 0);
    GenGapResult g;
    g.rows.push_back({10, {0.0}, {0.5}, {0.5}, 0.5});
    std::ostringstream gs;
    write_gen_gap_csv(gs, g);
    CHECK(gs.str() == "size,median_gap,median_train_error,median_test_error\n10,0.5,0,0.5\n");
}

}  // TEST_SUITE
