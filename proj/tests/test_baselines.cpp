#include "iwboost/baselines.hpp"
#include "iwboost/eliminate.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace iwboost;

TEST_SUITE("baselines") {

TEST_CASE("SAMME and AdaBoost coincide on two labels") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset data = oracle::random_dataset(rng, 10 + trial * 3, 1 + trial % 3, 2, 40);
        const StumpPool pool = enumerate_stumps(data, LabelSet(2));
        const SammeModel s = samme_train(data, 25, pool);
        const SammeModel a = adaboost_train(data, 25, pool);
        REQUIRE(s.rounds.size() == a.rounds.size());
        CHECK(s.perfect.has_value() == a.perfect.has_value());
        for (std::size_t k = 0; k < s.rounds.size(); ++k) {
            CHECK(s.rounds[k].hypothesis.realized == a.rounds[k].hypothesis.realized);
            CHECK(std::abs(s.rounds[k].alpha - a.rounds[k].alpha) < 1e-12);
        }
        CHECK(s.training_predictions() == a.training_predictions());
    }
}

TEST_CASE("SAMME with two constants labels both points alike") {
    const LabelVector y{0, 1};
    const auto pool = StumpPool::from_realizations({{0, 0}, {1, 1}}, 3);
    for (std::size_t K = 1; K <= 60; ++K) {
        const SammeModel m = samme_train(y, 3, K, pool);
        const LabelVector pred = m.training_predictions();
        CHECK(pred[0] == pred[1]);
        for (const auto& r : m.rounds) CHECK(r.alpha > 0.0);
    }
}

TEST_CASE("a perfect first round ends training") {
    const Dataset data({0, 1, 2}, 1, {0, 1, 2}, 3);
    const StumpPool pool = StumpPool::from_realizations({{0, 0, 0}, {0, 1, 2}}, 3);
    const SammeModel m = samme_train(data, 10, pool);
    CHECK(m.rounds.empty());
    REQUIRE(m.perfect.has_value());
    CHECK(m.training_predictions() == data.labels());

    const Dataset bin({0, 1}, 1, {0, 1}, 2);
    const SammeModel a = adaboost_train(bin, 10, enumerate_stumps(bin, LabelSet(2)));
    CHECK(a.rounds.empty());
    CHECK(a.perfect.has_value());
    CHECK(predict(a, std::vector<double>{0.9}) == 1);
}

TEST_CASE("AdaBoost first weight") {
    const Dataset data({0, 1, 2, 3}, 1, {0, 1, 0, 1}, 2);
    const SammeModel a = adaboost_train(data, 1, enumerate_stumps(data, LabelSet(2)));
    REQUIRE(a.rounds.size() == 1);
    CHECK(a.rounds[0].epsilon == 0.25);
    CHECK(a.rounds[0].alpha == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(adaboost_train(Dataset({0, 1}, 1, {0, 1}, 3), 1, enumerate_stumps(data, LabelSet(2))),
                    ContractViolation);
}

TEST_CASE("AdaBoost matches the elimination booster on two labels") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset data = oracle::random_dataset(rng, 20, 2, 2, 100);
        TrainOptions opt;
        opt.min_rounds = 10;
        const TrainedModel tau = train(data, opt);
        const auto& e = tau.epochs.front().record;
        const SammeModel a = adaboost_train(data, e.terminal_round, enumerate_stumps(data, LabelSet(2)));
        if (e.perfect) {
            CHECK(a.perfect.has_value());
            continue;
        }
        REQUIRE(a.rounds.size() == e.rounds.size());
        for (std::size_t k = 0; k < e.rounds.size(); ++k)
            CHECK(std::abs(a.rounds[k].alpha - e.rounds[k].alpha) < 1e-12);
        CHECK(a.training_predictions() == tau.training_predictions);
    }
}

TEST_CASE("feature-vector prediction agrees on training rows") {
    std::mt19937_64 rng(14);
    const Dataset data = oracle::random_dataset(rng, 30, 2, 4, 100);
    const SammeModel m = samme_train(data, 40, enumerate_stumps(data, LabelSet(4)));
    const LabelVector pred = m.training_predictions();
    for (std::size_t p = 0; p < data.size(); ++p) CHECK(predict(m, data.row(p)) == pred[p]);
    CHECK_THROWS_AS(predict(m, std::vector<double>{1.0}), ContractViolation);
    const SammeModel handmade = samme_train(LabelVector{0, 1}, 3, 3, StumpPool::from_realizations({{0, 0}, {1, 1}}, 3));
    CHECK_THROWS_AS(predict(handmade, std::vector<double>{1.0}), ContractViolation);
}

}  // TEST_SUITE
