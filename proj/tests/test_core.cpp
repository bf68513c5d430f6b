#include "iwboost/core.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace iwboost;

TEST_SUITE("core") {

TEST_CASE("score of perfect agreement and total disagreement") {
    const LabelVector y{0, 1, 2, 1};
    const auto d = ObservationDistribution({0.1, 0.2, 0.3, 0.4});
    CHECK(score(y, y, d) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(score(LabelVector{1, 2, 0, 0}, y, d) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("score of a constant on the two-point counterexample is 2d(a) - 1") {
    const LabelVector y{0, 1};
    const LabelVector h1{0, 0};
    for (double da : {0.0, 0.2, 0.5, 0.75, 1.0}) {
        const auto d = ObservationDistribution({da, 1.0 - da});
        CHECK(score(h1, y, d) == doctest::Approx(2.0 * da - 1.0).epsilon(1e-15));
    }
    CHECK(score(h1, y, ObservationDistribution::uniform(2)) == 0.0);
}

TEST_CASE("score rejects length mismatch") {
    CHECK_THROWS_AS(score(LabelVector{0}, LabelVector{0, 1}, ObservationDistribution::uniform(2)), ContractViolation);
    CHECK_THROWS_AS(weighted_error(LabelVector{0, 1}, LabelVector{0, 1}, ObservationDistribution::uniform(3)),
                    ContractViolation);
}

TEST_CASE("random guess score") {
    CHECK(random_guess_score(2) == 0.0);
    CHECK(random_guess_score(3) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(random_guess_score(4) == -0.5);
    CHECK_THROWS_AS(random_guess_score(1), ContractViolation);
}

TEST_CASE("score is linear in d and equals 1 - 2 eps") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> lab(0, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 9;
        LabelVector h(n), y(n);
        for (std::size_t p = 0; p < n; ++p) h[p] = lab(rng), y[p] = lab(rng);
        const auto w1 = oracle::random_distribution(rng, n);
        const auto w2 = oracle::random_distribution(rng, n);
        const double a = u(rng);
        std::vector<double> mix(n);
        for (std::size_t p = 0; p < n; ++p) mix[p] = a * w1[p] + (1.0 - a) * w2[p];
        const auto d1 = ObservationDistribution::normalized(w1);
        const auto d2 = ObservationDistribution::normalized(w2);
        const auto dm = ObservationDistribution::normalized(mix);
        CHECK(std::abs(score(h, y, dm) - (a * score(h, y, d1) + (1.0 - a) * score(h, y, d2))) < 1e-12);
        CHECK(std::abs(score(h, y, d1) - (1.0 - 2.0 * weighted_error(h, y, d1))) < 1e-12);
        CHECK(std::abs(score(h, y, d1) - oracle::score(h, y, w1)) < 1e-12);
    }
}

TEST_CASE("dataset validation") {
    CHECK_NOTHROW(Dataset({0.0, 1.0}, 1, {0, 1}, 2));
    CHECK_THROWS_AS(Dataset({}, 1, {}, 2), ContractViolation);
    CHECK_THROWS_AS(Dataset({0.0, 1.0}, 1, {0, 2}, 2), ContractViolation);
    CHECK_THROWS_AS(Dataset({0.0, 1.0}, 1, {0, -1}, 2), ContractViolation);
    CHECK_THROWS_AS(Dataset({0.0, 1.0}, 1, {0, 1}, 1), ContractViolation);
    CHECK_THROWS_AS(Dataset({0.0, 1.0, 2.0}, 2, {0, 1}, 2), ContractViolation);
    CHECK_THROWS_AS(Dataset({0.0, std::nan("")}, 1, {0, 1}, 2), ContractViolation);
    // identical rows: same label allowed, conflicting label rejected
    CHECK_NOTHROW(Dataset({0.5, 0.5, 1.0}, 1, {1, 1, 0}, 2));
    CHECK_THROWS_AS(Dataset({0.5, 1.0, 0.5}, 1, {1, 0, 0}, 2), ConsistencyError);
    const std::vector<double> f{1, 2, 3, 4, 1, 2};
    const LabelVector l{0, 1, 1};
    const auto dup = find_conflicting_duplicate(f, 2, l);
    REQUIRE(dup.has_value());
    CHECK(*dup == 2);
}

TEST_CASE("dataset subset keeps order and labels") {
    const Dataset data({0, 10, 1, 11, 2, 12}, 2, {0, 1, 2}, 3);
    const std::vector<std::size_t> idx{2, 0};
    const Dataset sub = data.subset(idx);
    CHECK(sub.size() == 2);
    CHECK(sub.num_labels() == 3);
    CHECK(sub.row(0)[1] == 12.0);
    CHECK(sub.labels() == LabelVector{2, 0});
}

TEST_CASE("distributions") {
    const auto u = ObservationDistribution::uniform(4);
    CHECK(u[2] == 0.25);
    CHECK_THROWS_AS(ObservationDistribution({0.5, 0.6}), ContractViolation);
    CHECK_THROWS_AS(ObservationDistribution({1.5, -0.5}), ContractViolation);
    CHECK_NOTHROW(ObservationDistribution({0.5, 0.5 + 1e-13}));
    CHECK_THROWS_AS(ObservationDistribution::normalized({0.0, 0.0}), NumericFailure);
    const auto n = ObservationDistribution::normalized({1.0, 3.0});
    CHECK(n[1] == 0.75);
}

TEST_CASE("label set") {
    const LabelSet a(3);
    CHECK(a.contains(0));
    CHECK(a.contains(2));
    CHECK_FALSE(a.contains(3));
    CHECK_FALSE(a.contains(-1));
    CHECK_THROWS_AS(LabelSet(0), ContractViolation);
}

TEST_CASE("stump evaluation") {
    StumpParams s{1, {}, 0.5, 2, 0};
    const std::vector<double> x{9.0, 0.5}, z{9.0, 0.4};
    CHECK(s.evaluate(x) == 2);
    CHECK(s.evaluate(z) == 0);
    StumpParams dir{0, {1.0, -1.0}, 0.0, 1, 0};
    CHECK(dir.evaluate(std::vector<double>{2.0, 1.0}) == 1);
    CHECK(dir.evaluate(std::vector<double>{1.0, 2.0}) == 0);
    CHECK_THROWS_AS(dir.project(std::vector<double>{1.0}), ContractViolation);
}

TEST_CASE("score table keeps Psi centred and consistent with F") {
    std::mt19937_64 rng(5);
    for (std::size_t m = 2; m <= 6; ++m) {
        const std::size_t n = 7;
        ScoreTable t(n, m);
        std::uniform_int_distribution<int> lab(0, static_cast<int>(m) - 1);
        std::uniform_real_distribution<double> a(0.01, 3.0);
        for (int k = 0; k < 50; ++k) {
            LabelVector h(n);
            for (auto& v : h) v = lab(rng);
            t.add_round(h, a(rng));
            for (std::size_t p = 0; p < n; ++p) {
                double row = 0.0, fsum = 0.0;
                for (std::size_t b = 0; b < m; ++b) fsum += t.f(p, static_cast<Label>(b));
                for (std::size_t b = 0; b < m; ++b) {
                    const Label lb = static_cast<Label>(b);
                    row += t.psi(p, lb);
                    const double expect = (static_cast<double>(m) - 1.0) * t.f(p, lb) - (fsum - t.f(p, lb));
                    CHECK(std::abs(t.psi(p, lb) - expect) < 1e-9);
                }
                CHECK(std::abs(row) < 1e-9);
            }
        }
        CHECK(t.round() == 50);
    }
}

TEST_CASE("score table rejects bad rounds") {
    ScoreTable t(2, 3);
    CHECK_THROWS_AS(t.add_round(LabelVector{0}, 1.0), ContractViolation);
    CHECK_THROWS_AS(t.add_round(LabelVector{0, 3}, 1.0), ContractViolation);
}

}  // TEST_SUITE
