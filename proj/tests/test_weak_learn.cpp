#include "iwboost/weak_learn.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace iwboost;

namespace {

std::set<LabelVector> realized_set(const StumpPool& pool) {
    std::set<LabelVector> out;
    for (const auto& h : pool.entries()) out.insert(h.realized);
    return out;
}

Dataset line(std::vector<double> xs, LabelVector y, std::size_t m) {
    return Dataset(std::move(xs), 1, std::move(y), m);
}

}  // namespace

TEST_SUITE("weak_learn") {

TEST_CASE("enumeration on small lines") {
    const auto two = enumerate_stumps(line({0, 1}, {0, 1}, 2), LabelSet(2));
    CHECK(two.size() == 4);
    CHECK(realized_set(two) == std::set<LabelVector>{{0, 0}, {1, 1}, {0, 1}, {1, 0}});

    const auto one = enumerate_stumps(line({0}, {0}, 2), LabelSet(2));
    CHECK(one.size() == 2);
    CHECK(realized_set(one) == std::set<LabelVector>{{0}, {1}});

    // two constants plus two labellings for each of the two cuts
    const auto three = enumerate_stumps(line({0, 1, 2}, {0, 1, 0}, 2), LabelSet(2));
    CHECK(three.size() == 6);
    CHECK(realized_set(three) == std::set<LabelVector>{{0, 0, 0}, {1, 1, 1}, {0, 1, 1}, {1, 0, 0}, {0, 0, 1}, {1, 1, 0}});
}

TEST_CASE("enumeration matches brute force") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = 1 + trial % 3;
        const std::size_t m = 2 + trial % 3;
        const std::size_t n = 1 + trial % 11;
        const Dataset data = oracle::random_dataset(rng, n, dim, m, 20);
        const StumpPool pool = enumerate_stumps(data, LabelSet(m));
        CHECK(realized_set(pool) == oracle::stump_realizations(data, m));
        CHECK(pool.size() == realized_set(pool).size());
    }
}

TEST_CASE("constants come first and every stump reproduces its realization") {
    std::mt19937_64 rng(4);
    const Dataset data = oracle::random_dataset(rng, 15, 2, 4, 20);
    const StumpPool pool = enumerate_stumps(data, LabelSet(4));
    for (Label a = 0; a < 4; ++a) {
        CHECK(std::all_of(pool[a].realized.begin(), pool[a].realized.end(), [a](Label v) { return v == a; }));
        REQUIRE(pool[a].params.has_value());
        CHECK(pool[a].params->label_above == a);
        CHECK(pool[a].params->label_below == a);
    }
    for (const auto& h : pool.entries()) {
        REQUIRE(h.params.has_value());
        for (std::size_t p = 0; p < data.size(); ++p) CHECK(h.params->evaluate(data.row(p)) == h.realized[p]);
    }
}

TEST_CASE("dedup keeps the lowest axis and thresholds sit strictly between values") {
    // both axes induce the same split; the representative must use axis 0
    const Dataset data({0, 5, 1, 6}, 2, {0, 1}, 2);
    const StumpPool pool = enumerate_stumps(data, LabelSet(2));
    CHECK(pool.size() == 4);
    for (const auto& h : pool.entries()) CHECK(h.params->axis == 0);
    const auto split = pool.find(LabelVector{0, 1});
    REQUIRE(split < pool.size());
    CHECK(pool[split].params->threshold == 0.5);
}

TEST_CASE("adjacent values whose midpoint rounds down still split") {
    const double a = 1.0, b = std::nextafter(1.0, 2.0);
    const StumpPool pool = enumerate_stumps(line({a, b}, {0, 1}, 2), LabelSet(2));
    CHECK(pool.contains(LabelVector{0, 1}));
    CHECK(pool.contains(LabelVector{1, 0}));
}

TEST_CASE("direction stumps") {
    // XOR-like points separable only by an oblique cut
    const Dataset data({0, 0, 1, 1, 1, 0, 0, 1}, 2, {0, 0, 1, 1}, 2);
    PoolConfig cfg;
    cfg.directions = {{1.0, -1.0}};
    const StumpPool axis = enumerate_stumps(data, LabelSet(2));
    const StumpPool oblique = enumerate_stumps(data, LabelSet(2), cfg);
    CHECK_FALSE(axis.contains(LabelVector{0, 0, 1, 0}));
    CHECK(oblique.contains(LabelVector{0, 0, 1, 0}));
    CHECK(oblique.size() > axis.size());
    for (const auto& h : oblique.entries())
        for (std::size_t p = 0; p < data.size(); ++p) CHECK(h.params->evaluate(data.row(p)) == h.realized[p]);
    cfg.directions = {{1.0}};
    CHECK_THROWS_AS(enumerate_stumps(data, LabelSet(2), cfg), ContractViolation);
    CHECK_THROWS_AS(enumerate_stumps(data, LabelSet(1)), ContractViolation);
}

TEST_CASE("stump pools are closed under every label permutation") {
    std::mt19937_64 rng(8);
    for (std::size_t m = 2; m <= 4; ++m) {
        const Dataset data = oracle::random_dataset(rng, 6, 2, m, 9);
        const StumpPool pool = enumerate_stumps(data, LabelSet(m));
        CHECK(pool.closed_under_permutations());
        LabelVector perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (const auto& h : pool.entries()) CHECK(pool.contains(permute_realization(h, perm).realized));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("constant pools and closure") {
    CHECK_FALSE(StumpPool::from_realizations({{0, 0}, {1, 1}}, 3).closed_under_permutations());
    CHECK(StumpPool::from_realizations({{0, 0}, {1, 1}}, 2).closed_under_permutations());
    const auto dup = StumpPool::from_realizations({{0, 1}, {0, 1}, {1, 0}}, 2);
    CHECK(dup.size() == 2);
    CHECK_THROWS_AS(StumpPool::from_realizations({{0, 2}}, 2), ContractViolation);
    CHECK_THROWS_AS(StumpPool::from_realizations({{0, 1}, {0}}, 2), ContractViolation);
}

TEST_CASE("best hypothesis examples") {
    const LabelVector y{0, 1};
    const auto u = ObservationDistribution::uniform(2);
    const auto ms13 = StumpPool::from_realizations({{0, 0}, {1, 1}}, 3);
    const auto b = best_hypothesis(ms13, y, u);
    CHECK(b.index == 0);
    CHECK(b.edge == 0.0);
    CHECK(b.epsilon == 0.5);

    const auto stumps = enumerate_stumps(line({0, 1}, y, 2), LabelSet(2));
    const auto s = best_hypothesis(stumps, y, u);
    CHECK(s.edge == 1.0);
    CHECK(s.epsilon == 0.0);
    CHECK(s.hypothesis->realized == y);

    const auto with_y = StumpPool::from_realizations({{1, 1}, {0, 1}, {1, 0}}, 2);
    CHECK(best_hypothesis(with_y, y, u).index == 1);
    CHECK_THROWS_AS(best_hypothesis(stumps, LabelVector{0, 2}, u), ContractViolation);
}

TEST_CASE("best hypothesis agrees with a direct scan and beats every constant") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t m = 2 + trial % 4;
        const std::size_t n = 2 + trial % 13;
        const Dataset data = oracle::random_dataset(rng, n, 1 + trial % 2, m, 30);
        const StumpPool pool = enumerate_stumps(data, LabelSet(m));
        const auto w = oracle::random_distribution(rng, n);
        const auto d = ObservationDistribution::normalized(w);
        const auto b = best_hypothesis(pool, data.labels(), d);
        std::vector<LabelVector> all;
        for (const auto& h : pool.entries()) all.push_back(h.realized);
        const double direct = oracle::best_score(all, data.labels(), w);
        CHECK(std::abs(b.edge - direct) < 1e-12);
        CHECK(std::abs(b.edge - (1.0 - 2.0 * b.epsilon)) < 1e-15);
        CHECK(b.epsilon == doctest::Approx(weighted_error(b.hypothesis->realized, data.labels(), d)).epsilon(1e-15));
        for (Label a = 0; a < static_cast<Label>(m); ++a) {
            const LabelVector c(n, a);
            CHECK(b.edge >= score(c, data.labels(), d) - 1e-15);
        }
        CHECK(b.edge >= random_guess_score(m) - 1e-15);

        // positive rescaling of d leaves the choice unchanged
        std::vector<double> scaled(w);
        for (auto& v : scaled) v *= 7.25;
        CHECK(best_hypothesis(pool, data.labels(), ObservationDistribution::normalized(scaled)).index == b.index);

        // the partition fast path agrees with a direct mass computation
        const auto mass = pool.correct_mass(data.labels(), d);
        for (std::size_t i = 0; i < pool.size(); i += 7)
            CHECK(std::abs(mass[i] - (1.0 - weighted_error(pool[i].realized, data.labels(), d))) < 1e-12);
    }
}

TEST_CASE("permute realization") {
    HypothesisRealization h{StumpParams{0, {}, 0.5, 1, 0}, {0, 1, 1}};
    const LabelVector id{0, 1};
    CHECK(permute_realization(h, id).realized == h.realized);
    const LabelVector swap{1, 0};
    const auto once = permute_realization(h, swap);
    CHECK(once.realized == LabelVector{1, 0, 0});
    CHECK(once.params->label_above == 0);
    CHECK(once.params->label_below == 1);
    const auto twice = permute_realization(once, swap);
    CHECK(twice.realized == h.realized);
    CHECK(*twice.params == *h.params);

    const HypothesisRealization h1{std::nullopt, {0, 0}};
    CHECK(permute_realization(h1, swap).realized == LabelVector{1, 1});
    CHECK_THROWS_AS(permute_realization(h, LabelVector{0, 0}), ContractViolation);
    CHECK_THROWS_AS(permute_realization(h, LabelVector{0}), ContractViolation);
}

TEST_CASE("pool builder follows the label-set size") {
    const Dataset data = line({0, 1, 2}, {0, 1, 2}, 3);
    const PoolBuilder build = stump_pool_builder(data);
    CHECK(build(2).label_size() == 2);
    CHECK(build(3).label_size() == 3);
    CHECK(build(3).num_observations() == 3);
}

}  // TEST_SUITE
