#include "iwboost/simplex.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace iwboost;

namespace {

// Best objective over every vertex of {A x <= b, x >= 0} in two variables.
double vertex_oracle(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
    std::vector<std::vector<double>> rows = a;
    std::vector<double> rhs = b;
    rows.push_back({-1.0, 0.0});
    rhs.push_back(0.0);
    rows.push_back({0.0, -1.0});
    rhs.push_back(0.0);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
            if (std::abs(det) < 1e-12) continue;
            const double x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det;
            const double y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det;
            bool ok = true;
            for (std::size_t k = 0; k < rows.size(); ++k)
                if (rows[k][0] * x + rows[k][1] * y > rhs[k] + 1e-9) ok = false;
            if (ok) best = std::max(best, c[0] * x + c[1] * y);
        }
    return best;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("small programs") {
    const auto box = solve_lp({{1, 0}, {0, 1}}, {1, 2}, {1, 1});
    CHECK(box.status == LpStatus::Optimal);
    CHECK(box.objective == doctest::Approx(3.0));
    CHECK(box.x[0] == doctest::Approx(1.0));
    CHECK(box.x[1] == doctest::Approx(2.0));

    CHECK(solve_lp({{1}}, {-1}, {1}).status == LpStatus::Infeasible);
    CHECK(solve_lp({{-1}}, {1}, {1}).status == LpStatus::Unbounded);

    // needs the feasibility phase: x >= 1 written as -x <= -1
    const auto lower = solve_lp({{-1, 0}, {1, 1}}, {-1, 4}, {-1, 1});
    CHECK(lower.status == LpStatus::Optimal);
    CHECK(lower.objective == doctest::Approx(2.0));
}

TEST_CASE("degenerate vertex terminates") {
    const auto r = solve_lp({{1, 1}, {1, 0}, {0, 1}, {1, 1}}, {1, 1, 1, 1}, {1, 1});
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("random two-variable programs match vertex enumeration") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::vector<double>> a{{1, 0}, {0, 1}};
        std::vector<double> b{5, 5};
        for (int k = 0; k < 4; ++k) {
            a.push_back({u(rng), u(rng)});
            b.push_back(u(rng) + 1.0);
        }
        const std::vector<double> c{u(rng), u(rng)};
        const auto r = solve_lp(a, b, c);
        const double oracle = vertex_oracle(a, b, c);
        if (std::isinf(oracle)) {
            CHECK(r.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(r.status == LpStatus::Optimal);
        CHECK(std::abs(r.objective - oracle) < 1e-8);
    }
}

}  // TEST_SUITE
