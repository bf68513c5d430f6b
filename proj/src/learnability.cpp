#include "iwboost/learnability.hpp"

#include "iwboost/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace iwboost {

namespace {

constexpr double kPayoffShift = 2.0;  // makes every payoff entry positive
constexpr double kDualityTolerance = 1e-8;

std::vector<LabelVector> distinct(std::span<const LabelVector> pool) {
    std::set<LabelVector> seen;
    std::vector<LabelVector> out;
    for (const auto& h : pool)
        if (seen.insert(h).second) out.push_back(h);
    return out;
}

const char* status_name(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration limit";
    }
    return "unknown";
}

std::vector<LabelVector> restrict_columns(const StumpPool& pool, std::span<const std::size_t> columns) {
    std::vector<LabelVector> out;
    out.reserve(pool.size());
    for (const auto& h : pool.entries()) {
        LabelVector r(columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) r[j] = h.realized[columns[j]];
        out.push_back(std::move(r));
    }
    return out;
}

// Calls visit(labeling) for every labeling of n observations into {0..s-1};
// with `canonical`, only for restricted-growth labelings (first occurrences
// of labels appear in increasing order). Stops early when visit returns false.
template <typename Visit>
void for_each_labeling(std::size_t n, std::size_t s, bool canonical, Visit&& visit) {
    LabelVector y(n, 0);
    std::vector<Label> prefix_max(n + 1, -1);  // max label among y[0..i-1]
    auto bound = [&](std::size_t i) -> Label {
        if (!canonical) return static_cast<Label>(s - 1);
        return std::min<Label>(static_cast<Label>(s - 1), prefix_max[i] + 1);
    };
    for (std::size_t i = 0; i < n; ++i) prefix_max[i + 1] = std::max(prefix_max[i], y[i]);
    for (;;) {
        if (!visit(y)) return;
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (y[i] < bound(i)) {
                ++y[i];
                prefix_max[i + 1] = std::max(prefix_max[i], y[i]);
                for (std::size_t j = i + 1; j < n; ++j) {
                    y[j] = 0;
                    prefix_max[j + 1] = std::max(prefix_max[j], 0);
                }
                break;
            }
            if (i == 0) return;
        }
        if (n == 0) return;
    }
}

}  // namespace

GameValueReport game_value(std::span<const LabelVector> pool, std::span<const Label> y) {
    const std::vector<LabelVector> hs = distinct(pool);
    if (hs.empty()) throw ContractViolation("game_value: empty pool");
    const std::size_t n = y.size();
    if (n == 0) throw ContractViolation("game_value: no observations");
    for (const auto& h : hs)
        if (h.size() != n) throw ContractViolation("game_value: realization length mismatch");
    const std::size_t k = hs.size();

    auto payoff = [&](std::size_t h, std::size_t p) {
        return (hs[h][p] == y[p] ? 1.0 : -1.0) + kPayoffShift;
    };

    // Distribution player: max sum z  s.t.  sum_p M'[h][p] z_p <= 1.
    std::vector<std::vector<double>> a1(k, std::vector<double>(n));
    for (std::size_t h = 0; h < k; ++h)
        for (std::size_t p = 0; p < n; ++p) a1[h][p] = payoff(h, p);
    const LpResult r1 = solve_lp(a1, std::vector<double>(k, 1.0), std::vector<double>(n, 1.0));

    // Hypothesis player: max -sum u  s.t.  -sum_h M'[h][p] u_h <= -1.
    std::vector<std::vector<double>> a2(n, std::vector<double>(k));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t h = 0; h < k; ++h) a2[p][h] = -payoff(h, p);
    const LpResult r2 = solve_lp(a2, std::vector<double>(n, -1.0), std::vector<double>(k, -1.0));

    if (r1.status != LpStatus::Optimal || r2.status != LpStatus::Optimal || !(r1.objective > 0.0) ||
        !(r2.objective < 0.0)) {
        std::ostringstream os;
        os << "game solver did not converge (distribution player: " << status_name(r1.status)
           << ", hypothesis player: " << status_name(r2.status) << ")";
        throw SolverError(os.str(), std::numeric_limits<double>::infinity());
    }

    GameValueReport report;
    report.value = 1.0 / r1.objective - kPayoffShift;
    report.dual_value = -1.0 / r2.objective - kPayoffShift;
    const double gap = std::abs(report.value - report.dual_value);
    if (gap > kDualityTolerance) {
        std::ostringstream os;
        os << "game solver duality gap " << gap << " exceeds " << kDualityTolerance;
        throw SolverError(os.str(), gap);
    }
    report.witness_d.resize(n);
    for (std::size_t p = 0; p < n; ++p) report.witness_d[p] = std::max(0.0, r1.x[p]) * (1.0 / r1.objective);
    report.witness_mix.resize(k);
    for (std::size_t h = 0; h < k; ++h) report.witness_mix[h] = std::max(0.0, r2.x[h]) / (-r2.objective);
    return report;
}

GameValueReport game_value(const StumpPool& pool, std::span<const Label> y) {
    std::vector<LabelVector> hs;
    hs.reserve(pool.size());
    for (const auto& h : pool.entries()) hs.push_back(h.realized);
    return game_value(std::span<const LabelVector>(hs), y);
}

GameValueReport weak_learnability(std::span<const LabelVector> pool, std::span<const Label> y,
                                  std::size_t m, double rho_tolerance) {
    GameValueReport report = game_value(pool, y);
    report.threshold = random_guess_score(m);
    report.margin = report.value - report.threshold;
    report.pass = report.margin > rho_tolerance;
    return report;
}

GameValueReport weak_learnability(const StumpPool& pool, std::span<const Label> y, std::size_t m,
                                  double rho_tolerance) {
    std::vector<LabelVector> hs;
    hs.reserve(pool.size());
    for (const auto& h : pool.entries()) hs.push_back(h.realized);
    return weak_learnability(std::span<const LabelVector>(hs), y, m, rho_tolerance);
}

IterativeReport iterative_weak_learnability(std::span<const Label> y, std::size_t num_labels,
                                            const PoolBuilder& pools, const LearnabilityOptions& options) {
    if (num_labels < 2) throw ContractViolation("iterative_weak_learnability: need at least 2 labels");
    const std::size_t n = y.size();
    if (n == 0) throw ContractViolation("iterative_weak_learnability: no observations");
    if (options.mode == LabelingMode::Exhaustive &&
        (num_labels > options.max_labels || n > options.max_observations)) {
        std::ostringstream os;
        os << "exhaustive labeling check is limited to |A| <= " << options.max_labels << " and |P| <= "
           << options.max_observations << " (got |A| = " << num_labels << ", |P| = " << n
           << "); use the given-labeling mode instead";
        throw GuardExceeded(os.str());
    }

    IterativeReport out;
    out.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t s = 2; s <= num_labels; ++s) {
        const StumpPool pool = pools(s);
        if (pool.label_size() != s || pool.num_observations() != n)
            throw ContractViolation("pool builder returned a pool of the wrong shape");
        SubsetReport sub;
        sub.subset_size = s;

        if (options.mode == LabelingMode::Given) {
            for (std::size_t p = 0; p < n; ++p)
                if (y[p] >= 0 && static_cast<std::size_t>(y[p]) < s) sub.observations.push_back(p);
            if (sub.observations.empty()) {
                out.subsets.push_back(std::move(sub));
                continue;
            }
            const auto hs = restrict_columns(pool, sub.observations);
            for (std::size_t p : sub.observations) sub.labeling.push_back(y[p]);
            sub.game = weak_learnability(std::span<const LabelVector>(hs), sub.labeling, s,
                                         options.rho_tolerance);
            sub.labelings_checked = 1;
        } else {
            for (std::size_t p = 0; p < n; ++p) sub.observations.push_back(p);
            const bool canonical = pool.closed_under_permutations();
            std::size_t count = 0;
            for_each_labeling(n, s, canonical, [&](const LabelVector&) {
                return ++count <= options.max_labelings;
            });
            if (count > options.max_labelings) {
                std::ostringstream os;
                os << "subset size " << s << " needs more than " << options.max_labelings
                   << " game solves; raise the labeling cap or check a given labeling";
                throw GuardExceeded(os.str());
            }
            std::vector<LabelVector> hs;
            hs.reserve(pool.size());
            for (const auto& h : pool.entries()) hs.push_back(h.realized);
            bool first = true;
            for_each_labeling(n, s, canonical, [&](const LabelVector& labeling) {
                GameValueReport g = weak_learnability(std::span<const LabelVector>(hs), labeling, s,
                                                      options.rho_tolerance);
                ++sub.labelings_checked;
                if (first || g.margin < sub.game.margin) {
                    sub.game = std::move(g);
                    sub.labeling = labeling;
                    first = false;
                }
                return true;
            });
        }
        out.min_margin = std::min(out.min_margin, sub.game.margin);
        out.subsets.push_back(std::move(sub));
    }
    out.pass = out.min_margin > options.rho_tolerance;
    return out;
}

}  // namespace iwboost
