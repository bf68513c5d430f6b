#include "iwboost/simplex.hpp"

#include "iwboost/core.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace iwboost {

namespace {

constexpr double kEps = 1e-11;

// Tableau layout: rows 0..m-1 constraints, row m the objective, row m+1 the
// phase-one objective. Column n is the artificial variable, column n+1 the
// right-hand side. basis[i] / nonbasis[j] hold variable ids, slack i is n+i
// and the artificial is -1.
class Tableau {
public:
    Tableau(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
            const std::vector<double>& c)
        : m_(b.size()), n_(c.size()), nonbasis_(n_ + 1), basis_(m_),
          d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (a[i].size() != n_) throw ContractViolation("solve_lp: ragged constraint matrix");
            for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
            basis_[i] = static_cast<long>(n_ + i);
            d_[i][n_] = -1.0;
            d_[i][n_ + 1] = b[i];
        }
        for (std::size_t j = 0; j < n_; ++j) {
            nonbasis_[j] = static_cast<long>(j);
            d_[m_][j] = -c[j];
        }
        nonbasis_[n_] = -1;
        d_[m_ + 1][n_] = 1.0;
    }

    LpResult solve(std::size_t max_pivots) {
        LpResult result;
        pivots_left_ = max_pivots;
        std::size_t r = 0;
        for (std::size_t i = 1; i < m_; ++i)
            if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
        if (m_ > 0 && d_[r][n_ + 1] < -kEps) {
            pivot(r, n_);
            const Outcome phase_one = run(2);
            if (phase_one == Outcome::Limit) return limit(result);
            if (phase_one != Outcome::Done || d_[m_ + 1][n_ + 1] < -kEps) {
                result.status = LpStatus::Infeasible;
                return result;
            }
            for (std::size_t i = 0; i < m_; ++i) {
                if (basis_[i] != -1) continue;
                std::size_t s = 0;
                for (std::size_t j = 1; j <= n_; ++j)
                    if (better(d_[i][j], nonbasis_[j], d_[i][s], nonbasis_[s])) s = j;
                pivot(i, s);
            }
        }
        const Outcome phase_two = run(1);
        if (phase_two == Outcome::Limit) return limit(result);
        result.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_)
                result.x[basis_[i]] = d_[i][n_ + 1];
        if (phase_two == Outcome::Unbounded) {
            result.status = LpStatus::Unbounded;
            result.objective = std::numeric_limits<double>::infinity();
        } else {
            result.status = LpStatus::Optimal;
            result.objective = d_[m_][n_ + 1];
        }
        return result;
    }

private:
    enum class Outcome { Done, Unbounded, Limit };

    static bool better(double v1, long id1, double v2, long id2) {
        return v1 < v2 || (v1 == v2 && id1 < id2);
    }

    LpResult& limit(LpResult& r) {
        r.status = LpStatus::IterationLimit;
        return r;
    }

    void pivot(std::size_t r, std::size_t s) {
        const double inv = 1.0 / d_[r][s];
        for (std::size_t i = 0; i < m_ + 2; ++i) {
            if (i == r || std::abs(d_[i][s]) <= kEps) continue;
            const double factor = d_[i][s] * inv;
            for (std::size_t j = 0; j < n_ + 2; ++j) d_[i][j] -= d_[r][j] * factor;
            d_[i][s] = d_[r][s] * factor;
        }
        for (std::size_t j = 0; j < n_ + 2; ++j)
            if (j != s) d_[r][j] *= inv;
        for (std::size_t i = 0; i < m_ + 2; ++i)
            if (i != r) d_[i][s] *= -inv;
        d_[r][s] = inv;
        std::swap(basis_[r], nonbasis_[s]);
    }

    Outcome run(int phase) {
        const std::size_t x = m_ + static_cast<std::size_t>(phase) - 1;
        for (;;) {
            std::size_t s = n_ + 1;
            for (std::size_t j = 0; j <= n_; ++j) {
                if (nonbasis_[j] == -phase) continue;
                if (s == n_ + 1 || better(d_[x][j], nonbasis_[j], d_[x][s], nonbasis_[s])) s = j;
            }
            if (s == n_ + 1 || d_[x][s] >= -kEps) return Outcome::Done;
            std::size_t r = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (d_[i][s] <= kEps) continue;
                if (r == m_) { r = i; continue; }
                const double ratio_i = d_[i][n_ + 1] / d_[i][s];
                const double ratio_r = d_[r][n_ + 1] / d_[r][s];
                if (ratio_i < ratio_r || (ratio_i == ratio_r && basis_[i] < basis_[r])) r = i;
            }
            if (r == m_) return Outcome::Unbounded;
            if (pivots_left_ == 0) return Outcome::Limit;
            --pivots_left_;
            pivot(r, s);
        }
    }

    std::size_t m_, n_;
    std::vector<long> nonbasis_, basis_;
    std::vector<std::vector<double>> d_;
    std::size_t pivots_left_ = 0;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c, std::size_t max_pivots) {
    if (a.size() != b.size()) throw ContractViolation("solve_lp: A and b disagree on row count");
    return Tableau(a, b, c).solve(max_pivots);
}

}  // namespace iwboost
