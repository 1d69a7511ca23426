#include "volnotify/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "volnotify/errors.hpp"

namespace volnotify {

int LpProblem::add_variable(double objective, double lower, double upper) {
    if (!std::isfinite(lower)) throw ValidationError("variable lower bounds must be finite");
    if (!std::isfinite(objective)) throw ValidationError("objective coefficients must be finite");
    if (std::isnan(upper) || upper < lower) throw ValidationError("variable bounds must satisfy lower <= upper");
    objective_.push_back(objective);
    lower_.push_back(lower);
    upper_.push_back(upper);
    return num_variables() - 1;
}

int LpProblem::add_constraint(std::vector<Term> terms, double rhs) {
    if (!std::isfinite(rhs)) throw ValidationError("constraint right-hand sides must be finite");
    for (const auto& term : terms) {
        if (term.var < 0 || term.var >= num_variables()) {
            throw ValidationError("constraint references unknown variable " + std::to_string(term.var));
        }
        if (!std::isfinite(term.coef)) throw ValidationError("constraint coefficients must be finite");
    }
    rows_.push_back({std::move(terms), rhs});
    return num_constraints() - 1;
}

double LpProblem::evaluate(const std::vector<double>& x) const {
    double value = 0.0;
    for (std::size_t j = 0; j < objective_.size(); ++j) value += objective_[j] * x[j];
    return value;
}

double LpProblem::max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < objective_.size(); ++j) {
        worst = std::max(worst, lower_[j] - x[j]);
        worst = std::max(worst, x[j] - upper_[j]);
    }
    for (const auto& row : rows_) {
        double lhs = 0.0;
        for (const auto& term : row.terms) lhs += term.coef * x[static_cast<std::size_t>(term.var)];
        worst = std::max(worst, lhs - row.rhs);
    }
    return worst;
}

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kCostTolerance = 1e-9;
constexpr double kPhaseOneTolerance = 1e-9;
constexpr double kAccuracyTolerance = 1e-7;
constexpr int kDegenerateRunBeforeBland = 50;

// Dense tableau over shifted variables x' = x - lower, with one slack per row
// and one artificial per row whose shifted right-hand side is negative.
class BoundedSimplex {
public:
    explicit BoundedSimplex(const LpProblem& problem)
        : n_(problem.num_variables()), m_(problem.num_constraints()) {
        std::vector<double> shifted_rhs(static_cast<std::size_t>(m_));
        std::vector<int> artificial_of_row(static_cast<std::size_t>(m_), -1);
        int artificials = 0;
        for (int i = 0; i < m_; ++i) {
            const auto& row = problem.rows()[static_cast<std::size_t>(i)];
            double rhs = row.rhs;
            for (const auto& term : row.terms) rhs -= term.coef * problem.lower()[static_cast<std::size_t>(term.var)];
            shifted_rhs[static_cast<std::size_t>(i)] = rhs;
            if (rhs < 0.0) {
                artificial_of_row[static_cast<std::size_t>(i)] = n_ + m_ + artificials++;
                artificial_rows_.push_back(i);
            }
        }
        cols_ = n_ + m_ + artificials;
        first_artificial_ = n_ + m_;

        range_.assign(static_cast<std::size_t>(cols_), kInfinity);
        for (int j = 0; j < n_; ++j) {
            range_[static_cast<std::size_t>(j)] =
                problem.upper()[static_cast<std::size_t>(j)] - problem.lower()[static_cast<std::size_t>(j)];
        }
        at_upper_.assign(static_cast<std::size_t>(cols_), false);
        basic_row_.assign(static_cast<std::size_t>(cols_), -1);
        basis_.assign(static_cast<std::size_t>(m_), -1);
        x_basic_.assign(static_cast<std::size_t>(m_), 0.0);
        tableau_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(cols_), 0.0);

        for (int i = 0; i < m_; ++i) {
            const auto& row = problem.rows()[static_cast<std::size_t>(i)];
            const int art = artificial_of_row[static_cast<std::size_t>(i)];
            const double sign = art >= 0 ? -1.0 : 1.0;
            for (const auto& term : row.terms) at(i, term.var) += sign * term.coef;
            at(i, n_ + i) = sign;
            int basic = n_ + i;
            if (art >= 0) {
                at(i, art) = 1.0;
                basic = art;
            }
            basis_[static_cast<std::size_t>(i)] = basic;
            basic_row_[static_cast<std::size_t>(basic)] = i;
            x_basic_[static_cast<std::size_t>(i)] = sign * shifted_rhs[static_cast<std::size_t>(i)];
        }
        iteration_limit_ = 200 * (m_ + cols_) + 1000;
    }

    LpSolution solve(const LpProblem& problem) {
        if (cols_ > first_artificial_) {
            std::vector<double> phase_one(static_cast<std::size_t>(cols_), 0.0);
            for (int j = first_artificial_; j < cols_; ++j) phase_one[static_cast<std::size_t>(j)] = -1.0;
            iterate(phase_one, /*phase_one=*/true);
            double infeasibility = 0.0;
            int witness = -1;
            for (int i = 0; i < m_; ++i) {
                if (basis_[static_cast<std::size_t>(i)] >= first_artificial_ &&
                    x_basic_[static_cast<std::size_t>(i)] > infeasibility) {
                    infeasibility = x_basic_[static_cast<std::size_t>(i)];
                    witness = artificial_row(basis_[static_cast<std::size_t>(i)]);
                }
            }
            if (infeasibility > kPhaseOneTolerance) {
                throw InfeasibleError("linear program is infeasible (row " + std::to_string(witness) +
                                          " cannot be satisfied)",
                                      witness);
            }
            // Pin artificials at zero; any still basic leave on the next degenerate pivot.
            for (int j = first_artificial_; j < cols_; ++j) {
                range_[static_cast<std::size_t>(j)] = 0.0;
                at_upper_[static_cast<std::size_t>(j)] = false;
            }
        }

        std::vector<double> cost(static_cast<std::size_t>(cols_), 0.0);
        std::copy(problem.objective().begin(), problem.objective().end(), cost.begin());
        iterate(cost, /*phase_one=*/false);

        LpSolution solution;
        solution.x.resize(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            double shifted = 0.0;
            if (basic_row_[uj] >= 0) {
                shifted = x_basic_[static_cast<std::size_t>(basic_row_[uj])];
            } else if (at_upper_[uj]) {
                shifted = range_[uj];
            }
            const double value = problem.lower()[uj] + shifted;
            solution.x[uj] = std::clamp(value, problem.lower()[uj], problem.upper()[uj]);
        }
        solution.value = problem.evaluate(solution.x);
        solution.iterations = iterations_;
        const double violation = problem.max_violation(solution.x);
        if (violation > kAccuracyTolerance) {
            throw SolverError("simplex lost accuracy: constraint violation " + std::to_string(violation));
        }
        return solution;
    }

private:
    double& at(int i, int j) {
        return tableau_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)];
    }
    double at(int i, int j) const {
        return tableau_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)];
    }

    int artificial_row(int col) const {
        return artificial_rows_[static_cast<std::size_t>(col - first_artificial_)];
    }

    void iterate(const std::vector<double>& cost, bool phase_one) {
        // Reduced costs d_j = c_j - c_B B^{-1} A_j.
        std::vector<double> reduced(cost);
        for (int i = 0; i < m_; ++i) {
            const double cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
            if (cb == 0.0) continue;
            for (int j = 0; j < cols_; ++j) reduced[static_cast<std::size_t>(j)] -= cb * at(i, j);
        }

        int degenerate_run = 0;
        std::vector<double> pivot_row(static_cast<std::size_t>(cols_));
        for (;;) {
            if (++iterations_ > iteration_limit_) {
                throw SolverError("simplex iteration limit exceeded");
            }
            const bool bland = degenerate_run >= kDegenerateRunBeforeBland;

            int entering = -1;
            double best = 0.0;
            for (int j = 0; j < cols_; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                if (basic_row_[uj] >= 0 || range_[uj] <= 0.0) continue;
                const double d = reduced[uj];
                const double gain = at_upper_[uj] ? -d : d;
                if (gain <= kCostTolerance) continue;
                if (bland) {
                    entering = j;
                    break;
                }
                if (gain > best) {
                    best = gain;
                    entering = j;
                }
            }
            if (entering < 0) return;

            const auto ue = static_cast<std::size_t>(entering);
            const double dir = at_upper_[ue] ? -1.0 : 1.0;

            // Ratio test. A basic variable moves by -theta * dir * T[i][entering].
            double theta = range_[ue];
            int leave_row = -1;
            bool leave_to_upper = false;
            double leave_alpha = 0.0;
            for (int i = 0; i < m_; ++i) {
                const double alpha = dir * at(i, entering);
                const auto ui = static_cast<std::size_t>(i);
                const auto basic = static_cast<std::size_t>(basis_[ui]);
                double limit;
                bool to_upper;
                if (alpha > kPivotTolerance) {
                    limit = std::max(0.0, x_basic_[ui]) / alpha;
                    to_upper = false;
                } else if (alpha < -kPivotTolerance && std::isfinite(range_[basic])) {
                    limit = std::max(0.0, range_[basic] - x_basic_[ui]) / -alpha;
                    to_upper = true;
                } else {
                    continue;
                }
                bool take = false;
                if (leave_row < 0) {
                    take = limit <= theta;
                } else if (limit < theta - 1e-12) {
                    take = true;
                } else if (limit <= theta + 1e-12) {
                    take = bland ? basis_[ui] < basis_[static_cast<std::size_t>(leave_row)]
                                 : std::abs(alpha) > std::abs(leave_alpha);
                }
                if (take) {
                    theta = std::min(theta, limit);
                    leave_row = i;
                    leave_to_upper = to_upper;
                    leave_alpha = alpha;
                }
            }

            if (leave_row < 0 && !std::isfinite(theta)) {
                if (phase_one) throw SolverError("phase one became unbounded");
                throw UnboundedError("linear program is unbounded");
            }
            degenerate_run = theta <= 1e-12 ? degenerate_run + 1 : 0;

            for (int i = 0; i < m_; ++i) {
                x_basic_[static_cast<std::size_t>(i)] -= theta * dir * at(i, entering);
            }

            if (leave_row < 0) {
                // Entering variable hits its own opposite bound.
                at_upper_[ue] = !at_upper_[ue];
                continue;
            }

            const auto ur = static_cast<std::size_t>(leave_row);
            const int leaving = basis_[ur];
            const auto ul = static_cast<std::size_t>(leaving);
            const double entering_value = dir > 0.0 ? theta : range_[ue] - theta;

            pivot(leave_row, entering, reduced, pivot_row);

            basic_row_[ul] = -1;
            at_upper_[ul] = leave_to_upper;
            basis_[ur] = entering;
            basic_row_[ue] = leave_row;
            at_upper_[ue] = false;
            x_basic_[ur] = entering_value;
        }
    }

    void pivot(int r, int q, std::vector<double>& reduced, std::vector<double>& pivot_row) {
        const double p = at(r, q);
        for (int j = 0; j < cols_; ++j) {
            pivot_row[static_cast<std::size_t>(j)] = at(r, j) / p;
            at(r, j) = pivot_row[static_cast<std::size_t>(j)];
        }
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double factor = at(i, q);
            if (factor == 0.0) continue;
            double* row = &tableau_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_)];
            for (int j = 0; j < cols_; ++j) row[j] -= factor * pivot_row[static_cast<std::size_t>(j)];
            row[q] = 0.0;
        }
        const double dq = reduced[static_cast<std::size_t>(q)];
        if (dq != 0.0) {
            for (int j = 0; j < cols_; ++j) reduced[static_cast<std::size_t>(j)] -= dq * pivot_row[static_cast<std::size_t>(j)];
        }
        reduced[static_cast<std::size_t>(q)] = 0.0;
    }

    int n_;
    int m_;
    int cols_ = 0;
    int first_artificial_ = 0;
    int iterations_ = 0;
    int iteration_limit_ = 0;
    std::vector<int> artificial_rows_;
    std::vector<double> range_;
    std::vector<bool> at_upper_;
    std::vector<int> basic_row_;
    std::vector<int> basis_;
    std::vector<double> x_basic_;
    std::vector<double> tableau_;
};

} // namespace

LpSolution solve_lp(const LpProblem& problem) {
    BoundedSimplex simplex(problem);
    return simplex.solve(problem);
}

} // namespace volnotify
