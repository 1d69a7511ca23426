#ifndef VOLNOTIFY_LP_HPP
#define VOLNOTIFY_LP_HPP

#include <limits>
#include <utility>
#include <vector>

namespace volnotify {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// maximize  c'x  subject to  A x <= b,  lower <= x <= upper.
///
/// Rows are stored sparsely. Lower bounds must be finite; upper bounds may be
/// +infinity.
class LpProblem {
public:
    struct Term {
        int var;
        double coef;
    };
    struct Row {
        std::vector<Term> terms;
        double rhs;
    };

    /// Returns the new variable's index.
    int add_variable(double objective, double lower = 0.0, double upper = kInfinity);
    /// sum(terms) <= rhs. Returns the row index.
    int add_constraint(std::vector<Term> terms, double rhs);

    int num_variables() const { return static_cast<int>(objective_.size()); }
    int num_constraints() const { return static_cast<int>(rows_.size()); }

    const std::vector<double>& objective() const { return objective_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    const std::vector<Row>& rows() const { return rows_; }

    /// Objective value at x.
    double evaluate(const std::vector<double>& x) const;
    /// Largest violation of any row or bound at x (0 if x is feasible).
    double max_violation(const std::vector<double>& x) const;

private:
    std::vector<double> objective_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<Row> rows_;
};

struct LpSolution {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
};

/// Solves the problem with a dense bounded-variable primal simplex (two
/// phases when the origin shift leaves a negative right-hand side).
/// Deterministic for identical input.
///
/// Throws InfeasibleError, UnboundedError, or SolverError on iteration limit
/// or loss of accuracy.
LpSolution solve_lp(const LpProblem& problem);

} // namespace volnotify

#endif // VOLNOTIFY_LP_HPP
