#ifndef VOLNOTIFY_FRACTIONAL_HPP
#define VOLNOTIFY_FRACTIONAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "volnotify/instance.hpp"

namespace volnotify {

/// V x S x T tensor of notification probabilities x[v][s][t].
class FractionalSolution {
public:
    FractionalSolution() = default;
    FractionalSolution(int volunteers, int task_types, int horizon, double fill = 0.0)
        : v_(volunteers), s_(task_types), t_(horizon),
          data_(static_cast<std::size_t>(volunteers) * static_cast<std::size_t>(task_types) *
                    static_cast<std::size_t>(horizon),
                fill) {}

    /// Zero tensor shaped for the instance.
    static FractionalSolution zeros(const Instance& inst) {
        return {inst.volunteers(), inst.task_types(), inst.horizon()};
    }

    int volunteers() const { return v_; }
    int task_types() const { return s_; }
    int horizon() const { return t_; }

    double& operator()(int v, int s, int t) { return data_[index(v, s, t)]; }
    double operator()(int v, int s, int t) const { return data_[index(v, s, t)]; }

    const std::vector<double>& data() const { return data_; }

    bool matches(const Instance& inst) const {
        return v_ == inst.volunteers() && s_ == inst.task_types() && t_ == inst.horizon();
    }

    bool operator==(const FractionalSolution&) const = default;

private:
    std::size_t index(int v, int s, int t) const {
        return (static_cast<std::size_t>(v) * static_cast<std::size_t>(s_) + static_cast<std::size_t>(s)) *
                   static_cast<std::size_t>(t_) +
               static_cast<std::size_t>(t);
    }

    int v_ = 0;
    int s_ = 0;
    int t_ = 0;
    std::vector<double> data_;
};

/// Throws DimensionError unless x is shaped V x S x T for the instance.
void require_shape(const Instance& inst, const FractionalSolution& x);

/// Absolute tolerance used when declaring a tensor feasible.
inline constexpr double kFeasibilityTolerance = 1e-7;

struct Violation {
    enum class Kind { range, capacity };
    Kind kind;
    int v;
    int s; // -1 for capacity violations
    int t;
    double value; // offending entry, or capacity left-hand side
};

struct FeasibilityReport {
    std::vector<Violation> violations;

    bool feasible() const { return violations.empty(); }
    std::string describe(std::size_t max_items = 5) const;
};

/// Checks the box constraints 0 <= x <= 1 and, for every (v, t), the expected
/// inter-activity constraint
///     sum_{tau <= t} sum_s lambda[s][tau] x[v][s][tau] (1 - G(t - tau)) <= 1.
FeasibilityReport check_feasible(const Instance& inst, const FractionalSolution& x,
                                 double tolerance = kFeasibilityTolerance);

/// Left-hand side of the inter-activity constraint for (v, t).
double capacity_lhs(const Instance& inst, const FractionalSolution& x, int v, int t);

/// Expected completions when every volunteer is always active and notified
/// independently with probability x:
///     f(x) = sum_t sum_s lambda[s][t] (1 - prod_v (1 - x[v][s][t] p[v][s])).
double evaluate_f(const Instance& inst, const FractionalSolution& x);

/// Contribution of volunteer v under index priority:
///     f_v(x) = sum_t sum_s lambda[s][t] prod_{u < v}(1 - p[u][s] x[u][s][t]) p[v][s] x[v][s][t].
/// The f_v sum to f.
double evaluate_fv(const Instance& inst, const FractionalSolution& x, int v);

/// Gradient of f: lambda[s][t] p[v][s] prod_{u != v}(1 - x[u][s][t] p[u][s]).
FractionalSolution gradient_f(const Instance& inst, const FractionalSolution& x);

/// Piecewise-linear benchmark objective sum_t sum_s lambda min{sum_v x p, 1}.
double evaluate_benchmark_objective(const Instance& inst, const FractionalSolution& x);

} // namespace volnotify

#endif // VOLNOTIFY_FRACTIONAL_HPP
