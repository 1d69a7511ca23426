#ifndef VOLNOTIFY_EXANTE_HPP
#define VOLNOTIFY_EXANTE_HPP

#include <array>
#include <string>

#include "volnotify/fractional.hpp"
#include "volnotify/instance.hpp"

namespace volnotify {

inline constexpr int kDefaultFrankWolfeSteps = 100;

struct BenchmarkResult {
    FractionalSolution x_lp;
    double lp_value = 0.0;
};

/// Solves the linearized benchmark program
///     max sum lambda[s][t] y[s][t]
///     s.t. y[s][t] <= sum_v x[v][s][t] p[v][s],  0 <= y <= 1,  0 <= x <= 1,
///          inter-activity constraint for every (v, t).
/// Variables exist only for (s, t) with lambda > 0 and (v, s) with p > 0.
BenchmarkResult benchmark_lp(const Instance& inst);

/// argmax over the feasible set of sum weights[v][s][t] * x[v][s][t].
///
/// The constraints couple entries of one volunteer only, so this solves one
/// small LP per volunteer. Entries with nonpositive weight or zero arrival
/// rate are left at 0.
FractionalSolution maximize_linear(const Instance& inst, const FractionalSolution& weights);

/// The single-volunteer LP used by maximize_linear and by the sequential
/// candidate. Writes volunteer v's slice of `out`.
void maximize_linear_for_volunteer(const Instance& inst, const FractionalSolution& weights, int v,
                                   FractionalSolution& out);

/// Frank-Wolfe with step 1/m from x = 0:
///     y_i = argmax_{x feasible} <x, grad f(x_{i-1})>,  x_i = x_{i-1} + y_i / m.
FractionalSolution frank_wolfe_aa(const Instance& inst, int steps = kDefaultFrankWolfeSteps);

/// Volunteers in priority order each maximize their own contribution given
/// the already fixed solutions of higher-priority volunteers.
FractionalSolution sequential_sq(const Instance& inst);

enum class CandidateTag { lp, aa, sq };

std::string to_string(CandidateTag tag);

struct ExAnteSelection {
    FractionalSolution x;
    CandidateTag tag = CandidateTag::lp;
    double f_value = 0.0;

    BenchmarkResult benchmark;
    FractionalSolution x_aa;
    FractionalSolution x_sq;
    std::array<double, 3> candidate_f{}; // indexed by CandidateTag
};

/// Computes the three candidates and keeps the one with the largest f.
/// Ties (within 1e-12) go to the earlier of LP, AA, SQ.
ExAnteSelection select_ex_ante(const Instance& inst, int steps = kDefaultFrankWolfeSteps);

} // namespace volnotify

#endif // VOLNOTIFY_EXANTE_HPP
