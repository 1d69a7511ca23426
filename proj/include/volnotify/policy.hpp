#ifndef VOLNOTIFY_POLICY_HPP
#define VOLNOTIFY_POLICY_HPP

#include <memory>
#include <string>
#include <vector>

#include "volnotify/belief.hpp"
#include "volnotify/fractional.hpp"
#include "volnotify/instance.hpp"
#include "volnotify/rng.hpp"

namespace volnotify {

/// Per-volunteer notification probabilities for the current arrival.
/// Empty when nothing arrived.
struct PolicyDecision {
    std::vector<double> probabilities;

    bool empty() const { return probabilities.empty(); }
};

/// What a policy may look at when an arrival of type s happens in period t.
/// Beliefs are only maintained for policies that ask for them.
struct DecisionContext {
    int t;
    int s;
    const BeliefState* beliefs = nullptr;
};

/// An online notification policy. Implementations are immutable once built
/// and may be shared between concurrently simulated episodes; any random
/// choices draw from the episode's stream passed to decide().
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string name() const = 0;
    virtual int volunteers() const = 0;
    virtual bool uses_beliefs() const { return false; }
    virtual PolicyDecision decide(const DecisionContext& ctx, Rng& rng) const = 0;
};

// ---------------------------------------------------------------------------
// Sparse notification (SN)

/// Offline tables of the SN policy.
struct SnPlan {
    FractionalSolution sparse;  // x~, every entry 0 or the matching x* entry
    Matrix value_to_go;         // V x (T + 1), column T is 0
    FractionalSolution reward;  // r[v][s][t]
};

/// Solves one backward DP per volunteer in priority order. For volunteer v
/// with rewards r[v][s][t] = p[v][s] prod_{u < v}(1 - x~[u][s][t] p[u][s]):
///     notify at (s, t) iff r + sum_{tau > t} g(tau - t) J[tau] >= J[t + 1],
/// and J[t] is the resulting expectation over arrivals (including none).
/// Reactivations after the horizon are worth nothing.
///
/// Throws PreconditionError if x_star is not feasible.
SnPlan sn_offline(const Instance& inst, const FractionalSolution& x_star);

/// Probabilities x~[., s, t].
PolicyDecision sn_decide(const SnPlan& plan, int t, int s);

// ---------------------------------------------------------------------------
// Scaled-down notification (SDN)

struct SdnPlan {
    Matrix beta; // V x T, probability that v is active at t under the policy
    double mdhr = 0.0;
    FractionalSolution x_star;
};

/// beta[v][0] = 1 and
///     beta[v][t] = 1 - sum_{t' < t} sum_s lambda[s][t'] x*[v][s][t'] / (2 - q) * (1 - G(t - t')).
/// Throws PreconditionError if x_star is infeasible or some beta falls below
/// 1 / (2 - q) by more than 1e-9.
SdnPlan sdn_offline(const Instance& inst, const FractionalSolution& x_star);

/// Probabilities x*[v][s][t] / ((2 - q) beta[v][t]).
PolicyDecision sdn_decide(const SdnPlan& plan, int t, int s);

// ---------------------------------------------------------------------------
// Heuristics and the follow-ex-ante baseline

struct HeuristicSpec {
    enum class Kind { notify_all, notify_random_n, notify_best_n, notify_upto_rho, rolling_horizon, follow_ex_ante };

    Kind kind = Kind::notify_all;
    int n = 1;                 // random_n, best_n
    double rho = 0.5;          // upto_rho
    int horizon = 0;           // rolling_horizon; 0 means round(mean of g)
    double threshold = 1.0;    // eligibility: belief of being active >= threshold
    FractionalSolution x_star; // follow_ex_ante
};

/// One decision of a heuristic. `inst` supplies the match probabilities and
/// arrival rates the heuristic plans with; `beliefs` the activity beliefs.
PolicyDecision heuristic_decide(const HeuristicSpec& spec, const BeliefState& beliefs, const Instance& inst,
                                int t, int s, Rng& rng);

/// Volunteers whose belief of being active is at least `threshold`.
std::vector<int> eligible_volunteers(const BeliefState& beliefs, double threshold);

/// Resolves a zero rolling horizon to the rounded mean inter-activity time.
int rolling_horizon_length(const HeuristicSpec& spec, const Instance& inst);

// ---------------------------------------------------------------------------
// Policy objects

std::unique_ptr<Policy> make_sn_policy(SnPlan plan);
std::unique_ptr<Policy> make_sdn_policy(SdnPlan plan);
/// `planning` is the instance the heuristic believes in; it may differ from
/// the instance the policy is simulated on.
std::unique_ptr<Policy> make_heuristic_policy(HeuristicSpec spec, Instance planning, std::string name);

} // namespace volnotify

#endif // VOLNOTIFY_POLICY_HPP
