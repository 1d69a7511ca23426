#ifndef VOLNOTIFY_SIM_HPP
#define VOLNOTIFY_SIM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "volnotify/instance.hpp"
#include "volnotify/policy.hpp"
#include "volnotify/rng.hpp"

namespace volnotify {

struct PeriodRecord {
    int arrival = -1; // task type, or -1 for no arrival
    std::vector<int> notified;
    std::vector<int> responders;
    int completed_by = -1; // lowest-index responder, or -1
};

struct EpisodeLog {
    int completed = 0;
    std::vector<PeriodRecord> periods;

    bool operator==(const EpisodeLog&) const = default;
};

inline bool operator==(const PeriodRecord& a, const PeriodRecord& b) {
    return a.arrival == b.arrival && a.notified == b.notified && a.responders == b.responders &&
           a.completed_by == b.completed_by;
}

/// Plays one episode of the volunteer state process against `policy`.
///
/// Each period t runs, in order:
///   1. volunteers whose inactivity ends at t become active;
///   2. one uniform draw picks the arrival (type s w.p. lambda[s][t], else none);
///   3. on an arrival, the policy decides and one notification coin is drawn
///      per volunteer in ascending index order;
///   4. every notified active volunteer draws a response coin (ascending), then
///      every notified active volunteer draws Z (ascending) and stays inactive
///      until t + Z; notified inactive volunteers are unaffected;
///   5. the task is completed iff someone responded, credited to the lowest index;
///   6. the policy's beliefs absorb the period's notifications.
/// All volunteers start active.
EpisodeLog run_episode(const Instance& inst, const Policy& policy, Rng& rng);

struct SimStats {
    std::int64_t episodes = 0;
    std::uint64_t seed = 0;
    double mean_completed = 0.0;
    double std_error = 0.0;
    std::vector<double> attribution;           // mean completions credited to each volunteer
    std::vector<double> attribution_std_error;
    std::optional<double> lp_value;
    std::optional<double> ratio_to_lp; // empty when no LP value or LP value is 0

    // Raw moments, kept so that batches can be pooled exactly.
    double completed_sum = 0.0;
    double completed_sum_sq = 0.0;
    std::vector<double> credit_sum;
    std::vector<double> credit_sum_sq;
};

/// Pools disjoint batches of one run (same seed, same LP value).
SimStats pool(const std::vector<SimStats>& batches);

/// "policy,instance_id,episodes,seed,mean_completed,std_error,lp_value,ratio"
std::string sim_csv_header();
/// Quotes a CSV field if it contains a comma, quote or newline.
std::string csv_field(const std::string& text);

/// One CSV row; lp_value and ratio are empty when undefined.
std::string sim_csv_row(const SimStats& stats, const std::string& policy, const std::string& instance_id);

/// Runs `episodes` episodes; episode k uses Rng::substream(seed, k).
SimStats simulate(const Instance& inst, const Policy& policy, std::int64_t episodes, std::uint64_t seed,
                  std::optional<double> lp_value = std::nullopt);

/// Same as simulate() restricted to episodes [first, first + count), so that
/// batches of one run reproduce exactly the episodes of the full run.
SimStats simulate_range(const Instance& inst, const Policy& policy, std::int64_t first, std::int64_t count,
                        std::uint64_t seed, std::optional<double> lp_value = std::nullopt);

/// Fraction of episodes in which v is active when period t's arrival is drawn.
Matrix empirical_active_prob(const Instance& inst, const Policy& policy, std::int64_t episodes, std::uint64_t seed);

/// Expected completions of the optimal online policy that observes every
/// volunteer's state, by backward induction over (period, joint state) with
/// maximization over all subsets of active volunteers. Inactivity clocks are
/// capped at T, so the state space has min(tau_max, T)^V points; more than 1e6
/// throws CapacityError.
double brute_force_optimal_online(const Instance& inst);

inline constexpr std::int64_t kMaxOracleStates = 1'000'000;

} // namespace volnotify

#endif // VOLNOTIFY_SIM_HPP
