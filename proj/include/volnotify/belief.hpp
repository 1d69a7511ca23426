#ifndef VOLNOTIFY_BELIEF_HPP
#define VOLNOTIFY_BELIEF_HPP

#include <vector>

#include "volnotify/instance.hpp"

namespace volnotify {

/// Exact marginal activity beliefs for each volunteer given only the
/// platform's own notification history.
///
/// Each volunteer's mass is split into "active" and one bucket per period in
/// which they were notified while (possibly) active. A bucket tagged tau returns
/// to active at t with the discrete hazard g(t - tau) / (1 - G(t - tau - 1)).
class BeliefState {
public:
    struct InactiveMass {
        int notified_at;
        double mass;

        bool operator==(const InactiveMass&) const = default;
    };

    explicit BeliefState(int volunteers);

    int volunteers() const { return static_cast<int>(active_.size()); }

    /// Probability that volunteer v is active.
    double active(int v) const { return active_[static_cast<std::size_t>(v)]; }
    const std::vector<InactiveMass>& inactive(int v) const { return inactive_[static_cast<std::size_t>(v)]; }

    /// Sum of all mass for v; 1 up to rounding.
    double total_mass(int v) const;

    /// Advances beliefs to the start of period t (t >= 1, zero-based).
    void step(const InterActivityDistribution& dist, int t);

    /// Records a notification of v in period t. Only the active mass moves;
    /// existing inactive buckets keep their clocks.
    void notify(int v, int t);

    bool operator==(const BeliefState&) const = default;

private:
    std::vector<double> active_;
    std::vector<std::vector<InactiveMass>> inactive_;
};

BeliefState belief_step(BeliefState state, const Instance& inst, int t);
BeliefState belief_notify(BeliefState state, int v, int t);

} // namespace volnotify

#endif // VOLNOTIFY_BELIEF_HPP
