#include "volnotify/belief.hpp"

#include <algorithm>

#include "volnotify/errors.hpp"

namespace volnotify {

BeliefState::BeliefState(int volunteers)
    : active_(static_cast<std::size_t>(volunteers), 1.0), inactive_(static_cast<std::size_t>(volunteers)) {}

double BeliefState::total_mass(int v) const {
    double total = active(v);
    for (const auto& bucket : inactive(v)) total += bucket.mass;
    return total;
}

void BeliefState::step(const InterActivityDistribution& dist, int t) {
    if (t < 1) throw ValidationError("belief step needs a period after the first");
    for (std::size_t v = 0; v < active_.size(); ++v) {
        auto& buckets = inactive_[v];
        for (auto& bucket : buckets) {
            const int elapsed = t - bucket.notified_at;
            if (dist.survival(elapsed) <= 0.0) {
                active_[v] += bucket.mass;
                bucket.mass = 0.0;
                continue;
            }
            const double returning = dist.hazard(elapsed) * bucket.mass;
            active_[v] += returning;
            bucket.mass -= returning;
        }
        std::erase_if(buckets, [](const InactiveMass& b) { return b.mass <= 0.0; });
        active_[v] = std::min(active_[v], 1.0);
    }
}

void BeliefState::notify(int v, int t) {
    auto& a = active_[static_cast<std::size_t>(v)];
    if (a <= 0.0) return;
    inactive_[static_cast<std::size_t>(v)].push_back({t, a});
    a = 0.0;
}

BeliefState belief_step(BeliefState state, const Instance& inst, int t) {
    state.step(inst.distribution(), t);
    return state;
}

BeliefState belief_notify(BeliefState state, int v, int t) {
    if (v < 0 || v >= state.volunteers()) throw ValidationError("volunteer index out of range");
    state.notify(v, t);
    return state;
}

} // namespace volnotify
