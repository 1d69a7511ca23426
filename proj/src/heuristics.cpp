#include <algorithm>
#include <cmath>
#include <numeric>

#include "volnotify/errors.hpp"
#include "volnotify/exante.hpp"
#include "volnotify/policy.hpp"

namespace volnotify {

namespace {

// Belief comparisons tolerate filter rounding (e.g. 1 - 1e-16 counts as 1).
constexpr double kBeliefSlack = 1e-12;

// Volunteers sorted by p[v][s] descending; ties keep the lower index first.
std::vector<int> by_match_descending(const Instance& inst, int s, std::vector<int> volunteers) {
    std::stable_sort(volunteers.begin(), volunteers.end(),
                     [&](int a, int b) { return inst.match(a, s) > inst.match(b, s); });
    return volunteers;
}

// The benchmark program restricted to `members`, periods [t, t + H), with the
// period-t arrival known to be of type s and every member treated as active.
std::vector<double> rolling_horizon_probabilities(const Instance& inst, const std::vector<int>& members, int t, int s,
                                                  int window) {
    std::vector<double> probs(static_cast<std::size_t>(inst.volunteers()), 0.0);
    if (members.empty()) return probs;
    const int last = std::min(t + window, inst.horizon());
    const int periods = last - t;
    const int ns = inst.task_types();

    Matrix arrivals(periods, ns, 0.0);
    arrivals(0, s) = 1.0;
    for (int k = 1; k < periods; ++k) {
        for (int j = 0; j < ns; ++j) arrivals(k, j) = inst.arrival(j, t + k);
    }
    Matrix match(static_cast<int>(members.size()), ns, 0.0);
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (int j = 0; j < ns; ++j) match(static_cast<int>(i), j) = inst.match(members[i], j);
    }
    const Instance window_instance(std::move(arrivals), std::move(match), inst.distribution());
    const BenchmarkResult bench = benchmark_lp(window_instance);
    for (std::size_t i = 0; i < members.size(); ++i) {
        probs[static_cast<std::size_t>(members[i])] = std::clamp(bench.x_lp(static_cast<int>(i), s, 0), 0.0, 1.0);
    }
    return probs;
}

} // namespace

std::vector<int> eligible_volunteers(const BeliefState& beliefs, double threshold) {
    std::vector<int> eligible;
    for (int v = 0; v < beliefs.volunteers(); ++v) {
        if (beliefs.active(v) >= threshold - kBeliefSlack) eligible.push_back(v);
    }
    return eligible;
}

int rolling_horizon_length(const HeuristicSpec& spec, const Instance& inst) {
    if (spec.horizon > 0) return spec.horizon;
    return std::max(1, static_cast<int>(std::lround(inst.distribution().mean())));
}

PolicyDecision heuristic_decide(const HeuristicSpec& spec, const BeliefState& beliefs, const Instance& inst, int t,
                                int s, Rng& rng) {
    using Kind = HeuristicSpec::Kind;
    const int nv = inst.volunteers();
    if (t < 0 || t >= inst.horizon() || s < 0 || s >= inst.task_types()) {
        throw ValidationError("heuristic decision index out of range");
    }
    if (beliefs.volunteers() != nv) throw DimensionError("belief state does not match the instance");

    PolicyDecision decision;
    decision.probabilities.assign(static_cast<std::size_t>(nv), 0.0);
    auto notify = [&](int v) { decision.probabilities[static_cast<std::size_t>(v)] = 1.0; };

    switch (spec.kind) {
        case Kind::notify_all: {
            std::fill(decision.probabilities.begin(), decision.probabilities.end(), 1.0);
            break;
        }
        case Kind::notify_random_n: {
            if (spec.n < 0) throw ValidationError("notify-random-n needs n >= 0");
            auto pool = eligible_volunteers(beliefs, spec.threshold);
            const auto take = std::min(pool.size(), static_cast<std::size_t>(spec.n));
            // Partial Fisher-Yates: the first `take` slots become a uniform sample.
            for (std::size_t i = 0; i < take; ++i) {
                const std::size_t j = i + rng.below(pool.size() - i);
                std::swap(pool[i], pool[j]);
                notify(pool[i]);
            }
            break;
        }
        case Kind::notify_best_n: {
            if (spec.n < 0) throw ValidationError("notify-best-n needs n >= 0");
            const auto ranked = by_match_descending(inst, s, eligible_volunteers(beliefs, spec.threshold));
            const auto take = std::min(ranked.size(), static_cast<std::size_t>(spec.n));
            for (std::size_t i = 0; i < take; ++i) notify(ranked[i]);
            break;
        }
        case Kind::notify_upto_rho: {
            std::vector<int> all(static_cast<std::size_t>(nv));
            std::iota(all.begin(), all.end(), 0);
            double miss = 1.0;
            for (int v : by_match_descending(inst, s, all)) {
                if (1.0 - miss >= spec.rho) break;
                const double respond = inst.match(v, s) * beliefs.active(v);
                if (respond <= 0.0) continue;
                notify(v);
                miss *= 1.0 - respond;
            }
            break;
        }
        case Kind::rolling_horizon: {
            if (spec.horizon < 0) throw ValidationError("rolling horizon needs H >= 1");
            const int window = rolling_horizon_length(spec, inst);
            const auto members = eligible_volunteers(beliefs, spec.threshold);
            decision.probabilities = rolling_horizon_probabilities(inst, members, t, s, window);
            break;
        }
        case Kind::follow_ex_ante: {
            require_shape(inst, spec.x_star);
            for (int v = 0; v < nv; ++v) {
                decision.probabilities[static_cast<std::size_t>(v)] = std::clamp(spec.x_star(v, s, t), 0.0, 1.0);
            }
            break;
        }
    }
    return decision;
}

} // namespace volnotify
