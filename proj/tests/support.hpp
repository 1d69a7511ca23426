// Shared helpers for the test programs: instance corpora and independent
// reference computations that do not reuse library code paths.
#ifndef VOLNOTIFY_TEST_SUPPORT_HPP
#define VOLNOTIFY_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "volnotify/fractional.hpp"
#include "volnotify/generate.hpp"
#include "volnotify/instance.hpp"
#include "volnotify/rng.hpp"

namespace testsupport {

using namespace volnotify;

/// `count` random instances with V <= 5, S <= 4, T <= 10; the distribution
/// family cycles geometric, deterministic, tabulated.
inline std::vector<Instance> random_corpus(int count, std::uint64_t seed, int max_v = 5, int max_s = 4,
                                           int max_t = 10) {
    std::vector<Instance> out;
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        RandomInstanceOptions opt;
        opt.max_volunteers = max_v;
        opt.max_types = max_s;
        opt.max_horizon = max_t;
        opt.family = static_cast<InterActivityDistribution::Kind>(i % 3);
        out.push_back(random_instance(opt, rng));
    }
    return out;
}

/// Uniform random tensor in [0, 1] with the instance's shape.
inline FractionalSolution random_tensor(const Instance& inst, Rng& rng) {
    FractionalSolution x = FractionalSolution::zeros(inst);
    for (int v = 0; v < inst.volunteers(); ++v)
        for (int s = 0; s < inst.task_types(); ++s)
            for (int t = 0; t < inst.horizon(); ++t) x(v, s, t) = rng.uniform();
    return x;
}

/// f(x) by summing over all 2^V joint response outcomes.
inline double oracle_f(const Instance& inst, const FractionalSolution& x) {
    const int nv = inst.volunteers();
    double total = 0.0;
    for (int t = 0; t < inst.horizon(); ++t) {
        for (int s = 0; s < inst.task_types(); ++s) {
            double some = 0.0;
            for (unsigned mask = 1; mask < (1u << nv); ++mask) {
                double prob = 1.0;
                for (int v = 0; v < nv; ++v) {
                    const double r = x(v, s, t) * inst.match(v, s);
                    prob *= (mask >> v) & 1u ? r : 1.0 - r;
                }
                some += prob;
            }
            total += inst.arrival(s, t) * some;
        }
    }
    return total;
}

/// f_v(x): probability-weighted mass where v responds and nobody before v does.
inline double oracle_fv(const Instance& inst, const FractionalSolution& x, int v) {
    double total = 0.0;
    for (int t = 0; t < inst.horizon(); ++t) {
        for (int s = 0; s < inst.task_types(); ++s) {
            double first = inst.match(v, s) * x(v, s, t);
            for (int u = 0; u < v; ++u) first *= 1.0 - inst.match(u, s) * x(u, s, t);
            total += inst.arrival(s, t) * first;
        }
    }
    return total;
}

/// Probability that v is active at each period when notified with
/// probability x[v][s][t] on each type-s arrival, independently of its state:
/// a[t] = 1 - sum_{t' < t} a[t'] pi[t'] P{Z > t - t'} (renewal at the last
/// effective notification).
inline std::vector<double> oracle_active_prob(const Instance& inst, const FractionalSolution& x, int v) {
    const int nt = inst.horizon();
    std::vector<double> pi(static_cast<std::size_t>(nt), 0.0), a(static_cast<std::size_t>(nt), 1.0);
    for (int t = 0; t < nt; ++t)
        for (int s = 0; s < inst.task_types(); ++s) pi[t] += inst.arrival(s, t) * x(v, s, t);
    for (int t = 1; t < nt; ++t) {
        double inactive = 0.0;
        for (int tp = 0; tp < t; ++tp) {
            double tail = 1.0;
            for (int k = 1; k <= t - tp; ++k) tail -= inst.distribution().pmf(k);
            inactive += a[tp] * pi[tp] * std::max(0.0, tail);
        }
        a[t] = 1.0 - inactive;
    }
    return a;
}

/// Expected contribution of v under the non-adaptive notification tensor
/// `sparse` with priority-adjusted rewards r[v][s][t].
inline double oracle_contribution(const Instance& inst, const FractionalSolution& sparse,
                                  const FractionalSolution& reward, int v) {
    const auto a = oracle_active_prob(inst, sparse, v);
    double total = 0.0;
    for (int t = 0; t < inst.horizon(); ++t)
        for (int s = 0; s < inst.task_types(); ++s)
            total += a[t] * inst.arrival(s, t) * sparse(v, s, t) * reward(v, s, t);
    return total;
}

} // namespace testsupport

#endif
