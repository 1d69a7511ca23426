#include <algorithm>
#include <vector>

#include "volnotify/errors.hpp"
#include "volnotify/policy.hpp"

namespace volnotify {

SnPlan sn_offline(const Instance& inst, const FractionalSolution& x_star) {
    const auto report = check_feasible(inst, x_star);
    if (!report.feasible()) {
        throw PreconditionError("SN plan needs a feasible ex ante solution: " + report.describe());
    }
    const int nv = inst.volunteers();
    const int ns = inst.task_types();
    const int nt = inst.horizon();
    const auto& dist = inst.distribution();

    // g(k) for k = 1..T-1, looked up once.
    std::vector<double> g(static_cast<std::size_t>(nt), 0.0);
    for (int k = 1; k < nt; ++k) g[static_cast<std::size_t>(k)] = dist.pmf(k);

    SnPlan plan{FractionalSolution::zeros(inst), Matrix(nv, nt + 1, 0.0), FractionalSolution::zeros(inst)};
    // miss[s][t] = prod_{u < v} (1 - x~[u][s][t] p[u][s])
    Matrix miss(ns, nt, 1.0);

    for (int v = 0; v < nv; ++v) {
        for (int s = 0; s < ns; ++s) {
            for (int t = 0; t < nt; ++t) plan.reward(v, s, t) = inst.match(v, s) * miss(s, t);
        }

        plan.value_to_go(v, nt) = 0.0;
        for (int t = nt - 1; t >= 0; --t) {
            double future = 0.0;
            for (int tau = t + 1; tau < nt; ++tau) {
                future += g[static_cast<std::size_t>(tau - t)] * plan.value_to_go(v, tau);
            }
            const double wait = plan.value_to_go(v, t + 1);
            double value = inst.no_arrival(t) * wait;
            for (int s = 0; s < ns; ++s) {
                const double notify = plan.reward(v, s, t) + future;
                const double x = notify >= wait ? x_star(v, s, t) : 0.0;
                plan.sparse(v, s, t) = x;
                value += inst.arrival(s, t) * ((1.0 - x) * wait + x * notify);
            }
            plan.value_to_go(v, t) = value;
        }

        for (int s = 0; s < ns; ++s) {
            for (int t = 0; t < nt; ++t) miss(s, t) *= 1.0 - plan.sparse(v, s, t) * inst.match(v, s);
        }
    }
    return plan;
}

PolicyDecision sn_decide(const SnPlan& plan, int t, int s) {
    const auto& x = plan.sparse;
    if (t < 0 || t >= x.horizon() || s < 0 || s >= x.task_types()) {
        throw ValidationError("SN decision index out of range");
    }
    PolicyDecision decision;
    decision.probabilities.resize(static_cast<std::size_t>(x.volunteers()));
    for (int v = 0; v < x.volunteers(); ++v) {
        decision.probabilities[static_cast<std::size_t>(v)] = std::clamp(x(v, s, t), 0.0, 1.0);
    }
    return decision;
}

} // namespace volnotify
