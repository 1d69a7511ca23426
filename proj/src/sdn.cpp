#include <algorithm>
#include <sstream>

#include "volnotify/errors.hpp"
#include "volnotify/policy.hpp"

namespace volnotify {

namespace {
constexpr double kBetaFloorSlack = 1e-9;
}

SdnPlan sdn_offline(const Instance& inst, const FractionalSolution& x_star) {
    const auto report = check_feasible(inst, x_star);
    if (!report.feasible()) {
        throw PreconditionError("SDN plan needs a feasible ex ante solution: " + report.describe());
    }
    const int nv = inst.volunteers();
    const int nt = inst.horizon();
    const auto& dist = inst.distribution();
    const double q = dist.mdhr();
    const double scale = 1.0 / (2.0 - q);

    SdnPlan plan{Matrix(nv, nt, 1.0), q, x_star};
    for (int v = 0; v < nv; ++v) {
        for (int t = 1; t < nt; ++t) {
            double used = 0.0;
            for (int tp = 0; tp < t; ++tp) {
                const double remain = dist.survival(t - tp);
                if (remain <= 0.0) continue;
                for (int s = 0; s < inst.task_types(); ++s) {
                    used += inst.arrival(s, tp) * x_star(v, s, tp) * remain;
                }
            }
            const double beta = 1.0 - scale * used;
            if (beta < scale - kBetaFloorSlack) {
                std::ostringstream os;
                os << "activation probability beta[" << v + 1 << "," << t + 1 << "]=" << beta
                   << " is below 1/(2-q)=" << scale;
                throw PreconditionError(os.str());
            }
            plan.beta(v, t) = beta;
        }
    }
    return plan;
}

PolicyDecision sdn_decide(const SdnPlan& plan, int t, int s) {
    const auto& x = plan.x_star;
    if (t < 0 || t >= x.horizon() || s < 0 || s >= x.task_types()) {
        throw ValidationError("SDN decision index out of range");
    }
    PolicyDecision decision;
    decision.probabilities.resize(static_cast<std::size_t>(x.volunteers()));
    const double scale = 2.0 - plan.mdhr;
    for (int v = 0; v < x.volunteers(); ++v) {
        const double xv = x(v, s, t);
        const double prob = xv > 0.0 ? xv / (scale * plan.beta(v, t)) : 0.0;
        decision.probabilities[static_cast<std::size_t>(v)] = std::clamp(prob, 0.0, 1.0);
    }
    return decision;
}

} // namespace volnotify
