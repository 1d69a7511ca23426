#include "volnotify/exante.hpp"

#include <vector>

#include "volnotify/errors.hpp"
#include "volnotify/lp.hpp"

namespace volnotify {

namespace {

constexpr double kTieTolerance = 1e-12;

// Adds, for volunteer v, one inter-activity row per period that has at least
// one variable:  sum_{tau <= t} sum_s lambda[s][tau] (1 - G(t - tau)) x[v][s][tau] <= 1.
// var_of(s, tau) returns the LP variable index or -1.
template <class VarOf>
void add_capacity_rows(LpProblem& lp, const Instance& inst, VarOf var_of) {
    const auto& dist = inst.distribution();
    for (int t = 0; t < inst.horizon(); ++t) {
        std::vector<LpProblem::Term> terms;
        for (int tau = 0; tau <= t; ++tau) {
            const double remain = dist.survival(t - tau);
            if (remain <= 0.0) continue;
            for (int s = 0; s < inst.task_types(); ++s) {
                const int var = var_of(s, tau);
                if (var < 0) continue;
                terms.push_back({var, inst.arrival(s, tau) * remain});
            }
        }
        if (!terms.empty()) lp.add_constraint(std::move(terms), 1.0);
    }
}

} // namespace

std::string to_string(CandidateTag tag) {
    switch (tag) {
        case CandidateTag::lp: return "LP";
        case CandidateTag::aa: return "AA";
        case CandidateTag::sq: return "SQ";
    }
    return "?";
}

BenchmarkResult benchmark_lp(const Instance& inst) {
    const int nv = inst.volunteers();
    const int ns = inst.task_types();
    const int nt = inst.horizon();

    LpProblem lp;
    std::vector<int> x_var(static_cast<std::size_t>(nv * ns * nt), -1);
    auto x_index = [&](int v, int s, int t) { return static_cast<std::size_t>((v * ns + s) * nt + t); };

    for (int t = 0; t < nt; ++t) {
        for (int s = 0; s < ns; ++s) {
            const double rate = inst.arrival(s, t);
            if (rate <= 0.0) continue;
            std::vector<LpProblem::Term> cover;
            for (int v = 0; v < nv; ++v) {
                const double p = inst.match(v, s);
                if (p <= 0.0) continue;
                const int var = lp.add_variable(0.0, 0.0, 1.0);
                x_var[x_index(v, s, t)] = var;
                cover.push_back({var, -p});
            }
            if (cover.empty()) continue;
            const int y = lp.add_variable(rate, 0.0, 1.0);
            cover.push_back({y, 1.0});
            lp.add_constraint(std::move(cover), 0.0);
        }
    }
    for (int v = 0; v < nv; ++v) {
        add_capacity_rows(lp, inst, [&](int s, int tau) { return x_var[x_index(v, s, tau)]; });
    }

    BenchmarkResult result{FractionalSolution::zeros(inst), 0.0};
    if (lp.num_variables() == 0) return result;

    const LpSolution sol = solve_lp(lp);
    for (int v = 0; v < nv; ++v) {
        for (int s = 0; s < ns; ++s) {
            for (int t = 0; t < nt; ++t) {
                const int var = x_var[x_index(v, s, t)];
                if (var >= 0) result.x_lp(v, s, t) = sol.x[static_cast<std::size_t>(var)];
            }
        }
    }
    result.lp_value = evaluate_benchmark_objective(inst, result.x_lp);
    return result;
}

void maximize_linear_for_volunteer(const Instance& inst, const FractionalSolution& weights, int v,
                                   FractionalSolution& out) {
    const int ns = inst.task_types();
    const int nt = inst.horizon();
    LpProblem lp;
    std::vector<int> var(static_cast<std::size_t>(ns * nt), -1);
    for (int s = 0; s < ns; ++s) {
        for (int t = 0; t < nt; ++t) {
            out(v, s, t) = 0.0;
            const double w = weights(v, s, t);
            if (w <= 0.0 || inst.arrival(s, t) <= 0.0) continue;
            var[static_cast<std::size_t>(s * nt + t)] = lp.add_variable(w, 0.0, 1.0);
        }
    }
    if (lp.num_variables() == 0) return;
    add_capacity_rows(lp, inst, [&](int s, int tau) { return var[static_cast<std::size_t>(s * nt + tau)]; });
    const LpSolution sol = solve_lp(lp);
    for (int s = 0; s < ns; ++s) {
        for (int t = 0; t < nt; ++t) {
            const int j = var[static_cast<std::size_t>(s * nt + t)];
            if (j >= 0) out(v, s, t) = sol.x[static_cast<std::size_t>(j)];
        }
    }
}

FractionalSolution maximize_linear(const Instance& inst, const FractionalSolution& weights) {
    require_shape(inst, weights);
    FractionalSolution out = FractionalSolution::zeros(inst);
    for (int v = 0; v < inst.volunteers(); ++v) {
        maximize_linear_for_volunteer(inst, weights, v, out);
    }
    return out;
}

FractionalSolution frank_wolfe_aa(const Instance& inst, int steps) {
    if (steps < 1) throw ValidationError("Frank-Wolfe step count must be >= 1");
    FractionalSolution x = FractionalSolution::zeros(inst);
    const double step = 1.0 / static_cast<double>(steps);
    for (int i = 0; i < steps; ++i) {
        const FractionalSolution direction = maximize_linear(inst, gradient_f(inst, x));
        for (int v = 0; v < inst.volunteers(); ++v) {
            for (int s = 0; s < inst.task_types(); ++s) {
                for (int t = 0; t < inst.horizon(); ++t) x(v, s, t) += step * direction(v, s, t);
            }
        }
    }
    return x;
}

FractionalSolution sequential_sq(const Instance& inst) {
    FractionalSolution x = FractionalSolution::zeros(inst);
    FractionalSolution weights = FractionalSolution::zeros(inst);
    const int ns = inst.task_types();
    const int nt = inst.horizon();
    // miss(s, t) = prod_{u < v} (1 - p[u][s] x[u][s][t]) for the current v.
    std::vector<double> miss(static_cast<std::size_t>(ns * nt), 1.0);
    for (int v = 0; v < inst.volunteers(); ++v) {
        for (int s = 0; s < ns; ++s) {
            for (int t = 0; t < nt; ++t) {
                weights(v, s, t) = inst.arrival(s, t) * miss[static_cast<std::size_t>(s * nt + t)] * inst.match(v, s);
            }
        }
        maximize_linear_for_volunteer(inst, weights, v, x);
        for (int s = 0; s < ns; ++s) {
            for (int t = 0; t < nt; ++t) {
                miss[static_cast<std::size_t>(s * nt + t)] *= 1.0 - inst.match(v, s) * x(v, s, t);
            }
        }
    }
    return x;
}

ExAnteSelection select_ex_ante(const Instance& inst, int steps) {
    if (steps < 1) throw ValidationError("Frank-Wolfe step count must be >= 1");
    ExAnteSelection sel;
    sel.benchmark = benchmark_lp(inst);
    sel.x_aa = frank_wolfe_aa(inst, steps);
    sel.x_sq = sequential_sq(inst);
    sel.candidate_f = {evaluate_f(inst, sel.benchmark.x_lp), evaluate_f(inst, sel.x_aa), evaluate_f(inst, sel.x_sq)};

    sel.tag = CandidateTag::lp;
    sel.f_value = sel.candidate_f[0];
    for (auto tag : {CandidateTag::aa, CandidateTag::sq}) {
        const double value = sel.candidate_f[static_cast<std::size_t>(tag)];
        if (value > sel.f_value + kTieTolerance) {
            sel.tag = tag;
            sel.f_value = value;
        }
    }
    switch (sel.tag) {
        case CandidateTag::lp: sel.x = sel.benchmark.x_lp; break;
        case CandidateTag::aa: sel.x = sel.x_aa; break;
        case CandidateTag::sq: sel.x = sel.x_sq; break;
    }
    return sel;
}

} // namespace volnotify
