#include "volnotify/fractional.hpp"

#include <algorithm>
#include <sstream>

#include "volnotify/errors.hpp"

namespace volnotify {

void require_shape(const Instance& inst, const FractionalSolution& x) {
    if (!x.matches(inst)) {
        std::ostringstream os;
        os << "solution shape " << x.volunteers() << "x" << x.task_types() << "x" << x.horizon()
           << " does not match instance " << inst.volunteers() << "x" << inst.task_types() << "x"
           << inst.horizon();
        throw DimensionError(os.str());
    }
}

std::string FeasibilityReport::describe(std::size_t max_items) const {
    if (violations.empty()) return "feasible";
    std::ostringstream os;
    os << violations.size() << " violation(s):";
    for (std::size_t i = 0; i < std::min(max_items, violations.size()); ++i) {
        const auto& viol = violations[i];
        if (viol.kind == Violation::Kind::range) {
            os << " x[" << viol.v + 1 << "," << viol.s + 1 << "," << viol.t + 1 << "]=" << viol.value;
        } else {
            os << " capacity(v=" << viol.v + 1 << ",t=" << viol.t + 1 << ")=" << viol.value;
        }
    }
    return os.str();
}

double capacity_lhs(const Instance& inst, const FractionalSolution& x, int v, int t) {
    const auto& dist = inst.distribution();
    double lhs = 0.0;
    for (int tau = 0; tau <= t; ++tau) {
        const double remain = dist.survival(t - tau);
        if (remain <= 0.0) continue;
        for (int s = 0; s < inst.task_types(); ++s) {
            lhs += inst.arrival(s, tau) * x(v, s, tau) * remain;
        }
    }
    return lhs;
}

FeasibilityReport check_feasible(const Instance& inst, const FractionalSolution& x, double tolerance) {
    require_shape(inst, x);
    FeasibilityReport report;
    for (int v = 0; v < inst.volunteers(); ++v) {
        for (int s = 0; s < inst.task_types(); ++s) {
            for (int t = 0; t < inst.horizon(); ++t) {
                const double value = x(v, s, t);
                if (!(value >= -tolerance && value <= 1.0 + tolerance)) {
                    report.violations.push_back({Violation::Kind::range, v, s, t, value});
                }
            }
        }
        for (int t = 0; t < inst.horizon(); ++t) {
            const double lhs = capacity_lhs(inst, x, v, t);
            if (lhs > 1.0 + tolerance) {
                report.violations.push_back({Violation::Kind::capacity, v, -1, t, lhs});
            }
        }
    }
    return report;
}

double evaluate_f(const Instance& inst, const FractionalSolution& x) {
    require_shape(inst, x);
    double total = 0.0;
    for (int t = 0; t < inst.horizon(); ++t) {
        for (int s = 0; s < inst.task_types(); ++s) {
            const double rate = inst.arrival(s, t);
            if (rate == 0.0) continue;
            double miss = 1.0;
            for (int v = 0; v < inst.volunteers(); ++v) {
                miss *= 1.0 - x(v, s, t) * inst.match(v, s);
            }
            total += rate * (1.0 - miss);
        }
    }
    return total;
}

double evaluate_fv(const Instance& inst, const FractionalSolution& x, int v) {
    require_shape(inst, x);
    if (v < 0 || v >= inst.volunteers()) {
        throw ValidationError("volunteer index " + std::to_string(v) + " out of range");
    }
    double total = 0.0;
    for (int t = 0; t < inst.horizon(); ++t) {
        for (int s = 0; s < inst.task_types(); ++s) {
            const double rate = inst.arrival(s, t);
            if (rate == 0.0) continue;
            double ahead_miss = 1.0;
            for (int u = 0; u < v; ++u) {
                ahead_miss *= 1.0 - inst.match(u, s) * x(u, s, t);
            }
            total += rate * ahead_miss * inst.match(v, s) * x(v, s, t);
        }
    }
    return total;
}

FractionalSolution gradient_f(const Instance& inst, const FractionalSolution& x) {
    require_shape(inst, x);
    const int nv = inst.volunteers();
    FractionalSolution grad = FractionalSolution::zeros(inst);
    std::vector<double> prefix(static_cast<std::size_t>(nv) + 1);
    std::vector<double> suffix(static_cast<std::size_t>(nv) + 1);
    for (int t = 0; t < inst.horizon(); ++t) {
        for (int s = 0; s < inst.task_types(); ++s) {
            const double rate = inst.arrival(s, t);
            if (rate == 0.0) continue;
            // Products excluding v, without dividing by (1 - x p) which may be 0.
            prefix[0] = 1.0;
            for (int v = 0; v < nv; ++v) {
                prefix[static_cast<std::size_t>(v) + 1] =
                    prefix[static_cast<std::size_t>(v)] * (1.0 - x(v, s, t) * inst.match(v, s));
            }
            suffix[static_cast<std::size_t>(nv)] = 1.0;
            for (int v = nv; v-- > 0;) {
                suffix[static_cast<std::size_t>(v)] =
                    suffix[static_cast<std::size_t>(v) + 1] * (1.0 - x(v, s, t) * inst.match(v, s));
            }
            for (int v = 0; v < nv; ++v) {
                grad(v, s, t) = rate * inst.match(v, s) * prefix[static_cast<std::size_t>(v)] *
                                suffix[static_cast<std::size_t>(v) + 1];
            }
        }
    }
    return grad;
}

double evaluate_benchmark_objective(const Instance& inst, const FractionalSolution& x) {
    require_shape(inst, x);
    double total = 0.0;
    for (int t = 0; t < inst.horizon(); ++t) {
        for (int s = 0; s < inst.task_types(); ++s) {
            double responses = 0.0;
            for (int v = 0; v < inst.volunteers(); ++v) {
                responses += x(v, s, t) * inst.match(v, s);
            }
            total += inst.arrival(s, t) * std::min(responses, 1.0);
        }
    }
    return total;
}

} // namespace volnotify
