#ifndef VOLNOTIFY_BOUNDS_HPP
#define VOLNOTIFY_BOUNDS_HPP

#include <string>
#include <vector>

#include "volnotify/fractional.hpp"
#include "volnotify/instance.hpp"

namespace volnotify {

/// The six hand-built instances used to probe the guarantees.
///   I1(q, eps): one volunteer torn between an early low-value task and a rare
///               later certain one; q = 0 uses Deterministic(2).
///   I2(n):      n identical volunteers, q = 1/n, T = n^2 + 1.
///   I3(n):      n volunteers, T = n^2, uniform rates 1/n, Deterministic(n).
///   I4(q, eps): like I1 with lambda[2][2] = q.
///   I5(eps), I6: two-period examples separating the three ex ante candidates.
struct CanonicalInstanceSpec {
    enum class Kind { I1, I2, I3, I4, I5, I6 };

    Kind kind = Kind::I4;
    double q = 0.1;
    double epsilon = 1e-3;
    int n = 4;

    bool operator==(const CanonicalInstanceSpec&) const = default;
};

std::string to_string(CanonicalInstanceSpec::Kind kind);

/// Parses "I4", "I4:q=0.1,eps=0.001", "I2:n=4", "I5:eps=0.01". Missing
/// parameters take the defaults for the kind (I3 defaults to n = 20).
CanonicalInstanceSpec parse_canonical_spec(const std::string& text);
std::string to_string(const CanonicalInstanceSpec& spec);

/// Throws ValidationError for out-of-range parameters.
Instance make_instance(const CanonicalInstanceSpec& spec);

/// Upper bound on the competitive ratio of any online policy at MDHR q:
///     min{ 1/(2-q), 1 + q - q(1-q) / (ln(1/(1-q)) (1+q)) * (1 - 1/e) },
/// with kappa(0) = 0.334 (the deterministic-inter-activity construction) and
/// kappa(1) = 1. For q outside {0} u {1/n} u [1/16, 1] the formula is applied
/// as is, which extrapolates the proven range.
double kappa(double q);

/// Guarantee of the SN policy: (1 - 1/e) / (2 - q).
double sn_lower_bound(double q);

/// Analytic values from the instance constructions. Supported pairs:
/// (I1, lp_lower), (I1, online_opt), (I2, lp_lower),
/// (I4, lp), (I4, follow_exante), (I4, sn), (I4, sdn).
double closed_form_value(CanonicalInstanceSpec::Kind kind, const std::string& policy_name,
                         const CanonicalInstanceSpec& params);

struct DualCertificate {
    double mu = 0.0;
    std::vector<double> gamma;
    std::vector<double> alpha;
};

struct DualCheck {
    DualCertificate certificate;
    bool feasible = false;
    double min_alpha = 0.0;
};

/// Builds mu = 1/(2-q), gamma = mu, alpha[0] = 1 - mu and
///     alpha[t] = alpha[t-1] - mu (load[t-1] - sum_{t' <= t-1} load[t'] g(t - t')),
/// with load[t] = sum_s lambda[s][t] x[v][s][t]; feasible iff every alpha >= -1e-9.
/// Throws PreconditionError if x is infeasible.
DualCheck verify_dual_certificate(const Instance& inst, const FractionalSolution& x, int v);

/// Rows of (q, sn_lower, kappa) for q = 0, step, 2 step, ..., 1.
struct BoundsRow {
    double q;
    double sn_lower;
    double kappa;
};
std::vector<BoundsRow> bounds_grid(double step);

} // namespace volnotify

#endif // VOLNOTIFY_BOUNDS_HPP
