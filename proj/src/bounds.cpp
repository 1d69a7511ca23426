#include "volnotify/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "volnotify/errors.hpp"
#include "volnotify/io.hpp"

namespace volnotify {

namespace {

using Kind = CanonicalInstanceSpec::Kind;

constexpr double kOneMinusInvE = 1.0 - 0.36787944117144233; // 1 - 1/e
constexpr double kAlphaTolerance = 1e-9;

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

CanonicalInstanceSpec defaults_for(Kind kind) {
    CanonicalInstanceSpec spec;
    spec.kind = kind;
    switch (kind) {
        case Kind::I1: spec.q = 0.1; spec.epsilon = 1e-3; break;
        case Kind::I2: spec.n = 4; break;
        case Kind::I3: spec.n = 20; break;
        case Kind::I4: spec.q = 0.1; spec.epsilon = 1e-3; break;
        case Kind::I5: spec.epsilon = 0.01; break;
        case Kind::I6: break;
    }
    return spec;
}

double parse_number(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == value.size() && !value.empty(), "bad value for '" + key + "': " + value);
    return out;
}

} // namespace

std::string to_string(Kind kind) {
    switch (kind) {
        case Kind::I1: return "I1";
        case Kind::I2: return "I2";
        case Kind::I3: return "I3";
        case Kind::I4: return "I4";
        case Kind::I5: return "I5";
        case Kind::I6: return "I6";
    }
    return "?";
}

CanonicalInstanceSpec parse_canonical_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    Kind kind{};
    bool found = false;
    for (Kind k : {Kind::I1, Kind::I2, Kind::I3, Kind::I4, Kind::I5, Kind::I6}) {
        if (head == to_string(k)) {
            kind = k;
            found = true;
        }
    }
    require(found, "unknown canonical instance '" + head + "' (expected I1..I6)");
    CanonicalInstanceSpec spec = defaults_for(kind);
    if (colon == std::string::npos) return spec;

    std::istringstream rest(text.substr(colon + 1));
    std::string item;
    bool q_given = false;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        require(eq != std::string::npos, "expected key=value in '" + item + "'");
        const std::string key = item.substr(0, eq);
        const double value = parse_number(key, item.substr(eq + 1));
        const bool takes_q = kind == Kind::I1 || kind == Kind::I2 || kind == Kind::I4;
        const bool takes_eps = kind == Kind::I1 || kind == Kind::I4 || kind == Kind::I5;
        const bool takes_n = kind == Kind::I2 || kind == Kind::I3;
        const bool known = (key == "q" && takes_q) || ((key == "eps" || key == "epsilon") && takes_eps) ||
                           (key == "n" && takes_n);
        if (!known) throw ValidationError("parameter '" + key + "' does not apply to " + head);
        if (key == "q") {
            spec.q = value;
            q_given = true;
        } else if (key == "eps" || key == "epsilon") {
            spec.epsilon = value;
        } else if (key == "n") {
            require(value >= 1 && value == std::floor(value) && value < 1e6, "n must be a positive integer");
            spec.n = static_cast<int>(value);
        }
    }
    if (kind == Kind::I2 && q_given) {
        require(spec.q > 0.0 && spec.q <= 1.0, "I2 needs q in (0, 1]");
        const double inv = 1.0 / spec.q;
        require(std::abs(inv - std::round(inv)) < 1e-9, "I2 needs 1/q to be an integer");
        spec.n = static_cast<int>(std::round(inv));
        spec.q = defaults_for(kind).q; // I2 is keyed by n alone
    }
    return spec;
}

std::string to_string(const CanonicalInstanceSpec& spec) {
    std::ostringstream os;
    os << to_string(spec.kind);
    switch (spec.kind) {
        case Kind::I1:
        case Kind::I4: os << ":q=" << format_shortest(spec.q) << ",eps=" << format_shortest(spec.epsilon); break;
        case Kind::I2:
        case Kind::I3: os << ":n=" << spec.n; break;
        case Kind::I5: os << ":eps=" << format_shortest(spec.epsilon); break;
        case Kind::I6: break;
    }
    return os.str();
}

Instance make_instance(const CanonicalInstanceSpec& spec) {
    const double q = spec.q;
    const double eps = spec.epsilon;
    switch (spec.kind) {
        case Kind::I1: {
            require(q >= 0.0 && q < 1.0, "I1 needs q in [0, 1)");
            require(eps > 0.0 && eps <= (1.0 - q) / 100.0, "I1 needs 0 < eps <= (1 - q)/100");
            Matrix lam(2, 2, 0.0);
            lam(0, 0) = 1.0;
            lam(1, 1) = eps / (1.0 - q);
            Matrix p(1, 2, 0.0);
            p(0, 0) = eps;
            p(0, 1) = 1.0;
            auto dist = q == 0.0 ? InterActivityDistribution::deterministic(2) : InterActivityDistribution::geometric(q);
            return Instance(std::move(lam), std::move(p), std::move(dist));
        }
        case Kind::I2: {
            require(spec.n >= 1 && spec.n <= 100, "I2 needs 1 <= n <= 100");
            const int n = spec.n;
            const double qn = 1.0 / n;
            const int horizon = n * n + 1;
            Matrix lam(horizon, 1, qn);
            lam(0, 0) = 1.0;
            Matrix p(n, 1, qn);
            return Instance(std::move(lam), std::move(p), InterActivityDistribution::geometric(qn));
        }
        case Kind::I3: {
            require(spec.n >= 1 && spec.n <= 100, "I3 needs 1 <= n <= 100");
            const int n = spec.n;
            Matrix lam(n * n, 1, 1.0 / n);
            Matrix p(n, 1, 1.0 / n);
            return Instance(std::move(lam), std::move(p), InterActivityDistribution::deterministic(n));
        }
        case Kind::I4: {
            require(q > 0.0 && q <= 1.0, "I4 needs q in (0, 1]");
            require(eps >= 0.0 && eps <= 1.0, "I4 needs eps in [0, 1]");
            Matrix lam(2, 2, 0.0);
            lam(0, 0) = 1.0;
            lam(1, 1) = q;
            Matrix p(1, 2, 0.0);
            p(0, 0) = eps;
            p(0, 1) = 1.0;
            return Instance(std::move(lam), std::move(p), InterActivityDistribution::geometric(q));
        }
        case Kind::I5: {
            require(eps >= 0.0 && eps <= 0.5, "I5 needs eps in [0, 0.5]");
            Matrix lam(2, 2, 0.0);
            lam(0, 0) = 1.0;
            lam(1, 1) = 1.0;
            Matrix p(2, 2, 0.0);
            p(0, 0) = 0.5;
            p(1, 0) = 0.5;
            p(1, 1) = 0.5 - eps;
            return Instance(std::move(lam), std::move(p), InterActivityDistribution::deterministic(2));
        }
        case Kind::I6: {
            Matrix lam(2, 2, 0.0);
            lam(0, 0) = 1.0;
            lam(1, 1) = 1.0;
            Matrix p(4, 2, 0.0);
            p(0, 0) = 1.0 / 3.0;
            p(1, 0) = 1.0 / 3.0;
            p(2, 0) = 1.0 / 3.0;
            p(2, 1) = 1.0 / 3.0 - 0.001;
            p(3, 1) = 11.0 / 18.0;
            return Instance(std::move(lam), std::move(p), InterActivityDistribution::deterministic(2));
        }
    }
    throw ValidationError("unknown canonical instance");
}

double kappa(double q) {
    require(q >= 0.0 && q <= 1.0, "kappa needs q in [0, 1]");
    if (q == 0.0) return 0.334;
    if (q == 1.0) return 1.0;
    const double first = 1.0 / (2.0 - q);
    const double second = 1.0 + q - q * (1.0 - q) / (std::log(1.0 / (1.0 - q)) * (1.0 + q)) * kOneMinusInvE;
    return std::min(first, second);
}

double sn_lower_bound(double q) {
    require(q >= 0.0 && q <= 1.0, "q must lie in [0, 1]");
    return kOneMinusInvE / (2.0 - q);
}

double closed_form_value(Kind kind, const std::string& policy_name, const CanonicalInstanceSpec& params) {
    const double q = params.q;
    const double eps = params.epsilon;
    if (kind == Kind::I1 && policy_name == "lp_lower") return eps * (2.0 - q - (1.0 - q) * eps) / (1.0 - q);
    if (kind == Kind::I1 && policy_name == "online_opt") return eps / (1.0 - q);
    if (kind == Kind::I2 && policy_name == "lp_lower") return static_cast<double>(params.n);
    if (kind == Kind::I4) {
        if (policy_name == "lp") return eps + q;
        if (policy_name == "follow_exante") return eps + q * q;
        if (policy_name == "sn") return q;
        if (policy_name == "sdn") return (eps + q) / (2.0 - q);
    }
    throw ValidationError("no closed form for (" + to_string(kind) + ", " + policy_name + ")");
}

DualCheck verify_dual_certificate(const Instance& inst, const FractionalSolution& x, int v) {
    if (v < 0 || v >= inst.volunteers()) throw ValidationError("volunteer index out of range");
    const auto report = check_feasible(inst, x);
    if (!report.feasible()) throw PreconditionError("dual certificate needs a feasible x: " + report.describe());

    const int nt = inst.horizon();
    const auto& dist = inst.distribution();
    std::vector<double> load(static_cast<std::size_t>(nt), 0.0);
    for (int t = 0; t < nt; ++t) {
        for (int s = 0; s < inst.task_types(); ++s) load[static_cast<std::size_t>(t)] += inst.arrival(s, t) * x(v, s, t);
    }

    DualCheck check;
    auto& cert = check.certificate;
    cert.mu = 1.0 / (2.0 - dist.mdhr());
    cert.gamma.assign(static_cast<std::size_t>(nt), cert.mu);
    cert.alpha.assign(static_cast<std::size_t>(nt), 1.0 - cert.mu);
    for (int t = 1; t < nt; ++t) {
        double returning = 0.0;
        for (int tp = 0; tp <= t - 1; ++tp) returning += load[static_cast<std::size_t>(tp)] * dist.pmf(t - tp);
        cert.alpha[static_cast<std::size_t>(t)] =
            cert.alpha[static_cast<std::size_t>(t - 1)] - cert.mu * (load[static_cast<std::size_t>(t - 1)] - returning);
    }
    check.min_alpha = *std::min_element(cert.alpha.begin(), cert.alpha.end());
    check.feasible = check.min_alpha >= -kAlphaTolerance;
    return check;
}

std::vector<BoundsRow> bounds_grid(double step) {
    require(step > 0.0 && step <= 1.0, "grid step must lie in (0, 1]");
    std::vector<BoundsRow> rows;
    const auto count = static_cast<int>(std::floor(1.0 / step + 1e-9));
    for (int i = 0; i <= count; ++i) {
        // Multiplying avoids drift; the last point is pinned to 1 when the step divides it.
        double q = std::min(1.0, i * step);
        if (i == count && std::abs(count * step - 1.0) < 1e-9) q = 1.0;
        rows.push_back({q, sn_lower_bound(q), kappa(q)});
    }
    return rows;
}

} // namespace volnotify
