#include "volnotify/distribution.hpp"

#include <cmath>
#include <numeric>

#include "volnotify/errors.hpp"

namespace volnotify {

namespace {

constexpr double kTabulatedSumTolerance = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

InterActivityDistribution::InterActivityDistribution(Variant v) : variant_(std::move(v)) {
    if (const auto* tab = std::get_if<Tabulated>(&variant_)) {
        const auto n = tab->probs.size();
        tail_.assign(n + 1, 0.0);
        for (std::size_t k = n; k-- > 0;) {
            tail_[k] = tail_[k + 1] + tab->probs[k];
        }
    }
}

InterActivityDistribution InterActivityDistribution::geometric(double success_prob) {
    if (!(success_prob > 0.0 && success_prob <= 1.0)) {
        throw ValidationError("geometric success probability must lie in (0, 1], got " +
                              std::to_string(success_prob));
    }
    return InterActivityDistribution(Geometric{success_prob});
}

InterActivityDistribution InterActivityDistribution::deterministic(int length) {
    if (length < 1) {
        throw ValidationError("deterministic inter-activity length must be >= 1, got " +
                              std::to_string(length));
    }
    return InterActivityDistribution(Deterministic{length});
}

InterActivityDistribution InterActivityDistribution::tabulated(std::vector<double> probs) {
    if (probs.empty()) {
        throw ValidationError("tabulated distribution needs at least one probability");
    }
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ValidationError("tabulated probabilities must be finite and nonnegative");
        }
    }
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > kTabulatedSumTolerance) {
        throw ValidationError("tabulated probabilities must sum to 1, got " + std::to_string(total));
    }
    return InterActivityDistribution(Tabulated{std::move(probs)});
}

std::string InterActivityDistribution::kind_name() const {
    switch (kind()) {
        case Kind::geometric: return "geometric";
        case Kind::deterministic: return "deterministic";
        case Kind::tabulated: return "tabulated";
    }
    return "unknown";
}

double InterActivityDistribution::pmf(int tau) const {
    if (tau < 1) {
        throw ValidationError("pmf is defined for tau >= 1, got " + std::to_string(tau));
    }
    return std::visit(overloaded{
                          [tau](const Geometric& g) {
                              return g.success_prob * std::pow(1.0 - g.success_prob, tau - 1);
                          },
                          [tau](const Deterministic& d) { return tau == d.length ? 1.0 : 0.0; },
                          [tau](const Tabulated& t) {
                              const auto k = static_cast<std::size_t>(tau - 1);
                              return k < t.probs.size() ? t.probs[k] : 0.0;
                          },
                      },
                      variant_);
}

double InterActivityDistribution::cdf(int tau) const {
    if (tau <= 0) return 0.0;
    return std::visit(overloaded{
                          [tau](const Geometric& g) {
                              return 1.0 - std::pow(1.0 - g.success_prob, tau);
                          },
                          [tau](const Deterministic& d) { return tau >= d.length ? 1.0 : 0.0; },
                          [tau](const Tabulated& t) {
                              const auto n = std::min(t.probs.size(), static_cast<std::size_t>(tau));
                              return std::accumulate(t.probs.begin(),
                                                     t.probs.begin() + static_cast<std::ptrdiff_t>(n),
                                                     0.0);
                          },
                      },
                      variant_);
}

double InterActivityDistribution::survival(int tau) const {
    if (tau <= 0) return 1.0;
    return std::visit(overloaded{
                          [tau](const Geometric& g) { return std::pow(1.0 - g.success_prob, tau); },
                          [tau](const Deterministic& d) { return tau < d.length ? 1.0 : 0.0; },
                          [this, tau](const Tabulated& t) {
                              const auto k = static_cast<std::size_t>(tau);
                              return k < t.probs.size() ? tail_[k] : 0.0;
                          },
                      },
                      variant_);
}

double InterActivityDistribution::hazard(int tau) const {
    const double denom = survival(tau - 1);
    const double num = pmf(tau);
    if (denom <= 0.0) return 1.0;
    return std::min(1.0, num / denom);
}

double InterActivityDistribution::mdhr() const {
    return std::visit(overloaded{
                          [](const Geometric& g) { return g.success_prob; },
                          [](const Deterministic& d) { return d.length == 1 ? 1.0 : 0.0; },
                          [this](const Tabulated& t) {
                              double q = 1.0;
                              const int n = static_cast<int>(t.probs.size());
                              for (int tau = 1; tau <= n; ++tau) {
                                  if (survival(tau - 1) <= 0.0) continue;
                                  q = std::min(q, hazard(tau));
                              }
                              return q;
                          },
                      },
                      variant_);
}

std::optional<int> InterActivityDistribution::support_max() const {
    return std::visit(overloaded{
                          [](const Geometric& g) -> std::optional<int> {
                              if (g.success_prob >= 1.0) return 1;
                              return std::nullopt;
                          },
                          [](const Deterministic& d) -> std::optional<int> { return d.length; },
                          [](const Tabulated& t) -> std::optional<int> {
                              int last = 1;
                              for (std::size_t k = 0; k < t.probs.size(); ++k) {
                                  if (t.probs[k] > 0.0) last = static_cast<int>(k) + 1;
                              }
                              return last;
                          },
                      },
                      variant_);
}

double InterActivityDistribution::mean() const {
    return std::visit(overloaded{
                          [](const Geometric& g) { return 1.0 / g.success_prob; },
                          [](const Deterministic& d) { return static_cast<double>(d.length); },
                          [](const Tabulated& t) {
                              double m = 0.0;
                              for (std::size_t k = 0; k < t.probs.size(); ++k) {
                                  m += static_cast<double>(k + 1) * t.probs[k];
                              }
                              return m;
                          },
                      },
                      variant_);
}

int InterActivityDistribution::sample(Rng& rng) const {
    const double u = rng.uniform();
    return std::visit(overloaded{
                          [u](const Geometric& g) {
                              if (g.success_prob >= 1.0) return 1;
                              // P{Z <= k} = 1 - (1 - q)^k  <=>  Z = ceil(log(1 - u) / log(1 - q))
                              const double z = std::ceil(std::log1p(-u) / std::log1p(-g.success_prob));
                              if (!(z >= 1.0)) return 1;
                              if (z > 1e9) return 1'000'000'000;
                              return static_cast<int>(z);
                          },
                          [](const Deterministic& d) { return d.length; },
                          [u](const Tabulated& t) {
                              double cum = 0.0;
                              int last_positive = 1;
                              for (std::size_t k = 0; k < t.probs.size(); ++k) {
                                  if (t.probs[k] <= 0.0) continue;
                                  cum += t.probs[k];
                                  last_positive = static_cast<int>(k) + 1;
                                  if (u < cum) return last_positive;
                              }
                              return last_positive;
                          },
                      },
                      variant_);
}

bool InterActivityDistribution::operator==(const InterActivityDistribution& other) const {
    if (variant_.index() != other.variant_.index()) return false;
    return std::visit(overloaded{
                          [&](const Geometric& g) {
                              return g.success_prob == std::get<Geometric>(other.variant_).success_prob;
                          },
                          [&](const Deterministic& d) {
                              return d.length == std::get<Deterministic>(other.variant_).length;
                          },
                          [&](const Tabulated& t) {
                              return t.probs == std::get<Tabulated>(other.variant_).probs;
                          },
                      },
                      variant_);
}

} // namespace volnotify
