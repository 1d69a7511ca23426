#ifndef VOLNOTIFY_DISTRIBUTION_HPP
#define VOLNOTIFY_DISTRIBUTION_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "volnotify/rng.hpp"

namespace volnotify {

/// Distribution of the inactivity duration Z >= 1 that follows a notification
/// of an active volunteer. Periods are counted from 1; pmf(tau) = P{Z = tau}.
class InterActivityDistribution {
public:
    struct Geometric {
        double success_prob;
    };
    struct Deterministic {
        int length;
    };
    struct Tabulated {
        std::vector<double> probs; // probs[k] = P{Z = k + 1}
    };
    using Variant = std::variant<Geometric, Deterministic, Tabulated>;

    enum class Kind { geometric, deterministic, tabulated };

    /// Success probability must lie in (0, 1].
    static InterActivityDistribution geometric(double success_prob);
    /// Length must be at least 1.
    static InterActivityDistribution deterministic(int length);
    /// Entries nonnegative, summing to 1 within 1e-9.
    static InterActivityDistribution tabulated(std::vector<double> probs);

    const Variant& variant() const { return variant_; }
    Kind kind() const { return static_cast<Kind>(variant_.index()); }
    std::string kind_name() const;

    /// g(tau). Throws ValidationError for tau < 1.
    double pmf(int tau) const;

    /// G(tau) = sum_{k <= tau} g(k); G(tau) = 0 for tau <= 0.
    double cdf(int tau) const;

    /// 1 - G(tau), computed without cancellation. Exactly 0 past a finite support.
    double survival(int tau) const;

    /// g(tau) / (1 - G(tau - 1)), with 0/0 read as 1.
    double hazard(int tau) const;

    /// Minimum discrete hazard rate over the support.
    double mdhr() const;

    /// Largest tau with positive mass, or nullopt for unbounded support.
    std::optional<int> support_max() const;

    double mean() const;

    /// Draws Z with a single uniform (inverse cdf).
    int sample(Rng& rng) const;

    bool operator==(const InterActivityDistribution& other) const;

private:
    explicit InterActivityDistribution(Variant v);

    Variant variant_;
    // Tabulated only: tail_[k] = sum_{j > k} g(j) for k = 0..tau_max.
    std::vector<double> tail_;
};

} // namespace volnotify

#endif // VOLNOTIFY_DISTRIBUTION_HPP
