#ifndef VOLNOTIFY_GENERATE_HPP
#define VOLNOTIFY_GENERATE_HPP

#include <optional>

#include "volnotify/distribution.hpp"
#include "volnotify/instance.hpp"
#include "volnotify/rng.hpp"

namespace volnotify {

/// Shape and sparsity of synthetic instances. Dimensions are drawn uniformly
/// from [1, max_*] unless the exact_* fields are set.
struct RandomInstanceOptions {
    int max_volunteers = 5;
    int max_types = 4;
    int max_horizon = 10;
    std::optional<int> volunteers;
    std::optional<int> types;
    std::optional<int> horizon;
    /// Probability that any single rate or match probability is forced to 0.
    double zero_fraction = 0.2;
    /// Fixes the distribution family; drawn uniformly otherwise.
    std::optional<InterActivityDistribution::Kind> family;
    /// Largest support for deterministic and tabulated draws.
    int max_support = 4;
};

/// Arrival rows have total mass uniform in [0.2, 1] split by random weights;
/// match probabilities are uniform on [0, 1]. Geometric success
/// probabilities are uniform on [0.05, 1].
Instance random_instance(const RandomInstanceOptions& options, Rng& rng);

InterActivityDistribution random_distribution(InterActivityDistribution::Kind family, int max_support, Rng& rng);

} // namespace volnotify

#endif // VOLNOTIFY_GENERATE_HPP
