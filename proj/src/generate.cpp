#include "volnotify/generate.hpp"

#include "volnotify/errors.hpp"

namespace volnotify {

namespace {

int draw_count(std::optional<int> exact, int max, Rng& rng) {
    if (exact) {
        if (*exact < 1) throw ValidationError("instance dimensions must be positive");
        return *exact;
    }
    if (max < 1) throw ValidationError("instance dimension bounds must be positive");
    return 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max)));
}

} // namespace

InterActivityDistribution random_distribution(InterActivityDistribution::Kind family, int max_support, Rng& rng) {
    using Kind = InterActivityDistribution::Kind;
    if (max_support < 1) throw ValidationError("max_support must be positive");
    switch (family) {
        case Kind::geometric: return InterActivityDistribution::geometric(0.05 + 0.95 * (1.0 - rng.uniform()));
        case Kind::deterministic:
            return InterActivityDistribution::deterministic(1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_support))));
        case Kind::tabulated: {
            const int len = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(max_support)));
            std::vector<double> probs(static_cast<std::size_t>(len));
            double total = 0.0;
            for (auto& p : probs) total += (p = rng.uniform());
            if (total == 0.0) probs.back() = total = 1.0;
            for (auto& p : probs) p /= total;
            return InterActivityDistribution::tabulated(std::move(probs));
        }
    }
    throw ValidationError("unknown distribution family");
}

Instance random_instance(const RandomInstanceOptions& options, Rng& rng) {
    if (options.zero_fraction < 0.0 || options.zero_fraction > 1.0) {
        throw ValidationError("zero_fraction must lie in [0, 1]");
    }
    const int nv = draw_count(options.volunteers, options.max_volunteers, rng);
    const int ns = draw_count(options.types, options.max_types, rng);
    const int nt = draw_count(options.horizon, options.max_horizon, rng);

    Matrix lam(nt, ns, 0.0);
    for (int t = 0; t < nt; ++t) {
        const double mass = 0.2 + 0.8 * rng.uniform();
        double total = 0.0;
        for (int s = 0; s < ns; ++s) {
            const double w = rng.uniform();
            lam(t, s) = rng.uniform() < options.zero_fraction ? 0.0 : w;
            total += lam(t, s);
        }
        if (total > 0.0) {
            for (int s = 0; s < ns; ++s) lam(t, s) = std::min(1.0, lam(t, s) * mass / total);
        }
    }
    Matrix p(nv, ns, 0.0);
    for (int v = 0; v < nv; ++v) {
        for (int s = 0; s < ns; ++s) {
            const double w = rng.uniform();
            p(v, s) = rng.uniform() < options.zero_fraction ? 0.0 : w;
        }
    }
    const auto family = options.family ? *options.family
                                       : static_cast<InterActivityDistribution::Kind>(rng.below(3));
    return Instance(std::move(lam), std::move(p), random_distribution(family, options.max_support, rng));
}

} // namespace volnotify
