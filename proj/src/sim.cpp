#include "volnotify/sim.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "volnotify/errors.hpp"
#include "volnotify/io.hpp"

namespace volnotify {

namespace {

struct Counters {
    std::int64_t episodes = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<double> credit_sum;
    std::vector<double> credit_sum_sq;
    Matrix* active_counts = nullptr; // V x T, optional
};

// One episode. Fills `log` when non-null; returns the number of completions
// and adds per-volunteer credits to `credits`.
int play(const Instance& inst, const Policy& policy, Rng& rng, EpisodeLog* log, std::vector<int>& credits,
         Matrix* active_counts) {
    const int nv = inst.volunteers();
    const int ns = inst.task_types();
    const int nt = inst.horizon();
    const auto& dist = inst.distribution();
    if (policy.volunteers() != nv) {
        throw DimensionError("policy '" + policy.name() + "' was built for a different number of volunteers");
    }

    std::vector<int> return_at(static_cast<std::size_t>(nv), 0); // active iff return_at <= t
    std::vector<char> notified(static_cast<std::size_t>(nv), 0);
    std::vector<char> acted(static_cast<std::size_t>(nv), 0);
    const bool tracking = policy.uses_beliefs();
    BeliefState beliefs(tracking ? nv : 0);
    std::fill(credits.begin(), credits.end(), 0);
    if (log != nullptr) {
        log->completed = 0;
        log->periods.assign(static_cast<std::size_t>(nt), PeriodRecord{});
    }

    int completed = 0;
    for (int t = 0; t < nt; ++t) {
        auto is_active = [&](int v) { return return_at[static_cast<std::size_t>(v)] <= t; };
        if (active_counts != nullptr) {
            for (int v = 0; v < nv; ++v) {
                if (is_active(v)) (*active_counts)(v, t) += 1.0;
            }
        }
        if (tracking && t > 0) beliefs.step(dist, t);

        const double u = rng.uniform();
        int s = -1;
        double cumulative = 0.0;
        for (int j = 0; j < ns; ++j) {
            cumulative += inst.arrival(j, t);
            if (u < cumulative) {
                s = j;
                break;
            }
        }
        if (s < 0) continue;

        const DecisionContext ctx{t, s, tracking ? &beliefs : nullptr};
        const PolicyDecision decision = policy.decide(ctx, rng);
        if (static_cast<int>(decision.probabilities.size()) != nv) {
            throw DimensionError("policy '" + policy.name() + "' returned a decision of the wrong size");
        }
        for (int v = 0; v < nv; ++v) {
            notified[static_cast<std::size_t>(v)] = rng.uniform() < decision.probabilities[static_cast<std::size_t>(v)];
        }

        int completer = -1;
        for (int v = 0; v < nv; ++v) {
            const auto i = static_cast<std::size_t>(v);
            acted[i] = notified[i] && is_active(v);
            if (!acted[i]) continue;
            const bool responded = rng.uniform() < inst.match(v, s);
            if (responded) {
                if (completer < 0) completer = v;
                if (log != nullptr) log->periods[static_cast<std::size_t>(t)].responders.push_back(v);
            }
        }
        for (int v = 0; v < nv; ++v) {
            const auto i = static_cast<std::size_t>(v);
            if (acted[i]) return_at[i] = t + dist.sample(rng);
        }
        if (completer >= 0) {
            ++completed;
            ++credits[static_cast<std::size_t>(completer)];
        }
        if (tracking) {
            for (int v = 0; v < nv; ++v) {
                if (notified[static_cast<std::size_t>(v)]) beliefs.notify(v, t);
            }
        }
        if (log != nullptr) {
            auto& rec = log->periods[static_cast<std::size_t>(t)];
            rec.arrival = s;
            for (int v = 0; v < nv; ++v) {
                if (notified[static_cast<std::size_t>(v)]) rec.notified.push_back(v);
            }
            rec.completed_by = completer;
        }
    }
    if (log != nullptr) log->completed = completed;
    return completed;
}

void run_range(const Instance& inst, const Policy& policy, std::int64_t first, std::int64_t count, std::uint64_t seed,
               Counters& c) {
    if (first < 0 || count < 1) throw ValidationError("episode count must be positive");
    const auto nv = static_cast<std::size_t>(inst.volunteers());
    c.credit_sum.assign(nv, 0.0);
    c.credit_sum_sq.assign(nv, 0.0);
    std::vector<int> credits(nv, 0);
    for (std::int64_t k = first; k < first + count; ++k) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(k));
        const double done = play(inst, policy, rng, nullptr, credits, c.active_counts);
        c.sum += done;
        c.sum_sq += done * done;
        for (std::size_t v = 0; v < nv; ++v) {
            c.credit_sum[v] += credits[v];
            c.credit_sum_sq[v] += static_cast<double>(credits[v]) * credits[v];
        }
    }
    c.episodes = count;
}

double standard_error(double sum, double sum_sq, std::int64_t n) {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
    return std::sqrt(var / nn);
}

SimStats from_counters(const Counters& c, std::uint64_t seed, std::optional<double> lp_value) {
    const double n = static_cast<double>(c.episodes);

    SimStats stats;
    stats.episodes = c.episodes;
    stats.seed = seed;
    stats.mean_completed = c.sum / n;
    stats.std_error = standard_error(c.sum, c.sum_sq, c.episodes);
    for (std::size_t v = 0; v < c.credit_sum.size(); ++v) {
        stats.attribution.push_back(c.credit_sum[v] / n);
        stats.attribution_std_error.push_back(standard_error(c.credit_sum[v], c.credit_sum_sq[v], c.episodes));
    }
    stats.lp_value = lp_value;
    if (lp_value && *lp_value > 0.0) stats.ratio_to_lp = stats.mean_completed / *lp_value;
    stats.completed_sum = c.sum;
    stats.completed_sum_sq = c.sum_sq;
    stats.credit_sum = c.credit_sum;
    stats.credit_sum_sq = c.credit_sum_sq;
    return stats;
}

} // namespace

EpisodeLog run_episode(const Instance& inst, const Policy& policy, Rng& rng) {
    EpisodeLog log;
    std::vector<int> credits(static_cast<std::size_t>(inst.volunteers()), 0);
    play(inst, policy, rng, &log, credits, nullptr);
    return log;
}

SimStats simulate_range(const Instance& inst, const Policy& policy, std::int64_t first, std::int64_t count,
                        std::uint64_t seed, std::optional<double> lp_value) {
    Counters c;
    run_range(inst, policy, first, count, seed, c);
    return from_counters(c, seed, lp_value);
}

SimStats pool(const std::vector<SimStats>& batches) {
    if (batches.empty()) throw ValidationError("nothing to pool");
    Counters c;
    c.credit_sum.assign(batches.front().credit_sum.size(), 0.0);
    c.credit_sum_sq.assign(batches.front().credit_sum.size(), 0.0);
    for (const auto& b : batches) {
        if (b.seed != batches.front().seed || b.credit_sum.size() != c.credit_sum.size()) {
            throw ValidationError("batches come from different runs");
        }
        c.episodes += b.episodes;
        c.sum += b.completed_sum;
        c.sum_sq += b.completed_sum_sq;
        for (std::size_t v = 0; v < c.credit_sum.size(); ++v) {
            c.credit_sum[v] += b.credit_sum[v];
            c.credit_sum_sq[v] += b.credit_sum_sq[v];
        }
    }
    return from_counters(c, batches.front().seed, batches.front().lp_value);
}

std::string sim_csv_header() { return "policy,instance_id,episodes,seed,mean_completed,std_error,lp_value,ratio"; }

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string sim_csv_row(const SimStats& stats, const std::string& policy, const std::string& instance_id) {
    std::string row = csv_field(policy) + "," + csv_field(instance_id) + "," + std::to_string(stats.episodes) + "," +
                      std::to_string(stats.seed) + "," + format_decimal(stats.mean_completed) + "," +
                      format_decimal(stats.std_error) + ",";
    if (stats.lp_value) row += format_decimal(*stats.lp_value);
    row += ",";
    if (stats.ratio_to_lp) row += format_decimal(*stats.ratio_to_lp);
    return row;
}

SimStats simulate(const Instance& inst, const Policy& policy, std::int64_t episodes, std::uint64_t seed,
                  std::optional<double> lp_value) {
    return simulate_range(inst, policy, 0, episodes, seed, lp_value);
}

Matrix empirical_active_prob(const Instance& inst, const Policy& policy, std::int64_t episodes, std::uint64_t seed) {
    Matrix counts(inst.volunteers(), inst.horizon(), 0.0);
    Counters c;
    c.active_counts = &counts;
    run_range(inst, policy, 0, episodes, seed, c);
    for (int v = 0; v < inst.volunteers(); ++v) {
        for (int t = 0; t < inst.horizon(); ++t) counts(v, t) /= static_cast<double>(episodes);
    }
    return counts;
}

double brute_force_optimal_online(const Instance& inst) {
    const auto support = inst.distribution().support_max();
    const int nv = inst.volunteers();
    const int ns = inst.task_types();
    const int nt = inst.horizon();
    // Per-volunteer state c: 0 = active, c > 0 = becomes active c periods later.
    // Returns after the horizon are irrelevant, so clocks are capped at T.
    const int base = std::max(1, support ? std::min(*support, nt) : nt);
    std::int64_t states = 1;
    for (int v = 0; v < nv; ++v) {
        states *= base;
        if (states > kMaxOracleStates) {
            throw CapacityError("exact online optimum needs more than 1e6 joint states");
        }
    }

    std::vector<double> g(static_cast<std::size_t>(base) + 1, 0.0);
    for (int z = 1; z <= base; ++z) g[static_cast<std::size_t>(z)] = inst.distribution().pmf(z);
    // Mass of Z >= base collapses onto the largest clock.
    g[static_cast<std::size_t>(base)] = inst.distribution().survival(base - 1);

    std::vector<std::int64_t> weight(static_cast<std::size_t>(nv), 1);
    for (int v = 1; v < nv; ++v) weight[static_cast<std::size_t>(v)] = weight[static_cast<std::size_t>(v - 1)] * base;

    std::vector<double> next_value(static_cast<std::size_t>(states), 0.0);
    std::vector<double> value(static_cast<std::size_t>(states), 0.0);
    std::vector<int> clock(static_cast<std::size_t>(nv));
    std::vector<int> active;

    for (int t = nt - 1; t >= 0; --t) {
        for (std::int64_t code = 0; code < states; ++code) {
            std::int64_t rest = code;
            active.clear();
            std::int64_t idle_next = 0; // next state if nobody is notified
            for (int v = 0; v < nv; ++v) {
                const int c = static_cast<int>(rest % base);
                rest /= base;
                clock[static_cast<std::size_t>(v)] = c;
                if (c == 0) active.push_back(v);
                idle_next += static_cast<std::int64_t>(std::max(c - 1, 0)) * weight[static_cast<std::size_t>(v)];
            }
            const double wait = next_value[static_cast<std::size_t>(idle_next)];
            double total = inst.no_arrival(t) * wait;

            const int na = static_cast<int>(active.size());
            for (int s = 0; s < ns; ++s) {
                const double lam = inst.arrival(s, t);
                if (lam <= 0.0) continue;
                double best = wait;
                for (std::uint32_t mask = 1; mask < (1u << na); ++mask) {
                    double miss = 1.0;
                    std::vector<int> chosen;
                    for (int i = 0; i < na; ++i) {
                        if (mask & (1u << i)) {
                            chosen.push_back(active[static_cast<std::size_t>(i)]);
                            miss *= 1.0 - inst.match(active[static_cast<std::size_t>(i)], s);
                        }
                    }
                    // Chosen volunteers all had clock 0, so idle_next holds 0 for them.
                    double future = 0.0;
                    std::function<void(std::size_t, std::int64_t, double)> spread = [&](std::size_t i,
                                                                                        std::int64_t code_next,
                                                                                        double prob) {
                        if (prob == 0.0) return;
                        if (i == chosen.size()) {
                            future += prob * next_value[static_cast<std::size_t>(code_next)];
                            return;
                        }
                        const auto w = weight[static_cast<std::size_t>(chosen[i])];
                        for (int z = 1; z <= base; ++z) {
                            spread(i + 1, code_next + (z - 1) * w, prob * g[static_cast<std::size_t>(z)]);
                        }
                    };
                    spread(0, idle_next, 1.0);
                    best = std::max(best, 1.0 - miss + future);
                }
                total += lam * best;
            }
            value[static_cast<std::size_t>(code)] = total;
        }
        std::swap(value, next_value);
    }
    return next_value[0];
}

} // namespace volnotify
