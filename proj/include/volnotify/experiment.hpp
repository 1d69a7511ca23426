#ifndef VOLNOTIFY_EXPERIMENT_HPP
#define VOLNOTIFY_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "volnotify/bounds.hpp"
#include "volnotify/exante.hpp"
#include "volnotify/instance.hpp"
#include "volnotify/policy.hpp"

namespace volnotify {

// ---------------------------------------------------------------------------
// Policy grammar

/// sn | sdn | exante | all | random:n | best:n | upto:rho | rolling:H
/// ("notify_all" is accepted for "all"; "rolling" alone uses the rounded mean
/// inter-activity time as H).
struct PolicyRequest {
    enum class Kind { sn, sdn, exante, all, random, best, upto, rolling };

    Kind kind = Kind::sn;
    int n = 1;
    double rho = 0.5;
    int horizon = 0;

    bool operator==(const PolicyRequest&) const = default;
};

PolicyRequest parse_policy(const std::string& text);
/// Canonical spelling, e.g. "best:1"; parse_policy(to_string(r)) == r.
std::string to_string(const PolicyRequest& request);

/// Builds the online policy for `request` from plans computed on `planning`
/// with ex ante solution `selection` (computed on `planning` as well).
std::unique_ptr<Policy> build_policy(const PolicyRequest& request, const Instance& planning,
                                     const ExAnteSelection& selection, double threshold);

// ---------------------------------------------------------------------------
// Experiment configuration

struct ExperimentConfig {
    // Exactly one of the two instance sources is set.
    std::optional<std::string> instance_path;
    std::optional<CanonicalInstanceSpec> canonical;

    std::vector<std::string> policies{"sn", "sdn"};
    std::int64_t episodes = 10000;
    std::uint64_t seed = 1;
    int steps = kDefaultFrankWolfeSteps; // m
    double threshold = 1.0;              // theta
    std::string output;                  // empty: standard output
    int batches = 25;

    bool operator==(const ExperimentConfig&) const = default;
};

/// JSON form:
///   {"instance": {"path": "inst.json"} | {"canonical": "I4:q=0.1,eps=0.001"},
///    "policies": ["sn", "sdn"], "episodes": 100000, "seed": 7,
///    "m": 100, "theta": 1.0, "output": "out.csv", "batches": 25}
/// Everything but "instance" is optional. Throws ValidationError.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Reads a config file; a relative instance path is resolved against the
/// directory of the config file.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Loads the instance named by the config.
Instance resolve_instance(const ExperimentConfig& config);

/// Short identifier used in CSV rows: the canonical spec or the file stem.
std::string instance_id(const ExperimentConfig& config);

/// A path to a JSON instance file, or a canonical spec such as "I2:n=4".
Instance load_instance_argument(const std::string& argument);
std::string instance_argument_id(const std::string& argument);

// ---------------------------------------------------------------------------
// Comparison runs

struct CompareResult {
    std::string csv;      // header + one row per (policy, batch)
    nlohmann::json summary;
};

/// Solves the benchmark once, then simulates every policy over the same
/// episodes split into `batches` contiguous groups. CSV columns are the
/// simulation columns followed by "batch" (1-based). The summary holds, per
/// policy, the pooled mean, its standard error and the mean ratio to LP.
CompareResult run_compare(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Robustness to misestimated primitives

struct PerturbationSpec {
    enum class Target { match_probs, arrival_rates };

    Target target = Target::match_probs;
    double width = 0.1;
    int replicates = 10;
    std::uint64_t seed = 1;
};

std::string to_string(PerturbationSpec::Target target);
PerturbationSpec::Target parse_target(const std::string& text); // "p" | "lambda" | full names

/// Multiplies every targeted entry by an independent uniform factor on
/// [1 - w, 1 + w]. Match probabilities are clamped to [0, 1]; an arrival row
/// whose sum ends up above 1 is rescaled to sum to 1 and a warning is
/// appended to `warnings`. Replicates are independent streams of the seed.
Instance perturb_instance(const Instance& inst, const PerturbationSpec& spec, int replicate,
                          std::vector<std::string>* warnings = nullptr);

struct RobustnessRow {
    std::string policy;
    std::string target;
    std::string replicate; // "1".."R" or "mean"
    double baseline_mean = 0.0;
    double perturbed_mean = 0.0;
    double percent_change = 0.0;
};

struct RobustnessReport {
    std::vector<RobustnessRow> rows;
    std::vector<std::string> warnings;

    std::string csv() const;
};

/// For each policy: the plan built on the true instance is the baseline; each
/// replicate builds the plan on a perturbed instance and simulates it on the
/// true one with the same episodes. Emits R rows plus a mean row per policy.
RobustnessReport run_robustness(const ExperimentConfig& config, const PerturbationSpec& spec);

} // namespace volnotify

#endif // VOLNOTIFY_EXPERIMENT_HPP
