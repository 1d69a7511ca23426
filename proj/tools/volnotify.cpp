// Command-line front end: benchmark, ex ante solutions, simulation,
// comparisons, the bound curves and perturbation studies.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "volnotify/bounds.hpp"
#include "volnotify/errors.hpp"
#include "volnotify/exante.hpp"
#include "volnotify/experiment.hpp"
#include "volnotify/generate.hpp"
#include "volnotify/io.hpp"
#include "volnotify/sim.hpp"

namespace {

using namespace volnotify;
using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

double rounded(double v) { return round_significant(v, 12); }

void cmd_bench(const std::string& instance, const std::string& out) {
    const Instance inst = load_instance_argument(instance);
    const BenchmarkResult bench = benchmark_lp(inst);
    const json doc{{"instance_id", instance_argument_id(instance)},
                   {"lp_value", rounded(bench.lp_value)},
                   {"x_lp", solution_to_json(bench.x_lp)}};
    emit(doc.dump(2) + "\n", out);
}

void cmd_exante(const std::string& instance, int steps, const std::string& out) {
    const Instance inst = load_instance_argument(instance);
    const ExAnteSelection sel = select_ex_ante(inst, steps);
    const json doc{{"instance_id", instance_argument_id(instance)},
                   {"m", steps},
                   {"lp_value", rounded(sel.benchmark.lp_value)},
                   {"f", {{"lp", rounded(sel.candidate_f[0])}, {"aa", rounded(sel.candidate_f[1])},
                          {"sq", rounded(sel.candidate_f[2])}}},
                   {"selected", to_string(sel.tag)},
                   {"f_value", rounded(sel.f_value)},
                   {"x", solution_to_json(sel.x)}};
    emit(doc.dump(2) + "\n", out);
}

void cmd_simulate(const std::string& instance, const std::vector<std::string>& policies, std::int64_t episodes,
                  std::uint64_t seed, int steps, double theta, const std::string& out) {
    if (episodes < 1) throw ValidationError("--episodes must be at least 1");
    if (theta < 0.0 || theta > 1.0) throw ValidationError("--theta must lie in [0, 1]");
    std::vector<PolicyRequest> requests;
    for (const auto& p : policies) requests.push_back(parse_policy(p));
    const Instance inst = load_instance_argument(instance);
    const std::string id = instance_argument_id(instance);
    const ExAnteSelection sel = select_ex_ante(inst, steps);
    std::ostringstream csv;
    csv << sim_csv_header() << "\n";
    for (const auto& request : requests) {
        const auto policy = build_policy(request, inst, sel, theta);
        const SimStats stats = simulate(inst, *policy, episodes, seed, sel.benchmark.lp_value);
        csv << sim_csv_row(stats, to_string(request), id) << "\n";
    }
    emit(csv.str(), out);
}

void cmd_compare(const std::string& config_path, const std::string& out_override, const std::string& summary_path) {
    ExperimentConfig config = load_config(config_path);
    if (!out_override.empty()) config.output = out_override;
    const CompareResult result = run_compare(config);
    emit(result.csv, config.output);
    const std::string summary = result.summary.dump(2) + "\n";
    if (!summary_path.empty()) {
        write_text_file(summary_path, summary);
    } else if (!config.output.empty()) {
        write_text_file(config.output + ".json", summary);
    } else {
        std::cerr << summary;
    }
}

void cmd_bounds(double step, const std::string& out) {
    std::ostringstream csv;
    csv << "q,sn_lower,kappa\n";
    for (const auto& row : bounds_grid(step)) {
        csv << format_decimal(row.q) << "," << format_decimal(row.sn_lower) << "," << format_decimal(row.kappa)
            << "\n";
    }
    emit(csv.str(), out);
}

void cmd_perturb(const std::string& config_path, const std::string& target, double width, int replicates,
                 std::uint64_t seed, const std::string& out) {
    const ExperimentConfig config = load_config(config_path);
    std::vector<PerturbationSpec::Target> targets;
    if (target == "both") {
        targets = {PerturbationSpec::Target::match_probs, PerturbationSpec::Target::arrival_rates};
    } else {
        targets = {parse_target(target)};
    }
    std::string csv;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const PerturbationSpec spec{targets[i], width, replicates, seed};
        const RobustnessReport report = run_robustness(config, spec);
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
        std::string part = report.csv();
        if (i > 0) part.erase(0, part.find('\n') + 1); // one header only
        csv += part;
    }
    emit(csv, out.empty() ? config.output : out);
}

void cmd_instance(const std::string& spec, std::uint64_t seed, bool random, const std::string& out) {
    if (random) {
        Rng rng(seed);
        emit(instance_to_json(random_instance(RandomInstanceOptions{}, rng)).dump(2) + "\n", out);
        return;
    }
    emit(instance_to_json(make_instance(parse_canonical_spec(spec))).dump(2) + "\n", out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volunteer notification: benchmark, ex ante solutions, policies and simulation"};
    app.require_subcommand(1);

    std::string instance, config_path, out, summary_path, target = "p", canonical = "I4";
    std::vector<std::string> policies{"sn"};
    std::int64_t episodes = 10000;
    std::uint64_t seed = 1;
    int steps = kDefaultFrankWolfeSteps;
    double theta = 1.0, grid = 0.05, width = 0.1;
    int replicates = 10;
    bool random = false;

    auto* bench = app.add_subcommand("bench", "Solve the LP benchmark");
    bench->add_option("instance", instance, "Instance JSON file or canonical spec (e.g. I4:q=0.1,eps=0.001)")
        ->required();
    bench->add_option("--out", out, "Write to this file instead of standard output");

    auto* exante = app.add_subcommand("exante", "Compute the three ex ante candidates and pick the best");
    exante->add_option("instance", instance, "Instance JSON file or canonical spec")->required();
    exante->add_option("--m", steps, "Frank-Wolfe steps")->check(CLI::PositiveNumber);
    exante->add_option("--out", out, "Write to this file instead of standard output");

    auto* sim = app.add_subcommand("simulate", "Simulate policies and print one CSV row per policy");
    sim->add_option("instance", instance, "Instance JSON file or canonical spec")->required();
    sim->add_option("--policy", policies, "sn, sdn, exante, all, random:n, best:n, upto:rho, rolling:H")
        ->take_all();
    sim->add_option("--episodes", episodes, "Number of episodes");
    sim->add_option("--seed", seed, "Random seed");
    sim->add_option("--m", steps, "Frank-Wolfe steps")->check(CLI::PositiveNumber);
    sim->add_option("--theta", theta, "Heuristic eligibility threshold");
    sim->add_option("--out", out, "Write CSV to this file instead of standard output");

    auto* compare = app.add_subcommand("compare", "Run an experiment config: CSV per batch plus a JSON summary");
    compare->add_option("config", config_path, "Experiment config JSON")->required();
    compare->add_option("--out", out, "CSV path (overrides the config's output)");
    compare->add_option("--summary", summary_path, "Summary JSON path (default: <output>.json, or stderr)");

    auto* bounds = app.add_subcommand("bounds", "Print the SN guarantee and the kappa upper bound over a q grid");
    bounds->add_option("--grid", grid, "Grid step in (0, 1]");
    bounds->add_option("--out", out, "Write CSV to this file instead of standard output");

    auto* perturb = app.add_subcommand("perturb", "Robustness of policies to misestimated primitives");
    perturb->add_option("config", config_path, "Experiment config JSON")->required();
    perturb->add_option("--target", target, "p, lambda or both");
    perturb->add_option("--width", width, "Relative half-width w in [0, 1)");
    perturb->add_option("--replicates", replicates, "Number of perturbed instances R");
    perturb->add_option("--seed", seed, "Perturbation seed");
    perturb->add_option("--out", out, "CSV path (default: the config's output, or standard output)");

    auto* inst_cmd = app.add_subcommand("instance", "Write a canonical or random instance as JSON");
    inst_cmd->add_option("spec", canonical, "Canonical spec, e.g. I2:n=4");
    inst_cmd->add_flag("--random", random, "Generate a random instance instead");
    inst_cmd->add_option("--seed", seed, "Seed for --random");
    inst_cmd->add_option("--out", out, "Write to this file instead of standard output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*bench) cmd_bench(instance, out);
        if (*exante) cmd_exante(instance, steps, out);
        if (*sim) cmd_simulate(instance, policies, episodes, seed, steps, theta, out);
        if (*compare) cmd_compare(config_path, out, summary_path);
        if (*bounds) cmd_bounds(grid, out);
        if (*perturb) cmd_perturb(config_path, target, width, replicates, seed, out);
        if (*inst_cmd) cmd_instance(canonical, seed, random, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
