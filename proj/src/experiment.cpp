#include "volnotify/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "volnotify/errors.hpp"
#include "volnotify/io.hpp"
#include "volnotify/sim.hpp"

namespace volnotify {

using nlohmann::json;

namespace {

int parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    long value = 0;
    try {
        value = std::stol(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || value < 0 || value > 1'000'000) {
        throw ValidationError("bad " + what + " '" + text + "'");
    }
    return static_cast<int>(value);
}

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || !std::isfinite(value)) {
        throw ValidationError("bad " + what + " '" + text + "'");
    }
    return value;
}

double rounded(double value) { return round_significant(value, 12); }

json optional_number(const std::optional<double>& value) {
    return value ? json(rounded(*value)) : json(nullptr);
}

bool looks_canonical(const std::string& text) {
    return text.size() >= 2 && text[0] == 'I' && text[1] >= '1' && text[1] <= '6' &&
           (text.size() == 2 || text[2] == ':');
}

} // namespace

// ---------------------------------------------------------------------------

PolicyRequest parse_policy(const std::string& text) {
    using Kind = PolicyRequest::Kind;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const bool has_arg = colon != std::string::npos;
    const std::string arg = has_arg ? text.substr(colon + 1) : "";
    auto no_arg = [&](Kind kind) {
        if (has_arg) throw ValidationError("policy '" + head + "' takes no argument");
        PolicyRequest r;
        r.kind = kind;
        return r;
    };

    if (head == "sn") return no_arg(Kind::sn);
    if (head == "sdn") return no_arg(Kind::sdn);
    if (head == "exante") return no_arg(Kind::exante);
    if (head == "all" || head == "notify_all") return no_arg(Kind::all);

    PolicyRequest r;
    if (head == "random" || head == "best") {
        if (!has_arg) throw ValidationError("policy '" + head + "' needs a count, e.g. " + head + ":2");
        r.kind = head == "random" ? Kind::random : Kind::best;
        r.n = parse_int(arg, "volunteer count");
        return r;
    }
    if (head == "upto") {
        if (!has_arg) throw ValidationError("policy 'upto' needs a threshold, e.g. upto:0.5");
        r.kind = Kind::upto;
        r.rho = parse_double(arg, "response threshold");
        if (r.rho < 0.0 || r.rho > 1.0) throw ValidationError("upto threshold must lie in [0, 1]");
        return r;
    }
    if (head == "rolling") {
        r.kind = Kind::rolling;
        if (has_arg) {
            r.horizon = parse_int(arg, "rolling horizon");
            if (r.horizon < 1) throw ValidationError("rolling horizon must be at least 1");
        }
        return r;
    }
    throw ValidationError("unknown policy '" + text + "' (expected sn, sdn, exante, all, random:n, best:n, "
                          "upto:rho, rolling:H)");
}

std::string to_string(const PolicyRequest& request) {
    using Kind = PolicyRequest::Kind;
    switch (request.kind) {
        case Kind::sn: return "sn";
        case Kind::sdn: return "sdn";
        case Kind::exante: return "exante";
        case Kind::all: return "all";
        case Kind::random: return "random:" + std::to_string(request.n);
        case Kind::best: return "best:" + std::to_string(request.n);
        case Kind::upto: return "upto:" + format_shortest(request.rho);
        case Kind::rolling: return request.horizon > 0 ? "rolling:" + std::to_string(request.horizon) : "rolling";
    }
    return "?";
}

std::unique_ptr<Policy> build_policy(const PolicyRequest& request, const Instance& planning,
                                     const ExAnteSelection& selection, double threshold) {
    using Kind = PolicyRequest::Kind;
    using H = HeuristicSpec::Kind;
    HeuristicSpec spec;
    spec.threshold = threshold;
    switch (request.kind) {
        case Kind::sn: return make_sn_policy(sn_offline(planning, selection.x));
        case Kind::sdn: return make_sdn_policy(sdn_offline(planning, selection.x));
        case Kind::exante:
            spec.kind = H::follow_ex_ante;
            spec.x_star = selection.x;
            break;
        case Kind::all: spec.kind = H::notify_all; break;
        case Kind::random:
            spec.kind = H::notify_random_n;
            spec.n = request.n;
            break;
        case Kind::best:
            spec.kind = H::notify_best_n;
            spec.n = request.n;
            break;
        case Kind::upto:
            spec.kind = H::notify_upto_rho;
            spec.rho = request.rho;
            break;
        case Kind::rolling:
            spec.kind = H::rolling_horizon;
            spec.horizon = request.horizon;
            break;
    }
    return make_heuristic_policy(std::move(spec), planning, to_string(request));
}

// ---------------------------------------------------------------------------

ExperimentConfig config_from_json(const json& doc) {
    try {
        if (!doc.is_object()) throw ValidationError("config must be a JSON object");
        for (const auto& [key, value] : doc.items()) {
            static const char* known[] = {"instance", "policies", "episodes", "seed", "m", "theta", "output", "batches"};
            if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
                throw ValidationError("unknown config field '" + key + "'");
            }
        }
        ExperimentConfig config;
        if (!doc.contains("instance")) throw ValidationError("config needs an 'instance'");
        const json& source = doc.at("instance");
        if (source.is_string()) {
            // Shorthand: a bare string is a canonical spec or a path.
            const auto text = source.get<std::string>();
            if (looks_canonical(text)) {
                config.canonical = parse_canonical_spec(text);
            } else {
                config.instance_path = text;
            }
        } else if (source.is_object() && source.size() == 1 && source.contains("path")) {
            config.instance_path = source.at("path").get<std::string>();
        } else if (source.is_object() && source.size() == 1 && source.contains("canonical")) {
            config.canonical = parse_canonical_spec(source.at("canonical").get<std::string>());
        } else {
            throw ValidationError("'instance' must be {\"path\": ...} or {\"canonical\": ...}");
        }

        if (doc.contains("policies")) {
            config.policies = doc.at("policies").get<std::vector<std::string>>();
            if (config.policies.empty()) throw ValidationError("config lists no policies");
            for (const auto& p : config.policies) parse_policy(p);
        }
        if (doc.contains("episodes")) {
            const json& e = doc.at("episodes");
            if (!e.is_number_integer() || e.get<std::int64_t>() < 1) throw ValidationError("episodes must be >= 1");
            config.episodes = e.get<std::int64_t>();
        }
        if (doc.contains("seed")) {
            const json& s = doc.at("seed");
            if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
                throw ValidationError("seed must be a nonnegative 64-bit integer");
            }
            config.seed = s.get<std::uint64_t>();
        }
        if (doc.contains("m")) {
            const json& m = doc.at("m");
            if (!m.is_number_integer() || m.get<std::int64_t>() < 1 || m.get<std::int64_t>() > 1'000'000) {
                throw ValidationError("m must be a positive integer");
            }
            config.steps = m.get<int>();
        }
        if (doc.contains("theta")) {
            const json& theta = doc.at("theta");
            if (!theta.is_number() || theta.get<double>() < 0.0 || theta.get<double>() > 1.0) {
                throw ValidationError("theta must lie in [0, 1]");
            }
            config.threshold = theta.get<double>();
        }
        if (doc.contains("output")) config.output = doc.at("output").get<std::string>();
        if (doc.contains("batches")) {
            const json& b = doc.at("batches");
            if (!b.is_number_integer() || b.get<std::int64_t>() < 1 || b.get<std::int64_t>() > 1'000'000) {
                throw ValidationError("batches must be a positive integer");
            }
            config.batches = b.get<int>();
        }
        return config;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed config: ") + e.what());
    }
}

json config_to_json(const ExperimentConfig& config) {
    json doc;
    if (config.canonical) {
        doc["instance"] = json{{"canonical", to_string(*config.canonical)}};
    } else {
        doc["instance"] = json{{"path", config.instance_path.value_or("")}};
    }
    doc["policies"] = config.policies;
    doc["episodes"] = config.episodes;
    doc["seed"] = config.seed;
    doc["m"] = config.steps;
    doc["theta"] = config.threshold;
    doc["output"] = config.output;
    doc["batches"] = config.batches;
    return doc;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    ExperimentConfig config = config_from_json(doc);
    if (config.instance_path && std::filesystem::path(*config.instance_path).is_relative()) {
        config.instance_path = (path.parent_path() / *config.instance_path).lexically_normal().string();
    }
    return config;
}

Instance resolve_instance(const ExperimentConfig& config) {
    if (config.canonical) return make_instance(*config.canonical);
    if (config.instance_path) return load_instance(*config.instance_path);
    throw ValidationError("config names no instance");
}

std::string instance_id(const ExperimentConfig& config) {
    if (config.canonical) return to_string(*config.canonical);
    if (config.instance_path) return std::filesystem::path(*config.instance_path).stem().string();
    return "";
}

Instance load_instance_argument(const std::string& argument) {
    if (std::filesystem::exists(argument)) return load_instance(argument);
    if (looks_canonical(argument)) return make_instance(parse_canonical_spec(argument));
    throw ValidationError("'" + argument + "' is neither an instance file nor a canonical spec (I1..I6)");
}

std::string instance_argument_id(const std::string& argument) {
    if (!std::filesystem::exists(argument) && looks_canonical(argument)) {
        return to_string(parse_canonical_spec(argument));
    }
    return std::filesystem::path(argument).stem().string();
}

// ---------------------------------------------------------------------------

CompareResult run_compare(const ExperimentConfig& config) {
    std::vector<PolicyRequest> requests;
    for (const auto& text : config.policies) requests.push_back(parse_policy(text));
    if (requests.empty()) throw ValidationError("no policies to compare");
    if (config.episodes < 1) throw ValidationError("episodes must be >= 1");

    const Instance inst = resolve_instance(config);
    const std::string id = instance_id(config);
    const ExAnteSelection selection = select_ex_ante(inst, config.steps);
    const double lp = selection.benchmark.lp_value;
    const std::int64_t batches = std::min<std::int64_t>(config.batches, config.episodes);

    CompareResult result;
    std::ostringstream csv;
    csv << sim_csv_header() << ",batch\n";
    json policies = json::array();
    for (const auto& request : requests) {
        const auto policy = build_policy(request, inst, selection, config.threshold);
        const std::string name = to_string(request);
        std::vector<SimStats> parts;
        std::int64_t first = 0;
        for (std::int64_t b = 0; b < batches; ++b) {
            const std::int64_t count = config.episodes / batches + (b < config.episodes % batches ? 1 : 0);
            parts.push_back(simulate_range(inst, *policy, first, count, config.seed, lp));
            csv << sim_csv_row(parts.back(), name, id) << "," << (b + 1) << "\n";
            first += count;
        }
        const SimStats pooled = pool(parts);
        json entry{{"policy", name},
                   {"episodes", pooled.episodes},
                   {"mean_completed", rounded(pooled.mean_completed)},
                   {"std_error", rounded(pooled.std_error)},
                   {"mean_ratio", optional_number(pooled.ratio_to_lp)},
                   {"ratio_std_error", lp > 0.0 ? json(rounded(pooled.std_error / lp)) : json(nullptr)}};
        policies.push_back(std::move(entry));
    }
    result.csv = csv.str();
    result.summary = json{{"instance_id", id},
                          {"lp_value", rounded(lp)},
                          {"ex_ante", to_string(selection.tag)},
                          {"episodes", config.episodes},
                          {"batches", batches},
                          {"seed", config.seed},
                          {"policies", std::move(policies)}};
    return result;
}

// ---------------------------------------------------------------------------

std::string to_string(PerturbationSpec::Target target) {
    return target == PerturbationSpec::Target::match_probs ? "match_probs" : "arrival_rates";
}

PerturbationSpec::Target parse_target(const std::string& text) {
    if (text == "p" || text == "match_probs") return PerturbationSpec::Target::match_probs;
    if (text == "lambda" || text == "arrival_rates") return PerturbationSpec::Target::arrival_rates;
    throw ValidationError("unknown perturbation target '" + text + "' (expected p or lambda)");
}

Instance perturb_instance(const Instance& inst, const PerturbationSpec& spec, int replicate,
                          std::vector<std::string>* warnings) {
    if (!(spec.width >= 0.0 && spec.width < 1.0)) throw ValidationError("perturbation width must lie in [0, 1)");
    if (spec.replicates < 1) throw ValidationError("perturbation needs at least one replicate");
    if (replicate < 0 || replicate >= spec.replicates) throw ValidationError("replicate index out of range");

    const auto target_index = static_cast<std::uint64_t>(spec.target);
    Rng rng = Rng::substream(spec.seed, 2 * static_cast<std::uint64_t>(replicate) + target_index);
    auto factor = [&] { return 1.0 - spec.width + 2.0 * spec.width * rng.uniform(); };

    Matrix lam = inst.arrival_rates();
    Matrix p = inst.match_probs();
    if (spec.target == PerturbationSpec::Target::match_probs) {
        for (int v = 0; v < p.rows(); ++v) {
            for (int s = 0; s < p.cols(); ++s) p(v, s) = std::clamp(p(v, s) * factor(), 0.0, 1.0);
        }
    } else {
        for (int t = 0; t < lam.rows(); ++t) {
            double total = 0.0;
            for (int s = 0; s < lam.cols(); ++s) total += (lam(t, s) *= factor());
            if (total > 1.0 + Instance::kRowSumTolerance) {
                for (int s = 0; s < lam.cols(); ++s) lam(t, s) /= total;
                if (warnings != nullptr) {
                    warnings->push_back("replicate " + std::to_string(replicate + 1) + ": arrival rates of period " +
                                        std::to_string(t + 1) + " summed to " + format_decimal(total) +
                                        " and were rescaled to 1");
                }
            }
        }
    }
    return Instance(std::move(lam), std::move(p), inst.distribution());
}

std::string RobustnessReport::csv() const {
    std::ostringstream os;
    os << "policy,target,replicate,baseline_mean,perturbed_mean,percent_change\n";
    for (const auto& r : rows) {
        os << r.policy << "," << r.target << "," << r.replicate << "," << format_decimal(r.baseline_mean) << ","
           << format_decimal(r.perturbed_mean) << "," << format_decimal(r.percent_change) << "\n";
    }
    return os.str();
}

RobustnessReport run_robustness(const ExperimentConfig& config, const PerturbationSpec& spec) {
    std::vector<PolicyRequest> requests;
    for (const auto& text : config.policies) requests.push_back(parse_policy(text));
    if (requests.empty()) throw ValidationError("no policies to evaluate");

    const Instance inst = resolve_instance(config);
    const ExAnteSelection selection = select_ex_ante(inst, config.steps);

    RobustnessReport report;
    std::vector<Instance> perturbed;
    std::vector<ExAnteSelection> perturbed_selection;
    for (int r = 0; r < spec.replicates; ++r) {
        perturbed.push_back(perturb_instance(inst, spec, r, &report.warnings));
        perturbed_selection.push_back(select_ex_ante(perturbed.back(), config.steps));
    }

    auto change = [](double base, double value) {
        if (base > 0.0) return 100.0 * (value - base) / base;
        return value == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    };
    const std::string target = to_string(spec.target);
    for (const auto& request : requests) {
        const std::string name = to_string(request);
        const auto baseline_policy = build_policy(request, inst, selection, config.threshold);
        const double base = simulate(inst, *baseline_policy, config.episodes, config.seed).mean_completed;
        double mean_sum = 0.0;
        double change_sum = 0.0;
        for (int r = 0; r < spec.replicates; ++r) {
            const auto policy = build_policy(request, perturbed[static_cast<std::size_t>(r)],
                                             perturbed_selection[static_cast<std::size_t>(r)], config.threshold);
            const double value = simulate(inst, *policy, config.episodes, config.seed).mean_completed;
            report.rows.push_back({name, target, std::to_string(r + 1), base, value, change(base, value)});
            mean_sum += value;
            change_sum += report.rows.back().percent_change;
        }
        const double reps = spec.replicates;
        report.rows.push_back({name, target, "mean", base, mean_sum / reps, change_sum / reps});
    }
    return report;
}

} // namespace volnotify
