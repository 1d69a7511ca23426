#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "support.hpp"
#include "volnotify/errors.hpp"
#include "volnotify/experiment.hpp"
#include "volnotify/io.hpp"
#include "volnotify/sim.hpp"

using namespace volnotify;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        Rng rng(static_cast<std::uint64_t>(::getpid()));
        path = fs::temp_directory_path() / ("volnotify-test-" + std::to_string(rng.next() % 1000000007));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string command = std::string(VOLNOTIFY_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("instance documents round-trip exactly") {
    for (const Instance& inst : testsupport::random_corpus(30, 91)) {
        const json doc = instance_to_json(inst);
        CHECK(instance_from_json(json::parse(doc.dump())) == inst);
    }
    TempDir dir;
    const Instance inst = testsupport::random_corpus(1, 92).front();
    save_instance(inst, dir.path / "inst.json");
    CHECK(load_instance(dir.path / "inst.json") == inst);
}

TEST_CASE("sparse arrivals") {
    const json doc = json::parse(R"({"T": 2, "V": 1, "S": 2,
        "arrivals": [[1, 1, 1.0], [2, 2, 0.1]], "match": [[0.001, 1]],
        "dist": {"type": "geometric", "params": {"q": 0.1}}})");
    const Instance inst = instance_from_json(doc);
    CHECK(inst.arrival(0, 0) == 1.0);
    CHECK(inst.arrival(1, 1) == 0.1);
    CHECK(inst.arrival(1, 0) == 0.0);

    // A two-triple list that also has the dense 2 x 3 shape needs the format flag.
    json forced = json::parse(R"({"T": 2, "V": 1, "S": 3, "arrivals_format": "sparse",
        "arrivals": [[1, 1, 0.5], [2, 3, 0.25]], "match": [[1, 1, 1]],
        "dist": {"type": "deterministic", "params": {"length": 3}}})");
    const Instance sparse = instance_from_json(forced);
    CHECK(sparse.arrival(0, 0) == 0.5);
    CHECK(sparse.arrival(2, 1) == 0.25);
    forced["arrivals_format"] = "dense";
    CHECK_THROWS_AS(instance_from_json(forced), ValidationError);
}

TEST_CASE("malformed instance documents") {
    const auto base = json::parse(R"({"T": 1, "V": 1, "S": 1, "arrivals": [[0.5]], "match": [[0.5]],
        "dist": {"type": "tabulated", "params": {"probs": [0.5, 0.5]}}})");
    CHECK_NOTHROW(instance_from_json(base));
    auto doc = base;
    doc.erase("match");
    CHECK_THROWS_AS(instance_from_json(doc), ValidationError);
    doc = base;
    doc["T"] = 0;
    CHECK_THROWS_AS(instance_from_json(doc), ValidationError);
    doc = base;
    doc["dist"]["type"] = "poisson";
    CHECK_THROWS_AS(instance_from_json(doc), ValidationError);
    doc = base;
    doc["arrivals"] = json::parse("[[1, 2, 0.5]]");
    CHECK_THROWS_AS(instance_from_json(doc), DimensionError);
    doc = base;
    doc["arrivals"] = json::parse("[[1.5]]");
    CHECK_THROWS_AS(instance_from_json(doc), ValidationError);
    CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), ValidationError);
}

TEST_CASE("number formatting") {
    CHECK(format_decimal(0.1) == "0.1");
    CHECK(format_decimal(1.0 / 3.0) == "0.3333333333");
    CHECK(format_decimal(12345.678) == "12345.678");
    CHECK(format_decimal(1e-7) == "0.0000001");
    CHECK(format_decimal(-2.5) == "-2.5");
    CHECK(format_decimal(0.0) == "0");
    CHECK(format_decimal(std::nan("")) == "nan");
    CHECK(format_shortest(0.1) == "0.1");
    CHECK(format_shortest(1.0 / 3.0) == "0.3333333333333333");
    CHECK(round_significant(0.123456789, 3) == 0.123);
}

TEST_CASE("solution documents list nonzero entries") {
    FractionalSolution x(1, 2, 2);
    x(0, 1, 1) = 1.0 / 3.0;
    const json doc = solution_to_json(x);
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["v"] == 1);
    CHECK(doc[0]["s"] == 2);
    CHECK(doc[0]["t"] == 2);
    CHECK(doc[0]["value"].get<double>() == 0.333333333333);
}

TEST_CASE("policy grammar") {
    for (const char* text : {"sn", "sdn", "exante", "all", "random:3", "best:2", "upto:0.75", "rolling:5", "rolling"}) {
        const auto request = parse_policy(text);
        CHECK(parse_policy(to_string(request)) == request);
    }
    CHECK(parse_policy("notify_all") == parse_policy("all"));
    CHECK(parse_policy("best:2").n == 2);
    CHECK(parse_policy("upto:0.75").rho == 0.75);
    CHECK(parse_policy("rolling").horizon == 0);
    for (const char* bad : {"", "snn", "best", "best:x", "best:-1", "upto:2", "rolling:-3", "random:1.5"}) {
        CHECK_THROWS_AS(parse_policy(bad), ValidationError);
    }
}

TEST_CASE("experiment configs") {
    ExperimentConfig config;
    config.canonical = parse_canonical_spec("I4");
    config.policies = {"sn", "best:1"};
    config.episodes = 500;
    config.seed = 9;
    config.steps = 20;
    config.threshold = 0.5;
    config.output = "out.csv";
    config.batches = 5;
    CHECK(config_from_json(config_to_json(config)) == config);
    CHECK(instance_id(config) == "I4:q=0.1,eps=0.001");

    const auto minimal = config_from_json(json::parse(R"({"instance": "I2:n=3"})"));
    CHECK(minimal.canonical->n == 3);
    CHECK(minimal.policies == std::vector<std::string>{"sn", "sdn"});
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"policies": ["sn"]})")), ValidationError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"instance": "I4", "episode": 5})")), ValidationError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"instance": "I4", "policies": ["zz"]})")), ValidationError);

    TempDir dir;
    fs::create_directories(dir.path / "data");
    save_instance(make_instance(parse_canonical_spec("I5")), dir.path / "data" / "five.json");
    write_text_file(dir.path / "cfg.json", R"({"instance": {"path": "data/five.json"}, "episodes": 10})");
    const auto loaded = load_config(dir.path / "cfg.json");
    CHECK(resolve_instance(loaded) == make_instance(parse_canonical_spec("I5")));
    CHECK(instance_id(loaded) == "five");
}

TEST_CASE("perturbation") {
    const Instance inst = testsupport::random_corpus(1, 93, 4, 3, 6).front();
    PerturbationSpec spec;
    spec.width = 0.0;
    CHECK(perturb_instance(inst, spec, 0) == inst);
    spec.target = PerturbationSpec::Target::arrival_rates;
    CHECK(perturb_instance(inst, spec, 0) == inst);

    spec.width = 0.2;
    spec.target = PerturbationSpec::Target::match_probs;
    const Instance a = perturb_instance(inst, spec, 0);
    CHECK(a == perturb_instance(inst, spec, 0));
    CHECK_FALSE(a == perturb_instance(inst, spec, 1));
    CHECK(a.arrival_rates() == inst.arrival_rates());
    for (int v = 0; v < inst.volunteers(); ++v) {
        for (int s = 0; s < inst.task_types(); ++s) {
            const double p = inst.match(v, s);
            CHECK(a.match(v, s) >= std::max(0.0, 0.8 * p) - 1e-15);
            CHECK(a.match(v, s) <= std::min(1.0, 1.2 * p) + 1e-15);
        }
    }

    // A full arrival row scaled up is renormalized with a warning.
    const Instance full(Matrix(3, 2, 0.5), Matrix(1, 2, 0.5), InterActivityDistribution::geometric(0.5));
    spec.target = PerturbationSpec::Target::arrival_rates;
    std::vector<std::string> warnings;
    const Instance b = perturb_instance(full, spec, 0, &warnings);
    CHECK_FALSE(warnings.empty());
    for (int t = 0; t < 3; ++t) CHECK(b.arrival(0, t) + b.arrival(1, t) <= 1.0 + 1e-9);

    CHECK(parse_target("p") == PerturbationSpec::Target::match_probs);
    CHECK(parse_target("lambda") == PerturbationSpec::Target::arrival_rates);
    CHECK_THROWS_AS(parse_target("mu"), ValidationError);
}

TEST_CASE("comparison runs") {
    ExperimentConfig config;
    config.canonical = parse_canonical_spec("I2:n=4");
    config.policies = {"sn", "sdn", "all"};
    config.episodes = 1000;
    config.batches = 4;
    const CompareResult result = run_compare(config);
    const auto rows = lines(result.csv);
    REQUIRE(rows.size() == 1 + 3 * 4);
    CHECK(rows[0] == sim_csv_header() + ",batch");
    CHECK(rows[1].rfind("sn,I2:n=4,250,1,", 0) == 0);
    CHECK(rows[1].substr(rows[1].size() - 2) == ",1");
    CHECK(result.summary["lp_value"].get<double>() == doctest::Approx(5.0));
    REQUIRE(result.summary["policies"].size() == 3);
    CHECK(result.summary["policies"][0]["episodes"] == 1000);
    CHECK(run_compare(config).csv == result.csv);

    config.batches = 5000;
    CHECK(lines(run_compare(config).csv).size() == 1 + 3 * 1000);
}

TEST_CASE("robustness with zero width changes nothing") {
    ExperimentConfig config;
    config.canonical = parse_canonical_spec("I4");
    config.policies = {"sn", "best:1"};
    config.episodes = 2000;
    PerturbationSpec spec;
    spec.width = 0.0;
    spec.replicates = 2;
    const RobustnessReport report = run_robustness(config, spec);
    REQUIRE(report.rows.size() == 2 * 3);
    for (const auto& row : report.rows) {
        CHECK(row.percent_change == 0.0);
        CHECK(row.baseline_mean == row.perturbed_mean);
    }
    CHECK(report.rows[2].replicate == "mean");
    CHECK(lines(report.csv())[0] == "policy,target,replicate,baseline_mean,perturbed_mean,percent_change");
}

TEST_CASE("command-line exit codes and outputs") {
    TempDir dir;
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("frobnicate").code == 1);
    CHECK(run_cli("bench /nonexistent/file.json").code == 1);
    CHECK(run_cli("simulate I4 --policy nonsense").code == 1);
    CHECK(run_cli("simulate I4 --episodes 0").code == 1);

    const Run bench = run_cli("bench I4");
    CHECK(bench.code == 0);
    CHECK(json::parse(bench.out)["lp_value"].get<double>() == doctest::Approx(0.101));

    const Run bounds = run_cli("bounds --grid 0.25");
    CHECK(bounds.code == 0);
    CHECK(lines(bounds.out) == std::vector<std::string>{"q,sn_lower,kappa", "0,0.3160602794,0.334",
                                                        lines(bounds.out)[2], lines(bounds.out)[3],
                                                        lines(bounds.out)[4], "1,0.6321205588,1"});

    const Run sim = run_cli("simulate I4 --policy sn sdn --episodes 1000 --seed 3");
    CHECK(sim.code == 0);
    CHECK(lines(sim.out).size() == 3);
    CHECK(sim.out == run_cli("simulate I4 --policy sn sdn --episodes 1000 --seed 3").out);

    const std::string inst_path = (dir.path / "i5.json").string();
    CHECK(run_cli("instance I5 --out " + inst_path).code == 0);
    const Run exante = run_cli("exante " + inst_path);
    CHECK(exante.code == 0);
    CHECK(json::parse(exante.out)["selected"] == "SQ");

    write_text_file(dir.path / "cfg.json", R"({"instance": "I4", "policies": ["sn"], "episodes": 100, "batches": 2})");
    const std::string csv_path = (dir.path / "cmp.csv").string();
    CHECK(run_cli("compare " + (dir.path / "cfg.json").string() + " --out " + csv_path).code == 0);
    CHECK(fs::exists(csv_path + ".json"));
    CHECK(lines(read_text_file(csv_path)).size() == 3);
}
