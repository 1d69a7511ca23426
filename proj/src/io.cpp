#include "volnotify/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "volnotify/errors.hpp"

namespace volnotify {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return doc.at(key);
}

int read_count(const json& doc, const char* key) {
    const json& value = field(doc, key);
    if (!value.is_number_integer() || value.get<long long>() < 1 || value.get<long long>() > 1'000'000) {
        throw ValidationError(std::string("field '") + key + "' must be a positive integer");
    }
    return value.get<int>();
}

double read_number(const json& value, const std::string& what) {
    if (!value.is_number()) throw ValidationError(what + " must be a number");
    return value.get<double>();
}

Matrix read_dense(const json& rows, int nrows, int ncols, const std::string& what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != nrows) {
        throw DimensionError(what + " must have " + std::to_string(nrows) + " rows");
    }
    Matrix out(nrows, ncols, 0.0);
    for (int r = 0; r < nrows; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != ncols) {
            throw DimensionError(what + " row " + std::to_string(r + 1) + " must have " + std::to_string(ncols) +
                                 " entries");
        }
        for (int c = 0; c < ncols; ++c) out(r, c) = read_number(row[static_cast<std::size_t>(c)], what);
    }
    return out;
}

bool has_dense_shape(const json& rows, int nrows, int ncols) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != nrows) return false;
    for (const json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != ncols) return false;
    }
    return true;
}

Matrix read_sparse_arrivals(const json& triples, int horizon, int types) {
    if (!triples.is_array()) throw ValidationError("arrivals must be an array");
    Matrix out(horizon, types, 0.0);
    for (const json& item : triples) {
        if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() || !item[1].is_number_integer()) {
            throw ValidationError("sparse arrivals must be [t, s, rate] triples with integer t and s");
        }
        const auto t = item[0].get<long long>();
        const auto s = item[1].get<long long>();
        if (t < 1 || t > horizon || s < 1 || s > types) {
            throw DimensionError("sparse arrival index out of range: [" + std::to_string(t) + ", " +
                                 std::to_string(s) + "]");
        }
        out(static_cast<int>(t - 1), static_cast<int>(s - 1)) = read_number(item[2], "arrival rate");
    }
    return out;
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

json distribution_to_json(const InterActivityDistribution& dist) {
    json params = json::object();
    std::visit(
        [&](const auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, InterActivityDistribution::Geometric>) {
                params["q"] = d.success_prob;
            } else if constexpr (std::is_same_v<D, InterActivityDistribution::Deterministic>) {
                params["length"] = d.length;
            } else {
                params["probs"] = d.probs;
            }
        },
        dist.variant());
    return json{{"type", dist.kind_name()}, {"params", params}};
}

InterActivityDistribution distribution_from_json(const json& doc) {
    const json& type = field(doc, "type");
    if (!type.is_string()) throw ValidationError("dist.type must be a string");
    const json& params = field(doc, "params");
    const auto name = type.get<std::string>();
    if (name == "geometric") {
        return InterActivityDistribution::geometric(read_number(field(params, "q"), "dist.params.q"));
    }
    if (name == "deterministic") {
        const json& length = field(params, "length");
        if (!length.is_number_integer()) throw ValidationError("dist.params.length must be an integer");
        return InterActivityDistribution::deterministic(length.get<int>());
    }
    if (name == "tabulated") {
        const json& probs = field(params, "probs");
        if (!probs.is_array()) throw ValidationError("dist.params.probs must be an array");
        std::vector<double> values;
        for (const json& p : probs) values.push_back(read_number(p, "dist.params.probs entry"));
        return InterActivityDistribution::tabulated(std::move(values));
    }
    throw ValidationError("unknown distribution type '" + name + "'");
}

json instance_to_json(const Instance& inst) {
    return json{{"T", inst.horizon()},
                {"V", inst.volunteers()},
                {"S", inst.task_types()},
                {"arrivals", matrix_to_json(inst.arrival_rates())},
                {"match", matrix_to_json(inst.match_probs())},
                {"dist", distribution_to_json(inst.distribution())}};
}

Instance instance_from_json(const json& doc) {
    try {
        const int horizon = read_count(doc, "T");
        const int nv = read_count(doc, "V");
        const int ns = read_count(doc, "S");
        const json& arrivals = field(doc, "arrivals");
        bool sparse = !has_dense_shape(arrivals, horizon, ns);
        if (doc.contains("arrivals_format")) {
            const auto fmt = doc.at("arrivals_format").get<std::string>();
            if (fmt != "dense" && fmt != "sparse") throw ValidationError("arrivals_format must be dense or sparse");
            sparse = fmt == "sparse";
        }
        Matrix lam = sparse ? read_sparse_arrivals(arrivals, horizon, ns)
                            : read_dense(arrivals, horizon, ns, "arrivals");
        Matrix p = read_dense(field(doc, "match"), nv, ns, "match");
        return Instance(std::move(lam), std::move(p), distribution_from_json(field(doc, "dist")));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed instance document: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw ValidationError("failed writing '" + path.string() + "'");
}

Instance load_instance(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return instance_from_json(doc);
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    write_text_file(path, instance_to_json(inst).dump(2) + "\n");
}

std::string format_shortest(double value) {
    char buf[32];
    for (int digits = 1; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) return value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
    return std::strtod(buf, nullptr);
}

json solution_to_json(const FractionalSolution& x) {
    json entries = json::array();
    for (int v = 0; v < x.volunteers(); ++v) {
        for (int s = 0; s < x.task_types(); ++s) {
            for (int t = 0; t < x.horizon(); ++t) {
                const double value = round_significant(x(v, s, t), 12);
                if (value == 0.0) continue;
                entries.push_back(json{{"v", v + 1}, {"s", s + 1}, {"t", t + 1}, {"value", value}});
            }
        }
    }
    return entries;
}

std::string format_decimal(double value, int digits) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";
    const double rounded = round_significant(value, digits);
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(rounded))));
    const int decimals = std::max(0, digits - 1 - exponent);
    std::string text(static_cast<std::size_t>(std::snprintf(nullptr, 0, "%.*f", decimals, rounded)), '\0');
    std::snprintf(text.data(), text.size() + 1, "%.*f", decimals, rounded);
    if (text.find('.') != std::string::npos) {
        while (text.back() == '0') text.pop_back();
        if (text.back() == '.') text.pop_back();
    }
    return text == "-0" ? "0" : text;
}

} // namespace volnotify
