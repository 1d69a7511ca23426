#ifndef VOLNOTIFY_IO_HPP
#define VOLNOTIFY_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "volnotify/fractional.hpp"
#include "volnotify/instance.hpp"

namespace volnotify {

/// Instance documents look like
///
///   {"T": 2, "V": 1, "S": 2,
///    "arrivals": [[1, 0], [0, 0.1]],
///    "match": [[0.001, 1]],
///    "dist": {"type": "geometric", "params": {"q": 0.1}}}
///
/// `arrivals` is either a dense T x S array or a list of 1-indexed
/// [t, s, rate] triples (unlisted entries are 0). A list that has the dense
/// shape is read as dense; set "arrivals_format": "sparse" to force triples.
/// Distribution params: geometric {"q"}, deterministic {"length"},
/// tabulated {"probs": [...]} with probs[k] = P{Z = k + 1}.
/// Rates are written in shortest round-trip form, so save/load is bit exact.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

nlohmann::json distribution_to_json(const InterActivityDistribution& dist);
InterActivityDistribution distribution_from_json(const nlohmann::json& doc);

/// Nonzero entries as {"v", "s", "t", "value"} with 1-indexed positions and
/// values rounded to 12 significant digits.
nlohmann::json solution_to_json(const FractionalSolution& x);

/// Reads a whole file; throws ValidationError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Decimal notation with `digits` significant digits, no exponent, trailing
/// zeros trimmed. Non-finite values are written as "nan"/"inf"/"-inf".
std::string format_decimal(double value, int digits = 10);

/// Fewest significant digits that read back as the same double.
std::string format_shortest(double value);

/// value rounded to `digits` significant digits.
double round_significant(double value, int digits);

} // namespace volnotify

#endif // VOLNOTIFY_IO_HPP
