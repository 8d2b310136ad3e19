#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "roughren/chapoton_foissy.hpp"
#include "roughren/lv_transfer.hpp"

namespace roughren {

using Json = nlohmann::ordered_json;

/// {num, den} as decimal strings.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& num, const Json& den);

Json forest_json(const Forest& f);
Forest forest_from_json(const Json& j, std::optional<Decoration> max_decoration = std::nullopt);

/// [{forest: [tree…], num, den}].
Json to_json(const ForestComb& x);
ForestComb forest_comb_from_json(const Json& j,
                                 std::optional<Decoration> max_decoration = std::nullopt);
/// [{left: [tree…], right: [tree…], num, den}].
Json to_json(const TensorComb& x);
/// [{word: [tree…], num, den}].
Json to_json(const WordComb& x);
WordComb word_comb_from_json(const Json& j, std::optional<Decoration> max_decoration = std::nullopt);

Json to_json(const CheckReport& r);
Json to_json(const std::vector<HolderRow>& rows);

/// {tree: "p/q"}.
Json to_json(const BphzCharacter& v);
BphzCharacter bphz_from_json(const Json& j);
/// {tree: ForestComb-JSON}.
Json to_json(const LocalRule& r);
LocalRule local_rule_from_json(const Json& j, double gamma, RuleOrder order);

/// {grid_depth, truncation, alphabet_bound, gamma, mode, kind, entries: [{s, t, basis, value}]}.
/// Branched dumps list trees only; forests follow by multiplicativity.
template <class S>
Json to_json(const BranchedRP<S>& x);
template <class S>
Json to_json(const AnisotropicRP<S>& x);
template <class S>
BranchedRP<S> branched_from_json(const Json& j);
/// "exact" or "float" from a path dump.
std::string path_mode(const Json& j);

/// Generators, forests, words and both change-of-basis matrices.
Json to_json(const GeneratorBasis& b);

/// Rows "tree,t,g_value" for each named family (column `formula` first).
template <class S>
std::string g_table_csv(const std::map<std::string, const GFamily<S>*>& families);

Json read_json_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, const std::string& text);
void write_json_file(const std::filesystem::path& p, const Json& j);

}  // namespace roughren
