#include "roughren/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace roughren {

Json rational_json(const Rational& q) {
  return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rational rational_from_json(const Json& num, const Json& den) {
  const auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  Rational q(mpz_class(text(num)), mpz_class(text(den)));
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

Json forest_json(const Forest& f) {
  Json out = Json::array();
  for (const auto& t : f.trees()) out.push_back(encode(t));
  return out;
}

Forest forest_from_json(const Json& j, std::optional<Decoration> max_decoration) {
  if (j.is_string()) return decode_forest(j.get<std::string>(), max_decoration);
  std::vector<Tree> trees;
  for (const auto& t : j) trees.push_back(decode_tree(t.get<std::string>(), max_decoration));
  return Forest(std::move(trees));
}

namespace {

Json word_json(const Word& w) {
  Json out = Json::array();
  for (const auto& t : w) out.push_back(encode(t));
  return out;
}

Word word_from_json(const Json& j, std::optional<Decoration> max_decoration) {
  if (j.is_string()) return decode_word(j.get<std::string>(), max_decoration);
  Word w;
  for (const auto& t : j) w.push_back(decode_tree(t.get<std::string>(), max_decoration));
  return w;
}

Json with_coef(Json obj, const Rational& c) {
  const Json r = rational_json(c);
  obj["num"] = r["num"];
  obj["den"] = r["den"];
  return obj;
}

template <class S>
std::string value_string(const S& v) {
  return to_string(v);
}

template <class S>
S parse_value(const Json& v);

template <>
double parse_value<double>(const Json& v) {
  if (v.is_number()) return v.get<double>();
  return std::stod(v.get<std::string>());
}

template <>
Rational parse_value<Rational>(const Json& v) {
  return parse_rational(v.is_string() ? v.get<std::string>() : v.dump());
}

}  // namespace

Json to_json(const ForestComb& x) {
  Json out = Json::array();
  for (const auto& [f, c] : x) out.push_back(with_coef(Json{{"forest", forest_json(f)}}, c));
  return out;
}

ForestComb forest_comb_from_json(const Json& j, std::optional<Decoration> max_decoration) {
  if (!j.is_array()) throw std::invalid_argument("forest combination must be a JSON array");
  ForestComb out;
  for (const auto& e : j)
    out.add(forest_from_json(e.at("forest"), max_decoration),
            rational_from_json(e.at("num"), e.value("den", Json("1"))));
  return out;
}

Json to_json(const TensorComb& x) {
  Json out = Json::array();
  for (const auto& [k, c] : x)
    out.push_back(with_coef(Json{{"left", forest_json(k.first)}, {"right", forest_json(k.second)}}, c));
  return out;
}

Json to_json(const WordComb& x) {
  Json out = Json::array();
  for (const auto& [w, c] : x) out.push_back(with_coef(Json{{"word", word_json(w)}}, c));
  return out;
}

WordComb word_comb_from_json(const Json& j, std::optional<Decoration> max_decoration) {
  if (!j.is_array()) throw std::invalid_argument("word combination must be a JSON array");
  WordComb out;
  for (const auto& e : j)
    out.add(word_from_json(e.at("word"), max_decoration),
            rational_from_json(e.at("num"), e.value("den", Json("1"))));
  return out;
}

Json to_json(const CheckReport& r) {
  return Json{{"name", r.name},
              {"passed", r.passed},
              {"max_defect", r.max_defect},
              {"checked", r.checked},
              {"counterexample", r.counterexample},
              {"notes", r.notes}};
}

Json to_json(const std::vector<HolderRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back(Json{{"label", r.label}, {"exponent", r.exponent}, {"sup_quotient", r.sup_quotient}});
  return out;
}

Json to_json(const BphzCharacter& v) {
  Json out = Json::object();
  for (const auto& [t, q] : v.values()) out[encode(t)] = to_string(q);
  return out;
}

BphzCharacter bphz_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("BPHZ character must be a JSON object");
  std::map<Tree, Rational> values;
  for (const auto& [k, v] : j.items())
    values.emplace(decode_tree(k), parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
  return BphzCharacter(std::move(values));
}

Json to_json(const LocalRule& r) {
  Json out = Json::object();
  for (const auto& [t, image] : r.table()) out[encode(t)] = to_json(image);
  return out;
}

LocalRule local_rule_from_json(const Json& j, double gamma, RuleOrder order) {
  if (!j.is_object()) throw std::invalid_argument("local rule must be a JSON object");
  std::map<Tree, ForestComb> table;
  for (const auto& [k, v] : j.items()) table.emplace(decode_tree(k), forest_comb_from_json(v));
  return LocalRule(std::move(table), gamma, order);
}

template <class S>
Json to_json(const BranchedRP<S>& x) {
  const Grid& g = x.grid();
  const ForestBasis& fb = x.basis();
  Json entries = Json::array();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t)
      for (auto i : fb.tree_indices())
        entries.push_back(Json{{"s", s},
                               {"t", t},
                               {"basis", encode(fb.forest(i))},
                               {"value", value_string(x.stored(s, t)[i])}});
  return Json{{"grid_depth", g.depth()},
              {"truncation", x.truncation()},
              {"alphabet_bound", fb.alphabet_bound()},
              {"gamma", x.gamma()},
              {"mode", is_exact_v<S> ? "exact" : "float"},
              {"kind", "branched"},
              {"entries", std::move(entries)}};
}

template <class S>
Json to_json(const AnisotropicRP<S>& x) {
  const Grid& g = x.grid();
  const WordBasis& wb = x.basis();
  Json entries = Json::array();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t)
      for (std::size_t w = 1; w < wb.size(); ++w)
        entries.push_back(Json{{"s", s},
                               {"t", t},
                               {"basis", word_json(wb.word(w))},
                               {"value", value_string(x.at(s, t)[w])}});
  Json letters = Json::object();
  for (const auto& [a, e] : x.alphabet().gammas()) letters[encode(a)] = e;
  return Json{{"grid_depth", g.depth()},
              {"truncation", wb.max_size()},
              {"letters", std::move(letters)},
              {"mode", is_exact_v<S> ? "exact" : "float"},
              {"kind", "anisotropic"},
              {"entries", std::move(entries)}};
}

std::string path_mode(const Json& j) { return j.at("mode").get<std::string>(); }

template <class S>
BranchedRP<S> branched_from_json(const Json& j) {
  if (j.at("kind").get<std::string>() != "branched")
    throw std::invalid_argument("not a branched path dump");
  if (path_mode(j) != (is_exact_v<S> ? "exact" : "float"))
    throw std::invalid_argument("path dump mode does not match");
  const Grid g(j.at("grid_depth").get<int>());
  const auto basis = make_forest_basis(j.at("truncation").get<int>(), j.at("alphabet_bound").get<int>());
  const double gamma = j.at("gamma").get<double>();
  const std::size_t nt = basis->tree_indices().size();
  std::vector<std::vector<std::optional<S>>> trees(g.pair_count(), std::vector<std::optional<S>>(basis->size()));
  for (const auto& e : j.at("entries")) {
    const std::size_t s = e.at("s").get<std::size_t>(), t = e.at("t").get<std::size_t>();
    const Forest f = forest_from_json(e.at("basis"), basis->alphabet_bound());
    if (!f.is_tree()) throw std::invalid_argument("branched dump entries must be trees");
    auto idx = basis->find(f);
    if (!idx) throw std::invalid_argument("tree " + encode(f) + " outside the truncation");
    trees[g.pair_index(s, t)][*idx] = parse_value<S>(e.at("value"));
  }
  std::vector<Character<S>> values;
  values.reserve(g.pair_count());
  for (std::size_t k = 0; k < g.pair_count(); ++k) {
    std::size_t seen = 0;
    for (auto i : basis->tree_indices()) seen += trees[k][i].has_value();
    if (seen != nt) throw std::invalid_argument("path dump misses tree entries");
    values.push_back(Character<S>::from_tree_values(
        basis, [&](const Tree& t) { return *trees[k][basis->index(t)]; }));
  }
  return BranchedRP<S>(g, gamma, basis, std::move(values));
}

Json to_json(const GeneratorBasis& b) {
  Json gens = Json::array();
  for (const auto& g : b.generators())
    gens.push_back(Json{{"label", encode(g.label)}, {"single_tree", g.single_tree}, {"dual", to_json(g.dual)}});
  Json forests = Json::array();
  for (const auto& f : b.forests().forests()) forests.push_back(forest_json(f));
  Json words = Json::array();
  for (const auto& w : b.words().words()) words.push_back(word_json(w));
  Json fwd = Json::array(), inv = Json::array();
  for (std::size_t f = 0; f < b.forests().size(); ++f) {
    Json row = Json::array();
    for (std::size_t w = 0; w < b.words().size(); ++w) row.push_back(to_string(b.forward(f, w)));
    fwd.push_back(std::move(row));
  }
  for (std::size_t w = 0; w < b.words().size(); ++w) {
    Json row = Json::array();
    for (std::size_t f = 0; f < b.forests().size(); ++f) row.push_back(to_string(b.inverse(w, f)));
    inv.push_back(std::move(row));
  }
  return Json{{"truncation", b.forests().truncation()},
              {"alphabet_bound", b.forests().alphabet_bound()},
              {"flagged", b.flagged()},
              {"audit", to_json(b.audit())},
              {"generators", std::move(gens)},
              {"forests", std::move(forests)},
              {"words", std::move(words)},
              {"forward", std::move(fwd)},
              {"inverse", std::move(inv)}};
}

template <class S>
std::string g_table_csv(const std::map<std::string, const GFamily<S>*>& families) {
  std::ostringstream os;
  os << "formula,tree,t,g_value\n";
  for (const auto& [name, g] : families) {
    const Grid& grid = g->grid();
    for (const auto& [t, p] : g->paths())
      for (std::size_t k = 0; k < p.size(); ++k)
        os << name << ",\"" << encode(t) << "\"," << to_string(grid.time_exact(k)) << ","
           << to_string(p[k]) << "\n";
  }
  return os.str();
}

Json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::invalid_argument("cannot open " + p.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(p.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

void write_json_file(const std::filesystem::path& p, const Json& j) {
  write_text_file(p, j.dump(2) + "\n");
}

#define ROUGHREN_INSTANTIATE(S)                                                       \
  template Json to_json(const BranchedRP<S>&);                                         \
  template Json to_json(const AnisotropicRP<S>&);                                      \
  template BranchedRP<S> branched_from_json(const Json&);                              \
  template std::string g_table_csv(const std::map<std::string, const GFamily<S>*>&);

ROUGHREN_INSTANTIATE(double)
ROUGHREN_INSTANTIATE(Rational)

#undef ROUGHREN_INSTANTIATE

}  // namespace roughren
