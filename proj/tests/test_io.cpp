#include <doctest.h>

#include "roughren/io.hpp"

using namespace roughren;

namespace {
Tree T(std::string_view s) { return decode_tree(s); }
Forest F(std::string_view s) { return decode_forest(s); }
}  // namespace

TEST_CASE("combination JSON round trips") {
  ForestComb x{F("1[] 0[]")};
  x.add(F("1[1[]]"), Rational(-3, 4));
  const Json j = to_json(x);
  CHECK(j.size() == 2);
  CHECK(forest_comb_from_json(j) == x);
  CHECK(forest_comb_from_json(Json::parse(j.dump())) == x);

  const Json cp = to_json(coproduct_ck(T("1[1[]]")));
  CHECK(cp.size() == 3);
  for (const auto& e : cp) CHECK(e.at("num") == "1");

  WordComb w{Word{T("1[]"), T("0[]")}};
  w.add(Word{}, Rational(2));
  CHECK(word_comb_from_json(to_json(w)) == w);

  CHECK_THROWS(forest_comb_from_json(Json::parse(R"([{"forest": ["1[x]"], "num": "1", "den": "1"}])")));
  CHECK_THROWS(forest_comb_from_json(Json::parse(R"([{"forest": ["1[]"], "num": "1", "den": "0"}])")));
}

TEST_CASE("renormalisation inputs from JSON") {
  const auto v = bphz_from_json(Json::parse(R"({"1[1[]]": "1/2", "1[]": "-2"})"));
  CHECK(v.value(T("1[1[]]")) == Rational(1, 2));
  CHECK(bphz_from_json(to_json(v)).values() == v.values());
  CHECK_THROWS_AS(bphz_from_json(Json::parse(R"({"0[]": "1"})")), std::invalid_argument);

  const Json rj = Json::parse(
      R"({"1[1[]]": [{"forest": ["1[1[]]"], "num": "1", "den": "1"},
                     {"forest": ["0[]"], "num": "5", "den": "2"}]})");
  const LocalRule r = local_rule_from_json(rj, 0.24, RuleOrder::strict);
  CHECK(r.apply(T("1[1[]]")).coefficient(F("0[]")) == Rational(5, 2));
  CHECK(local_rule_from_json(to_json(r), 0.24, RuleOrder::strict).table() == r.table());
  // Coefficient on τ must be 1.
  const Json bad = Json::parse(R"({"1[1[]]": [{"forest": ["1[1[]]"], "num": "2", "den": "1"}]})");
  CHECK_THROWS_AS(local_rule_from_json(bad, 0.24, RuleOrder::strict), std::invalid_argument);
}

TEST_CASE("path dumps round trip") {
  const auto x = canonical_lift<Rational>(DriverPath::polynomial_suite(1), 3, 0.3, 2);
  const Json j = to_json(x);
  CHECK(path_mode(j) == "exact");
  CHECK(j.at("entries").size() == x.grid().pair_count() * x.basis().tree_indices().size());
  const auto back = branched_from_json<Rational>(Json::parse(j.dump()));
  for (std::size_t k = 0; k < x.values().size(); ++k) CHECK(back.values()[k].values() == x.values()[k].values());
  CHECK_THROWS_AS(branched_from_json<double>(j), std::invalid_argument);

  const auto y = canonical_lift<double>(DriverPath::random_walk(1, 3, 4), 3, 0.3, 3);
  const auto yb = branched_from_json<double>(Json::parse(to_json(y).dump()));
  // Trees are bitwise; forests are rebuilt as products.
  for (std::size_t k = 0; k < y.values().size(); ++k)
    for (auto i : y.basis().tree_indices()) CHECK(yb.values()[k][i] == y.values()[k][i]);
  CHECK(max_abs_difference(yb, y) < 1e-14);

  Json missing = j;
  missing["entries"].erase(missing["entries"].begin());
  CHECK_THROWS_AS(branched_from_json<Rational>(missing), std::invalid_argument);
}

TEST_CASE("basis JSON and g tables") {
  const auto b = GeneratorBasis::compute(2, 1);
  const Json j = to_json(*b);
  CHECK(j.at("forward").size() == b->forests().size());
  CHECK(j.at("generators").size() == 5);
  CHECK(j.at("audit").at("passed") == true);

  const Grid g(1);
  const GFamily<Rational> fam(g, {{T("1[]"), {0, Rational(1, 2), 2}}});
  const std::string csv = g_table_csv<Rational>({{"recursive", &fam}});
  CHECK(csv == "formula,tree,t,g_value\nrecursive,\"1[]\",0,0\nrecursive,\"1[]\",1/2,1/2\nrecursive,\"1[]\",1,2\n");
}
