#include <doctest.h>

#include "roughren/lv_transfer.hpp"
#include "roughren/tree_word_maps.hpp"

using namespace roughren;

namespace {

Tree T(std::string_view s) { return decode_tree(s); }

const BranchedRP<Rational>& exact_path() {
  static const auto x = canonical_lift<Rational>(DriverPath::polynomial_suite(1), 4, 0.24, 3);
  return x;
}

const BranchedRP<double>& walk_path() {
  static const auto x = canonical_lift<double>(DriverPath::random_walk(1, 4, 7), 4, 0.24, 4);
  return x;
}

std::vector<Rational> sampled(const Grid& g, std::function<Rational(const Rational&)> f) {
  std::vector<Rational> p;
  for (std::size_t k = 0; k < g.points(); ++k) p.push_back(f(g.time_exact(k)));
  return p;
}

}  // namespace

TEST_CASE("lv_extend from an empty prior") {
  const Grid g(3);
  const Tree a = T("1[]"), b = T("0[]");
  const WeightedAlphabet alpha({{a, 0.3}, {b, 1.0}});
  std::map<Tree, std::vector<Rational>> paths;
  paths.emplace(a, sampled(g, [](const Rational& t) -> Rational { return t * t - 3 * t; }));
  paths.emplace(b, sampled(g, [](const Rational& t) -> Rational { return t; }));
  const auto xb = lv_extend<Rational>(paths, nullptr, alpha, g, 3, 0.0);
  const auto& w = xb.basis();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t) {
      const auto& x = xb.at(s, t);
      CHECK(x.value(Word{a}) == paths[a][t] - paths[a][s]);
      CHECK(x.value(Word{a, b}) + x.value(Word{b, a}) == x.value(Word{a}) * x.value(Word{b}));
      CHECK(x.value(Word{a, a}) * 2 == x.value(Word{a}) * x.value(Word{a}));
    }
  CHECK(w.size() == 15);  // words of length ≤ 3 over two letters
  CHECK(check_chen(xb, 0.0, ChenSweep::full).passed);
}

TEST_CASE("lv_extend preserves the prior and rejects bad input") {
  const Grid g(2);
  const Tree a = T("1[]"), c = T("1[1[]]");
  std::map<Tree, std::vector<Rational>> pa{{a, {0, 1, Rational(1, 2), 2, -1}}};
  const auto prior = lv_extend<Rational>(pa, nullptr, WeightedAlphabet({{a, 0.3}}), g, 3, 0.0);
  std::map<Tree, std::vector<Rational>> pc{{c, {0, Rational(1, 3), 0, 5, 1}}};
  const auto ext = lv_extend<Rational>(pc, &prior, WeightedAlphabet({{a, 0.3}, {c, 0.6}}), g, 3, 0.0);
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t)
      for (const auto& w : prior.basis().words()) CHECK(ext.at(s, t).value(w) == prior.at(s, t).value(w));
  CHECK(check_chen(ext, 0.0).passed);
  CHECK(ext.at(1, 4).value(Word{c}) == 1 - Rational(1, 3));
  CHECK(ext.at(0, 2).value(Word{a, c}) + ext.at(0, 2).value(Word{c, a}) ==
        ext.at(0, 2).value(Word{a}) * ext.at(0, 2).value(Word{c}));

  // 0.25 · 4 = 1.
  CHECK_THROWS_AS(lv_extend<Rational>(pa, nullptr, WeightedAlphabet({{a, 0.25}}), g, 4, 0.0),
                  std::invalid_argument);
  const auto bad = prior.with_entry(0, 3, prior.basis().index(Word{a, a}), 9);
  CHECK_THROWS_AS(lv_extend<Rational>(pc, &bad, WeightedAlphabet({{a, 0.3}, {c, 0.6}}), g, 3, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(lv_extend<Rational>({}, &prior, WeightedAlphabet({{a, 0.3}, {c, 0.6}}), g, 3, 0.0),
                  std::invalid_argument);
}

TEST_CASE("branched to anisotropic transfer, exact") {
  const auto& x = exact_path();
  const auto xb = branched_to_anisotropic(x, 0.0);
  const auto r = check_transfer(x, xb, 0.0);
  CHECK(r.passed);
  CHECK(r.checked == x.grid().pair_count() * x.basis().tree_indices().size());
  CHECK(check_chen(xb, 0.0, ChenSweep::adjacent).passed);
  const Tree b1 = T("1[]"), b0 = T("0[]"), tau = T("1[0[]]");
  for (std::size_t s = 0; s < x.grid().points(); ++s)
    for (std::size_t t = s; t < x.grid().points(); ++t) {
      const auto& w = xb.at(s, t);
      CHECK(w.value(Word{b1}) == x.stored(s, t).value(b1));
      CHECK(x.stored(s, t).value(tau) == w.value(Word{tau}) + w.value(Word{b1, b0}));
    }
  const auto again = branched_to_anisotropic(x, 0.0);
  for (std::size_t k = 0; k < xb.values().size(); ++k) CHECK(again.values()[k].values() == xb.values()[k].values());
}

TEST_CASE("transfer rejects Chen violations") {
  const auto& x = exact_path();
  const std::size_t i = x.basis().index(T("1[1[]]"));
  const auto bad = x.with_entry(2, 6, i, x.stored(2, 6)[i] + 1);
  CHECK_THROWS_AS(branched_to_anisotropic(bad, 0.0), std::domain_error);
}

TEST_CASE("transfer, float random walk") {
  const auto& x = walk_path();
  const auto xb = branched_to_anisotropic(x, 1e-10);
  const auto r = check_transfer(x, xb, 1e-10);
  CHECK(r.passed);
  CHECK(r.max_defect < 1e-12);
  CHECK(check_characters(xb, 1e-10).passed);
}

TEST_CASE("g action") {
  const auto& x = exact_path();
  const Grid& g = x.grid();
  const auto zero = g_action(GFamily<Rational>::zero(g), x, 0.0);
  CHECK(max_abs_difference(zero, x) == 0.0);

  const Tree b1 = T("1[]");
  std::vector<Rational> p(g.points());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = Rational(static_cast<long>(k * k), 7);
  const GFamily<Rational> lvl1(g, {{b1, p}});
  const auto gx = g_action(lvl1, x, 0.0);
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t)
      CHECK(gx.stored(s, t).value(b1) == x.stored(s, t).value(b1) + p[t] - p[s]);
  CHECK(check_chen(gx, 0.0).passed);

  const auto ga = GFamily<Rational>::random(g, x.basis().trees(), 1, 0.5);
  const auto gb = GFamily<Rational>::random(g, x.basis().trees(), 2, 0.5);
  const auto lhs = g_action(gb, g_action(ga, x, 0.0), 0.0);
  const auto rhs = g_action(ga + gb, x, 0.0);
  CHECK(max_abs_difference(lhs, rhs) == 0.0);
}

TEST_CASE("g action additivity, float") {
  const auto& x = walk_path();
  const auto ga = GFamily<double>::random(x.grid(), x.basis().trees(), 3, 0.3);
  const auto gb = GFamily<double>::random(x.grid(), x.basis().trees(), 4, 0.3);
  const auto lhs = g_action(gb, g_action(ga, x, 1e-10), 1e-10);
  const auto rhs = g_action(ga + gb, x, 1e-10);
  CHECK(max_abs_difference(lhs, rhs) < 1e-10);
}

TEST_CASE("g from renormalisation maps") {
  const auto& x = exact_path();
  const auto basis = x.basis_ptr();
  const Grid& g = x.grid();

  const auto id = RenormMatrix::identity(basis);
  const auto g_id = g_from_renorm_recursive(id, x, 0.0);
  CHECK(max_abs_difference(g_id, GFamily<Rational>::zero(g)) == 0.0);
  CHECK(max_abs_difference(g_from_renorm_explicit(id, x, 0.0), GFamily<Rational>::zero(g)) == 0.0);

  const auto v = BphzCharacter::random(4, 1, 5);
  const auto m = bphz_map(v, basis);
  CheckReport additivity;
  const auto rec = g_from_renorm_recursive(m, x, 0.0, &additivity);
  CHECK(additivity.passed);
  const auto exp = g_from_renorm_explicit(m, x, 0.0);
  const auto cmp = compare_g(rec, exp, 0.0, "explicit vs recursive");
  CHECK(cmp.passed);
  CHECK(cmp.checked == x.basis().trees().size() * g.points());

  const Tree b1 = T("1[]"), b0 = T("0[]");
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t)
      CHECK(rec.increment(b1, s, t) == v.value(b1) * x.stored(s, t).value(b0));

  // Rule A: the only correction sits on 1[1[]].
  const auto ma = bphz_map(BphzCharacter({{T("1[1[]]"), Rational(1, 2)}}), basis);
  const auto ga = g_from_renorm_recursive(ma, x, 0.0);
  CHECK(compare_g(ga, g_from_renorm_explicit(ma, x, 0.0), 0.0, "rule A").passed);
  CHECK(ga.value(b1, g.points() - 1) == 0);

  // Exploratory comparison runs on both maps; identity trivially agrees.
  CHECK(explore_bar_formula(id, x, g_id, 0.0).passed);
  const auto ex = explore_bar_formula(m, x, rec, 0.0);
  CHECK(ex.checked > 0);

  // Unaccepted maps are refused.
  ForestComb image{Forest(T("1[1[]]"))};
  image.add(Forest(b0), Rational(5, 2));
  const LocalMaps naive = local_map(LocalRule({{T("1[1[]]"), image}}, 0.24), basis);
  CHECK_THROWS_AS(g_from_renorm_recursive(naive.m, x, 0.0), std::invalid_argument);
}

TEST_CASE("g of a composite renormalisation telescopes") {
  const auto& x = exact_path();
  const auto basis = x.basis_ptr();
  const auto m1 = bphz_map(BphzCharacter::random(4, 1, 11), basis);
  const auto m2 = bphz_map(BphzCharacter::random(4, 1, 12), basis);
  const auto g1 = g_from_renorm_explicit(m1, x, 0.0);
  const auto g2 = g_from_renorm_explicit(m2, apply_renorm(m1, x), 0.0);
  const auto g12 = g_from_renorm_explicit(m1.compose(m2), x, 0.0);
  CHECK(compare_g(g12, g1 + g2, 0.0, "telescoping").passed);
  CHECK(compare_g(g_from_renorm_recursive(m1.compose(m2), x, 0.0), g12, 0.0, "composite").passed);
}

TEST_CASE("float g formulas agree") {
  const auto& x = walk_path();
  const auto m = bphz_map(BphzCharacter::random(4, 1, 5), x.basis_ptr());
  const auto rec = g_from_renorm_recursive(m, x, 1e-10);
  const auto exp = g_from_renorm_explicit(m, x, 1e-10);
  CHECK(compare_g(rec, exp, 1e-10, "float").passed);
  for (const auto& row : holder_report(rec, x.gamma())) CHECK(std::isfinite(row.sup_quotient));
}
