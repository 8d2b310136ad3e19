#include <doctest.h>

#include <random>

#include "roughren/chapoton_foissy.hpp"
#include "roughren/lv_transfer.hpp"

using namespace roughren;

namespace {

Tree T(std::string_view s) { return decode_tree(s); }
Forest F(std::string_view s) { return decode_forest(s); }

const GeneratorBasisPtr& basis3() {
  static const auto b = GeneratorBasis::compute(3, 1);
  return b;
}

const BranchedRP<Rational>& path3() {
  static const auto x = canonical_lift<Rational>(DriverPath::polynomial_suite(1), 3, 0.3, 3);
  return x;
}

DualComb random_dual(const ForestBasis& fb, std::mt19937_64& rng, std::size_t max_size) {
  std::uniform_int_distribution<int> coef(-3, 3);
  DualComb out;
  for (const auto& f : fb.forests())
    if (f.size() <= max_size) {
      const int c = coef(rng);
      if (c == 0) continue;
      Rational q(c, 1 + static_cast<int>(f.size()));
      q.canonicalize();
      out.add(f, q);
    }
  return out;
}

}  // namespace

TEST_CASE("star product") {
  const auto fb = make_forest_basis(3, 1);
  const DualComb unit{Forest()};
  const DualComb a{F("1[] 0[]")};
  CHECK(star_product(*fb, unit, a) == a);
  CHECK(star_product(*fb, a, unit) == a);

  // •₁* ⋆ •₀*: the forest •₁•₀ and the tree with •₁ as trunk.
  DualComb expect{F("1[] 0[]")};
  expect.add(F("1[0[]]"), 1);
  CHECK(star_product(*fb, DualComb{F("1[]")}, DualComb{F("0[]")}) == expect);
  DualComb sq{F("1[] 1[]")};
  sq.add(F("1[1[]]"), 1);
  sq.add(F("1[] 1[]"), 1);
  CHECK(star_product(*fb, DualComb{F("1[]")}, DualComb{F("1[]")}) == sq);

  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    const auto x = random_dual(*fb, rng, 2), y = random_dual(*fb, rng, 2), z = random_dual(*fb, rng, 2);
    CHECK(star_product(*fb, star_product(*fb, x, y), z) == star_product(*fb, x, star_product(*fb, y, z)));
  }
}

TEST_CASE("generator basis") {
  const auto b1 = GeneratorBasis::compute(1, 1);
  REQUIRE(b1->generators().size() == 2);
  CHECK(b1->generators()[0].label == T("0[]"));
  CHECK(b1->generators()[1].label == T("1[]"));

  const auto& b = *basis3();
  CHECK(b.audit().passed);
  CHECK_FALSE(b.flagged());
  CHECK(b.words().size() == b.forests().size());
  CHECK(b.forests().size() == 36);
  for (std::size_t i = 1; i < b.generators().size(); ++i)
    CHECK(b.generators()[i - 1].label.size() <= b.generators()[i].label.size());
  for (const auto& g : b.generators()) CHECK(g.single_tree);

  const auto again = GeneratorBasis::compute(3, 1);
  REQUIRE(again->generators().size() == b.generators().size());
  for (std::size_t i = 0; i < b.generators().size(); ++i)
    CHECK(again->generators()[i].label == b.generators()[i].label);
  for (std::size_t f = 0; f < b.forests().size(); ++f)
    for (std::size_t w = 0; w < b.words().size(); ++w) CHECK(again->forward(f, w) == b.forward(f, w));

  // Monomials are ⋆-products of generator duals.
  const std::size_t w = b.words().index(Word{T("1[]"), T("0[]")});
  CHECK(b.monomial(w) == star_product(b.forests(), DualComb{F("1[]")}, DualComb{F("0[]")}));
  CHECK(b.psi_iso(b.monomial(w)) == WordComb(Word{T("1[]"), T("0[]")}));
}

TEST_CASE("iso_psi on the polynomial suite") {
  const auto& x = path3();
  const auto xt = iso_psi(basis3(), x);
  for (std::size_t s = 0; s < x.grid().points(); ++s)
    for (std::size_t t = s; t < x.grid().points(); ++t) {
      CHECK(xt.at(s, t).value(Word{T("1[]")}) == x.stored(s, t).value(T("1[]")));
      CHECK(xt.at(s, t)[0] == 1);
    }
  CHECK(check_chen(xt, 0.0, ChenSweep::full).passed);
  CHECK(check_characters(xt, 0.0).passed);
  const auto back = iso_psi_inverse(basis3(), xt, x.gamma());
  CHECK(max_abs_difference(back, x) == 0.0);
  for (std::size_t k = 0; k < x.values().size(); ++k) CHECK(back.values()[k].values() == x.values()[k].values());

  const auto bad = x.with_entry(1, 5, x.basis().index(T("1[0[]]")), 3);
  CHECK_FALSE(check_chen(iso_psi(basis3(), bad), 0.0).passed);
  CHECK_THROWS_AS(iso_psi(GeneratorBasis::compute(2, 1), x), std::invalid_argument);
}

TEST_CASE("iso_psi in float mode") {
  const auto x = canonical_lift<double>(DriverPath::random_walk(1, 4, 3), 3, 0.3, 4);
  const auto xt = iso_psi(basis3(), x);
  CHECK(check_chen(xt, 1e-10).passed);
  CHECK(check_characters(xt, 1e-10).passed);
}

TEST_CASE("tilde maps and commutation") {
  const auto& b = basis3();
  const auto& x = path3();
  const auto id = RenormMatrix::identity(b->forest_basis_ptr());
  const TildeMap tid(b, id);
  for (const auto& g : b->generators()) CHECK(tid.letter_image(g.label) == WordComb(Word{g.label}));
  const auto r0 = check_commute_iso(b, id, tid, x, 0.0);
  CHECK(r0.passed);
  CHECK(r0.max_defect == 0.0);

  const auto v = BphzCharacter::random(3, 1, 21);
  const auto m = bphz_map(v, b->forest_basis_ptr());
  const TildeMap tm(b, m);
  // ⟨M*X, •₁⟩ = ⟨X, •₁⟩ + v(•₁)⟨X, •₀⟩: the correction sits on the •₀ letter.
  CHECK(tm.letter_image(T("1[]")) == WordComb(Word{T("1[]")}));
  CHECK(tm.letter_image(T("0[]")).coefficient(Word{T("1[]")}) == v.value(T("1[]")));
  CHECK(tm.letter_image(T("0[]")).coefficient(Word{T("0[]")}) == 1);
  const auto r = check_commute_iso(b, m, tm, x, 0.0);
  CHECK(r.passed);
  CHECK(r.checked == x.grid().pair_count() * b->words().size());

  std::mt19937_64 rng(5);
  const auto& words = b->words().words();
  std::uniform_int_distribution<std::size_t> pick(1, words.size() - 1);
  for (int k = 0; k < 20; ++k) {
    const Word& u = words[pick(rng)];
    const Word& w = words[pick(rng)];
    if (word_size(u) + word_size(w) > 3) continue;
    Word uw = u;
    uw.insert(uw.end(), w.begin(), w.end());
    CHECK(tm.apply(uw) == truncate(concat(tm.apply(u), tm.apply(w)), 3));
  }

  // Root-extraction local rule at N = 3.
  const LocalRule rule = root_extraction_rule(v, 3, 1, 0.3, RuleOrder::loosened);
  const auto lm = local_map(rule, b->forest_basis_ptr());
  CHECK(check_commute_iso(b, lm.m, TildeMap(b, lm.m), x, 0.0).passed);

  // Drop one term of a generator image.
  WordComb cut = tm.letter_image(T("0[]"));
  cut.add(Word{T("1[]")}, -v.value(T("1[]")));
  const auto broken = tm.with_letter_image(T("0[]"), cut);
  const auto rb = check_commute_iso(b, m, broken, x, 0.0);
  CHECK_FALSE(rb.passed);
  CHECK(rb.max_defect > 0);
}
