#include <doctest.h>

#include <random>

#include "roughren/character.hpp"

using namespace roughren;

namespace {

Character<Rational> random_character(const ForestBasisPtr& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return Character<Rational>::from_tree_values(basis, [&](const Tree&) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
  });
}

}  // namespace

TEST_CASE("forest basis tables") {
  const auto basis = make_forest_basis(4, 1);
  CHECK(basis->size() == 143);
  CHECK(basis->tree_indices().size() == 72);
  CHECK(basis->forest(0).empty());
  CHECK(basis->factors(0).empty());
  const std::size_t i = basis->index(decode_forest("1[0[] 0[]]"));
  CHECK(basis->coproduct(i).size() == 4);
  CHECK_THROWS_AS(basis->index(decode_forest("1[1[1[1[1[]]]]]")), std::out_of_range);
}

TEST_CASE("character group laws") {
  const auto basis = make_forest_basis(4, 1);
  const Character<Rational> unit(basis);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto x = random_character(basis, seed);
    const auto y = random_character(basis, seed + 1000);
    CHECK(multiplicativity_defect(x) == 0);
    CHECK(max_abs_difference(convolve(x, unit), x) == 0);
    CHECK(max_abs_difference(convolve(unit, x), x) == 0);
    CHECK(max_abs_difference(convolve(x, inverse(x)), unit) == 0);
    CHECK(max_abs_difference(convolve(inverse(x), x), unit) == 0);
    const auto xy = convolve(x, y);
    CHECK(multiplicativity_defect(xy) == 0);
    for (Decoration i : {0, 1}) CHECK(xy.value(Tree(i)) == x.value(Tree(i)) + y.value(Tree(i)));
    if (seed < 10) {
      const auto z = random_character(basis, seed + 2000);
      CHECK(max_abs_difference(convolve(convolve(x, y), z), convolve(x, convolve(y, z))) == 0);
    }
  }
}

TEST_CASE("convolution pairs against the coproduct") {
  const auto basis = make_forest_basis(3, 1);
  const auto x = random_character(basis, 7);
  const auto y = random_character(basis, 8);
  const auto xy = convolve(x, y);
  for (const Forest& f : basis->forests()) {
    Rational expected = 0;
    for (const auto& [k, c] : coproduct_ck(f)) expected += c * x.value(k.first) * y.value(k.second);
    CHECK(xy.value(f) == expected);
  }
}

TEST_CASE("float characters and mismatch errors") {
  const auto b3 = make_forest_basis(3, 1);
  const auto b4 = make_forest_basis(4, 1);
  const auto x = Character<double>::from_tree_values(b3, [](const Tree& t) { return 0.1 * t.size(); });
  CHECK(max_abs_difference(convolve(x, inverse(x)), Character<double>(b3)) < 1e-14);
  CHECK_THROWS_AS(convolve(Character<double>(b3), Character<double>(b4)), std::invalid_argument);
  const auto bad = x.with_value(b3->index(decode_forest("0[] 1[]")), 5.0);
  CHECK(multiplicativity_defect(bad) > 1.0);
}
