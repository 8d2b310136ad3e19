#include <doctest.h>

#include "oracles.hpp"
#include "roughren/forest_hopf.hpp"

using namespace roughren;

namespace {

Forest F(std::string_view s) { return decode_forest(s); }
TensorComb::Terms::key_type T(std::string_view a, std::string_view b) { return {F(a), F(b)}; }

/// (id ⊗ Δ)Δ and (Δ ⊗ id)Δ as 3-tensors.
Tensor3Comb coassoc_left(const Forest& f) {
  Tensor3Comb out;
  for (const auto& [k, c] : coproduct_ck(f))
    for (const auto& [k2, c2] : coproduct_ck(k.first))
      out.add({k2.first, k2.second, k.second}, c * c2);
  return out;
}
Tensor3Comb coassoc_right(const Forest& f) {
  Tensor3Comb out;
  for (const auto& [k, c] : coproduct_ck(f))
    for (const auto& [k2, c2] : coproduct_ck(k.second))
      out.add({k.first, k2.first, k2.second}, c * c2);
  return out;
}

}  // namespace

TEST_CASE("forest product") {
  const ForestComb a(F("1[]"));
  CHECK(forest_product(unit_comb(), a) == a);
  CHECK(forest_product(ForestComb(F("0[]")), a) == forest_product(a, ForestComb(F("0[]"))));
  ForestComb x(F("1[]"));
  x.add(F("0[]"), 2);
  ForestComb expected(F("1[] 1[]"));
  expected.add(F("0[] 1[]"), 2);
  CHECK(forest_product(x, a) == expected);
}

TEST_CASE("BCK coproduct examples") {
  for (Decoration i : {0, 1}) {
    const Tree dot(i);
    TensorComb e({Forest(), Forest(dot)});
    e.add({Forest(dot), Forest()}, 1);
    CHECK(coproduct_ck(dot) == e);
  }
  {
    const Tree t = decode_tree("1[0[]]");
    TensorComb e(T("", "1[0[]]"));
    e.add(T("1[]", "0[]"), 1);
    e.add(T("1[0[]]", ""), 1);
    CHECK(coproduct_ck(t) == e);
  }
  {
    const Tree t = decode_tree("1[0[] 0[]]");
    TensorComb e(T("", "1[0[] 0[]]"));
    e.add(T("1[]", "0[] 0[]"), 1);
    e.add(T("1[0[]]", "0[]"), 2);
    e.add(T("1[0[] 0[]]", ""), 1);
    CHECK(coproduct_ck(t) == e);
  }
}

TEST_CASE("BCK recursion agrees with the admissible-cut oracle") {
  for (const Tree& t : enumerate_trees(5, 1)) CHECK(coproduct_ck(t) == oracle::admissible_cuts(t));
  for (const Forest& f : enumerate_forests(4, 1))
    CHECK(coproduct_ck(f) == oracle::admissible_cuts(f));
}

TEST_CASE("coassociativity and multiplicativity") {
  const auto forests = enumerate_forests(4, 1);
  for (const auto& f : forests) CHECK(coassoc_left(f) == coassoc_right(f));
  const auto small = enumerate_forests(2, 1);
  for (const auto& f : small)
    for (const auto& g : small)
      CHECK(coproduct_ck(f * g) == tensor_product(coproduct_ck(f), coproduct_ck(g)));
}

TEST_CASE("antipode") {
  CHECK(antipode(Forest()) == unit_comb());
  CHECK(antipode(F("1[]")) == ForestComb(F("1[]"), -1));
  ForestComb expected(F("1[0[]]"), -1);
  expected.add(F("0[] 1[]"), 1);
  CHECK(antipode(F("1[0[]]")) == expected);

  // m(𝒜 ⊗ id)Δ = m(id ⊗ 𝒜)Δ = ε on every forest up to size 4.
  for (const auto& f : enumerate_forests(4, 1)) {
    ForestComb left, right;
    for (const auto& [k, c] : coproduct_ck(f)) {
      ForestComb l = forest_product(antipode(k.first), ForestComb(k.second));
      l *= c;
      left += l;
      ForestComb r = forest_product(ForestComb(k.first), antipode(k.second));
      r *= c;
      right += r;
    }
    const ForestComb counit = f.empty() ? unit_comb() : ForestComb();
    CHECK(left == counit);
    CHECK(right == counit);
  }
}

TEST_CASE("extraction coproduct examples") {
  {
    TensorComb e(T("", "1[]"));
    e.add(T("1[]", "0[]"), 1);
    CHECK(coproduct_extraction(decode_tree("1[]")) == e);
  }
  {
    // 2-ladder: empty, root, leaf, both separately, both joined.
    TensorComb e(T("", "1[0[]]"));
    e.add(T("1[]", "0[0[]]"), 1);
    e.add(T("0[]", "1[0[]]"), 1);
    e.add(T("0[] 1[]", "0[0[]]"), 1);
    e.add(T("1[0[]]", "0[]"), 1);
    CHECK(coproduct_extraction(decode_tree("1[0[]]")) == e);
  }
}

TEST_CASE("extraction recursion agrees with brute force") {
  for (const Tree& t : enumerate_trees(5, 1))
    CHECK(coproduct_extraction(t) == oracle::brute_force_extraction(t));
}

TEST_CASE("extraction counit") {
  // (𝟏* ⊗ id)Δ⁻ = id.
  for (const Tree& t : enumerate_trees(4, 1)) {
    ForestComb out;
    for (const auto& [k, c] : coproduct_extraction(t))
      if (k.first.empty()) out.add(k.second, c);
    CHECK(out == ForestComb(Forest(t)));
  }
}

TEST_CASE("cointeraction of extraction with BCK") {
  CHECK(check_cointeract_13_2_4(1, 1).passed);
  const CheckReport r = check_cointeract_13_2_4(4, 1);
  CHECK(r.passed);
  CHECK(r.checked == 72);

  // Dropping one term of Δ⁻ must be caught.
  const ExtractionCoproduct corrupted = [](const Forest& f) {
    TensorComb d = coproduct_extraction(f);
    if (f.size() == 2 && f.is_tree()) d.add({f, Forest(Tree(0))}, -1);
    return d;
  };
  const CheckReport bad = check_cointeract_13_2_4(3, 1, corrupted);
  CHECK_FALSE(bad.passed);
  CHECK(bad.counterexample.find("tree") != std::string::npos);
}
