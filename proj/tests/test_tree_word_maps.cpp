#include <doctest.h>

#include "roughren/tree_word_maps.hpp"

using namespace roughren;

namespace {

WordTensor psi_tensor(const TensorComb& x, bool arbor) {
  WordTensor out;
  for (const auto& [k, c] : x) {
    const WordComb l = arbor ? arborify(k.first) : psi(k.first);
    const WordComb r = arbor ? arborify(k.second) : psi(k.second);
    for (const auto& [u, cu] : l)
      for (const auto& [v, cv] : r) out.add({u, v}, c * cu * cv);
  }
  return out;
}

}  // namespace

TEST_CASE("psi examples") {
  for (Decoration i : {0, 1}) CHECK(psi(Tree(i)) == WordComb(Word{Tree(i)}));
  const Tree t = decode_tree("1[0[]]");
  WordComb e(Word{t});
  e.add(Word{Tree(1), Tree(0)}, 1);
  CHECK(psi(t) == e);
  CHECK(psi_lower(t) == WordComb(Word{Tree(1), Tree(0)}));
  CHECK(psi_lower(Tree(1)).is_zero());
  WordComb s(Word{Tree(0), Tree(1)});
  s.add(Word{Tree(1), Tree(0)}, 1);
  CHECK(psi(decode_forest("0[] 1[]")) == s);
  CHECK(psi(Forest()) == WordComb(Word{}));
}

TEST_CASE("psi is a Hopf morphism") {
  const auto forests = enumerate_forests(4, 1);
  for (const auto& f : forests) CHECK(deconcat(psi(f)) == psi_tensor(coproduct_ck(f), false));
  const auto small = enumerate_forests(2, 1);
  for (const auto& f : small)
    for (const auto& g : small) CHECK(psi(f * g) == shuffle(psi(f), psi(g)));
}

TEST_CASE("psi structure") {
  for (const Tree& t : enumerate_trees(4, 1)) {
    CHECK(psi(t).coefficient(Word{t}) == 1);
    for (const auto& [w, c] : psi_lower(t)) {
      CHECK(word_size(w) == t.size());
      for (const auto& a : w) CHECK(a.size() < t.size());
    }
  }
}

TEST_CASE("arborification") {
  CHECK(arborify(Tree(1)) == WordComb(Word{Tree(1)}));
  CHECK(arborify(decode_tree("1[0[]]")) == WordComb(Word{Tree(1), Tree(0)}));
  const auto forests = enumerate_forests(3, 1);
  for (const auto& f : forests) {
    for (const auto& [w, c] : arborify(f))
      for (const auto& a : w) CHECK(a.is_node());
    for (const auto& g : forests)
      if (f.size() + g.size() <= 3) CHECK(arborify(f * g) == shuffle(arborify(f), arborify(g)));
    CHECK(deconcat(arborify(f)) == psi_tensor(coproduct_ck(f), true));
  }
}
