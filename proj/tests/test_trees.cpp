#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "roughren/tree.hpp"

using namespace roughren;

namespace {

Tree node(Decoration i) { return Tree(i); }

/// Random well-formed text with random child order and whitespace.
std::string random_text(std::mt19937_64& rng, int budget, int d) {
  std::uniform_int_distribution<int> dec(0, d);
  std::uniform_int_distribution<int> coin(0, 3);
  std::string s = std::to_string(dec(rng));
  if (coin(rng) == 0) s += "  ";
  s += "[";
  int kids = budget > 1 ? std::uniform_int_distribution<int>(0, std::min(3, budget - 1))(rng) : 0;
  int remaining = budget - 1;
  for (int k = 0; k < kids && remaining > 0; ++k) {
    int share = std::uniform_int_distribution<int>(1, remaining)(rng);
    remaining -= share;
    s += coin(rng) == 0 ? "\n" : " ";
    s += random_text(rng, share, d);
  }
  s += coin(rng) == 1 ? " ]" : "]";
  return s;
}

}  // namespace

TEST_CASE("canonical order") {
  CHECK(canonical_order(node(0), node(1)) < 0);
  const Tree t = decode_tree("1[0[] 1[1[]]]");
  CHECK(canonical_order(t, t) == 0);
  CHECK(canonical_order(node(1), Tree(0, {node(0)})) < 0);
  // Equal size and root: children decide.
  CHECK(Tree(1, {node(0)}) < Tree(1, {node(1)}));
}

TEST_CASE("b_plus and b_minus") {
  CHECK(encode(b_plus(Forest(), 1)) == "1[]");
  CHECK(encode(b_plus(Forest({node(1), node(0)}), 1)) == "1[0[] 1[]]");
  for (const Tree& t : enumerate_trees(4, 1)) CHECK(b_plus(b_minus(t), t.decoration()) == t);
}

TEST_CASE("encode and decode") {
  CHECK(encode(node(1)) == "1[]");
  CHECK(decode_tree("1[1[] 0[]]") == decode_tree("1[0[] 1[]]"));
  CHECK(encode(decode_tree(" 1 [ 1[]0[] ] ")) == "1[0[] 1[]]");

  std::mt19937_64 rng(20261018);
  for (int i = 0; i < 100; ++i) {
    const std::string text = random_text(rng, 1 + static_cast<int>(rng() % 7), 2);
    const Tree once = decode_tree(text);
    CHECK(decode_tree(encode(once)) == once);
    CHECK(encode(decode_tree(encode(once))) == encode(once));
  }
}

TEST_CASE("decode errors carry offsets") {
  try {
    decode_tree("1[0[] x]");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);
  }
  CHECK_THROWS_AS(decode_tree("1[0[]"), ParseError);
  CHECK_THROWS_AS(decode_tree("1[] 0[]"), ParseError);
  CHECK_THROWS_AS(decode_tree("[]"), ParseError);
  CHECK_THROWS_AS(decode_tree("2[]", 1), DecorationError);
  CHECK_NOTHROW(decode_tree("2[]", 2));
}

TEST_CASE("enumeration counts") {
  const auto one = enumerate_trees(1, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == node(0));
  CHECK(one[1] == node(1));
  CHECK(enumerate_trees(2, 1).size() == 6);

  // Undecorated shapes against the parent-array generator.
  const int shapes[] = {1, 1, 2, 4};
  for (int n = 1; n <= 4; ++n) {
    CHECK(oracle::brute_force_trees(n, 0).size() == static_cast<std::size_t>(shapes[n - 1]));
    CHECK(trees_of_size(n, 0).size() == static_cast<std::size_t>(shapes[n - 1]));
  }
  // Decorated trees against the generator, exactly as sets.
  for (int n = 1; n <= 5; ++n) {
    const auto listed = trees_of_size(n, 1);
    const std::set<Tree> as_set(listed.begin(), listed.end());
    CHECK(as_set == oracle::brute_force_trees(n, 1));
  }
  CHECK(enumerate_trees(4, 1).size() == 72);
}

TEST_CASE("enumeration is strictly sorted") {
  const auto trees = enumerate_trees(5, 1);
  for (std::size_t i = 1; i < trees.size(); ++i) CHECK(trees[i - 1] < trees[i]);
  const auto forests = enumerate_forests(4, 1);
  CHECK(forests.front().empty());
  for (std::size_t i = 1; i < forests.size(); ++i) CHECK(forests[i - 1] < forests[i]);
  CHECK(forests.size() == 1 + 2 + 7 + 26 + 107);
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_trees(6, 2, 100), ResourceError);
  CHECK_THROWS_AS(enumerate_trees(0, 1), std::invalid_argument);
}

TEST_CASE("forest grading is additive") {
  const auto forests = enumerate_forests(3, 1);
  for (const auto& f : forests)
    for (const auto& g : forests) {
      const Forest fg = f * g;
      CHECK(fg.size() == f.size() + g.size());
      CHECK(fg.zero_count() == f.zero_count() + g.zero_count());
      CHECK(fg == g * f);
    }
  CHECK(decode_tree("0[1[] 0[]]").zero_count() == 2);
}

TEST_CASE("canonicalisation is idempotent") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Tree t = decode_tree(random_text(rng, 1 + static_cast<int>(rng() % 8), 3));
    CHECK(Tree(t.decoration(), t.children()) == t);
    CHECK(decode_tree(encode(t)) == t);
  }
}
