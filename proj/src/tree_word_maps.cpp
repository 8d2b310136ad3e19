#include "roughren/tree_word_maps.hpp"

#include <map>

namespace roughren {

namespace {

template <bool Arborify>
WordComb tree_map(const Tree& t);

template <bool Arborify>
WordComb forest_map(const Forest& f) {
  WordComb out(Word{});
  for (const auto& t : f.trees()) out = shuffle(out, tree_map<Arborify>(t));
  return out;
}

template <bool Arborify>
WordComb tree_map(const Tree& t) {
  thread_local std::map<Tree, WordComb> memo;
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  WordComb out;
  for (const auto& [k, c] : coproduct_ck(t)) {
    const auto& [trunk, rest] = k;
    if (trunk.empty()) continue;
    const Tree& letter = trunk.as_tree();
    if (Arborify && !letter.is_node()) continue;
    for (const auto& [w, cw] : forest_map<Arborify>(rest)) {
      Word v{letter};
      v.insert(v.end(), w.begin(), w.end());
      out.add(v, c * cw);
    }
  }
  memo.emplace(t, out);
  return out;
}

template <bool Arborify>
WordComb comb_map(const ForestComb& x) {
  WordComb out;
  for (const auto& [f, c] : x) {
    WordComb w = forest_map<Arborify>(f);
    w *= c;
    out += w;
  }
  return out;
}

}  // namespace

WordComb psi(const Tree& t) { return tree_map<false>(t); }
WordComb psi(const Forest& f) { return forest_map<false>(f); }
WordComb psi(const ForestComb& x) { return comb_map<false>(x); }

WordComb psi_lower(const Tree& t) {
  WordComb out = psi(t);
  out.add(Word{t}, -1);
  return out;
}

WordComb arborify(const Tree& t) { return tree_map<true>(t); }
WordComb arborify(const Forest& f) { return forest_map<true>(f); }
WordComb arborify(const ForestComb& x) { return comb_map<true>(x); }

}  // namespace roughren
