#pragma once

// Brute-force reference implementations. They work on flattened node arrays
// and share nothing with the recursive library code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "roughren/forest_hopf.hpp"
#include "roughren/tree.hpp"

namespace oracle {

using namespace roughren;

/// Tree as parallel arrays; node 0 is the root, parent[0] = -1.
struct NodeArray {
  std::vector<int> parent;
  std::vector<Decoration> dec;

  std::size_t size() const { return dec.size(); }
};

inline void flatten_into(const Tree& t, int parent, NodeArray& out) {
  const int me = static_cast<int>(out.size());
  out.parent.push_back(parent);
  out.dec.push_back(t.decoration());
  for (const auto& c : t.children()) flatten_into(c, me, out);
}

inline NodeArray flatten(const Tree& t) {
  NodeArray out;
  flatten_into(t, -1, out);
  return out;
}

/// Builds the canonical tree rooted at `root` using only nodes in `keep`,
/// following `parent` links (nodes whose parent is not kept are roots elsewhere).
inline Tree build(const std::vector<int>& parent, const std::vector<Decoration>& dec,
                  const std::vector<bool>& keep, int root) {
  std::vector<Tree> children;
  for (int v = 0; v < static_cast<int>(parent.size()); ++v)
    if (keep[v] && parent[v] == root) children.push_back(build(parent, dec, keep, v));
  return Tree(dec[root], std::move(children));
}

/// All canonical trees of exactly n nodes generated from every parent array
/// (parent[i] < i) and every decoration vector, deduplicated.
inline std::set<Tree> brute_force_trees(int n, int d) {
  std::set<Tree> out;
  std::vector<int> parent(n, -1);
  std::vector<Decoration> dec(n, 0);
  std::vector<bool> keep(n, true);
  std::function<void(int)> rec_parent;
  std::function<void(int)> rec_dec = [&](int i) {
    if (i == n) {
      out.insert(build(parent, dec, keep, 0));
      return;
    }
    for (Decoration k = 0; k <= d; ++k) {
      dec[i] = k;
      rec_dec(i + 1);
    }
  };
  rec_parent = [&](int i) {
    if (i == n) {
      rec_dec(0);
      return;
    }
    for (int p = 0; p < i; ++p) {
      parent[i] = p;
      rec_parent(i + 1);
    }
  };
  rec_parent(1);
  return out;
}

/// BCK coproduct by enumerating trunks: node sets closed under taking the
/// parent (empty, or containing the root). Trunk LEFT, cut branches RIGHT.
inline TensorComb admissible_cuts(const Tree& t) {
  const NodeArray a = flatten(t);
  const int n = static_cast<int>(a.size());
  TensorComb out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (int v = 1; v < n && closed; ++v)
      if ((mask >> v & 1u) && !(mask >> a.parent[v] & 1u)) closed = false;
    if (!closed) continue;
    std::vector<bool> in_trunk(n), in_rest(n);
    for (int v = 0; v < n; ++v) {
      in_trunk[v] = mask >> v & 1u;
      in_rest[v] = !in_trunk[v];
    }
    Forest trunk = in_trunk[0] ? Forest(build(a.parent, a.dec, in_trunk, 0)) : Forest();
    std::vector<Tree> branches;
    for (int v = 0; v < n; ++v)
      if (in_rest[v] && (a.parent[v] < 0 || !in_rest[a.parent[v]]))
        branches.push_back(build(a.parent, a.dec, in_rest, v));
    out.add({trunk, Forest(std::move(branches))}, 1);
  }
  return out;
}

inline TensorComb admissible_cuts(const Forest& f) {
  TensorComb out({Forest(), Forest()});
  for (const auto& t : f.trees()) out = tensor_product(out, admissible_cuts(t));
  return out;
}

/// Δ⁻ by enumerating a node subset S and a subset of the edges inside S; the
/// connected components are the extracted subtrees.
inline TensorComb brute_force_extraction(const Tree& t) {
  const NodeArray a = flatten(t);
  const int n = static_cast<int>(a.size());
  TensorComb out;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    std::vector<int> inner;  // child endpoints of edges with both ends in S
    for (int v = 1; v < n; ++v)
      if ((s >> v & 1u) && (s >> a.parent[v] & 1u)) inner.push_back(v);
    const int m = static_cast<int>(inner.size());
    for (std::uint32_t e = 0; e < (1u << m); ++e) {
      // Component parent links: kept inner edges only.
      std::vector<int> comp_parent(n, -1);
      std::vector<bool> in_s(n);
      for (int v = 0; v < n; ++v) in_s[v] = s >> v & 1u;
      for (int j = 0; j < m; ++j)
        if (e >> j & 1u) comp_parent[inner[j]] = a.parent[inner[j]];
      // Component top of every node in S.
      std::vector<int> top(n, -1);
      for (int v = 0; v < n; ++v) {
        if (!in_s[v]) continue;
        int u = v;
        while (comp_parent[u] >= 0) u = comp_parent[u];
        top[v] = u;
      }
      std::vector<Tree> extracted;
      for (int v = 0; v < n; ++v) {
        if (!in_s[v] || top[v] != v) continue;
        std::vector<bool> keep(n, false);
        for (int u = 0; u < n; ++u) keep[u] = in_s[u] && top[u] == v;
        std::vector<int> cp = comp_parent;
        extracted.push_back(build(cp, a.dec, keep, v));
      }
      // Contracted tree: representatives are the non-S nodes and component tops.
      std::vector<int> rep(n);
      for (int v = 0; v < n; ++v) rep[v] = in_s[v] ? top[v] : v;
      std::vector<int> cparent(n, -1);
      std::vector<Decoration> cdec(a.dec);
      std::vector<bool> keep(n, false);
      for (int v = 0; v < n; ++v) {
        if (rep[v] != v) continue;
        keep[v] = true;
        if (in_s[v]) cdec[v] = 0;
        const int p = a.parent[v];
        cparent[v] = p < 0 ? -1 : rep[p];
      }
      out.add({Forest(std::move(extracted)), Forest(build(cparent, cdec, keep, rep[0]))}, 1);
    }
  }
  return out;
}

}  // namespace oracle
