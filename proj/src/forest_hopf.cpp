#include "roughren/forest_hopf.hpp"

#include <map>
#include <sstream>

namespace roughren {

ForestComb unit_comb() { return ForestComb(Forest()); }

ForestComb as_comb(const Tree& t) { return ForestComb(Forest(t)); }

ForestComb forest_product(const ForestComb& a, const ForestComb& b) {
  ForestComb out;
  for (const auto& [fa, ca] : a)
    for (const auto& [fb, cb] : b) out.add(fa * fb, ca * cb);
  return out;
}

TensorComb tensor_product(const TensorComb& a, const TensorComb& b) {
  TensorComb out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b)
      out.add({ka.first * kb.first, ka.second * kb.second}, ca * cb);
  return out;
}

namespace {

TensorComb unit_tensor() { return TensorComb({Forest(), Forest()}); }

}  // namespace

TensorComb coproduct_ck(const Tree& t) {
  TensorComb out({Forest(), Forest(t)});
  const TensorComb below = coproduct_ck(t.branches());
  for (const auto& [k, c] : below) out.add({Forest(b_plus(k.first, t.decoration())), k.second}, c);
  return out;
}

TensorComb coproduct_ck(const Forest& f) {
  TensorComb out = unit_tensor();
  for (const auto& t : f.trees()) out = tensor_product(out, coproduct_ck(t));
  return out;
}

TensorComb coproduct_ck(const ForestComb& x) {
  TensorComb out;
  for (const auto& [f, c] : x) {
    TensorComb d = coproduct_ck(f);
    d *= c;
    out += d;
  }
  return out;
}

namespace {

ForestComb antipode_tree(const Tree& t, std::map<Tree, ForestComb>& memo) {
  if (auto it = memo.find(t); it != memo.end()) return it->second;
  ForestComb out(Forest(t), Rational(-1));
  for (const auto& [k, c] : coproduct_ck(t)) {
    const auto& [trunk, rest] = k;
    if (trunk.empty() || rest.empty()) continue;
    // Trunks are single trees strictly smaller than t.
    ForestComb term = forest_product(antipode_tree(trunk.as_tree(), memo), ForestComb(rest));
    term *= -c;
    out += term;
  }
  memo.emplace(t, out);
  return out;
}

ForestComb antipode_forest(const Forest& f, std::map<Tree, ForestComb>& memo) {
  ForestComb out = unit_comb();
  for (const auto& t : f.trees()) out = forest_product(out, antipode_tree(t, memo));
  return out;
}

}  // namespace

ForestComb antipode(const Forest& f) {
  std::map<Tree, ForestComb> memo;
  return antipode_forest(f, memo);
}

ForestComb antipode(const ForestComb& x) {
  std::map<Tree, ForestComb> memo;
  ForestComb out;
  for (const auto& [f, c] : x) {
    ForestComb a = antipode_forest(f, memo);
    a *= c;
    out += a;
  }
  return out;
}

namespace {

Tensor3Comb triple_product(const Tensor3Comb& a, const Tensor3Comb& b) {
  Tensor3Comb out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b)
      out.add({std::get<0>(ka) * std::get<0>(kb), std::get<1>(ka) * std::get<1>(kb),
               std::get<2>(ka) * std::get<2>(kb)},
              ca * cb);
  return out;
}

Tensor3Comb unit_triple() { return Tensor3Comb({Forest(), Forest(), Forest()}); }

TensorComb extraction_full(const Tree& t);

/// Terms where the root of `t` lies in an extracted component that may still
/// grow upwards: (root component's children σ₋, other extracted F, remnants R
/// hanging below the root component).
Tensor3Comb extraction_attached(const Tree& t) {
  Tensor3Comb acc = unit_triple();
  for (const auto& child : t.children()) {
    Tensor3Comb options;
    for (const auto& [k, c] : extraction_attached(child)) {
      const auto& [sigma_children, extracted, remnants] = k;
      options.add({Forest(b_plus(sigma_children, child.decoration())), extracted, remnants}, c);
    }
    for (const auto& [k, c] : extraction_full(child))
      options.add({Forest(), k.first, Forest(k.second)}, c);
    acc = triple_product(acc, options);
  }
  return acc;
}

TensorComb extraction_full(const Tree& t) {
  TensorComb out;
  // Root not extracted.
  TensorComb below = unit_tensor();
  for (const auto& child : t.children()) below = tensor_product(below, extraction_full(child));
  for (const auto& [k, c] : below)
    out.add({k.first, Forest(b_plus(k.second, t.decoration()))}, c);
  // Root extracted; its component closes here.
  for (const auto& [k, c] : extraction_attached(t)) {
    const auto& [sigma_children, extracted, remnants] = k;
    Forest sigma(b_plus(sigma_children, t.decoration()));
    out.add({sigma * extracted, Forest(b_plus(remnants, 0))}, c);
  }
  return out;
}

}  // namespace

TensorComb coproduct_extraction(const Tree& t) { return extraction_full(t); }

TensorComb coproduct_extraction(const Forest& f) {
  TensorComb out = unit_tensor();
  for (const auto& t : f.trees()) out = tensor_product(out, extraction_full(t));
  return out;
}

TensorComb coproduct_extraction(const ForestComb& x) {
  TensorComb out;
  for (const auto& [f, c] : x) {
    TensorComb d = coproduct_extraction(f);
    d *= c;
    out += d;
  }
  return out;
}

CheckReport check_cointeract_13_2_4(int n_max, int d, const ExtractionCoproduct& extraction) {
  const ExtractionCoproduct dminus =
      extraction ? extraction : [](const Forest& f) { return coproduct_extraction(f); };
  CheckReport report("cointeraction (13)(2)(4)");
  for (const Tree& t : enumerate_trees(n_max, d)) {
    Tensor3Comb lhs;
    for (const auto& [k, c] : coproduct_ck(t)) {
      const TensorComb left = dminus(k.first);
      const TensorComb right = dminus(k.second);
      for (const auto& [a, ca] : left)
        for (const auto& [b, cb] : right)
          lhs.add({a.first * b.first, a.second, b.second}, c * ca * cb);
    }
    Tensor3Comb rhs;
    for (const auto& [k, c] : dminus(Forest(t)))
      for (const auto& [s, cs] : coproduct_ck(k.second))
        rhs.add({k.first, s.first, s.second}, c * cs);
    ++report.checked;
    if (!(lhs == rhs)) {
      report.fail("tree " + encode(t) + ": LHS = " + to_string(lhs) + " ; RHS = " + to_string(rhs));
      report.max_defect = 1.0;
      break;
    }
  }
  return report;
}

namespace {

std::string bracket(const Forest& f) { return f.empty() ? "1" : "{" + encode(f) + "}"; }

template <class Comb, class KeyFmt>
std::string format_comb(const Comb& x, KeyFmt&& fmt) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << roughren::to_string(c) << "*";
    os << fmt(k);
  }
  return os.str();
}

}  // namespace

std::string to_string(const ForestComb& x) {
  return format_comb(x, [](const Forest& f) { return bracket(f); });
}

std::string to_string(const TensorComb& x) {
  return format_comb(x, [](const std::pair<Forest, Forest>& k) {
    return bracket(k.first) + "⊗" + bracket(k.second);
  });
}

std::string to_string(const Tensor3Comb& x) {
  return format_comb(x, [](const std::tuple<Forest, Forest, Forest>& k) {
    return bracket(std::get<0>(k)) + "⊗" + bracket(std::get<1>(k)) + "⊗" +
           bracket(std::get<2>(k));
  });
}

}  // namespace roughren
