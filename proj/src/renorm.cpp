#include "roughren/renorm.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "roughren/tree_word_maps.hpp"

namespace roughren {

namespace {

bool has_zero(const Tree& t) { return t.zero_count() != 0; }

ForestComb b_plus_comb(const ForestComb& x, Decoration dec) {
  ForestComb out;
  for (const auto& [f, c] : x) out.add(Forest(b_plus(f, dec)), c);
  return out;
}

double comb_magnitude(const TensorComb& x) {
  double worst = 0;
  for (const auto& [k, c] : x) worst = std::max(worst, magnitude(c));
  return worst;
}

/// Subtrees σ containing the root of t, each with the forest of subtrees
/// left hanging below σ.
std::vector<std::pair<Tree, Forest>> rooted_subtrees(const Tree& t) {
  std::vector<std::pair<Forest, Forest>> acc{{Forest(), Forest()}};
  for (const auto& child : t.children()) {
    std::vector<std::pair<Forest, Forest>> next;
    const auto below = rooted_subtrees(child);
    for (const auto& [kids, rest] : acc) {
      next.emplace_back(kids, rest * Forest(child));
      for (const auto& [sigma, r] : below) next.emplace_back(kids * Forest(sigma), rest * r);
    }
    acc = std::move(next);
  }
  std::vector<std::pair<Tree, Forest>> out;
  out.reserve(acc.size());
  for (const auto& [kids, rest] : acc) out.emplace_back(b_plus(kids, t.decoration()), rest);
  return out;
}

}  // namespace

BphzCharacter::BphzCharacter(std::map<Tree, Rational> values) {
  for (auto& [t, q] : values) {
    if (is_zero(q)) continue;
    if (has_zero(t))
      throw std::invalid_argument("BPHZ character must vanish on 0-decorated tree " + encode(t));
    values_.emplace(t, q);
  }
}

BphzCharacter BphzCharacter::random(int n_max, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::map<Tree, Rational> values;
  for (const Tree& t : enumerate_trees(n_max, d)) {
    if (has_zero(t)) continue;
    Rational q(num(rng), den(rng));
    q.canonicalize();
    values.emplace(t, q);
  }
  return BphzCharacter(std::move(values));
}

Rational BphzCharacter::value(const Tree& t) const {
  auto it = values_.find(t);
  return it == values_.end() ? Rational(0) : it->second;
}

Rational BphzCharacter::value(const Forest& f) const {
  Rational out = 1;
  for (const auto& t : f.trees()) {
    out *= value(t);
    if (is_zero(out)) break;
  }
  return out;
}

LocalRule::LocalRule(std::map<Tree, ForestComb> table, double gamma, RuleOrder order)
    : order_(order) {
  constexpr double tol = 1e-12;
  for (auto& [t, image] : table) {
    const std::string where = "rule entry " + encode(t) + ": ";
    if (image.coefficient(Forest(t)) != 1)
      throw std::invalid_argument(where + "coefficient of the tree itself must be 1");
    for (const auto& [f, c] : image) {
      if (f == Forest(t)) continue;
      if (!f.is_tree()) throw std::invalid_argument(where + "correction {" + encode(f) + "} is not a tree");
      const Tree& s = f.as_tree();
      const bool smaller = s.size() < t.size();
      const bool tie_ok = order == RuleOrder::loosened && s.size() == t.size() &&
                          t.zero_count() < s.zero_count();
      if (!smaller && !tie_ok)
        throw std::invalid_argument(where + "correction " + encode(s) + " is not below the tree");
      if (tree_weight(s, gamma) + tol < tree_weight(t, gamma))
        throw std::invalid_argument(where + "correction " + encode(s) + " lowers the regularity");
    }
    if (image == ForestComb(Forest(t))) continue;
    table_.emplace(t, image);
  }
}

ForestComb LocalRule::apply(const Tree& t) const {
  auto it = table_.find(t);
  return it == table_.end() ? ForestComb(Forest(t)) : it->second;
}

ForestComb LocalRule::apply(const Forest& f) const {
  ForestComb out = unit_comb();
  for (const auto& t : f.trees()) out = forest_product(out, apply(t));
  return out;
}

LocalRule root_extraction_rule(const BphzCharacter& v, int n_max, int d, double gamma,
                               RuleOrder order) {
  std::map<Tree, ForestComb> table;
  for (const Tree& t : enumerate_trees(n_max, d)) {
    ForestComb image{Forest(t)};
    for (const auto& [sigma, rest] : rooted_subtrees(t)) {
      const Rational c = v.value(sigma);
      if (!is_zero(c)) image.add(Forest(b_plus(rest, 0)), c);
    }
    if (image.size() > 1) table.emplace(t, image);
  }
  return LocalRule(std::move(table), gamma, order);
}

RenormMatrix::RenormMatrix(ForestBasisPtr basis, std::vector<SparseColumn> columns,
                           std::string label, std::size_t dropped_terms)
    : basis_(std::move(basis)),
      columns_(std::move(columns)),
      label_(std::move(label)),
      dropped_(dropped_terms) {
  if (columns_.size() != basis_->size())
    throw std::invalid_argument("matrix column count does not match its basis");
  for (auto& col : columns_) {
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    col.erase(std::remove_if(col.begin(), col.end(), [](const auto& e) { return is_zero(e.second); }),
              col.end());
  }
}

RenormMatrix RenormMatrix::identity(ForestBasisPtr basis) {
  std::vector<SparseColumn> cols(basis->size());
  for (std::size_t i = 0; i < cols.size(); ++i)
    cols[i].emplace_back(static_cast<std::uint32_t>(i), Rational(1));
  return RenormMatrix(std::move(basis), std::move(cols), "identity");
}

RenormMatrix RenormMatrix::from_tree_map(ForestBasisPtr basis,
                                         const std::function<ForestComb(const Tree&)>& tree_image,
                                         std::string label) {
  std::map<std::size_t, ForestComb> tree_cols;
  for (auto i : basis->tree_indices()) tree_cols.emplace(i, tree_image(basis->forest(i).as_tree()));
  std::vector<SparseColumn> cols(basis->size());
  std::size_t dropped = 0;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    ForestComb image = unit_comb();
    for (auto t : basis->factors(i)) image = forest_product(image, tree_cols.at(t));
    for (const auto& [f, c] : image) {
      if (auto j = basis->find(f))
        cols[i].emplace_back(static_cast<std::uint32_t>(*j), c);
      else
        ++dropped;
    }
  }
  return RenormMatrix(std::move(basis), std::move(cols), std::move(label), dropped);
}

Rational RenormMatrix::entry(std::size_t col, std::size_t row) const {
  const auto& c = columns_.at(col);
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const auto& e, std::size_t r) { return e.first < r; });
  return it != c.end() && it->first == row ? it->second : Rational(0);
}

ForestComb RenormMatrix::apply(const Forest& f) const {
  ForestComb out;
  for (const auto& [j, c] : columns_.at(basis_->index(f))) out.add(basis_->forest(j), c);
  return out;
}

ForestComb RenormMatrix::apply(const ForestComb& x) const {
  ForestComb out;
  for (const auto& [f, c] : x) {
    ForestComb y = apply(f);
    y *= c;
    out += y;
  }
  return out;
}

RenormMatrix RenormMatrix::adjoint() const {
  std::vector<SparseColumn> cols(columns_.size());
  for (std::size_t i = 0; i < columns_.size(); ++i)
    for (const auto& [j, c] : columns_[i]) cols[j].emplace_back(static_cast<std::uint32_t>(i), c);
  const std::string name =
      label_.size() > 1 && label_.back() == '*' ? label_.substr(0, label_.size() - 1) : label_ + "*";
  return RenormMatrix(basis_, std::move(cols), name, dropped_);
}

RenormMatrix RenormMatrix::compose(const RenormMatrix& other) const {
  if (basis_->size() != other.basis_->size())
    throw std::invalid_argument("composition of matrices over different bases");
  std::vector<SparseColumn> cols(columns_.size());
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    std::map<std::uint32_t, Rational> acc;
    for (const auto& [k, ck] : other.columns_[i])
      for (const auto& [j, cj] : columns_[k]) acc[j] += ck * cj;
    for (auto& [j, c] : acc) cols[i].emplace_back(j, c);
  }
  return RenormMatrix(basis_, std::move(cols), label_ + "∘" + other.label_,
                      dropped_ + other.dropped_);
}

RenormMatrix RenormMatrix::with_entry(std::size_t col, std::size_t row, const Rational& value) const {
  std::vector<SparseColumn> cols = columns_;
  auto& c = cols.at(col);
  auto it = std::find_if(c.begin(), c.end(), [row](const auto& e) { return e.first == row; });
  if (it != c.end())
    it->second = value;
  else
    c.emplace_back(static_cast<std::uint32_t>(row), value);
  return RenormMatrix(basis_, std::move(cols), label_ + " (mutated)", dropped_);
}

RenormMatrix bphz_map(const BphzCharacter& v, ForestBasisPtr basis) {
  return RenormMatrix::from_tree_map(
      std::move(basis),
      [&v](const Tree& t) {
        ForestComb out;
        for (const auto& [k, c] : coproduct_extraction(t)) {
          const Rational w = v.value(k.first);
          if (!is_zero(w)) out.add(k.second, c * w);
        }
        return out;
      },
      "M_v");
}

LocalMaps local_map(const LocalRule& rule, ForestBasisPtr basis) {
  std::map<Tree, ForestComb> memo_m;
  std::function<ForestComb(const Tree&)> m_tree;
  const auto m_forest = [&](const Forest& f) {
    ForestComb out = unit_comb();
    for (const auto& t : f.trees()) out = forest_product(out, m_tree(t));
    return out;
  };
  const auto m_circ = [&](const Tree& t) { return b_plus_comb(m_forest(t.branches()), t.decoration()); };
  m_tree = [&](const Tree& t) -> ForestComb {
    if (auto it = memo_m.find(t); it != memo_m.end()) return it->second;
    ForestComb out;
    for (const auto& [f, c] : rule.apply(t)) {
      ForestComb term = m_circ(f.as_tree());
      term *= c;
      out += term;
    }
    memo_m.emplace(t, out);
    return out;
  };
  RenormMatrix m = RenormMatrix::from_tree_map(basis, m_tree, "M_R");
  RenormMatrix mc = RenormMatrix::from_tree_map(basis, m_circ, "M°_R");
  return {std::move(m), std::move(mc)};
}

namespace {

/// ΔA τ = (B ⊗ C)Δτ on trees |τ| ≤ n_max.
CheckReport check_tensor_identity(std::string name, const RenormMatrix& a, const RenormMatrix& b,
                                  const RenormMatrix& c, int n_max) {
  CheckReport report(std::move(name));
  const ForestBasis& basis = a.basis();
  for (auto i : basis.tree_indices()) {
    const Forest& f = basis.forest(i);
    if (static_cast<int>(f.size()) > n_max) continue;
    ++report.checked;
    TensorComb lhs = coproduct_ck(a.apply(f));
    TensorComb rhs;
    for (const auto& [k, coef] : coproduct_ck(f)) {
      const ForestComb l = b.apply(k.first);
      const ForestComb r = c.apply(k.second);
      for (const auto& [x, cx] : l)
        for (const auto& [y, cy] : r) rhs.add({x, y}, coef * cx * cy);
    }
    if (!(lhs == rhs)) {
      const TensorComb diff = lhs - rhs;
      report.max_defect = std::max(report.max_defect, comb_magnitude(diff));
      report.fail("tree " + encode(f) + ": LHS − RHS = " + to_string(diff));
    }
  }
  return report;
}

}  // namespace

CheckReport check_cointeraction(const RenormMatrix& m, int n_max) {
  return check_tensor_identity("cointeraction (M⊗M)Δ = ΔM [" + m.label() + "]", m, m, m, n_max);
}

std::vector<CheckReport> check_local_cointeractions(const LocalMaps& maps, int n_max) {
  return {
      check_tensor_identity("ΔM = (M⊗M°)Δ", maps.m, maps.m, maps.m_circ, n_max),
      check_tensor_identity("ΔM = (M°⊗M)Δ", maps.m, maps.m_circ, maps.m, n_max),
      check_tensor_identity("ΔM° = (M°⊗M°)Δ", maps.m_circ, maps.m_circ, maps.m_circ, n_max),
  };
}

CheckReport check_analytic_condition(const RenormMatrix& m, double gamma, double tol) {
  CheckReport report("analytic condition [" + m.label() + "]");
  const ForestBasis& basis = m.basis();
  for (auto i : basis.tree_indices()) {
    const Tree& t = basis.forest(i).as_tree();
    ++report.checked;
    if (m.entry(i, i) != 1) report.fail("tree " + encode(t) + ": coefficient of itself is not 1");
    for (const auto& [j, c] : m.column(i)) {
      if (j == i) continue;
      const Forest& f = basis.forest(j);
      if (!f.is_tree()) {
        report.fail("tree " + encode(t) + " maps onto the forest {" + encode(f) + "}");
        continue;
      }
      const Tree& s = f.as_tree();
      if (s.size() > t.size())
        report.fail("tree " + encode(t) + " maps onto larger tree " + encode(s));
      const double gap = tree_weight(t, gamma) - tree_weight(s, gamma);
      if (gap > tol) {
        report.max_defect = std::max(report.max_defect, gap);
        report.fail("tree " + encode(t) + " maps onto less regular tree " + encode(s));
      }
    }
  }
  if (m.dropped_terms() != 0)
    report.fail(std::to_string(m.dropped_terms()) + " image terms fell outside the truncation");
  return report;
}

CheckReport check_multiplicative(const RenormMatrix& m) {
  CheckReport report("multiplicativity [" + m.label() + "]");
  const ForestBasis& basis = m.basis();
  if (!(m.apply(Forest()) == unit_comb())) report.fail("M𝟏 ≠ 𝟏");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& fac = basis.factors(i);
    if (fac.size() < 2) continue;
    ++report.checked;
    ForestComb prod = unit_comb();
    for (auto t : fac) prod = forest_product(prod, m.apply(basis.forest(t)));
    ForestComb kept;
    for (const auto& [f, c] : prod)
      if (basis.find(f)) kept.add(f, c);
    if (!(kept == m.apply(basis.forest(i))))
      report.fail("forest " + encode(basis.forest(i)) + ": M(f·g) ≠ Mf·Mg");
  }
  return report;
}

std::vector<CheckReport> check_admissible(const LocalRule& rule, int n_max, int d) {
  CheckReport left("(R⊗id)Δ = ΔR");
  CheckReport right("(id⊗R)Δ = ΔR");
  for (const Tree& t : enumerate_trees(n_max, d)) {
    const TensorComb target = coproduct_ck(rule.apply(t));
    TensorComb l, r;
    for (const auto& [k, c] : coproduct_ck(t)) {
      for (const auto& [x, cx] : rule.apply(k.first)) l.add({x, k.second}, c * cx);
      for (const auto& [y, cy] : rule.apply(k.second)) r.add({k.first, y}, c * cy);
    }
    ++left.checked;
    ++right.checked;
    if (!(l == target)) {
      left.max_defect = std::max(left.max_defect, comb_magnitude(l - target));
      left.fail("tree " + encode(t) + ": LHS − RHS = " + to_string(l - target));
    }
    if (!(r == target)) {
      right.max_defect = std::max(right.max_defect, comb_magnitude(r - target));
      right.fail("tree " + encode(t) + ": LHS − RHS = " + to_string(r - target));
    }
  }
  return {left, right};
}

std::vector<std::pair<Tree, Rational>> translation_coeffs(const RenormMatrix& m, const Tree& t) {
  const std::size_t row = m.basis().index(t);
  std::vector<std::pair<Tree, Rational>> out;
  for (auto j : m.basis().tree_indices()) {
    const Rational c = m.entry(j, row);
    if (!is_zero(c)) out.emplace_back(m.basis().forest(j).as_tree(), c);
  }
  return out;
}

template <class S>
Character<S> apply_adjoint(const RenormMatrix& m, const Character<S>& x) {
  if (m.basis().size() != x.basis().size())
    throw std::invalid_argument("renormalisation matrix and character use different bases");
  std::vector<S> out(x.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    S acc(0);
    for (const auto& [j, c] : m.column(i)) {
      S term = from_rational<S>(c);
      term *= x[j];
      acc += term;
    }
    out[i] = std::move(acc);
  }
  return Character<S>(x.basis_ptr(), std::move(out));
}

template Character<double> apply_adjoint(const RenormMatrix&, const Character<double>&);
template Character<Rational> apply_adjoint(const RenormMatrix&, const Character<Rational>&);

BarMap::BarMap(const RenormMatrix& m) {
  const ForestBasis& basis = m.basis();
  for (auto i : basis.tree_indices()) {
    const Tree& t = basis.forest(i).as_tree();
    WordComb image;
    for (const auto& [j, c] : m.column(i)) {
      const Forest& f = basis.forest(j);
      if (!f.is_tree())
        throw std::domain_error("M sends tree " + encode(t) + " onto the forest {" + encode(f) +
                                "}; no letter image");
      image.add(Word{f.as_tree()}, c);
    }
    letters_.emplace(t, std::move(image));
  }
}

const WordComb& BarMap::letter_image(const Tree& t) const {
  auto it = letters_.find(t);
  if (it == letters_.end()) throw std::out_of_range("letter " + encode(t) + " outside the truncation");
  return it->second;
}

WordComb BarMap::apply(const Word& w) const {
  WordComb out(Word{});
  for (const auto& a : w) out = concat(out, letter_image(a));
  return out;
}

WordComb BarMap::apply(const WordComb& x) const {
  WordComb out;
  for (const auto& [w, c] : x) {
    WordComb y = apply(w);
    y *= c;
    out += y;
  }
  return out;
}

CheckReport check_bar_square(const RenormMatrix& m, int n_max) {
  CheckReport report("ψ∘M = M̄∘ψ [" + m.label() + "]");
  const BarMap bar(m);
  const ForestBasis& basis = m.basis();
  for (auto i : basis.tree_indices()) {
    const Forest& f = basis.forest(i);
    if (static_cast<int>(f.size()) > n_max) continue;
    ++report.checked;
    const WordComb lhs = psi(m.apply(f));
    const WordComb rhs = bar.apply(psi(f));
    if (!(lhs == rhs)) {
      const WordComb diff = lhs - rhs;
      for (const auto& [w, c] : diff) report.max_defect = std::max(report.max_defect, magnitude(c));
      report.fail("tree " + encode(f) + ": ψ(Mτ) − M̄ψ(τ) = " + to_string(diff));
    }
  }
  return report;
}

}  // namespace roughren
