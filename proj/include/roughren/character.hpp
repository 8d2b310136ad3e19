#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "roughren/forest_hopf.hpp"
#include "roughren/rational.hpp"
#include "roughren/tree.hpp"

namespace roughren {

/// One term ⟨Δf, f_left ⊗ f_right⟩ = coef of the coproduct table.
struct CoproductTerm {
  std::uint32_t left;
  std::uint32_t right;
  std::int64_t coef;
};

/// Indexed forest basis of ℋ_N (all forests with |f| ≤ N over decorations
/// {0..d}) together with precomputed structure tables: coproduct, antipode and
/// the tree factorisation of each forest. Immutable; share via shared_ptr.
class ForestBasis {
 public:
  ForestBasis(int truncation, int d);

  int truncation() const noexcept { return truncation_; }
  int alphabet_bound() const noexcept { return d_; }
  std::size_t size() const noexcept { return forests_.size(); }

  const Forest& forest(std::size_t i) const { return forests_.at(i); }
  const std::vector<Forest>& forests() const noexcept { return forests_; }
  std::optional<std::size_t> find(const Forest& f) const;
  /// Throws std::out_of_range for forests outside the basis.
  std::size_t index(const Forest& f) const;
  std::size_t index(const Tree& t) const { return index(Forest(t)); }

  /// Basis indices of the single trees, in canonical order.
  const std::vector<std::size_t>& tree_indices() const noexcept { return tree_indices_; }
  std::vector<Tree> trees() const;
  /// Basis indices of the trees whose product is forest i (empty for 𝟏).
  const std::vector<std::uint32_t>& factors(std::size_t i) const { return factors_.at(i); }
  const std::vector<CoproductTerm>& coproduct(std::size_t i) const { return coproduct_.at(i); }
  const std::vector<std::pair<std::uint32_t, std::int64_t>>& antipode(std::size_t i) const {
    return antipode_.at(i);
  }

  /// Coordinates of a combination whose forests all lie in the basis.
  std::vector<std::pair<std::uint32_t, Rational>> coordinates(const ForestComb& x) const;

 private:
  int truncation_;
  int d_;
  std::vector<Forest> forests_;
  std::map<Forest, std::size_t> index_;
  std::vector<std::size_t> tree_indices_;
  std::vector<std::vector<std::uint32_t>> factors_;
  std::vector<std::vector<CoproductTerm>> coproduct_;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> antipode_;
};

using ForestBasisPtr = std::shared_ptr<const ForestBasis>;

ForestBasisPtr make_forest_basis(int truncation, int d);

/// Multiplicative linear functional on ℋ_N, stored densely over the forest
/// basis. Value semantics; cheap to copy relative to the grid sizes involved.
template <class S>
class Character {
 public:
  /// The counit 𝟏*.
  explicit Character(ForestBasisPtr basis);
  Character(ForestBasisPtr basis, std::vector<S> values);

  /// Extends tree values multiplicatively to all forests of the basis.
  static Character from_tree_values(ForestBasisPtr basis,
                                    const std::function<S(const Tree&)>& tree_value);

  int truncation() const noexcept { return basis_->truncation(); }
  const ForestBasis& basis() const noexcept { return *basis_; }
  const ForestBasisPtr& basis_ptr() const noexcept { return basis_; }

  const S& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<S>& values() const noexcept { return values_; }
  S value(const Forest& f) const { return values_[basis_->index(f)]; }
  S value(const Tree& t) const { return values_[basis_->index(t)]; }
  /// ⟨X, x⟩ for a combination inside the basis.
  S pair(const ForestComb& x) const;

  /// Copy with one entry replaced (mutation tests use this to break invariants).
  Character with_value(std::size_t i, S v) const;

 private:
  ForestBasisPtr basis_;
  std::vector<S> values_;
};

/// (X ⋆ Y)(f) = (X ⊗ Y)(Δf). Throws std::invalid_argument on truncation mismatch.
template <class S>
Character<S> convolve(const Character<S>& x, const Character<S>& y);

/// X⁻¹ = X ∘ 𝒜.
template <class S>
Character<S> inverse(const Character<S>& x);

/// max |X(f·g) − X(f)X(g)| over basis forests, computed against the tree
/// factorisation, together with |X(𝟏) − 1|.
template <class S>
double multiplicativity_defect(const Character<S>& x);

template <class S>
double max_abs_difference(const Character<S>& a, const Character<S>& b);

extern template class Character<double>;
extern template class Character<Rational>;

}  // namespace roughren
