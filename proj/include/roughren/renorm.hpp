#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "roughren/character.hpp"
#include "roughren/check_report.hpp"
#include "roughren/forest_hopf.hpp"
#include "roughren/word_hopf.hpp"

namespace roughren {

/// Character v for the BPHZ map: free values on trees without 0-decorations,
/// zero on trees containing a 0, v(𝟏) = 1, multiplicative on forests.
class BphzCharacter {
 public:
  BphzCharacter() = default;
  /// Throws std::invalid_argument for nonzero values on 0-decorated trees.
  explicit BphzCharacter(std::map<Tree, Rational> values);

  /// Seeded random values p/q with |p| ≤ 5, 1 ≤ q ≤ 4 on every 0-free tree
  /// of size ≤ n_max.
  static BphzCharacter random(int n_max, int d, std::uint64_t seed);

  Rational value(const Tree& t) const;
  Rational value(const Forest& f) const;
  const std::map<Tree, Rational>& values() const noexcept { return values_; }

 private:
  std::map<Tree, Rational> values_;
};

/// Structural check applied to local rules when they are loaded.
enum class RuleOrder {
  /// Corrections strictly smaller in node count.
  strict,
  /// Ties |τᵢ| = |τ| allowed when |τ|₀ < |τᵢ|₀.
  loosened,
};

/// Finite table τ ↦ Rτ of tree combinations; trees absent from the table are
/// fixed by R. Construction validates condition 1 (coefficient 1 on τ,
/// corrections are trees, regularity does not drop, order decreases).
class LocalRule {
 public:
  LocalRule() = default;
  LocalRule(std::map<Tree, ForestComb> table, double gamma, RuleOrder order = RuleOrder::strict);

  ForestComb apply(const Tree& t) const;
  /// Multiplicative extension with R(𝟏) = 𝟏.
  ForestComb apply(const Forest& f) const;
  const std::map<Tree, ForestComb>& table() const noexcept { return table_; }
  RuleOrder order() const noexcept { return order_; }

 private:
  std::map<Tree, ForestComb> table_;
  RuleOrder order_ = RuleOrder::strict;
};

/// Rule Rτ = Σ_σ v(σ)·(τ/σ) over subtrees σ containing the root, where τ/σ
/// contracts σ to a 0-decorated node; σ = ∅ contributes τ itself. Its local
/// map coincides with the BPHZ map of v. Single-node σ need the loosened order.
LocalRule root_extraction_rule(const BphzCharacter& v, int n_max, int d, double gamma,
                               RuleOrder order = RuleOrder::strict);

using SparseColumn = std::vector<std::pair<std::uint32_t, Rational>>;

/// Exact matrix of a linear map on ℋ_N in the forest basis; column i holds
/// the coordinates of the image of forest i. Terms leaving the basis are
/// dropped and counted.
class RenormMatrix {
 public:
  RenormMatrix(ForestBasisPtr basis, std::vector<SparseColumn> columns, std::string label,
               std::size_t dropped_terms = 0);

  static RenormMatrix identity(ForestBasisPtr basis);
  /// Multiplicative extension of a tree map (𝟏 ↦ 𝟏).
  static RenormMatrix from_tree_map(ForestBasisPtr basis,
                                    const std::function<ForestComb(const Tree&)>& tree_image,
                                    std::string label);

  const ForestBasis& basis() const noexcept { return *basis_; }
  const ForestBasisPtr& basis_ptr() const noexcept { return basis_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dropped_terms() const noexcept { return dropped_; }
  const SparseColumn& column(std::size_t i) const { return columns_.at(i); }
  /// ⟨M f_col, f_row⟩.
  Rational entry(std::size_t col, std::size_t row) const;

  ForestComb apply(const Forest& f) const;
  ForestComb apply(const ForestComb& x) const;

  /// Transpose over the (orthonormal) forest basis.
  RenormMatrix adjoint() const;
  /// (this ∘ other)f = this(other f).
  RenormMatrix compose(const RenormMatrix& other) const;
  /// Copy with one entry replaced.
  RenormMatrix with_entry(std::size_t col, std::size_t row, const Rational& value) const;

  friend bool operator==(const RenormMatrix& a, const RenormMatrix& b) {
    return a.columns_ == b.columns_;
  }

 private:
  ForestBasisPtr basis_;
  std::vector<SparseColumn> columns_;
  std::string label_;
  std::size_t dropped_ = 0;
};

/// M_v = (v ⊗ id)Δ⁻.
RenormMatrix bphz_map(const BphzCharacter& v, ForestBasisPtr basis);

struct LocalMaps {
  RenormMatrix m;
  /// M°, with M°B⁺ᵢ(f) = B⁺ᵢ(Mf).
  RenormMatrix m_circ;
};

/// M𝟏 = 𝟏, M multiplicative, Mτ = M°Rτ, M°B⁺ᵢ(f) = B⁺ᵢ(Mf).
LocalMaps local_map(const LocalRule& rule, ForestBasisPtr basis);

/// (M ⊗ M)Δ = ΔM on all trees with |τ| ≤ n_max.
CheckReport check_cointeraction(const RenormMatrix& m, int n_max);
/// The two identities for local maps, each under both slot placements of M°:
/// ΔM = (M ⊗ M°)Δ, ΔM = (M° ⊗ M)Δ, ΔM° = (M° ⊗ M°)Δ.
std::vector<CheckReport> check_local_cointeractions(const LocalMaps& maps, int n_max);

/// Every image Mτ is τ plus tree terms τᵢ with tree_weight(τᵢ) ≥ tree_weight(τ)
/// and |τᵢ| ≤ |τ|; also reports forests in tree images and dropped terms.
CheckReport check_analytic_condition(const RenormMatrix& m, double gamma, double tol = 1e-12);

/// Multiplicativity and unit of the matrix on basis forests.
CheckReport check_multiplicative(const RenormMatrix& m);

/// Condition 2, (R ⊗ id)Δ = ΔR and (id ⊗ R)Δ = ΔR, on trees with |τ| ≤ n_max.
std::vector<CheckReport> check_admissible(const LocalRule& rule, int n_max, int d);

/// Nonzero C(τ, τ₁) = ⟨Mτ₁, τ⟩ over basis trees τ₁.
std::vector<std::pair<Tree, Rational>> translation_coeffs(const RenormMatrix& m, const Tree& t);

/// ⟨M*X, f⟩ = ⟨X, Mf⟩.
template <class S>
Character<S> apply_adjoint(const RenormMatrix& m, const Character<S>& x);

/// Letterwise substitution τ ↦ Mτ (read as a combination of letters),
/// extended multiplicatively for concatenation.
class BarMap {
 public:
  explicit BarMap(const RenormMatrix& m);
  WordComb apply(const Word& w) const;
  WordComb apply(const WordComb& x) const;
  const WordComb& letter_image(const Tree& t) const;

 private:
  std::map<Tree, WordComb> letters_;
};

/// ψ(Mτ) = M̄ψ(τ) on trees with |τ| ≤ n_max.
CheckReport check_bar_square(const RenormMatrix& m, int n_max);

}  // namespace roughren
