#pragma once

#include <memory>
#include <string>
#include <vector>

#include "roughren/branched_rp.hpp"
#include "roughren/renorm.hpp"

namespace roughren {

/// Combination of dual symbols f*, paired orthonormally with forests.
using DualComb = ForestComb;

/// (f* ⋆ g*) = Σ_h ⟨Δh, f ⊗ g⟩ h* over basis forests h.
DualComb star_product(const ForestBasis& basis, const DualComb& a, const DualComb& b);

struct Generator {
  /// Letter used for the generator in words: the tree itself for a
  /// single-tree dual, otherwise the pivot tree of the combination.
  Tree label;
  DualComb dual;
  bool single_tree = true;
};

/// Free generators of the dual algebra up to size N, chosen greedily by
/// degree, and the change of basis between ⋆-monomials and forest duals.
class GeneratorBasis {
 public:
  static std::shared_ptr<const GeneratorBasis> compute(int truncation, int d);

  const ForestBasis& forests() const noexcept { return *forests_; }
  const ForestBasisPtr& forest_basis_ptr() const noexcept { return forests_; }
  const WordBasis& words() const noexcept { return *words_; }
  const WordBasisPtr& word_basis_ptr() const noexcept { return words_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  /// True when some degree needed a generator that is not a single-tree dual,
  /// or the monomials in the chosen generators were dependent.
  bool flagged() const noexcept { return flagged_; }
  /// Rank audit: square change of basis, mutually inverse, and per-degree
  /// monomial count equal to the forest count.
  const CheckReport& audit() const noexcept { return audit_; }

  /// ⟨monomial(w), f⟩: column w in forest-dual coordinates.
  const Rational& forward(std::size_t forest, std::size_t word) const {
    return forward_[forest * words_->size() + word];
  }
  /// Coefficient of monomial w in f*.
  const Rational& inverse(std::size_t word, std::size_t forest) const {
    return inverse_[word * forests_->size() + forest];
  }
  /// Monomial of word w as a dual combination.
  DualComb monomial(std::size_t word) const;
  /// Generator letter → its dual.
  const DualComb& generator_dual(const Tree& label) const;

  /// Ψ on a dual combination: coefficients in the monomial basis as words.
  WordComb psi_iso(const DualComb& x) const;

 private:
  GeneratorBasis() = default;

  ForestBasisPtr forests_;
  WordBasisPtr words_;
  std::vector<Generator> generators_;
  std::vector<Rational> forward_;
  std::vector<Rational> inverse_;
  bool flagged_ = false;
  CheckReport audit_{"generator basis rank audit"};
};

using GeneratorBasisPtr = std::shared_ptr<const GeneratorBasis>;

/// X̃_st = Ψ(X_st) word by word.
template <class S>
AnisotropicRP<S> iso_psi(const GeneratorBasisPtr& basis, const BranchedRP<S>& x);
/// Ψ⁻¹ back to forest characters.
template <class S>
BranchedRP<S> iso_psi_inverse(const GeneratorBasisPtr& basis, const AnisotropicRP<S>& xt,
                              double gamma);

/// M̃*: concatenation-multiplicative, M̃*τ = Ψ(M*τ) on generator letters.
class TildeMap {
 public:
  TildeMap(GeneratorBasisPtr basis, const RenormMatrix& m);

  const WordComb& letter_image(const Tree& label) const;
  /// Copy with one letter image replaced.
  TildeMap with_letter_image(const Tree& label, WordComb image) const;
  /// Image of a word, truncated to the word basis.
  WordComb apply(const Word& w) const;
  /// Applied to a series read as a combination of words.
  template <class S>
  WordSeries<S> apply(const WordSeries<S>& x) const;

 private:
  GeneratorBasisPtr basis_;
  std::map<Tree, WordComb> images_;
  /// Dense images of every basis word, built on construction.
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> word_images_;
  void build_word_images();
};

/// max |Ψ(M*X)_st(w) − (M̃*Ψ(X))_st(w)| over pairs and words.
template <class S>
CheckReport check_commute_iso(const GeneratorBasisPtr& basis, const RenormMatrix& m,
                              const TildeMap& tilde, const BranchedRP<S>& x, double tol);

}  // namespace roughren
