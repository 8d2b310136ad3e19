#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "roughren/lincomb.hpp"
#include "roughren/rational.hpp"
#include "roughren/tree.hpp"

namespace roughren {

/// Word over the tree alphabet; letter order is significant. The empty word is ε.
using Word = std::vector<Tree>;
using WordComb = LinComb<Word>;
using WordTensor = LinComb<std::pair<Word, Word>>;

/// Total node count Σ|aᵢ| of the letters.
std::size_t word_size(const Word& w);

/// Letters separated by single spaces; ε encodes as "".
std::string encode(const Word& w);
Word decode_word(std::string_view text, std::optional<Decoration> max_decoration = std::nullopt);
std::string to_string(const WordComb& x);
std::string to_string(const WordTensor& x);

WordComb shuffle(const Word& u, const Word& v);
WordComb shuffle(const WordComb& u, const WordComb& v);
WordComb concat(const WordComb& u, const WordComb& v);
/// Δ̄(a₁…aₙ) = Σ_k a₁…a_k ⊗ a_{k+1}…aₙ.
WordTensor deconcat(const Word& w);
WordTensor deconcat(const WordComb& x);
/// Unshuffle coproduct: Σ over position subsets I of w_I ⊗ w_{Iᶜ}. Dual to
/// the shuffle product, so grouplike series are exactly shuffle characters.
WordTensor deshuffle(const Word& w);
WordTensor deshuffle(const WordComb& x);
/// Slotwise shuffle of two tensors.
WordTensor shuffle(const WordTensor& a, const WordTensor& b);

/// Drops words whose node count exceeds `max_size`.
WordComb truncate(const WordComb& x, std::size_t max_size);

/// Truncated concatenation exponential; requires a zero ε-coefficient.
WordComb concat_exp(const WordComb& x, std::size_t max_size);
/// Truncated concatenation logarithm; requires ε-coefficient 1.
WordComb concat_log(const WordComb& x, std::size_t max_size);

/// γ|τ| without 0-decorations, (1−γ)|τ|₀ + γ|τ| otherwise.
double tree_weight(const Tree& t, double gamma);

/// Letters with per-letter exponents γ_a > 0. Exponents ≥ 1 are accepted:
/// 0-decorated trees land there and are then excluded from the
/// admissibility scan.
class WeightedAlphabet {
 public:
  WeightedAlphabet() = default;
  explicit WeightedAlphabet(std::map<Tree, double> gamma);
  /// γ_τ = tree_weight(τ, γ) for each tree.
  static WeightedAlphabet from_trees(const std::vector<Tree>& trees, double gamma);

  const std::map<Tree, double>& gammas() const noexcept { return gamma_; }
  double gamma(const Tree& a) const;
  double gamma_hat() const noexcept { return gamma_hat_; }
  bool contains(const Tree& a) const { return gamma_.count(a) != 0; }
  std::vector<Tree> letters() const;

 private:
  std::map<Tree, double> gamma_;
  double gamma_hat_ = 0;
};

/// ω(v) = (1/γ̂) Σ_a n_a(v) γ_a. Throws std::invalid_argument on unknown letters.
double weight(const Word& v, const WeightedAlphabet& alphabet);

/// True iff no combination Σ n_a γ_a (n_a ≥ 0, not all zero, ω ≤ n_omega)
/// over letters with γ_a < 1 equals 1 within `tol`.
bool lv_admissible(const WeightedAlphabet& alphabet, double n_omega, double tol = 1e-12);

/// Dense index of all words over an ordered alphabet with total node count
/// ≤ N, with split (deconcatenation) and shuffle structure tables.
class WordBasis {
 public:
  WordBasis(std::vector<Tree> letters, std::size_t max_size);

  std::size_t max_size() const noexcept { return max_size_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<Tree>& letters() const noexcept { return letters_; }
  const Word& word(std::size_t i) const { return words_.at(i); }
  const std::vector<Word>& words() const noexcept { return words_; }
  std::optional<std::size_t> find(const Word& w) const;
  std::size_t index(const Word& w) const;
  /// Index of the one-letter word.
  std::size_t letter_index(const Tree& a) const { return index(Word{a}); }

  /// Pairs (prefix, suffix) with prefix·suffix = word i, prefix first.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& splits(std::size_t i) const {
    return splits_.at(i);
  }

  struct ShuffleEntry {
    std::uint32_t u;
    std::uint32_t v;
    std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
  };
  /// u ⧢ v for all nonempty u ≤ v with |u| + |v| ≤ N (built on first use).
  const std::vector<ShuffleEntry>& shuffle_table() const;

  std::vector<std::pair<std::uint32_t, Rational>> coordinates(const WordComb& x) const;

 private:
  std::vector<Tree> letters_;
  std::size_t max_size_;
  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> splits_;
  mutable std::shared_ptr<const std::vector<ShuffleEntry>> shuffle_;
};

using WordBasisPtr = std::shared_ptr<const WordBasis>;
WordBasisPtr make_word_basis(std::vector<Tree> letters, std::size_t max_size);

/// Dense element of the truncated completed tensor algebra: a linear
/// functional on words (a character when shuffle-multiplicative).
template <class S>
class WordSeries {
 public:
  /// ε* (the unit).
  explicit WordSeries(WordBasisPtr basis);
  WordSeries(WordBasisPtr basis, std::vector<S> values);
  static WordSeries zero(WordBasisPtr basis);

  const WordBasis& basis() const noexcept { return *basis_; }
  const WordBasisPtr& basis_ptr() const noexcept { return basis_; }
  const S& operator[](std::size_t i) const { return values_[i]; }
  S& operator[](std::size_t i) { return values_[i]; }
  const std::vector<S>& values() const noexcept { return values_; }
  S value(const Word& w) const { return values_[basis_->index(w)]; }
  /// ⟨X, x⟩ for a word combination inside the basis.
  S pair(const WordComb& x) const;

 private:
  WordBasisPtr basis_;
  std::vector<S> values_;
};

/// (X ∗ Y)(w) = Σ X(prefix) Y(suffix); concatenation product of series.
template <class S>
WordSeries<S> concat_product(const WordSeries<S>& x, const WordSeries<S>& y);
template <class S>
WordSeries<S> series_exp(const WordSeries<S>& x);
template <class S>
WordSeries<S> series_log(const WordSeries<S>& x);
/// max |X(u ⧢ v) − X(u)X(v)| over the shuffle table, with |X(ε) − 1|.
template <class S>
double shuffle_defect(const WordSeries<S>& x);
template <class S>
double max_abs_difference(const WordSeries<S>& a, const WordSeries<S>& b);

extern template class WordSeries<double>;
extern template class WordSeries<Rational>;

}  // namespace roughren
