#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roughren/character.hpp"
#include "roughren/check_report.hpp"
#include "roughren/renorm.hpp"
#include "roughren/word_hopf.hpp"

namespace roughren {

/// Dyadic grid {k / 2^depth : 0 ≤ k ≤ 2^depth} on [0, 1] with pairs s ≤ t
/// stored in row-major order.
class Grid {
 public:
  explicit Grid(int depth);

  int depth() const noexcept { return depth_; }
  std::size_t points() const noexcept { return points_; }
  std::size_t cells() const noexcept { return points_ - 1; }
  std::size_t pair_count() const noexcept { return points_ * (points_ + 1) / 2; }
  std::size_t pair_index(std::size_t s, std::size_t t) const;
  Rational time_exact(std::size_t k) const;
  double time(std::size_t k) const;

  friend bool operator==(const Grid& a, const Grid& b) { return a.depth_ == b.depth_; }

 private:
  int depth_;
  std::size_t points_;
};

/// Driver components x⁰..x^d: either global polynomials with rational
/// coefficients or piecewise-linear interpolants of grid samples.
class DriverPath {
 public:
  enum class Kind { polynomial, piecewise_linear };

  /// coefficients[i][k] is the tᵏ coefficient of component i.
  static DriverPath polynomial(std::vector<std::vector<Rational>> coefficients);
  /// samples[i][k] is component i at grid point k.
  static DriverPath piecewise_linear(int depth, std::vector<std::vector<double>> samples);

  /// x⁰ = t, xⁱ = t^{i+1} − t/(i+1) for i ≥ 1.
  static DriverPath polynomial_suite(int d);
  /// x⁰ = t; the other components are seeded Gaussian random walks with
  /// step variance equal to the cell length.
  static DriverPath random_walk(int d, int depth, std::uint64_t seed);
  static DriverPath constant(int d);

  Kind kind() const noexcept { return kind_; }
  /// Largest decoration d.
  int dimension() const noexcept { return static_cast<int>(components()) - 1; }
  std::size_t components() const noexcept;
  int sample_depth() const noexcept { return depth_; }
  const std::vector<std::vector<Rational>>& coefficients() const noexcept { return poly_; }
  const std::vector<std::vector<double>>& samples() const noexcept { return samples_; }

  Rational value_exact(int i, const Rational& t) const;
  double value(int i, double t) const;

 private:
  Kind kind_ = Kind::polynomial;
  int depth_ = 0;
  std::vector<std::vector<Rational>> poly_;
  std::vector<std::vector<double>> samples_;
};

/// Branched rough path on a dyadic grid: one character per pair s ≤ t.
template <class S>
class BranchedRP {
 public:
  BranchedRP(Grid grid, double gamma, ForestBasisPtr basis, std::vector<Character<S>> values);

  const Grid& grid() const noexcept { return grid_; }
  double gamma() const noexcept { return gamma_; }
  int truncation() const noexcept { return basis_->truncation(); }
  const ForestBasis& basis() const noexcept { return *basis_; }
  const ForestBasisPtr& basis_ptr() const noexcept { return basis_; }
  /// X_st for s ≤ t; for s > t the antipode inverse of X_ts.
  Character<S> at(std::size_t s, std::size_t t) const;
  const Character<S>& stored(std::size_t s, std::size_t t) const {
    return values_[grid_.pair_index(s, t)];
  }
  const std::vector<Character<S>>& values() const noexcept { return values_; }
  /// Copy with one (pair, forest) entry replaced.
  BranchedRP with_entry(std::size_t s, std::size_t t, std::size_t forest, S value) const;

 private:
  Grid grid_;
  double gamma_;
  ForestBasisPtr basis_;
  std::vector<Character<S>> values_;
};

/// Word-indexed rough path on a dyadic grid.
template <class S>
class AnisotropicRP {
 public:
  AnisotropicRP(Grid grid, WeightedAlphabet alphabet, WordBasisPtr basis,
                std::vector<WordSeries<S>> values);

  const Grid& grid() const noexcept { return grid_; }
  const WeightedAlphabet& alphabet() const noexcept { return alphabet_; }
  const WordBasis& basis() const noexcept { return *basis_; }
  const WordBasisPtr& basis_ptr() const noexcept { return basis_; }
  const WordSeries<S>& at(std::size_t s, std::size_t t) const {
    return values_[grid_.pair_index(s, t)];
  }
  const std::vector<WordSeries<S>>& values() const noexcept { return values_; }
  AnisotropicRP with_entry(std::size_t s, std::size_t t, std::size_t word, S value) const;

 private:
  Grid grid_;
  WeightedAlphabet alphabet_;
  WordBasisPtr basis_;
  std::vector<WordSeries<S>> values_;
};

/// Iterated-integral character over [a, b], computed in one piece from the
/// driver on that interval: ⟨X_ab, B⁺ᵢ(τ₁⋯τ_k)⟩ = ∫_a^b Πⱼ⟨X_ub, τⱼ⟩ dxⁱ_u.
/// Piecewise-linear drivers need [a, b] inside one grid cell.
template <class S>
Character<S> lift_interval(const DriverPath& x, const ForestBasisPtr& basis, const Rational& a,
                           const Rational& b);

/// Cell lifts chained by convolution to every grid pair. Exact mode needs a
/// polynomial or piecewise-linear driver; float mode accepts both.
template <class S>
BranchedRP<S> canonical_lift(const DriverPath& x, int truncation, double gamma, int depth);

enum class ChenSweep {
  /// Every triple s ≤ u ≤ t on trees, plus per-pair multiplicativity.
  full,
  /// X_st = X_{s,t−1} ⋆ X_{t−1,t} on every pair, plus multiplicativity;
  /// equivalent to the full sweep by associativity.
  adjacent,
};

template <class S>
CheckReport check_chen(const BranchedRP<S>& x, double tol, ChenSweep sweep = ChenSweep::full);
template <class S>
CheckReport check_chen(const AnisotropicRP<S>& x, double tol, ChenSweep sweep = ChenSweep::full);
/// Multiplicativity (branched) resp. shuffle-character property (words) per pair.
template <class S>
CheckReport check_characters(const BranchedRP<S>& x, double tol);
template <class S>
CheckReport check_characters(const AnisotropicRP<S>& x, double tol);

struct HolderRow {
  std::string label;
  double exponent;
  double sup_quotient;
};

/// sup over pairs s < t of |⟨X_st, τ⟩| / |t − s|^{tree_weight(τ, γ)}.
template <class S>
std::vector<HolderRow> holder_report(const BranchedRP<S>& x);
/// Word version with exponent γ̂·ω(v).
template <class S>
std::vector<HolderRow> holder_report(const AnisotropicRP<S>& x);

/// ⟨X̂_st, f⟩ = ⟨X_st, Mf⟩. With `verify`, M must pass the cointeraction and
/// analytic checks first (std::invalid_argument otherwise).
template <class S>
BranchedRP<S> apply_renorm(const RenormMatrix& m, const BranchedRP<S>& x, bool verify = true);

/// max over pairs and forests of |a − b|.
template <class S>
double max_abs_difference(const BranchedRP<S>& a, const BranchedRP<S>& b);

}  // namespace roughren
