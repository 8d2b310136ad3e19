#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "roughren/branched_rp.hpp"

namespace roughren {

/// Sampled real functions g^τ on the grid with g^τ(0) = 0; absent trees are 0.
template <class S>
class GFamily {
 public:
  GFamily(Grid grid, std::map<Tree, std::vector<S>> paths);

  static GFamily zero(Grid grid) { return GFamily(grid, {}); }
  /// Independent Gaussian walks with step standard deviation
  /// scale·(cell length)^{1/2}, rounded to dyadic rationals in exact mode.
  static GFamily random(Grid grid, const std::vector<Tree>& trees, std::uint64_t seed, double scale);

  const Grid& grid() const noexcept { return grid_; }
  const std::map<Tree, std::vector<S>>& paths() const noexcept { return paths_; }
  S value(const Tree& t, std::size_t k) const;
  S increment(const Tree& t, std::size_t s, std::size_t u) const;

  friend GFamily operator+(const GFamily& a, const GFamily& b) {
    if (!(a.grid_ == b.grid_)) throw std::invalid_argument("g families on different grids");
    auto out = a.paths_;
    for (const auto& [t, p] : b.paths_) {
      auto [it, fresh] = out.emplace(t, p);
      if (!fresh)
        for (std::size_t k = 0; k < p.size(); ++k) it->second[k] += p[k];
    }
    return GFamily(a.grid_, std::move(out));
  }

 private:
  Grid grid_;
  std::map<Tree, std::vector<S>> paths_;
};

/// max over trees and grid points of |a − b|.
template <class S>
double max_abs_difference(const GFamily<S>& a, const GFamily<S>& b);

/// sup |g^τ_t − g^τ_s| / |t − s|^{tree_weight(τ, γ)} per tree.
template <class S>
std::vector<HolderRow> holder_report(const GFamily<S>& g, double gamma);

/// Letters = all trees of size ≤ N with exponents tree_weight(τ, γ).
WeightedAlphabet transfer_alphabet(int truncation, int d, double gamma);

/// Extend `prior` (or nothing) by new letters with prescribed sampled paths.
/// On each grid cell the log of the prior element is kept, new letters get
/// their increments, every other new coordinate of the log is zero; the
/// exponentials are then chained. Output words have total size ≤ max_size.
/// Throws std::invalid_argument on an inadmissible alphabet, a prior with Chen
/// defect above `tol`, or letters that are neither old nor prescribed.
template <class S>
AnisotropicRP<S> lv_extend(const std::map<Tree, std::vector<S>>& prescribed,
                           const AnisotropicRP<S>* prior, const WeightedAlphabet& alphabet,
                           const Grid& grid, std::size_t max_size, double tol);

/// Stagewise transfer X ↦ X̄: stage k adds the trees of size k as letters,
/// driven by ⟨X, τ⟩ − ⟨X̄^{(k−1)}, ψ_{k−1}(τ)⟩. Throws std::domain_error when
/// that remainder is not additive within `tol` (X violates Chen).
template <class S>
AnisotropicRP<S> branched_to_anisotropic(const BranchedRP<S>& x, double tol);

/// ⟨X_st, τ⟩ = ⟨X̄_st, ψ(τ)⟩ for every pair and tree.
template <class S>
CheckReport check_transfer(const BranchedRP<S>& x, const AnisotropicRP<S>& xbar, double tol);

/// gX̄: the stagewise extension over letter paths x^τ + g^τ.
template <class S>
AnisotropicRP<S> g_lift(const GFamily<S>& g, const BranchedRP<S>& x, double tol);
/// ⟨gX_st, τ⟩ = ⟨gX̄_st, ψ(τ)⟩, extended multiplicatively.
template <class S>
BranchedRP<S> g_action(const GFamily<S>& g, const BranchedRP<S>& x, double tol);

/// g with g^τ_t − g^τ_s = ⟨X_st, Mτ⟩ − ⟨X̄_st, τ⟩ − ⟨gX̄_st, ψ_{|τ|−1}(τ)⟩,
/// trees by increasing size. The increments are built on cells; `additivity`
/// (if given) records whether they match the formula on every pair.
template <class S>
GFamily<S> g_from_renorm_recursive(const RenormMatrix& m, const BranchedRP<S>& x, double tol,
                                   CheckReport* additivity = nullptr);

/// g^τ_t − g^τ_s = ⟨(M*X)‾_st, τ⟩ − ⟨X̄_st, τ⟩.
template <class S>
GFamily<S> g_from_renorm_explicit(const RenormMatrix& m, const BranchedRP<S>& x, double tol);

/// Entrywise comparison of two g families.
template <class S>
CheckReport compare_g(const GFamily<S>& a, const GFamily<S>& b, double tol, std::string name);

/// Exploratory: deviation of g^τ_t − g^τ_s from ⟨X̄_st, M̄τ − τ⟩ over all pairs.
/// Reported, never asserted.
template <class S>
CheckReport explore_bar_formula(const RenormMatrix& m, const BranchedRP<S>& x,
                                const GFamily<S>& g, double tol);

}  // namespace roughren
