#pragma once

#include "roughren/forest_hopf.hpp"
#include "roughren/word_hopf.hpp"

namespace roughren {

/// Hairer–Kelly map. On a tree, ψ(τ) = Σ τ'·ψ(τ'') over the terms τ'⊗τ'' of
/// Δτ with τ' ≠ 𝟏: the root part becomes the first letter. Forests map to the
/// shuffle of their trees' images, ψ(𝟏) = ε. Memoised per thread.
WordComb psi(const Tree& t);
WordComb psi(const Forest& f);
WordComb psi(const ForestComb& x);

/// ψ(τ) minus the one-letter word τ; all letters are smaller than τ.
WordComb psi_lower(const Tree& t);

/// Arborification: same recursion restricted to root parts that are single
/// nodes, so every letter of the output is some •ᵢ.
WordComb arborify(const Tree& t);
WordComb arborify(const Forest& f);
WordComb arborify(const ForestComb& x);

}  // namespace roughren
