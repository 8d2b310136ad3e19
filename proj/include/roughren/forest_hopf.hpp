#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <utility>

#include "roughren/check_report.hpp"
#include "roughren/lincomb.hpp"
#include "roughren/tree.hpp"

namespace roughren {

using ForestComb = LinComb<Forest>;
using TensorComb = LinComb<std::pair<Forest, Forest>>;
using Tensor3Comb = LinComb<std::tuple<Forest, Forest, Forest>>;

ForestComb unit_comb();
ForestComb as_comb(const Tree& t);

ForestComb forest_product(const ForestComb& a, const ForestComb& b);
/// Slotwise forest product (a ⊗ b)(c ⊗ d) = ac ⊗ bd.
TensorComb tensor_product(const TensorComb& a, const TensorComb& b);

/// Butcher–Connes–Kreimer coproduct, root part in the LEFT slot:
/// Δτ = 𝟏⊗τ + (B^i_+ ⊗ id)Δ(τ₁⋯τₙ), multiplicative on forests.
TensorComb coproduct_ck(const Tree& t);
TensorComb coproduct_ck(const Forest& f);
TensorComb coproduct_ck(const ForestComb& x);

/// Antipode from the grading recursion m(𝒜 ⊗ id)Δ = 𝟏*(·)𝟏.
ForestComb antipode(const Forest& f);
ForestComb antipode(const ForestComb& x);

/// Extraction/contraction coproduct Δ⁻: sum over all collections of
/// node-disjoint subtrees (connected node sets, singletons allowed). The
/// extracted forest sits LEFT, the tree with each extracted subtree contracted
/// to one 0-decorated node sits RIGHT.
TensorComb coproduct_extraction(const Tree& t);
TensorComb coproduct_extraction(const Forest& f);
TensorComb coproduct_extraction(const ForestComb& x);

using ExtractionCoproduct = std::function<TensorComb(const Forest&)>;

/// Checks M^{(13)(2)(4)}(Δ⁻ ⊗ Δ⁻)Δ = (id ⊗ Δ)Δ⁻ exactly on every tree with
/// |τ| ≤ n_max over decorations {0..d}. `extraction` can be swapped for a
/// corrupted variant in mutation tests.
CheckReport check_cointeract_13_2_4(int n_max, int d, const ExtractionCoproduct& extraction = {});

std::string to_string(const ForestComb& x);
std::string to_string(const TensorComb& x);
std::string to_string(const Tensor3Comb& x);

}  // namespace roughren
