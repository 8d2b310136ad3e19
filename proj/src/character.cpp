#include "roughren/character.hpp"

#include <algorithm>
#include <stdexcept>

namespace roughren {

ForestBasis::ForestBasis(int truncation, int d) : truncation_(truncation), d_(d) {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  if (d < 0) throw std::invalid_argument("decoration bound must be >= 0");
  forests_ = enumerate_forests(truncation, d);
  for (std::size_t i = 0; i < forests_.size(); ++i) {
    index_.emplace(forests_[i], i);
    if (forests_[i].is_tree()) tree_indices_.push_back(i);
  }
  factors_.resize(forests_.size());
  coproduct_.resize(forests_.size());
  antipode_.resize(forests_.size());
  for (std::size_t i = 0; i < forests_.size(); ++i) {
    const Forest& f = forests_[i];
    for (const auto& t : f.trees()) factors_[i].push_back(static_cast<std::uint32_t>(index(t)));
    for (const auto& [k, c] : coproduct_ck(f)) {
      if (!c.get_den().fits_slong_p() || c.get_den() != 1)
        throw std::logic_error("non-integral coproduct coefficient");
      coproduct_[i].push_back({static_cast<std::uint32_t>(index(k.first)),
                               static_cast<std::uint32_t>(index(k.second)), c.get_num().get_si()});
    }
    for (const auto& [g, c] : ::roughren::antipode(f))
      antipode_[i].emplace_back(static_cast<std::uint32_t>(index(g)), c.get_num().get_si());
  }
}

std::optional<std::size_t> ForestBasis::find(const Forest& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ForestBasis::index(const Forest& f) const {
  auto it = index_.find(f);
  if (it == index_.end())
    throw std::out_of_range("forest {" + encode(f) + "} outside basis of truncation " +
                            std::to_string(truncation_));
  return it->second;
}

std::vector<Tree> ForestBasis::trees() const {
  std::vector<Tree> out;
  out.reserve(tree_indices_.size());
  for (auto i : tree_indices_) out.push_back(forests_[i].as_tree());
  return out;
}

std::vector<std::pair<std::uint32_t, Rational>> ForestBasis::coordinates(
    const ForestComb& x) const {
  std::vector<std::pair<std::uint32_t, Rational>> out;
  out.reserve(x.size());
  for (const auto& [f, c] : x) out.emplace_back(static_cast<std::uint32_t>(index(f)), c);
  return out;
}

ForestBasisPtr make_forest_basis(int truncation, int d) {
  return std::make_shared<const ForestBasis>(truncation, d);
}

template <class S>
Character<S>::Character(ForestBasisPtr basis) : basis_(std::move(basis)) {
  values_.assign(basis_->size(), S(0));
  values_[0] = S(1);
}

template <class S>
Character<S>::Character(ForestBasisPtr basis, std::vector<S> values)
    : basis_(std::move(basis)), values_(std::move(values)) {
  if (values_.size() != basis_->size())
    throw std::invalid_argument("character value count does not match its basis");
}

template <class S>
Character<S> Character<S>::from_tree_values(ForestBasisPtr basis,
                                            const std::function<S(const Tree&)>& tree_value) {
  std::vector<S> values(basis->size(), S(1));
  for (auto i : basis->tree_indices()) values[i] = tree_value(basis->forest(i).as_tree());
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto& fac = basis->factors(i);
    if (fac.size() < 2) continue;
    S v(1);
    for (auto t : fac) v *= values[t];
    values[i] = v;
  }
  return Character(std::move(basis), std::move(values));
}

template <class S>
S Character<S>::pair(const ForestComb& x) const {
  S acc(0);
  for (const auto& [f, c] : x) {
    S term = from_rational<S>(c);
    term *= values_[basis_->index(f)];
    acc += term;
  }
  return acc;
}

template <class S>
Character<S> Character<S>::with_value(std::size_t i, S v) const {
  Character out = *this;
  out.values_.at(i) = std::move(v);
  return out;
}

template <class S>
Character<S> convolve(const Character<S>& x, const Character<S>& y) {
  if (x.truncation() != y.truncation() ||
      x.basis().alphabet_bound() != y.basis().alphabet_bound())
    throw std::invalid_argument("convolution of characters with different truncations");
  const ForestBasis& basis = x.basis();
  std::vector<S> out(basis.size());
  S term;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    S acc(0);
    for (const auto& t : basis.coproduct(i)) {
      term = x[t.left];
      term *= y[t.right];
      if (t.coef != 1) term *= static_cast<long>(t.coef);
      acc += term;
    }
    out[i] = std::move(acc);
  }
  return Character<S>(x.basis_ptr(), std::move(out));
}

template <class S>
Character<S> inverse(const Character<S>& x) {
  const ForestBasis& basis = x.basis();
  std::vector<S> out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    S acc(0);
    for (const auto& [j, c] : basis.antipode(i)) {
      S term = x[j];
      term *= static_cast<long>(c);
      acc += term;
    }
    out[i] = std::move(acc);
  }
  return Character<S>(x.basis_ptr(), std::move(out));
}

template <class S>
double multiplicativity_defect(const Character<S>& x) {
  const ForestBasis& basis = x.basis();
  S one_diff = x[0] - S(1);
  double worst = magnitude(one_diff);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& fac = basis.factors(i);
    if (fac.size() < 2) continue;
    S prod(1);
    for (auto t : fac) prod *= x[t];
    S diff = x[i] - prod;
    worst = std::max(worst, magnitude(diff));
  }
  return worst;
}

template <class S>
double max_abs_difference(const Character<S>& a, const Character<S>& b) {
  if (a.values().size() != b.values().size())
    throw std::invalid_argument("characters over different bases");
  double worst = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    S diff = a[i] - b[i];
    worst = std::max(worst, magnitude(diff));
  }
  return worst;
}

template class Character<double>;
template class Character<Rational>;
template Character<double> convolve(const Character<double>&, const Character<double>&);
template Character<Rational> convolve(const Character<Rational>&, const Character<Rational>&);
template Character<double> inverse(const Character<double>&);
template Character<Rational> inverse(const Character<Rational>&);
template double multiplicativity_defect(const Character<double>&);
template double multiplicativity_defect(const Character<Rational>&);
template double max_abs_difference(const Character<double>&, const Character<double>&);
template double max_abs_difference(const Character<Rational>&, const Character<Rational>&);

}  // namespace roughren
