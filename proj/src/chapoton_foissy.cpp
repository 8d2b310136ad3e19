#include "roughren/chapoton_foissy.hpp"

#include <functional>
#include <stdexcept>

namespace roughren {

namespace {

using Dense = std::vector<Rational>;

Dense dense_of(const ForestBasis& basis, const DualComb& x) {
  Dense out(basis.size());
  for (const auto& [i, c] : basis.coordinates(x)) out[i] = c;
  return out;
}

DualComb comb_of(const ForestBasis& basis, const Dense& x) {
  DualComb out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) out.add(basis.forest(i), x[i]);
  return out;
}

Dense star_dense(const ForestBasis& basis, const Dense& a, const Dense& b) {
  Dense out(basis.size());
  Rational term;
  for (std::size_t h = 0; h < basis.size(); ++h)
    for (const auto& c : basis.coproduct(h)) {
      if (is_zero(a[c.left]) || is_zero(b[c.right])) continue;
      term = a[c.left] * b[c.right];
      if (c.coef != 1) term *= static_cast<long>(c.coef);
      out[h] += term;
    }
  return out;
}

/// Row-echelon accumulator over a fixed coordinate subset.
class Echelon {
 public:
  explicit Echelon(std::vector<std::size_t> coords) : coords_(std::move(coords)) {}

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dimension() const noexcept { return coords_.size(); }

  /// Adds v when it is independent of the rows so far.
  bool add(const Dense& v) {
    std::vector<Rational> r(coords_.size());
    for (std::size_t k = 0; k < coords_.size(); ++k) r[k] = v[coords_[k]];
    for (std::size_t j = 0; j < rows_.size(); ++j) {
      const Rational f = r[pivots_[j]];
      if (is_zero(f)) continue;
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= f * rows_[j][k];
    }
    std::size_t p = 0;
    while (p < r.size() && is_zero(r[p])) ++p;
    if (p == r.size()) return false;
    const Rational lead = r[p];
    for (auto& x : r) x /= lead;
    // Keep the stored rows reduced in the new pivot column.
    for (auto& row : rows_) {
      const Rational f = row[p];
      if (is_zero(f)) continue;
      for (std::size_t k = 0; k < r.size(); ++k) row[k] -= f * r[k];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::vector<std::size_t> coords_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Gauss–Jordan inverse of a square matrix; empty result when singular.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c])) ++p;
    if (p == n) return {};
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rational lead = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= lead;
      inv[c][k] /= lead;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace

DualComb star_product(const ForestBasis& basis, const DualComb& a, const DualComb& b) {
  return comb_of(basis, star_dense(basis, dense_of(basis, a), dense_of(basis, b)));
}

GeneratorBasisPtr GeneratorBasis::compute(int truncation, int d) {
  std::shared_ptr<GeneratorBasis> out(new GeneratorBasis());
  out->forests_ = make_forest_basis(truncation, d);
  const ForestBasis& fb = *out->forests_;
  const std::size_t nf = fb.size();
  CheckReport& audit = out->audit_;

  std::vector<std::vector<std::size_t>> by_degree(static_cast<std::size_t>(truncation) + 1);
  for (std::size_t i = 0; i < nf; ++i) by_degree[fb.forest(i).size()].push_back(i);

  std::vector<Dense> gen_dense;
  std::vector<std::size_t> gen_degree;
  for (int n = 1; n <= truncation; ++n) {
    const auto& coords = by_degree[static_cast<std::size_t>(n)];
    Echelon ech(coords);
    // Products of at least two earlier generators with total degree n.
    std::size_t products = 0;
    std::function<void(const Dense&, std::size_t, int)> grow = [&](const Dense& acc, std::size_t len,
                                                                   int left) {
      if (left == 0) {
        if (len < 2) return;
        ++products;
        if (!ech.add(acc)) {
          out->flagged_ = true;
          audit.fail("degree " + std::to_string(n) + ": generator monomials are dependent");
        }
        return;
      }
      for (std::size_t g = 0; g < gen_dense.size(); ++g)
        if (static_cast<int>(gen_degree[g]) <= left)
          grow(len == 0 ? gen_dense[g] : star_dense(fb, acc, gen_dense[g]), len + 1,
               left - static_cast<int>(gen_degree[g]));
    };
    grow(Dense{}, 0, n);

    std::vector<Tree> unused;
    for (auto i : coords) {
      if (ech.rank() == ech.dimension()) break;
      if (fb.forest(i).tree_count() != 1) continue;
      Dense unit(nf);
      unit[i] = 1;
      const Tree& t = fb.forest(i).as_tree();
      if (ech.add(unit)) {
        out->generators_.push_back({t, DualComb{fb.forest(i)}, true});
        gen_dense.push_back(std::move(unit));
        gen_degree.push_back(static_cast<std::size_t>(n));
      } else {
        unused.push_back(t);
      }
    }
    for (auto i : coords) {
      if (ech.rank() == ech.dimension()) break;
      if (fb.forest(i).tree_count() == 1) continue;
      Dense unit(nf);
      unit[i] = 1;
      if (!ech.add(unit)) continue;
      out->flagged_ = true;
      audit.notes.push_back("degree " + std::to_string(n) + ": fell back to dual of {" +
                            encode(fb.forest(i)) + "}");
      if (unused.empty())
        throw std::runtime_error("no spare tree label for a fallback generator in degree " +
                                 std::to_string(n));
      out->generators_.push_back({unused.back(), DualComb{fb.forest(i)}, false});
      unused.pop_back();
      gen_dense.push_back(std::move(unit));
      gen_degree.push_back(static_cast<std::size_t>(n));
    }
    std::size_t gens_here = 0;
    for (auto deg : gen_degree) gens_here += deg == static_cast<std::size_t>(n);
    if (products + gens_here != coords.size())
      audit.fail("degree " + std::to_string(n) + ": " + std::to_string(products + gens_here) +
                 " monomials for " + std::to_string(coords.size()) + " forests");
    audit.notes.push_back("degree " + std::to_string(n) + ": " + std::to_string(coords.size()) +
                          " forests, " + std::to_string(gens_here) + " generators, " +
                          std::to_string(products) + " longer monomials");
  }

  std::vector<Tree> labels;
  for (const auto& g : out->generators_) labels.push_back(g.label);
  out->words_ = make_word_basis(labels, static_cast<std::size_t>(truncation));
  const WordBasis& wb = *out->words_;
  const std::size_t nw = wb.size();
  if (nw != nf) {
    audit.fail(std::to_string(nw) + " words for " + std::to_string(nf) + " forests");
    return out;
  }
  std::map<Tree, std::size_t> gen_of;
  for (std::size_t g = 0; g < out->generators_.size(); ++g) gen_of.emplace(out->generators_[g].label, g);

  std::vector<Dense> mono(nw);
  mono[0].assign(nf, Rational(0));
  mono[0][0] = 1;
  for (std::size_t w = 1; w < nw; ++w) {
    const Word& word = wb.word(w);
    const Word prefix(word.begin(), word.end() - 1);
    mono[w] = star_dense(fb, mono[wb.index(prefix)], gen_dense[gen_of.at(word.back())]);
  }
  out->forward_.assign(nf * nw, Rational(0));
  for (std::size_t w = 0; w < nw; ++w)
    for (std::size_t f = 0; f < nf; ++f) out->forward_[f * nw + w] = mono[w][f];

  out->inverse_.assign(nw * nf, Rational(0));
  for (int n = 0; n <= truncation; ++n) {
    const auto& fs = by_degree[static_cast<std::size_t>(n)];
    std::vector<std::size_t> ws;
    for (std::size_t w = 0; w < nw; ++w)
      if (word_size(wb.word(w)) == static_cast<std::size_t>(n)) ws.push_back(w);
    if (ws.size() != fs.size()) {
      audit.fail("degree " + std::to_string(n) + ": block is not square");
      continue;
    }
    std::vector<std::vector<Rational>> block(fs.size(), std::vector<Rational>(ws.size()));
    for (std::size_t r = 0; r < fs.size(); ++r)
      for (std::size_t c = 0; c < ws.size(); ++c) block[r][c] = out->forward_[fs[r] * nw + ws[c]];
    const auto inv = invert(block);
    if (inv.empty()) {
      audit.fail("degree " + std::to_string(n) + ": change of basis is singular");
      continue;
    }
    for (std::size_t c = 0; c < ws.size(); ++c)
      for (std::size_t r = 0; r < fs.size(); ++r) out->inverse_[ws[c] * nf + fs[r]] = inv[c][r];
  }

  // Both products must be the identity.
  for (std::size_t i = 0; i < nf && audit.passed; ++i)
    for (std::size_t j = 0; j < nf; ++j) {
      Rational a = 0, b = 0;
      for (std::size_t k = 0; k < nw; ++k) a += out->forward_[i * nw + k] * out->inverse_[k * nf + j];
      for (std::size_t k = 0; k < nf; ++k) b += out->inverse_[i * nf + k] * out->forward_[k * nw + j];
      ++audit.checked;
      if (a != (i == j ? 1 : 0) || b != (i == j ? 1 : 0)) {
        audit.fail("change of basis not inverse at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        break;
      }
    }
  return out;
}

DualComb GeneratorBasis::monomial(std::size_t word) const {
  DualComb out;
  for (std::size_t f = 0; f < forests_->size(); ++f)
    if (!is_zero(forward(f, word))) out.add(forests_->forest(f), forward(f, word));
  return out;
}

const DualComb& GeneratorBasis::generator_dual(const Tree& label) const {
  for (const auto& g : generators_)
    if (g.label == label) return g.dual;
  throw std::invalid_argument("no generator labelled " + encode(label));
}

WordComb GeneratorBasis::psi_iso(const DualComb& x) const {
  const Dense v = dense_of(*forests_, x);
  WordComb out;
  for (std::size_t w = 0; w < words_->size(); ++w) {
    Rational c = 0;
    for (std::size_t f = 0; f < v.size(); ++f)
      if (!is_zero(v[f])) c += inverse(w, f) * v[f];
    if (!is_zero(c)) out.add(words_->word(w), c);
  }
  return out;
}

namespace {

template <class S>
std::vector<std::vector<std::pair<std::uint32_t, S>>> sparse_inverse(const GeneratorBasis& b) {
  std::vector<std::vector<std::pair<std::uint32_t, S>>> rows(b.words().size());
  for (std::size_t w = 0; w < rows.size(); ++w)
    for (std::size_t f = 0; f < b.forests().size(); ++f)
      if (!is_zero(b.inverse(w, f)))
        rows[w].emplace_back(static_cast<std::uint32_t>(f), from_rational<S>(b.inverse(w, f)));
  return rows;
}

template <class S>
WordSeries<S> psi_series(const GeneratorBasis& b,
                         const std::vector<std::vector<std::pair<std::uint32_t, S>>>& rows,
                         const Character<S>& c) {
  std::vector<S> values(rows.size(), S(0));
  S term;
  for (std::size_t w = 0; w < rows.size(); ++w)
    for (const auto& [f, k] : rows[w]) {
      term = c[f];
      term *= k;
      values[w] += term;
    }
  return WordSeries<S>(b.word_basis_ptr(), std::move(values));
}

void require_match(const GeneratorBasis& b, const ForestBasis& fb) {
  if (b.forests().size() != fb.size() || b.forests().truncation() != fb.truncation() ||
      b.forests().alphabet_bound() != fb.alphabet_bound())
    throw std::invalid_argument("generator basis does not match the path truncation");
}

}  // namespace

template <class S>
AnisotropicRP<S> iso_psi(const GeneratorBasisPtr& basis, const BranchedRP<S>& x) {
  require_match(*basis, x.basis());
  const auto rows = sparse_inverse<S>(*basis);
  std::vector<WordSeries<S>> values;
  values.reserve(x.values().size());
  for (const auto& c : x.values()) values.push_back(psi_series(*basis, rows, c));
  std::vector<Tree> labels;
  for (const auto& g : basis->generators()) labels.push_back(g.label);
  return AnisotropicRP<S>(x.grid(), WeightedAlphabet::from_trees(labels, x.gamma()),
                          basis->word_basis_ptr(), std::move(values));
}

template <class S>
BranchedRP<S> iso_psi_inverse(const GeneratorBasisPtr& basis, const AnisotropicRP<S>& xt,
                              double gamma) {
  const std::size_t nf = basis->forests().size(), nw = basis->words().size();
  std::vector<Character<S>> values;
  values.reserve(xt.values().size());
  S term;
  for (const auto& w : xt.values()) {
    std::vector<S> v(nf, S(0));
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t k = 0; k < nw; ++k)
        if (!is_zero(basis->forward(f, k))) {
          term = w[k];
          term *= from_rational<S>(basis->forward(f, k));
          v[f] += term;
        }
    values.emplace_back(basis->forest_basis_ptr(), std::move(v));
  }
  return BranchedRP<S>(xt.grid(), gamma, basis->forest_basis_ptr(), std::move(values));
}

TildeMap::TildeMap(GeneratorBasisPtr basis, const RenormMatrix& m) : basis_(std::move(basis)) {
  const ForestBasis& fb = basis_->forests();
  if (m.basis().size() != fb.size())
    throw std::invalid_argument("renormalisation matrix does not match the generator basis");
  for (const auto& g : basis_->generators()) {
    const Dense gd = dense_of(fb, g.dual);
    // ⟨M*g, f⟩ = ⟨g, Mf⟩.
    Dense img(fb.size());
    for (std::size_t f = 0; f < fb.size(); ++f)
      for (const auto& [row, c] : m.column(f))
        if (!is_zero(gd[row])) img[f] += gd[row] * c;
    images_.emplace(g.label, basis_->psi_iso(comb_of(fb, img)));
  }
  build_word_images();
}

void TildeMap::build_word_images() {
  const WordBasis& wb = basis_->words();
  word_images_.assign(wb.size(), {});
  for (std::size_t w = 0; w < wb.size(); ++w) word_images_[w] = wb.coordinates(apply(wb.word(w)));
}

const WordComb& TildeMap::letter_image(const Tree& label) const {
  auto it = images_.find(label);
  if (it == images_.end()) throw std::invalid_argument("no generator labelled " + encode(label));
  return it->second;
}

TildeMap TildeMap::with_letter_image(const Tree& label, WordComb image) const {
  TildeMap out = *this;
  letter_image(label);
  out.images_[label] = std::move(image);
  out.build_word_images();
  return out;
}

WordComb TildeMap::apply(const Word& w) const {
  const std::size_t n = basis_->words().max_size();
  WordComb acc{Word{}};
  for (const auto& a : w) acc = truncate(concat(acc, letter_image(a)), n);
  return acc;
}

template <class S>
WordSeries<S> TildeMap::apply(const WordSeries<S>& x) const {
  std::vector<S> out(x.values().size(), S(0));
  S term;
  for (std::size_t w = 0; w < word_images_.size(); ++w) {
    if (is_zero(x[w])) continue;
    for (const auto& [v, c] : word_images_[w]) {
      term = x[w];
      term *= from_rational<S>(c);
      out[v] += term;
    }
  }
  return WordSeries<S>(x.basis_ptr(), std::move(out));
}

template <class S>
CheckReport check_commute_iso(const GeneratorBasisPtr& basis, const RenormMatrix& m,
                              const TildeMap& tilde, const BranchedRP<S>& x, double tol) {
  CheckReport report("Ψ(M*X) = M̃*Ψ(X)");
  const auto lhs = iso_psi(basis, apply_renorm(m, x, false));
  const auto xt = iso_psi(basis, x);
  const Grid& g = x.grid();
  const WordBasis& wb = basis->words();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t) {
      const auto rhs = tilde.apply(xt.at(s, t));
      const auto& l = lhs.at(s, t);
      for (std::size_t w = 0; w < wb.size(); ++w) {
        ++report.checked;
        S diff = l[w] - rhs[w];
        report.max_defect = std::max(report.max_defect, magnitude(diff));
        if (exceeds(diff, tol))
          report.fail("pair (" + std::to_string(s) + "," + std::to_string(t) + "), word (" +
                      encode(wb.word(w)) + "): defect " + to_string(diff));
      }
    }
  return report;
}

#define ROUGHREN_INSTANTIATE(S)                                                                 \
  template AnisotropicRP<S> iso_psi(const GeneratorBasisPtr&, const BranchedRP<S>&);            \
  template BranchedRP<S> iso_psi_inverse(const GeneratorBasisPtr&, const AnisotropicRP<S>&,      \
                                         double);                                                \
  template WordSeries<S> TildeMap::apply(const WordSeries<S>&) const;                            \
  template CheckReport check_commute_iso(const GeneratorBasisPtr&, const RenormMatrix&,          \
                                         const TildeMap&, const BranchedRP<S>&, double);

ROUGHREN_INSTANTIATE(double)
ROUGHREN_INSTANTIATE(Rational)

#undef ROUGHREN_INSTANTIATE

}  // namespace roughren
