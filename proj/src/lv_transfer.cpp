#include "roughren/lv_transfer.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "roughren/tree_word_maps.hpp"

namespace roughren {

template <class S>
GFamily<S>::GFamily(Grid grid, std::map<Tree, std::vector<S>> paths)
    : grid_(grid), paths_(std::move(paths)) {
  for (const auto& [t, p] : paths_) {
    if (p.size() != grid_.points())
      throw std::invalid_argument("g path for " + encode(t) + " has the wrong length");
    if (!is_zero(p.front())) throw std::invalid_argument("g path for " + encode(t) + " must start at 0");
  }
}

template <class S>
GFamily<S> GFamily<S>::random(Grid grid, const std::vector<Tree>& trees, std::uint64_t seed,
                              double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, scale * std::sqrt(std::ldexp(1.0, -grid.depth())));
  std::map<Tree, std::vector<S>> paths;
  for (const auto& t : trees) {
    std::vector<S> p(grid.points(), S(0));
    for (std::size_t k = 1; k < p.size(); ++k) {
      // 2^-20 rounding keeps exact-mode denominators small.
      const double inc = std::ldexp(std::round(std::ldexp(step(rng), 20)), -20);
      p[k] = p[k - 1] + S(inc);
    }
    paths.emplace(t, std::move(p));
  }
  return GFamily(grid, std::move(paths));
}

template <class S>
S GFamily<S>::value(const Tree& t, std::size_t k) const {
  auto it = paths_.find(t);
  return it == paths_.end() ? S(0) : it->second.at(k);
}

template <class S>
S GFamily<S>::increment(const Tree& t, std::size_t s, std::size_t u) const {
  auto it = paths_.find(t);
  if (it == paths_.end()) return S(0);
  return it->second.at(u) - it->second.at(s);
}

template <class S>
double max_abs_difference(const GFamily<S>& a, const GFamily<S>& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("g families on different grids");
  double worst = 0;
  std::set<Tree> keys;
  for (const auto& kv : a.paths()) keys.insert(kv.first);
  for (const auto& kv : b.paths()) keys.insert(kv.first);
  for (const auto& t : keys)
    for (std::size_t k = 0; k < a.grid().points(); ++k)
      worst = std::max(worst, magnitude(S(a.value(t, k) - b.value(t, k))));
  return worst;
}

template <class S>
std::vector<HolderRow> holder_report(const GFamily<S>& g, double gamma) {
  std::vector<HolderRow> rows;
  const Grid& grid = g.grid();
  for (const auto& [t, p] : g.paths()) {
    HolderRow row{encode(t), tree_weight(t, gamma), 0.0};
    for (std::size_t s = 0; s < grid.points(); ++s)
      for (std::size_t u = s + 1; u < grid.points(); ++u) {
        const double q = std::fabs(to_double(p[u]) - to_double(p[s])) /
                         std::pow(grid.time(u) - grid.time(s), row.exponent);
        row.sup_quotient = std::max(row.sup_quotient, q);
      }
    rows.push_back(row);
  }
  return rows;
}

WeightedAlphabet transfer_alphabet(int truncation, int d, double gamma) {
  return WeightedAlphabet::from_trees(make_forest_basis(truncation, d)->trees(), gamma);
}

namespace {

template <class S>
using Coords = std::vector<std::pair<std::size_t, S>>;

template <class S>
Coords<S> coords_in(const WordBasis& basis, const WordComb& x) {
  Coords<S> out;
  for (const auto& [w, c] : x) {
    auto i = basis.find(w);
    if (!i) throw std::invalid_argument("word (" + encode(w) + ") outside the word basis");
    out.emplace_back(*i, from_rational<S>(c));
  }
  return out;
}

template <class S>
S pair_coords(const WordSeries<S>& x, const Coords<S>& c) {
  S acc(0), term;
  for (const auto& [i, k] : c) {
    term = x[i];
    term *= k;
    acc += term;
  }
  return acc;
}

std::string pair_label(std::size_t s, std::size_t t) {
  return "(" + std::to_string(s) + "," + std::to_string(t) + ")";
}

template <class S>
using StageFn = std::function<std::map<Tree, std::vector<S>>(const std::vector<Tree>&,
                                                             const AnisotropicRP<S>*)>;

/// Adds the trees of size 1..N as letters, one size per stage.
template <class S>
AnisotropicRP<S> staged(const ForestBasis& fb, const Grid& grid, double gamma, const StageFn<S>& fn,
                        double tol) {
  const int n = fb.truncation();
  std::map<Tree, double> gammas;
  std::optional<AnisotropicRP<S>> prior;
  const auto trees = fb.trees();
  for (int k = 1; k <= n; ++k) {
    std::vector<Tree> letters;
    for (const auto& t : trees)
      if (static_cast<int>(t.size()) == k) letters.push_back(t);
    for (const auto& t : letters) gammas.emplace(t, tree_weight(t, gamma));
    auto paths = fn(letters, prior ? &*prior : nullptr);
    AnisotropicRP<S> next = lv_extend(paths, prior ? &*prior : nullptr, WeightedAlphabet(gammas), grid,
                                      static_cast<std::size_t>(n), tol);
    prior.emplace(std::move(next));
  }
  return std::move(*prior);
}

template <class S>
std::vector<S> letter_path(const AnisotropicRP<S>& xbar, const Tree& t) {
  const std::size_t li = xbar.basis().letter_index(t);
  std::vector<S> p(xbar.grid().points());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = xbar.at(0, k)[li];
  return p;
}

void require_accepted(const RenormMatrix& m, int truncation, double gamma) {
  const CheckReport co = check_cointeraction(m, truncation);
  if (!co.passed) throw std::invalid_argument("renormalisation map rejected: " + co.counterexample);
  const CheckReport an = check_analytic_condition(m, gamma);
  if (!an.passed) throw std::invalid_argument("renormalisation map rejected: " + an.counterexample);
}

}  // namespace

template <class S>
AnisotropicRP<S> lv_extend(const std::map<Tree, std::vector<S>>& prescribed,
                           const AnisotropicRP<S>* prior, const WeightedAlphabet& alphabet,
                           const Grid& grid, std::size_t max_size, double tol) {
  if (!lv_admissible(alphabet, static_cast<double>(max_size)))
    throw std::invalid_argument("alphabet exponents admit a combination summing to 1");
  for (const auto& [a, p] : prescribed) {
    if (!alphabet.contains(a)) throw std::invalid_argument("prescribed letter " + encode(a) + " not in alphabet");
    if (prior && prior->alphabet().contains(a))
      throw std::invalid_argument("letter " + encode(a) + " is already in the prior");
    if (p.size() != grid.points())
      throw std::invalid_argument("prescribed path for " + encode(a) + " has the wrong length");
  }
  for (const auto& a : alphabet.letters())
    if (!prescribed.count(a) && !(prior && prior->alphabet().contains(a)))
      throw std::invalid_argument("letter " + encode(a) + " has no prescribed path");

  const WordBasisPtr basis = make_word_basis(alphabet.letters(), max_size);
  std::vector<std::size_t> embed;
  if (prior) {
    if (!(prior->grid() == grid)) throw std::invalid_argument("prior lives on another grid");
    const CheckReport chen = check_chen(*prior, tol, ChenSweep::adjacent);
    if (!chen.passed) throw std::invalid_argument("prior violates Chen: " + chen.counterexample);
    for (const auto& w : prior->basis().words()) {
      auto i = basis->find(w);
      if (!i) throw std::invalid_argument("prior word (" + encode(w) + ") exceeds the new truncation");
      embed.push_back(*i);
    }
  }
  std::vector<std::pair<std::size_t, const std::vector<S>*>> fresh;
  for (const auto& [a, p] : prescribed) fresh.emplace_back(basis->letter_index(a), &p);

  std::vector<WordSeries<S>> cells;
  cells.reserve(grid.cells());
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    auto log = WordSeries<S>::zero(basis);
    if (prior) {
      const auto lp = series_log(prior->at(c, c + 1));
      for (std::size_t j = 0; j < embed.size(); ++j) log[embed[j]] = lp[j];
    }
    for (const auto& [i, p] : fresh) log[i] = (*p)[c + 1] - (*p)[c];
    auto cell = series_exp(log);
    // Old words only see the old log; restore them verbatim.
    if (prior)
      for (std::size_t j = 0; j < embed.size(); ++j) cell[embed[j]] = prior->at(c, c + 1)[j];
    cells.push_back(std::move(cell));
  }

  std::vector<WordSeries<S>> values;
  values.reserve(grid.pair_count());
  for (std::size_t s = 0; s < grid.points(); ++s) {
    WordSeries<S> cur(basis);
    values.push_back(cur);
    for (std::size_t t = s + 1; t < grid.points(); ++t) {
      cur = concat_product(cur, cells[t - 1]);
      if (prior)
        for (std::size_t j = 0; j < embed.size(); ++j) cur[embed[j]] = prior->at(s, t)[j];
      values.push_back(cur);
    }
  }
  return AnisotropicRP<S>(grid, alphabet, basis, std::move(values));
}

template <class S>
AnisotropicRP<S> branched_to_anisotropic(const BranchedRP<S>& x, double tol) {
  const ForestBasis& fb = x.basis();
  const Grid& grid = x.grid();
  const StageFn<S> fn = [&](const std::vector<Tree>& letters, const AnisotropicRP<S>* prior) {
    std::map<Tree, std::vector<S>> out;
    for (const auto& t : letters) {
      const std::size_t ti = fb.index(t);
      const Coords<S> lower = prior ? coords_in<S>(prior->basis(), psi_lower(t)) : Coords<S>{};
      const auto remainder = [&](std::size_t s, std::size_t u) -> S {
        S r = x.stored(s, u)[ti];
        if (prior) r -= pair_coords(prior->at(s, u), lower);
        return r;
      };
      std::vector<S> p(grid.points(), S(0));
      for (std::size_t c = 0; c < grid.cells(); ++c) p[c + 1] = p[c] + remainder(c, c + 1);
      for (std::size_t s = 0; s < grid.points(); ++s)
        for (std::size_t u = s + 2; u < grid.points(); ++u) {
          S diff = remainder(s, u) - (p[u] - p[s]);
          if (exceeds(diff, tol))
            throw std::domain_error("remainder for " + encode(t) + " not additive on pair " +
                                    pair_label(s, u) + ": defect " + to_string(diff));
        }
      out.emplace(t, std::move(p));
    }
    return out;
  };
  return staged<S>(fb, grid, x.gamma(), fn, tol);
}

template <class S>
CheckReport check_transfer(const BranchedRP<S>& x, const AnisotropicRP<S>& xbar, double tol) {
  CheckReport report("transfer ⟨X, τ⟩ = ⟨X̄, ψ(τ)⟩");
  const ForestBasis& fb = x.basis();
  const Grid& grid = x.grid();
  if (!(grid == xbar.grid())) throw std::invalid_argument("paths on different grids");
  std::vector<std::pair<std::size_t, Coords<S>>> rows;
  for (auto i : fb.tree_indices())
    rows.emplace_back(i, coords_in<S>(xbar.basis(), psi(fb.forest(i).as_tree())));
  for (std::size_t s = 0; s < grid.points(); ++s)
    for (std::size_t t = s; t < grid.points(); ++t)
      for (const auto& [i, c] : rows) {
        ++report.checked;
        S diff = x.stored(s, t)[i] - pair_coords(xbar.at(s, t), c);
        report.max_defect = std::max(report.max_defect, magnitude(diff));
        if (exceeds(diff, tol))
          report.fail("pair " + pair_label(s, t) + ", tree " + encode(fb.forest(i)) + ": defect " +
                      to_string(diff));
      }
  return report;
}

template <class S>
AnisotropicRP<S> g_lift(const GFamily<S>& g, const BranchedRP<S>& x, double tol) {
  if (!(g.grid() == x.grid())) throw std::invalid_argument("g and X live on different grids");
  const AnisotropicRP<S> xbar = branched_to_anisotropic(x, tol);
  const StageFn<S> fn = [&](const std::vector<Tree>& letters, const AnisotropicRP<S>*) {
    std::map<Tree, std::vector<S>> out;
    for (const auto& t : letters) {
      std::vector<S> p = letter_path(xbar, t);
      for (std::size_t k = 0; k < p.size(); ++k) p[k] += g.value(t, k);
      out.emplace(t, std::move(p));
    }
    return out;
  };
  return staged<S>(x.basis(), x.grid(), x.gamma(), fn, tol);
}

template <class S>
BranchedRP<S> g_action(const GFamily<S>& g, const BranchedRP<S>& x, double tol) {
  const AnisotropicRP<S> gbar = g_lift(g, x, tol);
  const ForestBasis& fb = x.basis();
  std::vector<Coords<S>> rows(fb.size());
  for (auto i : fb.tree_indices()) rows[i] = coords_in<S>(gbar.basis(), psi(fb.forest(i).as_tree()));
  const Grid& grid = x.grid();
  std::vector<Character<S>> values;
  values.reserve(grid.pair_count());
  for (std::size_t s = 0; s < grid.points(); ++s)
    for (std::size_t t = s; t < grid.points(); ++t) {
      const auto& w = gbar.at(s, t);
      values.push_back(Character<S>::from_tree_values(
          x.basis_ptr(), [&](const Tree& tr) { return pair_coords(w, rows[fb.index(tr)]); }));
    }
  return BranchedRP<S>(grid, x.gamma(), x.basis_ptr(), std::move(values));
}

template <class S>
GFamily<S> g_from_renorm_recursive(const RenormMatrix& m, const BranchedRP<S>& x, double tol,
                                   CheckReport* additivity) {
  if (m.basis().size() != x.basis().size())
    throw std::invalid_argument("renormalisation matrix truncation differs from the path");
  require_accepted(m, x.truncation(), x.gamma());
  const ForestBasis& fb = x.basis();
  const Grid& grid = x.grid();
  const AnisotropicRP<S> xbar = branched_to_anisotropic(x, tol);
  CheckReport report("g recursion additivity");
  std::map<Tree, std::vector<S>> gpaths;
  const StageFn<S> fn = [&](const std::vector<Tree>& letters, const AnisotropicRP<S>* prior) {
    std::map<Tree, std::vector<S>> out;
    for (const auto& t : letters) {
      const std::size_t ti = fb.index(t);
      Coords<S> image;
      for (const auto& [row, c] : m.column(ti)) image.emplace_back(row, from_rational<S>(c));
      const std::size_t li = xbar.basis().letter_index(t);
      const Coords<S> lower = prior ? coords_in<S>(prior->basis(), psi_lower(t)) : Coords<S>{};
      const auto rhs = [&](std::size_t s, std::size_t u) -> S {
        S r(0), term;
        const auto& xs = x.stored(s, u);
        for (const auto& [row, c] : image) {
          term = xs[row];
          term *= c;
          r += term;
        }
        r -= xbar.at(s, u)[li];
        if (prior) r -= pair_coords(prior->at(s, u), lower);
        return r;
      };
      std::vector<S> g(grid.points(), S(0));
      for (std::size_t c = 0; c < grid.cells(); ++c) g[c + 1] = g[c] + rhs(c, c + 1);
      for (std::size_t s = 0; s < grid.points(); ++s)
        for (std::size_t u = s + 2; u < grid.points(); ++u) {
          ++report.checked;
          S diff = rhs(s, u) - (g[u] - g[s]);
          report.max_defect = std::max(report.max_defect, magnitude(diff));
          if (exceeds(diff, tol))
            report.fail("tree " + encode(t) + ", pair " + pair_label(s, u) + ": defect " + to_string(diff));
        }
      std::vector<S> p = letter_path(xbar, t);
      for (std::size_t k = 0; k < p.size(); ++k) p[k] += g[k];
      out.emplace(t, std::move(p));
      gpaths.emplace(t, std::move(g));
    }
    return out;
  };
  staged<S>(fb, grid, x.gamma(), fn, tol);
  if (additivity) *additivity = report;
  return GFamily<S>(grid, std::move(gpaths));
}

template <class S>
GFamily<S> g_from_renorm_explicit(const RenormMatrix& m, const BranchedRP<S>& x, double tol) {
  const BranchedRP<S> y = apply_renorm(m, x, true);
  const AnisotropicRP<S> ybar = branched_to_anisotropic(y, tol);
  const AnisotropicRP<S> xbar = branched_to_anisotropic(x, tol);
  std::map<Tree, std::vector<S>> gpaths;
  for (const auto& t : x.basis().trees()) {
    std::vector<S> p = letter_path(ybar, t);
    const std::vector<S> q = letter_path(xbar, t);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] -= q[k];
    gpaths.emplace(t, std::move(p));
  }
  return GFamily<S>(x.grid(), std::move(gpaths));
}

template <class S>
CheckReport compare_g(const GFamily<S>& a, const GFamily<S>& b, double tol, std::string name) {
  CheckReport report(std::move(name));
  if (!(a.grid() == b.grid())) throw std::invalid_argument("g families on different grids");
  std::set<Tree> keys;
  for (const auto& kv : a.paths()) keys.insert(kv.first);
  for (const auto& kv : b.paths()) keys.insert(kv.first);
  for (const auto& t : keys)
    for (std::size_t k = 0; k < a.grid().points(); ++k) {
      ++report.checked;
      S diff = a.value(t, k) - b.value(t, k);
      report.max_defect = std::max(report.max_defect, magnitude(diff));
      if (exceeds(diff, tol))
        report.fail("tree " + encode(t) + ", point " + std::to_string(k) + ": " +
                    to_string(a.value(t, k)) + " vs " + to_string(b.value(t, k)));
    }
  return report;
}

template <class S>
CheckReport explore_bar_formula(const RenormMatrix& m, const BranchedRP<S>& x, const GFamily<S>& g,
                                double tol) {
  CheckReport report("exploratory: g increments vs ⟨X̄, M̄τ − τ⟩");
  const AnisotropicRP<S> xbar = branched_to_anisotropic(x, tol);
  const BarMap bar(m);
  const Grid& grid = x.grid();
  std::size_t differing = 0;
  for (const auto& t : x.basis().trees()) {
    WordComb w = bar.letter_image(t);
    w.add(Word{t}, Rational(-1));
    const Coords<S> c = coords_in<S>(xbar.basis(), w);
    bool differs = false;
    for (std::size_t s = 0; s < grid.points(); ++s)
      for (std::size_t u = s + 1; u < grid.points(); ++u) {
        ++report.checked;
        S diff = g.increment(t, s, u) - pair_coords(xbar.at(s, u), c);
        report.max_defect = std::max(report.max_defect, magnitude(diff));
        if (exceeds(diff, tol)) {
          differs = true;
          report.fail("tree " + encode(t) + ", pair " + pair_label(s, u) + ": deviation " + to_string(diff));
        }
      }
    if (differs) ++differing;
  }
  std::ostringstream os;
  os << differing << " trees deviate";
  report.notes.push_back(os.str());
  return report;
}

#define ROUGHREN_INSTANTIATE(S)                                                                    \
  template class GFamily<S>;                                                                        \
  template double max_abs_difference(const GFamily<S>&, const GFamily<S>&);                         \
  template std::vector<HolderRow> holder_report(const GFamily<S>&, double);                         \
  template AnisotropicRP<S> lv_extend(const std::map<Tree, std::vector<S>>&, const AnisotropicRP<S>*, \
                                      const WeightedAlphabet&, const Grid&, std::size_t, double);   \
  template AnisotropicRP<S> branched_to_anisotropic(const BranchedRP<S>&, double);                  \
  template CheckReport check_transfer(const BranchedRP<S>&, const AnisotropicRP<S>&, double);       \
  template AnisotropicRP<S> g_lift(const GFamily<S>&, const BranchedRP<S>&, double);                \
  template BranchedRP<S> g_action(const GFamily<S>&, const BranchedRP<S>&, double);                 \
  template GFamily<S> g_from_renorm_recursive(const RenormMatrix&, const BranchedRP<S>&, double,     \
                                              CheckReport*);                                        \
  template GFamily<S> g_from_renorm_explicit(const RenormMatrix&, const BranchedRP<S>&, double);    \
  template CheckReport compare_g(const GFamily<S>&, const GFamily<S>&, double, std::string);        \
  template CheckReport explore_bar_formula(const RenormMatrix&, const BranchedRP<S>&,               \
                                           const GFamily<S>&, double);

ROUGHREN_INSTANTIATE(double)
ROUGHREN_INSTANTIATE(Rational)

#undef ROUGHREN_INSTANTIATE

}  // namespace roughren
