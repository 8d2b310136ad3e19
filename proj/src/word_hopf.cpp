#include "roughren/word_hopf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace roughren {

std::size_t word_size(const Word& w) {
  std::size_t n = 0;
  for (const auto& a : w) n += a.size();
  return n;
}

std::string encode(const Word& w) {
  std::string out;
  for (const auto& a : w) {
    if (!out.empty()) out += ' ';
    out += encode(a);
  }
  return out;
}

Word decode_word(std::string_view text, std::optional<Decoration> max_decoration) {
  return decode_tree_sequence(text, max_decoration);
}

namespace {

std::string bracket(const Word& w) { return w.empty() ? "ε" : "(" + encode(w) + ")"; }

template <class Comb, class Fmt>
std::string format_comb(const Comb& x, Fmt&& fmt) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : x) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << roughren::to_string(c) << "*";
    os << fmt(k);
  }
  return os.str();
}

Word cat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

std::string to_string(const WordComb& x) {
  return format_comb(x, [](const Word& w) { return bracket(w); });
}

std::string to_string(const WordTensor& x) {
  return format_comb(x, [](const std::pair<Word, Word>& k) {
    return bracket(k.first) + "⊗" + bracket(k.second);
  });
}

WordComb shuffle(const Word& u, const Word& v) {
  if (u.empty()) return WordComb(v);
  if (v.empty()) return WordComb(u);
  WordComb out;
  const Word u_tail(u.begin() + 1, u.end());
  const Word v_tail(v.begin() + 1, v.end());
  for (const auto& [w, c] : shuffle(u_tail, v)) out.add(cat(Word{u.front()}, w), c);
  for (const auto& [w, c] : shuffle(u, v_tail)) out.add(cat(Word{v.front()}, w), c);
  return out;
}

WordComb shuffle(const WordComb& u, const WordComb& v) {
  WordComb out;
  for (const auto& [a, ca] : u)
    for (const auto& [b, cb] : v) {
      WordComb s = shuffle(a, b);
      s *= ca * cb;
      out += s;
    }
  return out;
}

WordComb concat(const WordComb& u, const WordComb& v) {
  WordComb out;
  for (const auto& [a, ca] : u)
    for (const auto& [b, cb] : v) out.add(cat(a, b), ca * cb);
  return out;
}

WordTensor deconcat(const Word& w) {
  WordTensor out;
  for (std::size_t k = 0; k <= w.size(); ++k)
    out.add({Word(w.begin(), w.begin() + k), Word(w.begin() + k, w.end())}, 1);
  return out;
}

WordTensor deconcat(const WordComb& x) {
  WordTensor out;
  for (const auto& [w, c] : x) {
    WordTensor d = deconcat(w);
    d *= c;
    out += d;
  }
  return out;
}

WordTensor deshuffle(const Word& w) {
  if (w.size() > 20) throw ResourceError("deshuffle of a word longer than 20 letters");
  WordTensor out;
  for (std::uint32_t mask = 0; mask < (1u << w.size()); ++mask) {
    Word l, r;
    for (std::size_t k = 0; k < w.size(); ++k) (mask >> k & 1u ? l : r).push_back(w[k]);
    out.add({l, r}, 1);
  }
  return out;
}

WordTensor deshuffle(const WordComb& x) {
  WordTensor out;
  for (const auto& [w, c] : x) {
    WordTensor d = deshuffle(w);
    d *= c;
    out += d;
  }
  return out;
}

WordTensor shuffle(const WordTensor& a, const WordTensor& b) {
  WordTensor out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b)
      for (const auto& [l, cl] : shuffle(ka.first, kb.first))
        for (const auto& [r, cr] : shuffle(ka.second, kb.second))
          out.add({l, r}, ca * cb * cl * cr);
  return out;
}

WordComb truncate(const WordComb& x, std::size_t max_size) {
  WordComb out;
  for (const auto& [w, c] : x)
    if (word_size(w) <= max_size) out.add(w, c);
  return out;
}

WordComb concat_exp(const WordComb& x, std::size_t max_size) {
  if (!is_zero(x.coefficient(Word{}))) throw std::invalid_argument("exp needs zero ε-coefficient");
  WordComb out(Word{});
  WordComb power(Word{});
  const WordComb y = truncate(x, max_size);
  for (std::size_t k = 1; k <= max_size; ++k) {
    power = truncate(concat(power, y), max_size);
    if (power.is_zero()) break;
    power *= Rational(1, static_cast<long>(k));
    out += power;
  }
  return out;
}

WordComb concat_log(const WordComb& x, std::size_t max_size) {
  if (x.coefficient(Word{}) != 1) throw std::invalid_argument("log needs ε-coefficient 1");
  WordComb y = truncate(x, max_size);
  y.add(Word{}, -1);
  WordComb out;
  WordComb power(Word{});
  for (std::size_t k = 1; k <= max_size; ++k) {
    power = truncate(concat(power, y), max_size);
    if (power.is_zero()) break;
    WordComb term = power;
    term *= Rational(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
    out += term;
  }
  return out;
}

double tree_weight(const Tree& t, double gamma) {
  const double n = static_cast<double>(t.size());
  const double z = static_cast<double>(t.zero_count());
  return t.zero_count() == 0 ? gamma * n : (1.0 - gamma) * z + gamma * n;
}

WeightedAlphabet::WeightedAlphabet(std::map<Tree, double> gamma) : gamma_(std::move(gamma)) {
  if (gamma_.empty()) throw std::invalid_argument("alphabet must not be empty");
  gamma_hat_ = gamma_.begin()->second;
  for (const auto& [a, g] : gamma_) {
    if (!(g > 0) || !std::isfinite(g))
      throw std::invalid_argument("letter " + encode(a) + " needs a positive finite exponent");
    gamma_hat_ = std::min(gamma_hat_, g);
  }
}

WeightedAlphabet WeightedAlphabet::from_trees(const std::vector<Tree>& trees, double gamma) {
  if (!(gamma > 0 && gamma < 1)) throw std::invalid_argument("gamma must lie in (0, 1)");
  std::map<Tree, double> g;
  for (const auto& t : trees) g.emplace(t, tree_weight(t, gamma));
  return WeightedAlphabet(std::move(g));
}

double WeightedAlphabet::gamma(const Tree& a) const {
  auto it = gamma_.find(a);
  if (it == gamma_.end()) throw std::invalid_argument("unknown letter " + encode(a));
  return it->second;
}

std::vector<Tree> WeightedAlphabet::letters() const {
  std::vector<Tree> out;
  for (const auto& [a, g] : gamma_) out.push_back(a);
  return out;
}

double weight(const Word& v, const WeightedAlphabet& alphabet) {
  double sum = 0;
  for (const auto& a : v) sum += alphabet.gamma(a);
  return v.empty() ? 0.0 : sum / alphabet.gamma_hat();
}

bool lv_admissible(const WeightedAlphabet& alphabet, double n_omega, double tol) {
  std::vector<double> values;
  for (const auto& [a, g] : alphabet.gammas())
    if (g < 1.0) values.push_back(g);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end(),
                           [tol](double x, double y) { return std::fabs(x - y) <= tol; }),
               values.end());
  // Sums above 1 + tol cannot hit 1, so the scan budget is capped there.
  const double budget = std::min(n_omega * alphabet.gamma_hat(), 1.0 + tol) + tol;
  // Reachable sums, deduplicated; all values are ≥ γ̂ > 0 so this terminates.
  std::vector<double> frontier{0.0};
  while (!frontier.empty()) {
    std::vector<double> next;
    for (double s : frontier)
      for (double g : values) {
        const double t = s + g;
        if (t > budget) break;
        if (std::fabs(t - 1.0) <= tol) return false;
        next.push_back(t);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end(),
                           [tol](double x, double y) { return std::fabs(x - y) <= tol * 1e-3; }),
               next.end());
    frontier = std::move(next);
  }
  return true;
}

WordBasis::WordBasis(std::vector<Tree> letters, std::size_t max_size)
    : letters_(std::move(letters)), max_size_(max_size) {
  std::sort(letters_.begin(), letters_.end());
  letters_.erase(std::unique(letters_.begin(), letters_.end()), letters_.end());
  std::vector<Word> frontier{Word{}};
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      words_.push_back(w);
      const std::size_t n = word_size(w);
      for (const auto& a : letters_)
        if (n + a.size() <= max_size_) next.push_back(cat(w, Word{a}));
    }
    frontier = std::move(next);
  }
  std::stable_sort(words_.begin(), words_.end(), [](const Word& a, const Word& b) {
    const std::size_t sa = word_size(a), sb = word_size(b);
    return sa != sb ? sa < sb : a < b;
  });
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(words_[i], i);
  splits_.resize(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const Word& w = words_[i];
    for (std::size_t k = 0; k <= w.size(); ++k)
      splits_[i].emplace_back(
          static_cast<std::uint32_t>(index(Word(w.begin(), w.begin() + k))),
          static_cast<std::uint32_t>(index(Word(w.begin() + k, w.end()))));
  }
}

std::optional<std::size_t> WordBasis::find(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WordBasis::index(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end())
    throw std::out_of_range("word (" + encode(w) + ") outside the word basis");
  return it->second;
}

const std::vector<WordBasis::ShuffleEntry>& WordBasis::shuffle_table() const {
  if (!shuffle_) {
    auto table = std::make_shared<std::vector<ShuffleEntry>>();
    for (std::size_t i = 1; i < words_.size(); ++i)
      for (std::size_t j = i; j < words_.size(); ++j) {
        if (word_size(words_[i]) + word_size(words_[j]) > max_size_) continue;
        ShuffleEntry e{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), {}};
        for (const auto& [w, c] : shuffle(words_[i], words_[j]))
          e.terms.emplace_back(static_cast<std::uint32_t>(index(w)), c.get_num().get_si());
        table->push_back(std::move(e));
      }
    shuffle_ = std::move(table);
  }
  return *shuffle_;
}

std::vector<std::pair<std::uint32_t, Rational>> WordBasis::coordinates(const WordComb& x) const {
  std::vector<std::pair<std::uint32_t, Rational>> out;
  for (const auto& [w, c] : x) out.emplace_back(static_cast<std::uint32_t>(index(w)), c);
  return out;
}

WordBasisPtr make_word_basis(std::vector<Tree> letters, std::size_t max_size) {
  return std::make_shared<const WordBasis>(std::move(letters), max_size);
}

template <class S>
WordSeries<S>::WordSeries(WordBasisPtr basis) : basis_(std::move(basis)) {
  values_.assign(basis_->size(), S(0));
  values_[0] = S(1);
}

template <class S>
WordSeries<S>::WordSeries(WordBasisPtr basis, std::vector<S> values)
    : basis_(std::move(basis)), values_(std::move(values)) {
  if (values_.size() != basis_->size())
    throw std::invalid_argument("word series value count does not match its basis");
}

template <class S>
WordSeries<S> WordSeries<S>::zero(WordBasisPtr basis) {
  const std::size_t n = basis->size();
  return WordSeries(std::move(basis), std::vector<S>(n, S(0)));
}

template <class S>
S WordSeries<S>::pair(const WordComb& x) const {
  S acc(0);
  for (const auto& [w, c] : x) {
    S term = from_rational<S>(c);
    term *= values_[basis_->index(w)];
    acc += term;
  }
  return acc;
}

template <class S>
WordSeries<S> concat_product(const WordSeries<S>& x, const WordSeries<S>& y) {
  if (x.basis_ptr() != y.basis_ptr() &&
      (x.basis().size() != y.basis().size() || x.basis().letters() != y.basis().letters()))
    throw std::invalid_argument("product of word series over different bases");
  const WordBasis& basis = x.basis();
  std::vector<S> out(basis.size());
  S term;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    S acc(0);
    for (const auto& [p, q] : basis.splits(i)) {
      term = x[p];
      term *= y[q];
      acc += term;
    }
    out[i] = std::move(acc);
  }
  return WordSeries<S>(x.basis_ptr(), std::move(out));
}

template <class S>
WordSeries<S> series_exp(const WordSeries<S>& x) {
  if (!is_zero(x[0])) throw std::invalid_argument("exp needs zero ε-coefficient");
  WordSeries<S> out(x.basis_ptr());
  WordSeries<S> power(x.basis_ptr());
  for (std::size_t k = 1; k <= x.basis().max_size(); ++k) {
    power = concat_product(power, x);
    std::vector<S> v = power.values();
    for (auto& c : v) c /= static_cast<long>(k);
    power = WordSeries<S>(x.basis_ptr(), std::move(v));
    for (std::size_t i = 0; i < out.values().size(); ++i) out[i] += power[i];
  }
  return out;
}

template <class S>
WordSeries<S> series_log(const WordSeries<S>& x) {
  if (x[0] != S(1)) throw std::invalid_argument("log needs ε-coefficient 1");
  WordSeries<S> y = x;
  y[0] = S(0);
  WordSeries<S> out = WordSeries<S>::zero(x.basis_ptr());
  WordSeries<S> power(x.basis_ptr());
  for (std::size_t k = 1; k <= x.basis().max_size(); ++k) {
    power = concat_product(power, y);
    const long denom = static_cast<long>(k);
    for (std::size_t i = 0; i < out.values().size(); ++i) {
      S term = power[i];
      term /= denom;
      if (k % 2 == 1)
        out[i] += term;
      else
        out[i] -= term;
    }
  }
  return out;
}

template <class S>
double shuffle_defect(const WordSeries<S>& x) {
  S d0 = x[0] - S(1);
  double worst = magnitude(d0);
  for (const auto& e : x.basis().shuffle_table()) {
    S lhs(0);
    for (const auto& [w, c] : e.terms) {
      S term = x[w];
      if (c != 1) term *= static_cast<long>(c);
      lhs += term;
    }
    S rhs = x[e.u] * x[e.v];
    S diff = lhs - rhs;
    worst = std::max(worst, magnitude(diff));
  }
  return worst;
}

template <class S>
double max_abs_difference(const WordSeries<S>& a, const WordSeries<S>& b) {
  if (a.values().size() != b.values().size())
    throw std::invalid_argument("word series over different bases");
  double worst = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    S diff = a[i] - b[i];
    worst = std::max(worst, magnitude(diff));
  }
  return worst;
}

template class WordSeries<double>;
template class WordSeries<Rational>;
template WordSeries<double> concat_product(const WordSeries<double>&, const WordSeries<double>&);
template WordSeries<Rational> concat_product(const WordSeries<Rational>&,
                                              const WordSeries<Rational>&);
template WordSeries<double> series_exp(const WordSeries<double>&);
template WordSeries<Rational> series_exp(const WordSeries<Rational>&);
template WordSeries<double> series_log(const WordSeries<double>&);
template WordSeries<Rational> series_log(const WordSeries<Rational>&);
template double shuffle_defect(const WordSeries<double>&);
template double shuffle_defect(const WordSeries<Rational>&);
template double max_abs_difference(const WordSeries<double>&, const WordSeries<double>&);
template double max_abs_difference(const WordSeries<Rational>&, const WordSeries<Rational>&);

}  // namespace roughren
