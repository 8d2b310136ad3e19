#include "roughren/branched_rp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace roughren {

Grid::Grid(int depth) : depth_(depth) {
  if (depth < 1 || depth > 16) throw std::invalid_argument("grid depth must lie in [1, 16]");
  points_ = (std::size_t{1} << depth) + 1;
}

std::size_t Grid::pair_index(std::size_t s, std::size_t t) const {
  if (s > t || t >= points_) throw std::out_of_range("grid pair out of range");
  // Rows s = 0..s-1 hold points_ - r entries each.
  return s * points_ - s * (s - 1) / 2 + (t - s);
}

Rational Grid::time_exact(std::size_t k) const {
  Rational q(static_cast<long>(k), 1L << depth_);
  q.canonicalize();
  return q;
}

double Grid::time(std::size_t k) const { return std::ldexp(static_cast<double>(k), -depth_); }

DriverPath DriverPath::polynomial(std::vector<std::vector<Rational>> coefficients) {
  if (coefficients.size() < 2) throw std::invalid_argument("driver needs at least components 0 and 1");
  DriverPath p;
  p.kind_ = Kind::polynomial;
  p.poly_ = std::move(coefficients);
  return p;
}

DriverPath DriverPath::piecewise_linear(int depth, std::vector<std::vector<double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("driver needs at least components 0 and 1");
  const Grid grid(depth);
  for (const auto& comp : samples) {
    if (comp.size() != grid.points())
      throw std::invalid_argument("driver samples do not match the grid size");
    for (double v : comp)
      if (!std::isfinite(v)) throw std::invalid_argument("driver samples must be finite");
  }
  DriverPath p;
  p.kind_ = Kind::piecewise_linear;
  p.depth_ = depth;
  p.samples_ = std::move(samples);
  return p;
}

DriverPath DriverPath::polynomial_suite(int d) {
  std::vector<std::vector<Rational>> c(static_cast<std::size_t>(d) + 1);
  c[0] = {0, 1};
  for (int i = 1; i <= d; ++i) {
    c[i].assign(static_cast<std::size_t>(i) + 2, Rational(0));
    c[i][1] = Rational(-1, i + 1);
    c[i][static_cast<std::size_t>(i) + 1] = 1;
  }
  return polynomial(std::move(c));
}

DriverPath DriverPath::random_walk(int d, int depth, std::uint64_t seed) {
  const Grid grid(depth);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, std::sqrt(std::ldexp(1.0, -depth)));
  std::vector<std::vector<double>> s(static_cast<std::size_t>(d) + 1,
                                     std::vector<double>(grid.points(), 0.0));
  for (std::size_t k = 0; k < grid.points(); ++k) s[0][k] = grid.time(k);
  for (int i = 1; i <= d; ++i)
    for (std::size_t k = 1; k < grid.points(); ++k) s[i][k] = s[i][k - 1] + step(rng);
  return piecewise_linear(depth, std::move(s));
}

DriverPath DriverPath::constant(int d) {
  return polynomial(std::vector<std::vector<Rational>>(static_cast<std::size_t>(d) + 1,
                                                       std::vector<Rational>{Rational(1, 3)}));
}

std::size_t DriverPath::components() const noexcept {
  return kind_ == Kind::polynomial ? poly_.size() : samples_.size();
}

Rational DriverPath::value_exact(int i, const Rational& t) const {
  if (kind_ == Kind::polynomial) {
    Rational acc = 0;
    const auto& c = poly_.at(static_cast<std::size_t>(i));
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
  const Grid grid(depth_);
  const auto& s = samples_.at(static_cast<std::size_t>(i));
  Rational scaled = t * Rational(1L << depth_);
  mpz_class k = scaled.get_num() / scaled.get_den();
  std::size_t cell = std::min<std::size_t>(k.get_ui(), grid.cells() - 1);
  Rational frac = scaled - Rational(static_cast<long>(cell));
  return Rational(s[cell]) + frac * (Rational(s[cell + 1]) - Rational(s[cell]));
}

double DriverPath::value(int i, double t) const {
  if (kind_ == Kind::polynomial) return value_exact(i, Rational(t)).get_d();
  const auto& s = samples_.at(static_cast<std::size_t>(i));
  const double scaled = std::ldexp(t, depth_);
  const std::size_t cell = std::min<std::size_t>(static_cast<std::size_t>(scaled), s.size() - 2);
  const double frac = scaled - static_cast<double>(cell);
  return s[cell] + frac * (s[cell + 1] - s[cell]);
}

template <class S>
BranchedRP<S>::BranchedRP(Grid grid, double gamma, ForestBasisPtr basis,
                          std::vector<Character<S>> values)
    : grid_(grid), gamma_(gamma), basis_(std::move(basis)), values_(std::move(values)) {
  if (values_.size() != grid_.pair_count())
    throw std::invalid_argument("branched path needs one character per grid pair");
}

template <class S>
Character<S> BranchedRP<S>::at(std::size_t s, std::size_t t) const {
  if (s <= t) return values_[grid_.pair_index(s, t)];
  return inverse(values_[grid_.pair_index(t, s)]);
}

template <class S>
BranchedRP<S> BranchedRP<S>::with_entry(std::size_t s, std::size_t t, std::size_t forest,
                                        S value) const {
  BranchedRP out = *this;
  auto& slot = out.values_[grid_.pair_index(s, t)];
  slot = slot.with_value(forest, std::move(value));
  return out;
}

template <class S>
AnisotropicRP<S>::AnisotropicRP(Grid grid, WeightedAlphabet alphabet, WordBasisPtr basis,
                                std::vector<WordSeries<S>> values)
    : grid_(grid), alphabet_(std::move(alphabet)), basis_(std::move(basis)), values_(std::move(values)) {
  if (values_.size() != grid_.pair_count())
    throw std::invalid_argument("anisotropic path needs one series per grid pair");
}

template <class S>
AnisotropicRP<S> AnisotropicRP<S>::with_entry(std::size_t s, std::size_t t, std::size_t word,
                                              S value) const {
  AnisotropicRP out = *this;
  out.values_[grid_.pair_index(s, t)][word] = std::move(value);
  return out;
}

namespace {

/// Dense polynomial in the local variable h = u − a.
template <class S>
using Poly = std::vector<S>;

template <class S>
Poly<S> poly_mul(const Poly<S>& p, const Poly<S>& q) {
  if (p.empty() || q.empty()) return {};
  Poly<S> out(p.size() + q.size() - 1, S(0));
  S term;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      term = p[i];
      term *= q[j];
      out[i + j] += term;
    }
  return out;
}

/// Antiderivative vanishing at h = 0.
template <class S>
Poly<S> poly_integral(const Poly<S>& p) {
  Poly<S> out(p.size() + 1, S(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i + 1] = p[i];
    out[i + 1] /= static_cast<long>(i + 1);
  }
  return out;
}

template <class S>
S poly_eval(const Poly<S>& p, const S& h) {
  S acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc *= h;
    acc += *it;
  }
  return acc;
}

/// d/du of a global polynomial, re-expanded around u = a.
Poly<Rational> shifted_derivative(const std::vector<Rational>& c, const Rational& a) {
  if (c.size() < 2) return {};
  std::vector<Rational> der(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) der[k - 1] = c[k] * static_cast<long>(k);
  // Taylor shift by repeated synthetic division.
  std::vector<Rational> out = der;
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) out[j - 1] += a * out[j];
  return out;
}

template <class S>
S convert(const Rational& q) {
  return from_rational<S>(q);
}

template <class S>
S slope_of(double x0, double x1, int depth);

template <>
double slope_of<double>(double x0, double x1, int depth) {
  return std::ldexp(x1 - x0, depth);
}

template <>
Rational slope_of<Rational>(double x0, double x1, int depth) {
  Rational q = (Rational(x1) - Rational(x0)) * Rational(1L << depth);
  q.canonicalize();
  return q;
}

}  // namespace

template <class S>
Character<S> lift_interval(const DriverPath& x, const ForestBasisPtr& basis, const Rational& a,
                           const Rational& b) {
  if (!(a <= b)) throw std::invalid_argument("lift interval needs a ≤ b");
  const int d = basis->alphabet_bound();
  if (d > x.dimension())
    throw std::invalid_argument("driver has fewer components than the decoration bound");
  std::vector<Poly<S>> der(static_cast<std::size_t>(d) + 1);
  if (x.kind() == DriverPath::Kind::polynomial) {
    for (int i = 0; i <= d; ++i) {
      const Poly<Rational> p = shifted_derivative(x.coefficients()[static_cast<std::size_t>(i)], a);
      for (const auto& c : p) der[static_cast<std::size_t>(i)].push_back(convert<S>(c));
    }
  } else {
    const int depth = x.sample_depth();
    const Rational scaled = a * Rational(1L << depth);
    const mpz_class k = scaled.get_num() / scaled.get_den();
    std::size_t cell = k.get_ui();
    const std::size_t cells = std::size_t{1} << depth;
    if (cell == cells) cell = cells - 1;
    if (b * Rational(1L << depth) > Rational(static_cast<long>(cell + 1)))
      throw std::invalid_argument("piecewise-linear lift interval crosses a driver cell boundary");
    for (int i = 0; i <= d; ++i) {
      const auto& s = x.samples()[static_cast<std::size_t>(i)];
      der[static_cast<std::size_t>(i)] = {slope_of<S>(s[cell], s[cell + 1], depth)};
    }
  }
  const S delta = convert<S>(b - a);
  std::vector<S> tree_value(basis->size(), S(0));
  std::vector<Poly<S>> tail(basis->size());
  for (auto i : basis->tree_indices()) {
    const Tree& t = basis->forest(i).as_tree();
    Poly<S> integrand = der[static_cast<std::size_t>(t.decoration())];
    for (const auto& child : t.children()) integrand = poly_mul(integrand, tail[basis->index(child)]);
    const Poly<S> q = poly_integral(integrand);
    const S total = poly_eval(q, delta);
    // ⟨X_ub, τ⟩ = Q(b − a) − Q(u − a).
    Poly<S> p(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) p[k] = -q[k];
    if (p.empty()) p.push_back(S(0));
    p[0] += total;
    tail[i] = std::move(p);
    tree_value[i] = total;
  }
  return Character<S>::from_tree_values(
      basis, [&](const Tree& t) { return tree_value[basis->index(t)]; });
}

template <class S>
BranchedRP<S> canonical_lift(const DriverPath& x, int truncation, double gamma, int depth) {
  const Grid grid(depth);
  if (x.kind() == DriverPath::Kind::piecewise_linear && x.sample_depth() > depth)
    throw std::invalid_argument("grid is coarser than the piecewise-linear driver");
  const ForestBasisPtr basis = make_forest_basis(truncation, x.dimension());
  std::vector<Character<S>> cells;
  cells.reserve(grid.cells());
  for (std::size_t k = 0; k < grid.cells(); ++k)
    cells.push_back(lift_interval<S>(x, basis, grid.time_exact(k), grid.time_exact(k + 1)));
  std::vector<Character<S>> values;
  values.reserve(grid.pair_count());
  for (std::size_t s = 0; s < grid.points(); ++s) {
    Character<S> cur(basis);
    values.push_back(cur);
    for (std::size_t t = s + 1; t < grid.points(); ++t) {
      cur = convolve(cur, cells[t - 1]);
      values.push_back(cur);
    }
  }
  return BranchedRP<S>(grid, gamma, basis, std::move(values));
}

namespace {

std::string triple_label(std::size_t s, std::size_t u, std::size_t t) {
  std::ostringstream os;
  os << "(s,u,t) = (" << s << "," << u << "," << t << ")";
  return os.str();
}

/// Value of (x ⋆ y) on basis element i.
template <class S>
S convolve_at(const ForestBasis& basis, const Character<S>& x, const Character<S>& y, std::size_t i) {
  S acc(0), term;
  for (const auto& c : basis.coproduct(i)) {
    term = x[c.left];
    term *= y[c.right];
    if (c.coef != 1) term *= static_cast<long>(c.coef);
    acc += term;
  }
  return acc;
}

template <class S>
S concat_at(const WordBasis& basis, const WordSeries<S>& x, const WordSeries<S>& y, std::size_t i) {
  S acc(0), term;
  for (const auto& [p, q] : basis.splits(i)) {
    term = x[p];
    term *= y[q];
    acc += term;
  }
  return acc;
}

}  // namespace

template <class S>
CheckReport check_chen(const BranchedRP<S>& x, double tol, ChenSweep sweep) {
  CheckReport report("Chen (branched)");
  const Grid& g = x.grid();
  const ForestBasis& basis = x.basis();
  const std::size_t n = g.points();
  const Character<S> unit(x.basis_ptr());
  for (std::size_t s = 0; s < n; ++s) {
    const auto& e = x.stored(s, s);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      S diff = e[i] - unit[i];
      if (exceeds(diff, tol)) {
        report.max_defect = std::max(report.max_defect, magnitude(diff));
        report.fail("X_tt ≠ 1* at t = " + std::to_string(s));
        break;
      }
    }
  }
  const auto check_triple = [&](std::size_t s, std::size_t u, std::size_t t) {
    const auto& a = x.stored(s, u);
    const auto& b = x.stored(u, t);
    const auto& c = x.stored(s, t);
    ++report.checked;
    for (auto i : basis.tree_indices()) {
      S diff = convolve_at(basis, a, b, i) - c[i];
      if (exceeds(diff, tol)) {
        report.max_defect = std::max(report.max_defect, magnitude(diff));
        report.fail(triple_label(s, u, t) + ", tree " + encode(basis.forest(i)) +
                    ": defect " + to_string(diff));
      } else {
        report.max_defect = std::max(report.max_defect, magnitude(diff));
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      if (sweep == ChenSweep::adjacent) {
        check_triple(s, t - 1, t);
      } else {
        for (std::size_t u = s; u <= t; ++u) check_triple(s, u, t);
      }
    }
  report.merge(check_characters(x, tol));
  return report;
}

template <class S>
CheckReport check_chen(const AnisotropicRP<S>& x, double tol, ChenSweep sweep) {
  CheckReport report("Chen (anisotropic)");
  const Grid& g = x.grid();
  const WordBasis& basis = x.basis();
  const std::size_t n = g.points();
  for (std::size_t s = 0; s < n; ++s) {
    const auto& e = x.at(s, s);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      S diff = e[i] - S(i == 0 ? 1 : 0);
      if (exceeds(diff, tol)) report.fail("X_tt ≠ ε* at t = " + std::to_string(s));
    }
  }
  const auto check_triple = [&](std::size_t s, std::size_t u, std::size_t t) {
    const auto& a = x.at(s, u);
    const auto& b = x.at(u, t);
    const auto& c = x.at(s, t);
    ++report.checked;
    for (std::size_t i = 1; i < basis.size(); ++i) {
      S diff = concat_at(basis, a, b, i) - c[i];
      report.max_defect = std::max(report.max_defect, magnitude(diff));
      if (exceeds(diff, tol))
        report.fail(triple_label(s, u, t) + ", word (" + encode(basis.word(i)) + "): defect " +
                    to_string(diff));
    }
  };
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      if (sweep == ChenSweep::adjacent) {
        check_triple(s, t - 1, t);
      } else {
        for (std::size_t u = s; u <= t; ++u) check_triple(s, u, t);
      }
    }
  report.merge(check_characters(x, tol));
  return report;
}

template <class S>
CheckReport check_characters(const BranchedRP<S>& x, double tol) {
  CheckReport report("character property (branched)");
  const Grid& g = x.grid();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t) {
      ++report.checked;
      const double d = multiplicativity_defect(x.stored(s, t));
      report.max_defect = std::max(report.max_defect, d);
      if (d > tol || (tol == 0 && d != 0))
        report.fail("pair (" + std::to_string(s) + "," + std::to_string(t) + ") not multiplicative");
      else if constexpr (is_exact_v<S>) {
        if (tol == 0) {
          // Exact zero check independent of the double conversion.
          const auto& c = x.stored(s, t);
          const ForestBasis& basis = x.basis();
          for (std::size_t i = 0; i < basis.size(); ++i) {
            const auto& fac = basis.factors(i);
            Rational prod = 1;
            for (auto k : fac) prod *= c[k];
            if (prod != c[i]) {
              report.fail("pair (" + std::to_string(s) + "," + std::to_string(t) +
                          ") not multiplicative at {" + encode(basis.forest(i)) + "}");
              break;
            }
          }
        }
      }
    }
  return report;
}

template <class S>
CheckReport check_characters(const AnisotropicRP<S>& x, double tol) {
  CheckReport report("shuffle character (anisotropic)");
  const Grid& g = x.grid();
  const WordBasis& basis = x.basis();
  const auto& table = basis.shuffle_table();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t) {
      ++report.checked;
      const auto& c = x.at(s, t);
      for (const auto& e : table) {
        S lhs(0);
        for (const auto& [w, k] : e.terms) {
          S term = c[w];
          if (k != 1) term *= static_cast<long>(k);
          lhs += term;
        }
        S diff = lhs - c[e.u] * c[e.v];
        report.max_defect = std::max(report.max_defect, magnitude(diff));
        if (exceeds(diff, tol)) {
          report.fail("pair (" + std::to_string(s) + "," + std::to_string(t) + "): (" +
                      encode(basis.word(e.u)) + ") ⧢ (" + encode(basis.word(e.v)) + ") defect " +
                      to_string(diff));
          break;
        }
      }
    }
  return report;
}

template <class S>
std::vector<HolderRow> holder_report(const BranchedRP<S>& x) {
  const Grid& g = x.grid();
  const ForestBasis& basis = x.basis();
  std::vector<HolderRow> rows;
  for (auto i : basis.tree_indices()) {
    const Tree& t = basis.forest(i).as_tree();
    HolderRow row{encode(t), tree_weight(t, x.gamma()), 0.0};
    for (std::size_t s = 0; s < g.points(); ++s)
      for (std::size_t u = s + 1; u < g.points(); ++u) {
        const double len = g.time(u) - g.time(s);
        const double q = std::fabs(to_double(x.stored(s, u)[i])) / std::pow(len, row.exponent);
        row.sup_quotient = std::max(row.sup_quotient, q);
      }
    rows.push_back(row);
  }
  return rows;
}

template <class S>
std::vector<HolderRow> holder_report(const AnisotropicRP<S>& x) {
  const Grid& g = x.grid();
  const WordBasis& basis = x.basis();
  std::vector<HolderRow> rows;
  for (std::size_t i = 1; i < basis.size(); ++i) {
    const Word& w = basis.word(i);
    HolderRow row{"(" + encode(w) + ")", x.alphabet().gamma_hat() * weight(w, x.alphabet()), 0.0};
    for (std::size_t s = 0; s < g.points(); ++s)
      for (std::size_t u = s + 1; u < g.points(); ++u) {
        const double len = g.time(u) - g.time(s);
        const double q = std::fabs(to_double(x.at(s, u)[i])) / std::pow(len, row.exponent);
        row.sup_quotient = std::max(row.sup_quotient, q);
      }
    rows.push_back(row);
  }
  return rows;
}

template <class S>
BranchedRP<S> apply_renorm(const RenormMatrix& m, const BranchedRP<S>& x, bool verify) {
  if (m.basis().size() != x.basis().size())
    throw std::invalid_argument("renormalisation matrix truncation differs from the path");
  if (verify) {
    const CheckReport co = check_cointeraction(m, x.truncation());
    if (!co.passed) throw std::invalid_argument("renormalisation map rejected: " + co.counterexample);
    const CheckReport an = check_analytic_condition(m, x.gamma());
    if (!an.passed) throw std::invalid_argument("renormalisation map rejected: " + an.counterexample);
  }
  std::vector<Character<S>> values;
  values.reserve(x.values().size());
  for (const auto& c : x.values()) values.push_back(apply_adjoint(m, c));
  return BranchedRP<S>(x.grid(), x.gamma(), x.basis_ptr(), std::move(values));
}

template <class S>
double max_abs_difference(const BranchedRP<S>& a, const BranchedRP<S>& b) {
  if (!(a.grid() == b.grid()) || a.values().size() != b.values().size())
    throw std::invalid_argument("paths on different grids");
  double worst = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    worst = std::max(worst, max_abs_difference(a.values()[i], b.values()[i]));
  return worst;
}

#define ROUGHREN_INSTANTIATE(S)                                                                   \
  template class BranchedRP<S>;                                                                    \
  template class AnisotropicRP<S>;                                                                 \
  template Character<S> lift_interval<S>(const DriverPath&, const ForestBasisPtr&, const Rational&, \
                                         const Rational&);                                         \
  template BranchedRP<S> canonical_lift<S>(const DriverPath&, int, double, int);                   \
  template CheckReport check_chen(const BranchedRP<S>&, double, ChenSweep);                        \
  template CheckReport check_chen(const AnisotropicRP<S>&, double, ChenSweep);                     \
  template CheckReport check_characters(const BranchedRP<S>&, double);                             \
  template CheckReport check_characters(const AnisotropicRP<S>&, double);                          \
  template std::vector<HolderRow> holder_report(const BranchedRP<S>&);                             \
  template std::vector<HolderRow> holder_report(const AnisotropicRP<S>&);                          \
  template BranchedRP<S> apply_renorm(const RenormMatrix&, const BranchedRP<S>&, bool);            \
  template double max_abs_difference(const BranchedRP<S>&, const BranchedRP<S>&);

ROUGHREN_INSTANTIATE(double)
ROUGHREN_INSTANTIATE(Rational)

#undef ROUGHREN_INSTANTIATE

}  // namespace roughren
