#include <doctest.h>

#include <cmath>

#include "roughren/branched_rp.hpp"

using namespace roughren;

namespace {

Tree T(std::string_view s) { return decode_tree(s); }
Forest F(std::string_view s) { return decode_forest(s); }

Rational tree_factorial(const Tree& t) {
  Rational f = static_cast<long>(t.size());
  for (const auto& c : t.children()) f *= tree_factorial(c);
  return f;
}

Rational power(const Rational& x, std::size_t n) {
  Rational p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= x;
  return p;
}

/// ∫_s^t (t − u)(2u − 1/2) du for x⁰ = t, x¹ = t² − t/2.
Rational chain_10(const Rational& s, const Rational& t) {
  const auto prim = [&](const Rational& u) -> Rational {
    return t * u * u - t * u / 2 - 2 * u * u * u / 3 + u * u / 4;
  };
  return prim(t) - prim(s);
}

}  // namespace

TEST_CASE("grid indexing") {
  const Grid g(3);
  CHECK(g.points() == 9);
  CHECK(g.pair_count() == 45);
  std::size_t expect = 0;
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t) CHECK(g.pair_index(s, t) == expect++);
  CHECK_THROWS_AS(g.pair_index(3, 2), std::out_of_range);
  CHECK(g.time_exact(2) == Rational(1, 4));
  CHECK_THROWS_AS(Grid(0), std::invalid_argument);
}

TEST_CASE("driver paths") {
  const auto x = DriverPath::polynomial_suite(2);
  CHECK(x.dimension() == 2);
  CHECK(x.value_exact(0, Rational(1, 3)) == Rational(1, 3));
  CHECK(x.value_exact(2, Rational(1, 2)) == Rational(1, 8) - Rational(1, 6));
  const auto w = DriverPath::random_walk(2, 4, 11);
  CHECK(w.samples()[0][16] == 1.0);
  CHECK(w.samples()[1][0] == 0.0);
  CHECK(w.value(1, 1.0 / 16) == w.samples()[1][1]);
  const auto w2 = DriverPath::random_walk(2, 4, 11);
  CHECK(w.samples() == w2.samples());
  CHECK_THROWS_AS(DriverPath::piecewise_linear(2, {{0, 1}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("canonical lift against closed forms") {
  const auto x = DriverPath::polynomial_suite(1);
  const auto path = canonical_lift<Rational>(x, 4, 0.24, 3);
  const Grid& g = path.grid();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t) {
      const Rational a = g.time_exact(s), b = g.time_exact(t);
      const auto& c = path.stored(s, t);
      CHECK(c.value(T("1[]")) == x.value_exact(1, b) - x.value_exact(1, a));
      CHECK(c.value(T("1[0[]]")) == chain_10(a, b));
      // Trees decorated by 0 only see x⁰ = t.
      for (const auto& tr : path.basis().trees())
        if (tr.zero_count() == tr.size())
          CHECK(c.value(tr) == power(b - a, tr.size()) / tree_factorial(tr));
      CHECK(c.value(F("1[] 0[]")) == c.value(T("1[]")) * c.value(T("0[]")));
    }
}

TEST_CASE("exact Chen and direct interval lift") {
  const auto x = DriverPath::polynomial_suite(1);
  const auto path = canonical_lift<Rational>(x, 4, 0.24, 3);
  const auto full = check_chen(path, 0.0, ChenSweep::full);
  CHECK(full.passed);
  CHECK(full.max_defect == 0.0);
  CHECK(check_chen(path, 0.0, ChenSweep::adjacent).passed);
  const Grid& g = path.grid();
  for (auto [s, t] : {std::pair<std::size_t, std::size_t>{0, 8}, {2, 7}, {3, 4}}) {
    const auto direct = lift_interval<Rational>(x, path.basis_ptr(), g.time_exact(s), g.time_exact(t));
    CHECK(direct.values() == path.stored(s, t).values());
  }
  // X_ts is the inverse of X_st.
  const auto back = convolve(path.at(2, 6), path.at(6, 2));
  CHECK(back.values() == Character<Rational>(path.basis_ptr()).values());
}

TEST_CASE("float lift agrees with the exact lift") {
  const auto x = DriverPath::polynomial_suite(2);
  const auto e = canonical_lift<Rational>(x, 3, 0.3, 3);
  const auto f = canonical_lift<double>(x, 3, 0.3, 3);
  double worst = 0;
  for (std::size_t k = 0; k < e.values().size(); ++k)
    for (std::size_t i = 0; i < e.basis().size(); ++i)
      worst = std::max(worst, std::fabs(e.values()[k][i].get_d() - f.values()[k][i]));
  CHECK(worst < 1e-14);
}

TEST_CASE("Chen detects single mutations") {
  const auto x = DriverPath::polynomial_suite(1);
  const auto path = canonical_lift<Rational>(x, 4, 0.24, 2);
  const std::size_t i = path.basis().index(T("1[0[]]"));
  const auto bad = path.with_entry(1, 3, i, path.stored(1, 3)[i] + Rational(1, 1000));
  const auto r = check_chen(bad, 0.0);
  CHECK_FALSE(r.passed);
  CHECK(r.counterexample.find("1[0[]]") != std::string::npos);
  CHECK_FALSE(check_chen(bad, 0.0, ChenSweep::adjacent).passed);
  // Forest entries only break multiplicativity.
  const std::size_t j = path.basis().index(F("1[] 1[]"));
  const auto bad2 = path.with_entry(0, 4, j, Rational(7));
  CHECK_FALSE(check_characters(bad2, 0.0).passed);
  CHECK_FALSE(check_chen(bad2, 0.0).passed);
}

TEST_CASE("random walk lift in float mode") {
  const auto x = DriverPath::random_walk(1, 5, 42);
  const auto path = canonical_lift<double>(x, 4, 0.24, 5);
  CHECK(check_chen(path, 1e-10, ChenSweep::full).passed);
  // First-level increments reproduce the samples.
  const std::size_t i = path.basis().index(T("1[]"));
  CHECK(path.stored(3, 17)[i] == doctest::Approx(x.samples()[1][17] - x.samples()[1][3]).epsilon(1e-13));
  CHECK_THROWS_AS(canonical_lift<double>(x, 4, 0.24, 4), std::invalid_argument);
  // A finer grid than the samples is allowed.
  const auto fine = canonical_lift<double>(x, 3, 0.24, 6);
  CHECK(fine.stored(0, 64)[fine.basis().index(T("1[]"))] ==
        doctest::Approx(x.samples()[1][32]).epsilon(1e-13));
}

TEST_CASE("Hölder quotients") {
  const auto c = canonical_lift<double>(DriverPath::constant(1), 3, 0.3, 3);
  for (const auto& row : holder_report(c)) CHECK(row.sup_quotient == 0.0);
  const auto lin = canonical_lift<double>(DriverPath::polynomial({{0, 1}, {0}}), 3, 0.3, 3);
  for (const auto& row : holder_report(lin)) {
    if (row.label == "0[]") CHECK(row.sup_quotient == doctest::Approx(1.0));
    if (row.label == "1[]") CHECK(row.sup_quotient == 0.0);
  }
}

TEST_CASE("renormalised paths") {
  const auto x = DriverPath::polynomial_suite(1);
  const auto path = canonical_lift<Rational>(x, 4, 0.24, 3);
  const auto same = apply_renorm(RenormMatrix::identity(path.basis_ptr()), path);
  CHECK(max_abs_difference(same, path) == 0.0);

  const BphzCharacter v({{T("1[1[]]"), Rational(1, 2)}});
  const auto m = bphz_map(v, path.basis_ptr());
  const auto hat = apply_renorm(m, path);
  const Grid& g = path.grid();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t) {
      const Rational dt = g.time_exact(t) - g.time_exact(s);
      CHECK(hat.stored(s, t).value(T("1[1[]]")) ==
            path.stored(s, t).value(T("1[1[]]")) + Rational(1, 2) * dt);
      CHECK(hat.stored(s, t).value(T("1[]")) == path.stored(s, t).value(T("1[]")));
    }
  CHECK(check_chen(hat, 0.0).passed);

  // M* is a convolution morphism.
  const auto& a = path.stored(0, 3);
  const auto& b = path.stored(3, 8);
  CHECK(apply_adjoint(m, convolve(a, b)).values() ==
        convolve(apply_adjoint(m, a), apply_adjoint(m, b)).values());

  ForestComb image{Forest(T("1[1[]]"))};
  image.add(F("0[]"), Rational(5, 2));
  const LocalMaps naive = local_map(LocalRule({{T("1[1[]]"), image}}, 0.24), path.basis_ptr());
  CHECK_THROWS_AS(apply_renorm(naive.m, path), std::invalid_argument);
  CHECK_FALSE(check_chen(apply_renorm(naive.m, path, false), 0.0).passed);
}
