#include "roughren/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "roughren/tree_word_maps.hpp"

namespace roughren {

namespace {

constexpr double kFloatTol = 1e-10;

using Coproduct = std::function<TensorComb(const Forest&)>;

Tree T(std::string_view s) { return decode_tree(s); }

// ---------------------------------------------------------------- helpers

std::string pair_label(std::size_t s, std::size_t t) {
  return "(s,t) = (" + std::to_string(s) + "," + std::to_string(t) + ")";
}

template <class S>
CheckReport compare_paths(const BranchedRP<S>& a, const BranchedRP<S>& b, double tol, std::string name) {
  CheckReport r(std::move(name));
  const Grid& g = a.grid();
  for (std::size_t s = 0; s < g.points(); ++s)
    for (std::size_t t = s; t < g.points(); ++t) {
      const auto& x = a.stored(s, t);
      const auto& y = b.stored(s, t);
      for (std::size_t i = 0; i < a.basis().size(); ++i) {
        ++r.checked;
        const S diff = x[i] - y[i];
        r.max_defect = std::max(r.max_defect, magnitude(diff));
        if (exceeds(diff, tol))
          r.fail(pair_label(s, t) + ", forest " + encode(a.basis().forest(i)) + ": difference " +
                 to_string(diff));
      }
    }
  return r;
}

CheckReport renamed(CheckReport r, const std::string& prefix) {
  r.name = prefix + ": " + r.name;
  return r;
}

// Trunk ⊗ pruned forest over all admissible edge cuts, found by enumerating
// edge subsets of a flattened tree; shares no code with the B⁺ recursion.
struct Flat {
  std::vector<int> parent;
  std::vector<Decoration> dec;
};

void flatten(const Tree& t, int parent, Flat& out) {
  const int me = static_cast<int>(out.dec.size());
  out.parent.push_back(parent);
  out.dec.push_back(t.decoration());
  for (const auto& c : t.children()) flatten(c, me, out);
}

Tree rebuild(const Flat& f, const std::vector<bool>& keep, int root) {
  std::vector<Tree> kids;
  for (int v = 0; v < static_cast<int>(f.dec.size()); ++v)
    if (keep[v] && f.parent[v] == root) kids.push_back(rebuild(f, keep, v));
  return Tree(f.dec[root], std::move(kids));
}

TensorComb brute_cuts(const Tree& t) {
  Flat f;
  flatten(t, -1, f);
  const int n = static_cast<int>(f.dec.size());
  TensorComb out({Forest(), Forest(t)});
  const auto above = [&](int a, int b) {  // a strict ancestor of b
    for (int p = f.parent[b]; p >= 0; p = f.parent[p])
      if (p == a) return true;
    return false;
  };
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<bool> cut(n, false);
    for (int v = 1; v < n; ++v) cut[v] = (mask >> (v - 1)) & 1u;
    bool ok = true;
    for (int a = 1; a < n && ok; ++a)
      for (int b = 1; b < n && ok; ++b)
        if (cut[a] && cut[b] && above(a, b)) ok = false;
    if (!ok) continue;
    std::vector<bool> keep(n), all(n, true);
    for (int v = 0; v < n; ++v) keep[v] = !cut[v];
    std::vector<Tree> pruned;
    for (int v = 1; v < n; ++v)
      if (cut[v]) pruned.push_back(rebuild(f, all, v));
    out.add({Forest(rebuild(f, keep, 0)), Forest(std::move(pruned))}, 1);
  }
  return out;
}

TensorComb brute_cuts(const Forest& f) {
  TensorComb out({Forest(), Forest()});
  for (const auto& t : f.trees()) out = tensor_product(out, brute_cuts(t));
  return out;
}

Tensor3Comb coassoc_left(const Coproduct& cp, const Forest& f) {
  Tensor3Comb out;
  for (const auto& [k, c] : cp(f))
    for (const auto& [k2, c2] : cp(k.first)) out.add({k2.first, k2.second, k.second}, c * c2);
  return out;
}

Tensor3Comb coassoc_right(const Coproduct& cp, const Forest& f) {
  Tensor3Comb out;
  for (const auto& [k, c] : cp(f))
    for (const auto& [k2, c2] : cp(k.second)) out.add({k.first, k2.first, k2.second}, c * c2);
  return out;
}

BphzCharacter rule_a_values() { return BphzCharacter({{T("1[1[]]"), Rational(1, 2)}}); }
BphzCharacter rule_b_values() {
  return BphzCharacter({{T("1[1[]]"), Rational(-1, 3)},
                        {T("1[1[1[]]]"), Rational(2, 5)},
                        {T("1[1[] 1[]]"), Rational(3, 7)}});
}

// ---------------------------------------------------------------- context

class Context {
 public:
  explicit Context(const AcceptanceOptions& o)
      : o_(o),
        cfg_(o.config),
        depth_(o.mutate ? std::min(o.config.grid_depth, 3) : o.config.grid_depth) {
    cfg_.validate();
    RunConfig iso = cfg_;
    iso.truncation = o.iso_truncation;
    iso.gamma = o.iso_gamma;
    iso.validate();
  }

  bool mutated(int id) const { return o_.mutate && *o_.mutate == id; }
  const RunConfig& cfg() const { return cfg_; }
  const AcceptanceOptions& options() const { return o_; }
  int depth() const { return depth_; }

  const ForestBasisPtr& basis() {
    if (!basis_) basis_ = make_forest_basis(cfg_.truncation, cfg_.d);
    return basis_;
  }
  BphzCharacter random_v(int k, int n) const {
    return BphzCharacter::random(n, cfg_.d, cfg_.seed + static_cast<std::uint64_t>(k));
  }
  const BranchedRP<Rational>& poly() {
    if (!poly_) poly_ = canonical_lift<Rational>(DriverPath::polynomial_suite(cfg_.d), cfg_.truncation, cfg_.gamma, depth_);
    return *poly_;
  }
  const BranchedRP<double>& walk() {
    if (!walk_)
      walk_ = canonical_lift<double>(DriverPath::random_walk(cfg_.d, depth_, cfg_.seed), cfg_.truncation,
                                     cfg_.gamma, depth_);
    return *walk_;
  }

 private:
  const AcceptanceOptions& o_;
  RunConfig cfg_;
  int depth_;
  ForestBasisPtr basis_;
  std::optional<BranchedRP<Rational>> poly_;
  std::optional<BranchedRP<double>> walk_;
};

// ---------------------------------------------------------------- criteria

void c1_hopf(Context& cx, CriterionResult& out) {
  const int n = cx.cfg().truncation, d = cx.cfg().d;
  const Forest target(T("1[1[]]"));
  Coproduct cp = [](const Forest& f) { return coproduct_ck(f); };
  if (cx.mutated(1))
    cp = [target](const Forest& f) {
      TensorComb x = coproduct_ck(f);
      if (f == target) x.add({Forest(T("1[]")), Forest(T("1[]"))}, 1);
      return x;
    };
  const auto forests = enumerate_forests(n, d);

  CheckReport coassoc("(Δ⊗id)Δ = (id⊗Δ)Δ");
  CheckReport anti("m(𝒜⊗id)Δ = m(id⊗𝒜)Δ = 𝟏*·𝟏");
  CheckReport mult("Δ(fg) = Δ(f)Δ(g)");
  CheckReport cuts("admissible cuts = B⁺ recursion");
  for (const auto& f : forests) {
    ++coassoc.checked;
    if (!(coassoc_left(cp, f) == coassoc_right(cp, f)))
      coassoc.fail("forest " + encode(f) + ": " + to_string(coassoc_left(cp, f) - coassoc_right(cp, f)));

    ForestComb left, right;
    for (const auto& [k, c] : cp(f)) {
      ForestComb l = forest_product(antipode(k.first), ForestComb(k.second));
      l *= c;
      left += l;
      ForestComb r = forest_product(ForestComb(k.first), antipode(k.second));
      r *= c;
      right += r;
    }
    const ForestComb counit = f.empty() ? unit_comb() : ForestComb();
    ++anti.checked;
    if (!(left == counit)) anti.fail("forest " + encode(f) + ", left: " + to_string(left - counit));
    if (!(right == counit)) anti.fail("forest " + encode(f) + ", right: " + to_string(right - counit));

    ++cuts.checked;
    if (!(cp(f) == brute_cuts(f))) cuts.fail("forest " + encode(f) + ": " + to_string(cp(f) - brute_cuts(f)));
  }
  for (const auto& f : forests)
    for (const auto& g : forests) {
      if (f.size() + g.size() > static_cast<std::size_t>(n) || f.empty() || g.empty()) continue;
      ++mult.checked;
      const TensorComb lhs = cp(f * g), rhs = tensor_product(cp(f), cp(g));
      if (!(lhs == rhs)) mult.fail("forests " + encode(f) + " · " + encode(g) + ": " + to_string(lhs - rhs));
    }
  out.reports = {coassoc, anti, mult, cuts};
}

void c2_cointeract(Context& cx, CriterionResult& out) {
  ExtractionCoproduct ex;
  if (cx.mutated(2)) {
    const Forest target(T("1[1[]]"));
    ex = [target](const Forest& f) {
      TensorComb x = coproduct_extraction(f);
      if (f == target) x.add({Forest(T("1[]")), Forest(T("0[1[]]"))}, 1);
      return x;
    };
  }
  out.reports.push_back(check_cointeract_13_2_4(3, cx.cfg().d, ex));
}

struct NamedMap {
  std::string name;
  RenormMatrix m;
};

std::vector<NamedMap> bphz_maps(Context& cx, int count, const ForestBasisPtr& basis, int n) {
  std::vector<NamedMap> out;
  for (int k = 1; k <= count; ++k)
    out.push_back({"v" + std::to_string(k), bphz_map(cx.random_v(k, n), basis)});
  return out;
}

void c3_renorm(Context& cx, CriterionResult& out) {
  const auto& basis = cx.basis();
  const int n = cx.cfg().truncation, d = cx.cfg().d;
  const double gamma = cx.cfg().gamma;
  auto maps = bphz_maps(cx, 3, basis, n);

  if (cx.mutated(3)) {
    const auto col = basis->index(T("1[1[]]")), row = basis->index(T("1[]"));
    out.reports.push_back(
        renamed(check_cointeraction(maps[0].m.with_entry(col, row, 7), n), "v1 with ⟨M(1[1[]]), 1[]⟩ set to 7"));
    return;
  }

  // Identity rule: the local identities must hold, otherwise the red below is vacuous.
  const LocalMaps id_maps = local_map(LocalRule({}, gamma), basis);
  for (const auto& r : check_local_cointeractions(id_maps, n)) out.reports.push_back(renamed(r, "identity rule"));
  for (const auto& r : check_admissible(LocalRule({}, gamma), n, d)) out.reports.push_back(renamed(r, "identity rule"));

  std::vector<std::size_t> expected_red;
  const std::pair<std::string, BphzCharacter> rules[] = {{"rule A", rule_a_values()}, {"rule B", rule_b_values()}};
  for (const auto& [name, v] : rules) {
    const LocalRule rule = root_extraction_rule(v, n, d, gamma);
    LocalMaps lm = local_map(rule, basis);
    CheckReport same(name + ": M_R = M_v");
    ++same.checked;
    if (!(lm.m == bphz_map(v, basis))) same.fail("local map differs from the BPHZ map of the same values");
    out.reports.push_back(same);
    for (const auto& r : check_local_cointeractions(lm, n)) {
      expected_red.push_back(out.reports.size());
      out.reports.push_back(renamed(r, name));
    }
    for (const auto& r : check_admissible(rule, n, d)) {
      expected_red.push_back(out.reports.size());
      out.reports.push_back(renamed(r, name));
    }
    maps.push_back({name, std::move(lm.m)});
  }

  const auto& x = cx.poly();
  for (const auto& [name, m] : maps) {
    out.reports.push_back(renamed(check_cointeraction(m, n), name));
    out.reports.push_back(renamed(check_analytic_condition(m, gamma), name));
    out.reports.push_back(renamed(check_multiplicative(m), name));
    if (name[0] == 'v') {
      const auto xh = apply_renorm(m, x);
      out.reports.push_back(renamed(check_chen(xh, 0.0, ChenSweep::full), name + " renormalised path"));
      out.reports.push_back(renamed(check_characters(xh, 0.0), name + " renormalised path"));
    }
  }

  bool others_pass = true, reds_fail = true;
  for (std::size_t i = 0; i < out.reports.size(); ++i) {
    const bool red = std::find(expected_red.begin(), expected_red.end(), i) != expected_red.end();
    if (red) reds_fail = reds_fail && !out.reports[i].passed;
    else others_pass = others_pass && out.reports[i].passed;
  }
  if (others_pass && reds_fail && !expected_red.empty()) {
    out.known_red = true;
    out.analysis = {
        "Cointeraction (M⊗M)Δ = ΔM, the analytic condition and multiplicativity hold exactly for all five maps; "
        "renormalised paths of v1..v3 satisfy Chen exactly on every grid triple.",
        "ΔM = (M⊗M°)Δ fails for rules A and B under both slot placements of M°. Its 𝟏⊗· component reads "
        "𝟏⊗Mτ = 𝟏⊗M°τ, so M and M° agree on trees, which forces R = id on trees.",
        "ΔM° = (M°⊗M°)Δ fails for the same reason once M° moves a branch.",
        "The admissibility condition (R⊗id)Δ = ΔR has the component 𝟏⊗Rτ = 𝟏⊗τ and so also holds only for R = id.",
        "With the identity rule every one of these identities holds exactly, so the failures are not artefacts "
        "of the check.",
    };
  }
}

void c4_bar(Context& cx, CriterionResult& out) {
  const auto& basis = cx.basis();
  const int n = cx.cfg().truncation;
  const double gamma = cx.cfg().gamma;
  if (cx.mutated(4)) {
    const auto m = bphz_map(cx.random_v(1, n), basis);
    const auto col = basis->index(T("1[1[]]")), row = basis->index(T("1[0[]]"));
    out.reports.push_back(
        renamed(check_bar_square(m.with_entry(col, row, 7), 3), "v1 with ⟨M(1[1[]]), 1[0[]]⟩ set to 7"));
    return;
  }
  auto maps = bphz_maps(cx, 3, basis, n);
  maps.insert(maps.begin(), {"identity", RenormMatrix::identity(basis)});
  maps.push_back({"rule A", local_map(root_extraction_rule(rule_a_values(), n, cx.cfg().d, gamma), basis).m});
  maps.push_back({"rule B", local_map(root_extraction_rule(rule_b_values(), n, cx.cfg().d, gamma), basis).m});
  for (const auto& [name, m] : maps) {
    CheckReport accepted = check_cointeraction(m, n);
    accepted.merge(check_analytic_condition(m, gamma));
    if (!accepted.passed) {
      out.reports.push_back(renamed(accepted, name + " not accepted"));
      continue;
    }
    out.reports.push_back(renamed(check_bar_square(m, 3), name));
  }
}

void c5_transfer(Context& cx, CriterionResult& out) {
  const auto& x = cx.poly();
  const auto xbar = branched_to_anisotropic(x, 0.0);
  if (cx.mutated(5)) {
    const std::size_t w = xbar.basis().index(Word{T("1[]"), T("0[]")});
    const auto bad = xbar.with_entry(1, 2, w, xbar.at(1, 2)[w] + 1);
    out.reports.push_back(renamed(check_transfer(x, bad, 0.0), "X̄ with one word entry shifted"));
    return;
  }
  out.reports.push_back(renamed(check_transfer(x, xbar, 0.0), "polynomial suite"));
  out.reports.push_back(renamed(check_chen(xbar, 0.0, ChenSweep::full), "polynomial suite X̄"));
  out.reports.push_back(renamed(check_characters(xbar, 0.0), "polynomial suite X̄"));

  const auto& y = cx.walk();
  const auto ybar = branched_to_anisotropic(y, kFloatTol);
  out.reports.push_back(renamed(check_transfer(y, ybar, kFloatTol), "random walk"));
  out.reports.push_back(renamed(check_chen(ybar, kFloatTol, ChenSweep::full), "random walk X̄"));
  out.reports.push_back(renamed(check_characters(ybar, kFloatTol), "random walk X̄"));
}

template <class S>
GFamily<S> shifted(const GFamily<S>& g, const Tree& t, std::size_t k, S delta) {
  auto paths = g.paths();
  paths.at(t).at(k) += delta;
  return GFamily<S>(g.grid(), std::move(paths));
}

void c6_g(Context& cx, CriterionResult& out) {
  const auto& x = cx.poly();
  const auto& basis = x.basis_ptr();
  const int n = cx.cfg().truncation, d = cx.cfg().d;
  const BphzCharacter v1 = cx.random_v(1, n);
  const auto m1 = bphz_map(v1, basis);

  if (cx.mutated(6)) {
    const auto rec = g_from_renorm_recursive(m1, x, 0.0);
    const auto exp = g_from_renorm_explicit(m1, x, 0.0);
    out.reports.push_back(compare_g(shifted(rec, T("1[1[]]"), 2, Rational(1, 64)), exp, 0.0,
                                    "v1, recursive g shifted at one point"));
    return;
  }

  const std::vector<NamedMap> maps = {
      {"v1", m1},
      {"rule B", local_map(root_extraction_rule(rule_b_values(), n, d, cx.cfg().gamma), basis).m}};
  for (const auto& [name, m] : maps) {
    CheckReport additivity("recursive increments additive");
    const auto rec = g_from_renorm_recursive(m, x, 0.0, &additivity);
    const auto exp = g_from_renorm_explicit(m, x, 0.0);
    out.reports.push_back(renamed(additivity, name));
    out.reports.push_back(compare_g(rec, exp, 0.0, name + ": explicit = recursive"));
    if (name != "v1") continue;
    CheckReport level1("v1: g^•ᵢ increment = v(•ᵢ)⟨X,•₀⟩");
    const Grid& g = x.grid();
    for (Decoration i = 1; i <= d; ++i) {
      const Tree dot(i);
      for (std::size_t s = 0; s < g.points(); ++s)
        for (std::size_t t = s; t < g.points(); ++t) {
          ++level1.checked;
          const Rational diff = rec.increment(dot, s, t) - v1.value(dot) * x.stored(s, t).value(Tree(0));
          if (!is_zero(diff)) level1.fail(pair_label(s, t) + ", letter " + encode(dot) + ": " + to_string(diff));
        }
    }
    out.reports.push_back(level1);
  }

  const auto& y = cx.walk();
  const auto mf = bphz_map(v1, y.basis_ptr());
  CheckReport additivity("recursive increments additive");
  const auto rec = g_from_renorm_recursive(mf, y, kFloatTol, &additivity);
  out.reports.push_back(renamed(additivity, "v1 random walk"));
  out.reports.push_back(compare_g(rec, g_from_renorm_explicit(mf, y, kFloatTol), kFloatTol,
                                  "v1 random walk: explicit = recursive"));
}

void c7_action(Context& cx, CriterionResult& out) {
  const auto& y = cx.walk();
  const auto trees = y.basis().trees();
  const auto ga = GFamily<double>::random(y.grid(), trees, cx.cfg().seed + 11, 0.3);
  auto gb = GFamily<double>::random(y.grid(), trees, cx.cfg().seed + 12, 0.3);
  const auto rhs = g_action(ga + gb, y, kFloatTol);
  if (cx.mutated(7)) gb = shifted(gb, T("1[]"), 3, 1e-3);
  const auto lhs = g_action(gb, g_action(ga, y, kFloatTol), kFloatTol);
  out.reports.push_back(compare_paths(lhs, rhs, kFloatTol, "g′(gX) = (g+g′)X, random walk"));
  if (cx.mutated(7)) return;
  out.reports.push_back(
      compare_paths(g_action(GFamily<double>::zero(y.grid()), y, kFloatTol), y, kFloatTol, "0·X = X, random walk"));
}

void c8_iso(Context& cx, CriterionResult& out) {
  const auto& o = cx.options();
  const int n = o.iso_truncation, d = cx.cfg().d;
  const auto basis = GeneratorBasis::compute(n, d);
  const auto x = canonical_lift<Rational>(DriverPath::polynomial_suite(d), n, o.iso_gamma, cx.depth());
  const auto xt = iso_psi(basis, x);
  const auto fb = basis->forest_basis_ptr();

  if (cx.mutated(8)) {
    const auto m = bphz_map(cx.random_v(1, n), fb);
    const TildeMap tm(basis, m);
    WordComb img = tm.letter_image(T("0[]"));
    img.add(Word{T("1[]")}, 1);
    out.reports.push_back(check_commute_iso(basis, m, tm.with_letter_image(T("0[]"), img), x, 0.0));
    return;
  }

  CheckReport audit = basis->audit();
  if (basis->flagged()) audit.notes.push_back("generator search fell back to forest duals");
  out.reports.push_back(renamed(audit, "rank audit"));
  out.reports.push_back(renamed(check_chen(xt, 0.0, ChenSweep::full), "Ψ(X)"));
  out.reports.push_back(renamed(check_characters(xt, 0.0), "Ψ(X)"));
  out.reports.push_back(compare_paths(iso_psi_inverse(basis, xt, o.iso_gamma), x, 0.0, "Ψ⁻¹Ψ(X) = X"));

  std::vector<NamedMap> maps = {{"identity", RenormMatrix::identity(fb)}};
  for (int k = 1; k <= 3; ++k) maps.push_back({"v" + std::to_string(k), bphz_map(cx.random_v(k, n), fb)});
  maps.push_back({"rule A", local_map(root_extraction_rule(rule_a_values(), n, d, o.iso_gamma), fb).m});
  maps.push_back({"rule B", local_map(root_extraction_rule(rule_b_values(), n, d, o.iso_gamma), fb).m});
  for (const auto& [name, m] : maps)
    out.reports.push_back(renamed(check_commute_iso(basis, m, TildeMap(basis, m), x, 0.0), name));
}

const char* const kTitles[] = {
    "",
    "Hopf axioms of the forest algebra",
    "cointeraction of extraction with BCK",
    "renormalisation maps",
    "ψ∘M = M̄∘ψ square",
    "branched to anisotropic transfer",
    "g formulas",
    "additivity of the g action",
    "isomorphism route",
    "mutation sensitivity",
};

CriterionResult run_one(int id, Context& cx);

void c9_mutation(Context& cx, CriterionResult& out) {
  for (int k = 1; k <= 8; ++k) {
    AcceptanceOptions o = cx.options();
    o.mutate = k;
    o.only.clear();
    Context mc(o);
    const CriterionResult r = run_one(k, mc);
    CheckReport rep("perturbed criterion " + std::to_string(k));
    rep.checked = 1;
    if (r.passed) {
      rep.fail("still passes under a single-entry perturbation");
    } else {
      const auto it = std::find_if(r.reports.begin(), r.reports.end(),
                                   [](const CheckReport& c) { return !c.passed; });
      if (it == r.reports.end() || it->counterexample.empty())
        rep.fail("failed without a localized counterexample");
      else
        rep.notes.push_back(it->name + ": " + it->counterexample);
    }
    out.reports.push_back(rep);
  }
}

CriterionResult run_one(int id, Context& cx) {
  CriterionResult out;
  out.id = id;
  out.title = kTitles[id];
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: c1_hopf(cx, out); break;
      case 2: c2_cointeract(cx, out); break;
      case 3: c3_renorm(cx, out); break;
      case 4: c4_bar(cx, out); break;
      case 5: c5_transfer(cx, out); break;
      case 6: c6_g(cx, out); break;
      case 7: c7_action(cx, out); break;
      case 8: c8_iso(cx, out); break;
      case 9: c9_mutation(cx, out); break;
    }
  } catch (const std::exception& e) {
    CheckReport r("exception");
    r.fail(e.what());
    out.reports.push_back(r);
    out.known_red = false;
  }
  out.passed = std::all_of(out.reports.begin(), out.reports.end(), [](const CheckReport& r) { return r.passed; });
  if (out.passed) out.known_red = false;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  if (id < 1 || id > 9) throw std::invalid_argument("criteria are numbered 1..9");
  Context cx(options);
  return run_one(id, cx);
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  for (int id : options.only)
    if (id < 1 || id > 9) throw std::invalid_argument("criteria are numbered 1..9");
  if (options.mutate && (*options.mutate < 1 || *options.mutate > 8))
    throw std::invalid_argument("mutations exist for criteria 1..8");
  Context cx(options);
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id)
    if (options.only.empty() || options.only.count(id)) out.push_back(run_one(id, cx));
  return out;
}

bool acceptance_ok(const std::vector<CriterionResult>& results, bool strict) {
  return std::all_of(results.begin(), results.end(),
                     [&](const CriterionResult& r) { return r.passed || (!strict && r.known_red); });
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : r.known_red ? "KNOWN-RED" : "FAIL") << "  criterion " << r.id << ": " << r.title;
  std::size_t failed = 0;
  for (const auto& c : r.reports) failed += !c.passed;
  os << " (" << r.reports.size() - failed << "/" << r.reports.size() << " checks)";
  return os.str();
}

Json to_json(const CriterionResult& r) {
  Json reports = Json::array();
  for (const auto& c : r.reports) reports.push_back(to_json(c));
  return Json{{"id", r.id},
              {"title", r.title},
              {"passed", r.passed},
              {"known_red", r.known_red},
              {"analysis", r.analysis},
              {"reports", std::move(reports)}};
}

}  // namespace roughren
