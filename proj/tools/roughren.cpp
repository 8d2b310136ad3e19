#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "roughren/acceptance.hpp"
#include "roughren/tree_word_maps.hpp"

using namespace roughren;

namespace {

// Exit codes: 0 ok, 1 a check failed, 2 bad input, 3 internal error.
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct Cli {
  RunConfig cfg = default_config();
  std::string mode = "exact";
  std::string driver = "polynomial";
  std::string path_file;
  std::string renorm_file;
  std::optional<std::uint64_t> random_v;
};

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int status(bool passed) { return passed ? 0 : kCheckFailed; }

Json reports_json(const std::vector<CheckReport>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) out.push_back(to_json(r));
  return out;
}

bool all_passed(const std::vector<CheckReport>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckReport& r) { return r.passed; });
}

std::filesystem::path out_file(const Cli& c, const std::string& name) { return c.cfg.output_dir / name; }

/// Values as "p/q" strings; missing trees count as 0.
template <class S>
Character<S> character_from_json(const Json& j, const ForestBasisPtr& basis) {
  std::map<Tree, Rational> v;
  for (const auto& [k, x] : j.items())
    v.emplace(decode_tree(k), parse_rational(x.is_string() ? x.template get<std::string>() : x.dump()));
  return Character<S>::from_tree_values(basis, [&](const Tree& t) {
    auto it = v.find(t);
    return it == v.end() ? S(0) : roughren::from_rational<S>(it->second);
  });
}

template <class S>
Json tree_values_json(const Character<S>& x) {
  Json out = Json::object();
  for (auto i : x.basis().tree_indices()) out[encode(x.basis().forest(i))] = to_string(x[i]);
  return out;
}

/// A character file maps trees to numbers; a rule file maps trees to combinations.
RenormMatrix load_renorm(const Cli& c, const ForestBasisPtr& basis, double gamma) {
  if (c.random_v)
    return bphz_map(BphzCharacter::random(basis->truncation(), basis->alphabet_bound(), *c.random_v), basis);
  if (c.renorm_file.empty()) throw std::invalid_argument("give --renorm FILE or --random SEED");
  const Json j = read_json_file(c.renorm_file);
  if (!j.is_object() || j.empty()) throw std::invalid_argument("renormalisation file must be a non-empty object");
  if (j.begin().value().is_array()) {
    const auto rule = local_rule_from_json(j, gamma, RuleOrder::loosened);
    return local_map(rule, basis).m;
  }
  return bphz_map(bphz_from_json(j), basis);
}

Json matrix_json(const RenormMatrix& m) {
  Json cols = Json::array();
  for (auto i : m.basis().tree_indices()) {
    const Forest& f = m.basis().forest(i);
    cols.push_back(Json{{"tree", encode(f)}, {"image", to_json(m.apply(f))}});
  }
  return Json{{"label", m.label()},
              {"truncation", m.basis().truncation()},
              {"alphabet_bound", m.basis().alphabet_bound()},
              {"dropped_terms", m.dropped_terms()},
              {"trees", std::move(cols)}};
}

template <class S>
BranchedRP<S> load_path(const Cli& c) {
  if (!c.path_file.empty()) {
    auto x = branched_from_json<S>(read_json_file(c.path_file));
    return x;
  }
  const DriverPath drv = c.driver == "polynomial" ? DriverPath::polynomial_suite(c.cfg.d)
                         : c.driver == "walk"     ? DriverPath::random_walk(c.cfg.d, c.cfg.grid_depth, c.cfg.seed)
                                                  : throw std::invalid_argument("driver must be polynomial or walk");
  return canonical_lift<S>(drv, c.cfg.truncation, c.cfg.gamma, c.cfg.grid_depth);
}

double tol_for(Mode m) { return m == Mode::exact ? 0.0 : 1e-10; }

template <class S>
int dispatch_rp(const Cli& c, const std::string& what) {
  const double tol = tol_for(c.cfg.mode);
  if (what == "lift") {
    const auto x = load_path<S>(c);
    write_json_file(out_file(c, "rp_lift.json"), to_json(x));
    print(Json{{"written", out_file(c, "rp_lift.json").string()}, {"pairs", x.grid().pair_count()}});
    return 0;
  }
  const auto x = load_path<S>(c);
  if (what == "chen") {
    const std::vector<CheckReport> rs = {check_chen(x, tol), check_characters(x, tol)};
    print(reports_json(rs));
    return status(all_passed(rs));
  }
  print(to_json(holder_report(x)));
  return 0;
}

template <class S>
int dispatch_renorm(const Cli& c, const std::string& what) {
  const auto basis = make_forest_basis(c.cfg.truncation, c.cfg.d);
  const RenormMatrix m = load_renorm(c, basis, c.cfg.gamma);
  if (what == "build") {
    write_json_file(out_file(c, "renorm_matrix.json"), matrix_json(m));
    print(matrix_json(m));
    return 0;
  }
  if (what == "check") {
    std::vector<CheckReport> rs = {check_cointeraction(m, c.cfg.truncation),
                                   check_analytic_condition(m, c.cfg.gamma), check_multiplicative(m)};
    if (all_passed(rs)) rs.push_back(check_bar_square(m, std::min(3, c.cfg.truncation)));
    print(reports_json(rs));
    return status(all_passed(rs));
  }
  const auto x = load_path<S>(c);
  const auto xh = apply_renorm(m, x);
  write_json_file(out_file(c, "renormalised.json"), to_json(xh));
  const std::vector<CheckReport> rs = {check_chen(xh, tol_for(c.cfg.mode))};
  print(Json{{"written", out_file(c, "renormalised.json").string()}, {"reports", reports_json(rs)}});
  return status(all_passed(rs));
}

template <class S>
int dispatch_transfer(const Cli& c, const std::string& what, const std::string& formula) {
  const double tol = tol_for(c.cfg.mode);
  const auto x = load_path<S>(c);
  if (what == "run") {
    const auto xbar = branched_to_anisotropic(x, tol);
    write_json_file(out_file(c, "transfer.json"), to_json(xbar));
    const std::vector<CheckReport> rs = {check_transfer(x, xbar, tol), check_chen(xbar, tol, ChenSweep::adjacent),
                                         check_characters(xbar, tol)};
    print(Json{{"written", out_file(c, "transfer.json").string()}, {"reports", reports_json(rs)}});
    return status(all_passed(rs));
  }
  const RenormMatrix m = load_renorm(c, x.basis_ptr(), c.cfg.gamma);
  std::map<std::string, GFamily<S>> fams;
  std::vector<CheckReport> rs;
  if (formula == "recursive" || formula == "both") {
    CheckReport additivity("recursive increments additive");
    fams.emplace("recursive", g_from_renorm_recursive(m, x, tol, &additivity));
    rs.push_back(additivity);
  }
  if (formula == "explicit" || formula == "both") fams.emplace("explicit", g_from_renorm_explicit(m, x, tol));
  if (fams.size() == 2) rs.push_back(compare_g(fams.at("recursive"), fams.at("explicit"), tol, "explicit = recursive"));
  std::map<std::string, const GFamily<S>*> view;
  for (const auto& [k, v] : fams) view.emplace(k, &v);
  write_text_file(out_file(c, "g_table.csv"), g_table_csv(view));
  Json holder = Json::object();
  for (const auto& [k, v] : fams) holder[k] = to_json(holder_report(v, c.cfg.gamma));
  const Json summary{{"written", Json::array({out_file(c, "g_table.csv").string(), out_file(c, "g_table.json").string()})},
                     {"map", m.label()},
                     {"holder", holder},
                     {"reports", reports_json(rs)}};
  write_json_file(out_file(c, "g_table.json"), summary);
  print(summary);
  return status(all_passed(rs));
}

template <class S>
int dispatch_iso(const Cli& c, const std::string& what) {
  const double tol = tol_for(c.cfg.mode);
  const auto basis = GeneratorBasis::compute(c.cfg.truncation, c.cfg.d);
  if (what == "basis") {
    write_json_file(out_file(c, "iso_basis.json"), to_json(*basis));
    print(Json{{"written", out_file(c, "iso_basis.json").string()},
               {"generators", basis->generators().size()},
               {"flagged", basis->flagged()},
               {"audit", to_json(basis->audit())}});
    return status(basis->audit().passed);
  }
  const auto x = load_path<S>(c);
  if (what == "transfer") {
    const auto xt = iso_psi(basis, x);
    write_json_file(out_file(c, "iso_transfer.json"), to_json(xt));
    const std::vector<CheckReport> rs = {check_chen(xt, tol), check_characters(xt, tol)};
    print(Json{{"written", out_file(c, "iso_transfer.json").string()}, {"reports", reports_json(rs)}});
    return status(all_passed(rs));
  }
  const RenormMatrix m = load_renorm(c, basis->forest_basis_ptr(), c.cfg.gamma);
  const std::vector<CheckReport> rs = {check_commute_iso(basis, m, TildeMap(basis, m), x, tol)};
  print(reports_json(rs));
  return status(all_passed(rs));
}

template <class F>
int by_mode(const Cli& c, F&& f) {
  return c.cfg.mode == Mode::exact ? f(Rational{}) : f(double{});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branched and anisotropic rough paths, renormalisation and transfer"};
  app.require_subcommand(1);
  app.fallthrough();
  Cli c;
  app.add_option("-d,--d", c.cfg.d, "driver dimension d (decorations 0..d)");
  app.add_option("-N,--truncation", c.cfg.truncation, "truncation N");
  app.add_option("-g,--gamma", c.cfg.gamma, "Hölder exponent γ (γN ≤ 1 < γ(N+1))");
  app.add_option("-D,--depth", c.cfg.grid_depth, "dyadic grid depth");
  app.add_option("--mode", c.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--seed", c.cfg.seed, "seed for random drivers");
  app.add_option("--out", c.cfg.output_dir, "output directory (default: $ROUGHREN_OUT or roughren_out)");
  app.add_option("--driver", c.driver, "polynomial or walk")->check(CLI::IsMember({"polynomial", "walk"}));
  app.add_option("--path", c.path_file, "branched path dump to load instead of lifting a driver");
  app.add_option("--renorm", c.renorm_file, "BPHZ character or local rule JSON");
  app.add_option("--random", c.random_v, "use a random BPHZ character with this seed");

  // trees
  auto* trees = app.add_subcommand("trees", "rooted decorated trees");
  int n = 2;
  auto* t_enum = trees->add_subcommand("enumerate", "all trees with at most n nodes");
  t_enum->add_option("--n", n, "maximal size")->check(CLI::Range(1, 7));
  auto* t_enc = trees->add_subcommand("encode", "canonical form of a tree");
  std::string arg, arg2;
  t_enc->add_option("tree", arg)->required();
  trees->require_subcommand(1);

  // hopf
  auto* hopf = app.add_subcommand("hopf", "forest Hopf algebra");
  hopf->require_subcommand(1);
  for (const char* name : {"coproduct", "antipode", "extract"})
    hopf->add_subcommand(name)->add_option("forest", arg)->required();
  auto* h_conv = hopf->add_subcommand("convolve", "X ⋆ Y of two characters given as {tree: value} files");
  h_conv->add_option("x", arg)->required();
  h_conv->add_option("y", arg2)->required();

  // words
  auto* words = app.add_subcommand("words", "shuffle algebra");
  words->require_subcommand(1);
  auto* w_sh = words->add_subcommand("shuffle");
  w_sh->add_option("u", arg)->required();
  w_sh->add_option("v", arg2)->required();
  words->add_subcommand("weight", "ω(w) with letter weights from γ")->add_option("word", arg)->required();

  // maps
  auto* maps = app.add_subcommand("maps", "forests to words");
  maps->require_subcommand(1);
  for (const char* name : {"psi", "arborify"}) maps->add_subcommand(name)->add_option("forest", arg)->required();

  auto* renorm = app.add_subcommand("renorm", "renormalisation maps");
  renorm->require_subcommand(1);
  for (const char* name : {"build", "check", "apply"}) renorm->add_subcommand(name);

  auto* rp = app.add_subcommand("rp", "branched rough paths");
  rp->require_subcommand(1);
  for (const char* name : {"lift", "chen", "holder"}) rp->add_subcommand(name);

  auto* transfer = app.add_subcommand("transfer", "branched to anisotropic transfer and g");
  transfer->require_subcommand(1);
  transfer->add_subcommand("run");
  std::string formula = "both";
  transfer->add_subcommand("g-table")
      ->add_option("--formula", formula)
      ->check(CLI::IsMember({"recursive", "explicit", "both"}));

  auto* iso = app.add_subcommand("iso", "generator basis and the isomorphism route");
  iso->require_subcommand(1);
  for (const char* name : {"basis", "transfer", "check"}) iso->add_subcommand(name);

  auto* verify = app.add_subcommand("verify", "acceptance suites");
  verify->require_subcommand(1);
  auto* v_all = verify->add_subcommand("all", "run every criterion; exit 0 iff all pass");
  bool strict = false;
  std::optional<int> mutate;
  std::vector<int> only;
  v_all->add_flag("--strict", strict, "known-red criteria also make the exit status nonzero");
  v_all->add_option("--mutate", mutate, "inject a perturbation into criterion 1..8")->check(CLI::Range(1, 8));
  v_all->add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 9));

  CLI11_PARSE(app, argc, argv);

  try {
    c.cfg.mode = parse_mode(c.mode);
    if (!c.renorm_file.empty()) {
      const Json j = read_json_file(c.renorm_file);
      (j.is_object() && !j.empty() && j.begin().value().is_array() ? c.cfg.rule_file : c.cfg.character_file) =
          c.renorm_file;
    }
    c.cfg.validate();
    const auto* sub = app.get_subcommands().front();
    const std::string leaf = sub->get_subcommands().empty() ? "" : sub->get_subcommands().front()->get_name();
    const std::string top = sub->get_name();

    if (top == "trees") {
      if (leaf == "enumerate") {
        Json out = Json::array();
        for (const auto& t : enumerate_trees(n, c.cfg.d)) out.push_back(encode(t));
        print(out);
      } else {
        const Tree t = decode_tree(arg, c.cfg.d);
        print(Json{{"tree", encode(t)}, {"size", t.size()}});
      }
      return 0;
    }
    if (top == "hopf") {
      if (leaf == "convolve") {
        const auto basis = make_forest_basis(c.cfg.truncation, c.cfg.d);
        return by_mode(c, [&](auto s) {
          using S = decltype(s);
          const auto x = character_from_json<S>(read_json_file(arg), basis);
          const auto y = character_from_json<S>(read_json_file(arg2), basis);
          print(tree_values_json(convolve(x, y)));
          return 0;
        });
      }
      const Forest f = decode_forest(arg, c.cfg.d);
      if (leaf == "coproduct") print(to_json(coproduct_ck(f)));
      else if (leaf == "antipode") print(to_json(antipode(f)));
      else print(to_json(coproduct_extraction(f)));
      return 0;
    }
    if (top == "words") {
      if (leaf == "shuffle") {
        print(to_json(shuffle(decode_word(arg, c.cfg.d), decode_word(arg2, c.cfg.d))));
      } else {
        const Word w = decode_word(arg, c.cfg.d);
        const auto alphabet = WeightedAlphabet::from_trees(enumerate_trees(c.cfg.truncation, c.cfg.d), c.cfg.gamma);
        print(Json{{"word", encode(w)}, {"weight", weight(w, alphabet)}});
      }
      return 0;
    }
    if (top == "maps") {
      const Forest f = decode_forest(arg, c.cfg.d);
      print(to_json(leaf == "psi" ? psi(f) : arborify(f)));
      return 0;
    }
    if (top == "renorm") return by_mode(c, [&](auto s) { return dispatch_renorm<decltype(s)>(c, leaf); });
    if (top == "rp") return by_mode(c, [&](auto s) { return dispatch_rp<decltype(s)>(c, leaf); });
    if (top == "transfer") {
      if (!lv_admissible(transfer_alphabet(c.cfg.truncation, c.cfg.d, c.cfg.gamma), c.cfg.truncation))
        throw std::invalid_argument("alphabet weights are not admissible for the extension");
      return by_mode(c, [&](auto s) { return dispatch_transfer<decltype(s)>(c, leaf, formula); });
    }
    if (top == "iso") return by_mode(c, [&](auto s) { return dispatch_iso<decltype(s)>(c, leaf); });

    AcceptanceOptions opts;
    opts.config = c.cfg;
    opts.mutate = mutate;
    opts.only.insert(only.begin(), only.end());
    const auto results = run_acceptance(opts);
    Json report = Json::array();
    for (const auto& r : results) {
      std::cout << summary_line(r) << "\n";
      for (const auto& rep : r.reports)
        if (!rep.passed) std::cout << "    " << rep.name << ": " << rep.counterexample << "\n";
      report.push_back(to_json(r));
    }
    const bool ok = acceptance_ok(results, strict);
    write_json_file(out_file(c, "verify.json"), Json{{"ok", ok}, {"strict", strict}, {"criteria", report}});
    std::cout << (ok ? "verify: OK" : "verify: FAILED") << "\n";
    return status(ok);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
