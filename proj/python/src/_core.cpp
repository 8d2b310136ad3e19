#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "roughren/acceptance.hpp"
#include "roughren/tree_word_maps.hpp"

namespace py = pybind11;
using namespace roughren;

// Everything crosses the boundary as JSON text; the Python package decodes it.
namespace {

RunConfig make_config(int d, int n, double gamma, int depth, std::uint64_t seed) {
  RunConfig c;
  c.d = d;
  c.truncation = n;
  c.gamma = gamma;
  c.grid_depth = depth;
  c.seed = seed;
  c.validate();
  return c;
}

DriverPath driver(const std::string& kind, const RunConfig& c) {
  if (kind == "polynomial") return DriverPath::polynomial_suite(c.d);
  if (kind == "walk") return DriverPath::random_walk(c.d, c.grid_depth, c.seed);
  throw std::invalid_argument("driver must be polynomial or walk");
}

template <class S>
std::string lift_checked(const std::string& kind, const RunConfig& c) {
  const auto x = canonical_lift<S>(driver(kind, c), c.truncation, c.gamma, c.grid_depth);
  const double tol = is_exact_v<S> ? 0.0 : 1e-10;
  const auto xbar = branched_to_anisotropic(x, tol);
  Json reports = Json::array({to_json(check_chen(x, tol)), to_json(check_characters(x, tol)),
                              to_json(check_transfer(x, xbar, tol))});
  return Json{{"path", to_json(x)}, {"reports", reports}}.dump();
}

template <class S>
std::string g_table(const std::string& character, const std::string& kind, const RunConfig& c) {
  const auto x = canonical_lift<S>(driver(kind, c), c.truncation, c.gamma, c.grid_depth);
  const double tol = is_exact_v<S> ? 0.0 : 1e-10;
  const auto m = bphz_map(bphz_from_json(Json::parse(character)), x.basis_ptr());
  const auto rec = g_from_renorm_recursive(m, x, tol);
  const auto exp = g_from_renorm_explicit(m, x, tol);
  return Json{{"csv", g_table_csv<S>({{"recursive", &rec}, {"explicit", &exp}})},
              {"report", to_json(compare_g(rec, exp, tol, "explicit = recursive"))}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<std::domain_error>(m, "CheckError", PyExc_ArithmeticError);

  m.def("enumerate_trees", [](int n, int d) {
    std::vector<std::string> out;
    for (const auto& t : enumerate_trees(n, d)) out.push_back(encode(t));
    return out;
  });
  m.def("canonical", [](const std::string& t) { return encode(decode_tree(t)); });
  m.def("coproduct", [](const std::string& f) { return to_json(coproduct_ck(decode_forest(f))).dump(); });
  m.def("antipode", [](const std::string& f) { return to_json(antipode(decode_forest(f))).dump(); });
  m.def("extraction", [](const std::string& f) { return to_json(coproduct_extraction(decode_forest(f))).dump(); });
  m.def("psi", [](const std::string& f) { return to_json(psi(decode_forest(f))).dump(); });
  m.def("arborify", [](const std::string& f) { return to_json(arborify(decode_forest(f))).dump(); });
  m.def("shuffle", [](const std::string& u, const std::string& v) {
    return to_json(shuffle(decode_word(u), decode_word(v))).dump();
  });
  m.def("renorm_check", [](const std::string& character, int n, int d, double gamma) {
    const auto basis = make_forest_basis(n, d);
    const auto mm = bphz_map(bphz_from_json(Json::parse(character)), basis);
    return Json::array({to_json(check_cointeraction(mm, n)), to_json(check_analytic_condition(mm, gamma)),
                        to_json(check_bar_square(mm, std::min(n, 3)))})
        .dump();
  });
  m.def(
      "lift",
      [](const std::string& kind, bool exact, int d, int n, double gamma, int depth, std::uint64_t seed) {
        const auto c = make_config(d, n, gamma, depth, seed);
        return exact ? lift_checked<Rational>(kind, c) : lift_checked<double>(kind, c);
      },
      py::arg("driver"), py::arg("exact"), py::arg("d"), py::arg("n"), py::arg("gamma"), py::arg("depth"),
      py::arg("seed"));
  m.def(
      "g_table",
      [](const std::string& character, const std::string& kind, bool exact, int d, int n, double gamma, int depth,
         std::uint64_t seed) {
        const auto c = make_config(d, n, gamma, depth, seed);
        return exact ? g_table<Rational>(character, kind, c) : g_table<double>(character, kind, c);
      },
      py::arg("character"), py::arg("driver"), py::arg("exact"), py::arg("d"), py::arg("n"), py::arg("gamma"),
      py::arg("depth"), py::arg("seed"));
  m.def(
      "verify",
      [](std::vector<int> only, std::optional<int> mutate, int depth) {
        AcceptanceOptions o;
        o.config.grid_depth = depth;
        o.only.insert(only.begin(), only.end());
        o.mutate = mutate;
        std::vector<CriterionResult> rs;
        {
          py::gil_scoped_release release;
          rs = run_acceptance(o);
        }
        Json out = Json::array();
        for (const auto& r : rs) out.push_back(to_json(r));
        return out.dump();
      },
      py::arg("only"), py::arg("mutate") = std::nullopt, py::arg("depth") = 6);
}
