#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "freemv/dynamics.hpp"
#include "freemv/ellgroup.hpp"
#include "freemv/homeo.hpp"
#include "freemv/json_io.hpp"
#include "freemv/measures.hpp"
#include "freemv/pwl.hpp"
#include "freemv/term.hpp"

namespace py = pybind11;
using namespace freemv;

// Rationals cross the boundary as "p/q" strings; the Python package wraps
// them in fractions.Fraction.
namespace {

using Strings = std::vector<std::string>;

Point to_point(const Strings& xs) {
  Point p;
  for (const auto& x : xs) p.coords.push_back(parse_rational(x));
  return p;
}

Strings from_point(const Point& p) {
  Strings out;
  for (const auto& x : p.coords) out.push_back(to_string(x));
  return out;
}

StateSpec to_state(const std::string& spec) {
  if (spec == "lebesgue") return StateSpec::lebesgue();
  if (spec.rfind("farey:", 0) == 0) return StateSpec::farey(std::stoul(spec.substr(6)));
  if (spec.rfind("mix:", 0) == 0) return StateSpec::half_mixture(std::stoul(spec.substr(4)));
  return json::decode_state(json::Json::parse(spec));
}

ChartKind to_chart(const std::string& kind) {
  if (kind == "R" || kind == "square") return ChartKind::SquareM;
  if (kind == "S" || kind == "rhombus") return ChartKind::RhombusN;
  throw std::invalid_argument("chart kind must be 'R' or 'S'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact McNaughton functions, states and homeomorphisms of the unit cube";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<PwlFunction>(m, "Function")
      .def_static("from_term", [](const std::string& src, std::size_t n) { return term_to_pwl(parse_term(src, n), n); },
                  py::arg("term"), py::arg("n"))
      .def_static("constant", [](std::size_t n, const std::string& c) { return PwlFunction::constant(n, parse_rational(c)); })
      .def_static("generator", [](std::size_t n, std::size_t i) { return generator(n, i); })
      .def_static("from_json", [](const std::string& s) { return json::decode_function(json::Json::parse(s)); })
      .def_property_readonly("n", &PwlFunction::n)
      .def_property_readonly("cells", [](const PwlFunction& f) { return f.complex().size(); })
      .def("eval", [](const PwlFunction& f, const Strings& p) { return to_string(eval(f, to_point(p))); })
      .def("integrate", [](const PwlFunction& f) { return to_string(integrate(f)); })
      .def("support_volume", [](const PwlFunction& f) { return to_string(support_volume(f)); })
      .def("is_pseudotrue", &is_pseudotrue)
      .def("is_zero", &PwlFunction::is_zero)
      .def("k_fold", [](const PwlFunction& f, unsigned k) { return k_fold(f, k); })
      .def("cylinder", [](const PwlFunction& f, std::size_t m) { return cylinder(f, m); })
      .def("compose", [](const PwlFunction& f, const PwlMap& s) { return compose(f, s); })
      .def("neg", [](const PwlFunction& f) { return neg(f); })
      .def("oplus", &oplus)
      .def("odot", &odot)
      .def("ominus", &ominus)
      .def("meet", &meet)
      .def("join", &join)
      .def("to_json", [](const PwlFunction& f) { return json::encode(f).dump(); });

  py::class_<PwlMap>(m, "Map")
      .def_static("from_json", [](const std::string& s) { return json::decode_map(json::Json::parse(s)); })
      .def_static("identity", &PwlMap::identity)
      .def_property_readonly("n", &PwlMap::n)
      .def_property_readonly("cells", [](const PwlMap& f) { return f.complex().size(); })
      .def("apply", [](const PwlMap& s, const Strings& p) { return from_point(apply_map(s, to_point(p))); })
      .def("compose", [](const PwlMap& a, const PwlMap& b) { return compose_maps(a, b); })
      .def("power", &power)
      .def("validate", [](const PwlMap& s) { return json::encode(validate(s)).dump(); })
      .def("to_json", [](const PwlMap& s) { return json::encode(s).dump(); });

  m.def("gen_map", [](const std::string& kind, unsigned k) -> PwlMap {
    if (kind == "Rprime") return gen_R_prime(k).map();
    if (kind == "R") return gen_R(k).map();
    if (kind == "Sprime") return gen_S_prime(k);
    if (kind == "S") return gen_S(k).map();
    throw std::invalid_argument("kind must be one of Rprime, R, Sprime, S");
  }, py::arg("kind"), py::arg("k") = 0);
  m.def("gen_symmetry", [](std::size_t n, const std::vector<std::size_t>& perm, const std::vector<bool>& flip) {
    return gen_symmetry(n, perm, flip).map();
  });
  m.def("random_word", [](std::size_t n, std::uint64_t seed, std::size_t length) {
    return random_word(n, seed, length).map();
  });
  m.def("state_eval", [](const std::string& state, const PwlFunction& f) { return to_string(state_eval(to_state(state), f)); });
  m.def("farey_points", [](std::size_t n, unsigned long d) {
    std::vector<Strings> out;
    for (const auto& p : farey_points(n, d)) out.push_back(from_point(p));
    return out;
  });
  m.def("coherence", [](unsigned long d, const PwlFunction& f) { return json::encode(coherence_check(d, f)).dump(); });
  m.def("invariance", [](const std::string& state, const PwlMap& s, const std::vector<PwlFunction>& fs) {
    return json::encode(invariance_check(to_state(state), McNaughtonHomeo::certify(s), fs)).dump();
  });
  m.def("conjugation_check", [](const std::string& kind, unsigned k, std::size_t samples) {
    return json::encode(conjugation_check(to_chart(kind), k, samples)).dump();
  });
  m.def("twist_param", [](const std::string& kind, unsigned k, const std::string& r) {
    return to_string(twist_param(to_chart(kind), k, parse_rational(r)));
  });
  m.def("birkhoff", &birkhoff_equidistribution, py::arg("k"), py::arg("alpha"), py::arg("iterations") = 100000,
        py::arg("bins") = 16);
  m.def("dual_S", [](const std::string& t) { return to_string(ell::dual_S(parse_rational(t))); });
  m.def("orbit", [](const std::string& t0, std::size_t iterations) {
    Strings out;
    for (const auto& t : ell::orbit(parse_rational(t0), iterations)) out.push_back(to_string(t));
    return out;
  });
}
