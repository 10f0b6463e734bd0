#include "freemv/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace freemv::json {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t index_value(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw std::invalid_argument("expected a nonnegative integer");
  return j.get<std::size_t>();
}

}  // namespace

Json encode(const Rational& q) { return to_string(q); }

Rational decode_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational string");
}

Json encode(const Point& p) {
  Json a = Json::array();
  for (const auto& x : p.coords) a.push_back(encode(x));
  return a;
}

Point decode_point(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a coordinate list");
  Point p;
  for (const auto& x : j) p.coords.push_back(decode_rational(x));
  return p;
}

Json encode(const Complex& c) {
  Json vs = Json::array();
  for (const auto& v : c.vertices) vs.push_back(encode(v));
  Json cs = Json::array();
  for (const auto& cell : c.cells) cs.push_back(cell);
  return Json{{"ambient_dim", c.ambient_dim}, {"vertices", vs}, {"cells", cs}};
}

Complex decode_complex(const Json& j) {
  Complex c;
  c.ambient_dim = index_value(field(j, "ambient_dim"));
  for (const auto& v : field(j, "vertices")) {
    Point p = decode_point(v);
    if (p.dim() != c.ambient_dim) throw std::invalid_argument("vertex of wrong dimension");
    c.vertices.push_back(std::move(p));
  }
  for (const auto& cell : field(j, "cells")) {
    if (!cell.is_array() || cell.size() != c.ambient_dim + 1) throw std::invalid_argument("cell is not a simplex");
    std::vector<std::size_t> idx;
    for (const auto& i : cell) {
      std::size_t k = index_value(i);
      if (k >= c.vertices.size()) throw std::invalid_argument("cell refers to a missing vertex");
      idx.push_back(k);
    }
    c.cells.push_back(std::move(idx));
  }
  return c;
}

Json encode(const PwlFunction& f) {
  Json forms = Json::array();
  for (const auto& a : f.forms()) {
    Json row = Json::array();
    for (const auto& x : a.a) row.push_back(encode(x));
    row.push_back(encode(a.b));
    forms.push_back(std::move(row));
  }
  return Json{{"n", f.n()}, {"complex", encode(f.complex())}, {"forms", forms}};
}

PwlFunction decode_function(const Json& j) {
  const std::size_t n = index_value(field(j, "n"));
  Complex c = decode_complex(field(j, "complex"));
  if (c.ambient_dim != n) throw std::invalid_argument("complex dimension differs from n");
  std::vector<AffineForm> forms;
  for (const auto& row : field(j, "forms")) {
    if (!row.is_array() || row.size() != n + 1) throw std::invalid_argument("form needs n+1 coefficients");
    AffineForm a{Vector(n), 0};
    for (std::size_t i = 0; i < n; ++i) a.a[i] = decode_rational(row[i]);
    a.b = decode_rational(row[n]);
    forms.push_back(std::move(a));
  }
  return PwlFunction(std::move(c), std::move(forms));
}

Json encode(const PwlMap& m) {
  Json ms = Json::array();
  for (const auto& p : m.matrices()) {
    Json row = Json::array();
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < p.cols(); ++c) row.push_back(encode(p(r, c)));
    ms.push_back(std::move(row));
  }
  return Json{{"n", m.n()}, {"complex", encode(m.complex())}, {"matrices", ms}};
}

PwlMap decode_map(const Json& j) {
  const std::size_t n = index_value(field(j, "n"));
  Complex c = decode_complex(field(j, "complex"));
  if (c.ambient_dim != n) throw std::invalid_argument("complex dimension differs from n");
  std::vector<Matrix> ms;
  for (const auto& row : field(j, "matrices")) {
    if (!row.is_array() || row.size() != (n + 1) * (n + 1))
      throw std::invalid_argument("matrix needs (n+1)^2 entries");
    Matrix m(n + 1, n + 1);
    for (std::size_t r = 0; r <= n; ++r)
      for (std::size_t col = 0; col <= n; ++col) m(r, col) = decode_rational(row[r * (n + 1) + col]);
    ms.push_back(std::move(m));
  }
  return PwlMap(std::move(c), std::move(ms));
}

Json encode(const StateSpec& s) {
  struct Visitor {
    Json operator()(const Lebesgue&) const { return Json{{"kind", "lebesgue"}}; }
    Json operator()(const FareyCounting& f) const { return Json{{"kind", "farey"}, {"d", f.d}}; }
    Json operator()(const Mixture& m) const {
      Json parts = Json::array();
      for (const auto& [w, st] : m.parts) parts.push_back(Json::array({encode(w), encode(st)}));
      return Json{{"kind", "mixture"}, {"parts", parts}};
    }
    Json operator()(const PushForward& p) const {
      return Json{{"kind", "pushforward"}, {"base", encode(*p.base)}, {"map", encode(p.map->map())}};
    }
  };
  return std::visit(Visitor{}, s.v);
}

StateSpec decode_state(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "lebesgue") return StateSpec::lebesgue();
  if (kind == "farey") return StateSpec::farey(index_value(field(j, "d")));
  if (kind == "mixture") {
    std::vector<std::pair<Rational, StateSpec>> parts;
    for (const auto& p : field(j, "parts")) {
      if (p.is_array() && p.size() == 2)
        parts.emplace_back(decode_rational(p[0]), decode_state(p[1]));
      else
        parts.emplace_back(decode_rational(field(p, "weight")), decode_state(field(p, "state")));
    }
    return StateSpec::mixture(std::move(parts));
  }
  if (kind == "pushforward") {
    const Json& m = field(j, "map");
    Json inline_map;
    if (m.is_string()) {
      std::ifstream in(m.get<std::string>());
      if (!in) throw std::invalid_argument("cannot open map file '" + m.get<std::string>() + "'");
      try {
        inline_map = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("map file is not valid JSON: ") + e.what());
      }
    }
    return StateSpec::pushforward(decode_state(field(j, "base")),
                                  McNaughtonHomeo::certify(decode_map(m.is_string() ? inline_map : m)));
  }
  throw std::invalid_argument("unknown state kind '" + kind + "'");
}

Json encode(const ValidationReport& r) {
  Json fs = Json::array();
  for (const auto& f : r.failures) {
    Json e{{"condition", f.condition}};
    e["cell"] = f.cell ? Json(*f.cell) : Json(nullptr);
    e["detail"] = f.detail;
    fs.push_back(std::move(e));
  }
  return Json{{"passed", r.passed}, {"failures", fs}};
}

Json encode(const InvarianceReport& r) {
  Json vs = Json::array();
  for (const auto& [a, b] : r.values) vs.push_back(Json{{"value", encode(a)}, {"pushforward", encode(b)}});
  return Json{{"state", r.state}, {"all_equal", r.all_equal}, {"values", vs}};
}

Json encode(const CoherenceReport& r) {
  return Json{{"value_n", encode(r.value_n)}, {"value_n_plus_1", encode(r.value_n_plus_1)}, {"coherent", r.coherent}};
}

Json encode(const FaithfulnessReport& r) {
  Json es = Json::array();
  for (const auto& e : r.entries)
    es.push_back(Json{{"value", encode(e.value)}, {"nonzero_function", e.nonzero_function}, {"ok", e.ok}});
  return Json{{"faithful", r.faithful}, {"entries", es}};
}

Json encode(const TwistPoint& p) { return Json{{"r", encode(p.r)}, {"s", encode(p.s)}}; }

Json encode(const ConjugationReport& r) {
  Json j{{"samples", r.samples}, {"all_equal", r.all_equal}};
  if (r.first_failure)
    j["first_failure"] = Json{{"sample", encode(r.first_failure->sample)},
                              {"map_side", encode(r.first_failure->map_side)},
                              {"chart_side", encode(r.first_failure->chart_side)}};
  else
    j["first_failure"] = nullptr;
  return j;
}

Json encode(const BoxDensityReport& r) {
  Json es = Json::array();
  for (const auto& e : r.estimates)
    es.push_back(Json{{"depth", e.depth},
                      {"origin", encode(e.origin)},
                      {"state_value", encode(e.state_value)},
                      {"lebesgue_value", encode(e.lebesgue_value)},
                      {"ratio", encode(e.ratio)}});
  return Json{{"constant", r.constant}, {"estimates", es}};
}

Json encode(const ell::ConjugacyReport& r) {
  Json j{{"samples", r.samples}, {"all_equal", r.all_equal}};
  if (r.first_failure)
    j["first_failure"] = Json{{"t", encode(r.first_failure->t)},
                              {"via_sigma", encode(r.first_failure->via_sigma)},
                              {"via_cones", encode(r.first_failure->via_cones)},
                              {"via_formula", encode(r.first_failure->via_formula)}};
  else
    j["first_failure"] = nullptr;
  return j;
}

}  // namespace freemv::json
