#pragma once

#include <json.hpp>

#include "freemv/dynamics.hpp"
#include "freemv/ellgroup.hpp"
#include "freemv/homeo.hpp"
#include "freemv/measures.hpp"
#include "freemv/pwl.hpp"

// JSON encodings. Every exact value is a "p/q" (or "p") string; parse errors
// surface as std::invalid_argument.
namespace freemv::json {

using Json = nlohmann::ordered_json;

Json encode(const Rational& q);
Rational decode_rational(const Json& j);

Json encode(const Point& p);
Point decode_point(const Json& j);

/// {ambient_dim, vertices: [[..]], cells: [[vertex indices]]}
Json encode(const Complex& c);
Complex decode_complex(const Json& j);

/// {n, complex, forms: [[a_1..a_n, b]]}
Json encode(const PwlFunction& f);
PwlFunction decode_function(const Json& j);

/// {n, complex, matrices: [[row-major entries]]}
Json encode(const PwlMap& m);
PwlMap decode_map(const Json& j);

/// {"kind": "lebesgue"} | {"kind": "farey", "d": D} |
/// {"kind": "mixture", "parts": [["p/q", {...}], ...]} |
/// {"kind": "pushforward", "base": {...}, "map": {...} or "file.json"}
Json encode(const StateSpec& s);
/// Push-forward maps are certified; a non-McNaughton map is rejected.
StateSpec decode_state(const Json& j);

Json encode(const ValidationReport& r);
Json encode(const InvarianceReport& r);
Json encode(const CoherenceReport& r);
Json encode(const FaithfulnessReport& r);
Json encode(const TwistPoint& p);
Json encode(const ConjugationReport& r);
Json encode(const BoxDensityReport& r);
Json encode(const ell::ConjugacyReport& r);

}  // namespace freemv::json
