#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "freemv/homeo.hpp"
#include "freemv/pwl.hpp"

namespace freemv {

struct StateSpec;

struct Lebesgue {};

/// Uniform counting measure on A^n_d, the points of denominator exactly d.
struct FareyCounting {
  unsigned long d = 1;
};

struct Mixture {
  std::vector<std::pair<Rational, StateSpec>> parts;
};

/// (S_* base)(f) = base(f o S).
struct PushForward {
  std::shared_ptr<const StateSpec> base;
  std::shared_ptr<const McNaughtonHomeo> map;
};

/// A state on Free_n, realized as integration against a Borel measure.
struct StateSpec {
  std::variant<Lebesgue, FareyCounting, Mixture, PushForward> v;

  static StateSpec lebesgue() { return {Lebesgue{}}; }
  static StateSpec farey(unsigned long d);
  /// Throws std::invalid_argument unless weights lie in [0,1] and sum to 1.
  static StateSpec mixture(std::vector<std::pair<Rational, StateSpec>> parts);
  static StateSpec pushforward(StateSpec base, McNaughtonHomeo map);
  /// 1/2 Lebesgue + 1/2 FareyCounting(d).
  static StateSpec half_mixture(unsigned long d);

  std::string describe() const;
};

/// Points of [0,1]^n with denominator exactly d, lexicographically sorted.
std::vector<Point> farey_points(std::size_t n, unsigned long d);
/// #A^n_d without materializing the points.
Integer farey_count(std::size_t n, unsigned long d);

Rational state_eval(const StateSpec& s, const PwlFunction& f);

struct InvarianceReport {
  std::string state;
  std::vector<std::pair<Rational, Rational>> values;  // (s(f), (S_* s)(f))
  bool all_equal = true;
};

InvarianceReport invariance_check(const StateSpec& s, const McNaughtonHomeo& map,
                                  const std::vector<PwlFunction>& fs);

struct CoherenceReport {
  Rational value_n;
  Rational value_n_plus_1;
  bool coherent = false;
};

/// Compares mu^n(f) with (pi_* mu^{n+1})(f) = mu^{n+1}(cylinder f), where
/// mu^m = 1/2 lambda + 1/2 nu^m_d.
CoherenceReport coherence_check(unsigned long d, const PwlFunction& f);
/// Same comparison with explicit states on the two cubes.
CoherenceReport coherence_check(const StateSpec& lower, const StateSpec& upper, const PwlFunction& f);

struct FaithfulnessEntry {
  Rational value;
  bool nonzero_function = false;
  bool ok = true;  // nonzero function => positive value
};

struct FaithfulnessReport {
  std::vector<FaithfulnessEntry> entries;
  bool faithful = true;
};

FaithfulnessReport faithfulness_check(const StateSpec& s, const std::vector<PwlFunction>& fs);

}  // namespace freemv
