#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "freemv/geometry.hpp"
#include "freemv/pwl.hpp"

namespace freemv {

/// Formula of Lukasiewicz logic over 0, 1, x1..xn, !, and the binary
/// connectives + (oplus), . (odot), & (min), | (max), - (ominus).
struct Term {
  enum class Kind { Zero, One, Var, Neg, Oplus, Odot, Min, Max, Ominus };

  Kind kind = Kind::Zero;
  std::size_t var = 0;  // 1-based, Kind::Var only
  std::shared_ptr<const Term> lhs;
  std::shared_ptr<const Term> rhs;

  static Term zero() { return {}; }
  static Term one() { return {Kind::One, 0, nullptr, nullptr}; }
  static Term variable(std::size_t i) { return {Kind::Var, i, nullptr, nullptr}; }
  static Term negation(Term t);
  static Term binary(Kind k, Term a, Term b);
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: term := '0' | '1' | 'x'INT | '!' term | '(' term OP term ')'.
/// Throws ParseError on malformed input and std::out_of_range for an index > n.
Term parse_term(std::string_view src, std::size_t n);

std::string to_string(const Term& t);

/// Largest variable index appearing in t (0 when there is none).
std::size_t max_variable(const Term& t);
std::size_t depth(const Term& t);

/// Piecewise-linear realization through generator and connective.
PwlFunction term_to_pwl(const Term& t, std::size_t n);

/// Direct min/max arithmetic at p; independent of the complex machinery.
Rational eval_term(const Term& t, const Point& p);

/// Lipschitz constant w.r.t. the sup norm, from the syntax tree.
Rational lipschitz_bound(const Term& t);

/// Random term over x1..xn of depth <= max_depth.
Term random_term(std::size_t n, std::size_t max_depth, std::mt19937_64& rng);

}  // namespace freemv
