#pragma once

#include <cstddef>
#include <vector>

#include "freemv/geometry.hpp"

namespace freemv {

class PwlMap;

/// A McNaughton function: a cube-covering complex with one affine form per
/// top cell. Construction through the public factories and connectives keeps
/// continuity and the [0,1] range; check_invariants() re-verifies both.
class PwlFunction {
 public:
  PwlFunction(Complex complex, std::vector<AffineForm> forms);

  static PwlFunction constant(std::size_t n, const Rational& c);
  /// The i-th projection, 1 <= i <= n.
  static PwlFunction generator(std::size_t n, std::size_t i);

  std::size_t n() const { return complex_.ambient_dim; }
  const Complex& complex() const { return complex_; }
  const std::vector<AffineForm>& forms() const { return forms_; }

  /// Throws std::domain_error on a continuity or range violation.
  void check_invariants() const;
  bool has_integral_forms() const;
  /// All forms identically zero.
  bool is_zero() const;

 private:
  Complex complex_;
  std::vector<AffineForm> forms_;
};

enum class Connective { Neg, Oplus, Odot, Ominus, Min, Max };

PwlFunction generator(std::size_t n, std::size_t i);

/// `g` is ignored for Neg.
PwlFunction connective(Connective kind, const PwlFunction& f, const PwlFunction* g = nullptr);

PwlFunction neg(const PwlFunction& f);
PwlFunction oplus(const PwlFunction& f, const PwlFunction& g);
PwlFunction odot(const PwlFunction& f, const PwlFunction& g);
PwlFunction ominus(const PwlFunction& f, const PwlFunction& g);
PwlFunction meet(const PwlFunction& f, const PwlFunction& g);
PwlFunction join(const PwlFunction& f, const PwlFunction& g);

/// f (+) f (+) ... (+) f, k times, by direct scaling and truncation.
PwlFunction k_fold(const PwlFunction& f, unsigned k);
/// Same value built from k - 1 oplus applications.
PwlFunction k_fold_iterated(const PwlFunction& f, unsigned k);

/// Throws std::out_of_range for p outside the cube.
Rational eval(const PwlFunction& f, const Point& p);

struct ZeroSetReport {
  std::vector<Simplex> faces;
  bool has_interior = false;
};

ZeroSetReport zero_set(const PwlFunction& f);
bool is_pseudotrue(const PwlFunction& f);
/// lambda(supp f) = 1 - volume of the cells carrying the zero form.
Rational support_volume(const PwlFunction& f);

/// Exact Lebesgue integral over [0,1]^n.
Rational integrate(const PwlFunction& f);

/// f o S. Throws std::invalid_argument on dimension mismatch.
PwlFunction compose(const PwlFunction& f, const PwlMap& s);

/// (x_1..x_m) -> f(x_1..x_n), m > n, on a staircase product triangulation.
PwlFunction cylinder(const PwlFunction& f, std::size_t m);

/// Same function on the common refinement of its complex with `c`.
PwlFunction restrict_to(const PwlFunction& f, const Complex& c);

namespace detail {
/// Cell-wise choice between two forms according to the sign of a third.
/// On pieces where diff <= 0 the `lo` form is used, otherwise `hi`.
/// Range and continuity are not checked; callers guarantee them.
struct FormTriple {
  AffineForm diff, lo, hi;
};
std::pair<Complex, std::vector<AffineForm>> select_by_sign(const Complex& c, const std::vector<FormTriple>& forms);
}  // namespace detail

}  // namespace freemv
