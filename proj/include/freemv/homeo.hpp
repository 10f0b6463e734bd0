#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freemv/geometry.hpp"

namespace freemv {

/// Piecewise-affine self-map of [0,1]^n: a cube-covering complex with one
/// homogeneous (n+1)x(n+1) matrix per top cell.
class PwlMap {
 public:
  PwlMap(Complex complex, std::vector<Matrix> matrices);

  static PwlMap identity(std::size_t n);

  std::size_t n() const { return complex_.ambient_dim; }
  const Complex& complex() const { return complex_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

 private:
  Complex complex_;
  std::vector<Matrix> matrices_;
};

struct ValidationFailure {
  std::string condition;  // last_row, integrality, determinant, continuity, range, tiling, structure
  std::optional<std::size_t> cell;
  std::string detail;
};

struct ValidationReport {
  bool passed = true;
  std::vector<ValidationFailure> failures;
};

/// Checks the defining conditions of a McNaughton homeomorphism: last row
/// (0..0 1), integer entries, determinants all +1 or all -1, continuity across
/// shared vertices, vertex images in the cube, and that image cells tile the
/// cube (volumes sum to 1, pairwise overlaps have empty interior).
ValidationReport validate(const PwlMap& m);

/// A PwlMap that passed validate().
class McNaughtonHomeo {
 public:
  /// Throws std::invalid_argument carrying the first failure when m is invalid.
  static McNaughtonHomeo certify(PwlMap m);

  const PwlMap& map() const { return map_; }
  std::size_t n() const { return map_.n(); }
  /// +1 or -1, shared by every piece.
  int determinant_sign() const { return det_sign_; }

  operator const PwlMap&() const { return map_; }  // NOLINT(google-explicit-constructor)

 private:
  McNaughtonHomeo(PwlMap m, int sign) : map_(std::move(m)), det_sign_(sign) {}
  friend McNaughtonHomeo compose_homeos(const McNaughtonHomeo&, const McNaughtonHomeo&);
  friend McNaughtonHomeo invert_map(const McNaughtonHomeo&);

  PwlMap map_;
  int det_sign_;
};

/// Throws std::out_of_range for p outside the cube.
Point apply_map(const PwlMap& m, const Point& p);

/// a o b, coarsened.
PwlMap compose_maps(const PwlMap& a, const PwlMap& b);
/// Same map on fewer cells: equal-matrix neighbors with a convex union are merged.
PwlMap coarsen(const PwlMap& m);
/// Group product; closure makes revalidation unnecessary.
McNaughtonHomeo compose_homeos(const McNaughtonHomeo& a, const McNaughtonHomeo& b);
McNaughtonHomeo invert_map(const McNaughtonHomeo& a);
/// m composed with itself `times` times (times >= 1).
PwlMap power(const PwlMap& m, unsigned times);

/// x_i -> x_{perm[i]} or 1 - x_{perm[i]} when flip[i]; perm is 1-based.
McNaughtonHomeo gen_symmetry(std::size_t n, const std::vector<std::size_t>& perm, const std::vector<bool>& flip);

/// Square vertices p^h_i = (h+1:h:2h+1), (h+1:h+1:2h+1), (h:h+1:2h+1), (h:h:2h+1).
Point p_point(unsigned h, unsigned i);
/// Rhombus vertices q^h_i = (h+2:h+1:2h+2), (h+1:h+2:2h+2), (h:h+1:2h+2), (h+1:h:2h+2).
Point q_point(unsigned h, unsigned i);

/// Quarter turn of the inner square Q(k+1), identity outside Q(k).
McNaughtonHomeo gen_R_prime(unsigned k);
McNaughtonHomeo gen_R(unsigned k);
/// Quarter turn of the inner rhombus; pieces have non-integer entries.
PwlMap gen_S_prime(unsigned k);
McNaughtonHomeo gen_S(unsigned k);

/// Index of the piece of gen_R_prime(k) on <p^{k+1}_0, p^k_0, p^k_1>.
std::size_t r_prime_reference_cell(unsigned k);

/// Deterministic product of `length` generators drawn with the given seed.
/// n = 2 draws from square symmetries, R_k and S_k (k <= 3); other n from
/// coordinate symmetries only.
McNaughtonHomeo random_word(std::size_t n, std::uint64_t seed, std::size_t length);

}  // namespace freemv
