#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "freemv/linalg.hpp"
#include "freemv/rational.hpp"

namespace freemv::ell {

/// Point of the positive cone of R^2, not the origin.
struct ConePoint {
  Rational p1;
  Rational p2;

  static ConePoint make(const Rational& p1, const Rational& p2);
  friend bool operator==(const ConePoint&, const ConePoint&) = default;
};

/// The homogeneous map s on the three cones spanned by (e1, p1), (p1, p2),
/// (p2, e2), where p1 = e1 + e2 and p2 = e1 + 2 e2. It fixes e1, e2 and sends
/// p1 -> 2e1 + e2, p2 -> e1 + e2.
struct ConePiece {
  ConePoint ray_a;
  ConePoint ray_b;
  Matrix matrix;  // 2x2, integer
};

/// Pieces reconstructed from the vertex data above.
const std::array<ConePiece, 3>& cone_pieces();

/// The piecewise-linear map s, evaluated through cone_pieces().
ConePoint apply_cone_map(const ConePoint& p);

/// sigma(x1) = x1 v ((3x1 - x2) ^ (x1 + x2)),  sigma(x2) = (x2 - x1) v (x1 ^ x2).
Rational sigma_eval(int i, const ConePoint& p);

/// Dual map on the 1-simplex parametrized by t -> (1-t) e1 + t e2:
/// t/(1+t) on [0,1/2), (1-t)/(4-5t) on [1/2,2/3), (2t-1)/t on [2/3,1].
Rational dual_S(const Rational& t);

struct ConjugacyFailure {
  Rational t;
  Rational via_sigma;
  Rational via_cones;
  Rational via_formula;
};

struct ConjugacyReport {
  std::size_t samples = 0;
  bool all_equal = true;
  std::optional<ConjugacyFailure> first_failure;
};

/// Normalized cone action (both through sigma_eval and through the cone
/// matrices) against dual_S at `samples` rational points of [0,1].
ConjugacyReport conjugacy_check_simplex(std::size_t samples);

/// t0, S(t0), ..., S^iterations(t0).
std::vector<Rational> orbit(const Rational& t0, std::size_t iterations);
/// Double-precision orbit for long runs.
std::vector<double> orbit_float(double t0, std::size_t iterations);

}  // namespace freemv::ell
