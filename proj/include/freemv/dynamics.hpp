#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "freemv/geometry.hpp"
#include "freemv/homeo.hpp"
#include "freemv/measures.hpp"

namespace freemv {

/// Polar point (r, theta) of the unit disk, with the angle stored as
/// s = theta / pi in (-1, 1] so that both charts stay rational.
struct TwistPoint {
  Rational r;
  Rational s;

  /// Throws std::domain_error unless r in [0,1]; s is wrapped into (-1,1].
  static TwistPoint make(const Rational& r, const Rational& s);

  friend bool operator==(const TwistPoint&, const TwistPoint&) = default;
};

/// SquareM maps the disk onto the unit square (level sets Q_r are squares),
/// RhombusN onto the rhombus E with vertices q^0_i (level sets V_r).
enum class ChartKind { SquareM, RhombusN };

Point chart(ChartKind kind, const TwistPoint& p);
/// Throws std::domain_error for q outside the chart's image.
TwistPoint chart_inverse(ChartKind kind, const Point& q);

/// t_k(r) = min(1, max(0, 1/(2r) - k - 1/2)) for SquareM,
/// h_k(r) = min(1, max(0, 1/r - k - 1)) for RhombusN; r = 0 gives 1.
Rational twist_param(ChartKind kind, unsigned k, const Rational& r);

/// (r, s) -> (r, s + 2 twist_param(r)), the full twist paired with R_k / S_k.
TwistPoint twist_map(ChartKind kind, unsigned k, const TwistPoint& p);
/// (r, s) -> (r, s + twist_param(r) / 2), the quarter twist paired with R'_k / S'_k.
TwistPoint quarter_twist(ChartKind kind, unsigned k, const TwistPoint& p);

/// Deterministic sample grid: about half the radii inside the active band
/// (the annulus where the twist parameter is strictly between 0 and 1).
std::vector<TwistPoint> conjugation_samples(ChartKind kind, unsigned k, std::size_t count);

struct ConjugationFailure {
  TwistPoint sample;
  Point map_side;    // homeomorphism applied to chart(p)
  Point chart_side;  // chart(twist(p))
};

struct ConjugationReport {
  std::size_t samples = 0;
  bool all_equal = true;
  std::optional<ConjugationFailure> first_failure;
};

/// Exact check of R_k o M = M o T_k (SquareM) or S_k o N = N o twist (RhombusN).
ConjugationReport conjugation_check(ChartKind kind, unsigned k, std::size_t samples);
/// Same identity for the quarter steps R'_k and S'_k.
ConjugationReport quarter_step_check(ChartKind kind, unsigned k, std::size_t samples);
/// Shared driver: `map` against `twist` on the given samples.
ConjugationReport conjugation_check(const PwlMap& map, ChartKind kind,
                                    TwistPoint (*twist)(ChartKind, unsigned, const TwistPoint&), unsigned k,
                                    const std::vector<TwistPoint>& samples);

/// Floating-point Birkhoff statistics of the twist T_k restricted to the
/// circle whose rotation number is alpha, i.e. r = 1 / (alpha + 2k + 1).
/// Returns sup over bins of |empirical frequency - 1/bins|.
double birkhoff_equidistribution(unsigned k, double alpha, std::size_t iterations, std::size_t bins);

struct BoxEstimate {
  unsigned depth = 0;
  Point origin;
  Rational state_value;
  Rational lebesgue_value;
  Rational ratio;
};

struct BoxDensityReport {
  std::vector<BoxEstimate> estimates;
  bool constant = true;
};

/// Probes s with pyramid tents supported on dyadic boxes [0,2^-k)^n + origin
/// lying in `region`, for depths from the first that fits up to max_depth, and
/// reports state(tent) / lambda(tent).
BoxDensityReport box_density_check(const StateSpec& s, const Polytope& region, unsigned max_depth);

/// Pyramid of height 1 over the closed box origin + [0, 2^-depth]^n, built
/// from integer-coefficient pieces.
PwlFunction box_tent(const Point& origin, unsigned depth);

Polytope unit_cube_polytope(std::size_t n);

}  // namespace freemv
