#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "freemv/linalg.hpp"
#include "freemv/rational.hpp"

namespace freemv {

struct Point {
  Vector coords;

  Point() = default;
  explicit Point(Vector c) : coords(std::move(c)) {}
  Point(std::initializer_list<Rational> c) : coords(c) {}

  std::size_t dim() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
  Rational& operator[](std::size_t i) { return coords[i]; }

  /// (r_1 ... r_n 1)
  Vector homogeneous() const;
  static Point from_homogeneous(const Vector& h);

  bool in_unit_cube() const;

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) { return a.coords < b.coords; }
};

/// F(x) = a.x + b. McNaughton pieces have integer a, b; rational values
/// appear transiently when pulling back through non-integral maps.
struct AffineForm {
  Vector a;
  Rational b;

  static AffineForm constant(std::size_t n, const Rational& c);
  static AffineForm coordinate(std::size_t n, std::size_t i);

  std::size_t dim() const { return a.size(); }
  Rational operator()(const Point& p) const;
  bool is_integral() const;
  bool is_zero() const;

  /// x -> F(P x) for a homogeneous (n+1)x(n+1) matrix P with last row (0..0 1).
  AffineForm pullback(const Matrix& homogeneous) const;

  AffineForm operator+(const AffineForm& o) const;
  AffineForm operator-(const AffineForm& o) const;
  AffineForm operator*(const Rational& c) const;

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// a.x <= b
struct Halfspace {
  Vector a;
  Rational b;

  bool contains(const Point& p) const { return dot(a, p.coords) <= b; }
  bool tight(const Point& p) const { return dot(a, p.coords) == b; }
  /// Rescaled to a primitive integer normal; same set.
  Halfspace normalized() const;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
  friend bool operator<(const Halfspace& x, const Halfspace& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
};

struct Box {
  Vector lo;
  Vector hi;
  bool overlaps(const Box& o) const;
  static Box of(const std::vector<Point>& pts);
};

struct Simplex {
  std::vector<Point> vertices;

  std::size_t ambient_dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }
  /// Affine dimension of the vertex set.
  std::size_t dim() const;

  /// Barycentric coordinates of p; only for full-dimensional simplices.
  std::optional<Vector> barycentric(const Point& p) const;
  bool contains(const Point& p) const;
  /// Facet inequalities of a full-dimensional simplex, primitive-integer normals.
  std::vector<Halfspace> halfspaces() const;
  Point centroid() const;
};

struct Polytope {
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;
  std::vector<Point> vertices;  // sorted lexicographically
  std::vector<Halfspace> halfspaces;

  bool empty() const { return vertices.empty(); }
  bool contains(const Point& p) const;

  /// Exhaustive vertex enumeration over n-subsets of the hyperplanes.
  static Polytope from_halfspaces(std::size_t ambient_dim, std::vector<Halfspace> hs);
  static Polytope from_simplex(const Simplex& s);
};

/// Simplicial complex given by a shared vertex table and top cells.
struct Complex {
  std::size_t ambient_dim = 0;
  std::vector<Point> vertices;
  std::vector<std::vector<std::size_t>> cells;

  std::size_t size() const { return cells.size(); }
  Simplex cell(std::size_t i) const;
  std::vector<Point> cell_points(std::size_t i) const;
  Rational volume() const;
  /// Index of some top cell containing p (closed cells), if any.
  std::optional<std::size_t> locate(const Point& p) const;
};

/// Deduplicates vertices while cells are appended.
class ComplexBuilder {
 public:
  explicit ComplexBuilder(std::size_t ambient_dim) { complex_.ambient_dim = ambient_dim; }
  std::size_t vertex(const Point& p);
  void add_cell(const std::vector<Point>& pts);
  std::size_t size() const { return complex_.cells.size(); }
  Complex build() && { return std::move(complex_); }

 private:
  Complex complex_;
  std::map<Point, std::size_t> index_;
};

/// A refined complex with, for each output cell, the index of the input
/// cell(s) it came from.
struct Refinement {
  Complex complex;
  std::vector<std::size_t> parent_a;
  std::vector<std::size_t> parent_b;
};

/// |det(v1 - v0, ..., vn - v0)| / n!; 0 for degenerate or lower-dimensional input.
Rational simplex_volume(const Simplex& s);

/// Kuhn triangulation: one simplex per ordering x_s(1) >= ... >= x_s(n).
Complex cube_triangulation(std::size_t n);

/// Exact intersection; an empty Polytope when the cells are disjoint.
Polytope intersect_cells(const Simplex& s, const Simplex& t);

/// Pulling triangulation: cone from the lexicographically smallest vertex over
/// the recursively triangulated facets that avoid it.
std::vector<Simplex> triangulate(const Polytope& p);

/// Throws std::invalid_argument when supports differ.
Complex common_refinement(const Complex& a, const Complex& b);
Refinement refine(const Complex& a, const Complex& b);

/// Splits every cell so that f has constant sign on each piece.
Complex split_by_form(const Complex& c, const AffineForm& f);

/// Per-cell variant: cell i is split by forms[i]. parent_b holds the sign of
/// the form on the piece: 0 (negative side), 1 (zero), 2 (positive side).
/// Forms must agree on shared faces for the output to stay conforming.
Refinement split_cells(const Complex& c, const std::vector<AffineForm>& forms);

/// Cells of `domain` refined by the preimages of `target` cells under the
/// cell-wise homogeneous matrices. parent_a: domain cell, parent_b: target cell.
Refinement pullback_refinement(const Complex& domain, const std::vector<Matrix>& maps,
                               const Complex& target);

/// Coarsens c by merging cells with equal labels whose union is convex, then
/// re-triangulates each merged region. The result may have hanging vertices
/// (it need not be conforming). parent_a: one original cell of the region;
/// parent_b: its label. Only ambient dimensions 1 and 2 are coarsened; other
/// dimensions are returned cell-for-cell.
Refinement merge_convex(const Complex& c, const std::vector<std::size_t>& labels);

/// Least d >= 1 with d.p integral (equivalently gcd(d r_1, ..., d r_n, d) = 1).
Integer denominator(const Point& p);

/// Affine dimension of a point set (-1 for the empty set is reported as 0).
std::size_t affine_dim(const std::vector<Point>& pts);

/// Image of p under a homogeneous (n+1)x(n+1) matrix.
Point apply_homogeneous(const Matrix& m, const Point& p);

/// Affine map on a full-dimensional simplex taking vertices[i] -> images[i].
std::optional<Matrix> affine_from_vertices(const std::vector<Point>& vertices,
                                           const std::vector<Point>& images);

}  // namespace freemv
