#include "freemv/pwl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "freemv/homeo.hpp"

namespace freemv {

PwlFunction::PwlFunction(Complex complex, std::vector<AffineForm> forms)
    : complex_(std::move(complex)), forms_(std::move(forms)) {
  if (forms_.size() != complex_.size()) throw std::invalid_argument("PwlFunction: one form per cell required");
  for (const auto& f : forms_)
    if (f.dim() != complex_.ambient_dim) throw std::invalid_argument("PwlFunction: form dimension mismatch");
}

PwlFunction PwlFunction::constant(std::size_t n, const Rational& c) {
  if (c < 0 || c > 1) throw std::domain_error("constant outside [0,1]");
  Complex k = cube_triangulation(n);
  std::vector<AffineForm> forms(k.size(), AffineForm::constant(n, c));
  return {std::move(k), std::move(forms)};
}

PwlFunction PwlFunction::generator(std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw std::out_of_range("generator index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  Complex k = cube_triangulation(n);
  std::vector<AffineForm> forms(k.size(), AffineForm::coordinate(n, i - 1));
  return {std::move(k), std::move(forms)};
}

PwlFunction generator(std::size_t n, std::size_t i) { return PwlFunction::generator(n, i); }

void PwlFunction::check_invariants() const {
  if (complex_.volume() != 1) throw std::domain_error("PwlFunction: complex does not cover the unit cube");
  std::map<std::size_t, Rational> value_at;
  for (std::size_t c = 0; c < complex_.size(); ++c) {
    for (std::size_t v : complex_.cells[c]) {
      Rational val = forms_[c](complex_.vertices[v]);
      if (val < 0 || val > 1)
        throw std::domain_error("PwlFunction: value " + to_string(val) + " outside [0,1] at a vertex of cell " +
                                std::to_string(c));
      auto [it, inserted] = value_at.emplace(v, val);
      if (!inserted && it->second != val)
        throw std::domain_error("PwlFunction: discontinuity at vertex " + std::to_string(v));
    }
  }
  // Vertices lying on another cell's boundary without being one of its vertices.
  for (std::size_t v = 0; v < complex_.vertices.size(); ++v) {
    const Point& p = complex_.vertices[v];
    for (std::size_t c = 0; c < complex_.size(); ++c) {
      const auto& cell = complex_.cells[c];
      if (std::find(cell.begin(), cell.end(), v) != cell.end()) continue;
      auto s = complex_.cell(c);
      if (!s.contains(p)) continue;
      if (forms_[c](p) != value_at.at(v))
        throw std::domain_error("PwlFunction: discontinuity at vertex " + std::to_string(v));
    }
  }
}

bool PwlFunction::has_integral_forms() const {
  return std::all_of(forms_.begin(), forms_.end(), [](const AffineForm& f) { return f.is_integral(); });
}

bool PwlFunction::is_zero() const {
  return std::all_of(forms_.begin(), forms_.end(), [](const AffineForm& f) { return f.is_zero(); });
}

namespace detail {

std::pair<Complex, std::vector<AffineForm>> select_by_sign(const Complex& c, const std::vector<FormTriple>& forms) {
  std::vector<AffineForm> diffs;
  diffs.reserve(forms.size());
  for (const auto& t : forms) diffs.push_back(t.diff);
  Refinement r = split_cells(c, diffs);
  std::vector<AffineForm> out;
  out.reserve(r.complex.size());
  for (std::size_t i = 0; i < r.complex.size(); ++i) {
    const auto& t = forms[r.parent_a[i]];
    out.push_back(r.parent_b[i] == 2 ? t.hi : t.lo);
  }
  return {std::move(r.complex), std::move(out)};
}

}  // namespace detail

namespace {

bool same_complex(const Complex& a, const Complex& b) {
  return a.ambient_dim == b.ambient_dim && a.cells == b.cells && a.vertices == b.vertices;
}

// Pairs of forms of f and g over a common refinement.
struct Aligned {
  Complex complex;
  std::vector<AffineForm> f, g;
};

Aligned align(const PwlFunction& f, const PwlFunction& g) {
  if (f.n() != g.n()) throw std::invalid_argument("connective: dimension mismatch");
  if (same_complex(f.complex(), g.complex())) return {f.complex(), f.forms(), g.forms()};
  Refinement r = refine(f.complex(), g.complex());
  Aligned a{std::move(r.complex), {}, {}};
  a.f.reserve(a.complex.size());
  a.g.reserve(a.complex.size());
  for (std::size_t i = 0; i < a.complex.size(); ++i) {
    a.f.push_back(f.forms()[r.parent_a[i]]);
    a.g.push_back(g.forms()[r.parent_b[i]]);
  }
  return a;
}

PwlFunction binary(Connective kind, const PwlFunction& f, const PwlFunction& g) {
  Aligned al = align(f, g);
  const std::size_t n = f.n();
  const AffineForm zero = AffineForm::constant(n, 0);
  const AffineForm one = AffineForm::constant(n, 1);
  std::vector<detail::FormTriple> triples;
  triples.reserve(al.complex.size());
  for (std::size_t i = 0; i < al.complex.size(); ++i) {
    const AffineForm& a = al.f[i];
    const AffineForm& b = al.g[i];
    switch (kind) {
      case Connective::Oplus: {
        AffineForm sum = a + b;
        triples.push_back({sum - one, sum, one});
        break;
      }
      case Connective::Odot: {
        AffineForm t = a + b - one;
        triples.push_back({t, zero, t});
        break;
      }
      case Connective::Ominus: {
        AffineForm t = a - b;
        triples.push_back({t, zero, t});
        break;
      }
      case Connective::Min:
        triples.push_back({a - b, a, b});
        break;
      case Connective::Max:
        triples.push_back({a - b, b, a});
        break;
      case Connective::Neg:
        throw std::logic_error("neg is unary");
    }
  }
  auto [complex, forms] = detail::select_by_sign(al.complex, triples);
  return {std::move(complex), std::move(forms)};
}

}  // namespace

PwlFunction connective(Connective kind, const PwlFunction& f, const PwlFunction* g) {
  if (kind == Connective::Neg) {
    std::vector<AffineForm> forms;
    forms.reserve(f.forms().size());
    const AffineForm one = AffineForm::constant(f.n(), 1);
    for (const auto& form : f.forms()) forms.push_back(one - form);
    return {f.complex(), std::move(forms)};
  }
  if (g == nullptr) throw std::invalid_argument("binary connective needs two operands");
  return binary(kind, f, *g);
}

PwlFunction neg(const PwlFunction& f) { return connective(Connective::Neg, f); }
PwlFunction oplus(const PwlFunction& f, const PwlFunction& g) { return connective(Connective::Oplus, f, &g); }
PwlFunction odot(const PwlFunction& f, const PwlFunction& g) { return connective(Connective::Odot, f, &g); }
PwlFunction ominus(const PwlFunction& f, const PwlFunction& g) { return connective(Connective::Ominus, f, &g); }
PwlFunction meet(const PwlFunction& f, const PwlFunction& g) { return connective(Connective::Min, f, &g); }
PwlFunction join(const PwlFunction& f, const PwlFunction& g) { return connective(Connective::Max, f, &g); }

PwlFunction k_fold(const PwlFunction& f, unsigned k) {
  if (k == 0) throw std::invalid_argument("k_fold: k must be positive");
  if (k == 1) return f;
  const AffineForm one = AffineForm::constant(f.n(), 1);
  std::vector<detail::FormTriple> triples;
  triples.reserve(f.forms().size());
  for (const auto& form : f.forms()) {
    AffineForm scaled = form * Rational(k);
    triples.push_back({scaled - one, scaled, one});
  }
  auto [complex, forms] = detail::select_by_sign(f.complex(), triples);
  return {std::move(complex), std::move(forms)};
}

PwlFunction k_fold_iterated(const PwlFunction& f, unsigned k) {
  if (k == 0) throw std::invalid_argument("k_fold: k must be positive");
  PwlFunction acc = f;
  for (unsigned i = 1; i < k; ++i) acc = oplus(acc, f);
  return acc;
}

Rational eval(const PwlFunction& f, const Point& p) {
  if (p.dim() != f.n()) throw std::invalid_argument("eval: dimension mismatch");
  if (!p.in_unit_cube()) throw std::out_of_range("eval: point outside the unit cube");
  auto cell = f.complex().locate(p);
  if (!cell) throw std::logic_error("eval: complex does not cover the point");
  return f.forms()[*cell](p);
}

ZeroSetReport zero_set(const PwlFunction& f) {
  const Complex& c = f.complex();
  std::set<std::vector<std::size_t>> faces;
  ZeroSetReport rep;
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<std::size_t> zeros;
    for (std::size_t v : c.cells[i])
      if (f.forms()[i](c.vertices[v]) == 0) zeros.push_back(v);
    if (zeros.empty()) continue;
    if (zeros.size() == c.cells[i].size()) rep.has_interior = true;
    std::sort(zeros.begin(), zeros.end());
    faces.insert(std::move(zeros));
  }
  // Drop faces contained in another reported face.
  std::vector<std::vector<std::size_t>> kept;
  for (const auto& face : faces) {
    bool subsumed = std::any_of(faces.begin(), faces.end(), [&](const std::vector<std::size_t>& other) {
      return other.size() > face.size() && std::includes(other.begin(), other.end(), face.begin(), face.end());
    });
    if (!subsumed) kept.push_back(face);
  }
  for (const auto& face : kept) {
    Simplex s;
    for (std::size_t v : face) s.vertices.push_back(c.vertices[v]);
    rep.faces.push_back(std::move(s));
  }
  return rep;
}

bool is_pseudotrue(const PwlFunction& f) {
  // Cells are full-dimensional, so a nonnegative form vanishes on an open set
  // of a cell exactly when it is the zero form.
  return std::none_of(f.forms().begin(), f.forms().end(), [](const AffineForm& a) { return a.is_zero(); });
}

Rational support_volume(const PwlFunction& f) {
  Rational zero = 0;
  for (std::size_t i = 0; i < f.complex().size(); ++i)
    if (f.forms()[i].is_zero()) zero += simplex_volume(f.complex().cell(i));
  return f.complex().volume() - zero;
}

Rational integrate(const PwlFunction& f) {
  const Complex& c = f.complex();
  Rational total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Rational sum = 0;
    for (std::size_t v : c.cells[i]) sum += f.forms()[i](c.vertices[v]);
    total += simplex_volume(c.cell(i)) * sum / Rational(static_cast<long>(c.cells[i].size()));
  }
  return total;
}

PwlFunction compose(const PwlFunction& f, const PwlMap& s) {
  if (f.n() != s.n()) throw std::invalid_argument("compose: dimension mismatch");
  Refinement r = pullback_refinement(s.complex(), s.matrices(), f.complex());
  std::vector<AffineForm> forms;
  forms.reserve(r.complex.size());
  for (std::size_t i = 0; i < r.complex.size(); ++i)
    forms.push_back(f.forms()[r.parent_b[i]].pullback(s.matrices()[r.parent_a[i]]));
  return {std::move(r.complex), std::move(forms)};
}

namespace {

// One extra coordinate; each prism cell x [0,1] gets the staircase
// triangulation induced by the lexicographic vertex order.
std::pair<Complex, std::vector<std::size_t>> extrude(const Complex& c) {
  const std::size_t n = c.ambient_dim;
  ComplexBuilder b(n + 1);
  std::vector<std::size_t> parent;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto pts = c.cell_points(i);
    std::sort(pts.begin(), pts.end());
    auto lift = [](const Point& p, int h) {
      Point q = p;
      q.coords.emplace_back(h);
      return q;
    };
    for (std::size_t k = 0; k < pts.size(); ++k) {
      std::vector<Point> cell;
      for (std::size_t j = 0; j <= k; ++j) cell.push_back(lift(pts[j], 0));
      for (std::size_t j = k; j < pts.size(); ++j) cell.push_back(lift(pts[j], 1));
      b.add_cell(cell);
      parent.push_back(i);
    }
  }
  return {std::move(b).build(), std::move(parent)};
}

}  // namespace

PwlFunction cylinder(const PwlFunction& f, std::size_t m) {
  if (m <= f.n()) throw std::invalid_argument("cylinder: target dimension must exceed " + std::to_string(f.n()));
  Complex c = f.complex();
  std::vector<AffineForm> forms = f.forms();
  while (c.ambient_dim < m) {
    auto [next, parent] = extrude(c);
    std::vector<AffineForm> nf;
    nf.reserve(next.size());
    for (std::size_t p : parent) {
      AffineForm a = forms[p];
      a.a.emplace_back(0);
      nf.push_back(std::move(a));
    }
    c = std::move(next);
    forms = std::move(nf);
  }
  return {std::move(c), std::move(forms)};
}

PwlFunction restrict_to(const PwlFunction& f, const Complex& c) {
  Refinement r = refine(f.complex(), c);
  std::vector<AffineForm> forms;
  forms.reserve(r.complex.size());
  for (std::size_t p : r.parent_a) forms.push_back(f.forms()[p]);
  return {std::move(r.complex), std::move(forms)};
}

}  // namespace freemv
