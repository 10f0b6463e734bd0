#include "freemv/term.hpp"

#include <algorithm>
#include <cctype>

namespace freemv {

Term Term::negation(Term t) {
  Term out{Kind::Neg, 0, nullptr, nullptr};
  out.lhs = std::make_shared<const Term>(std::move(t));
  return out;
}

Term Term::binary(Kind k, Term a, Term b) {
  Term out{k, 0, nullptr, nullptr};
  out.lhs = std::make_shared<const Term>(std::move(a));
  out.rhs = std::make_shared<const Term>(std::move(b));
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view src, std::size_t n) : src_(src), n_(n) {}

  Term parse() {
    Term t = term();
    skip();
    if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    return t;
  }

 private:
  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  Term term() {
    skip();
    if (pos_ == src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    switch (c) {
      case '0': ++pos_; return Term::zero();
      case '1': ++pos_; return Term::one();
      case 'x': return variable();
      case '!': ++pos_; return Term::negation(term());
      case '(': {
        ++pos_;
        Term a = term();
        skip();
        if (pos_ == src_.size()) throw ParseError("expected a connective", pos_);
        Term::Kind kind;
        switch (src_[pos_]) {
          case '+': kind = Term::Kind::Oplus; break;
          case '.': kind = Term::Kind::Odot; break;
          case '&': kind = Term::Kind::Min; break;
          case '|': kind = Term::Kind::Max; break;
          case '-': kind = Term::Kind::Ominus; break;
          default: throw ParseError(std::string("unknown connective '") + src_[pos_] + "'", pos_);
        }
        ++pos_;
        Term b = term();
        skip();
        if (pos_ == src_.size() || src_[pos_] != ')') throw ParseError("expected ')'", pos_);
        ++pos_;
        return Term::binary(kind, std::move(a), std::move(b));
      }
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }
  }

  Term variable() {
    const std::size_t start = pos_++;
    std::size_t idx = 0;
    const std::size_t digits_at = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      idx = idx * 10 + static_cast<std::size_t>(src_[pos_] - '0');
      if (idx > 1000000) throw ParseError("variable index too large", start);
      ++pos_;
    }
    if (pos_ == digits_at) throw ParseError("expected a variable index", pos_);
    if (idx == 0) throw ParseError("variable indices start at 1", start);
    if (idx > n_)
      throw std::out_of_range("variable x" + std::to_string(idx) + " exceeds dimension " + std::to_string(n_));
    return Term::variable(idx);
  }

  std::string_view src_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

char op_char(Term::Kind k) {
  switch (k) {
    case Term::Kind::Oplus: return '+';
    case Term::Kind::Odot: return '.';
    case Term::Kind::Min: return '&';
    case Term::Kind::Max: return '|';
    case Term::Kind::Ominus: return '-';
    default: return '?';
  }
}

Connective connective_of(Term::Kind k) {
  switch (k) {
    case Term::Kind::Oplus: return Connective::Oplus;
    case Term::Kind::Odot: return Connective::Odot;
    case Term::Kind::Min: return Connective::Min;
    case Term::Kind::Max: return Connective::Max;
    case Term::Kind::Ominus: return Connective::Ominus;
    default: throw std::logic_error("not a binary connective");
  }
}

}  // namespace

Term parse_term(std::string_view src, std::size_t n) { return Parser(src, n).parse(); }

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Zero: return "0";
    case Term::Kind::One: return "1";
    case Term::Kind::Var: return "x" + std::to_string(t.var);
    case Term::Kind::Neg: return "!" + to_string(*t.lhs);
    default: return "(" + to_string(*t.lhs) + " " + op_char(t.kind) + " " + to_string(*t.rhs) + ")";
  }
}

std::size_t max_variable(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Zero:
    case Term::Kind::One: return 0;
    case Term::Kind::Var: return t.var;
    case Term::Kind::Neg: return max_variable(*t.lhs);
    default: return std::max(max_variable(*t.lhs), max_variable(*t.rhs));
  }
}

std::size_t depth(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Zero:
    case Term::Kind::One:
    case Term::Kind::Var: return 0;
    case Term::Kind::Neg: return 1 + depth(*t.lhs);
    default: return 1 + std::max(depth(*t.lhs), depth(*t.rhs));
  }
}

PwlFunction term_to_pwl(const Term& t, std::size_t n) {
  switch (t.kind) {
    case Term::Kind::Zero: return PwlFunction::constant(n, 0);
    case Term::Kind::One: return PwlFunction::constant(n, 1);
    case Term::Kind::Var:
      if (t.var < 1 || t.var > n) throw std::out_of_range("variable index outside 1..n");
      return generator(n, t.var);
    case Term::Kind::Neg: return neg(term_to_pwl(*t.lhs, n));
    default: {
      PwlFunction a = term_to_pwl(*t.lhs, n);
      PwlFunction b = term_to_pwl(*t.rhs, n);
      return connective(connective_of(t.kind), a, &b);
    }
  }
}

Rational eval_term(const Term& t, const Point& p) {
  switch (t.kind) {
    case Term::Kind::Zero: return 0;
    case Term::Kind::One: return 1;
    case Term::Kind::Var: return p.coords.at(t.var - 1);
    case Term::Kind::Neg: return 1 - eval_term(*t.lhs, p);
    default: break;
  }
  const Rational a = eval_term(*t.lhs, p);
  const Rational b = eval_term(*t.rhs, p);
  switch (t.kind) {
    case Term::Kind::Oplus: return std::min(Rational(1), Rational(a + b));
    case Term::Kind::Odot: return std::max(Rational(0), Rational(a + b - 1));
    case Term::Kind::Ominus: return std::max(Rational(0), Rational(a - b));
    case Term::Kind::Min: return std::min(a, b);
    case Term::Kind::Max: return std::max(a, b);
    default: throw std::logic_error("unreachable");
  }
}

Rational lipschitz_bound(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Zero:
    case Term::Kind::One: return 0;
    case Term::Kind::Var: return 1;
    case Term::Kind::Neg: return lipschitz_bound(*t.lhs);
    case Term::Kind::Min:
    case Term::Kind::Max: return std::max(lipschitz_bound(*t.lhs), lipschitz_bound(*t.rhs));
    default: return lipschitz_bound(*t.lhs) + lipschitz_bound(*t.rhs);
  }
}

Term random_term(std::size_t n, std::size_t max_depth, std::mt19937_64& rng) {
  // Leaves: mostly variables; internal nodes: the six connectives uniformly.
  const auto roll = [&rng](std::uint64_t k) { return rng() % k; };
  if (max_depth == 0 || roll(4) == 0) {
    const auto r = roll(10);
    if (r == 0) return Term::zero();
    if (r == 1) return Term::one();
    return Term::variable(1 + roll(n));
  }
  static constexpr Term::Kind kinds[] = {Term::Kind::Oplus, Term::Kind::Odot, Term::Kind::Min,
                                         Term::Kind::Max, Term::Kind::Ominus};
  const auto pick = roll(6);
  if (pick == 5) return Term::negation(random_term(n, max_depth - 1, rng));
  Term a = random_term(n, max_depth - 1, rng);
  Term b = random_term(n, max_depth - 1, rng);
  return Term::binary(kinds[pick], std::move(a), std::move(b));
}

}  // namespace freemv
