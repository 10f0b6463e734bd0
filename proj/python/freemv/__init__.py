"""Exact McNaughton functions, states and homeomorphisms of the unit cube.

Exact values come back as fractions.Fraction; points are sequences of
anything Fraction() accepts.
"""

import json
from fractions import Fraction

from . import _core
from ._core import Function, Map, ParseError

__all__ = [
    "Function",
    "Map",
    "ParseError",
    "term",
    "integrate",
    "evaluate",
    "state_eval",
    "farey_points",
    "gen_map",
    "gen_symmetry",
    "random_word",
    "apply_map",
    "validate",
    "coherence",
    "invariance",
    "conjugation_check",
    "twist_param",
    "birkhoff",
    "dual_S",
    "orbit",
]


def _q(x):
    return str(Fraction(x))


def _pt(p):
    return [_q(x) for x in p]


def _state(s):
    return s if isinstance(s, str) else json.dumps(s)


def term(src, n):
    """McNaughton function of a term such as "!( !x1 + !x1 )"."""
    return Function.from_term(src, n)


def integrate(f):
    return Fraction(f.integrate())


def evaluate(f, point):
    return Fraction(f.eval(_pt(point)))


def state_eval(state, f):
    """state: "lebesgue", "farey:D", "mix:D" or a state dict."""
    return Fraction(_core.state_eval(_state(state), f))


def farey_points(n, d):
    return [tuple(Fraction(x) for x in p) for p in _core.farey_points(n, d)]


def gen_map(kind, k=0):
    return _core.gen_map(kind, k)


def gen_symmetry(n, perm, flip):
    return _core.gen_symmetry(n, list(perm), list(flip))


def random_word(n, seed, length):
    return _core.random_word(n, seed, length)


def apply_map(m, point):
    return tuple(Fraction(x) for x in m.apply(_pt(point)))


def validate(m):
    return json.loads(m.validate())


def coherence(d, f):
    r = json.loads(_core.coherence(d, f))
    return Fraction(r["value_n"]), Fraction(r["value_n_plus_1"]), r["coherent"]


def invariance(state, m, functions):
    return json.loads(_core.invariance(_state(state), m, list(functions)))


def conjugation_check(kind, k, samples=1000):
    return json.loads(_core.conjugation_check(kind, k, samples))


def twist_param(kind, k, r):
    return Fraction(_core.twist_param(kind, k, _q(r)))


def birkhoff(k, alpha, iterations=100000, bins=16):
    return _core.birkhoff(k, alpha, iterations, bins)


def dual_S(t):
    return Fraction(_core.dual_S(_q(t)))


def orbit(t0, iterations):
    return [Fraction(t) for t in _core.orbit(_q(t0), iterations)]
