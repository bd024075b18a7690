"""Third-order scalar jets: value plus exact derivatives d1, d2, d3 of a
one-variable function at a point, propagated by truncated Taylor arithmetic.

Derivatives here are true derivatives (not Taylor coefficients); chain rules
use Faa di Bruno up to order 3:

    (g o u)'   = g1 u1
    (g o u)''  = g2 u1^2 + g1 u2
    (g o u)''' = g3 u1^3 + 3 g2 u1 u2 + g1 u3
"""

import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError

__all__ = [
    "Jet",
    "variable",
    "constant",
    "jet_eval",
    "jsin", "jcos", "jtan", "jsec", "jsinh", "jcosh",
    "jexp", "jlog", "jsqrt", "jarcsin", "jpow",
    "jet_function_from_derivs",
]


def _as_jet(x) -> "Jet":
    if isinstance(x, Jet):
        return x
    return Jet(float(x), 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Jet:
    f: float
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0

    def __add__(self, other):
        o = _as_jet(other)
        return Jet(self.f + o.f, self.d1 + o.d1, self.d2 + o.d2, self.d3 + o.d3)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_jet(other)
        return Jet(self.f - o.f, self.d1 - o.d1, self.d2 - o.d2, self.d3 - o.d3)

    def __rsub__(self, other):
        return _as_jet(other) - self

    def __neg__(self):
        return Jet(-self.f, -self.d1, -self.d2, -self.d3)

    def __mul__(self, other):
        a, b = self, _as_jet(other)
        return Jet(
            a.f * b.f,
            a.d1 * b.f + a.f * b.d1,
            a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
            a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_jet(other)
        if o.f == 0.0:
            raise DomainError("division by a jet with zero value", t=o.f)
        inv = _compose(o, 1.0 / o.f, -1.0 / o.f**2, 2.0 / o.f**3, -6.0 / o.f**4)
        return self * inv

    def __rtruediv__(self, other):
        return _as_jet(other) / self

    def __pow__(self, p):
        return jpow(self, p)


def _compose(u: Jet, g0: float, g1: float, g2: float, g3: float) -> Jet:
    """Jet of g(u) given the derivatives g0..g3 of g at u.f."""
    return Jet(
        g0,
        g1 * u.d1,
        g2 * u.d1**2 + g1 * u.d2,
        g3 * u.d1**3 + 3.0 * g2 * u.d1 * u.d2 + g1 * u.d3,
    )


def variable(t: float) -> Jet:
    """Seed the independent variable at t."""
    return Jet(float(t), 1.0, 0.0, 0.0)


def constant(c: float) -> Jet:
    return Jet(float(c), 0.0, 0.0, 0.0)


def jsin(x) -> Jet:
    u = _as_jet(x)
    s, c = math.sin(u.f), math.cos(u.f)
    return _compose(u, s, c, -s, -c)


def jcos(x) -> Jet:
    u = _as_jet(x)
    s, c = math.sin(u.f), math.cos(u.f)
    return _compose(u, c, -s, -c, s)


def jtan(x) -> Jet:
    u = _as_jet(x)
    return jsin(u) / jcos(u)


def jsec(x) -> Jet:
    u = _as_jet(x)
    return 1.0 / jcos(u)


def jsinh(x) -> Jet:
    u = _as_jet(x)
    s, c = math.sinh(u.f), math.cosh(u.f)
    return _compose(u, s, c, s, c)


def jcosh(x) -> Jet:
    u = _as_jet(x)
    s, c = math.sinh(u.f), math.cosh(u.f)
    return _compose(u, c, s, c, s)


def jexp(x) -> Jet:
    u = _as_jet(x)
    e = math.exp(u.f)
    return _compose(u, e, e, e, e)


def jlog(x) -> Jet:
    u = _as_jet(x)
    if u.f <= 0.0:
        raise DomainError("log of non-positive argument", t=u.f)
    return _compose(u, math.log(u.f), 1.0 / u.f, -1.0 / u.f**2, 2.0 / u.f**3)


def jsqrt(x) -> Jet:
    u = _as_jet(x)
    if u.f < 0.0:
        raise DomainError("sqrt of negative argument", t=u.f)
    if u.f == 0.0:
        raise DomainError("sqrt jet undefined at 0 (infinite derivative)", t=u.f)
    r = math.sqrt(u.f)
    return _compose(u, r, 0.5 / r, -0.25 / (r * u.f), 0.375 / (r * u.f**2))


def jarcsin(x) -> Jet:
    u = _as_jet(x)
    if not -1.0 < u.f < 1.0:
        raise DomainError("arcsin argument outside (-1, 1)", t=u.f)
    w = 1.0 - u.f**2
    g1 = w**-0.5
    g2 = u.f * w**-1.5
    g3 = (1.0 + 2.0 * u.f**2) * w**-2.5
    return _compose(u, math.asin(u.f), g1, g2, g3)


def jpow(x, p) -> Jet:
    """x**p for a jet base. Constant integer exponents stay exact via repeated
    multiplication; general exponents require a positive base."""
    u = _as_jet(x)
    if isinstance(p, Jet):
        if p.d1 == p.d2 == p.d3 == 0.0:
            return jpow(u, p.f)
        return jexp(p * jlog(u))
    p = float(p)
    if p == round(p) and abs(p) <= 64:
        n = int(round(p))
        if n == 0:
            return constant(1.0)
        base = u if n > 0 else 1.0 / u
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out
    if u.f <= 0.0:
        raise DomainError("non-integer power of non-positive base", t=u.f)
    g0 = u.f**p
    g1 = p * u.f ** (p - 1.0)
    g2 = p * (p - 1.0) * u.f ** (p - 2.0)
    g3 = p * (p - 1.0) * (p - 2.0) * u.f ** (p - 3.0)
    return _compose(u, g0, g1, g2, g3)


def jet_eval(fn: Callable[[Jet], Jet], t: float) -> Jet:
    """Evaluate a jet-capable function at t with the variable seeded."""
    return fn(variable(t))


def jet_function_from_derivs(derivs: Callable[[float], tuple]) -> Callable[[Jet], Jet]:
    """Wrap a function given by a pointwise derivative table t -> (g, g', g'', g''')
    as a jet-capable callable (composes correctly with jet inputs)."""

    def fn(x) -> Jet:
        u = _as_jet(x)
        g0, g1, g2, g3 = derivs(u.f)
        return _compose(u, g0, g1, g2, g3)

    return fn
