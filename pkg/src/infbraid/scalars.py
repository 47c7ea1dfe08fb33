"""Truncated power series in hbar over a coefficient ring.

A ``Truncated`` holds coefficients c_0, ..., c_{k-1} of sum c_i hbar^i modulo
hbar^k.  The coefficients can be Fractions or any objects that support ``+``,
unary ``-`` and multiplication by a Fraction; products use a caller-supplied
bilinear ``mul`` (for instance vertical composition of transformations).
"""

from fractions import Fraction
from math import factorial


def _default_mul(a, b):
    return a * b


class Truncated:
    __slots__ = ("coeffs", "order", "mul", "zero")

    def __init__(self, coeffs, order, mul=None, zero=Fraction(0)):
        if order not in (1, 2, 3, 4):
            raise ValueError("truncation order must be small (got %r)" % order)
        coeffs = list(coeffs)[:order]
        coeffs += [zero] * (order - len(coeffs))
        self.coeffs = coeffs
        self.order = order
        self.mul = mul or _default_mul
        self.zero = zero

    @classmethod
    def constant(cls, c, order, mul=None, zero=Fraction(0)):
        return cls([c], order, mul, zero)

    def _like(self, coeffs):
        return Truncated(coeffs, self.order, self.mul, self.zero)

    def _lift(self, other):
        if isinstance(other, Truncated):
            if other.order != self.order:
                raise ValueError("mismatched truncation orders")
            return other
        return self._like([other])

    def __add__(self, other):
        other = self._lift(other)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def scale(self, c):
        return self._like([a * Fraction(c) for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Truncated):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            other = self._lift(other)
        out = [self.zero] * self.order
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                if i + j < self.order:
                    out[i + j] = out[i + j] + self.mul(a, b)
        return self._like(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self._lift(other) * self

    def __eq__(self, other):
        other = self._lift(other)
        return self.coeffs == other.coeffs

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            parts.append("(%s)" % (c,) if i == 0 else "(%s)*hbar^%d" % (c, i))
        return " + ".join(parts)

    def __getitem__(self, i):
        return self.coeffs[i]


def hbar(order, one=Fraction(1), mul=None, zero=Fraction(0)):
    """The element hbar * one."""
    return Truncated([zero, one], order, mul, zero)


def exp_truncated(x, one):
    """exp(x) for x with zero constant term, using the series' own product."""
    out = Truncated.constant(one, x.order, x.mul, x.zero)
    power = Truncated.constant(one, x.order, x.mul, x.zero)
    for k in range(1, x.order):
        power = power * x
        out = out + power.scale(Fraction(1, factorial(k)))
    return out
