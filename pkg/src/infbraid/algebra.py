"""Free graded-commutative algebras over Q with exact coefficients.

Monomials are exponent tuples indexed by generator declaration order.  The
canonical form of a monomial is the ordered product of its generators in that
order; odd generators appear at most once.  Every product is renormalised with
the Koszul sign picked up by reordering the odd factors.
"""

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


class GradedAlgebra:
    """A free graded-commutative algebra on an ordered list of generators."""

    def __init__(self, generators, aliases=None):
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self.degrees = tuple(g.degree for g in self.generators)
        self.odd = tuple(d % 2 == 1 for d in self.degrees)
        self.n = len(self.generators)
        # alternative spellings accepted by the parser (e.g. Lie basis names)
        self.aliases = dict(aliases or {})
        self._mul_cache = {}
        self._mask_cache = {}

    def __repr__(self):
        return "GradedAlgebra(%s)" % ", ".join(
            "%s:%d" % (g.name, g.degree) for g in self.generators)

    # -- monomials ---------------------------------------------------------

    @property
    def unit(self):
        return (0,) * self.n

    def gen_mono(self, i, power=1):
        e = [0] * self.n
        e[i] = power
        return tuple(e)

    def mono_degree(self, m):
        return sum(e * d for e, d in zip(m, self.degrees))

    def odd_mask(self, m):
        mask = self._mask_cache.get(m)
        if mask is None:
            mask = 0
            for i, e in enumerate(m):
                if e and self.odd[i]:
                    mask |= 1 << i
            self._mask_cache[m] = mask
        return mask

    def mono_mul(self, m1, m2):
        """Return (sign, monomial) for m1*m2, or (0, None) if it vanishes."""
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        a, b = self.odd_mask(m1), self.odd_mask(m2)
        if a & b:
            res = (0, None)
        else:
            # each odd factor of m2 moves left past the larger odd factors of m1
            swaps = 0
            bb = b
            while bb:
                low = bb & -bb
                j = low.bit_length() - 1
                swaps += (a >> (j + 1)).bit_count()
                bb ^= low
            res = (-1 if swaps % 2 else 1,
                   tuple(x + y for x, y in zip(m1, m2)))
        self._mul_cache[key] = res
        return res

    def factors(self, m):
        """Generator indices of a monomial, with multiplicity, in canonical order."""
        out = []
        for i, e in enumerate(m):
            out.extend([i] * e)
        return out

    def monomials_of_degree(self, degree, allowed=None):
        """All nonzero monomials of a given total degree.

        Only generators of positive degree are supported, since otherwise the
        set need not be finite.  ``allowed`` restricts to a subset of indices.
        """
        idx = list(range(self.n)) if allowed is None else list(allowed)
        if any(self.degrees[i] <= 0 for i in idx):
            raise ValueError("monomial enumeration needs positive-degree generators")
        out = []

        def rec(pos, remaining, exps):
            if remaining == 0:
                m = [0] * self.n
                for i, e in exps:
                    m[i] = e
                out.append(tuple(m))
                return
            if pos == len(idx):
                return
            i = idx[pos]
            d = self.degrees[i]
            top = 1 if self.odd[i] else remaining // d
            for e in range(min(top, remaining // d), -1, -1):
                rec(pos + 1, remaining - e * d, exps + [(i, e)] if e else exps)

        if degree >= 0:
            rec(0, degree, [])
        return sorted(out, reverse=True)

    # -- element constructors ----------------------------------------------

    def zero(self):
        return GradedPoly(self, {})

    def one(self):
        return GradedPoly(self, {self.unit: ONE})

    def scalar(self, c):
        c = Fraction(c)
        return GradedPoly(self, {self.unit: c} if c else {})

    def gen(self, name, power=1):
        name = self.aliases.get(name, name)
        i = self.index[name]
        if power > 1 and self.odd[i]:
            return self.zero()
        return GradedPoly(self, {self.gen_mono(i, power): ONE})

    def gen_at(self, i):
        return GradedPoly(self, {self.gen_mono(i): ONE})

    def monomial(self, m, coeff=ONE):
        return GradedPoly(self, {m: Fraction(coeff)} if coeff else {})


def mono_normalize(alg, names):
    """Canonical (sign, monomial) of the ordered product of named generators."""
    sign, m = 1, alg.unit
    for name in names:
        s, m = alg.mono_mul(m, alg.gen_mono(alg.index[alg.aliases.get(name, name)]))
        if s == 0:
            return 0, None
        sign *= s
    return sign, m


class GradedPoly:
    """Sparse element of a GradedAlgebra: monomial -> Fraction."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    def _check(self, other):
        if not isinstance(other, GradedPoly):
            return self.alg.scalar(other)
        if other.alg is not self.alg:
            raise ValueError("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, ZERO) + c
        return GradedPoly(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            c = Fraction(other)
            return GradedPoly(self.alg, {m: c * v for m, v in self.terms.items()})
        other = self._check(other)
        alg = self.alg
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = alg.mono_mul(m1, m2)
                if s:
                    t[m] = t.get(m, ZERO) + (c1 * c2 if s > 0 else -c1 * c2)
        return GradedPoly(alg, t)

    def __rmul__(self, other):
        # scalars are central
        return self * other

    def __pow__(self, k):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.alg is other.alg and self.terms == other.terms
        return self == self.alg.scalar(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .parser import format_poly
        return format_poly(self)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {self.alg.mono_degree(m) for m in self.terms}

    def degree(self):
        """Degree of a homogeneous element; None for zero (any degree)."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("inhomogeneous element: degrees %s" % sorted(ds))
        return ds.pop()

    def homogeneous_parts(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.alg.mono_degree(m), {})[m] = c
        return {d: GradedPoly(self.alg, t) for d, t in parts.items()}

    def parity_twist(self, k):
        """Multiply each homogeneous part of degree e by (-1)^(k*e)."""
        if k % 2 == 0:
            return self
        alg = self.alg
        return GradedPoly(alg, {m: (-c if alg.mono_degree(m) % 2 else c)
                                for m, c in self.terms.items()})

    def constant(self):
        return self.terms.get(self.alg.unit, ZERO)


def _split_at(alg, m, i):
    """Split monomial m at generator i into (prefix, rest-without-one-i, suffix-degree).

    ``prefix`` is the product of all factors strictly before generator i.
    """
    pre = tuple(m[j] if j < i else 0 for j in range(alg.n))
    post = tuple(m[j] if j > i else 0 for j in range(alg.n))
    return pre, post


def derivation_on_mono(alg, m, values, degree):
    """Apply a degree-``degree`` left derivation with generator values to a monomial.

    D(y1...yl) = sum_j (-1)^(degree*|y1...y_{j-1}|) y1..y_{j-1} D(y_j) y_{j+1}..yl.
    """
    out = alg.zero()
    for i, e in enumerate(m):
        if not e:
            continue
        v = values.get(i)
        if v is None or not v.terms:
            continue
        pre, post = _split_at(alg, m, i)
        pre_deg = alg.mono_degree(pre)
        rest = list(post)
        if alg.odd[i]:
            coeff = 1
        else:
            coeff = e
            rest[i] = e - 1
        sign = -1 if (degree * pre_deg) % 2 else 1
        # an even generator commutes with everything, so e*g^(e-1) sits with the suffix
        term = alg.monomial(pre) * v * alg.monomial(tuple(rest))
        out = out + term * (sign * coeff)
    return out


def apply_derivation(p, values, degree):
    alg = p.alg
    out = alg.zero()
    for m, c in p.terms.items():
        out = out + derivation_on_mono(alg, m, values, degree) * c
    return out


def left_partial(alg, m, i):
    """Graded left partial derivative d/dx_i (a derivation of parity |x_i|)."""
    e = m[i]
    if not e:
        return 0, None
    pre, _ = _split_at(alg, m, i)
    rest = list(m)
    rest[i] = e - 1
    if alg.odd[i]:
        sign = -1 if alg.mono_degree(pre) % 2 else 1
        return sign, tuple(rest)
    return e, tuple(rest)


def right_partial(alg, m, i):
    """Coefficient of d(x_i) in d_dR(m), written with coefficients on the left."""
    e = m[i]
    if not e:
        return 0, None
    _, post = _split_at(alg, m, i)
    rest = list(m)
    rest[i] = e - 1
    if alg.odd[i]:
        sign = -1 if alg.mono_degree(post) % 2 else 1
        return sign, tuple(rest)
    return e, tuple(rest)


class Cdga:
    """A semi-free cdga: a GradedAlgebra plus the differential on generators."""

    def __init__(self, alg, diff):
        self.alg = alg
        self.diff = {}
        for name, v in diff.items():
            i = alg.index[alg.aliases.get(name, name)]
            if v.alg is not alg:
                raise ValueError("differential value lives in another algebra")
            self.diff[i] = v
        for i, v in self.diff.items():
            if v and v.degree() != alg.degrees[i] + 1:
                raise ValueError("differential of %s has wrong degree"
                                 % alg.generators[i].name)
        self._dcache = {}

    def d(self, p):
        return apply_diff(self, p)

    def diff_of(self, name):
        i = self.alg.index[self.alg.aliases.get(name, name)]
        return self.diff.get(i, self.alg.zero())


def apply_diff(A, p):
    """The differential of the cdga A extended to p by the graded Leibniz rule."""
    alg = A.alg
    out = alg.zero()
    for m, c in p.terms.items():
        dm = A._dcache.get(m)
        if dm is None:
            dm = derivation_on_mono(alg, m, A.diff, 1)
            A._dcache[m] = dm
        out = out + dm * c
    return out


def check_square_zero(A):
    """Return the generators whose d^2 is nonzero, with the residues."""
    bad = {}
    for i, g in enumerate(A.alg.generators):
        r = apply_diff(A, A.diff.get(i, A.alg.zero()))
        if r:
            bad[g.name] = r
    return bad


def all_monomials_upto(alg, max_degree):
    """All monomials of degree 0..max_degree (positive-degree generators only)."""
    out = []
    for d in range(max_degree + 1):
        out.extend(alg.monomials_of_degree(d))
    return out
