"""Derivations, Kaehler differentials and shifted polyvectors of a semi-free cdga.

Conventions:

* derivations act from the left, D(aa') = D(a)a' + (-1)^{|D||a|} a D(a');
* Kaehler forms are written with coefficients on the left,
  omega = sum_g p_g d_dR(g), and d_dR(a) is fixed by <D, d_dR a> = D(a);
* <omega, D> = omega(D) and <D, omega> = (-1)^{|D||omega|} omega(D);
* Pol(A, n) is the free graded-commutative algebra on the generators of A
  together with hat-s_a = s^{n+1} d/dg_a of degree n + 1 - |g_a|, placed after
  all generators of A in the monomial order.
"""

from fractions import Fraction
from itertools import combinations_with_replacement

from .algebra import (Cdga, GradedAlgebra, GradedPoly, Generator, apply_derivation,
                      left_partial, right_partial)


def _sgn(k):
    return -1 if k % 2 else 1


# -- derivations ---------------------------------------------------------------


class Derivation:
    """A derivation of fixed degree given by its values on generators."""

    def __init__(self, alg, degree, values):
        self.alg = alg
        self.degree = degree
        self.values = {}
        for k, v in values.items():
            i = k if isinstance(k, int) else alg.index[alg.aliases.get(k, k)]
            if v:
                if v.alg is not alg:
                    raise ValueError("derivation value in another algebra")
                vd = v.degree()
                if vd != alg.degrees[i] + degree:
                    raise ValueError("value on %s has degree %s, expected %s"
                                     % (alg.generators[i].name, vd, alg.degrees[i] + degree))
                self.values[i] = v

    def __call__(self, p):
        return deriv_apply(self, p)

    def value(self, i):
        return self.values.get(i, self.alg.zero())

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("adding derivations of different degrees")
        vals = dict(self.values)
        for i, v in other.values.items():
            vals[i] = vals[i] + v if i in vals else v
        return Derivation(self.alg, self.degree, vals)

    def __mul__(self, c):
        return Derivation(self.alg, self.degree,
                          {i: v * c for i, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (self.alg is other.alg and self.degree == other.degree
                and {i: v for i, v in self.values.items() if v}
                == {i: v for i, v in other.values.items() if v})

    def __repr__(self):
        inner = ", ".join("%s -> %r" % (self.alg.generators[i].name, v)
                          for i, v in sorted(self.values.items()))
        return "Derivation(deg=%d; %s)" % (self.degree, inner)


def coordinate_derivation(alg, name):
    """d/dg for a generator g, of degree -|g|."""
    i = alg.index[alg.aliases.get(name, name)]
    return Derivation(alg, -alg.degrees[i], {i: alg.one()})


def differential_as_derivation(A):
    return Derivation(A.alg, 1, A.diff)


def deriv_apply(D, p):
    if p.alg is not D.alg:
        raise ValueError("derivation applied to an element of another algebra")
    return apply_derivation(p, D.values, D.degree)


def deriv_bracket(D1, D2):
    """[D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, evaluated on generators."""
    alg = D1.alg
    s = _sgn(D1.degree * D2.degree)
    vals = {}
    for i in range(alg.n):
        v = deriv_apply(D1, D2.value(i)) - deriv_apply(D2, D1.value(i)) * s
        if v:
            vals[i] = v
    return Derivation(alg, D1.degree + D2.degree, vals)


# -- Kaehler forms ---------------------------------------------------------------


class KaehlerElement:
    """sum_g p_g d_dR(g); ``shifted`` marks the element s^{-1} omega of Omega[1]."""

    def __init__(self, alg, coeffs, shifted=False):
        self.alg = alg
        self.coeffs = {}
        for k, v in coeffs.items():
            i = k if isinstance(k, int) else alg.index[alg.aliases.get(k, k)]
            if v:
                self.coeffs[i] = v
        self.shifted = shifted

    def degree(self):
        ds = set()
        for i, p in self.coeffs.items():
            ds |= {d + self.alg.degrees[i] for d in p.degrees()}
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("inhomogeneous form")
        d = ds.pop()
        return d - 1 if self.shifted else d

    def coeff(self, i):
        return self.coeffs.get(i, self.alg.zero())

    def __add__(self, other):
        c = dict(self.coeffs)
        for i, v in other.coeffs.items():
            c[i] = c[i] + v if i in c else v
        return KaehlerElement(self.alg, c, self.shifted)

    def __neg__(self):
        return KaehlerElement(self.alg, {i: -v for i, v in self.coeffs.items()},
                              self.shifted)

    def __sub__(self, other):
        return self + (-other)

    def lmul(self, a):
        """a . omega"""
        return KaehlerElement(self.alg, {i: a * v for i, v in self.coeffs.items()},
                              self.shifted)

    def rmul(self, a):
        """omega . a for an unshifted form (moved left with its Koszul sign)."""
        if self.shifted:
            raise ValueError("right multiplication is only used on unshifted forms")
        out = {}
        for i, v in self.coeffs.items():
            for da, pa in a.homogeneous_parts().items():
                for dv, pv in v.homogeneous_parts().items():
                    term = pa * pv * _sgn(da * (dv + self.alg.degrees[i]))
                    out[i] = out[i] + term if i in out else term
        return KaehlerElement(self.alg, out)

    def homogeneous_parts(self):
        parts = {}
        for i, v in self.coeffs.items():
            for d, pv in v.homogeneous_parts().items():
                parts.setdefault(d + self.alg.degrees[i], {})[i] = pv
        return {d: KaehlerElement(self.alg, c, self.shifted) for d, c in parts.items()}

    def is_zero(self):
        return not any(self.coeffs.values())

    def __eq__(self, other):
        return (self.alg is other.alg and self.shifted == other.shifted
                and {i: v for i, v in self.coeffs.items() if v}
                == {i: v for i, v in other.coeffs.items() if v})

    def __repr__(self):
        parts = ["(%r)*d(%s)" % (v, self.alg.generators[i].name)
                 for i, v in sorted(self.coeffs.items())]
        body = " + ".join(parts) or "0"
        return "s^-1(%s)" % body if self.shifted else body


def de_rham(p):
    """d_dR(p) with d_dR(a a') = d_dR(a) a' + a d_dR(a')."""
    alg = p.alg
    coeffs = {}
    for m, c in p.terms.items():
        for i, e in enumerate(m):
            if not e:
                continue
            s, rest = right_partial(alg, m, i)
            if s:
                coeffs.setdefault(i, {})
                coeffs[i][rest] = coeffs[i].get(rest, 0) + s * c
    return KaehlerElement(alg, {i: GradedPoly(alg, t) for i, t in coeffs.items()})


def evaluate_form(omega, D):
    """omega(D) = sum_g p_g (-1)^{|D||g|} D(g)."""
    alg = omega.alg
    out = alg.zero()
    for i, p in omega.coeffs.items():
        v = D.value(i)
        if v:
            out = out + p * v * _sgn(D.degree * alg.degrees[i])
    return out


def pairing_left(omega, D):
    """<omega, D> = omega(D)."""
    return evaluate_form(omega, D)


def pairing_right(D, omega):
    """<D, omega> = (-1)^{|D||omega|} omega(D), summed over homogeneous parts."""
    out = D.alg.zero()
    for d, part in omega.homogeneous_parts().items():
        out = out + evaluate_form(part, D) * _sgn(D.degree * d)
    return out


def omega_differential(A, omega):
    """d_Omega with d_Omega d_dR = d_dR d_A, extended as a derivation."""
    alg = A.alg
    out = KaehlerElement(alg, {})
    for i, p in omega.coeffs.items():
        # d(p d(g)) = d_A(p) d(g) + (-1)^{|p|} p d_dR(d_A g)
        out = out + KaehlerElement(alg, {i: A.d(p)})
        dg = de_rham(A.diff.get(i, alg.zero()))
        for deg, pp in p.homogeneous_parts().items():
            out = out + dg.lmul(pp * _sgn(deg))
    return out


# -- polyvectors -------------------------------------------------------------------


def shifted_name(name, n):
    return "s%dd(%s)" % (n + 1, name)


class PolyvectorAlgebra:
    """Pol(A, n) = Sym_A(T_A[-n-1]) for a semi-free cdga A with free tangent module."""

    def __init__(self, A, n):
        self.A = A
        self.n = n
        self.shift = n + 1
        base = A.alg
        self.base = base
        self.nb = base.n
        gens = list(base.generators)
        for g in base.generators:
            gens.append(Generator(shifted_name(g.name, n), n + 1 - g.degree))
        aliases = dict(base.aliases)
        for k, v in base.aliases.items():
            aliases[shifted_name(k, n)] = shifted_name(v, n)
        self.alg = GradedAlgebra(gens, aliases)
        self._bracket_cache = {}
        self._diff = None
        # {g_b, hat-s_b}, fixed by antisymmetry from {hat-s_b, g_b} = 1
        e = self.shift
        self._base_const = [
            -_sgn(e + base.degrees[b] * (e - base.degrees[b])) for b in range(self.nb)]

    def embed(self, p):
        if p.alg is self.alg:
            return p
        if p.alg is not self.base:
            raise ValueError("not an element of the base algebra")
        pad = (0,) * self.nb
        return GradedPoly(self.alg, {m + pad: c for m, c in p.terms.items()})

    def hat(self, name):
        """The generator hat-s for a base generator name."""
        name = self.base.aliases.get(name, name)
        return self.alg.gen(shifted_name(name, self.n))

    def weight(self, m):
        return sum(m[self.nb:])

    def weights(self, P):
        return {self.weight(m) for m in P.terms}

    def weight_part(self, P, w):
        return GradedPoly(self.alg, {m: c for m, c in P.terms.items() if self.weight(m) == w})

    def split_mono(self, m):
        """(base monomial, hat indices in order)"""
        base = m[:self.nb]
        hats = []
        for a, e in enumerate(m[self.nb:]):
            hats.extend([a] * e)
        return base, hats

    def base_poly(self, m, c=Fraction(1)):
        return GradedPoly(self.base, {m[:self.nb]: c})

    # differential
    def tangent_differential(self, a):
        """[d_A, d/dg_a] as a derivation of A."""
        base = self.base
        dA = differential_as_derivation(self.A)
        return deriv_bracket(dA, coordinate_derivation(base, base.generators[a].name))

    def diff_values(self):
        if self._diff is None:
            vals = {}
            for i in range(self.nb):
                v = self.A.diff.get(i)
                if v:
                    vals[i] = self.embed(v)
            e = self.shift
            for a in range(self.nb):
                T = self.tangent_differential(a)
                out = self.alg.zero()
                for j, c in T.values.items():
                    # d(s^e D) = (-1)^e s^e d_T(D) and s^e c = (-1)^{e|c|} c s^e
                    cc = self.embed(c).parity_twist(e)
                    out = out + cc * self.alg.gen_at(self.nb + j) * _sgn(e)
                if out:
                    vals[self.nb + a] = out
            self._diff = vals
        return self._diff

    def as_cdga(self):
        return Cdga(self.alg, {self.alg.generators[i].name: v
                               for i, v in self.diff_values().items()})

    # bracket
    def _gen_bracket_partial(self, i, Y):
        """{x_i, Y} for a single generator x_i and a monomial Y."""
        nb = self.nb
        if i >= nb:
            j, c = i - nb, 1
        else:
            j, c = i + nb, self._base_const[i]
        s, rest = left_partial(self.alg, Y, j)
        if not s:
            return self.alg.zero()
        return self.alg.monomial(rest, s * c)

    def bracket_mono(self, X, Y):
        key = (X, Y)
        hit = self._bracket_cache.get(key)
        if hit is not None:
            return hit
        alg = self.alg
        nz = [i for i, e in enumerate(X) if e]
        if not nz:
            res = alg.zero()
        else:
            i = nz[0]
            rest = list(X)
            rest[i] -= 1
            rest = tuple(rest)
            if not any(rest):
                res = self._gen_bracket_partial(i, Y)
            else:
                # {x X', Y} = (-1)^{|Y||X'|} {x, Y} X' + (-1)^{e|x|} x {X', Y}
                e = self.shift
                dY, dR = alg.mono_degree(Y), alg.mono_degree(rest)
                first = self._gen_bracket_partial(i, Y) * alg.monomial(rest)
                second = alg.monomial(alg.gen_mono(i)) * self.bracket_mono(rest, Y)
                res = first * _sgn(dY * dR) + second * _sgn(e * alg.degrees[i])
        self._bracket_cache[key] = res
        return res


def polyvec_diff(PA, P):
    """The differential of Pol(A, n) applied to a polyvector."""
    return apply_derivation(PA.embed(P), PA.diff_values(), 1)


def schouten(PA, P, Q):
    """The degree -(n+1) Schouten bracket {P, Q}."""
    P, Q = PA.embed(P), PA.embed(Q)
    out = PA.alg.zero()
    for m1, c1 in P.terms.items():
        for m2, c2 in Q.terms.items():
            b = PA.bracket_mono(m1, m2)
            if b:
                out = out + b * (c1 * c2)
    return out


def mc_components(PA, pi):
    """Split a polyvector into weight components."""
    if isinstance(pi, dict):
        return {int(w): PA.embed(p) for w, p in pi.items()}
    return {w: PA.weight_part(pi, w) for w in PA.weights(pi)}


def mc_check(PA, pi, order=None):
    """Residues of d pi + 1/2 {pi, pi} weight by weight.

    ``pi`` is a polyvector or a dict weight -> component.  Weight m gets
    d pi^(m) + 1/2 sum_{k+l-1=m} {pi^(k), pi^(l)}.  Returns {weight: residue}.
    """
    comps = mc_components(PA, pi)
    if any(w < 2 for w in comps if comps[w]):
        raise ValueError("Maurer-Cartan elements start in weight 2")
    top = max([w for w in comps if comps[w]], default=2)
    if order is None:
        order = 2 * top - 1
    res = {}
    for m in range(2, order + 1):
        r = polyvec_diff(PA, comps.get(m, PA.alg.zero()))
        for k in range(2, m):
            l = m + 1 - k
            if l < 2 or k not in comps or l not in comps:
                continue
            r = r + schouten(PA, comps[k], comps[l]) * Fraction(1, 2)
        res[m] = r
    return res


def is_maurer_cartan(PA, pi, order=None):
    return all(not r for r in mc_check(PA, pi, order).values())


def polyvec_basis(PA, degree, weight):
    """Monomial basis of polyvectors of a given degree and weight.

    Base generators must have positive degree so the enumeration is finite.
    """
    alg = PA.alg
    nb = PA.nb
    out = []
    for hats in combinations_with_replacement(range(nb), weight):
        if any(hats.count(a) > 1 and alg.odd[nb + a] for a in set(hats)):
            continue
        hat_deg = sum(alg.degrees[nb + a] for a in hats)
        rest = degree - hat_deg
        if rest < 0:
            continue
        hm = [0] * nb
        for a in hats:
            hm[a] += 1
        for bm in PA.base.monomials_of_degree(rest):
            out.append(bm + tuple(hm))
    out.sort(key=lambda m: (PA.weight(m), m), reverse=True)
    return [alg.monomial(m) for m in out]


def base_poly_degree(PA, m):
    """Number of base generator factors in a polyvector monomial."""
    return sum(m[:PA.nb])


# -- pairing with Sym^2 of the tangent complex ------------------------------------


def _pair_coord(alg, a, omega):
    """<d/dg_a, omega> for homogeneous omega."""
    d = omega.degree()
    if d is None:
        return alg.zero()
    ga = alg.degrees[a]
    return omega.coeff(a) * _sgn(ga * d + ga)


def _pair_hat_pair(alg, a, b, omega, omega2):
    """<s D s D', s^-1 omega (x) s^-1 omega'> for D = d/dg_a, D' = d/dg_b."""
    out = alg.zero()
    if omega.is_zero() or omega2.is_zero():
        return out
    w = omega.degree()
    Da, Db = -alg.degrees[a], -alg.degrees[b]
    # (-1)^{|w|+|D|} <D, <D', w> w'>
    inner = _pair_coord(alg, b, omega)
    if inner:
        out = out + _pair_coord(alg, a, omega2.lmul(inner)) * _sgn(w + Da)
    inner = _pair_coord(alg, a, omega)
    if inner:
        s = _sgn((Da + 1) * (Db + 1) + w + Db)
        out = out + _pair_coord(alg, b, omega2.lmul(inner)) * s
    return out


def pair_bivector(PA, pi2, omega, omega2):
    """<pi2, s^-1 omega (x) s^-1 omega'> in A for a weight-2 polyvector pi2.

    The identification Sym^2(T[-n-1]) with Sym^2(T[-1]) moves an even power of
    the shift out, so hat-s_a hat-s_b corresponds to s d_a s d_b.  ``omega``
    and ``omega2`` are unshifted forms; the shift is implicit.
    """
    base = PA.base
    if PA.n % 2:
        raise ValueError("bivector pairing needs an even shift")
    out = base.zero()
    parts1 = omega.homogeneous_parts()
    parts2 = omega2.homogeneous_parts()
    for m, c in pi2.terms.items():
        bm, hats = PA.split_mono(m)
        if len(hats) != 2:
            raise ValueError("pairing expects a weight-2 polyvector")
        a, b = hats
        coeff = GradedPoly(base, {bm: c})
        val = base.zero()
        for w1 in parts1.values():
            for w2 in parts2.values():
                val = val + _pair_hat_pair(base, a, b, w1, w2)
        if val:
            out = out + coeff * val
    return out
