"""Deterministic sample modules and morphisms for the checks.

Non-strict modules come from gauge transformations: for a unipotent degree-0
automorphism phi of a free module M, the module M^phi with differential
phi^-1 d_M phi is isomorphic to M via phi, and its matrix picks up entries of
higher polynomial degree.  Closed morphisms are drawn from the exact space of
closed degree-0 maps, so they need not be constant.
"""

import random
from fractions import Fraction

from .dgmod import DgMod, ModMap, compose, hom_diff, identity, zero_map
from .linalg import nullspace


def _sgn(k):
    return -1 if k % 2 else 1


def _elementary_columns(M, N, degree):
    """Elementary maps of a given degree, as {key: (i, j, monomial)}."""
    alg = M.alg
    out = []
    for i in range(M.rank):
        for j in range(N.rank):
            ed = M.degrees[i] + degree - N.degrees[j]
            if ed < 0:
                continue
            for m in alg.monomials_of_degree(ed):
                out.append((i, j, m))
    return out


def _map_from_vector(M, N, degree, vec):
    alg = M.alg
    ent = {}
    for (i, j, m), c in vec.items():
        if c:
            ent[(i, j)] = ent.get((i, j), alg.zero()) + alg.monomial(m, c)
    return ModMap(M, N, degree, ent)


def closed_maps_basis(M, N, degree=0):
    """A basis of the closed maps M -> N of the given degree."""
    cols = _elementary_columns(M, N, degree)
    rows = {}
    for c in cols:
        i, j, m = c
        f = ModMap(M, N, degree, {(i, j): M.alg.monomial(m)})
        df = hom_diff(f)
        for (a, b), v in df.entries().items():
            for mm, cc in v.terms.items():
                rows.setdefault((a, b, mm), {})[c] = cc
    basis = nullspace([rows[k] for k in sorted(rows)], cols)
    return [_map_from_vector(M, N, degree, v) for v in basis]


def random_map(M, N, degree, rng, density=0.5, coeffs=(-2, -1, 1, 2)):
    """A random (not necessarily closed) map with small integer coefficients."""
    vec = {}
    for c in _elementary_columns(M, N, degree):
        if rng.random() < density:
            vec[c] = Fraction(rng.choice(coeffs))
    return _map_from_vector(M, N, degree, vec)


def random_closed_map(M, N, rng, coeffs=(-2, -1, 1, 2), require_nonconstant=False):
    basis = closed_maps_basis(M, N, 0)
    if not basis:
        return zero_map(M, N, 0)
    for _ in range(20):
        f = zero_map(M, N, 0)
        for b in basis:
            if rng.random() < 0.7:
                f = f + b * rng.choice(coeffs)
        if not f.is_zero() and (not require_nonconstant or not f.is_constant()):
            return f
    return basis[-1]


def gauge_transform(M, phi, name=None):
    """Return (M', phi') where M' has differential phi^-1 d_M phi.

    ``phi`` is a unipotent degree-0 endomorphism of M (identity plus a part
    whose entries have positive degree).  phi' : M' -> M is the closed iso.
    """
    alg = M.alg
    A = M.A
    n = phi - identity(M)
    # psi = phi^-1 = sum (-n)^k; n is nilpotent because it raises polynomial degree
    psi = identity(M)
    power = identity(M)
    for _ in range(M.rank * 4 + 4):
        power = compose(power, -n) if not power.is_zero() else power
        if power.is_zero():
            break
        psi = psi + power
    mat = {}
    for i in range(M.rank):
        acc = {}
        for j, f in phi.rows[i].items():
            df = A.d(f)
            s = _sgn(phi.entry_degree(i, j))
            for l, p in psi.rows[j].items():
                if df:
                    acc[l] = acc.get(l, alg.zero()) + df * p
            for k, m in M.rows[j].items():
                fm = f * m * s
                for l, p in psi.rows[k].items():
                    acc[l] = acc.get(l, alg.zero()) + fm * p
        for l, v in acc.items():
            if v:
                mat[(i, l)] = v
    Mp = DgMod(A, M.basis, M.degrees, mat, name=name or M.name + "'")
    phi2 = ModMap(Mp, M, 0, phi.entries())
    return Mp, phi2


def random_unipotent(M, rng, density=0.6, coeffs=(-1, 1, 2)):
    n = random_map(M, M, 0, rng, density, coeffs)
    # keep only entries of positive polynomial degree
    rows = [{j: v for j, v in r.items() if all(sum(m) > 0 for m in v.terms)} for r in n.rows]
    return identity(M) + ModMap.from_rows(M, M, 0, rows)


def direct_sum(A, mods, name):
    basis, degrees, mat = [], [], {}
    off = 0
    for M in mods:
        basis += ["%s.%s" % (M.name, b) for b in M.basis]
        degrees += list(M.degrees)
        for (i, j), v in M.matrix().items():
            mat[(off + i, off + j)] = v
        off += M.rank
    return DgMod(A, basis, degrees, mat, name=name)


def shifted_copy(M, k, name=None):
    """M[k]: degrees drop by k and the differential picks up (-1)^k."""
    # d(s^-k w) = (-1)^k s^-k d w, and s^-k a = (-1)^{k|a|} a s^-k
    mat = {key: v.parity_twist(k) * _sgn(k) for key, v in M.matrix().items()}
    return DgMod(M.A, M.basis, [d - k for d in M.degrees], mat, name=name or "%s[%d]" % (M.name, k))


def make_nonstrict(M, rng, name=None, tries=30):
    """Gauge-transform M until the result is non-strict (if possible)."""
    for _ in range(tries):
        phi = random_unipotent(M, rng)
        Mp, ph = gauge_transform(M, phi, name)
        if not Mp.is_strict():
            return Mp, ph
    return gauge_transform(M, identity(M), name)


class Corpus:
    """Named modules and morphisms used by tests and the CLI."""

    def __init__(self):
        self.modules = {}
        self.morphisms = {}

    def add_module(self, key, M):
        self.modules[key] = M
        return M

    def add_morphism(self, key, h):
        self.morphisms[key] = h
        return h

    def strict_modules(self):
        return [M for M in self.modules.values() if M.is_strict()]


def _degree_two_module(A):
    """Two generators in degrees 0 and -2 joined by nu * (sum of closed th^a),
    when the algebra has a degree-2 generator nu; otherwise None."""
    alg = A.alg
    nus = [i for i, g in enumerate(alg.generators) if g.degree == 2]
    if not nus:
        return None
    nu = alg.gen_at(nus[0])
    closed = [alg.gen_at(i) for i, g in enumerate(alg.generators)
              if g.degree == 1 and not A.d(alg.gen_at(i))]
    entry = sum((nu * th for th in closed), alg.zero())
    if not entry or A.d(entry):
        return None
    return DgMod(A, ["l0", "l1"], [0, -2], {(0, 1): entry}, name="L")


def standard_corpus(A, seed=0, nonconstant=True):
    """A small deterministic corpus over a Lie-type CE algebra.

    Modules: every built-in representation, the unit, an acyclic trivial
    complex, a shifted representation and gauge transforms of sums of the
    first representation with trivial summands (non-strict in general) and of
    a trivial complex with a gap of two degrees (non-strict when some
    2-cochain is not closed, e.g. when there is a degree-2 generator).
    Morphisms: closed degree-0 maps between selected pairs plus the gauge isos.
    """
    from .lie import strict_rep_module, trivial_module

    rng = random.Random(seed)
    spec = A.lie
    C = Corpus()
    reps = []
    for key in spec.reps:
        reps.append(C.add_module(key, strict_rep_module(A, spec.reps[key], name=key)))
    V = reps[0]
    C.add_module("unit", trivial_module(A, [0], name="I"))
    C.add_module("acyclic", trivial_module(A, [-1, 0], d_w=[[0, 0], [1, 0]], name="E"))
    C.add_module("shifted", shifted_copy(V, 1, name=V.name + "[1]"))
    S = direct_sum(A, [V, trivial_module(A, [1], name="T")], "S")
    Sp, phi_s = make_nonstrict(S, rng, "S'")
    C.add_module("S'", Sp)
    K = trivial_module(A, [1, -1], name="K")
    Kp, phi_k = make_nonstrict(K, rng, "K'")
    C.add_module("K'", Kp)
    R = direct_sum(A, [V, trivial_module(A, [-1], name="U")], "R")
    Rp, phi_r = make_nonstrict(R, rng, "R'")
    C.add_module("R'", Rp)
    L = _degree_two_module(A)
    if L is not None:
        C.add_module("L", L)
        Lp, phi_l = make_nonstrict(L, rng, "L'")
        C.add_module("L'", Lp)
        C.add_morphism("phi_L", phi_l)
    C.add_module("S", S)
    C.add_module("K", K)
    C.add_morphism("phi_S", phi_s)
    C.add_morphism("phi_K", phi_k)
    C.add_morphism("phi_R", phi_r)
    pairs = [("S'", "S'"), (V.name, "S'"), ("S'", V.name), (V.name, V.name),
             ("K'", "K'"), ("unit", "S'"), ("shifted", "shifted"), ("S'", "S"),
             ("acyclic", "acyclic"), ("K'", "K"), ("R'", "R'"), (V.name, "R'")]
    if L is not None:
        pairs += [("L", "L"), ("L'", "L"), ("L'", "S'")]
    for a, b in pairs:
        M, N = C.modules[a], C.modules[b]
        h = random_closed_map(M, N, rng, require_nonconstant=nonconstant and a == b == "S'")
        if not h.is_zero():
            C.add_morphism("%s->%s" % (M.name, N.name), h)
    return C
