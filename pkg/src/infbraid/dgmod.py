"""Semi-free dg modules over a cdga and the A-linear maps between them.

Elements of a module are sums a_i (x) w_i with coefficients on the left.  The
differential is stored as a matrix, d_M(1 (x) w_i) = sum_j M_i^j (x) w_j, so
d_M(a w_i) = d_A(a) w_i + (-1)^{|a|} a M_i^j w_j.  A map f is stored the same
way, f(1 (x) w_i) = sum_j f_i^j (x) w'_j, and acts by
f(a w_i) = (-1)^{|f||a|} a f_i^j w'_j.  Rows index the source basis.
"""

from fractions import Fraction
from itertools import product as iproduct

from .geometry import de_rham
from .linalg import solve


def _sgn(k):
    return -1 if k % 2 else 1


class DgMod:
    """A free A-module with a square-zero differential given by a matrix."""

    def __init__(self, A, basis, degrees, matrix, name=None, factors=None):
        self.A = A
        self.alg = A.alg
        self.basis = tuple(basis)
        self.degrees = tuple(degrees)
        if len(self.basis) != len(self.degrees):
            raise ValueError("basis and degrees differ in length")
        self.rank = len(self.basis)
        self.rows = [dict() for _ in range(self.rank)]
        for (i, j), v in matrix.items():
            if v:
                self.rows[i][j] = v
        self.name = name or "M%d" % id(self)
        # the plain modules this one is a tensor product of (itself if plain)
        self.factors = tuple(factors) if factors else (self,)
        self._fp = None

    def entry(self, i, j):
        return self.rows[i].get(j, self.alg.zero())

    def matrix(self):
        return {(i, j): v for i, row in enumerate(self.rows) for j, v in row.items()}

    def fingerprint(self):
        if self._fp is None:
            self._fp = (self.degrees, tuple(
                tuple(sorted((j, tuple(sorted(v.terms.items()))) for j, v in row.items()))
                for row in self.rows))
        return self._fp

    def same_as(self, other):
        return self is other or (self.alg is other.alg
                                 and self.fingerprint() == other.fingerprint())

    def is_strict(self):
        """True when every differential entry is at most linear in generators."""
        for row in self.rows:
            for v in row.values():
                for m in v.terms:
                    if sum(m) > 1:
                        return False
        return True

    def __repr__(self):
        return "DgMod(%s, rank=%d)" % (self.name, self.rank)


def check_module(M):
    """Residues of d_M^2 on basis elements (empty dict when square-zero).

    Entry degrees are validated first: M_i^j must have degree |w_i| + 1 - |w_j|.
    """
    A = M.A
    for i, row in enumerate(M.rows):
        for j, v in row.items():
            if v.degree() != M.degrees[i] + 1 - M.degrees[j]:
                raise ValueError("entry (%d,%d) of %s has degree %s, expected %d"
                                 % (i, j, M.name, v.degree(),
                                    M.degrees[i] + 1 - M.degrees[j]))
    res = {}
    for i, row in enumerate(M.rows):
        acc = {}
        for j, v in row.items():
            acc[j] = acc.get(j, M.alg.zero()) + A.d(v)
            s = _sgn(M.degrees[i] + 1 - M.degrees[j])
            for k, w in M.rows[j].items():
                acc[k] = acc.get(k, M.alg.zero()) + v * w * s
        for k, v in acc.items():
            if v:
                res[(i, k)] = v
    return res


class ModMap:
    """An A-linear map of fixed degree between two DgMods."""

    def __init__(self, source, target, degree, entries, name=None):
        self.source = source
        self.target = target
        self.degree = degree
        self.alg = source.alg
        self.rows = [dict() for _ in range(source.rank)]
        for (i, j), v in entries.items():
            if v:
                self.rows[i][j] = v
        self.name = name

    @classmethod
    def from_rows(cls, source, target, degree, rows, name=None):
        f = cls(source, target, degree, {}, name)
        f.rows = [{j: v for j, v in r.items() if v} for r in rows]
        return f

    def entry(self, i, j):
        return self.rows[i].get(j, self.alg.zero())

    def entries(self):
        return {(i, j): v for i, row in enumerate(self.rows) for j, v in row.items()}

    def entry_degree(self, i, j):
        return self.source.degrees[i] + self.degree - self.target.degrees[j]

    def validate(self):
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                if v.degree() != self.entry_degree(i, j):
                    raise ValueError("map entry (%d,%d) has degree %s, expected %d"
                                     % (i, j, v.degree(), self.entry_degree(i, j)))
        return self

    def is_zero(self):
        return not any(self.rows)

    def is_constant(self):
        return all(set(v.terms) <= {self.alg.unit} for row in self.rows for v in row.values())

    def _compatible(self, other):
        if not (self.source.same_as(other.source) and self.target.same_as(other.target)):
            raise ValueError("maps between different modules")
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("adding maps of degrees %d and %d" % (self.degree, other.degree))

    def __add__(self, other):
        self._compatible(other)
        rows = [dict(r) for r in self.rows]
        for i, r in enumerate(other.rows):
            for j, v in r.items():
                rows[i][j] = rows[i][j] + v if j in rows[i] else v
        deg = self.degree if not self.is_zero() else other.degree
        return ModMap.from_rows(self.source, self.target, deg, rows)

    def __neg__(self):
        return ModMap.from_rows(self.source, self.target, self.degree,
                                [{j: -v for j, v in r.items()} for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Fraction(c)
        return ModMap.from_rows(self.source, self.target, self.degree,
                                [{j: v * c for j, v in r.items()} for r in self.rows])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModMap):
            return NotImplemented
        return (self.source.same_as(other.source) and self.target.same_as(other.target)
                and self.rows == other.rows
                and (self.degree == other.degree or self.is_zero()))

    __hash__ = None

    def __matmul__(self, other):
        return compose(self, other)

    def __repr__(self):
        return "ModMap(%s -> %s, deg=%d, nnz=%d)" % (
            self.source.name, self.target.name, self.degree,
            sum(len(r) for r in self.rows))


def zero_map(M, N, degree=0):
    return ModMap(M, N, degree, {})


def identity(M):
    one = M.alg.one()
    return ModMap(M, M, 0, {(i, i): one for i in range(M.rank)})


def constant_map(M, N, matrix, degree=0):
    """Map with constant entries from a nested list (rows = source basis)."""
    alg = M.alg
    ent = {}
    for i, row in enumerate(matrix):
        for j, c in enumerate(row):
            if c:
                ent[(i, j)] = alg.scalar(c)
    return ModMap(M, N, degree, ent)


def compose(g, h):
    """g o h, with (g h)_i^k = sum_j (-1)^{|g||h_i^j|} h_i^j g_j^k."""
    if not h.target.same_as(g.source):
        raise ValueError("cannot compose %r after %r" % (g, h))
    rows = []
    gd = g.degree
    for i, row in enumerate(h.rows):
        acc = {}
        for j, hv in row.items():
            grow = g.rows[j]
            if not grow:
                continue
            s = _sgn(gd * h.entry_degree(i, j))
            for k, gv in grow.items():
                term = hv * gv
                if s < 0:
                    term = -term
                acc[k] = acc[k] + term if k in acc else term
        rows.append(acc)
    return ModMap.from_rows(h.source, g.target, g.degree + h.degree, rows)


def hom_diff(f):
    """d f = d_{M'} f - (-1)^{|f|} f d_M on the hom complex."""
    M, N = f.source, f.target
    A = M.A
    fd = f.degree
    rows = []
    for i in range(M.rank):
        acc = {}
        for j, v in f.rows[i].items():
            dv = A.d(v)
            if dv:
                acc[j] = acc[j] + dv if j in acc else dv
            s = _sgn(f.entry_degree(i, j))
            for k, w in N.rows[j].items():
                term = v * w * s
                acc[k] = acc[k] + term if k in acc else term
        for j, m in M.rows[i].items():
            s = -_sgn(fd) * _sgn(fd * (M.degrees[i] + 1 - M.degrees[j]))
            for k, w in f.rows[j].items():
                term = m * w * s
                acc[k] = acc[k] + term if k in acc else term
        rows.append(acc)
    return ModMap.from_rows(M, N, fd + 1, rows)


def is_closed(f):
    return hom_diff(f).is_zero()


# -- tensor products -------------------------------------------------------------

_TENSOR_CACHE = {}


def _tensor_pair(M, N, name=None):
    """M (x)_A N with basis (i, q) in lexicographic order."""
    if M.A is not N.A:
        raise ValueError("tensoring modules over different cdgas")
    rN = N.rank
    basis = [(b, c) for b in M.basis for c in N.basis]
    degrees = [dm + dn for dm in M.degrees for dn in N.degrees]
    mat = {}
    for i in range(M.rank):
        for q in range(rN):
            row = i * rN + q
            for j, v in M.rows[i].items():
                mat[(row, j * rN + q)] = v
            for r, v in N.rows[q].items():
                # (-1)^{|w_i|} from d passing w_i, (-1)^{|w_i||N_q^r|} from the coefficient
                s = _sgn(M.degrees[i] + M.degrees[i] * (N.degrees[q] + 1 - N.degrees[r]))
                key = (row, i * rN + r)
                val = v * s
                mat[key] = mat[key] + val if key in mat else val
    return DgMod(M.A, basis, degrees, mat, name=name or "(%s*%s)" % (M.name, N.name),
                 factors=M.factors + N.factors)


def tensor_module(*mods):
    """Iterated tensor product; the same flattened factors give the same object."""
    if len(mods) == 1:
        return mods[0]
    factors = tuple(f for M in mods for f in M.factors)
    key = tuple(id(f) for f in factors)
    hit = _TENSOR_CACHE.get(key)
    if hit is not None and hit[1] == factors:
        return hit[0]
    out = mods[0]
    for M in mods[1:]:
        out = _tensor_pair(out, M)
    _TENSOR_CACHE[key] = (out, factors)
    return out


def tensor_map(h, k):
    """h (x) k, (h (x) k)(m (x) n) = (-1)^{|k||m|} h(m) (x) k(n)."""
    src = tensor_module(h.source, k.source)
    tgt = tensor_module(h.target, k.target)
    rq, rr = k.source.rank, k.target.rank
    kd = k.degree
    rows = [dict() for _ in range(src.rank)]
    for i, hrow in enumerate(h.rows):
        if not hrow:
            continue
        si = _sgn(kd * h.source.degrees[i])
        for q, krow in enumerate(k.rows):
            if not krow:
                continue
            acc = rows[i * rq + q]
            for j, hv in hrow.items():
                sj = _sgn(h.target.degrees[j])
                for r, kv in krow.items():
                    s = si * (sj if k.entry_degree(q, r) % 2 else 1)
                    term = hv * kv * s
                    acc[j * rr + r] = term
    return ModMap.from_rows(src, tgt, h.degree + k.degree, rows)


def tensor_maps(*maps):
    out = maps[0]
    for m in maps[1:]:
        out = tensor_map(out, m)
    return out


def permute_blocks(blocks, perm):
    """Koszul-signed iso B_0 (x) ... (x) B_{n-1} -> B_{perm[0]} (x) ... (x) B_{perm[n-1]}."""
    n = len(blocks)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation: %r" % (perm,))
    src = tensor_module(*blocks)
    tgt = tensor_module(*[blocks[p] for p in perm])
    ranks = [B.rank for B in blocks]
    one = src.alg.one()
    ent = {}
    for idx in iproduct(*[range(r) for r in ranks]):
        degs = [blocks[k].degrees[idx[k]] for k in range(n)]
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b] and degs[perm[a]] % 2 and degs[perm[b]] % 2:
                    sign = -sign
        s_index = 0
        for k in range(n):
            s_index = s_index * ranks[k] + idx[k]
        t_index = 0
        for p in perm:
            t_index = t_index * ranks[p] + idx[p]
        ent[(s_index, t_index)] = one * sign
    return ModMap(src, tgt, 0, ent)


def gamma(M, N):
    """The symmetric braiding gamma_{M,N}: M (x) N -> N (x) M."""
    return permute_blocks([M, N], [1, 0])


# -- homotopies -----------------------------------------------------------------


def _flatten(f):
    vec = {}
    for i, row in enumerate(f.rows):
        for j, v in row.items():
            for m, c in v.terms.items():
                vec[(i, j, m)] = c
    return vec


def homotopy_equal_mod_exact(f, g):
    """Decide whether f - g = d(q) for some map q of degree one less.

    Returns (True, q) or (False, None).  The unknown entries q_i^j range over
    all monomials of the right degree, so the answer is exact.
    """
    if f.degree != g.degree and not (f.is_zero() or g.is_zero()):
        raise ValueError("comparing maps of different degrees")
    deg = f.degree if not f.is_zero() else g.degree
    diff = f - g
    M, N = f.source, f.target
    qd = deg - 1
    if diff.is_zero():
        return True, zero_map(M, N, qd)
    alg = M.alg
    A = M.A
    columns = {}
    for i in range(M.rank):
        for j in range(N.rank):
            ed = M.degrees[i] + qd - N.degrees[j]
            if ed < 0:
                continue
            for m in alg.monomials_of_degree(ed):
                mono = alg.monomial(m)
                col = {}

                def add(r, c, p):
                    for mm, cc in p.terms.items():
                        key = (r, c, mm)
                        nv = col.get(key, 0) + cc
                        if nv:
                            col[key] = nv
                        else:
                            col.pop(key, None)

                add(i, j, A.d(mono))
                s = _sgn(ed)
                for k, w in N.rows[j].items():
                    add(i, k, mono * w * s)
                for i2 in range(M.rank):
                    mv = M.rows[i2].get(i)
                    if mv is None:
                        continue
                    s2 = -_sgn(qd) * _sgn(qd * (M.degrees[i2] + 1 - M.degrees[i]))
                    add(i2, j, mv * mono * s2)
                if col:
                    columns[(i, j, m)] = col
    x = solve(columns, _flatten(diff))
    if x is None:
        return False, None
    ent = {}
    for (i, j, m), c in x.items():
        if c:
            ent[(i, j)] = ent.get((i, j), alg.zero()) + alg.monomial(m, c)
    return True, ModMap(M, N, qd, ent)


def equal_mod_exact(f, g):
    return homotopy_equal_mod_exact(f, g)[0]


# -- the shifted Kaehler module and its functor ----------------------------------

_OMEGA_CACHE = {}


def omega_shift(A):
    """Omega_A[1], free on s^-1 d_dR(g) of degree |g| - 1."""
    hit = _OMEGA_CACHE.get(id(A))
    if hit is not None and hit[1] is A:
        return hit[0]
    alg = A.alg
    basis = ["s^-1 d(%s)" % g.name for g in alg.generators]
    degrees = [d - 1 for d in alg.degrees]
    mat = {}
    for a in range(alg.n):
        dg = de_rham(A.diff.get(a, alg.zero()))
        for b, p in dg.coeffs.items():
            # d(s^-1 w) = -s^-1 d w, and s^-1 p = (-1)^{|p|} p s^-1
            mat[(a, b)] = -p.parity_twist(1)
    out = DgMod(A, basis, degrees, mat, name="Omega[1]")
    _OMEGA_CACHE[id(A)] = (out, A)
    return out


def shift_coords(omega):
    """Coordinates of s^-1 omega in the basis s^-1 d(g) of Omega[1]."""
    return {a: p.parity_twist(1) for a, p in omega.coeffs.items()}


def omega_tensor(M):
    return tensor_module(omega_shift(M.A), M)


def omega_on_map(h):
    """The functor Omega[1] (x) - on a morphism: id (x) h."""
    return tensor_map(identity(omega_shift(h.source.A)), h)


_UNIT_CACHE = {}


def unit_module(A):
    """A itself as a rank-one module."""
    hit = _UNIT_CACHE.get(id(A))
    if hit is not None and hit[1] is A:
        return hit[0]
    out = DgMod(A, ["1"], [0], {}, name="A")
    _UNIT_CACHE[id(A)] = (out, A)
    return out


def unitor(X):
    """A (x) X -> X."""
    one = X.alg.one()
    return ModMap(tensor_module(unit_module(X.A), X), X, 0,
                  {(i, i): one for i in range(X.rank)})
