"""Lie algebras, string Lie 2-algebras and their Chevalley-Eilenberg algebras.

A ``LieNSpec`` holds structure constants f^c_{ab} ([x_a, x_b] = f^c_{ab} x_c)
and, for N = 2, a totally antisymmetric 3-cocycle kappa_{abc}.  The CE
algebra has odd generators th<label> of degree 1 and, for N = 2, an even
generator ``nu`` of degree 2, with

    d th^a = -1/2 f^a_{bc} th^b th^c,     d nu = -1/6 kappa_{abc} th^a th^b th^c.
"""

from fractions import Fraction
from itertools import permutations

from .algebra import Cdga, GradedAlgebra, Generator, check_square_zero
from .dgmod import DgMod


def _perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def _labels(names):
    """Strip a common alphabetic prefix such as the x of x+, x-, x3."""
    if len(names) > 1:
        pre = names[0][0]
        if pre.isalpha() and all(n.startswith(pre) and len(n) > 1 for n in names):
            rest = [n[1:] for n in names]
            if len(set(rest)) == len(rest):
                return rest
    return list(names)


class LieNSpec:
    """Structure constants of a Lie algebra (N=1) or string Lie 2-algebra (N=2)."""

    def __init__(self, basis, brackets, kappa=None, N=None, name="g", reps=None):
        self.basis = list(basis)
        self.dim = len(self.basis)
        self.labels = _labels(self.basis)
        self.name = name
        self._pos = {}
        for k, (b, l) in enumerate(zip(self.basis, self.labels)):
            self._pos[b] = k
            self._pos[l] = k
        # f[a][b] = {c: coeff}
        self.f = [[dict() for _ in range(self.dim)] for _ in range(self.dim)]
        for (a, b), out in brackets.items():
            ia, ib = self.pos(a), self.pos(b)
            for c, v in out.items():
                ic, v = self.pos(c), Fraction(v)
                self._set_f(ia, ib, ic, v)
                self._set_f(ib, ia, ic, -v)
        self.kappa = {}
        for key, v in (kappa or {}).items():
            idx = tuple(self.pos(x) for x in key)
            v = Fraction(v)
            for p in permutations(range(3)):
                pk = tuple(idx[i] for i in p)
                self._set_kappa(pk, v * _perm_sign(p))
        self.N = N if N is not None else (2 if self.kappa else 1)
        self.reps = dict(reps or {})

    def _set_f(self, a, b, c, v):
        old = self.f[a][b].get(c)
        if old is not None and old != v:
            raise ValueError("bracket data not antisymmetric at (%s,%s)"
                             % (self.basis[a], self.basis[b]))
        if a == b and v:
            raise ValueError("[x,x] must vanish")
        if v:
            self.f[a][b][c] = v

    def _set_kappa(self, idx, v):
        if len(set(idx)) < 3:
            if v:
                raise ValueError("kappa must be totally antisymmetric")
            return
        old = self.kappa.get(idx)
        if old is not None and old != v:
            raise ValueError("kappa data not antisymmetric at %r" % (idx,))
        self.kappa[idx] = v

    def pos(self, x):
        try:
            return self._pos[x]
        except KeyError:
            raise KeyError("unknown basis element %r" % (x,)) from None

    def fc(self, c, a, b):
        """f^c_{ab}"""
        return self.f[a][b].get(c, Fraction(0))

    def k(self, a, b, c):
        return self.kappa.get((a, b, c), Fraction(0))

    def jacobi_residues(self):
        bad = []
        n = self.dim
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for e in range(n):
                        s = sum(self.fc(d, a, b) * self.fc(e, d, c)
                                + self.fc(d, b, c) * self.fc(e, d, a)
                                + self.fc(d, c, a) * self.fc(e, d, b) for d in range(n))
                        if s:
                            bad.append((a, b, c, e))
        return bad

    def gen_name(self, a):
        return "th" + self.labels[a]


class InvalidLieData(ValueError):
    pass


def build_ce(spec, check=True):
    """The Chevalley-Eilenberg cdga of a LieNSpec.

    With ``check`` the square-zero condition (equivalently the Jacobi identity
    and the cocycle condition on kappa) is verified and InvalidLieData raised.
    """
    n = spec.dim
    gens = [Generator(spec.gen_name(a), 1) for a in range(n)]
    if spec.N == 2:
        gens.append(Generator("nu", 2))
    aliases = {}
    for a in range(n):
        for alias in (spec.basis[a], spec.labels[a]):
            if alias != spec.gen_name(a) and alias not in [g.name for g in gens]:
                aliases[alias] = spec.gen_name(a)
    if spec.N == 2:
        aliases.setdefault("x_nu", "nu")
    alg = GradedAlgebra(gens, aliases)
    th = [alg.gen_at(a) for a in range(n)]
    diff = {}
    for a in range(n):
        v = alg.zero()
        for b in range(n):
            for c in range(n):
                f = spec.fc(a, b, c)
                if f:
                    v = v + th[b] * th[c] * (-f / 2)
        diff[gens[a].name] = v
    if spec.N == 2:
        v = alg.zero()
        for (a, b, c), k in spec.kappa.items():
            v = v + th[a] * th[b] * th[c] * (-k / 6)
        diff["nu"] = v
    A = Cdga(alg, diff)
    A.lie = spec
    if check:
        bad = check_square_zero(A)
        if bad:
            raise InvalidLieData("d^2 != 0 on %s" % ", ".join(sorted(bad)))
    return A


def strict_rep_module(A, rho, degrees=None, d_w=None, name="W"):
    """The CE module of a strict representation.

    ``rho`` maps basis labels to square matrices acting on column vectors,
    x_a . w_i = sum_j rho(x_a)[j][i] w_j.  The differential is
    d(w_i) = d_W(w_i) + sum_a th^a (x) x_a . w_i, where the optional constant
    part ``d_w`` (again a column-convention matrix) must be a chain map.
    """
    spec = A.lie
    alg = A.alg
    mats = {spec.pos(k): v for k, v in rho.items()}
    bad = rep_residues(spec, mats)
    if bad:
        raise InvalidLieData("not a representation: rho([x,y]) != [rho(x), rho(y)] at %s"
                             % ", ".join("(%s,%s)" % (spec.labels[a], spec.labels[b])
                                         for a, b in bad))
    dim = len(next(iter(mats.values()))) if mats else len(d_w)
    degrees = list(degrees) if degrees is not None else [0] * dim
    mat = {}
    for a, R in mats.items():
        th = alg.gen_at(a)
        for i in range(dim):
            for j in range(dim):
                c = Fraction(R[j][i])
                if c:
                    mat[(i, j)] = mat.get((i, j), alg.zero()) + th * c
    if d_w is not None:
        for i in range(dim):
            for j in range(dim):
                c = Fraction(d_w[j][i])
                if c:
                    mat[(i, j)] = mat.get((i, j), alg.zero()) + alg.scalar(c)
    basis = ["%s%d" % (name.lower(), i + 1) for i in range(dim)]
    return DgMod(A, basis, degrees, mat, name=name)


def _matmul(X, Y):
    n = len(X)
    return [[sum(Fraction(X[i][k]) * Fraction(Y[k][j]) for k in range(n)) for j in range(n)]
            for i in range(n)]


def rep_residues(spec, mats):
    """Index pairs (a, b) where rho([x_a, x_b]) differs from the commutator."""
    if not mats:
        return []
    dim = len(next(iter(mats.values())))
    zero = [[0] * dim for _ in range(dim)]
    bad = []
    for a in range(spec.dim):
        for b in range(a + 1, spec.dim):
            X, Y = mats.get(a, zero), mats.get(b, zero)
            XY, YX = _matmul(X, Y), _matmul(Y, X)
            for i in range(dim):
                if any(XY[i][j] - YX[i][j] != sum(spec.fc(c, a, b) * Fraction(mats.get(c, zero)[i][j])
                                                   for c in range(spec.dim))
                       for j in range(dim)):
                    bad.append((a, b))
                    break
    return bad


def trivial_module(A, degrees, d_w=None, name="T"):
    """Copies of the trivial representation with a constant differential."""
    dim = len(degrees)
    alg = A.alg
    mat = {}
    if d_w is not None:
        for i in range(dim):
            for j in range(dim):
                c = Fraction(d_w[j][i])
                if c:
                    mat[(i, j)] = alg.scalar(c)
    return DgMod(A, ["%s%d" % (name.lower(), i + 1) for i in range(dim)],
                 degrees, mat, name=name)


# -- built-in examples ---------------------------------------------------------


def sl2_spec(kappa=False):
    """sl2 with [x+, x-] = x3, [x3, x+-] = +-2 x+-; optionally with kappa(+,-,3) = 1."""
    br = {("+", "-"): {"3": 1}, ("3", "+"): {"+": 2}, ("3", "-"): {"-": -2}}
    k = {("+", "-", "3"): 1} if kappa else None
    reps = {
        "fund": {"+": [[0, 1], [0, 0]], "-": [[0, 0], [1, 0]], "3": [[1, 0], [0, -1]]},
        "adj": {"+": [[0, 0, -2], [0, 0, 0], [0, 1, 0]],
                "-": [[0, 0, 0], [0, 0, 2], [-1, 0, 0]],
                "3": [[2, 0, 0], [0, -2, 0], [0, 0, 0]]},
    }
    return LieNSpec(["x+", "x-", "x3"], br, k, N=2 if kappa else 1,
                    name="sl2_kappa" if kappa else "sl2", reps=reps)


def heis_spec(kappa=False):
    """The Heisenberg algebra [x, y] = z; optionally with kappa(x,y,z) = 1."""
    br = {("x", "y"): {"z": 1}}
    k = {("x", "y", "z"): 1} if kappa else None
    reps = {"std": {"x": [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
                    "y": [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
                    "z": [[0, 0, 1], [0, 0, 0], [0, 0, 0]]}}
    return LieNSpec(["x", "y", "z"], br, k, N=2 if kappa else 1,
                    name="heis_kappa" if kappa else "heis", reps=reps)


def abelian_spec(dim=2):
    return LieNSpec(["a%d" % i for i in range(dim)], {}, None, N=1, name="abelian%d" % dim)


# -- shifted Poisson structures ------------------------------------------------


from .geometry import PolyvectorAlgebra, mc_check, polyvec_basis, polyvec_diff, schouten  # noqa: E402
from .linalg import echelon, nullspace  # noqa: E402


class Branch:
    """A linear family of solutions, possibly with quadratic relations left over.

    ``vectors`` span the family (polyvectors); ``condition`` describes an open
    condition on the parameters (such as pi != 0) that cuts out the branch from
    its linear closure; ``relations`` are the remaining quadratic equations in
    the parameters p1, p2, ... (empty when every point of the span solves the
    Maurer-Cartan equation).
    """

    def __init__(self, name, vectors, condition=None, relations=()):
        self.name = name
        self.vectors = list(vectors)
        self.condition = condition
        self.relations = list(relations)

    @property
    def dim(self):
        return len(self.vectors)

    @property
    def is_linear(self):
        return not self.relations


class PoissonSolution:
    """Solutions of d pi + 1/2 {pi, pi} = 0 among degree n+2 polyvectors of weight 2."""

    def __init__(self, PA, basis, branches, verdict, pi_part=None, spec=None):
        self.PA = PA
        self.basis = basis
        self.branches = branches
        self.verdict = verdict
        self._pi_part = pi_part or (lambda m: True)
        self.spec = spec

    @property
    def feasible(self):
        return self.verdict != "infeasible"

    def pi_projection(self, P):
        return type(P)(P.alg, {m: c for m, c in P.terms.items() if self._pi_part(m)})

    def instances(self, rng, count=3, coeffs=(-2, -1, 1, 2, 3)):
        """Random points of the linear branches (respecting pi != 0 conditions)."""
        out = []
        for br in self.branches:
            if not br.is_linear or not br.vectors:
                continue
            for _ in range(count):
                for _try in range(20):
                    P = self.PA.alg.zero()
                    for v in br.vectors:
                        P = P + v * rng.choice(coeffs)
                    if br.condition == "pi != 0" and not self.pi_projection(P):
                        continue
                    out.append(P)
                    break
        return out

    def coordinates(self, P):
        """For Lie data: {("pi", a, b): pi^{ab}, ("pit", a, b): pit^a_b}."""
        spec = self.spec
        PA = self.PA
        nb = PA.nb
        out = {}
        for m, c in P.terms.items():
            base, hats = PA.split_mono(m)
            th = [i for i in range(spec.dim) if base[i]]
            if not any(base) and len(hats) == 2:
                a, b = hats
                if a == b:
                    out[("pi", a, a)] = 2 * c
                else:
                    out[("pi", a, b)] = c
                    out[("pi", b, a)] = c
            elif len(th) == 1 and len(hats) == 2 and hats[1] == nb - 1:
                out[("pit", hats[0], th[0])] = c
            else:
                raise ValueError("unexpected monomial in a Lie-type polyvector")
        return out


def _span_rows(vectors):
    return [dict(v.terms) for v in vectors]


def _reparametrize(vectors, pi_part):
    """Split a basis into r vectors with independent pi-parts and a basis of the
    kernel of the pi-projection."""
    if not vectors:
        return [], []
    # eliminate on [pi-part | identity] to find the kernel
    rows = []
    for k, v in enumerate(vectors):
        r = {(0, m): c for m, c in v.terms.items() if pi_part(m)}
        r[(1, k)] = Fraction(1)
        rows.append(r)
    piv = echelon(rows)
    head, kernel = [], []
    for col in sorted(piv):
        row = piv[col]
        combo = vectors[0].alg.zero()
        for c, x in row.items():
            if c[0] == 1:
                combo = combo + vectors[c[1]] * x
        (head if col[0] == 0 else kernel).append(combo)
    return head, kernel


def _vec_poly(PA, v):
    return sum((PA.alg.monomial(m, c) for m, c in v.items()), PA.alg.zero())


def _quadratic_table(PA, vectors):
    """{monomial: {(k, l): coeff}} for {pi, pi} with pi = sum_k p_k V_k, k <= l."""
    table = {}
    for k, Vk in enumerate(vectors):
        for l in range(k, len(vectors)):
            br = schouten(PA, Vk, vectors[l])
            f = 1 if k == l else 2
            for m, c in br.terms.items():
                table.setdefault(m, {})
                table[m][(k, l)] = table[m].get((k, l), 0) + c * f
    return {m: {kl: c for kl, c in row.items() if c} for m, row in table.items()}


def _format_relation(row):
    parts = []
    for (k, l), c in sorted(row.items()):
        mono = "p%d^2" % (k + 1) if k == l else "p%d*p%d" % (k + 1, l + 1)
        parts.append("%s*%s" % (c, mono))
    return " + ".join(parts) + " = 0" if parts else "0 = 0"


def solve_poisson(A, n=2, pi_part=None, spec=None):
    """Weight-2 solutions of the Maurer-Cartan equation in Pol(A, n) of degree n+2.

    The linear part d(pi) = 0 is solved exactly; the quadratic part
    {pi, pi} = 0 is then substituted into the linear family.  When the part
    of the family detected by ``pi_part`` has dimension one, the quadratic
    equations are split into the cases lambda = 0 and lambda != 0, each of
    which is linear; otherwise the quadratic relations are reported as is.
    Higher weights are required to have no polyvectors of this degree.
    """
    PA = PolyvectorAlgebra(A, n)
    deg = n + 2
    for w in range(3, 2 * deg + 2):
        if polyvec_basis(PA, deg, w):
            raise NotImplementedError("polyvectors of weight %d and degree %d exist" % (w, deg))
    if pi_part is None:
        nb = PA.nb
        def pi_part(m):
            return not any(m[:nb])
    basis = polyvec_basis(PA, deg, 2)
    cols = [next(iter(b.terms)) for b in basis]
    rows = {}
    for b, col in zip(basis, cols):
        for m, c in polyvec_diff(PA, b).terms.items():
            rows.setdefault(m, {})[col] = c
    ns = nullspace([rows[k] for k in sorted(rows)], cols)
    family = [_vec_poly(PA, v) for v in ns]
    table = _quadratic_table(PA, family)
    if not table:
        return PoissonSolution(PA, basis, [Branch("linear", family)],
                               "linear" if family else "trivial", pi_part, spec)
    head, kernel = _reparametrize(family, pi_part)
    vectors = head + kernel
    table = _quadratic_table(PA, vectors)
    r = len(head)
    if r == 1 and all(k == 0 for row in table.values() for (k, l) in row):
        branches = []
        # lambda = 0: only the kernel directions remain and {pi, pi} restricts to 0
        branches.append(Branch("pi = 0", kernel))
        # lambda != 0: divide by lambda, which leaves linear equations in (lambda, mu)
        lin_rows = [{l: c for (k, l), c in row.items()} for row in table.values()]
        sol = nullspace(lin_rows, list(range(len(vectors))))
        span = [sum((vectors[i] * c for i, c in v.items()), PA.alg.zero()) for v in sol]
        span = [_vec_poly(PA, v) for v in echelon(_span_rows(span)).values()]
        nonzero = [v for v in span if any(pi_part(m) for m in v.terms)]
        if nonzero:
            branches.append(Branch("generic", span, condition="pi != 0"))
            verdict = "linear"
        else:
            verdict = "pi = 0 forced"
        return PoissonSolution(PA, basis, branches, verdict, pi_part, spec)
    relations = [_format_relation(row) for _, row in sorted(table.items())]
    return PoissonSolution(PA, basis, [Branch("variety", vectors, relations=relations)],
                           "variety", pi_part, spec)


def solve_lie_invariance(spec):
    """2-shifted Poisson structures on CE(g) for a Lie algebra g: invariant
    symmetric tensors, found as the kernel of the polyvector differential."""
    if spec.N != 1:
        raise ValueError("solve_lie_invariance expects a Lie algebra (N = 1)")
    return solve_poisson(build_ce(spec), 2, spec=spec)


def solve_string_poisson(spec, require_nonzero_pi=False):
    """2-shifted Poisson structures on CE of a string Lie 2-algebra."""
    if spec.N != 2:
        raise ValueError("solve_string_poisson expects a string Lie 2-algebra (N = 2)")
    sol = solve_poisson(build_ce(spec), 2, spec=spec)
    if require_nonzero_pi:
        keep = [b for b in sol.branches
                if b.relations or any(sol.pi_projection(v) for v in b.vectors)]
        sol.branches = keep
        if not keep:
            sol.verdict = "infeasible"
    return sol


def span_equal_polys(us, vs):
    """Do two lists of polyvectors span the same space?"""
    a, b = echelon(_span_rows(us)), echelon(_span_rows(vs))
    return a.keys() == b.keys() and all(a[k] == b[k] for k in a)


def check_solution_instances(sol, rng, count=3):
    """mc_check residues of random instances; every residue must be zero."""
    out = []
    for P in sol.instances(rng, count):
        out.append((P, mc_check(sol.PA, P)))
    return out
