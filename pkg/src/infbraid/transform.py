"""Pseudo-natural transformations between functors C^n -> C, and modifications.

Objects of C^n are n-tuples of DgMods; morphisms are n-tuples of ModMaps
(the pure tensors h_1 (x) ... (x) h_n of the enriched product).  A functor is
a pair of Python callables on objects and morphisms, drawn from a small
vocabulary (identity, iterated tensor, regrouping, permutation, Omega[1]).

A ``ComponentSet`` is evaluated lazily: ``single(c)`` is the degree-0 map
F(c) -> G(c) and ``double(h)`` is the degree -1 map F(c) -> G(c') attached
to a degree-0 morphism h : c -> c'.  Equalities of degree -1 components are
tested modulo exact maps (the hom complexes are truncated to degrees -1, 0).
"""

from fractions import Fraction

from .dgmod import (compose, hom_diff, homotopy_equal_mod_exact, identity, omega_on_map,
                    omega_tensor, tensor_maps, tensor_module, zero_map)


def _src(h):
    return tuple(x.source for x in h)


def _tgt(h):
    return tuple(x.target for x in h)


# -- functors ----------------------------------------------------------------------


class Functor:
    def __init__(self, arity, coarity, obj, mor, name):
        self.arity = arity
        self.coarity = coarity
        self._obj = obj
        self._mor = mor
        self.name = name

    def obj(self, c):
        return tuple(self._obj(tuple(c)))

    def mor(self, h):
        return tuple(self._mor(tuple(h)))

    def obj1(self, c):
        out = self.obj(c)
        assert len(out) == 1
        return out[0]

    def mor1(self, h):
        out = self.mor(h)
        assert len(out) == 1
        return out[0]

    def __repr__(self):
        return "Functor(%s)" % self.name


def identity_functor(n=1):
    return Functor(n, n, lambda c: c, lambda h: h, "id%d" % n)


def tensor_functor(n):
    return Functor(n, 1, lambda c: (tensor_module(*c),), lambda h: (tensor_maps(*h),),
                   "tensor%d" % n)


def regroup_functor(groups, n):
    """C^n -> C^len(groups): tensor the listed factors of each group (in order)."""
    groups = [tuple(g) for g in groups]

    def obj(c):
        return tuple(tensor_module(*[c[i] for i in g]) for g in groups)

    def mor(h):
        return tuple(tensor_maps(*[h[i] for i in g]) for g in groups)

    return Functor(n, len(groups), obj, mor, "group%s" % (groups,))


def permutation_functor(perm):
    """(c_0, ..., c_{n-1}) -> (c_{perm[0]}, ..., c_{perm[n-1]})."""
    perm = tuple(perm)
    return Functor(len(perm), len(perm), lambda c: tuple(c[p] for p in perm),
                   lambda h: tuple(h[p] for p in perm), "perm%s" % (perm,))


def omega_functor():
    return Functor(1, 1, lambda c: (omega_tensor(c[0]),), lambda h: (omega_on_map(h[0]),),
                   "Omega[1](x)-")


def compose_functors(G, F):
    """G o F."""
    return Functor(F.arity, G.coarity, lambda c: G.obj(F.obj(c)), lambda h: G.mor(F.mor(h)),
                   "%s.%s" % (G.name, F.name))


# -- component sets ----------------------------------------------------------------


def _memo(cache, fn, args):
    # keyed on identity; the arguments are kept alive so ids are not reused
    key = tuple(id(x) for x in args)
    hit = cache.get(key)
    if hit is None or any(a is not b for a, b in zip(hit[1], args)):
        hit = (fn(args), args)
        cache[key] = hit
    return hit[0]


class ComponentSet:
    """A pseudo-natural transformation zeta : F => G with target category C."""

    def __init__(self, source, target, single, double, name="zeta"):
        self.source = source
        self.target = target
        self._single = single
        self._double = double
        self.name = name
        self._sc = {}
        self._dc = {}

    def single(self, c):
        return _memo(self._sc, self._single, tuple(c))

    def double(self, h):
        return _memo(self._dc, self._double, tuple(h))

    def __add__(self, other):
        if other is ZERO:
            return self
        return ComponentSet(self.source, self.target,
                            lambda c: self.single(c) + other.single(c),
                            lambda h: self.double(h) + other.double(h),
                            "(%s+%s)" % (self.name, other.name))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if other is ZERO:
            return self
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return ComponentSet(self.source, self.target, lambda x: self.single(x) * c,
                            lambda h: self.double(h) * c, "%s*%s" % (c, self.name))

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return "ComponentSet(%s)" % self.name


class _Zero:
    """Additive and compositional zero, used to pad truncated series."""

    def __add__(self, other):
        return other

    __radd__ = __add__

    def __neg__(self):
        return self

    def __sub__(self, other):
        return -other if other is not self else self

    def scale(self, c):
        return self

    def __mul__(self, c):
        return self

    __rmul__ = __mul__

    def __repr__(self):
        return "0"


ZERO = _Zero()


def strict_transformation(source, target, single, name):
    """A strictly natural family: all double components vanish."""
    def double(h):
        return zero_map(source.obj1(_src(h)), target.obj1(_tgt(h)), -1)
    return ComponentSet(source, target, single, double, name)


def identity_transformation(F):
    return strict_transformation(F, F, lambda c: identity(F.obj1(c)), "Id")


def vertical(eta, zeta):
    """eta o zeta: (eta zeta)_c = eta_c zeta_c,
    (eta zeta)(h) = eta(h) zeta_c + eta_{c'} zeta(h)."""
    if eta is ZERO or zeta is ZERO:
        return ZERO

    def double(h):
        return (compose(eta.double(h), zeta.single(_src(h)))
                + compose(eta.single(_tgt(h)), zeta.double(h)))

    return ComponentSet(zeta.source, eta.target,
                        lambda c: compose(eta.single(c), zeta.single(c)), double,
                        "%s.%s" % (eta.name, zeta.name))


def whisker(zeta, P):
    """zeta * Id_P for a functor P: components at P(c) and P(h)."""
    if zeta is ZERO:
        return ZERO
    return ComponentSet(compose_functors(zeta.source, P), compose_functors(zeta.target, P),
                        lambda c: zeta.single(P.obj(c)), lambda h: zeta.double(P.mor(h)),
                        "%s*%s" % (zeta.name, P.name))


def apply_functor(H, zeta):
    """Id_H * zeta for a functor H : C -> C (given by how it acts on maps)."""
    return ComponentSet(compose_functors(H, zeta.source), compose_functors(H, zeta.target),
                        lambda c: H.mor1((zeta.single(c),)),
                        lambda h: H.mor1((zeta.double(h),)),
                        "%s*%s" % (H.name, zeta.name))


def horizontal(zeta2, zeta):
    """zeta' * zeta for zeta : F => G (C^n -> C) and zeta' : F' => G' (C -> C).

    (zeta' * zeta)_c = zeta'_{G(c)} F'(zeta_c),
    (zeta' * zeta)(h) = zeta'(G(h)) F'(zeta_c) + zeta'_{G(c')} F'(zeta(h)).
    """
    F2 = zeta2.source

    def single(c):
        return compose(zeta2.single(zeta.target.obj(c)), F2.mor1((zeta.single(c),)))

    def double(h):
        G = zeta.target
        c, c2 = _src(h), _tgt(h)
        return (compose(zeta2.double(G.mor(h)), F2.mor1((zeta.single(c),)))
                + compose(zeta2.single(G.obj(c2)), F2.mor1((zeta.double(h),))))

    return ComponentSet(compose_functors(F2, zeta.source),
                        compose_functors(zeta2.target, zeta.target), single, double,
                        "%s*%s" % (zeta2.name, zeta.name))


def tensor_of(zetas):
    """(x) * (zeta_1 [x] ... [x] zeta_k) on C^{n_1 + ... + n_k} -> C.

    The double component at h = (h_1, ..., h_k) is the sum over positions p of
    zeta_j,c'_j F_j(h_j) (j < p), zeta_p(h_p), G_j(h_j) zeta_j,c_j (j > p).
    """
    zetas = list(zetas)
    if any(z is ZERO for z in zetas):
        return ZERO
    arities = [z.source.arity for z in zetas]
    n = sum(arities)

    def split(x):
        out, pos = [], 0
        for a in arities:
            out.append(tuple(x[pos:pos + a]))
            pos += a
        return out

    def single(c):
        return tensor_maps(*[z.single(ci) for z, ci in zip(zetas, split(c))])

    def double(h):
        hs = split(h)
        total = None
        for p in range(len(zetas)):
            factors = []
            for j, (z, hj) in enumerate(zip(zetas, hs)):
                if j < p:
                    factors.append(compose(z.single(_tgt(hj)), z.source.mor1(hj)))
                elif j == p:
                    factors.append(z.double(hj))
                else:
                    factors.append(compose(z.target.mor1(hj), z.single(_src(hj))))
            term = tensor_maps(*factors)
            total = term if total is None else total + term
        return total

    def src_obj(c):
        return (tensor_module(*[z.source.obj1(ci) for z, ci in zip(zetas, split(c))]),)

    def src_mor(h):
        return (tensor_maps(*[z.source.mor1(hi) for z, hi in zip(zetas, split(h))]),)

    def tgt_obj(c):
        return (tensor_module(*[z.target.obj1(ci) for z, ci in zip(zetas, split(c))]),)

    def tgt_mor(h):
        return (tensor_maps(*[z.target.mor1(hi) for z, hi in zip(zetas, split(h))]),)

    name = "[x](%s)" % ",".join(z.name for z in zetas)
    return ComponentSet(Functor(n, 1, src_obj, src_mor, "src" + name),
                        Functor(n, 1, tgt_obj, tgt_mor, "tgt" + name), single, double, name)


def commutator(a, b):
    return vertical(a, b) - vertical(b, a)


# -- modifications -----------------------------------------------------------------


class Modification:
    """Gamma : zeta => eta, degree -1 components with d Gamma_c = zeta_c - eta_c."""

    def __init__(self, source, target, comp, name="Gamma"):
        self.source = source
        self.target = target
        self._comp = comp
        self.name = name
        self._cache = {}

    def comp(self, c):
        return _memo(self._cache, self._comp, tuple(c))

    def __add__(self, other):
        return Modification(self.source + other.source, self.target + other.target,
                            lambda c: self.comp(c) + other.comp(c),
                            "(%s+%s)" % (self.name, other.name))

    def scale(self, k):
        return Modification(self.source.scale(k), self.target.scale(k),
                            lambda c: self.comp(c) * k, "%s*%s" % (k, self.name))

    def __sub__(self, other):
        return self + other.scale(-1)


def interchange_coherence(eta2, eta, zeta2, zeta):
    """Components eta'_{H(c)} zeta'_{G(c),H(c)}(eta_c) F'(zeta_c) of the modification
    (eta' * eta) o (zeta' * zeta) => (eta' o zeta') * (eta o zeta).

    zeta : F => G and eta : G => H on C^n -> C; zeta', eta' are endo-level
    transformations C -> C.  The component vanishes when zeta' is strictly natural.
    """
    def comp(c):
        H = eta.target
        return compose(eta2.single(H.obj(c)),
                       compose(zeta2.double((eta.single(c),)),
                               zeta2.source.mor1((zeta.single(c),))))
    return comp


# -- checks --------------------------------------------------------------------------


class CheckResult:
    def __init__(self, name):
        self.name = name
        self.strict_failures = []
        self.exact_failures = []
        self.strict_passes = 0
        self.mod_exact_passes = 0
        self.residues = []

    @property
    def passed(self):
        return not self.strict_failures and not self.exact_failures

    def record_strict(self, label, residue):
        if residue.is_zero():
            self.strict_passes += 1
        else:
            self.strict_failures.append(label)
            self.residues.append((label, residue))

    def record_mod_exact(self, label, lhs, rhs):
        if lhs == rhs:
            self.strict_passes += 1
            return
        ok, _ = homotopy_equal_mod_exact(lhs, rhs)
        if ok:
            self.mod_exact_passes += 1
        else:
            self.exact_failures.append(label)
            self.residues.append((label, lhs - rhs))

    def merge(self, other):
        self.strict_failures += other.strict_failures
        self.exact_failures += other.exact_failures
        self.strict_passes += other.strict_passes
        self.mod_exact_passes += other.mod_exact_passes
        self.residues += other.residues
        return self

    def summary(self):
        return {"name": self.name, "passed": self.passed,
                "strict_passes": self.strict_passes,
                "mod_exact_passes": self.mod_exact_passes,
                "failures": len(self.strict_failures) + len(self.exact_failures)}

    def __repr__(self):
        return "CheckResult(%s: %s)" % (self.name, self.summary())


def _label(x):
    return ",".join(getattr(m, "name", None) or repr(m) for m in x)


def compare_components(zeta, eta, objects, morphisms, name="compare"):
    """zeta == eta: single components exactly, double components mod exact."""
    res = CheckResult(name)
    for c in objects:
        res.record_strict(("single", _label(c)), zeta.single(c) - eta.single(c))
    for h in morphisms:
        res.record_mod_exact(("double", _label(h)), zeta.double(h), eta.double(h))
    return res


def check_pseudonaturality(zeta, morphisms, composable=(), minus_one=(), objects=(),
                           name=None):
    """Pseudo-naturality conditions (1)-(3) on a sample.

    (1) G(h) zeta_c - zeta_{c'} F(h) = d zeta(h), exactly;
        for degree -1 morphisms k, G(k) zeta_c - zeta_{c'} F(k) = zeta(dk) mod exact;
    (2) zeta(id_c) = 0 mod exact;
    (3) zeta(h' h) = zeta(h') F(h) + G(h') zeta(h) mod exact.
    """
    F, G = zeta.source, zeta.target
    res = CheckResult(name or "pseudonaturality(%s)" % zeta.name)
    for h in morphisms:
        c, c2 = _src(h), _tgt(h)
        lhs = compose(G.mor1(h), zeta.single(c)) - compose(zeta.single(c2), F.mor1(h))
        res.record_strict(("(1)", _label(h)), lhs - hom_diff(zeta.double(h)))
    for k in minus_one:
        c, c2 = _src(k), _tgt(k)
        lhs = compose(G.mor1(k), zeta.single(c)) - compose(zeta.single(c2), F.mor1(k))
        dk = tuple(hom_diff(x) if x.degree == -1 else x for x in k)
        res.record_mod_exact(("(1')", _label(k)), lhs, zeta.double(dk))
    for c in objects:
        ids = tuple(identity(x) for x in c)
        d = zeta.double(ids)
        res.record_mod_exact(("(2)", _label(c)), d, zero_map(d.source, d.target, -1))
    for h2, h in composable:
        hh = tuple(compose(a, b) for a, b in zip(h2, h))
        rhs = (compose(zeta.double(h2), F.mor1(h))
               + compose(G.mor1(h2), zeta.double(h)))
        res.record_mod_exact(("(3)", _label(h2) + "|" + _label(h)), zeta.double(hh), rhs)
    return res


def check_modification(Gamma, objects, morphisms, name=None):
    """d Gamma_c = zeta_c - eta_c exactly, and
    Gamma_{c'} F(h) + zeta(h) = eta(h) + G(h) Gamma_c mod exact."""
    zeta, eta = Gamma.source, Gamma.target
    F, G = zeta.source, zeta.target
    res = CheckResult(name or "modification(%s)" % Gamma.name)
    for c in objects:
        res.record_strict(("(1)", _label(c)),
                          hom_diff(Gamma.comp(c)) - (zeta.single(c) - eta.single(c)))
    for h in morphisms:
        c, c2 = _src(h), _tgt(h)
        lhs = compose(Gamma.comp(c2), F.mor1(h)) + zeta.double(h)
        rhs = eta.double(h) + compose(G.mor1(h), Gamma.comp(c))
        res.record_mod_exact(("(2)", _label(h)), lhs, rhs)
    return res
