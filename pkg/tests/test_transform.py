from fractions import Fraction

from infbraid.braiding import gamma_transformation, xi_transformation
from infbraid.dgmod import compose, constant_map, hom_diff, identity, tensor_map, zero_map
from infbraid.transform import (ZERO, CheckResult, ComponentSet, Modification,
                                check_modification, check_pseudonaturality, compare_components,
                                horizontal, identity_functor, identity_transformation,
                                omega_functor, permutation_functor, regroup_functor,
                                tensor_functor, tensor_of, vertical, whisker)


def pairs(s):
    h, k = s.mor("S'->S'"), s.mor("fund->S'")
    return [(h, k), (k, s.mor("phi_S")), (s.mor("phi_R"), h)]


def test_functor_vocabulary(sl2):
    V, S = sl2.mod("fund"), sl2.mod("S'")
    assert tensor_functor(2).obj1((V, S)).factors == (V, S)
    assert permutation_functor((1, 0)).obj((V, S)) == (S, V)
    grouped = regroup_functor([(0, 2), (1,)], 3).obj((V, S, V))
    assert [M.factors for M in grouped] == [(V, V), (S,)]
    assert omega_functor().obj1((V,)).factors[1] is V


def test_identity_and_braiding_are_strictly_natural(sl2):
    T2 = tensor_functor(2)
    for zeta in (identity_transformation(T2), gamma_transformation()):
        res = check_pseudonaturality(zeta, pairs(sl2))
        assert res.passed and res.strict_passes == 3


def test_non_natural_family_is_caught(sl2):
    # scaling only the first basis vector does not commute with general maps
    def single(c):
        M = c[0]
        return constant_map(M, M, [[2 if i == j == 0 else int(i == j) for j in range(M.rank)]
                                   for i in range(M.rank)])

    zeta = ComponentSet(identity_functor(1), identity_functor(1), single,
                        lambda h: zero_map(h[0].source, h[0].target, -1), "bad")
    res = check_pseudonaturality(zeta, [(sl2.mor("S'->S'"),)])
    assert not res.passed
    assert res.residues and not res.residues[0][1].is_zero()


def test_xi_pseudonaturality(sl2, heisk):
    for s in (sl2, heisk):
        mors = list(s.corpus.morphisms.values())
        single = [(h,) for h in mors]
        composable = [((a,), (b,)) for a in mors for b in mors if b.target is a.source][:12]
        objects = [(M,) for M in s.corpus.modules.values()]
        res = check_pseudonaturality(xi_transformation(), single, composable, objects=objects)
        assert res.passed, res.residues[:1]
        assert res.strict_passes + res.mod_exact_passes == \
            len(single) + len(composable) + len(objects)


def test_vertical_whisker_and_tensor_preserve_pseudonaturality(sl2):
    t = sl2.t
    h, k, phi = sl2.mor("S'->S'"), sl2.mor("fund->S'"), sl2.mor("phi_S")
    tt = vertical(t, t)
    assert check_pseudonaturality(tt, [(h, k), (phi, h)]).passed
    swapped = whisker(t, permutation_functor((1, 0)))
    assert check_pseudonaturality(swapped, [(h, k)]).passed
    Id1 = identity_transformation(identity_functor(1))
    t_id = tensor_of([t, Id1])
    assert check_pseudonaturality(t_id, [(h, k, phi), (k, h, h)]).passed


def test_horizontal_with_xi(sl2):
    t = sl2.t
    h, k = sl2.mor("S'->S'"), sl2.mor("fund->S'")
    xt = horizontal(xi_transformation(), t)
    assert check_pseudonaturality(xt, [(h, k)]).passed


def test_compare_components_reports_mod_exact(sl2):
    t = sl2.t
    h, k = sl2.mor("S'->S'"), sl2.mor("fund->S'")
    res = compare_components(t, t + ZERO, [(h.source, k.source)], [(h, k)])
    assert res.passed and res.strict_passes == 2
    res = compare_components(t, t.scale(2), [(h.source, k.source)], [])
    assert not res.passed


def test_check_result_bookkeeping(sl2):
    V = sl2.mod("fund")
    E = sl2.mod("acyclic")
    r = CheckResult("demo")
    r.record_strict("zero", zero_map(V, V))
    r.record_mod_exact("exact", identity(E), zero_map(E, E))
    r.record_mod_exact("not exact", identity(V), zero_map(V, V))
    assert r.strict_passes == 1 and r.mod_exact_passes == 1
    assert r.exact_failures == ["not exact"] and not r.passed
    other = CheckResult("more")
    other.record_strict("again", zero_map(V, V))
    assert r.merge(other).strict_passes == 2


def test_modification_from_a_homotopy(sl2):
    # zeta - eta = d(q) objectwise for eta = zeta - d(q), with q natural in c
    T2 = tensor_functor(2)
    Id = identity_transformation(T2)
    q = Fraction(1, 3)

    def comp(c):
        return zero_map(Id.single(c).source, Id.single(c).target, -1)

    M = Modification(Id.scale(q), Id.scale(q), comp)
    pair = pairs(sl2)
    objs = [(a.source, b.source) for a, b in pair]
    assert check_modification(M, objs, pair).passed
    wrong = Modification(Id, Id.scale(q), comp)
    assert not check_modification(wrong, objs, []).passed


def test_double_component_of_identity_vanishes(sl2):
    h = sl2.mor("S'->S'")
    d = identity_transformation(identity_functor(1)).double((h,))
    assert d.is_zero() and d.degree == -1
    assert hom_diff(compose(tensor_map(h, h), identity(tensor_map(h, h).source))) == \
        hom_diff(tensor_map(h, h))
