"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible without ``-s``) and then
asserts.  All comparisons are exact.
"""

import io
import json
import os
import random
from fractions import Fraction

import pytest
import sympy

from infbraid.algebra import check_square_zero
from infbraid.braiding import (check_gamma_equivariance, check_gamma_suite, check_hexagons,
                               check_t_closed, check_tij_calculus, first_order_hexagon,
                               phi_identities_mod_hbar3, t_single, xi_transformation)
from infbraid.cli import main
from infbraid.geometry import PolyvectorAlgebra, polyvec_basis
from infbraid.lie import (build_ce, check_solution_instances, heis_spec, sl2_spec,
                          solve_lie_invariance, solve_string_poisson)
from infbraid.parser import parse_poly
from infbraid.transform import check_pseudonaturality

from conftest import random_polyvector
from oracles import (casimir_tensor, coordinate_vector, law_residues, mutations,
                     poisson_equations, poisson_unknowns, span_of_solution, sympy_span_equal)

PLANS = os.path.join(os.path.dirname(__file__), os.pardir, "plans")


@pytest.fixture
def verdict(capsys):
    def emit(number, title, failures):
        ok = not failures
        with capsys.disabled():
            print("\n%s criterion %2d: %s%s" % ("PASS" if ok else "FAIL", number, title,
                                                "" if ok else " -- " + "; ".join(failures)))
        assert ok, failures
    return emit


def failed(results):
    return ["%s (%d)" % (r.name, len(r.strict_failures) + len(r.exact_failures))
            for r in results if not r.passed]


def samples(s, seed, n2=10, n3=5, n4=3):
    rng = random.Random(seed)
    mods = list(s.corpus.modules.values())
    mors = list(s.corpus.morphisms.values())
    small = [M for M in mods if M.rank <= 2]
    small_mors = [h for h in mors if h.source.rank <= 2 and h.target.rank <= 2]
    return {
        "o2": [(rng.choice(mods), rng.choice(mods)) for _ in range(n2)],
        "m2": [(rng.choice(mors), rng.choice(mors)) for _ in range(n2)],
        "o3": [tuple(rng.choice(mods) for _ in range(3)) for _ in range(n3)],
        "m3": [tuple(rng.choice(mors) for _ in range(3)) for _ in range(n3)],
        "o4": [tuple(rng.choice(small) for _ in range(4)) for _ in range(n4)],
        "m4": [tuple(rng.choice(small_mors) for _ in range(4)) for _ in range(n4)],
    }


def coords(sol, vectors):
    return [{k: sympy.Rational(str(v)) for k, v in sol.coordinates(P).items()} for P in vectors]


def test_01_ce_validity(verdict):
    fails = []
    for spec in (sl2_spec(), heis_spec(True), sl2_spec(True)):
        if check_square_zero(build_ce(spec)):
            fails.append("d^2 != 0 on CE(%s)" % spec.name)
        caught = 0
        for where, mutant in mutations(spec):
            broken = bool(check_square_zero(build_ce(mutant, check=False)))
            caught += broken
            if broken != bool(mutant.jacobi_residues()):
                fails.append("%s mutation %s" % (spec.name, where))
        if not caught:
            fails.append("no mutation of %s detected" % spec.name)
    verdict(1, "CE differentials square to zero; mutations are detected", fails)


def test_02_schouten_laws(verdict):
    fails = []
    for spec in (sl2_spec(), heis_spec(True)):
        PA = PolyvectorAlgebra(build_ce(spec), 2)
        rng = random.Random(2)
        triples = 0
        while triples < 100:
            picks = []
            for _ in range(3):
                w, d = rng.randint(0, 3), rng.randint(0, 7)
                picks += [random_polyvector(PA, rng, d, w), d]
            if not all(picks[0::2]):
                continue
            triples += 1
            for law, res in zip(("antisymmetry", "Leibniz", "Jacobi"),
                                law_residues(PA, *picks)):
                if not res.is_zero():
                    fails.append("%s on %s" % (law, spec.name))
    verdict(2, "Schouten antisymmetry, Leibniz and Jacobi on 2 x 100 triples", fails)


def test_03_poisson_solution_spaces(verdict):
    fails = []
    # sl2: a single invariant, the Casimir
    sol = solve_lie_invariance(sl2_spec())
    casimir = {("pi", 0, 1): 1, ("pi", 1, 0): 1, ("pi", 2, 2): Fraction(1, 2)}
    if [b.dim for b in sol.branches] != [1] or \
            not sympy_span_equal(coords(sol, sol.branches[0].vectors), [casimir]):
        fails.append("sl2 invariants")
    # sl2_kappa: no solution with pi != 0; pi = 0 leaves the 3 derivations
    spec = sl2_spec(True)
    if solve_string_poisson(spec, require_nonzero_pi=True).verdict != "infeasible":
        fails.append("sl2_kappa with pi != 0 not infeasible")
    sol = solve_string_poisson(spec)
    pi, pit, _ = poisson_unknowns(spec)
    _, der, _ = poisson_equations(spec, pi, pit)
    pits = list(pit.values())
    der0 = [e.subs({s: 0 for s in set(pi.values())}) for e in der]
    oracle = [coordinate_vector(pi, pit, v)
              for v in span_of_solution(sympy.solve(der0, pits, dict=True)[0], pits)]
    (b0,) = [b for b in sol.branches if b.name == "pi = 0"]
    if len(oracle) != 3 or not sympy_span_equal(coords(sol, b0.vectors), oracle):
        fails.append("sl2_kappa pi = 0 branch")
    # heis_kappa: lambda/2 z^2, pit(x) = a x + b y + c z, pit(y) = d x - (a + lambda) y + e z,
    # pit(z) = 0
    spec = heis_spec(True)
    pi, pit, _ = poisson_unknowns(spec)
    params = sympy.symbols("a b c d e lam")
    a, b, c, d, e, lam = params
    family = {pi[(2, 2)]: lam, pit[(0, 0)]: a, pit[(1, 0)]: b, pit[(2, 0)]: c,
              pit[(0, 1)]: d, pit[(1, 1)]: -(a + lam), pit[(2, 1)]: e}
    displayed = [coordinate_vector(pi, pit, {s: v.subs({q: int(q == p) for q in params})
                                             for s, v in family.items()}) for p in params]
    sol = solve_string_poisson(spec, require_nonzero_pi=True)
    (gen,) = [b for b in sol.branches if b.name == "generic"]
    if gen.dim != 6 or not sympy_span_equal(coords(sol, gen.vectors), displayed):
        fails.append("heis_kappa family")
    verdict(3, "Poisson solution spaces for sl2, sl2_kappa and heis_kappa", fails)


def test_04_instances_are_maurer_cartan(verdict):
    fails = []
    for spec in (sl2_spec(), heis_spec(), sl2_spec(True), heis_spec(True)):
        sol = solve_lie_invariance(spec) if spec.N == 1 else solve_string_poisson(spec)
        checked = check_solution_instances(sol, random.Random(4), count=6)
        if not checked:
            fails.append("%s emitted nothing" % spec.name)
        for P, res in checked:
            if not all(r.is_zero() for r in res.values()):
                fails.append("%s instance" % spec.name)
    verdict(4, "every emitted Poisson instance solves the Maurer-Cartan equation", fails)


def test_05_xi_pseudonaturality(sl2, heisk, verdict):
    fails = []
    for s in (sl2, heisk):
        mods = list(s.corpus.modules.values())
        mors = list(s.corpus.morphisms.values())
        if len(mods) < 6 or sum(not M.is_strict() for M in mods) < 2 or len(mors) < 10:
            fails.append("corpus too small")
        composable = [((g,), (h,)) for g in mors for h in mors if h.target is g.source][:12]
        res = check_pseudonaturality(xi_transformation(), [(h,) for h in mors], composable,
                                     objects=[(M,) for M in mods], name=s.spec.name)
        fails += failed([res])
    verdict(5, "xi is pseudo-natural on the sample corpus", fails)


def test_06_t_braiding_identities(sl2, heisk, verdict):
    fails = []
    for s in (sl2, heisk):
        smp = samples(s, 6)
        res = [check_t_closed(s.t, smp["o2"]),
               check_pseudonaturality(s.t, smp["m2"]),
               *check_hexagons(s.t, smp["o3"], smp["m3"]),
               check_gamma_equivariance(s.t, smp["o2"], smp["m2"])]
        fails += ["%s: %s" % (s.spec.name, f) for f in failed(res)]
    verdict(6, "t is closed, satisfies both hexagons and is gamma-equivariant", fails)


def test_07_casimir_oracle(sl2, verdict):
    fails = []
    pi = {(0, 1): 1, (1, 0): 1, (2, 2): Fraction(1, 2)}
    for key in ("fund", "adj"):
        M = sl2.mod(key)
        r = M.rank
        got = {((i // r, i % r), (j // r, j % r)): v
               for (i, j), v in t_single(sl2.bv, M, M).entries().items()}
        want = casimir_tensor(sl2.spec, sl2.spec.reps[key], pi)
        # global convention sign +1
        if got != {k: sl2.A.alg.scalar(v) for k, v in want.items()}:
            fails.append(key)
    verdict(7, "t on sl2 fundamental and adjoint equals the Casimir tensor", fails)


def test_08_tij_calculus(sl2, heisk, verdict):
    fails = []
    for s in (sl2, heisk):
        smp = samples(s, 8)
        fails += failed(check_tij_calculus(s.t, smp["o3"], smp["m3"], smp["o4"], smp["m4"]))
    verdict(8, "t_ij additivity, symmetry and commutation of disjoint pairs", fails)


def test_09_gamma_suite(sl2, heisk, verdict):
    fails = []
    for s in (sl2, heisk):
        smp = samples(s, 9)
        strict = [c for c in smp["o3"] if all(M.is_strict() for M in c)]
        if s is sl2:
            V, Ad = sl2.mod("fund"), sl2.mod("adj")
            strict += [(V, V, V), (V, Ad, V), (Ad, V, Ad)]
        fails += failed(check_gamma_suite(s.t, smp["o3"], smp["m3"], strict))
    verdict(9, "Gamma bounds the commutator, is symmetric and vanishes on strict triples",
            fails)


def test_10_first_order_deformation(sl2, heisk, verdict):
    fails = []
    for s in (sl2, heisk):
        smp = samples(s, 10)
        fails += failed(first_order_hexagon(s.t, smp["o3"], smp["m3"], smp["o2"], smp["m2"]))
    verdict(10, "gamma + hbar/2 gamma t satisfies the hexagons mod hbar^2", fails)


def test_11_second_order_associator(sl2, verdict):
    fails = []
    smp = samples(sl2, 11, n3=2, n4=1)
    S = sl2.mod("S'")
    V, Ad = sl2.mod("fund"), sl2.mod("adj")
    nonstrict = smp["o3"] + [(S, V, S)]
    fails += failed(phi_identities_mod_hbar3(sl2.t, nonstrict, smp["m3"], smp["o4"],
                                             smp["m4"]))
    fails += failed(phi_identities_mod_hbar3(sl2.t, [(V, V, V), (V, Ad, V)], [],
                                             expect_strict=True))
    verdict(11, "pentagon and hexagon defects of the associator mod hbar^3", fails)


def test_12_enumeration(verdict):
    fails = []
    PA = PolyvectorAlgebra(build_ce(sl2_spec()), 2)
    if len(polyvec_basis(PA, 4, 2)) != 6:
        fails.append("sl2 weight 2")
    if polyvec_basis(PA, 4, 3):
        fails.append("sl2 weight 3")
    PH = PolyvectorAlgebra(build_ce(heis_spec(True)), 2)
    basis = set(map(repr, polyvec_basis(PH, 4, 2)))
    for a in "xyz":
        for b in "xyz":
            if repr(parse_poly("th%s*s3d(th%s)*s3d(nu)" % (b, a), PH.alg)) not in basis:
                fails.append("heis_kappa th%s s3d(th%s) s3d(nu)" % (b, a))
    verdict(12, "polyvector bases of degree 4", fails)


def test_13_verify_is_deterministic(tmp_path, verdict):
    fails = []
    reports = []
    for k in range(2):
        path = tmp_path / ("report%d.json" % k)
        code = main(["verify", os.path.join(PLANS, "sl2_plan.json"), "--seed", "13",
                     "--json", str(path)], io.StringIO())
        if code != 0:
            fails.append("run %d exit %d" % (k, code))
        reports.append(path.read_bytes())
    if reports[0] != reports[1]:
        fails.append("reports differ")
    if json.loads(reports[0])["seed"] != 13:
        fails.append("seed not recorded")
    verdict(13, "verify with a fixed seed writes byte-identical reports", fails)
