from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from infbraid.algebra import (Cdga, GradedAlgebra, Generator, check_square_zero,
                              mono_normalize)
from infbraid.geometry import Derivation
from infbraid.lie import build_ce, heis_spec, sl2_spec

from conftest import homogeneous, rational
from oracles import mutations

MIXED = GradedAlgebra([Generator("a", 1), Generator("b", 1), Generator("u", 2),
                       Generator("c", 3), Generator("w", 2)])
EVEN = GradedAlgebra([Generator("p", 2), Generator("q", 2), Generator("r", 4)])


def koszul_sort_sign(degrees, order):
    """Sign of sorting a word of generators by bubble sort with Koszul swaps."""
    word = list(order)
    sign = 1
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if word[j] > word[j + 1]:
                if degrees[word[j]] % 2 and degrees[word[j + 1]] % 2:
                    sign = -sign
                word[j], word[j + 1] = word[j + 1], word[j]
    return sign


@pytest.mark.parametrize("word", [(0, 1), (1, 0), (3, 1, 0), (1, 2, 3, 0), (3, 2, 1, 0),
                                  (4, 3, 0, 1)])
def test_monomial_sign_matches_bubble_sort(word):
    names = [MIXED.generators[i].name for i in word]
    sign, m = mono_normalize(MIXED, names)
    assert sign == koszul_sort_sign(MIXED.degrees, word)
    assert MIXED.mono_degree(m) == sum(MIXED.degrees[i] for i in word)


def test_odd_generator_squares_to_zero():
    a = MIXED.gen("a")
    c = MIXED.gen("c")
    assert (a * a).is_zero()
    assert ((a + c) * (a + c)).is_zero()
    assert not (MIXED.gen("u") * MIXED.gen("u")).is_zero()


@settings(max_examples=60, deadline=None)
@given(homogeneous(MIXED), homogeneous(MIXED))
def test_graded_commutativity(x, y):
    s = -1 if x.degree() * y.degree() % 2 else 1
    assert x * y == y * x * s


@settings(max_examples=40, deadline=None)
@given(homogeneous(MIXED), homogeneous(MIXED), homogeneous(MIXED))
def test_associativity_and_distributivity(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def to_sympy(p, symbols):
    out = 0
    for m, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(symbols, m):
            term *= s ** e
        out += term
    return sympy.expand(out)


@settings(max_examples=40, deadline=None)
@given(homogeneous(EVEN, max_degree=6), homogeneous(EVEN, max_degree=6))
def test_even_products_match_sympy(x, y):
    syms = sympy.symbols("p q r")
    assert to_sympy(x * y, syms) == sympy.expand(to_sympy(x, syms) * to_sympy(y, syms))


def random_derivation(draw, alg, degree):
    values = {}
    for i, g in enumerate(alg.generators):
        target = g.degree + degree
        if target < 0:
            continue
        v = draw(homogeneous(alg, degree=target, max_terms=2))
        if v:
            values[i] = v
    return Derivation(alg, degree, values)


@settings(max_examples=40, deadline=None)
@given(st.data(), st.integers(-1, 2))
def test_derivation_leibniz(data, degree):
    D = random_derivation(data.draw, MIXED, degree)
    x = data.draw(homogeneous(MIXED))
    y = data.draw(homogeneous(MIXED))
    s = -1 if degree * x.degree() % 2 else 1
    assert D(x * y) == D(x) * y + x * D(y) * s


def ce_oracle(spec, A):
    """d th^c = -1/2 f^c_ab th^a th^b (- 1/6 kappa_abc th^a th^b th^c for nu)."""
    alg = A.alg
    th = [alg.gen_at(i) for i in range(spec.dim)]
    out = {}
    for c in range(spec.dim):
        v = alg.zero()
        for a, b in product(range(spec.dim), repeat=2):
            v = v + th[a] * th[b] * (-Fraction(1, 2) * spec.fc(c, a, b))
        out[alg.generators[c].name] = v
    if spec.N == 2:
        v = alg.zero()
        for a, b, c in product(range(spec.dim), repeat=3):
            v = v + th[a] * th[b] * th[c] * (-Fraction(1, 6) * spec.k(a, b, c))
        out["nu"] = v
    return out


@pytest.mark.parametrize("spec", [sl2_spec(), sl2_spec(True), heis_spec(), heis_spec(True)],
                         ids=lambda s: s.name)
def test_ce_differential_matches_structure_constants(spec):
    A = build_ce(spec)
    for name, want in ce_oracle(spec, A).items():
        assert A.diff_of(name) == want
    assert check_square_zero(A) == {}


def test_sl2_ce_values():
    A = build_ce(sl2_spec())
    g = A.alg.gen
    assert A.d(g("th3")) == -(g("th+") * g("th-"))
    assert A.d(g("th+")) == -2 * g("th3") * g("th+")
    assert A.d(g("th-")) == 2 * g("th3") * g("th-")


@pytest.mark.parametrize("spec", [sl2_spec(), sl2_spec(True), heis_spec(True)],
                         ids=lambda s: s.name)
def test_square_zero_detects_exactly_the_jacobi_violations(spec):
    failing = 0
    for where, mutant in mutations(spec):
        A = build_ce(mutant, check=False)
        broken_jacobi = bool(mutant.jacobi_residues())
        assert bool(check_square_zero(A)) == broken_jacobi, where
        failing += broken_jacobi
    assert failing > 0


def test_cdga_rejects_wrong_degree():
    alg = GradedAlgebra([Generator("x", 1), Generator("y", 2)])
    with pytest.raises(ValueError):
        Cdga(alg, {"x": alg.gen("x")})


def test_square_zero_reports_residue():
    alg = GradedAlgebra([Generator("x", 1), Generator("y", 2), Generator("z", 3)])
    A = Cdga(alg, {"x": alg.gen("y"), "y": alg.gen("z")})
    bad = check_square_zero(A)
    assert set(bad) == {"x"}
    assert bad["x"] == alg.gen("z")


@given(rational(), rational())
def test_scalar_arithmetic(x, y):
    assert MIXED.scalar(x) * MIXED.scalar(y) == MIXED.scalar(x * y)
    assert (MIXED.scalar(x) - MIXED.scalar(x)).is_zero()
