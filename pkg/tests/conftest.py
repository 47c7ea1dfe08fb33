import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from infbraid.braiding import Bivector, t_transformation
from infbraid.geometry import PolyvectorAlgebra, polyvec_basis
from infbraid.lie import build_ce, heis_spec, sl2_spec
from infbraid.parser import parse_poly
from infbraid.samples import standard_corpus

SL2_CASIMIR = "s3d(x+)*s3d(x-) + 1/4*s3d(x3)^2"
HEIS_INSTANCE = "1/2*s3d(z)^2 - y*s3d(y)*s3d(nu)"


class Setup:
    """A CE algebra with its 2-shifted polyvectors, a bivector and a sample corpus."""

    def __init__(self, spec, pi2, seed=0):
        self.spec = spec
        self.A = build_ce(spec)
        self.PA = PolyvectorAlgebra(self.A, 2)
        self.pi2 = parse_poly(pi2, self.PA.alg)
        self.bv = Bivector(self.PA, self.pi2)
        self.t = t_transformation(self.bv)
        self._corpus = None
        self.seed = seed

    @property
    def corpus(self):
        if self._corpus is None:
            self._corpus = standard_corpus(self.A, seed=self.seed)
        return self._corpus

    def mod(self, key):
        return self.corpus.modules[key]

    def mor(self, key):
        return self.corpus.morphisms[key]


@pytest.fixture(scope="session")
def sl2():
    return Setup(sl2_spec(), SL2_CASIMIR)


@pytest.fixture(scope="session")
def heisk():
    return Setup(heis_spec(True), HEIS_INSTANCE)


def rational(lo=-3, hi=3):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, 3))


@st.composite
def homogeneous(draw, alg, max_degree=4, degree=None, max_terms=4):
    """A nonzero homogeneous element of a free graded-commutative algebra."""
    if degree is None:
        degree = draw(st.integers(0, max_degree))
    monos = alg.monomials_of_degree(degree)
    if not monos:
        return alg.scalar(draw(st.integers(1, 3))) if degree == 0 else alg.zero()
    picks = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms))
    p = alg.zero()
    for m in picks:
        p = p + alg.monomial(m, draw(rational()))
    return p or alg.monomial(picks[0])


def random_polyvector(PA, rng, degree, weight, density=0.5):
    P = PA.alg.zero()
    for b in polyvec_basis(PA, degree, weight):
        if rng.random() < density:
            P = P + b * rng.choice((-2, -1, 1, 3))
    return P


@st.composite
def polyvectors(draw, PA, max_weight=3, max_degree=8):
    """A nonzero polyvector of homogeneous degree and weight, with that degree."""
    rng = random.Random(draw(st.integers(0, 10 ** 6)))
    while True:
        w = rng.randint(0, max_weight)
        d = rng.randint(0, max_degree)
        P = random_polyvector(PA, rng, d, w)
        if P:
            return P, d
