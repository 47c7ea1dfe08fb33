from fractions import Fraction

import pytest
from hypothesis import given, settings

from infbraid.algebra import GradedAlgebra, Generator
from infbraid.geometry import PolyvectorAlgebra
from infbraid.lie import build_ce, heis_spec, sl2_spec
from infbraid.parser import ParseError, format_poly, parse_poly

from conftest import homogeneous

SL2 = build_ce(sl2_spec())
HEISK = build_ce(heis_spec(True))
PA_SL2 = PolyvectorAlgebra(SL2, 2)
PA_HEISK = PolyvectorAlgebra(HEISK, 2)
WORDS = GradedAlgebra([Generator("x", 2), Generator("xy", 2), Generator("y", 1)])


def test_generators_and_aliases():
    g = SL2.alg.gen
    assert parse_poly("th+*th-", SL2.alg) == g("th+") * g("th-")
    assert parse_poly("x+*x-", SL2.alg) == g("th+") * g("th-")
    assert parse_poly("th-*th+", SL2.alg) == -(g("th+") * g("th-"))
    assert parse_poly("th3*th3", SL2.alg).is_zero()


def test_rationals_powers_and_precedence():
    alg = HEISK.alg
    nu = alg.gen("nu")
    assert parse_poly("-3/4*nu^2 + 2", alg) == nu * nu * Fraction(-3, 4) + alg.scalar(2)
    assert parse_poly("2*(nu + 1)^2", alg) == (nu * nu + nu * 2 + alg.one()) * 2
    assert parse_poly("--nu", alg) == nu
    assert parse_poly(3, alg) == alg.scalar(3)


def test_shifted_generators():
    a = PA_SL2.alg
    P = parse_poly("s3d(x+)*s3d(x-) + 1/4*s3d(x3)^2", a)
    sp, sm, s3 = a.gen("s3d(th+)"), a.gen("s3d(th-)"), a.gen("s3d(th3)")
    assert P == sp * sm + s3 * s3 * Fraction(1, 4)
    assert parse_poly("s3d(th+)", a) == parse_poly('s3d("x+")', a)
    # the hat of nu is odd in Pol(CE(heis_kappa), 2)
    assert parse_poly("s3d(nu)^2", PA_HEISK.alg).is_zero()


def test_longest_match_does_not_split_words():
    assert parse_poly("xy", WORDS) == WORDS.gen("xy")
    assert parse_poly("x*y", WORDS) == WORDS.gen("x") * WORDS.gen("y")
    with pytest.raises(ParseError):
        parse_poly("xyz", WORDS)


@pytest.mark.parametrize("text, pos", [("thx + foo", 6), ("thx * $", 6), ("(thx", None),
                                        ("thx^thy", 4), ("1/0", 0), ("thx thy", 4), ("", None),
                                        ('"thx', 0), ("s3d(thq)", 0)])
def test_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_poly(text, HEISK.alg)
    if pos is not None:
        assert ("at %d" % pos) in str(err.value)


@settings(max_examples=50, deadline=None)
@given(homogeneous(SL2.alg, max_degree=3))
def test_format_parse_round_trip_sl2(p):
    assert parse_poly(format_poly(p), SL2.alg) == p


@settings(max_examples=50, deadline=None)
@given(homogeneous(PA_HEISK.alg, max_degree=5))
def test_format_parse_round_trip_polyvectors(p):
    assert parse_poly(format_poly(p), PA_HEISK.alg) == p


def test_format_truncates_long_output():
    alg = HEISK.alg
    p = sum((alg.gen("nu") ** k for k in range(1, 6)), alg.zero())
    text = format_poly(p, max_terms=2)
    assert text.endswith("(3 more terms)")
    assert format_poly(alg.zero()) == "0"
