from fractions import Fraction

import pytest

from painleve_webs.parser import ParseError, UnknownIdentifier, parse_expression
from painleve_webs.surface import surface_lookup


def test_pvi_specialized(pvi):
    p = parse_expression("x1^2+x2^2+x3^2+x1*x2*x3-4", pvi.ctx)
    assert p == pvi.specialize({"a1": 0, "a2": 0, "a3": 0, "a4": 4}).poly


def test_juxtaposition_is_rejected(pvi):
    with pytest.raises(UnknownIdentifier) as err:
        parse_expression("x1x2", pvi.ctx)
    assert err.value.pos == 0


def test_rational_coefficient(pvi):
    p = parse_expression("1/2*x1", pvi.ctx)
    assert dict(p.monomials()) == {(1, 0, 0, 0, 0, 0, 0): Fraction(1, 2)}


def test_grammar(pvi):
    ctx = pvi.ctx
    x1, x2 = ctx.var("x1"), ctx.var("x2")
    assert parse_expression("-x1 + x2", ctx) == x2 - x1
    assert parse_expression("+x1", ctx) == x1
    assert parse_expression("(x1 + x2)^2", ctx) == (x1 + x2) ** 2
    assert parse_expression("2*(x1 - 3/4)", ctx) == 2 * x1 - Fraction(3, 2)
    assert parse_expression("x1^0", ctx) == 1
    assert parse_expression("  x1 *\tx2 ", ctx) == x1 * x2
    assert parse_expression("-(x1 - (x2))", ctx) == x2 - x1


@pytest.mark.parametrize(
    "text, pos",
    [
        ("x1 +", 4),
        ("x1 ** 2", 4),
        ("x1^x2", 3),
        ("x1^-1", 3),
        ("(x1 + x2", 8),
        ("x1 + x2)", 7),
        ("1/0", 2),
        ("1/x1", 2),
        ("x1 $ x2", 3),
        ("", 0),
        ("x1 x2", 3),
    ],
)
def test_syntax_errors_carry_position(pvi, text, pos):
    with pytest.raises(ParseError) as err:
        parse_expression(text, pvi.ctx)
    assert err.value.pos == pos


def test_identifiers_are_context_names():
    pi = surface_lookup("pi")
    with pytest.raises(UnknownIdentifier):
        parse_expression("a1*x1", pi.ctx)
    s = surface_lookup("piii-d6")
    assert parse_expression("alpha*beta", s.ctx) == s.ctx.var("alpha") * s.ctx.var("beta")
