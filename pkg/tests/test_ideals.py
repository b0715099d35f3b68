import itertools
import random
from fractions import Fraction

import pytest

from painleve_webs.algebra import VariableContext
from painleve_webs.ideals import (
    IdealError,
    IdealGens,
    buchberger_reduced_gb,
    excluded_locus_status,
    extract_param_ideal,
    flat_locus,
    ideal_equal,
    normal_form,
    parse_what,
)
from painleve_webs.surface import surface_lookup

S = VariableContext(param_vars=("s1", "s2", "s3"))


def I(ctx, *gens):
    return IdealGens.of(ctx, gens)


def gb(ctx, *gens, order="lex"):
    return buchberger_reduced_gb(I(ctx, *gens), order)


def strs(G):
    return [str(g) for g in G.basis]


# -- extraction ----------------------------------------------------------------


def test_extract_examples(pvi):
    ctx = pvi.ctx
    ideal = extract_param_ideal(ctx.parse("a3*x1*x2 + (a4 - 4)*x1"), pvi)
    assert set(ideal.generators) == {ctx.parse("a3"), ctx.parse("a4 - 4")}
    assert extract_param_ideal(ctx.zero(), pvi).generators == ()


def test_extract_dedupes():
    ctx = surface_lookup("piv").ctx
    ideal = extract_param_ideal(ctx.parse("s2^2*x1 + s2^2*x2 + s1*s2*x3"), ctx)
    assert len(ideal.generators) == 2


def test_generators_must_be_parameter_polynomials(pvi):
    with pytest.raises(IdealError):
        I(pvi.ctx, "a1*x1")


# -- Buchberger ---------------------------------------------------------------------


def test_buchberger_examples(pvi):
    ctx = pvi.ctx
    assert strs(gb(ctx, "a1", "a2", "a3", "a4 - 4")) == ["a1", "a2", "a3", "a4 - 4"]
    assert strs(gb(ctx, "a1 + a4 - 4", "a4 - 4", "a2", "a3")) == ["a1", "a2", "a3", "a4 - 4"]
    assert strs(gb(S, "s1*s2", "s2^2")) == ["s1*s2", "s2^2"]
    assert str(gb(S, "s1*s2", "s2^2")) == "(s1*s2, s2^2)"


def test_trivial_ideals():
    assert gb(S).is_zero_ideal and str(gb(S)) == "0"
    assert gb(S, 3).is_unit_ideal and str(gb(S, 3)) == "(1)"
    assert gb(S, "s1", "1 - s1").is_unit_ideal
    empty = VariableContext(param_vars=())
    assert gb(empty, 5).is_unit_ideal and gb(empty).is_zero_ideal


def test_basis_is_reduced_and_closed():
    G = gb(S, "s1^2*s2 - s3", "s1*s2^2 - s1", "s3^2 - s2")
    assert G.is_reduced() and G.spolys_reduce_to_zero()
    assert G.basis == tuple(sorted(G.basis, key=lambda g: max(g.terms), reverse=True))


def test_grevlex_order():
    G = gb(S, "s1^2 - s2", "s1*s2 - s3", order="grevlex")
    assert G.order == "grevlex" and G.is_reduced() and G.spolys_reduce_to_zero()
    L = gb(S, "s1^2 - s2", "s1*s2 - s3")
    assert ideal_equal(I(S, *G.basis), I(S, *L.basis))
    with pytest.raises(IdealError):
        gb(S, "s1", order="deglex")


def test_normal_form_examples(pvi):
    ctx = pvi.ctx
    G = gb(ctx, "a1", "a2", "a3", "a4 - 4")
    assert normal_form(ctx.parse("a1*a2"), G).is_zero()
    assert normal_form(ctx.parse("a4"), gb(ctx, "a4 - 4")) == 4
    assert normal_form(S.parse("s1"), gb(S, "s1*s2", "s2^2")) == S.parse("s1")
    with pytest.raises(IdealError):
        normal_form(S.parse("s1"), G)


def test_ideal_equal_examples(pvi):
    assert ideal_equal(I(S, "s2^2"), I(S, S.parse("s2") ** 2))
    assert ideal_equal(I(pvi.ctx, 1), I(pvi.ctx, "a1", "1 - a1"))
    assert not ideal_equal(I(pvi.ctx, "a3"), I(pvi.ctx, "a3^2"))
    with pytest.raises(IdealError):
        ideal_equal(I(S, "s1"), I(pvi.ctx, "a1"))


# -- properties ---------------------------------------------------------------------


def param_poly(rng, nterms=3, deg=2):
    out = S.zero()
    s = [S.var(v) for v in S.param_vars]
    for _ in range(rng.randint(1, nterms)):
        m = S.const(rng.choice([1, -1, 2, -3, Fraction(1, 2)]))
        for v in s:
            m = m * v ** rng.randint(0, deg)
        out = out + m
    return out


def random_ideal(rng, k=3):
    return [g for g in (param_poly(rng) for _ in range(rng.randint(1, k))) if not g.is_zero()] or [S.var("s1")]


def test_groebner_properties_random():
    rng = random.Random(31)
    for _ in range(40):
        gens = random_ideal(rng)
        order = rng.choice(["lex", "grevlex"])
        G = buchberger_reduced_gb(IdealGens.of(S, gens), order)
        assert G.spolys_reduce_to_zero() and G.is_reduced()
        for g in gens:
            assert G.contains(g)
        p = param_poly(rng, nterms=5, deg=3)
        n = normal_form(p, G)
        assert normal_form(n, G) == n
        assert G.contains(p - n)


def test_ideal_equal_properties_random():
    rng = random.Random(32)
    for _ in range(20):
        gens = random_ideal(rng)
        A = IdealGens.of(S, gens)
        assert ideal_equal(A, A)
        perm = list(gens)
        rng.shuffle(perm)
        B = IdealGens.of(S, perm + [perm[0] * 2])
        assert ideal_equal(A, B) and ideal_equal(B, A)
        # adding a combination of the generators changes nothing
        combo = sum((param_poly(rng, 2, 1) * g for g in gens), S.zero())
        assert ideal_equal(A, IdealGens.of(S, gens + [combo]))


def test_deterministic_output():
    gens = ["s1*s3 - s2", "s2^2 - s1", "s3^3 - 1"]
    first = gb(S, *gens)
    for perm in itertools.permutations(gens):
        assert gb(S, *perm).basis == first.basis


# -- flat loci ------------------------------------------------------------------------


def test_parse_what():
    assert parse_what("web") == ("web", None)
    assert parse_what("hess12") == ("hess", (1, 2))
    assert parse_what("hess(2,3)") == ("hess", (2, 3))
    assert parse_what(("hess", (1, 3))) == ("hess", (1, 3))
    assert parse_what(("web", None)) == ("web", None)
    for bad in ("curv", "hess1", ("hess",)):
        with pytest.raises(IdealError):
            parse_what(bad)


def test_flat_locus_examples():
    piv = surface_lookup("piv")
    assert strs(flat_locus(piv, "hess23")) == ["s1*s2", "s2^2"]
    pii = surface_lookup("pii")
    assert strs(flat_locus(pii, "hess13")) == ["alpha"]
    assert flat_locus(surface_lookup("pi"), "web").is_zero_ideal


def test_flat_locus_pvi_web(pvi):
    assert strs(flat_locus(pvi, "web")) == ["a1", "a2", "a3", "a4 - 4"]


def test_excluded_locus_status():
    piv = surface_lookup("piv")
    assert excluded_locus_status(flat_locus(piv, "hess23"), piv) == "excluded"
    pv = surface_lookup("pv")
    assert excluded_locus_status(gb(pv.ctx, "s3"), pv) == "excluded"
    assert excluded_locus_status(gb(pv.ctx, "s1"), pv) == "allowed"
    assert excluded_locus_status(gb(pv.ctx, 1), pv) == "empty"
    pvi = surface_lookup("pvi")
    assert excluded_locus_status(flat_locus(pvi, "hess12"), pvi) == "allowed"


def test_flat_point_kills_numerator(pvi):
    from painleve_webs.ideals import curvature_numerator

    flat = pvi.specialize({"a1": 0, "a2": 0, "a3": 0, "a4": 4})
    for what in ("web", "hess12", "hess23", "hess13"):
        assert curvature_numerator(flat, what).numerator.is_zero()
