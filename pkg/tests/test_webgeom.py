import random

import pytest

from conftest import random_poly
from painleve_webs.algebra import VariableContext, ratfun
from painleve_webs.surface import surface_lookup
from painleve_webs.webgeom import (
    ChartOneForm,
    DegenerateWeb,
    PlaneFrame,
    SurfaceFrame,
    ThreeWeb,
    blaschke_curvature,
    curvature_general,
    curvature_slope_formula,
    leaf_line_curvature,
    normalize_web,
    surface_web_curvature,
    web_theta,
)

CTX = VariableContext(param_vars=("c",))
FRAME = PlaneFrame(CTX, ("x1", "x2"))
X, Y, C = (ratfun(CTX.var(v)) for v in ("x1", "x2", "c"))
ONE, ZERO = FRAME.lift(1), FRAME.lift(0)
DX, DY = ChartOneForm(ONE, ZERO), ChartOneForm(ZERO, ONE)


def web(*pairs):
    return ThreeWeb(tuple(ChartOneForm(FRAME.lift(a), FRAME.lift(b)) for a, b in pairs), FRAME)


def rand(rng, nterms=3, deg=2):
    while True:
        p = random_poly(rng, CTX, nterms=nterms, deg=deg, nvars=2)
        if not p.is_zero():
            return ratfun(p)


# -- normalize ------------------------------------------------------------------


def test_normalize_examples():
    a, b = X + Y, X * Y + 1
    w = normalize_web(ThreeWeb.slope_web(FRAME, a, b))
    assert w.forms[0] == ChartOneForm(-a, ZERO)
    assert w.forms[1] == ChartOneForm(ZERO, -b)
    assert w.forms[2] == ChartOneForm(a, b)
    w = normalize_web(ThreeWeb.slope_web(FRAME, 1, 1))
    assert w.forms == (ChartOneForm(-ONE, ZERO), ChartOneForm(ZERO, -ONE), ChartOneForm(ONE, ONE))
    with pytest.raises(DegenerateWeb):
        normalize_web(ThreeWeb((DX, DX, DY), FRAME))


def test_theta_examples():
    a, b = X * X + Y, 2 * Y + X * Y
    theta = web_theta(normalize_web(ThreeWeb.slope_web(FRAME, a, b)))
    assert theta == ChartOneForm(FRAME.derive(b, 0) / b, FRAME.derive(a, 1) / a)
    assert web_theta(normalize_web(ThreeWeb.slope_web(FRAME, 1, 1))).is_zero()
    theta = web_theta(normalize_web(ThreeWeb.slope_web(FRAME, X + Y, 1)))
    assert theta == ChartOneForm(ZERO, ONE / (X + Y))


def test_theta_requires_normalized_web():
    with pytest.raises(ValueError):
        web_theta(ThreeWeb.slope_web(FRAME, X, Y))


def test_curvature_examples():
    assert blaschke_curvature(ThreeWeb.slope_web(FRAME, 1, 1), check=True).is_zero()
    k = blaschke_curvature(ThreeWeb.slope_web(FRAME, X + Y, 1), check=True)
    assert k.c == -ONE / (X + Y) ** 2
    assert blaschke_curvature(ThreeWeb.slope_web(FRAME, X * Y, 1), check=True).is_zero()


def test_degenerate_slope_web():
    with pytest.raises(DegenerateWeb):
        curvature_slope_formula(FRAME, ZERO, ONE)
    with pytest.raises(DegenerateWeb):
        blaschke_curvature(ThreeWeb.slope_web(FRAME, 0, X))


# -- properties -----------------------------------------------------------------


def test_closed_form_matches_general_path_random():
    rng = random.Random(11)
    for _ in range(60):
        a, b = rand(rng), rand(rng)
        if rng.random() < 0.3:
            a = a / rand(rng, nterms=2, deg=1)
        w = ThreeWeb.slope_web(FRAME, a, b)
        assert curvature_general(w).c == curvature_slope_formula(FRAME, a, b).c


def test_normalized_sum_and_third_relation_random():
    rng = random.Random(12)
    done = 0
    while done < 50:
        pairs = [(rand(rng, 2, 1), rand(rng, 2, 1)) for _ in range(3)]
        w = web(*pairs)
        try:
            n = normalize_web(w)
        except DegenerateWeb:
            continue
        total = n.forms[0] + n.forms[1] + n.forms[2]
        assert total.is_zero()
        theta = web_theta(n)  # asserts the third relation internally
        for form in n.forms:
            assert form.d(FRAME).c == theta.wedge(form).c
        done += 1


@pytest.mark.parametrize("g", [X, X + Y], ids=["g=x", "g=x+y"])
def test_rescaling_invariance_random(g):
    rng = random.Random(13)
    done = 0
    while done < 50:
        pairs = [(rand(rng, 2, 1), rand(rng, 2, 1)) for _ in range(3)]
        try:
            n = normalize_web(web(*pairs))
        except DegenerateWeb:
            continue
        theta = web_theta(n)
        scaled = ThreeWeb(tuple(f.scale(g) for f in n.forms), FRAME)
        theta_g = web_theta(scaled)
        dg_over_g = ChartOneForm(FRAME.derive(g, 0) / g, FRAME.derive(g, 1) / g)
        assert theta_g == theta + dg_over_g
        assert theta_g.d(FRAME).c == theta.d(FRAME).c
        done += 1


def test_parallel_webs_are_flat():
    rng = random.Random(14)
    for _ in range(20):
        a = ratfun(CTX.const(rng.randint(1, 9)))
        b = ratfun(CTX.const(rng.randint(-9, -1)))
        assert curvature_general(ThreeWeb.slope_web(FRAME, a, b)).is_zero()
    assert curvature_general(ThreeWeb.slope_web(FRAME, C, C * C + 1)).is_zero()


# -- surface webs -----------------------------------------------------------------


def test_surface_web_examples(pvi):
    flat = pvi.specialize({"a1": 0, "a2": 0, "a3": 0, "a4": 4})
    assert surface_web_curvature(flat, check=True).is_zero
    assert surface_web_curvature(surface_lookup("pi"), check=True).is_zero
    cn = surface_web_curvature(pvi)
    assert not cn.is_zero
    assert cn.numerator.degree("x3") < 2
    assert not cn.denominator.involves(["x3"])


def test_surface_web_numerator_represents_kappa():
    s = surface_lookup("pv")
    cn = surface_web_curvature(s)
    frame = SurfaceFrame.of(s)
    a, b = frame.lift(s.partial("x1")), frame.lift(s.partial("x2"))
    kappa = curvature_slope_formula(frame, a, b).c
    alg = frame.algebra
    assert alg.reduce(cn.numerator) == kappa * alg.reduce(cn.denominator)


def test_surface_web_other_charts_agree_on_flatness():
    pi = surface_lookup("pi")
    for z in ("x1", "x2", "x3"):
        assert surface_web_curvature(pi, z).is_zero


# -- leaf curvature -----------------------------------------------------------------


def test_leaf_curvature_examples():
    assert leaf_line_curvature(Y, FRAME).is_zero()
    assert leaf_line_curvature(3 * X - 2 * Y + 5, FRAME).is_zero()
    assert leaf_line_curvature(Y - X * X, FRAME) == 2
    with pytest.raises(DegenerateWeb):
        leaf_line_curvature(X * X, FRAME)


def test_leaf_curvature_vanishes_on_affine_first_integrals():
    rng = random.Random(15)
    for _ in range(30):
        a, b, c = (rng.randint(-5, 5) for _ in range(3))
        b = b or 1
        f = a * X + b * Y + c + C * X
        assert leaf_line_curvature(f, FRAME).is_zero()
