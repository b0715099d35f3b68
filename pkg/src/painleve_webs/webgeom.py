"""Blaschke curvature of planar 3-webs.

A web is given by three 1-forms ``a_i dx + b_i dy`` whose coefficient
functions live in a *frame*: either a plain plane chart (rational functions,
partial derivatives) or a surface chart (:class:`SurfaceAlgebraElement`,
implicit chart derivations).  Both expose the same small interface, so the
normalization, connection form and curvature code is shared.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence, Union

from .algebra import Polynomial, RationalFunction, VariableContext, ratfun
from .surface import Chart, SurfaceAlgebra, SurfaceAlgebraElement, SurfaceSpec

ChartFunction = Union[RationalFunction, SurfaceAlgebraElement]


class DegenerateWeb(ValueError):
    pass


class Frame(Protocol):
    def lift(self, value: object) -> ChartFunction: ...

    def derive(self, f: ChartFunction, which: int) -> ChartFunction: ...


class PlaneFrame:
    """Rational functions in two coordinates with ordinary partial derivatives."""

    def __init__(self, ctx: VariableContext, coords: tuple[str, str] | None = None) -> None:
        self.ctx = ctx
        self.coords = coords or (ctx.surface_vars[0], ctx.surface_vars[1])
        for c in self.coords:
            ctx.index(c)

    def lift(self, value: object) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, (Polynomial, int)):
            return ratfun(value, self.ctx)
        raise TypeError(f"cannot lift {value!r} into a plane frame")

    def derive(self, f: ChartFunction, which: int) -> RationalFunction:
        return self.lift(f).derivative(self.coords[which])


class SurfaceFrame:
    """Functions on a surface chart; derivations follow the implicit rule for z."""

    def __init__(self, algebra: SurfaceAlgebra) -> None:
        self.algebra = algebra

    @classmethod
    def of(cls, surface: SurfaceSpec, chart: Chart | str = "x3") -> "SurfaceFrame":
        return cls(surface.algebra(chart))

    def lift(self, value: object) -> SurfaceAlgebraElement:
        if isinstance(value, SurfaceAlgebraElement):
            return value
        if isinstance(value, (Polynomial, RationalFunction, int)):
            return self.algebra.reduce(value)
        raise TypeError(f"cannot lift {value!r} into a surface frame")

    def derive(self, f: ChartFunction, which: int) -> SurfaceAlgebraElement:
        return self.algebra.derive(self.lift(f), which)


def _is_zero(f: ChartFunction) -> bool:
    return f.is_zero()


@dataclass(frozen=True)
class ChartOneForm:
    """a dx + b dy"""

    a: ChartFunction
    b: ChartFunction

    def __add__(self, other: "ChartOneForm") -> "ChartOneForm":
        return ChartOneForm(self.a + other.a, self.b + other.b)

    def scale(self, g: ChartFunction) -> "ChartOneForm":
        return ChartOneForm(g * self.a, g * self.b)

    def is_zero(self) -> bool:
        return _is_zero(self.a) and _is_zero(self.b)

    def d(self, frame: Frame) -> "ChartTwoForm":
        """Exterior derivative: (b_x - a_y) dx^dy."""
        return ChartTwoForm(frame.derive(self.b, 0) - frame.derive(self.a, 1))

    def wedge(self, other: "ChartOneForm") -> "ChartTwoForm":
        return ChartTwoForm(self.a * other.b - self.b * other.a)

    def __str__(self) -> str:
        return f"({self.a}) dx + ({self.b}) dy"


@dataclass(frozen=True)
class ChartTwoForm:
    """c dx^dy"""

    c: ChartFunction

    def is_zero(self) -> bool:
        return _is_zero(self.c)

    def __str__(self) -> str:
        return f"({self.c}) dx^dy"


@dataclass(frozen=True)
class ThreeWeb:
    forms: tuple[ChartOneForm, ChartOneForm, ChartOneForm]
    frame: Frame

    @classmethod
    def slope_web(cls, frame: Frame, a: object, b: object) -> "ThreeWeb":
        """The web (dx, dy, a dx + b dy)."""
        one, zero = frame.lift(1), frame.lift(0)
        return cls(
            (ChartOneForm(one, zero), ChartOneForm(zero, one), ChartOneForm(frame.lift(a), frame.lift(b))),
            frame,
        )

    def delta(self, i: int, j: int) -> ChartFunction:
        wi, wj = self.forms[i], self.forms[j]
        return wi.a * wj.b - wj.a * wi.b


def normalize_web(w: ThreeWeb) -> ThreeWeb:
    """Rescale the forms by (delta_23, delta_31, delta_12) so they sum to zero."""
    d23, d31, d12 = w.delta(1, 2), w.delta(2, 0), w.delta(0, 1)
    for name, d in (("delta_23", d23), ("delta_31", d31), ("delta_12", d12)):
        if _is_zero(d):
            raise DegenerateWeb(f"{name} vanishes identically: two foliations coincide")
    w1, w2, w3 = w.forms
    return ThreeWeb((w1.scale(d23), w2.scale(d31), w3.scale(d12)), w.frame)


def _check_normalized(w: ThreeWeb) -> None:
    total = w.forms[0] + w.forms[1] + w.forms[2]
    if not total.is_zero():
        raise ValueError("web is not normalized (forms do not sum to zero)")


def web_theta(w: ThreeWeb) -> ChartOneForm:
    """The 1-form theta = p dx + q dy with d(w_i) = theta ^ w_i for a normalized web."""
    _check_normalized(w)
    (w1, w2, w3), frame = w.forms, w.frame
    det = w1.a * w2.b - w2.a * w1.b
    if _is_zero(det):
        raise DegenerateWeb("first two foliations are not transversal")
    r1 = w1.d(frame).c
    r2 = w2.d(frame).c
    inv = det.inverse()
    p = (w1.a * r2 - w2.a * r1) * inv
    q = (w1.b * r2 - w2.b * r1) * inv
    theta = ChartOneForm(p, q)
    # the third relation follows from w3 = -w1 - w2
    if not (w3.d(frame).c - theta.wedge(w3).c).is_zero():
        raise AssertionError("d(w3) != theta ^ w3 for a normalized web")
    return theta


def curvature_general(w: ThreeWeb) -> ChartTwoForm:
    """kappa = d(theta) through normalization and the connection form."""
    theta = web_theta(normalize_web(w))
    return theta.d(w.frame)


def curvature_slope_formula(frame: Frame, a: ChartFunction, b: ChartFunction) -> ChartTwoForm:
    """Closed form for the web (dx, dy, a dx + b dy).

    (a_xy a - a_x a_y)/a^2 - (b_xy b - b_x b_y)/b^2
    """
    a, b = frame.lift(a), frame.lift(b)
    if _is_zero(a) or _is_zero(b):
        raise DegenerateWeb("third foliation coincides with one of the coordinate foliations")

    def part(f: ChartFunction) -> ChartFunction:
        fx = frame.derive(f, 0)
        fy = frame.derive(f, 1)
        fxy = frame.derive(fx, 1)
        return (fxy * f - fx * fy) * (f * f).inverse()

    return ChartTwoForm(part(a) - part(b))


def _slope_shape(w: ThreeWeb) -> tuple[ChartFunction, ChartFunction] | None:
    w1, w2, w3 = w.forms
    if (
        (w1.a - 1).is_zero()
        and w1.b.is_zero()
        and w2.a.is_zero()
        and (w2.b - 1).is_zero()
    ):
        return w3.a, w3.b
    return None


def blaschke_curvature(w: ThreeWeb, check: bool = False) -> ChartTwoForm:
    """Blaschke curvature; slope webs use the closed form.

    With ``check`` the general path is evaluated as well and any disagreement
    raises.
    """
    shape = _slope_shape(w)
    if shape is None:
        return curvature_general(w)
    fast = curvature_slope_formula(w.frame, *shape)
    if check:
        general = curvature_general(w)
        if not (fast.c - general.c).is_zero():
            raise AssertionError("closed-form curvature disagrees with the connection-form curvature")
    return fast


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurvatureNumerator:
    """A curvature coefficient written as numerator / denominator.

    ``numerator`` is a polynomial of degree < deg_z(P) in the eliminated
    variable; ``factors`` is the denominator as (factor, multiplicity) pairs
    whose product times ``unit`` is ``denominator``.
    """

    surface: SurfaceSpec
    chart: Chart
    numerator: Polynomial
    denominator: Polynomial
    factors: tuple[tuple[Polynomial, int], ...]

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def factored_denominator(self) -> str:
        parts = []
        for f, e in self.factors:
            s = str(f)
            if len(f) > 1:
                s = f"({s})"
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts) if parts else "1"


def factor_against(D: Polynomial, candidates: Sequence[Polynomial]) -> tuple[tuple[Polynomial, int], ...]:
    """Split D by repeated exact division with the candidate factors.

    Whatever is left over is reported as a final factor of multiplicity one.
    """
    from .algebra import NotDivisible

    out: list[tuple[Polynomial, int]] = []
    rest = D
    for f in candidates:
        f = f.primitive()
        if f.is_constant():
            continue
        e = 0
        while True:
            try:
                q = rest.exquo(f)
            except NotDivisible:
                break
            rest = q
            e += 1
        if e:
            out.append((f, e))
    if not rest.is_constant():
        out.append((rest.primitive(), 1))
    return tuple(out)


def numerator_of(
    value: SurfaceAlgebraElement, surface: SurfaceSpec, chart: Chart, candidates: Sequence[Polynomial] = ()
) -> CurvatureNumerator:
    N, D = value.numerator()
    return CurvatureNumerator(surface, chart, N, D, factor_against(D, candidates) if not N.is_zero() else ())


def surface_web_curvature(surface: SurfaceSpec, chart: Chart | str = "x3", check: bool = False) -> CurvatureNumerator:
    """Curvature of the coordinate 3-web on the surface, projected to the chart.

    The web projects to (dx, dy, P_x dx + P_y dy) with x, y the kept coordinates.
    """
    algebra = surface.algebra(chart)
    frame = SurfaceFrame(algebra)
    x, y = algebra.chart.kept
    a = frame.lift(surface.partial(x))
    b = frame.lift(surface.partial(y))
    kappa = blaschke_curvature(ThreeWeb.slope_web(frame, a, b), check=check)
    candidates = [c.den for elem in (algebra._pz_inverse, a.inverse(), b.inverse()) for c in elem.coeffs]
    return numerator_of(kappa.c, surface, algebra.chart, _distinct(candidates))


def _distinct(polys: Sequence[Polynomial]) -> list[Polynomial]:
    seen = []
    for p in polys:
        p = p.primitive()
        if not p.is_constant() and p not in seen:
            seen.append(p)
    return seen


def leaf_line_curvature(f: ChartFunction, frame: Frame) -> ChartFunction:
    """Second derivative of the leaves {f = const} written as graphs v = phi(u).

    (-f_u^2 f_vv + 2 f_u f_v f_uv - f_v^2 f_uu) / f_v^3
    """
    f = frame.lift(f)
    fu = frame.derive(f, 0)
    fv = frame.derive(f, 1)
    if _is_zero(fv):
        raise DegenerateWeb("f does not depend on the second coordinate")
    fuu = frame.derive(fu, 0)
    fuv = frame.derive(fu, 1)
    fvv = frame.derive(fv, 1)
    top = -(fu * fu * fvv) + 2 * (fu * fv * fuv) - fv * fv * fuu
    return top * (fv * fv * fv).inverse()
