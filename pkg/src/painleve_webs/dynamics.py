"""Polynomial automorphisms of the PVI cubic and the affine dynamics on its leaves.

The three involutions flip one coordinate across the other root of P viewed
as a quadratic in that coordinate.  On a leaf x3 = t the composite
phi = (sigma_1 then sigma_2) acts on (x1, x2) by an affine map whose linear
part lies in SL_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Polynomial, VariableContext
from .report import Check
from .surface import NonInvertible, SurfaceSpec, surface_lookup


class UnsupportedSurface(ValueError):
    pass


class UnsupportedAngle(ValueError):
    pass


@dataclass(frozen=True)
class PolyMap:
    """(x1, x2, x3) -> images."""

    images: tuple[Polynomial, Polynomial, Polynomial]

    @property
    def ctx(self) -> VariableContext:
        return self.images[0].ctx

    @classmethod
    def identity(cls, ctx: VariableContext) -> "PolyMap":
        return cls(tuple(ctx.var(v) for v in ctx.surface_vars))  # type: ignore[arg-type]

    def substitution(self) -> dict[str, Polynomial]:
        return dict(zip(self.ctx.surface_vars, self.images))

    def apply(self, p: Polynomial) -> Polynomial:
        """p composed with the map."""
        return p.subs(self.substitution())

    def jacobian_minor(self, a: int, b: int) -> Polynomial:
        """d(F1, F2)/d(x_a, x_b) with 1-based indices."""
        va, vb = self.ctx.surface_vars[a - 1], self.ctx.surface_vars[b - 1]
        F1, F2 = self.images[0], self.images[1]
        return F1.derivative(va) * F2.derivative(vb) - F1.derivative(vb) * F2.derivative(va)

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.images) + ")"


def _require_pvi(surface: SurfaceSpec) -> None:
    if surface.poly != surface_lookup("pvi").poly:
        raise UnsupportedSurface(f"involutions are only defined for pvi, not {surface.name}")


def involution_map(i: int, surface: SurfaceSpec | None = None) -> PolyMap:
    surface = surface or surface_lookup("pvi")
    _require_pvi(surface)
    if i not in (1, 2, 3):
        raise ValueError(f"no involution sigma_{i}")
    ctx = surface.ctx
    x = [ctx.var(v) for v in ctx.surface_vars]
    j, k = [n for n in range(3) if n != i - 1]
    images = list(x)
    images[i - 1] = ctx.var(f"a{i}") - x[i - 1] - x[j] * x[k]
    return PolyMap(tuple(images))  # type: ignore[arg-type]


def compose_maps(f: PolyMap, g: PolyMap) -> PolyMap:
    """Apply f first, then g."""
    if f.ctx != g.ctx:
        raise ValueError("maps live in different contexts")
    return PolyMap(tuple(f.apply(p) for p in g.images))  # type: ignore[arg-type]


def phi_map(surface: SurfaceSpec | None = None) -> PolyMap:
    return compose_maps(involution_map(1, surface), involution_map(2, surface))


def pullback_factor(F: PolyMap, surface: SurfaceSpec):
    """The function c with F^* Omega = c Omega, as an element of the x3-chart algebra.

    F^*(dx1^dx2) = M12 dx1^dx2 + M23 dx2^dx3 + M13 dx1^dx3, and on the surface
    dx1^dx2 : dx2^dx3 : dx3^dx1 = P_x3 : P_x1 : P_x2.
    """
    P1, P2, P3 = (surface.partial(v) for v in surface.surface_vars)
    top = F.jacobian_minor(1, 2) * P3 + F.jacobian_minor(2, 3) * P1 - F.jacobian_minor(1, 3) * P2
    alg = surface.algebra("x3")
    return alg.reduce(top) * alg.reduce(F.apply(P3)).inverse()


def _fixed_chart_pullback(i: int, sigma: PolyMap, surface: SurfaceSpec):
    """Omega = dx_j^dx_k / P_xi on the chart eliminating x_i, which sigma_i fixes pointwise."""
    v = surface.surface_vars[i - 1]
    alg = surface.algebra(v)
    Pi = surface.partial(v)
    return alg.reduce(Pi) * alg.reduce(sigma.apply(Pi)).inverse()


def verify_surface_symmetries(surface: SurfaceSpec | None = None) -> list[Check]:
    surface = surface or surface_lookup("pvi")
    _require_pvi(surface)
    ctx = surface.ctx
    ident = PolyMap.identity(ctx)
    P = surface.poly
    sigmas = [involution_map(i, surface) for i in (1, 2, 3)]
    out: list[Check] = []
    for i, s in enumerate(sigmas, 1):
        out.append(Check.compare(f"sigma{i} o sigma{i} = id", ident, compose_maps(s, s)))
    for i, s in enumerate(sigmas, 1):
        out.append(Check.compare(f"P o sigma{i} - P", 0, s.apply(P) - P))
    for i, s in enumerate(sigmas, 1):
        try:
            c = _fixed_chart_pullback(i, s, surface)
            ok = (c + 1).is_zero()
            actual = f"{c} * Omega"
        except NonInvertible as exc:
            ok, actual = False, f"non-invertible: {exc}"
        out.append(Check(f"sigma{i}^* Omega", "pass" if ok else "fail", "-1 * Omega", actual))
    phi = phi_map(surface)
    c = pullback_factor(phi, surface)
    out.append(Check("(sigma1 o sigma2)^* Omega", "pass" if (c - 1).is_zero() else "fail", "1 * Omega", f"{c} * Omega"))
    distinct = all(sigmas[a] != sigmas[b] for a in range(3) for b in range(a + 1, 3))
    out.append(Check("involutions pairwise distinct", "pass" if distinct else "fail", "True", str(distinct)))
    return out


# -- affine form on leaves --------------------------------------------------


Entry = Polynomial


@dataclass(frozen=True)
class AffinePlaneMap:
    """(x1, x2) -> matrix * (x1, x2) + translation.

    Entries are polynomials in the leaf value t (represented by x3) and the
    parameters; after substituting a number for t they only involve parameters.
    """

    matrix: tuple[tuple[Entry, Entry], tuple[Entry, Entry]]
    translation: tuple[Entry, Entry]

    @property
    def ctx(self) -> VariableContext:
        return self.translation[0].ctx

    def det(self) -> Polynomial:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def trace(self) -> Polynomial:
        return self.matrix[0][0] + self.matrix[1][1]

    def then(self, other: "AffinePlaneMap") -> "AffinePlaneMap":
        """Apply self first, then other."""
        (a, b), (c, d) = other.matrix
        (e, f), (g, h) = self.matrix
        u, v = self.translation
        m = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        t = (a * u + b * v + other.translation[0], c * u + d * v + other.translation[1])
        return AffinePlaneMap(m, t)

    def power(self, n: int) -> "AffinePlaneMap":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = AffinePlaneMap.identity(self.ctx)
        for _ in range(n):
            result = result.then(self)
        return result

    @classmethod
    def identity(cls, ctx: VariableContext) -> "AffinePlaneMap":
        one, zero = ctx.one(), ctx.zero()
        return cls(((one, zero), (zero, one)), (zero, zero))

    def is_identity(self) -> bool:
        return self == AffinePlaneMap.identity(self.ctx)

    def subs(self, values: dict) -> "AffinePlaneMap":
        m = tuple(tuple(e.subs(values) for e in row) for row in self.matrix)
        return AffinePlaneMap(m, tuple(e.subs(values) for e in self.translation))  # type: ignore[arg-type]

    def __str__(self) -> str:
        (a, b), (c, d) = self.matrix
        return f"[[{a}, {b}], [{c}, {d}]] + ({self.translation[0]}, {self.translation[1]})"


def affine_from_map(F: PolyMap) -> AffinePlaneMap:
    """Read off the affine action on leaves of x3; F must fix x3 and be affine in (x1, x2)."""
    ctx = F.ctx
    x1, x2, x3 = ctx.surface_vars
    if F.images[2] != ctx.var(x3):
        raise ValueError("map does not preserve the leaves x3 = const")
    rows = []
    trans = []
    for img in F.images[:2]:
        parts = img.collect((x1, x2))
        if any(sum(k) > 1 for k in parts):
            raise ValueError(f"image {img} is not affine in ({x1}, {x2})")
        rows.append((parts.get((1, 0), ctx.zero()), parts.get((0, 1), ctx.zero())))
        trans.append(parts.get((0, 0), ctx.zero()))
    return AffinePlaneMap(tuple(rows), tuple(trans))  # type: ignore[arg-type]


def phi_affine_form(t: object = None, surface: SurfaceSpec | None = None) -> AffinePlaneMap:
    """Matrix (-1, -t; t, t^2 - 1), translation (a1, a2 - a1 t).

    ``t=None`` keeps t symbolic (as x3).  The displayed form is checked
    against the composition of the involutions before it is returned.
    """
    surface = surface or surface_lookup("pvi")
    ctx = surface.ctx
    T, a1, a2 = ctx.var("x3"), ctx.var("a1"), ctx.var("a2")
    form = AffinePlaneMap(((-ctx.one(), -T), (T, T * T - 1)), (a1, a2 - a1 * T))
    composed = affine_from_map(phi_map(surface))
    if composed != form:
        raise AssertionError(f"composition {composed} differs from the displayed affine form {form}")
    if t is not None:
        form = form.subs({"x3": Fraction(t)})
    return form


# -- periodicity ---------------------------------------------------------------

# t = 2 cos(pi p/q) for the rational values of t
RATIONAL_ANGLES: dict[int, Fraction] = {
    0: Fraction(1, 2),
    1: Fraction(1, 3),
    -1: Fraction(2, 3),
    2: Fraction(0, 1),
    -2: Fraction(1, 1),
}


@dataclass(frozen=True)
class PeriodicityReport:
    t: Fraction
    p_over_q: Fraction
    kind: str  # "elliptic" or "parabolic"
    minimal_period: int | None
    bound: int
    bound_is_identity: bool

    @property
    def q(self) -> int:
        return self.p_over_q.denominator

    def checks(self) -> list[Check]:
        out = [Check.info(f"t={self.t}: trace", self.t * self.t - 2)]
        found = "none <= %d" % self.bound if self.minimal_period is None else str(self.minimal_period)
        if self.kind == "parabolic":
            out.append(Check.info(f"t={self.t}: parabolic, not periodic", found))
        else:
            ok = self.bound_is_identity and self.minimal_period is not None and self.bound % self.minimal_period == 0
            out.append(Check(f"t={self.t}: phi^{self.bound} = id", "pass" if ok else "fail", f"period divides {self.bound}", found))
        return out


def minimal_period(f: AffinePlaneMap, bound: int) -> int | None:
    g = f
    for n in range(1, bound + 1):
        if g.is_identity():
            return n
        g = g.then(f)
    return None


def periodicity_check(t: object, p_over_q: object) -> PeriodicityReport:
    t = Fraction(t)
    pq = Fraction(p_over_q)
    if t.denominator != 1 or int(t) not in RATIONAL_ANGLES:
        raise UnsupportedAngle(f"t = {t} is not a rational value of 2cos(pi p/q)")
    if RATIONAL_ANGLES[int(t)] != pq:
        raise UnsupportedAngle(f"t = {t} does not correspond to p/q = {pq}")
    bound = 2 * pq.denominator
    phi = phi_affine_form(t)
    n = minimal_period(phi, bound)
    full = phi.power(bound).is_identity()
    kind = "parabolic" if abs(t) == 2 else "elliptic"
    if kind == "elliptic" and not full:
        raise AssertionError(f"phi_{t}^{bound} is not the identity")
    return PeriodicityReport(t, pq, kind, n, bound, full)


def non_periodicity_probe(t: object = 3, n_max: int = 24) -> int | None:
    """Minimal period of phi_t up to n_max (None when there is none)."""
    return minimal_period(phi_affine_form(Fraction(t)), n_max)


def dynamics_checks(surface: SurfaceSpec | None = None, probe: Sequence[int] = (3,)) -> list[Check]:
    surface = surface or surface_lookup("pvi")
    out = verify_surface_symmetries(surface)
    form = phi_affine_form(None, surface)
    x3 = surface.ctx.var("x3")
    out.append(Check.info("phi on x3 = t", str(form).replace("x3", "t")))
    out.append(Check.compare("det(phi_t)", 1, form.det()))
    out.append(Check.compare("trace(phi_t)", str(x3 * x3 - 2).replace("x3", "t"), str(form.trace()).replace("x3", "t")))
    for t, pq in RATIONAL_ANGLES.items():
        out.extend(periodicity_check(t, pq).checks())
    for t in probe:
        n = non_periodicity_probe(t)
        out.append(Check(f"t={t}: phi^n != id for n <= 24", "pass" if n is None else "fail", "none", str(n) if n else "none"))
    return out
