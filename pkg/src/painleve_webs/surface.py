"""Function algebra of a cubic surface {P = 0} over a coordinate chart.

A chart keeps two of the surface variables and eliminates the third, ``z``.
Functions on the surface are represented by their canonical remainder
modulo ``P`` as polynomials in ``z`` of degree below ``deg_z(P)``, with
coefficients in the rational function field of the kept variables and the
parameters.  Division by the leading coefficient of ``P`` happens in that
field, so the representative is unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

from .algebra import (
    Polynomial,
    RationalFunction,
    VariableContext,
    ZeroDivision,
    ratfun,
)


class SurfaceError(Exception):
    pass


class UnknownSurface(SurfaceError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class NonInvertible(SurfaceError, ArithmeticError):
    """An algebra element shares a factor with P (it vanishes on a component)."""

    def __init__(self, message: str, gcd: Sequence[RationalFunction] | None = None) -> None:
        super().__init__(message)
        self.gcd = tuple(gcd) if gcd is not None else None


class DegenerateChart(SurfaceError, ValueError):
    pass


SURFACE_VARS = ("x1", "x2", "x3")


@dataclass(frozen=True)
class SurfaceSpec:
    name: str
    poly: Polynomial
    param_names: tuple[str, ...]
    nonzero_params: tuple[str, ...] = ()
    source: str = ""

    def __post_init__(self) -> None:
        for v in self.ctx.surface_vars:
            if self.poly.degree(v) < 1:
                raise SurfaceError(f"{self.name}: defining polynomial does not involve {v}")

    @property
    def ctx(self) -> VariableContext:
        return self.poly.ctx

    @property
    def surface_vars(self) -> tuple[str, ...]:
        return self.ctx.surface_vars

    def partial(self, var: str) -> Polynomial:
        return self.poly.derivative(var)

    def chart(self, eliminated: str = "x3") -> "Chart":
        sv = self.surface_vars
        if eliminated not in sv:
            raise SurfaceError(f"{eliminated!r} is not a surface variable")
        kept = tuple(v for v in sv if v != eliminated)
        return Chart(kept, eliminated)  # type: ignore[arg-type]

    def algebra(self, chart: "Chart | str" = "x3") -> "SurfaceAlgebra":
        if isinstance(chart, str):
            chart = self.chart(chart)
        return SurfaceAlgebra(self, chart)

    def specialize(self, values: dict) -> "SurfaceSpec":
        """Substitute numeric values for some parameters, keeping the same context."""
        for k in values:
            if k not in self.param_names:
                raise SurfaceError(f"{k!r} is not a parameter of {self.name}")
        vals = {k: v for k, v in values.items()}
        return SurfaceSpec(
            f"{self.name}[{', '.join(f'{k}={v}' for k, v in vals.items())}]",
            self.poly.subs(vals),
            self.param_names,
            self.nonzero_params,
            self.source,
        )


@dataclass(frozen=True)
class Chart:
    kept: tuple[str, str]
    eliminated: str

    def __post_init__(self) -> None:
        if len(set(self.kept + (self.eliminated,))) != 3:
            raise SurfaceError(f"invalid chart {self.kept} / {self.eliminated}")


# ---------------------------------------------------------------------------
# catalog

_CATALOG_TEXT: dict[str, tuple[str, tuple[str, ...], tuple[str, ...], str]] = {
    "pvi": (
        "x1^2 + x2^2 + x3^2 + x1*x2*x3 - a1*x1 - a2*x2 - a3*x3 - a4",
        ("a1", "a2", "a3", "a4"),
        (),
        "Painleve VI character variety S_a",
    ),
    "pv": (
        "x1*x2*x3 + x1^2 + x2^2 - (s1 + s2*s3)*x1 - (s2 + s1*s3)*x2 - s3*x3 + (s3^2 + s1*s2*s3 + 1)",
        ("s1", "s2", "s3"),
        ("s3",),
        "Painleve V character variety",
    ),
    "pv-deg": (
        "x1*x2*x3 + x1^2 + x2^2 + s1*x1 + s2*x2 + 1",
        ("s1", "s2"),
        (),
        "degenerate Painleve V character variety",
    ),
    "piii-d6": (
        "x1*x2*x3 + x1^2 + x2^2 + (1 + alpha*beta)*x1 + (alpha + beta)*x2 + alpha*beta",
        ("alpha", "beta"),
        ("alpha", "beta"),
        "Painleve III(D6) character variety",
    ),
    "piii-d7": (
        "x1*x2*x3 + x1^2 + x2^2 + alpha*x1 + x2",
        ("alpha",),
        ("alpha",),
        "Painleve III(D7) character variety",
    ),
    "piii-d8": (
        "x1*x2*x3 + x1^2 - x2^2 - x1",
        (),
        (),
        "Painleve III(D8) character variety",
    ),
    "piv": (
        "x1*x2*x3 + x1^2 - (s2^2 + s1*s2)*x1 - s2^2*x2 - s2^2*x3 + (s2^2 + s1*s2^3)",
        ("s1", "s2"),
        ("s2",),
        "Painleve IV character variety",
    ),
    "pii-fn": (
        "x1*x2*x3 + x1 - x2 + x3 + s",
        ("s",),
        (),
        "Painleve II character variety, Flaschka-Newell form",
    ),
    "pii": (
        "x1*x2*x3 - x1 - alpha*x2 - x3 + alpha + 1",
        ("alpha",),
        ("alpha",),
        "Painleve II character variety",
    ),
    "pi": (
        "x1*x2*x3 + x1 + x2 + 1",
        (),
        (),
        "Painleve I character variety",
    ),
}

CATALOG_NAMES: tuple[str, ...] = tuple(_CATALOG_TEXT)
PAINLEVE_I_TO_V: tuple[str, ...] = tuple(n for n in CATALOG_NAMES if n != "pvi")


def surface_lookup(
    name: str,
    custom_poly: str | None = None,
    params: Sequence[str] = (),
    nonzero: Sequence[str] = (),
) -> SurfaceSpec:
    """Catalog surface by name, or ``name='custom'`` with a polynomial text."""
    from .parser import parse_expression

    if name == "custom":
        if custom_poly is None:
            raise SurfaceError("custom surface needs a polynomial")
        ctx = VariableContext(SURFACE_VARS, tuple(params))
        poly = parse_expression(custom_poly, ctx)
        if all(poly.degree(v) < 1 for v in SURFACE_VARS):
            raise SurfaceError("custom polynomial is constant in every surface variable")
        return SurfaceSpec("custom", poly, tuple(params), tuple(nonzero), "user supplied")
    try:
        text, pnames, nz, source = _CATALOG_TEXT[name]
    except KeyError:
        raise UnknownSurface(f"unknown surface {name!r}; known: {', '.join(CATALOG_NAMES)}") from None
    ctx = VariableContext(SURFACE_VARS, pnames)
    return SurfaceSpec(name, parse_expression(text, ctx), pnames, nz, source)


# ---------------------------------------------------------------------------
# univariate helpers over the coefficient field (lists, low degree first)

Coeffs = list[RationalFunction]


def _trim(a: Coeffs) -> Coeffs:
    while a and a[-1].is_zero():
        a.pop()
    return a


def _udivmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivision("division by zero polynomial")
    inv_lc = b[-1].inverse()
    q = [b[0] * 0] * max(len(a) - len(b) + 1, 0)
    _trim(a)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lc
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = a[shift + i] - c * bi
        a.pop()
        _trim(a)
    return q, a


def _umul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return []
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def _usub(a: Coeffs, b: Coeffs) -> Coeffs:
    n = max(len(a), len(b))
    zero = (a or b)[0] * 0
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


# ---------------------------------------------------------------------------


class SurfaceAlgebra:
    """F[z]/(P) for one surface and chart, F = Q(kept variables, parameters)."""

    def __init__(self, surface: SurfaceSpec, chart: Chart) -> None:
        self.surface = surface
        self.chart = chart
        z = chart.eliminated
        self.degree = surface.poly.degree(z)
        if self.degree < 1:
            raise DegenerateChart(f"{surface.name}: P does not involve {z}")
        coeffs = surface.poly.coefficients_in(z)
        self.ctx = surface.ctx
        self._relation: Coeffs = [ratfun(coeffs.get(k, self.ctx.zero())) for k in range(self.degree + 1)]
        lead = self._relation[-1]
        # z^d = -sum_{j<d} (p_j / p_d) z^j
        self._top = [-(c / lead) for c in self._relation[:-1]]
        self._powers: list[Coeffs] = []
        self._zero = ratfun(self.ctx.zero())
        self._one = ratfun(self.ctx.one())

    def __repr__(self) -> str:
        return f"SurfaceAlgebra({self.surface.name}, kept={self.chart.kept}, z={self.chart.eliminated})"

    # powers of z reduced mod P
    def _zpow(self, k: int) -> Coeffs:
        d = self.degree
        if k < d:
            v = [self._zero] * d
            v[k] = self._one
            return v
        idx = k - d
        if not self._powers:
            self._powers.append(list(self._top))
        while len(self._powers) <= idx:
            prev = self._powers[-1]
            # z * prev, folding the z^d overflow back through the relation
            hi = prev[-1]
            shifted = [self._zero] + prev[:-1]
            self._powers.append([s + hi * t for s, t in zip(shifted, self._top)])
        return self._powers[idx]

    def _reduce_coeffs(self, coeffs: Sequence[RationalFunction]) -> "SurfaceAlgebraElement":
        d = self.degree
        out = list(coeffs[:d]) + [self._zero] * max(0, d - len(coeffs))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c.is_zero():
                continue
            zp = self._zpow(k)
            out = [o + c * t for o, t in zip(out, zp)]
        return SurfaceAlgebraElement(self, tuple(out))

    def reduce(self, p: Polynomial | RationalFunction | int) -> "SurfaceAlgebraElement":
        if isinstance(p, int):
            p = self.ctx.const(p)
        if isinstance(p, RationalFunction):
            return self.reduce(p.num) * self.reduce(p.den).inverse()
        z = self.chart.eliminated
        by_deg = p.coefficients_in(z)
        n = max(by_deg, default=-1) + 1
        coeffs = [ratfun(by_deg[k]) if k in by_deg else self._zero for k in range(n)]
        return self._reduce_coeffs(coeffs)

    def element(self, coeffs: Sequence[RationalFunction | Polynomial | int]) -> "SurfaceAlgebraElement":
        lifted = [c if isinstance(c, RationalFunction) else ratfun(c, self.ctx) for c in coeffs]
        z = self.chart.eliminated
        for c in lifted:
            if c.num.involves([z]) or c.den.involves([z]):
                raise SurfaceError(f"coefficient involves the eliminated variable {z}")
        return self._reduce_coeffs(lifted)

    def zero(self) -> "SurfaceAlgebraElement":
        return SurfaceAlgebraElement(self, tuple([self._zero] * self.degree))

    def one(self) -> "SurfaceAlgebraElement":
        return self.reduce(1)

    def var(self, name: str) -> "SurfaceAlgebraElement":
        return self.reduce(self.ctx.var(name))

    @property
    def relation(self) -> Coeffs:
        return list(self._relation)

    @cached_property
    def _pz_inverse(self) -> "SurfaceAlgebraElement":
        pz = self.reduce(self.surface.partial(self.chart.eliminated))
        try:
            return pz.inverse()
        except NonInvertible as exc:
            raise NonInvertible(
                f"{self.surface.name}: dP/d{self.chart.eliminated} is a zero divisor on the surface", exc.gcd
            ) from None

    @cached_property
    def _dz(self) -> tuple["SurfaceAlgebraElement", "SurfaceAlgebraElement"]:
        """Derivative of z along each kept coordinate: -P_u / P_z."""
        inv = self._pz_inverse
        return tuple(-self.reduce(self.surface.partial(u)) * inv for u in self.chart.kept)  # type: ignore[return-value]

    def derive(self, e: "SurfaceAlgebraElement", which: int) -> "SurfaceAlgebraElement":
        u = self.chart.kept[which]
        direct = [c.derivative(u) for c in e.coeffs]
        dz_coeffs = [k * c for k, c in enumerate(e.coeffs) if k > 0]
        out = SurfaceAlgebraElement(self, tuple(direct))
        if any(not c.is_zero() for c in dz_coeffs):
            dz_elem = self._reduce_coeffs(dz_coeffs)
            out = out + dz_elem * self._dz[which]
        return out

    def is_zero(self, p: "Polynomial | SurfaceAlgebraElement") -> bool:
        e = p if isinstance(p, SurfaceAlgebraElement) else self.reduce(p)
        return e.is_zero()


class SurfaceAlgebraElement:
    """c0 + c1 z + ... + c_{d-1} z^{d-1} in F[z]/(P)."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: SurfaceAlgebra, coeffs: tuple[RationalFunction, ...]) -> None:
        if len(coeffs) != algebra.degree:
            raise SurfaceError(f"expected {algebra.degree} coefficients, got {len(coeffs)}")
        self.algebra = algebra
        self.coeffs = coeffs

    def _other(self, other: object) -> "SurfaceAlgebraElement":
        if isinstance(other, SurfaceAlgebraElement):
            if other.algebra is not self.algebra and (
                other.algebra.surface != self.algebra.surface or other.algebra.chart != self.algebra.chart
            ):
                raise SurfaceError("elements of different surface algebras")
            return other
        if isinstance(other, (int, Polynomial, RationalFunction)):
            return self.algebra.reduce(other)
        return NotImplemented

    def __add__(self, other: object) -> "SurfaceAlgebraElement":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return SurfaceAlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other: object) -> "SurfaceAlgebraElement":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return SurfaceAlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other: object) -> "SurfaceAlgebraElement":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self) -> "SurfaceAlgebraElement":
        return SurfaceAlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other: object) -> "SurfaceAlgebraElement":
        if isinstance(other, int):
            return SurfaceAlgebraElement(self.algebra, tuple(a * other for a in self.coeffs))
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if self.algebra.degree == 1:
            return SurfaceAlgebraElement(self.algebra, (self.coeffs[0] * o.coeffs[0],))
        return self.algebra._reduce_coeffs(_umul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "SurfaceAlgebraElement":
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int) -> "SurfaceAlgebraElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def inverse(self) -> "SurfaceAlgebraElement":
        """Extended Euclid of this element against P over the coefficient field."""
        alg = self.algebra
        a = _trim(list(self.coeffs))
        if not a:
            raise NonInvertible("zero is not invertible", [])
        if len(a) == 1:
            return SurfaceAlgebraElement(alg, tuple([a[0].inverse()] + [alg._zero] * (alg.degree - 1)))
        # invariants: s_i * a == r_i  (mod P)
        r0, r1 = list(alg._relation), a
        s0, s1 = [], [alg._one]
        while len(r1) > 1:
            q, r = _udivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _usub(s0, _umul(q, s1))
            if not r1:
                raise NonInvertible(
                    f"element shares the factor {_render_coeffs(r0, alg.chart.eliminated)} with P", r0
                )
        unit = r1[0].inverse()
        return alg._reduce_coeffs([c * unit for c in s1])

    def derive(self, which: int) -> "SurfaceAlgebraElement":
        return self.algebra.derive(self, which)

    def common_denominator(self) -> Polynomial:
        from .algebra import poly_gcd

        den = self.algebra.ctx.one()
        for c in self.coeffs:
            if c.is_zero():
                continue
            d = c.den
            g = poly_gcd(den, d)
            den = den * d.exquo(g)
        return den

    def numerator(self) -> tuple[Polynomial, Polynomial]:
        """(N, D): the element equals N / D with N a polynomial of degree < d in z."""
        D = self.common_denominator()
        z = self.algebra.ctx.var(self.algebra.chart.eliminated)
        N = self.algebra.ctx.zero()
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            N = N + c.num * D.exquo(c.den) * z**k
        return N, D

    def __str__(self) -> str:
        return _render_coeffs(list(self.coeffs), self.algebra.chart.eliminated)

    def __repr__(self) -> str:
        return f"SurfaceAlgebraElement({self})"


def _render_coeffs(coeffs: Sequence[RationalFunction], z: str) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        cs = str(c)
        if k == 0:
            parts.append(cs)
        else:
            mono = z if k == 1 else f"{z}^{k}"
            parts.append(f"({cs})*{mono}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# function-style entry points

ChartLike = Union[Chart, str]


def reduce_mod_P(p: Polynomial, surface: SurfaceSpec, chart: ChartLike = "x3") -> SurfaceAlgebraElement:
    return surface.algebra(chart).reduce(p)


def invert_in_algebra(e: SurfaceAlgebraElement) -> SurfaceAlgebraElement:
    return e.inverse()


def chart_derive(e: SurfaceAlgebraElement, which: int) -> SurfaceAlgebraElement:
    return e.derive(which)


def is_zero_on_surface(p: Polynomial | SurfaceAlgebraElement, surface: SurfaceSpec | None = None, chart: ChartLike = "x3") -> bool:
    if isinstance(p, SurfaceAlgebraElement):
        return p.is_zero()
    if surface is None:
        raise SurfaceError("a surface is required to test a polynomial")
    return surface.algebra(chart).is_zero(p)
