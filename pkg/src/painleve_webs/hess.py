"""Hess connection of a 2-D bi-Lagrangian chart and its curvature.

In adapted coordinates with ``omega = f dx^dy`` the Hess connection is
diagonal: nabla_dx dx = (f_x/f) dx, nabla_dy dy = (f_y/f) dy, and the mixed
covariant derivatives vanish.  It is flat iff f_xy f = f_x f_y.
"""

from __future__ import annotations

from dataclasses import dataclass

from .surface import Chart, SurfaceSpec
from .webgeom import ChartFunction, Frame, CurvatureNumerator, SurfaceFrame, _distinct, numerator_of


class ZeroDensity(ValueError):
    pass


_PERM_SIGN = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1, (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}


@dataclass(frozen=True)
class HessConnectionMatrix:
    """The connection form diag((f_x/f) dx, (f_y/f) dy)."""

    xx: ChartFunction
    yy: ChartFunction

    def christoffel(self, i: int, j: int, k: int) -> ChartFunction | int:
        """Coefficient of d_k in nabla_{d_i} d_j (0 = x, 1 = y)."""
        if i == j == k:
            return self.xx if i == 0 else self.yy
        return 0

    def covariant(self, i: int, j: int) -> tuple[ChartFunction | int, ChartFunction | int]:
        """nabla_{d_i} d_j as a pair of components."""
        return (self.christoffel(i, j, 0), self.christoffel(i, j, 1))


def _require_nonzero(f: ChartFunction) -> None:
    if f.is_zero():
        raise ZeroDensity("the symplectic density vanishes identically")


def hess_connection_matrix(f: ChartFunction, frame: Frame) -> HessConnectionMatrix:
    f = frame.lift(f)
    _require_nonzero(f)
    inv = f.inverse()
    return HessConnectionMatrix(frame.derive(f, 0) * inv, frame.derive(f, 1) * inv)


def hess_defect(f: ChartFunction, frame: Frame) -> ChartFunction:
    """f_xy f - f_x f_y."""
    f = frame.lift(f)
    _require_nonzero(f)
    fx = frame.derive(f, 0)
    fy = frame.derive(f, 1)
    return frame.derive(fx, 1) * f - fx * fy


def hess_flatness_density(f: ChartFunction, frame: Frame) -> ChartFunction:
    """Curvature scalar (f_xy f - f_x f_y)/f^2; the connection is flat iff it is zero."""
    f = frame.lift(f)
    return hess_defect(f, frame) * (f * f).inverse()


def boyom_interior(f: ChartFunction, frame: Frame) -> dict[str, tuple[ChartFunction, ChartFunction]]:
    """i_{D(d_x, d_x)} omega and i_{D(d_y, d_y)} omega as (dx, dy) coefficient pairs.

    Computed from D(X, X) = (f_X / f) X and i_X omega for omega = f dx^dy,
    for comparison against the Lie-derivative values f_x dy and -f_y dx.
    """
    m = hess_connection_matrix(f, frame)
    f = frame.lift(f)
    zero = frame.lift(0)
    # i_{u d_x + v d_y}(f dx^dy) = -v f dx + u f dy
    xx = (zero, m.xx * f)
    yy = (-(m.yy * f), zero)
    return {"xx": xx, "yy": yy}


@dataclass(frozen=True)
class BiLagrangianChart:
    """(S, Omega, F_i, F_j) in the chart with coordinates (x_i, x_j).

    The density is f = eps / P_{x_k} with eps the sign of the permutation
    (i, j, k), so that Omega = f dx_i^dx_j for every ordering of the pair.
    """

    surface: SurfaceSpec
    pair: tuple[int, int]

    def __post_init__(self) -> None:
        i, j = self.pair
        if i == j or {i, j} - {1, 2, 3}:
            raise ValueError(f"invalid foliation pair {self.pair}")

    @property
    def omitted(self) -> int:
        return 6 - sum(self.pair)

    @property
    def sign(self) -> int:
        return _PERM_SIGN[(self.pair[0], self.pair[1], self.omitted)]

    @property
    def chart(self) -> Chart:
        sv = self.surface.surface_vars
        i, j = self.pair
        return Chart((sv[i - 1], sv[j - 1]), sv[self.omitted - 1])

    def frame(self) -> SurfaceFrame:
        return SurfaceFrame.of(self.surface, self.chart)

    def density(self, frame: SurfaceFrame | None = None) -> ChartFunction:
        frame = frame or self.frame()
        alg = frame.algebra
        return alg._pz_inverse * self.sign


def surface_hess_curvature(surface: SurfaceSpec, pair: tuple[int, int]) -> CurvatureNumerator:
    """Numerator of f_xy f - f_x f_y for f = Omega / (dx_i ^ dx_j) on the surface."""
    bl = BiLagrangianChart(surface, tuple(pair))  # type: ignore[arg-type]
    frame = bl.frame()
    f = bl.density(frame)
    defect = hess_defect(f, frame)
    candidates = [c.den for c in frame.algebra._pz_inverse.coeffs]
    return numerator_of(defect, surface, bl.chart, _distinct(candidates))
