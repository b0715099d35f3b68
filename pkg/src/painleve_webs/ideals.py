"""Parameter ideals of curvature numerators and a small Buchberger engine.

Ideals live in the polynomial ring of a surface's parameters.  Elements are
ordinary :class:`Polynomial` objects of the surface context that happen not
to involve x1, x2, x3, so no conversion between rings is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import Polynomial, VariableContext, _add_terms, _mul_terms, _norm, render
from .surface import SurfaceSpec

ORDERS = ("lex", "grevlex")


class IdealError(ValueError):
    pass


def _order_key(ctx: VariableContext, order: str) -> Callable[[int], object]:
    if order == "lex":
        return lambda m: m
    if order == "grevlex":
        return ctx.grevlex_key
    raise IdealError(f"unknown monomial order {order!r}")


@dataclass(frozen=True)
class IdealGens:
    """Generators of an ideal of the parameter ring; empty means the zero ideal."""

    generators: tuple[Polynomial, ...]
    ctx: VariableContext

    def __post_init__(self) -> None:
        for g in self.generators:
            if g.involves(self.ctx.surface_vars):
                raise IdealError(f"generator {g} involves a surface variable")

    @classmethod
    def of(cls, ctx: VariableContext, gens: Iterable[Polynomial | str | int]) -> "IdealGens":
        out: list[Polynomial] = []
        for g in gens:
            if isinstance(g, str):
                g = ctx.parse(g)
            elif isinstance(g, int):
                g = ctx.const(g)
            if not g.is_zero() and g not in out:
                out.append(g)
        return cls(tuple(out), ctx)

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def extract_param_ideal(numerator: Polynomial, surface: SurfaceSpec | VariableContext) -> IdealGens:
    """Coefficients of the numerator with respect to the monomials in x1, x2, x3."""
    ctx = surface if isinstance(surface, VariableContext) else surface.ctx
    coeffs = numerator.collect(ctx.surface_vars)
    ordered = [coeffs[k] for k in sorted(coeffs, reverse=True)]
    return IdealGens.of(ctx, ordered)


# -- division and Buchberger on raw term maps ---------------------------


def _lead(t: dict, key: Callable[[int], object]) -> int:
    return max(t, key=key)


def _monic(t: dict, key: Callable[[int], object]) -> dict:
    lc = t[_lead(t, key)]
    if lc == 1:
        return t
    inv = Fraction(1) / lc
    return {m: _norm(c * inv) for m, c in t.items()}


def _reduce(t: dict, basis: Sequence[tuple[dict, int]], ctx: VariableContext, key) -> dict:
    """Full remainder of ``t`` modulo monic ``basis`` given as (terms, lead) pairs."""
    p = dict(t)
    rem: dict = {}
    while p:
        m = _lead(p, key)
        c = p[m]
        for g, lm in basis:
            if ctx.divides(lm, m):
                p = _add_terms(p, _mul_terms(g, {m - lm: c}), -1)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _lcm(ctx: VariableContext, a: int, b: int) -> int:
    return ctx.pack(max(x, y) for x, y in zip(ctx.unpack(a), ctx.unpack(b)))


def _spoly(f: dict, lf: int, g: dict, lg: int, ctx: VariableContext) -> dict:
    """S-polynomial of monic f, g."""
    L = _lcm(ctx, lf, lg)
    return _add_terms(_mul_terms(f, {L - lf: 1}), _mul_terms(g, {L - lg: 1}), -1)


def _buchberger(gens: Sequence[dict], ctx: VariableContext, key) -> list[dict]:
    basis: list[tuple[dict, int]] = []
    pairs: list[tuple[int, int]] = []

    def add(t: dict) -> None:
        t = _reduce(t, basis, ctx, key)
        if not t:
            return
        t = _monic(t, key)
        n = len(basis)
        basis.append((t, _lead(t, key)))
        pairs.extend((i, n) for i in range(n))

    # small generators first so they can reduce the rest
    for t in sorted(gens, key=lambda t: (key(_lead(t, key)), len(t))):
        add(t)
    while pairs:
        # normal selection strategy: smallest lcm first
        pairs.sort(key=lambda ij: key(_lcm(ctx, basis[ij[0]][1], basis[ij[1]][1])), reverse=True)
        i, j = pairs.pop()
        (f, lf), (g, lg) = basis[i], basis[j]
        if _lcm(ctx, lf, lg) == lf + lg:
            continue  # coprime leading monomials: the S-polynomial reduces to zero
        add(_spoly(f, lf, g, lg, ctx))
    return [t for t, _ in basis]


def _interreduce(basis: list[dict], ctx: VariableContext, key) -> list[dict]:
    leads = [_lead(t, key) for t in basis]
    keep = []
    for i, (t, lm) in enumerate(zip(basis, leads)):
        redundant = any(
            ctx.divides(leads[j], lm) and (leads[j] != lm or j < i) for j in range(len(basis)) if j != i
        )
        if not redundant:
            keep.append(t)
    out = []
    for i, t in enumerate(keep):
        others = [(g, _lead(g, key)) for j, g in enumerate(keep) if j != i]
        out.append(_monic(_reduce(t, others, ctx, key), key))
    out.sort(key=lambda t: key(_lead(t, key)), reverse=True)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis, sorted by decreasing leading monomial."""

    basis: tuple[Polynomial, ...]
    order: str
    ctx: VariableContext

    @property
    def is_zero_ideal(self) -> bool:
        return not self.basis

    @property
    def is_unit_ideal(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def _pairs(self) -> list[tuple[dict, int]]:
        key = _order_key(self.ctx, self.order)
        return [(g.terms, _lead(g.terms, key)) for g in self.basis]

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero()

    def spolys_reduce_to_zero(self) -> bool:
        key = _order_key(self.ctx, self.order)
        pairs = self._pairs()
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                (f, lf), (g, lg) = pairs[i], pairs[j]
                if _reduce(_spoly(f, lf, g, lg, self.ctx), pairs, self.ctx, key):
                    return False
        return True

    def is_reduced(self) -> bool:
        key = _order_key(self.ctx, self.order)
        pairs = self._pairs()
        for i, (t, _) in enumerate(pairs):
            if t[_lead(t, key)] != 1:
                return False
            for j, (_, lg) in enumerate(pairs):
                if i != j and any(self.ctx.divides(lg, m) for m in t):
                    return False
        return True

    def terms_sorted(self) -> list[str]:
        return [render(g, order=self.order) for g in self.basis]

    def __str__(self) -> str:
        if self.is_zero_ideal:
            return "0"
        if self.is_unit_ideal:
            return "(1)"
        return "(" + ", ".join(self.terms_sorted()) + ")"


def buchberger_reduced_gb(ideal: IdealGens, order: str = "lex") -> GroebnerBasis:
    ctx = ideal.ctx
    key = _order_key(ctx, order)
    gens = [g.terms for g in ideal.generators if not g.is_zero()]
    if any(len(t) == 1 and 0 in t for t in gens):
        return GroebnerBasis((ctx.one(),), order, ctx)
    basis = _interreduce(_buchberger(gens, ctx, key), ctx, key) if gens else []
    return GroebnerBasis(tuple(Polynomial._raw(ctx, t) for t in basis), order, ctx)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    if p.ctx != G.ctx:
        raise IdealError("polynomial and basis live in different rings")
    key = _order_key(G.ctx, G.order)
    return Polynomial._raw(G.ctx, _reduce(p.terms, G._pairs(), G.ctx, key))


def ideal_equal(I: IdealGens, J: IdealGens) -> bool:
    if I.ctx != J.ctx:
        raise IdealError("ideals live in different rings")
    return buchberger_reduced_gb(I).basis == buchberger_reduced_gb(J).basis


# -- flat loci -----------------------------------------------------------


def parse_what(what: object) -> tuple[str, tuple[int, int] | None]:
    """Accepts "web", "hess12", "hess(1,2)", ("hess", (1, 2)) and the like."""
    if isinstance(what, tuple) and len(what) == 2:
        if what[0] == "web" and what[1] is None:
            return "web", None
        if what[0] == "hess":
            return "hess", (int(what[1][0]), int(what[1][1]))
    if isinstance(what, str):
        w = what.strip().lower().replace(" ", "")
        if w == "web":
            return "web", None
        if w.startswith("hess"):
            digits = [c for c in w[4:] if c.isdigit()]
            if len(digits) == 2:
                return "hess", (int(digits[0]), int(digits[1]))
    raise IdealError(f"cannot interpret curvature selector {what!r}")


def curvature_numerator(surface: SurfaceSpec, what: object):
    from .hess import surface_hess_curvature
    from .webgeom import surface_web_curvature

    kind, pair = parse_what(what)
    if kind == "web":
        return surface_web_curvature(surface)
    return surface_hess_curvature(surface, pair)  # type: ignore[arg-type]


def flat_locus(surface: SurfaceSpec, what: object, order: str = "lex") -> GroebnerBasis:
    cn = curvature_numerator(surface, what)
    return buchberger_reduced_gb(extract_param_ideal(cn.numerator, surface), order)


def excluded_locus_status(G: GroebnerBasis, surface: SurfaceSpec) -> str:
    """Where the vanishing set of G sits relative to the declared-nonzero parameters.

    "empty" for the unit ideal, "excluded" when every point has some declared
    nonzero parameter equal to zero, "allowed" otherwise.  Uses the
    Rabinowitsch trick: V(G) lies in {prod s = 0} iff 1 is in G + (1 - y prod s).
    """
    if G.is_unit_ideal:
        return "empty"
    if not surface.nonzero_params or G.is_zero_ideal:
        return "allowed"
    ctx = G.ctx
    ext = VariableContext(ctx.surface_vars, ctx.param_vars + ("_y",))

    def lift(p: Polynomial) -> Polynomial:
        return Polynomial(ext, {e + (0,): c for e, c in p.monomials()})

    prod = ext.one()
    for s in surface.nonzero_params:
        prod = prod * ext.var(s)
    gens = [lift(g) for g in G.basis] + [1 - ext.var("_y") * prod]
    return "excluded" if buchberger_reduced_gb(IdealGens.of(ext, gens)).is_unit_ideal else "allowed"
