"""Exact sparse multivariate polynomials and rational functions over Q.

Exponent vectors are packed into a single Python integer, one fixed-width
field per variable with the first context variable in the most significant
field.  Monomial multiplication is then integer addition and comparing two
packed monomials as integers is the lexicographic order on the context.
Each field keeps its top bit clear as a guard, which is what makes the
field-wise divisibility test in :meth:`VariableContext.divides` work.

Coefficients are ``int`` or :class:`fractions.Fraction`; fractions with
denominator 1 are always stored as ``int``.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Number = Union[int, Fraction]

_FIELD_BITS = 32
_FIELD_MASK = (1 << _FIELD_BITS) - 1
_GUARD_BIT = 1 << (_FIELD_BITS - 1)


class AlgebraError(Exception):
    """Base class for errors raised by the algebra layer."""


class ContextMismatch(AlgebraError, ValueError):
    pass


class UnknownVariable(AlgebraError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class NotDivisible(AlgebraError, ArithmeticError):
    pass


class ZeroDivision(AlgebraError, ZeroDivisionError):
    pass


_lazy_fractions: contextvars.ContextVar[bool] = contextvars.ContextVar(
    "lazy_fractions", default=False
)


@contextlib.contextmanager
def lazy_fractions(enabled: bool = True) -> Iterator[None]:
    """Skip GCD reduction of rational functions inside the block.

    Results stay correct but are no longer in lowest terms; equality and
    zero tests fall back to cross-multiplication.
    """
    token = _lazy_fractions.set(enabled)
    try:
        yield
    finally:
        _lazy_fractions.reset(token)


def _norm(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class VariableContext:
    """An ordered set of variable names: three surface variables, then parameters."""

    __slots__ = ("surface_vars", "param_vars", "names", "nvars", "_index", "_shift", "_guards")

    def __init__(
        self,
        surface_vars: Iterable[str] = ("x1", "x2", "x3"),
        param_vars: Iterable[str] = (),
    ) -> None:
        surface_vars = tuple(surface_vars)
        param_vars = tuple(param_vars)
        if len(surface_vars) != 3:
            raise ValueError(f"expected exactly three surface variables, got {surface_vars!r}")
        names = surface_vars + param_vars
        for name in names:
            if not isinstance(name, str) or not name.isidentifier():
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            clash = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate variable names: {', '.join(clash)}")
        self.surface_vars = surface_vars
        self.param_vars = param_vars
        self.names = names
        self.nvars = len(names)
        self._index = {n: i for i, n in enumerate(names)}
        n = self.nvars
        self._shift = tuple(_FIELD_BITS * (n - 1 - i) for i in range(n))
        self._guards = sum(_GUARD_BIT << s for s in self._shift)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, VariableContext):
            return NotImplemented
        return self.surface_vars == other.surface_vars and self.param_vars == other.param_vars

    def __hash__(self) -> int:
        return hash((self.surface_vars, self.param_vars))

    def __repr__(self) -> str:
        return f"VariableContext({list(self.surface_vars)!r}, {list(self.param_vars)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r} (context has {', '.join(self.names)})") from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    # -- packed monomials -------------------------------------------------

    def pack(self, exps: Iterable[int]) -> int:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector of length {len(exps)} for {self.nvars} variables")
        m = 0
        for e, s in zip(exps, self._shift):
            if e < 0 or e >= _GUARD_BIT:
                raise ValueError(f"exponent {e} out of range")
            m |= e << s
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> s) & _FIELD_MASK for s in self._shift)

    def exponent(self, m: int, i: int) -> int:
        return (m >> self._shift[i]) & _FIELD_MASK

    def unit(self, i: int) -> int:
        return 1 << self._shift[i]

    def divides(self, a: int, b: int) -> bool:
        """True iff monomial ``a`` divides monomial ``b``."""
        g = self._guards
        return ((b + g - a) & g) == g

    def total_degree(self, m: int) -> int:
        return sum(self.unpack(m))

    def grevlex_key(self, m: int) -> tuple:
        e = self.unpack(m)
        return (sum(e), tuple(-x for x in reversed(e)))

    # -- constructors -----------------------------------------------------

    def var(self, name: str) -> "Polynomial":
        return Polynomial._raw(self, {self.unit(self.index(name)): 1})

    def vars(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def const(self, c: Number) -> "Polynomial":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return Polynomial._raw(self, {0: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def one(self) -> "Polynomial":
        return Polynomial._raw(self, {0: 1})

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_expression

        return parse_expression(text, self)


# ---------------------------------------------------------------------------
# raw term-map kernels (dict: packed monomial -> coefficient)


def _add_terms(a: dict, b: dict, sign: int = 1) -> dict:
    if len(a) < len(b) and sign == 1:
        a, b = b, a
    out = dict(a)
    get = out.get
    for m, c in b.items():
        v = get(m, 0) + (c if sign == 1 else -c)
        if v:
            out[m] = _norm(v) if type(v) is Fraction else v
        else:
            del out[m]
    return out


def _mul_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return {}
    if len(b) == 1:
        (mb, cb), = b.items()
        return {ma + mb: _norm(ca * cb) for ma, ca in a.items()}
    out: dict = {}
    get = out.get
    items_a = list(a.items())
    for mb, cb in b.items():
        for ma, ca in items_a:
            m = ma + mb
            out[m] = get(m, 0) + ca * cb
    return {m: _norm(c) for m, c in out.items() if c}


def _scale_terms(a: dict, c: Number) -> dict:
    if not c:
        return {}
    if c == 1:
        return dict(a)
    return {m: _norm(v * c) for m, v in a.items()}


def _content(a: dict) -> int:
    """gcd of the integer coefficients of ``a`` (positive)."""
    return math.gcd(*a.values())


def _clear_denominators(a: dict) -> tuple[int, dict]:
    """Return (L, L*a) with L the lcm of the coefficient denominators."""
    L = 1
    for c in a.values():
        if type(c) is Fraction:
            L = math.lcm(L, c.denominator)
    if L == 1:
        return 1, a
    return L, {m: int(c * L) for m, c in a.items()}


def _primitive_int(a: dict) -> tuple[Fraction | int, dict]:
    """Write ``a = u * A`` with ``A`` integer and primitive; returns (u, A)."""
    L, ia = _clear_denominators(a)
    g = _content(ia)
    if g == 1:
        A = ia
    else:
        A = {m: c // g for m, c in ia.items()}
    return _norm(Fraction(g, L)), A


def _exquo_int(f: dict, g: dict, ctx: VariableContext) -> dict | None:
    """Exact quotient f/g of integer term maps, or None when g does not divide f."""
    if not g:
        raise ZeroDivision("division by the zero polynomial")
    if not f:
        return {}
    if len(g) == 1:
        (mg, cg), = g.items()
        out = {}
        divides = ctx.divides
        for m, c in f.items():
            if not divides(mg, m) or c % cg:
                return None
            out[m - mg] = c // cg
        return out
    lm = max(g)
    lc = g[lm]
    rest = [(m, c) for m, c in g.items() if m != lm]
    divides = ctx.divides
    rem = dict(f)
    heap = [-m for m in rem]
    heapq.heapify(heap)
    q = {}
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        m = -pop(heap)
        c = rem.pop(m, 0)
        if not c:
            continue
        if not divides(lm, m):
            return None
        qc, r = divmod(c, lc)
        if r:
            return None
        qm = m - lm
        q[qm] = qc
        for mg, cg in rest:
            t = mg + qm
            v = rem.get(t)
            if v is None:
                rem[t] = -qc * cg
                push(heap, -t)
            else:
                v -= qc * cg
                rem[t] = v
    return q


def _exquo_rat(f: dict, g: dict, ctx: VariableContext) -> dict | None:
    uf, F = _primitive_int(f)
    ug, G = _primitive_int(g)
    q = _exquo_int(F, G, ctx)
    if q is None:
        # a primitive G dividing F over Q divides it over Z (Gauss)
        return None
    return _scale_terms(q, Fraction(uf) / ug)


# ---------------------------------------------------------------------------
# GCD over Z[x]: heuristic integer-evaluation GCD, checked by exact division,
# with a primitive polynomial remainder sequence as the fallback.

_HEU_ATTEMPTS = 6


class _HeuristicFailed(Exception):
    pass


def _variables_of(a: dict, ctx: VariableContext) -> set[int]:
    acc = 0
    for m in a:
        acc |= m
    return {i for i, s in enumerate(ctx._shift) if (acc >> s) & _FIELD_MASK}


def _monomial_content(a: dict, ctx: VariableContext) -> int:
    it = iter(a)
    lo = list(ctx.unpack(next(it)))
    for m in it:
        e = ctx.unpack(m)
        lo = [x if x < y else y for x, y in zip(lo, e)]
        if not any(lo):
            return 0
    return ctx.pack(lo)


def _eval_var(a: dict, ctx: VariableContext, i: int, bits: int) -> dict:
    """Substitute 2**bits for variable ``i``."""
    s = ctx._shift[i]
    out: dict = {}
    get = out.get
    for m, c in a.items():
        d = (m >> s) & _FIELD_MASK
        if d:
            m -= d << s
            c <<= bits * d
        out[m] = get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def _interpolate(h: dict, ctx: VariableContext, i: int, bits: int) -> dict:
    """Rebuild a polynomial in variable ``i`` from its value at 2**bits (balanced digits).

    ``bits`` is a multiple of 8 so digits can be sliced out of the byte string.
    """
    unit = ctx.unit(i)
    width = bits // 8
    base = 1 << bits
    half = base >> 1
    out = {}
    for m, c in h.items():
        neg = c < 0
        if neg:
            c = -c
        raw = c.to_bytes((c.bit_length() + 7) // 8 + width, "little")
        carry = 0
        for k in range(0, len(raw) // width + 1):
            chunk = raw[k * width:(k + 1) * width]
            if not chunk and not carry:
                break
            d = int.from_bytes(chunk, "little") + carry
            if d > half:
                d -= base
                carry = 1
            else:
                carry = 0
            if d:
                out[m + k * unit] = -d if neg else d
    return out


def _heu_gcd(f: dict, g: dict, ctx: VariableContext, variables: list[int]) -> tuple[dict, dict, dict]:
    """Returns (h, f/h, g/h) for nonzero integer f, g involving only ``variables``."""
    if not variables:
        (cf,), (cg,) = f.values(), g.values()
        h = math.gcd(cf, cg)
        return {0: h}, {0: cf // h}, {0: cg // h}
    cont = math.gcd(_content(f), _content(g))
    if cont != 1:
        f = {m: c // cont for m, c in f.items()}
        g = {m: c // cont for m, c in g.items()}
    f_norm = max(abs(c) for c in f.values())
    g_norm = max(abs(c) for c in g.values())
    B = 2 * min(f_norm, g_norm) + 29
    x = max(
        min(B, 99 * math.isqrt(B)),
        2 * min(f_norm // abs(f[max(f)]), g_norm // abs(g[max(g)])) + 4,
    )
    bits = -(-x.bit_length() // 8) * 8
    i, rest = variables[0], variables[1:]
    for _ in range(_HEU_ATTEMPTS):
        ff = _eval_var(f, ctx, i, bits)
        gg = _eval_var(g, ctx, i, bits)
        if ff and gg:
            h, cff, cfg = _heu_gcd(ff, gg, ctx, rest)
            for cand in (h, cff, cfg):
                poly = _interpolate(cand, ctx, i, bits)
                if not poly:
                    continue
                c = _content(poly)
                if c != 1:
                    poly = {m: v // c for m, v in poly.items()}
                if cand is h:
                    hh = poly
                else:
                    hh = _exquo_int(f if cand is cff else g, poly, ctx)
                    if hh is None:
                        continue
                qf = _exquo_int(f, hh, ctx)
                if qf is None:
                    continue
                qg = _exquo_int(g, hh, ctx)
                if qg is None:
                    continue
                if cont != 1:
                    hh = {m: v * cont for m, v in hh.items()}
                return hh, qf, qg
        bits += 8 * max(1, bits // 32)
    raise _HeuristicFailed


def _univariate(a: dict, ctx: VariableContext, i: int) -> dict[int, dict]:
    s = ctx._shift[i]
    out: dict[int, dict] = {}
    for m, c in a.items():
        d = (m >> s) & _FIELD_MASK
        out.setdefault(d, {})[m - (d << s)] = c
    return out


def _from_univariate(u: dict[int, dict], ctx: VariableContext, i: int) -> dict:
    s = ctx._shift[i]
    out = {}
    for d, coeff in u.items():
        for m, c in coeff.items():
            out[m + (d << s)] = c
    return out


def _content_in(a: dict, ctx: VariableContext, i: int, method: str) -> dict:
    coeffs = sorted(_univariate(a, ctx, i).values(), key=len)
    acc = coeffs[0]
    for c in coeffs[1:]:
        if len(acc) == 1 and next(iter(acc)) == 0 and abs(next(iter(acc.values()))) == 1:
            break
        acc = _gcd_int(acc, c, ctx, method)
    return acc


def _prem(A: dict, B: dict, ctx: VariableContext, i: int, pad: bool = True) -> dict:
    """Pseudo-remainder of A by B as polynomials in variable ``i``.

    With ``pad=False`` the final lc^n scaling is skipped (sparse remainder).
    """
    UA = _univariate(A, ctx, i)
    UB = _univariate(B, ctx, i)
    db = max(UB)
    lc = UB[db]
    dr = max(UA)
    n = dr - db + 1
    while UA and dr >= db:
        lr = UA.pop(dr)
        # r <- lc*r - lr * z^(dr-db) * B
        for d in list(UA):
            UA[d] = _mul_terms(UA[d], lc)
        for d, coeff in UB.items():
            if d == db:
                continue
            t = d + dr - db
            prod = _mul_terms(lr, coeff)
            cur = UA.get(t)
            v = _add_terms(cur, prod, -1) if cur is not None else {m: -c for m, c in prod.items()}
            if v:
                UA[t] = v
            else:
                UA.pop(t, None)
        UA = {d: c for d, c in UA.items() if c}
        n -= 1
        dr = max(UA) if UA else -1
    r = _from_univariate(UA, ctx, i)
    if pad and n > 0 and r:
        r = _mul_terms(r, _pow_terms(lc, n))
    return r


def _pow_terms(a: dict, n: int) -> dict:
    result = {0: 1}
    base = a
    while n:
        if n & 1:
            result = _mul_terms(result, base)
        n >>= 1
        if n:
            base = _mul_terms(base, base)
    return result


def _prs_gcd(f: dict, g: dict, ctx: VariableContext, variables: list[int], method: str) -> dict:
    """Subresultant-PRS gcd of nonzero integer polynomials (up to sign)."""
    if not variables:
        return {0: math.gcd(*f.values(), *g.values())}

    # main variable: the one of lowest degree keeps the remainder sequence short
    def vdeg(a: dict, j: int) -> int:
        sj = ctx._shift[j]
        return max((m >> sj) & _FIELD_MASK for m in a)

    i = min(variables, key=lambda j: (max(vdeg(f, j), vdeg(g, j)), j))
    rest = [j for j in variables if j != i]
    cf = _content_in(f, ctx, i, method)
    cg = _content_in(g, ctx, i, method)
    c = _gcd_int(cf, cg, ctx, method)
    pf = _exquo_int(f, cf, ctx)
    pg = _exquo_int(g, cg, ctx)
    s = ctx._shift[i]

    def deg(a: dict) -> int:
        return max((m >> s) & _FIELD_MASK for m in a)

    if deg(pf) < deg(pg):
        pf, pg = pg, pf
    if deg(pg) == 0:
        return c
    # subresultant remainder sequence: exact divisions keep coefficients small
    g_ = h_ = {0: 1}
    while True:
        delta = deg(pf) - deg(pg)
        r = _prem(pf, pg, ctx, i)
        if not r:
            break
        if deg(r) == 0:
            return c
        lc = _univariate(pg, ctx, i)[deg(pg)]
        pf, pg = pg, _exquo_int(r, _mul_terms(g_, _pow_terms(h_, delta)), ctx)
        g_ = lc
        if delta:
            h_ = _exquo_int(_pow_terms(g_, delta), _pow_terms(h_, delta - 1), ctx)
    pg = _exquo_int(pg, _content_in(pg, ctx, i, method), ctx)
    return _mul_terms(c, pg)


def _gcd_int(f: dict, g: dict, ctx: VariableContext, method: str = "auto") -> dict:
    """gcd of integer term maps, sign unnormalized, integer content included."""
    if not f:
        return g
    if not g:
        return f
    if len(f) == 1 or len(g) == 1:
        mono, other = (f, g) if len(f) == 1 else (g, f)
        (m, c), = mono.items()
        mc = _monomial_content(other, ctx)
        lo = [min(a, b) for a, b in zip(ctx.unpack(m), ctx.unpack(mc))] if mc else [0] * ctx.nvars
        return {ctx.pack(lo): math.gcd(c, _content(other))}
    mf = _monomial_content(f, ctx)
    mg = _monomial_content(g, ctx)
    mono = 0
    if mf or mg:
        lo = [min(a, b) for a, b in zip(ctx.unpack(mf), ctx.unpack(mg))]
        mono = ctx.pack(lo)
        if mf:
            f = {m - mf: c for m, c in f.items()}
        if mg:
            g = {m - mg: c for m, c in g.items()}
    vf = _variables_of(f, ctx)
    vg = _variables_of(g, ctx)
    common = vf & vg
    if vf != vg:
        # variables occurring in only one input cannot occur in the gcd
        for i in sorted(vf - common):
            f = _content_in(f, ctx, i, method)
        for i in sorted(vg - common):
            g = _content_in(g, ctx, i, method)
        h = _gcd_int(f, g, ctx, method)
    elif not common:
        h = {0: math.gcd(*f.values(), *g.values())}
    else:
        variables = sorted(common)
        h = None
        if method in ("auto", "heuristic"):
            try:
                h = _heu_gcd(f, g, ctx, variables)[0]
            except _HeuristicFailed:
                if method == "heuristic":
                    raise AlgebraError("heuristic gcd failed") from None
        if h is None:
            h = _prs_gcd(f, g, ctx, variables, method)
    if mono:
        h = {m + mono: c for m, c in h.items()}
    return h


def _normalize_sign(a: dict, ctx: VariableContext) -> dict:
    lm = max(a, key=ctx.grevlex_key)
    if a[lm] < 0:
        return {m: -c for m, c in a.items()}
    return a


# ---------------------------------------------------------------------------


Coercible = Union["Polynomial", int, Fraction]


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VariableContext, terms: Mapping[tuple[int, ...], Number] | None = None) -> None:
        self.ctx = ctx
        packed: dict = {}
        for exps, c in (terms or {}).items():
            c = _norm(Fraction(c)) if not isinstance(c, int) else c
            if c:
                m = ctx.pack(exps)
                v = packed.get(m, 0) + c
                packed[m] = v
        self.terms = {m: _norm(c) for m, c in packed.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ctx: VariableContext, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        p._hash = None
        return p

    # -- coercion -------------------------------------------------------

    def _coerce(self, other: object) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"context mismatch: {self.ctx!r} vs {other.ctx!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: Coercible) -> "Polynomial":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Polynomial._raw(self.ctx, _add_terms(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> "Polynomial":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Polynomial._raw(self.ctx, _add_terms(self.terms, o.terms, -1))

    def __rsub__(self, other: Coercible) -> "Polynomial":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ctx, {m: -c for m, c in self.terms.items()})

    def __pos__(self) -> "Polynomial":
        return self

    def __mul__(self, other: Coercible) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial._raw(self.ctx, _scale_terms(self.terms, _norm(other)))
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Polynomial._raw(self.ctx, _mul_terms(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {n!r}")
        return Polynomial._raw(self.ctx, _pow_terms(self.terms, n))

    def __truediv__(self, other: Coercible) -> "Polynomial":
        """Division by a nonzero constant, or exact division by a polynomial."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivision("division by zero")
            return Polynomial._raw(self.ctx, _scale_terms(self.terms, Fraction(1) / other))
        return self.exquo(other)

    def exquo(self, other: Coercible) -> "Polynomial":
        """Exact quotient; raises NotDivisible when ``other`` does not divide ``self``."""
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot divide by {other!r}")
        q = _exquo_rat(self.terms, o.terms, self.ctx)
        if q is None:
            raise NotDivisible(f"{o} does not divide {self}")
        return Polynomial._raw(self.ctx, q)

    def divides(self, other: "Polynomial") -> bool:
        if not self.terms:
            return not other.terms
        return _exquo_rat(other.terms, self.terms, self.ctx) is not None

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {0: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if not self.terms:
                self._hash = hash(0)
            elif len(self.terms) == 1 and 0 in self.terms:
                self._hash = hash(self.terms[0])
            else:
                self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self) -> Number:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(0, 0)

    def monomials(self) -> Iterator[tuple[tuple[int, ...], Number]]:
        """(exponent vector, coefficient) pairs in descending grevlex order."""
        for m in sorted(self.terms, key=self.ctx.grevlex_key, reverse=True):
            yield self.ctx.unpack(m), self.terms[m]

    def variables(self) -> tuple[str, ...]:
        used = _variables_of(self.terms, self.ctx)
        return tuple(n for i, n in enumerate(self.ctx.names) if i in used)

    def involves(self, names: Iterable[str]) -> bool:
        used = set(self.variables())
        return any(n in used for n in names)

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree when omitted); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(self.ctx.total_degree(m) for m in self.terms)
        i = self.ctx.index(var)
        return max(self.ctx.exponent(m, i) for m in self.terms)

    def leading_term(self, order: str = "grevlex") -> tuple[tuple[int, ...], Number]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms) if order == "lex" else max(self.terms, key=self.ctx.grevlex_key)
        return self.ctx.unpack(m), self.terms[m]

    def leading_coefficient(self, order: str = "grevlex") -> Number:
        return self.leading_term(order)[1]

    def content(self) -> Number:
        """Positive rational c with self/c primitive with integer coefficients."""
        if not self.terms:
            return 0
        return _primitive_int(self.terms)[0]

    def primitive(self) -> "Polynomial":
        """Integer primitive associate with positive grevlex leading coefficient."""
        if not self.terms:
            return self
        _, A = _primitive_int(self.terms)
        return Polynomial._raw(self.ctx, _normalize_sign(A, self.ctx))

    def monic(self, order: str = "lex") -> "Polynomial":
        if not self.terms:
            return self
        return self * (Fraction(1) / self.leading_coefficient(order))

    # -- calculus and substitution -------------------------------------

    def derivative(self, var: str) -> "Polynomial":
        ctx = self.ctx
        i = ctx.index(var)
        unit = ctx.unit(i)
        s = ctx._shift[i]
        out = {}
        for m, c in self.terms.items():
            d = (m >> s) & _FIELD_MASK
            if d:
                out[m - unit] = _norm(c * d)
        return Polynomial._raw(ctx, out)

    def coefficients_in(self, var: str) -> dict[int, "Polynomial"]:
        """Univariate view: degree in ``var`` -> coefficient polynomial free of ``var``."""
        i = self.ctx.index(var)
        return {d: Polynomial._raw(self.ctx, c) for d, c in _univariate(self.terms, self.ctx, i).items()}

    def collect(self, names: Iterable[str]) -> dict[tuple[int, ...], "Polynomial"]:
        """Group terms by monomials in ``names``.

        Keys are exponent tuples aligned with ``names``; values are polynomials
        in the remaining variables.  ``sum(mono * coeff) == self``.
        """
        names = tuple(names)
        idx = [self.ctx.index(n) for n in names]
        ctx = self.ctx
        out: dict[tuple[int, ...], dict] = {}
        for m, c in self.terms.items():
            key = tuple(ctx.exponent(m, i) for i in idx)
            rest = m - sum(k << ctx._shift[i] for k, i in zip(key, idx))
            out.setdefault(key, {})[rest] = c
        return {k: Polynomial._raw(ctx, v) for k, v in out.items()}

    def subs(self, values: Mapping[str, "Polynomial | Number"]) -> "Polynomial":
        """Simultaneous substitution of variables by polynomials or numbers."""
        ctx = self.ctx
        targets = {}
        for name, val in values.items():
            i = ctx.index(name)
            if isinstance(val, Polynomial):
                if val.ctx != ctx:
                    raise ContextMismatch("substituted polynomial has a different context")
                targets[i] = val.terms
            else:
                targets[i] = {0: _norm(Fraction(val))} if val else {}
        if not targets:
            return self
        cache: dict[tuple[int, int], dict] = {}

        def power(i: int, d: int) -> dict:
            key = (i, d)
            if key not in cache:
                cache[key] = _pow_terms(targets[i], d)
            return cache[key]

        out: dict = {}
        for m, c in self.terms.items():
            rest = m
            term = {0: c}
            for i in targets:
                d = ctx.exponent(m, i)
                if d:
                    rest -= d << ctx._shift[i]
                    term = _mul_terms(term, power(i, d))
            term = {mm + rest: cc for mm, cc in term.items()}
            out = _add_terms(out, term)
        return Polynomial._raw(ctx, out)

    def evaluate(self, values: Mapping[str, Number]) -> Number:
        p = self.subs(values)
        if not p.is_constant():
            raise ValueError(f"not all variables were assigned: {p}")
        return p.constant_value()

    def gcd(self, other: "Polynomial", method: str = "auto") -> "Polynomial":
        return poly_gcd(self, other, method=method)

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"


def render(p: Polynomial, order: str = "grevlex", mul: str = "*") -> str:
    """Canonical text: terms in descending monomial order, ``^`` for powers."""
    if not p.terms:
        return "0"
    ctx = p.ctx
    keys = sorted(p.terms, reverse=True) if order == "lex" else sorted(p.terms, key=ctx.grevlex_key, reverse=True)
    parts = []
    for k, m in enumerate(keys):
        c = p.terms[m]
        exps = ctx.unpack(m)
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(ctx.names, exps) if e]
        neg = c < 0
        a = -c if neg else c
        if factors:
            body = mul.join(([str(a)] if a != 1 else []) + factors)
        else:
            body = str(a)
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def _same_ctx(p: Polynomial, q: Polynomial) -> None:
    if p.ctx != q.ctx:
        raise ContextMismatch(f"context mismatch: {p.ctx!r} vs {q.ctx!r}")


def poly_gcd(p: Polynomial, q: Polynomial, method: str = "auto") -> Polynomial:
    """Greatest common divisor, primitive over Z with positive leading coefficient.

    ``method`` is ``"auto"`` (heuristic with PRS fallback), ``"heuristic"`` or
    ``"prs"``.  ``gcd(0, 0) == 0``.
    """
    _same_ctx(p, q)
    if not p.terms and not q.terms:
        return p
    _, F = _primitive_int(p.terms) if p.terms else (0, {})
    _, G = _primitive_int(q.terms) if q.terms else (0, {})
    h = _gcd_int(F, G, p.ctx, method)
    h = {m: c // _content(h) for m, c in h.items()}
    return Polynomial._raw(p.ctx, _normalize_sign(h, p.ctx))


def _gcd_cofactors(p: dict, q: dict, ctx: VariableContext) -> tuple[dict, dict, dict]:
    """(g, p/g, q/g) with g primitive integer; cofactors keep the rational units."""
    up, P = _primitive_int(p)
    uq, Q = _primitive_int(q)
    if (len(P) == 1 and 0 in P) or (len(Q) == 1 and 0 in Q):
        return {0: 1}, p, q
    if P == Q:
        return P, {0: up}, {0: uq}
    vp = _variables_of(P, ctx)
    vq = _variables_of(Q, ctx)
    if vp == vq and len(P) > 1 and len(Q) > 1 and not (_monomial_content(P, ctx) or _monomial_content(Q, ctx)):
        try:
            h, cp, cq = _heu_gcd(P, Q, ctx, sorted(vp))
        except _HeuristicFailed:
            pass
        else:
            c = _content(h)
            if c != 1:
                # contents of P, Q are 1, so c == 1 always; kept for safety
                h = {m: v // c for m, v in h.items()}
                cp = _scale_terms(cp, c)
                cq = _scale_terms(cq, c)
            return h, _scale_terms(cp, up), _scale_terms(cq, uq)
    h = _gcd_int(P, Q, ctx)
    c = _content(h)
    if c != 1:
        h = {m: v // c for m, v in h.items()}
    if len(h) == 1 and 0 in h:
        return {0: 1}, p, q
    cp = _exquo_int(P, h, ctx)
    cq = _exquo_int(Q, h, ctx)
    return h, _scale_terms(cp, up), _scale_terms(cq, uq)


def poly_collect(p: Polynomial, names: Iterable[str]) -> dict[tuple[int, ...], Polynomial]:
    return p.collect(names)


def poly_derivative(p: Polynomial, var: str) -> Polynomial:
    return p.derivative(var)


# ---------------------------------------------------------------------------


class RationalFunction:
    """Quotient of polynomials, kept in lowest terms.

    Normal form: the denominator is a primitive integer polynomial with
    positive leading coefficient in grevlex order and shares no factor with
    the numerator; the numerator carries the rational unit.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial | Number, den: Polynomial | Number = 1) -> None:
        if not isinstance(num, Polynomial):
            if not isinstance(den, Polynomial):
                raise TypeError("RationalFunction needs at least one Polynomial to fix the context")
            num = den.ctx.const(num)
        if not isinstance(den, Polynomial):
            den = num.ctx.const(den)
        _same_ctx(num, den)
        if not den.terms:
            raise ZeroDivision("zero denominator")
        n, d = _normalize_pair(num.terms, den.terms, num.ctx, reduce=not _lazy_fractions.get())
        self.num = Polynomial._raw(num.ctx, n)
        self.den = Polynomial._raw(num.ctx, d)

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def _from_terms(cls, ctx: VariableContext, n: dict, d: dict) -> "RationalFunction":
        return cls._raw(Polynomial._raw(ctx, n), Polynomial._raw(ctx, d))

    @property
    def ctx(self) -> VariableContext:
        return self.num.ctx

    # -- coercion -------------------------------------------------------

    def _coerce(self, other: object) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            _same_ctx(self.num, other.num)
            return other
        if isinstance(other, Polynomial):
            _same_ctx(self.num, other)
            return RationalFunction._raw(other, self.ctx.one())
        if isinstance(other, (int, Fraction)):
            return RationalFunction._raw(self.ctx.const(other), self.ctx.one())
        return NotImplemented

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: object) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return _rf_add(self, o, 1)

    __radd__ = __add__

    def __sub__(self, other: object) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return _rf_add(self, o, -1)

    def __rsub__(self, other: object) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return _rf_add(o, self, -1)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den)

    def __mul__(self, other: object) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return _rf_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return _rf_mul(self, o.inverse())

    def __rtruediv__(self, other: object) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return _rf_mul(o, self.inverse())

    def __pow__(self, n: int) -> "RationalFunction":
        if not isinstance(n, int):
            raise TypeError("integer exponent expected")
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num**n, self.den**n)

    def inverse(self) -> "RationalFunction":
        if not self.num.terms:
            raise ZeroDivision("inverse of the zero rational function")
        u, N = _primitive_int(self.num.terms)
        N = _normalize_sign(N, self.ctx)
        lead = self.num.terms[max(self.num.terms, key=self.ctx.grevlex_key)]
        sign = 1 if lead > 0 else -1
        num = _scale_terms(self.den.terms, Fraction(sign) / u)
        return RationalFunction._from_terms(self.ctx, num, N)

    # -- comparison -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (RationalFunction, Polynomial, int, Fraction)):
            o = self._coerce(other)
            if self.den == o.den:
                return self.num == o.num
            # normal forms are unique, but lazily built values are not in normal form
            return self.num * o.den == o.num * self.den
        return NotImplemented

    def __hash__(self) -> int:
        n, d = _normalize_pair(self.num.terms, self.den.terms, self.ctx)
        return hash((Polynomial._raw(self.ctx, n), Polynomial._raw(self.ctx, d)))

    def normalized(self) -> "RationalFunction":
        n, d = _normalize_pair(self.num.terms, self.den.terms, self.ctx)
        return RationalFunction._from_terms(self.ctx, n, d)

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def derivative(self, var: str) -> "RationalFunction":
        """Quotient rule (n'd - nd')/d^2, reduced."""
        n, d = self.num, self.den
        if d.is_constant():
            return RationalFunction._raw(n.derivative(var) / d.constant_value(), d)
        top = n.derivative(var) * d - n * d.derivative(var)
        # cross-cancelling top against one copy of d yields lowest terms
        return _rf_mul(RationalFunction._raw(top, d), RationalFunction._raw(self.ctx.one(), d))

    def subs(self, values: Mapping[str, Polynomial | Number]) -> "RationalFunction":
        d = self.den.subs(values)
        if not d.terms:
            raise ZeroDivision("denominator vanishes under substitution")
        return RationalFunction(self.num.subs(values), d)

    def __str__(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        n = str(self.num)
        d = str(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def _normalize_pair(n: dict, d: dict, ctx: VariableContext, reduce: bool = True) -> tuple[dict, dict]:
    if not n:
        return {}, {0: 1}
    if reduce:
        _, n, d = _gcd_cofactors(n, d, ctx)
    ud, D = _primitive_int(d)
    lead = D[max(D, key=ctx.grevlex_key)]
    if lead < 0:
        D = {m: -c for m, c in D.items()}
        ud = -ud
    return _scale_terms(n, Fraction(1) / ud) if ud != 1 else n, D


def _is_one(t: dict) -> bool:
    return len(t) == 1 and t.get(0) == 1


def _rf_add(a: RationalFunction, b: RationalFunction, sign: int) -> RationalFunction:
    ctx = a.ctx
    n1, d1, n2, d2 = a.num.terms, a.den.terms, b.num.terms, b.den.terms
    if not n2:
        return a
    if not n1:
        return b if sign == 1 else -b
    if d1 == d2:
        n = _add_terms(n1, n2, sign)
        if _is_one(d1) or not n:
            return RationalFunction._from_terms(ctx, n, d1 if n else {0: 1})
        if _lazy_fractions.get():
            return RationalFunction._from_terms(ctx, n, d1)
        n, d = _normalize_pair(n, d1, ctx)
        return RationalFunction._from_terms(ctx, n, d)
    if _lazy_fractions.get():
        n = _add_terms(_mul_terms(n1, d2), _mul_terms(n2, d1), sign)
        if not n:
            return RationalFunction._from_terms(ctx, {}, {0: 1})
        return RationalFunction._from_terms(ctx, n, _mul_terms(d1, d2))
    if _is_one(d1) or _is_one(d2):
        n = _add_terms(_mul_terms(n1, d2), _mul_terms(n2, d1), sign)
        return RationalFunction._from_terms(ctx, n, d2 if _is_one(d1) else d1)
    g, d1r, d2r = _gcd_cofactors(d1, d2, ctx)
    n = _add_terms(_mul_terms(n1, d2r), _mul_terms(n2, d1r), sign)
    if not n:
        return RationalFunction._from_terms(ctx, {}, {0: 1})
    if not _is_one(g):
        # only factors of the shared part g can cancel
        _, n, g = _gcd_cofactors(n, g, ctx)
    n, d = _normalize_pair(n, _mul_terms(_mul_terms(d1r, d2r), g), ctx, reduce=False)
    return RationalFunction._from_terms(ctx, n, d)


def _rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    ctx = a.ctx
    n1, d1, n2, d2 = a.num.terms, a.den.terms, b.num.terms, b.den.terms
    if not n1 or not n2:
        return RationalFunction._from_terms(ctx, {}, {0: 1})
    if _lazy_fractions.get():
        n, d = _normalize_pair(_mul_terms(n1, n2), _mul_terms(d1, d2), ctx, reduce=False)
        return RationalFunction._from_terms(ctx, n, d)
    if not _is_one(d2):
        _, n1, d2 = _gcd_cofactors(n1, d2, ctx)
    if not _is_one(d1):
        _, n2, d1 = _gcd_cofactors(n2, d1, ctx)
    n, d = _normalize_pair(_mul_terms(n1, n2), _mul_terms(d1, d2), ctx, reduce=False)
    return RationalFunction._from_terms(ctx, n, d)


def ratfun(p: Polynomial | RationalFunction | Number, ctx: VariableContext | None = None) -> RationalFunction:
    """Coerce a polynomial or number into a RationalFunction."""
    if isinstance(p, RationalFunction):
        return p
    if isinstance(p, Polynomial):
        return RationalFunction._raw(p, p.ctx.one())
    if ctx is None:
        raise TypeError("a context is required to lift a number")
    return RationalFunction._raw(ctx.const(p), ctx.one())


def ratfun_derivative(r: RationalFunction, var: str) -> RationalFunction:
    return r.derivative(var)
