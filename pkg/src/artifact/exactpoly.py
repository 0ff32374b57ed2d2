"""Exact rational polynomials, truncated series and graded linear algebra.

Polynomials are backed by FLINT's ``fmpq_mpoly``.  Every polynomial lives in a
:class:`PolyRing`, a fixed tuple of variable names with per-variable weight and
depth degrees.  Rings are never mixed implicitly: arithmetic between two rings
raises, and moving between rings goes through :meth:`SparsePoly.subs`.

Linear algebra over the rationals is done by a modular pivot search followed by
an exact certification step, so every rank and membership verdict is exact.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

import flint

Rational = Fraction
Exponent = tuple[int, ...]

_PRIME = (1 << 61) - 1


def to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, flint.fmpz):
        return Fraction(int(c))
    return Fraction(c)


def to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, (int, flint.fmpz)):
        return flint.fmpq(c)
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def format_rational(c) -> str:
    c = to_fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


# ---------------------------------------------------------------------------
# rings and polynomials


class PolyRing:
    """A variable universe: ordered names plus weight and depth degrees."""

    _lock = threading.Lock()
    _cache: dict[tuple, "PolyRing"] = {}

    def __new__(cls, names: Sequence[str], weights: Sequence[int] | None = None,
                depths: Sequence[int] | None = None):
        names = tuple(names)
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        depths = tuple(depths) if depths is not None else (0,) * len(names)
        key = (names, weights, depths)
        with cls._lock:
            ring = cls._cache.get(key)
            if ring is None:
                ring = super().__new__(cls)
                ring.names = names
                ring.weights = weights
                ring.depths = depths
                ring.nvars = len(names)
                ring.ctx = flint.fmpq_mpoly_ctx.get(names, "deglex")
                cls._cache[key] = ring
        return ring

    def __repr__(self) -> str:
        return f"PolyRing({self.names})"

    def __reduce__(self):
        return (PolyRing, (self.names, self.weights, self.depths))

    def gens(self) -> tuple["SparsePoly", ...]:
        return tuple(SparsePoly(self, g) for g in self.ctx.gens())

    def gen(self, name: str) -> "SparsePoly":
        return self.gens()[self.names.index(name)]

    def zero(self) -> "SparsePoly":
        return SparsePoly(self, self.ctx.from_dict({}))

    def one(self) -> "SparsePoly":
        return self.const(1)

    def const(self, c) -> "SparsePoly":
        return SparsePoly(self, self.ctx.constant(to_fmpq(c)))

    def from_terms(self, terms: Mapping[Exponent, object] | Iterable[tuple[Exponent, object]]) -> "SparsePoly":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, flint.fmpq] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} has wrong length for {self.names}")
            acc[e] = acc.get(e, flint.fmpq(0)) + to_fmpq(c)
        return SparsePoly(self, self.ctx.from_dict({e: c for e, c in acc.items() if c != 0}))

    def monomial(self, e: Exponent, c=1) -> "SparsePoly":
        return self.from_terms({tuple(e): c})

    def weight_of(self, e: Exponent) -> int:
        return sum(w * k for w, k in zip(self.weights, e))

    def depth_of(self, e: Exponent) -> int:
        return sum(d * k for d, k in zip(self.depths, e))

    def monomials(self, weight: int, depth: int | None = None) -> list[Exponent]:
        """All exponents of the given weight (and depth), in canonical order."""
        out: list[Exponent] = []

        def rec(i: int, rem: int, cur: list[int]) -> None:
            if i == self.nvars:
                if rem == 0:
                    out.append(tuple(cur))
                return
            w = self.weights[i]
            for k in range(rem // w + 1):
                cur.append(k)
                rec(i + 1, rem - k * w, cur)
                cur.pop()

        rec(0, weight, [])
        if depth is not None:
            out = [e for e in out if self.depth_of(e) == depth]
        out.sort(key=monomial_key)
        return out


def monomial_key(e: Exponent) -> tuple:
    """Graded-lex key: total degree first, then the last variable is most significant."""
    return (sum(e), tuple(reversed(e)))


class SparsePoly:
    """Immutable exact polynomial over the rationals in a fixed :class:`PolyRing`."""

    __slots__ = ("ring", "raw")

    def __init__(self, ring: PolyRing, raw):
        self.ring = ring
        self.raw = raw

    # -- coercion
    def _other(self, other) -> "flint.fmpq_mpoly":
        if isinstance(other, SparsePoly):
            if other.ring is not self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.raw
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return self.ring.ctx.constant(to_fmpq(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return SparsePoly(self.ring, self.raw + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return SparsePoly(self.ring, self.raw - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return SparsePoly(self.ring, o - self.raw)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return SparsePoly(self.ring, self.raw * to_fmpq(other))
        o = self._other(other)
        if o is NotImplemented:
            return o
        return SparsePoly(self.ring, self.raw * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return SparsePoly(self.ring, self.raw / to_fmpq(other))
        return NotImplemented

    def __neg__(self):
        return SparsePoly(self.ring, -self.raw)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        return SparsePoly(self.ring, self.raw ** k)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.ring is other.ring and self.raw == other.raw
        if isinstance(other, (int, Fraction)):
            return self.raw == self.ring.ctx.constant(to_fmpq(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.names, tuple((e, to_fraction(c)) for e, c in self.terms())))

    def __bool__(self) -> bool:
        return not self.raw.is_zero()

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    # -- views
    def to_dict(self) -> dict[Exponent, flint.fmpq]:
        return self.raw.to_dict()

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in canonical ascending graded-lex order."""
        d = self.raw.to_dict()
        return [(e, to_fraction(d[e])) for e in sorted(d, key=monomial_key)]

    def coefficient(self, e: Exponent) -> Fraction:
        return to_fraction(self.raw.to_dict().get(tuple(e), 0))

    def support(self) -> list[Exponent]:
        return sorted(self.raw.to_dict(), key=monomial_key)

    def __len__(self) -> int:
        return len(self.raw)

    def total_degree(self) -> int:
        return -1 if self.is_zero() else int(self.raw.total_degree())

    def weights(self) -> set[int]:
        return {self.ring.weight_of(e) for e in self.raw.to_dict()}

    def depths(self) -> set[int]:
        return {self.ring.depth_of(e) for e in self.raw.to_dict()}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def weight_part(self, w: int) -> "SparsePoly":
        ring = self.ring
        return ring.from_terms({e: c for e, c in self.raw.to_dict().items() if ring.weight_of(e) == w})

    def depth_part(self, d: int) -> "SparsePoly":
        ring = self.ring
        return ring.from_terms({e: c for e, c in self.raw.to_dict().items() if ring.depth_of(e) == d})

    def filter(self, pred: Callable[[Exponent], bool]) -> "SparsePoly":
        return self.ring.from_terms({e: c for e, c in self.raw.to_dict().items() if pred(e)})

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.ring.nvars)

    def __repr__(self) -> str:
        return str(self.raw) if not self.is_zero() else "0"

    __str__ = __repr__

    # -- algebra
    def subs(self, images: Mapping[str, "SparsePoly | int | Fraction"], target: PolyRing | None = None) -> "SparsePoly":
        """Ring homomorphism sending variable ``name`` to ``images[name]``.

        Every variable actually occurring in ``self`` needs an image.  All
        polynomial images must live in one ring, which is the target.
        """
        present = [i for i, d in enumerate(self.raw.degrees()) if d > 0]
        for i in present:
            if self.ring.names[i] not in images:
                raise KeyError(f"no image for variable {self.ring.names[i]}")
        if target is None:
            rings = {v.ring for v in images.values() if isinstance(v, SparsePoly)}
            if len(rings) > 1:
                raise ValueError("images live in different rings")
            target = rings.pop() if rings else self.ring
        args = []
        for name in self.ring.names:
            v = images.get(name, 0)
            if isinstance(v, SparsePoly):
                if v.ring is not target:
                    raise ValueError("images live in different rings")
                args.append(v.raw)
            else:
                args.append(target.ctx.constant(to_fmpq(v)))
        if target is self.ring:
            return SparsePoly(target, self.raw.compose(*args))
        return SparsePoly(target, self.raw.compose(*args, ctx=target.ctx))

    def rename(self, target: PolyRing, mapping: Mapping[str, str] | None = None) -> "SparsePoly":
        """Move to ``target`` sending each variable to the same-named (or mapped) variable."""
        mapping = mapping or {}
        return self.subs({n: target.gen(mapping.get(n, n)) for n in self.ring.names}, target)

    def specialize(self, values: Mapping[str, object]) -> "SparsePoly":
        """Set some variables to constants, staying in the same ring."""
        images = {n: values.get(n, g) for n, g in zip(self.ring.names, self.ring.gens())}
        return self.subs(images, self.ring)

    def derivative(self, var: str) -> "SparsePoly":
        return SparsePoly(self.ring, self.raw.derivative(var))

    def divmod(self, d: "SparsePoly") -> tuple["SparsePoly", "SparsePoly"]:
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = divmod(self.raw, self._other(d))
        return SparsePoly(self.ring, q), SparsePoly(self.ring, r)

    def exact_divide(self, d: "SparsePoly") -> "SparsePoly | None":
        """``q`` with ``self == d*q`` when ``d`` divides ``self``, else ``None``."""
        q, r = self.divmod(d)
        if not r.is_zero():
            return None
        if q * d != self:
            return None
        return q

    # -- serialization
    def to_json(self) -> dict:
        return {
            "vars": list(self.ring.names),
            "terms": [{"e": [int(x) for x in e], "c": format_rational(c)} for e, c in self.terms()],
        }

    @staticmethod
    def from_json(obj: Mapping, ring: PolyRing | None = None) -> "SparsePoly":
        names = tuple(obj["vars"])
        if ring is None:
            ring = PolyRing(names)
        elif ring.names != names:
            raise ValueError(f"serialized vars {names} do not match {ring.names}")
        return ring.from_terms({tuple(t["e"]): parse_rational(t["c"]) for t in obj["terms"]})


def poly_arith(p: SparsePoly, q: SparsePoly, op: str) -> SparsePoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def substitute(p: SparsePoly, images: Mapping[str, SparsePoly], target: PolyRing | None = None) -> SparsePoly:
    return p.subs(images, target)


def exact_divide(p: SparsePoly, d: SparsePoly) -> SparsePoly | None:
    return p.exact_divide(d)


# The ambient ring: A, B, A', B' with B, B' carrying depth 1.
R4 = PolyRing(("A", "B", "Ap", "Bp"), depths=(0, 1, 0, 1))


def ring4_gens() -> tuple[SparsePoly, SparsePoly, SparsePoly, SparsePoly]:
    return R4.gens()  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# truncated bivariate series


class TruncSeries2:
    """Truncated series in t, u: coefficients are kept for i + j <= order."""

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring: PolyRing, order: int, coeffs: Mapping[tuple[int, int], object] | None = None):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.ring = ring
        self.order = order
        clean: dict[tuple[int, int], SparsePoly] = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            if i + j > order:
                continue
            if not isinstance(c, SparsePoly):
                c = ring.const(c)
            elif c.ring is not ring:
                raise ValueError("coefficient ring mismatch")
            if not c.is_zero():
                clean[(i, j)] = c
        self.coeffs = clean

    @classmethod
    def from_t(cls, ring: PolyRing, order: int, coeffs: Mapping[int, object] | Sequence[object]) -> "TruncSeries2":
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        return cls(ring, order, {(i, 0): c for i, c in items})

    def coefficient(self, i: int, j: int = 0) -> SparsePoly:
        return self.coeffs.get((i, j), self.ring.zero())

    def _check(self, other: "TruncSeries2") -> int:
        if other.ring is not self.ring:
            raise ValueError("coefficient ring mismatch")
        return min(self.order, other.order)

    def __add__(self, other: "TruncSeries2") -> "TruncSeries2":
        n = self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return TruncSeries2(self.ring, n, out)

    def __neg__(self) -> "TruncSeries2":
        return TruncSeries2(self.ring, self.order, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "TruncSeries2") -> "TruncSeries2":
        return self + (-other)

    def scale(self, c) -> "TruncSeries2":
        return TruncSeries2(self.ring, self.order, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncSeries2):
            return self.scale(other)
        n = self._check(other)
        out: dict[tuple[int, int], SparsePoly] = {}
        for (i, j), a in self.coeffs.items():
            for (k, l), b in other.coeffs.items():
                if i + j + k + l > n:
                    continue
                key = (i + k, j + l)
                out[key] = out[key] + a * b if key in out else a * b
        return TruncSeries2(self.ring, n, out)

    __rmul__ = scale

    def invert(self) -> "TruncSeries2":
        """Multiplicative inverse; the constant term must be a nonzero rational."""
        c0 = self.coefficient(0, 0)
        if c0.is_zero() or not c0.raw.is_constant():
            raise ZeroDivisionError("constant term is not an invertible rational")
        inv0 = 1 / to_fraction(c0.constant_term())
        n = self.order
        out: dict[tuple[int, int], SparsePoly] = {(0, 0): self.ring.const(inv0)}
        for tot in range(1, n + 1):
            for i in range(tot, -1, -1):
                j = tot - i
                acc = self.ring.zero()
                for (a, b), s in self.coeffs.items():
                    if (a, b) == (0, 0) or a > i or b > j:
                        continue
                    r = out.get((i - a, j - b))
                    if r is not None:
                        acc = acc + s * r
                if not acc.is_zero():
                    out[(i, j)] = acc * (-inv0)
        return TruncSeries2(self.ring, n, out)

    def t_log_derivative(self) -> "TruncSeries2":
        """The Euler operator t d/dt."""
        return TruncSeries2(self.ring, self.order, {(i, j): c * i for (i, j), c in self.coeffs.items()})

    def u_derivative_euler(self) -> "TruncSeries2":
        return TruncSeries2(self.ring, self.order, {(i, j): c * j for (i, j), c in self.coeffs.items()})

    def swap_tu(self) -> "TruncSeries2":
        return TruncSeries2(self.ring, self.order, {(j, i): c for (i, j), c in self.coeffs.items()})

    def to_u(self) -> "TruncSeries2":
        """Rename t to u (the series must be t-only)."""
        if any(j for _, j in self.coeffs):
            raise ValueError("series already involves u")
        return self.swap_tu()

    def map_coeffs(self, f: Callable[[SparsePoly], SparsePoly], ring: PolyRing | None = None) -> "TruncSeries2":
        ring = ring or self.ring
        return TruncSeries2(ring, self.order, {k: f(c) for k, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries2):
            return NotImplemented
        n = min(self.order, other.order)
        keys = {k for k in self.coeffs if sum(k) <= n} | {k for k in other.coeffs if sum(k) <= n}
        return all(self.coefficient(*k) == other.coefficient(*k) for k in keys)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{i}*u^{j}" for (i, j), c in sorted(self.coeffs.items()))
        return f"TruncSeries2[{self.order}]({body or '0'})"


def series_ops(s: TruncSeries2, op: str, *args):
    if op == "mul":
        return s * args[0]
    if op == "invert":
        return s.invert()
    if op == "t_log_derivative":
        return s.t_log_derivative()
    if op == "coefficient":
        return s.coefficient(*args)
    raise ValueError(f"unknown op {op!r}")


def rational_series(num: Mapping[int, int], den_factors: Sequence[tuple[int, int]], n: int) -> list[Fraction]:
    """Coefficients up to t^n of num(t) / prod (1 - c t^k) for (k, c) in ``den_factors``."""
    out = [Fraction(0)] * (n + 1)
    for k, c in num.items():
        if 0 <= k <= n:
            out[k] += c
    for k, c in den_factors:
        for i in range(k, n + 1):
            out[i] += c * out[i - k]
    return out


def two_var_series(num: Mapping[tuple[int, int], int], den: Sequence[tuple[int, int]], n: int, m: int) -> dict[tuple[int, int], int]:
    """Coefficients t^i u^j (i <= n, j <= m) of num / prod 1/(1 - t^a u^b)."""
    out: dict[tuple[int, int], int] = {}
    for k, c in num.items():
        if k[0] <= n and k[1] <= m:
            out[k] = out.get(k, 0) + c
    for a, b in den:
        for i in range(a, n + 1):
            for j in range(b, m + 1):
                v = out.get((i - a, j - b), 0)
                if v:
                    out[(i, j)] = out.get((i, j), 0) + v
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# exact linear algebra


def _clear_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive-enough integer row."""
    den = 1
    for c in row:
        q = int(c.q) if isinstance(c, flint.fmpq) else Fraction(c).denominator
        if q != 1:
            den = den * q // _gcd(den, q)
    if den == 1:
        return [int(c.p) if isinstance(c, flint.fmpq) else int(c) for c in row]
    return [int(c * den) if isinstance(c, flint.fmpq) else int(Fraction(c) * den) for c in row]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _pivots_mod_p(rows: list[list[int]], ncols: int) -> list[int]:
    if not rows or ncols == 0:
        return []
    m = flint.nmod_mat(len(rows), ncols, [x % _PRIME for row in rows for x in row], _PRIME)
    r, rank = m.rref()
    piv: list[int] = []
    j = 0
    for i in range(rank):
        while int(r[i, j]) == 0:
            j += 1
        piv.append(j)
        j += 1
    return piv


@dataclass
class Echelon:
    """A certified basis of the row space of an integer matrix.

    ``rows`` holds independent original rows, ``pivots`` a column set on which
    they form a nonsingular square block ``block``.
    """

    ncols: int
    rows: list[list[int]]
    pivots: list[int]
    _inv: object = None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def block(self) -> "flint.fmpq_mat":
        return flint.fmpq_mat([[r[j] for j in self.pivots] for r in self.rows])

    def _block_inverse(self):
        if self._inv is None:
            self._inv = self.block().inv()
        return self._inv

    def coordinates(self, vectors: list[list]) -> list[list[Fraction] | None]:
        """Exact coordinates of each vector in the row basis, or None if outside."""
        if not vectors:
            return []
        r = self.rank
        if r == 0:
            return [None if any(v) else [] for v in vectors]
        V = flint.fmpq_mat([[to_fmpq(v[j]) for j in self.pivots] for v in vectors])
        X = V * self._block_inverse()
        basis = flint.fmpq_mat(self.rows)
        recon = X * basis
        out: list[list[Fraction] | None] = []
        for i, v in enumerate(vectors):
            ok = all(recon[i, j] == to_fmpq(v[j]) for j in range(self.ncols))
            out.append([to_fraction(X[i, k]) for k in range(r)] if ok else None)
        return out

    def residues(self, vectors: list[list]) -> list[list[flint.fmpq]]:
        """Canonical normal forms: subtract the combination matching the pivot entries."""
        if not vectors:
            return []
        if self.rank == 0:
            return [[to_fmpq(x) for x in v] for v in vectors]
        V = flint.fmpq_mat([[to_fmpq(x) for x in v] for v in vectors])
        P = flint.fmpq_mat([[to_fmpq(v[j]) for j in self.pivots] for v in vectors])
        R = V - (P * self._block_inverse()) * flint.fmpq_mat(self.rows)
        return [[R[i, j] for j in range(self.ncols)] for i in range(len(vectors))]


def echelon(rows: Sequence[Sequence], ncols: int) -> Echelon:
    """Certified row basis of a rational matrix (rows may carry fractions)."""
    irows = [_clear_row(r) for r in rows]
    irows = [r for r in irows if any(r)]
    if not irows:
        return Echelon(ncols, [], [])
    piv_cols = _pivots_mod_p(irows, ncols)
    # pick independent rows: pivots of the transpose restricted to piv_cols
    sub = [[r[j] for j in piv_cols] for r in irows]
    trans = [[sub[i][k] for i in range(len(sub))] for k in range(len(piv_cols))]
    piv_rows = _pivots_mod_p(trans, len(irows))
    ech = Echelon(ncols, [irows[i] for i in piv_rows], list(piv_cols))
    chosen = set(piv_rows)
    rest = [irows[i] for i in range(len(irows)) if i not in chosen]
    if rest:
        coords = ech.coordinates(rest)
        if any(c is None for c in coords):
            return _echelon_exact(irows, ncols)
    return ech


def _echelon_exact(irows: list[list[int]], ncols: int) -> Echelon:
    # fallback when the modular prime was unlucky: grow the basis row by row
    basis: list[list[int]] = []
    for r in irows:
        cand = basis + [r]
        if flint.fmpz_mat(cand).rank() == len(cand):
            basis = cand
    m = flint.fmpz_mat(basis)
    red, _den, rank = m.rref()
    piv = []
    for i in range(rank):
        for j in range(ncols):
            if red[i, j] != 0:
                piv.append(j)
                break
    return Echelon(ncols, basis, piv)


def solve_combination(vectors: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Deterministic rational solution of sum c_i vectors[i] = target, or None.

    Free unknowns are set to zero; the unknowns kept are the earliest
    independent vectors.
    """
    if not vectors:
        return [] if not any(target) else None
    ncols = len(target)
    irows = [_clear_row(r) for r in vectors]
    nz = [i for i, r in enumerate(irows) if any(r)]
    if not nz:
        return [Fraction(0)] * len(vectors) if not any(target) else None
    # earliest independent rows: greedy through the transpose pivots
    mat = [irows[i] for i in nz]
    trans = [[mat[i][j] for i in range(len(mat))] for j in range(ncols)]
    piv_rows = _pivots_mod_p(trans, len(mat))
    chosen = [mat[i] for i in piv_rows]
    piv_cols = _pivots_mod_p(chosen, ncols)
    ech = Echelon(ncols, chosen, piv_cols)
    if len(piv_cols) != len(chosen):
        ech = _echelon_exact(chosen, ncols)
    coords = ech.coordinates([list(target)])[0]
    if coords is None:
        # a luckier prime cannot create a solution; confirm exactly
        full = echelon(mat, ncols)
        if full.coordinates([list(target)])[0] is None:
            return None
        raise ArithmeticError("inconsistent modular pivot selection")
    sol = [Fraction(0)] * len(vectors)
    for k, i in enumerate(piv_rows):
        sol[nz[i]] = coords[k]
    return sol


def nullspace_rational(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} for the rational matrix with the given rows."""
    if ncols == 0:
        return []
    irows = [_clear_row(r) for r in rows if any(r)]
    if not irows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ech = echelon(irows, ncols)
    piv = ech.pivots
    free = [j for j in range(ncols) if j not in set(piv)]
    if not free:
        return []
    binv = ech._block_inverse()
    # x_piv = -B^{-1} N x_free with B the pivot block
    Nfree = flint.fmpq_mat([[r[j] for j in free] for r in ech.rows])
    sol = binv * Nfree
    # block() is rows x piv, so B x_piv + N x_free = 0 gives x_piv = -B^{-1} N x_free
    out = []
    for k, f in enumerate(free):
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for a, j in enumerate(piv):
            x[j] = -to_fraction(sol[a, k])
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# graded subspaces of a polynomial ring


GradeKey = Hashable


def weight_grading(ring: PolyRing) -> Callable[[Exponent], GradeKey]:
    return lambda e: (ring.weight_of(e), None)


def bigrading(ring: PolyRing) -> Callable[[Exponent], GradeKey]:
    return lambda e: (ring.weight_of(e), ring.depth_of(e))


class _Piece:
    """One homogeneous component: independent spanning polynomials plus pivots."""

    __slots__ = ("cols", "index", "ech", "basis")

    def __init__(self, polys: Sequence[SparsePoly]):
        support = set()
        for p in polys:
            support.update(p.to_dict())
        self.cols = sorted(support, key=monomial_key, reverse=True)
        self.index = {e: i for i, e in enumerate(self.cols)}
        rows = [self._vec(p) for p in polys]
        self.ech = echelon(rows, len(self.cols))
        ring = polys[0].ring if polys else None
        self.basis = [
            ring.from_terms({self.cols[j]: c for j, c in enumerate(r) if c})
            for r in self.ech.rows
        ] if ring else []

    def _vec(self, p: SparsePoly) -> list:
        v = [0] * len(self.cols)
        for e, c in p.to_dict().items():
            v[self.index[e]] = c
        return v

    @property
    def dim(self) -> int:
        return self.ech.rank

    def contains(self, polys: Sequence[SparsePoly]) -> list[bool]:
        out: list[bool | None] = []
        todo, where = [], []
        for p in polys:
            if p.is_zero():
                out.append(True)
            elif any(e not in self.index for e in p.to_dict()):
                out.append(False)
            else:
                out.append(None)
                where.append(len(out) - 1)
                todo.append(self._vec(p))
        if todo:
            coords = self.ech.coordinates(todo)
            for k, c in zip(where, coords):
                out[k] = c is not None
        return out  # type: ignore[return-value]

    def coordinates(self, p: SparsePoly) -> list[Fraction] | None:
        if p.is_zero():
            return [Fraction(0)] * self.dim
        if any(e not in self.index for e in p.to_dict()):
            return None
        return self.ech.coordinates([self._vec(p)])[0]

    def reduce(self, p: SparsePoly) -> SparsePoly:
        if self.dim == 0 or p.is_zero():
            return p
        inside = {e: c for e, c in p.to_dict().items() if e in self.index}
        outside = {e: c for e, c in p.to_dict().items() if e not in self.index}
        vec = [0] * len(self.cols)
        for e, c in inside.items():
            vec[self.index[e]] = c
        res = self.ech.residues([vec])[0]
        terms = {self.cols[j]: c for j, c in enumerate(res) if c != 0}
        terms.update(outside)
        return p.ring.from_terms(terms)


class GradedSubspace:
    """A graded subspace of a polynomial ring, stored one grade at a time.

    ``grading`` maps an exponent to its grade key; spanning polynomials are
    split into homogeneous components before being stored, so the object is
    always the span of homogeneous vectors.
    """

    def __init__(self, ring: PolyRing, grading: str = "weight",
                 pieces: Mapping[GradeKey, _Piece] | None = None):
        if grading not in ("weight", "bigrade"):
            raise ValueError("grading must be 'weight' or 'bigrade'")
        self.ring = ring
        self.grading = grading
        self._key = weight_grading(ring) if grading == "weight" else bigrading(ring)
        self.pieces: dict[GradeKey, _Piece] = {k: v for k, v in (pieces or {}).items() if v.dim}

    @classmethod
    def span(cls, ring: PolyRing, polys: Iterable[SparsePoly], grading: str = "weight") -> "GradedSubspace":
        out = cls(ring, grading)
        groups: dict[GradeKey, list[SparsePoly]] = {}
        for p in polys:
            for k, part in out.split(p).items():
                groups.setdefault(k, []).append(part)
        out.pieces = {k: _Piece(v) for k, v in groups.items()}
        out.pieces = {k: v for k, v in out.pieces.items() if v.dim}
        return out

    def split(self, p: SparsePoly) -> dict[GradeKey, SparsePoly]:
        if p.ring is not self.ring:
            raise ValueError("ambient ring mismatch")
        parts: dict[GradeKey, dict] = {}
        for e, c in p.to_dict().items():
            parts.setdefault(self._key(e), {})[e] = c
        return {k: self.ring.from_terms(v) for k, v in parts.items()}

    def _compatible(self, other: "GradedSubspace") -> None:
        if other.ring is not self.ring or other.grading != self.grading:
            raise ValueError("ambient mismatch")

    def keys(self) -> list[GradeKey]:
        return sorted(self.pieces, key=lambda k: (k[0], -1 if k[1] is None else k[1]))

    def dim(self, key: GradeKey) -> int:
        piece = self.pieces.get(key)
        return piece.dim if piece else 0

    def dims(self) -> dict[GradeKey, int]:
        return {k: self.pieces[k].dim for k in self.keys()}

    def weight_dim(self, w: int) -> int:
        return sum(p.dim for k, p in self.pieces.items() if k[0] == w)

    def basis(self, key: GradeKey) -> list[SparsePoly]:
        piece = self.pieces.get(key)
        return list(piece.basis) if piece else []

    def all_basis(self) -> Iterator[SparsePoly]:
        for k in self.keys():
            yield from self.pieces[k].basis

    def contains(self, p: SparsePoly) -> bool:
        for k, part in self.split(p).items():
            piece = self.pieces.get(k)
            if piece is None or not piece.contains([part])[0]:
                return False
        return True

    def contains_all(self, polys: Sequence[SparsePoly]) -> bool:
        groups: dict[GradeKey, list[SparsePoly]] = {}
        for p in polys:
            for k, part in self.split(p).items():
                groups.setdefault(k, []).append(part)
        for k, parts in groups.items():
            piece = self.pieces.get(k)
            if piece is None or not all(piece.contains(parts)):
                return False
        return True

    def reduce(self, p: SparsePoly) -> SparsePoly:
        """Canonical representative of ``p`` modulo this subspace."""
        out = self.ring.zero()
        for k, part in self.split(p).items():
            piece = self.pieces.get(k)
            out = out + (piece.reduce(part) if piece else part)
        return out

    def coordinates(self, p: SparsePoly) -> dict[GradeKey, list[Fraction]] | None:
        out = {}
        for k, part in self.split(p).items():
            piece = self.pieces.get(k)
            if piece is None:
                return None
            c = piece.coordinates(part)
            if c is None:
                return None
            out[k] = c
        return out

    def sum(self, other: "GradedSubspace") -> "GradedSubspace":
        self._compatible(other)
        return GradedSubspace.span(self.ring, list(self.all_basis()) + list(other.all_basis()), self.grading)

    __add__ = sum

    def intersect(self, other: "GradedSubspace") -> "GradedSubspace":
        self._compatible(other)
        pieces = {}
        for k in set(self.pieces) & set(other.pieces):
            X, Y = self.pieces[k].basis, other.pieces[k].basis
            cols = sorted({e for p in X + Y for e in p.to_dict()}, key=monomial_key, reverse=True)
            idx = {e: i for i, e in enumerate(cols)}
            # columns of the system are the vectors of X and -Y
            sys_rows = [[0] * (len(X) + len(Y)) for _ in cols]
            for a, p in enumerate(X):
                for e, c in p.to_dict().items():
                    sys_rows[idx[e]][a] = c
            for b, p in enumerate(Y):
                for e, c in p.to_dict().items():
                    sys_rows[idx[e]][len(X) + b] = -c
            ker = nullspace_rational(sys_rows, len(X) + len(Y))
            vecs = []
            for x in ker:
                acc = self.ring.zero()
                for a, p in enumerate(X):
                    if x[a]:
                        acc = acc + p * x[a]
                vecs.append(acc)
            if vecs:
                pieces[k] = _Piece(vecs)
        return GradedSubspace(self.ring, self.grading, pieces)

    def quotient_dims(self, other: "GradedSubspace") -> dict[GradeKey, int]:
        """dim X - dim (X ∩ Y) per grade (X = self)."""
        inter = self.intersect(other)
        return {k: self.dim(k) - inter.dim(k) for k in self.keys()}

    def image_under(self, f: Callable[[SparsePoly], SparsePoly], ring: PolyRing | None = None,
                    grading: str | None = None) -> "GradedSubspace":
        ring = ring or self.ring
        return GradedSubspace.span(ring, [f(b) for b in self.all_basis()], grading or self.grading)

    def restrict(self, pred: Callable[[GradeKey], bool]) -> "GradedSubspace":
        return GradedSubspace(self.ring, self.grading, {k: v for k, v in self.pieces.items() if pred(k)})


def subspace_ops(X: GradedSubspace, Y, op: str):
    if op == "sum":
        return X.sum(Y)
    if op == "intersect":
        return X.intersect(Y)
    if op == "contains":
        return X.contains(Y)
    if op == "quotient_dims":
        return X.quotient_dims(Y)
    if op == "image_under":
        return X.image_under(Y)
    raise ValueError(f"unknown op {op!r}")


def span_dim(polys: Sequence[SparsePoly]) -> int:
    """Dimension of the span of arbitrary (not necessarily homogeneous) polynomials."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return 0
    return _Piece(polys).dim


class KeyedSpan:
    """Span of sparse vectors given as mappings key -> coefficient."""

    def __init__(self, vectors: Sequence[Mapping]):
        vectors = [v for v in vectors if any(v.values())]
        keys = set()
        for v in vectors:
            keys.update(k for k, c in v.items() if c)
        self.keys = sorted(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        self.ech = echelon([self._vec(v) for v in vectors], len(self.keys))
        self.basis = [{self.keys[j]: to_fraction(c) for j, c in enumerate(r) if c} for r in self.ech.rows]

    def _vec(self, v: Mapping) -> list:
        out = [0] * len(self.keys)
        for k, c in v.items():
            if c:
                out[self.index[k]] = c
        return out

    @property
    def dim(self) -> int:
        return self.ech.rank

    def coordinates(self, v: Mapping) -> list[Fraction] | None:
        if any(c and k not in self.index for k, c in v.items()):
            return None
        if not any(v.values()):
            return [Fraction(0)] * self.dim
        return self.ech.coordinates([self._vec(v)])[0]

    def contains(self, v: Mapping) -> bool:
        return self.coordinates(v) is not None


class IndependentBasis:
    """Coordinates with respect to a fixed list of linearly independent sparse vectors.

    The pivot block is inverted once, so repeated solves cost one small
    matrix product plus an exact reconstruction check.
    """

    def __init__(self, vectors: Sequence[Mapping]):
        keys = sorted({k for v in vectors for k, c in v.items() if c})
        self.index = {k: i for i, k in enumerate(keys)}
        n, m = len(vectors), len(keys)
        self.n, self.m = n, m
        entries = [flint.fmpq(0)] * (n * m)
        for i, v in enumerate(vectors):
            for k, c in v.items():
                if c:
                    entries[i * m + self.index[k]] = to_fmpq(c)
        self.matrix = flint.fmpq_mat(n, m, entries) if n else None
        self.pivots: list[int] = []
        if n:
            rref, rank = self.matrix.rref()
            if rank != n:
                raise ArithmeticError("vectors are not linearly independent")
            j = 0
            for i in range(n):
                while rref[i, j] == 0:
                    j += 1
                self.pivots.append(j)
                j += 1
            block = flint.fmpq_mat(n, n, [self.matrix[i, p] for i in range(n) for p in self.pivots])
            self._inv = block.inv()

    def __len__(self) -> int:
        return self.n

    def coordinates(self, v: Mapping) -> list[Fraction] | None:
        """c with sum c_i vectors[i] = v, or None if v is outside the span."""
        if not any(v.values()):
            return [Fraction(0)] * self.n
        if self.n == 0 or any(c and k not in self.index for k, c in v.items()):
            return None
        target = [flint.fmpq(0)] * self.m
        for k, c in v.items():
            if c:
                target[self.index[k]] = to_fmpq(c)
        coeffs = flint.fmpq_mat(1, self.n, [target[j] for j in self.pivots]) * self._inv
        recon = coeffs * self.matrix
        if any(recon[0, j] != target[j] for j in range(self.m)):
            return None
        return [to_fraction(coeffs[0, i]) for i in range(self.n)]
