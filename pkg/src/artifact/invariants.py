"""The invariant ring of the wreath product S3 ≀ S2 acting on Q[A, B, A', B'].

The group acts through the 3×3 matrix X with rows (A, B, -A-B),
(A', B', -A'-B') and (-A-A', -B-B', A+B+A'+B'); row and column permutations
and transposition preserve the zero line sums, so they act by linear
substitutions on (A, B, A', B') = (X11, X12, X21, X22).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import flint

from .exactpoly import R4, GradedSubspace, SparsePoly, rational_series, solve_combination, span_dim
from .report import CheckReport

A, B, Ap, Bp = R4.gens()
VARS = R4.names

# Molien series numerator and denominator factors (weight, multiplicity sign)
MOLIEN_NUM = {0: 1, 5: 1}
MOLIEN_DEN = [(2, 1), (3, 1), (4, 1), (6, 1)]
GENERATOR_WEIGHTS = (2, 3, 4, 5, 6)


def x_matrix() -> list[list[SparsePoly]]:
    return [
        [A, B, -A - B],
        [Ap, Bp, -Ap - Bp],
        [-A - Ap, -B - Bp, A + B + Ap + Bp],
    ]


@lru_cache(maxsize=None)
def sigma_tilde(k: int) -> SparsePoly:
    """The nine-term power sum of the entries of X."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return sum((x ** k for row in x_matrix() for x in row), R4.zero())


# ---------------------------------------------------------------------------
# the group


_PERMS3 = tuple(itertools.permutations(range(3)))


@dataclass(frozen=True)
class GroupElement:
    """(row permutation, column permutation, transpose flag).

    The element sends X to the matrix with entries X[rows[a]][cols[b]],
    transposed afterwards when ``transpose`` is set.
    """

    rows: tuple[int, int, int] = (0, 1, 2)
    cols: tuple[int, int, int] = (0, 1, 2)
    transpose: bool = False

    def images(self) -> dict[str, SparsePoly]:
        X = x_matrix()
        Y = [[X[self.rows[a]][self.cols[b]] for b in range(3)] for a in range(3)]
        if self.transpose:
            Y = [[Y[b][a] for b in range(3)] for a in range(3)]
        return {"A": Y[0][0], "B": Y[0][1], "Ap": Y[1][0], "Bp": Y[1][1]}

    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Row v holds the coefficients of the image of variable v."""
        im = self.images()
        return tuple(
            tuple(int(im[v].coefficient(tuple(int(i == j) for i in range(4)))) for j in range(4))
            for v in VARS
        )

    def act(self, p: SparsePoly) -> SparsePoly:
        return p.subs(self.images(), R4)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        """Composite with (g*h).act(p) == g.act(h.act(p))."""
        prod = _matmul(other.matrix(), self.matrix())
        return _by_matrix()[prod]

    def inverse(self) -> "GroupElement":
        for g in group_elements():
            if (self * g).is_identity():
                return g
        raise AssertionError("no inverse found")

    def is_identity(self) -> bool:
        return self.matrix() == IDENTITY.matrix()

    def is_variable_permutation(self) -> bool:
        m = self.matrix()
        return all(sorted(row) == [0, 0, 0, 1] for row in m)


IDENTITY = GroupElement()
GENERATORS = (
    GroupElement(cols=(1, 0, 2)),          # (B, A, B', A')
    GroupElement(cols=(1, 2, 0)),          # (B, -A-B, B', -A'-B')
    GroupElement(transpose=True),          # (A, A', B, B')
)


def _matmul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(4)) for j in range(4)) for i in range(4))


@lru_cache(maxsize=None)
def group_elements() -> tuple[GroupElement, ...]:
    out = []
    seen = set()
    for r in _PERMS3:
        for c in _PERMS3:
            for t in (False, True):
                g = GroupElement(r, c, t)
                m = g.matrix()
                if m not in seen:
                    seen.add(m)
                    out.append(g)
    return tuple(out)


@lru_cache(maxsize=None)
def _by_matrix() -> dict:
    return {g.matrix(): g for g in group_elements()}


def generated_group_order() -> int:
    """Size of the closure of GENERATORS, computed on the 4×4 matrices."""
    gens = [g.matrix() for g in GENERATORS]
    ident = IDENTITY.matrix()
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                h = _matmul(m, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def group_act(g: GroupElement, p: SparsePoly) -> SparsePoly:
    return g.act(p)


def reynolds(p: SparsePoly) -> SparsePoly:
    """Average of p over all 72 group elements."""
    acc = R4.zero()
    for g in group_elements():
        acc = acc + g.act(p)
    return acc / len(group_elements())


def is_invariant(p: SparsePoly) -> bool:
    return all(g.act(p) == p for g in GENERATORS)


# ---------------------------------------------------------------------------
# Molien series, two ways


def molien_expected(n: int) -> list[int]:
    return [int(c) for c in rational_series(MOLIEN_NUM, MOLIEN_DEN, n)]


def molien_series(n: int) -> list[Fraction]:
    """(1/72) Σ_g 1/det(1 - t g), expanded to t^n."""
    total = [Fraction(0)] * (n + 1)
    for g in group_elements():
        m = flint.fmpq_mat([list(r) for r in g.matrix()])
        cp = m.charpoly()  # det(x - M) = x^4 + c3 x^3 + ...; det(1 - tM) reverses it
        coeffs = [Fraction(int(c.p), int(c.q)) for c in cp.coeffs()]
        rev = list(reversed(coeffs))  # rev[i] is the t^i coefficient of det(1 - tM)
        rev += [Fraction(0)] * (5 - len(rev))
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / rev[0]
        for i in range(1, n + 1):
            s = sum((rev[k] * inv[i - k] for k in range(1, min(i, 4) + 1)), Fraction(0))
            inv[i] = -s / rev[0]
        for i in range(n + 1):
            total[i] += inv[i]
    return [c / len(group_elements()) for c in total]


def _d4_and_n() -> tuple[list[GroupElement], list[GroupElement]]:
    swap = (0, 1, 2), (1, 0, 2)
    d4 = [GroupElement(r, c, t) for r in swap for c in swap for t in (False, True)]
    cyc = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    n = [GroupElement(r, c, False) for r in cyc for c in cyc]
    return d4, n


def _orbit_max(e: tuple[int, ...], perms: list[tuple[int, ...]]) -> tuple[int, ...]:
    return max(tuple(e[p[i]] for i in range(4)) for p in perms)


def _var_perm(g: GroupElement) -> tuple[int, ...]:
    """For a variable permutation g: image of variable i is variable perm[i]."""
    return tuple(row.index(1) for row in g.matrix())


def reynolds_span_dims(n: int) -> list[int]:
    """dim of span{reynolds(m)} over monomials m of each weight <= n.

    The group is split as N ⋊ D4 with N = A3 × A3 normal and D4 acting by
    variable permutations; reynolds = (D4 average) ∘ (N average), so only
    D4-orbit representatives need the N average.
    """
    d4, nsub = _d4_and_n()
    perms = [_var_perm(g) for g in d4]
    ctx = R4.ctx
    reps: dict[int, list[tuple[int, ...]]] = {}
    for w in range(n + 1):
        reps[w] = sorted({_orbit_max(e, perms) for e in R4.monomials(w)})
    rep_set = {e for w in reps for e in reps[w]}
    sums: dict[tuple[int, ...], object] = {e: ctx.from_dict({}) for e in rep_set}
    for g in nsub:
        lin = [x.raw for x in (g.images()[v] for v in VARS)]
        prev = {(0, 0, 0, 0): ctx.constant(1)}
        sums[(0, 0, 0, 0)] += prev[(0, 0, 0, 0)]
        for w in range(1, n + 1):
            cur = {}
            for e in R4.monomials(w):
                i = max(k for k in range(4) if e[k])
                f = list(e)
                f[i] -= 1
                cur[e] = prev[tuple(f)] * lin[i]
                if e in sums:
                    sums[e] += cur[e]
            prev = cur
    # The D4 average of p, restricted to orbit-maximal monomials, has coefficient
    # |Stab(m)|·(sum of p over the orbit of m) at m; scaling columns keeps the rank.
    dims = []
    for w in range(n + 1):
        vecs = []
        for e in reps[w]:
            acc: dict = {}
            for f, c in SparsePoly(R4, sums[e]).to_dict().items():
                m = _orbit_rep(f)
                acc[m] = acc.get(m, 0) + c
            vecs.append(R4.from_terms({m: c for m, c in acc.items() if c}))
        dims.append(span_dim(vecs))
    return dims


@lru_cache(maxsize=None)
def _d4_perms() -> tuple[tuple[int, ...], ...]:
    d4, _ = _d4_and_n()
    return tuple(_var_perm(g) for g in d4)


def compress_invariant(p: SparsePoly) -> SparsePoly:
    """Keep only D4-orbit-maximal monomials; injective on D4-invariant polynomials."""
    return p.filter(lambda e: _orbit_rep(e) == e)


@lru_cache(maxsize=None)
def _orbit_rep(e: tuple[int, ...]) -> tuple[int, ...]:
    return _orbit_max(e, list(_d4_perms()))


# ---------------------------------------------------------------------------
# presentation of the invariant ring


def presentation_relation() -> SparsePoly:
    s2, s3, s4, s5, s6 = (sigma_tilde(k) for k in GENERATOR_WEIGHTS)
    F = Fraction
    return (s5 ** 2 - s2 * s3 * s5 * F(25, 18)
            + (s4 * F(275, 108) - s2 ** 2 * F(25, 162)) * s3 ** 2
            + (s4 - s2 ** 2 * F(1, 4)) * (s2 ** 3 * F(-125, 432) + s2 * s4 * F(175, 72) - s6 * F(25, 6)))


def gr0_relation_lift() -> SparsePoly:
    s2, s4, s6 = (sigma_tilde(k) for k in (2, 4, 6))
    F = Fraction
    return (s4 - s2 ** 2 * F(1, 4)) * (s2 ** 3 * F(-125, 432) + s2 * s4 * F(175, 72) - s6 * F(25, 6))


def exponent_vectors(weight: int, weights: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All exponent tuples with Σ e_i * weights[i] == weight, lexicographic."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, rem: int, cur: list[int]) -> None:
        if i == len(weights):
            if rem == 0:
                out.append(tuple(cur))
            return
        for k in range(rem // weights[i] + 1):
            cur.append(k)
            rec(i + 1, rem - k * weights[i], cur)
            cur.pop()

    rec(0, weight, [])
    return out


@lru_cache(maxsize=None)
def sigma_monomial(exps: tuple[tuple[int, int], ...]) -> SparsePoly:
    """Product of sigma_tilde(k)**e over sorted (k, e) pairs."""
    if not exps:
        return R4.one()
    (k, e), rest = exps[-1], exps[:-1]
    if e == 0:
        return sigma_monomial(rest)
    return sigma_monomial(rest + ((k, e - 1),) if e > 1 else rest) * sigma_tilde(k)


def sigma_product(**powers: int) -> SparsePoly:
    items = tuple(sorted((int(k[1:]), e) for k, e in powers.items() if e))
    return sigma_monomial(items)


def smono(exps: dict[int, int]) -> SparsePoly:
    return sigma_monomial(tuple(sorted((k, e) for k, e in exps.items() if e)))


@lru_cache(maxsize=None)
def algebra_basis_labels(w: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Labels of the free-module basis σ2^a σ3^b σ4^c σ6^d σ5^ε (ε ∈ {0,1})."""
    out = []
    for eps in (0, 1):
        for a, b, c, d in exponent_vectors(w - 5 * eps, (2, 3, 4, 6)) if w - 5 * eps >= 0 else []:
            out.append(tuple(sorted((k, e) for k, e in ((2, a), (3, b), (4, c), (6, d), (5, eps)) if e)))
    return tuple(out)


def algebra_basis(w: int) -> list[SparsePoly]:
    return [sigma_monomial(lab) for lab in algebra_basis_labels(w)]


def subring_dim(w: int, gens: tuple[int, ...] = GENERATOR_WEIGHTS) -> int:
    """dim of the weight-w part of the subring generated by sigma_tilde(k), k in gens."""
    polys = [smono(dict(zip(gens, e))) for e in exponent_vectors(w, gens)]
    return span_dim([compress_invariant(p) for p in polys])


def verify_presentation_A(N: int = 12) -> CheckReport:
    rep = CheckReport("a-presentation", {"max_weight": N})
    rel = presentation_relation()
    rep.require(rel.is_zero(), {"residue": rel.to_json()}, w=10)
    expected = molien_expected(N)
    for w in range(N + 1):
        free = len(exponent_vectors(w, (2, 3, 4, 6)))
        got = subring_dim(w, (2, 3, 4, 6))
        rep.row(w, got, free, d=None)
        rep.row(w, subring_dim(w), expected[w])
        rep.row(w, len(algebra_basis_labels(w)), expected[w])
        rep.row(w, span_dim([compress_invariant(p) for p in algebra_basis(w)]), expected[w])
    rep.note(f"generation of the invariant ring verified to weight {N}")
    return rep.finish()


def verify_molien(N: int = 20, with_reynolds: bool = True) -> CheckReport:
    rep = CheckReport("molien", {"max_weight": N})
    expected = molien_expected(N)
    ms = molien_series(N)
    for w in range(N + 1):
        rep.row(w, int(ms[w]) if ms[w].denominator == 1 else -1, expected[w])
    if with_reynolds:
        rs = reynolds_span_dims(N)
        for w in range(N + 1):
            rep.row(w, rs[w], expected[w])
    return rep.finish()


# ---------------------------------------------------------------------------
# the ideal generated by the odd sigma_tilde and its powers


def _ideal_spanning(k: int, w: int, gens: tuple[int, ...] = (3, 5)) -> list[SparsePoly]:
    """Spanning set of the weight-w part of I^k for I generated by sigma_tilde(g), g in gens."""
    out = []
    for e in itertools.combinations_with_replacement(gens, k):
        rest = w - sum(e)
        if rest < 0:
            continue
        prod = R4.one()
        for g in e:
            prod = prod * sigma_tilde(g)
        out.extend(b * prod for b in algebra_basis(rest))
    return out


@lru_cache(maxsize=None)
def ideal_power_dim(k: int, w: int) -> int:
    if k == 0:
        return len(algebra_basis_labels(w))
    return span_dim([compress_invariant(p) for p in _ideal_spanning(k, w)])


def gr_sigma_A(k: int, N: int) -> dict[int, int]:
    """dims of I^k / I^(k+1) per weight w <= N."""
    return {w: ideal_power_dim(k, w) - ideal_power_dim(k + 1, w) for w in range(N + 1)}


def gr0_expected(N: int) -> list[int]:
    return [int(c) for c in rational_series({0: 1, 10: -1}, [(2, 1), (4, 1), (6, 1)], N)]


def grA_expected(k: int, N: int) -> list[int]:
    """Σ_{a+b=k} dim gr^0 at w - 3a - 5b."""
    g0 = gr0_expected(N)
    out = [0] * (N + 1)
    for a in range(k + 1):
        shift = 3 * a + 5 * (k - a)
        for w in range(shift, N + 1):
            out[w] += g0[w - shift]
    return out


def ideal_quotient_space(w: int) -> GradedSubspace:
    return GradedSubspace.span(R4, [compress_invariant(p) for p in _ideal_spanning(1, w)])


def verify_ideal_i35(N: int = 17) -> CheckReport:
    """The ideal (σ3, σ5) contains every odd σ_i, and the two ideals agree per weight."""
    rep = CheckReport("ideal-i35", {"max_weight": N})
    odd = tuple(range(3, N + 1, 2))
    for w in range(N + 1):
        small = ideal_power_dim(1, w)
        big = span_dim([compress_invariant(p) for p in _ideal_spanning(1, w, odd)])
        rep.row(w, small, big)
    for i in range(7, N + 1, 2):
        p3, p5 = decompose_in_I35(i)
        ok = p3 * sigma_tilde(3) + p5 * sigma_tilde(5) == sigma_tilde(i)
        rep.require(ok, {"i": i}, w=i)
    return rep.finish()


# ---------------------------------------------------------------------------
# the decomposition σ_i = P_i3 σ3 + P_i5 σ5


@lru_cache(maxsize=None)
def decompose_in_I35(i: int, variant: int = 0) -> tuple[SparsePoly, SparsePoly]:
    """(P3, P5) in the invariant ring with σ_i = P3 σ3 + P5 σ5.

    The unknowns are the coefficients on the fixed bases of the weight i-3 and
    i-5 pieces; the earliest independent columns are used and the free ones set
    to zero.  ``variant=1`` shifts the pair by the syzygy (σ5 h, -σ3 h) with h the
    first basis element of weight i-8, giving a second valid solution.
    """
    if i < 3 or i % 2 == 0:
        raise ValueError("i must be odd >= 3")
    if i == 3:
        return R4.one(), R4.zero()
    if i == 5:
        return R4.zero(), R4.one()
    b3 = algebra_basis(i - 3)
    b5 = algebra_basis(i - 5)
    s3, s5 = sigma_tilde(3), sigma_tilde(5)
    cols = [compress_invariant(b * s3) for b in b3] + [compress_invariant(b * s5) for b in b5]
    target = compress_invariant(sigma_tilde(i))
    support = sorted({e for p in cols + [target] for e in p.to_dict()})
    idx = {e: n for n, e in enumerate(support)}

    def vec(p: SparsePoly) -> list:
        v = [0] * len(support)
        for e, c in p.to_dict().items():
            v[idx[e]] = c
        return v

    sol = solve_combination([vec(p) for p in cols], vec(target))
    if sol is None:
        raise ArithmeticError(f"sigma_tilde({i}) is not in the ideal (σ3, σ5)")
    P3 = sum((b * c for b, c in zip(b3, sol[: len(b3)]) if c), R4.zero())
    P5 = sum((b * c for b, c in zip(b5, sol[len(b3):]) if c), R4.zero())
    if variant and i - 8 >= 0 and algebra_basis(i - 8):
        h = algebra_basis(i - 8)[0]
        P3, P5 = P3 + h * s5, P5 - h * s3
    if P3 * s3 + P5 * s5 != sigma_tilde(i):
        raise ArithmeticError("decomposition does not multiply back")
    return P3, P5


# ---------------------------------------------------------------------------
# graded pieces


def verify_gr0a_presentation(N: int = 12) -> CheckReport:
    rep = CheckReport("gr0a-presentation", {"max_weight": N})
    lift = gr0_relation_lift()
    space = ideal_quotient_space(10)
    rep.require(space.contains(compress_invariant(lift)), {"relation": "not in I at weight 10"}, w=10)
    got = gr_sigma_A(0, N)
    exp = gr0_expected(N)
    for w in range(N + 1):
        rep.row(w, got[w], exp[w])
        free = len(exponent_vectors(w, (2, 4, 6)))
        # the presented ring: free count minus the multiples of the weight-10 relation
        presented = free - (len(exponent_vectors(w - 10, (2, 4, 6))) if w >= 10 else 0)
        rep.row(w, got[w], presented)
    return rep.finish()


def verify_grA_polynomial(N: int = 14, K: int | None = None) -> CheckReport:
    """gr_Σ(A) has the dims of gr^0_Σ(A)[x3, x5] per (weight, Σ-degree)."""
    K = N // 3 if K is None else K
    rep = CheckReport("gra-polynomial", {"max_weight": N, "sigma_degree": K})
    molien = molien_expected(N)
    totals = [0] * (N + 1)
    for k in range(K + 1):
        got = gr_sigma_A(k, N)
        exp = grA_expected(k, N)
        for w in range(N + 1):
            rep.row(w, got[w], exp[w], d=k)
            totals[w] += got[w]
    for w in range(N + 1):
        if 3 * (K + 1) > w:  # all Σ-degrees that can occur were included
            rep.row(w, totals[w], molien[w])
    return rep.finish()


def depth_filtration_level(p: SparsePoly) -> int:
    """Largest d with p in F^d (all terms of depth >= d)."""
    return min(p.depths()) if not p.is_zero() else 10 ** 9
