"""The free Lie algebra on x, y inside the free associative algebra.

Lie elements are stored as noncommutative polynomials (word -> coefficient),
so equality is dictionary equality and the bracket is the commutator.
Coordinates in the Lyndon basis are recovered by triangularity: the standard
bracketing of a Lyndon word w expands to w plus lexicographically larger
words.

Lazard elimination: the derived algebra is free on
g(a, b) = (ad x)^a (ad y)^b [x, y], letters ordered by (a+b, b, a).  The
graded model lives in tensor powers of V = AB·Q[A, B], with the k-th tensor
power realized as polynomials in A1, B1, ..., Ak, Bk.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exactpoly import IndependentBasis, KeyedSpan, PolyRing, SparsePoly

Word = tuple[int, ...]
X, Y = 0, 1
_LETTERS = "xy"


# ---------------------------------------------------------------------------
# words and Lyndon combinatorics (any totally ordered integer alphabet)


def is_lyndon(w: Word) -> bool:
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """w = u v with v the lexicographically smallest proper suffix."""
    if len(w) < 2:
        raise ValueError("letters have no standard factorization")
    i = min(range(1, len(w)), key=lambda k: w[k:])
    return w[:i], w[i:]


def lyndon_words_xy(n: int, depth: int | None = None) -> list[Word]:
    """Lyndon words of length n in x < y, optionally with a fixed number of y."""
    if n <= 0:
        return []
    if depth is None:
        out = [w for d in range(n + 1) for w in lyndon_words_xy(n, d)]
        return sorted(out)
    out = []
    for pos in itertools.combinations(range(n), depth):
        w = [X] * n
        for p in pos:
            w[p] = Y
        w = tuple(w)
        if is_lyndon(w):
            out.append(w)
    return sorted(out)


def word_str(w: Word) -> str:
    return "".join(_LETTERS[c] for c in w)


def parse_word(s: str) -> Word:
    return tuple(_LETTERS.index(c) for c in s)


# ---------------------------------------------------------------------------
# noncommutative polynomials


def _add_into(acc: dict, other: Mapping, scale=1) -> None:
    for w, c in other.items():
        v = acc.get(w, 0) + c * scale
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def _mul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for u, a in p.items():
        for v, b in q.items():
            w = u + v
            c = out.get(w, 0) + a * b
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def _commutator(p: Mapping, q: Mapping) -> dict:
    out = _mul(p, q)
    _add_into(out, _mul(q, p), -1)
    return out


class LieElt:
    """An element of the free Lie algebra on x, y (immutable)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] | None = None):
        self.terms: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            if c:
                self.terms[tuple(w)] = Fraction(c)
        self._hash = None

    @staticmethod
    def x() -> "LieElt":
        return LieElt({(X,): 1})

    @staticmethod
    def y() -> "LieElt":
        return LieElt({(Y,): 1})

    @staticmethod
    def zero() -> "LieElt":
        return LieElt()

    @staticmethod
    def from_lyndon(coeffs: Mapping[str | Word, object]) -> "LieElt":
        acc: dict = {}
        for w, c in coeffs.items():
            w = parse_word(w) if isinstance(w, str) else tuple(w)
            _add_into(acc, lyndon_expansion(w), Fraction(c))
        return LieElt(acc)

    def __add__(self, other: "LieElt") -> "LieElt":
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return LieElt(acc)

    def __sub__(self, other: "LieElt") -> "LieElt":
        acc = dict(self.terms)
        _add_into(acc, other.terms, -1)
        return LieElt(acc)

    def __neg__(self) -> "LieElt":
        return LieElt({w: -c for w, c in self.terms.items()})

    def __mul__(self, c) -> "LieElt":
        c = Fraction(c)
        return LieElt({w: v * c for w, v in self.terms.items()}) if c else LieElt()

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElt) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def bigrades(self) -> set[tuple[int, int]]:
        return {(len(w), w.count(Y)) for w in self.terms}

    def component(self, weight: int | None = None, depth: int | None = None) -> "LieElt":
        return LieElt({w: c for w, c in self.terms.items()
                       if (weight is None or len(w) == weight) and (depth is None or w.count(Y) == depth)})

    def depth_component(self, d: int) -> "LieElt":
        return self.component(depth=d)

    def lyndon(self) -> dict[Word, Fraction]:
        """Coordinates in the Lyndon basis (standard bracketing)."""
        rest = dict(self.terms)
        out: dict[Word, Fraction] = {}
        while rest:
            w = min(rest, key=lambda u: (len(u), u))
            c = rest[w]
            if not is_lyndon(w):
                raise ValueError(f"not a Lie element: leading word {word_str(w)} is not Lyndon")
            out[w] = c
            _add_into(rest, lyndon_expansion(w), -c)
        return dict(sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def bracket(self, other: "LieElt") -> "LieElt":
        return LieElt(_commutator(self.terms, other.terms))

    def to_json(self) -> dict:
        return {
            "basis": "lyndon-xy",
            "terms": [{"word": word_str(w), "c": f"{c.numerator}/{c.denominator}"} for w, c in self.lyndon().items()],
        }

    def __repr__(self) -> str:
        parts = [f"{c}*[{word_str(w)}]" for w, c in self.lyndon().items()]
        return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def _lyndon_expansion_cached(w: Word) -> tuple:
    if len(w) == 1:
        return (((w), Fraction(1)),)
    u, v = standard_factorization(w)
    return tuple(_commutator(dict(_lyndon_expansion_cached(u)), dict(_lyndon_expansion_cached(v))).items())


def lyndon_expansion(w: Word) -> dict[Word, Fraction]:
    return dict(_lyndon_expansion_cached(tuple(w)))


def lie_bracket(f: LieElt, g: LieElt) -> LieElt:
    return f.bracket(g)


def ad_power(f: LieElt, z: LieElt, k: int) -> LieElt:
    """(ad f)^k (z)."""
    for _ in range(k):
        z = f.bracket(z)
    return z


# ---------------------------------------------------------------------------
# derivations and the twisted bracket


def derivation_apply(f: LieElt, g: LieElt) -> LieElt:
    """D_f(g) for the derivation with D_f(x) = 0 and D_f(y) = [y, f]."""
    yf = _commutator({(Y,): Fraction(1)}, f.terms)
    out: dict = {}
    for w, c in g.terms.items():
        for p, letter in enumerate(w):
            if letter != Y:
                continue
            left, right = w[:p], w[p + 1:]
            for u, a in yf.items():
                word = left + u + right
                v = out.get(word, 0) + c * a
                if v:
                    out[word] = v
                else:
                    out.pop(word, None)
    return LieElt(out)


def ihara_bracket(f: LieElt, g: LieElt) -> LieElt:
    """<f, g> = [f, g] + D_f(g) - D_g(f)."""
    acc = _commutator(f.terms, g.terms)
    _add_into(acc, derivation_apply(f, g).terms)
    _add_into(acc, derivation_apply(g, f).terms, -1)
    return LieElt(acc)


def depth_component(f: LieElt, d: int) -> LieElt:
    return f.depth_component(d)


def xi(a: int) -> LieElt:
    """(ad x)^a (y)."""
    return ad_power(LieElt.x(), LieElt.y(), a)


# ---------------------------------------------------------------------------
# Lazard elimination


def g_index(a: int, b: int) -> int:
    n = a + b
    return n * (n + 1) // 2 + b


def g_letter(i: int) -> tuple[int, int]:
    n = 0
    while (n + 1) * (n + 2) // 2 <= i:
        n += 1
    b = i - n * (n + 1) // 2
    return n - b, b


def g_weight(i: int) -> int:
    a, b = g_letter(i)
    return a + b + 2


def g_depth(i: int) -> int:
    return g_letter(i)[1] + 1


def g_str(w: Word) -> str:
    return "".join("g({},{})".format(*g_letter(i)) for i in w)


@lru_cache(maxsize=None)
def generator(a: int, b: int) -> LieElt:
    """g(a, b) = (ad x)^a (ad y)^b ([x, y])."""
    xy = LieElt.x().bracket(LieElt.y())
    return ad_power(LieElt.x(), ad_power(LieElt.y(), xy, b), a)


@lru_cache(maxsize=None)
def g_word_expansion(w: Word) -> LieElt:
    """Standard bracketing of a Lyndon word in the g-alphabet, expanded in x, y."""
    if len(w) == 1:
        return generator(*g_letter(w[0]))
    u, v = standard_factorization(w)
    return g_word_expansion(u).bracket(g_word_expansion(v))


@lru_cache(maxsize=None)
def lyndon_g_words(weight: int, depth: int) -> tuple[Word, ...]:
    """Lyndon words in the g-alphabet of the given total weight and depth."""
    letters = [g_index(a, n - a) for n in range(weight - 1) for a in range(n + 1)]
    letters = sorted(i for i in letters if g_weight(i) <= weight and g_depth(i) <= depth)
    out: list[Word] = []

    def rec(cur: list[int], w: int, d: int) -> None:
        if w == weight and d == depth:
            t = tuple(cur)
            if is_lyndon(t):
                out.append(t)
            return
        for i in letters:
            wi, di = g_weight(i), g_depth(i)
            if w + wi <= weight and d + di <= depth:
                if cur and i < cur[0]:
                    continue  # a Lyndon word starts with its smallest letter
                cur.append(i)
                rec(cur, w + wi, d + di)
                cur.pop()

    rec([], 0, 0)
    return tuple(sorted(out, key=lambda t: (len(t), t)))


class EliminatedElt:
    """Coordinates in the Lyndon basis over the g-alphabet."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        self.terms = {tuple(w): Fraction(c) for w, c in (terms or {}).items() if c}

    def expand(self) -> LieElt:
        acc: dict = {}
        for w, c in self.terms.items():
            _add_into(acc, g_word_expansion(w).terms, c)
        return LieElt(acc)

    def min_length(self) -> int:
        return min((len(w) for w in self.terms), default=10 ** 9)

    def length_part(self, k: int) -> "EliminatedElt":
        return EliminatedElt({w: c for w, c in self.terms.items() if len(w) == k})

    def __eq__(self, other) -> bool:
        return isinstance(other, EliminatedElt) and self.terms == other.terms

    def to_json(self) -> dict:
        return {
            "basis": "lyndon-g",
            "terms": [{"word": g_str(w), "c": f"{c.numerator}/{c.denominator}"}
                      for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))],
        }

    def __repr__(self) -> str:
        return " + ".join(f"{c}*[{g_str(w)}]" for w, c in self.terms.items()) or "0"


def in_derived(f: LieElt) -> bool:
    """f has no letters-only part (weight >= 2) and no pure x / pure y words."""
    return all(len(w) >= 2 and 0 < w.count(Y) < len(w) for w in f.terms)


@lru_cache(maxsize=None)
def _g_word_solver(weight: int, depth: int) -> tuple[tuple[Word, ...], IndependentBasis]:
    basis = lyndon_g_words(weight, depth)
    return basis, IndependentBasis([g_word_expansion(u).terms for u in basis])


def eliminate(f: LieElt) -> EliminatedElt:
    if not in_derived(f):
        raise ValueError("element is not in the derived algebra")
    out: dict[Word, Fraction] = {}
    for (w, d) in sorted(f.bigrades()):
        basis, solver = _g_word_solver(w, d)
        sol = solver.coordinates(f.component(w, d).terms)
        if sol is None:
            raise ValueError("element is not a Lie element")
        for u, c in zip(basis, sol):
            if c:
                out[u] = c
    return EliminatedElt(out)


def lcs_filtration_member(f: LieElt, i: int) -> bool:
    """f lies in the i-th term of the l.c.s. filtration of the derived algebra."""
    return eliminate(f).min_length() >= i + 1


# ---------------------------------------------------------------------------
# the graded model: tensor powers of V = AB·Q[A, B]


@lru_cache(maxsize=None)
def tensor_ring(k: int) -> PolyRing:
    names = tuple(n for s in range(1, k + 1) for n in (f"A{s}", f"B{s}"))
    return PolyRing(names, depths=tuple(d for _ in range(k) for d in (0, 1)))


V_RING = PolyRing(("A", "B"), depths=(0, 1))


def tensor_degree(P: SparsePoly) -> int:
    return P.ring.nvars // 2


def slot_shift(P: SparsePoly, target_k: int, offset: int) -> SparsePoly:
    """Move slots 1..i of P to slots offset+1..offset+i of the target tensor power."""
    T = tensor_ring(target_k)
    i = tensor_degree(P)
    images = {}
    for s in range(1, i + 1):
        images[f"A{s}"] = T.gen(f"A{s + offset}")
        images[f"B{s}"] = T.gen(f"B{s + offset}")
    return P.subs(images, T)


def from_v(q: SparsePoly) -> SparsePoly:
    """An element of V as a first tensor power."""
    T = tensor_ring(1)
    return q.subs({"A": T.gen("A1"), "B": T.gen("B1")}, T)


def tensor(P: SparsePoly, Q: SparsePoly) -> SparsePoly:
    i, j = tensor_degree(P), tensor_degree(Q)
    return slot_shift(P, i + j, 0) * slot_shift(Q, i + j, i)


def tensor_commutator(P: SparsePoly, Q: SparsePoly) -> SparsePoly:
    return tensor(P, Q) - tensor(Q, P)


def star_q(P: SparsePoly, q_slot: SparsePoly, slot: int, j: int) -> SparsePoly:
    """The α-th summand of P ⊛ Q with Q given as an element of the j-th tensor power.

    Slot ``slot`` of Q is replaced by the i slots of P, its variables by the
    sums over those slots, and P is multiplied in.
    """
    i = tensor_degree(P)
    k = i + j - 1
    T = tensor_ring(k)
    images = {}
    for s in range(1, j + 1):
        if s < slot:
            images[f"A{s}"], images[f"B{s}"] = T.gen(f"A{s}"), T.gen(f"B{s}")
        elif s == slot:
            images[f"A{s}"] = sum((T.gen(f"A{slot + t}") for t in range(i)), T.zero())
            images[f"B{s}"] = sum((T.gen(f"B{slot + t}") for t in range(i)), T.zero())
        else:
            images[f"A{s}"], images[f"B{s}"] = T.gen(f"A{s + i - 1}"), T.gen(f"B{s + i - 1}")
    return slot_shift(P, k, slot - 1) * q_slot.subs(images, T)


def star_product(P: SparsePoly, Q: SparsePoly) -> SparsePoly:
    """P ⊛ Q = Σ_α q1 ⊗ ... ⊗ (P ⊛ q_α) ⊗ ... ⊗ qj, extended linearly."""
    i, j = tensor_degree(P), tensor_degree(Q)
    out = tensor_ring(i + j - 1).zero()
    for alpha in range(1, j + 1):
        out = out + star_q(P, Q, alpha, j)
    return out


def star_bracket(P: SparsePoly, Q: SparsePoly) -> SparsePoly:
    """<P, Q> = P ⊛ Q - Q ⊛ P."""
    return star_product(P, Q) - star_product(Q, P)


@lru_cache(maxsize=None)
def g_word_class(w: Word) -> SparsePoly:
    """Standard bracketing of a Lyndon g-word in the tensor algebra, g(a,b) -> A^(a+1) B^(b+1)."""
    if len(w) == 1:
        a, b = g_letter(w[0])
        T = tensor_ring(1)
        return T.gen("A1") ** (a + 1) * T.gen("B1") ** (b + 1)
    u, v = standard_factorization(w)
    return tensor_commutator(g_word_class(u), g_word_class(v))


def lcs_class(f: LieElt, i: int) -> SparsePoly:
    """Image of f in the i-th graded piece, as an element of the (i+1)-th tensor power."""
    el = eliminate(f)
    if el.min_length() < i + 1:
        raise ValueError(f"element is not in filtration level {i}")
    out = tensor_ring(i + 1).zero()
    for w, c in el.length_part(i + 1).terms.items():
        out = out + g_word_class(w) * c
    return out


def eliminated_class(el: EliminatedElt, k: int) -> SparsePoly:
    out = tensor_ring(k).zero()
    for w, c in el.length_part(k).terms.items():
        out = out + g_word_class(w) * c
    return out


def derived_basis(weight: int, depth: int) -> list[LieElt]:
    """Expanded Lyndon g-words spanning the (weight, depth) part of the derived algebra."""
    return [g_word_expansion(w) for w in lyndon_g_words(weight, depth)]


def two_slot_to_m(P: SparsePoly) -> SparsePoly:
    """The second tensor power identified with polynomials in A, B, A', B'."""
    from .exactpoly import R4
    return P.subs({"A1": R4.gen("A"), "B1": R4.gen("B"), "A2": R4.gen("Ap"), "B2": R4.gen("Bp")}, R4)


def v_to_section(q: SparsePoly) -> LieElt:
    """s0: A^(a+1) B^(b+1) -> g(a, b), extended linearly on AB·Q[A, B]."""
    acc: dict = {}
    for (ea, eb), c in q.terms():
        if ea < 1 or eb < 1:
            raise ValueError("polynomial is not divisible by AB")
        _add_into(acc, generator(ea - 1, eb - 1).terms, c)
    return LieElt(acc)


def lie_span(elts: Iterable[LieElt]) -> KeyedSpan:
    return KeyedSpan([e.terms for e in elts])
