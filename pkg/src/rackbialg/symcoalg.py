"""Symmetric algebra/coalgebra S(V) and its truncations S(V)_(k).

A monomial x_{i1} • ... • x_{ir} is the sorted tuple ``(i1, ..., ir)``; the
empty tuple is the unit.  Coefficients may be scalars or hbar-polynomials.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb

from .errors import CapExceeded, DimensionMismatch
from .foundation import ExactMatrix, add_into, add_term, clean, coeff_to_json, parse_scalar

ONE = ()


def monomials(dim: int, k: int):
    """Basis of S(V)_(k) in degree-lexicographic order."""
    out = []
    for r in range(k + 1):
        out.extend(combinations_with_replacement(range(dim), r))
    return out


def merge(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


@lru_cache(maxsize=None)
def monomial_coproduct(m: tuple):
    """Δ of a monomial: every sub-multiset split, weighted by binomial counts."""
    counts = sorted(Counter(m).items())
    out = {}
    for picks in product(*[range(c + 1) for _, c in counts]):
        left, right, w = [], [], 1
        for (i, c), b in zip(counts, picks):
            left += [i] * b
            right += [i] * (c - b)
            w *= comb(c, b)
        out[(tuple(left), tuple(right))] = Fraction(w)
    return out


class SymElt:
    """Element of S(V) (``cap=None``) or of S(V)_(cap)."""

    __slots__ = ("dim", "terms", "cap")

    def __init__(self, dim: int, terms=None, cap: int | None = None):
        self.dim = dim
        self.cap = cap
        ts = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if any(not 0 <= i < dim for i in m):
                raise DimensionMismatch(f"monomial {m} outside dimension {dim}")
            if cap is not None and len(m) > cap:
                raise CapExceeded(f"monomial {m} above degree cap {cap}")
            add_term(ts, tuple(sorted(m)), c)
        self.terms = ts

    @classmethod
    def one(cls, dim, cap=None):
        return cls(dim, {ONE: 1}, cap)

    @classmethod
    def gen(cls, dim, i, cap=None):
        return cls(dim, {(i,): 1}, cap)

    @classmethod
    def from_vector(cls, vec, cap=None):
        return cls(len(vec), {(i,): c for i, c in enumerate(vec) if c}, cap)

    def _new(self, terms, cap="same"):
        out = SymElt.__new__(SymElt)
        out.dim, out.cap = self.dim, self.cap if cap == "same" else cap
        out.terms = terms
        return out

    def _check(self, other):
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim}")

    def __add__(self, other):
        self._check(other)
        return self._new(add_into(dict(self.terms), other.terms), _min_cap(self.cap, other.cap))

    def __sub__(self, other):
        self._check(other)
        return self._new(add_into(dict(self.terms), other.terms, -1), _min_cap(self.cap, other.cap))

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymElt):
            return sym_product(self, other)
        return self._new(clean({m: c * other for m, c in self.terms.items()}))

    def __rmul__(self, other):
        return self._new(clean({m: other * c for m, c in self.terms.items()}))

    def __eq__(self, other):
        if not isinstance(other, SymElt):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "SymElt(0)"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            name = "•".join(f"e{i + 1}" for i in m) or "1"
            parts.append(f"({self.terms[m]})*{name}")
        return "SymElt(" + " + ".join(parts) + ")"

    @property
    def degree(self):
        return max((len(m) for m in self.terms), default=-1)

    def homogeneous(self, r: int) -> "SymElt":
        return self._new({m: c for m, c in self.terms.items() if len(m) == r})

    def counit(self):
        return self.terms.get(ONE, 0)

    def to_json(self):
        return [[coeff_to_json(c), list(m)] for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))]

    @classmethod
    def from_json(cls, dim, data, cap=None):
        return cls(dim, {tuple(int(i) for i in m): parse_scalar(c) for c, m in data}, cap)


def _min_cap(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def sym_product(a: SymElt, b: SymElt) -> SymElt:
    """Symmetric product; monomials above the degree cap are dropped."""
    a._check(b)
    cap = _min_cap(a.cap, b.cap)
    out = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            if cap is not None and len(m1) + len(m2) > cap:
                continue
            add_term(out, merge(m1, m2), c1 * c2)
    return a._new(out, cap)


def coproduct(a: SymElt) -> dict:
    """Δ(a) as a dict ``(m1, m2) -> coeff`` in S(V) ⊗ S(V)."""
    out = {}
    for m, c in a.terms.items():
        for pair, w in monomial_coproduct(m).items():
            add_term(out, pair, c * w)
    return out


def counit(a: SymElt):
    return a.counit()


def degree_projection(a: SymElt, r: int) -> SymElt:
    return a.homogeneous(r)


def tensor_map(f, g, t: dict) -> dict:
    """(f ⊗ g)(t) for maps monomial -> dict; ``t`` keyed by pairs."""
    out = {}
    for (m1, m2), c in t.items():
        for k1, a in f(m1).items():
            for k2, b in g(m2).items():
                add_term(out, (k1, k2), c * a * b)
    return out


def tensor_product(s: dict, t: dict) -> dict:
    """Componentwise product in S(V) ⊗ S(V)."""
    out = {}
    for (a1, a2), c in s.items():
        for (b1, b2), d in t.items():
            add_term(out, (merge(a1, b1), merge(a2, b2)), c * d)
    return out


def sym_map(f, a: SymElt, cap="same") -> SymElt:
    """S(f)(x1•...•xk) = f(x1)•...•f(xk) for a linear map ``f``.

    ``f`` is an :class:`ExactMatrix` (target dim x source dim) or anything
    with a ``matrix`` attribute (e.g. a Leibniz morphism).
    """
    mat = getattr(f, "matrix", f)
    if not isinstance(mat, ExactMatrix):
        raise TypeError("sym_map needs a matrix or a morphism")
    if mat.cols != a.dim:
        raise DimensionMismatch(f"map from dim {mat.cols} applied to S of dim {a.dim}")
    images = {}
    for (r, c), v in mat.entries.items():
        images.setdefault(c, {})[(r,)] = v
    out = {}
    for m, coeff in a.terms.items():
        acc = {ONE: Fraction(1)}
        for i in m:
            step = {}
            for m1, c1 in acc.items():
                for m2, c2 in images.get(i, {}).items():
                    add_term(step, merge(m1, m2), c1 * c2)
            acc = step
        add_into(out, acc, coeff)
    return SymElt(mat.rows, out, a.cap if cap == "same" else cap)
