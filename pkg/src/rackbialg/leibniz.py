"""Leibniz and Lie algebras given by structure constants.

Conventions: left Leibniz identity ``[x,[y,z]] = [[x,y],z] + [y,[x,z]]``,
structure constants ``c[(i, j, k)] = e^k([e_i, e_j])`` with 0-based indices
internally and 1-based indices in JSON and in user-facing reports.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (IdealOutOfRange, IdentityViolation, IndexOutOfRange,
                     NotAnIdeal, UnknownName)
from .foundation import ExactMatrix, _kernel_from_rref, _rref, format_scalar, parse_scalar


def _dense(vec, n):
    out = [Fraction(0)] * n
    for k, v in vec.items():
        out[k] += v
    return tuple(out)


class LeibnizAlgebra:
    """Finite-dimensional (left) Leibniz algebra over the rationals."""

    def __init__(self, dim: int, c, names=None, check: bool = True):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        self.names = list(names) if names is not None else [f"e{i + 1}" for i in range(dim)]
        if len(self.names) != dim:
            raise ValueError("need one name per basis vector")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j, k), v in dict(c).items():
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise IndexOutOfRange(f"index {idx + 1} outside 1..{dim}")
            v = Fraction(v)
            if v:
                table.setdefault((i, j), {})[k] = table.get((i, j), {}).get(k, 0) + v
        self.table = {ij: {k: v for k, v in row.items() if v} for ij, row in table.items()}
        self.table = {ij: row for ij, row in self.table.items() if row}
        self._ad_cache = {}
        if check:
            bad = leibniz_violations(self)
            if bad:
                raise IdentityViolation(
                    f"Leibniz identity fails on {len(bad)} triple(s), first {bad[0][:3]}", bad)

    # structure constants -------------------------------------------------
    @property
    def c(self):
        return {(i, j, k): v for (i, j), row in self.table.items() for k, v in row.items()}

    def structure_constant(self, i, j, k) -> Fraction:
        return self.table.get((i, j), {}).get(k, Fraction(0))

    def bracket_basis(self, i, j) -> dict:
        return self.table.get((i, j), {})

    def bracket(self, x, y):
        """Bracket of two coordinate vectors (dense sequences)."""
        out = [Fraction(0)] * self.dim
        for (i, j), row in self.table.items():
            a = x[i] * y[j]
            if a:
                for k, v in row.items():
                    out[k] += a * v
        return tuple(out)

    def basis_vector(self, i):
        return tuple(Fraction(int(j == i)) for j in range(self.dim))

    def zero(self):
        return (Fraction(0),) * self.dim

    def ad_matrix(self, x) -> ExactMatrix:
        """Matrix of y -> [x, y]."""
        key = tuple(x)
        if key not in self._ad_cache:
            cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
            self._ad_cache[key] = ExactMatrix.from_columns(cols, self.dim)
        return self._ad_cache[key]

    def is_lie(self) -> bool:
        for i, j in product(range(self.dim), repeat=2):
            a, b = self.bracket_basis(i, j), self.bracket_basis(j, i)
            if any(a.get(k, 0) + b.get(k, 0) for k in set(a) | set(b)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LeibnizAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.table == other.table

    def __hash__(self):
        return hash((self.dim, tuple(sorted((ij, tuple(sorted(r.items()))) for ij, r in self.table.items()))))

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, names={self.names})"

    # serialisation ---------------------------------------------------------
    def to_json(self) -> dict:
        c = [[i + 1, j + 1, k + 1, format_scalar(v)]
             for (i, j, k), v in sorted(self.c.items())]
        return {"dim": self.dim, "names": list(self.names), "c": c}

    @classmethod
    def from_json(cls, data: dict, check: bool = True):
        dim = int(data["dim"])
        c = {}
        for i, j, k, v in data.get("c", []):
            key = (int(i) - 1, int(j) - 1, int(k) - 1)
            c[key] = c.get(key, 0) + parse_scalar(v)
        return cls(dim, c, data.get("names"), check=check)


def leibniz_violations(h: LeibnizAlgebra):
    """All basis triples (1-based) where the left Leibniz identity fails."""
    n = h.dim
    e = [h.basis_vector(i) for i in range(n)]
    br = {(i, j): _dense(h.bracket_basis(i, j), n) for i in range(n) for j in range(n)}
    bad = []
    for i, j, k in product(range(n), repeat=3):
        lhs = h.bracket(e[i], br[j, k])
        r1 = h.bracket(br[i, j], e[k])
        r2 = h.bracket(e[j], br[i, k])
        rhs = tuple(a + b for a, b in zip(r1, r2))
        if lhs != rhs:
            bad.append((i + 1, j + 1, k + 1, lhs, rhs))
    return bad


def validate(dim: int, c, names=None) -> LeibnizAlgebra:
    """Build a Leibniz algebra from 0-based structure constants, or raise."""
    return LeibnizAlgebra(dim, c, names)


class LieAlgebra(LeibnizAlgebra):
    """Leibniz algebra that is also antisymmetric (hence Jacobi holds)."""

    def __init__(self, dim, c, names=None, check=True):
        super().__init__(dim, c, names, check=check)
        if check:
            bad = []
            for i, j in product(range(dim), repeat=2):
                s = _dense(self.bracket_basis(i, j), dim)
                t = _dense(self.bracket_basis(j, i), dim)
                if any(a + b for a, b in zip(s, t)):
                    bad.append((i + 1, j + 1, 0, s, tuple(-x for x in t)))
            if bad:
                raise IdentityViolation("bracket is not antisymmetric", bad)
            bad = jacobi_violations(self)
            if bad:
                raise IdentityViolation("Jacobi identity fails", bad)

    @classmethod
    def from_leibniz(cls, h: LeibnizAlgebra):
        return cls(h.dim, h.c, h.names)


def jacobi_violations(g: LeibnizAlgebra):
    n = g.dim
    e = [g.basis_vector(i) for i in range(n)]
    bad = []
    for i, j, k in product(range(n), repeat=3):
        a = g.bracket(e[i], g.bracket(e[j], e[k]))
        b = g.bracket(e[j], g.bracket(e[k], e[i]))
        c = g.bracket(e[k], g.bracket(e[i], e[j]))
        s = tuple(x + y + z for x, y, z in zip(a, b, c))
        if any(s):
            bad.append((i + 1, j + 1, k + 1, s, g.zero()))
    return bad


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Subspace of K^n, stored by the reduced echelon basis of its span."""

    def __init__(self, ambient_dim: int, vectors=()):
        self.ambient_dim = ambient_dim
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError("vector of wrong length")
            rows.append({i: Fraction(x) for i, x in enumerate(v) if x})
        self._piv = _rref(rows)
        self.basis = [_dense(row, ambient_dim) for row in self._piv.values()]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self):
        return list(self._piv)

    def reduce(self, v):
        """Remainder of ``v`` modulo the subspace (zero in the pivot columns)."""
        v = list(Fraction(x) for x in v)
        for p, row in self._piv.items():
            f = v[p]
            if f:
                for i, x in row.items():
                    v[i] -= f * x
        return tuple(v)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __repr__(self):
        return f"Subspace(dim={self.dim} in K^{self.ambient_dim})"

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls(n, [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)])


def squares_ideal(h: LeibnizAlgebra) -> Subspace:
    """Span of all squares [x, x], via polarisation on basis pairs."""
    n = h.dim
    gens = []
    for i in range(n):
        gens.append(_dense(h.bracket_basis(i, i), n))
        for j in range(i + 1, n):
            a = _dense(h.bracket_basis(i, j), n)
            b = _dense(h.bracket_basis(j, i), n)
            gens.append(tuple(x + y for x, y in zip(a, b)))
    return Subspace(n, gens)


def left_center(h: LeibnizAlgebra) -> Subspace:
    """All x with [x, y] = 0 for every y."""
    n = h.dim
    # unknown x = sum_i x_i e_i ; equation (j, k): sum_i x_i c^k_{ij} = 0
    rows = []
    for j in range(n):
        for k in range(n):
            row = {i: h.structure_constant(i, j, k) for i in range(n)}
            rows.append({i: v for i, v in row.items() if v})
    return Subspace(n, _kernel_from_rref(_rref(rows), n))


def is_two_sided_ideal(h: LeibnizAlgebra, z: Subspace) -> bool:
    for v in z.basis:
        for j in range(h.dim):
            e = h.basis_vector(j)
            if not z.contains(h.bracket(e, v)) or not z.contains(h.bracket(v, e)):
                return False
    return True


@dataclass(frozen=True)
class Quotient:
    """h/z with its projection ``p`` (matrix dim g x dim h) and a section.

    The quotient basis is the image of the standard basis vectors ``e_j``
    whose index is not a pivot of ``z``; ``lift[a]`` is that index.
    """
    source: LeibnizAlgebra
    ideal: Subspace
    lie: LieAlgebra
    projection: ExactMatrix
    lift: tuple

    def project(self, x):
        r = self.ideal.reduce(x)
        return tuple(r[j] for j in self.lift)

    def section(self, xi):
        out = [Fraction(0)] * self.source.dim
        for a, j in enumerate(self.lift):
            out[j] = Fraction(xi[a])
        return tuple(out)


def quotient(h: LeibnizAlgebra, z: Subspace) -> Quotient:
    if z.ambient_dim != h.dim:
        raise ValueError("subspace lives in the wrong space")
    if not squares_ideal(h) <= z or not z <= left_center(h):
        raise IdealOutOfRange("need Q(h) ⊆ z ⊆ z(h)")
    if not is_two_sided_ideal(h, z):
        raise NotAnIdeal("z is not a two-sided ideal")
    pivots = set(z.pivots)
    lift = tuple(j for j in range(h.dim) if j not in pivots)
    m = len(lift)
    pcols = []
    for i in range(h.dim):
        r = z.reduce(h.basis_vector(i))
        pcols.append(tuple(r[j] for j in lift))
    p = ExactMatrix.from_columns(pcols, m)
    c = {}
    for a, b in product(range(m), repeat=2):
        r = z.reduce(_dense(h.bracket_basis(lift[a], lift[b]), h.dim))
        for t, j in enumerate(lift):
            if r[j]:
                c[(a, b, t)] = r[j]
    g = LieAlgebra(m, c, [h.names[j] for j in lift])
    return Quotient(h, z, g, p, lift)


def quotient_lie(h: LeibnizAlgebra, z: Subspace):
    q = quotient(h, z)
    return q.lie, q.projection


# ---------------------------------------------------------------------------
# morphisms

class LeibnizMorphism:
    """Linear map between Leibniz algebras that preserves brackets."""

    def __init__(self, source: LeibnizAlgebra, target: LeibnizAlgebra, matrix: ExactMatrix,
                 name: str = ""):
        if (matrix.rows, matrix.cols) != (target.dim, source.dim):
            raise ValueError("matrix shape does not match source/target")
        self.source, self.target, self.matrix, self.name = source, target, matrix, name
        bad = []
        for i, j in product(range(source.dim), repeat=2):
            lhs = matrix.apply(_dense(source.bracket_basis(i, j), source.dim))
            rhs = target.bracket(self(source.basis_vector(i)), self(source.basis_vector(j)))
            if lhs != rhs:
                bad.append((i + 1, j + 1, 0, lhs, rhs))
        if bad:
            raise IdentityViolation("map does not preserve brackets", bad)

    def __call__(self, x):
        return self.matrix.apply(tuple(x))

    def __repr__(self):
        return f"LeibnizMorphism({self.name or '?'}: dim {self.source.dim} -> {self.target.dim})"


def image_subspace(f: LeibnizMorphism, s: Subspace) -> Subspace:
    return Subspace(f.target.dim, [f(v) for v in s.basis])


def induced_lie_map(f: LeibnizMorphism, qs: Quotient, qt: Quotient) -> ExactMatrix:
    """Matrix of the induced map h/z -> h'/z' (requires f(z) ⊆ z')."""
    if not image_subspace(f, qs.ideal) <= qt.ideal:
        raise NotAnIdeal("morphism does not map the ideal into the target ideal")
    cols = [qt.project(f(qs.section(qs.lie.basis_vector(a)))) for a in range(qs.lie.dim)]
    return ExactMatrix.from_columns(cols, qt.lie.dim)


# ---------------------------------------------------------------------------
# catalog

def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, [f"e{i + 1}" for i in range(n)])


def hemi_module(g: LieAlgebra, action, names=None) -> LeibnizAlgebra:
    """Hemi-semidirect product g ⊕ V: [(xi, v), (eta, w)] = ([xi, eta], xi.w).

    ``action[a]`` is the matrix (rows of V-coordinates) of the a-th basis
    vector of g acting on V.  Basis order: g first, then V.
    """
    m = g.dim
    mats = [ExactMatrix.from_rows(a) if not isinstance(a, ExactMatrix) else a for a in action]
    d = mats[0].rows
    c = {}
    for (i, j), row in g.table.items():
        for k, v in row.items():
            c[(i, j, k)] = v
    for a, mat in enumerate(mats):
        for (r, s), v in mat.entries.items():
            c[(a, m + s, m + r)] = v
    names = names or list(g.names) + [f"v{i + 1}" for i in range(d)]
    return LeibnizAlgebra(m + d, c, names)


def hemi(h: LeibnizAlgebra, z: Subspace | None = None) -> LeibnizAlgebra:
    """Hemi-semidirect product h ⊕ g, g = h/z acting on h by p(x).y = [x, y].

    Bracket ``[(x, xi), (y, eta)] = (xi.y, [xi, eta])``; basis order h then g.
    """
    q = quotient(h, z if z is not None else squares_ideal(h))
    n, m = h.dim, q.lie.dim
    c = {}
    for a in range(m):
        j0 = q.lift[a]
        for s in range(n):
            for k, v in h.bracket_basis(j0, s).items():
                c[(n + a, s, k)] = c.get((n + a, s, k), 0) + v
    for (a, b), row in q.lie.table.items():
        for t, v in row.items():
            c[(n + a, n + b, n + t)] = v
    names = list(h.names) + [f"p({nm})" for nm in q.lie.names]
    return LeibnizAlgebra(n + m, c, names)


def _sq2():
    return LeibnizAlgebra(2, {(0, 0, 1): 1}, ["e1", "e2"])


def _heisenberg():
    return LieAlgebra(3, {(0, 1, 2): 1, (1, 0, 2): -1}, ["X", "Y", "Z"])


def _sl2():
    # basis H, E, F
    return LieAlgebra(3, {(0, 1, 1): 2, (1, 0, 1): -2,
                          (0, 2, 2): -2, (2, 0, 2): 2,
                          (1, 2, 0): 1, (2, 1, 0): -1}, ["H", "E", "F"])


def _hemi1():
    return hemi_module(abelian(1), [[[1]]], ["xi", "x"])


def _jordan3():
    return hemi_module(abelian(1), [[[1, 1], [0, 1]]], ["xi", "x1", "x2"])


CATALOG = {
    "sq2": _sq2,
    "heisenberg": _heisenberg,
    "sl2": _sl2,
    "hemi1": _hemi1,
    "jordan3": _jordan3,
    "hemi_sq2": lambda: hemi(_sq2()),
}


def catalog_names(max_abelian: int = 4):
    return [f"abelian{n}" for n in range(1, max_abelian + 1)] + list(CATALOG)


def catalog(name: str) -> LeibnizAlgebra:
    m = re.fullmatch(r"abelian(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return abelian(int(m.group(1)))
    if name not in CATALOG:
        raise UnknownName(name)
    return CATALOG[name]()


def catalog_morphisms():
    """A few bracket-preserving maps between catalog algebras."""
    sq2, heis, sl2 = catalog("sq2"), catalog("heisenberg"), catalog("sl2")
    out = [
        LeibnizMorphism(catalog("abelian1"), sq2, ExactMatrix.from_rows([[0], [1]]), "abelian1->sq2"),
        LeibnizMorphism(sq2, sq2, ExactMatrix.from_rows([[2, 0], [0, 4]]), "sq2 scaling"),
        LeibnizMorphism(sq2, catalog("abelian1"), ExactMatrix.from_rows([[1, 0]]), "sq2->abelian1"),
        LeibnizMorphism(heis, heis, ExactMatrix.from_rows([[2, 0, 0], [1, 3, 0], [0, 0, 6]]), "heisenberg shear"),
        LeibnizMorphism(sl2, sl2, ExactMatrix.from_rows([[-1, 0, 0], [0, 0, 1], [0, 1, 0]]), "sl2 flip"),
        LeibnizMorphism(catalog("hemi1"), catalog("abelian1"), ExactMatrix.from_rows([[3, 0]]), "hemi1->abelian1"),
    ]
    hs = catalog("hemi_sq2")
    out.append(LeibnizMorphism(sq2, hs, ExactMatrix.from_rows([[1, 0], [0, 1], [1, 0]]), "sq2->hemi_sq2"))
    return out
