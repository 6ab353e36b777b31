"""The rack star product on polynomial functions on h*.

Functions are polynomials in the coordinates alpha_1..alpha_n of h*,
stored as ``exponent tuple -> coeff``.  Coefficients of star products are
hbar-polynomials.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .errors import DimensionMismatch, IndexOutOfRange
from .foundation import CheckResult, ExactMatrix, HPoly, Report, add_into, add_term, clean, coeff_to_json, parse_scalar
from .leibniz import LeibnizAlgebra
from .rackcore import RackBialgebra, sym_coalgebra, symmetrised_ad_product, h_rep
from .symcoalg import SymElt, monomials


class PolyFun:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        ts = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != dim or any(x < 0 for x in e):
                raise DimensionMismatch(f"exponent {e} does not fit dimension {dim}")
            add_term(ts, e, c)
        self.terms = ts

    @classmethod
    def const(cls, dim, c=1):
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def coord(cls, dim, i):
        e = [0] * dim
        e[i] = 1
        return cls(dim, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs):
        """x-hat for x with the given coordinates (coefficients may be HPoly)."""
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs) if c})

    def _new(self, terms):
        out = PolyFun.__new__(PolyFun)
        out.dim = self.dim
        out.terms = terms
        return out

    def __add__(self, other):
        return self._new(add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        return self._new(add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PolyFun):
            out = {}
            for e1, a in self.terms.items():
                for e2, b in other.terms.items():
                    add_term(out, tuple(x + y for x, y in zip(e1, e2)), a * b)
            return self._new(out)
        return self._new(clean({e: c * other for e, c in self.terms.items()}))

    def __rmul__(self, other):
        return self._new(clean({e: other * c for e, c in self.terms.items()}))

    def __eq__(self, other):
        if not isinstance(other, PolyFun):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "PolyFun(0)"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"a{i + 1}^{k}" if k > 1 else f"a{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"({c})" + ("*" + mono if mono else ""))
        return "PolyFun(" + " + ".join(parts) + ")"

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous(self, d):
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate_degree(self, d):
        return self._new({e: c for e, c in self.terms.items() if sum(e) <= d})

    def at_zero(self):
        return self.terms.get((0,) * self.dim, 0)

    def derivative(self, j):
        out = {}
        for e, c in self.terms.items():
            if e[j]:
                e2 = e[:j] + (e[j] - 1,) + e[j + 1:]
                add_term(out, e2, c * e[j])
        return self._new(out)

    def hbar_coefficient(self, k):
        """Coefficient of hbar^k as a scalar polynomial."""
        out = {}
        for e, c in self.terms.items():
            v = c.coefficient(k) if isinstance(c, HPoly) else (c if k == 0 else 0)
            add_term(out, e, v)
        return self._new(out)

    def truncate_hbar(self, order):
        out = {}
        for e, c in self.terms.items():
            add_term(out, e, c.truncate(order) if isinstance(c, HPoly) else c)
        return self._new(out)

    def __call__(self, alpha):
        s = 0
        for e, c in self.terms.items():
            t = c
            for a, k in zip(alpha, e):
                t = t * Fraction(a) ** k
            s = s + t
        return s

    def to_json(self):
        return {"terms": [[coeff_to_json(c), list(e)] for e, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, dim, data, pointer=""):
        from .errors import ParseError
        terms = {}
        if not isinstance(data, dict) or "terms" not in data:
            raise ParseError("polynomial needs a 'terms' list", pointer)
        for t, item in enumerate(data["terms"]):
            p = f"{pointer}/terms/{t}"
            try:
                c, e = item[0], item[1]
                c = parse_scalar(c)
                if len(item) > 2:
                    c = c * HPoly([parse_scalar(x) for x in item[2]])
                e = tuple(int(x) for x in e)
            except Exception as exc:
                raise ParseError(f"bad term: {exc}", p) from None
            if len(e) != dim or any(x < 0 for x in e):
                raise ParseError(f"exponent vector must have {dim} nonnegative entries", p)
            add_term(terms, e, c)
        return cls(dim, terms)


def psi(a: SymElt) -> PolyFun:
    """Ψ(x_{i1} • ... • x_{ik}) = alpha_{i1} ... alpha_{ik}."""
    out = {}
    for m, c in a.terms.items():
        e = [0] * a.dim
        for i in m:
            e[i] += 1
        add_term(out, tuple(e), c)
    return PolyFun(a.dim, out)


def psi_inverse(f: PolyFun, cap=None) -> SymElt:
    out = {}
    for e, c in f.terms.items():
        m = tuple(i for i, k in enumerate(e) for _ in range(k))
        add_term(out, m, c)
    return SymElt(f.dim, out, cap)


def adtilde(h: LeibnizAlgebra, i: int, f: PolyFun) -> PolyFun:
    """(ad~_i f)(alpha) = Σ_{j,k} alpha_k c^k_{ij} ∂f/∂alpha_j."""
    if not 0 <= i < h.dim:
        raise IndexOutOfRange(f"index {i + 1} outside 1..{h.dim}")
    if f.dim != h.dim:
        raise DimensionMismatch("function and algebra dimensions differ")
    out = PolyFun(h.dim)
    for j in range(h.dim):
        row = h.bracket_basis(i, j)
        if not row:
            continue
        d = f.derivative(j)
        if not d:
            continue
        lin = PolyFun(h.dim, {tuple(int(t == k) for t in range(h.dim)): v for k, v in row.items()})
        out = out + lin * d
    return out


def _adtilde_word(h, word, g, cache):
    key = (word, id(g))
    hit = cache.get(key)
    if hit is None:
        hit = g
        for i in reversed(word):
            hit = adtilde(h, i, hit)
            if not hit:
                break
        cache[key] = hit
    return hit


def star(h: LeibnizAlgebra, f: PolyFun, g: PolyFun, order: int | None = None) -> PolyFun:
    """f ▷_ħ g with hbar-polynomial coefficients, truncated at hbar^order if given."""
    out = {}
    cache = {}
    for e, c in f.terms.items():
        r = sum(e)
        if order is not None and r > order:
            continue
        # summing ∂^r f(0) over ordered index tuples gives c·Πe_i! per distinct ordering
        weight = Fraction(1)
        for k in e:
            weight *= factorial(k)
        letters = tuple(i for i, k in enumerate(e) for _ in range(k))
        inner = {}
        for word in set(permutations(letters)):
            add_into(inner, _adtilde_word(h, word, g, cache).terms)
        hr = HPoly.hbar(r, order) * (c * weight / factorial(r))
        for e2, v in inner.items():
            add_term(out, e2, hr * v)
    return PolyFun(h.dim, out)


def poisson(h: LeibnizAlgebra, f: PolyFun, g: PolyFun) -> PolyFun:
    """{f, g}(alpha) = -Σ c^k_{ij} ∂_i f(0) ∂_j g(alpha) alpha_k."""
    out = PolyFun(h.dim)
    for i in range(h.dim):
        d = f.derivative(i).at_zero()
        if d:
            out = out - adtilde(h, i, g) * d
    return out


# ---------------------------------------------------------------------------
# formal Lie rack and exponential compatibility

class HSeriesVec:
    """Σ_m hbar^m v_m with v_m in h, kept up to hbar^order."""

    def __init__(self, dim, coeffs, order, exact):
        self.dim = dim
        self.coeffs = {m: v for m, v in coeffs.items() if any(v)}
        self.order = order
        self.exact = exact

    def coordinate(self, k) -> HPoly:
        return HPoly([self.coeffs.get(m, (0,) * self.dim)[k] for m in range(self.order + 1)],
                     None if self.exact else self.order)

    def coordinates(self):
        return [self.coordinate(k) for k in range(self.dim)]

    def __eq__(self, other):
        return isinstance(other, HSeriesVec) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"HSeriesVec({self.coeffs}, order={self.order}, exact={self.exact})"


def formal_rack(h: LeibnizAlgebra, x, y, order: int) -> HSeriesVec:
    """x ▶_ħ y = e^{ħ ad_x}(y) up to hbar^order; exact if ad_x^(order+1) y = 0."""
    x = tuple(Fraction(v) for v in x)
    cur = tuple(Fraction(v) for v in y)
    coeffs = {}
    for m in range(order + 1):
        coeffs[m] = tuple(v / factorial(m) for v in cur)
        cur = h.bracket(x, cur)
    exact = not any(cur)
    return HSeriesVec(h.dim, coeffs, order, exact)


def exp_linear(coeffs, degree: int) -> PolyFun:
    """Taylor truncation of e^{x-hat} at total degree ``degree``."""
    n = len(coeffs)
    lin = PolyFun.linear(coeffs)
    out = PolyFun.const(n, Fraction(1))
    power = PolyFun.const(n, Fraction(1))
    for r in range(1, degree + 1):
        power = (power * lin).truncate_degree(degree)
        out = out + power * Fraction(1, factorial(r))
    return out


def exp_compat_check(h: LeibnizAlgebra, x, y, order: int, degree: int) -> Report:
    """e^{x̂} ▷_ħ e^{ŷ} = e^{(x ▶_ħ y)^} on alpha-degree ≤ D and hbar-order ≤ min(M, D)."""
    valid = min(order, degree)
    lhs = star(h, exp_linear(list(x), degree), exp_linear(list(y), degree), valid)
    xy = formal_rack(h, x, y, order)
    rhs = exp_linear(xy.coordinates(), degree)
    rep = Report(f"exponential compatibility x={list(map(str, x))} y={list(map(str, y))}")
    res = rep.add(CheckResult(f"coefficients up to degree {degree}, hbar^{valid}"))
    keys = sorted(set(lhs.terms) | set(rhs.terms))
    for e in keys:
        if sum(e) > degree:
            continue
        a, b = lhs.terms.get(e, 0), rhs.terms.get(e, 0)
        a = a.truncate(valid) if isinstance(a, HPoly) else HPoly([a], valid)
        b = b.truncate(valid) if isinstance(b, HPoly) else HPoly([b], valid)
        res.record(a == b, (e, str(a), str(b)))
    rep.exact_rack = xy.exact
    return rep


# ---------------------------------------------------------------------------
# the deformed product on S(h)

def star_on_sym(h: LeibnizAlgebra, a: SymElt, b: SymElt) -> SymElt:
    """μ_ħ(a ⊗ b) = Σ_r ħ^r π_r(a) ▷ b with ▷ the UAR product."""
    rep = h_rep(h)
    out = {}
    for m, c in a.terms.items():
        r = symmetrised_ad_product(h, m, b, rep)
        add_into(out, r.terms, HPoly.hbar(len(m)) * c)
    return SymElt(h.dim, out, b.cap)


def deformed_rack(h: LeibnizAlgebra, k: int) -> RackBialgebra:
    """S(h)_(k) over K[ħ] with the product μ_ħ."""
    C = sym_coalgebra(h.dim, k)
    idx = {m: i for i, m in enumerate(C.labels)}
    mu = {}
    for i, m in enumerate(C.labels):
        for j, m2 in enumerate(C.labels):
            r = star_on_sym(h, SymElt(h.dim, {m: 1}, k), SymElt(h.dim, {m2: 1}, k))
            if r:
                mu[(i, j)] = {idx[t]: c for t, c in r.terms.items()}
    return RackBialgebra(C, mu, f"deformed product on S_({k})")


def intertwining_check(h: LeibnizAlgebra, degree: int = 3) -> Report:
    """Ψ(ad^s_{e_i}(a)) = ad~_i(Ψ(a)) on basis monomials."""
    rep = Report("Ψ intertwines adjoint actions")
    res = rep.add(CheckResult("Ψ∘ad^s = ad~∘Ψ"))
    hr = h_rep(h)
    for m in monomials(h.dim, degree):
        a = SymElt(h.dim, {m: 1})
        for i in range(h.dim):
            lhs = psi(symmetrised_ad_product(h, (i,), a, hr))
            rhs = adtilde(h, i, psi(a))
            res.record(lhs == rhs, (i + 1, m, lhs.terms, rhs.terms))
    return rep


def scaling_check(h: LeibnizAlgebra, r_max: int = 3, deg_b: int = 3) -> Report:
    """Ψ(x1•...•xr) ▷_ħ Ψ(b) = ħ^r Ψ((x1•...•xr) ▷ b) on basis monomials."""
    rep = Report("scaling lemma")
    res = rep.add(CheckResult("star on Ψ-images"))
    hr = h_rep(h)
    for m in monomials(h.dim, r_max):
        a = SymElt(h.dim, {m: 1})
        for mb in monomials(h.dim, deg_b):
            b = SymElt(h.dim, {mb: 1})
            lhs = star(h, psi(a), psi(b))
            rhs = psi(symmetrised_ad_product(h, m, b, hr)) * HPoly.hbar(len(m))
            res.record(lhs == rhs, (m, mb, lhs.terms, rhs.terms))
    return rep


def random_polyfun(dim: int, rng: random.Random, max_degree: int = 3, nterms: int = 4) -> PolyFun:
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, max_degree)
        e = [0] * dim
        for _ in range(d):
            e[rng.randrange(dim)] += 1
        add_term(terms, tuple(e), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return PolyFun(dim, terms)


def poisson_relation_check(h: LeibnizAlgebra, samples: int = 100, seed: int = 0) -> Report:
    """ħ¹-coefficient of f ▷_ħ g equals -{f, g} on random pairs."""
    rng = random.Random(seed)
    rep = Report("first-order term is minus the Poisson bracket")
    res = rep.add(CheckResult("hbar^1 coefficient"))
    for _ in range(samples):
        f, g = random_polyfun(h.dim, rng), random_polyfun(h.dim, rng)
        lhs = star(h, f, g, 1).hbar_coefficient(1)
        rhs = -poisson(h, f, g)
        res.record(lhs == rhs, (f.terms, g.terms))
    return rep


# ---------------------------------------------------------------------------
# change of basis

def transform_algebra(h: LeibnizAlgebra, P: ExactMatrix) -> LeibnizAlgebra:
    """Structure constants in the basis f_j = Σ_i P[i, j] e_i."""
    n = h.dim
    Pinv_cols = []
    for k in range(n):
        col = P.solve([Fraction(int(t == k)) for t in range(n)])
        Pinv_cols.append(col)
    Pinv = ExactMatrix.from_columns(Pinv_cols, n)
    c = {}
    for a, b in product(range(n), repeat=2):
        br = h.bracket(P.column(a), P.column(b))
        coords = Pinv.apply(br)
        for k, v in enumerate(coords):
            if v:
                c[(a, b, k)] = v
    return LeibnizAlgebra(n, c, check=False)


def pullback(f: PolyFun, P: ExactMatrix) -> PolyFun:
    """Rewrite f(alpha) in coordinates beta_j = alpha(f_j) = Σ_i P[i, j] alpha_i.

    With alpha = (P^T)^{-1} beta, each alpha_i is a linear form in beta.
    """
    n = f.dim
    Q = ExactMatrix.from_columns(
        [P.transpose().solve([Fraction(int(t == k)) for t in range(n)]) for k in range(n)], n)
    forms = [PolyFun.linear([Q[i, j] for j in range(n)]) for i in range(n)]
    out = PolyFun(n)
    for e, c in f.terms.items():
        t = PolyFun.const(n, c)
        for i, k in enumerate(e):
            for _ in range(k):
                t = t * forms[i]
        out = out + t
    return out
