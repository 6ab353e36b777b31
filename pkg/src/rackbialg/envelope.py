"""Universal enveloping algebra U(g) in PBW normal form.

Elements are dicts ``word -> coeff`` where a word is a weakly increasing tuple
of g-basis indices (the empty word is 1).  :class:`UEAElt` wraps such a dict
for operator syntax; the algebra object works on raw dicts.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from math import factorial

from .errors import AlgebraMismatch, NonTerminating
from .foundation import add_into, add_term, exp_coeffs, log1p_coeffs, series_divide
from .leibniz import LieAlgebra, Quotient
from .symcoalg import SymElt, merge, monomial_coproduct

EMPTY = ()


class EnvelopingAlgebra:
    def __init__(self, lie: LieAlgebra):
        self.lie = lie
        self.dim = lie.dim
        self._normal = {}
        self._omega = {}
        self._iter_cop = {}

    # -- algebra ------------------------------------------------------------
    def normal(self, word: tuple) -> dict:
        """PBW normal form of an arbitrary word (leftmost straightening)."""
        word = tuple(word)
        hit = self._normal.get(word)
        if hit is not None:
            return hit
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b:
                out = dict(self.normal(word[:i] + (b, a) + word[i + 2:]))
                for k, v in self.lie.bracket_basis(a, b).items():
                    add_into(out, self.normal(word[:i] + (k,) + word[i + 2:]), v)
                break
        else:
            out = {word: Fraction(1)}
        self._normal[word] = out
        return out

    def mul(self, u: dict, v: dict) -> dict:
        out = {}
        for w1, a in u.items():
            for w2, b in v.items():
                add_into(out, self.normal(w1 + w2), a * b)
        return out

    def one(self) -> dict:
        return {EMPTY: Fraction(1)}

    def gen(self, i) -> dict:
        return {(i,): Fraction(1)}

    def from_vector(self, xi) -> dict:
        return {(i,): Fraction(c) for i, c in enumerate(xi) if c}

    def counit(self, u: dict):
        return u.get(EMPTY, 0)

    def coproduct(self, u: dict) -> dict:
        """Δ as a dict ``(w1, w2) -> coeff``; sub-words of PBW words stay PBW."""
        out = {}
        for w, c in u.items():
            for pair, m in monomial_coproduct(w).items():
                add_term(out, pair, c * m)
        return out

    def iterated_coproduct(self, w: tuple, k: int) -> dict:
        """Δ^(k-1)(w) as a dict of k-tuples of words."""
        key = (w, k)
        hit = self._iter_cop.get(key)
        if hit is not None:
            return hit
        if k == 1:
            out = {(w,): Fraction(1)}
        else:
            out = {}
            for (w1, rest), m in monomial_coproduct(w).items():
                for tail, m2 in self.iterated_coproduct(rest, k - 1).items():
                    add_term(out, (w1,) + tail, m * m2)
        self._iter_cop[key] = out
        return out

    def antipode(self, u: dict) -> dict:
        out = {}
        for w, c in u.items():
            add_into(out, self.normal(w[::-1]), c * (-1) ** len(w))
        return out

    def adjoint(self, u: dict, v: dict) -> dict:
        """ad_u(v) = Σ u1 v S(u2)."""
        out = {}
        for (w1, w2), c in self.coproduct(u).items():
            left = self.mul({w1: Fraction(1)}, v)
            add_into(out, self.mul(left, self.antipode({w2: Fraction(1)})), c)
        return out

    def basis(self, filtration: int):
        out = []
        for r in range(filtration + 1):
            out.extend(combinations_with_replacement(range(self.dim), r))
        return out

    # -- symmetrisation -------------------------------------------------------
    def omega_monomial(self, m: tuple) -> dict:
        hit = self._omega.get(m)
        if hit is None:
            hit = {}
            k = len(m)
            w = Fraction(1, factorial(k))
            for perm in permutations(m):
                add_into(hit, self.normal(perm), w)
            self._omega[m] = hit
        return hit

    def omega(self, a: SymElt) -> dict:
        if a.dim != self.dim:
            raise AlgebraMismatch(f"S of dim {a.dim} is not S(g) for dim g = {self.dim}")
        out = {}
        for m, c in a.terms.items():
            add_into(out, self.omega_monomial(m), c)
        return out

    # -- convolution ----------------------------------------------------------
    def convolution_power(self, f, k: int, u: dict) -> dict:
        """f^{*k}(u) for a linear map f given on words (word -> dict)."""
        if k == 0:
            return {EMPTY: self.counit(u)} if self.counit(u) else {}
        out = {}
        for w, c in u.items():
            for parts, m in self.iterated_coproduct(w, k).items():
                acc = self.one()
                for part in parts:
                    img = f(part)
                    if not img:
                        acc = {}
                        break
                    acc = self.mul(acc, img)
                add_into(out, acc, c * m)
        return out

    def convolution_series(self, coeffs, f, u: dict) -> dict:
        """Σ_k coeffs[k] f^{*k}(u); needs f(1) = 0 so the sum is finite."""
        if f(EMPTY):
            raise NonTerminating("convolution series needs f(1) = 0")
        top = max((len(w) for w in u), default=0)
        if len(coeffs) <= top:
            raise ValueError(f"need {top + 1} series coefficients, got {len(coeffs)}")
        out = {}
        for k in range(top + 1):
            if coeffs[k]:
                add_into(out, self.convolution_power(f, k, u), coeffs[k])
        return out

    def id_minus_unit(self, w: tuple) -> dict:
        return {w: Fraction(1)} if w else {}

    def eulerian(self, u: dict) -> dict:
        top = max((len(w) for w in u), default=0)
        return self.convolution_series(log1p_coeffs(top + 1), self.id_minus_unit, u)

    def eulerian_word(self, w: tuple) -> dict:
        return self.eulerian({w: Fraction(1)})


def f_series(n: int):
    """Coefficients of e^s / (1 + s)."""
    return series_divide(exp_coeffs(n), [1, 1], n)


def g_series(n: int):
    """Coefficients of (e^s - 1) / s."""
    return [Fraction(1, factorial(k + 1)) for k in range(n)]


# ---------------------------------------------------------------------------
# U(g)-modules S(V) with g acting by derivations

def quotient_rep(q: Quotient):
    """rep[i][j] = coordinates of xi_i . e_j = [lift(xi_i), e_j] in h."""
    h = q.source
    return [[dict(h.bracket_basis(q.lift[i], j)) for j in range(h.dim)]
            for i in range(q.lie.dim)]


def adjoint_rep(g: LieAlgebra):
    return [[dict(g.bracket_basis(i, j)) for j in range(g.dim)] for i in range(g.dim)]


def act_letter(rep, i: int, a: dict) -> dict:
    """Action of the i-th generator on a dict of sym monomials (a derivation)."""
    row = rep[i]
    out = {}
    for m, c in a.items():
        for pos, j in enumerate(m):
            if pos and m[pos - 1] == j:
                continue
            mult = m.count(j)
            rest = m[:pos] + m[pos + 1:]
            for k, v in row[j].items():
                add_term(out, merge(rest, (k,)), c * v * mult)
    return out


def act_on_sym(u: dict, a: SymElt, rep) -> SymElt:
    """u.a for u in U(g) (PBW dict) and a in S(V); words act letter by letter."""
    out = {}
    for w, c in u.items():
        cur = a.terms
        for i in reversed(w):
            cur = act_letter(rep, i, cur)
            if not cur:
                break
        add_into(out, cur, c)
    return SymElt(a.dim, out, a.cap)


def ug_action_on_sym(ug: EnvelopingAlgebra, u: dict, a: SymElt, q: Quotient) -> SymElt:
    if ug.lie is not q.lie and ug.lie != q.lie:
        raise AlgebraMismatch("U(g) and the quotient use different Lie algebras")
    if a.dim != q.source.dim:
        raise AlgebraMismatch("element is not in S(h) for this quotient")
    return act_on_sym(u, a, quotient_rep(q))


def sym_projection(q: Quotient, a: SymElt) -> SymElt:
    from .symcoalg import sym_map
    return sym_map(q.projection, a, cap=a.cap)


def phi(ug: EnvelopingAlgebra, q: Quotient, a: SymElt) -> dict:
    """Φ = ω ∘ S(p): S(h) -> U(g)."""
    return ug.omega(sym_projection(q, a))


class UEAElt:
    """Thin operator wrapper around a PBW dict."""

    __slots__ = ("ug", "terms")

    def __init__(self, ug: EnvelopingAlgebra, terms=None):
        self.ug = ug
        self.terms = {tuple(w): c for w, c in (terms or {}).items() if c}

    def _check(self, other):
        if other.ug is not self.ug and other.ug.lie != self.ug.lie:
            raise AlgebraMismatch("elements of different enveloping algebras")

    def __add__(self, other):
        self._check(other)
        return UEAElt(self.ug, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return UEAElt(self.ug, add_into(dict(self.terms), other.terms, -1))

    def __mul__(self, other):
        if isinstance(other, UEAElt):
            self._check(other)
            return UEAElt(self.ug, self.ug.mul(self.terms, other.terms))
        return UEAElt(self.ug, {w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other):
        return UEAElt(self.ug, {w: other * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, UEAElt):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        names = self.ug.lie.names
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{''.join(names[i] for i in w) or '1'}"
                          for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))


def ug_map(src: EnvelopingAlgebra, tgt: EnvelopingAlgebra, matrix, u: dict) -> dict:
    """U(f) for a Lie map f given by a matrix (dim tgt x dim src)."""
    images = [{(r,): v for (r, c), v in matrix.entries.items() if c == i} for i in range(src.dim)]
    out = {}
    for w, c in u.items():
        acc = tgt.one()
        for i in w:
            acc = tgt.mul(acc, images[i])
            if not acc:
                break
        add_into(out, acc, c)
    return out
