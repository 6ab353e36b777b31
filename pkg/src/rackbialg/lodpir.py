"""Tensor rack bialgebra B ⊗ U(g) and the maps Γ, Ψ_LP into it.

Elements of B ⊗ U(g) are dicts ``(monomial, word) -> coeff`` with
B = S(h)_(k) on sym monomials and words in PBW normal form.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .envelope import EnvelopingAlgebra, act_on_sym, f_series, g_series, phi, quotient_rep
from .errors import CapExceeded, NotAugmentationIdeal
from .foundation import CheckResult, Report, add_into, add_term
from .leibniz import LeibnizAlgebra, Subspace, hemi, quotient, squares_ideal
from .rackcore import Coalgebra, RackBialgebra, symmetrised_ad_product, h_rep
from .symcoalg import SymElt, monomial_coproduct, monomials


class TensorRack:
    """(B ⊗ U(g), Φ, U(g), ℓ⊗ad) for B = S(h)_(k)."""

    def __init__(self, h: LeibnizAlgebra, k: int = 1, z: Subspace | None = None, filtration: int = 4):
        self.h = h
        self.k = k
        self.filtration = filtration
        self.q = quotient(h, squares_ideal(h) if z is None else z)
        self.g = self.q.lie
        self.ug = EnvelopingAlgebra(self.g)
        self.rep = quotient_rep(self.q)
        self._phi = {}

    # -- pieces -----------------------------------------------------------
    def phi_b(self, m: tuple) -> dict:
        hit = self._phi.get(m)
        if hit is None:
            hit = self._phi[m] = phi(self.ug, self.q, SymElt(self.h.dim, {m: 1}))
        return hit

    def act_b(self, u: dict, m: tuple) -> dict:
        return act_on_sym(u, SymElt(self.h.dim, {m: 1}), self.rep).terms

    def _check(self, x: dict):
        for (m, w) in x:
            if len(m) > self.k:
                raise CapExceeded(f"B-component {m} above degree cap {self.k}")
            if len(w) > self.filtration:
                raise CapExceeded(f"U(g)-component {w} above filtration cap {self.filtration}")

    # -- structure --------------------------------------------------------
    def product(self, x: dict, y: dict) -> dict:
        """(b⊗u) ▷' (c⊗v) = Σ ℓ_{Φ(b1)u1}(c) ⊗ ad_{Φ(b2)u2}(v)."""
        self._check(x)
        self._check(y)
        ug = self.ug
        out = {}
        for (b, u), s in x.items():
            du = ug.coproduct({u: Fraction(1)})
            for (b1, b2), cb in monomial_coproduct(b).items():
                p1, p2 = self.phi_b(b1), self.phi_b(b2)
                for (u1, u2), cu in du.items():
                    left = ug.mul(p1, {u1: Fraction(1)})
                    right = ug.mul(p2, {u2: Fraction(1)})
                    for (c, v), t in y.items():
                        lc = act_on_sym(left, SymElt(self.h.dim, {c: 1}), self.rep).terms
                        if not lc:
                            continue
                        av = ug.adjoint(right, {v: Fraction(1)})
                        for m, e in lc.items():
                            for w, f in av.items():
                                add_term(out, (m, w), s * t * cb * cu * e * f)
        return out

    def act(self, u: dict, x: dict) -> dict:
        """Diagonal action u.(c⊗v) = Σ ℓ_{u1}(c) ⊗ ad_{u2}(v)."""
        ug = self.ug
        out = {}
        for (c, v), t in x.items():
            for (u1, u2), cu in ug.coproduct(u).items():
                lc = self.act_b({u1: Fraction(1)}, c)
                if not lc:
                    continue
                av = ug.adjoint({u2: Fraction(1)}, {v: Fraction(1)})
                for m, e in lc.items():
                    for w, f in av.items():
                        add_term(out, (m, w), t * cu * e * f)
        return out

    def phi_c(self, x: dict) -> dict:
        """Φ(b⊗u) = Φ_B(b) u."""
        out = {}
        for (b, u), c in x.items():
            add_into(out, self.ug.mul(self.phi_b(b), {u: Fraction(1)}), c)
        return out

    # -- Γ and Ψ_LP ---------------------------------------------------------
    def _series_on_phi(self, coeffs_fn, m: tuple) -> dict:
        u = self.phi_b(m)
        top = max((len(w) for w in u), default=0)
        return self.ug.convolution_series(coeffs_fn(top + 1), self.ug.eulerian_word, u)

    def gamma(self, a: SymElt) -> dict:
        """Γ = ((1ε + pr) ⊗ F_*(e^(1))∘Φ)∘Δ, landing in (K1 ⊕ h) ⊗ U(g)."""
        out = {}
        for m, c in a.terms.items():
            for (m1, m2), w in monomial_coproduct(m).items():
                if len(m1) > 1:
                    continue
                for word, x in self._series_on_phi(f_series, m2).items():
                    add_term(out, (m1, word), c * w * x)
        return out

    def psi_lp(self, a: SymElt) -> dict:
        """Ψ_LP = (pr ⊗ G_*(e^(1))∘Φ)∘Δ on the augmentation ideal, landing in h ⊗ U(g)."""
        if a.counit():
            raise NotAugmentationIdeal("Ψ_LP is defined on elements with ε(a) = 0")
        out = {}
        for m, c in a.terms.items():
            for (m1, m2), w in monomial_coproduct(m).items():
                if len(m1) != 1:
                    continue
                for word, x in self._series_on_phi(g_series, m2).items():
                    add_term(out, (m1, word), c * w * x)
        return out

    def uar_product(self, a: tuple, b: tuple) -> dict:
        return symmetrised_ad_product(self.h, a, SymElt(self.h.dim, {b: 1}), h_rep(self.h)).terms


def tensor_of(m: tuple, w: tuple = ()) -> dict:
    return {(tuple(m), tuple(w)): Fraction(1)}


def convolve(ug: EnvelopingAlgebra, f, g, u: dict) -> dict:
    """(f * g)(u) = Σ f(u1) g(u2) for maps on words."""
    out = {}
    for (w1, w2), c in ug.coproduct(u).items():
        a = f(w1)
        if not a:
            continue
        add_into(out, ug.mul(a, g(w2)), c)
    return out


def f_identity_check(g, filtration: int = 3) -> Report:
    """(1ε + e^(1)) * F_*(e^(1)) = id on PBW words."""
    ug = EnvelopingAlgebra(g)
    rep = Report("series identity for F")
    res = rep.add(CheckResult("(1ε + e^(1)) * F_*(e^(1)) = id"))

    def left(w):
        out = ug.eulerian_word(w)
        if not w:
            add_term(out, (), Fraction(1))
        return out

    def right(w):
        return ug.convolution_series(f_series(len(w) + 1), ug.eulerian_word, {w: Fraction(1)})

    for w in ug.basis(filtration):
        r = convolve(ug, left, right, {w: Fraction(1)})
        res.record(r == {w: Fraction(1)}, (w, r))
    return rep


def gamma_checks(h: LeibnizAlgebra, degree: int = 2, filtration: int = 2) -> Report:
    """Γ and Ψ_LP: morphism of rack algebras, Φ-compatibility, U(g)-equivariance."""
    T = TensorRack(h, 1)
    rep = Report(f"Loday-Pirashvili maps on {h.names}")
    morph = rep.add(CheckResult("Γ(b▷b') = Γ(b)▷'Γ(b')"))
    phic = rep.add(CheckResult("Φ_C∘Γ = Φ_B"))
    equiv = rep.add(CheckResult("Γ(u.a) = u.Γ(a)"))
    pmorph = rep.add(CheckResult("Ψ_LP(b▷b') = Ψ_LP(b)▷'Ψ_LP(b')"))
    pphi = rep.add(CheckResult("Φ_C∘Ψ_LP = Φ_B on S(h)+"))
    basis = monomials(h.dim, degree)
    gam = {m: T.gamma(SymElt(h.dim, {m: 1})) for m in basis}
    psl = {m: T.psi_lp(SymElt(h.dim, {m: 1})) for m in basis if m}
    for m in basis:
        phic.record(T.phi_c(gam[m]) == T.phi_b(m), (m,))
        if m:
            pphi.record(T.phi_c(psl[m]) == T.phi_b(m), (m,))
    for a, b in product(basis, repeat=2):
        ab = T.uar_product(a, b)
        lhs = {}
        for m, c in ab.items():
            add_into(lhs, gam[m], c)
        rhs = T.product(gam[a], gam[b])
        morph.record(lhs == rhs, (a, b, lhs, rhs))
        if a and b:
            lhs = {}
            for m, c in ab.items():
                add_into(lhs, psl[m], c)
            rhs = T.product(psl[a], psl[b])
            pmorph.record(lhs == rhs, (a, b, lhs, rhs))
    for w in T.ug.basis(filtration):
        u = {w: Fraction(1)}
        for m in basis:
            ua = T.act_b(u, m)
            lhs = {}
            for m2, c in ua.items():
                add_into(lhs, gam[m2], c)
            rhs = T.act(u, gam[m])
            equiv.record(lhs == rhs, (w, m))
    return rep


def lp_submodule_check(h: LeibnizAlgebra, filtration: int = 2) -> Report:
    """h ⊗ U(g) is closed under ▷' inside (K1 ⊕ h) ⊗ U(g)."""
    T = TensorRack(h, 1)
    rep = Report("h ⊗ U(g) is a rack subalgebra")
    res = rep.add(CheckResult("closure under ▷'"))
    words = T.ug.basis(filtration)
    gens = [((i,), w) for i in range(h.dim) for w in words]
    for x, y in product(gens, repeat=2):
        r = T.product({x: Fraction(1)}, {y: Fraction(1)})
        res.record(all(len(m) == 1 for m, _ in r), (x, y))
    return rep


def tensor_rack_bialgebra(T: TensorRack, filtration: int = 1) -> RackBialgebra:
    """B ⊗ U(g)_(f) as a finite rack bialgebra with the tensor coalgebra structure."""
    basis = [(m, w) for m in monomials(T.h.dim, T.k) for w in T.ug.basis(filtration)]
    idx = {b: i for i, b in enumerate(basis)}
    delta, eps = [], []
    for m, w in basis:
        d = {}
        for (m1, m2), c in monomial_coproduct(m).items():
            for (w1, w2), e in monomial_coproduct(w).items():
                add_term(d, (idx[(m1, w1)], idx[(m2, w2)]), c * e)
        delta.append(d)
        eps.append(Fraction(int(not m and not w)))
    C = Coalgebra(len(basis), delta, eps, idx[((), ())], basis)
    mu = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            r = T.product({x: Fraction(1)}, {y: Fraction(1)})
            if r:
                mu[(i, j)] = {idx[k]: c for k, c in r.items()}
    return RackBialgebra(C, mu, "B ⊗ U(g)")


def primitive_bracket_check(h: LeibnizAlgebra) -> Report:
    """Primitives h⊗1 ⊕ 1⊗g of B ⊗ U(g) under ▷' form the hemi-semidirect product.

    The bracket comes out as ((p(x)+ξ).y, [p(x)+ξ, η]); the coordinate change
    (x, ξ) -> (x, p(x) + ξ) turns it into (ζ.y, [ζ, ζ']).
    """
    T = TensorRack(h, 1)
    n, m = h.dim, T.g.dim
    target = hemi(h, T.q.ideal)
    rep = Report("primitive part is the hemi-semidirect product")
    res = rep.add(CheckResult("bracket matches after ζ = p(x) + ξ"))
    P = T.q.projection

    def prim(i):
        # basis of h ⊕ g as primitives of B ⊗ U(g)
        return tensor_of((i,)) if i < n else tensor_of((), (i - n,))

    def coords(x):
        v = [Fraction(0)] * (n + m)
        for (mono, w), c in x.items():
            if len(mono) == 1 and not w:
                v[mono[0]] += c
            elif not mono and len(w) == 1:
                v[n + w[0]] += c
            else:
                raise ValueError(f"{(mono, w)} is not primitive")
        return v

    def change(v):
        x, xi = v[:n], v[n:]
        px = P.apply(x)
        return tuple(x) + tuple(a + b for a, b in zip(px, xi))

    for i, j in product(range(n + m), repeat=2):
        br = coords(T.product(prim(i), prim(j)))
        ei = [Fraction(int(t == i)) for t in range(n + m)]
        ej = [Fraction(int(t == j)) for t in range(n + m)]
        lhs = change(br)
        rhs = target.bracket(change(ei), change(ej))
        res.record(tuple(lhs) == tuple(rhs), (i + 1, j + 1, lhs, rhs))
    return rep
