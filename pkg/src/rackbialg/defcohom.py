"""Adjoint deformation complex of a cocommutative rack bialgebra.

An n-cochain is a linear map R^{⊗n} -> R stored as ``basis tuple -> dict``.
Degree n lives in Coder(R^{⊗n}, R, μ^n).  Face indices are 1-based as in the
usual cubical notation: ``("d1", i)``, ``("d0", i)`` and ``("last",)``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .errors import IndexOutOfRange, NotCocommutative, NotCocycle, TooLarge
from .foundation import CheckResult, HPoly, Report, _kernel_from_rref, _rref, add_into, add_term, span_rank
from .rackcore import Coalgebra, RackBialgebra, verify_rack_axioms

SIZE_CAP = 20000


# ---------------------------------------------------------------------------
# helpers on R and its tensor powers

def _cache(R):
    c = getattr(R, "_defcohom_cache", None)
    if c is None:
        c = R._defcohom_cache = {"mu": {}, "iter": {}}
    return c


def iterated_coproduct(R: Coalgebra, i: int, m: int) -> dict:
    """Δ^(m-1)(e_i) as ``m-tuple -> coeff``."""
    cache = _cache(R)["iter"]
    key = (i, m)
    hit = cache.get(key)
    if hit is None:
        if m == 1:
            hit = {(i,): Fraction(1)}
        else:
            hit = {}
            for (a, b), c in R.delta[i].items():
                for tail, d in iterated_coproduct(R, b, m - 1).items():
                    add_term(hit, (a,) + tail, c * d)
        cache[key] = hit
    return hit


def split_prefix(R: Coalgebra, prefix: tuple) -> dict:
    """Δ applied to each entry of ``prefix``: ``(firsts, seconds) -> coeff``."""
    out = {((), ()): Fraction(1)}
    for r in prefix:
        nxt = {}
        for (f, s), c in out.items():
            for (a, b), d in R.delta[r].items():
                add_term(nxt, (f + (a,), s + (b,)), c * d)
        out = nxt
    return out


def tensor_coproduct(R: Coalgebra, t: tuple) -> dict:
    return split_prefix(R, t)


def mu_n(R: RackBialgebra, n: int) -> dict:
    """μ^n(r1, ..., rn) = r1 ▷ (r2 ▷ (... ▷ rn)) on every basis tuple."""
    cache = _cache(R)["mu"]
    if n in cache:
        return cache[n]
    if n == 1:
        table = {(i,): {i: Fraction(1)} for i in range(R.dim)}
    else:
        prev = mu_n(R, n - 1)
        table = {}
        for t in product(range(R.dim), repeat=n):
            v = R.product({t[0]: Fraction(1)}, prev.get(t[1:], {}))
            if v:
                table[t] = v
    cache[n] = table
    return table


def mu_eval(R, n, vecs) -> dict:
    return evaluate(mu_n(R, n), vecs)


def evaluate(table: dict, vecs) -> dict:
    """Multilinear evaluation of a table on a list of vectors (dicts)."""
    out = {}
    items = [list(v.items()) for v in vecs]
    for combo in product(*items):
        c = Fraction(1)
        for _, x in combo:
            c = c * x
        r = table.get(tuple(k for k, _ in combo))
        if r:
            add_into(out, r, c)
    return out


# ---------------------------------------------------------------------------
# cochains

class Cochain:
    def __init__(self, R: RackBialgebra, n: int, table=None):
        self.R = R
        self.n = n
        self.table = {t: dict(v) for t, v in (table or {}).items() if v}

    def __call__(self, *args) -> dict:
        return self.table.get(tuple(args), {})

    def evaluate(self, vecs) -> dict:
        return evaluate(self.table, vecs)

    def __add__(self, other):
        self._check(other)
        out = {t: dict(v) for t, v in self.table.items()}
        for t, v in other.table.items():
            add_into(out.setdefault(t, {}), v)
        return Cochain(self.R, self.n, out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return Cochain(self.R, self.n, {t: {k: x * c for k, x in v.items()} for t, v in self.table.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.n == other.n and self.table == other.table

    def _check(self, other):
        if other.n != self.n or other.R is not self.R:
            raise ValueError("cochains of different degree or algebra")

    def is_zero(self):
        return not self.table

    def flat(self) -> dict:
        """Sparse vector keyed by ``(tuple, k)``."""
        return {(t, k): x for t, v in self.table.items() for k, x in v.items()}

    def matrix_rows(self):
        """Dense matrix (dim R x dim R^n) with columns in lexicographic tuple order."""
        tuples = list(product(range(self.R.dim), repeat=self.n))
        return [[self.table.get(t, {}).get(k, Fraction(0)) for t in tuples] for k in range(self.R.dim)]

    def is_coderivation(self) -> bool:
        return coderivation_defect(self) == {}

    def __repr__(self):
        return f"Cochain(n={self.n}, {len(self.table)} nonzero tuples)"


def coderivation_defect(w: Cochain, along: dict | None = None) -> dict:
    """Δ∘ω - (ω⊗φ + φ⊗ω)∘Δ on every basis tuple; empty when ω is a coderivation along φ."""
    R, n = w.R, w.n
    phi_t = mu_n(R, n) if along is None else along
    bad = {}
    for t in product(range(R.dim), repeat=n):
        lhs = R.coproduct(w(*t))
        rhs = {}
        for (t1, t2), c in tensor_coproduct(R, t).items():
            a, b = w.table.get(t1), phi_t.get(t2)
            if a and b:
                for k1, x in a.items():
                    for k2, y in b.items():
                        add_term(rhs, (k1, k2), c * x * y)
            a, b = phi_t.get(t1), w.table.get(t2)
            if a and b:
                for k1, x in a.items():
                    for k2, y in b.items():
                        add_term(rhs, (k1, k2), c * x * y)
        diff = add_into(dict(lhs), rhs, -1)
        if diff:
            bad[t] = diff
    return bad


def coderivation_space(R: RackBialgebra, n: int, cap: int = SIZE_CAP):
    """Exact basis of Coder(R^{⊗n}, R, μ^n)."""
    if n < 1:
        return []
    if not R.is_cocommutative():
        raise NotCocommutative("the deformation complex needs a cocommutative rack bialgebra")
    d = R.dim
    if d ** n > cap:
        raise TooLarge(f"dim(R)^n = {d ** n} exceeds the cap {cap}")
    tuples = list(product(range(d), repeat=n))
    tindex = {t: i for i, t in enumerate(tuples)}
    phi_t = mu_n(R, n)
    rows = []

    def var(t, k):
        return tindex[t] * d + k

    for t in tuples:
        eqs = {}
        # Δ(ω(t)) = Σ_k x[t,k] Δ(e_k)
        for k in range(d):
            for pq, c in R.delta[k].items():
                add_term(eqs.setdefault(pq, {}), var(t, k), c)
        for (t1, t2), c in tensor_coproduct(R, t).items():
            m2 = phi_t.get(t2, {})
            for q, y in m2.items():
                for p in range(d):
                    add_term(eqs.setdefault((p, q), {}), var(t1, p), -c * y)
            m1 = phi_t.get(t1, {})
            for p, x in m1.items():
                for q in range(d):
                    add_term(eqs.setdefault((p, q), {}), var(t2, q), -c * x)
        rows.extend(r for r in eqs.values() if r)
    piv = _rref(rows)
    basis = []
    for vec in _kernel_from_rref(piv, len(tuples) * d):
        table = {}
        for idx, x in enumerate(vec):
            if x:
                table.setdefault(tuples[idx // d], {})[idx % d] = x
        basis.append(Cochain(R, n, table))
    return basis


# ---------------------------------------------------------------------------
# faces and differential

def face(w: Cochain, kind) -> Cochain:
    """One of d_{i,1}, d_{i,0} (``("d1", i)``, ``("d0", i)``) or d_{n+1} (``("last",)``)."""
    R, n = w.R, w.n
    name = kind[0]
    if name in ("d1", "d0"):
        i = kind[1]
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"face index {i} outside 1..{n}")
    elif name != "last":
        raise ValueError(f"unknown face {kind!r}")
    out = {}
    for t in product(range(R.dim), repeat=n + 1):
        if name == "d1":
            v = _d1(R, w, i, t)
        elif name == "d0":
            v = _d0(R, w, i, t)
        else:
            v = _dlast(R, w, t)
        if v:
            out[t] = v
    return Cochain(R, n + 1, out)


def _d1(R, w, i, t):
    # μ^i(r1', ..., r_{i-1}', r_i) ▷ ω(r1'', ..., r_{i-1}'', r_{i+1}, ..., r_{n+1})
    prefix, ri, rest = t[:i - 1], t[i - 1], t[i:]
    mi = mu_n(R, i)
    out = {}
    for (f, s), c in split_prefix(R, prefix).items():
        left = mi.get(f + (ri,))
        if not left:
            continue
        right = w.table.get(s + rest)
        if right:
            add_into(out, R.product(left, right), c)
    return out


def _d0(R, w, i, t):
    # ω(r1, ..., r_{i-1}, r_i^(1) ▷ r_{i+1}, ..., r_i^(m) ▷ r_{n+1})
    prefix, ri, rest = t[:i - 1], t[i - 1], t[i:]
    out = {}
    for parts, c in iterated_coproduct(R, ri, len(rest)).items():
        vecs = [{p: Fraction(1)} for p in prefix]
        for p, r in zip(parts, rest):
            v = R.prod_basis(p, r)
            if not v:
                break
            vecs.append(v)
        else:
            add_into(out, w.evaluate(vecs), c)
    return out


def _dlast(R, w, t):
    # ω(r1', ..., r_{n-1}', r_n) ▷ μ^n(r1'', ..., r_{n-1}'', r_{n+1})
    n = w.n
    prefix, rn, rlast = t[:n - 1], t[n - 1], t[n]
    mn = mu_n(R, n)
    out = {}
    for (f, s), c in split_prefix(R, prefix).items():
        left = w.table.get(f + (rn,))
        if not left:
            continue
        right = mn.get(s + (rlast,))
        if right:
            add_into(out, R.product(left, right), c)
    return out


def differential(w: Cochain, last_sign=1) -> Cochain:
    """d = Σ_i (-1)^{i+1} (d_{i,1} - d_{i,0}) + (-1)^{n+1} d_{n+1}."""
    n = w.n
    acc = Cochain(w.R, n + 1)
    for i in range(1, n + 1):
        s = (-1) ** (i + 1)
        acc = acc + face(w, ("d1", i)) * s - face(w, ("d0", i)) * s
    return acc + face(w, ("last",)) * ((-1) ** (n + 1) * last_sign)


def verify_relations(R: RackBialgebra, n: int, last_sign=1, basis=None) -> Report:
    """Cubical identities, both extra relations, d∘d = 0 and face outputs being coderivations.

    ``last_sign`` multiplies every extra face d_{n+1}; -1 is a deliberate mutation.
    """
    if basis is None:
        basis = coderivation_space(R, n)
    rep = Report(f"deformation complex relations, degree {n}")
    cub = rep.add(CheckResult("cubical identities"))
    ex1 = rep.add(CheckResult("extra relation d_{i,μ}∘d_{n+1} = d_{n+2}∘d_{i,μ}"))
    ex2 = rep.add(CheckResult("extra relation d_{n+1,0}∘d_{n+1} = d_{n+2}∘d_{n+1} + d_{n+1,1}∘d_{n+1}"))
    coder = rep.add(CheckResult("faces are coderivations along μ^{n+1}"))
    dd = rep.add(CheckResult("d∘d = 0"))
    kinds = [(m, i) for i in range(1, n + 1) for m in ("d1", "d0")]

    def last(c):
        return face(c, ("last",)) * last_sign

    for b, w in enumerate(basis):
        first = {k: face(w, k) for k in kinds}
        first_last = last(w)
        for k, c in list(first.items()) + [(("last",), first_last)]:
            coder.record(not coderivation_defect(c), (b, k))
        for (nu, i) in kinds:
            for (m, j) in kinds:
                if j > i:
                    continue
                lhs = face(first[(nu, i)], (m, j))
                rhs = face(first[(m, j)], (nu, i + 1))
                cub.record(lhs == rhs, (b, f"d_{j},{m}∘d_{i},{nu}"))
        for (m, i) in kinds:
            lhs = face(first_last, (m, i))
            rhs = last(first[(m, i)])
            ex1.record(lhs == rhs, (b, f"{m} {i}"))
        lhs = face(first_last, ("d0", n + 1))
        rhs = last(first_last) + face(first_last, ("d1", n + 1))
        ex2.record(lhs == rhs, (b,))
        dw = differential(w, last_sign)
        ddw = differential(dw, last_sign)
        dd.record(ddw.is_zero(), (b, len(ddw.table)))
    return rep


def mu_n_properties(R: RackBialgebra, n_max: int = 4) -> Report:
    """μ^n is a coalgebra morphism and satisfies the two splitting identities."""
    rep = Report("iterated products")
    morph = rep.add(CheckResult("μ^n coalgebra morphism"))
    p1 = rep.add(CheckResult("μ^i(r') ▷ μ^{n-1}(r'', ...) = μ^n"))
    p2 = rep.add(CheckResult("μ^n(..., r_i^(k) ▷ r_{i+k}, ...) = μ^{n+1}"))
    for n in range(1, n_max + 1):
        table = mu_n(R, n)
        for t in product(range(R.dim), repeat=n):
            v = table.get(t, {})
            lhs = R.coproduct(v)
            rhs = {}
            for (t1, t2), c in tensor_coproduct(R, t).items():
                a, b = table.get(t1), table.get(t2)
                if a and b:
                    for k1, x in a.items():
                        for k2, y in b.items():
                            add_term(rhs, (k1, k2), c * x * y)
            eps_ok = R.counit(v) == _prod_eps(R, t)
            morph.record(lhs == rhs and eps_ok, (n, t))
            for i in range(1, n):
                out = {}
                for (f, s), c in split_prefix(R, t[:i - 1]).items():
                    left = mu_n(R, i).get(f + (t[i - 1],))
                    right = mu_n(R, n - 1).get(s + t[i:])
                    if left and right:
                        add_into(out, R.product(left, right), c)
                p1.record(out == v, (n, i, t))
        if n >= 2:
            # identity with n-1 arguments on the left, n on the right
            m = n - 1
            big = mu_n(R, n)
            for t in product(range(R.dim), repeat=n):
                for i in range(1, m):
                    prefix, ri, rest = t[:i - 1], t[i - 1], t[i:]
                    out = {}
                    for parts, c in iterated_coproduct(R, ri, len(rest)).items():
                        vecs = [{p: Fraction(1)} for p in prefix]
                        vecs += [R.prod_basis(p, r) for p, r in zip(parts, rest)]
                        if all(vecs):
                            add_into(out, mu_eval(R, m, vecs), c)
                    p2.record(out == big.get(t, {}), (m, i, t))
    return rep


def _prod_eps(R, t):
    e = Fraction(1)
    for i in t:
        e *= R.eps[i]
    return e


# ---------------------------------------------------------------------------
# cohomology

def _rank(cochains) -> int:
    return span_rank([c.flat() for c in cochains])


def cohomology(R: RackBialgebra, n: int, cap: int = SIZE_CAP):
    """(dim Z^n, dim B^n, dim H^n) with C^0 = 0."""
    cn = coderivation_space(R, n, cap)
    if not cn:
        return (0, 0, 0)
    z = len(cn) - _rank([differential(w) for w in cn])
    b = _rank([differential(w) for w in coderivation_space(R, n - 1, cap)]) if n > 1 else 0
    return (z, b, z - b)


def cochain_from_product(R: RackBialgebra, mu: dict) -> Cochain:
    return Cochain(R, 2, {t: v for t, v in mu.items()})


class InfinitesimalDeformation:
    """μ0 + ħ μ1 over the dual numbers."""

    def __init__(self, R: RackBialgebra, mu1: Cochain, check: bool = True):
        self.R = R
        self.mu1 = mu1
        if check:
            rep = self.verify()
            if not rep.passed:
                raise NotCocycle("μ0 + ħμ1 is not a rack bialgebra over the dual numbers")

    def product_table(self) -> dict:
        eps = HPoly.hbar(1, order=1)
        one = HPoly([1], order=1)
        table = {}
        for t in set(self.R.mu) | set(self.mu1.table):
            v = {k: one * x for k, x in self.R.mu.get(t, {}).items()}
            add_into(v, self.mu1.table.get(t, {}), eps)
            if v:
                table[t] = v
        return table

    def verify(self) -> Report:
        B = RackBialgebra(self.R.coalgebra, self.product_table(), "dual-number deformation")
        return verify_rack_axioms(B)


def is_cocycle(w: Cochain) -> bool:
    return differential(w).is_zero()


def equivalent(mu1: Cochain, mu1p: Cochain, basis1=None):
    """Return a witness α in C^1 with dα = μ1 - μ1' (or None if inequivalent)."""
    R = mu1.R
    for m in (mu1, mu1p):
        if not m.is_coderivation() or not is_cocycle(m):
            raise NotCocycle("infinitesimal deformations must be 2-cocycles in Coder")
    basis1 = coderivation_space(R, 1) if basis1 is None else basis1
    target = (mu1 - mu1p).flat()
    images = [differential(a).flat() for a in basis1]
    keys = sorted(set(target) | {k for im in images for k in im})
    kidx = {k: i for i, k in enumerate(keys)}
    rows = {}
    for j, im in enumerate(images):
        for k, x in im.items():
            rows.setdefault(kidx[k], {})[j] = x
    m = len(images)
    eqs = []
    for r in range(len(keys)):
        row = dict(rows.get(r, {}))
        t = target.get(keys[r])
        if t:
            row[m] = t
        if row:
            eqs.append(row)
    piv = _rref(eqs)
    if m in piv:
        return None
    alpha = Cochain(R, 1)
    for p, row in piv.items():
        x = row.get(m, 0)
        if x:
            alpha = alpha + basis1[p] * x
    return alpha


def witness_consistent(mu1: Cochain, mu1p: Cochain, alpha: Cochain) -> bool:
    """φ∘(μ0 + ħμ1) = (μ0 + ħμ1')∘(φ⊗φ) mod ħ², φ = id + ħα, on basis pairs."""
    R = mu1.R
    one = HPoly([1], order=1)
    eps = HPoly.hbar(1, order=1)

    def phi(vec):
        out = {k: one * x for k, x in vec.items()}
        for k, x in vec.items():
            add_into(out, alpha(k), x * eps)
        return out

    for a, b in product(range(R.dim), repeat=2):
        left = {k: one * x for k, x in R.prod_basis(a, b).items()}
        add_into(left, mu1(a, b), eps)
        lhs = phi(left)
        pa, pb = phi({a: Fraction(1)}), phi({b: Fraction(1)})
        rhs = R.product(pa, pb)
        add_into(rhs, evaluate(mu1p.table, [pa, pb]), eps)
        if add_into(dict(lhs), rhs, -1):
            return False
    return True


def random_cochain(basis, rng: random.Random) -> Cochain:
    acc = None
    for b in basis:
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        acc = b * c if acc is None else acc + b * c
    return acc
