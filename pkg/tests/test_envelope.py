from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rackbialg.envelope import (EnvelopingAlgebra, UEAElt, act_on_sym, f_series, g_series, phi, quotient_rep,
                                ug_map)
from rackbialg.errors import NonTerminating
from rackbialg.foundation import add_into, exp_coeffs
from rackbialg.leibniz import abelian, catalog, catalog_morphisms, induced_lie_map, quotient, squares_ideal
from rackbialg.symcoalg import SymElt, coproduct as sym_coproduct, monomials

ONE = {(): Fraction(1)}


def w(*letters):
    return {tuple(letters): Fraction(1)}


@pytest.fixture(scope="module")
def heis():
    return EnvelopingAlgebra(catalog("heisenberg"))


def test_straightening(heis):
    X, Y, Z = 0, 1, 2
    assert heis.normal((Y, X)) == {(X, Y): 1, (Z,): -1}
    assert heis.mul(ONE, w(Y, Z)) == w(Y, Z)
    ab = EnvelopingAlgebra(abelian(2))
    assert ab.mul(w(1), w(0, 1)) == w(0, 1, 1)


@pytest.mark.parametrize("name", ["heisenberg", "sl2"])
def test_associative(name):
    ug = EnvelopingAlgebra(catalog(name))
    words = ug.basis(2)
    for a, b, c in product(words[:7], repeat=3):
        ab = ug.mul(w(*a), w(*b))
        bc = ug.mul(w(*b), w(*c))
        assert ug.mul(ab, w(*c)) == ug.mul(w(*a), bc)


def tensor_mul(ug, s, t):
    out = {}
    for (a1, a2), c in s.items():
        for (b1, b2), d in t.items():
            for k1, x in ug.mul(w(*a1), w(*b1)).items():
                for k2, y in ug.mul(w(*a2), w(*b2)).items():
                    out[(k1, k2)] = out.get((k1, k2), 0) + c * d * x * y
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("name", ["heisenberg", "sl2"])
def test_hopf_axioms(name):
    ug = EnvelopingAlgebra(catalog(name))
    words = ug.basis(3)
    for a in words:
        # μ∘(S⊗id)∘Δ = 1ε
        acc = {}
        for (u1, u2), c in ug.coproduct(w(*a)).items():
            add_into(acc, ug.mul(ug.antipode(w(*u1)), w(*u2)), c)
        assert acc == (ONE if not a else {})
    for a, b in product(ug.basis(2), repeat=2):
        uv = ug.mul(w(*a), w(*b))
        assert ug.coproduct(uv) == tensor_mul(ug, ug.coproduct(w(*a)), ug.coproduct(w(*b)))
        assert ug.antipode(uv) == ug.mul(ug.antipode(w(*b)), ug.antipode(w(*a)))


def test_omega_examples(heis):
    X, Y, Z = 0, 1, 2
    assert heis.omega(SymElt(3, {(X, Y): 1})) == {(X, Y): 1, (Z,): Fraction(-1, 2)}
    assert heis.omega(SymElt.gen(3, Y)) == w(Y)
    # ½(ξ1ξ2 + ξ2ξ1) from the definition, computed through mul
    half = {}
    add_into(half, heis.mul(w(X), w(Y)), Fraction(1, 2))
    add_into(half, heis.mul(w(Y), w(X)), Fraction(1, 2))
    assert heis.omega(SymElt(3, {(X, Y): 1})) == half


@pytest.mark.parametrize("name", ["heisenberg", "sl2"])
def test_omega_coalgebra_and_module_map(name):
    g = catalog(name)
    ug = EnvelopingAlgebra(g)
    rep = quotient_rep(quotient(g, squares_ideal(g)))
    for m in monomials(3, 3):
        a = SymElt(3, {m: 1})
        lhs = ug.coproduct(ug.omega(a))
        rhs = {}
        for (m1, m2), c in sym_coproduct(a).items():
            for k1, x in ug.omega(SymElt(3, {m1: 1})).items():
                for k2, y in ug.omega(SymElt(3, {m2: 1})).items():
                    rhs[(k1, k2)] = rhs.get((k1, k2), 0) + c * x * y
        assert lhs == {k: v for k, v in rhs.items() if v}
        for i in range(3):
            moved = act_on_sym(w(i), a, rep)
            assert ug.omega(moved) == ug.adjoint(w(i), ug.omega(a))


def test_adjoint_examples(heis):
    assert heis.adjoint(ONE, w(1)) == w(1)
    assert heis.adjoint(w(0), w(1)) == w(2)
    assert heis.adjoint(w(0), ONE) == {}


def test_action_examples():
    q = quotient(catalog("sq2"), squares_ideal(catalog("sq2")))
    rep = quotient_rep(q)
    assert act_on_sym(w(0), SymElt.gen(2, 0), rep).terms == {(1,): 1}
    assert act_on_sym(w(0), SymElt.one(2), rep).terms == {}
    assert act_on_sym(w(0), SymElt(2, {(0, 0): 1}), rep).terms == {(0, 1): 2}


def test_eulerian(heis):
    assert heis.eulerian(ONE) == {}
    assert heis.eulerian(w(1)) == w(1)
    ab = EnvelopingAlgebra(abelian(2))
    assert ab.eulerian(w(0, 1)) == {}
    # e^(1)∘ω = pr
    for m in monomials(3, 3):
        expected = w(*m) if len(m) == 1 else {}
        assert heis.eulerian(heis.omega(SymElt(3, {m: 1}))) == expected


@pytest.mark.parametrize("name", ["heisenberg", "sl2"])
def test_exp_of_eulerian_is_identity(name):
    ug = EnvelopingAlgebra(catalog(name))
    for a in ug.basis(3):
        assert ug.convolution_series(exp_coeffs(len(a) + 1), ug.eulerian_word, w(*a)) == w(*a)


def test_convolution_series_edges(heis):
    assert heis.convolution_series([1, 0, 0], heis.eulerian_word, w(0, 1)) == {}
    assert heis.convolution_series([1, 0], heis.eulerian_word, ONE) == ONE
    assert heis.convolution_series(f_series(2), heis.eulerian_word, w(0)) == {}
    with pytest.raises(NonTerminating):
        heis.convolution_series([1, 1], lambda word: ONE, w(0))


def test_series_coefficients_against_sympy():
    s = sympy.symbols("s")
    F = sympy.series(sympy.exp(s) / (1 + s), s, 0, 6).removeO()
    G = sympy.series((sympy.exp(s) - 1) / s, s, 0, 6).removeO()
    assert [sympy.Rational(c) for c in f_series(6)] == [F.coeff(s, k) for k in range(6)]
    assert [sympy.Rational(c) for c in g_series(6)] == [G.coeff(s, k) for k in range(6)]


@pytest.mark.parametrize("name", ["sq2", "jordan3", "hemi_sq2"])
def test_phi_intertwines(name):
    h = catalog(name)
    q = quotient(h, squares_ideal(h))
    ug = EnvelopingAlgebra(q.lie)
    rep = quotient_rep(q)
    for u in ug.basis(2):
        for m in monomials(h.dim, 2):
            a = SymElt(h.dim, {m: 1})
            assert phi(ug, q, act_on_sym(w(*u), a, rep)) == ug.adjoint(w(*u), phi(ug, q, a))
            assert (act_on_sym(w(*u), SymElt.one(h.dim), rep).terms == ({(): 1} if not u else {}))


def test_module_coalgebra():
    h = catalog("jordan3")
    q = quotient(h, squares_ideal(h))
    ug = EnvelopingAlgebra(q.lie)
    rep = quotient_rep(q)
    for u in ug.basis(2):
        for m in monomials(3, 2):
            a = SymElt(3, {m: 1})
            lhs = sym_coproduct(act_on_sym(w(*u), a, rep))
            rhs = {}
            for (u1, u2), c in ug.coproduct(w(*u)).items():
                for (m1, m2), d in sym_coproduct(a).items():
                    x = act_on_sym(w(*u1), SymElt(3, {m1: 1}), rep).terms
                    y = act_on_sym(w(*u2), SymElt(3, {m2: 1}), rep).terms
                    for k1, s in x.items():
                        for k2, t in y.items():
                            rhs[(k1, k2)] = rhs.get((k1, k2), 0) + c * d * s * t
            assert lhs == {k: v for k, v in rhs.items() if v}


def test_ug_map_is_multiplicative():
    f = [m for m in catalog_morphisms() if m.name == "heisenberg shear"][0]
    qs = quotient(f.source, squares_ideal(f.source))
    fbar = induced_lie_map(f, qs, qs)
    ug = EnvelopingAlgebra(qs.lie)
    for a, b in product(ug.basis(2), repeat=2):
        lhs = ug_map(ug, ug, fbar, ug.mul(w(*a), w(*b)))
        rhs = ug.mul(ug_map(ug, ug, fbar, w(*a)), ug_map(ug, ug, fbar, w(*b)))
        assert lhs == rhs


words3 = st.lists(st.integers(0, 2), max_size=3).map(tuple)


@settings(max_examples=60, deadline=None)
@given(words3, words3, words3)
def test_random_associativity(a, b, c):
    ug = EnvelopingAlgebra(catalog("sl2"))
    x = ug.normal(a)
    assert ug.mul(ug.mul(x, ug.normal(b)), ug.normal(c)) == ug.mul(x, ug.mul(ug.normal(b), ug.normal(c)))


def test_uea_wrapper(heis):
    X, Y = UEAElt(heis, w(0)), UEAElt(heis, w(1))
    assert (X * Y - Y * X) == UEAElt(heis, w(2))
    assert 2 * X == X + X
