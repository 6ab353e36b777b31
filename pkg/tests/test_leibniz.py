from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from rackbialg.errors import IdealOutOfRange, IdentityViolation, UnknownName
from rackbialg.foundation import ExactMatrix
from rackbialg.leibniz import (LeibnizAlgebra, LeibnizMorphism, LieAlgebra, Subspace, abelian, catalog,
                               catalog_morphisms, catalog_names, hemi, hemi_module, image_subspace,
                               is_two_sided_ideal, jacobi_violations, leibniz_violations, left_center,
                               quotient, quotient_lie, squares_ideal, validate)


def brute_violations(dim, c):
    # independent dense evaluation of [x,[y,z]] - [[x,y],z] - [y,[x,z]]
    def br(u, v):
        out = [Fraction(0)] * dim
        for (i, j, k), val in c.items():
            out[k] += u[i] * v[j] * val
        return out

    e = [[Fraction(int(a == b)) for b in range(dim)] for a in range(dim)]
    bad = []
    for i, j, k in product(range(dim), repeat=3):
        x, y, z = e[i], e[j], e[k]
        lhs = br(x, br(y, z))
        rhs = [a + b for a, b in zip(br(br(x, y), z), br(y, br(x, z)))]
        if lhs != rhs:
            bad.append((i + 1, j + 1, k + 1))
    return bad


def test_validate_examples():
    h = validate(2, {(0, 0, 1): 1})
    assert h.bracket((1, 0), (1, 0)) == (0, 1)
    validate(3, {})
    with pytest.raises(IdentityViolation) as err:
        validate(2, {(0, 1, 0): 1})
    assert err.value.triples[0][:3] == (1, 2, 2)


def test_invalid_example_triples():
    c = {(0, 1, 0): 1}
    h = LeibnizAlgebra(2, c, check=False)
    found = [t[:3] for t in leibniz_violations(h)]
    assert found == brute_violations(2, c) == [(1, 2, 2)]
    # the other candidate triple is fine: both sides vanish
    assert (1, 1, 2) not in found


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_valid(name):
    h = catalog(name)
    assert leibniz_violations(h) == []
    assert brute_violations(h.dim, dict(h.c)) == []
    assert squares_ideal(h) <= left_center(h)
    for z in (squares_ideal(h), left_center(h)):
        assert is_two_sided_ideal(h, z)
        g, p = quotient_lie(h, z)
        assert g.is_lie() and jacobi_violations(g) == []


def test_catalog_entries():
    sq2 = catalog("sq2")
    assert sq2.dim == 2 and sq2.bracket_basis(0, 0) == {1: 1}
    assert catalog("abelian3").table == {}
    heis = catalog("heisenberg")
    assert heis.bracket_basis(0, 1) == {2: 1} and isinstance(heis, LieAlgebra)
    with pytest.raises(UnknownName):
        catalog("nope")
    # a non-nilpotent, non-Lie example of dim 3
    j = catalog("jordan3")
    assert j.dim == 3 and not j.is_lie() and j.bracket_basis(0, 1)


def test_ideals():
    sq2 = catalog("sq2")
    assert squares_ideal(sq2).basis == [(0, 1)]
    assert left_center(sq2).basis == [(0, 1)]
    assert squares_ideal(catalog("sl2")).dim == 0
    assert squares_ideal(abelian(3)).dim == 0
    assert left_center(abelian(2)).dim == 2
    assert left_center(catalog("heisenberg")).basis == [(0, 0, 1)]


def test_quotients():
    g, p = quotient_lie(catalog("sq2"), Subspace(2, [(0, 1)]))
    assert g.dim == 1 and g.table == {}
    assert p.to_rows() == [[1, 0]]
    heis = catalog("heisenberg")
    g, p = quotient_lie(heis, Subspace.zero(3))
    assert g.table == heis.table and p == ExactMatrix.identity(3)
    g, _ = quotient_lie(abelian(2), Subspace(2, [(0, 1)]))
    assert g.dim == 1
    with pytest.raises(IdealOutOfRange):
        quotient(catalog("sq2"), Subspace.zero(2))


def test_json_roundtrip():
    for name in catalog_names():
        h = catalog(name)
        assert LeibnizAlgebra.from_json(h.to_json()) == h
    data = {"dim": 2, "c": [[1, 1, 2, "1/3"]]}
    h = LeibnizAlgebra.from_json(data)
    assert h.bracket_basis(0, 0) == {1: Fraction(1, 3)}


@pytest.mark.parametrize("f", catalog_morphisms(), ids=lambda f: f.name)
def test_morphisms_preserve_squares(f):
    assert image_subspace(f, squares_ideal(f.source)) <= squares_ideal(f.target)


def test_morphism_rejects_non_bracket_map():
    with pytest.raises(IdentityViolation):
        LeibnizMorphism(catalog("sq2"), catalog("sq2"), ExactMatrix.from_rows([[1, 0], [0, 2]]))


def test_hemi_bracket():
    hs = hemi(catalog("sq2"))
    # basis e1, e2, p(e1); p(e1) acts on h like e1 does
    assert hs.bracket_basis(2, 0) == {1: 1}
    assert hs.bracket_basis(0, 2) == {}
    assert squares_ideal(hs) <= left_center(hs)


mats = st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=2)


@settings(max_examples=40)
@given(mats)
def test_hemi_module_always_leibniz(m):
    h = hemi_module(abelian(1), [m])
    assert leibniz_violations(h) == []
    assert squares_ideal(h) <= left_center(h)
    g, _ = quotient_lie(h, squares_ideal(h))
    assert jacobi_violations(g) == []
