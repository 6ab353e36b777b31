from fractions import Fraction
from itertools import product

import pytest

from rackbialg.envelope import EnvelopingAlgebra
from rackbialg.errors import InvalidRack, NotCoalgebraMorphism, NotEquivariant, NotEquivariantAugmentation
from rackbialg.leibniz import abelian, catalog, catalog_morphisms, catalog_names, left_center
from rackbialg.rackcore import (AugmentedRackBialgebra, FiniteGroup, FiniteRack, RackBialgebra,
                                conjugation_rack, dihedral_rack, from_augmented_rack, from_finite_rack,
                                functoriality_check, gauge, hopf_adjoint_rack, induced_rack_product,
                                sym_coalgebra, sym_index, trivial_product, uar, uar_rack, verify_augmented,
                                verify_rack_axioms, yang_baxter_check, yd_check)

SD = "self-distributivity"


def idx_of(B, m):
    return sym_index(B)[m]


def test_trivial_product():
    C = sym_coalgebra(2, 2)
    B = trivial_product(C)
    assert verify_rack_axioms(B).passed
    e1, e2, one = (idx_of(B, m) for m in [(0,), (1,), ()])
    assert B.prod_basis(e1, e2) == {}
    assert B.prod_basis(one, e2) == {e2: 1}
    assert B.prod_basis(e1, one) == {}
    assert yang_baxter_check(trivial_product(sym_coalgebra(2, 1))).passed


def test_uar_sq2_examples():
    B = uar_rack(catalog("sq2"), 2)
    e1, e2, e11 = (idx_of(B, m) for m in [(0,), (1,), (0, 0)])
    assert B.prod_basis(e1, e1) == {e2: 1}
    assert B.prod_basis(e11, e1) == {}
    rep = verify_rack_axioms(B)
    assert rep.passed
    # S(sq2)_(2) has 6 basis monomials, so 6^3 triples
    assert rep[SD].checked == 216


def test_abelian_uar_is_trivial():
    B = uar_rack(abelian(2), 2)
    assert B.table_equal(trivial_product(sym_coalgebra(2, 2)))


def test_mutation_is_located():
    B = uar_rack(catalog("sq2"), 2)
    e1, e2 = idx_of(B, (0,)), idx_of(B, (1,))
    bad = B.with_entry(e1, e1, {e1: 1, e2: 1})
    rep = verify_rack_axioms(bad)
    assert not rep.passed
    assert rep[SD].nfailed > 0 and rep[SD].failures[0][:3]


@pytest.mark.parametrize("name", [n for n in catalog_names() if catalog(n).dim <= 3])
def test_uar_independent_of_z(name):
    h = catalog(name)
    A = uar(h, 2)
    Az = uar(h, 2, z=left_center(h))
    assert induced_rack_product(A).table_equal(A.stored())
    assert induced_rack_product(Az).table_equal(A.stored())


def test_uar_augmented_structure():
    for name in ("sq2", "heisenberg", "jordan3"):
        A = uar(catalog(name), 1)
        assert verify_augmented(A).passed
        assert yd_check(A).passed


def test_gauge():
    B = uar_rack(catalog("sq2"), 1)
    one, e1, e2 = (idx_of(B, m) for m in [(), (0,), (1,)])
    assert gauge(B, [{one: 1}, {e1: 1}, {e2: 1}]).table_equal(B)
    G = gauge(B, [{one: 1}, {e1: 2}, {e2: 2}])
    assert G.prod_basis(e1, e1) == {e2: 2}
    assert verify_rack_axioms(G).passed
    with pytest.raises(NotEquivariant):
        gauge(B, [{one: 1}, {e1: 1}, {e2: 2}])
    with pytest.raises(NotCoalgebraMorphism):
        gauge(B, [{one: 1}, {e1: 1, one: 1}, {e2: 1}])


def test_dihedral_racks():
    X = dihedral_rack(3)
    assert X.op[0][1] == 2
    for n in (3, 5):
        B = from_finite_rack(dihedral_rack(n))
        assert verify_rack_axioms(B).passed
        assert yang_baxter_check(B).passed
    one = from_finite_rack(FiniteRack(1, [[0]], 0))
    assert one.dim == 1 and verify_rack_axioms(one).passed


def test_table_axioms_iff_bialgebra_axioms():
    X = dihedral_rack(3)
    op = [row[:] for row in X.op]
    op[0][1], op[0][2] = op[0][2], op[0][1]
    with pytest.raises(InvalidRack):
        FiniteRack(4, op, 3)
    # the same table as a bialgebra fails self-distributivity
    B = from_finite_rack(X)
    mu = dict(B.mu)
    mu[(0, 1)], mu[(0, 2)] = mu[(0, 2)], mu[(0, 1)]
    assert not verify_rack_axioms(RackBialgebra(B.coalgebra, mu)).passed


def test_yang_baxter_fails_for_associative_product():
    # a▷b = a·b in K[Z/3] (with the unit as identity) is associative, not self-distributive
    B0 = from_finite_rack(FiniteRack(3, [[b for b in range(3)] for _ in range(3)], 0))
    mu = {(a, b): {(a + b) % 3: Fraction(1)} for a in range(3) for b in range(3)}
    B = RackBialgebra(B0.coalgebra, mu, "group multiplication")
    assert not yang_baxter_check(B).passed


def test_conjugation_rack_s3():
    G = FiniteGroup.symmetric(3)
    X = conjugation_rack(G)
    action = [[G.conj(g, x) for x in range(G.size)] for g in range(G.size)]
    A = from_augmented_rack(X, G, action, list(range(G.size)))
    assert verify_augmented(A).passed
    assert yd_check(A).passed
    assert induced_rack_product(A).table_equal(A.stored())
    with pytest.raises(NotEquivariantAugmentation):
        p = list(range(G.size))
        p[1], p[2] = p[2], p[1]
        from_augmented_rack(X, G, action, p)


def test_hopf_adjoint_rack():
    ug = EnvelopingAlgebra(catalog("heisenberg"))
    A = hopf_adjoint_rack(ug, ug.basis(2))
    assert verify_augmented(A).passed
    B = induced_rack_product(A)
    assert verify_rack_axioms(B).passed
    # the induced product is the adjoint action
    for i, j in product(range(B.dim), repeat=2):
        ad = ug.adjoint({A.coalgebra.labels[i]: 1}, {A.coalgebra.labels[j]: 1})
        assert B.prod_basis(i, j) == {A.coalgebra.labels.index(k): c for k, c in ad.items()}


def test_yd_alternative_mutation():
    A = uar(catalog("sq2"), 1)

    def with_phi(table):
        return AugmentedRackBialgebra(A.coalgebra, A.hopf, lambda i: table[i], A.act_key, A.hopf_basis)

    # Φ = 1ε is still a valid augmentation (it intertwines trivially)
    counit = with_phi([{(): Fraction(1)}, {}, {}])
    assert yd_check(counit).passed and verify_augmented(counit).passed
    broken = with_phi([{(): Fraction(1)}, {(0,): Fraction(1)}, {(0,): Fraction(1)}])
    assert not yd_check(broken).passed
    assert not verify_augmented(broken)["Φ(h.a) = ad_h Φ(a)"].passed


@pytest.mark.parametrize("f", catalog_morphisms(), ids=lambda f: f.name)
def test_functoriality(f):
    assert functoriality_check(f, 2).passed


def test_coalgebra_validation():
    C = sym_coalgebra(2, 2)
    assert C.check().passed and C.is_cocommutative()
