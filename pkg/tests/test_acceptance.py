"""Acceptance battery: one test per criterion, each printing a single PASS/FAIL line."""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from rackbialg.defcohom import (Cochain, coderivation_space, differential, equivalent, is_cocycle, random_cochain,
                                verify_relations, witness_consistent)
from rackbialg.envelope import EnvelopingAlgebra, act_on_sym, quotient_rep
from rackbialg.foundation import HPoly, add_into
from rackbialg.leibniz import LeibnizAlgebra, catalog, catalog_names, leibniz_violations, left_center, quotient, \
    squares_ideal
from rackbialg.lodpir import TensorRack, f_identity_check, gamma_checks
from rackbialg.rackcore import (dihedral_rack, from_finite_rack, sym_coalgebra, trivial_product, uar_rack,
                                verify_rack_axioms, yang_baxter_check)
from rackbialg.starprod import (PolyFun, deformed_rack, exp_compat_check, poisson_relation_check, scaling_check,
                                star)
from rackbialg.symcoalg import SymElt, coproduct as sym_coproduct, monomials


@pytest.fixture
def verdict(capsys):
    def report(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail
    return report


def test_criterion_01_leibniz(verdict):
    t = time.perf_counter()
    bad_catalog = [n for n in catalog_names() if leibniz_violations(catalog(n))]
    planted = LeibnizAlgebra(2, {(0, 1, 0): 1}, check=False)
    triples = [v[:3] for v in leibniz_violations(planted)]
    wall = time.perf_counter() - t
    ok = not bad_catalog and triples[:1] == [(1, 2, 2)] and wall < 1
    verdict(1, ok, f"catalog valid={not bad_catalog}, planted fails at {triples[:1]}, {wall:.2f}s")


def test_criterion_02_uar(verdict):
    t = time.perf_counter()
    failed = []
    runs = 0
    for name in catalog_names():
        h = catalog(name)
        if h.dim > 4:
            continue
        for k in (1, 2, 3):
            R = uar_rack(h, k)
            runs += 1
            if not verify_rack_axioms(R).passed:
                failed.append((name, k, "axioms"))
            if not R.table_equal(uar_rack(h, k, z=left_center(h))):
                failed.append((name, k, "z-dependence"))
    wall = time.perf_counter() - t
    verdict(2, not failed and wall < 60, f"{runs} UAR instances, failures {failed}, {wall:.1f}s")


def _omega_checks(name):
    g = catalog(name)
    ug = EnvelopingAlgebra(g)
    rep = quotient_rep(quotient(g, squares_ideal(g)))
    bad = 0
    for deg in range(4):
        for m in monomials(g.dim, deg):
            if len(m) != deg:
                continue
            a = SymElt(g.dim, {m: 1})
            rhs = {}
            for (m1, m2), c in sym_coproduct(a).items():
                for k1, x in ug.omega(SymElt(g.dim, {m1: 1})).items():
                    for k2, y in ug.omega(SymElt(g.dim, {m2: 1})).items():
                        rhs[(k1, k2)] = rhs.get((k1, k2), 0) + c * x * y
            bad += ug.coproduct(ug.omega(a)) != {k: v for k, v in rhs.items() if v}
            for i in range(g.dim):
                bad += ug.omega(act_on_sym({(i,): 1}, a, rep)) != ug.adjoint({(i,): 1}, ug.omega(a))
    half = {}
    add_into(half, ug.mul({(0,): 1}, {(1,): 1}), Fraction(1, 2))
    add_into(half, ug.mul({(1,): 1}, {(0,): 1}), Fraction(1, 2))
    bad += ug.omega(SymElt(g.dim, {(0, 1): 1})) != half
    return bad


def test_criterion_03_symmetrisation(verdict):
    bad = {name: _omega_checks(name) for name in ("heisenberg", "sl2")}
    verdict(3, not any(bad.values()), f"ω failures up to filtration 3: {bad}")


def test_criterion_04_star(verdict):
    sq2 = catalog("sq2")
    a1 = PolyFun.coord(2, 0)
    r = star(sq2, a1, a1)
    first = r.terms == {(0, 1): HPoly.hbar()}
    bad = [n for n in catalog_names()
           if not poisson_relation_check(catalog(n), samples=100, seed=0).passed
           or not scaling_check(catalog(n), 3, 3).passed]
    verdict(4, first and not bad, f"α1▷α1 = ħα2: {first}, failing algebras {bad}")


def test_criterion_05_exp_compat(verdict):
    bad = []
    for name in ("sq2", "heisenberg"):
        h = catalog(name)
        basis = [tuple(int(i == j) for i in range(h.dim)) for j in range(h.dim)]
        for x in basis:
            for y in basis:
                if not exp_compat_check(h, x, y, 4, 4).passed:
                    bad.append((name, x, y))
    verdict(5, not bad, f"exp compatibility failures (M = D = 4): {bad}")


def test_criterion_06_deformation_complex(verdict):
    t = time.perf_counter()
    instances = [(f"trivial S({n})_(1)", trivial_product(sym_coalgebra(catalog(n).dim, 1)))
                 for n in catalog_names() if catalog(n).dim <= 3 and n.startswith("abelian")]
    instances += [(f"UAR_(1)({n})", uar_rack(catalog(n), 1)) for n in ("sq2", "heisenberg")]
    bad = []
    for label, R in instances:
        for n in (1, 2):
            rep = verify_relations(R, n)
            bad += [(label, n, c.name) for c in rep.checks if not c.passed]
    wall = time.perf_counter() - t
    verdict(6, not bad and wall < 300, f"{len(instances)} instances, n = 1, 2, failures {bad}, {wall:.1f}s")


def test_criterion_07_infinitesimal(verdict):
    R = trivial_product(sym_coalgebra(2, 1))
    D = deformed_rack(catalog("sq2"), 1)
    table = {t: {k: c.coefficient(1) for k, c in v.items() if c.coefficient(1)} for t, v in D.mu.items()}
    mu1 = Cochain(R, 2, table)
    valid = mu1.is_coderivation() and is_cocycle(mu1) and not mu1.is_zero()
    b1 = coderivation_space(R, 1)
    recovered = 0
    for seed in range(20):
        alpha = random_cochain(b1, random.Random(seed))
        nu = mu1 + differential(alpha)
        w = equivalent(nu, mu1, b1)
        recovered += w is not None and differential(w) == nu - mu1 and witness_consistent(nu, mu1, w)
    verdict(7, valid and recovered == 20, f"μ1 cocycle: {valid}, witnesses recovered {recovered}/20")


def test_criterion_08_yang_baxter(verdict):
    cases = {"K[R3]": from_finite_rack(dihedral_rack(3)), "K[R5]": from_finite_rack(dihedral_rack(5)),
             "UAR_(1)(sq2)": uar_rack(catalog("sq2"), 1)}
    res = {k: yang_baxter_check(B).passed for k, B in cases.items()}
    verdict(8, all(res.values()), f"braid relation {res}")


def test_criterion_09_loday_pirashvili(verdict):
    res = {}
    for name in ("sq2", "heisenberg"):
        h = catalog(name)
        fid = f_identity_check(TensorRack(h).g, 3).passed
        gm = gamma_checks(h, 2, 2)["Γ(b▷b') = Γ(b)▷'Γ(b')"].passed
        res[name] = fid and gm
    verdict(9, all(res.values()), f"F identity and Γ morphism {res}")


def test_criterion_10_cli_determinism(verdict, tmp_path):
    outs = []
    for tag in ("a", "b"):
        path = tmp_path / f"{tag}.json"
        proc = subprocess.run([sys.executable, "-m", "rackbialg.cli", "report", "--input", "catalog:sq2",
                               "--input", "catalog:heisenberg", "--output", str(path)], capture_output=True)
        outs.append((proc.returncode, path.read_bytes()))
    same = outs[0][1] == outs[1][1]
    verdict(10, same and outs[0][0] == 0, f"byte-identical reports: {same}, exit {outs[0][0]}")
