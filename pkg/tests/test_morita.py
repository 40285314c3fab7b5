"""Grading, lambda tables, normalisation and the Morita-triviality verdict.

Oracles: adjoint subrings and grading groups of the bundled rings (the su2_k
even/odd split, the pointed rings), the closed-form transformation law of
extracted tables under diagonal twists (the canonical table is all ones and
twists multiply by f_k/(f_i f_j)), and hand-built tables that satisfy the
raising/lowering identities exactly yet fail one specific normalisation
stage.  The filtration is recomputed independently by iterated fusion with
the handle set.
"""

import numpy as np
import pytest

from mfckit import ValidationError
from mfckit.algebra import (AlgebraObject, induce_frobenius, transport,
                            unit_algebra)
from mfckit.category import FusionRing
from mfckit.centre import doubled, r_functor, z_unit
from mfckit.morita import (FusionTreeOmega, LambdaTable,
                           MORITA_TRIVIAL_VERDICT, classify, extract_lambda,
                           graft, grading, isomorphism_residual,
                           lambda_of_tree, normalize, object_twist,
                           witness_tree)


def fermion_pair(C, f):
    one = np.ones((1, 1, 1), dtype=complex)
    mult = np.zeros(C.n, dtype=int)
    mult[0] = 1
    mult[f] = 1
    mu = {(0, 0, 0): one, (0, f, f): one, (f, 0, f): one, (f, f, 0): one}
    return AlgebraObject(C, mult, mu, np.ones(1, dtype=complex))


def even_su2_6_ring(cat):
    """Even labels of su2_6: the first ring in the bundle with filtration
    depth 2 (label 3 needs two handle factors)."""
    full = cat("su2_6").ring
    evens = [0, 2, 4, 6]
    N = full.N[np.ix_(evens, evens, evens)]
    return FusionRing([str(j) for j in evens], [0, 1, 2, 3], N)


def all_ones_table(ring, overrides=None):
    lower, upper = {}, {}
    for i in range(ring.n):
        for j in range(ring.n):
            for k in ring.fuse(i, j):
                lower[(i, j, int(k))] = 1.0 + 0j
                upper[(i, j, int(k))] = 1.0 + 0j
    for key, (lo, up) in (overrides or {}).items():
        lower[key] = lo
        upper[key] = up
    return LambdaTable(ring, lower, upper, 1.0 + 0j, 1.0 + 0j)


def random_twist(C, seed):
    rng = np.random.default_rng(seed)
    return np.exp(rng.normal(size=C.n) + 1j * rng.normal(size=C.n))


# -- grading ---------------------------------------------------------------

def test_grading_oracles(cat):
    expect = {
        "trivial": ((0,), 1, 0),
        "semion": ((0,), 2, 0),
        "ising": ((0, 1), 2, 1),
        "fibonacci": ((0, 1), 1, 1),
        "su2_1": ((0,), 2, 0),
        "su2_2": ((0, 2), 2, 1),
        "su2_3": ((0, 2), 2, 1),
        "su2_4": ((0, 2, 4), 2, 1),
    }
    for name, (iad, ord_g, depth) in expect.items():
        g = grading(cat(name).ring)
        assert g.I_ad == iad, name
        assert g.G.n == ord_g, name
        assert g.N == depth, name
        # evens in the neutral class, odds in the other, for the su2 family
        if name.startswith("su2"):
            assert all(g.partition[i] == i % 2 for i in range(cat(name).n))


def test_grading_partition_is_homomorphism(cat):
    for name in ("ising", "su2_3", "su2_4", "fibonacci"):
        ring = cat(name).ring
        g = grading(ring)
        ii, jj, kk = np.nonzero(ring.N)
        assert np.all(g.G.table[g.partition[ii], g.partition[jj]]
                      == g.partition[kk]), name


def test_filtration_monotone_and_independent(cat):
    # recompute R^(m) by iterated fusion with the handle set and compare
    for ring in (cat("ising").ring, cat("su2_4").ring, even_su2_6_ring(cat)):
        g = grading(ring)
        handles = set()
        for m in range(ring.n):
            handles.update(int(x) for x in ring.fuse(m, int(ring.dual[m])))
        reach = {0}
        previous = set()
        for depth in range(g.N + 2):
            expected = {i for i in g.I_ad if g.n[i] <= depth}
            assert reach == expected, depth
            assert previous <= reach
            previous, nxt = reach, set(reach)
            for i in reach:
                for h in handles:
                    nxt.update(int(k) for k in ring.fuse(i, h))
            reach = nxt
        assert previous == reach == set(g.I_ad)   # stabilised at N


def test_deep_filtration_and_witness_trees(cat):
    ring = even_su2_6_ring(cat)
    g = grading(ring)
    assert g.I_ad == (0, 1, 2, 3) and g.G.n == 1
    assert g.n == {0: 0, 1: 1, 2: 1, 3: 2} and g.N == 2
    assert witness_tree(g, 0).node == 0
    assert witness_tree(g, 1).node == (1, 1, 1)
    assert witness_tree(g, 2).node == (2, 1, 1)
    t3 = witness_tree(g, 3)
    assert t3.node == (3, (1, 1, 1), (2, 1, 1))
    assert t3.root_label == 3 and t3.leaves() == [1, 1, 1, 1]
    assert t3.vertices() == [(1, 2, 3), (1, 1, 1), (1, 1, 2)]
    t3.check_admissible(ring)


def test_witness_trees_admissible_everywhere(all_bundled):
    for C in all_bundled:
        g = grading(C.ring)
        for i in g.I_ad:
            t = witness_tree(g, i)
            assert t.root_label == i
            t.check_admissible(C.ring)
            if g.n[i] > 0:
                assert len(t.leaves()) == 2 * g.n[i]
    with pytest.raises(ValidationError, match="not in the adjoint"):
        witness_tree(grading(C.ring), C.n + 5)


def test_grading_rejects_inconsistent_rings():
    # a*b = a + b joins the would-be classes {a} and {b}
    N = np.zeros((3, 3, 3), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[0, 2, 2] = N[2, 0, 2] = 1
    N[1, 1, 0] = N[2, 2, 0] = 1
    N[1, 2, 1] = N[1, 2, 2] = N[2, 1, 1] = N[2, 1, 2] = 1
    ring = FusionRing(["1", "a", "b"], [0, 1, 2], N)
    with pytest.raises(ValidationError, match="joins distinct classes"):
        grading(ring)
    # a*b = 1 forces a non-associative class table
    N2 = np.zeros((3, 3, 3), dtype=np.int64)
    N2[0, 0, 0] = N2[0, 1, 1] = N2[1, 0, 1] = N2[0, 2, 2] = N2[2, 0, 2] = 1
    N2[1, 1, 0] = N2[2, 2, 0] = 1
    N2[1, 2, 0] = N2[2, 1, 0] = 1
    ring2 = FusionRing(["1", "a", "b"], [0, 1, 2], N2)
    with pytest.raises(ValidationError, match="inconsistent grading"):
        grading(ring2)


# -- trees and tables ------------------------------------------------------

def test_graft_multiplicative_for_tree_values(cat):
    ring = even_su2_6_ring(cat)
    g = grading(ring)
    rng = np.random.default_rng(23)
    lower, upper = {}, {}
    for i in range(ring.n):
        for j in range(ring.n):
            for k in ring.fuse(i, j):
                lower[(i, j, int(k))] = 1.0 + 0j
                upper[(i, j, int(k))] = np.exp(rng.normal()
                                               + 1j * rng.normal())
    table = LambdaTable(ring, lower, upper, 1.0, 1.0)
    t3 = witness_tree(g, 3)
    sub = witness_tree(g, 1)
    for pos in range(4):                      # every leaf of t3 carries 1
        joined = graft(t3, pos, sub)
        assert lambda_of_tree(table, joined) == pytest.approx(
            lambda_of_tree(table, t3) * lambda_of_tree(table, sub))
    # bare leaf grafts are neutral
    assert graft(t3, 0, FusionTreeOmega(1)).node == t3.node
    with pytest.raises(ValidationError, match="position out of range"):
        graft(t3, 9, sub)
    with pytest.raises(ValidationError, match="label mismatch"):
        graft(t3, 0, witness_tree(g, 2))


def test_tree_value_errors():
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = 1
    ring = FusionRing(["1", "s"], [0, 1], N)
    table = all_ones_table(ring)
    with pytest.raises(ValidationError, match="inadmissible tree vertex"):
        lambda_of_tree(table, FusionTreeOmega((1, 1, 1)))


def test_lambda_table_validation():
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = N[1, 1, 1] = 2
    N[0, 0, 0] = 1
    ring = FusionRing(["1", "x"], [0, 1], N)
    with pytest.raises(ValidationError, match="multiplicity-free"):
        LambdaTable(ring, {}, {}, 1.0, 1.0)
    N2 = np.zeros((2, 2, 2), dtype=np.int64)
    N2[0, 0, 0] = N2[0, 1, 1] = N2[1, 0, 1] = N2[1, 1, 0] = 1
    ring2 = FusionRing(["1", "s"], [0, 1], N2)
    with pytest.raises(ValidationError, match="keys disagree"):
        LambdaTable(ring2, {(0, 0, 0): 1.0}, {(0, 0, 0): 1.0}, 1.0, 1.0)


def test_apply_f_transformation_law(cat):
    ring = cat("ising").ring
    table = all_ones_table(ring)
    f = np.array([2.0, -1.0, 0.5j])
    out = table.apply_f(f)
    for (i, j, k), v in out.lower.items():
        assert v == pytest.approx(f[k] / (f[i] * f[j]))
        assert out.upper[(i, j, k)] == pytest.approx(f[i] * f[j] / f[k])
    assert out.eta0 == pytest.approx(2.0) and out.eps0 == pytest.approx(0.5)
    assert max(out.invariant_residuals().values()) < 1e-12
    back = out.apply_f(1.0 / f)
    assert back.max_deviation_from_one() < 1e-12


# -- extraction ------------------------------------------------------------

def test_extract_lambda_canonical_is_all_ones(cat):
    for name in ("trivial", "semion", "ising", "fibonacci", "su2_3"):
        t = extract_lambda(z_unit(cat(name)))
        assert t.max_deviation_from_one() < 1e-12, name
        assert max(t.invariant_residuals().values()) < 1e-12


def test_extract_lambda_twist_law(cat):
    C = cat("ising")
    Z = z_unit(C).algebra
    f = np.array([1.0, -1.0, 1.0j])
    T = extract_lambda(transport(Z, object_twist(C, f)))
    for (i, j, k), v in T.lower.items():
        assert v == pytest.approx(f[k] / (f[i] * f[j]))
        assert T.upper[(i, j, k)] == pytest.approx(f[i] * f[j] / f[k])
    # the sigma sigma -> psi channel is invariant under this particular twist
    assert T.lower[(2, 2, 1)] == pytest.approx(1.0)
    assert T.eta0 == pytest.approx(f[0]) and T.eps0 == pytest.approx(1 / f[0])


def test_extract_lambda_rejections(cat):
    C = cat("ising")
    with pytest.raises(ValidationError, match="doubled"):
        extract_lambda(unit_algebra(C))
    R = r_functor(induce_frobenius(fermion_pair(C, 1)))
    with pytest.raises(ValidationError, match="object pattern mismatch"):
        extract_lambda(R)
    Zt = transport(z_unit(C).algebra, object_twist(C, random_twist(C, 3)))
    Zt.mu[sorted(Zt.mu)[2]] = np.zeros((1, 1, 1), dtype=complex)
    with pytest.raises(ValidationError, match="vanishing structure constant"):
        extract_lambda(Zt)


# -- normalisation ---------------------------------------------------------

def test_normalize_identity(cat):
    C = cat("ising")
    g = grading(C.ring)
    f, final, cert = normalize(extract_lambda(z_unit(C)), g)
    assert cert["passed"] and cert["failed_stage"] is None
    assert np.allclose(f, 1.0)
    assert final.max_deviation_from_one() < 1e-12
    assert [s["stage"] for s in cert["stages"]] == [
        "input_invariants", "unit_channels", "adjoint_handle_trees",
        "grading_transversal", "cocycle_coboundary"]
    assert all(s["applied"] and s["passed"] for s in cert["stages"])
    assert np.allclose(cert["f_total"], f)
    assert cert["cocycle"].gamma is not None
    assert max(cert["cocycle"].residuals().values()) < 1e-12


def test_normalize_round_trips_seeded(cat):
    for name in ("semion", "ising", "fibonacci", "su2_3", "su2_4"):
        C = cat(name)
        Z = z_unit(C).algebra
        g = grading(C.ring)
        for seed in (5, 6, 7):
            f0 = random_twist(C, seed)
            Zt = transport(Z, object_twist(C, f0))
            f, final, cert = normalize(extract_lambda(Zt), g)
            assert cert["passed"], (name, seed, cert["failed_check"])
            assert final.max_deviation_from_one() < 1e-8
            assert isomorphism_residual(Zt, f) < 1e-8, (name, seed)


def test_normalize_tracks_isomorphism_class_stagewise(cat):
    C = cat("ising")
    Z = z_unit(C).algebra
    Zt = transport(Z, object_twist(C, random_twist(C, 11)))
    g = grading(C.ring)
    table = extract_lambda(Zt)
    f, final, cert = normalize(table, g)
    cum = np.ones(C.n, dtype=complex)
    cur = table
    for s in cert["stages"]:
        assert s["applied"]
        cum = cum * s["f"]
        cur = cur.apply_f(s["f"])
        redo = extract_lambda(transport(Zt, object_twist(C, cum)))
        for key, v in cur.lower.items():
            assert abs(v - redo.lower[key]) < 1e-10, (s["stage"], key)
        for key, v in cur.upper.items():
            assert abs(v - redo.upper[key]) < 1e-10, (s["stage"], key)
    assert np.max(np.abs(cum - f)) < 1e-12


def test_inversion_relation_after_handle_stage(cat):
    # after the unit and adjoint stages the dual triple is the reciprocal
    for name, seed in (("su2_3", 2), ("su2_4", 9)):
        C = cat(name)
        dual = C.ring.dual
        Zt = transport(z_unit(C).algebra,
                       object_twist(C, random_twist(C, seed)))
        g = grading(C.ring)
        f, final, cert = normalize(extract_lambda(Zt), g)
        cum = np.ones(C.n, dtype=complex)
        for s in cert["stages"]:
            if s["stage"] in ("input_invariants", "unit_channels",
                              "adjoint_handle_trees"):
                cum = cum * s["f"]
        mid = extract_lambda(Zt).apply_f(cum)
        for (i, j, k), v in mid.upper.items():
            w = mid.upper[(int(dual[i]), int(dual[j]), int(dual[k]))]
            assert abs(v * w - 1.0) < 1e-10, (name, (i, j, k))


def test_normalize_failure_unit_counit(cat):
    ring = cat("trivial").ring
    t = LambdaTable(ring, {(0, 0, 0): 1.0 + 0j}, {(0, 0, 0): 0.5 + 0j},
                    eta0=1.0, eps0=2.0)
    assert max(t.invariant_residuals().values()) < 1e-12
    f, final, cert = normalize(t, grading(ring))
    assert not cert["passed"]
    assert cert["failed_stage"] == "unit_channels"
    assert cert["failed_check"] == "unit_counit_scalars"
    assert "cocycle" not in cert


def test_normalize_failure_handle_pair(cat):
    # lower = upper = c at the tau tau tau vertex satisfies the identities
    # for any c, but the handle-pair product forces c^2 = 1
    ring = cat("fibonacci").ring
    t = all_ones_table(ring, {(1, 1, 1): (1.3 + 0j, 1.3 + 0j)})
    assert max(t.invariant_residuals().values()) < 1e-12
    f, final, cert = normalize(t, grading(ring))
    assert not cert["passed"]
    assert cert["failed_stage"] == "adjoint_handle_trees"
    assert cert["failed_check"] == "handle_pair_products"


def test_normalize_accepts_sign_twist(cat):
    # c = -1 in the same channel is the twist by f = (1, -1)
    ring = cat("fibonacci").ring
    t = all_ones_table(ring, {(1, 1, 1): (-1.0 + 0j, -1.0 + 0j)})
    f, final, cert = normalize(t, grading(ring))
    assert cert["passed"]
    assert np.allclose(f, [1.0, -1.0])
    assert final.max_deviation_from_one() < 1e-12


def test_normalize_failure_commutativity(cat):
    ring = cat("ising").ring
    t = all_ones_table(ring)
    t.lower[(1, 2, 2)] = 2.0 + 0j
    f, final, cert = normalize(t, grading(ring))
    assert not cert["passed"]
    assert cert["failed_stage"] == "input_invariants"
    assert cert["failed_check"] == "commutativity"
    assert not cert["stages"][0]["applied"]


def test_normalize_failure_class_constancy(cat):
    # consistent sign pattern on the {1,2,3} triples of su2_4 that is not a
    # coboundary: the two channels of 2 x 1 then disagree in the odd class
    ring = cat("su2_4").ring
    keys = [(2, 1, 3), (1, 2, 3), (2, 3, 1), (3, 2, 1), (3, 1, 2), (1, 3, 2)]
    t = all_ones_table(ring, {k: (-1.0 + 0j, -1.0 + 0j) for k in keys})
    assert max(t.invariant_residuals().values()) < 1e-12
    f, final, cert = normalize(t, grading(ring))
    assert not cert["passed"]
    assert cert["failed_stage"] == "grading_transversal"
    assert cert["failed_check"] == "transversal_well_defined"
    assert cert["stages"][-1]["checks"]["transversal_well_defined"] \
        == pytest.approx(2.0)


def test_normalize_cocycle_solver_failure_is_certified(cat, monkeypatch):
    import mfckit.morita as morita

    def boom(G, omega, tol=1e-9):
        raise ValidationError("forced failure", residual=0.5)

    monkeypatch.setattr(morita, "solve_symmetric_coboundary", boom)
    C = cat("ising")
    g = grading(C.ring)
    f, final, cert = normalize(extract_lambda(z_unit(C)), g)
    assert not cert["passed"]
    assert cert["failed_stage"] == "cocycle_coboundary"
    assert cert["failed_check"] == "coboundary_solve"
    assert cert["cocycle"].gamma is None


def test_normalize_rejects_foreign_grading(cat):
    g = grading(cat("ising").ring)
    t = all_ones_table(cat("fibonacci").ring)
    with pytest.raises(ValidationError, match="different ring"):
        normalize(t, g)


# -- the verdict -----------------------------------------------------------

def test_classify_unit_algebra(cat):
    out = classify(unit_algebra(cat("ising")))
    assert out["morita_trivial"] and out["verdict"] == MORITA_TRIVIAL_VERDICT
    assert out["centre_passed"] and out["normalize_passed"]
    assert not out["hypothesis_fails"]
    assert np.allclose(out["f"], 1.0)
    assert [(a["genus"], a["commutant_dim"]) for a in out["audit"]] \
        == [(1, 1), (2, 1)]
    assert out["grading"]["group_order"] == 2 and out["grading"]["N"] == 1
    assert out["audit_genus_max"] == 2

    out = classify(unit_algebra(cat("su2_1")))
    assert out["morita_trivial"] and not out["hypothesis_fails"]
    assert all(a["irreducible"] for a in out["audit"])


def test_classify_fermion_pairs(cat):
    root = np.exp(-0.25j * np.pi)
    out = classify(induce_frobenius(fermion_pair(cat("ising"), 1)))
    assert out["morita_trivial"] and not out["hypothesis_fails"]
    assert np.allclose(out["f"], [1.0, -1.0, root], atol=1e-8)
    out = classify(induce_frobenius(fermion_pair(cat("su2_2"), 2)),
                   genus_cap=1)
    assert out["morita_trivial"]
    assert np.allclose(out["f"], [1.0, root, -1.0], atol=1e-8)


def test_classify_su2_4_flags_reducible_genus_one(cat):
    out = classify(unit_algebra(cat("su2_4")), genus_cap=1)
    assert out["morita_trivial"]            # the isomorphism still exists
    assert out["hypothesis_fails"]          # but genus 1 is reducible
    assert out["audit"] == [
        {"genus": 1, "dim": 5, "commutant_dim": 2, "irreducible": False}]


def test_classify_rejections(cat):
    Cd = doubled(cat("semion"))
    with pytest.raises(ValidationError, match="base category"):
        classify(unit_algebra(Cd))
    C = cat("ising")
    mult = np.zeros(C.n, dtype=int)
    mult[0] = 2
    blk = np.zeros((2, 2, 2), dtype=complex)
    blk[0, 0, 0] = 1
    blk[1, 1, 1] = 1
    A = induce_frobenius(AlgebraObject(C, mult, {(0, 0, 0): blk},
                                       np.ones(2, dtype=complex)))
    with pytest.raises(ValidationError, match="simple non-degenerate"):
        classify(A)
