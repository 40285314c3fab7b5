"""Mapping-class-group representation tests.

Oracles: genus-1 matrices against the category's modular data, total
dimensions against the independent sum_j (D/d_j)^(2g-2) formula, fixed-space
dimensions on doubled categories against the known modular-invariant counts.
"""

import numpy as np
import pytest

from mfckit import ValidationError
from mfckit.mcg import (GenusRep, build_rep, commutant_dim, commutant_info,
                        invariant_subspace, is_irreducible)


def verlinde_dim(cat, g):
    if g == 0:
        return 1
    return int(round(sum((cat.D / cat.d[j]) ** (2 * g - 2)
                         for j in range(cat.n)).real))


def test_trivial_category_all_generators_are_one(cat):
    C = cat("trivial")
    for g in (1, 2, 3):
        rep = build_rep(C, g)
        assert rep.dim == 1
        assert len(rep.generators) == 3 * g - 1
        for M in rep.generators.values():
            assert np.allclose(M, np.eye(1))
        assert is_irreducible(rep)


def test_genus_zero_is_degenerate(cat):
    rep = build_rep(cat("ising"), 0)
    assert rep.dim == 1
    assert rep.generators == {}
    assert is_irreducible(rep)


def test_dimension_matches_verlinde_formula(cat):
    for name, genera in [("ising", (1, 2, 3)), ("fibonacci", (1, 2)),
                         ("semion", (1, 2)), ("su2_3", (1, 2))]:
        C = cat(name)
        for g in genera:
            assert build_rep(C, g).dim == verlinde_dim(C, g)


def test_ising_genus_one_matrices(cat):
    C = cat("ising")
    rep = build_rep(C, 1)
    assert rep.dim == 3
    assert rep.multis == [(0,), (1,), (2,)]
    T = rep.generators["T_alpha_1"]
    assert np.allclose(T, np.diag([1.0, -1.0, np.exp(1j * np.pi / 8)]))
    S = rep.generators["S_1"]
    assert np.allclose(S, C.smat / C.D, atol=1e-12)


def test_genus_one_equals_modular_data(cat):
    for name in ("semion", "fibonacci", "su2_2", "su2_4"):
        C = cat(name)
        rep = build_rep(C, 1)
        assert np.allclose(rep.generators["T_alpha_1"], np.diag(C.theta))
        assert np.allclose(rep.generators["S_1"], C.smat / C.D, atol=1e-11)


def test_genus_one_s_squared_is_charge_conjugation(cat):
    for name in ("ising", "semion", "su2_3"):
        C = cat(name)
        S = build_rep(C, 1).generators["S_1"]
        Cmat = np.zeros((C.n, C.n))
        for i in range(C.n):
            Cmat[int(C.ring.dual[i]), i] = 1.0
        assert np.allclose(S @ S, Cmat, atol=1e-11)


def test_modular_relation_st_cubed_proportional_s_squared(cat):
    for name in ("ising", "fibonacci", "semion", "su2_3"):
        rep = build_rep(cat(name), 1)
        S = rep.generators["S_1"]
        T = rep.generators["T_alpha_1"]
        A = np.linalg.matrix_power(S @ T, 3)
        B = S @ S
        c = A[0, 0] / B[0, 0]
        assert abs(abs(c) - 1.0) < 1e-10
        assert np.allclose(A, c * B, atol=1e-10)


def test_ising_genus_two_structure(cat):
    C = cat("ising")
    rep = build_rep(C, 2)
    assert rep.dim == 10
    assert len(rep.generators) == 5
    assert set(rep.generators) == {"T_alpha_1", "T_alpha_2", "T_gamma_1",
                                   "S_1", "S_2"}
    # summand dims: one tree unless both handles carry sigma
    assert len(rep.block_basis[(2, 2)]) == 2
    assert len(rep.block_basis[(0, 1)]) == 1
    for name, M in rep.generators.items():
        assert np.linalg.cond(M) < 1e8, name


def test_genus_two_s1_preserves_second_handle(cat):
    rep = build_rep(cat("ising"), 2)
    S1 = rep.generators["S_1"]
    for a in range(rep.dim):
        for b in range(rep.dim):
            if abs(S1[a, b]) > 1e-12:
                assert rep.summand_of[a][1] == rep.summand_of[b][1]


def test_genus_two_gamma_twist_eigenvalues(cat):
    C = cat("ising")
    rep = build_rep(C, 2)
    o = rep.offset[(2, 2)]
    blk = rep.generators["T_gamma_1"][o:o + 2, o:o + 2]
    # strands 2,3 carry (sigma, sigma); channels 1 and psi
    ev = sorted(np.linalg.eigvals(blk).real)
    assert np.allclose(ev, [-1.0, 1.0], atol=1e-12)


def test_alpha_twists_are_diagonal_theta(cat):
    C = cat("fibonacci")
    rep = build_rep(C, 2)
    for k in (1, 2):
        M = rep.generators["T_alpha_%d" % k]
        expect = np.diag([C.theta[mi[k - 1]] for mi in rep.summand_of])
        assert np.allclose(M, expect)


def test_commutant_is_one_for_small_categories(cat):
    for name, g in [("su2_1", 1), ("su2_1", 2), ("ising", 1), ("ising", 2),
                    ("fibonacci", 2), ("semion", 2)]:
        rep = build_rep(cat(name), g)
        info = commutant_info(rep)
        assert info["dim"] == 1, (name, g)
        assert info["smallest_kept_sv"] > 1e-3
        assert is_irreducible(rep)


def test_commutant_dim_is_basis_independent(cat):
    rep = build_rep(cat("ising"), 2)
    rng = np.random.default_rng(7)
    X = rng.normal(size=(rep.dim, rep.dim)) \
        + 1j * rng.normal(size=(rep.dim, rep.dim))
    Q, _ = np.linalg.qr(X)
    gens = {k: Q @ M @ Q.conj().T for k, M in rep.generators.items()}
    twisted = GenusRep(rep.category, rep.genus, rep.multis, rep.offset,
                       rep.block_basis, rep.summand_of, gens)
    assert commutant_dim(twisted) == commutant_dim(rep) == 1


def test_doubled_factorization_at_genus_two(cat):
    # V(C x C^rev) = V(C) (x) conj(V(C)) equivariantly, so when the chiral
    # rep is irreducible, Schur leaves exactly one joint fixed vector in the
    # double, and the commutant grows beyond 1 (trivial summand plus rest).
    base = build_rep(cat("semion"), 2)
    dub = build_rep(cat("semion_doubled"), 2)
    assert dub.dim == base.dim ** 2
    assert commutant_dim(base) == 1
    assert invariant_subspace(dub).shape[1] == 1
    assert commutant_dim(dub) > 1


def test_fixed_space_dims_on_doubled_categories(cat):
    for name, expect in [("semion_doubled", 1), ("ising_doubled", 1),
                         ("su2_2_doubled", 1), ("su2_4_doubled", 2)]:
        rep = build_rep(cat(name), 1)
        B = invariant_subspace(rep)
        assert B.shape[1] == expect, name
        for M in rep.generators.values():
            assert np.linalg.norm(M @ B - B) < 1e-8
        # columns orthonormal
        assert np.allclose(B.conj().T @ B, np.eye(expect), atol=1e-10)


def test_diagonal_invariant_lies_in_fixed_space(cat):
    C = cat("su2_4_doubled")
    rep = build_rep(C, 1)
    B = invariant_subspace(rep)
    nb = int(round(np.sqrt(C.n)))
    v = np.zeros(rep.dim, dtype=complex)
    for i in range(nb):
        v[rep.offset[(i * nb + i,)]] = 1.0
    v /= np.linalg.norm(v)
    resid = np.linalg.norm(v - B @ (B.conj().T @ v))
    assert resid < 1e-8


def test_undoubled_chiral_category_has_no_fixed_vector(cat):
    # semion T-eigenvalues are not 1 on all summands, so nothing is fixed
    rep = build_rep(cat("semion"), 1)
    assert invariant_subspace(rep).shape[1] == 0


def test_dimension_cap_enforced(cat):
    with pytest.raises(ValidationError, match="cap"):
        build_rep(cat("ising"), 2, cap_dim=5)
    rep = build_rep(cat("ising"), 2, cap_dim=10)
    assert rep.dim == 10
