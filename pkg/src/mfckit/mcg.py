"""Projective mapping-class-group action on the genus-g state spaces.

V_g = C(1, i_1 (x) i_1bar (x) ... (x) i_g (x) i_gbar) summed over handle
labels (i_1, ..., i_g).  The 3g - 1 Lickorish generators act as

    T_alpha_k : scalar theta_{i_k} on each summand,
    T_gamma_k : twist of the adjacent strand pair (2k, 2k+1),
    S_k       : handle S-move, weight d_j/D times the closed-loop coefficient,

assembled from the tree-engine primitives.  The action is projective; all
consumers here (commutant dimension, fixed spaces on doubled categories) are
insensitive to the missing global phases.
"""

import numpy as np

from .category import ValidationError
from .engine import MorphismVector, _basis, pair_twist, s_loop

__all__ = ["GenusRep", "build_rep", "commutant_dim", "commutant_info",
           "invariant_subspace", "is_irreducible"]

DEFAULT_CAP_DIM = 10_000
DEFAULT_RANK_TOL = 1e-6


class GenusRep:
    """Generator matrices of the Mod_g action on V_g.

    Attributes
    ----------
    category : CategoryData
    genus : int
    dim : int
        Total dimension of V_g.
    multis : list of tuple
        Handle multi-indices (i_1, ..., i_g), lexicographic.
    offset : dict
        multi-index -> first global basis position of its summand.
    block_basis : dict
        multi-index -> FusionBasis of the summand.
    summand_of : list
        global basis position -> multi-index.
    generators : dict
        name -> dim x dim complex matrix; names are T_alpha_1..g,
        T_gamma_1..g-1, S_1..g.
    """

    def __init__(self, category, genus, multis, offset, block_basis,
                 summand_of, generators):
        self.category = category
        self.genus = genus
        self.multis = multis
        self.offset = offset
        self.block_basis = block_basis
        self.summand_of = summand_of
        self.generators = generators
        self.dim = len(summand_of)

    def generator_names(self):
        g = self.genus
        return (["T_alpha_%d" % k for k in range(1, g + 1)]
                + ["T_gamma_%d" % k for k in range(1, g)]
                + ["S_%d" % k for k in range(1, g + 1)])

    def __repr__(self):
        return "GenusRep(%s, g=%d, dim=%d)" % (
            self.category.name, self.genus, self.dim)


def _leaves(cat, mi):
    out = []
    for i in mi:
        out.append(int(i))
        out.append(int(cat.ring.dual[i]))
    return tuple(out)


def _block_dim(cat, mi):
    """Fusion-ring path count for the summand, without enumerating trees."""
    vec = np.zeros(cat.n, dtype=np.int64)
    vec[0] = 1
    for x in _leaves(cat, mi):
        vec = vec @ cat.ring.N[:, x, :]
    return int(vec[0])


def build_rep(C, g, cap_dim=DEFAULT_CAP_DIM):
    """Assemble the GenusRep of Mod_g on V_g; errors if dim exceeds cap_dim."""
    if g < 0:
        raise ValidationError("genus must be non-negative", (g,))
    if g == 0:
        return GenusRep(C, 0, [()], {(): 0}, {(): _basis(C, ())}, [()], {})

    multis = [tuple(mi) for mi in np.ndindex(*([C.n] * g))]
    dims = {}
    total = 0
    for mi in multis:
        dims[mi] = _block_dim(C, mi)
        total += dims[mi]
        if total > cap_dim:
            raise ValidationError(
                "V_g dimension exceeds cap", (g, cap_dim),
                residual=float(total))

    offset = {}
    block_basis = {}
    summand_of = []
    pos = 0
    for mi in multis:
        fb = _basis(C, _leaves(C, mi))
        if len(fb) != dims[mi]:
            raise ValidationError("tree count disagrees with ring count", mi)
        offset[mi] = pos
        block_basis[mi] = fb
        summand_of.extend([mi] * len(fb))
        pos += len(fb)

    gens = {}
    for k in range(1, g + 1):
        M = np.zeros((total, total), dtype=complex)
        for mi in multis:
            o, fb = offset[mi], block_basis[mi]
            M[o:o + len(fb), o:o + len(fb)] = \
                C.theta[mi[k - 1]] * np.eye(len(fb))
        gens["T_alpha_%d" % k] = M

    for k in range(1, g):
        M = np.zeros((total, total), dtype=complex)
        for mi in multis:
            o, fb = offset[mi], block_basis[mi]
            for t in range(len(fb)):
                e = np.zeros(len(fb), dtype=complex)
                e[t] = 1.0
                w = pair_twist(MorphismVector(fb, e), 2 * k)
                M[o:o + len(fb), o + t] = w.coefficients
        gens["T_gamma_%d" % k] = M

    for k in range(1, g + 1):
        M = np.zeros((total, total), dtype=complex)
        if g == 1:
            # handle pair forced into the vacuum channel; the closed-loop
            # shortcut is exact there and certified against s_loop by the
            # engine suite
            M[:, :] = C.smat / C.D
        else:
            for mi in multis:
                o, fb = offset[mi], block_basis[mi]
                i = mi[k - 1]
                for t in range(len(fb)):
                    e = np.zeros(len(fb), dtype=complex)
                    e[t] = 1.0
                    v = MorphismVector(fb, e)
                    for j in range(C.n):
                        w = s_loop(v, k, j, i)
                        mj = mi[:k - 1] + (j,) + mi[k:]
                        oj = offset[mj]
                        M[oj:oj + len(w.coefficients), o + t] += w.coefficients
        gens["S_%d" % k] = M

    return GenusRep(C, g, multis, offset, block_basis, summand_of, gens)


def _nullspace(A, rank_tol):
    """Orthonormal right null basis of A with a relative singular-value cut.

    The cut is rank_tol * max(1, largest SV); the unit floor keeps an exactly
    vanishing system (everything in the null space) well-defined.
    Returns (basis, smallest_discarded_sv, largest_kept_sv).
    """
    A = np.atleast_2d(A)
    ncol = A.shape[1]
    if A.shape[0] == 0 or not np.any(A):
        return np.eye(ncol, dtype=complex), None, 0.0
    u, s, vh = np.linalg.svd(A)
    cut = rank_tol * max(1.0, float(s.max()))
    rank = int(np.sum(s >= cut))
    smallest_kept = float(s[rank - 1]) if rank else None
    largest_dropped = float(s[rank]) if rank < len(s) else 0.0
    return np.conj(vh[rank:].T), smallest_kept, largest_dropped


def commutant_info(rep, rank_tol=DEFAULT_RANK_TOL):
    """Commutant dimension with the singular values bracketing the rank cut."""
    n = rep.dim
    gens = list(rep.generators.values())
    if not gens:
        return {"dim": 1, "smallest_kept_sv": None, "largest_dropped_sv": 0.0}
    eye = np.eye(n)
    rows = []
    for M in gens:
        rows.append(np.kron(M, eye) - np.kron(eye, M.T))
    A = np.vstack(rows)
    basis, kept, dropped = _nullspace(A, rank_tol)
    return {"dim": basis.shape[1], "smallest_kept_sv": kept,
            "largest_dropped_sv": dropped}


def commutant_dim(rep, rank_tol=DEFAULT_RANK_TOL):
    """dim {X : XM = MX for all generators M}; 1 means irreducible."""
    return commutant_info(rep, rank_tol)["dim"]


def invariant_subspace(rep, rank_tol=DEFAULT_RANK_TOL):
    """Orthonormal basis of the joint fixed space of all generators.

    Exact fixed vectors are only convention-independent when the projective
    phases cancel, i.e. for representations built on C (x) C^rev products;
    callers are responsible for passing such a rep.
    """
    B = np.eye(rep.dim, dtype=complex)
    for M in rep.generators.values():
        if B.shape[1] == 0:
            break
        ns, _, _ = _nullspace(M @ B - B, rank_tol)
        B = B @ ns
    return B


def is_irreducible(rep, rank_tol=DEFAULT_RANK_TOL):
    """True iff the commutant is one-dimensional (genus 0 is trivially true)."""
    return commutant_dim(rep, rank_tol) == 1
