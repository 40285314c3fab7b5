"""Algebra objects in a skeletal braided category.

An algebra A = (+)_i m_i . i is stored through its multiplicities and the
structure constants of mu: A (x) A -> A over fusion channels,

    mu[(i, j, k)][a, b, c]   component  i_a (x) j_b -> k_c,

together with the unit component eta in the m_0-dimensional unit slot.  A
coproduct/counit pair (delta, eps) is optional; when present the object is
treated as a Frobenius algebra and the Frobenius property is enforced at
construction time.  delta uses the same channel keys as mu,

    delta[(i, j, k)][a, b, c]   component  k_c -> i_a (x) j_b.

All residual checks are phrased against the left-comb conventions of the
tree engine, so the F-matrix placement below is the single source of truth
shared with `engine`.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .category import CategoryData, ValidationError, load_bundled, load_category, \
    deligne_product

__all__ = [
    "AlgebraObject", "PhiPairing", "check_algebra", "eps_candidate", "phi",
    "is_nondegenerate", "induce_frobenius", "predicates", "is_haploid",
    "is_simple", "simple_dim", "delta_separability_residual", "special_fit",
    "symmetry_residual", "frobenius_residual", "check_modular_invariant",
    "correlator", "atop_checks", "algebra_to_doc", "algebra_from_doc",
    "save_algebra", "load_algebra", "unit_algebra", "transport",
]

DEFAULT_TOL = 1e-9


def _as_key(key):
    i, j, k = key
    return (int(i), int(j), int(k))


class AlgebraObject:
    """Algebra (optionally Frobenius) over a CategoryData instance."""

    def __init__(self, category, mult, mu, eta, delta=None, eps=None,
                 tol=DEFAULT_TOL, validate=True):
        if not isinstance(category, CategoryData):
            raise ValidationError("algebra requires CategoryData")
        self.category = category
        self.tol = float(tol)
        self.mult = np.asarray(mult, dtype=np.int64)
        if self.mult.shape != (category.n,):
            raise ValidationError("multiplicity vector has wrong length")
        if np.any(self.mult < 0):
            raise ValidationError("negative multiplicity")
        if self.mult[0] < 1:
            raise ValidationError("algebra has no unit slot (m_0 = 0)")
        self.mu = self._scrub(mu, "mu")
        self.eta = np.asarray(eta, dtype=complex).reshape(-1)
        if self.eta.shape != (int(self.mult[0]),):
            raise ValidationError("unit component has wrong length")
        self.delta = None if delta is None else self._scrub(delta, "delta")
        self.eps = None if eps is None else np.asarray(eps, dtype=complex).reshape(-1)
        if self.eps is not None and self.eps.shape != (int(self.mult[0]),):
            raise ValidationError("counit component has wrong length")
        if (self.delta is None) != (self.eps is None):
            raise ValidationError("delta and eps must be supplied together")
        self.supp = [i for i in range(category.n) if self.mult[i] > 0]
        if validate:
            rep = check_algebra(self)
            for key in ("associativity", "unitality"):
                if rep[key] > self.tol:
                    raise ValidationError("algebra %s residual" % key, (),
                                          rep[key])
            if self.is_frobenius:
                res = frobenius_residual(self)
                if res > self.tol:
                    raise ValidationError("Frobenius property residual", (), res)

    def _scrub(self, tensors, what):
        C = self.category
        out = {}
        for key, arr in tensors.items():
            i, j, k = _as_key(key)
            if not C.ring.N[i, j, k]:
                raise ValidationError("%s component on inadmissible channel" % what,
                                      (i, j, k))
            shape = (int(self.mult[i]), int(self.mult[j]), int(self.mult[k]))
            if 0 in shape:
                continue
            a = np.asarray(arr, dtype=complex)
            if a.shape != shape:
                raise ValidationError("%s component has wrong shape" % what,
                                      (i, j, k))
            if np.any(a != 0):
                out[(i, j, k)] = a
        return out

    @property
    def is_frobenius(self):
        return self.delta is not None

    def mu_at(self, i, j, k):
        """mu component as an array, zeros when absent."""
        arr = self.mu.get((int(i), int(j), int(k)))
        if arr is None:
            return np.zeros((int(self.mult[i]), int(self.mult[j]),
                             int(self.mult[k])), dtype=complex)
        return arr

    def delta_at(self, i, j, k):
        arr = (self.delta or {}).get((int(i), int(j), int(k)))
        if arr is None:
            return np.zeros((int(self.mult[i]), int(self.mult[j]),
                             int(self.mult[k])), dtype=complex)
        return arr

    def dim(self):
        """Categorical dimension sum_i m_i d_i."""
        return complex(np.dot(self.mult, self.category.d))

    def __repr__(self):
        pattern = "+".join("%d.%s" % (self.mult[i], self.category.ring.labels[i])
                           for i in self.supp)
        return "AlgebraObject(%s over %r%s)" % (
            pattern, self.category.name,
            ", frobenius" if self.is_frobenius else "")


def unit_algebra(category):
    """The unit object with its trivial algebra structure."""
    mult = np.zeros(category.n, dtype=np.int64)
    mult[0] = 1
    one = np.ones((1, 1, 1), dtype=complex)
    return AlgebraObject(category, mult, {(0, 0, 0): one}, np.ones(1),
                         delta={(0, 0, 0): one}, eps=np.ones(1))


# -- residual checks ---------------------------------------------------------

def _assoc_like_residual(A, comp):
    """max |mu-associativity defect| with components supplied by `comp`.

    comp(i, j, k) must return the (m_i, m_j, m_k) component of the checked
    bilinear map; using A.mu_at gives associativity of the product itself.
    Both bracketings are compared channel-wise through the F-matrix:
    stacking L[e] = comp(i,j,e).comp(e,k,l) over rows e and
    R[f] = comp(j,k,f).comp(i,f,l) over columns f, the identity reads
    F^T L = R blockwise.
    """
    C = A.category
    supp = A.supp
    res = 0.0
    for i in supp:
        for j in supp:
            ij = [int(e) for e in C.ring.fuse(i, j)]
            for k in supp:
                outs = sorted({int(l) for e in ij for l in C.ring.fuse(e, k)})
                for l in outs:
                    if A.mult[l] == 0:
                        continue
                    rows, cols, M = C.f_matrix(i, j, k, l)
                    mi, mj, mk, ml = (int(A.mult[t]) for t in (i, j, k, l))
                    L = np.zeros((len(rows), mi, mj, mk, ml), dtype=complex)
                    for r, e in enumerate(rows):
                        if A.mult[e] == 0:
                            continue
                        L[r] = np.einsum("abx,xcd->abcd", comp(i, j, e),
                                         comp(e, k, l))
                    R = np.zeros((len(cols), mi, mj, mk, ml), dtype=complex)
                    for s, f in enumerate(cols):
                        if A.mult[f] == 0:
                            continue
                        R[s] = np.einsum("bcx,axd->abcd", comp(j, k, f),
                                         comp(i, f, l))
                    dev = np.einsum("ef,e...->f...", M, L) - R
                    if dev.size:
                        res = max(res, float(np.max(np.abs(dev))))
    return res


def check_algebra(A, tol=None):
    """Residual report: associativity, unitality, commutativity.

    Commutativity (mu o c_{A,A} = mu) is reported but never enforced; the
    braiding enters through the channel scalars R(i,j,k).
    """
    C = A.category
    res_u = 0.0
    for j in A.supp:
        eye = np.eye(int(A.mult[j]))
        left = np.einsum("g,gab->ab", A.eta, A.mu_at(0, j, j)) - eye
        right = np.einsum("g,agb->ab", A.eta, A.mu_at(j, 0, j)) - eye
        res_u = max(res_u, float(np.max(np.abs(left))),
                    float(np.max(np.abs(right))))
    res_c = 0.0
    for (i, j, k), arr in A.mu.items():
        flipped = C.R(i, j, k) * A.mu_at(j, i, k).transpose(1, 0, 2)
        res_c = max(res_c, float(np.max(np.abs(arr - flipped))))
    for (i, j, k) in list((A.mu or {}).keys()):
        if (j, i, k) not in A.mu:
            res_c = max(res_c, float(np.max(np.abs(A.mu[(i, j, k)]))))
    return {
        "associativity": _assoc_like_residual(A, A.mu_at),
        "unitality": res_u,
        "commutativity": res_c,
    }


def frobenius_residual(A):
    """max residual of counitality and of both Frobenius-property identities.

    With Delta expressed in left-comb components the two identities read,
    for inputs (x, y), outputs (u, v) and every middle channel t:

      sum_c mu[x,y,t] delta[u,v,t] = sum_{w,g} F(u,w,y;t)[x,v]
                                       delta[u,w,x] mu[w,y,v]
      sum_c mu[x,y,t] delta[u,v,t] = sum_{w,g} Finv(x,w,v;t)[y,u]
                                       delta[w,v,y] mu[x,w,u]
    """
    if not A.is_frobenius:
        raise ValidationError("no Frobenius data on this algebra")
    C = A.category
    res = 0.0
    for j in A.supp:
        eye = np.eye(int(A.mult[j]))
        left = np.einsum("g,gbc->bc", A.eps, A.delta_at(0, j, j)) - eye
        right = np.einsum("g,bgc->bc", A.eps, A.delta_at(j, 0, j)) - eye
        res = max(res, float(np.max(np.abs(left))), float(np.max(np.abs(right))))
    supp = A.supp
    for x in supp:
        for y in supp:
            ts = [int(t) for t in C.ring.fuse(x, y)]
            for u in supp:
                for v in supp:
                    for t in ts:
                        if not C.ring.N[u, v, t]:
                            continue
                        lhs = np.einsum("abc,efc->abef", A.mu_at(x, y, t),
                                        A.delta_at(u, v, t))
                        r1 = np.zeros_like(lhs)
                        for w in supp:
                            fac = C.F(u, w, y, t, x, v)
                            if fac == 0.0:
                                continue
                            r1 += fac * np.einsum("ega,gbf->abef",
                                                  A.delta_at(u, w, x),
                                                  A.mu_at(w, y, v))
                        r2 = np.zeros_like(lhs)
                        for w in supp:
                            fac = C.Finv(x, w, v, t, y, u)
                            if fac == 0.0:
                                continue
                            r2 += fac * np.einsum("gfb,age->abef",
                                                  A.delta_at(w, v, y),
                                                  A.mu_at(x, w, u))
                        res = max(res, float(np.max(np.abs(lhs - r1))),
                                  float(np.max(np.abs(lhs - r2))))
    return res


# -- pairing and induced Frobenius structure ---------------------------------

def eps_candidate(A):
    """Counit candidate: the loop-closed trace of left multiplication.

    Component gamma is sum_a d_a tr(mu[(0,a,a)][gamma]); closing the a-strand
    contributes the categorical dimension in the engine gauge.
    """
    C = A.category
    out = np.zeros(int(A.mult[0]), dtype=complex)
    for a in A.supp:
        out += C.d[a] * np.trace(A.mu_at(0, a, a), axis1=1, axis2=2)
    return out


class PhiPairing:
    """The pairing morphism A -> A* in per-label blocks.

    blocks[i] has shape (m_ibar, m_i): the (beta, alpha) entry pairs slot
    (i, alpha) against slot (ibar, beta) through eps o mu and the cap
    normalisation xtilde_i.
    """

    def __init__(self, algebra, blocks, eps_used):
        self.algebra = algebra
        self.blocks = blocks
        self.eps_used = eps_used

    def smallest_sv(self):
        vals = []
        for i in self.algebra.supp:
            blk = self.blocks[i]
            if blk.shape[0] != blk.shape[1]:
                return 0.0
            vals.append(float(np.linalg.svd(blk, compute_uv=False).min())
                        if blk.size else 0.0)
        return min(vals) if vals else 0.0

    def is_nondegenerate(self, tol=1e-9):
        return self.smallest_sv() > tol

    def inverse_block(self, i):
        return np.linalg.inv(self.blocks[int(i)])


def phi(A, eps=None):
    """Pairing A -> A* from mu, a counit vector and the duality caps.

    By default the counit candidate is used, which is the normalisation
    under which a Frobenius structure induced by `induce_frobenius` has its
    symmetry isomorphism equal to this pairing.
    """
    C = A.category
    eps_used = eps_candidate(A) if eps is None else np.asarray(eps, dtype=complex)
    blocks = {}
    for i in A.supp:
        ib = int(C.ring.dual[i])
        blocks[i] = C.xtilde[i] * np.einsum("abg,g->ba", A.mu_at(i, ib, 0),
                                            eps_used)
    return PhiPairing(A, blocks, eps_used)


def is_nondegenerate(A, tol=1e-9):
    return phi(A).is_nondegenerate(tol)


def induce_frobenius(A, tol=None):
    """Fill in (delta, eps) for a non-degenerate algebra.

    eps is the counit candidate (the unique counit whose symmetry
    isomorphism reproduces the pairing `phi`); delta is then solved from the
    linear system made of counitality and both Frobenius-property
    identities, followed by a full residual verification.
    """
    tol = A.tol if tol is None else float(tol)
    C = A.category
    pairing = phi(A)
    if not pairing.is_nondegenerate(max(tol, 1e-12)):
        raise ValidationError("pairing is singular; no Frobenius structure",
                              (), pairing.smallest_sv())
    eps = pairing.eps_used

    keys = []
    offs = {}
    total = 0
    for i in A.supp:
        for j in A.supp:
            for k in C.ring.fuse(i, j):
                k = int(k)
                if A.mult[k] == 0:
                    continue
                key = (i, j, k)
                offs[key] = total
                total += int(A.mult[i] * A.mult[j] * A.mult[k])
                keys.append(key)

    rows = []
    rhs = []
    m0 = int(A.mult[0])
    # counitality
    for j in A.supp:
        mj = int(A.mult[j])
        for b in range(mj):
            for c in range(mj):
                r = np.zeros(total, dtype=complex)
                key = (0, j, j)
                if key in offs:
                    for g in range(m0):
                        flat = (g * mj + b) * mj + c
                        r[offs[key] + flat] += eps[g]
                rows.append(r)
                rhs.append(1.0 if b == c else 0.0)
                r = np.zeros(total, dtype=complex)
                key = (j, 0, j)
                if key in offs:
                    for g in range(m0):
                        flat = (b * m0 + g) * mj + c
                        r[offs[key] + flat] += eps[g]
                rows.append(r)
                rhs.append(1.0 if b == c else 0.0)

    supp = A.supp
    for x in supp:
        for y in supp:
            ts = [int(t) for t in C.ring.fuse(x, y)]
            for u in supp:
                for v in supp:
                    for t in ts:
                        if not C.ring.N[u, v, t]:
                            continue
                        mx, my, mu_, mv = (int(A.mult[s]) for s in (x, y, u, v))
                        mt = int(A.mult[t])
                        muxy = A.mu_at(x, y, t)
                        for a in range(mx):
                            for b in range(my):
                                for e in range(mu_):
                                    for f in range(mv):
                                        # identity 1: mu.delta = F-weighted
                                        r = np.zeros(total, dtype=complex)
                                        key = (u, v, t)
                                        if key in offs and mt:
                                            for c in range(mt):
                                                flat = (e * mv + f) * mt + c
                                                r[offs[key] + flat] += muxy[a, b, c]
                                        for w in supp:
                                            fac = C.F(u, w, y, t, x, v)
                                            if fac == 0.0:
                                                continue
                                            mw = int(A.mult[w])
                                            mwys = A.mu_at(w, y, v)
                                            key = (u, w, x)
                                            if key not in offs:
                                                continue
                                            for g in range(mw):
                                                flat = (e * mw + g) * mx + a
                                                r[offs[key] + flat] -= \
                                                    fac * mwys[g, b, f]
                                        rows.append(r)
                                        rhs.append(0.0)
                                        # identity 2: mirrored bracketing
                                        r = np.zeros(total, dtype=complex)
                                        key = (u, v, t)
                                        if key in offs and mt:
                                            for c in range(mt):
                                                flat = (e * mv + f) * mt + c
                                                r[offs[key] + flat] += muxy[a, b, c]
                                        for w in supp:
                                            fac = C.Finv(x, w, v, t, y, u)
                                            if fac == 0.0:
                                                continue
                                            mw = int(A.mult[w])
                                            mxwu = A.mu_at(x, w, u)
                                            key = (w, v, y)
                                            if key not in offs:
                                                continue
                                            for g in range(mw):
                                                flat = (g * mv + f) * my + b
                                                r[offs[key] + flat] -= \
                                                    fac * mxwu[a, g, e]
                                        rows.append(r)
                                        rhs.append(0.0)

    Amat = np.array(rows, dtype=complex)
    bvec = np.array(rhs, dtype=complex)
    sol, _, rank, _ = np.linalg.lstsq(Amat, bvec, rcond=None)
    resid = float(np.max(np.abs(Amat @ sol - bvec))) if len(rows) else 0.0
    if resid > max(tol, 1e-9) * 10:
        raise ValidationError("Frobenius solve did not converge", (), resid)
    delta = {}
    for key in keys:
        mi, mj, mk = (int(A.mult[t]) for t in key)
        blk = sol[offs[key]:offs[key] + mi * mj * mk].reshape(mi, mj, mk)
        if np.any(np.abs(blk) > 1e-14):
            delta[key] = blk
    return AlgebraObject(A.category, A.mult, A.mu, A.eta, delta=delta,
                         eps=eps, tol=max(A.tol, 1e-8), validate=True)


# -- predicates ---------------------------------------------------------------

def delta_separability_residual(A):
    """max |mu o delta - id| over support blocks."""
    res = 0.0
    for k in A.supp:
        mk = int(A.mult[k])
        acc = np.zeros((mk, mk), dtype=complex)
        for (i, j, kk), dl in (A.delta or {}).items():
            if kk != k:
                continue
            acc += np.einsum("abc,abd->cd", dl, A.mu_at(i, j, k))
        res = max(res, float(np.max(np.abs(acc - np.eye(mk)))))
    return res


def special_fit(A):
    """(zeta, residual) with mu o delta ~ zeta id; eps o eta reported too."""
    num = 0.0 + 0j
    den = 0
    blocks = {}
    for k in A.supp:
        mk = int(A.mult[k])
        acc = np.zeros((mk, mk), dtype=complex)
        for (i, j, kk), dl in (A.delta or {}).items():
            if kk != k:
                continue
            acc += np.einsum("abc,abd->cd", dl, A.mu_at(i, j, k))
        blocks[k] = acc
        num += np.trace(acc)
        den += mk
    zeta = num / den if den else 0.0
    res = 0.0
    for k, acc in blocks.items():
        res = max(res, float(np.max(np.abs(acc - zeta * np.eye(acc.shape[0])))))
    eps_eta = complex(np.dot(A.eps, A.eta)) if A.eps is not None else None
    return complex(zeta), res, eps_eta


def symmetry_residual(A):
    """Deviation of the pairing eps o mu from rotation invariance.

    Rotating one leg of a two-point pairing through the ribbon structure
    multiplies the (i, ibar -> 0) component by theta_i R(i, ibar, 0) and
    transposes the slots; for a symmetric Frobenius algebra the pairing is
    invariant under this rotation.
    """
    if A.eps is None:
        raise ValidationError("symmetry check needs a counit")
    C = A.category
    res = 0.0
    for i in A.supp:
        ib = int(C.ring.dual[i])
        p = np.einsum("abg,g->ab", A.mu_at(i, ib, 0), A.eps)
        q = np.einsum("bag,g->ab", A.mu_at(ib, i, 0), A.eps)
        rot = C.theta[i] * C.R(i, ib, 0) * q
        res = max(res, float(np.max(np.abs(p - rot))))
    return res


def is_haploid(A):
    return int(A.mult[0]) == 1


def simple_dim(A, rank_tol=1e-8):
    """Dimension of the space of A-A-bimodule endomorphisms of A."""
    offs = {}
    total = 0
    for y in A.supp:
        offs[y] = total
        total += int(A.mult[y]) ** 2
    rows = []
    for (i, j, k), m in A.mu.items():
        mi, mj, mk = m.shape
        for a in range(mi):
            for b in range(mj):
                for dd in range(mk):
                    # left action commutes: f(mu(x,y)) = mu(x, f(y))
                    r = np.zeros(total, dtype=complex)
                    for c in range(mk):
                        r[offs[k] + dd * mk + c] += m[a, b, c]
                    for b2 in range(mj):
                        r[offs[j] + b2 * mj + b] -= m[a, b2, dd]
                    rows.append(r)
                    # right action commutes: f(mu(x,y)) = mu(f(x), y)
                    r = np.zeros(total, dtype=complex)
                    for c in range(mk):
                        r[offs[k] + dd * mk + c] += m[a, b, c]
                    for a2 in range(mi):
                        r[offs[i] + a2 * mi + a] -= m[a2, b, dd]
                    rows.append(r)
    if not rows:
        return total
    M = np.array(rows, dtype=complex)
    s = np.linalg.svd(M, compute_uv=False)
    cut = rank_tol * max(1.0, float(s.max()))
    return int(M.shape[1] - int(np.sum(s > cut)))


def is_simple(A, rank_tol=1e-8):
    return simple_dim(A, rank_tol) == 1


def predicates(A, tol=1e-8):
    """Flags: is_delta_separable, is_special, is_symmetric, is_haploid, is_simple."""
    out = {"is_haploid": is_haploid(A), "is_simple": is_simple(A)}
    if A.is_frobenius:
        sep = delta_separability_residual(A)
        zeta, sres, eps_eta = special_fit(A)
        out["is_delta_separable"] = sep <= tol
        out["is_special"] = sres <= tol and abs(zeta) > tol and \
            eps_eta is not None and abs(eps_eta) > tol
        out["is_symmetric"] = symmetry_residual(A) <= tol
    else:
        out["is_delta_separable"] = False
        out["is_special"] = False
        out["is_symmetric"] = False
    return out


# -- modular invariance and correlators ---------------------------------------

def _open_smove_matrix(C, y, ws, chirality=-1):
    """Punctured-torus S-move on the spaces C(1, w (x) wbar (x) ybar).

    Each space is one engine chain (w, y, 0); the move inserts the new pair,
    drags the old strand around it and caps, exactly as the closed handle
    move, with the extra ybar leaf riding along as a spectator.  Returns the
    matrix over `ws` in the engine basis normalisation.
    """
    from .engine import MorphismVector, _basis, s_loop
    dual = C.ring.dual
    yb = int(dual[y])
    vecs = {}
    for w in ws:
        fb = _basis(C, (w, int(dual[w]), yb))
        if len(fb) != 1:
            raise ValidationError(
                "S-invariance check needs a multiplicity-free category",
                (w, y))
        vecs[w] = MorphismVector(fb, np.ones(1, dtype=complex))
    M = np.zeros((len(ws), len(ws)), dtype=complex)
    for wi, w in enumerate(ws):
        for wj, wp in enumerate(ws):
            M[wj, wi] = s_loop(vecs[w], 1, wp, w,
                               chirality=chirality).coefficients[0]
    return M


def _open_smove_blocks(C, y):
    """Admissible labels and S-move matrix for boundary label y, cached.

    On a product category C (x) C^rev the braidings split, so the matrix is
    the Kronecker product of chiral blocks computed on the (much smaller)
    base category, with opposite handedness on the reversed factor.
    """
    cache = getattr(C, "_open_smove_cache", None)
    if cache is None:
        cache = C._open_smove_cache = {}
    if y in cache:
        return cache[y]
    dual = C.ring.dual
    prod = getattr(C, "_product_of", None)
    if prod is not None and prod[1]:
        base = prod[0]
        n = base.n
        yl, yr = C.label_pair(y)
        bdual = base.ring.dual
        wsl = [a for a in range(n) if base.ring.N[a, int(bdual[a]), yl]]
        wsr = [b for b in range(n) if base.ring.N[b, int(bdual[b]), yr]]
        M = np.kron(_open_smove_matrix(base, yl, wsl, chirality=-1),
                    _open_smove_matrix(base, yr, wsr, chirality=+1))
        ws = [a * n + b for a in wsl for b in wsr]
    else:
        ws = [w for w in range(C.n) if C.ring.N[w, int(dual[w]), y]]
        M = _open_smove_matrix(C, y, ws)
    cache[y] = (ws, M)
    return ws, M


def check_modular_invariant(B, tol=1e-8):
    """Residuals of the twist condition and of S-invariance of the product.

    theta_B = id is max |theta_y - 1| over the support.  S-invariance is
    checked in its open-boundary form: for every support label y, the
    coefficient family

        O_y[w, c] = sum_{a,b} Delta[(w, wbar, y)][a, b, c] Phi[wbar][a, b]

    over labels w with N(w, wbar; y) > 0 must be fixed by the punctured-torus
    S-move with spectator ybar.  At y = 0 this is invariance of the genus-1
    vector; the y != 0 components carry the rest of the defining condition,
    with the D^2/(d_i d_j) weight cancelling against the move's own
    coefficients.  Reported as max_y |(M_y - 1) O_y| / max |O|.
    """
    if not B.is_frobenius:
        B = induce_frobenius(B)
    C = B.category
    tres = 0.0
    for y in B.supp:
        tres = max(tres, float(abs(C.theta[y] - 1.0)))
    pairing = phi(B, eps=B.eps)
    dual = C.ring.dual
    dev = 0.0
    scale = 0.0
    for y in B.supp:
        my = int(B.mult[y])
        ws, M = _open_smove_blocks(C, y)
        if not ws:
            continue
        O = np.zeros((len(ws), my), dtype=complex)
        for wi, w in enumerate(ws):
            wb = int(dual[w])
            dblk = B.delta_at(w, wb, y)
            phb = pairing.blocks.get(wb)
            if phb is None or dblk.size == 0:
                continue
            O[wi, :] = np.einsum("abc,ab->c", dblk, phb)
        dev = max(dev, float(np.max(np.abs(M @ O - O))))
        scale = max(scale, float(np.max(np.abs(O))))
    sres = dev / scale if scale > 0 else 0.0
    return {
        "twist_residual": tres,
        "s_residual": sres,
        "passed": tres <= tol and sres <= tol,
        "multiplicities": {int(y): int(B.mult[y]) for y in B.supp},
    }


def correlator(B, g, rep=None, cap_dim=None):
    """Torus-chain invariant vector of a Frobenius algebra at genus g.

    Assembles the iterated coproduct of the unit along the left comb, then
    projects each handle pair (leaf 2l-1, leaf 2l) with the dual-basis
    embeddings and the pairing `phi` on the even strand.  Returns the
    stacked coefficient vector aligned with `mcg.build_rep(B.category, g)`;
    g = 0 returns the scalar eps o eta.
    """
    if not B.is_frobenius:
        B = induce_frobenius(B)
    if g == 0:
        return complex(np.dot(B.eps, B.eta))
    from .mcg import build_rep, DEFAULT_CAP_DIM
    if rep is None:
        rep = build_rep(B.category, g,
                        cap_dim=DEFAULT_CAP_DIM if cap_dim is None else cap_dim)
    pairing = phi(B, eps=B.eps)
    C = B.category
    dual = C.ring.dual
    vec = np.zeros(rep.dim, dtype=complex)
    for mi in rep.multis:
        if any(B.mult[K] == 0 or B.mult[int(dual[K])] == 0 for K in mi):
            continue
        fb = rep.block_basis[mi]
        leaves = fb.leaves
        off = rep.offset[mi]
        phis = [pairing.blocks[int(dual[K])] for K in mi]
        for tpos, chain in enumerate(fb.trees):
            if any(B.mult[e] == 0 for e in chain[:-1]):
                continue
            ok = True
            T = B.eta
            for m in range(2 * g, 1, -1):
                dl = (B.delta or {}).get((int(chain[m - 2]),
                                          int(leaves[m - 1]),
                                          int(chain[m - 1])))
                if dl is None:
                    ok = False
                    break
                T = np.tensordot(dl, T, axes=([2], [0]))
            if not ok:
                continue
            # T axes: (beta_1, ..., beta_{2g}); contract handle pairs
            for blk in phis:
                T = np.tensordot(blk, T, axes=([0, 1], [0, 1]))
            vec[off + tpos] = complex(T)
    return vec


# -- topological algebra -------------------------------------------------------

def atop_checks(A, tol=1e-10, rank_tol=1e-8):
    """Reports on the algebra of point insertions (the unit-slot algebra).

    Builds the pairing <x, y> = eps o mu(x, y) on the m_0-dimensional slot
    and the averaging map p(x) = mu(mu(e (x) x) (x) f) with delta o eta =
    e (x) f; checks p^2 = p, p(eta) = eta and self-adjointness of p for the
    pairing, plus the 1-dimensionality of Im(p) for simple algebras.
    """
    if not A.is_frobenius:
        raise ValidationError("atop checks need Frobenius data")
    C = A.category
    m0 = int(A.mult[0])
    gram = np.einsum("abg,g->ab", A.mu_at(0, 0, 0), A.eps)
    p = np.zeros((m0, m0), dtype=complex)
    for j in A.supp:
        jb = int(C.ring.dual[j])
        dl = (A.delta or {}).get((j, jb, 0))
        if dl is None:
            continue
        deta = np.einsum("bcg,g->bc", dl, A.eta)
        p += np.einsum("bc,bxe,ecg->gx", deta, A.mu_at(j, 0, j),
                       A.mu_at(j, jb, 0))
    idem = float(np.max(np.abs(p @ p - p)))
    unit = float(np.max(np.abs(p @ A.eta - A.eta)))
    adj = float(np.max(np.abs(p.T @ gram - gram @ p)))
    sv = np.linalg.svd(p, compute_uv=False) if m0 else np.zeros(0)
    cut = rank_tol * max(1.0, float(sv.max()) if sv.size else 0.0)
    image_dim = int(np.sum(sv > cut))
    eta_pair = complex(A.eta @ gram @ A.eta)
    simple = is_simple(A)
    passed = idem <= tol and unit <= tol and adj <= max(tol, 1e-8)
    if simple:
        passed = passed and image_dim == 1 and abs(eta_pair) > 1e-6
    return {
        "gram": gram,
        "gram_rank": int(np.linalg.matrix_rank(gram, tol=rank_tol)) if m0 else 0,
        "p": p,
        "idempotent_residual": idem,
        "unit_residual": unit,
        "adjoint_residual": adj,
        "image_dim": image_dim,
        "eta_pairing": eta_pair,
        "is_simple": simple,
        "passed": bool(passed),
    }


# -- transport along object automorphisms -------------------------------------

def transport(A, f):
    """Push the algebra structure along a block automorphism of the object.

    f maps label i to an invertible (m_i, m_i) matrix; the new structure is
    mu' = f o mu o (f^-1 (x) f^-1) and likewise for eta, delta, eps.  Being a
    conjugation it preserves all residuals exactly, so the result skips
    construction-time validation.
    """
    finv = {i: np.linalg.inv(np.asarray(f[i], dtype=complex)) for i in A.supp}
    mu = {}
    for (i, j, k), arr in A.mu.items():
        mu[(i, j, k)] = np.einsum("ax,by,abc,cz->xyz", finv[i], finv[j],
                                  arr, np.asarray(f[k], dtype=complex))
    eta = np.asarray(f[0], dtype=complex) @ A.eta
    delta = None
    eps = None
    if A.is_frobenius:
        delta = {}
        for (i, j, k), arr in A.delta.items():
            delta[(i, j, k)] = np.einsum("xa,yb,abc,zc->xyz",
                                         np.asarray(f[i], dtype=complex),
                                         np.asarray(f[j], dtype=complex),
                                         arr, finv[k])
        eps = A.eps @ finv[0]
    return AlgebraObject(A.category, A.mult, mu, eta, delta=delta, eps=eps,
                         tol=A.tol, validate=False)


# -- serialization -------------------------------------------------------------

def _sparse(tensors):
    rows = []
    for (i, j, k) in sorted(tensors.keys()):
        arr = tensors[(i, j, k)]
        mi, mj, mk = arr.shape
        for a in range(mi):
            for b in range(mj):
                for c in range(mk):
                    v = arr[a, b, c]
                    if v != 0:
                        rows.append([i, j, k, a, b, c,
                                     float(v.real), float(v.imag)])
    return rows


def _unsparse(rows):
    out = {}
    for i, j, k, a, b, c, re, im in rows:
        out.setdefault((int(i), int(j), int(k)), []).append(
            (int(a), int(b), int(c), complex(re, im)))
    return out


def algebra_to_doc(A):
    doc = {
        "category": A.category.name,
        "doubled": A.category._product_of is not None,
        "mult": [int(m) for m in A.mult],
        "mu": _sparse(A.mu),
        "eta": [[float(v.real), float(v.imag)] for v in A.eta],
    }
    if A.is_frobenius:
        doc["delta"] = _sparse(A.delta)
        doc["eps"] = [[float(v.real), float(v.imag)] for v in A.eps]
    return doc


def algebra_from_doc(doc, category=None, tol=DEFAULT_TOL, validate=True):
    if category is None:
        name = doc["category"]
        if doc.get("doubled"):
            base = name.split("(x)")[0]
            category = deligne_product(load_bundled(base), rev=True)
        elif os.path.exists(name):
            category = load_category(name)
        else:
            category = load_bundled(name)
    mult = np.asarray(doc["mult"], dtype=np.int64)

    def build(rows):
        out = {}
        for key, entries in _unsparse(rows).items():
            i, j, k = key
            arr = np.zeros((int(mult[i]), int(mult[j]), int(mult[k])),
                           dtype=complex)
            for a, b, c, v in entries:
                arr[a, b, c] = v
            out[key] = arr
        return out

    eta = np.array([complex(re, im) for re, im in doc["eta"]])
    delta = build(doc["delta"]) if "delta" in doc else None
    eps = np.array([complex(re, im) for re, im in doc["eps"]]) \
        if "eps" in doc else None
    return AlgebraObject(category, mult, build(doc["mu"]), eta, delta=delta,
                         eps=eps, tol=tol, validate=validate)


def save_algebra(A, path):
    with open(path, "w") as fh:
        json.dump(algebra_to_doc(A), fh, indent=1, sort_keys=True)


def load_algebra(path, category=None, tol=DEFAULT_TOL, validate=True):
    with open(path) as fh:
        doc = json.load(fh)
    return algebra_from_doc(doc, category=category, tol=tol, validate=validate)
