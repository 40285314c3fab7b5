"""Fusion-tree bases of C(1, x_1 (x) ... (x) x_n) and diagram moves on them.

Conventions
-----------
Vectors live in the left-combed splitting-tree basis: a tree on leaves
(x_1, ..., x_n) is the chain of internal channels (e_1, ..., e_n) with
e_1 = x_1, e_{m+1} in supp(e_m (x) x_{m+1}) and e_n = 0 (the root is the
unit object).  Trees are enumerated lexicographically, so bases are
deterministic and matrices built from these ops are reproducible.

A single alternative shape is supported: `fused` at position p means slot p
of the chain holds the channel m of the adjacent pair (x_p (x) x_{p+1})
instead of e_p, with slot p+1 constrained to supp(e_{p-1} (x) m).  `f_move`
converts between the two shapes; the coefficients are the F-symbols

    w[m] = sum_e F(e_{p-1}, x_p, x_{p+1}; e_{p+1})[e, m] v[e].

Braiding of adjacent strands is F^{-1} R F in the pair channel.  Cups and
caps carry the duality gauge (phi_i, phitilde_i) with phi_i phitilde_i =
1/d_i; the default gauge phi_i = 1, phitilde_i = 1/d_i makes capping a
(j, jbar) pair that was just inserted multiply by d_j.

Strand and slot positions in the public API are 1-indexed.
"""

import numpy as np

from .category import ValidationError

__all__ = ["FusionBasis", "MorphismVector", "DualityGauge", "basis",
           "f_move", "braid", "twist_strand", "pair_twist", "extract_pair",
           "insert_pair", "s_loop", "closed_loop_value"]


class DualityGauge:
    """Per-label cup/cap normalisations (phi_i, phitilde_i).

    Only the product phi_i phitilde_i = 1/d_i is constrained; the default
    fixes phi_i = 1.
    """

    def __init__(self, category, phi, phi_tilde):
        phi = np.asarray(phi, dtype=complex)
        phi_tilde = np.asarray(phi_tilde, dtype=complex)
        if phi.shape != (category.n,) or phi_tilde.shape != (category.n,):
            raise ValidationError("gauge arrays must have one entry per label")
        res = float(np.max(np.abs(phi * phi_tilde - 1.0 / category.d)))
        if res > np.sqrt(category.tol):
            raise ValidationError("phi * phi_tilde != 1/d", residual=res)
        self.category = category
        self.phi = phi
        self.phi_tilde = phi_tilde

    @classmethod
    def default(cls, category):
        return cls(category, np.ones(category.n, dtype=complex),
                   1.0 / category.d)


class FusionBasis:
    """Ordered basis of C(1, x_1 (x) ... (x) x_n) in a fixed tree shape.

    Parameters
    ----------
    category : CategoryData
        Multiplicity-free skeletal data.
    leaves : sequence of int
        Label indices x_1 ... x_n.
    fused : int or None
        None for the left comb; p >= 1 if slot p carries the channel of the
        adjacent pair (x_p, x_{p+1}).

    Attributes
    ----------
    trees : list of tuple of int
        Lexicographically sorted internal chains.
    index : dict
        tree tuple -> position in `trees`.
    """

    def __init__(self, category, leaves, fused=None):
        if not category.ring.is_multiplicity_free():
            raise ValidationError("tree engine requires a multiplicity-free category")
        leaves = tuple(int(x) for x in leaves)
        n = len(leaves)
        if any(not 0 <= x < category.n for x in leaves):
            raise ValidationError("leaf label out of range", leaves)
        if fused is not None and not 1 <= fused <= n - 1:
            raise ValidationError("fused position out of range", (fused, n))
        self.category = category
        self.leaves = leaves
        self.fused = fused
        self.trees = self._enumerate()
        self.index = {t: k for k, t in enumerate(self.trees)}

    def _enumerate(self):
        ring = self.category.ring
        leaves, fused, n = self.leaves, self.fused, len(self.leaves)
        if n == 0:
            return [()]
        out = []
        chain = []

        def walk(pos):
            if pos > n:
                out.append(tuple(chain))
                return
            prev = chain[pos - 2] if pos >= 2 else 0
            if fused == pos:
                cands = ring.fuse(leaves[pos - 1], leaves[pos])
            elif fused is not None and pos == fused + 1:
                prev2 = chain[pos - 3] if pos >= 3 else 0
                cands = ring.fuse(prev2, prev)
            else:
                cands = ring.fuse(prev, leaves[pos - 1])
            for e in cands:
                if pos == n and e != 0:
                    continue
                chain.append(int(e))
                walk(pos + 1)
                chain.pop()

        walk(1)
        return out

    def __len__(self):
        return len(self.trees)

    def __repr__(self):
        return "FusionBasis(leaves=%r, fused=%r, dim=%d)" % (
            self.leaves, self.fused, len(self.trees))


def _basis(category, leaves, fused=None):
    cache = getattr(category, "_tree_basis_cache", None)
    if cache is None:
        cache = {}
        category._tree_basis_cache = cache
    key = (tuple(int(x) for x in leaves), fused)
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = FusionBasis(category, leaves, fused)
    return hit


def basis(category, leaves):
    """Left-comb FusionBasis on the given leaf labels (cached per category)."""
    return _basis(category, leaves, None)


class MorphismVector:
    """Element of C(1, x_1 (x) ... (x) x_n) as coefficients over a FusionBasis."""

    def __init__(self, basis, coefficients):
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.shape != (len(basis.trees),):
            raise ValidationError("coefficient length does not match basis size")
        self.basis = basis
        self.coefficients = coefficients

    def __repr__(self):
        return "MorphismVector(%r, norm=%.3g)" % (
            self.basis, float(np.linalg.norm(self.coefficients)))


def _fuse(v, p):
    """Left comb -> fused at p; coefficients F(e_{p-1}, x_p, x_{p+1}; e_{p+1})[e_p, m]."""
    b = v.basis
    cat = b.category
    if b.fused is not None:
        raise ValidationError("vector is already in a fused shape")
    n = len(b.leaves)
    if not 1 <= p <= n - 1:
        raise ValidationError("position out of range", (p, n))
    x, y = b.leaves[p - 1], b.leaves[p]
    tgt = _basis(cat, b.leaves, p)
    out = np.zeros(len(tgt), dtype=complex)
    for t, c in zip(b.trees, v.coefficients):
        if c == 0:
            continue
        e_prev = t[p - 2] if p >= 2 else 0
        e_p, e_next = t[p - 1], t[p]
        for m in cat.ring.fuse(x, y):
            coef = cat.F(e_prev, x, y, e_next, e_p, int(m))
            if coef != 0:
                tt = t[:p - 1] + (int(m),) + t[p:]
                out[tgt.index[tt]] += coef * c
    return MorphismVector(tgt, out)


def _unfuse(v, p):
    """Fused at p -> left comb; coefficients are the inverse F-symbols."""
    b = v.basis
    cat = b.category
    if b.fused != p:
        raise ValidationError("vector is not fused at this position", (b.fused, p))
    x, y = b.leaves[p - 1], b.leaves[p]
    tgt = _basis(cat, b.leaves, None)
    out = np.zeros(len(tgt), dtype=complex)
    for t, c in zip(b.trees, v.coefficients):
        if c == 0:
            continue
        e_prev = t[p - 2] if p >= 2 else 0
        m, e_next = t[p - 1], t[p]
        for e_p in cat.ring.fuse(e_prev, x):
            coef = cat.Finv(e_prev, x, y, e_next, m, int(e_p))
            if coef != 0:
                tt = t[:p - 1] + (int(e_p),) + t[p:]
                k = tgt.index.get(tt)
                if k is not None:
                    out[k] += coef * c
    return MorphismVector(tgt, out)


def f_move(v, position):
    """Recouple at `position`: left comb -> fused there, or back again."""
    if v.basis.fused is None:
        return _fuse(v, position)
    if v.basis.fused == position:
        return _unfuse(v, position)
    raise ValidationError("vector is fused at a different position",
                          (v.basis.fused, position))


def braid(v, p, inverse=False):
    """Exchange strands p, p+1 (over-crossing; `inverse` for the under-crossing)."""
    b = v.basis
    cat = b.category
    x, y = b.leaves[p - 1], b.leaves[p]
    w = _fuse(v, p)
    new_leaves = b.leaves[:p - 1] + (y, x) + b.leaves[p + 1:]
    tgt = _basis(cat, new_leaves, p)
    out = np.zeros(len(tgt), dtype=complex)
    for t, c in zip(w.basis.trees, w.coefficients):
        if c == 0:
            continue
        m = t[p - 1]
        r = cat.Rinv(y, x, m) if inverse else cat.R(x, y, m)
        out[tgt.index[t]] += r * c
    return _unfuse(MorphismVector(tgt, out), p)


def twist_strand(v, k):
    """Ribbon twist of strand k: scalar theta of the k-th leaf label."""
    b = v.basis
    if not 1 <= k <= len(b.leaves):
        raise ValidationError("strand index out of range", (k, len(b.leaves)))
    return MorphismVector(b, b.category.theta[b.leaves[k - 1]] * v.coefficients)


def pair_twist(v, k):
    """Twist of the cable of strands k, k+1: theta of the pair channel."""
    cat = v.basis.category
    w = _fuse(v, k)
    out = w.coefficients.copy()
    for t, j in w.basis.index.items():
        out[j] *= cat.theta[t[k - 1]]
    return _unfuse(MorphismVector(w.basis, out), k)


def extract_pair(v, p, gauge=None):
    """Cap strands p, p+1 (labels (i, ibar)); coefficient phi_i d_i."""
    b = v.basis
    cat = b.category
    x, y = b.leaves[p - 1], b.leaves[p]
    if y != int(cat.ring.dual[x]):
        raise ValidationError("strands do not carry dual labels", (x, y))
    scale = (gauge.phi[x] if gauge is not None else 1.0) * cat.d[x]
    w = _fuse(v, p)
    tgt = _basis(cat, b.leaves[:p - 1] + b.leaves[p + 1:], None)
    out = np.zeros(len(tgt), dtype=complex)
    for t, c in zip(w.basis.trees, w.coefficients):
        if t[p - 1] == 0 and c != 0:
            out[tgt.index[t[:p - 1] + t[p + 1:]]] += scale * c
    return MorphismVector(tgt, out)


def insert_pair(v, p, j, gauge=None):
    """Insert a (j, jbar) pair so it occupies strands p, p+1; coefficient phitilde_j d_j."""
    b = v.basis
    cat = b.category
    j = int(j)
    jb = int(cat.ring.dual[j])
    scale = (gauge.phi_tilde[j] if gauge is not None else 1.0 / cat.d[j]) * cat.d[j]
    new_leaves = b.leaves[:p - 1] + (j, jb) + b.leaves[p - 1:]
    if not 1 <= p <= len(new_leaves) - 1:
        raise ValidationError("position out of range", (p, len(b.leaves)))
    tgt = _basis(cat, new_leaves, p)
    out = np.zeros(len(tgt), dtype=complex)
    for t, c in zip(b.trees, v.coefficients):
        if c == 0:
            continue
        e_prev = t[p - 2] if p >= 2 else 0
        tt = t[:p - 1] + (0, e_prev) + t[p - 1:]
        out[tgt.index[tt]] += scale * c
    return _unfuse(MorphismVector(tgt, out), p)


def closed_loop_value(C, i, c):
    """Scalar of a closed i-loop encircling a c-strand: s_{ic} / d_c."""
    return complex(C.smat[int(i), int(c)] / C.d[int(c)])


def s_loop(v, k, j, i, gauge=None, chirality=-1):
    """Component of the handle-k S-move in the (j, jbar) summand.

    Strands 2k-1, 2k must carry (i, ibar).  A (j, jbar) pair is inserted next
    to the handle pair, the i strand is dragged around jbar with a double
    braiding (so the closed i-loop links the new handle), and the i-pair is
    capped; the overall weight is d_j / D.  At the default gauge the genus-1
    matrix over handle labels equals s / D.
    """
    b = v.basis
    cat = b.category
    p = 2 * k - 1
    i, j = int(i), int(j)
    if p > len(b.leaves) - 1 or b.leaves[p - 1] != i or \
            b.leaves[p] != int(cat.ring.dual[i]):
        raise ValidationError("handle does not carry the stated label pair",
                              (k, i))
    if not cat.ring.N[i, int(cat.ring.dual[i]), 0]:
        raise ValidationError("label pair is not admissible", (i,))
    w = insert_pair(v, p, j, gauge)
    inv = chirality < 0
    w = braid(braid(w, p + 1, inverse=inv), p + 1, inverse=inv)
    w = extract_pair(w, p + 2, gauge)
    return MorphismVector(w.basis, (cat.d[j] / cat.D) * w.coefficients)


def _s_loop_vacuum(v, k, j, i, gauge=None):
    """S-move component with the closed-loop shortcut (vacuum channel only).

    Caps the i-pair directly and reinserts the j-pair, weighting by
    closed_loop_value-style coefficient d_j/D * s_{ij}/(d_i d_j).  Exact when
    the handle pair fuses through the vacuum, i.e. at genus 1; used as the
    fast path there and to certify `s_loop` by comparison.
    """
    cat = v.basis.category
    p = 2 * k - 1
    i, j = int(i), int(j)
    w = insert_pair(extract_pair(v, p, gauge), p, j, gauge)
    coef = (cat.d[j] / cat.D) * cat.smat[i, j] / (cat.d[i] * cat.d[j])
    return MorphismVector(w.basis, coef * w.coefficients)
