"""Skeletal data of multiplicity-free modular fusion categories.

A category is given by a finite label set I = {0, .., n-1} (0 is the tensor
unit), a dual involution, fusion multiplicities N_{ij}^k, F-symbols and
R-symbols.  Everything downstream (tree bases, mapping class group actions,
algebra checks) reads the data through the accessors here, so files are
validated once at load time and the objects are treated as immutable.

Conventions
-----------
* ``F(a, b, c; d)[e, f]`` is the matrix of the associator between the two
  bracketings of a . b . c with total channel d; e runs over the a-b fusion
  channels, f over the b-c channels.  Unit-involving F-symbols are 1 (strict
  unit gauge) and may be omitted from data files.
* ``R(a, b; c)`` is the scalar of the braiding c_{a,b} on fusion channel c.
* Quantum dimensions are derived from the F-diagonal
  ``x_a = F(a, abar, a; a)[0, 0]``:  d = chi / x for the unique fusion sign
  character chi making all d positive (pseudo-unitary pivotal structure) if
  one exists, else d = 1/x.  kappa_a = x_a * d_a records the resulting
  dual-loop sign.
* Twists: theta_a = sum_c (d_c / d_a) R(a, a; c).
* s-matrix (unnormalised, s_{0i} = d_i):
  s_{ij} = sum_c N_{ij}^c d_c theta_c / (theta_i theta_j),  D = sqrt(sum d^2)
  with the principal square root.
"""

import json
import os

import numpy as np

__all__ = [
    "ValidationError",
    "FusionRing",
    "CategoryData",
    "load_category",
    "load_bundled",
    "bundled_names",
    "data_dir",
    "validate_pentagon",
    "validate_hexagon",
    "s_matrix",
    "deligne_product",
    "is_pseudo_unitary",
]

DEFAULT_TOL = 1e-9

_DATA_ENV = "MFCKIT_DATA"


class ValidationError(ValueError):
    """A structural identity of the category data failed.

    Carries the identity name, the offending label tuple and the residual so
    callers (and the CLI) can report exactly what broke.
    """

    def __init__(self, identity, labels=None, residual=None):
        self.identity = identity
        self.labels = None if labels is None else tuple(int(t) for t in labels)
        self.residual = residual
        msg = identity
        if self.labels is not None:
            msg += " at " + repr(self.labels)
        if residual is not None:
            msg += " (residual %.3e)" % residual
        super().__init__(msg)


def data_dir():
    """Directory with the bundled category files (override via MFCKIT_DATA)."""
    env = os.environ.get(_DATA_ENV)
    if env:
        return env
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def bundled_names():
    return sorted(
        os.path.splitext(f)[0] for f in os.listdir(data_dir()) if f.endswith(".json")
    )


class FusionRing:
    """Fusion multiplicities N_{ij}^k over labels 0..n-1 with 0 the unit.

    General multiplicities are allowed at this layer; only the F/R symbol
    layer restricts to N <= 1.
    """

    def __init__(self, labels, dual, N):
        self.labels = [str(l) for l in labels]
        self.n = len(self.labels)
        self.dual = np.asarray(dual, dtype=np.int64)
        self.N = np.ascontiguousarray(np.asarray(N, dtype=np.int64))
        if self.dual.shape != (self.n,):
            raise ValidationError("dual involution has wrong length")
        if self.N.shape != (self.n,) * 3:
            raise ValidationError("fusion tensor has wrong shape")
        self._fuse = [
            [np.flatnonzero(self.N[i, j]) for j in range(self.n)] for i in range(self.n)
        ]

    def fuse(self, i, j):
        """Indices k with N_{ij}^k != 0, ascending."""
        return self._fuse[i][j]

    def index(self, label):
        return self.labels.index(str(label))

    def violations(self):
        """Exact integer checks of the ring axioms; list of (name, tuple)."""
        out = []
        n, N, dual = self.n, self.N, self.dual
        if sorted(dual.tolist()) != list(range(n)) or np.any(dual[dual] != np.arange(n)):
            out.append(("dual is not an involution", ()))
            return out
        if dual[0] != 0:
            out.append(("unit label is not self-dual", (0,)))
        if np.any(N < 0):
            bad = next(zip(*np.nonzero(N < 0)))
            out.append(("negative fusion multiplicity", bad))
        eye = np.eye(n, dtype=np.int64)
        if np.any(N[0] != eye):
            j, k = next(zip(*np.nonzero(N[0] != eye)))
            out.append(("unit row N_{0j}^k != delta", (0, j, k)))
        if np.any(N[:, 0] != eye):
            i, k = next(zip(*np.nonzero(N[:, 0] != eye)))
            out.append(("unit column N_{i0}^k != delta", (i, 0, k)))
        dualmat = eye[dual]  # N_{ij}^0 = delta_{j, ibar}
        if np.any(N[:, :, 0] != dualmat):
            i, j = next(zip(*np.nonzero(N[:, :, 0] != dualmat)))
            out.append(("duality N_{ij}^0 != delta_{j,ibar}", (i, j, 0)))
        lhs = np.einsum("ije,ekl->ijkl", N, N)
        rhs = np.einsum("jkf,ifl->ijkl", N, N)
        if np.any(lhs != rhs):
            bad = next(zip(*np.nonzero(lhs != rhs)))
            out.append(("fusion associativity", bad))
        # N_{ij}^k = N_{kbar i}^{jbar}
        rot = N[dual][:, :, dual].transpose(2, 0, 1)  # N_{kbar i}^{jbar} at [i,j,k]
        if np.any(N != rot):
            bad = next(zip(*np.nonzero(N != rot)))
            out.append(("dual compatibility N_{ij}^k = N_{kbar i}^{jbar}", bad))
        reach = N.sum(axis=1) > 0  # [i, j] : exists k with N_{ik}^j != 0
        if not np.all(reach.sum(axis=0)):
            out.append(("transitivity: some label unreachable", ()))
        return out

    def is_multiplicity_free(self):
        return bool(np.all(self.N <= 1))


class CategoryData:
    """Fusion ring plus F/R symbols and the derived numerical data.

    F and R are exposed through accessor methods rather than raw tables so
    that Deligne products can compute them from their factors on demand
    (materialising the product F-table is quadratically larger than needed).
    """

    def __init__(self, ring, f_entries=None, r_entries=None, tol=DEFAULT_TOL,
                 name="category", product_of=None, _derived=None, validate=True):
        self.ring = ring
        self.n = ring.n
        self.labels = ring.labels
        self.dual = ring.dual
        self.N = ring.N
        self.tol = float(tol)
        self.name = name
        self._product_of = product_of  # (base_category, rev_flag) or None
        self._f_entries = {} if f_entries is None else dict(f_entries)
        self._r_entries = {} if r_entries is None else dict(r_entries)
        self._fmat_cache = {}
        self._finv_cache = {}

        if product_of is None:
            # product rings inherit the axioms from their validated factors,
            # and the associativity check is O(n^4) in the product size
            bad = ring.violations()
            if bad:
                raise ValidationError("fusion ring: " + bad[0][0], bad[0][1])
        if not ring.is_multiplicity_free():
            raise ValidationError("F/R layer requires multiplicity-free fusion rules")

        if _derived is not None:
            self.x = _derived["x"]
            self.d = _derived["d"]
            self.kappa = _derived["kappa"]
            self.theta = _derived["theta"]
        else:
            self.x, self.d, self.kappa = self._derive_dims()
            self.theta = self._derive_twists()

        scale = float(np.max(np.abs(self.d)))
        if abs(self.theta[0] - 1.0) > self.tol:
            raise ValidationError("theta_0 != 1", (0,), abs(self.theta[0] - 1.0))
        if abs(self.d[0] - 1.0) > self.tol:
            raise ValidationError("d_0 != 1", (0,), abs(self.d[0] - 1.0))
        dres = float(np.max(np.abs(self.theta[self.dual] - self.theta)))
        if dres > self.tol:
            raise ValidationError("theta_ibar != theta_i", (), dres)

        self.smat = self._derive_smatrix()
        Dsq = np.sum(self.d ** 2)
        self.D = complex(np.sqrt(Dsq + 0j))
        if abs(self.D.imag) <= self.tol * max(1.0, abs(self.D)):
            self.D = complex(self.D.real)

        self._check_smatrix(scale)
        self._derive_dual_norms()
        if validate:
            res, worst = _pentagon_worst(self)
            if res > self.tol:
                raise ValidationError("pentagon identity", worst, res)
            res, worst = _hexagon_worst(self)
            if res > self.tol:
                raise ValidationError("hexagon identity", worst, res)

    # -- F/R access ---------------------------------------------------------

    def f_rows(self, a, b, c, d):
        """Channels e of (a.b).c -> d, i.e. e in supp(a.b) with d in supp(e.c)."""
        return [int(e) for e in self.ring.fuse(a, b) if self.N[e, c, d]]

    def f_cols(self, a, b, c, d):
        return [int(f) for f in self.ring.fuse(b, c) if self.N[a, f, d]]

    def f_matrix(self, a, b, c, d):
        """(rows, cols, M) of the F-move on (a, b, c; d); rows/cols ascending."""
        key = (a, b, c, d)
        hit = self._fmat_cache.get(key)
        if hit is not None:
            return hit
        if self._product_of is not None:
            base, rev = self._product_of
            n0 = base.n
            a1, a2 = divmod(a, n0)
            b1, b2 = divmod(b, n0)
            c1, c2 = divmod(c, n0)
            d1, d2 = divmod(d, n0)
            r1, c1s, M1 = base.f_matrix(a1, b1, c1, d1)
            r2, c2s, M2 = base.f_matrix(a2, b2, c2, d2)
            rows = [e1 * n0 + e2 for e1 in r1 for e2 in r2]
            cols = [f1 * n0 + f2 for f1 in c1s for f2 in c2s]
            M = np.kron(M1, M2)
        else:
            rows = self.f_rows(a, b, c, d)
            cols = self.f_cols(a, b, c, d)
            M = np.zeros((len(rows), len(cols)), dtype=complex)
            for i, e in enumerate(rows):
                for j, f in enumerate(cols):
                    M[i, j] = self._f_scalar(a, b, c, d, e, f)
        out = (rows, cols, M)
        self._fmat_cache[key] = out
        return out

    def f_matrix_inv(self, a, b, c, d):
        """(cols, rows, Minv) with Minv the inverse of f_matrix's M."""
        key = (a, b, c, d)
        hit = self._finv_cache.get(key)
        if hit is not None:
            return hit
        rows, cols, M = self.f_matrix(a, b, c, d)
        if len(rows) != len(cols):
            raise ValidationError("F-block is not square", (a, b, c, d))
        if len(rows) == 0:
            out = (cols, rows, np.zeros((0, 0), dtype=complex))
        else:
            try:
                Minv = np.linalg.inv(M)
            except np.linalg.LinAlgError:
                raise ValidationError("F-block is singular", (a, b, c, d))
            out = (cols, rows, Minv)
        self._finv_cache[key] = out
        return out

    def _f_scalar(self, a, b, c, d, e, f):
        v = self._f_entries.get((a, b, c, d, e, f))
        if v is not None:
            return v
        if a == 0 or b == 0 or c == 0:
            return 1.0 + 0j  # strict unit gauge
        return 0.0 + 0j

    def F(self, a, b, c, d, e, f):
        """Scalar F-symbol; 0 on inadmissible index tuples."""
        if self._product_of is not None:
            base, rev = self._product_of
            n0 = base.n
            return base.F(a // n0, b // n0, c // n0, d // n0, e // n0, f // n0) * \
                base.F(a % n0, b % n0, c % n0, d % n0, e % n0, f % n0)
        if not (self.N[a, b, e] and self.N[e, c, d] and self.N[b, c, f] and self.N[a, f, d]):
            return 0.0 + 0j
        return complex(self._f_scalar(a, b, c, d, e, f))

    def Finv(self, a, b, c, d, f, e):
        """Matrix element [f, e] of the inverse F-move."""
        cols, rows, Minv = self.f_matrix_inv(a, b, c, d)
        if f not in cols or e not in rows:
            return 0.0 + 0j
        return complex(Minv[cols.index(f), rows.index(e)])

    def R(self, a, b, c):
        """Braiding scalar of c_{a,b} on channel c; 0 if inadmissible."""
        if self._product_of is not None:
            base, rev = self._product_of
            n0 = base.n
            r1 = base.R(a // n0, b // n0, c // n0)
            if rev:
                r2 = base.R(b % n0, a % n0, c % n0)
                r2 = 0.0 if r2 == 0.0 else 1.0 / r2
            else:
                r2 = base.R(a % n0, b % n0, c % n0)
            return r1 * r2
        if not self.N[a, b, c]:
            return 0.0 + 0j
        if a == 0 or b == 0:
            return 1.0 + 0j
        return complex(self._r_entries.get((a, b, c), 0.0))

    def Rinv(self, a, b, c):
        r = self.R(a, b, c)
        return 0.0 + 0j if r == 0.0 else 1.0 / r

    # -- derived data --------------------------------------------------------

    def _derive_dims(self):
        n = self.n
        x = np.zeros(n, dtype=complex)
        for a in range(n):
            x[a] = self._f_scalar(a, int(self.dual[a]), a, a, 0, 0) if a else 1.0
            if abs(x[a]) < 1e-300:
                raise ValidationError("duality diagonal F(a,abar,a;a)[0,0] vanishes", (a,))
        d0 = 1.0 / x
        scale = float(np.max(np.abs(d0)))
        chosen = None
        for chi in _sign_characters(self.ring):
            d = chi * d0
            if np.all(d.real > self.tol) and np.all(np.abs(d.imag) <= self.tol * scale):
                chosen = chi
                break
        d = chosen * d0 if chosen is not None else d0
        return x, d, x * d

    def _derive_twists(self):
        n = self.n
        theta = np.zeros(n, dtype=complex)
        for a in range(n):
            acc = 0.0 + 0j
            for c in self.ring.fuse(a, a):
                acc += (self.d[c] / self.d[a]) * self.R(a, a, int(c))
            theta[a] = acc
        return theta

    def _derive_smatrix(self):
        dth = self.d * self.theta
        s = self.N.astype(complex) @ dth
        return s / np.outer(self.theta, self.theta)

    def _check_smatrix(self, scale):
        s = self.smat
        res = float(np.max(np.abs(s - s.T)))
        if res > self.tol * max(1.0, scale ** 2):
            raise ValidationError("s-matrix symmetry", (), res)
        res = float(np.max(np.abs(s[0] - self.d)))
        if res > self.tol * max(1.0, scale):
            raise ValidationError("s_{0i} != d_i", (), res)
        # modularity: s . conj(s) = D^2, s . s = D^2 * (duality permutation)
        res = float(np.max(np.abs(s @ np.conj(s) - (self.D ** 2) * np.eye(self.n))))
        if res > np.sqrt(self.tol) * max(1.0, abs(self.D) ** 2):
            raise ValidationError("s.sbar != D^2 I", (), res)
        perm = np.eye(self.n)[self.dual]
        res = float(np.max(np.abs(s @ s - (self.D ** 2) * perm)))
        if res > np.sqrt(self.tol) * max(1.0, abs(self.D) ** 2):
            raise ValidationError("s.s != D^2 C", (), res)
        sv = np.linalg.svd(s / self.D, compute_uv=False)
        if sv.min() <= self.tol:
            raise ValidationError("s-matrix not invertible (braiding degenerate)",
                                  (), float(sv.min()))

    def _derive_dual_norms(self):
        # xtilde_i = [F(i,ibar,i;i)^{-1}]_{00}: the cap normalisation entering
        # pairing formulas.  Equals kappa_i/d_i in the unitary gauge, but only
        # invertibility is a theorem, so no equality is enforced here.
        xt = np.zeros(self.n, dtype=complex)
        for i in range(self.n):
            ib = int(self.dual[i])
            cols, rows, Minv = self.f_matrix_inv(i, ib, i, i)
            xt[i] = Minv[cols.index(0), rows.index(0)]
            if abs(xt[i]) < 1e-300:
                raise ValidationError("inverse duality F diagonal vanishes", (i,))
        self.xtilde = xt

    def index(self, label):
        return self.ring.index(label)

    def label_pair(self, j):
        """For product categories, the (left, right) factor indices of label j."""
        if self._product_of is None:
            raise ValueError("not a product category")
        return divmod(j, self._product_of[0].n)

    @property
    def is_product(self):
        return self._product_of is not None

    def __repr__(self):
        return "CategoryData(%r, n=%d)" % (self.name, self.n)


# -- sign characters of the fusion ring --------------------------------------

def _sign_characters(ring, cap=4096):
    """All chi: I -> {+-1} with chi_0 = 1 and chi_i chi_j = chi_k on fusion.

    GF(2) elimination over bitmasks; the solution set is a linear space and
    is enumerated deterministically (identity character first).
    """
    n = ring.n
    if n == 1:
        return [np.ones(1)]
    pivots = {}
    for i, j, k in zip(*np.nonzero(ring.N)):
        mask = 0
        for t in (int(i), int(j), int(k)):
            if t:
                mask ^= 1 << (t - 1)
        cur = mask
        while cur:
            hb = cur.bit_length() - 1
            if hb in pivots:
                cur ^= pivots[hb]
            else:
                pivots[hb] = cur
                break
    free = [b for b in range(n - 1) if b not in pivots]
    if 2 ** len(free) > cap:
        raise ValidationError("too many fusion sign characters to enumerate")
    sols = []
    for combo in range(2 ** len(free)):
        vec = 0
        for t, b in enumerate(free):
            if (combo >> t) & 1:
                vec |= 1 << b
        for hb in sorted(pivots):  # echelon rows only involve bits <= hb
            row = pivots[hb] & ~(1 << hb)
            if bin(vec & row).count("1") & 1:
                vec |= 1 << hb
        chi = np.ones(n)
        for b in range(n - 1):
            if (vec >> b) & 1:
                chi[b + 1] = -1.0
        sols.append(chi)
    return sols


# -- loading ------------------------------------------------------------------

def load_category(source, tol=None, name=None, validate=True):
    """Load a category from a JSON file path, JSON text, or parsed dict.

    The file format has keys ``labels`` (strings), ``dual`` (label indices),
    ``fusion`` ([i, j, k, N] quadruples, omitted entries are 0), ``F``
    ([a, b, c, d, e, f, re, im]), ``R`` ([a, b, c, re, im]) and optional
    ``tol``.  Raises ValidationError naming the violated identity and label
    tuple if any consistency check fails.
    """
    if isinstance(source, dict):
        doc = source
        src_name = doc.get("name", "category")
    else:
        path = os.fspath(source)
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            src_name = os.path.splitext(os.path.basename(path))[0]
        else:
            stripped = path.lstrip()
            if stripped.startswith("{"):
                doc = json.loads(stripped)
                src_name = doc.get("name", "category")
            else:
                raise FileNotFoundError(path)
    try:
        labels = list(doc["labels"])
        dual = list(doc["dual"])
        fusion = doc["fusion"]
        f_list = doc.get("F", [])
        r_list = doc.get("R", [])
    except (KeyError, TypeError) as exc:
        raise ValidationError("malformed category file: missing %s" % exc)

    n = len(labels)
    N = np.zeros((n, n, n), dtype=np.int64)
    for quad in fusion:
        i, j, k, mult = quad
        if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
            raise ValidationError("fusion entry out of range", (i, j, k))
        N[i, j, k] = mult
    ring = FusionRing(labels, dual, N)

    f_entries = {}
    for ent in f_list:
        a, b, c, d, e, f, re, im = ent
        key = tuple(int(t) for t in (a, b, c, d, e, f))
        if max(key) >= n or min(key) < 0:
            raise ValidationError("F entry out of range", key)
        a, b, c, d, e, f = key
        adm = N[a, b, e] and N[e, c, d] and N[b, c, f] and N[a, f, d]
        val = complex(float(re), float(im))
        if not adm:
            if val != 0:
                raise ValidationError("F entry on inadmissible tuple", key)
            continue
        f_entries[key] = val
    r_entries = {}
    for ent in r_list:
        a, b, c, re, im = ent
        key = (int(a), int(b), int(c))
        if max(key) >= n or min(key) < 0:
            raise ValidationError("R entry out of range", key)
        val = complex(float(re), float(im))
        if not N[key[0], key[1], key[2]]:
            if val != 0:
                raise ValidationError("R entry on inadmissible tuple", key)
            continue
        r_entries[key] = val

    eff_tol = tol if tol is not None else float(doc.get("tol", DEFAULT_TOL))
    eff_name = name if name is not None else src_name
    return CategoryData(ring, f_entries, r_entries, tol=eff_tol, name=eff_name,
                        validate=validate)


def load_bundled(name, tol=None, validate=True):
    """Load one of the shipped categories by name ('ising', 'su2_4', ...)."""
    path = os.path.join(data_dir(), name + ".json")
    return load_category(path, tol=tol, name=name, validate=validate)


# -- consistency residuals -----------------------------------------------------

def _dense_f(cat, cap=8_000_000):
    n = cat.n
    if n ** 6 > cap:
        raise ValidationError(
            "category too large for dense pentagon/hexagon check "
            "(n=%d); validate the factors instead" % n)
    Fd = np.zeros((n,) * 6, dtype=complex)
    N = cat.N
    # strict unit gauge entries
    for i, j, k in zip(*np.nonzero(N)):
        Fd[0, i, j, k, i, k] = 1.0
        Fd[i, 0, j, k, i, j] = 1.0
        Fd[i, j, 0, k, k, j] = 1.0
    if cat._product_of is None:
        for (a, b, c, d, e, f), v in cat._f_entries.items():
            if N[a, b, e] and N[e, c, d] and N[b, c, f] and N[a, f, d]:
                Fd[a, b, c, d, e, f] = v
    else:
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in set(int(t) for e in cat.ring.fuse(a, b)
                                 for t in cat.ring.fuse(int(e), c)):
                        rows, cols, M = cat.f_matrix(a, b, c, d)
                        for i, e in enumerate(rows):
                            for j, f in enumerate(cols):
                                Fd[a, b, c, d, e, f] = M[i, j]
    return Fd


def _dense_r(cat):
    n = cat.n
    Rd = np.zeros((n, n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            for c in cat.ring.fuse(a, b):
                Rd[a, b, c] = cat.R(a, b, int(c))
    return Rd


def _pentagon_worst(cat):
    """Max |LHS - RHS| over all admissible pentagon instances, with location.

    For leaves (a, b, c, d) fusing to total t the identity relates the two
    four-leaf tree bases (e, g) and (h, f):

      F(e,c,d;t)[g,h] F(a,b,h;t)[e,f]
        = sum_p F(a,b,c;g)[e,p] F(a,p,d;t)[g,f] F(b,c,d;f)[p,h]
    """
    Fd = _dense_f(cat)
    ring = cat.ring
    n = cat.n
    worst = 0.0
    where = ()
    for a in range(n):
        for b in range(n):
            E = ring.fuse(a, b)
            if len(E) == 0:
                continue
            for c in range(n):
                chains = [(int(e), int(g)) for e in E for g in ring.fuse(int(e), c)]
                if not chains:
                    continue
                P = np.array([int(p) for p in ring.fuse(b, c)])
                for dd in range(n):
                    tset = {}
                    for e, g in chains:
                        for t in ring.fuse(g, dd):
                            tset.setdefault(int(t), []).append((e, g))
                    for t, v1 in tset.items():
                        v2 = [(int(h), int(f)) for h in ring.fuse(c, dd)
                              for f in ring.fuse(b, int(h)) if cat.N[a, f, t]]
                        if not v2:
                            continue
                        Ec = np.array([e for e, _ in v1])[:, None]
                        Gc = np.array([g for _, g in v1])[:, None]
                        Hc = np.array([h for h, _ in v2])[None, :]
                        Fc = np.array([f for _, f in v2])[None, :]
                        lhs = Fd[Ec, c, dd, t, Gc, Hc] * Fd[a, b, Hc, t, Ec, Fc]
                        X = Fd[a, b, c, Gc[:, 0][:, None], Ec[:, 0][:, None], P[None, :]]
                        Y = Fd[a, P[:, None, None], dd, t, Gc[None, :, 0][..., None],
                               Fc[None, 0, :][:, None, :]]
                        Z = Fd[b, c, dd, Fc[0][None, :], P[:, None], Hc[0][None, :]]
                        rhs = np.einsum("ip,pij,pj->ij", X, Y, Z)
                        res = np.abs(lhs - rhs)
                        m = float(res.max())
                        if m > worst:
                            worst = m
                            i, j = np.unravel_index(int(res.argmax()), res.shape)
                            where = (a, b, c, dd, t, v1[i][0], v1[i][1],
                                     v2[j][0], v2[j][1])
    return worst, where


def _hexagon_worst(cat):
    """Max residual of both hexagon orientations, with location.

    Orientation 1 (braiding R), for each a and all (b, c, d, e, g):

      R(a,b;e) F(b,a,c;d)[e,g] R(a,c;g)
        = sum_f F(a,b,c;d)[e,f] R(a,f;d) F(b,c,a;d)[f,g]

    Orientation 2 is the same with R(x,y;z) replaced by R(y,x;z)^{-1}.
    """
    Fd = _dense_f(cat)
    Rd = _dense_r(cat)
    with np.errstate(divide="ignore", invalid="ignore"):
        Ri = np.where(Rd != 0, 1.0 / np.where(Rd != 0, Rd, 1.0), 0.0)
    n = cat.n
    worst = 0.0
    where = ()
    for a in range(n):
        for orient, Ra in ((1, Rd[a]), (2, Ri[:, a, :])):
            lhs = np.einsum("be,bcdeg,cg->bcdeg", Ra, Fd[:, a], Ra)
            rhs = np.einsum("bcdef,fd,bcdfg->bcdeg", Fd[a], Ra, Fd[:, :, a])
            res = np.abs(lhs - rhs)
            m = float(res.max())
            if m > worst:
                worst = m
                b, c, dd, e, g = np.unravel_index(int(res.argmax()), res.shape)
                where = (a, b, c, dd, e, g, orient)
    return worst, where


def validate_pentagon(cat):
    """Maximum pentagon residual over all admissible label tuples."""
    return _pentagon_worst(cat)[0]


def validate_hexagon(cat):
    """Maximum residual of both hexagon orientations."""
    return _hexagon_worst(cat)[0]


def s_matrix(cat):
    """Unnormalised s-matrix (s_{0i} = d_i); copy of the derived field."""
    return cat.smat.copy()


def is_pseudo_unitary(cat):
    """True iff every quantum dimension is real and positive."""
    d = cat.d
    scale = float(np.max(np.abs(d)))
    return bool(np.all(np.abs(d.imag) <= cat.tol * scale) and np.all(d.real > cat.tol))


def deligne_product(cat, rev=False):
    """The product category with itself, labels (i, j) -> i * n + j.

    With ``rev`` the second factor carries the reversed braiding and inverse
    twist, giving the enveloping category in which the full centre lives.
    F-symbols multiply; R-symbols multiply with the second factor inverted
    and swapped when ``rev``.  Pentagon/hexagon hold by construction, so the
    heavy residual checks are not rerun here.
    """
    n = cat.n
    labels = ["(%s,%s)" % (l1, l2) for l1 in cat.labels for l2 in cat.labels]
    dual = np.array([int(cat.dual[i]) * n + int(cat.dual[j])
                     for i in range(n) for j in range(n)], dtype=np.int64)
    N2 = np.einsum("ijk,IJK->iIjJkK", cat.N, cat.N).reshape(n * n, n * n, n * n)
    ring = FusionRing(labels, dual, N2)
    theta2 = 1.0 / cat.theta if rev else cat.theta
    derived = {
        "x": np.outer(cat.x, cat.x).ravel(),
        "d": np.outer(cat.d, cat.d).ravel(),
        "kappa": np.outer(cat.kappa, cat.kappa).ravel(),
        "theta": np.outer(cat.theta, theta2).ravel(),
    }
    name = "%s(x)%s" % (cat.name, cat.name + ("^rev" if rev else ""))
    return CategoryData(ring, tol=cat.tol, name=name, product_of=(cat, rev),
                        _derived=derived, validate=False)
