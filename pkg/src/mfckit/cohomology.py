"""Finite abelian groups and symmetric 2-cocycle trivialization.

Groups are given by multiplication tables with identity 0.  The coboundary
solver decomposes the group into cyclic factors, fixes the generator values
by principal n-th roots of the cocycle products around each cycle, and
extends multiplicatively along the normal form; the result is verified
against the defining equation, which is what actually certifies the output.
"""

import numpy as np

from .category import ValidationError

__all__ = ["AbelianGroup", "cocycle_checks", "coboundary_of",
           "solve_symmetric_coboundary"]


class AbelianGroup:
    """Finite abelian group presented by its multiplication table.

    table[g, h] is the product; 0 is the identity.  The cyclic decomposition
    (generators, orders and a normal form for every element) is computed
    lazily on first use.
    """

    def __init__(self, table, check=True):
        self.table = np.asarray(table, dtype=np.int64)
        if self.table.ndim != 2 or self.table.shape[0] != self.table.shape[1]:
            raise ValidationError("group table must be square")
        self.n = int(self.table.shape[0])
        self._factors = None
        self._forms = None
        if check:
            self._validate()

    def _validate(self):
        t = self.table
        n = self.n
        if np.any(t < 0) or np.any(t >= n):
            raise ValidationError("group table entries out of range")
        if np.any(t[0, :] != np.arange(n)) or np.any(t[:, 0] != np.arange(n)):
            raise ValidationError("0 is not an identity for the group table")
        if np.any(t != t.T):
            raise ValidationError("group table is not commutative")
        # associativity: t[t[f,g],h] == t[f,t[g,h]]
        lhs = t[t, :]
        rhs = t[:, t]
        if np.any(lhs != rhs):
            raise ValidationError("group table is not associative")
        for g in range(n):
            if not np.any(t[g, :] == 0):
                raise ValidationError("group element has no inverse", (g,))

    def mul(self, g, h):
        return int(self.table[g, h])

    def inv(self, g):
        return int(np.where(self.table[g, :] == 0)[0][0])

    def order(self, g):
        m, x = 1, int(g)
        while x != 0:
            x = self.mul(x, g)
            m += 1
        return m

    def power(self, g, e):
        x = 0
        for _ in range(int(e)):
            x = self.mul(x, g)
        return x

    def cyclic_factors(self):
        """[(generator, order), ...] presenting the group as their product.

        Greedy splitting: repeatedly take an element of maximal order in the
        quotient by the span so far, correcting it by a span element so that
        its cyclic group meets the span trivially.
        """
        if self._factors is not None:
            return self._factors
        span = {0: ()}
        factors = []
        while len(span) < self.n:
            best, best_m = None, 0
            for g in range(self.n):
                if g in span:
                    continue
                m, x = 1, g
                while x not in span:
                    x = self.mul(x, g)
                    m += 1
                if m > best_m:
                    best, best_m = g, m
            g, m = best, best_m
            # g^m lands in the span; absorb it so the new factor is direct
            rem = self.power(g, m)
            corr = None
            for c in span:
                if self.power(c, m) == self.inv(rem):
                    corr = c
                    break
            if corr is None:
                raise ValidationError("cyclic splitting failed", (g, m))
            g = self.mul(g, corr)
            new = {}
            x = 0
            for e in range(m):
                for elem, form in span.items():
                    new[self.mul(elem, x)] = form + (e,)
                x = self.mul(x, g)
            if len(new) != len(span) * m:
                raise ValidationError("cyclic factor is not direct", (g, m))
            span = new
            factors.append((g, m))
        self._factors = factors
        self._forms = {elem: form for elem, form in span.items()}
        if not factors:
            self._forms = {0: ()}
        return factors

    def normal_form(self, g):
        """Exponent tuple of g along cyclic_factors()."""
        self.cyclic_factors()
        return self._forms[int(g)]

    @classmethod
    def cyclic(cls, n):
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, check=False)

    @classmethod
    def product(cls, G1, G2):
        n1, n2 = G1.n, G2.n
        table = np.zeros((n1 * n2, n1 * n2), dtype=np.int64)
        for a in range(n1):
            for b in range(n2):
                for c in range(n1):
                    for d in range(n2):
                        table[a * n2 + b, c * n2 + d] = \
                            G1.table[a, c] * n2 + G2.table[b, d]
        return cls(table, check=False)


def cocycle_checks(G, omega):
    """Residuals: normalisation, symmetry and the cocycle identity."""
    w = np.asarray(omega, dtype=complex)
    if w.shape != (G.n, G.n):
        raise ValidationError("cochain table has wrong shape")
    norm = float(max(np.max(np.abs(w[0, :] - 1.0)),
                     np.max(np.abs(w[:, 0] - 1.0))))
    sym = float(np.max(np.abs(w - w.T)))
    t = G.table
    lhs = w[:, :, None] * w[t, :]
    rhs = w[None, :, :] * w[:, t]
    coc = float(np.max(np.abs(lhs - rhs)))
    return {"normalised": norm, "symmetric": sym, "cocycle": coc}


def coboundary_of(G, gamma):
    """omega(g,h) = gamma_g gamma_h / gamma_{gh}."""
    gamma = np.asarray(gamma, dtype=complex)
    return gamma[:, None] * gamma[None, :] / gamma[G.table]


def solve_symmetric_coboundary(G, omega, tol=1e-9):
    """gamma with gamma_e = 1 trivializing a symmetric normalised 2-cocycle.

    On a cyclic factor <a> of order m the telescoped recursion
    gamma(a^{j+1}) = gamma(a^j) gamma(a) / omega(a, a^j) forces
    gamma(a)^m = prod_j omega(a, a^j); the principal root fixes gamma(a) and
    the recursion the rest.  Products of factors are filled in through the
    normal form; the final residual check is the actual certificate.
    """
    w = np.asarray(omega, dtype=complex)
    checks = cocycle_checks(G, w)
    worst = max(checks.values())
    if worst > tol:
        raise ValidationError("not a symmetric normalised cocycle",
                              residual=worst)
    gamma = np.zeros(G.n, dtype=complex)
    gamma[0] = 1.0
    for g, m in G.cyclic_factors():
        prod = 1.0 + 0j
        x = 0
        for _ in range(m):
            prod *= w[g, x]
            x = G.mul(x, g)
        root = np.power(prod, 1.0 / m)
        val, x = 1.0 + 0j, 0
        for _ in range(m - 1):
            val = val * root / w[g, x]
            x = G.mul(x, g)
            if gamma[x] == 0:
                gamma[x] = val
    # extend multiplicatively along the normal form
    factors = G.cyclic_factors()
    for elem in range(G.n):
        if gamma[elem] != 0:
            continue
        form = G.normal_form(elem)
        val, x = 1.0 + 0j, 0
        for (g, m), e in zip(factors, form):
            step = G.power(g, e)
            if step == 0:
                continue
            val = val * gamma[step] / w[x, step]
            x = G.mul(x, step)
        gamma[elem] = val
    res = float(np.max(np.abs(coboundary_of(G, gamma) - w)))
    if res > tol:
        raise ValidationError("coboundary solve failed verification",
                              residual=res)
    return gamma
