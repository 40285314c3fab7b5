"""Builders for the bundled category tables.

Each builder returns a plain dict in the JSON format of `load_category`.
The small categories are standard hand tables; su(2) level k comes from the
quantum Racah formula for 6j symbols at q = exp(i pi / r), r = k + 2, in the
square-root (unitary) normalisation, with

    F(a, b, c; d)[e, f] = (-1)^((a+b+c+d)/2) sqrt([e+1][f+1]) {a b e; c d f}_q
    R(a, b; c) = (-1)^((c-a-b)/2) q^((c(c+2) - a(a+2) - b(b+2)) / 4)

in 2j-integer labels.  Terms of the Racah sum with t + 1 >= r contain the
vanishing quantum number [r] and are dropped (root-of-unity truncation).
The resulting twists are theta_a = q^(a(a+2)/2), i.e. exp(2 pi i h_a) for
conformal weights h_a = a(a+2)/(4r).

`tools/gen_data.py` runs every builder through the full validation battery
and writes src/mfckit/data/*.json.
"""

import numpy as np

__all__ = ["trivial_doc", "semion_doc", "ising_doc", "fibonacci_doc",
           "su2_doc", "sub_doc", "all_docs"]


def trivial_doc():
    return {
        "labels": ["1"],
        "dual": [0],
        "fusion": [[0, 0, 0, 1]],
        "F": [],
        "R": [],
    }


def semion_doc():
    # Z/2 fusion, F(s,s,s;s) = -1, theta_s = i.
    return {
        "labels": ["1", "s"],
        "dual": [0, 1],
        "fusion": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]],
        "F": [[1, 1, 1, 1, 0, 0, -1.0, 0.0]],
        "R": [[1, 1, 0, 0.0, 1.0]],
    }


def ising_doc():
    """Ising anyons: labels (1, psi, sigma), sigma.sigma = 1 + psi.

    The F-solution with [F(s,s,s;s)] = H/sqrt(2) and the two -1 entries
    F(psi,sigma,psi;sigma) = F(sigma,psi,sigma;psi) = -1; braiding chirality
    with theta_sigma = exp(i pi / 8).
    """
    s2 = float(np.sqrt(2.0))
    c8, s8 = float(np.cos(np.pi / 8)), float(np.sin(np.pi / 8))
    c38, s38 = float(np.cos(3 * np.pi / 8)), float(np.sin(3 * np.pi / 8))
    return {
        "labels": ["1", "psi", "sigma"],
        "dual": [0, 1, 2],
        "fusion": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [0, 2, 2, 1],
                   [2, 0, 2, 1], [1, 1, 0, 1], [1, 2, 2, 1], [2, 1, 2, 1],
                   [2, 2, 0, 1], [2, 2, 1, 1]],
        "F": [
            [1, 1, 1, 1, 0, 0, 1.0, 0.0],
            [1, 1, 2, 2, 0, 2, 1.0, 0.0],
            [1, 2, 1, 2, 2, 2, -1.0, 0.0],
            [1, 2, 2, 0, 2, 1, 1.0, 0.0],
            [1, 2, 2, 1, 2, 0, 1.0, 0.0],
            [2, 1, 1, 2, 2, 0, 1.0, 0.0],
            [2, 1, 2, 0, 2, 2, 1.0, 0.0],
            [2, 1, 2, 1, 2, 2, -1.0, 0.0],
            [2, 2, 1, 0, 1, 2, 1.0, 0.0],
            [2, 2, 1, 1, 0, 2, 1.0, 0.0],
            [2, 2, 2, 2, 0, 0, 1 / s2, 0.0],
            [2, 2, 2, 2, 0, 1, 1 / s2, 0.0],
            [2, 2, 2, 2, 1, 0, 1 / s2, 0.0],
            [2, 2, 2, 2, 1, 1, -1 / s2, 0.0],
        ],
        "R": [
            [1, 1, 0, -1.0, 0.0],
            [2, 2, 0, c8, -s8],
            [2, 2, 1, c38, s38],
            [1, 2, 2, 0.0, -1.0],
            [2, 1, 2, 0.0, -1.0],
        ],
    }


def fibonacci_doc():
    """Fibonacci: tau.tau = 1 + tau, d_tau the golden ratio, theta_tau = e^{4 pi i/5}."""
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    a, b = float(1 / phi), float(1 / np.sqrt(phi))
    r1 = np.exp(-4j * np.pi / 5)
    rt = np.exp(3j * np.pi / 5)
    return {
        "labels": ["1", "tau"],
        "dual": [0, 1],
        "fusion": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1],
                   [1, 1, 0, 1], [1, 1, 1, 1]],
        "F": [
            [1, 1, 1, 1, 0, 0, a, 0.0],
            [1, 1, 1, 1, 0, 1, b, 0.0],
            [1, 1, 1, 1, 1, 0, b, 0.0],
            [1, 1, 1, 1, 1, 1, -a, 0.0],
            [1, 1, 1, 0, 1, 1, 1.0, 0.0],
        ],
        "R": [
            [1, 1, 0, float(r1.real), float(r1.imag)],
            [1, 1, 1, float(rt.real), float(rt.imag)],
        ],
    }


def su2_doc(k, ell=1):
    """su(2) level k: labels 0..k in 2j units, all self-dual, r = k + 2.

    `ell` (odd, coprime to 2r) selects the root q = exp(i pi ell / r); the
    default is the unitary embedding, other values give Galois conjugates
    with some negative quantum dimensions.
    """
    r = k + 2
    n = k + 1
    qn = lambda m: np.sin(m * ell * np.pi / r) / np.sin(ell * np.pi / r)
    qfact = [1.0 + 0j]
    for m in range(1, r):
        qfact.append(qfact[-1] * qn(m))
    # per-label branch of sqrt(d): a fixed vertex gauge, so that the
    # sqrt(d_e d_f) normalisation stays pentagon-compatible at conjugate roots
    sqd = [np.sqrt(qn(m + 1) + 0j) for m in range(n)]

    def adm(a, b, c):
        return (a + b + c) % 2 == 0 and abs(a - b) <= c <= min(a + b, 2 * k - a - b)

    def tri(a, b, c):
        return np.sqrt(qfact[(-a + b + c) // 2] * qfact[(a - b + c) // 2]
                       * qfact[(a + b - c) // 2] / qfact[(a + b + c) // 2 + 1])

    def sixj(a, b, e, c, d, f):
        # triads (a,b,e), (a,d,f), (c,b,f), (c,d,e); 2j units throughout
        pref = tri(a, b, e) * tri(a, d, f) * tri(c, b, f) * tri(c, d, e)
        t1 = (a + b + e) // 2
        t2 = (a + d + f) // 2
        t3 = (c + b + f) // 2
        t4 = (c + d + e) // 2
        q1 = (a + b + c + d) // 2
        q2 = (b + e + d + f) // 2
        q3 = (e + a + f + c) // 2
        tot = 0.0
        for t in range(max(t1, t2, t3, t4), min(q1, q2, q3, r - 2) + 1):
            tot += (-1) ** t * qfact[t + 1] / (
                qfact[t - t1] * qfact[t - t2] * qfact[t - t3] * qfact[t - t4]
                * qfact[q1 - t] * qfact[q2 - t] * qfact[q3 - t])
        return pref * tot

    fusion, F, R = [], [], []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if adm(a, b, c):
                    fusion.append([a, b, c, 1])
                    if a and b:
                        ph = (-1) ** ((c - a - b) // 2) * np.exp(
                            1j * ell * np.pi
                            * (c * (c + 2) - a * (a + 2) - b * (b + 2))
                            / (4 * r))
                        R.append([a, b, c, float(ph.real), float(ph.imag)])
    for a in range(1, n):
        for b in range(1, n):
            for c in range(1, n):
                for e in range(n):
                    if not adm(a, b, e):
                        continue
                    for d in range(n):
                        if not adm(e, c, d):
                            continue
                        for f in range(n):
                            if adm(b, c, f) and adm(a, f, d):
                                v = (-1) ** ((a + b + c + d) // 2) \
                                    * sqd[e] * sqd[f] \
                                    * sixj(a, b, e, c, d, f)
                                F.append([a, b, c, d, e, f,
                                          float(v.real), float(v.imag)])
    return {"labels": [str(a) for a in range(n)], "dual": list(range(n)),
            "fusion": fusion, "F": F, "R": R}


def sub_doc(doc, keep):
    """Full subcategory on the label subset `keep` (must be fusion-closed)."""
    remap = {old: new for new, old in enumerate(keep)}
    out = {"labels": [doc["labels"][i] for i in keep],
           "dual": [remap[doc["dual"][i]] for i in keep],
           "fusion": [[remap[a], remap[b], remap[c], m]
                      for a, b, c, m in doc["fusion"]
                      if a in remap and b in remap and c in remap],
           "F": [[remap[a], remap[b], remap[c], remap[d], remap[e], remap[f],
                  re, im] for a, b, c, d, e, f, re, im in doc["F"]
                 if all(x in remap for x in (a, b, c, d, e, f))],
           "R": [[remap[a], remap[b], remap[c], re, im]
                 for a, b, c, re, im in doc["R"]
                 if a in remap and b in remap and c in remap]}
    return out


def all_docs():
    docs = {
        "trivial": trivial_doc(),
        "semion": semion_doc(),
        "ising": ising_doc(),
        "fibonacci": fibonacci_doc(),
    }
    for k in range(1, 11):
        docs["su2_%d" % k] = su2_doc(k)
    return docs
