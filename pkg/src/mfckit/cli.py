"""Command-line front end: deterministic JSON reports over the library.

Commands: validate, rep, correlator, centre, grading, classify.  Category
arguments are file paths, tried verbatim first and then inside the bundled
data directory (override with MFCKIT_DATA); bare names like "ising" work
too.  Exit codes: 0 success, 1 input or validation error, 2 pipeline ran but
did not succeed (failed centre checks, no isomorphism exhibited).

Reports are emitted with sorted keys and every float printed with 17
significant digits, so a fixed seed and configuration gives byte-identical
output.
"""

import argparse
import os
import sys

import numpy as np

from .algebra import (correlator, induce_frobenius, is_nondegenerate,
                      load_algebra, unit_algebra)
from .category import (ValidationError, data_dir, load_category,
                       is_pseudo_unitary, validate_hexagon, validate_pentagon)
from .centre import doubled, full_centre, z_unit
from .cohomology import AbelianGroup
from .mcg import DEFAULT_CAP_DIM, build_rep, commutant_dim, invariant_subspace
from .morita import (CocycleData, GradingData, LambdaTable, classify,
                     extract_lambda, grading, isomorphism_residual, normalize,
                     object_twist)


# -- serialization ---------------------------------------------------------

def _fmt_float(x):
    if not np.isfinite(x):
        return '"%s"' % ("nan" if x != x else ("inf" if x > 0 else "-inf"))
    return "%.17g" % x


def to_jsonable(x):
    """Library objects down to dict/list/scalars; complex as {re, im}."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, str) or x is None:
        return x
    if isinstance(x, np.ndarray):
        return [to_jsonable(v) for v in x.tolist()] if x.ndim \
            else to_jsonable(x.item())
    if isinstance(x, dict):
        return {
            ",".join(str(int(t)) for t in k) if isinstance(k, tuple)
            else str(k): to_jsonable(v)
            for k, v in x.items()
        }
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, LambdaTable):
        return {"lower": to_jsonable(x.lower), "upper": to_jsonable(x.upper),
                "eta0": to_jsonable(x.eta0), "eps0": to_jsonable(x.eps0)}
    if isinstance(x, CocycleData):
        return {"group_table": to_jsonable(x.group.table),
                "omega": to_jsonable(x.omega),
                "gamma": to_jsonable(x.gamma)}
    if isinstance(x, AbelianGroup):
        return {"order": x.n, "table": to_jsonable(x.table)}
    if isinstance(x, GradingData):
        return {"I_ad": list(x.I_ad), "group_table": to_jsonable(x.G.table),
                "partition": to_jsonable(x.partition),
                "filtration": to_jsonable(x.n), "N": x.N,
                "components": to_jsonable(x.components)}
    raise TypeError("cannot serialize %r" % type(x))


def dumps(doc):
    """JSON text with sorted keys and %.17g floats; newline terminated."""
    out = []

    def emit(x):
        if x is None:
            out.append("null")
        elif x is True:
            out.append("true")
        elif x is False:
            out.append("false")
        elif isinstance(x, str):
            out.append('"%s"' % x.replace("\\", "\\\\").replace('"', '\\"'))
        elif isinstance(x, int):
            out.append(str(x))
        elif isinstance(x, float):
            out.append(_fmt_float(x))
        elif isinstance(x, dict):
            out.append("{")
            for t, key in enumerate(sorted(x)):
                if t:
                    out.append(", ")
                emit(str(key))
                out.append(": ")
                emit(x[key])
            out.append("}")
        elif isinstance(x, list):
            out.append("[")
            for t, v in enumerate(x):
                if t:
                    out.append(", ")
                emit(v)
            out.append("]")
        else:
            raise TypeError("cannot serialize %r" % type(x))

    emit(doc)
    out.append("\n")
    return "".join(out)


# -- input plumbing ----------------------------------------------------------

def _resolve(path):
    base = os.path.basename(path)
    for cand in (path, os.path.join(data_dir(), path),
                 os.path.join(data_dir(), path + ".json"),
                 os.path.join(data_dir(), base),
                 os.path.join(data_dir(), base + ".json")):
        if os.path.exists(cand):
            return cand
    raise FileNotFoundError(path)


def _load(args):
    C = load_category(_resolve(args.category), tol=args.tol)
    return C


def _write(args, doc):
    text = dumps(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _genus_range(spec):
    if "-" in spec:
        lo, hi = spec.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


# -- commands ----------------------------------------------------------------

def cmd_validate(args):
    C = _load(args)
    pent = validate_pentagon(C)
    hexa = validate_hexagon(C)
    passed = pent <= C.tol and hexa <= C.tol
    _write(args, {
        "command": "validate", "category": C.name, "n": C.n,
        "labels": list(C.labels), "tol": C.tol,
        "residuals": {"pentagon": pent, "hexagon": hexa},
        "pseudo_unitary": is_pseudo_unitary(C),
        "quantum_dims": to_jsonable(C.d),
        "total_dim": to_jsonable(complex(C.D)),
        "twists": to_jsonable(C.theta),
        "passed": passed,
    })
    return 0 if passed else 1


def cmd_rep(args):
    C = _load(args)
    target = doubled(C) if args.doubled else C
    cap = args.cap_dim if args.cap_dim else DEFAULT_CAP_DIM
    entries = []
    for g in _genus_range(args.genus):
        rep = build_rep(target, g, cap_dim=cap)
        cd = commutant_dim(rep)
        entry = {"genus": g, "dim": rep.dim, "commutant_dim": cd,
                 "irreducible": cd == 1,
                 "generators": {k: to_jsonable(M)
                                for k, M in rep.generators.items()}}
        if args.doubled:
            entry["fixed_space_dim"] = int(invariant_subspace(rep).shape[1])
        entries.append(entry)
    _write(args, {"command": "rep", "category": C.name,
                  "doubled": bool(args.doubled), "genera": entries})
    return 0


def cmd_correlator(args):
    C = _load(args)
    if args.zunit:
        B = z_unit(C, tol=C.tol).algebra
    elif args.algebra:
        B = induce_frobenius(load_algebra(_resolve(args.algebra), doubled(C)))
    else:
        raise ValidationError("correlator needs an algebra file or --zunit")
    if not is_nondegenerate(B):
        raise ValidationError("correlator algebra is degenerate")
    entries = []
    for g in _genus_range(args.genus):
        if g == 0:
            entries.append({"genus": 0,
                            "components": [to_jsonable(correlator(B, 0))],
                            "residual": 0.0})
            continue
        cap = args.cap_dim if args.cap_dim else DEFAULT_CAP_DIM
        rep = build_rep(B.category, g, cap_dim=cap)
        vec = correlator(B, g, rep=rep)
        res = 0.0
        for M in rep.generators.values():
            res = max(res, float(np.max(np.abs(M @ vec - vec))))
        entries.append({"genus": g, "dim": rep.dim,
                        "components": to_jsonable(vec), "residual": res})
    _write(args, {"command": "correlator", "category": C.name,
                  "zunit": bool(args.zunit), "genera": entries})
    return 0


def cmd_centre(args):
    C = _load(args)
    A = induce_frobenius(load_algebra(_resolve(args.algebra), C)) \
        if args.algebra else unit_algebra(C)
    res = full_centre(A, tol=C.tol)
    _write(args, {
        "command": "centre", "category": C.name, "source": res.source,
        "passed": res.passed,
        "object_multiplicities": to_jsonable(res.algebra.mult),
        "verification": to_jsonable(res.verification),
    })
    return 0 if res.passed else 2


def cmd_grading(args):
    C = _load(args)
    g = grading(C.ring)
    _write(args, {"command": "grading", "category": C.name,
                  "grading": to_jsonable(g)})
    return 0


def cmd_classify(args):
    C = _load(args)
    if args.selftest_twist:
        rng = np.random.default_rng(args.seed)
        f0 = np.exp(rng.normal(size=C.n) + 1j * rng.normal(size=C.n))
        from .algebra import transport
        Zt = transport(z_unit(C, tol=C.tol).algebra, object_twist(C, f0))
        f, final, cert = normalize(extract_lambda(Zt, tol=C.tol),
                                   grading(C.ring), tol=C.tol)
        iso = isomorphism_residual(Zt, f) if cert["passed"] else None
        ok = bool(cert["passed"] and iso is not None and iso < C.tol)
        _write(args, {
            "command": "classify", "category": C.name, "selftest": True,
            "seed": args.seed, "twist": to_jsonable(f0),
            "normalizer": to_jsonable(f),
            "final_deviation": final.max_deviation_from_one(),
            "isomorphism_residual": to_jsonable(iso),
            "certificate": to_jsonable(cert), "passed": ok,
        })
        return 0 if ok else 2
    A = induce_frobenius(load_algebra(_resolve(args.algebra), C)) \
        if args.algebra else unit_algebra(C)
    cap = args.cap_dim if args.cap_dim else DEFAULT_CAP_DIM
    out = classify(A, genus_cap=args.genus_cap, cap_dim=cap, tol=C.tol)
    _write(args, {"command": "classify", "selftest": False,
                  **to_jsonable(out)})
    return 0 if out["morita_trivial"] else 2


# -- argument plumbing --------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(
        prog="mfckit",
        description="modular fusion category toolkit: validation, "
                    "mapping-class-group representations, centres, and "
                    "Morita classification")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algebra=False):
        sp.add_argument("category", help="category file or bundled name")
        if algebra:
            sp.add_argument("algebra", nargs="?", default=None,
                            help="algebra file (default: the unit algebra)")
        sp.add_argument("--tol", type=float, default=None,
                        help="tolerance override")
        sp.add_argument("--out", default=None, help="write the report here")

    sp = sub.add_parser("validate", help="run all category consistency checks")
    common(sp)
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("rep", help="mapping class group representation")
    common(sp)
    sp.add_argument("--genus", default="1", help="genus g or range a-b")
    sp.add_argument("--doubled", action="store_true",
                    help="represent on the doubled category")
    sp.add_argument("--cap-dim", type=int, default=None)
    sp.set_defaults(fn=cmd_rep)

    sp = sub.add_parser("correlator", help="torus-chain invariant vector")
    common(sp, algebra=True)
    sp.add_argument("--genus", default="1", help="genus g or range a-b")
    sp.add_argument("--zunit", action="store_true",
                    help="use the centre of the unit as the algebra")
    sp.add_argument("--cap-dim", type=int, default=None)
    sp.set_defaults(fn=cmd_correlator)

    sp = sub.add_parser("centre", help="full centre of an algebra")
    common(sp, algebra=True)
    sp.set_defaults(fn=cmd_centre)

    sp = sub.add_parser("grading", help="adjoint subring and grading group")
    common(sp)
    sp.set_defaults(fn=cmd_grading)

    sp = sub.add_parser("classify", help="Morita-triviality pipeline")
    common(sp, algebra=True)
    sp.add_argument("--genus", dest="genus_cap", type=int, default=2,
                    help="audit genus cap")
    sp.add_argument("--cap-dim", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--selftest-twist", action="store_true",
                    help="normalize a seeded random twist of z_unit")
    sp.set_defaults(fn=cmd_classify)
    return p


def main(argv=None):
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.fn(args)
    except (ValidationError,) as exc:
        doc = {"command": args.command, "error": {
            "identity": exc.identity,
            "labels": to_jsonable(exc.labels),
            "residual": to_jsonable(exc.residual)}}
        sys.stdout.write(dumps(doc))
        return 1
    except FileNotFoundError as exc:
        sys.stdout.write(dumps({"command": args.command,
                                "error": {"identity": "file not found",
                                          "labels": str(exc), "residual": None}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
