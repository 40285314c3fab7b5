"""Regenerate the bundled category data files.

Runs every builder in mfckit.tables through the full load-time validation
battery plus pentagon/hexagon, then writes src/mfckit/data/<name>.json with
one list entry per line so diffs stay readable.

Usage: python3 tools/gen_data.py [outdir]
"""

import json
import sys
import time
from pathlib import Path

from mfckit import load_category, validate_pentagon, validate_hexagon
from mfckit.tables import all_docs


def dump_doc(doc, path):
    lines = ["{"]
    keys = ["labels", "dual", "fusion", "F", "R"]
    for pos, key in enumerate(keys):
        rows = doc[key]
        tail = "," if pos < len(keys) - 1 else ""
        if key in ("labels", "dual"):
            lines.append('"%s": %s%s' % (key, json.dumps(rows), tail))
            continue
        if not rows:
            lines.append('"%s": []%s' % (key, tail))
            continue
        lines.append('"%s": [' % key)
        for i, row in enumerate(rows):
            sep = "," if i < len(rows) - 1 else ""
            lines.append(json.dumps(row) + sep)
        lines.append("]%s" % tail)
    lines.append("}")
    path.write_text("\n".join(lines) + "\n")


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else \
        Path(__file__).resolve().parent.parent / "src" / "mfckit" / "data"
    outdir.mkdir(parents=True, exist_ok=True)
    for name, doc in all_docs().items():
        t0 = time.time()
        cat = load_category(doc, name=name)
        pent = validate_pentagon(cat)
        hexr = validate_hexagon(cat)
        if pent > cat.tol or hexr > cat.tol:
            raise SystemExit("%s fails coherence: pent=%g hex=%g" % (name, pent, hexr))
        path = outdir / ("%s.json" % name)
        dump_doc(doc, path)
        # round trip check
        load_category(path, name=name)
        print("%-10s  pent=%.2e  hex=%.2e  |I|=%d  #F=%-6d %.2fs" %
              (name, pent, hexr, len(doc["labels"]), len(doc["F"]),
               time.time() - t0))
    print("wrote", outdir)


if __name__ == "__main__":
    main()
