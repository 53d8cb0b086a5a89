"""Lift random zig-zags and tabulate which checks fail.

    python3 scripts/lift_survey.py --seeds 50

For each φ-naturality failure the script also records whether the failing
column came from a leftward step and whether the obstruction ``p∘φ_U`` is
nonzero there, which is the only way the pulled-back column can fail.
"""
from __future__ import annotations

import argparse
import collections
import json

from mstruct.mcoalg import check_lift, zigzag_lift
from mstruct.samples import random_zigzag


def survey(seeds):
    rows = []
    for seed in seeds:
        ex = random_zigzag(seed)
        L = zigzag_lift(ex.top, ex.a, ex.b)
        rep = check_lift(L)
        kinds = [s.kind for s in L.top.steps]
        obstructed = []
        for kind, (j, phiU, _) in zip(kinds, L.phi_pairs):
            if kind != "left":
                continue
            p = L.columns[j].p.g
            U = p.source
            if any(p(phiU.image(x)) for n in U.degrees for x in U.labels(n)):
                obstructed.append(j)
        failed = sorted({k.split(".")[0] for k in rep.failures()})
        rows.append({"seed": seed, "desc": ex.description, "steps": kinds, "failed": failed,
                     "obstructed_columns": obstructed})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--json", action="store_true", help="dump every row as JSON")
    args = ap.parse_args()
    rows = survey(range(args.seeds))
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
        return
    tally = collections.Counter(name for r in rows for name in r["failed"])
    with_left = sum("left" in r["steps"] for r in rows)
    print(f"{len(rows)} zig-zags, {with_left} with a leftward step")
    for name, count in sorted(tally.items()):
        print(f"  {name:16s} fails in {count}")
    clean = sum(not r["failed"] for r in rows)
    print(f"  all checks pass in {clean}")
    explained = all(bool(r["failed"]) == bool(r["obstructed_columns"]) for r in rows)
    print(f"failures coincide with nonzero p∘φ_U: {explained}")


if __name__ == "__main__":
    main()
