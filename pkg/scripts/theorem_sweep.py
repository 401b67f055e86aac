"""Sweep every component of a given rank and compare fixed points with the Bruhat interval.

    python scripts/theorem_sweep.py --n 4 --methods certificate,randomized
"""

import argparse
import json
import time
from collections import Counter

from affspringer.report import ALL_METHODS, RunConfig, component_report, dumps, header
from affspringer.weyl import enumerate_F


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--methods", default="certificate,randomized")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--limit", type=int, default=None, help="only the first LIMIT components")
    ap.add_argument("--json", help="write the full report here")
    args = ap.parse_args()
    methods = ALL_METHODS if args.methods == "all" else tuple(args.methods.split(","))
    cfg = RunConfig(n=args.n, methods=methods, seed=args.seed, extra_comparisons=False)
    box = enumerate_F(args.n)[: args.limit]
    start = time.perf_counter()
    comps, statuses = [], Counter()
    for k, x in enumerate(box, 1):
        comp = component_report(x, cfg)
        comps.append(comp)
        statuses[comp["status"]] += 1
        gaps = {m: len(g) for m, g in comp["gaps"].items() if g}
        print(f"[{k}/{len(box)}] {comp['status']:12s} x={comp['x']} |bound|={len(comp['bound'])}"
              + (f" gaps={gaps}" if gaps else ""), flush=True)
    print(json.dumps({"n": args.n, "components": len(box), **statuses,
                      "seconds": round(time.perf_counter() - start, 1)}))
    if args.json:
        doc = header("verify-theorem", cfg)
        doc.update(status="fail" if statuses["fail"] else "inconclusive" if statuses["inconclusive"] else "pass",
                   partial=len(box) < len(enumerate_F(args.n)), results=comps,
                   summary={"components": len(comps), **statuses})
        with open(args.json, "w") as fh:
            fh.write(dumps(doc))


if __name__ == "__main__":
    main()
