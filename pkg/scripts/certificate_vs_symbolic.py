"""Compare the greedy certificate with the leading term of the symbolic determinant.

For each sampled instance (x, y, i) this records whether the certificate
monomial and coefficient equal the graded-lex leading term of the exact
determinant.  Instances where the certificate coefficient vanishes are listed
with the merged blocks that repeat a row index (two levels feeding the same
row ``j`` from one valuation set give equal Vandermonde nodes).

    python scripts/certificate_vs_symbolic.py --n 5
    python scripts/certificate_vs_symbolic.py --n 6 --components 40 --symbolic-limit 14
"""

import argparse
import json
import random
import time
from collections import Counter

from affspringer.algebra import format_monomial, poly_det
from affspringer.blocks import NotComparable, build_block_matrix, membership_matrix, select_rows
from affspringer.certificate import (candidates_below, certificate_blocks, certificate_exponents,
                                     greedy_submatrices, monomial_coefficient_for)
from affspringer.springer import default_spectral
from affspringer.weyl import enumerate_F


def repeated_rows(sel) -> list:
    out = []
    for blk in certificate_blocks(sel):
        js = [j for _, j in blk.rows]
        if not blk.own and len(set(js)) < len(js):
            out.append({"valuation": blk.valuation, "rows": blk.rows, "columns": blk.columns})
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--components", type=int, default=None, help="sample this many components")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--symbolic-limit", type=int, default=12,
                    help="largest determinant expanded symbolically")
    args = ap.parse_args()
    n, s = args.n, default_spectral(args.n)
    rng = random.Random(args.seed)
    box = enumerate_F(n)
    if args.components is not None and args.components < len(box):
        box = rng.sample(box, args.components)
    start = time.perf_counter()
    tally, zeros = Counter(), []
    for x in box:
        blocks = {}
        for y in candidates_below(x):
            for i in range(n):
                try:
                    sel = select_rows(x, y, i)
                except NotComparable:
                    continue
                g = greedy_submatrices(x, y, i)
                coeff, methods = monomial_coefficient_for(g, s)
                tally.update(methods)
                tally["instances"] += 1
                if coeff == 0:
                    tally["zero_coefficient"] += 1
                    zeros.append({"x": x.encode(), "y": y.encode(), "i": i, "size": sel.size,
                                  "vertex": g.vertex, "candidate_vertex": g.candidate_vertex,
                                  "certificate": format_monomial(n, certificate_exponents(g)),
                                  "repeated_rows": repeated_rows(g)})
                if sel.size > args.symbolic_limit:
                    tally["symbolic_skipped"] += 1
                    continue
                if i not in blocks:
                    blocks[i] = build_block_matrix(x, i, s)
                det = poly_det(membership_matrix(blocks[i], sel))
                lead = det.leading_term() if not det.is_zero() else None
                same = lead == (certificate_exponents(g), coeff)
                tally["leading_term_match" if same else "leading_term_differs"] += 1
                if coeff == 0 and zeros:
                    zeros[-1]["symbolic_coefficient"] = str(det.coefficient(certificate_exponents(g)))
                    zeros[-1]["symbolic_leading"] = (format_monomial(n, lead[0]) if lead else "0")
    print(json.dumps({"n": n, "components": len(box), **tally,
                      "seconds": round(time.perf_counter() - start, 1)}, sort_keys=True))
    for z in zeros[:10]:
        print(json.dumps(z, sort_keys=True))


if __name__ == "__main__":
    main()
