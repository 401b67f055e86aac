"""Write the alcove pictures for ranks 2 and 3, one per component, into a directory.

    python scripts/alcove_figures.py figures/
"""

import argparse
from pathlib import Path

from affspringer.alcoves import alcove_svg
from affspringer.weyl import enumerate_F


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=Path)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for n in (2, 3):
        (args.outdir / f"box_n{n}.svg").write_text(alcove_svg(n))
        for k, x in enumerate(enumerate_F(n)):
            (args.outdir / f"component_n{n}_{k}.svg").write_text(alcove_svg(n, x))
    print(f"wrote figures to {args.outdir}")


if __name__ == "__main__":
    main()
