"""Draw a pencil of circles through two points, and a touching pair, as SVG.

    python3 scripts/render_demo.py --plane mixed --out demo.svg
"""

import argparse

import numpy as np

from flatmink.classify import normalise
from flatmink.incidence import join, touch
from flatmink.planes import NAMED, named_plane
from flatmink.render import render_svg
from flatmink.torus import TorusPoint


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--plane", default="classical", choices=sorted(NAMED))
    ap.add_argument("--out", default="demo.svg")
    args = ap.parse_args()
    plane = normalise(named_plane(args.plane))
    p, q = TorusPoint(1.0, 1.0), TorusPoint(3.0, 0.2)
    circles = [join(plane, p, q, TorusPoint(x, 4.0)).circle for x in np.linspace(-2.0, 0.5, 4)]
    touching = touch(plane, circles[0], p, TorusPoint(-1.0, -1.0))
    svg = render_svg(circles + [touching], [p, q, TorusPoint(-1.0, -1.0)],
                     title=f"pencil through two points, {args.plane} plane")
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
