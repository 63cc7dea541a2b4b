#!/usr/bin/env python3
"""Write classical modular polynomial data files using PARI/GP.

Usage:
    python tools/gen_modpoly.py OUTDIR ELL [ELL ...]
    python tools/gen_modpoly.py OUTDIR --upto 139

Requires cypari2 (``pip install cypari2``).  Output follows the package's
text format: a header line ``ell <l>`` then ``<dx> <dy> <coefficient>`` for
every nonzero coefficient with dx >= dy.
"""

import argparse
import sys
from pathlib import Path


def _primes_upto(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, int(k**0.5) + 1))]


def write_modpoly(pari, ell: int, outdir: Path) -> Path:
    P = pari(f"polmodular({ell})")
    x = pari("x")
    y = pari("y")
    lines = [f"ell {ell}", f"# classical modular polynomial Phi_{ell}, from PARI polmodular"]
    for dx in range(ell + 2):
        cx = pari.polcoef(P, dx, x)
        for dy in range(dx + 1):
            c = int(pari.polcoef(cx, dy, y))
            if c:
                lines.append(f"{dx} {dy} {c}")
    path = outdir / f"phi_{ell}.txt"
    tmp = path.with_suffix(".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    tmp.replace(path)
    return path


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=Path)
    ap.add_argument("ells", nargs="*", type=int)
    ap.add_argument("--upto", type=int, help="every prime ell up to this bound")
    ap.add_argument("--skip-existing", action="store_true")
    args = ap.parse_args(argv)

    import cypari2

    pari = cypari2.Pari(size=10**8, sizemax=4 * 10**9)
    ells = list(args.ells)
    if args.upto:
        ells += _primes_upto(args.upto)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for ell in sorted(set(ells)):
        target = args.outdir / f"phi_{ell}.txt"
        if args.skip_existing and target.exists():
            continue
        print(f"ell={ell} -> {write_modpoly(pari, ell, args.outdir)}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
