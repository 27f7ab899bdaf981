"""Time the component Jacobi box per sampled triple.

Useful for choosing sample sizes: cost grows quickly with the weights of the
triple and, on indefinite lattices, with how negative the target sector's
lower bound is.

    python3 scripts/jacobi_timing.py --gram "0,1;1,0" --count 12
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from latticevoa import build_even_lattice, check_jacobi_box, lattice_algebra, sample_triples


@dataclass
class TimingConfig:
    gram: list
    count: int = 12
    seed: int = 0
    max_weight: int = 3


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gram", default="2")
    ap.add_argument("--count", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-weight", type=int, default=3)
    ns = ap.parse_args()
    cfg = TimingConfig([[int(x) for x in r.split(",")] for r in ns.gram.split(";")], ns.count, ns.seed, ns.max_weight)
    V = lattice_algebra(build_even_lattice(cfg.gram))
    triples = sample_triples(V, V, V.window(cfg.max_weight, 1), cfg.max_weight, cfg.count, cfg.seed)
    total = 0.0
    for u, v, w in triples:
        start = time.perf_counter()
        rep = check_jacobi_box(V, [(u, v, w)])
        dt = time.perf_counter() - start
        total += dt
        print(f"{dt:7.2f} s  {'ok ' if rep.passed else 'BAD'}  u={u.render()}  v={v.render()}  w={w.render()}")
    print(f"total {total:.1f} s for {len(triples)} triples")


if __name__ == "__main__":
    main()
