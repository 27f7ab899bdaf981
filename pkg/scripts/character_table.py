"""Print the character table of a lattice algebra or its dual-lattice module.

    python3 scripts/character_table.py --gram "2" --max-weight 6
    python3 scripts/character_table.py --gram "0,1;1,0" --max-weight 4 --dual
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from latticevoa import build_even_lattice, character_series, dual_lattice_module, lattice_algebra


@dataclass
class TableConfig:
    gram: list
    max_weight: int = 6
    radius: int = 1
    dual: bool = False


def parse_gram(text: str) -> list:
    return [[int(x) for x in row.split(",")] for row in text.split(";")]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gram", required=True, help="rows separated by ';', entries by ','")
    ap.add_argument("--max-weight", type=int, default=6)
    ap.add_argument("--radius", type=int, default=1)
    ap.add_argument("--dual", action="store_true", help="use the sum over all coset modules")
    ns = ap.parse_args()
    cfg = TableConfig(parse_gram(ns.gram), ns.max_weight, ns.radius, ns.dual)
    L = build_even_lattice(cfg.gram)
    ctx = dual_lattice_module(L) if cfg.dual else lattice_algebra(L)
    series = character_series(ctx, ctx.window(cfg.max_weight, cfg.radius))
    print(series.to_csv(), end="")
    print("# totals by weight:", {str(w): d for w, d in series.total_by_weight().items()})


if __name__ == "__main__":
    main()
