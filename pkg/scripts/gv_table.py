"""Print Gopakumar-Vafa invariants of the preset surfaces as a table.

    python scripts/gv_table.py --max-degree 3 --surfaces p2 b1
"""
import argparse

from toricgw.toric import PRESET_NAMES, gv_extract, preset


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--surfaces", nargs="+", default=list(PRESET_NAMES), choices=PRESET_NAMES)
    args = ap.parse_args()
    for name in args.surfaces:
        surf = preset(name)
        table = gv_extract(surf, args.max_degree)
        print(f"== {name}  (variables {', '.join(surf.variables)}, grading {list(surf.grading)})")
        graded = lambda key: (sum(a * b for a, b in zip(surf.grading, key[0])), key)
        for (cls, g), n in sorted(table.items(), key=lambda kv: graded(kv[0])):
            print(f"  class {str(list(cls)):12s} genus {g}:  {n}")


if __name__ == "__main__":
    main()
