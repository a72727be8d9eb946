#!/usr/bin/env python3
"""Survey the structure-algebra dimensions across the whole Jordan catalog.

Prints one row per algebra with the dims of Der, Inn, istr, istr~, str,
str_w, pair_inn and pair_der, flags the entries where some L_x is itself a
derivation (so {L} + Der is not a direct sum), and tallies where the
inclusion chain istr <= str and pair_inn <= pair_der stays strict.
"""

import argparse

from supertkk.catalog import jordan_entries
from supertkk.jordan import find_unit
from supertkk.structure import inclusion_report, structure_summary


def fmt_dims(space) -> str:
    e, o = space.dims()
    return f"{e}|{o}"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-dim", type=int, default=64,
                        help="skip algebras above this dimension")
    args = parser.parse_args()

    cols = ("Der", "Inn", "istr", "istr~", "str", "str_w", "pair_inn",
            "pair_der")
    header = f"{'algebra':<18} {'dim':>4} {'unit':>4} " + " ".join(
        f"{c:>9}" for c in cols)
    print(header)
    print("-" * len(header))
    chain_failures = []
    for name, V in sorted(jordan_entries().items()):
        if V.dim > args.max_dim:
            print(f"{name:<18} {V.dim:>4} skipped (--max-dim)")
            continue
        summary = structure_summary(V)
        unit = "yes" if find_unit(V) is not None else "no"
        row = f"{name:<18} {V.dim:>4} {unit:>4} " + " ".join(
            f"{fmt_dims(summary[c]):>9}" for c in cols)
        print(row)
        for r in inclusion_report(V):
            if r.kind == "check" and not r.passed:
                print(f"    !! {r.name}: {r.detail}")
            if r.name == "chain_hypothesis" and not r.passed:
                chain_failures.append((name, r.detail))
    print()
    if chain_failures:
        print("chain hypothesis failures (some nonzero L_x is inner):")
        for name, detail in chain_failures:
            print(f"  {name}: {detail}")
    else:
        print("chain hypothesis holds on every surveyed entry")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
