#!/usr/bin/env python3
"""Build every TKK construction over the catalog and compare the outputs.

For each Jordan algebra this prints the graded dimensions of Kan, Ko, Ko~
and Ti, the outer-derivation dims of Ko and Ko~, and whether Kan agrees with
Ko at the level of graded dimensions (it does exactly for the unital
entries).  With --fingerprints it also prints the full invariant bundle of
Ko so near-coincidences across families stand out.
"""

import argparse

from supertkk.catalog import jordan_entries
from supertkk.jordan import find_unit
from supertkk.superspace import parity_dims
from supertkk.tkk import (fingerprint, kantor, koecher, koecher_tilde,
                          lie_der_tower, out_dims, tits, zdims)


def zrow(g) -> str:
    z = zdims(g)
    e, o = parity_dims(g)
    return f"({z.get(-1, 0)},{z.get(0, 0)},{z.get(1, 0)}) = ({e}|{o})"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-dim", type=int, default=64,
                        help="skip algebras above this dimension")
    parser.add_argument("--fingerprints", action="store_true",
                        help="also print the invariant bundle of Ko(V)")
    args = parser.parse_args()

    for name, V in sorted(jordan_entries().items()):
        if V.dim > args.max_dim:
            print(f"{name}: skipped (--max-dim)")
            continue
        unit = find_unit(V)
        kan = kantor(V)
        ko = koecher(V)
        kot = koecher_tilde(V)
        ti = tits(V, "inn")
        print(f"{name}  dim {V.dim}  {'unital' if unit is not None else 'no unit'}")
        print(f"  Kan  {zrow(kan.lie)}")
        print(f"  Ko   {zrow(ko.lie)}")
        print(f"  Ko~  {zrow(kot.lie)}")
        print(f"  Ti   {zrow(ti.lie)}   (over Inn)")
        agree = zdims(kan.lie) == zdims(ko.lie)
        print(f"  Kan vs Ko graded dims: {'agree' if agree else 'DIFFER'}")
        out_ko = out_dims(lie_der_tower(ko.lie))
        out_kot = out_dims(lie_der_tower(kot.lie))
        print(f"  Out(Ko) {out_ko or 0}   Out(Ko~) {out_kot or 0}")
        if args.fingerprints:
            print(f"  fingerprint(Ko): {fingerprint(ko.lie)}")
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
