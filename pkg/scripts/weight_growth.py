#!/usr/bin/env python3
"""Zero-weight growth experiment.

For the weighted bracket the zero-weight space of the regular module
contains the whole M family, so its dimension grows linearly with the
window: window evidence that the module is a weight module but not
Harish-Chandra.  The involution-bracket module keeps every weight space
at dimension two at every window.  This script prints both growth rows.

Usage: python scripts/weight_growth.py [max_half_window] [k]
"""

import sys

from trilie import ConstantFunctional, FKBracket, OMEGA
from trilie.analysis import fk_cartan_pairs, omega_cartan_pairs, weight_decompose
from trilie.report import Window


def main() -> int:
    max_half = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    k = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    fk = FKBracket(k, ConstantFunctional(1))
    sizes = list(range(2, max_half + 1))
    print(f"half-window:            {'  '.join(f'{s:4d}' for s in sizes)}")
    row = []
    for s in sizes:
        win = Window(-s, s)
        deco, rep = weight_decompose(fk, fk_cartan_pairs(win, k), win)
        assert rep.ok, rep.counterexamples
        row.append(deco.zero_weight_dim())
    print(f"fk zero-weight dim:     {'  '.join(f'{d:4d}' for d in row)}")
    row = []
    for s in sizes:
        win = Window(-s, s)
        deco, rep = weight_decompose(OMEGA, omega_cartan_pairs(), win)
        assert rep.ok, rep.counterexamples
        row.append(deco.max_dim)
    print(f"omega max weight dim:   {'  '.join(f'{d:4d}' for d in row)}")
    print("\nthe first row grows without bound; the second is constant at 2")
    return 0


if __name__ == "__main__":
    sys.exit(main())
