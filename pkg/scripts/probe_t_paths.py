"""Tabulate reg(S/I_t) against (t-1)·ν_t (+ cycle term) on random graphs.

Exploratory: prints how often the t-path analogue of the closed form holds.
"""

import sys
from collections import Counter

from pathideal.generators import GenConfig, generate
from pathideal.invariants import conjecture_probe


def main(t=4, count=40, seed=1):
    t, count, seed = int(t), int(count), int(seed)
    tally = Counter()
    for family in ("tree", "unicyclic"):
        cfg = GenConfig(family, 6, 11, count, seed)
        for i in range(count):
            rep = conjecture_probe(generate(cfg, i), t)
            tally[family, rep["holds"]] += 1
            if rep["holds"] is False:
                print(f"{family}#{i}: reg(S/I)={rep['reg_quotient']} predicted={rep['predicted']}")
    for (family, holds), k in sorted(tally.items(), key=str):
        print(f"{family:10s} holds={holds}: {k}")


if __name__ == "__main__":
    main(*sys.argv[1:])
