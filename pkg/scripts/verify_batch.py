"""Seeded verify batch with a progress dot per instance.

    python scripts/verify_batch.py unicyclic 300 7
"""

import argparse
import json
import sys

from pathideal.verify import VerifyConfig, run_verify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("family", choices=["tree", "unicyclic"])
    ap.add_argument("count", type=int, nargs="?", default=100)
    ap.add_argument("seed", type=int, nargs="?", default=0)
    ap.add_argument("--n-min", type=int, default=6)
    ap.add_argument("--n-max", type=int, default=13)
    args = ap.parse_args()
    cfg = VerifyConfig(args.family, args.n_min, args.n_max, args.count, args.seed)

    def dot(r):
        sys.stderr.write("x" if r.failed else ".")
        sys.stderr.flush()

    summary = run_verify(cfg, progress=dot)
    sys.stderr.write("\n")
    print(json.dumps(summary.to_dict(), indent=2, sort_keys=True))
    return 0 if summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
