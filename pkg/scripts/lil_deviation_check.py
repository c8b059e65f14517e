#!/usr/bin/env python3
"""Tabulate the self-normalized deviation bound against empirical crossing
frequencies of Gaussian random walks over the loglog envelope.

    python scripts/lil_deviation_check.py --horizon 10000 --paths 10000
"""

import argparse

from bestarm.harness import deviation_bound, empirical_lil_crossing


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--xs", type=float, nargs="*", default=[3.0, 5.0, 8.0])
    parser.add_argument("--betas", type=float, nargs="*", default=[1.5, 2.0])
    parser.add_argument("--sigma", type=float, default=1.0)
    parser.add_argument("--horizon", type=int, default=10000)
    parser.add_argument("--paths", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'x':>6} {'beta':>6} {'bound':>12} {'empirical':>12} {'margin':>10}")
    for x in args.xs:
        for beta in args.betas:
            bound = deviation_bound(x, beta)
            freq = empirical_lil_crossing(args.sigma, x, beta, args.horizon,
                                          args.paths, args.seed)
            print(f"{x:6.2f} {beta:6.2f} {bound:12.6f} {freq:12.6f} "
                  f"{bound - freq:10.6f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
