#!/usr/bin/env python3
"""Brute-force lap counts of iterates of the plateau tent map.

Every breakpoint of g^n lies on the grid (1/3^n)Z, so sampling g^n at all
grid points with integer arithmetic gives the exact slope-sign sequence.
No composition code is used; the output is the regression table frozen in
tests/test_acceptance.py.

    python scripts/lap_table.py --max-n 16
"""

import argparse

import numpy as np


def grid_lap_count(n, chunk=1 << 21):
    N = 3**n
    count, prev_sign, prev_val = 0, None, None
    for start in range(0, N + 1, chunk):
        x = np.arange(start, min(start + chunk, N + 1), dtype=np.int64)
        for _ in range(n):
            # g(i/N) * N = min(N, 3i, 3N - 3i)
            x = np.minimum(np.minimum(3 * x, 3 * N - 3 * x), N)
        if prev_val is not None:
            x = np.concatenate(([prev_val], x))
        signs = np.sign(np.diff(x))
        if signs.size:
            runs = 1 + int(np.count_nonzero(signs[1:] != signs[:-1]))
            if prev_sign is not None and signs[0] == prev_sign:
                runs -= 1
            count += runs
            prev_sign = signs[-1]
        prev_val = x[-1]
    return count


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=16)
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        print(n, grid_lap_count(n), flush=True)


if __name__ == "__main__":
    main()
