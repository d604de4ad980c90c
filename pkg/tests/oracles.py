"""Brute-force reference computations, kept independent of the code under test."""

from math import gcd

import numpy as np

from hfkit import LabeledGraph


def expand(pre, per, n):
    seq = list(pre)
    while len(seq) < n:
        seq.extend(per)
    return seq[:n]


def brute_asymptotic(pre_p, per_p, pre_q, per_q):
    """Scan raw expansions; past max preperiod + lcm of periods everything repeats."""
    L = len(per_p) * len(per_q) // gcd(len(per_p), len(per_q))
    N = max(len(pre_p), len(pre_q)) + L
    total = N + L
    a, b = expand(pre_p, per_p, total), expand(pre_q, per_q, total)
    for n in range(N + 1):
        if a[n:] == b[n:]:
            return n
    return None


def brute_primitive(G):
    """Least k <= (n-1)^2 + 1 with A^k > 0 entrywise, by integer matrix powers."""
    n = G.vertices
    A = np.zeros((n, n), dtype=np.int64)
    for a, b, _ in G.edges:
        A[a, b] = 1
    P = np.eye(n, dtype=np.int64)
    for k in range(1, (n - 1) ** 2 + 2):
        P = np.minimum(P @ A, 1)
        if (P > 0).all():
            return k
    return None


def random_graph(rng, n_max=4):
    n = rng.randint(1, n_max)
    edges = [(v, rng.randrange(n), "a") for v in range(n)]
    for _ in range(rng.randint(0, n * n)):
        edges.append((rng.randrange(n), rng.randrange(n), rng.choice("ab")))
    return LabeledGraph(n, tuple(edges))
