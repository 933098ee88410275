"""Shared helpers for the test suite."""

import itertools

from graceful_aqc.graphs import Graph


def iter_all_graphs(max_edges: int):
    """Every labelled simple graph with 1..max_edges edges admitted by the
    pipeline: vertex set {0..N-1} with 2 <= N <= e+1 and exactly e edges."""
    for e in range(1, max_edges + 1):
        for n in range(2, e + 2):
            pairs = list(itertools.combinations(range(n), 2))
            if len(pairs) < e:
                continue
            for chosen in itertools.combinations(pairs, e):
                yield Graph(n, chosen)
