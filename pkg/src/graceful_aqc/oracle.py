"""Brute-force classical ground truth for graceful labellings.

Everything here is slow, exact, and independent of the bit-string encoding:
plain permutation enumeration with the matrix-diagonal gracefulness test,
a direct edge-label check straight from the definition, and an explicit
construction count of all gracefully labelled graphs with a given number of
edges.  The quantum-side results are validated against these routines.
"""

import itertools
import math
from collections import Counter
from dataclasses import dataclass

from .errors import CapExceededError
from .graphs import (
    Graph,
    Permutation,
    VertexLabelling,
    apply_permutation,
    extend,
    is_graceful_labelling,
)

DEFAULT_ORACLE_MAX_EDGES = 9
DEFAULT_SHEPPARD_MAX_EDGES = 5


@dataclass(frozen=True)
class OracleReport:
    """Result of exhaustive permutation search over all labellings."""

    graceful: bool
    labelling_count: int
    witness: VertexLabelling | None

    def to_json_dict(self) -> dict:
        return {
            "graceful": self.graceful,
            "labelling_count": self.labelling_count,
            "witness_labels": None if self.witness is None else list(self.witness.labels),
        }


def labels_are_graceful(g: Graph, labelling: VertexLabelling) -> bool:
    """Definition-level check: distinct labels in {0..e} whose absolute
    differences across edges are exactly {1..e}.

    Deliberately avoids the adjacency-matrix machinery so it can serve as an
    independent reference for the diagonal-based test.
    """
    e = g.n_edges
    labels = labelling.labels
    if len(labels) != g.n_vertices:
        raise ValueError(
            f"labelling has {len(labels)} labels for {g.n_vertices} vertices"
        )
    if any(x > e for x in labels):
        return False
    diffs = Counter(abs(labels[u] - labels[v]) for u, v in g.edges)
    return diffs == Counter(range(1, e + 1))


def brute_force_graceful(
    g: Graph, max_edges: int = DEFAULT_ORACLE_MAX_EDGES
) -> OracleReport:
    """Try every permutation of {0..e} as a relabelling of the padded graph.

    Counts the permutations producing a graceful labelling and returns the
    lexicographically first witness, restricted to the original vertices.
    Enumeration is (e+1)!, capped by ``max_edges``.
    """
    e = g.n_edges
    if e > max_edges:
        raise CapExceededError(
            f"brute force over {e + 1}! = {math.factorial(e + 1)} permutations "
            f"exceeds the cap of {max_edges} edges"
        )
    a = extend(g)
    count = 0
    witness: VertexLabelling | None = None
    for images in itertools.permutations(range(a.dim)):
        relabelled = apply_permutation(a, Permutation(images))
        if is_graceful_labelling(relabelled):
            count += 1
            if witness is None:
                witness = VertexLabelling(images[: g.n_vertices])
    return OracleReport(graceful=count > 0, labelling_count=count, witness=witness)


def sheppard_count(e: int, max_edges: int = DEFAULT_SHEPPARD_MAX_EDGES) -> int:
    """Count gracefully labelled graphs with exactly e edges by construction.

    For each edge label i in {1..e} choose an edge {u, u + i} with both
    endpoints in {0..e}; every choice tuple yields a gracefully labelled
    graph, and every such graph arises this way.  Returns the number of
    distinct edge sets produced (the classical count is e!).
    """
    if e < 1:
        raise ValueError("edge count must be positive")
    if e > max_edges:
        raise CapExceededError(f"construction over {e} edge labels exceeds cap {max_edges}")
    per_label_choices = [
        [frozenset((u, u + i)) for u in range(e + 1 - i)] for i in range(1, e + 1)
    ]
    seen = set()
    for combo in itertools.product(*per_label_choices):
        if len(set(combo)) == len(combo):
            seen.add(frozenset(combo))
    return len(seen)
