"""Graph representation, labelled adjacency matrices, and the gracefulness test.

A graceful labelling assigns distinct labels from {0..e} to the vertices of a
simple graph with e edges so that the absolute label differences across edges
are exactly {1..e}.  Padding the graph with isolated vertices until it has
e+1 vertices turns any labelling into a bijection onto {0..e}, and the test
becomes a statement about the (e+1)-dimensional adjacency matrix indexed by
label: the labelling is graceful iff every diagonal above the main one
carries exactly one nonzero entry (the entries at row/column offset i are
precisely the edges labelled i).
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Malformed graph input: bad syntax, self-loop, duplicate edge, bad ids."""


class NotEnoughLabelsError(ValueError):
    """The graph has more vertices than labels (e + 1 < N).

    Such a graph cannot carry an injective labelling into {0..e} and is
    therefore decided not-graceful without any further computation.
    """

    def __init__(self, n_vertices: int, n_edges: int):
        self.n_vertices = n_vertices
        self.n_edges = n_edges
        super().__init__(
            f"graph with {n_vertices} vertices and {n_edges} edges cannot be "
            f"graceful: only {n_edges + 1} labels are available"
        )


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices {0..n_vertices-1}.

    Edges are normalized to (u, v) with u < v and stored sorted, so equal
    graphs compare equal regardless of input order.
    """

    n_vertices: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise GraphFormatError("graph needs at least one vertex")
        normalized = []
        for edge in self.edges:
            if len(edge) != 2:
                raise GraphFormatError(f"edge {edge!r} is not a pair")
            u, v = int(edge[0]), int(edge[1])
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise GraphFormatError(
                    f"edge ({u}, {v}) outside vertex range 0..{self.n_vertices - 1}"
                )
            normalized.append((min(u, v), max(u, v)))
        if len(set(normalized)) != len(normalized):
            raise GraphFormatError("duplicate edge (multigraphs are rejected)")
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def is_admissible(self) -> bool:
        """True when e + 1 >= N, the precondition for a graceful labelling."""
        return self.n_edges + 1 >= self.n_vertices


def parse_edge_list_text(text: str) -> Graph:
    """Parse the plain edge-list format: first line ``N e``, then e lines ``u v``."""
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise GraphFormatError("empty graph file")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphFormatError(f"header must be 'N e', got {lines[0]!r}")
    try:
        n_vertices, n_edges = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GraphFormatError(f"non-integer header {lines[0]!r}") from exc
    if len(lines) - 1 != n_edges:
        raise GraphFormatError(
            f"header promises {n_edges} edges but {len(lines) - 1} lines follow"
        )
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"edge line must be 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphFormatError(f"non-integer edge line {line!r}") from exc
    return Graph(n_vertices, tuple(edges))


def load_graph(path: str | Path) -> Graph:
    return parse_edge_list_text(Path(path).read_text())


def path_graph(n: int) -> Graph:
    """Path on n vertices (n-1 edges), vertices numbered along the path."""
    if n < 2:
        raise GraphFormatError("path needs at least 2 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star_graph(n_leaves: int) -> Graph:
    """Star with a central vertex 0 and n_leaves leaves."""
    if n_leaves < 1:
        raise GraphFormatError("star needs at least 1 leaf")
    return Graph(n_leaves + 1, tuple((0, i) for i in range(1, n_leaves + 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphFormatError("cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise GraphFormatError("complete graph needs at least 2 vertices")
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


GENERATORS = {
    "path": path_graph,
    "star": star_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
}


def generate_graph(spec: str) -> Graph:
    """Build a named graph from a ``name:n`` spec, e.g. ``star:4`` or ``cycle:5``."""
    name, _, arg = spec.partition(":")
    if name not in GENERATORS:
        raise GraphFormatError(
            f"unknown generator {name!r}; available: {', '.join(sorted(GENERATORS))}"
        )
    try:
        n = int(arg)
    except ValueError as exc:
        raise GraphFormatError(f"generator argument must be an integer, got {arg!r}") from exc
    return GENERATORS[name](n)


@dataclass(frozen=True)
class Permutation:
    """Permutation of {0..n} given by its image sequence i -> images[i]."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"{self.images} is not a permutation of 0..{n - 1}")

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))

    @property
    def size(self) -> int:
        return len(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, image in enumerate(self.images):
            inv[image] = i
        return Permutation(tuple(inv))

    def __getitem__(self, i: int) -> int:
        return self.images[i]


@dataclass(frozen=True)
class VertexLabelling:
    """Distinct non-negative integer labels for the vertices of a graph."""

    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be pairwise distinct")
        if any(x < 0 for x in self.labels):
            raise ValueError("labels must be non-negative")


@dataclass(frozen=True)
class ExtendedAdjacency:
    """(e+1) x (e+1) binary adjacency matrix of a graph padded to e+1 vertices.

    Row/column index doubles as the vertex label, so the matrix encodes a
    labelled graph: entry (i, j) = 1 means an edge whose label is |i - j|.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.uint8)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {m.shape}")
        if not np.all((m == 0) | (m == 1)):
            raise ValueError("adjacency matrix must be binary")
        if not np.array_equal(m, m.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diagonal(m) != 0):
            raise ValueError("adjacency matrix must have a zero main diagonal")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_prime(self) -> int:
        return self.dim - 1

    @property
    def n_edges(self) -> int:
        return int(np.triu(self.matrix).sum())

    def edge_pairs(self) -> list[Edge]:
        """Edges as (i, j) label pairs with i < j, sorted."""
        rows, cols = np.nonzero(np.triu(self.matrix))
        return [(int(i), int(j)) for i, j in zip(rows, cols)]


@dataclass(frozen=True)
class MinorDiagonalProfile:
    """Nonzero counts of the diagonals above the main one, offsets 1..N'."""

    weights: tuple[int, ...]


def extend(g: Graph) -> ExtendedAdjacency:
    """Pad g with e+1-N isolated vertices and return its labelled adjacency.

    The original vertices keep their identity labels 0..N-1; the appended
    isolated vertices take the remaining labels N..e.  Rejects graphs with
    e + 1 < N, which cannot be graceful at all.
    """
    e = g.n_edges
    if e == 0:
        raise GraphFormatError("graph needs at least one edge")
    if e + 1 < g.n_vertices:
        raise NotEnoughLabelsError(g.n_vertices, e)
    m = np.zeros((e + 1, e + 1), dtype=np.uint8)
    for u, v in g.edges:
        m[u, v] = 1
        m[v, u] = 1
    return ExtendedAdjacency(m)


def labelled_adjacency(g: Graph, labelling: VertexLabelling) -> ExtendedAdjacency:
    """Adjacency of g under an explicit labelling, padded to dimension e+1."""
    e = g.n_edges
    if e == 0:
        raise GraphFormatError("graph needs at least one edge")
    if len(labelling.labels) != g.n_vertices:
        raise ValueError(
            f"labelling has {len(labelling.labels)} labels for {g.n_vertices} vertices"
        )
    if max(labelling.labels) > e:
        raise ValueError(f"labels must lie in 0..{e}")
    m = np.zeros((e + 1, e + 1), dtype=np.uint8)
    for u, v in g.edges:
        lu, lv = labelling.labels[u], labelling.labels[v]
        m[lu, lv] = 1
        m[lv, lu] = 1
    return ExtendedAdjacency(m)


def apply_permutation(a: ExtendedAdjacency, p: Permutation) -> ExtendedAdjacency:
    """Relabel: vertex with label i gets label p[i].

    The result b satisfies b[p[i], p[j]] = a[i, j]; it is the adjacency matrix
    of an isomorphic graph, so symmetry, zero diagonal, and edge count are
    preserved.
    """
    if p.size != a.dim:
        raise ValueError(f"permutation size {p.size} != matrix dimension {a.dim}")
    images = np.array(p.images)
    out = np.zeros_like(a.matrix)
    out[np.ix_(images, images)] = a.matrix
    return ExtendedAdjacency(out)


def minor_diagonals(a: ExtendedAdjacency) -> MinorDiagonalProfile:
    """Count the nonzero entries on each diagonal at offset 1..N'.

    weights[i-1] counts the edges whose two labels differ by exactly i.
    """
    weights = tuple(int(np.diagonal(a.matrix, offset=i).sum()) for i in range(1, a.dim))
    return MinorDiagonalProfile(weights)


def is_graceful_labelling(a: ExtendedAdjacency) -> bool:
    """True iff every label 1..N' is carried by exactly one edge."""
    return all(w == 1 for w in minor_diagonals(a).weights)
