"""Bit-string encoding of permutations and the three-part labelling cost.

A candidate relabelling of an (e+1)-vertex padded graph is a sequence of
e+1 integers, packed into a string of L = (e+1)*U bits with U bits per
block, most significant bit first.  Three non-negative integer costs grade
an arbitrary bit string:

  c1 - number of blocks decoding above N' = e (out of the label range),
  c2 - number of block pairs decoding to the same value (collisions),
  c3 - squared shortfall, over every target edge label i in {1..e}, between
       1 and the number of edges realizing label i after relabelling.

The total vanishes exactly on the encodings of permutations that relabel
the input graph gracefully.  Two evaluation routes are provided: a scalar
one that follows the defining polynomial products literally, and a chunked
vectorized one used for exhaustive minimum/degeneracy enumeration; tests
hold them bit-exactly equal.
"""

import json
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError
from .graphs import ExtendedAdjacency, Graph, Permutation

DEFAULT_ENUMERATION_CAP_L = 24
MAX_STORED_MINIMIZERS = 1 << 16


@dataclass(frozen=True)
class EncodingParams:
    """Bit-layout parameters derived from the edge count e = N'."""

    n_prime: int
    u_bits: int
    m_prime: int
    l_total: int

    def __post_init__(self):
        if self.n_prime < 1:
            raise ValueError("n_prime must be positive")
        if self.m_prime != (1 << self.u_bits) - 1:
            raise ValueError("m_prime must be 2**u_bits - 1")
        if not self.n_prime <= self.m_prime < 2 * (self.n_prime + 1):
            raise ValueError("u_bits must cover n_prime without more than doubling it")
        if self.l_total != (self.n_prime + 1) * self.u_bits:
            raise ValueError("l_total must be (n_prime + 1) * u_bits")

    @classmethod
    def for_edge_count(cls, e: int) -> "EncodingParams":
        """Canonical parameters: the fewest bits that represent 0..e."""
        if e < 1:
            raise ValueError("edge count must be positive")
        u = e.bit_length()
        return cls(n_prime=e, u_bits=u, m_prime=(1 << u) - 1, l_total=(e + 1) * u)

    @classmethod
    def for_adjacency(cls, a: ExtendedAdjacency) -> "EncodingParams":
        return cls.for_edge_count(a.n_prime)

    @property
    def n_blocks(self) -> int:
        return self.n_prime + 1


@dataclass(frozen=True)
class CostBreakdown:
    c1: int
    c2: int
    c3: int

    @property
    def total(self) -> int:
        return self.c1 + self.c2 + self.c3


@dataclass(frozen=True)
class DegeneracyReport:
    """Exact minimum of the total cost and the count of strings attaining it.

    ``minimizers`` holds the lexicographically first attainers as 0/1 text,
    truncated at MAX_STORED_MINIMIZERS; ``d_count`` is always the exact count.
    """

    params: EncodingParams
    min_cost: int
    d_count: int
    minimizers: tuple[str, ...]
    minimizers_truncated: bool

    @property
    def graceful(self) -> bool:
        return self.min_cost == 0

    def minimizer_indices(self) -> list[int]:
        return [int(s, 2) for s in self.minimizers]


def _check_bits(s: str, params: EncodingParams) -> None:
    if len(s) != params.l_total:
        raise ValueError(f"bit string length {len(s)} != L = {params.l_total}")
    if set(s) - {"0", "1"}:
        raise ValueError(f"bit string must contain only 0/1, got {s!r}")


def bitstring_to_index(s: str) -> int:
    """Basis index of a bit string: s[0] is the most significant bit."""
    return int(s, 2)


def index_to_bitstring(idx: int, l_total: int) -> str:
    return format(idx, f"0{l_total}b")


def encode_permutation(p: Permutation | Sequence[int], params: EncodingParams) -> str:
    """Pack a permutation of {0..N'} into its L-bit string, MSB first per block."""
    images = p.images if isinstance(p, Permutation) else Permutation(tuple(p)).images
    if len(images) != params.n_blocks:
        raise ValueError(f"permutation of size {len(images)} != {params.n_blocks} blocks")
    return "".join(format(x, f"0{params.u_bits}b") for x in images)


def decode_bitstring(s: str, params: EncodingParams) -> tuple[int, ...]:
    """Unpack the N'+1 block values of a bit string.

    No validity judgement is made: values above N' and repetitions are legal
    here and are what the cost functions penalize.
    """
    _check_bits(s, params)
    u = params.u_bits
    return tuple(int(s[j * u:(j + 1) * u], 2) for j in range(params.n_blocks))


def delta_product(x: int, y: int, u_bits: int) -> int:
    """Kronecker delta of two U-bit integers via the product form.

    prod_r (x_r + y_r - 1)^2 over the U bits equals 1 when x == y and 0
    otherwise; each factor is 1 exactly when the two bits agree.
    """
    out = 1
    for r in range(u_bits):
        shift = u_bits - 1 - r
        xr = (x >> shift) & 1
        yr = (y >> shift) & 1
        out *= (xr + yr - 1) ** 2
    return out


def cost_c1(s: str, params: EncodingParams) -> int:
    """Count of blocks decoding above N', via the literal delta products."""
    _check_bits(s, params)
    values = decode_bitstring(s, params)
    return sum(
        delta_product(v, k, params.u_bits)
        for v in values
        for k in range(params.n_prime + 1, params.m_prime + 1)
    )


def cost_c2(s: str, params: EncodingParams) -> int:
    """Count of block pairs i < j decoding to equal values."""
    _check_bits(s, params)
    values = decode_bitstring(s, params)
    n = params.n_blocks
    return sum(
        delta_product(values[i], values[j], params.u_bits)
        for i in range(n - 1)
        for j in range(i + 1, n)
    )


def _permutation_matrix_from_bits(s: str, params: EncodingParams) -> np.ndarray:
    """Entries p[i, j] = [i == decoded block j], for row indices i in 0..N'."""
    values = decode_bitstring(s, params)
    n = params.n_blocks
    p = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            p[i, j] = delta_product(i, values[j], params.u_bits)
    return p


def cost_c3(s: str, a: ExtendedAdjacency, params: EncodingParams) -> int:
    """Squared shortfall of each edge-label count from 1 after relabelling.

    Follows the defining algebra: conjugate the input adjacency with the
    (possibly degenerate) 0/1 matrix built from the block values, then sum
    (1 - d_i)^2 where d_i is the total on the diagonal at offset i.  Blocks
    decoding above N' match no row index and simply drop their edges.
    """
    _check_bits(s, params)
    if a.dim != params.n_blocks:
        raise ValueError(f"adjacency dimension {a.dim} != {params.n_blocks}")
    p = _permutation_matrix_from_bits(s, params)
    relabelled = p @ a.matrix.astype(np.int64) @ p.T
    e = params.n_prime
    total = 0
    for i in range(1, e + 1):
        diag_sum = int(np.trace(relabelled, offset=i))
        total += (1 - diag_sum) ** 2
    return total


def total_cost(s: str, a: ExtendedAdjacency, params: EncodingParams) -> CostBreakdown:
    """All three cost components of a bit string; total 0 iff the string
    encodes a permutation that relabels the input graph gracefully."""
    return CostBreakdown(
        c1=cost_c1(s, params),
        c2=cost_c2(s, params),
        c3=cost_c3(s, a, params),
    )


def _block_values(indices: np.ndarray, params: EncodingParams) -> list[np.ndarray]:
    """Decoded block values for an array of basis indices, one array per block."""
    u, l_total = params.u_bits, params.l_total
    mask = (1 << u) - 1
    return [
        ((indices >> (l_total - (j + 1) * u)) & mask).astype(np.uint8)
        for j in range(params.n_blocks)
    ]


def cost_vector(
    a: ExtendedAdjacency,
    params: EncodingParams,
    start: int,
    count: int,
) -> np.ndarray:
    """Total costs of the ``count`` basis indices beginning at ``start``.

    Vectorized comparison-based evaluation, equal to the scalar route on
    every string.
    """
    if a.dim != params.n_blocks:
        raise ValueError(f"adjacency dimension {a.dim} != {params.n_blocks}")
    indices = np.arange(start, start + count, dtype=np.int64)
    values = _block_values(indices, params)
    totals = np.zeros(count, dtype=np.int64)

    for v in values:
        totals += v > params.n_prime

    n = params.n_blocks
    for i in range(n - 1):
        for j in range(i + 1, n):
            totals += values[i] == values[j]

    edges = a.edge_pairs()
    diffs = []
    for u, v in edges:
        du = values[u].astype(np.int16)
        dv = values[v].astype(np.int16)
        diff = np.abs(du - dv)
        # An endpoint above N' matches no label row; mark the edge as
        # contributing to no target label (0 is never a target).
        diff[(du > params.n_prime) | (dv > params.n_prime)] = 0
        diffs.append(diff)
    for i in range(1, params.n_prime + 1):
        realized = np.zeros(count, dtype=np.int64)
        for diff in diffs:
            realized += diff == i
        totals += (1 - realized) ** 2
    return totals


def iter_cost_chunks(
    a: ExtendedAdjacency,
    params: EncodingParams,
    chunk_bits: int = 20,
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (start_index, totals) over the full 2^L range in fixed chunks."""
    size = 1 << params.l_total
    chunk = 1 << chunk_bits
    for start in range(0, size, chunk):
        count = min(chunk, size - start)
        yield start, cost_vector(a, params, start, count)


def enumerate_degeneracy(
    a: ExtendedAdjacency,
    params: EncodingParams | None = None,
    cap_l: int = DEFAULT_ENUMERATION_CAP_L,
    max_minimizers: int = MAX_STORED_MINIMIZERS,
) -> DegeneracyReport:
    """Exhaustively minimize the total cost over all 2^L strings.

    Returns the exact minimum, the exact number of attainers D, and the
    lexicographically first attainers (at most ``max_minimizers`` kept).
    Refuses instances above the cap; there is no sampling fallback.
    """
    if params is None:
        params = EncodingParams.for_adjacency(a)
    if params.l_total > cap_l:
        raise CapExceededError(
            f"enumeration needs L = {params.l_total} bits, cap is {cap_l}"
        )
    min_cost: int | None = None
    d_count = 0
    minimizers: list[int] = []
    truncated = False
    for start, totals in iter_cost_chunks(a, params):
        chunk_min = int(totals.min())
        if min_cost is None or chunk_min < min_cost:
            min_cost = chunk_min
            d_count = 0
            minimizers = []
            truncated = False
        if chunk_min > min_cost:
            continue
        hits = np.nonzero(totals == min_cost)[0]
        d_count += hits.size
        room = max_minimizers - len(minimizers)
        if room > 0:
            minimizers.extend(int(i) + start for i in hits[:room])
        if d_count > len(minimizers):
            truncated = True
    assert min_cost is not None
    return DegeneracyReport(
        params=params,
        min_cost=min_cost,
        d_count=d_count,
        minimizers=tuple(index_to_bitstring(i, params.l_total) for i in minimizers),
        minimizers_truncated=truncated,
    )


def degeneracy_report_json(report: DegeneracyReport, graph: Graph | None = None) -> str:
    """Serialize a report to the machine-readable JSON document."""
    doc = {
        "graph": None
        if graph is None
        else {"n_vertices": graph.n_vertices, "edges": [list(e) for e in graph.edges]},
        "n_prime": report.params.n_prime,
        "u_bits": report.params.u_bits,
        "l_total": report.params.l_total,
        "min_cost": report.min_cost,
        "d_count": report.d_count,
        "graceful": report.graceful,
        "minimizers": list(report.minimizers),
        "minimizers_truncated": report.minimizers_truncated,
    }
    return json.dumps(doc, indent=2)
