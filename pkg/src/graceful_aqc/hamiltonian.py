"""Diagonal problem Hamiltonian, matrix-free mixer, and Pauli-Z expansion.

The problem Hamiltonian is diagonal in the computational basis with the
total labelling cost of each L-bit string as its eigenvalue, indexed by the
string read as an MSB-first integer.  The mixing Hamiltonian
sum_l (I - X_l)/2 is never materialized; applying it costs one bit-flip
pass per qubit.  A Walsh-Hadamard transform turns the cost diagonal into
its unique expansion over products of Z factors.
"""

import json
from dataclasses import dataclass

import numpy as np

from .encoding import EncodingParams, cost_vector
from .errors import CapExceededError
from .graphs import ExtendedAdjacency

DEFAULT_DIAGONAL_CAP_L = 24
PRUNE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class DiagonalHamiltonian:
    """Cost diagonal over the 2^L basis states."""

    dim_log2: int
    diag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=np.float64)
        if d.shape != (1 << self.dim_log2,):
            raise ValueError(f"diagonal length {d.shape} != 2^{self.dim_log2}")
        d.setflags(write=False)
        object.__setattr__(self, "diag", d)

    @property
    def dim(self) -> int:
        return 1 << self.dim_log2

    def ground_indices(self) -> np.ndarray:
        """Basis indices attaining the minimal eigenvalue, ascending.

        Entries are small exact integers in float64, so equality against the
        minimum is exact; the result coincides with the enumeration module's
        minimizer set.
        """
        return np.nonzero(self.diag == self.diag.min())[0]


@dataclass(frozen=True)
class ScheduleParams:
    """Linear interpolation schedule s(t) = t / total_time, hbar = 1."""

    total_time: float

    def __post_init__(self):
        if self.total_time < 0:
            raise ValueError("total_time must be non-negative")

    def value(self, t: float) -> float:
        return t / self.total_time


def build_problem_diagonal(
    a: ExtendedAdjacency,
    params: EncodingParams | None = None,
    cap_l: int = DEFAULT_DIAGONAL_CAP_L,
) -> DiagonalHamiltonian:
    """Assemble the full cost diagonal for a labelled input graph."""
    if params is None:
        params = EncodingParams.for_adjacency(a)
    l_total = params.l_total
    if l_total > cap_l:
        raise CapExceededError(f"diagonal needs L = {l_total} qubits, cap is {cap_l}")
    size = 1 << l_total
    diag = np.empty(size, dtype=np.float64)
    chunk = 1 << 20
    for start in range(0, size, chunk):
        count = min(chunk, size - start)
        diag[start:start + count] = cost_vector(a, params, start, count)
    return DiagonalHamiltonian(dim_log2=l_total, diag=diag)


def apply_h0(state: np.ndarray) -> np.ndarray:
    """Apply sum_l (I - X_l)/2 without building the matrix.

    Equals (L/2) * state - (1/2) * sum over qubits of the state with that
    bit flipped.  The uniform superposition is the eigenvalue-0 ground state.
    """
    n = state.shape[0]
    l_total = n.bit_length() - 1
    if n != 1 << l_total:
        raise ValueError(f"state length {n} is not a power of two")
    cube = state.reshape((2,) * l_total)
    flipped_sum = np.zeros_like(cube)
    for axis in range(l_total):
        flipped_sum += np.flip(cube, axis=axis)
    return 0.5 * l_total * state - 0.5 * flipped_sum.reshape(n)


def apply_h(state: np.ndarray, s_value: float, hp: DiagonalHamiltonian) -> np.ndarray:
    """Apply the interpolated Hamiltonian (1-s) H_mix + s H_problem."""
    if state.shape[0] != hp.dim:
        raise ValueError(f"state length {state.shape[0]} != 2^{hp.dim_log2}")
    if s_value == 0.0:
        return apply_h0(state)
    if s_value == 1.0:
        return hp.diag * state
    return (1.0 - s_value) * apply_h0(state) + s_value * (hp.diag * state)


def walsh_hadamard_transform(values: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform of a length-2^L vector.

    out[m] = sum_s in[s] * (-1)^popcount(m & s).  Self-inverse up to the
    factor 2^L.
    """
    v = np.array(values, dtype=np.float64)
    n = v.size
    l_total = n.bit_length() - 1
    if n != 1 << l_total:
        raise ValueError(f"length {n} is not a power of two")
    v = v.reshape((2,) * l_total)
    for axis in range(l_total):
        top = v.take(0, axis=axis)
        bottom = v.take(1, axis=axis)
        v = np.stack((top + bottom, top - bottom), axis=axis)
    return v.reshape(n)


@dataclass(frozen=True)
class PauliZExpansion:
    """Expansion of a diagonal operator over products of Z factors.

    Each term is (coefficient, qubit mask) where bit l of the mask (1 << l)
    marks a Z factor on qubit l, the qubit carrying bit l of the string.
    Terms are sorted by |coefficient| descending, then mask ascending.
    """

    n_qubits: int
    terms: tuple[tuple[float, int], ...]

    def qubits(self, mask: int) -> tuple[int, ...]:
        return tuple(l for l in range(self.n_qubits) if (mask >> l) & 1)

    def coefficient_map(self) -> dict[tuple[int, ...], float]:
        return {self.qubits(mask): coeff for coeff, mask in self.terms}

    def reconstruct_diagonal(self) -> np.ndarray:
        """Rebuild the cost diagonal from the kept terms (exact round trip)."""
        l_total = self.n_qubits
        spectrum = np.zeros(1 << l_total, dtype=np.float64)
        for coeff, mask in self.terms:
            index_mask = _qubit_mask_to_index_mask(mask, l_total)
            spectrum[index_mask] = coeff
        return walsh_hadamard_transform(spectrum)

    def to_json_lines(self) -> str:
        lines = [
            json.dumps({"coeff": coeff, "qubits": list(self.qubits(mask))})
            for coeff, mask in self.terms
        ]
        return "\n".join(lines)


def _qubit_mask_to_index_mask(mask: int, l_total: int) -> int:
    """Qubit l sits at bit L-1-l of a basis index (MSB-first strings)."""
    out = 0
    for l in range(l_total):
        if (mask >> l) & 1:
            out |= 1 << (l_total - 1 - l)
    return out


def pauli_z_expansion(
    hp: DiagonalHamiltonian,
    cap_l: int = DEFAULT_DIAGONAL_CAP_L,
    prune_tolerance: float = PRUNE_TOLERANCE,
) -> PauliZExpansion:
    """Expand a cost diagonal over Z-factor products.

    Coefficients are the Walsh-Hadamard transform of the diagonal scaled by
    2^-L.  For integer-valued diagonals the coefficients are exact dyadic
    rationals, so pruning below the tolerance removes only true zeros.
    """
    l_total = hp.dim_log2
    if l_total > cap_l:
        raise CapExceededError(f"transform needs L = {l_total} qubits, cap is {cap_l}")
    transformed = walsh_hadamard_transform(hp.diag) / hp.dim
    terms = []
    for index_mask in np.nonzero(np.abs(transformed) > prune_tolerance)[0]:
        index_mask = int(index_mask)
        qubit_mask = _qubit_mask_to_index_mask(index_mask, l_total)  # involution
        terms.append((float(transformed[index_mask]), qubit_mask))
    terms.sort(key=lambda term: (-abs(term[0]), term[1]))
    return PauliZExpansion(n_qubits=l_total, terms=tuple(terms))
