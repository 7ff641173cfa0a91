import cmath
import logging
from dataclasses import dataclass
from typing import Iterable, Self, Sequence

import numpy as np
import numpy.typing as npt

from . import EPS_EXACT, EPS_NORM, EPS_PSD, EPS_ZERO, ValidationError

logger = logging.getLogger(__name__)

ComplexAmp = complex
ComplexVector = npt.NDArray[np.complex128]
ComplexMatrix = npt.NDArray[np.complex128]

SUPPORTED_DIMS = (2, 4)


def magnitude_phase(amp: ComplexAmp) -> tuple[float, float]:
    return cmath.polar(amp)


def from_magnitude_phase(magnitude: float, phase: float) -> ComplexAmp:
    return cmath.rect(magnitude, phase)


def _check_dim(dim: int) -> None:
    if dim not in SUPPORTED_DIMS:
        raise ValidationError(f"Unsupported dimension {dim}, expected one of {SUPPORTED_DIMS}")


@dataclass(frozen=True)
class PureState:
    """
    Normalized amplitude vector in the computational basis.
    Index 0 is |+z>, index 1 is |-z>; two-spin states use the order (++, +-, -+, --).
    Dataclass equality is component-wise; use same_state for equality up to a global phase.
    """

    amps: tuple[complex, ...]

    def __post_init__(self) -> None:
        amps = tuple(complex(a) for a in self.amps)
        object.__setattr__(self, "amps", amps)
        _check_dim(len(amps))
        if not all(cmath.isfinite(a) for a in amps):
            raise ValidationError("Amplitudes must be finite")
        norm = sum(abs(a) ** 2 for a in amps)
        if abs(norm - 1.0) > EPS_NORM:
            raise ValidationError(f"State is not normalized (norm^2 = {norm!r})")

    @classmethod
    def basis(cls, dim: int, index: int) -> Self:
        _check_dim(dim)
        if not 0 <= index < dim:
            raise ValidationError(f"Basis index {index} out of range for dimension {dim}")
        return cls(tuple(1.0 if i == index else 0.0 for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.amps)

    @property
    def vector(self) -> ComplexVector:
        return np.array(self.amps, dtype=np.complex128)

    @property
    def probabilities(self) -> tuple[float, ...]:
        return tuple(abs(a) ** 2 for a in self.amps)

    def same_state(self, other: "PureState", tol: float = EPS_NORM) -> bool:
        if self.dim != other.dim:
            return False
        return abs(abs(inner_product(self, other)) - 1.0) <= tol

    def allclose(self, other: "PureState", tol: float = EPS_EXACT) -> bool:
        if self.dim != other.dim:
            return False
        return all(abs(a - b) <= tol for a, b in zip(self.amps, other.amps))

    def __str__(self) -> str:
        return f"PureState(dim={self.dim}, amps={', '.join(f'{a:.6g}' for a in self.amps)})"


def computational_basis(dim: int) -> list[PureState]:
    return [PureState.basis(dim, i) for i in range(dim)]


def inner_product(phi: PureState, psi: PureState) -> ComplexAmp:
    """
    <phi|psi> = sum_i conj(D_i) C_i
    """
    if phi.dim != psi.dim:
        raise ValidationError(f"Dimension mismatch: {phi.dim} vs {psi.dim}")
    return complex(np.vdot(phi.vector, psi.vector))


def expansion_coefficient(psi: PureState, basis_index: int) -> ComplexAmp:
    if not 0 <= basis_index < psi.dim:
        raise ValidationError(
            f"Basis index {basis_index} out of range for dimension {psi.dim}"
        )
    # <a_j|psi> in the computational basis is the j-th amplitude
    return psi.amps[basis_index]


def normalize(raw_amps: Iterable[complex] | ComplexVector) -> PureState:
    vector = np.asarray(list(raw_amps), dtype=np.complex128)
    if vector.ndim != 1 or vector.size == 0:
        raise ValidationError("Expected a flat, non-empty list of amplitudes")
    if not np.all(np.isfinite(vector)):
        raise ValidationError("Amplitudes must be finite")
    largest = np.max(np.abs(vector))
    if largest <= EPS_ZERO:
        raise ValidationError("Cannot normalize the zero vector")
    # Rescale first so the norm cannot overflow
    scaled = vector / largest
    return PureState(tuple(scaled / np.linalg.norm(scaled)))


def tensor_product(a: PureState, b: PureState) -> PureState:
    if a.dim != 2 or b.dim != 2:
        raise ValidationError("Tensor product is defined for two single-spin states")
    return normalize(np.kron(a.vector, b.vector))


####################
# Density matrices #
####################


@dataclass(frozen=True)
class DensityMatrix:
    entries: tuple[tuple[complex, ...], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(complex(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        dim = len(entries)
        _check_dim(dim)
        if any(len(row) != dim for row in entries):
            raise ValidationError("Density matrix must be square")
        matrix = self.matrix
        if not np.all(np.isfinite(matrix)):
            raise ValidationError("Density matrix entries must be finite")
        if np.max(np.abs(matrix - matrix.conj().T)) > EPS_NORM:
            raise ValidationError("Density matrix is not Hermitian")
        trace = np.trace(matrix)
        if abs(trace - 1.0) > EPS_NORM:
            raise ValidationError(f"Density matrix trace is {trace!r}, expected 1")
        if not self.is_positive_semidefinite():
            raise ValidationError("Density matrix is not positive semidefinite")

    @classmethod
    def from_matrix(cls, matrix: npt.ArrayLike) -> Self:
        array = np.asarray(matrix, dtype=np.complex128)
        if array.ndim != 2:
            raise ValidationError("Expected a two-dimensional matrix")
        return cls(tuple(tuple(row) for row in array))

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def matrix(self) -> ComplexMatrix:
        return np.array(self.entries, dtype=np.complex128)

    @property
    def diagonal(self) -> tuple[float, ...]:
        return tuple(self.entries[i][i].real for i in range(self.dim))

    def is_positive_semidefinite(self, tol: float = EPS_PSD) -> bool:
        return min(self.eigenvalues()) >= -tol

    def eigenvalues(self) -> tuple[float, ...]:
        """
        Eigenvalues in descending order: the characteristic quadratic for dim 2,
        the Hermitian eigensolver for dim 4.
        """
        matrix = self.matrix
        if self.dim == 2:
            half_trace = np.trace(matrix).real / 2
            det = np.linalg.det(matrix).real
            root = np.sqrt(max(half_trace**2 - det, 0.0))
            return (half_trace + root, half_trace - root)
        return tuple(np.linalg.eigvalsh(matrix)[::-1].tolist())

    def probability(self, state: PureState) -> float:
        """
        <phi|rho|phi>, the probability of finding the mixture in the given state.
        """
        if state.dim != self.dim:
            raise ValidationError(f"Dimension mismatch: {state.dim} vs {self.dim}")
        vector = state.vector
        return float(np.vdot(vector, self.matrix @ vector).real)

    def __str__(self) -> str:
        return f"DensityMatrix(dim={self.dim}, diag={self.diagonal})"


def pure_to_density(psi: PureState) -> DensityMatrix:
    vector = psi.vector
    return DensityMatrix.from_matrix(np.outer(vector, vector.conj()))


def mix(states: Sequence[PureState], weights: Sequence[float]) -> DensityMatrix:
    if not states:
        raise ValidationError("Cannot mix an empty list of states")
    if len(states) != len(weights):
        raise ValidationError(
            f"Got {len(states)} states but {len(weights)} weights"
        )
    dims = {state.dim for state in states}
    if len(dims) != 1:
        raise ValidationError(f"States have different dimensions: {sorted(dims)}")
    if any(w < 0 for w in weights):
        raise ValidationError("Mixture weights must be nonnegative")
    if abs(sum(weights) - 1.0) > EPS_NORM:
        raise ValidationError(f"Mixture weights sum to {sum(weights)!r}, expected 1")

    dim = dims.pop()
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    for state, weight in zip(states, weights):
        vector = state.vector
        matrix += weight * np.outer(vector, vector.conj())
    logger.debug("Mixed %d states of dimension %d", len(states), dim)
    return DensityMatrix.from_matrix(matrix)


def purity(rho: DensityMatrix) -> float:
    matrix = rho.matrix
    return float(np.trace(matrix @ matrix).real)
