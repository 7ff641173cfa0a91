import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from . import EPS_NORM, ValidationError
from .qcore import DensityMatrix, PureState, computational_basis, inner_product
from .rng import RngStream, draw_outcomes
from .spin import PLUS_X, PLUS_Y, SPIN_VALUES, Direction, basis_pair, wrap_angle

logger = logging.getLogger(__name__)

# Product of the two spin components, eps_a * eps_b / 4, in (++, +-, -+, --) order
PAIR_VALUES = (0.25, -0.25, -0.25, 0.25)

MIN_SCALING_TRIALS = 30


def default_values(dim: int) -> tuple[float, ...]:
    return SPIN_VALUES if dim == 2 else PAIR_VALUES


def binomial_sigma(p: float, shots: int) -> float:
    return math.sqrt(max(p * (1.0 - p), 0.0) / shots)


def binomial_deviation(ratio: float, p: float, shots: int) -> float:
    """
    |ratio - p| in units of the binomial standard deviation; 0 where sigma is 0
    and the ratio is exact, infinity where sigma is 0 and it is not.
    """
    sigma = binomial_sigma(p, shots)
    diff = abs(ratio - p)
    if sigma > 0:
        return diff / sigma
    return 0.0 if diff <= EPS_NORM else math.inf


@dataclass(frozen=True)
class FrequencyEstimate:
    """
    Outcome counts n_i over M shots; n_i/M estimates |C_i|^2.
    """

    counts: tuple[int, ...]
    shots: int
    seed: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(int(n) for n in self.counts))
        if self.shots < 1:
            raise ValidationError("Shots must be positive")
        if any(n < 0 for n in self.counts):
            raise ValidationError("Counts must be nonnegative")
        if sum(self.counts) != self.shots:
            raise ValidationError(
                f"Counts sum to {sum(self.counts)}, expected {self.shots}"
            )

    def ratio(self, index: int) -> float:
        return self.counts[index] / self.shots

    @property
    def ratios(self) -> tuple[float, ...]:
        return tuple(n / self.shots for n in self.counts)

    def deviation_sigmas(self, probabilities: Sequence[float]) -> tuple[float, ...]:
        return tuple(
            binomial_deviation(ratio, p, self.shots)
            for ratio, p in zip(self.ratios, probabilities)
        )


@dataclass(frozen=True)
class MeasurementOutcome:
    index: int
    value: float
    collapsed: PureState


def validate_basis(basis: Sequence[PureState], dim: int) -> None:
    if len(basis) != dim:
        raise ValidationError(f"Basis has {len(basis)} vectors, expected {dim}")
    for i, first in enumerate(basis):
        if first.dim != dim:
            raise ValidationError(f"Basis vector {i} has dimension {first.dim}")
        for j in range(i + 1, len(basis)):
            overlap = abs(inner_product(first, basis[j]))
            if overlap > EPS_NORM:
                raise ValidationError(
                    f"Basis vectors {i} and {j} are not orthogonal (|<b_i|b_j>| = {overlap:.3g})"
                )


def born_probabilities(
    psi: PureState, basis: Sequence[PureState]
) -> npt.NDArray[np.float64]:
    validate_basis(basis, psi.dim)
    return np.array([abs(inner_product(b, psi)) ** 2 for b in basis])


def measure_once(
    psi: PureState,
    basis: Sequence[PureState],
    rng: RngStream,
    values: Sequence[float] | None = None,
) -> MeasurementOutcome:
    values = default_values(psi.dim) if values is None else values
    if len(values) != psi.dim:
        raise ValidationError(f"Expected {psi.dim} outcome values, got {len(values)}")
    probabilities = born_probabilities(psi, basis)
    index = int(draw_outcomes(probabilities, 1, rng)[0])
    return MeasurementOutcome(index=index, value=values[index], collapsed=basis[index])


def sample_frequencies(
    psi: PureState, basis: Sequence[PureState], shots: int, rng: RngStream
) -> FrequencyEstimate:
    """
    Counts of `shots` independent projective measurements; draw for draw identical to
    repeated measure_once calls on the same stream.
    """
    if shots < 1:
        raise ValidationError("Shots must be positive")
    probabilities = born_probabilities(psi, basis)
    outcomes = draw_outcomes(probabilities, shots, rng)
    counts = np.bincount(outcomes, minlength=psi.dim)
    logger.debug("Sampled %d shots: %s", shots, counts.tolist())
    return FrequencyEstimate(counts=tuple(counts.tolist()), shots=shots, seed=rng.seed)


def estimate_average(freq: FrequencyEstimate, values: Sequence[float]) -> float:
    if len(values) != len(freq.counts):
        raise ValidationError(
            f"Got {len(values)} values for {len(freq.counts)} outcomes"
        )
    return sum(v * n for v, n in zip(values, freq.counts)) / freq.shots


############################
# Superposition vs mixture #
############################


def _check_same_diagonal(psi: PureState, rho: DensityMatrix) -> None:
    if psi.dim != 2 or rho.dim != 2:
        raise ValidationError("Phase discrimination compares single-spin states")
    for i, (p, d) in enumerate(zip(psi.probabilities, rho.diagonal)):
        if abs(p - d) > EPS_NORM:
            raise ValidationError(
                f"z-basis probability {i} differs: pure {p:.12g}, mixture {d:.12g}"
            )


def discriminate_phase(
    psi: PureState, rho: DensityMatrix, analysis: Direction
) -> tuple[float, float]:
    """
    Probability of the +analysis outcome for the superposition and for the mixture
    that shares its z-basis probabilities.
    """
    _check_same_diagonal(psi, rho)
    plus, _ = basis_pair(analysis)
    return abs(inner_product(plus, psi)) ** 2, rho.probability(plus)


@dataclass(frozen=True)
class PhaseProtocolResult:
    pure_x: float
    pure_y: float
    mixed_x: float
    mixed_y: float
    pure_phase: float | None
    mixed_phase: float | None


def _phase_from_plus_probs(p_x: float, p_y: float) -> float | None:
    # <S_x> = p_x - 1/2 and <S_y> = p_y - 1/2
    s_x, s_y = p_x - 0.5, p_y - 0.5
    if math.hypot(s_x, s_y) <= EPS_NORM:
        return None
    return wrap_angle(math.atan2(s_y, s_x))


def phase_protocol(psi: PureState, rho: DensityMatrix) -> PhaseProtocolResult:
    """
    Phase-sensitive comparison along +x and +y. The relative phase arg(C_1) - arg(C_0)
    is recovered from the two equatorial averages; a mixture has none to recover.
    """
    pure_x, mixed_x = discriminate_phase(psi, rho, PLUS_X)
    pure_y, mixed_y = discriminate_phase(psi, rho, PLUS_Y)
    return PhaseProtocolResult(
        pure_x=pure_x,
        pure_y=pure_y,
        mixed_x=mixed_x,
        mixed_y=mixed_y,
        pure_phase=_phase_from_plus_probs(pure_x, pure_y),
        mixed_phase=_phase_from_plus_probs(mixed_x, mixed_y),
    )


def estimate_relative_phase(psi: PureState, shots: int, rng: RngStream) -> float:
    if psi.dim != 2:
        raise ValidationError("Phase estimation needs a single-spin state")
    freq_x = sample_frequencies(psi, basis_pair(PLUS_X), shots, rng)
    freq_y = sample_frequencies(psi, basis_pair(PLUS_Y), shots, rng)
    s_x = estimate_average(freq_x, SPIN_VALUES)
    s_y = estimate_average(freq_y, SPIN_VALUES)
    return wrap_angle(math.atan2(s_y, s_x))


##########################
# Many-copies estimation #
##########################


@dataclass(frozen=True)
class ScalingRow:
    shots: int
    rmse: float
    trials: int
    seed: int


def estimation_scaling(
    psi: PureState, shot_counts: Sequence[int], trials: int, rng: RngStream
) -> list[ScalingRow]:
    """
    RMS error of the n_0/M estimator of |C_0|^2 over `trials` repetitions, per M.
    Row k draws from rng.spawn(k), so each row is reproducible on its own.
    :param shot_counts: Strictly ascending positive shot counts M
    """
    if not shot_counts:
        raise ValidationError("Need at least one shot count")
    if any(m < 1 for m in shot_counts):
        raise ValidationError("Shot counts must be positive")
    if any(a >= b for a, b in zip(shot_counts, shot_counts[1:])):
        raise ValidationError("Shot counts must be strictly ascending")
    if trials < MIN_SCALING_TRIALS:
        raise ValidationError(f"Need at least {MIN_SCALING_TRIALS} trials, got {trials}")

    basis = computational_basis(psi.dim)
    target = psi.probabilities[0]
    rows: list[ScalingRow] = []
    for k, shots in enumerate(shot_counts):
        stream = rng.spawn(k)
        errors = [
            sample_frequencies(psi, basis, shots, stream).ratio(0) - target
            for _ in range(trials)
        ]
        rmse = math.sqrt(math.fsum(e * e for e in errors) / trials)
        logger.info("M=%d rmse=%.12g over %d trials", shots, rmse, trials)
        rows.append(ScalingRow(shots=shots, rmse=rmse, trials=trials, seed=rng.seed))
    return rows
