import logging
from typing import Self

import numpy as np
import numpy.typing as npt

from . import EPS_NORM, EPS_ZERO, ValidationError

logger = logging.getLogger(__name__)

MAX_SEED = 2**64 - 1


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ValidationError(f"Seed must be an integer, got {seed!r}")
    if not 0 <= seed <= MAX_SEED:
        raise ValidationError(f"Seed {seed} outside the unsigned 64-bit range")
    return int(seed)


class RngStream:
    """
    Deterministic uniform stream.
    Backed by numpy's PCG64 bit generator seeded with SeedSequence(seed, spawn_key),
    where spawn_key is the path of stream ids from the root stream, so equal paths give
    bit-identical draws on every platform.
    A stream is stateful: give each concurrent worker its own via spawn().
    """

    def __init__(
        self, seed: int = 0, stream_id: int = 0, *, parent_key: tuple[int, ...] = ()
    ) -> None:
        self._seed = check_seed(seed)
        if stream_id < 0:
            raise ValidationError(f"Stream id must be nonnegative, got {stream_id}")
        self._stream_id = int(stream_id)
        self._spawn_key = (*parent_key, self._stream_id)
        sequence = np.random.SeedSequence(self._seed, spawn_key=self._spawn_key)
        self._generator = np.random.Generator(np.random.PCG64(sequence))
        self._draws = 0

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def stream_id(self) -> int:
        return self._stream_id

    @property
    def spawn_key(self) -> tuple[int, ...]:
        return self._spawn_key

    @property
    def draws(self) -> int:
        return self._draws

    def uniform(self) -> float:
        self._draws += 1
        return float(self._generator.random())

    def uniforms(self, count: int) -> npt.NDArray[np.float64]:
        # Same values as `count` successive uniform() calls
        self._draws += count
        return self._generator.random(count)

    def dirichlet(self, size: int) -> npt.NDArray[np.float64]:
        self._draws += size
        return self._generator.dirichlet(np.ones(size))

    def spawn(self, stream_id: int) -> Self:
        return type(self)(self._seed, stream_id, parent_key=self._spawn_key)

    def __repr__(self) -> str:
        return f"RngStream(seed={self._seed}, spawn_key={self._spawn_key}, draws={self._draws})"


def outcome_support(
    probabilities: npt.ArrayLike,
) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.float64]]:
    """
    Outcomes with nonzero probability and their cumulative distribution, in fixed
    left-to-right order. Probabilities at or below EPS_ZERO are dropped so that they are
    never sampled.
    """
    p = np.asarray(probabilities, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ValidationError("Expected a flat, non-empty list of probabilities")
    if np.any(p < -EPS_NORM) or not np.all(np.isfinite(p)):
        raise ValidationError("Probabilities must be finite and nonnegative")
    if abs(p.sum() - 1.0) > EPS_NORM:
        raise ValidationError(f"Probabilities sum to {p.sum()!r}, expected 1")

    support = np.flatnonzero(p > EPS_ZERO)
    cdf = np.cumsum(p[support])
    cdf /= cdf[-1]
    cdf[-1] = 1.0
    return support, cdf


def draw_outcomes(
    probabilities: npt.ArrayLike, count: int, rng: RngStream
) -> npt.NDArray[np.intp]:
    """
    Inverse-CDF sampling: a uniform draw u selects the first outcome whose cumulative
    probability exceeds u.
    """
    support, cdf = outcome_support(probabilities)
    positions = np.searchsorted(cdf, rng.uniforms(count), side="right")
    return support[positions]
