"""
Bell's inequality for the singlet: the quantum combination
p(+a;+b) + p(+b;+c) - p(+a;+c), its classical counterpart built from joint
probabilities over definite values of all three spin components, and a search for a
nonnegative hidden-variable model that reproduces the quantum pair statistics.
"""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from functools import cache
from itertools import combinations, product
from typing import Self, Sequence

import numpy as np
import numpy.typing as npt

from . import EPS_EXACT, TOL_BELL, CrossCheckError, ValidationError
from .entangle import SIGNS, check_sign, joint_table, singlet, singlet_joint_prob
from .rng import RngStream, draw_outcomes
from .spin import Direction, Plane

logger = logging.getLogger(__name__)


class Axis(StrEnum):
    A = "a"
    B = "b"
    C = "c"


AXES = (Axis.A, Axis.B, Axis.C)

# Definite values (s_a, s_b, s_c; t_a, t_b, t_c): spin A left of the semicolon, spin B right
Configuration = tuple[int, int, int, int, int, int]
CONFIGURATIONS: tuple[Configuration, ...] = tuple(product(SIGNS, repeat=6))  # type: ignore[assignment]

# Spin-A values of the perfectly anticorrelated configurations (spin B is the negation)
SPIN_A_TRIPLES: tuple[tuple[int, int, int], ...] = tuple(product(SIGNS, repeat=3))  # type: ignore[assignment]


def configuration_index(config: Sequence[int]) -> int:
    config = tuple(config)
    if len(config) != 6 or any(s not in SIGNS for s in config):
        raise ValidationError(f"Invalid configuration {config!r}")
    return CONFIGURATIONS.index(config)  # type: ignore[arg-type]


@dataclass(frozen=True)
class DirectionTriple:
    a: Direction
    b: Direction
    c: Direction

    @classmethod
    def coplanar(
        cls, theta_ab: float, theta_bc: float, plane: Plane = Plane.XZ
    ) -> Self:
        """
        a along the plane's first axis, b rotated by theta_ab, c by theta_ab + theta_bc.
        """
        return cls(
            Direction.in_plane(0.0, plane),
            Direction.in_plane(theta_ab, plane),
            Direction.in_plane(theta_ab + theta_bc, plane),
        )

    def direction(self, axis: Axis) -> Direction:
        return getattr(self, Axis(axis).value)

    def angle(self, first: Axis, second: Axis) -> float:
        return self.direction(first).angle_to(self.direction(second))

    @property
    def theta_ab(self) -> float:
        return self.angle(Axis.A, Axis.B)

    @property
    def theta_bc(self) -> float:
        return self.angle(Axis.B, Axis.C)

    @property
    def theta_ac(self) -> float:
        return self.angle(Axis.A, Axis.C)

    def __str__(self) -> str:
        return f"a={self.a}, b={self.b}, c={self.c}"


@dataclass(frozen=True)
class BellResult:
    lhs: float
    violated: bool
    triple: DirectionTriple
    # Whether the classical distribution satisfied perfect anticorrelation;
    # always True for quantum results
    anticorrelated: bool = True


###############################
# Classical joint probabilities #
###############################


@dataclass(frozen=True)
class JointDistribution:
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != len(CONFIGURATIONS):
            raise ValidationError(
                f"Expected {len(CONFIGURATIONS)} weights, got {len(weights)}"
            )
        if not all(math.isfinite(w) and w >= 0.0 for w in weights):
            raise ValidationError("Weights must be finite and nonnegative")
        total = math.fsum(weights)
        if abs(total - 1.0) > EPS_EXACT:
            raise ValidationError(f"Weights sum to {total!r}, expected 1")

    @classmethod
    def uniform(cls) -> Self:
        return cls((1.0 / len(CONFIGURATIONS),) * len(CONFIGURATIONS))

    @classmethod
    def point_mass(cls, config: Sequence[int]) -> Self:
        index = configuration_index(config)
        return cls(tuple(1.0 if i == index else 0.0 for i in range(len(CONFIGURATIONS))))

    @classmethod
    def normalized(cls, raw_weights: Sequence[float]) -> Self:
        raw = np.asarray(raw_weights, dtype=np.float64)
        if np.any(raw < 0) or raw.sum() <= 0:
            raise ValidationError("Raw weights must be nonnegative with a positive sum")
        return cls(tuple(raw / raw.sum()))

    @classmethod
    def random(cls, rng: RngStream) -> Self:
        return cls.normalized(rng.dirichlet(len(CONFIGURATIONS)))

    def weight(self, config: Sequence[int]) -> float:
        return self.weights[configuration_index(config)]


def marginal_pair(
    dist: JointDistribution, which: tuple[Axis, Axis], signs: tuple[int, int]
) -> float:
    """
    p(sign_a x; sign_b y) for x = which[0] on spin A and y = which[1] on spin B,
    summing the joint weights over every unconstrained slot.
    """
    first, second = (AXES.index(Axis(w)) for w in which)
    sign_a, sign_b = (check_sign(s) for s in signs)
    return math.fsum(
        w
        for config, w in zip(CONFIGURATIONS, dist.weights)
        if config[first] == sign_a and config[3 + second] == sign_b
    )


def is_anticorrelated(dist: JointDistribution, tol: float = EPS_EXACT) -> bool:
    """
    True if parallel outcomes along a, b and c all have zero probability.
    """
    return all(
        marginal_pair(dist, (axis, axis), (sign, sign)) <= tol
        for axis in AXES
        for sign in SIGNS
    )


def anticorrelated_distribution(weights: Sequence[float]) -> JointDistribution:
    """
    Embed 8 weights over spin-A values (SPIN_A_TRIPLES order) with spin B negated.
    """
    if len(weights) != len(SPIN_A_TRIPLES):
        raise ValidationError(f"Expected {len(SPIN_A_TRIPLES)} weights, got {len(weights)}")
    full = [0.0] * len(CONFIGURATIONS)
    for triple, w in zip(SPIN_A_TRIPLES, weights):
        full[configuration_index(triple + tuple(-s for s in triple))] = float(w)
    return JointDistribution(tuple(full))


def bell_combination(p_ab: float, p_bc: float, p_ac: float) -> float:
    return p_ab + p_bc - p_ac


def classical_bell_check(
    dist: JointDistribution, t: DirectionTriple, tol: float = TOL_BELL
) -> BellResult:
    """
    The Bell combination from marginals of a classical joint distribution. It is never
    negative when the distribution is perfectly anticorrelated.
    """
    lhs = bell_combination(
        marginal_pair(dist, (Axis.A, Axis.B), (1, 1)),
        marginal_pair(dist, (Axis.B, Axis.C), (1, 1)),
        marginal_pair(dist, (Axis.A, Axis.C), (1, 1)),
    )
    return BellResult(
        lhs=lhs, violated=lhs < -tol, triple=t, anticorrelated=is_anticorrelated(dist)
    )


###########
# Quantum #
###########


def quantum_pair_probs(t: DirectionTriple) -> tuple[float, float, float]:
    return (
        singlet_joint_prob(1, t.a, 1, t.b),
        singlet_joint_prob(1, t.b, 1, t.c),
        singlet_joint_prob(1, t.a, 1, t.c),
    )


def quantum_bell_lhs(t: DirectionTriple) -> float:
    """
    (1/2)[sin^2(theta_ab/2) + sin^2(theta_bc/2) - sin^2(theta_ac/2)], checked against the
    same combination assembled from the singlet pair probabilities.
    At coplanar theta_ab = theta_bc = pi/3 this is -1/8. A value of -1/4 is sometimes
    quoted for these angles; it does not follow from the formula.
    """
    via_pairs = bell_combination(*quantum_pair_probs(t))
    closed_form = 0.5 * (
        math.sin(t.theta_ab / 2) ** 2
        + math.sin(t.theta_bc / 2) ** 2
        - math.sin(t.theta_ac / 2) ** 2
    )
    if abs(via_pairs - closed_form) > EPS_EXACT:
        raise CrossCheckError(
            f"Bell combination mismatch: pair probabilities give {via_pairs!r}, "
            f"closed form gives {closed_form!r} ({t})"
        )
    return closed_form


def quantum_bell_result(t: DirectionTriple, tol: float = TOL_BELL) -> BellResult:
    lhs = quantum_bell_lhs(t)
    return BellResult(lhs=lhs, violated=lhs < -tol, triple=t)


#########################
# Hidden-variable model #
#########################


def _pair_indicator(first: int, second: int) -> list[float]:
    # Under anticorrelation p(+x;+y) = P(spin A has +x and -y)
    return [1.0 if s[first] == 1 and s[second] == -1 else 0.0 for s in SPIN_A_TRIPLES]


# Rows: p(+a;+b), p(+b;+c), p(+a;+c), normalization
CONSTRAINTS = np.array(
    [_pair_indicator(0, 1), _pair_indicator(1, 2), _pair_indicator(0, 2), [1.0] * 8]
)
BELL_FUNCTIONAL = np.array([1.0, 1.0, -1.0, 0.0])


@cache
def _vertex_bases() -> tuple[npt.NDArray[np.intp], npt.NDArray[np.float64]]:
    """
    Every invertible 4-column basis of the constraint matrix and its inverse.
    Basic solutions over these bases are the vertices of the feasible polytope.
    """
    columns: list[tuple[int, ...]] = []
    inverses: list[npt.NDArray[np.float64]] = []
    for cols in combinations(range(CONSTRAINTS.shape[1]), CONSTRAINTS.shape[0]):
        sub = CONSTRAINTS[:, cols]
        if abs(np.linalg.det(sub)) > 1e-9:
            columns.append(cols)
            inverses.append(np.linalg.inv(sub))
    logger.debug("%d invertible bases for the hidden-variable system", len(columns))
    return np.array(columns), np.array(inverses)


@dataclass(frozen=True)
class LhvCertificate:
    """
    Farkas certificate y: y.A >= 0 on every column while y.b < 0, so no nonnegative
    weights can satisfy A w = b.
    """

    functional: tuple[float, ...]
    bound: float
    least_negative_weight: float


@dataclass(frozen=True)
class LhvReport:
    triple: DirectionTriple
    feasible: bool
    weights: tuple[float, ...] | None
    certificate: LhvCertificate | None
    quantum_lhs: float
    # Minimum-norm signed solution; negative entries mean negative "probabilities"
    quasi_weights: tuple[float, ...]

    def distribution(self) -> JointDistribution | None:
        return None if self.weights is None else anticorrelated_distribution(self.weights)


def lhv_targets(t: DirectionTriple) -> npt.NDArray[np.float64]:
    return np.array([*quantum_pair_probs(t), 1.0])


def _certify(targets: npt.NDArray[np.float64], least_negative: float) -> LhvCertificate:
    column_values = BELL_FUNCTIONAL @ CONSTRAINTS
    bound = float(BELL_FUNCTIONAL @ targets)
    if np.any(column_values < -EPS_EXACT) or bound >= 0.0:
        raise CrossCheckError(
            f"Infeasible system without a valid certificate (bound {bound!r})"
        )
    return LhvCertificate(
        functional=tuple(BELL_FUNCTIONAL.tolist()),
        bound=bound,
        least_negative_weight=least_negative,
    )


def lhv_feasibility(t: DirectionTriple, tol: float = TOL_BELL) -> LhvReport:
    """
    Look for 8 nonnegative weights on the anticorrelated configurations that reproduce
    the singlet's p(+a;+b), p(+b;+c), p(+a;+c) and sum to 1, by enumerating the vertices
    of the solution polytope.
    """
    targets = lhv_targets(t)
    quantum_lhs = quantum_bell_lhs(t)
    columns, inverses = _vertex_bases()
    solutions = inverses @ targets
    minima = solutions.min(axis=1)
    best = int(np.argmax(minima))
    quasi = tuple((np.linalg.pinv(CONSTRAINTS) @ targets).tolist())

    feasible = bool(minima[best] >= -tol)
    if feasible == (quantum_lhs < -tol):
        if abs(quantum_lhs) > 8 * tol:
            raise CrossCheckError(
                f"Hidden-variable verdict disagrees with the Bell combination {quantum_lhs!r}"
            )
        logger.warning(
            "Borderline triple: lhs=%.3g, closest vertex weight %.3g", quantum_lhs, minima[best]
        )

    if not feasible:
        logger.debug("No nonnegative model, least negative weight %.12g", minima[best])
        return LhvReport(
            triple=t,
            feasible=False,
            weights=None,
            certificate=_certify(targets, float(minima[best])),
            quantum_lhs=quantum_lhs,
            quasi_weights=quasi,
        )

    vertex = np.zeros(CONSTRAINTS.shape[1])
    vertex[columns[best]] = solutions[best]
    weights = np.clip(vertex, 0.0, None)
    weights /= weights.sum()
    return LhvReport(
        triple=t,
        feasible=True,
        weights=tuple(weights.tolist()),
        certificate=None,
        quantum_lhs=quantum_lhs,
        quasi_weights=quasi,
    )


########
# Scan #
########


MAX_SCAN_POINTS = 1_000_000


@dataclass(frozen=True)
class ScanRow:
    theta_ab: float
    theta_bc: float
    theta_ac: float
    result: BellResult


@dataclass(frozen=True)
class ScanTable:
    rows: tuple[ScanRow, ...]
    step: float
    max_angle: float
    plane: Plane

    @property
    def minimum(self) -> ScanRow:
        return min(self.rows, key=lambda row: row.result.lhs)


def scan_angles(step: float, max_angle: float) -> npt.NDArray[np.float64]:
    if not (math.isfinite(step) and step > 0):
        raise ValidationError(f"Scan step must be positive, got {step!r}")
    if not (math.isfinite(max_angle) and max_angle >= step):
        raise ValidationError(f"Maximum angle {max_angle!r} must be at least one step")
    count = int(math.floor(max_angle / step + 1e-9))
    if count * count > MAX_SCAN_POINTS:
        raise ValidationError(f"Scan of {count}x{count} points is too large")
    return step * np.arange(1, count + 1)


def bell_scan(
    step: float,
    max_angle: float = math.pi,
    plane: Plane = Plane.XZ,
    tol: float = TOL_BELL,
) -> ScanTable:
    """
    Sweep coplanar triples over (theta_ab, theta_bc) with theta_ac = theta_ab + theta_bc.
    """
    angles = scan_angles(step, max_angle)
    rows: list[ScanRow] = []
    for theta_ab in angles.tolist():
        for theta_bc in angles.tolist():
            triple = DirectionTriple.coplanar(theta_ab, theta_bc, plane)
            rows.append(
                ScanRow(
                    theta_ab=theta_ab,
                    theta_bc=theta_bc,
                    theta_ac=theta_ab + theta_bc,
                    result=quantum_bell_result(triple, tol),
                )
            )
    table = ScanTable(rows=tuple(rows), step=step, max_angle=max_angle, plane=Plane(plane))
    best = table.minimum
    logger.info(
        "Scanned %d triples, minimum %.12g at (%.12g, %.12g)",
        len(rows),
        best.result.lhs,
        best.theta_ab,
        best.theta_bc,
    )
    return table


###############
# Monte Carlo #
###############


@dataclass(frozen=True)
class JointEstimate:
    """
    Counts N(eps_a a; eps_b b) in (++, +-, -+, --) order.
    """

    counts: tuple[int, int, int, int]
    shots: int
    seed: int

    @staticmethod
    def _slot(eps_a: int, eps_b: int) -> int:
        return 2 * SIGNS.index(check_sign(eps_a)) + SIGNS.index(check_sign(eps_b))

    def count(self, eps_a: int, eps_b: int) -> int:
        return self.counts[self._slot(eps_a, eps_b)]

    def ratio(self, eps_a: int, eps_b: int) -> float:
        return self.count(eps_a, eps_b) / self.shots

    @property
    def table(self) -> npt.NDArray[np.float64]:
        return np.array(self.counts, dtype=np.float64).reshape(2, 2) / self.shots


def mc_singlet_joint(
    a: Direction, b: Direction, shots: int, rng: RngStream
) -> JointEstimate:
    """
    Sample joint outcomes of the singlet measured along a (spin A) and b (spin B).
    """
    if shots < 1:
        raise ValidationError("Shots must be positive")
    probabilities = joint_table(singlet(), a, b).ravel()
    outcomes = draw_outcomes(probabilities, shots, rng)
    counts = np.bincount(outcomes, minlength=4)
    return JointEstimate(
        counts=tuple(int(n) for n in counts),  # type: ignore[arg-type]
        shots=shots,
        seed=rng.seed,
    )
