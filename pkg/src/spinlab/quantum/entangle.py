import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Iterable

import numpy as np
import numpy.typing as npt

from . import EPS_NORM, TOL_FACTORIZE, ValidationError
from .qcore import ComplexMatrix, PureState, normalize
from .spin import PLUS_Z, Direction, basis_pair

logger = logging.getLogger(__name__)

SIGNS = (1, -1)


class Side(StrEnum):
    A = "a"
    B = "b"


def check_sign(eps: int) -> int:
    if eps not in SIGNS:
        raise ValidationError(f"Sign must be +1 or -1, got {eps!r}")
    return int(eps)


@dataclass(frozen=True)
class TwoSpinState:
    """
    alpha_1..alpha_4 for |+e_a,+e_b>, |+e_a,-e_b>, |-e_a,+e_b>, |-e_a,-e_b>.
    """

    amps: tuple[complex, complex, complex, complex]
    e_a: Direction = field(default=PLUS_Z)
    e_b: Direction = field(default=PLUS_Z)

    def __post_init__(self) -> None:
        amps = tuple(complex(a) for a in self.amps)
        if len(amps) != 4:
            raise ValidationError(f"A two-spin state needs 4 amplitudes, got {len(amps)}")
        norm = sum(abs(a) ** 2 for a in amps)
        if abs(norm - 1.0) > EPS_NORM:
            raise ValidationError(f"Two-spin state is not normalized (norm^2 = {norm!r})")
        object.__setattr__(self, "amps", amps)

    @property
    def coefficient_matrix(self) -> ComplexMatrix:
        """
        C[i][j] is the amplitude for outcome i on spin A and j on spin B (0 is +, 1 is -).
        """
        return np.array(self.amps, dtype=np.complex128).reshape(2, 2)

    def __str__(self) -> str:
        amps = ", ".join(f"{a:.6g}" for a in self.amps)
        return f"TwoSpinState(amps=({amps}), e_a={self.e_a}, e_b={self.e_b})"


def make_two_spin(
    alphas: Iterable[complex], e_a: Direction = PLUS_Z, e_b: Direction = PLUS_Z
) -> TwoSpinState:
    alphas = list(alphas)
    if len(alphas) != 4:
        raise ValidationError(f"A two-spin state needs 4 amplitudes, got {len(alphas)}")
    normalized = normalize(alphas)
    return TwoSpinState(normalized.amps, e_a=e_a, e_b=e_b)  # type: ignore[arg-type]


def singlet() -> TwoSpinState:
    r = 1 / math.sqrt(2)
    return TwoSpinState((0.0, r, -r, 0.0))


def _product_basis(e_a: Direction, e_b: Direction) -> list[npt.NDArray[np.complex128]]:
    return [
        np.kron(a.vector, b.vector) for a in basis_pair(e_a) for b in basis_pair(e_b)
    ]


def to_pure_state(state: TwoSpinState) -> PureState:
    """
    The state as a dimension-4 vector in the computational (z, z) basis.
    """
    vector = sum(
        (alpha * ket for alpha, ket in zip(state.amps, _product_basis(state.e_a, state.e_b))),
        start=np.zeros(4, dtype=np.complex128),
    )
    return normalize(vector)


def reexpress(state: TwoSpinState, e_a: Direction, e_b: Direction) -> TwoSpinState:
    vector = to_pure_state(state).vector
    amps = tuple(complex(np.vdot(ket, vector)) for ket in _product_basis(e_a, e_b))
    return make_two_spin(amps, e_a=e_a, e_b=e_b)


#################
# Factorization #
#################


@dataclass(frozen=True)
class FactorizationResult:
    """
    Factors are coefficient vectors relative to the state's reference directions.
    """

    factorizable: bool
    factor_a: PureState | None
    factor_b: PureState | None
    defect: float


def _coefficient_det(state: TwoSpinState) -> complex:
    c = state.coefficient_matrix
    return complex(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0])


def factorize(state: TwoSpinState, tol: float = TOL_FACTORIZE) -> FactorizationResult:
    defect = abs(_coefficient_det(state))
    if defect > tol:
        logger.debug("State is entangled, |det C| = %.12g", defect)
        return FactorizationResult(False, None, None, defect)

    # Rank one: C = u v^T. The dominant row is proportional to v, and each row
    # projected onto v gives the matching component of u.
    c = state.coefficient_matrix
    row = int(np.argmax(np.linalg.norm(c, axis=1)))
    factor_b = normalize(c[row])
    factor_a = normalize(c @ factor_b.vector.conj())
    return FactorizationResult(True, factor_a, factor_b, defect)


def entanglement_score(state: TwoSpinState) -> float:
    """
    2|det C|: 0 exactly on product states, 1 for the singlet.
    This equals the concurrence of a pure two-qubit state.
    """
    return 2 * abs(_coefficient_det(state))


###############################
# Joint outcome probabilities #
###############################


def singlet_joint_prob(eps_a: int, a: Direction, eps_b: int, b: Direction) -> float:
    """
    p(eps_a a; eps_b b) = (1 - eps_a eps_b a.b) / 4 for the singlet.
    """
    check_sign(eps_a)
    check_sign(eps_b)
    dot = min(max(a.dot(b), -1.0), 1.0)
    return 0.25 * (1.0 - eps_a * eps_b * dot)


def _outcome_ket(eps: int, e: Direction) -> PureState:
    plus, minus = basis_pair(e)
    return plus if check_sign(eps) == 1 else minus


def joint_prob_general(
    state: TwoSpinState, eps_a: int, a: Direction, eps_b: int, b: Direction
) -> float:
    """
    |(<eps_a a| x <eps_b b|) psi|^2 by direct projection.
    """
    bra = np.kron(_outcome_ket(eps_a, a).vector, _outcome_ket(eps_b, b).vector)
    return float(abs(np.vdot(bra, to_pure_state(state).vector)) ** 2)


def joint_table(
    state: TwoSpinState, a: Direction, b: Direction
) -> npt.NDArray[np.float64]:
    """
    2x2 table of joint probabilities, rows eps_a and columns eps_b in (+, -) order.
    """
    return np.array(
        [[joint_prob_general(state, ea, a, eb, b) for eb in SIGNS] for ea in SIGNS]
    )


def local_probs(state: TwoSpinState, side: Side, e: Direction) -> tuple[float, float]:
    """
    Single-spin marginal (p_plus, p_minus) for one side measured along e.
    """
    match Side(side):
        case Side.A:
            marginal = joint_table(state, e, PLUS_Z).sum(axis=1)
        case Side.B:
            marginal = joint_table(state, PLUS_Z, e).sum(axis=0)
    return float(marginal[0]), float(marginal[1])
