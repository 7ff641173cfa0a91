import cmath
import logging
import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Self

import numpy as np
import numpy.typing as npt

from . import EPS_NORM, EPS_ZERO, ValidationError
from .qcore import PureState, inner_product
from .rng import RngStream, draw_outcomes

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi

# hbar = 1: spin-component outcomes for (+e, -e)
SPIN_VALUES = (0.5, -0.5)


def wrap_angle(phi: float) -> float:
    """
    Reduce an azimuth to [0, 2*pi).
    """
    wrapped = phi % TWO_PI
    return 0.0 if wrapped >= TWO_PI else wrapped


def check_angles(theta: float, phi: float) -> None:
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValidationError("Angles must be finite")
    if not 0.0 <= theta <= math.pi:
        raise ValidationError(f"theta={theta!r} outside [0, pi]")
    if not 0.0 <= phi < TWO_PI:
        raise ValidationError(f"phi={phi!r} outside [0, 2*pi)")


class Plane(StrEnum):
    XZ = "xz"
    XY = "xy"
    YZ = "yz"


@dataclass(frozen=True)
class Direction:
    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for name in ("x", "y", "z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"Direction component {name} must be finite")
            object.__setattr__(self, name, value)
        norm = self.x**2 + self.y**2 + self.z**2
        if abs(norm - 1.0) > EPS_NORM:
            raise ValidationError(f"Direction is not a unit vector (norm^2 = {norm!r})")

    @classmethod
    def of(cls, x: float, y: float, z: float) -> Self:
        """
        Build a direction from any nonzero vector by normalizing it.
        """
        norm = math.sqrt(x * x + y * y + z * z)
        if not math.isfinite(norm) or norm <= EPS_ZERO:
            raise ValidationError("A direction needs a finite nonzero vector")
        return cls(x / norm, y / norm, z / norm)

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> Self:
        check_angles(theta, phi)
        sin_theta = math.sin(theta)
        return cls(sin_theta * math.cos(phi), sin_theta * math.sin(phi), math.cos(theta))

    @classmethod
    def in_plane(cls, angle: float, plane: Plane = Plane.XZ) -> Self:
        """
        Unit vector at `angle` from the first axis of the plane: +z for xz and yz, +x for xy.
        """
        try:
            plane = Plane(plane)
        except ValueError:
            raise ValidationError(f"Unknown plane {plane!r}") from None
        c, s = math.cos(angle), math.sin(angle)
        match plane:
            case Plane.XZ:
                return cls(s, 0.0, c)
            case Plane.YZ:
                return cls(0.0, s, c)
            case Plane.XY:
                return cls(c, s, 0.0)

    def to_angles(self) -> tuple[float, float]:
        rho = math.hypot(self.x, self.y)
        theta = math.atan2(rho, self.z)
        if rho == 0.0:
            # Azimuth is meaningless at the poles
            return theta, 0.0
        return theta, wrap_angle(math.atan2(self.y, self.x))

    @property
    def vector(self) -> npt.NDArray[np.float64]:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "Direction") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Direction") -> tuple[float, float, float]:
        return (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def angle_to(self, other: "Direction") -> float:
        return math.atan2(math.hypot(*self.cross(other)), self.dot(other))

    def __neg__(self) -> "Direction":
        return Direction(-self.x, -self.y, -self.z)

    def __str__(self) -> str:
        return f"({self.x:.6g}, {self.y:.6g}, {self.z:.6g})"


PLUS_X = Direction(1.0, 0.0, 0.0)
PLUS_Y = Direction(0.0, 1.0, 0.0)
PLUS_Z = Direction(0.0, 0.0, 1.0)


def spin_state(theta: float, phi: float) -> PureState:
    """
    |+; theta, phi> = cos(theta/2)|+z> + sin(theta/2) exp(i phi)|-z>
    """
    check_angles(theta, phi)
    return PureState(
        (math.cos(theta / 2), math.sin(theta / 2) * cmath.exp(1j * phi))
    )


def basis_pair(e: Direction) -> tuple[PureState, PureState]:
    """
    (|+e>, |-e>), where |-e> is spin_state(pi - theta, phi + pi) so its phase is fixed.
    At the poles the azimuth is 0, so basis_pair(+z) is the computational basis.
    """
    theta, phi = e.to_angles()
    anti_theta = math.pi - theta
    anti_phi = wrap_angle(phi + math.pi) if 0.0 < anti_theta < math.pi else 0.0
    plus = spin_state(theta, phi)
    minus = spin_state(anti_theta, anti_phi)
    return plus, minus


def _check_single_spin(psi: PureState) -> None:
    if psi.dim != 2:
        raise ValidationError(f"Expected a single-spin state, got dimension {psi.dim}")


def component_probs(psi: PureState, e: Direction) -> tuple[float, float]:
    _check_single_spin(psi)
    plus, minus = basis_pair(e)
    return abs(inner_product(plus, psi)) ** 2, abs(inner_product(minus, psi)) ** 2


def expectation(psi: PureState, e: Direction) -> float:
    p_plus, p_minus = component_probs(psi, e)
    return SPIN_VALUES[0] * p_plus + SPIN_VALUES[1] * p_minus


def polarization(psi: PureState) -> Direction:
    """
    The direction e for which psi is |+e> up to a global phase.
    """
    _check_single_spin(psi)
    c0, c1 = psi.amps
    theta = 2 * math.atan2(abs(c1), abs(c0))
    if abs(c0) <= EPS_ZERO or abs(c1) <= EPS_ZERO:
        return Direction.from_angles(min(theta, math.pi), 0.0)
    phi = wrap_angle(cmath.phase(c1) - cmath.phase(c0))
    return Direction.from_angles(min(theta, math.pi), phi)


@dataclass(frozen=True)
class ClassicalSpin:
    """
    Hidden-variable stand-in for one spin measured along one direction: a classical
    two-valued variable taking +1/2 or -1/2 with the Born probabilities.
    """

    p_plus: float
    p_minus: float

    @property
    def probabilities(self) -> tuple[float, float]:
        return self.p_plus, self.p_minus

    @property
    def mean(self) -> float:
        return SPIN_VALUES[0] * self.p_plus + SPIN_VALUES[1] * self.p_minus

    def sample(self, shots: int, rng: RngStream) -> tuple[int, int]:
        if shots < 1:
            raise ValidationError("Shots must be positive")
        outcomes = draw_outcomes(self.probabilities, shots, rng)
        counts = np.bincount(outcomes, minlength=2)
        return int(counts[0]), int(counts[1])


def classical_spin_model(psi: PureState, e: Direction) -> ClassicalSpin:
    p_plus, p_minus = component_probs(psi, e)
    logger.debug("Classical spin model along %s: p+=%.12g", e, p_plus)
    return ClassicalSpin(p_plus, p_minus)


def random_direction(rng: RngStream) -> Direction:
    """
    Uniformly distributed on the unit sphere.
    """
    u, v = rng.uniforms(2)
    return Direction.from_angles(math.acos(1.0 - 2.0 * u), wrap_angle(TWO_PI * v))
