from typing import NotRequired, TypedDict

# JSON shapes of serialized model objects

# [re, im]
ComplexPair = list[float]


class StatePayload(TypedDict):
    dim: int
    amps: list[ComplexPair]


class DensityPayload(TypedDict):
    dim: int
    # Row-major
    entries: list[list[ComplexPair]]


class VectorDirectionPayload(TypedDict):
    x: float
    y: float
    z: float


class AngleDirectionPayload(TypedDict):
    theta: float
    phi: float


DirectionPayload = VectorDirectionPayload | AngleDirectionPayload


class TwoSpinPayload(TypedDict):
    # (++, +-, -+, --) relative to e_a and e_b
    amps: list[ComplexPair]
    e_a: DirectionPayload
    e_b: DirectionPayload


class FrequencyPayload(TypedDict):
    counts: list[int]
    shots: int
    seed: int | None


class CertificatePayload(TypedDict):
    functional: list[float]
    bound: float
    least_negative_weight: float


class LhvPayload(TypedDict):
    feasible: bool
    weights: list[float] | None
    certificate: CertificatePayload | None
    quantum_lhs: float
    quasi_weights: NotRequired[list[float]]


class StampPayload(TypedDict):
    tool: str
    version: str
    seed: int
    command: str


class ClaimPayload(TypedDict):
    name: str
    kind: str
    params: NotRequired[dict[str, float]]
    expected: float
    tolerance: float
    stated: NotRequired[float]
