"""
Conversion between model objects and their JSON payloads.
Floats pass through unchanged, so json.dumps (shortest round-trip repr) and json.loads
reproduce every amplitude bit for bit.
"""

import logging
from typing import Any, Mapping

from ..quantum import ValidationError
from ..quantum.bell import DirectionTriple, LhvCertificate, LhvReport
from ..quantum.entangle import TwoSpinState
from ..quantum.measure import FrequencyEstimate
from ..quantum.qcore import DensityMatrix, PureState
from ..quantum.spin import Direction
from .payloads import (
    CertificatePayload,
    ComplexPair,
    DensityPayload,
    DirectionPayload,
    FrequencyPayload,
    LhvPayload,
    StatePayload,
    TwoSpinPayload,
    VectorDirectionPayload,
)

logger = logging.getLogger(__name__)


def _require(payload: Mapping[str, Any], *keys: str) -> None:
    if not isinstance(payload, Mapping):
        raise ValidationError(f"Expected an object, got {type(payload).__name__}")
    missing = [key for key in keys if key not in payload]
    if missing:
        raise ValidationError(f"Payload is missing {', '.join(missing)}")


def complex_to_pair(value: complex) -> ComplexPair:
    return [value.real, value.imag]


def pair_to_complex(pair: Any) -> complex:
    try:
        re, im = pair
        return complex(float(re), float(im))
    except (TypeError, ValueError):
        raise ValidationError(f"Expected a [re, im] pair, got {pair!r}") from None


#########
# State #
#########


def state_to_payload(psi: PureState) -> StatePayload:
    return {"dim": psi.dim, "amps": [complex_to_pair(a) for a in psi.amps]}


def state_from_payload(payload: Mapping[str, Any]) -> PureState:
    _require(payload, "dim", "amps")
    amps = tuple(pair_to_complex(p) for p in payload["amps"])
    if len(amps) != payload["dim"]:
        raise ValidationError(f"dim is {payload['dim']} but {len(amps)} amplitudes given")
    return PureState(amps)


def density_to_payload(rho: DensityMatrix) -> DensityPayload:
    return {
        "dim": rho.dim,
        "entries": [[complex_to_pair(v) for v in row] for row in rho.entries],
    }


def density_from_payload(payload: Mapping[str, Any]) -> DensityMatrix:
    _require(payload, "dim", "entries")
    entries = tuple(tuple(pair_to_complex(p) for p in row) for row in payload["entries"])
    if len(entries) != payload["dim"]:
        raise ValidationError(f"dim is {payload['dim']} but {len(entries)} rows given")
    return DensityMatrix(entries)


#############
# Direction #
#############


def direction_to_payload(e: Direction) -> VectorDirectionPayload:
    return {"x": e.x, "y": e.y, "z": e.z}


def direction_from_payload(payload: DirectionPayload | Mapping[str, Any]) -> Direction:
    if isinstance(payload, Mapping) and {"x", "y", "z"} <= payload.keys():
        return Direction(payload["x"], payload["y"], payload["z"])
    if isinstance(payload, Mapping) and {"theta", "phi"} <= payload.keys():
        return Direction.from_angles(float(payload["theta"]), float(payload["phi"]))
    raise ValidationError(f"Expected {{x, y, z}} or {{theta, phi}}, got {payload!r}")


def triple_to_payload(t: DirectionTriple) -> dict[str, VectorDirectionPayload]:
    return {axis: direction_to_payload(getattr(t, axis)) for axis in ("a", "b", "c")}


############
# Two-spin #
############


def two_spin_to_payload(state: TwoSpinState) -> TwoSpinPayload:
    return {
        "amps": [complex_to_pair(a) for a in state.amps],
        "e_a": direction_to_payload(state.e_a),
        "e_b": direction_to_payload(state.e_b),
    }


def two_spin_from_payload(payload: Mapping[str, Any]) -> TwoSpinState:
    _require(payload, "amps")
    amps = tuple(pair_to_complex(p) for p in payload["amps"])
    kwargs = {
        side: direction_from_payload(payload[side])
        for side in ("e_a", "e_b")
        if side in payload
    }
    return TwoSpinState(amps, **kwargs)  # type: ignore[arg-type]


#############
# Estimates #
#############


def frequency_to_payload(freq: FrequencyEstimate) -> FrequencyPayload:
    return {"counts": list(freq.counts), "shots": freq.shots, "seed": freq.seed}


def frequency_from_payload(payload: Mapping[str, Any]) -> FrequencyEstimate:
    _require(payload, "counts", "shots")
    return FrequencyEstimate(
        counts=tuple(payload["counts"]),
        shots=int(payload["shots"]),
        seed=payload.get("seed"),
    )


def certificate_to_payload(certificate: LhvCertificate) -> CertificatePayload:
    return {
        "functional": list(certificate.functional),
        "bound": certificate.bound,
        "least_negative_weight": certificate.least_negative_weight,
    }


def lhv_to_payload(report: LhvReport) -> LhvPayload:
    return {
        "feasible": report.feasible,
        "weights": None if report.weights is None else list(report.weights),
        "certificate": (
            None
            if report.certificate is None
            else certificate_to_payload(report.certificate)
        ),
        "quantum_lhs": report.quantum_lhs,
        "quasi_weights": list(report.quasi_weights),
    }
