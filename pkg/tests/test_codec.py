import json
import math

import pytest
from hypothesis import given, settings

from spinlab.data.codec import (
    density_from_payload,
    density_to_payload,
    direction_from_payload,
    direction_to_payload,
    frequency_from_payload,
    frequency_to_payload,
    lhv_to_payload,
    state_from_payload,
    state_to_payload,
    two_spin_from_payload,
    two_spin_to_payload,
)
from spinlab.quantum import ValidationError
from spinlab.quantum.bell import DirectionTriple, lhv_feasibility
from spinlab.quantum.entangle import TwoSpinState, singlet
from spinlab.quantum.measure import FrequencyEstimate
from spinlab.quantum.qcore import PureState, mix, pure_to_density
from spinlab.quantum.spin import PLUS_X, Direction

from strategies import directions, pure_states


def _through_json(payload):
    return json.loads(json.dumps(payload))


@given(pure_states(4))
@settings(max_examples=100, deadline=None)
def test_state_survives_json_bit_for_bit(psi):
    assert state_from_payload(_through_json(state_to_payload(psi))) == psi


def test_state_payload_shape():
    payload = state_to_payload(PureState((0.6, 0.8j)))
    assert payload == {"dim": 2, "amps": [[0.6, 0.0], [0.0, 0.8]]}


def test_density_survives_json(symmetric_state):
    rho = pure_to_density(PureState((1 / math.sqrt(2), 1j / math.sqrt(2))))
    assert density_from_payload(_through_json(density_to_payload(rho))) == rho
    half = mix([symmetric_state], [1.0])
    assert density_to_payload(half)["dim"] == 2


@pytest.mark.parametrize(
    "payload",
    [
        {"dim": 2, "amps": [[1.0, 0.0]]},
        {"dim": 2, "amps": [[1.0], [0.0, 0.0]]},
        {"amps": [[1.0, 0.0], [0.0, 0.0]]},
        {"dim": 2, "amps": [[1.0, 0.0], [1.0, 0.0]]},
        [1.0, 0.0],
    ],
)
def test_bad_state_payloads(payload):
    with pytest.raises(ValidationError):
        state_from_payload(payload)


@given(directions)
@settings(max_examples=100, deadline=None)
def test_direction_survives_json(e):
    assert direction_from_payload(_through_json(direction_to_payload(e))) == e


def test_direction_accepts_angles():
    e = direction_from_payload({"theta": math.pi / 2, "phi": 0.0})
    assert direction_to_payload(e) == pytest.approx({"x": 1.0, "y": 0.0, "z": 0.0}, abs=1e-15)


def test_direction_rejects_other_shapes():
    with pytest.raises(ValidationError):
        direction_from_payload({"x": 1.0, "y": 0.0})


def test_two_spin_payload():
    state = TwoSpinState(singlet().amps, e_a=PLUS_X, e_b=Direction.of(0.0, 1.0, 1.0))
    payload = _through_json(two_spin_to_payload(state))
    assert len(payload["amps"]) == 4
    assert payload["e_a"] == {"x": 1.0, "y": 0.0, "z": 0.0}
    assert two_spin_from_payload(payload) == state


def test_frequency_payload():
    freq = FrequencyEstimate((7, 3), 10, seed=42)
    payload = frequency_to_payload(freq)
    assert payload == {"counts": [7, 3], "shots": 10, "seed": 42}
    assert frequency_from_payload(_through_json(payload)) == freq


def test_lhv_payload_is_json():
    payload = _through_json(lhv_to_payload(lhv_feasibility(DirectionTriple.coplanar(1.0, 1.0))))
    assert payload["feasible"] is False
    assert payload["weights"] is None
    assert payload["certificate"]["bound"] < 0
    assert len(payload["quasi_weights"]) == 8
