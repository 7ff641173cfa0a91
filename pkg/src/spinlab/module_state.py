import logging

from .config import Config
from .data.codec import direction_to_payload, state_to_payload
from .quantum.spin import PLUS_Z, Direction, component_probs, expectation, spin_state
from .report import Report, fmt12
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)


def main(config: Config, args: ParserArguments) -> Report:
    theta, phi = args.theta, args.phi
    psi = spin_state(theta, phi)
    probabilities = component_probs(psi, PLUS_Z)
    mean = expectation(psi, PLUS_Z)
    logger.debug("State %s has z probabilities %s", psi, probabilities)

    return Report(
        command="state",
        seed=config.seed,
        payload={
            "theta": theta,
            "phi": phi,
            "direction": direction_to_payload(Direction.from_angles(theta, phi)),
            "state": state_to_payload(psi),
            "z_probabilities": list(probabilities),
            "z_expectation": mean,
        },
        header=("index", "re", "im", "probability"),
        rows=[
            (i, amp.real, amp.imag, p)
            for i, (amp, p) in enumerate(zip(psi.amps, probabilities))
        ],
        summary=[
            f"p(+z)={fmt12(probabilities[0])} p(-z)={fmt12(probabilities[1])}",
            f"<S_z>={fmt12(mean)}",
        ],
    )
