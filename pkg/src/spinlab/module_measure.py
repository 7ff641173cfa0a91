import logging

from .config import Config
from .data.codec import direction_to_payload, frequency_to_payload, state_to_payload
from .quantum.measure import estimate_average, sample_frequencies
from .quantum.rng import RngStream
from .quantum.spin import (
    PLUS_Z,
    SPIN_VALUES,
    basis_pair,
    component_probs,
    expectation,
    spin_state,
)
from .report import Report, fmt12, json_float
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)

OUTCOME_LABELS = ("+", "-")


def main(config: Config, args: ParserArguments) -> Report:
    psi = spin_state(args.theta, args.phi)
    e = args.direction or PLUS_Z
    shots = config.shots if args.shots is None else args.shots
    rng = RngStream(config.seed)

    freq = sample_frequencies(psi, basis_pair(e), shots, rng)
    probabilities = component_probs(psi, e)
    sigmas = freq.deviation_sigmas(probabilities)
    within = all(s <= config.sigma_width for s in sigmas)
    average = estimate_average(freq, SPIN_VALUES)
    if not within:
        logger.warning(
            "Frequencies outside the %.1f sigma band: %s", config.sigma_width, sigmas
        )

    return Report(
        command="measure",
        seed=config.seed,
        payload={
            "state": state_to_payload(psi),
            "direction": direction_to_payload(e),
            "frequency": frequency_to_payload(freq),
            "ratios": list(freq.ratios),
            "probabilities": list(probabilities),
            "deviation_sigmas": [json_float(s) for s in sigmas],
            "sigma_width": config.sigma_width,
            "within_band": within,
            "average": average,
            "expectation": expectation(psi, e),
        },
        header=("outcome", "count", "ratio", "probability", "sigmas"),
        rows=[
            (label, n, r, p, s)
            for label, n, r, p, s in zip(
                OUTCOME_LABELS, freq.counts, freq.ratios, probabilities, sigmas
            )
        ],
        summary=[
            f"shots={shots} ratio(+)={fmt12(freq.ratio(0))} p(+)={fmt12(probabilities[0])}",
            f"within {config.sigma_width:g} sigma: {'yes' if within else 'no'}",
        ],
    )
