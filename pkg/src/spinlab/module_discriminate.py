"""
A superposition and the mixture with the same z statistics agree along z and differ
along any direction sensitive to the relative phase.
"""

import logging
import math

from .config import Config
from .data.codec import density_to_payload, direction_to_payload, state_to_payload
from .quantum.measure import (
    discriminate_phase,
    estimate_relative_phase,
    phase_protocol,
    sample_frequencies,
)
from .quantum.qcore import computational_basis, mix, purity, pure_to_density
from .quantum.rng import RngStream
from .quantum.spin import PLUS_X, ClassicalSpin, basis_pair, spin_state
from .report import Report, fmt12
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)


def main(config: Config, args: ParserArguments) -> Report:
    theta = math.pi / 2 if args.theta is None else args.theta
    phi = 0.0 if args.phi is None else args.phi
    psi = spin_state(theta, phi)
    rho = mix(computational_basis(2), psi.probabilities)
    analysis = args.direction or PLUS_X

    pure_p, mixed_p = discriminate_phase(psi, rho, analysis)
    protocol = phase_protocol(psi, rho)
    logger.debug("Phase protocol: %s", protocol)
    pure_purity = purity(pure_to_density(psi))
    mixed_purity = purity(rho)

    payload = {
        "state": state_to_payload(psi),
        "mixture": density_to_payload(rho),
        "analysis": direction_to_payload(analysis),
        "z_probabilities": list(psi.probabilities),
        "pure_plus": pure_p,
        "mixed_plus": mixed_p,
        "pure_purity": pure_purity,
        "mixed_purity": mixed_purity,
        "protocol": {
            "pure_x": protocol.pure_x,
            "pure_y": protocol.pure_y,
            "mixed_x": protocol.mixed_x,
            "mixed_y": protocol.mixed_y,
            "pure_phase": protocol.pure_phase,
            "mixed_phase": protocol.mixed_phase,
        },
    }
    header: tuple[str, ...] = ("ensemble", "p_plus", "purity")
    rows = [("superposition", pure_p, pure_purity), ("mixture", mixed_p, mixed_purity)]
    summary = [
        f"p(+analysis): superposition={fmt12(pure_p)} mixture={fmt12(mixed_p)}",
        f"purity: superposition={fmt12(pure_purity)} mixture={fmt12(mixed_purity)}",
    ]

    if args.shots is not None:
        rng = RngStream(config.seed)
        pure_freq = sample_frequencies(psi, basis_pair(analysis), args.shots, rng.spawn(0))
        mixed_counts = ClassicalSpin(mixed_p, 1.0 - mixed_p).sample(args.shots, rng.spawn(1))
        payload["sampled"] = {
            "shots": args.shots,
            "superposition_plus": pure_freq.counts[0],
            "mixture_plus": mixed_counts[0],
        }
        header = (*header, "count_plus", "shots")
        rows = [
            (*rows[0], pure_freq.counts[0], args.shots),
            (*rows[1], mixed_counts[0], args.shots),
        ]
        if protocol.pure_phase is not None:
            estimate = estimate_relative_phase(psi, args.shots, rng.spawn(2))
            payload["sampled"]["estimated_phase"] = estimate
            summary.append(
                f"estimated phase={fmt12(estimate)} exact={fmt12(protocol.pure_phase)}"
            )

    return Report(
        command="discriminate",
        seed=config.seed,
        payload=payload,
        header=header,
        rows=rows,
        summary=summary,
    )
