import logging

from .config import Config
from .data.codec import direction_to_payload
from .quantum.bell import mc_singlet_joint
from .quantum.entangle import SIGNS, singlet_joint_prob
from .quantum.measure import binomial_deviation
from .quantum.rng import RngStream
from .report import Report, fmt12, json_float
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)


def main(config: Config, args: ParserArguments) -> Report:
    shots = config.shots if args.shots is None else args.shots
    estimate = mc_singlet_joint(args.a, args.b, shots, RngStream(config.seed))

    rows = []
    for eps_a in SIGNS:
        for eps_b in SIGNS:
            p = singlet_joint_prob(eps_a, args.a, eps_b, args.b)
            ratio = estimate.ratio(eps_a, eps_b)
            deviation = binomial_deviation(ratio, p, shots)
            rows.append((eps_a, eps_b, estimate.count(eps_a, eps_b), ratio, p, deviation))
    within = all(row[-1] <= config.sigma_width for row in rows)
    if not within:
        logger.warning("Joint frequencies outside the %.1f sigma band", config.sigma_width)

    return Report(
        command="singlet-mc",
        seed=config.seed,
        payload={
            "a": direction_to_payload(args.a),
            "b": direction_to_payload(args.b),
            "shots": shots,
            "table": [
                {
                    "eps_a": eps_a,
                    "eps_b": eps_b,
                    "count": n,
                    "ratio": ratio,
                    "probability": p,
                    "sigmas": json_float(deviation),
                }
                for eps_a, eps_b, n, ratio, p, deviation in rows
            ],
            "sigma_width": config.sigma_width,
            "within_band": within,
        },
        header=("eps_a", "eps_b", "count", "ratio", "probability", "sigmas"),
        rows=rows,
        summary=[
            f"N(+;+)/N={fmt12(estimate.ratio(1, 1))} N(-;-)/N={fmt12(estimate.ratio(-1, -1))}",
            f"within {config.sigma_width:g} sigma: {'yes' if within else 'no'}",
        ],
    )
