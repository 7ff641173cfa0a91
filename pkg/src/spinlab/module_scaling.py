import logging
import math

from .config import Config
from .quantum.measure import estimation_scaling
from .quantum.rng import RngStream
from .quantum.spin import spin_state
from .report import Report, fmt12
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)


def main(config: Config, args: ParserArguments) -> Report:
    theta = math.pi / 2 if args.theta is None else args.theta
    phi = 0.0 if args.phi is None else args.phi
    trials = config.trials if args.trials is None else args.trials
    psi = spin_state(theta, phi)

    rows = estimation_scaling(psi, args.shot_counts, trials, RngStream(config.seed))
    summary = []
    for previous, current in zip(rows, rows[1:]):
        expected = math.sqrt(current.shots / previous.shots)
        ratio = previous.rmse / current.rmse if current.rmse > 0 else math.inf
        summary.append(
            f"M {previous.shots}->{current.shots}: rmse ratio "
            f"{fmt12(ratio)} (1/sqrt(M) predicts {fmt12(expected)})"
        )

    return Report(
        command="scaling",
        seed=config.seed,
        payload={
            "theta": theta,
            "phi": phi,
            "rows": [
                {"M": row.shots, "rmse": row.rmse, "trials": row.trials, "seed": row.seed}
                for row in rows
            ],
        },
        header=("M", "rmse", "trials", "seed"),
        rows=[(row.shots, row.rmse, row.trials, row.seed) for row in rows],
        summary=summary,
    )
