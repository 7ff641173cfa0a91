import logging

from .config import Config
from .quantum.bell import bell_scan
from .report import Report, fmt12
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)


def main(config: Config, args: ParserArguments) -> Report:
    step = config.scan_step if args.step is None else args.step
    max_angle = config.scan_max_angle if args.max_angle is None else args.max_angle
    table = bell_scan(step, max_angle, args.plane or config.scan_plane, config.tolerances.bell)
    best = table.minimum
    violations = sum(row.result.violated for row in table.rows)

    return Report(
        command="scan",
        seed=config.seed,
        payload={
            "step": step,
            "max_angle": max_angle,
            "plane": table.plane.value,
            "rows": [
                {
                    "theta_ab": row.theta_ab,
                    "theta_bc": row.theta_bc,
                    "theta_ac": row.theta_ac,
                    "lhs": row.result.lhs,
                    "violated": row.result.violated,
                }
                for row in table.rows
            ],
            "minimum": {
                "theta_ab": best.theta_ab,
                "theta_bc": best.theta_bc,
                "lhs": best.result.lhs,
            },
            "violations": violations,
        },
        header=("theta_ab", "theta_bc", "theta_ac", "lhs", "violated"),
        rows=[
            (row.theta_ab, row.theta_bc, row.theta_ac, row.result.lhs, row.result.violated)
            for row in table.rows
        ],
        summary=[
            f"minimum lhs={fmt12(best.result.lhs)} at theta_ab={fmt12(best.theta_ab)} "
            f"theta_bc={fmt12(best.theta_bc)}",
            f"violated at {violations} of {len(table.rows)} points",
        ],
    )
