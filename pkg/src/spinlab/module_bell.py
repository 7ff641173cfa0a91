import logging

from .config import Config
from .data.codec import lhv_to_payload, triple_to_payload
from .quantum import ValidationError
from .quantum.bell import DirectionTriple, lhv_feasibility, quantum_bell_result
from .report import Report, fmt12
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)


def coplanar_triple(config: Config, args: ParserArguments) -> DirectionTriple:
    if args.theta_ab is None or args.theta_bc is None:
        raise ValidationError("Both --theta-ab and --theta-bc are required")
    if args.theta_ab <= 0 or args.theta_bc <= 0:
        raise ValidationError(
            f"Angles must be positive, got theta_ab={args.theta_ab!r} theta_bc={args.theta_bc!r}"
        )
    return DirectionTriple.coplanar(
        args.theta_ab, args.theta_bc, args.plane or config.scan_plane
    )


def main(config: Config, args: ParserArguments) -> Report:
    triple = coplanar_triple(config, args)
    tol = config.tolerances.bell
    result = quantum_bell_result(triple, tol)
    lhv = lhv_feasibility(triple, tol)
    verdict = "FEASIBLE" if lhv.feasible else "INFEASIBLE"
    logger.info("lhs=%.12g violated=%s hidden variables %s", result.lhs, result.violated, verdict)

    theta_ac = args.theta_ab + args.theta_bc
    return Report(
        command="bell",
        seed=config.seed,
        payload={
            "theta_ab": args.theta_ab,
            "theta_bc": args.theta_bc,
            "theta_ac": theta_ac,
            "triple": triple_to_payload(triple),
            "lhs": result.lhs,
            "violated": result.violated,
            "lhv": lhv_to_payload(lhv),
        },
        header=("theta_ab", "theta_bc", "theta_ac", "lhs", "violated", "feasible"),
        rows=[(args.theta_ab, args.theta_bc, theta_ac, result.lhs, result.violated, lhv.feasible)],
        summary=[
            f"lhs={fmt12(result.lhs)} {'violated' if result.violated else 'not violated'}",
            f"hidden-variable model {verdict}",
        ],
    )
