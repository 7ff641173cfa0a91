import logging

from .config import Config
from .data.codec import lhv_to_payload, triple_to_payload
from .module_bell import coplanar_triple
from .quantum.bell import SPIN_A_TRIPLES, DirectionTriple, lhv_feasibility
from .report import Report, fmt12
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)


def _label(values: tuple[int, ...]) -> str:
    return "".join("+" if s == 1 else "-" for s in values)


def main(config: Config, args: ParserArguments) -> Report:
    if args.a and args.b and args.c:
        triple = DirectionTriple(args.a, args.b, args.c)
    else:
        triple = coplanar_triple(config, args)
    report = lhv_feasibility(triple, config.tolerances.bell)

    weights = report.weights or (None,) * len(SPIN_A_TRIPLES)
    summary = [f"quantum lhs={fmt12(report.quantum_lhs)}"]
    if report.feasible:
        summary.append("FEASIBLE: nonnegative weights reproduce the singlet pair statistics")
    else:
        assert report.certificate is not None
        summary.append(
            "INFEASIBLE: certificate bound "
            f"{fmt12(report.certificate.bound)}, least negative weight "
            f"{fmt12(report.certificate.least_negative_weight)}"
        )
    logger.info("%s", summary[-1])

    return Report(
        command="lhv",
        seed=config.seed,
        payload={
            "triple": triple_to_payload(triple),
            "configurations": [_label(s) for s in SPIN_A_TRIPLES],
            **lhv_to_payload(report),
        },
        header=("spin_a", "weight", "quasi_weight"),
        rows=[
            (_label(s), w, q)
            for s, w, q in zip(SPIN_A_TRIPLES, weights, report.quasi_weights)
        ],
        summary=summary,
    )
