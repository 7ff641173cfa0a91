"""
Evaluate quantitative claims listed in a multi-document YAML file.

Each document names a claim kind, its parameters, the expected value and an absolute
tolerance. A claim passes when |computed - expected| <= tolerance. An optional `stated`
value records a figure quoted elsewhere, reported next to the computed one.
"""

import logging
import math
from pathlib import Path
from typing import Any, Callable

import yaml

from .config import Config
from .data.payloads import ClaimPayload
from .quantum import ValidationError
from .quantum.bell import (
    SPIN_A_TRIPLES,
    DirectionTriple,
    anticorrelated_distribution,
    bell_scan,
    classical_bell_check,
    lhv_feasibility,
    quantum_bell_lhs,
)
from .quantum.entangle import (
    entanglement_score,
    factorize,
    joint_prob_general,
    make_two_spin,
    singlet,
    singlet_joint_prob,
)
from .quantum.measure import discriminate_phase, estimation_scaling, sample_frequencies
from .quantum.qcore import computational_basis, mix, pure_to_density, purity
from .quantum.rng import RngStream
from .quantum.spin import (
    PLUS_X,
    PLUS_Z,
    component_probs,
    expectation,
    random_direction,
    spin_state,
)
from .report import Report, fmt12
from .spinlab import ParserArguments

logger = logging.getLogger(__name__)

Params = dict[str, Any]
ClaimFunction = Callable[[Params, Config], float]

CLAIM_KINDS: dict[str, ClaimFunction] = {}


def claim_kind(name: str) -> Callable[[ClaimFunction], ClaimFunction]:
    def register(func: ClaimFunction) -> ClaimFunction:
        CLAIM_KINDS[name] = func
        return func

    return register


def _seed(params: Params, config: Config) -> int:
    return int(params.get("seed", config.seed))


def _grid(params: Params) -> list[float]:
    n = int(params.get("points", 50))
    return [k * math.pi / (n - 1) for k in range(n)]


def _symmetric_pair() -> tuple[Any, Any]:
    psi = spin_state(math.pi / 2, 0.0)
    return psi, mix(computational_basis(2), psi.probabilities)


###############
# Single spin #
###############


@claim_kind("born_z_grid")
def _born_z_grid(params: Params, config: Config) -> float:
    """Largest |p(+z) - cos^2(theta/2)| over a theta grid."""
    phi = float(params.get("phi", 0.0))
    return max(
        abs(component_probs(spin_state(theta, phi), PLUS_Z)[0] - math.cos(theta / 2) ** 2)
        for theta in _grid(params)
    )


@claim_kind("born_z_sampled_sigmas")
def _born_z_sampled_sigmas(params: Params, config: Config) -> float:
    """Largest deviation, in binomial sigmas, of sampled z frequencies over a theta grid."""
    shots = int(params.get("shots", config.shots))
    rng = RngStream(_seed(params, config))
    worst = 0.0
    for k, theta in enumerate(_grid(params)):
        psi = spin_state(theta, 0.0)
        freq = sample_frequencies(psi, computational_basis(2), shots, rng.spawn(k))
        worst = max(worst, *freq.deviation_sigmas(psi.probabilities))
    return worst


@claim_kind("expectation_z_grid")
def _expectation_z_grid(params: Params, config: Config) -> float:
    phi = float(params.get("phi", 0.0))
    return max(
        abs(expectation(spin_state(theta, phi), PLUS_Z) - math.cos(theta) / 2)
        for theta in _grid(params)
    )


@claim_kind("z_diagonal_gap")
def _z_diagonal_gap(params: Params, config: Config) -> float:
    psi, rho = _symmetric_pair()
    return max(abs(p - d) for p, d in zip(psi.probabilities, rho.diagonal))


@claim_kind("discriminate_pure")
def _discriminate_pure(params: Params, config: Config) -> float:
    return discriminate_phase(*_symmetric_pair(), PLUS_X)[0]


@claim_kind("discriminate_mixed")
def _discriminate_mixed(params: Params, config: Config) -> float:
    return discriminate_phase(*_symmetric_pair(), PLUS_X)[1]


@claim_kind("purity_pure")
def _purity_pure(params: Params, config: Config) -> float:
    return purity(pure_to_density(_symmetric_pair()[0]))


@claim_kind("purity_mixed")
def _purity_mixed(params: Params, config: Config) -> float:
    return purity(_symmetric_pair()[1])


@claim_kind("scaling_ratio")
def _scaling_ratio(params: Params, config: Config) -> float:
    """rmse(M) / rmse(4M): about 2 when the error falls as 1/sqrt(M)."""
    shots = int(params.get("shots", 100))
    rows = estimation_scaling(
        spin_state(math.pi / 2, 0.0),
        [shots, 4 * shots],
        int(params.get("trials", config.trials)),
        RngStream(_seed(params, config)),
    )
    return rows[0].rmse / rows[1].rmse


###########
# Singlet #
###########


@claim_kind("singlet_parallel_max")
def _singlet_parallel_max(params: Params, config: Config) -> float:
    rng = RngStream(_seed(params, config))
    directions = [random_direction(rng) for _ in range(int(params.get("count", 100)))]
    return max(singlet_joint_prob(1, e, 1, e) for e in directions)


@claim_kind("singlet_oracle_gap")
def _singlet_oracle_gap(params: Params, config: Config) -> float:
    """Largest gap between the singlet closed form and direct projection."""
    rng = RngStream(_seed(params, config))
    state = singlet()
    worst = 0.0
    for _ in range(int(params.get("count", 1000))):
        a, b = random_direction(rng), random_direction(rng)
        for eps_a, eps_b in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            gap = abs(
                singlet_joint_prob(eps_a, a, eps_b, b)
                - joint_prob_general(state, eps_a, a, eps_b, b)
            )
            worst = max(worst, gap)
    return worst


@claim_kind("entanglement_singlet")
def _entanglement_singlet(params: Params, config: Config) -> float:
    return entanglement_score(singlet())


@claim_kind("factorize_defect")
def _factorize_defect(params: Params, config: Config) -> float:
    """|det C| of a state given by real amplitudes; 0 for product states."""
    alphas = [complex(a) for a in params["alphas"]]
    return factorize(make_two_spin(alphas)).defect


########
# Bell #
########


@claim_kind("bell_lhs")
def _bell_lhs(params: Params, config: Config) -> float:
    return quantum_bell_lhs(
        DirectionTriple.coplanar(float(params["theta_ab"]), float(params["theta_bc"]))
    )


@claim_kind("scan_minimum")
def _scan_minimum(params: Params, config: Config) -> float:
    return bell_scan(float(params.get("step", config.scan_step))).minimum.result.lhs


@claim_kind("classical_anticorrelated_minimum")
def _classical_anticorrelated_minimum(params: Params, config: Config) -> float:
    """Smallest classical Bell combination over the anticorrelated point masses."""
    triple = DirectionTriple.coplanar(math.pi / 3, math.pi / 3)
    point_masses = [
        anticorrelated_distribution([1.0 if j == i else 0.0 for j in range(len(SPIN_A_TRIPLES))])
        for i in range(len(SPIN_A_TRIPLES))
    ]
    return min(classical_bell_check(dist, triple).lhs for dist in point_masses)


@claim_kind("lhv_grid_disagreements")
def _lhv_grid_disagreements(params: Params, config: Config) -> float:
    """Grid points where the hidden-variable verdict and the sign of the Bell combination disagree."""
    n = int(params.get("points", 50))
    tol = config.tolerances.bell
    disagreements = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            report = lhv_feasibility(
                DirectionTriple.coplanar(i * math.pi / n, j * math.pi / n), tol
            )
            if report.feasible == (report.quantum_lhs < -tol):
                disagreements += 1
    return float(disagreements)


##########
# Runner #
##########


def resolve_claims_file(file_path: str) -> Path:
    path = Path(file_path)
    if path.is_absolute() or path.exists():
        return path
    # Fall back to the checkout root
    candidate = Path(__file__).resolve().parents[2] / path
    return candidate if candidate.exists() else path


def load_claims(file_path: str) -> list[ClaimPayload]:
    path = resolve_claims_file(file_path)
    logger.info('Parsing claims file "%s"', path)
    try:
        with open(path, "r", encoding="UTF-8") as f:
            parsed: list[Any] = [doc for doc in yaml.safe_load_all(f) if doc is not None]
    except OSError as e:
        raise ValidationError(f"Cannot read claims file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ValidationError(f"Failed to parse claims file {path}: {e}") from e

    logger.debug("  num claims=%d", len(parsed))
    for doc in parsed:
        if not isinstance(doc, dict) or not {"name", "kind", "expected", "tolerance"} <= doc.keys():
            raise ValidationError(f"Claim needs name, kind, expected and tolerance: {doc!r}")
        if doc["kind"] not in CLAIM_KINDS:
            raise ValidationError(f'Unknown claim kind "{doc["kind"]}" in {doc["name"]}')
    return parsed  # type: ignore[return-value]


def main(config: Config, args: ParserArguments) -> Report:
    claims = load_claims(args.claims_file or config.claims_file)

    results: list[dict[str, Any]] = []
    for claim in claims:
        computed = CLAIM_KINDS[claim["kind"]](claim.get("params", {}) or {}, config)
        expected = float(claim["expected"])
        tolerance = float(claim["tolerance"])
        passed = abs(computed - expected) <= tolerance
        logger.info(
            "%s: computed %.12g, expected %.12g +/- %.3g, %s",
            claim["name"],
            computed,
            expected,
            tolerance,
            "pass" if passed else "FAIL",
        )
        results.append(
            {
                "name": claim["name"],
                "kind": claim["kind"],
                "computed": computed,
                "expected": expected,
                "tolerance": tolerance,
                "passed": passed,
                "stated": claim.get("stated"),
            }
        )

    failed = [r["name"] for r in results if not r["passed"]]
    summary = [f"{len(results) - len(failed)} of {len(results)} claims passed"]
    summary.extend(f"failed: {name}" for name in failed)
    for r in results:
        if r["stated"] is not None and abs(r["stated"] - r["computed"]) > r["tolerance"]:
            summary.append(
                f"{r['name']}: stated {fmt12(r['stated'])}, computed {fmt12(r['computed'])}"
            )

    return Report(
        command="verify",
        seed=config.seed,
        payload={"claims": results, "failed": failed},
        header=("name", "kind", "computed", "expected", "tolerance", "passed", "stated"),
        rows=[
            (r["name"], r["kind"], r["computed"], r["expected"], r["tolerance"], r["passed"], r["stated"])
            for r in results
        ],
        summary=summary,
        exit_code=3 if failed else 0,
    )
