import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from spinlab.quantum import ValidationError
from spinlab.quantum.bell import (
    BELL_FUNCTIONAL,
    CONFIGURATIONS,
    CONSTRAINTS,
    SPIN_A_TRIPLES,
    Axis,
    DirectionTriple,
    JointDistribution,
    anticorrelated_distribution,
    bell_scan,
    classical_bell_check,
    configuration_index,
    is_anticorrelated,
    lhv_feasibility,
    lhv_targets,
    marginal_pair,
    mc_singlet_joint,
    quantum_bell_lhs,
    quantum_bell_result,
)
from spinlab.quantum.entangle import SIGNS, singlet_joint_prob
from spinlab.quantum.measure import binomial_deviation, binomial_sigma
from spinlab.quantum.rng import RngStream
from spinlab.quantum.spin import PLUS_X, PLUS_Y, PLUS_Z, Direction, Plane, random_direction

PI_3 = DirectionTriple.coplanar(math.pi / 3, math.pi / 3)
ORTHOGONAL = DirectionTriple(PLUS_X, PLUS_Y, PLUS_Z)
IDENTICAL = DirectionTriple(PLUS_Z, PLUS_Z, PLUS_Z)
PAIRS = ((Axis.A, Axis.B), (Axis.B, Axis.C), (Axis.A, Axis.C))

angles = st.floats(1e-3, math.pi)
ANTICORRELATED = frozenset(
    triple + tuple(-s for s in triple) for triple in SPIN_A_TRIPLES
)


###########
# Triples #
###########


def test_coplanar_angles():
    assert PI_3.theta_ab == pytest.approx(math.pi / 3)
    assert PI_3.theta_bc == pytest.approx(math.pi / 3)
    assert PI_3.theta_ac == pytest.approx(2 * math.pi / 3)
    assert PI_3.b.y == 0.0


@pytest.mark.parametrize("plane", list(Plane))
def test_coplanar_triple_lies_in_plane(plane):
    t = DirectionTriple.coplanar(0.4, 0.9, plane)
    normal = np.cross(t.a.vector, t.b.vector)
    assert abs(np.dot(normal, t.c.vector)) <= 1e-12


###########
# Quantum #
###########


@pytest.mark.parametrize(
    "triple, expected",
    [
        (IDENTICAL, 0.0),
        (PI_3, -0.125),
        (DirectionTriple.coplanar(math.pi / 2, math.pi / 2), 0.0),
        (ORTHOGONAL, 0.25),
    ],
)
def test_quantum_bell_lhs_examples(triple, expected):
    assert abs(quantum_bell_lhs(triple) - expected) <= 1e-12


def test_pi_over_3_is_violated():
    result = quantum_bell_result(PI_3)
    assert result.violated
    assert result.anticorrelated


@given(angles, angles)
@settings(max_examples=300, deadline=None)
def test_coplanar_closed_form(x, y):
    lhs = quantum_bell_lhs(DirectionTriple.coplanar(x, y))
    assert lhs == pytest.approx(
        -math.sin(x / 2) * math.sin(y / 2) * math.cos((x + y) / 2), abs=1e-12
    )
    assert lhs >= -0.125 - 1e-12


def test_quantum_lhs_on_random_triples():
    rng = RngStream(21)
    for _ in range(200):
        t = DirectionTriple(random_direction(rng), random_direction(rng), random_direction(rng))
        quantum_bell_lhs(t)


#############################
# Classical distributions #
#############################


def test_joint_distribution_validation():
    with pytest.raises(ValidationError):
        JointDistribution((1.0,) * 63)
    with pytest.raises(ValidationError):
        JointDistribution((0.5,) * 64)
    with pytest.raises(ValidationError):
        JointDistribution((-1 / 64, 2 / 64) + (1 / 64,) * 62)
    with pytest.raises(ValidationError):
        JointDistribution.point_mass((1, 1, 1, 1, 1, 0))


def test_uniform_marginals():
    dist = JointDistribution.uniform()
    for pair in PAIRS:
        for eps_a in SIGNS:
            for eps_b in SIGNS:
                assert marginal_pair(dist, pair, (eps_a, eps_b)) == pytest.approx(0.25)


def test_point_mass_marginals():
    dist = JointDistribution.point_mass((1, 1, 1, -1, -1, -1))
    assert marginal_pair(dist, (Axis.A, Axis.B), (1, 1)) == 0.0
    assert marginal_pair(dist, (Axis.A, Axis.B), (1, -1)) == 1.0
    assert dist.weight((1, 1, 1, -1, -1, -1)) == 1.0


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_marginals_sum_to_one(seed):
    dist = JointDistribution.random(RngStream(seed))
    for pair in PAIRS:
        total = sum(marginal_pair(dist, pair, (a, b)) for a in SIGNS for b in SIGNS)
        assert total == pytest.approx(1.0, abs=1e-12)


def test_uniform_classical_check():
    result = classical_bell_check(JointDistribution.uniform(), PI_3)
    assert result.lhs == pytest.approx(0.25)
    assert not result.violated
    assert not result.anticorrelated


def test_anticorrelated_point_masses_never_violate():
    for i in range(len(SPIN_A_TRIPLES)):
        weights = [1.0 if j == i else 0.0 for j in range(len(SPIN_A_TRIPLES))]
        result = classical_bell_check(anticorrelated_distribution(weights), PI_3)
        assert result.anticorrelated
        assert result.lhs in (0.0, 1.0)


def test_every_point_mass():
    for config in CONFIGURATIONS:
        result = classical_bell_check(JointDistribution.point_mass(config), PI_3)
        assert result.lhs in (-1.0, 0.0, 1.0)
        assert result.lhs >= 0 or not result.anticorrelated


def test_point_mass_without_anticorrelation_goes_negative():
    result = classical_bell_check(JointDistribution.point_mass((1, -1, -1, -1, -1, 1)), PI_3)
    assert result.lhs == -1.0
    assert result.violated
    assert not result.anticorrelated


def test_random_anticorrelated_distributions_never_violate():
    rng = RngStream(33)
    for _ in range(10_000):
        dist = anticorrelated_distribution(rng.dirichlet(len(SPIN_A_TRIPLES)))
        assert classical_bell_check(dist, PI_3).lhs >= -1e-12


def test_is_anticorrelated():
    assert is_anticorrelated(JointDistribution.point_mass((1, -1, 1, -1, 1, -1)))
    assert not is_anticorrelated(JointDistribution.point_mass((1, -1, 1, -1, -1, -1)))


def test_anticorrelated_point_masses_are_exactly_the_support():
    for config in CONFIGURATIONS:
        dist = JointDistribution.point_mass(config)
        assert is_anticorrelated(dist) == (config in ANTICORRELATED)


def test_any_weight_off_the_support_breaks_anticorrelation(rng):
    others = [c for c in CONFIGURATIONS if c not in ANTICORRELATED]
    assert len(others) == 56
    leak = 1e-6
    for k in range(560):
        weights = [0.0] * len(CONFIGURATIONS)
        for config, w in zip(sorted(ANTICORRELATED), rng.dirichlet(8)):
            weights[configuration_index(config)] = w * (1.0 - leak)
        inside = JointDistribution.normalized(weights)
        assert is_anticorrelated(inside)
        weights[configuration_index(others[k % len(others)])] = leak
        assert not is_anticorrelated(JointDistribution.normalized(weights))


def test_anticorrelated_distribution_length():
    with pytest.raises(ValidationError):
        anticorrelated_distribution([1.0])


#########################
# Hidden-variable model #
#########################


def _linprog_feasible(t: DirectionTriple) -> bool:
    res = linprog(
        np.zeros(CONSTRAINTS.shape[1]),
        A_eq=CONSTRAINTS,
        b_eq=lhv_targets(t),
        bounds=[(0, None)] * CONSTRAINTS.shape[1],
        method="highs",
    )
    return res.status == 0


def test_orthogonal_triple_is_feasible():
    report = lhv_feasibility(ORTHOGONAL)
    assert report.feasible
    assert report.certificate is None
    weights = np.array(report.weights)
    assert np.all(weights >= 0)
    assert np.allclose(CONSTRAINTS @ weights, lhv_targets(ORTHOGONAL), atol=1e-9)


def test_witness_reproduces_quantum_pairs():
    report = lhv_feasibility(ORTHOGONAL)
    dist = report.distribution()
    assert dist is not None and is_anticorrelated(dist)
    assert marginal_pair(dist, (Axis.A, Axis.B), (1, 1)) == pytest.approx(0.25, abs=1e-9)


def test_identical_directions_are_feasible():
    report = lhv_feasibility(IDENTICAL)
    assert report.feasible
    assert sum(report.weights) == pytest.approx(1.0)


def test_pi_over_3_is_infeasible():
    report = lhv_feasibility(PI_3)
    assert not report.feasible
    assert report.weights is None
    certificate = report.certificate
    assert certificate.bound == pytest.approx(-0.125, abs=1e-12)
    assert np.all(np.array(certificate.functional) @ CONSTRAINTS >= 0)
    assert certificate.least_negative_weight < 0
    assert report.distribution() is None


def test_quasi_weights_go_negative_when_infeasible():
    report = lhv_feasibility(PI_3)
    quasi = np.array(report.quasi_weights)
    assert np.allclose(CONSTRAINTS @ quasi, lhv_targets(PI_3), atol=1e-12)
    assert quasi.min() < 0


def test_bell_functional_is_the_combination():
    assert BELL_FUNCTIONAL @ lhv_targets(PI_3) == pytest.approx(quantum_bell_lhs(PI_3))


def test_coplanar_grid_boundary():
    n = 50
    disagreements = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            report = lhv_feasibility(DirectionTriple.coplanar(i * math.pi / n, j * math.pi / n))
            if report.feasible == (report.quantum_lhs < -1e-9):
                disagreements += 1
    assert disagreements == 0


def test_feasibility_matches_linear_program():
    rng = RngStream(55)
    checked = 0
    while checked < 200:
        t = DirectionTriple(random_direction(rng), random_direction(rng), random_direction(rng))
        if abs(quantum_bell_lhs(t)) < 1e-6:
            continue
        assert lhv_feasibility(t).feasible == _linprog_feasible(t)
        checked += 1


########
# Scan #
########


def test_scan_finds_minimum():
    table = bell_scan(math.pi / 60)
    best = table.minimum
    assert best.result.lhs == pytest.approx(-0.125, abs=1e-3)
    assert best.theta_ab == pytest.approx(math.pi / 3, abs=0.06)
    assert best.theta_bc == pytest.approx(math.pi / 3, abs=0.06)
    assert len(table.rows) == 60 * 60


def test_coarse_scan_still_negative():
    table = bell_scan(math.pi / 4)
    assert len(table.rows) == 16
    assert table.minimum.result.lhs < 0


def test_scan_rows_use_sum_of_angles():
    table = bell_scan(math.pi / 8, max_angle=math.pi / 2, plane=Plane.YZ)
    assert len(table.rows) == 16
    for row in table.rows:
        assert row.theta_ac == row.theta_ab + row.theta_bc


def test_small_angles_approach_zero():
    table = bell_scan(0.001, max_angle=0.01)
    assert all(abs(row.result.lhs) < 1e-4 for row in table.rows)


@pytest.mark.parametrize("step, max_angle", [(0.0, math.pi), (-0.1, math.pi), (0.5, 0.1), (1e-6, math.pi)])
def test_scan_rejects(step, max_angle):
    with pytest.raises(ValidationError):
        bell_scan(step, max_angle)


###############
# Monte Carlo #
###############


def test_parallel_outcomes_never_sampled():
    estimate = mc_singlet_joint(PLUS_Z, PLUS_Z, 100_000, RngStream(1))
    assert estimate.count(1, 1) == 0
    assert estimate.count(-1, -1) == 0
    assert estimate.count(1, -1) + estimate.count(-1, 1) == 100_000


def test_perpendicular_ratios():
    shots = 100_000
    estimate = mc_singlet_joint(PLUS_Z, PLUS_X, shots, RngStream(2))
    for eps_a in SIGNS:
        for eps_b in SIGNS:
            assert abs(estimate.ratio(eps_a, eps_b) - 0.25) <= 4 * binomial_sigma(0.25, shots)


def test_antiparallel_ratio():
    shots = 100_000
    estimate = mc_singlet_joint(PLUS_Z, -PLUS_Z, shots, RngStream(3))
    assert abs(estimate.ratio(1, 1) - 0.5) <= 4 * binomial_sigma(0.5, shots)
    assert estimate.table.sum() == pytest.approx(1.0)


def test_mc_is_reproducible():
    first = mc_singlet_joint(PLUS_X, PLUS_Y, 5000, RngStream(4))
    assert first == mc_singlet_joint(PLUS_X, PLUS_Y, 5000, RngStream(4))
    assert first.seed == 4


def test_mc_rejects_zero_shots():
    with pytest.raises(ValidationError):
        mc_singlet_joint(PLUS_X, PLUS_Y, 0, RngStream(4))


def test_mc_estimates_stay_within_four_sigma():
    shots = 100_000
    a, b = PLUS_Z, Direction.from_angles(2 * math.pi / 3, 0.0)
    outliers = dict.fromkeys([(1, 1), (1, -1), (-1, 1), (-1, -1)], 0)
    for trial in range(1000):
        estimate = mc_singlet_joint(a, b, shots, RngStream(2024, trial))
        for eps_a, eps_b in outliers:
            p = singlet_joint_prob(eps_a, a, eps_b, b)
            if binomial_deviation(estimate.ratio(eps_a, eps_b), p, shots) >= 4.0:
                outliers[(eps_a, eps_b)] += 1
    assert all(count <= 1 for count in outliers.values())
