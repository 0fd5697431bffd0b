import numpy as np
import pytest

from witnesskit.linalg import hs_inner, hs_norm
from witnesskit.measures import (
    ProjectionConfig,
    bnt_check,
    gbi_violation,
    hs_distance,
    hs_measure_isotropic,
    infinite_d_trend,
    nearest_separable,
)
from witnesskit.states import DensityMatrix, isotropic
from witnesskit.witness import SolverConfig, optimal_witness_isotropic


def test_hs_distance_isotropic_pair():
    # ||rho_a - rho_b|| = sqrt(d^2-1)/d |a - b|
    for d, a, b in [(2, 0.9, 0.3), (3, 1.0, 0.25)]:
        got = hs_distance(isotropic(d, a), isotropic(d, b))
        assert got == pytest.approx(np.sqrt(d**2 - 1) / d * abs(a - b))


def test_hs_distance_self_is_zero():
    rho = isotropic(3, 0.5)
    assert hs_distance(rho, rho) == 0.0


def test_hs_measure_isotropic_values():
    assert hs_measure_isotropic(2, 1.0) == pytest.approx(1 / np.sqrt(3))
    assert hs_measure_isotropic(3, 1.0) == pytest.approx(np.sqrt(2) / 2)
    assert hs_measure_isotropic(2, 0.8) == pytest.approx(np.sqrt(3) / 2 * (0.8 - 1 / 3))


def test_hs_measure_rejects_separable_regime():
    with pytest.raises(ValueError):
        hs_measure_isotropic(2, 1 / 3)
    with pytest.raises(ValueError):
        hs_measure_isotropic(4, 0.1)


def test_nearest_separable_qubit():
    res = nearest_separable(isotropic(2, 0.8))
    assert res.converged
    assert res.gap_certificate < 1e-9
    assert res.distance == pytest.approx(hs_measure_isotropic(2, 0.8), abs=1e-4)


def test_nearest_separable_of_separable_state():
    res = nearest_separable(isotropic(2, 0.2))
    assert res.distance <= 1e-4


def test_nearest_separable_qutrit_recovers_threshold_state():
    res = nearest_separable(isotropic(3, 1.0))
    assert res.distance == pytest.approx(np.sqrt(2) / 2, abs=5e-4)
    nearest = res.nearest.to_density()
    assert np.max(np.abs(nearest.matrix - isotropic(3, 0.25).matrix)) <= 1e-3


def test_nearest_ensemble_is_valid_convex_combination():
    res = nearest_separable(isotropic(2, 0.6))
    weights = [w for w, _, _ in res.nearest.terms]
    assert sum(weights) == pytest.approx(1.0)
    assert all(w > 0 for w in weights)


def test_gbi_violation_closed_form():
    for d, alpha in [(2, 0.9), (3, 0.7), (4, 0.5)]:
        a_opt = optimal_witness_isotropic(d, alpha)
        b = gbi_violation(isotropic(d, alpha), a_opt, SolverConfig(n_starts=16))
        assert b == pytest.approx(hs_measure_isotropic(d, alpha), abs=1e-6)


def test_gbi_violation_shift_invariant():
    # the violation is unchanged by A -> A + kappa * identity
    alpha = 0.8
    rho = isotropic(2, alpha)
    a_opt = optimal_witness_isotropic(2, alpha)
    cfg = SolverConfig(n_starts=16, seed=5)
    b0 = gbi_violation(rho, a_opt, cfg)
    b1 = gbi_violation(rho, a_opt + 0.41 * np.eye(4), cfg)
    assert b1 == pytest.approx(b0, abs=1e-8)


@pytest.mark.parametrize("d,alpha", [(2, 0.9), (3, 0.6)])
def test_bnt_check_distance_equals_violation(d, alpha):
    report = bnt_check(isotropic(d, alpha))
    closed = hs_measure_isotropic(d, alpha)
    assert report.d_value == pytest.approx(closed, abs=5e-4)
    assert report.discrepancy <= 5e-4


def test_bnt_check_reference_value():
    report = bnt_check(isotropic(2, 0.9))
    assert report.d_value == pytest.approx(np.sqrt(3) / 2 * (0.9 - 1 / 3), abs=5e-4)


def test_distance_upper_bounded_by_explicit_separable_state():
    # any separable state gives an upper bound on the measure; the threshold
    # state is the minimizer
    alpha = 0.7
    target = isotropic(3, alpha)
    upper = hs_distance(isotropic(3, 0.25), target)
    res = nearest_separable(target)
    assert res.distance <= upper + 1e-9
    assert upper == pytest.approx(hs_measure_isotropic(3, alpha), abs=1e-12)


def test_projection_gap_bounds_squared_distance_error():
    res = nearest_separable(isotropic(2, 0.95))
    true = hs_measure_isotropic(2, 0.95)
    assert res.distance**2 - true**2 <= res.gap_certificate + 1e-12


def test_projection_rejects_single_party_state():
    with pytest.raises(ValueError):
        nearest_separable(DensityMatrix(np.eye(4) / 4, 4, 1))


def test_plain_conditional_gradient_also_converges():
    cfg = ProjectionConfig(tol_gap=1e-6, max_outer_iters=20000, away_steps=False)
    res = nearest_separable(isotropic(2, 0.8), cfg)
    assert res.distance == pytest.approx(hs_measure_isotropic(2, 0.8), abs=1e-3)


def test_infinite_d_trend():
    rows = infinite_d_trend([1.0], 6)
    dists = [r[3] for r in rows]
    thresholds = [r[2] for r in rows]
    # D(alpha=1) = sqrt(d^2-1)/(d+1) grows toward 1, threshold shrinks
    assert dists == sorted(dists)
    assert thresholds == sorted(thresholds, reverse=True)
    d2 = rows[0]
    assert d2[0] == 2
    assert d2[3] == pytest.approx(1 / np.sqrt(3))


def test_infinite_d_trend_separable_entries_zero():
    rows = infinite_d_trend([0.2], 6)
    for d, alpha, thr, dist in rows:
        assert dist == (0.0 if alpha <= thr else pytest.approx(
            np.sqrt(d**2 - 1) / d * (alpha - thr)))


def test_infinite_d_trend_rejects_small_dmax():
    with pytest.raises(ValueError):
        infinite_d_trend([0.5], 1)
