"""Tests for the three-outcome discrimination measurements."""

import dataclasses
import math

import numpy as np
import pytest

from seqdisc.povm import (
    apply,
    build_intermediate_ud,
    build_optimal_ud,
    classify_uniforms,
    outcome_probabilities,
    sampling_boundaries,
    validate,
)
from seqdisc.states import make_state_pair

S_GRID = [0.04, 0.25, 0.5, 0.75, 0.9]


def _q_grid(s, count=8):
    """Admissible (q1, q2) pairs for overlap s, sweeping both extremes."""
    pairs = []
    for u in np.linspace(0.0, 1.0, count):
        q1 = s + (1.0 - s) * u
        lo = s * s / q1
        q2 = lo + (1.0 - lo) * (1.0 - u)
        pairs.append((q1, q2))
    return pairs


@pytest.mark.parametrize("s", S_GRID)
def test_optimal_measurement_is_valid_and_exhausting(s):
    meas = build_optimal_ud(make_state_pair(s))
    assert meas.q1 == meas.q2 == s
    assert meas.output_overlap == 1.0
    assert meas.exhausts_information
    report = validate(meas)
    assert report.passed
    assert abs(report.det_pi0) < 1e-12


@pytest.mark.parametrize("s", S_GRID)
def test_intermediate_measurements_validate_on_a_grid(s):
    pair = make_state_pair(s)
    for q1, q2 in _q_grid(s):
        meas = build_intermediate_ud(pair, q1, q2)
        report = validate(meas)
        assert report.passed, (s, q1, q2, report)
        want_t = min(1.0, s / math.sqrt(q1 * q2))
        assert meas.output_overlap == pytest.approx(want_t, abs=1e-10)


@pytest.mark.parametrize("s", S_GRID)
def test_branch_probabilities_match_failure_targets(s):
    pair = make_state_pair(s)
    for q1, q2 in _q_grid(s):
        meas = build_intermediate_ud(pair, q1, q2)
        p1, wrong1, fail1 = outcome_probabilities(meas, 1)
        wrong2, p2, fail2 = outcome_probabilities(meas, 2)
        assert p1 == pytest.approx(1.0 - q1, abs=1e-12)
        assert p2 == pytest.approx(1.0 - q2, abs=1e-12)
        assert fail1 == pytest.approx(q1, abs=1e-12)
        assert fail2 == pytest.approx(q2, abs=1e-12)
        assert wrong1 == 0.0
        assert wrong2 == 0.0


def test_validate_formulas_match_direct_matrix_values():
    meas = build_intermediate_ud(make_state_pair(0.3), 0.7, 0.5)
    report = validate(meas)
    pi0 = meas.povm[2]
    assert report.trace_pi0 == pytest.approx(np.trace(pi0).real, abs=1e-12)
    assert report.det_pi0 == pytest.approx(np.linalg.det(pi0).real, abs=1e-12)
    assert report.consistency_gap < 1e-12
    assert report.completeness_residual < 1e-15


def test_validate_flags_a_tampered_failure_operator():
    # nudge the failure weight a1 without touching the POVM: the rebuilt
    # A0 no longer satisfies A0^dag A0 = Pi0 and the gap must show it
    meas = build_intermediate_ud(make_state_pair(0.3), 0.6, 0.8)
    ket1 = np.outer(meas.output_pair.psi1, np.conj(meas.input_pair.psi2_perp))
    ket2 = np.outer(meas.output_pair.psi2, np.conj(meas.input_pair.psi1_perp))
    bad_a1 = meas.a1 + 0.01
    bad_A0 = math.sqrt(bad_a1) * ket1 + math.sqrt(meas.a2) * ket2
    tampered = dataclasses.replace(
        meas, a1=bad_a1, kraus=(meas.kraus[0], meas.kraus[1], bad_A0)
    )
    report = validate(tampered)
    assert report.consistency_gap > 1e-4
    assert not report.passed


def test_sampled_outcome_rates_match_branch_probabilities():
    # classify_uniforms shares apply()'s cells exactly (checked below), so
    # a vectorized run stands in for a million scalar applications per input
    meas = build_intermediate_ud(make_state_pair(0.3), 0.6, 0.8)
    bounds = sampling_boundaries(meas)
    n = 1_000_000
    rng = np.random.default_rng(2024)
    for i, q in ((1, meas.q1), (2, meas.q2)):
        u = rng.random(n)
        prep = np.full(n, i, dtype=np.int8)
        outcomes = classify_uniforms(bounds, prep, u)
        identified = int(np.count_nonzero(outcomes == i))
        wrong = int(np.count_nonzero(outcomes == 3 - i))
        failed = int(np.count_nonzero(outcomes == 0))
        assert wrong == 0
        assert identified + failed == n
        p = 1.0 - q
        se = math.sqrt(p * (1.0 - p) / n)
        assert abs(identified / n - p) <= 4.0 * se
        assert abs(failed / n - q) <= 4.0 * se


def test_kraus_operators_resolve_the_identity():
    meas = build_intermediate_ud(make_state_pair(0.6), 0.9, 0.8)
    total = sum(np.conj(a).T @ a for a in meas.kraus)
    assert np.linalg.norm(total - np.eye(2)) < 1e-12


def test_admissibility_bound_is_enforced():
    pair = make_state_pair(0.5)
    with pytest.raises(ValueError, match="admissibility"):
        build_intermediate_ud(pair, 0.5, 0.49)
    # the boundary itself is accepted
    meas = build_intermediate_ud(pair, 0.5, 0.5)
    assert meas.exhausts_information


def test_failure_probability_range_is_enforced():
    pair = make_state_pair(0.5)
    for q1, q2 in ((0.0, 0.9), (1.2, 0.9), (0.9, -0.1)):
        with pytest.raises(ValueError):
            build_intermediate_ud(pair, q1, q2)
    # unit failure probability on one branch is a legal extreme point
    meas = build_intermediate_ud(pair, 1.0, 0.5)
    p1, _, _ = outcome_probabilities(meas, 1)
    assert p1 == 0.0


def test_degenerate_pairs_are_rejected():
    for s in (0.0, 1.0):
        with pytest.raises(ValueError):
            build_intermediate_ud(make_state_pair(s), 0.5, 0.5)


def test_apply_cells_and_post_states():
    s = 0.25
    meas = build_optimal_ud(make_state_pair(s))
    # input 1: identify cell [0, 0.75), failure [0.75, 1)
    for rand, want in ((0.0, 1), (0.74, 1), (0.75, 0), (0.99, 0)):
        outcome, post = apply(meas, 1, rand)
        assert outcome == want
        # either way the qubit ends in the same conditional state
        overlap = abs(np.vdot(post, meas.output_pair.psi1))
        assert overlap == pytest.approx(1.0, abs=1e-12)
    outcome, post = apply(meas, 2, 0.5)
    assert outcome == 2
    assert abs(np.vdot(post, meas.output_pair.psi2)) == pytest.approx(1.0, abs=1e-12)


def test_apply_on_intermediate_measurement_keeps_branches_aligned():
    meas = build_intermediate_ud(make_state_pair(0.25), 0.5, 0.5)
    _, post_id = apply(meas, 1, 0.0)  # identify outcome
    _, post_fail = apply(meas, 1, 0.99)  # failure outcome
    assert abs(np.vdot(post_id, post_fail)) == pytest.approx(1.0, abs=1e-12)


def test_apply_validates_arguments():
    meas = build_optimal_ud(make_state_pair(0.5))
    with pytest.raises(ValueError):
        apply(meas, 3, 0.5)
    with pytest.raises(ValueError):
        apply(meas, 1, 1.0)
    with pytest.raises(ValueError):
        apply(meas, 1, -0.01)
    with pytest.raises(ValueError):
        outcome_probabilities(meas, 0)


def test_classify_uniforms_agrees_with_apply():
    meas = build_intermediate_ud(make_state_pair(0.3), 0.6, 0.8)
    bounds = sampling_boundaries(meas)
    rng = np.random.default_rng(99)
    u = rng.random(500)
    prep = rng.integers(1, 3, size=500).astype(np.int8)
    fast = classify_uniforms(bounds, prep, u)
    for j in range(500):
        outcome, _ = apply(meas, int(prep[j]), float(u[j]))
        assert fast[j] == outcome


def test_measurement_matrices_are_read_only():
    meas = build_optimal_ud(make_state_pair(0.5))
    with pytest.raises(ValueError):
        meas.povm[0][0, 0] = 9.0
    with pytest.raises(ValueError):
        meas.kraus[0][0, 0] = 9.0
