"""Acceptance gate: the eight headline checks, one verdict line each.

Run with `pytest tests/test_acceptance.py -s` to see the verdict lines as
they pass; `pytest -v` shows the same information through the test names.

The zero-error criterion is cumulative: every Monte Carlo run in this
module whose measurement inputs are untampered registers its trial count
and conclusive-misidentification count in a module ledger, and the final
test demands at least ten million registered trials with exactly zero
errors.  Sessions with an active eavesdropper are excluded from the ledger
because their conclusive "errors" are correct measurements of forwarded
wrong states, not misidentifications.
"""

import json
import math
import time

import numpy as np
import pytest
from _oracles import session_rate_oracle

from seqdisc.b92 import (
    EVE_INTERCEPT,
    EVE_NONE,
    MODE_ONE_QUBIT,
    MODE_TWO_QUBIT,
    SessionConfig,
    eve_knowledge_rate,
    run_session,
)
from seqdisc.cli import main as cli_main
from seqdisc.linalg import dagger, min_eigenvalue
from seqdisc.neumark import build_dilation, dilation_statistics, povm_equivalence
from seqdisc.povm import build_intermediate_ud, outcome_probabilities, validate
from seqdisc.sequential import build_chain, optimize_two_observer, simulate_chain
from seqdisc.states import make_state_pair
from seqdisc.strategies import (
    at_least_one,
    make_curve,
    simulate_strategy,
    strategy1,
    strategy2,
    strategy3,
    strategy_seq,
)

LEDGER = {"trials": 0, "errors": 0}


def _register_tally(report):
    LEDGER["trials"] += report.trials
    LEDGER["errors"] += report.error_count


def _register_clean_session(report):
    LEDGER["trials"] += report.rounds
    LEDGER["errors"] += report.errors_bob + report.errors_charlie


def _verdict(label, ok):
    print(f"[{'PASS' if ok else 'FAIL'}] {label}")
    assert ok, label


def test_criterion_1_two_observer_optimum():
    started = time.perf_counter()
    ok = True
    for s in np.linspace(0.011, 0.989, 100):
        result = optimize_two_observer(float(s))
        ok &= abs(result.p_star - (1.0 - math.sqrt(s)) ** 2) <= 1e-8
    trials = 1_000_000
    for s in (0.1, 0.25, 0.5, 0.75):
        report = simulate_chain(build_chain(s, 2), trials, seed=101)
        _register_tally(report)
        p = (1.0 - math.sqrt(s)) ** 2
        se = math.sqrt(p * (1.0 - p) / trials)
        ok &= abs(report.estimated_joint_probability - p) <= 4 * se
    elapsed = time.perf_counter() - started
    ok &= elapsed < 30.0
    _verdict(
        f"criterion 1: optimizer matches (1-sqrt(s))^2 on 100 overlaps and "
        f"10^6-trial runs land within 4 sigma ({elapsed:.1f}s)",
        ok,
    )


def test_criterion_2_measurement_grid():
    ok = True
    for s in np.linspace(0.02, 0.98, 50):
        pair = make_state_pair(float(s))
        for u in np.linspace(0.0, 1.0, 50):
            q1 = s + (1.0 - s) * u
            lo = s * s / q1
            q2 = lo + (1.0 - lo) * (1.0 - u)
            meas = build_intermediate_ud(pair, float(q1), float(q2))
            report = validate(meas, tol=1e-10)
            ok &= report.passed
            ok &= all(min_eigenvalue(p) >= -1e-10 for p in meas.povm)
            want_t = s / math.sqrt(q1 * q2)
            got_t = float(np.vdot(meas.output_pair.psi1, meas.output_pair.psi2).real)
            ok &= abs(got_t - want_t) <= 1e-10
    for s, q1, q2 in ((0.5, 0.5, 0.49), (0.9, 0.9, 0.89), (0.2, 0.1, 0.3)):
        try:
            build_intermediate_ud(make_state_pair(s), q1, q2)
            ok = False
        except ValueError:
            pass
    _verdict(
        "criterion 2: 50x50 grid of builds is complete, positive, zero-error, "
        "with output overlap s/sqrt(q1 q2); inadmissible builds rejected",
        ok,
    )


def test_criterion_4_strategy_comparison():
    curve = make_curve(steps=1000)
    inner = slice(1, -1)
    ok = bool(
        np.all(curve.p1[inner] > curve.p2[inner])
        and np.all(curve.p2[inner] > curve.p3[inner])
        and np.all(curve.p3[inner] > curve.p_seq[inner])
    )
    ok &= abs(strategy1(0.25) - 0.75) < 1e-12
    ok &= abs(strategy2(0.25) - 0.5625) < 1e-12
    ok &= abs(strategy3(0.25) - 0.45) < 1e-12
    ok &= abs(strategy_seq(0.25) - 0.25) < 1e-12
    grid = np.linspace(0.0, 1.0, 101)
    ok &= all(at_least_one(float(s)) == 1.0 - float(s) for s in grid)
    trials, s = 1_000_000, 0.25
    p_any = 1.0 - s
    se = math.sqrt(p_any * (1.0 - p_any) / trials)
    for kind in ("1", "2", "3", "seq"):
        report = simulate_strategy(kind, s, trials, seed=77)
        _register_tally(report)
        ok &= abs(report.at_least_one_success_count / trials - p_any) <= 4 * se
    _verdict(
        "criterion 4: strict ordering p1 > p2 > p3 > p_seq at 1000 points, "
        "closed forms 0.75/0.5625/0.45/0.25 at s=0.25, at-least-one rate 1-s "
        "for all four strategies",
        ok,
    )


def test_criterion_5_three_observer_law():
    s, trials = 0.729, 1_000_000
    report = simulate_chain(build_chain(s, 3), trials, seed=55)
    _register_tally(report)
    p = 0.001
    se = math.sqrt(p * (1.0 - p) / trials)
    ok = abs(report.estimated_joint_probability - p) <= 4 * se
    # exhaustive two-parameter schedule scan: overlaps s <= r1 <= r2 <= 1
    r1, r2 = np.meshgrid(np.linspace(s, 1.0, 600), np.linspace(s, 1.0, 600))
    joint = (1.0 - s / r1) * (1.0 - r1 / r2) * (1.0 - r2)
    joint[r1 > r2] = -1.0
    ok &= float(joint.max()) <= (1.0 - s ** (1.0 / 3.0)) ** 3 + 1e-6
    _verdict(
        "criterion 5: n=3 chain at s=0.729 estimates 0.001 within 4 sigma and "
        "no two-parameter schedule beats (1-s^(1/3))^3",
        ok,
    )


def test_criterion_6_unitary_realization():
    ok = True
    for s in np.linspace(0.02, 0.98, 50):
        d = build_dilation(float(s))
        rs = math.sqrt(float(s))
        meas = build_intermediate_ud(make_state_pair(float(s)), rs, rs)
        ok &= float(np.linalg.norm(dagger(d.u) @ d.u - np.eye(6))) < 1e-10
        ok &= povm_equivalence(d, meas) < 1e-10
        probs1, _ = dilation_statistics(d, 1)
        probs2, _ = dilation_statistics(d, 2)
        ok &= probs1[2] < 1e-12 and probs2[1] < 1e-12
    _verdict(
        "criterion 6: unitarity and measurement-equivalence residuals below "
        "1e-10 for 50 overlaps, wrong-outcome probability below 1e-12",
        ok,
    )


def test_criterion_7_key_distribution():
    s, rounds = 0.36, 1_000_000
    ok = True
    # clean lines: sift rates and exact zero errors
    for mode, want_both in (
        (MODE_TWO_QUBIT, (1.0 - s) ** 2),
        (MODE_ONE_QUBIT, (1.0 - math.sqrt(s)) ** 2),
    ):
        report = run_session(SessionConfig(s=s, rounds=rounds, mode=mode, seed=303))
        _register_clean_session(report)
        se = math.sqrt(want_both * (1.0 - want_both) / rounds)
        ok &= abs(report.rates["both_sifted"][0] - want_both) <= 4 * se
        ok &= report.errors_bob == 0 and report.errors_charlie == 0
    # intercepted lines: knowledge and error rates against the enumeration oracle
    for mode in (MODE_TWO_QUBIT, MODE_ONE_QUBIT):
        config = SessionConfig(s=s, rounds=rounds, mode=mode, eve=EVE_INTERCEPT, seed=404)
        report = run_session(config)
        oracle = session_rate_oracle(s, mode, EVE_INTERCEPT)
        know = eve_knowledge_rate(config)
        se = math.sqrt(know * (1.0 - know) / rounds)
        ok &= abs(report.rates["eve_known"][0] - know) <= 4 * se
        for name in ("errors_bob", "errors_charlie", "both_sifted"):
            want = oracle[name]
            se = math.sqrt(want * (1.0 - want) / rounds)
            ok &= abs(report.rates[name][0] - want) <= 4 * se
        ok &= report.errors_bob > 0 and report.errors_charlie > 0
    _verdict(
        "criterion 7: sift rates (1-s)^2 and (1-sqrt(s))^2 within 4 sigma; "
        "intercept knowledge 1-s^2 / 1-s and error rates match the "
        "enumeration oracle",
        ok,
    )


def test_criterion_8_cli_determinism(tmp_path, capsys):
    commands = [
        ["optimize", "--s", "0.49", "--n", "4"],
        ["curves", "--steps", "41"],
        ["simulate", "--kind", "seq", "--s", "0.25", "--trials", "40000", "--seed", "9"],
        ["simulate", "--kind", "3", "--s", "0.7", "--trials", "40000", "--seed", "9"],
        ["neumark", "--s", "0.81"],
        ["b92", "--s", "0.36", "--rounds", "40000", "--mode", "one_qubit_sequential",
         "--eve", "intercept_ud", "--seed", "13"],
    ]
    ok = True
    for idx, argv in enumerate(commands):
        outputs = []
        for rep in ("a", "b"):
            out = tmp_path / f"{idx}{rep}.txt"
            extra = ["--out", str(out)]
            if argv[0] == "curves":
                extra += ["--svg", str(tmp_path / f"{idx}{rep}.svg")]
            if argv[0] == "neumark":
                extra += ["--matrix", str(tmp_path / f"{idx}{rep}.csv")]
            code = cli_main(argv + extra)
            capsys.readouterr()
            ok &= code == 0
            blob = out.read_bytes()
            for suffix in (".svg", ".csv"):
                side = tmp_path / f"{idx}{rep}{suffix}"
                if side.exists():
                    blob += side.read_bytes()
            outputs.append(blob)
        ok &= outputs[0] == outputs[1]
    # determinism must not come from constant output: a different seed moves it
    code = cli_main(["simulate", "--kind", "seq", "--s", "0.25", "--trials",
                     "40000", "--seed", "10", "--out", str(tmp_path / "alt.json")])
    capsys.readouterr()
    ok &= code == 0
    first = json.loads((tmp_path / "2a.txt").read_text())
    alt = json.loads((tmp_path / "alt.json").read_text())
    ok &= first["tally"] != alt["tally"]
    _verdict(
        "criterion 8: every CLI command repeated with the same seed writes "
        "byte-identical files",
        ok,
    )


def test_criterion_3_zero_errors_overall():
    if LEDGER["trials"] == 0:
        pytest.skip("cumulative check; run the whole acceptance module")
    ok = LEDGER["trials"] >= 10_000_000 and LEDGER["errors"] == 0
    _verdict(
        f"criterion 3: {LEDGER['trials']:,} registered Monte Carlo trials "
        f"with exactly {LEDGER['errors']} conclusive misidentifications",
        ok,
    )
