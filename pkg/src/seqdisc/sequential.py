"""Chains of observers measuring the same qubit in turn.

A sender prepares one of two states with overlap s (equal priors).  Each
observer applies an unambiguous measurement with tunable failure
probabilities and passes the qubit on; because both branches of such a
measurement leave the qubit in the same conditional state, later observers
see a fresh discrimination problem with a larger overlap and need no
knowledge of earlier outcomes.

For two observers with failure pairs (q1_b, q2_b) and (q1_c, q2_c), writing
t = sqrt(q1_c q2_c), admissibility forces q1_b q2_b = s^2 / t^2 with
s <= t <= 1, and the probability that both identify the state is

    P = ((1 - q1_b)(1 - q1_c) + (1 - q2_b)(1 - q2_c)) / 2.

On the symmetric slice q1 = q2 per observer this is (1 - s/t)(1 - t),
maximized at t = sqrt(s) with value (1 - sqrt(s))^2.  For n observers the
same geometric splitting gives (1 - s**(1/n))**n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .povm import (
    UDMeasurement,
    build_intermediate_ud,
    classify_uniforms,
    sampling_boundaries,
)
from .sampling import chunk_ranges, trial_uniforms
from .states import make_state_pair

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ChainSpec:
    """A fully specified n-observer chain.

    stages[k] (0-based) is observer k+1's measurement.  Its input overlap
    is s**((n-k)/n) and its output overlap s**((n-k-1)/n), so consecutive
    stages chain exactly and the last one outputs overlap 1.  Every stage
    uses the common per-state failure probability q = s**(1/n).
    """

    s: float
    n: int
    q: float
    stages: tuple


@dataclass(frozen=True)
class TallyReport:
    """Counts from a Monte Carlo run over prepared-state trials."""

    trials: int
    per_branch_success_counts: dict
    all_observers_success_count: int
    at_least_one_success_count: int
    error_count: int
    estimated_joint_probability: float
    standard_error: float

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "per_branch_success_counts": {
                str(k): v for k, v in sorted(self.per_branch_success_counts.items())
            },
            "all_observers_success_count": self.all_observers_success_count,
            "at_least_one_success_count": self.at_least_one_success_count,
            "error_count": self.error_count,
            "estimated_joint_probability": self.estimated_joint_probability,
            "standard_error": self.standard_error,
        }


def equal_failure_joint(s: float, t: float) -> float:
    """Joint success on the symmetric slice: first observer fails with
    probability s/t per state, second with t per state."""
    if not 0.0 < s < 1.0:
        raise ValueError(f"s={s} outside (0, 1)")
    if not s <= t <= 1.0:
        raise ValueError(f"t={t} outside [s, 1] for s={s}")
    return (1.0 - s / t) * (1.0 - t)


def joint_success_analytic(s: float, q_bob, q_charlie, tol: float = 1e-9) -> float:
    """Joint success probability for explicit failure pairs.

    `q_bob` and `q_charlie` are the (q1, q2) pairs of the first and second
    observer.  Raises ValueError, naming the violated relation, when the
    pairs are not an admissible chain for overlap s.
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"s={s} outside (0, 1)")
    q1b, q2b = (float(q) for q in q_bob)
    q1c, q2c = (float(q) for q in q_charlie)
    for name, q in (("q1_bob", q1b), ("q2_bob", q2b), ("q1_charlie", q1c), ("q2_charlie", q2c)):
        if not 0.0 < q <= 1.0:
            raise ValueError(f"{name}={q} outside (0, 1]")
    t = math.sqrt(q1c * q2c)
    if t < s - tol or t > 1.0 + tol:
        raise ValueError(
            f"t = sqrt(q1_charlie*q2_charlie) = {t} violates s <= t <= 1 (s={s})"
        )
    want_b = s * s / (t * t)
    if abs(q1b * q2b - want_b) > tol:
        raise ValueError(
            f"q1_bob*q2_bob = {q1b * q2b} violates the chaining constraint "
            f"q1_bob*q2_bob = s^2/t^2 = {want_b}"
        )
    return 0.5 * ((1.0 - q1b) * (1.0 - q1c) + (1.0 - q2b) * (1.0 - q2c))


@dataclass(frozen=True)
class OptimizationResult:
    t_star: float
    q_star: float
    p_star: float

    def as_dict(self) -> dict:
        return {"t_star": self.t_star, "q_star": self.q_star, "p_star": self.p_star}


def _golden_max(f, lo: float, hi: float, width: float = 1e-12, max_iter: int = 200):
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < width:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def optimize_two_observer(s: float) -> OptimizationResult:
    """Maximize the symmetric-slice joint success over t in (s, 1).

    Golden-section search; the result is cross-checked against the closed
    form (1 - sqrt(s))^2 and both t_star and the common failure probability
    q_star land on sqrt(s).
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"s={s} outside (0, 1)")
    t_star, p_star = _golden_max(
        lambda t: (1.0 - s / t) * (1.0 - t), s + 1e-9, 1.0 - 1e-9
    )
    # a comparison-based search resolves a flat maximum only to about
    # sqrt(machine eps); one Newton step on f'(t) = s/t^2 - 1 removes that
    # noise floor (f''(t) = -2 s / t^3)
    t_star = t_star - (1.0 - s / t_star**2) * t_star**3 / (2.0 * s)
    p_star = (1.0 - s / t_star) * (1.0 - t_star)
    closed = (1.0 - math.sqrt(s)) ** 2
    if abs(p_star - closed) > 1e-9:
        raise ArithmeticError(
            f"optimizer drifted from the closed form: {p_star} vs {closed}"
        )
    return OptimizationResult(t_star=t_star, q_star=t_star, p_star=p_star)


def optimal_n_observer(s: float, n: int) -> float:
    """Best probability that all n observers identify the state."""
    if not 0.0 < s < 1.0:
        raise ValueError(f"s={s} outside (0, 1)")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return (1.0 - s ** (1.0 / n)) ** n


def build_chain(s: float, n: int) -> ChainSpec:
    """Concrete measurements realizing the optimal n-observer chain.

    Every stage uses the common failure probability q = s**(1/n); stage k
    sees input overlap s**((n-k+1)/n) and hands the next stage overlap
    s**((n-k)/n).  The last stage saturates its admissibility bound and
    leaves nothing behind.
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"s={s} outside (0, 1)")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    q = s ** (1.0 / n)
    stages = []
    overlap = s
    for k in range(n):
        stage = build_intermediate_ud(make_state_pair(overlap), q, q)
        stages.append(stage)
        overlap = stage.output_overlap
        expected = s ** ((n - k - 1) / n) if k < n - 1 else 1.0
        if abs(overlap - expected) > 1e-9:
            raise ArithmeticError(
                f"stage {k + 1} output overlap {overlap} drifted from {expected}"
            )
    if not stages[-1].exhausts_information:
        raise ArithmeticError("final stage failed to exhaust the state pair")
    return ChainSpec(s=s, n=n, q=q, stages=tuple(stages))


def simulate_chain(chain: ChainSpec, trials: int, seed: int) -> TallyReport:
    """Monte Carlo over prepared states run through every stage.

    Draw layout per trial: draw 0 picks the prepared state (below 0.5 means
    state 1), draw k classifies stage k's outcome.  Every stage is applied
    whatever the earlier outcomes were; this is sound because each stage
    leaves the qubit in the same conditional state on all of its branches,
    so stage k's outcome distribution depends only on the prepared index.
    An observer "succeeds" when its outcome equals the prepared index.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    n = chain.n
    bounds = [sampling_boundaries(stage) for stage in chain.stages]
    branch = {1: 0, 2: 0}
    all_count = 0
    any_count = 0
    err_count = 0
    for start, count in chunk_ranges(trials):
        u = trial_uniforms(seed, count, n + 1, start)
        prep = np.where(u[:, 0] < 0.5, 1, 2).astype(np.int8)
        all_succ = np.ones(count, dtype=bool)
        any_succ = np.zeros(count, dtype=bool)
        err = np.zeros(count, dtype=bool)
        for k in range(n):
            out = classify_uniforms(bounds[k], prep, u[:, k + 1])
            all_succ &= out == prep
            any_succ |= out == prep
            err |= out == (3 - prep)
        branch[1] += int(np.count_nonzero(all_succ & (prep == 1)))
        branch[2] += int(np.count_nonzero(all_succ & (prep == 2)))
        all_count += int(np.count_nonzero(all_succ))
        any_count += int(np.count_nonzero(any_succ))
        err_count += int(np.count_nonzero(err))
    p_hat = all_count / trials
    return TallyReport(
        trials=trials,
        per_branch_success_counts=branch,
        all_observers_success_count=all_count,
        at_least_one_success_count=any_count,
        error_count=err_count,
        estimated_joint_probability=p_hat,
        standard_error=math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / trials),
    )
