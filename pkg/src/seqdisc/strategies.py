"""Ways for two receivers to both learn which state was sent, compared.

All four strategies act on a single prepared qubit (equal priors, overlap
s) and are scored by the probability that both receivers identify the
state with certainty:

    1  measure-and-broadcast: the first receiver runs the minimum-failure
       measurement and announces the result.          p1 = 1 - s
    2  measure-and-resend: the first receiver measures, and on success
       prepares a fresh copy for the second to measure independently.
                                                      p2 = (1 - s)^2
    3  clone-then-measure: an optimal probabilistic cloner (success
       1/(1+s)) makes two perfect copies, each measured independently.
                                                      p3 = (1-s)^2/(1+s)
    seq  sequential: both measure the same qubit in turn with intermediate
       failure probabilities.                         p_seq = (1-sqrt(s))^2

For every strategy the chance that at least one receiver learns the state
is the same, 1 - s.  Strategies 1-3 all consume the state or communicate
classically; the sequential chain is the only one that does neither, and
it pays for that with the strictly smallest joint rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .povm import build_optimal_ud, classify_uniforms, sampling_boundaries
from .reporting import csv_text, fmt
from .sampling import chunk_ranges, trial_uniforms
from .sequential import TallyReport, build_chain, simulate_chain
from .states import make_state_pair

KINDS = ("1", "2", "3", "seq")

CSV_HEADER = ("s", "p_seq", "p1", "p2", "p3", "at_least_one")


def _check_unit_interval(s: float) -> float:
    s = float(s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s={s} outside [0, 1]")
    return s


def strategy1(s: float) -> float:
    """Both learn the state iff the broadcast measurement succeeds."""
    return 1.0 - _check_unit_interval(s)


def strategy2(s: float) -> float:
    """Two independent minimum-failure measurements must both succeed."""
    return (1.0 - _check_unit_interval(s)) ** 2


def strategy3(s: float) -> float:
    """Cloning succeeds with 1/(1+s), then two independent measurements."""
    s = _check_unit_interval(s)
    return (1.0 - s) ** 2 / (1.0 + s)


def strategy_seq(s: float) -> float:
    """Optimal two-observer sequential rate."""
    return (1.0 - math.sqrt(_check_unit_interval(s))) ** 2


def at_least_one(s: float) -> float:
    """Probability that at least one receiver identifies the state; the
    same for all four strategies."""
    return 1.0 - _check_unit_interval(s)


@dataclass(frozen=True)
class StrategyCurve:
    """Tabulated joint-success rates on a common overlap grid."""

    s: np.ndarray
    p_seq: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray
    at_least_one: np.ndarray


def make_curve(s_min: float = 0.0, s_max: float = 1.0, steps: int = 101) -> StrategyCurve:
    """Evaluate all strategies on a uniform grid of overlaps.

    The strict ordering p1 > p2 > p3 > p_seq is asserted at every interior
    grid point before the curve is returned."""
    s_min, s_max = float(s_min), float(s_max)
    if not 0.0 <= s_min < s_max <= 1.0:
        raise ValueError(f"need 0 <= s_min < s_max <= 1, got [{s_min}, {s_max}]")
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps}")
    grid = np.linspace(s_min, s_max, steps)
    p1 = 1.0 - grid
    p2 = (1.0 - grid) ** 2
    p3 = (1.0 - grid) ** 2 / (1.0 + grid)
    p_seq = (1.0 - np.sqrt(grid)) ** 2
    interior = (grid > 0.0) & (grid < 1.0)
    ordered = (
        np.all(p1[interior] > p2[interior])
        and np.all(p2[interior] > p3[interior])
        and np.all(p3[interior] > p_seq[interior])
    )
    if not ordered:
        raise ArithmeticError("strategy ordering p1 > p2 > p3 > p_seq failed on the grid")
    return StrategyCurve(s=grid, p_seq=p_seq, p1=p1, p2=p2, p3=p3, at_least_one=1.0 - grid)


def curve_csv(curve: StrategyCurve) -> str:
    rows = zip(curve.s, curve.p_seq, curve.p1, curve.p2, curve.p3, curve.at_least_one)
    return csv_text(CSV_HEADER, rows)


def simulate_strategy(kind, s: float, trials: int, seed: int) -> TallyReport:
    """Monte Carlo of one strategy at the event level.

    Fixed draw layout per trial (unused draws are still consumed, so a
    given trial index always sees the same numbers):

        kind 1:  0 prepared state, 1 receiver measurement
        kind 2:  0 prepared, 1 first receiver, 2 second receiver
        kind 3:  0 prepared, 1 cloner, 2 first receiver, 3 second receiver
        seq:     the two-observer chain's own layout

    A receiver succeeds when its measurement outcome equals the prepared
    index; `error_count` tallies conclusive wrong identifications anywhere
    in a trial.
    """
    kind = str(kind)
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if kind == "seq":
        return simulate_chain(build_chain(float(s), 2), trials, seed)
    s = float(s)
    if not 0.0 < s < 1.0:
        raise ValueError(f"s={s} outside (0, 1)")
    bounds = sampling_boundaries(build_optimal_ud(make_state_pair(s)))
    p_clone = 1.0 / (1.0 + s)
    draws = {"1": 2, "2": 3, "3": 4}[kind]

    branch = {1: 0, 2: 0}
    all_count = 0
    any_count = 0
    err_count = 0
    for start, count in chunk_ranges(trials):
        u = trial_uniforms(seed, count, draws, start)
        prep = np.where(u[:, 0] < 0.5, 1, 2).astype(np.int8)
        if kind == "1":
            out = classify_uniforms(bounds, prep, u[:, 1])
            joint = out == prep
            at_least = joint
            err = out == (3 - prep)
        elif kind == "2":
            out_b = classify_uniforms(bounds, prep, u[:, 1])
            ok_b = out_b == prep
            # the second receiver only gets a qubit if the first succeeded,
            # and then it is a perfect copy of the prepared state
            out_c = classify_uniforms(bounds, prep, u[:, 2])
            ok_c = out_c == prep
            joint = ok_b & ok_c
            at_least = ok_b
            err = (out_b == (3 - prep)) | (ok_b & (out_c == (3 - prep)))
        else:  # kind == "3"
            cloned = u[:, 1] < p_clone
            out_b = classify_uniforms(bounds, prep, u[:, 2])
            out_c = classify_uniforms(bounds, prep, u[:, 3])
            ok_b = cloned & (out_b == prep)
            ok_c = cloned & (out_c == prep)
            joint = ok_b & ok_c
            at_least = ok_b | ok_c
            err = cloned & ((out_b == (3 - prep)) | (out_c == (3 - prep)))
        branch[1] += int(np.count_nonzero(joint & (prep == 1)))
        branch[2] += int(np.count_nonzero(joint & (prep == 2)))
        all_count += int(np.count_nonzero(joint))
        any_count += int(np.count_nonzero(at_least))
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


_SVG_SERIES = (
    # (attribute, label, dash pattern; empty string means solid)
    ("p_seq", "sequential", ""),
    ("p1", "broadcast", "2,4"),
    ("p2", "resend", "10,4,2,4"),
    ("p3", "clone", "8,6"),
)


def curve_svg(curve: StrategyCurve, width: int = 640, height: int = 480) -> str:
    """Line plot of the four joint rates against the overlap.

    Self-contained SVG with no external references; identical input yields
    identical bytes."""
    left, right, top, bottom = 56.0, 16.0, 16.0, 44.0
    pw = width - left - right
    ph = height - top - bottom
    s_lo, s_hi = float(curve.s[0]), float(curve.s[-1])

    def x(s):
        return left + (s - s_lo) / (s_hi - s_lo) * pw

    def y(p):
        return top + (1.0 - p) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    # axes and ticks
    parts.append(
        f'<g stroke="black" stroke-width="1" fill="none">'
        f'<path d="M {fmt(left)} {fmt(top)} L {fmt(left)} {fmt(top + ph)} '
        f'L {fmt(left + pw)} {fmt(top + ph)}"/></g>'
    )
    tick_labels = []
    for k in range(6):
        frac = k / 5.0
        sx = x(s_lo + frac * (s_hi - s_lo))
        parts.append(
            f'<line x1="{fmt(sx)}" y1="{fmt(top + ph)}" x2="{fmt(sx)}" '
            f'y2="{fmt(top + ph + 5)}" stroke="black"/>'
        )
        tick_labels.append(
            f'<text x="{fmt(sx)}" y="{fmt(top + ph + 18)}" text-anchor="middle">'
            f"{fmt(s_lo + frac * (s_hi - s_lo))}</text>"
        )
        py = y(frac)
        parts.append(
            f'<line x1="{fmt(left - 5)}" y1="{fmt(py)}" x2="{fmt(left)}" '
            f'y2="{fmt(py)}" stroke="black"/>'
        )
        tick_labels.append(
            f'<text x="{fmt(left - 8)}" y="{fmt(py + 4)}" text-anchor="end">{fmt(frac)}</text>'
        )
    parts.append(f'<g font-family="sans-serif" font-size="11">{"".join(tick_labels)}</g>')
    parts.append(
        f'<text x="{fmt(left + pw / 2)}" y="{fmt(height - 8)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">overlap s</text>'
    )
    for idx, (attr, label, dash) in enumerate(_SVG_SERIES):
        values = getattr(curve, attr)
        points = " ".join(f"{fmt(x(sv))},{fmt(y(pv))}" for sv, pv in zip(curve.s, values))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="black" '
            f'stroke-width="1.5"{dash_attr}/>'
        )
        ly = top + 18 + 18 * idx
        lx = left + pw - 150
        parts.append(
            f'<line x1="{fmt(lx)}" y1="{fmt(ly - 4)}" x2="{fmt(lx + 36)}" '
            f'y2="{fmt(ly - 4)}" stroke="black" stroke-width="1.5"{dash_attr}/>'
        )
        parts.append(
            f'<text x="{fmt(lx + 42)}" y="{fmt(ly)}" font-family="sans-serif" '
            f'font-size="12">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
