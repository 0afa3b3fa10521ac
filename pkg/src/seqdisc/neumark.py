"""Unitary realization of the optimal chain stage on a qubit plus qutrit.

The first observer's measurement (failure probability sqrt(s) per state)
extends to a unitary U on the 6-dimensional system qubit (x) ancilla:

    U |psi_i>|0> = |phi_i> ( sqrt(1 - sqrt(s)) |i> + s**0.25 |0> )_anc

Reading the ancilla in its computational basis gives outcome i ("state i
identified") or 0 ("failure"), while the qubit is left in the conditional
state phi_i either way, exactly as the Kraus description demands.  Basis
ordering on the composite space: index = 3*(qubit index) + (ancilla index).

Only the action of U on the ancilla-|0> sector is physical; the remaining
four columns are an arbitrary deterministic completion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, complete_to_unitary, freeze
from .povm import UDMeasurement, outcome_probabilities
from .states import make_state_pair

QUBIT_DIM = 2
ANCILLA_DIM = 3
TOTAL_DIM = QUBIT_DIM * ANCILLA_DIM

# normalized post-measurement probabilities are compared against this floor
# before a conditional state is defined
_PROB_FLOOR = 1e-12


@dataclass(frozen=True)
class DilationUnitary:
    """The 6x6 unitary together with the geometry it was built from.

    theta encodes the input pair (s = cos 2*theta) and theta_prime the
    output pair (sqrt(s) = cos 2*theta_prime).  v1 and v2 are the ancilla
    vectors appearing in the columns of U.
    """

    s: float
    theta: float
    theta_prime: float
    v1: np.ndarray
    v2: np.ndarray
    u: np.ndarray


def ancilla_vectors(s: float):
    """The two ancilla vectors that synthesize the optimal-stage columns."""
    if not 0.0 < s < 1.0:
        raise ValueError(f"s={s} outside (0, 1)")
    rs = math.sqrt(s)
    e0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    e1 = np.array([0.0, 1.0, 0.0], dtype=complex)
    e2 = np.array([0.0, 0.0, 1.0], dtype=complex)
    v1 = (math.sqrt(2.0) * s**0.25 * e0 + math.sqrt((1.0 - rs) / 2.0) * (e1 + e2)) / math.sqrt(
        1.0 + rs
    )
    v2 = (e1 - e2) / math.sqrt(2.0)
    return freeze(v1), freeze(v2)


def build_dilation(s: float) -> DilationUnitary:
    """Construct U for overlap s at the symmetric optimal point q = sqrt(s).

    The two physical columns U|0>|0> and U|1>|0> are fixed by the
    measurement; the other four are completed deterministically by
    Gram-Schmidt over the canonical basis.
    """
    if not 0.0 < s < 1.0:
        raise ValueError(f"s={s} outside (0, 1)")
    rs = math.sqrt(s)
    v1, v2 = ancilla_vectors(s)
    e0q = np.array([1.0, 0.0], dtype=complex)
    e1q = np.array([0.0, 1.0], dtype=complex)
    col_00 = ((1.0 + rs) * np.kron(e0q, v1) + (1.0 - rs) * np.kron(e1q, v2)) / math.sqrt(
        2.0 * (1.0 + s)
    )
    col_10 = (np.kron(e0q, v2) + np.kron(e1q, v1)) / math.sqrt(2.0)
    w = complete_to_unitary([col_00, col_10])
    # route the physical columns to the |0>|0> and |1>|0> slots (composite
    # indices 0 and 3); a column permutation preserves unitarity
    u = w[:, [0, 2, 3, 1, 4, 5]]
    return DilationUnitary(
        s=float(s),
        theta=0.5 * math.acos(s),
        theta_prime=0.5 * math.acos(rs),
        v1=v1,
        v2=v2,
        u=freeze(u),
    )


def dilation_statistics(dilation: DilationUnitary, input_index: int):
    """Evolve state `input_index` (ancilla in |0>) and read the ancilla.

    Returns (probs, post_states): probs is the probability of ancilla
    outcomes (0, 1, 2) and post_states the matching normalized qubit
    states.  A state whose outcome probability is below 1e-12 is returned
    unnormalized (it is never observed).
    """
    if input_index not in (1, 2):
        raise ValueError(f"input_index must be 1 or 2, got {input_index}")
    pair = make_state_pair(dilation.s)
    psi = pair.psi1 if input_index == 1 else pair.psi2
    anc0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    evolved = dilation.u @ np.kron(psi, anc0)
    probs = []
    posts = []
    for m in range(ANCILLA_DIM):
        amp = np.array([evolved[m], evolved[ANCILLA_DIM + m]])
        p = float(np.real(np.vdot(amp, amp)))
        probs.append(p)
        posts.append(freeze(amp / math.sqrt(p)) if p > _PROB_FLOOR else freeze(amp))
    return tuple(probs), tuple(posts)


def povm_equivalence(dilation: DilationUnitary, meas: UDMeasurement, tol: float = DEFAULT_TOL) -> float:
    """Largest deviation between the dilation and the Kraus description.

    `meas` must be the measurement the dilation realizes: same input
    overlap, both failure probabilities equal to sqrt(s).  Returns the
    maximum outcome-probability gap plus the maximum conditional-state
    infidelity over both inputs (ancilla outcome i matching measurement
    outcome i, with 0 the failure)."""
    rs = math.sqrt(dilation.s)
    if abs(meas.input_pair.s - dilation.s) > tol:
        raise ValueError(
            f"measurement input overlap {meas.input_pair.s} does not match "
            f"the dilation's s={dilation.s}"
        )
    if abs(meas.q1 - rs) > tol or abs(meas.q2 - rs) > tol:
        raise ValueError(
            f"dilation realizes the symmetric point q1=q2=sqrt(s)={rs}; "
            f"got q1={meas.q1}, q2={meas.q2}"
        )
    prob_gap = 0.0
    infidelity = 0.0
    for i in (1, 2):
        dil_probs, dil_posts = dilation_statistics(dilation, i)
        p1, p2, p0 = outcome_probabilities(meas, i)
        meas_probs = {0: p0, 1: p1, 2: p2}
        psi = meas.input_pair.psi1 if i == 1 else meas.input_pair.psi2
        for outcome in (0, 1, 2):
            prob_gap = max(prob_gap, abs(dil_probs[outcome] - meas_probs[outcome]))
            if dil_probs[outcome] <= _PROB_FLOOR or meas_probs[outcome] <= _PROB_FLOOR:
                continue
            kraus = meas.kraus[2] if outcome == 0 else meas.kraus[outcome - 1]
            post = kraus @ psi
            post = post / np.linalg.norm(post)
            overlap = abs(complex(np.vdot(dil_posts[outcome], post))) ** 2
            infidelity = max(infidelity, 1.0 - overlap)
    return prob_gap + infidelity


def unitary_csv_rows(dilation: DilationUnitary):
    """Rows of U as alternating real and imaginary parts (6 rows of 12)."""
    rows = []
    for i in range(TOTAL_DIM):
        row = []
        for j in range(TOTAL_DIM):
            row.append(float(dilation.u[i, j].real))
            row.append(float(dilation.u[i, j].imag))
        rows.append(row)
    return rows
