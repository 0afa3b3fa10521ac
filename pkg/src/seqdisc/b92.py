"""Two-receiver key distribution sessions built on the two-state protocol.

Alice encodes a random bit in one of two non-orthogonal states (overlap s)
and both Bob and Charlie should end up with the bit.  Two transports are
modeled:

    two_qubit             Alice sends each receiver his own qubit; both run
                          the minimum-failure measurement.  A round is
                          doubly sifted with probability (1 - s)^2.
    one_qubit_sequential  Alice sends a single qubit through Bob to
                          Charlie; they run the optimal two-observer chain
                          (failure sqrt(s) each), doubly sifted with
                          probability (1 - sqrt(s))^2.

The optional eavesdropper intercepts every link she can reach, runs her own
minimum-failure measurement, and forwards her best guess: the identified
state when conclusive, otherwise a coin flip between the two.  On the
single-qubit path she touches one link, so she knows the bit in a fraction
1 - s of rounds; on the two-qubit path she touches both links and knows it
in 1 - s^2.  Her tampering shows up as conclusive wrong bits at the
receivers, which never happen on a clean line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .povm import build_optimal_ud, classify_uniforms, sampling_boundaries
from .sampling import chunk_ranges, trial_uniforms
from .sequential import build_chain
from .states import make_state_pair

MODE_TWO_QUBIT = "two_qubit"
MODE_ONE_QUBIT = "one_qubit_sequential"
MODES = (MODE_TWO_QUBIT, MODE_ONE_QUBIT)

EVE_NONE = "none"
EVE_INTERCEPT = "intercept_ud"
EVE_POLICIES = (EVE_NONE, EVE_INTERCEPT)


@dataclass(frozen=True)
class SessionConfig:
    s: float
    rounds: int
    mode: str
    eve: str = EVE_NONE
    seed: int = 0


@dataclass(frozen=True)
class KeyReport:
    """Counts over a session; `rates` maps each count to its fraction of
    rounds with a binomial standard error."""

    rounds: int
    both_sifted: int
    bob_sifted: int
    charlie_sifted: int
    eve_known: int
    errors_bob: int
    errors_charlie: int
    rates: dict

    def as_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "both_sifted": self.both_sifted,
            "bob_sifted": self.bob_sifted,
            "charlie_sifted": self.charlie_sifted,
            "eve_known": self.eve_known,
            "errors_bob": self.errors_bob,
            "errors_charlie": self.errors_charlie,
            "rates": {
                name: {"rate": rate, "stderr": err}
                for name, (rate, err) in sorted(self.rates.items())
            },
        }


def session_config_from_dict(raw: dict) -> SessionConfig:
    """Validate a configuration mapping, naming the offending field."""
    known = {"s", "rounds", "mode", "eve", "seed"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ValueError(f"unknown config field(s): {', '.join(unknown)}")
    for field in ("s", "rounds", "mode"):
        if field not in raw:
            raise ValueError(f"config field '{field}' is required")
    s = float(raw["s"])
    if not 0.0 < s < 1.0:
        raise ValueError(f"config field 's'={s} outside (0, 1)")
    rounds = raw["rounds"]
    if not isinstance(rounds, int) or isinstance(rounds, bool) or rounds < 1:
        raise ValueError(f"config field 'rounds'={rounds!r} must be a positive integer")
    mode = raw["mode"]
    if mode not in MODES:
        raise ValueError(f"config field 'mode'={mode!r} must be one of {MODES}")
    eve = raw.get("eve", EVE_NONE)
    if eve not in EVE_POLICIES:
        raise ValueError(f"config field 'eve'={eve!r} must be one of {EVE_POLICIES}")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ValueError(f"config field 'seed'={seed!r} must be a nonnegative integer")
    return SessionConfig(s=s, rounds=rounds, mode=mode, eve=eve, seed=seed)


def eve_knowledge_rate(config: SessionConfig) -> float:
    """Fraction of rounds in which the eavesdropper learns the bit."""
    if config.eve == EVE_NONE:
        raise ValueError("no eavesdropper in this configuration")
    if config.mode == MODE_TWO_QUBIT:
        return 1.0 - config.s * config.s
    return 1.0 - config.s


def _draws_per_round(config: SessionConfig) -> int:
    # layout: prep, [eve link draws..., guess,] bob, charlie
    if config.eve == EVE_NONE:
        return 3
    return 6 if config.mode == MODE_TWO_QUBIT else 5


def run_session(config: SessionConfig) -> KeyReport:
    """Simulate a whole session round by round.

    Draw layout per round: draw 0 picks Alice's bit; with an eavesdropper,
    the next draws classify her measurement(s) followed by one guess draw;
    the last two draws classify Bob's and Charlie's measurements.  A
    receiver's round is sifted when his outcome is conclusive, and counted
    as an error when the conclusive outcome differs from Alice's bit.
    """
    pair = make_state_pair(config.s)
    eve_bounds = sampling_boundaries(build_optimal_ud(pair))
    if config.mode == MODE_TWO_QUBIT:
        bob_bounds = eve_bounds
        charlie_bounds = eve_bounds
    else:
        chain = build_chain(config.s, 2)
        bob_bounds = sampling_boundaries(chain.stages[0])
        charlie_bounds = sampling_boundaries(chain.stages[1])

    draws = _draws_per_round(config)
    counts = dict(both=0, bob=0, charlie=0, eve=0, err_b=0, err_c=0)
    for start, count in chunk_ranges(config.rounds):
        u = trial_uniforms(config.seed, count, draws, start)
        prep = np.where(u[:, 0] < 0.5, 1, 2).astype(np.int8)

        if config.eve == EVE_NONE:
            forwarded = prep
            known = np.zeros(count, dtype=bool)
            col = 1
        elif config.mode == MODE_TWO_QUBIT:
            out_e1 = classify_uniforms(eve_bounds, prep, u[:, 1])
            out_e2 = classify_uniforms(eve_bounds, prep, u[:, 2])
            known = (out_e1 != 0) | (out_e2 != 0)
            identified = np.where(out_e1 != 0, out_e1, out_e2)
            guess = np.where(u[:, 3] < 0.5, 1, 2).astype(np.int8)
            forwarded = np.where(known, identified, guess).astype(np.int8)
            col = 4
        else:
            out_e = classify_uniforms(eve_bounds, prep, u[:, 1])
            known = out_e != 0
            guess = np.where(u[:, 2] < 0.5, 1, 2).astype(np.int8)
            forwarded = np.where(known, out_e, guess).astype(np.int8)
            col = 3

        out_b = classify_uniforms(bob_bounds, forwarded, u[:, col])
        # on the sequential path Charlie receives Bob's conditional output,
        # whose index matches whatever state entered Bob's measurement; on
        # the two-qubit path he gets his own (possibly resent) qubit
        out_c = classify_uniforms(charlie_bounds, forwarded, u[:, col + 1])

        sift_b = out_b != 0
        sift_c = out_c != 0
        counts["bob"] += int(np.count_nonzero(sift_b))
        counts["charlie"] += int(np.count_nonzero(sift_c))
        counts["both"] += int(np.count_nonzero(sift_b & sift_c))
        counts["eve"] += int(np.count_nonzero(known))
        counts["err_b"] += int(np.count_nonzero(sift_b & (out_b != prep)))
        counts["err_c"] += int(np.count_nonzero(sift_c & (out_c != prep)))

    n = config.rounds

    def rate(c):
        r = c / n
        return (r, math.sqrt(max(r * (1.0 - r), 0.0) / n))

    return KeyReport(
        rounds=n,
        both_sifted=counts["both"],
        bob_sifted=counts["bob"],
        charlie_sifted=counts["charlie"],
        eve_known=counts["eve"],
        errors_bob=counts["err_b"],
        errors_charlie=counts["err_c"],
        rates={
            "both_sifted": rate(counts["both"]),
            "bob_sifted": rate(counts["bob"]),
            "charlie_sifted": rate(counts["charlie"]),
            "eve_known": rate(counts["eve"]),
            "errors_bob": rate(counts["err_b"]),
            "errors_charlie": rate(counts["err_c"]),
        },
    )
