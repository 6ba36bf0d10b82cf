"""State-vector simulation of the low-weight oracle-interrogation routine.

The algorithm prepares a uniform superposition over the B strings y with
|y| <= T, applies the phase oracle |y> -> (-1)^(x.y) |y| with T queries,
applies a Hadamard to every qubit and measures.  The measured string equals
the hidden input x with probability exactly B / 2^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .transforms import binomial_sum, build_weight_index, fwht_in_place

# 2^24 doubles is a 128 MiB state vector; past that the simulation is not useful here.
_MAX_SIM_BITS = 24


@dataclass(frozen=True, eq=False)
class InterrogationOutcome:
    n: int
    t: int
    target: int  # the hidden input x, as an integer
    success_probability: float  # exact squared amplitude of |x> in the final state
    shots: int = 0
    sampled_counts: dict[int, int] | None = field(default=None)

    @property
    def recovered_frequency(self) -> float:
        if not self.shots:
            raise ValueError("no sampling was performed")
        assert self.sampled_counts is not None
        return self.sampled_counts.get(self.target, 0) / self.shots


def _final_state(n: int, t: int, x: int) -> np.ndarray:
    if n < 1 or n > _MAX_SIM_BITS:
        raise ValueError(f"state-vector simulation supports n in 1..{_MAX_SIM_BITS}, got {n}")
    if t < 0 or t > n:
        raise ValueError(f"need 0 <= t <= n, got t={t}")
    if x < 0 or x >= (1 << n):
        raise ValueError(f"target {x} does not fit in {n} bits")
    idx = build_weight_index(n, t)
    state = np.zeros(1 << n)
    state[idx.strings] = 1.0 / math.sqrt(idx.size)
    # Phase oracle, applied as one pointwise multiplication; costs T queries.
    parity = np.bitwise_count(np.arange(1 << n, dtype=np.int64) & x) & 1
    state *= 1.0 - 2.0 * parity
    fwht_in_place(state)
    state /= math.sqrt(1 << n)  # unnormalized transform -> unitary Hadamard
    return state


def simulate_exact(n: int, t: int, x: int) -> InterrogationOutcome:
    """Run the three steps exactly and report the probability of measuring x."""
    state = _final_state(n, t, x)
    prob = float(state[x] ** 2)
    return InterrogationOutcome(n=n, t=t, target=x, success_probability=prob)


def simulate_sampled(n: int, t: int, x: int, shots: int, seed: int) -> InterrogationOutcome:
    """Exact final distribution plus a finite-shot measurement record."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    state = _final_state(n, t, x)
    probs = state * state
    probs /= probs.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = rng.multinomial(shots, probs)
    hit = np.nonzero(counts)[0]
    sampled = {int(i): int(counts[i]) for i in hit}
    return InterrogationOutcome(
        n=n,
        t=t,
        target=x,
        success_probability=float(state[x] ** 2),
        shots=shots,
        sampled_counts=sampled,
    )


def success_probability_closed_form(n: int, t: int) -> float:
    """B / 2^n, independent of the hidden input."""
    return binomial_sum(n, t) / (1 << n)


def choose_t(n: int, eps: float) -> int:
    """Minimal T whose failure probability 1 - B/2^n is at most eps (exact tail scan)."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    total = 1 << n
    cum = 0
    for t in range(n + 1):
        cum += math.comb(n, t)
        if total - cum <= eps * total:
            return t
    return n


def asymptotic_reference_t(n: int, eps: float) -> int:
    """ceil(n/2 + sqrt(n ln(1/eps))), the textbook query count with constant 1.

    Reported alongside choose_t for comparison only; the exact tail rule is
    what the package actually uses.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    return math.ceil(n / 2 + math.sqrt(n * math.log(1.0 / eps)))
