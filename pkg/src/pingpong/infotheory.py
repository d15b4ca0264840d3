"""Entropies and multi-bit mutual information between Alice and a receiver.

Two independent routes are provided: the empirical route works from the
four pair counts of two concrete strings, the closed form from the
receiver's zero-rate and QBER against a balanced Alice string. They agree
on every balanced realization, which the test-suite checks exhaustively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .bits import (
    JointCounts,
    PingPongError,
    Real,
    feasible,
    rates_from_params,
)

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class MIResult:
    mi: float
    h_a: float
    h_other: float
    h_joint: float
    zero_rate: Fraction
    q: Fraction


def shannon_entropy(probs: Sequence[Real]) -> float:
    """Entropy in bits; zero-probability outcomes contribute nothing."""
    if any(p < 0 or p > 1 for p in probs):
        raise PingPongError("probabilities must lie in [0, 1]")
    total = sum(probs)
    exact = all(isinstance(p, (int, Fraction)) for p in probs)
    if (total != 1) if exact else abs(total - 1) > NORMALIZATION_TOL:
        raise PingPongError(f"distribution sums to {total}, not 1")
    h = 0.0
    for p in probs:
        if p == 0:
            continue
        p = float(p)
        h -= p * math.log2(p)
    return h


def _entropy_of_counts(counts: Sequence[int]) -> float:
    total = sum(counts)
    return shannon_entropy([Fraction(c, total) for c in counts])


def mutual_information_from_counts(counts: JointCounts) -> MIResult:
    """Empirical mutual information of the joint (Alice, receiver) bit frequencies.

    Valid for any Alice string, balanced or not.
    """
    h_a = _entropy_of_counts([counts.alice_zeros, counts.alice_ones])
    h_x = _entropy_of_counts([counts.other_zeros, counts.other_ones])
    h_ax = _entropy_of_counts(counts.as_tuple())
    J = counts.total
    return MIResult(
        mi=max(0.0, h_a + h_x - h_ax),
        h_a=h_a,
        h_other=h_x,
        h_joint=h_ax,
        zero_rate=Fraction(counts.other_zeros, J),
        q=Fraction(counts.errors, J),
    )


def _plogp(p: float) -> float:
    return p * math.log2(p) if p > 0 else 0.0


def mutual_information_closed_form(b0: Real, q: Real) -> float:
    """Mutual information for a balanced Alice string as a function of (b0, q).

    Raises InfeasibleRatesError outside the feasibility region.
    """
    rates = rates_from_params(b0, q)
    b = float(b0)
    mi = 1.0 - _plogp(b) - _plogp(1.0 - b)
    for c in rates.as_tuple():
        mi += _plogp(float(c))
    return max(0.0, mi)


@dataclass(frozen=True)
class SurfacePoint:
    b0: float
    q: float
    mi: float | None  # None marks an infeasible cell


def surface_grid(resolution: int) -> Iterator[SurfacePoint]:
    """Closed-form MI over a uniform (resolution+1)^2 lattice on [0, 1]^2.

    Ordered by b0 then q. Grid coordinates are exact ``k/resolution``
    fractions, so region boundaries are classified without round-off.
    """
    if resolution < 2:
        raise PingPongError("resolution must be at least 2")
    for i in range(resolution + 1):
        b0 = Fraction(i, resolution)
        for j in range(resolution + 1):
            q = Fraction(j, resolution)
            mi = mutual_information_closed_form(b0, q) if feasible(b0, q) else None
            yield SurfacePoint(float(b0), float(q), mi)


def surface_csv_lines(resolution: int) -> Iterator[str]:
    yield "b0,q,mi"
    for p in surface_grid(resolution):
        mi = "NA" if p.mi is None else f"{p.mi:.6f}"
        yield f"{p.b0:.6f},{p.q:.6f},{mi}"


def single_bit_mutual_information(attack: str, role: str) -> float:
    """I(A; X) for one transmission with a uniform Alice bit.

    ``attack`` is ``u`` or ``s``; ``role`` is ``bob`` or ``eve``. The
    receiver bit is the marginal of the attack's (bob, eve) outcome law.
    """
    from .channel import attack_outcome_dist

    role = role.lower()
    if role not in ("bob", "eve"):
        raise PingPongError(f"role must be bob or eve, got {role!r}")
    joint = {}
    for a in (0, 1):
        for (bob, eve), p in attack_outcome_dist(a, attack).items():
            x = bob if role == "bob" else eve
            joint[(a, x)] = joint.get((a, x), Fraction(0)) + Fraction(1, 2) * p
    counts = [joint.get(k, Fraction(0)) for k in ((0, 0), (0, 1), (1, 0), (1, 1))]
    h_a = shannon_entropy([Fraction(1, 2), Fraction(1, 2)])
    x0 = counts[0] + counts[2]
    h_x = shannon_entropy([x0, 1 - x0])
    return h_a + h_x - shannon_entropy(counts)

