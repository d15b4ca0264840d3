"""The u/s eavesdropping attack as a classical per-bit channel.

For every position, Alice's bit ``a`` and the attack label (``u`` or ``s``)
fix a law over the pair (Bob's bit, Eve's bit). Table indices read
(Alice, Bob, Eve): under ``u`` a zero passes untouched and a one scatters
uniformly over the four pairs; under ``s`` the roles of zero and one swap.
This reading is the only one under which Alice ``100110`` attacked with
``susuus`` leaves Eve sixteen equiprobable strings.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import rng
from .bits import AttackPattern, BitString, LengthMismatchError, PingPongError, format_rational, pair_counts
from .infotheory import mutual_information_closed_form, mutual_information_from_counts

Pair = tuple[int, int]
PAIRS: tuple[Pair, ...] = ((0, 0), (0, 1), (1, 0), (1, 1))

_Q = Fraction(1, 4)
CONDITIONAL: dict[tuple[str, int], dict[Pair, Fraction]] = {
    ("u", 0): {(0, 0): Fraction(1)},
    ("u", 1): {p: _Q for p in PAIRS},
    ("s", 0): {p: _Q for p in PAIRS},
    ("s", 1): {(1, 1): Fraction(1)},
}

MARGINAL_CAP = 20
JOINT_CAP = 10
ROLES = ("eve", "bob", "joint")


class CapacityError(PingPongError):
    pass


class InconsistentOutcomeError(PingPongError):
    pass


def _attack_label(attack: str) -> str:
    label = str(attack).lower()
    if label not in ("u", "s"):
        raise PingPongError(f"attack must be u or s, got {attack!r}")
    return label


def attack_outcome_dist(alice_bit: int, attack: str) -> dict[Pair, Fraction]:
    """Support of the (bob, eve) outcome law for one attacked bit."""
    if alice_bit not in (0, 1):
        raise PingPongError(f"alice bit must be 0 or 1, got {alice_bit!r}")
    return dict(CONDITIONAL[(_attack_label(attack), alice_bit)])


def conditional_json() -> str:
    """All four slices, zero entries included, keyed ``attack -> alice bit -> "bob,eve"``."""
    out: dict[str, dict[str, dict[str, str]]] = {}
    for (attack, a), dist in CONDITIONAL.items():
        out.setdefault(attack, {})[str(a)] = {
            f"{b},{e}": format_rational(dist.get((b, e), Fraction(0))) for b, e in PAIRS
        }
    return json.dumps(out, indent=2, sort_keys=True)


def _receiver_marginal(dist: dict[Pair, Fraction], role: str) -> dict:
    if role == "joint":
        return dist
    pick = 0 if role == "bob" else 1
    out: dict[int, Fraction] = {}
    for pair, p in dist.items():
        out[pair[pick]] = out.get(pair[pick], Fraction(0)) + p
    return out


def risky_positions(alice: BitString, pattern: AttackPattern) -> list[int]:
    """Positions whose outcome is random: (u, Alice 1) and (s, Alice 0)."""
    _check(alice, pattern)
    return [i for i, (a, x) in enumerate(zip(alice, pattern)) if len(CONDITIONAL[(x, a)]) > 1]


def _check(alice: BitString, pattern: AttackPattern) -> None:
    if len(alice) != len(pattern):
        raise LengthMismatchError(f"length mismatch: alice {len(alice)} vs pattern {len(pattern)}")


@dataclass(frozen=True)
class ReceiverStats:
    q: Fraction
    zero_rate: Fraction
    mi: float


def receiver_stats(alice: BitString, other: BitString) -> ReceiverStats:
    res = mutual_information_from_counts(pair_counts(alice, other))
    return ReceiverStats(res.q, res.zero_rate, res.mi)


@dataclass(frozen=True)
class Outcome:
    """One possible result. For ``joint`` ensembles ``bits`` is Eve's string."""

    bits: BitString
    prob: Fraction
    stats: ReceiverStats
    bob: Optional[BitString] = None
    bob_stats: Optional[ReceiverStats] = None

    @property
    def q(self) -> Fraction:
        return self.stats.q

    @property
    def zero_rate(self) -> Fraction:
        return self.stats.zero_rate

    @property
    def mi(self) -> float:
        return self.stats.mi


@dataclass(frozen=True)
class OutcomeEnsemble:
    alice: BitString
    pattern: AttackPattern
    role: str
    entries: tuple[Outcome, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Outcome]:
        return iter(self.entries)

    def by_bits(self) -> dict[str, Outcome]:
        return {e.bits.bits: e for e in self.entries}

    def csv_lines(self) -> Iterator[str]:
        if self.role == "joint":
            yield "bits,bob,prob,q,zero_rate,mi,bob_q,bob_zero_rate,bob_mi"
        else:
            yield "bits,prob,q,zero_rate,mi"
        for e in self.entries:
            row = [e.bits.bits]
            if self.role == "joint":
                row.append(e.bob.bits)
            row += [format_rational(e.prob), format_rational(e.q), format_rational(e.zero_rate), f"{e.mi:.6f}"]
            if self.role == "joint":
                b = e.bob_stats
                row += [format_rational(b.q), format_rational(b.zero_rate), f"{b.mi:.6f}"]
            yield ",".join(row)

    def records(self) -> list[dict]:
        out = []
        for e in self.entries:
            rec = {
                "bits": e.bits.bits,
                "prob": format_rational(e.prob),
                "q": format_rational(e.q),
                "zero_rate": format_rational(e.zero_rate),
                "mi": round(e.mi, 6),
            }
            if self.role == "joint":
                rec["bob"] = e.bob.bits
                rec["bob_q"] = format_rational(e.bob_stats.q)
                rec["bob_zero_rate"] = format_rational(e.bob_stats.zero_rate)
                rec["bob_mi"] = round(e.bob_stats.mi, 6)
            out.append(rec)
        return out


def enumerate_outcomes(alice: BitString, pattern: AttackPattern, role: str = "eve") -> OutcomeEnsemble:
    """Every receiver string the attack can produce, with its exact probability.

    Entries are sorted by bit-string value (Eve first, then Bob, for ``joint``).
    """
    role = role.lower()
    if role not in ROLES:
        raise PingPongError(f"role must be one of {ROLES}, got {role!r}")
    free = len(risky_positions(alice, pattern))
    cap = JOINT_CAP if role == "joint" else MARGINAL_CAP
    if free > cap:
        raise CapacityError(f"{free} free positions exceed the {role} enumeration cap of {cap}")

    slices = [list(_receiver_marginal(CONDITIONAL[(x, a)], role).items()) for a, x in zip(alice, pattern)]
    entries = []
    for combo in itertools.product(*slices):
        prob = math.prod((p for _, p in combo), start=Fraction(1))
        if role == "joint":
            bob = BitString("".join(str(o[0]) for o, _ in combo))
            eve = BitString("".join(str(o[1]) for o, _ in combo))
            entries.append(Outcome(eve, prob, receiver_stats(alice, eve), bob, receiver_stats(alice, bob)))
        else:
            bits = BitString("".join(str(o) for o, _ in combo))
            entries.append(Outcome(bits, prob, receiver_stats(alice, bits)))
    entries.sort(key=lambda e: (e.bits.bits, e.bob.bits if e.bob else ""))
    return OutcomeEnsemble(alice, pattern, role, tuple(entries))


def expected_statistics(ensemble: OutcomeEnsemble) -> tuple[Fraction, float]:
    """Probability-weighted mean QBER (exact) and mean mutual information."""
    mean_q = sum((e.prob * e.q for e in ensemble), Fraction(0))
    mean_mi = math.fsum(float(e.prob) * e.mi for e in ensemble)
    return mean_q, mean_mi


def sample_transmission(alice: BitString, pattern: AttackPattern, seed: int) -> tuple[BitString, BitString]:
    """Draw (bob, eve) position by position.

    Position ``i`` reads word ``i`` of the SplitMix64 stream keyed by
    ``seed`` and picks the outcome whose cumulative interval (scaled to
    2**64) contains the word. Deterministic positions ignore their word,
    so patterns sharing risky positions share randomness.
    """
    _check(alice, pattern)
    a = alice.to_array()
    s = pattern.to_array()
    w = rng.words(seed, len(alice))
    bob = np.empty(len(alice), dtype=np.uint8)
    eve = np.empty(len(alice), dtype=np.uint8)
    for (attack, abit), dist in CONDITIONAL.items():
        mask = (a == abit) & (s == (attack == "s"))
        if not mask.any():
            continue
        outcomes = list(dist.items())
        idx = np.zeros(int(mask.sum()), dtype=np.intp)
        cum = Fraction(0)
        for _, p in outcomes[:-1]:
            cum += p
            # dyadic probabilities make the threshold an exact integer
            idx += w[mask] >= np.uint64(int(cum * 2**64))
        pairs = np.array([o for o, _ in outcomes], dtype=np.uint8)
        bob[mask] = pairs[idx, 0]
        eve[mask] = pairs[idx, 1]
    return BitString.from_array(bob), BitString.from_array(eve)


@dataclass(frozen=True)
class ExtractedFrequencies:
    """Per-stratum frequencies ``t[(attack, a, e)] = N[attack][a,e] / J[attack, a]``.

    A value is None when its stratum is empty. ``sizes`` is None for the
    limiting distribution.
    """

    t: dict[tuple[str, int, int], Optional[Fraction]]
    sizes: Optional[dict[tuple[str, int], int]] = None

    def __getitem__(self, key: tuple[str, int, int]) -> Optional[Fraction]:
        return self.t[key]

    def records(self) -> dict[str, Optional[str]]:
        return {
            f"t{x}_{a}{e}": None if v is None else format_rational(v) for (x, a, e), v in sorted(self.t.items())
        }


def extracted_frequencies(alice: BitString, pattern: AttackPattern, eve: BitString) -> ExtractedFrequencies:
    _check(alice, pattern)
    if len(eve) != len(alice):
        raise LengthMismatchError(f"length mismatch: alice {len(alice)} vs eve {len(eve)}")
    sizes = {(x, a): 0 for x in "us" for a in (0, 1)}
    n = {(x, a, e): 0 for x in "us" for a in (0, 1) for e in (0, 1)}
    for i, (a, x, e) in enumerate(zip(alice, pattern, eve)):
        if _receiver_marginal(CONDITIONAL[(x, a)], "eve").get(e, 0) == 0:
            raise InconsistentOutcomeError(f"position {i}: eve bit {e} impossible under ({x}, alice={a})")
        sizes[(x, a)] += 1
        n[(x, a, e)] += 1
    t = {k: (Fraction(v, sizes[k[:2]]) if sizes[k[:2]] else None) for k, v in n.items()}
    return ExtractedFrequencies(t, sizes)


def asymptotic_frequencies() -> ExtractedFrequencies:
    """Limits of the extracted frequencies: Eve's marginal of each slice."""
    t = {}
    for (x, a), dist in CONDITIONAL.items():
        marg = _receiver_marginal(dist, "eve")
        for e in (0, 1):
            t[(x, a, e)] = marg.get(e, Fraction(0))
    return ExtractedFrequencies(t)


def asymptotic_operating_point() -> tuple[Fraction, Fraction, float]:
    """(e0, q_e, I_AE) when every (attack, Alice bit) stratum holds a quarter of the bits."""
    t = asymptotic_frequencies().t
    quarter = Fraction(1, 4)
    e0 = sum((quarter * t[(x, a, 0)] for x in "us" for a in (0, 1)), Fraction(0))
    q_e = sum((quarter * t[(x, a, 1 - a)] for x in "us" for a in (0, 1)), Fraction(0))
    return e0, q_e, mutual_information_closed_form(e0, q_e)
