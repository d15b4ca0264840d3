"""Repeated seeded transmissions and their finite-sample statistics."""

from __future__ import annotations

import json
import math
import statistics
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from . import rng
from .bits import AttackPattern, BitString, PingPongError, concat, format_rational, pair_counts
from .channel import asymptotic_operating_point, sample_transmission
from .infotheory import mutual_information_from_counts, single_bit_mutual_information

PATTERN_POLICIES = ("explicit", "uniform-random", "balanced-quarters")
ALICE_POLICIES = ("explicit", "iid-uniform", "exactly-balanced")
ETA_LIMIT = 0.5

# stream sub-keys per trial
_ALICE, _PATTERN_ZEROS, _PATTERN_ONES, _CHANNEL = 1, 2, 3, 4


class ConfigError(PingPongError):
    pass


class PremiseError(PingPongError):
    """Efficiency above 50%: the attack can no longer hide inside channel losses."""


@dataclass(frozen=True)
class ExperimentConfig:
    length: int
    trials: int = 1
    eta: float = ETA_LIMIT
    pattern_policy: str = "uniform-random"
    alice_policy: str = "exactly-balanced"
    seed: int = 0
    pattern: Optional[str] = None
    alice: Optional[str] = None
    force: bool = False
    pooled: bool = False

    @property
    def eta_premise_violated(self) -> bool:
        return self.eta > ETA_LIMIT

    def validate(self) -> None:
        if self.length < 1:
            raise ConfigError("length must be positive")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if not 0 <= self.eta <= 1:
            raise ConfigError("eta must lie in [0, 1]")
        if self.pattern_policy not in PATTERN_POLICIES:
            raise ConfigError(f"unknown pattern policy {self.pattern_policy!r}")
        if self.alice_policy not in ALICE_POLICIES:
            raise ConfigError(f"unknown alice policy {self.alice_policy!r}")
        if self.pattern_policy == "explicit":
            if self.pattern is None:
                raise ConfigError("explicit pattern policy needs a pattern")
            if len(AttackPattern.parse(self.pattern)) != self.length:
                raise ConfigError("pattern length differs from length")
        elif self.pattern is not None:
            raise ConfigError("a pattern was given but the pattern policy is not explicit")
        if self.alice_policy == "explicit":
            if self.alice is None:
                raise ConfigError("explicit alice policy needs an alice string")
            if len(BitString.parse(self.alice)) != self.length:
                raise ConfigError("alice length differs from length")
        elif self.alice is not None:
            raise ConfigError("an alice string was given but the alice policy is not explicit")
        if self.alice_policy == "exactly-balanced" and self.length % 2:
            raise ConfigError("exactly-balanced alice needs an even length")
        if self.pattern_policy == "balanced-quarters":
            if self.length % 4:
                raise ConfigError(f"balanced-quarters needs length divisible by 4, got {self.length}")
            if self.alice_policy == "iid-uniform":
                raise ConfigError("balanced-quarters needs a balanced alice string, not iid-uniform")
            if self.alice_policy == "explicit" and not BitString.parse(self.alice).balanced:
                raise ConfigError("balanced-quarters needs a balanced explicit alice string")
        if self.eta_premise_violated and not self.force:
            raise PremiseError(
                f"eta={self.eta} exceeds 0.5; the attack assumes a transmission efficiency "
                "not greater than 50% (override with --force)"
            )


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    alice: BitString
    pattern: AttackPattern
    bob: BitString
    eve: BitString
    q_b: Fraction
    q_e: Fraction
    b0: Fraction
    e0: Fraction
    i_ab: float
    i_ae: float

    def row(self) -> dict:
        return {
            "trial": self.trial,
            "alice": self.alice.bits,
            "pattern": self.pattern.labels,
            "bob": self.bob.bits,
            "eve": self.eve.bits,
            "q_b": format_rational(self.q_b),
            "q_e": format_rational(self.q_e),
            "b0": format_rational(self.b0),
            "e0": format_rational(self.e0),
            "i_ab": f"{self.i_ab:.6f}",
            "i_ae": f"{self.i_ae:.6f}",
        }


TRIAL_COLUMNS = ("trial", "alice", "pattern", "bob", "eve", "q_b", "q_e", "b0", "e0", "i_ab", "i_ae")


def make_record(trial: int, alice: BitString, pattern: AttackPattern, bob: BitString, eve: BitString) -> TrialRecord:
    ab = mutual_information_from_counts(pair_counts(alice, bob))
    ae = mutual_information_from_counts(pair_counts(alice, eve))
    return TrialRecord(trial, alice, pattern, bob, eve, ab.q, ae.q, ab.zero_rate, ae.zero_rate, ab.mi, ae.mi)


def _balanced_bits(seed: int, n: int) -> np.ndarray:
    half = np.repeat(np.array([0, 1], dtype=np.uint8), n // 2)
    return half[rng.permutation(seed, n)]


def _trial_inputs(config: ExperimentConfig, trial: int) -> tuple[BitString, AttackPattern, int]:
    key = rng.derive(config.seed, trial)
    J = config.length

    if config.alice_policy == "explicit":
        alice = BitString.parse(config.alice)
    elif config.alice_policy == "iid-uniform":
        alice = BitString.from_array(rng.bits(rng.derive(key, _ALICE), J))
    else:
        alice = BitString.from_array(_balanced_bits(rng.derive(key, _ALICE), J))

    if config.pattern_policy == "explicit":
        pattern = AttackPattern.parse(config.pattern)
    elif config.pattern_policy == "uniform-random":
        s = rng.bits(rng.derive(key, _PATTERN_ZEROS), J)
        pattern = AttackPattern("".join("s" if b else "u" for b in s))
    else:
        # half of Alice's zeros and half of her ones get the symmetry operation
        a = alice.to_array()
        s = np.zeros(J, dtype=np.uint8)
        for bit, sub in ((0, _PATTERN_ZEROS), (1, _PATTERN_ONES)):
            where = np.flatnonzero(a == bit)
            s[where] = _balanced_bits(rng.derive(key, sub), len(where))
        pattern = AttackPattern("".join("s" if b else "u" for b in s))

    return alice, pattern, rng.derive(key, _CHANNEL)


def run_trial(config: ExperimentConfig, trial: int) -> TrialRecord:
    alice, pattern, channel_seed = _trial_inputs(config, trial)
    bob, eve = sample_transmission(alice, pattern, channel_seed)
    return make_record(trial, alice, pattern, bob, eve)


STAT_FIELDS = ("q_b", "q_e", "b0", "e0", "i_ab", "i_ae")


@dataclass(frozen=True)
class AggregateReport:
    trials: int
    length: int
    eta: float
    eta_premise_violated: bool
    summary: dict[str, dict[str, float]]
    q_e_histogram: dict[str, int]
    asymptotic_i_ae: float
    per_bit_mi: float
    pooled_i_ab: Optional[float] = None
    pooled_i_ae: Optional[float] = None

    @property
    def mean_i_ae(self) -> float:
        return self.summary["i_ae"]["mean"]

    @property
    def mean_q_e(self) -> float:
        return self.summary["q_e"]["mean"]

    def to_dict(self) -> dict:
        r6 = lambda x: None if x is None else float(f"{x:.6f}")  # noqa: E731
        d = {
            "trials": self.trials,
            "length": self.length,
            "eta": r6(self.eta),
            "eta_premise_violated": self.eta_premise_violated,
            "summary": {k: {s: r6(v) for s, v in stats.items()} for k, stats in self.summary.items()},
            "q_e_histogram": self.q_e_histogram,
            "asymptotic_i_ae": r6(self.asymptotic_i_ae),
            "per_bit_mi": r6(self.per_bit_mi),
            "mean_i_ae_minus_asymptotic": r6(self.mean_i_ae - self.asymptotic_i_ae),
            "mean_i_ae_minus_per_bit": r6(self.mean_i_ae - self.per_bit_mi),
        }
        if self.pooled_i_ae is not None:
            d["pooled_i_ab"] = r6(self.pooled_i_ab)
            d["pooled_i_ae"] = r6(self.pooled_i_ae)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def aggregate(config: ExperimentConfig, records: Sequence[TrialRecord]) -> AggregateReport:
    """Population statistics over trials, folded in trial order."""
    summary = {}
    for name in STAT_FIELDS:
        vals = [float(getattr(r, name)) for r in records]
        summary[name] = {
            "mean": math.fsum(vals) / len(vals),
            "std": statistics.pstdev(vals),
            "min": min(vals),
            "max": max(vals),
        }
    hist = Counter(r.q_e for r in records)
    histogram = {format_rational(q): hist[q] for q in sorted(hist)}

    pooled_ab = pooled_ae = None
    if config.pooled:
        alice = concat(r.alice for r in records)
        pooled_ab = mutual_information_from_counts(pair_counts(alice, concat(r.bob for r in records))).mi
        pooled_ae = mutual_information_from_counts(pair_counts(alice, concat(r.eve for r in records))).mi

    return AggregateReport(
        trials=len(records),
        length=config.length,
        eta=config.eta,
        eta_premise_violated=config.eta_premise_violated,
        summary=summary,
        q_e_histogram=histogram,
        asymptotic_i_ae=asymptotic_operating_point()[2],
        per_bit_mi=single_bit_mutual_information("u", "eve"),
        pooled_i_ab=pooled_ab,
        pooled_i_ae=pooled_ae,
    )


def iter_trials(config: ExperimentConfig) -> Iterator[TrialRecord]:
    config.validate()
    for t in range(config.trials):
        yield run_trial(config, t)


def run_experiment(config: ExperimentConfig) -> tuple[list[TrialRecord], AggregateReport]:
    records = list(iter_trials(config))
    return records, aggregate(config, records)


@dataclass(frozen=True)
class ConvergenceRow:
    length: int
    mean_q_e: float
    mean_i_ae: float
    deviation: float


def convergence_study(lengths: Sequence[int], trials: int, seed: int) -> list[ConvergenceRow]:
    """Balanced-quarters experiments at each length; seeds differ per length."""
    asym = asymptotic_operating_point()[2]
    rows = []
    for J in lengths:
        config = ExperimentConfig(J, trials, pattern_policy="balanced-quarters", seed=rng.derive(seed, J))
        _, report = run_experiment(config)
        rows.append(ConvergenceRow(J, report.mean_q_e, report.mean_i_ae, abs(report.mean_i_ae - asym)))
    return rows
