"""Bit strings, attack patterns, pair counts and the (b0, q) rate model.

All counting is exact. Rates derived from counts are ``Fraction`` values;
only the closed-form helpers accept floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Union

import numpy as np

Real = Union[float, Fraction, int]

# absolute slack used when float arguments are compared against region bounds
FLOAT_TOL = 1e-12


class PingPongError(ValueError):
    """Base class for rejected inputs."""


class LengthMismatchError(PingPongError):
    pass


class InfeasibleRatesError(PingPongError):
    pass


def format_rational(x: Fraction) -> str:
    """Always ``num/den``, including ``0/1`` and ``1/1``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Accepts ``num/den``, integers and decimal literals such as ``0.25``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PingPongError(f"not a rational number: {text!r}") from exc


def terminating_decimal(x: Fraction) -> str | None:
    """Exact decimal expansion of ``x``, or None if it does not terminate."""
    x = Fraction(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    digits = max(twos, fives)
    scaled = x * 10**digits
    sign = "-" if scaled < 0 else ""
    whole = abs(scaled.numerator)
    if digits == 0:
        return f"{sign}{whole}"
    s = str(whole).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


@dataclass(frozen=True)
class BitString:
    """An immutable string of ``'0'``/``'1'`` characters."""

    bits: str

    def __post_init__(self) -> None:
        if not isinstance(self.bits, str):
            object.__setattr__(self, "bits", "".join(str(int(b)) for b in self.bits))
        if len(self.bits) == 0:
            raise PingPongError("bit string must be non-empty")
        if self.bits.strip("01"):
            raise PingPongError(f"bit string may only contain 0/1: {self.bits!r}")

    @classmethod
    def parse(cls, text: str) -> "BitString":
        return cls(text.strip())

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "BitString":
        arr = np.asarray(arr, dtype=np.uint8)
        return cls((arr + ord("0")).tobytes().decode("ascii"))

    def to_array(self) -> np.ndarray:
        return np.frombuffer(self.bits.encode("ascii"), dtype=np.uint8) - ord("0")

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return (1 if c == "1" else 0 for c in self.bits)

    def __getitem__(self, i: int) -> int:
        return 1 if self.bits[i] == "1" else 0

    def __str__(self) -> str:
        return self.bits

    @property
    def zero_count(self) -> int:
        return self.bits.count("0")

    @property
    def one_count(self) -> int:
        return self.bits.count("1")

    @property
    def zero_rate(self) -> Fraction:
        return Fraction(self.zero_count, len(self))

    def complement(self) -> "BitString":
        return BitString(self.bits.translate(str.maketrans("01", "10")))

    @property
    def balanced(self) -> bool:
        return 2 * self.zero_count == len(self)


@dataclass(frozen=True)
class AttackPattern:
    """Per-position attack labels: ``u`` (no symmetry operation) or ``s``."""

    labels: str

    def __post_init__(self) -> None:
        labels = self.labels if isinstance(self.labels, str) else "".join(self.labels)
        labels = labels.lower()
        if len(labels) == 0:
            raise PingPongError("attack pattern must be non-empty")
        if labels.strip("us"):
            raise PingPongError(f"attack pattern may only contain u/s: {self.labels!r}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def parse(cls, text: str) -> "AttackPattern":
        return cls(text.strip())

    def to_array(self) -> np.ndarray:
        """1 where the symmetry operation is applied, 0 otherwise."""
        return (np.frombuffer(self.labels.encode("ascii"), dtype=np.uint8) == ord("s")).astype(np.uint8)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __getitem__(self, i: int) -> str:
        return self.labels[i]

    def __str__(self) -> str:
        return self.labels


@dataclass(frozen=True)
class JointCounts:
    """Pair counts ``n[a][x]`` between Alice's bit ``a`` and a receiver bit ``x``."""

    n00: int
    n01: int
    n10: int
    n11: int

    def __post_init__(self) -> None:
        if min(self.n00, self.n01, self.n10, self.n11) < 0:
            raise PingPongError("pair counts must be non-negative")
        if self.total == 0:
            raise PingPongError("pair counts must not all be zero")

    @property
    def total(self) -> int:
        return self.n00 + self.n01 + self.n10 + self.n11

    @property
    def alice_zeros(self) -> int:
        return self.n00 + self.n01

    @property
    def alice_ones(self) -> int:
        return self.n10 + self.n11

    @property
    def other_zeros(self) -> int:
        return self.n00 + self.n10

    @property
    def other_ones(self) -> int:
        return self.n01 + self.n11

    @property
    def errors(self) -> int:
        return self.n01 + self.n10

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n00, self.n01, self.n10, self.n11)

    def rates(self) -> "RateVector":
        J = self.total
        return RateVector(
            Fraction(self.n00, J),
            Fraction(self.n01, J),
            Fraction(self.n10, J),
            Fraction(self.n11, J),
            b0=Fraction(self.other_zeros, J),
            q=Fraction(self.errors, J),
        )


@dataclass(frozen=True)
class RateVector:
    c00: Real
    c01: Real
    c10: Real
    c11: Real
    b0: Real
    q: Real

    def as_tuple(self) -> tuple[Real, Real, Real, Real]:
        return (self.c00, self.c01, self.c10, self.c11)


def _check_lengths(alice: BitString, other) -> None:
    if len(alice) != len(other):
        raise LengthMismatchError(f"length mismatch: {len(alice)} vs {len(other)}")


def pair_counts(alice: BitString, other: BitString) -> JointCounts:
    _check_lengths(alice, other)
    a = alice.to_array()
    x = other.to_array()
    code = np.bincount(2 * a + x, minlength=4)
    return JointCounts(*(int(c) for c in code))


def qber(alice: BitString, other: BitString) -> Fraction:
    """Fraction of positions where ``other`` differs from ``alice``."""
    counts = pair_counts(alice, other)
    return Fraction(counts.errors, counts.total)


def _is_exact(*xs: Real) -> bool:
    return all(isinstance(x, Rational) for x in xs)


def _closed_rates(b0: Real, q: Real) -> tuple[Real, Real, Real, Real]:
    return (
        (2 * b0 + 1 - 2 * q) / 4,
        (1 - 2 * b0 + 2 * q) / 4,
        (2 * b0 - 1 + 2 * q) / 4,
        (3 - 2 * b0 - 2 * q) / 4,
    )


def _check_unit(name: str, x: Real) -> None:
    if not 0 <= x <= 1:
        raise PingPongError(f"{name} must lie in [0, 1], got {x}")


def feasible(b0: Real, q: Real) -> bool:
    """Whether a receiver string against a balanced Alice string can realize (b0, q)."""
    _check_unit("b0", b0)
    _check_unit("q", q)
    tol = 0 if _is_exact(b0, q) else FLOAT_TOL
    half = Fraction(1, 2)
    if q <= half + tol and half - q - tol <= b0 <= half + q + tol:
        return True
    if q >= half - tol and q - half - tol <= b0 <= Fraction(3, 2) - q + tol:
        return True
    return False


def _violated_bound(b0: Real, q: Real) -> str:
    names = ("c00", "c01", "c10", "c11")
    for name, c in zip(names, _closed_rates(b0, q)):
        if c < 0:
            return f"{name} = {c} < 0"
        if c > 1:
            return f"{name} = {c} > 1"
    return "b0/q outside the feasibility region"


def rates_from_params(b0: Real, q: Real) -> RateVector:
    """Joint rates for a balanced Alice and a receiver with zero-rate b0 and QBER q."""
    if not feasible(b0, q):
        raise InfeasibleRatesError(f"(b0={b0}, q={q}) is infeasible: {_violated_bound(b0, q)}")
    c = _closed_rates(b0, q)
    if not _is_exact(b0, q):
        # clamp boundary round-off such as -1e-17
        c = tuple(min(1.0, max(0.0, float(v))) for v in c)
    return RateVector(*c, b0=b0, q=q)


@dataclass(frozen=True)
class AttainableQbers:
    """The QBER values ``k/J`` realizable with an integer number of wrong bits."""

    length: int

    def __contains__(self, target) -> bool:
        target = Fraction(target)
        return 0 <= target <= 1 and (target * self.length).denominator == 1

    def __iter__(self) -> Iterator[Fraction]:
        return (Fraction(k, self.length) for k in range(self.length + 1))

    def __len__(self) -> int:
        return self.length + 1

    def nearest(self, target) -> tuple[Fraction, Fraction]:
        """Closest attainable values at or below and at or above ``target``."""
        target = min(max(Fraction(target), Fraction(0)), Fraction(1))
        scaled = target * self.length
        lo = scaled.numerator // scaled.denominator
        hi = lo if scaled.denominator == 1 else lo + 1
        return Fraction(lo, self.length), Fraction(hi, self.length)


def qber_attainable(length: int) -> AttainableQbers:
    if length < 1:
        raise PingPongError("length must be at least 1")
    return AttainableQbers(length)


def concat(strings: Iterable[BitString]) -> BitString:
    return BitString("".join(s.bits for s in strings))
