"""The published table of Eve's outcome strings, and a recomputation audit.

Rows are stored as printed, in printed order, for Alice ``100110`` under
the ``susuus`` attack pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .bits import AttackPattern, BitString, format_rational
from .channel import OutcomeEnsemble, enumerate_outcomes

ALICE = "100110"
PATTERN = "susuus"
MI_TOL = 5e-4


@dataclass(frozen=True)
class PrintedRow:
    bits: str
    prob: Fraction
    q: Fraction
    zero_rate: Fraction
    mi: float


def _row(bits: str, prob: str, q: str, e0: str, mi: float) -> PrintedRow:
    return PrintedRow(bits, Fraction(prob), Fraction(q), Fraction(e0), mi)


PRINTED_TABLE = (
    _row("100110", "1/16", "0", "1/2", 1.0),
    _row("100111", "1/16", "1/6", "1/3", 0.459),
    _row("100100", "1/16", "1/6", "2/3", 0.459),
    _row("100101", "1/16", "1/3", "1/2", 0.082),
    _row("100010", "1/16", "1/6", "2/3", 0.459),
    _row("100011", "1/16", "1/3", "1/2", 0.082),
    _row("100000", "1/16", "1/3", "5/6", 0.134),
    _row("100001", "1/16", "1/3", "2/3", 0.093),
    _row("101100", "1/16", "1/3", "1/2", 0.082),
    _row("101101", "1/16", "1/2", "1/3", 0.0),
    _row("101110", "1/16", "1/6", "1/3", 0.459),
    _row("101111", "1/16", "1/3", "1/6", 0.093),
    _row("101000", "1/16", "1/2", "2/3", 0.0),
    _row("101001", "1/16", "2/3", "1/2", 0.082),
    _row("101010", "1/16", "1/3", "1/2", 0.082),
    _row("101011", "1/16", "1/2", "1/3", 0.0),
)


@dataclass(frozen=True)
class AuditRow:
    printed: PrintedRow
    prob: Fraction | None
    q: Fraction | None
    zero_rate: Fraction | None
    mi: float | None

    @property
    def status(self) -> str:
        p = self.printed
        ok = (
            self.prob is not None
            and self.prob == p.prob
            and self.q == p.q
            and self.zero_rate == p.zero_rate
            and abs(self.mi - p.mi) <= MI_TOL
        )
        return "MATCH" if ok else "DISCREPANT"


AUDIT_COLUMNS = (
    "bits,printed_prob,printed_q,printed_zero_rate,printed_mi,prob,q,zero_rate,mi,status"
)


def audit_table(ensemble: OutcomeEnsemble | None = None) -> list[AuditRow]:
    """Recompute every printed row from the strings themselves."""
    if ensemble is None:
        ensemble = enumerate_outcomes(BitString(ALICE), AttackPattern(PATTERN), "eve")
    found = ensemble.by_bits()
    rows = []
    for p in PRINTED_TABLE:
        e = found.get(p.bits)
        if e is None:
            rows.append(AuditRow(p, None, None, None, None))
        else:
            rows.append(AuditRow(p, e.prob, e.q, e.zero_rate, e.mi))
    return rows


def audit_csv_lines(rows: list[AuditRow]) -> Iterator[str]:
    yield AUDIT_COLUMNS
    fr = lambda x: "NA" if x is None else format_rational(x)  # noqa: E731
    for r in rows:
        p = r.printed
        yield ",".join(
            [
                p.bits,
                fr(p.prob),
                fr(p.q),
                fr(p.zero_rate),
                f"{p.mi:.3f}",
                fr(r.prob),
                fr(r.q),
                fr(r.zero_rate),
                "NA" if r.mi is None else f"{r.mi:.6f}",
                r.status,
            ]
        )


def audit_records(rows: list[AuditRow]) -> list[dict]:
    lines = list(audit_csv_lines(rows))
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]
