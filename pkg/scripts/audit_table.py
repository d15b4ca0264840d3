"""Enumerate Eve's outcomes for 100110 / susuus and audit the published table."""

from pingpong.audit import audit_csv_lines, audit_table
from pingpong.bits import AttackPattern, BitString
from pingpong.channel import enumerate_outcomes, expected_statistics


def main():
    ens = enumerate_outcomes(BitString("100110"), AttackPattern("susuus"), "eve")
    rows = audit_table(ens)
    for line in audit_csv_lines(rows):
        print(line)
    mean_q, mean_mi = expected_statistics(ens)
    bad = [r.printed.bits for r in rows if r.status == "DISCREPANT"]
    print(f"\nensemble mean q = {mean_q}, mean MI = {mean_mi:.6f}")
    print(f"discrepant rows: {', '.join(bad)}")


if __name__ == "__main__":
    main()
