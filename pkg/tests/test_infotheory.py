import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pingpong.bits import BitString, InfeasibleRatesError, PingPongError, feasible, pair_counts
from pingpong.infotheory import (
    mutual_information_closed_form,
    mutual_information_from_counts,
    shannon_entropy,
    single_bit_mutual_information,
    surface_csv_lines,
    surface_grid,
)

from .oracles import brute_mi

F = Fraction
OPERATING_POINT = 0.75 * math.log2(3) - 1
PER_BIT = 1 + (-(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))) - 1.5


def test_entropy_examples():
    assert shannon_entropy([F(1, 2), F(1, 2)]) == 1.0
    assert shannon_entropy([F(1), F(0)]) == 0.0
    assert shannon_entropy([F(3, 8), F(1, 8), F(1, 8), F(3, 8)]) == pytest.approx(3 - 0.75 * math.log2(3), abs=1e-12)
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0)


def test_entropy_rejects_bad_input():
    with pytest.raises(PingPongError):
        shannon_entropy([F(1, 2), F(1, 3)])
    with pytest.raises(PingPongError):
        shannon_entropy([0.5, 0.6])
    with pytest.raises(PingPongError):
        shannon_entropy([-0.1, 1.1])


@pytest.mark.parametrize(
    "other, mi",
    [("100111", 0.459), ("100110", 1.0), ("101101", 0.0), ("101001", 0.082), ("100000", 0.1909)],
)
def test_mi_from_counts_table_rows(other, mi):
    res = mutual_information_from_counts(pair_counts(BitString("100110"), BitString(other)))
    assert res.mi == pytest.approx(mi, abs=5e-4)
    assert res.mi == pytest.approx(res.h_a + res.h_other - res.h_joint, abs=1e-12)


@given(st.integers(1, 30).flatmap(lambda n: st.tuples(st.text("01", min_size=n, max_size=n), st.text("01", min_size=n, max_size=n))))
def test_mi_from_counts_matches_oracle_any_alice(pair):
    res = mutual_information_from_counts(pair_counts(BitString(pair[0]), BitString(pair[1])))
    assert res.mi == pytest.approx(brute_mi(*pair), abs=1e-12)
    assert -1e-12 <= res.mi <= min(res.h_a, res.h_other) + 1e-12


def test_closed_form_examples():
    assert mutual_information_closed_form(F(1, 2), F(1, 4)) == pytest.approx(OPERATING_POINT, abs=1e-12)
    assert mutual_information_closed_form(0.5, 0.0) == pytest.approx(1.0, abs=1e-12)
    for b0 in (0.0, 0.2, 0.5, 0.77, 1.0):
        assert mutual_information_closed_form(b0, 0.5) == pytest.approx(0.0, abs=1e-12)


def test_closed_form_boundary_zero_rate():
    # c10 = 0 here; 0 log 0 must vanish
    assert mutual_information_closed_form(F(1, 3), F(1, 6)) == pytest.approx(0.459148, abs=1e-6)


def test_closed_form_infeasible_is_error():
    with pytest.raises(InfeasibleRatesError):
        mutual_information_closed_form(0.9, 0.1)


def test_qber_does_not_determine_mi():
    a = mutual_information_closed_form(F(1, 2), F(1, 3))
    b = mutual_information_closed_form(F(5, 6), F(1, 3))
    assert a == pytest.approx(0.0817, abs=1e-4)
    assert b == pytest.approx(0.1909, abs=1e-4)


feasible_points = st.tuples(st.floats(0, 1), st.floats(0, 1)).filter(lambda p: feasible(*p))


@given(feasible_points)
def test_symmetry_about_half(p):
    b0, q = p
    if feasible(b0, 1 - q):
        assert mutual_information_closed_form(b0, q) == pytest.approx(
            mutual_information_closed_form(b0, 1 - q), abs=1e-12
        )


@given(feasible_points)
def test_mi_bounded(p):
    assert 0 <= mutual_information_closed_form(*p) <= 1 + 1e-12


@given(st.floats(0, 1))
def test_zero_line(b0):
    assert mutual_information_closed_form(b0, 0.5) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("J", [2, 4, 6])
def test_closed_form_equals_counts_exhaustive_small(J):
    for ones in itertools.combinations(range(J), J // 2):
        alice = BitString("".join("1" if i in ones else "0" for i in range(J)))
        for bits in itertools.product("01", repeat=J):
            other = BitString("".join(bits))
            res = mutual_information_from_counts(pair_counts(alice, other))
            assert mutual_information_closed_form(res.zero_rate, res.q) == pytest.approx(res.mi, abs=1e-12)


def test_surface_grid_shape_and_points():
    pts = {(p.b0, p.q): p.mi for p in surface_grid(10)}
    assert len(pts) == 121
    assert pts[(0.5, 0.0)] == pytest.approx(1.0)
    assert pts[(0.3, 0.5)] == pytest.approx(0.0, abs=1e-12)
    assert pts[(0.9, 0.1)] is None


def test_surface_csv():
    lines = list(surface_csv_lines(4))
    assert lines[0] == "b0,q,mi"
    assert len(lines) == 26
    assert "0.500000,0.000000,1.000000" in lines
    assert any(line.endswith(",NA") for line in lines)


def test_surface_resolution_check():
    with pytest.raises(PingPongError):
        list(surface_grid(1))


@pytest.mark.parametrize("attack", ["u", "s", "U", "S"])
@pytest.mark.parametrize("role", ["bob", "eve"])
def test_single_bit_mi(attack, role):
    assert single_bit_mutual_information(attack, role) == pytest.approx(PER_BIT, abs=1e-12)
    assert single_bit_mutual_information(attack, role) == pytest.approx(0.311278, abs=1e-6)


def test_single_bit_rejects_role():
    with pytest.raises(PingPongError):
        single_bit_mutual_information("u", "alice")
