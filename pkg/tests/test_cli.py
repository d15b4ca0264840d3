import csv
import hashlib
import io
import json

import pytest

from pingpong.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_paper_example(capsys):
    code, out, _ = run(capsys, "enumerate", "--alice", "100110", "--attacks", "susuus", "--role", "eve")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 16
    assert {r["prob"] for r in rows} == {"1/16"}


def test_enumerate_single(capsys):
    code, out, _ = run(capsys, "enumerate", "--alice", "0", "--attacks", "u")
    assert out.splitlines() == ["bits,prob,q,zero_rate,mi", "0,1/1,0/1,1/1,0.000000"]


def test_enumerate_audit(capsys):
    code, out, _ = run(capsys, "enumerate", "--alice", "100110", "--attacks", "susuus", "--audit")
    assert code == 0
    audit = out.split("\n\n")[1]
    rows = list(csv.DictReader(io.StringIO(audit)))
    assert len(rows) == 16
    bad = {r["bits"] for r in rows if r["status"] == "DISCREPANT"}
    assert bad == {"100000", "100001", "101111"}


def test_enumerate_audit_needs_paper_inputs(capsys):
    code, _, err = run(capsys, "enumerate", "--alice", "10", "--attacks", "us", "--audit")
    assert code == 2 and "--audit" in err


def test_enumerate_json_matches_csv(capsys):
    _, csv_out, _ = run(capsys, "enumerate", "--alice", "100110", "--attacks", "susuus")
    _, json_out, _ = run(capsys, "enumerate", "--alice", "100110", "--attacks", "susuus", "--format", "json")
    rows = list(csv.DictReader(io.StringIO(csv_out)))
    recs = json.loads(json_out)["outcomes"]
    assert [{k: str(v) if k != "mi" else f"{v:.6f}" for k, v in r.items()} for r in recs] == rows
    assert json.loads(json_out)["mean_q"] == "1/3"


def test_enumerate_errors(capsys):
    assert run(capsys, "enumerate", "--alice", "10", "--attacks", "u")[0] == 2
    assert run(capsys, "enumerate", "--alice", "12", "--attacks", "uu")[0] == 2
    code, _, err = run(capsys, "enumerate", "--alice", "1" * 11, "--attacks", "u" * 11, "--role", "joint")
    assert code == 3 and "11 free" in err


@pytest.mark.parametrize(
    "other, q, mi",
    [("100111", "1/6", "0.459148"), ("100110", "0/1", "1.000000"), ("011001", "1/1", "1.000000")],
)
def test_mi(capsys, other, q, mi):
    code, out, _ = run(capsys, "mi", "--alice", "100110", "--other", other)
    fields = dict(line.split("=") for line in out.splitlines())
    assert code == 0 and fields["q"] == q and fields["mi"] == mi
    if other == "100111":
        assert fields["zero_rate"] == "1/3"


def test_mi_formats_agree(capsys):
    _, c, _ = run(capsys, "mi", "--alice", "100110", "--other", "100111", "--format", "csv")
    _, j, _ = run(capsys, "mi", "--alice", "100110", "--other", "100111", "--format", "json")
    row = next(csv.DictReader(io.StringIO(c)))
    obj = json.loads(j)
    assert {k: str(v) if not isinstance(v, float) else f"{v:.6f}" for k, v in obj.items()} == row


def test_mi_mismatch(capsys):
    assert run(capsys, "mi", "--alice", "10", "--other", "1")[0] == 2


def test_surface(capsys, tmp_path):
    path = tmp_path / "s.csv"
    assert run(capsys, "surface", "--resolution", "100", "--out", str(path))[0] == 0
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 101 * 101
    lookup = {(r["b0"], r["q"]): r["mi"] for r in rows}
    assert lookup[("0.500000", "0.000000")] == "1.000000"
    assert lookup[("0.250000", "0.500000")] == "0.000000"
    assert lookup[("0.900000", "0.100000")] == "NA"
    assert run(capsys, "surface", "--resolution", "1")[0] == 2


def test_simulate_paper_example(capsys):
    code, out, _ = run(capsys, "simulate", "--length", "6", "--trials", "1", "--alice", "100110", "--pattern", "susuus", "--seed", "7")
    assert code == 0
    (row,) = csv.DictReader(io.StringIO(out))
    assert row["eve"][:2] == "10" and row["alice"] == "100110"


def test_simulate_premise_gate(capsys):
    code, _, err = run(capsys, "simulate", "--length", "8", "--eta", "0.8")
    assert code == 4 and "50%" in err
    assert run(capsys, "simulate", "--length", "8", "--eta", "0.8", "--force")[0] == 0


def test_simulate_usage_errors(capsys):
    assert run(capsys, "simulate", "--length", "6", "--pattern-policy", "balanced-quarters")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["simulate"])
    assert exc.value.code == 2


def test_simulate_formats_agree(capsys):
    args = ["simulate", "--length", "12", "--trials", "4", "--seed", "3"]
    _, c, _ = run(capsys, *args)
    _, j, _ = run(capsys, *args, "--format", "json")
    rows = list(csv.DictReader(io.StringIO(c)))
    assert [{k: str(v) for k, v in r.items()} for r in json.loads(j)["trials"]] == rows


def test_simulate_report_file(capsys, tmp_path):
    rep = tmp_path / "r.json"
    run(capsys, "simulate", "--length", "12", "--trials", "4", "--report", str(rep), "--pooled")
    d = json.loads(rep.read_text())
    assert d["trials"] == 4 and "pooled_i_ae" in d


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("PINGPONG_SEED", "17")
    _, a, _ = run(capsys, "simulate", "--length", "12", "--trials", "3")
    _, b, _ = run(capsys, "simulate", "--length", "12", "--trials", "3", "--seed", "17")
    assert a == b


def test_simulate_golden(capsys):
    # pins generator, policies and formatting; any platform must reproduce these bytes
    _, out, _ = run(capsys, "simulate", "--length", "16", "--trials", "3", "--seed", "1", "--pattern-policy", "balanced-quarters")
    assert out.splitlines()[1] == GOLDEN_FIRST_ROW
    assert hashlib.sha256(out.encode()).hexdigest() == GOLDEN_SHA256


def test_asymptotic(capsys):
    code, out, _ = run(capsys, "asymptotic")
    fields = dict(line.split("=") for line in out.splitlines())
    assert fields["i_ae"] == "0.188722"
    assert fields["per_bit_mi"] == "0.311278"
    assert fields["ts_10"] == "0/1"
    assert (fields["e0"], fields["q_e"]) == ("1/2", "1/4")
    _, j, _ = run(capsys, "asymptotic", "--format", "json")
    assert json.loads(j)["frequencies"] == {k: v for k, v in fields.items() if k.startswith("t")}


@pytest.mark.parametrize(
    "length, verdict",
    [("201", "NOT ATTAINABLE"), ("4", "ATTAINABLE"), ("202", "NOT ATTAINABLE"), ("203", "NOT ATTAINABLE")],
)
def test_qber_grid(capsys, length, verdict):
    code, out, _ = run(capsys, "qber-grid", "--length", length, "--target", "1/4")
    assert code == 0 and out.startswith(verdict + ":")


def test_qber_grid_nearest(capsys):
    _, out, _ = run(capsys, "qber-grid", "--length", "201", "--target", "1/4", "--format", "json")
    d = json.loads(out)
    assert (d["nearest_below"], d["nearest_above"], d["wrong_bits"]) == ("50/201", "51/201", "50.25")


def test_dist(capsys):
    _, out, _ = run(capsys, "dist")
    assert json.loads(out)["u"]["1"]["0,1"] == "1/4"


def test_convergence_cli(capsys):
    _, out, _ = run(capsys, "convergence", "--lengths", "4,40", "--trials", "3", "--seed", "2")
    assert out.splitlines()[0] == "length,mean_q_e,mean_i_ae,deviation"
    assert len(out.splitlines()) == 3


GOLDEN_FIRST_ROW = "0,0111111000110000,ssssuuuuussusuus,1111110000100000,1111101000100001,3/16,1/4,9/16,1/2,0.311278,0.188722"
GOLDEN_SHA256 = "56c0c77f147edfbc65bb62a16b6ac46a71eff6e4699ba3cda19674846d464189"
