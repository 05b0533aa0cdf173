import json

import pytest

from karp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_farey_json(capsys):
    doc = run_json(capsys, "farey", "5")
    assert doc["command"] == "farey"
    assert doc["format_version"] == 1
    assert doc["payload"]["fractions"][:3] == ["0/1", "1/5", "1/4"]


def test_farey_pairs(capsys):
    doc = run_json(capsys, "farey", "5", "--pairs")
    assert ["4/5", "1/1"] in doc["payload"]["pairs"]


def test_farey_csv(capsys):
    code, out, _ = run(capsys, "farey", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[:3] == ["numerator,denominator", "0,1", "1,4"]


def test_boundary_theta_literal(capsys):
    doc = run_json(capsys, "boundary", "14", "--theta", "29/42pi")
    pt = doc["payload"]["points"][0]
    assert (pt["q"], pt["s"]) == (3, 14)
    assert abs(float(pt["mu"]) - 0.99542) < 5e-5


def test_boundary_csv_sorted(capsys):
    code, out, _ = run(capsys, "boundary", "5", "--samples", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "theta,rho,mu,alpha,q,s"
    thetas = [float(line.split(",")[0]) for line in lines[1:]]
    assert thetas == sorted(thetas)


def test_boundary_deterministic(capsys):
    a = run(capsys, "boundary", "8", "--samples", "5")
    b = run(capsys, "boundary", "8", "--samples", "5")
    assert a == b


def test_arc_powers_census(capsys):
    doc = run_json(capsys, "arc-powers", "8")
    rels = {
        (r["target"]["q"], r["target"]["s"], r["source"]["q"], r["source"]["s"], r["c"])
        for r in doc["payload"]["relations"]
    }
    assert rels == {
        (4, 7, 7, 8, 2),
        (2, 7, 7, 8, 4),
        (2, 7, 4, 7, 2),
        (3, 7, 6, 7, 2),
        (4, 5, 5, 8, 2),
    }


def test_realize_char_poly_line(capsys):
    doc = run_json(capsys, "realize", "8", "7", "8", "--alpha", "1/3")
    assert doc["payload"]["char_poly"] == "t^8 - 2/3 t - 1/3"
    assert doc["payload"]["type"] == "I"
    assert ["7", "1", "2/3"] in [[str(x) for x in t] for t in doc["payload"]["matrix"]]


def test_realize_needs_partition(capsys):
    code, _, err = run(capsys, "realize", "6", "2", "5")
    assert code == 2
    assert "partition" in err


def test_realize_with_partition(capsys):
    doc = run_json(capsys, "realize", "6", "2", "5", "--partition", "1,0,0")
    assert doc["payload"]["type"] == "II"
    assert len(doc["payload"]["digraph"]) == 9  # n + d edges


def test_power_check_true(capsys):
    doc = run_json(
        capsys,
        "power-check", "337", "27", "337", "--c", "3",
        "--partition", "1,0,2,1,1,0,2,2,0,0,2,2",
    )
    assert doc["payload"]["verdict"] is True
    assert "6,5,2,0" in {w for w in doc["payload"]["witnesses"]} or any(
        sorted(map(int, w.split(","))) == [0, 2, 5, 6] for w in doc["payload"]["witnesses"]
    )


def test_power_check_false(capsys):
    doc = run_json(
        capsys,
        "power-check", "337", "27", "337", "--c", "3",
        "--partition", "4,1,0,0,4,0,0,0,3,1,0,0",
    )
    assert doc["payload"]["verdict"] is False
    assert doc["payload"]["witness"] is None


def test_power_check_c1_trivial(capsys):
    doc = run_json(
        capsys,
        "power-check", "337", "27", "337", "--c", "1",
        "--partition", "4,1,0,0,4,0,0,0,3,1,0,0",
    )
    assert doc["payload"]["verdict"] is True
    assert doc["payload"]["witness"] == "0,0,0,3,1,0,0,4,1,0,0,4"  # canonical rotation


def test_verify_relations(capsys):
    doc = run_json(capsys, "verify", "8", "2", "7", "--samples", "9")
    devs = [float(r["max_deviation"]) for r in doc["payload"]["relations"]]
    assert len(devs) == 2
    assert all(d < 1e-7 for d in devs)


def test_validation_exit_codes(capsys):
    assert run(capsys, "boundary", "0", "--theta", "1.0")[0] == 2
    assert run(capsys, "boundary", "8")[0] == 2
    assert run(capsys, "boundary", "8", "--theta", "nonsense")[0] == 2
    assert run(capsys, "arc-powers", "8", "3")[0] == 2
    assert run(capsys, "realize", "8", "3", "4")[0] == 2


def test_max_n_budget(capsys, monkeypatch):
    monkeypatch.setenv("KARP_MAX_N", "10")
    assert run(capsys, "farey", "11")[0] == 2
    assert run(capsys, "farey", "10")[0] == 0
    monkeypatch.setenv("KARP_MAX_N", "junk")
    assert run(capsys, "farey", "5")[0] == 2
