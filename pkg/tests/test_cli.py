import csv
import subprocess
import sys
from fractions import Fraction

import pytest

from bbcolour.cli import main
from bbcolour.generators import GeneratorSpec, gen_lower_bound_family
from bbcolour.io import parse_colouring, parse_instance, serialize_instance


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


@pytest.fixture
def p3(files):
    return files("p3.bbc", "p bbc 3 2 2 2\nb 1 2\nb 2 3\n")


@pytest.fixture
def lower_bound(files):
    return files("lb.bbc", serialize_instance(gen_lower_bound_family(1)))


@pytest.fixture
def interval(files):
    spec = GeneratorSpec("interval2", l=10, omega=5, seed=8, backbone="bipartite")
    return files("iv.bbc", serialize_instance(spec.build()))


@pytest.fixture
def chordal_forest(files):
    spec = GeneratorSpec("chordal", n=120, omega=8, seed=2, backbone="forest")
    return files("cf.bbc", serialize_instance(spec.build()))


def test_colour_interval2(interval, tmp_path):
    out = tmp_path / "iv.col"
    assert main(["colour", interval, "--alg", "interval2", "--out", str(out)]) == 0
    assert parse_colouring(out.read_text()).span <= 5 + 3


def test_colour_sparse(chordal_forest, tmp_path):
    out = tmp_path / "cf.col"
    assert main(["colour", chordal_forest, "--alg", "sparse", "--d", "2", "--out", str(out)]) == 0
    assert parse_colouring(out.read_text()).span <= 8 + 2 * 4 + 6


def test_colour_interval2_rejects_lower_bound(lower_bound, capsys):
    assert main(["colour", lower_bound, "--alg", "interval2"]) == 2
    assert "clique intersection graph not a path" in capsys.readouterr().err


def test_colour_sparse_mad_violation(files, capsys):
    k4 = files("k4.bbc", "p bbc 4 6 6 2\nb 1 2\nb 1 3\nb 1 4\nb 2 3\nb 2 4\nb 3 4\n")
    assert main(["colour", k4, "--alg", "sparse", "--d", "1"]) == 2
    assert "Mad(H) > d" in capsys.readouterr().err


def test_colour_report_csv_and_verify_round_trip(lower_bound, tmp_path, capsys):
    out, report = tmp_path / "lb.col", tmp_path / "lb.csv"
    assert main(["colour", lower_bound, "--out", str(out), "--csv", str(report)]) == 0
    rows = list(csv.reader(report.open()))
    assert rows[0] == ["instance", "algorithm", "n", "omega", "span", "bound", "certified", "millis"]
    assert {r[1] for r in rows[1:]} == {"double", "interval2", "sparse", "c4free"}
    assert main(["verify", lower_bound, str(out)]) == 0
    assert "valid" in capsys.readouterr().out


def test_verify_rejects_bad_colouring(p3, files, capsys):
    bad = files("bad.col", "s bbc 3\nv 1 1\nv 2 2\nv 3 3\n")
    assert main(["verify", p3, bad]) == 1
    assert "backbone-gap" in capsys.readouterr().out
    partial = files("partial.col", "s bbc 3\nv 1 1\nv 2 3\n")
    assert main(["verify", p3, partial]) == 1


def test_exact_outputs(p3, lower_bound, tmp_path, capsys):
    assert main(["exact", lower_bound]) == 0
    assert capsys.readouterr().out.startswith("x bbc 5\n")
    assert main(["exact", p3]) == 0
    assert capsys.readouterr().out.startswith("x bbc 3\n")
    out = tmp_path / "p3.cbc"
    assert main(["exact", p3, "--circular", "--out", str(out)]) == 0
    assert out.read_text().startswith("x cbc 4\n")
    assert main(["verify", p3, str(out)]) == 0


def test_exact_budget_exhausted(files, capsys):
    path = files("lb2.bbc", serialize_instance(gen_lower_bound_family(2)))
    assert main(["exact", path, "--budget", "0"]) == 3
    assert capsys.readouterr().out.startswith("c inexact bbc")


def test_colour_exact_algorithm(p3, capsys):
    assert main(["colour", p3, "--alg", "exact"]) == 0
    assert capsys.readouterr().out.startswith("s bbc 3")


def test_recognize_lower_bound(lower_bound, capsys):
    assert main(["recognize", lower_bound]) == 0
    out = capsys.readouterr().out
    for line in ("chordal=yes", "omega=3", "H-bipartite=yes", "H-C4-free=yes"):
        assert line in out
    assert "interval-restricted=no" in out


def test_mad_p4(files, capsys):
    p4 = files("p4.bbc", "p bbc 4 3 3 2\nb 1 2\nb 2 3\nb 3 4\n")
    assert main(["mad", p4]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "mad 3/2"


def test_format_and_io_errors(files, capsys):
    broken = files("broken.bbc", "p bbc 2 1 0 2\ne 1 5\n")
    assert main(["recognize", broken]) == 4
    assert "line 2" in capsys.readouterr().err
    assert main(["recognize", "/nonexistent/file.bbc"]) == 4


def test_usage_errors_exit_4(p3):
    with pytest.raises(SystemExit) as info:
        main(["colour", p3, "--alg", "nope"])
    assert info.value.code == 4
    with pytest.raises(SystemExit) as info:
        main(["colour", p3, "--d", "-1"])
    assert info.value.code == 4


def test_precondition_exit_2(files):
    c4 = files("c4.bbc", "p bbc 4 4 0 2\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n")
    assert main(["colour", c4]) == 2


def test_generate_deterministic(tmp_path, monkeypatch):
    monkeypatch.setenv("BBC_THREADS", "2")
    args = ["generate", "--kind", "chordal", "--n", "20", "--omega", "4", "--count", "3", "--seed", "5"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == ["chordal-0.bbc", "chordal-1.bbc", "chordal-2.bbc"]
    for name in names:
        text = (tmp_path / "a" / name).read_text()
        assert text == (tmp_path / "b" / name).read_text()
        assert text.startswith("c generator: kind=chordal")
        parse_instance(text)


def _survey(tmp_path, extra):
    out = tmp_path / "survey.csv"
    assert main(["survey", "--csv", str(out)] + extra) == 0
    return list(csv.DictReader(out.open()))


def test_survey_forest_ratios_within_bound(tmp_path, monkeypatch):
    monkeypatch.setenv("BBC_THREADS", "1")
    rows = _survey(tmp_path, ["--count", "8", "--n", "14", "--omega", "4", "--seed", "1"])
    summary = rows[-1]
    assert summary["instance"] == "summary"
    for row in rows[:-1]:
        omega = int(row["omega"])
        bound = omega + 2 * (2 * omega) ** 0.5 + 6
        assert int(row["sparse"]) <= bound
        if row["status"] == "exact":
            assert Fraction(row["ratio"]) == Fraction(int(row["exact"]), omega)


def test_survey_lower_bound_ratio(tmp_path):
    rows = _survey(tmp_path, ["--count", "0", "--lower-bound", "1"])
    assert rows[0]["instance"] == "lower-bound-r1" and rows[0]["ratio"] == "5/3"
    assert rows[-1]["ratio"] == "5/3"


def test_survey_edgeless_ratio_one(tmp_path):
    rows = _survey(tmp_path, ["--count", "4", "--backbone", "none", "--n", "12", "--omega", "3"])
    assert all(Fraction(r["ratio"]) == 1 for r in rows[:-1])


def test_module_entry_point(p3):
    done = subprocess.run([sys.executable, "-m", "bbcolour", "exact", p3],
                          capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout.startswith("x bbc 3")
