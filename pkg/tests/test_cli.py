import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from skewrand import lsd
from skewrand.cli import run
from skewrand.graphgen import read_edge_list


def run_ok(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    assert code == 0, out.err
    return out.out


def test_gen_empty_graph(tmp_path):
    path = tmp_path / "g.txt"
    assert run(["gen", "--model", "gnp", "-n", "4", "-p", "0", "--seed", "1", "-o", str(path)]) == 0
    assert path.read_bytes() == b"4 0\n"


def test_gen_regular_then_spectrum(tmp_path, capsys):
    path = tmp_path / "g.txt"
    assert run(["gen", "--model", "regular", "-n", "30", "-d", "3", "--seed", "2", "-o", str(path)]) == 0
    assert read_edge_list(path).num_arcs == 45
    out = json.loads(run_ok(["spectrum", str(path)], capsys))
    assert out["n"] == 30 and len(out["eigenvalues"]) == 30
    assert out["energy"] == pytest.approx(sum(abs(x) for x in out["eigenvalues"]), rel=1e-8)
    csv = run_ok(["spectrum", str(path), "--format", "csv"], capsys)
    assert csv.splitlines()[0] == "index,eigenvalue" and len(csv.splitlines()) == 31


def test_energy_json_reference_constant(capsys):
    out = json.loads(
        run_ok(["energy", "--model", "regular", "-n", "200", "-d", "2", "--trials", "2", "--seed", "7"], capsys)
    )
    assert out["reference_constant"] == pytest.approx(1.2732395, abs=1e-7)
    assert out["params"]["d"] == 2 and out["params"]["seed"] == 7 and out["params"]["law"] == "auto"
    assert out["law"] == "mckay"


def test_moments_odd_exact_zero(capsys):
    out = json.loads(run_ok(["moments", "-n", "5", "-k", "3", "-p", "0.5", "--trials", "200"], capsys))
    (row,) = out["rows"]
    assert row["exact_value"] == "0" and row["exact_float"] == 0.0
    assert row["p"] == "1/2"


def test_moments_csv_table(capsys):
    text = run_ok(["moments", "-n", "3", "4", "-k", "2", "4", "-p", "1/4", "1", "--trials", "0", "--format", "csv"], capsys)
    lines = text.splitlines()
    assert lines[0] == "n,k,p,exact_value,exact_float,mc_mean,mc_stderr"
    assert len(lines) == 1 + 2 * 2 * 2
    assert "3,2,1/4,2/3,0.666666667,," in lines


def test_esd_with_svg(tmp_path, capsys):
    svg = tmp_path / "h.svg"
    out = json.loads(
        run_ok(["esd", "--model", "gnp", "-n", "80", "-p", "0.5", "--trials", "2", "--bins", "20", "--svg", str(svg)], capsys)
    )
    assert sum(out["counts"]) == 160
    root = ET.parse(svg).getroot()
    assert root.tag.endswith("svg")
    csv = run_ok(["esd", "--model", "gnp", "-n", "80", "-p", "0.5", "--trials", "2", "--format", "csv"], capsys)
    assert csv.splitlines()[0] == "bin_left,bin_right,count,density,reference_density"


def test_esd_svg_for_mckay_two(tmp_path, capsys):
    svg = tmp_path / "h.svg"
    run_ok(["esd", "--model", "regular", "-n", "60", "-d", "2", "--trials", "1", "--svg", str(svg)], capsys)
    ET.parse(svg)


@pytest.mark.filterwarnings("ignore:interval length")
def test_concentration_subcommand(capsys):
    out = json.loads(
        run_ok(["concentration", "-n", "200", "-d", "20", "--trials", "2", "--delta", "0.3"], capsys)
    )
    assert out["report"] == "concentration" and len(out["counts"]) == 2
    assert out["sampler"] == "steger-wormald"


def test_density_tables(capsys):
    out = json.loads(run_ok(["density", "--law", "mckay", "-d", "3", "--points", "11"], capsys))
    assert out["energy_constant"] == pytest.approx(lsd.energy_constant(lsd.mckay(3)), rel=1e-8)
    assert out["cdf"][0] == 0 and out["cdf"][-1] == pytest.approx(1.0)
    csv = run_ok(["density", "--law", "semicircle", "--points", "5", "--format", "csv"], capsys)
    assert csv.splitlines()[3] == "0,0.318309886,0.5"


def test_byte_identical_outputs(tmp_path):
    argv = ["energy", "--model", "gnp", "-n", "60", "-p", "0.3", "--trials", "3", "--seed", "11"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(argv + ["-o", str(a)]) == 0
    assert run(argv + ["-o", str(b), "--threads", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(argv + ["-o", str(b), "--format", "csv"]) == 0
    assert b.read_bytes().count(b"\r") == 0


def test_exit_codes(tmp_path, capsys):
    assert run(["gen", "--model", "regular", "-n", "5", "-d", "3"]) == 2
    assert run(["energy", "--bogus"]) == 2
    assert run(["gen", "--model", "gnp", "-n", "5"]) == 2
    assert run(["moments", "-n", "9", "-k", "2", "-p", "0.5", "--trials", "0"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n0 0\n")
    assert run(["spectrum", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert run(["gen", "--model", "regular", "-n", "200", "-d", "30", "--max-attempts", "2"]) == 3


def test_seed_env_override(tmp_path):
    code = "from skewrand.cli import main; main()"
    argv = [sys.executable, "-c", code, "gen", "--model", "gnp", "-n", "20", "-p", "0.5"]
    env_a = {"SKEWRAND_SEED": "5", "PATH": ""}
    a = subprocess.run(argv, env=env_a, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(argv + ["--seed", "5"], capture_output=True, text=True, check=True).stdout
    c = subprocess.run(argv, capture_output=True, text=True, check=True, env={"PATH": ""}).stdout
    assert a == b != c
