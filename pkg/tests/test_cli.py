import io
import json
import subprocess
import sys

import pytest

from extschottky.cli import main

SIG_N3 = {"n": 3, "counts": {"t0": 1, "t2": 1, "t3": 1}, "orders": {"t2": [3], "t3": [2]}}
GOOD = {"n": 2, "factors": [{"kind": "T3", "order": 4, "host": {"center": [5, 0], "radius": 1}},
                            {"kind": "T2", "order": 2, "host": {"center": [-5, 0], "radius": 1}}]}
OVERLAP = {"n": 2, "factors": [{"kind": "T3", "order": 4, "host": {"center": [0, 0], "radius": 1}},
                               {"kind": "T2", "order": 2, "host": {"center": [1.5, 0], "radius": 1}}]}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, doc in (("sig", SIG_N3), ("good", GOOD), ("overlap", OVERLAP)):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    (tmp_path / "broken.json").write_text("{not json")
    paths["broken"] = str(tmp_path / "broken.json")
    paths["dir"] = tmp_path
    return paths


def test_census_table():
    code, out, _ = run("census", "--gmax", "2")
    assert code == 0
    assert out.splitlines() == ["g\tcount_closedform\tcount_bruteforce\tmatch",
                                "1\t3\t3\tmatch", "2\t1\t1\tmatch"]


def test_census_file_and_list(files):
    target = files["dir"] / "table.tsv"
    code, _, _ = run("census", "--gmax", "5", "--out", str(target))
    data = target.read_bytes()
    assert code == 0 and b"\r" not in data and data.count(b"\n") == 6
    code, out, _ = run("census", "--genus", "1", "--list")
    assert out.splitlines() == ["0,0,0,0,0,1", "0,0,0,0,1,0", "1,0,0,0,0,0"]
    assert run("census", "--genus", "2")[1].strip() == "1"


def test_rank_of_the_rank2_tuple():
    assert run("rank", "--six", "0,1,1,0,0,0")[:2] == (0, "2\n")


def test_rank_admit_epi_locus_from_file(files):
    assert run("rank", files["sig"])[1] == "8\n"
    assert "admissible" in run("admit", files["sig"])[1]
    code, out, _ = run("epi", files["sig"], "--format", "json")
    assert code == 0 and json.loads(out)["problems"] == []
    code, out, _ = run("locus", files["sig"])
    assert code == 0 and "genus\t8" in out and "(3; -; 3,3)" in out
    code, out, _ = run("locus", files["sig"], "--format", "json")
    assert json.loads(out)["genus"] == 8


def test_verify_exit_codes(files):
    code, out, err = run("verify", files["good"], "--depth", "4")
    assert code == 0 and "reduced words nontrivial" in out
    code, _, err = run("verify", files["overlap"])
    assert code == 1 and err.startswith("HostOverlap")
    code, _, err = run("verify", files["broken"])
    assert code == 2
    code, _, err = run("verify", str(files["dir"] / "missing.json"))
    assert code == 2


def test_domain_errors_exit_one():
    code, _, err = run("rank", "--six", "0,1,0,0,0,0")
    assert code == 1 and err.startswith("NotAdmissible")
    code, _, err = run("census", "--genus", "0")
    assert code == 1 and err.startswith("OutOfRange")


def test_parse_errors_exit_two():
    assert run("rank", "--six", "1,2")[0] == 2
    assert run("classify", "[1, 2, 3]")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("verify", "x.json", "--depth", "-1")[0] == 2


def test_classify():
    code, out, _ = run("classify", "[2, 0; 0, 1] -")
    assert code == 0 and out.splitlines()[0] == "GlideReflection"
    code, out, _ = run("classify", "[0, i; 1, 0] -", "--format", "json")
    data = json.loads(out)
    assert data["class"] == "PseudoElliptic" and data["order"] == 4
    code, out, _ = run("classify", "[0, -1; 1, 0] -")
    assert out.startswith("ImaginaryReflection")


def test_build_and_realize_write_descriptions(files):
    target = files["dir"] / "built.json"
    code, out, _ = run("build", files["good"], "--out", str(target))
    assert code == 0 and out.startswith("assembly\tT3")
    assert json.loads(target.read_text())["factors"][0]["kind"] == "T3"
    realized = files["dir"] / "realized.json"
    code, out, _ = run("realize", files["sig"], "--depth", "4", "--out", str(realized))
    assert code == 0 and "ping-pong\tpass" in out
    assert run("verify", str(realized), "--depth", "4")[0] == 0


def test_limitset_svg(files):
    target = files["dir"] / "ls.svg"
    code, out, _ = run("limitset", files["good"], "--depth", "4", "--out", str(target))
    svg = target.read_text()
    assert code == 0 and svg.count("<circle") == 2 + int(out.split()[4])


def test_reproduce_and_crosscheck():
    code, out, _ = run("reproduce")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run("--seed", "3", "crosscheck", "--gmax", "8", "--samples", "40")
    assert code == 0 and "mismatches\t0" in out and "seed 3" in out


def test_output_is_deterministic(files):
    for argv in (("census", "--gmax", "12"), ("locus", files["sig"], "--format", "json"),
                 ("build", files["good"]), ("reproduce",)):
        assert run(*argv) == run(*argv)
    a, b = files["dir"] / "a.svg", files["dir"] / "b.svg"
    run("limitset", files["good"], "--depth", "4", "--out", str(a))
    run("limitset", files["good"], "--depth", "4", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "extschottky.cli", "rank", "--six", "1,0,0,0,0,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
