import os
import re
import subprocess
import sys

import pytest

from levelsheaf.barcodes import GradedBarcode
from levelsheaf.blocks import Block
from levelsheaf.cli import main
from levelsheaf.meshes import bundled_mesh_text
from levelsheaf.mvsystems import GradedBlock, MVSystem
from levelsheaf.serialize import barcode_from_json, barcode_to_json, mv_from_json, mv_to_json

ERROR_LINE = re.compile(r"^levelsheaf: error=[a-z-]+ reason=\S.*$")


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    write.dir = tmp_path
    return write


def _run(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def _error_code(capsys, argv):
    code, _, err = _run(capsys, argv)
    lines = err.strip().splitlines()
    assert ERROR_LINE.match(lines[-1]), err
    return code


def _levelset(capsys, files, name):
    mesh = files(f"{name}.mesh.json", bundled_mesh_text(name))
    out = str(files.dir / f"{name}.bars.json")
    system = str(files.dir / f"{name}.mv.json")
    code, stdout, _ = _run(capsys, ["levelset", "--mesh", mesh, "--out", out, "--mv", system, "--verify-grid", "6"])
    assert code == 0
    assert stdout.strip() == "verify points=15 mismatches=0"
    return out, system


def test_circle_distance_is_one(capsys, files):
    f_bars, f_mv = _levelset(capsys, files, "circle_projection")
    p_bars, p_mv = _levelset(capsys, files, "circle_constant")
    assert barcode_from_json(open(f_bars).read()) == GradedBarcode.parse(("[-1,1]", 0), ("]-1,1[", 0))
    assert _run(capsys, ["distance", f_bars, p_bars])[1] == "1\n"
    assert _run(capsys, ["distance", f_bars, f_bars])[1] == "0\n"
    assert _run(capsys, ["distance", "--kind", "mv", f_mv, p_mv])[1] == "1\n"
    assert _run(capsys, ["interleaved", f_mv, p_mv, "--eps", "1"])[1] == "true\n"
    assert _run(capsys, ["interleaved", f_mv, p_mv, "--eps", "1/2"])[1] == "false\n"


def test_infinite_distance_prints_inf(capsys, files):
    a = files("a.json", barcode_to_json(GradedBarcode.parse(("[0,10]", 0))))
    b = files("b.json", barcode_to_json(GradedBarcode()))
    assert _run(capsys, ["distance", a, b])[1] == "inf\n"


def test_xi_psi_xi_is_byte_stable(capsys, files):
    _, system = _levelset(capsys, files, "torus_height")
    first, back, second = (str(files.dir / n) for n in ("x1.json", "s.json", "x2.json"))
    assert _run(capsys, ["xi", system, "--out", first])[0] == 0
    assert _run(capsys, ["psi", first, "--out", back])[0] == 0
    assert _run(capsys, ["xi", back, "--out", second])[0] == 0
    assert open(first, "rb").read() == open(second, "rb").read()


def test_convolve(capsys, files):
    src = files("b.json", barcode_to_json(GradedBarcode.parse(("]0,4[", 0))))
    out = str(files.dir / "c.json")
    assert _run(capsys, ["convolve", src, "--eps", "2", "--out", out])[0] == 0
    assert barcode_from_json(open(out).read()) == GradedBarcode.parse(("[2,2]", 1))


def test_plot_is_deterministic_and_draws_each_bar(capsys, files):
    bars = GradedBarcode.parse(("[0,1]", 0), ("]0,2[", 0), ("[1,inf[", 1))
    src = files("b.json", barcode_to_json(bars))
    one, two = str(files.dir / "1.svg"), str(files.dir / "2.svg")
    assert _run(capsys, ["plot", src, "--svg", one])[0] == 0
    assert _run(capsys, ["plot", src, "--svg", two])[0] == 0
    text = open(one).read()
    assert text == open(two).read()
    assert text.lstrip().startswith("<?xml") and "degree 0" in text and "degree 1" in text


def test_selftest(capsys):
    code, out, _ = _run(capsys, ["selftest", "--seed", "3", "--cases", "5"])
    assert code == 0
    assert out.strip().splitlines()[-1] == "selftest seed=3 suites=7 failed=0"
    again = _run(capsys, ["selftest", "--seed", "3", "--cases", "5"])[1]
    assert re.sub(r"\d+\.\d+s", "", again) == re.sub(r"\d+\.\d+s", "", out)


def test_selftest_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("LEVELSHEAF_SEED", "17")
    code, out, _ = _run(capsys, ["selftest", "--cases", "2", "--suite", "section-law"])
    assert code == 0 and "seed=17" in out


def test_malformed_input_exits_2(capsys, files):
    bad = files("bad.json", "{not json")
    assert _error_code(capsys, ["distance", bad, bad]) == 2
    assert _error_code(capsys, ["distance", str(files.dir / "missing.json"), bad]) == 2
    assert _error_code(capsys, ["nonsense"]) == 2
    good = files("good.json", barcode_to_json(GradedBarcode()))
    assert _error_code(capsys, ["convolve", good, "--eps", "x", "--out", str(files.dir / "o.json")]) == 2


def test_precondition_exits_3(capsys, files):
    good = files("good.json", barcode_to_json(GradedBarcode()))
    assert _error_code(capsys, ["convolve", good, "--eps", "-1", "--out", str(files.dir / "o.json")]) == 3
    mesh = files("m.json", '{"vertices": ["a"], "simplices": [["a", "b"]], "values": {"a": "0"}}')
    assert _error_code(capsys, ["levelset", "--mesh", mesh, "--out", str(files.dir / "o.json")]) == 3
    assert _error_code(capsys, ["selftest", "--suite", "nope"]) == 3


def test_budget_exceeded_exits_4(capsys, files):
    many = MVSystem(GradedBlock(Block("bb", -k, k, False, False), 0) for k in range(9))
    a = files("many.json", mv_to_json(many))
    assert mv_from_json(open(a).read()) == many
    assert _error_code(capsys, ["interleaved", a, a, "--eps", "1"]) == 4


def test_failed_verification_exits_1(capsys, files, monkeypatch):
    import levelsheaf.cli as cli

    mesh = files("m.json", bundled_mesh_text("circle_projection"))
    monkeypatch.setattr(cli, "levelset_mv", lambda f: MVSystem())
    report = str(files.dir / "r.json")
    code, out, _ = _run(
        capsys, ["levelset", "--mesh", mesh, "--out", str(files.dir / "o.json"), "--verify-grid", "4", "--report", report]
    )
    assert code == 1 and "mismatches=0" not in out
    assert '"pointwise-report"' in open(report).read()


def test_console_script_runs():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "levelsheaf.cli", "selftest", "--cases", "1", "--suite", "section-law"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0, proc.stderr
