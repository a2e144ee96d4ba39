from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import trefoil
from knotslopes.cli import eval_slopes, main
from knotslopes.diagram import AnnularTangle, BraidWord, braid_closure, mirror
from knotslopes.formats import render_pd, render_tangle
from knotslopes.slopes import SlopeSet


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "sum(mirror(torus(3,2)),torus(3,2))", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["schema"] == 1
    assert obj["slo_exact"] == "Q" and obj["sl"] == "empty"


def test_alex(capsys):
    assert run(capsys, "alex", "torus(5,2)")[1].strip() == "1 - t + t^2 - t^3 + t^4"
    assert run(capsys, "alex", "BR 3: 1 -2 1 -2")[1].strip() == "1 - 3t + t^2"


def test_alex_from_files(capsys, tmp_path):
    pd = tmp_path / "k.pd"
    pd.write_text(render_pd(trefoil()))
    br = tmp_path / "k.braid"
    br.write_text("BR 4: 1 1 2 -1 -3 2 -3\n")
    assert run(capsys, "alex", str(pd))[1].strip() == "1 - t + t^2"
    code, out, _ = run(capsys, "--json", "alex", str(br))
    assert json.loads(out)["lspace_obstruction"] == "Obstructed"


@pytest.mark.parametrize(
    "expr,expected",
    [
        ("scale((-8,4],3)", "(-24,12]"),
        ("negate((-1,inf))", "(-inf,1)"),
        ("union((-inf,1),[1,inf))", "Q"),
        ("intersect(Z,6/Z[1..inf])", "{1, 2, 3, 6}"),
        ("complement({0})", "(-inf,0) u (0,inf)"),
        ("difference([0,2],{1})", "[0,1) u (1,2]"),
        ("scale(union({1},negate((2,3))),1/2)", "(-3/2,-1) u {1/2}"),
    ],
)
def test_slopes(capsys, expr, expected):
    code, out, _ = run(capsys, "slopes", expr)
    assert code == 0 and out.strip() == expected
    # emitted canonical form re-parses to an equal value
    assert SlopeSet.parse(out.strip()) == eval_slopes(expr)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["classify", "torus(3"], 2),
        (["classify", "torus(2,4)"], 3),
        (["slopes", "scale((1,2],0)"], 3),
        (["slopes", "frobnicate((1,2])"], 2),
        (["slopes", "complement(Z)"], 3),
        (["check", "/nonexistent.pd"], 2),
        (["nosuchcommand"], 2),
        ([], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_errors_name_the_offender(capsys):
    _, _, err = run(capsys, "classify", "knot(3)")
    assert "knot" in err


def test_batch_order_and_quiet(capsys):
    exprs = ["fig8", "twist(3)", "torus(3,2)", "trivial"]
    code, out, _ = run(capsys, "--quiet", "classify", *exprs)
    blocks = out.strip().split("\n\n")
    assert [b.splitlines()[0] for b in blocks] == exprs
    code, out, _ = run(capsys, "classify", *exprs, "--json")
    assert [r["expr"] for r in json.loads(out)["results"]] == exprs


def test_determinism(capsys):
    argv = ["classify", "sum(sum(mirror(torus(3,2)),torus(3,2)),twist(2))", "--json"]
    outs = {run(capsys, *argv)[1] for _ in range(3)}
    assert len(outs) == 1


def test_periodic_command(capsys, tmp_path):
    f = tmp_path / "s.tangle"
    f.write_text(render_tangle(AnnularTangle.from_braid(BraidWord(2, (1, 1, 1)))))
    code, out, _ = run(capsys, "periodic", str(f), "5", "--json")
    obj = json.loads(out)
    assert code == 0
    assert (obj["axis_linking"], obj["crossings"], obj["congruence"]) == ("2", "15", "holds")
    g = tmp_path / "arc.tangle"
    g.write_text(render_tangle(AnnularTangle.from_knot_arc(mirror(trefoil()))))
    code, out, _ = run(capsys, "periodic", str(g), "5", "--assert", "fiber", "--factor", "mirror(torus(3,2))")
    assert code == 0 and "UNVERIFIED" in out
    assert run(capsys, "periodic", str(f), "4")[0] == 3
    assert run(capsys, "periodic", str(f), "3", "--assert", "magic")[0] == 2


def test_check_command(capsys, tmp_path):
    f = tmp_path / "u.pd"
    f.write_text(render_pd(braid_closure(BraidWord(2, (1, -1)))))
    code, out, _ = run(capsys, "check", str(f), "--json")
    obj = json.loads(out)
    assert obj["reduced"] == "false" and obj["component_count"] == "2"
    assert "alexander" not in obj
    f.write_text(render_pd(trefoil()))
    code, out, _ = run(capsys, "check", str(f))
    assert "alternating: true" in out and "alexander: 1 - t + t^2" in out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "knotslopes.cli", "alex", "torus(3,2)"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "1 - t + t^2"
