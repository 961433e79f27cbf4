from __future__ import annotations

import json
from pathlib import Path

import pytest

from fantree.adapters.table import TableSource
from fantree.core import StringWriter, load_document
from fantree.errors import NoLedgerData
from fantree.fantree import main

from example_data import CUSP, F1, F2, IDEALS, JUMPING_NUMBERS


def _write(p: Path, content: str) -> None:
    p.write_text(content, encoding="utf-8")


def _curve(tmp_path: Path, *polys: str, name: str = "curve.json", **extra) -> str:
    path = tmp_path / name
    _write(path, json.dumps({"factors": list(polys), **extra}))
    return str(path)


def _run(*argv: str) -> tuple[int, str]:
    buf = StringWriter()
    code = main(argv=list(argv), writer=buf)
    return code, buf.text()


def test_resolve_json_document(tmp_path):
    code, out = _run("resolve", "--curve", _curve(tmp_path, F1, F2))
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "fantree/1"
    assert [n["id"] for n in doc["tree"]["nodes"]] == [1, 2, 3, 4]
    assert [d["lambda"] for d in doc["decorations"]] == [5, 8, 13]
    rows = {r["label"]: r for r in doc["table"]["rows"]}
    assert rows["R4"]["values"]["z"] == 15
    assert rows["R3"]["curve"] == 33


def test_resolve_text(tmp_path):
    code, out = _run("resolve", "--curve", _curve(tmp_path, CUSP), "--format", "text")
    assert code == 0
    assert out.startswith("node 1 (root)\n")
    assert "R2" in out


def test_jumping_numbers_exclude_the_bound(tmp_path):
    curve = _curve(tmp_path, F1, F2)
    code, out = _run("jumping", "--curve", curve, "--max", "1", "--format", "text")
    assert code == 0
    assert out.splitlines() == [str(xi) for xi in JUMPING_NUMBERS]


def test_ideal_for_one_xi(tmp_path):
    curve = _curve(tmp_path, F1, F2)
    code, out = _run("ideal", "--curve", curve, "--xi", "5/21", "--format", "text")
    assert code == 0
    assert out == "5/21: x, y, z\n"

    code, out = _run("ideal", "--curve", curve, "--xi", "17/33")
    doc = json.loads(out)["ideal"]
    assert doc["xi"] == "17/33"
    assert doc["alphabet"] == ["x", "y", "z"]
    assert len(doc["generators"]) == len(IDEALS["17/33"].split())


def test_ideal_without_xi_lists_every_jumping_number(tmp_path):
    curve = _curve(tmp_path, F1, F2)
    code, out = _run("ideal", "--curve", curve, "--max", "1/3", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["5/21: x, y, z"]


def test_member_reports_the_failing_divisor(tmp_path):
    curve = _curve(tmp_path, F1, F2)
    code, out = _run("member", "--curve", curve, "--xi", "17/33", "--poly", "z", "--format", "text")
    assert code == 0
    assert out == "false (fails on R3)\n"

    code, out = _run("member", "--curve", curve, "--xi", "1/2", "--poly", "x^3 + y^2")
    assert json.loads(out) == {"schema": "fantree/1", "xi": "1/2", "member": True, "witness": None}


def test_member_reads_a_polynomial_document(tmp_path):
    poly = tmp_path / "h.json"
    _write(poly, json.dumps({"poly": [[0, 2, "1"], [3, 0, "1"]]}))
    curve = _curve(tmp_path, F1, F2)
    code, out = _run(
        "member", "--curve", curve, "--xi", "17/33", "--poly", str(poly), "--format", "text"
    )
    assert code == 0
    assert out.startswith("false")


def test_table_round_trip(tmp_path):
    saved = tmp_path / "resolved.json"
    code, _ = _run("resolve", "--curve", _curve(tmp_path, F1, F2), "--out", str(saved))
    assert code == 0
    assert json.loads(saved.read_text(encoding="utf-8"))["schema"] == "fantree/1"

    code, out = _run("jumping", "--table", str(saved), "--format", "text")
    assert code == 0
    assert len(out.splitlines()) == len(JUMPING_NUMBERS)


def test_raw_table_document(tmp_path):
    table = tmp_path / "table.json"
    _write(
        table,
        json.dumps(
            {
                "elements": [
                    {"name": "x", "kind": "R"},
                    "y",
                    {"name": "C1", "kind": "branch", "generating": False},
                ],
                "rows": [{"label": "R2", "lambda": 5, "values": {"x": 2, "y": 3, "C1": 6}}],
                "branches": [{"name": "C1", "mult": 1}],
            }
        ),
    )
    code, out = _run("jumping", "--table", str(table), "--max", "2", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["5/6", "1", "11/6"]


def test_oracles(tmp_path):
    cusp = _curve(tmp_path, CUSP, name="cusp.json")
    code, out = _run("oracle", "blowup", "--curve", cusp, "--format", "text")
    assert code == 0
    assert out.splitlines() == ["E1 (2, 2)", "E2 (3, 3)", "E3 (6, 5)  rupture"]

    code, out = _run("oracle", "howald", "--curve", cusp, "--max", "2", "--format", "text")
    assert out.splitlines() == ["5/6", "1", "11/6"]

    pair = _curve(tmp_path, F1, F2)
    code, out = _run("oracle", "intersection", "--curve", pair, "--format", "text")
    assert out == "(C1 . C2) = 18\n"

    code, out = _run("oracle", "blowup", "--curve", cusp)
    assert json.loads(out)["lct"] == "5/6"


def test_renamed_coordinates(tmp_path):
    curve = _curve(tmp_path, "v^2 + u^3", coordinates=["u", "v"])
    code, out = _run("jumping", "--curve", curve, "--max", "2", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["5/6", "1", "11/6"]


def test_invalid_input_exits_with_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    _write(bad, "[1, 2]")
    code, out = _run("resolve", "--curve", str(bad))
    assert code == 1
    assert out == ""
    assert capsys.readouterr().err.startswith("error: ")

    code, _ = _run("resolve", "--curve", _curve(tmp_path, "x*y + x^2", name="r.json"))
    assert code == 1

    wrong = tmp_path / "wrong.json"
    _write(wrong, json.dumps({"schema": "other/9", "factors": [CUSP]}))
    code, _ = _run("resolve", "--curve", str(wrong))
    assert code == 1


def test_non_rational_center_exits_with_two(tmp_path):
    code, _ = _run("resolve", "--curve", _curve(tmp_path, "(y^2 - 2*x^2)^2 + x^5"))
    assert code == 2
    cusp = _curve(tmp_path, CUSP, name="c.json")
    code, _ = _run("resolve", "--curve", cusp, "--depth-limit", "0")
    assert code == 2


def test_ideal_from_a_saved_table(tmp_path):
    saved = tmp_path / "resolved.json"
    _run("resolve", "--curve", _curve(tmp_path, CUSP), "--out", str(saved))
    code, _ = _run("ideal", "--table", str(saved), "--xi", "5/6", "--format", "text")
    assert code == 0


def test_rejected_arguments_exit_with_one(tmp_path, capsys):
    curve = _curve(tmp_path, F1, F2)
    code, out = _run("member", "--curve", curve, "--xi", "-1", "--poly", "z")
    assert code == 1
    assert out == ""
    assert capsys.readouterr().err.startswith("error: ")

    code, _ = _run("jumping", "--curve", curve, "--max", "abc")
    assert code == 1
    code, _ = _run("resolve")
    assert code == 1


def test_member_with_the_root_curvetta(tmp_path):
    curve = _curve(tmp_path, F1, F2)
    code, out = _run("member", "--curve", curve, "--xi", "1/3", "--poly", "y*z", "--format", "text")
    assert code == 0
    assert out == "true\n"


def test_member_needs_a_curve_not_a_table(tmp_path):
    saved = tmp_path / "resolved.json"
    _run("resolve", "--curve", _curve(tmp_path, CUSP), "--out", str(saved))
    source = TableSource(load_document(saved))
    assert [r.label for r in source.valuation_table().rows] == ["R2"]
    with pytest.raises(NoLedgerData):
        source.resolution()

    code, out = _run("member", "--table", str(saved), "--xi", "1/2", "--poly", "x")
    assert code == 1
    assert out == ""


def test_tree_document_lists_branch_ends(tmp_path):
    code, out = _run("resolve", "--curve", _curve(tmp_path, F1, F2))
    assert code == 0
    nodes = json.loads(out)["tree"]["nodes"]
    assert [n["ends"] for n in nodes] == [[], [], ["C2"], ["C1"]]
    assert [n["curvetta"] for n in nodes] == ["y", "z", None, None]
    assert nodes[0]["trunk"] == [{"slope": "3/2", "label": "R2"}, {"slope": "5/3", "label": "R3"}]
