import io
import json
from pathlib import Path

import pytest

from liegraph.cli import run
from liegraph.graph_complex import normalize, vector_from_json
from liegraph.graphs import canonical_label, graph_from_json, from_dot

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    text = out.getvalue()
    return code, (json.loads(text) if text.startswith(("{", "[")) else text), err.getvalue()


def test_enumerate():
    code, rows, _ = call("enumerate", "--order", 1, "--connected")
    assert code == 0
    assert sorted(r["aut"] for r in rows) == [8, 12]
    code, rows, _ = call("enumerate", "--order", 2, "--connected", "--no-self-loops")
    assert len(rows) == 2


def test_aut():
    assert call("aut", "--in", SAMPLES / "gamma2.json")[1] == {"aut": 16}


def test_cocycle_check():
    code, out, _ = call("cocycle-check", "--in", SAMPLES / "theta_minus_dumbbell.json")
    assert code == 0 and out["cocycle"] is True
    code, out, _ = call("cocycle-check", "--in", SAMPLES / "three_loop.json", "--sharp")
    assert out["cocycle"] is True
    code, out, _ = call("cocycle-check", "--in", SAMPLES / "three_loop.json")
    assert out["cocycle"] is False


def test_delta():
    code, out, _ = call("delta", "--in", SAMPLES / "theta_minus_dumbbell.json")
    assert code == 0 and out == {"terms": []}


def test_cohomology():
    for variant, dim in (("full", 1), ("quotient", 1), ("self-loop-only", 0)):
        code, out, _ = call("cohomology", "--order", 1, "--variant", variant)
        assert code == 0 and out["dimension"] == dim


def test_cs_series():
    code, out, _ = call("cs-series", "--order", 2, "--no-self-loops")
    assert code == 0 and out["cocycle"]
    v = vector_from_json(out["vector"])
    g1 = normalize(graph_from_json(json.loads((SAMPLES / "gamma1.json").read_text())))
    assert v.coefficient(next(iter(g1))) != 0


def test_census():
    a = call("census", "--order", 2, "--workers", 1)[1]
    b = call("census", "--order", 2, "--workers", 2)[1]
    assert a == b and a["total"] == 10395 and a["identity_holds"]


def test_weight_and_lie_check():
    code, out, _ = call(
        "weight", "--graph", SAMPLES / "theta.json", "--algebra", "sl2"
    )
    assert out == {"value": "-3"}
    code, out, _ = call(
        "weight", "--graph", SAMPLES / "dumbbell.json", "--algebra", "sl2xsl2",
        "--xi", SAMPLES / "xi_cross.json",
    )
    assert out == {"value": "0"}
    code, out, _ = call("lie-check", "--algebra", SAMPLES / "sl2.json")
    assert out["killing"][0][0] == "8" and out["casimir"][1][2] == "1/4"
    assert out["ihx"] and out["casimir_annihilated"]
    assert (out["bracket_kernel_dim"], out["antisymmetric_kernel_dim"]) == (6, 0)
    assert call("lie-check", "--algebra", "sl2xsl2")[1]["antisymmetric_kernel_dim"] == 9


def test_export_dot_round_trip(tmp_path):
    code, rows, _ = call("enumerate", "--order", 2, "--connected")
    for row in rows:
        p = tmp_path / "g.json"
        p.write_text(json.dumps(row["graph"]))
        code, dot, _ = call("export-dot", "--in", p)
        assert code == 0
        back = from_dot(dot)
        assert canonical_label(back.topology)[0] == canonical_label(graph_from_json(row["graph"]).topology)[0]


def test_out_flag(tmp_path):
    p = tmp_path / "o.json"
    assert call("aut", "--in", SAMPLES / "theta.json", "--out", p)[0] == 0
    assert json.loads(p.read_text()) == {"aut": 12}


def test_error_codes(tmp_path):
    assert call("bogus")[0] == 2
    assert call("enumerate")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"half_edges": 4, "vertices": [[1, 2], [3, 4]], "edges": [[1, 3], [2, 4]]}))
    code, _, err = call("aut", "--in", bad)
    assert code == 1 and json.loads(err)["error"] == "invalid graph"
    assert call("census", "--order", 5)[0] == 1
    assert call("aut", "--in", tmp_path / "missing.json")[0] == 1


def test_deterministic():
    a = call("cohomology", "--order", 2)[1]
    b = call("cohomology", "--order", 2)[1]
    assert a == b
