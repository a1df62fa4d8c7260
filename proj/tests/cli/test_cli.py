import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("DP4KIT_CLI", str(Path(__file__).resolve().parents[2] / "build" / "tools" / "dp4kit"))
DATA = Path(__file__).resolve().parents[2] / "data"


def run(*args, env=None, check=True):
    e = dict(os.environ)
    e.pop("DP4KIT_BUDGET", None)
    if env:
        e.update(env)
    p = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=e)
    if check and p.returncode != 0:
        raise AssertionError(f"exit {p.returncode}: {p.stderr}")
    return p


def js(*args, **kw):
    return json.loads(run(*args, **kw).stdout)


@pytest.fixture(scope="module")
def model(tmp_path_factory):
    path = tmp_path_factory.mktemp("m") / "model.json"
    run("generate", "--case", 1, "--parity", "odd", "--n", 0, "--p", 3, "--seed", 4, "-o", path)
    return path


def test_numerology_height_12():
    assert js("numerology", "--height", 12) == {"h": 12, "delta": 24, "chi": -8, "chiOmega1": 5, "params": 17}


def test_numerology_all():
    rows = js("numerology", "--all")["rows"]
    assert [r["h"] for r in rows] == list(range(0, 44, 2))
    for r in rows:
        h = r["h"]
        assert r["delta"] == 2 * h and r["chi"] == 16 - 2 * h and r["chiOmega1"] == h - 7
        assert 2 * r["params"] == 3 * h - 2


def test_rrcount():
    assert js("rrcount", "--deg", 12, "--genus", 15)["count"] == 1


def test_cases_table():
    rows = js("cases")["rows"]
    assert [r["height"] for r in rows] == [
        "20n", "20n+10", "20n+8", "20n+18", "20n+16", "20n+26", "20n+24", "20n+34", "20n+32", "20n+42",
    ]
    tsv = run("cases", "--n", 1, "--tsv").stdout.splitlines()
    assert tsv[0].split("\t")[:5] == ["case", "parity", "linear_forms", "height", "height_at_n"]
    assert [int(line.split("\t")[4]) for line in tsv[1:]] == [20, 30, 28, 38, 36, 46, 44, 54, 52, 62]


def test_lattice():
    j = js("lattice")
    assert j["weyl_order"] == 1920 and len(j["exceptional_classes"]) == 16
    assert j["discriminant_group"] == "Z/4" and j["K_squared"] == 4
    t = js("lattice", "--table", DATA / "k3" / "quartic.json", "--expr", "2h - R")["classes"][0]
    assert t["self"] == -2 and t["pairings"][:2] == [4, 5]
    tsv = run("lattice", "--table", DATA / "k3" / "sextic.json", "--expr", "3h - R", "--expr", "C", "--tsv").stdout
    assert tsv.splitlines()[0] == "expr\tself\th\tC\tR"
    assert tsv.splitlines()[1].split("\t")[3] == "7"


def test_pencil_commands(tmp_path):
    p = 13
    ident = [[int(i == j) for j in range(5)] for i in range(5)]
    c = [10, 3, 6, 0, 8]  # all 16 lines are defined over F_13
    diag = [[c[i] * int(i == j) for j in range(5)] for i in range(5)]
    path = tmp_path / "pencil.json"
    path.write_text(json.dumps({"field": {"p": p, "k": 1}, "Q0": ident, "Q1": diag}))
    assert js("classify", path)["verdict"]["status"] == "stable"
    assert js("lines", path)["count"] == 16
    xi = js("xi", path)["xi"]
    assert len(xi) == 3
    q = tmp_path / "quintic.json"
    q.write_text(json.dumps([0, 1, 0, 0, -1, 0]))
    inv = js("invariants", q)
    assert inv["field"] == {"p": 0, "k": 1} and len(inv["moduli"]) == 3


def test_generate_and_discriminant(model):
    m = json.loads(model.read_text())
    assert m["schema"] == "dp4kit/1" and m["case"] == 1 and m["alpha"] == -1
    d = js("discriminant", model)
    assert d["projective_degree"] == 20 == 2 * d["height"] and d["squarefree"]


def test_census_and_figure1(model):
    c = js("census", model, "--deg", 1)
    assert len(c["fibers"]) == 4
    for f in c["fibers"]:
        if not f["singular"]:
            assert f["count"] % 3 == 1
    deg1 = [s for s in c["sections"] if s["degree"] == 1]
    assert all(s["height"] == 0 for s in deg1)
    fig = js("figure1", model)
    assert fig["all_verified"] and fig["count"] == len(deg1) == 11
    tsv = run("census", model, "--no-sections", "--tsv").stdout.splitlines()
    assert tsv[0] == "t0\tt1\tcount\tsingular" and len(tsv) == 5


def test_fiber(model):
    j = js("fiber", model, "--t", "inf", "--k", 2)
    assert j["t"] == [1, 0] and j["count"] % 9 == 1


def test_basepoints_split(tmp_path):
    def form(i):
        m = [[0] * 5 for _ in range(5)]
        m[i][i] = 1
        m[0][0] = -1
        return m

    path = tmp_path / "quads.json"
    path.write_text(json.dumps({"field": {"p": 7, "k": 1}, "quadrics": [form(i) for i in range(1, 5)]}))
    j = js("basepoints", path, "--kmax", 2)
    assert j["count"] == 16 and j["multiplicity_free"]
    coords = {tuple(pt["coords"]) for pt in j["points"]}
    assert coords == {(1, a, b, c, d) for a in (1, 6) for b in (1, 6) for c in (1, 6) for d in (1, 6)}


def test_expected_dims():
    rows = js("expected-dims")["rows"]
    assert [r["contracted_sections"] for r in rows] == [2, 4, 8, 16]
    by_h = {r["h"]: r for r in rows}
    assert by_h[16]["y_dim"] == 23 and by_h[18]["y_dim"] == 26
    assert (by_h[20]["y_dim"], by_h[20]["family_dim"]) == (30, 29)


def test_byte_identical(model):
    for args in (("census", model, "--deg", 1), ("generate", "--case", 2, "--parity", "even", "--n", 0, "--p", 5, "--seed", 9)):
        assert run(*args).stdout == run(*args).stdout


def test_exit_codes(model, tmp_path):
    assert run("numerology", "--height", 13, check=False).returncode == 2
    assert run("numerology", "--bogus", check=False).returncode == 2
    err = run("census", model, "--deg", 1, env={"DP4KIT_BUDGET": "10"}, check=False)
    assert err.returncode == 3 and json.loads(err.stderr)["error"]["kind"] == "budget"
    assert run("census", model, "--deg", 1, "--force", env={"DP4KIT_BUDGET": "10"}).returncode == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("classify", bad, check=False).returncode == 2
    assert run("classify", tmp_path / "missing.json", check=False).returncode == 2


def test_help_mentions_math():
    out = run("numerology", "--help").stdout
    assert "chi" in out and "--height" in out
