import pytest

import dp4kit


def test_numerology_and_tables():
    assert dp4kit.numerology(12) == {"h": 12, "delta": 24, "chi": -8, "chiOmega1": 5, "params": 17}
    assert [r["height_at_n"] for r in dp4kit.cases(0)][:4] == [0, 10, 8, 18]
    assert dp4kit.rr_quartic_count(12, 15) == 1
    k = dp4kit.chi_via_koszul(1)
    assert (k["chi_omega1"], k["chi_top"], k["h2_omega1"]) == (13, -24, 15)
    assert [r["contracted_sections"] for r in dp4kit.expected_dims()] == [2, 4, 8, 16]


def test_lattice():
    s = dp4kit.lattice_summary()
    assert s["weyl_order"] == 1920 and len(s["exceptional_classes"]) == 16
    table = {"labels": ["h", "C", "R"], "gram": [[4, 8, 4], [8, 12, 11], [4, 11, -2]]}
    r = dp4kit.class_arith(table, "2h - R")
    assert r["self"] == -2 and r["pairings"][:2] == [4, 5]


def test_pencil():
    ident = [[int(i == j) for j in range(5)] for i in range(5)]
    diag = [[c * int(i == j) for j, _ in enumerate(range(5))] for i, c in enumerate([10, 3, 6, 0, 8])]
    pencil = {"field": {"p": 13, "k": 1}, "Q0": ident, "Q1": diag}
    assert dp4kit.classify(pencil)["status"] == "stable"
    assert len(dp4kit.lines(pencil)) == 16
    assert len(dp4kit.xi(pencil)) == 3
    inv = dp4kit.invariants([0, 1, 0, 0, -1, 0], p=101)
    assert set(inv) == {"I4", "I8", "I12", "moduli"}


def test_model_pipeline():
    m = dp4kit.generate_model(1, "odd", 0, p=3, seed=4)
    assert m["schema"] == dp4kit.SCHEMA
    d = dp4kit.discriminant(m)
    assert d["projective_degree"] == 20 and d["squarefree"]
    c = dp4kit.census(m, degree=1)
    deg1 = [s for s in c["sections"] if s["degree"] == 1]
    assert len(deg1) == 11
    assert dp4kit.figure1(m)["count"] == 11
    assert dp4kit.fiber_point_count(m, "inf", k=2) % 9 == 1
    assert dp4kit.census(m, degree=1, threads=2) == c


def test_base_points():
    def form(i):
        q = [[0] * 5 for _ in range(5)]
        q[i][i] = 1
        q[0][0] = -1
        return q

    r = dp4kit.base_points({"field": {"p": 7, "k": 1}, "quadrics": [form(i) for i in range(1, 5)]}, kmax=1)
    assert r["count"] == 16 and r["multiplicity_free"]


def test_errors():
    with pytest.raises(dp4kit.ValidationError):
        dp4kit.numerology(13)
    with pytest.raises(ValueError):
        dp4kit.classify({"field": {"p": 7}})
    m = dp4kit.generate_model(1, "odd", 0, p=3, seed=4)
    with pytest.raises(dp4kit.BudgetError):
        import os

        os.environ["DP4KIT_BUDGET"] = "10"
        try:
            dp4kit.census(m, degree=1, fibers=False)
        finally:
            del os.environ["DP4KIT_BUDGET"]
