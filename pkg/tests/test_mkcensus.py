import itertools
import json

import pytest

from homolift import mkcensus as mk
from homolift.gfp import fp_sqrt
from homolift.linalg import span

ALL_SIGNS = list(itertools.product([1, -1], repeat=2))


def rows_mod(rows, p):
    return [[x % p for x in r] for r in rows]


def table_u_s(s, i, p):
    """Tabulated voltage rows for the U(s) family (p = 1 mod 4)."""
    top = [0, s, 1, s * i, i, -s, -1, -s * i, -i]
    half = [1 + (1 + s) * i, -1 - s - s * i, 1 + s - i, -s + (1 + s) * i]
    return rows_mod([top, [0, *half, *(-x for x in half)]], p)


def table_alpha_beta(a, b, p):
    return rows_mod([[0, a + 1, -1, b, 1, -(a + 1), 1, -b, -1], [0, b, 1, -(a + 1), 1, -b, -1, a + 1, -1]], p)


def first_row(r3):
    return [-4, 1 + r3, -3 - r3, 1 + r3, 1 - r3, -3 + r3, 1 - r3, 1 + r3, -3 - r3]


def test_subgroup_census_has_17_named_rows():
    entries = mk.census_subgroups()
    assert len(entries) == 17
    assert all(e.name for e in entries)
    assert sorted(e.name for e in entries if e.minimal_vertex_transitive) == sorted(mk.MINIMAL_VT)
    assert [e.name for e in entries if e.minimal_edge_transitive] == ["H"]
    assert [e.name for e in entries if e.maximal_semisymmetric] == ["M"]
    both = sorted(e.name for e in entries if e.flags.vertex and e.flags.edge)
    assert both == ["K1", "K2"]


def test_golden_mismatch_is_reported(monkeypatch):
    rows = mk.golden_integer("R")
    rows[8][8] += 1
    monkeypatch.setitem(mk.GOLDEN, "R", "\n".join(" ".join(map(str, r)) for r in rows))
    with pytest.raises(mk.GoldenMismatch, match=r"R\[9,9\]"):
        mk.paper_matrices(7)


def test_census_p2_is_empty():
    r = mk.full_census(2)
    assert r.counts["minimal_semisymmetric"] == 0 and r.matches_formula
    assert r.lattice_size == 8 and r.minimal_count == 1
    assert not r.semisymmetric_classes


def test_census_p3():
    r = mk.full_census(3)
    (c,) = r.semisymmetric_classes
    assert c.name == "U_alpha_beta(1,1)" and c.info["cover_order"] == 144
    assert c.flags.largest_lift == "M"
    assert (r.lattice_size, r.minimal_count, len(r.classes)) == (36, 6, 22)


def test_census_p5():
    r = mk.full_census(5)
    (c,) = r.semisymmetric_classes
    assert c.name == "U_s(0)" and c.dim == 2
    assert c.info["cover_order"] == 400 and c.flags.largest_lift == "H"
    assert len(c.orbit) == 4


def test_census_p19_counts():
    r = mk.full_census(19)
    assert r.counts == {
        "minimal_semisymmetric": 6,
        "minimal_edge_transitive_semisymmetric": 5,
        "extra_non_minimal_ET": 1,
        "semisymmetric": 40,
    }
    tags = sorted(c.flags.largest_lift for c in r.semisymmetric_classes)
    assert tags == ["H"] * 5 + ["M"]


@pytest.mark.parametrize("p,expected", [(2, 0), (3, 1), (5, 1), (7, 2), (13, 3), (19, 6), (73, 19), (97, 25)])
def test_formula_count(p, expected):
    assert mk.formula_count(p) == expected


@pytest.mark.parametrize("p", [5, 13, 17])
def test_u_s_table_matches_tabulated_rows(p):
    i = mk.sqrt_minus_one(p)
    for s in range(p):
        assert span(table_u_s(s, i, p), 9, p) == span(mk.u_s_rows(s, p), 9, p)
    assert table_u_s(2, i, p)[1][1] == (1 + 3 * i) % p


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_alpha_beta_table_matches_tabulated_rows(p):
    for a, b in mk.solve_alpha_beta(p):
        assert span(table_alpha_beta(a, b, p), 9, p) == span(mk.w_alpha_beta_rows(a, b, p), 9, p)
    (c,) = [c for c in mk.full_census(3).semisymmetric_classes]
    t = c.info["voltage_table"]
    assert t.column(4) == (1, 1) and t.column(1) == (2, 1)


def test_three_dim_table_p19():
    p = 19
    (extra,) = [c for c in mk.full_census(p).semisymmetric_classes if c.dim == 3]
    assert extra.info["voltage_table"].family == 4
    assert fp_sqrt(3, p) is None
    for e3, e2 in ALL_SIGNS:
        r3, m2 = e3 * fp_sqrt(-3, p), e2 * fp_sqrt(-2, p)
        rows = rows_mod([first_row(r3), [0, 0, -1, m2, 1, 0, 1, -m2, -1], [0, m2, 1, 0, 1, -m2, -1, 0, -1]], p)
        assert rows[0][0] == p - 4
        assert span(rows, 9, p) in extra.orbit


def test_three_dim_table_p73():
    p = 73
    (extra,) = [c for c in mk.full_census(p).semisymmetric_classes if c.dim == 3]
    assert extra.info["voltage_table"].family == 3
    i = mk.sqrt_minus_one(p)
    for radicand, hit in ((-3, True), (3, False)):
        for sign, nu_sign in ALL_SIGNS:
            r3 = sign * fp_sqrt(radicand, p)
            nu = nu_sign * fp_sqrt(-i, p) % p
            rows = rows_mod([first_row(r3)], p) + table_u_s(nu, i, p)
            assert (span(rows, 9, p) in extra.orbit) == hit


def test_voltage_tables_span_their_classes():
    for p in (3, 5, 13, 19):
        report = mk.full_census(p)
        for t in mk.emit_voltage_tables(report):
            assert t.d in (2, 3)
    t = mk.full_census(5).semisymmetric_classes[0].info["voltage_table"]
    bad = mk.VoltageTable(t.class_name, t.family, (t.rows[0], t.rows[0]))
    with pytest.raises(mk.CrossCheckError):
        mk.check_voltage_table(bad, span(t.rows, 9, 5), 5)
    assert "z(x1)" in t.render().splitlines()[0]


def test_cross_check_catches_a_missing_table_entry(monkeypatch):
    real = mk.closed_form_lattice
    monkeypatch.setattr(mk, "closed_form_lattice", lambda p: real(p)[:-2] + real(p)[-1:])
    with pytest.raises(mk.CrossCheckError, match="lattice mismatch at p=7"):
        mk.full_census.__wrapped__(7)


def test_s_fixed_note():
    (note,) = mk.full_census(17).notes
    assert "-1+nu-nu^2, -1-nu-nu^2" in note
    assert "1+nu-nu^2," not in note.replace("-1+nu-nu^2", "")
    assert not mk.full_census(13).notes


def test_solve_alpha_beta():
    assert mk.solve_alpha_beta(3) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    for p in (7, 11, 19, 23):
        sols = mk.solve_alpha_beta(p)
        assert len(sols) == p + 1
        assert all((a * a + b * b + 1) % p == 0 for a, b in sols)


def test_sqrt_helpers():
    assert mk.sqrt_minus_one(7) is None and mk.sqrt_minus_one(13) == 5
    assert mk.sqrt_minus_three(13) is not None and mk.sqrt_minus_three(11) is None


def test_basis_vector_keys():
    assert set(mk.basis_vectors(2)) == {"b1", "b2", "b3", "v1", "u1", "v2", "u2", "v3", "u3", "b"}
    keys13 = set(mk.basis_vectors(13))
    assert {"b1", "b4", "v2+", "v2-", "c1"} <= keys13
    assert not {"b1", "v2+"} & set(mk.basis_vectors(11))


def test_resolve_class():
    r = mk.full_census(5)
    assert mk.resolve_class(r, "U_s_min").name == "U_s(0)"
    assert mk.resolve_class(r, "U_s(3)") is mk.resolve_class(r, "U_s(0)")
    r13 = mk.full_census(13)
    assert r13.find("U1prime") is r13.find("U1'")
    with pytest.raises(KeyError):
        mk.resolve_class(r, "nope")


def test_json_round_trip():
    r = mk.full_census(13)
    data = json.loads(mk.render_json(r))
    assert data["prime"] == 13 and data["formula_expected"] == 3
    assert len(data["classes"]) == 3
    for rec in data["classes"]:
        assert set(rec) == {
            "name", "dimension", "basis", "orbit_size", "flags", "largest_lift", "cover_order", "voltage_table",
        }
        assert rec["flags"]["minimal_semisymmetric"] and rec["cover_order"] == 16 * 13 ** rec["dimension"]
    full = json.loads(mk.render_json(r, all_classes=True))
    assert len(full["classes"]) == len(r.classes)
    assert mk.render_json(r) == mk.render_json(mk.full_census(13))


def test_render_text_lines():
    text = mk.render_text(mk.full_census(7))
    assert "semisymmetric classes: 2" in text and "expected by formula: 2" in text


def test_verify_formula_small_range():
    rows = mk.verify_formula(23)
    assert [r.p for r in rows] == [2, 3, 5, 7, 11, 13, 17, 19, 23]
    assert all(r.match for r in rows)
    with pytest.raises(ValueError):
        mk.verify_formula(101)
    with pytest.raises(ValueError):
        mk.full_census(101)
