import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homolift import mkcensus as mk
from homolift.graphcore import (
    CYCLE_CONVENTION,
    Graph,
    HomologyRep,
    bfs_tree,
    fundamental_cycle,
    gp_graph,
    homology_matrix,
    mk_tree,
    parse_edge_list,
    read_edge_list,
    walk_coordinates,
    write_edge_list,
)
from homolift.linalg import FpMatrix
from homolift.permgrp import Perm

GOLDEN_PRIMES = [2, 3, 5, 7, 13, 97]


def test_gp83_shape():
    g = gp_graph(8, 3)
    assert g.n == 16 and len(g.edges) == 24 and set(g.degrees()) == {3}
    assert g.is_bipartite() and g.girth() == 6


def test_petersen_girth():
    g = gp_graph(5, 2)
    assert (g.n, len(g.edges), g.girth()) == (10, 15, 5)


def test_gp41_is_the_cube():
    g = gp_graph(4, 1)
    assert g.n == 8 and len(g.edges) == 12
    assert g.is_bipartite()


def test_gp_parameter_range():
    with pytest.raises(ValueError):
        gp_graph(8, 4)
    with pytest.raises(ValueError):
        gp_graph(2, 1)


def test_edge_list_round_trip(tmp_path):
    g = gp_graph(8, 3)
    text = "# comment\n\n" + write_edge_list(g)
    assert parse_edge_list(text).edges == g.edges
    path = tmp_path / "g.txt"
    path.write_text(text)
    assert read_edge_list(path).edges == g.edges
    with pytest.raises(ValueError):
        parse_edge_list("1 2 3\n")
    with pytest.raises(ValueError):
        parse_edge_list("1 1\n")


def test_mk_tree():
    td = mk_tree()
    assert len(td.tree_edges) == 15 and td.rank == 9
    assert td.cotree[0] == (16, 11)
    assert td.cotree[3] == (3, 4)
    assert all(frozenset((i, 8 + i)) in td.tree_edges for i in range(1, 9))


def test_fundamental_cycles():
    td = mk_tree()
    c1 = fundamental_cycle(td, 1)
    assert c1[0] == (1, 2) and c1[-1][1] == 1
    assert all(frozenset(a) in td.tree_edges for a in c1[1:])
    c0 = fundamental_cycle(td, 0)
    assert len(c0) == 1 + len(td.tree_path(11, 16)) - 1
    for j in range(td.rank):
        cyc = fundamental_cycle(td, j)
        tree_arcs = [frozenset(a) for a in cyc[1:]]
        assert len(tree_arcs) == len(set(tree_arcs))


def test_walk_coordinates():
    td = mk_tree()
    for j in range(td.rank):
        e = tuple(int(k == j) for k in range(9))
        cyc = fundamental_cycle(td, j)
        assert walk_coordinates(td, cyc, 7) == e
        assert walk_coordinates(td, cyc + cyc, 7) == tuple(2 * x for x in e)
    assert walk_coordinates(td, [(1, 9), (9, 1)], 5) == (0,) * 9
    with pytest.raises(ValueError):
        walk_coordinates(td, [(1, 2)], 5)


@pytest.mark.parametrize("p", GOLDEN_PRIMES)
def test_homology_matrices_match_golden_displays(p):
    rep = HomologyRep(mk_tree(), p)
    for name, perm in mk.generators().items():
        gold = mk.golden_integer(mk.MATRIX_LETTER[name])
        assert homology_matrix(rep, perm).rows == tuple(tuple(x % p for x in r) for r in gold)


def test_convention_is_frozen():
    assert CYCLE_CONVENTION == "cotree-arc-then-tree-path"


def test_spot_entries():
    for p in (5, 13):
        m = mk.paper_matrices(p)
        assert m["R"].rows[1] == tuple(x % p for x in (-1, 0, 1, 0, 0, 0, 0, 0, 0))
        assert m["O"].rows[0] == tuple(x % p for x in (0, 0, -1, 0, 0, 0, -1, 0, 0))


def test_identity_and_involutions():
    rep = HomologyRep(mk_tree(), 7)
    assert rep.matrix(Perm.identity(16)) == FpMatrix.identity(9, 7)
    g = mk.generators()
    for k in ("tau", "eta"):
        m = rep.matrix(g[k])
        assert m @ m == FpMatrix.identity(9, 7)
    for a in g.values():
        assert rep.matrix(a).rank == 9


def test_multiplicativity_has_one_direction():
    g = mk.generators()
    rep = HomologyRep(mk_tree(), 11)
    m = rep.matrix
    straight = all(m(g[a] * g[b]) == m(g[a]) @ m(g[b]) for a in g for b in g)
    reverse = all(m(g[a] * g[b]) == m(g[b]) @ m(g[a]) for a in g for b in g)
    assert (straight, reverse) == (True, False)


def test_rejects_non_automorphism():
    rep = HomologyRep(mk_tree(), 5)
    with pytest.raises(ValueError):
        rep.matrix(Perm.from_cycles(16, [(1, 2)]))


def test_cache_is_single_valued_under_threads():
    rep = HomologyRep(mk_tree(), 13)
    a = mk.generators()["sigma"]
    seen = []
    threads = [threading.Thread(target=lambda: seen.append(rep.matrix(a))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(x is seen[0] for x in seen)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 12), st.data())
def test_bfs_tree_cycle_basis(n, data):
    k = data.draw(st.integers(1, (n - 1) // 2))
    g = gp_graph(n, k)
    td = bfs_tree(g)
    assert td.rank == len(g.edges) - g.n + 1
    for j in range(td.rank):
        e = tuple(int(i == j) for i in range(td.rank))
        assert walk_coordinates(td, fundamental_cycle(td, j), 3) == e


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(3, [(1, 4)])
    assert not Graph(4, [(1, 2), (3, 4)]).is_connected()
