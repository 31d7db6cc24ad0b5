import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homolift import mkcensus as mk
from homolift.gfp import FpPoly, fp_inv, poly_divmod
from homolift.linalg import (
    FpMatrix,
    Subspace,
    charpoly,
    contains,
    image,
    intersect,
    is_invariant,
    kernel,
    matrix_poly,
    minpoly,
    primary_decomposition,
    rref,
    span,
    spin,
    subspace_sum,
)


def P(coeffs, p):
    return FpPoly(coeffs, p)


def ident(n, p):
    return FpMatrix.identity(n, p)


def rand_matrix(rng, n, p):
    return FpMatrix([[rng.randrange(p) for _ in range(n)] for _ in range(n)], p)


def test_rref_examples():
    m, r, piv = rref(ident(3, 7))
    assert m == ident(3, 7) and r == 3 and piv == [0, 1, 2]
    z = FpMatrix.zeros(2, 5, 3)
    assert rref(z)[:2] == (z, 0)
    m, r, _ = rref(FpMatrix([[1, 1], [2, 2]], 3))
    assert r == 1 and m.rows[0] == (1, 1)


def test_kernel_examples():
    assert kernel(ident(4, 5)).dim == 0
    assert kernel(FpMatrix.zeros(4, 4, 5)) == Subspace.full(4, 5)
    r2 = mk.paper_matrices(2)["R"] ** 2
    v = mk.basis_vectors(2)
    j1 = span([v["b1"], v["b2"], v["b3"]], 9, 2)
    assert kernel(r2 - ident(9, 2)) == j1


def test_charpoly_examples():
    m13 = mk.paper_matrices(13)
    x1 = P([-1, 1], 13)
    assert charpoly(m13["R"] ** 2) == x1 * P([-1, 0, 0, 0, 1], 13) ** 2
    o7 = mk.paper_matrices(7)["O"]
    assert charpoly(o7) == P([-1, 1], 7) * P([1, 1, 1], 7) ** 4
    assert charpoly(ident(5, 3)) == P([-1, 1], 3) ** 5


def test_minpoly_examples():
    m13 = mk.paper_matrices(13)
    assert minpoly(m13["R"] ** 2) == P([-1, 0, 0, 0, 1], 13)
    assert minpoly(m13["O"]) == P([-1, 0, 0, 1], 13)


@pytest.mark.parametrize("p", [7, 11, 19])
def test_minpoly_of_o_restricted_to_w(p):
    m = mk.paper_matrices(p)
    r2, o = m["R"] ** 2, m["O"]
    w = kernel(r2 @ r2 + ident(9, p))
    assert w.dim == 4
    cols = [w.coordinates(o.apply(b)) for b in w.basis]
    restricted = FpMatrix([list(c) for c in zip(*cols)], p)
    assert minpoly(restricted) == P([1, 1, 1], p)


def _dims(comps):
    return sorted((c.factor.coeffs, c.kernel.dim) for c in comps)


def test_primary_decomposition_r2_mod_5():
    comps = primary_decomposition(mk.paper_matrices(5)["R"] ** 2)
    assert _dims(comps) == sorted([((4, 1), 3), ((1, 1), 2), ((3, 1), 2), ((2, 1), 2)])


def test_primary_decomposition_r2_mod_7():
    comps = primary_decomposition(mk.paper_matrices(7)["R"] ** 2)
    assert _dims(comps) == sorted([((6, 1), 3), ((1, 1), 2), ((1, 0, 1), 4)])


def test_primary_decomposition_identity():
    (c,) = primary_decomposition(ident(6, 5))
    assert c.factor == P([-1, 1], 5) and c.kernel.dim == 6


def test_lattice_operations():
    p = 2
    a = span([(1, 0, 1, 0)], 4, p)
    assert subspace_sum(a, Subspace.zero(4, p)) == a
    r2 = mk.paper_matrices(2)["R"] ** 2
    o = mk.paper_matrices(2)["O"]
    i9 = ident(9, 2)
    j2 = kernel((r2 - i9) @ (r2 - i9))
    w4 = next(c.subspace for c in mk.closed_form_subspaces(2) if c.name == "W4")
    assert intersect(j2, kernel(o @ o + o + i9)) == w4


def test_image_of_u_s_under_r_mod_5():
    p = 5
    i = mk.sqrt_minus_one(p)
    r = mk.paper_matrices(p)["R"]
    u = lambda s: span(mk.u_s_rows(s, p), 9, p)  # noqa: E731
    for s in range(1, p):
        assert image(r, u(s)) == u(-i * fp_inv(s, p) % p)
    assert image(r, u(0)) == u(None)
    assert image(r, u(None)) == u(0)


def test_spin_examples():
    p = 5
    r2 = mk.paper_matrices(p)["R"] ** 2
    v1 = mk.basis_vectors(p)["v1"]
    assert spin(v1, [r2]) == span([v1], 9, p)
    b = (1, 0, 0, 1, 0, 1, 1, 1, 1)
    assert spin(b, [mk.paper_matrices(2)["O"]]) == span([b], 9, 2)
    o = mk.paper_matrices(7)["O"]
    k = kernel(o @ o + o + ident(9, 7))
    for w in list(k.basis)[:4]:
        assert spin(w, [o]) == span([w, o.apply(w)], 9, 7)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_charpoly_and_minpoly_annihilate(p):
    rng = random.Random(1000 + p)
    zero = FpMatrix.zeros(9, 9, p)
    for _ in range(200):
        m = rand_matrix(rng, 9, p)
        cp, mp = charpoly(m), minpoly(m)
        assert cp.degree == 9 and cp.lead == 1
        assert matrix_poly(cp, m) == zero
        assert matrix_poly(mp, m) == zero
        assert poly_divmod(cp, mp)[1].is_zero()


@settings(max_examples=60, deadline=None)
@given(p=st.sampled_from([2, 3, 5]), seed=st.integers(0, 10**6))
def test_primary_components_split_the_space(p, seed):
    m = rand_matrix(random.Random(seed), 6, p)
    comps = primary_decomposition(m)
    assert sum(c.kernel.dim for c in comps) == 6
    assert sum(c.kernel.dim for c in comps) == sum(c.degree * c.char_mult for c in comps)
    total = Subspace.zero(6, p)
    for k, c in enumerate(comps):
        assert is_invariant(c.kernel, m)
        for d in comps[k + 1:]:
            assert intersect(c.kernel, d.kernel).dim == 0
        total = subspace_sum(total, c.kernel)
    assert total == Subspace.full(6, p)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_spin_is_least_invariant_subspace(p):
    gens = mk.edge_matrices(p)
    lattice = mk.closed_form_lattice(p)
    rng = random.Random(p)
    for _ in range(40):
        v = tuple(rng.randrange(p) for _ in range(9))
        if not any(v):
            continue
        s = spin(v, gens)
        assert s.contains_vector(v) and all(is_invariant(s, g) for g in gens)
        meet = Subspace.full(9, p)
        for t in lattice:
            if t.contains_vector(v):
                meet = intersect(meet, t)
        assert s == meet


def _rand_subspace(rng, n, p, k):
    return span([[rng.randrange(p) for _ in range(n)] for _ in range(k)], n, p)


def test_modular_law_random_triples():
    rng = random.Random(7)
    for _ in range(500):
        p = rng.choice([2, 3, 5])
        c = _rand_subspace(rng, 5, p, rng.randint(0, 4))
        a = span([v for v in c.basis if rng.random() < 0.5], 5, p)
        b = _rand_subspace(rng, 5, p, rng.randint(0, 4))
        assert contains(c, a)
        assert subspace_sum(a, intersect(b, c)) == intersect(subspace_sum(a, b), c)
        s, m = subspace_sum(a, b), intersect(a, b)
        assert s.dim + m.dim == a.dim + b.dim


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        subspace_sum(Subspace.zero(3, 5), Subspace.zero(4, 5))
    with pytest.raises(ValueError):
        charpoly(FpMatrix.zeros(2, 3, 5))
