"""The Möbius-Kantor graph GP(8, 3): pinned symmetry data and the cover census.

Everything specific to GP(8, 3) lives here: the six named automorphisms,
the transitive subgroups, golden homology matrices, closed-form invariant
subspaces for every prime regime, and the census that classifies minimal
semisymmetric elementary abelian covers up to isomorphism.
"""

from __future__ import annotations

import functools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gfp import check_prime, fp_inv, fp_sqrt
from .graphcore import Graph, HomologyRep, gp_graph, mk_tree
from .invariant import (
    ProjectionClass,
    SymmetryContext,
    classify_lifting,
    full_lattice,
    is_invariant,
    matrix_group_order,
    minimal_common,
    minimal_semisymmetric,
    orbit_reduce,
)
from .linalg import FpMatrix, Subspace, span
from .permgrp import Perm, PermGroup, closure, conjugate, subgroup_census

N_VERTICES = 16
RANK = 9
DEFAULT_PMAX = 97

GENERATOR_CYCLES = {
    "rho": [(1, 2, 3, 4, 5, 6, 7, 8), (9, 10, 11, 12, 13, 14, 15, 16)],
    "sigma": [(1, 14, 7, 12, 5, 10, 3, 16), (2, 11, 8, 9, 6, 15, 4, 13)],
    "psi": [(1, 14, 5, 10), (2, 9, 6, 13), (3, 12, 7, 16), (4, 15, 8, 11)],
    "tau": [(1, 9), (2, 14), (3, 11), (4, 16), (5, 13), (6, 10), (7, 15), (8, 12)],
    "eta": [(1, 9), (2, 12), (3, 15), (4, 10), (5, 13), (6, 16), (7, 11), (8, 14)],
    "omega": [(2, 8, 9), (3, 16, 14), (4, 13, 6), (7, 12, 10)],
}

# letter used for the transposed homology matrix of each generator
MATRIX_LETTER = {"rho": "R", "sigma": "S", "psi": "P", "tau": "T", "eta": "E", "omega": "O"}

GOLDEN = {
    "R": """
     1  0  0  0  0  0  0  0  0
    -1  0  1  0  0  0  0  0  0
     1  0  0  1  0  0  0  0  0
     0  0  0  0  1  0  0  0  0
    -1  0  0  0  0  1  0  0  0
     1  0  0  0  0  0  1  0  0
     0  0  0  0  0  0  0  1  0
    -1  0  0  0  0  0  0  0  1
     1  1  0  0  0  0  0  0  0
    """,
    "S": """
     0 -1 -1 -1 -1 -1 -1 -1 -1
     0  0  0  1  1  1  0  0  0
    -1  0  0 -1 -1 -1 -1 -1  0
     0  0  0  0  0  1  1  1  0
     0  0  1  1  1  0  0  0  0
     0  0 -1 -1 -1 -1 -1  0  0
     0  0  0  0  1  1  1  0  0
     0  1  1  1  0  0  0  0  0
     0 -1 -1 -1 -1 -1  0  0  0
    """,
    "P": """
     0  1  1  1  1  1  1  1  1
     0  0  0  0  0  0 -1 -1 -1
     0  0  0  0  1  1  1  1  1
     0  0  0  0 -1 -1 -1  0  0
     0 -1  0  0  0  0  0 -1 -1
     0  1  0  0  0  1  1  1  1
     0  0  0  0  0 -1 -1 -1  0
     1 -1 -1  0  0  0  0  0 -1
     0  1  1  0  0  0  1  1  1
    """,
    "T": """
     0 -1 -1 -1 -1 -1 -1 -1 -1
     0  0  0  0  0  0  1  1  1
     0 -1 -1  0  0  0 -1 -1 -1
    -1  1  1  0  0  0  0  0  1
     0  0  0  0  0  1  1  1  0
     0 -1  0  0  0 -1 -1 -1 -1
     0  1  0  0  0  0  0  1  1
     0  0  0  0  1  1  1  0  0
     0  0  0  0 -1 -1 -1 -1 -1
    """,
    "E": """
     0  1  1  1  1  1  1  1  1
     0 -1 -1 -1  0  0  0  0  0
     0  1  1  1  0  0  0  1  1
     0 -1  0  0  0  0  0 -1 -1
     0  0 -1 -1 -1  0  0  0  0
     0  1  1  1  1  0  0  0  1
     1 -1 -1  0  0  0  0  0 -1
     0  0  0 -1 -1 -1  0  0  0
     0  1  1  1  1  1  0  0  0
    """,
    "O": """
     0  0 -1  0  0  0 -1  0  0
     0 -1  0  0  0  0  0 -1 -1
     1  0 -1  0  0  0  0  1  0
    -1  0  1  0  0  0  0  0  0
     0  0  0  0  0  1  1  0  0
     0  0 -1 -1 -1 -1 -1  0  0
     0  0  1  1  0  0  0  0  0
     0  0  0  0  0  0  1  0  0
     0  1  0  0  0  0 -1  0  0
    """,
}


class GoldenMismatch(AssertionError):
    pass


class CrossCheckError(AssertionError):
    pass


def golden_integer(letter: str) -> list[list[int]]:
    return [[int(x) for x in line.split()] for line in GOLDEN[letter].strip().splitlines()]


# --------------------------------------------------------------------------
# groups


@functools.lru_cache(maxsize=None)
def generators() -> dict[str, Perm]:
    return {k: Perm.from_cycles(N_VERTICES, c) for k, c in GENERATOR_CYCLES.items()}


@functools.lru_cache(maxsize=None)
def base_graph() -> Graph:
    return gp_graph(8, 3)


@functools.lru_cache(maxsize=None)
def automorphism_group() -> PermGroup:
    g = generators()
    return closure([g["rho"], g["omega"], g["sigma"]])


@functools.lru_cache(maxsize=None)
def named_subgroups() -> dict[str, PermGroup]:
    """H, M, S, G0..G3, K1, K2, the whole group G and the conjugates of S and G1..G3."""
    g = generators()
    rho, sigma, psi, tau, eta, omega = (g[k] for k in ("rho", "sigma", "psi", "tau", "eta", "omega"))
    rho2 = rho * rho
    out = {
        "G": automorphism_group(),
        "H": closure([rho2, omega]),
        "M": closure([rho2, omega, sigma]),
        "K1": closure([rho2, omega, tau]),
        "K2": closure([rho2, omega, eta]),
        "S": closure([rho, psi, tau]),
        "G0": closure([rho2, psi, tau]),
        "G1": closure([rho, psi]),
        "G2": closure([rho, tau]),
        "G3": closure([sigma, eta]),
    }
    w2 = omega * omega
    out["S^w"] = conjugate(out["S"], omega)
    out["S^w2"] = conjugate(out["S"], w2)
    for k in ("G1", "G2", "G3"):
        out[f"{k}^w"] = conjugate(out[k], omega)
        out[f"{k}^w2"] = conjugate(out[k], w2)
    return out


MINIMAL_VT = ("G0", "G1", "G2", "G3", "G1^w", "G2^w", "G3^w", "G1^w2", "G2^w2", "G3^w2")
LIFT_TAGS = ("H", "M", "K1", "K2", "G")


def transversal() -> tuple[Perm, ...]:
    """Coset representatives of H in G: id, rho, tau, sigma."""
    g = generators()
    return (Perm.identity(N_VERTICES), g["rho"], g["tau"], g["sigma"])


def census_subgroups():
    """The proper vertex- and/or edge-transitive subgroups, with names attached."""
    named = named_subgroups()
    by_set = {grp._set: name for name, grp in named.items() if name != "G"}
    entries = subgroup_census(automorphism_group(), base_graph())
    for e in entries:
        e.name = by_set.get(e.group._set)
    return entries


@functools.lru_cache(maxsize=None)
def corpus_context(p: int) -> SymmetryContext:
    check_prime(p)
    g = generators()
    named = named_subgroups()
    rep = HomologyRep(mk_tree(), p)
    return SymmetryContext(
        rep=rep,
        group=automorphism_group(),
        edge_gens=(g["rho"] * g["rho"], g["omega"]),
        vertex_groups=tuple(named[k].generators for k in MINIMAL_VT),
        transversal=transversal(),
        named={k: named[k] for k in LIFT_TAGS},
        core="H",
    )


def paper_matrices(p: int) -> dict[str, FpMatrix]:
    """R, S, P, T, E, O computed from the automorphisms and checked against the golden displays."""
    check_prime(p)
    rep = corpus_context(p).rep
    out = {}
    diffs = []
    for name, perm in generators().items():
        letter = MATRIX_LETTER[name]
        m = rep.matrix(perm)
        gold = golden_integer(letter)
        for i, (row, grow) in enumerate(zip(m.rows, gold)):
            for j, (a, b) in enumerate(zip(row, grow)):
                if a != b % p:
                    diffs.append(f"{letter}[{i + 1},{j + 1}]: computed {a}, expected {b % p}")
        out[letter] = m
    if diffs:
        raise GoldenMismatch(f"homology matrices differ from golden data mod {p}:\n" + "\n".join(diffs))
    return out


def edge_matrices(p: int) -> list[FpMatrix]:
    m = paper_matrices(p)
    return [m["R"] @ m["R"], m["O"]]


# --------------------------------------------------------------------------
# closed forms


def solve_alpha_beta(p: int) -> list[tuple[int, int]]:
    """All (a, b) with a^2 + b^2 = -1 mod p, for p = 3 mod 4.

    A base solution is found by scanning a; the rest are its images under
    the rotations parametrized by r in Z_p and infinity.  The result is
    compared against brute force before returning.
    """
    check_prime(p)
    if p % 4 != 3:
        raise ValueError("the rotation parametrization needs p = 3 mod 4")
    a0 = b0 = None
    for a in range(p):
        b = fp_sqrt(-1 - a * a, p)
        if b is not None:
            a0, b0 = a, b
            break
    sols = {(a0, b0)}
    for r in range(p):
        d = fp_inv(r * r + 1, p)
        c, s = (r * r - 1) * d % p, 2 * r * d % p
        sols.add(((c * a0 - s * b0) % p, (s * a0 + c * b0) % p))
    brute = {(a, b) for a in range(p) for b in range(p) if (a * a + b * b + 1) % p == 0}
    if sols != brute:
        raise ArithmeticError(f"rotation orbit misses solutions mod {p}")
    return sorted(sols)


def sqrt_minus_one(p: int) -> int | None:
    return fp_sqrt(p - 1, p) if p % 4 == 1 else None


def sqrt_minus_three(p: int) -> int | None:
    """The coefficient c with v2 +/- c*v3 spanning the O-eigenlines (c^2 = -3)."""
    return fp_sqrt(-3, p) if p > 3 and p % 3 == 1 else None


def _vec(values: Sequence[int], p: int) -> tuple[int, ...]:
    return tuple(v % p for v in values)


def _lin(p: int, *terms) -> tuple[int, ...]:
    out = [0] * RANK
    for c, v in terms:
        for k in range(RANK):
            out[k] += c * v[k]
    return _vec(out, p)


def basis_vectors(p: int) -> dict[str, tuple[int, ...]]:
    """Named column vectors of the closed-form tables for prime ``p``."""
    if p == 2:
        raw = {
            "b1": (0, 1, 0, 1, 0, 1, 0, 1, 0),
            "b2": (0, 0, 1, 0, 1, 0, 1, 0, 1),
            "b3": (1, 0, 1, 0, 0, 1, 0, 0, 1),
            "v1": (0, 1, 0, 0, 0, 1, 0, 0, 0),
            "u1": (0, 0, 1, 0, 0, 0, 1, 0, 0),
            "v2": (0, 1, 0, 0, 0, 0, 0, 1, 0),
            "u2": (0, 0, 1, 0, 0, 0, 0, 0, 1),
            "v3": (0, 1, 0, 0, 0, 0, 0, 0, 0),
            "u3": (0, 0, 1, 0, 0, 0, 0, 0, 0),
            "b": (1, 0, 0, 1, 0, 1, 1, 1, 1),
        }
        return {k: _vec(v, 2) for k, v in raw.items()}
    out = {
        "v1": _vec((-2, 1, -1, 1, 1, -1, 1, 1, -1), p),
        "v2": _vec((-4, 1, -3, 1, 1, -3, 1, 1, -3), p),
        "v3": _vec((0, 1, -1, 1, -1, 1, -1, 1, -1), p),
        "u1": _vec((0, 1, 0, -1, 0, 1, 0, -1, 0), p),
        "u2": _vec((0, 0, 1, 0, -1, 0, 1, 0, -1), p),
        "c1": _vec((0, 1, 0, 0, 0, -1, 0, 0, 0), p),
        "c2": _vec((0, 0, 1, 0, 0, 0, -1, 0, 0), p),
        "c3": _vec((0, 0, 0, 1, 0, 0, 0, -1, 0), p),
        "c4": _vec((0, 0, 0, 0, 1, 0, 0, 0, -1), p),
    }
    i = sqrt_minus_one(p)
    if i is not None:
        out["b1"] = _vec((0, 1, 0, i, 0, -1, 0, -i, 0), p)
        out["b2"] = _vec((0, 0, 1, 0, i, 0, -1, 0, -i), p)
        out["b3"] = _vec((0, i, -i - 1, 1, i - 1, -i, i + 1, -1, -i + 1), p)
        out["b4"] = _vec((0, i + 1, -1, -i + 1, i, -i - 1, 1, i - 1, -i), p)
    c = sqrt_minus_three(p)
    if c is not None:
        out["v2+"] = _lin(p, (1, out["v2"]), (c, out["v3"]))
        out["v2-"] = _lin(p, (1, out["v2"]), (-c, out["v3"]))
    return out


def u_s_rows(s: int | None, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Spanning rows of U(s); ``s=None`` stands for infinity."""
    v = basis_vectors(p)
    if s is None:
        return v["b1"], v["b3"]
    return _lin(p, (s, v["b1"]), (1, v["b2"])), _lin(p, (s, v["b3"]), (1, v["b4"]))


def w_alpha_beta_rows(a: int, b: int, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    v = basis_vectors(p)
    c1, c2, c3, c4 = v["c1"], v["c2"], v["c3"], v["c4"]
    w1 = _lin(p, (a + 1, c1), (-1, c2), (b, c3), (1, c4))
    w2 = _lin(p, (b, c1), (1, c2), (-(a + 1), c3), (1, c4))
    return w1, w2


@dataclass(frozen=True)
class ClosedForm:
    """One instance of a tabulated invariant subspace."""

    name: str
    family: str
    param: tuple | None
    minimal: bool
    rows: tuple[tuple[int, ...], ...]
    subspace: Subspace

    def param_key(self):
        return () if self.param is None else self.param


def format_param(family_kind: str, param: tuple, p: int) -> str:
    if family_kind == "U_s":
        return "inf" if param[0] == p else str(param[0])
    return ",".join(map(str, param))


# Non-minimal sums shared by both odd regimes with p > 3.  "X" is the
# 4-dimensional block L(i,-i) or Ker(R^4+I), "Y" the 2-dimensional family.
# Condition "1": p = 1 mod 3, "2": p = 2 mod 3, None: always.
_ODD_NONMINIMAL = (
    ("U2", ("U2",), "1"),
    ("U1+Y", ("U1", "Y"), "1"),
    ("U1'+Y", ("U1'", "Y"), "1"),
    ("U3+U1", ("U3", "U1"), "1"),
    ("U3+U1'", ("U3", "U1'"), "1"),
    ("U2+Y", ("U2", "Y"), None),
    ("X", ("X",), None),
    ("X+U1", ("X", "U1"), "1"),
    ("X+U1'", ("X", "U1'"), "1"),
    ("L(1,-1)", ("L(1,-1)",), None),
    ("U3+Y", ("U3", "Y"), None),
    ("U3+Y+U1", ("U3", "Y", "U1"), "1"),
    ("U3+Y+U1'", ("U3", "Y", "U1'"), "1"),
    ("X+U2", ("X", "U2"), None),
    ("L(1,-1)+Y", ("L(1,-1)", "Y"), None),
    ("X+U3", ("X", "U3"), None),
    ("X+U3+U1", ("X", "U3", "U1"), "1"),
    ("X+U3+U1'", ("X", "U3", "U1'"), "1"),
)

_P3_NONMINIMAL = (
    ("U2", ("U2",)),
    ("U+Y", ("U", "Y")),
    ("U3+U", ("U3", "U")),
    ("U2+Y", ("U2", "Y")),
    ("X", ("X",)),
    ("X+U", ("X", "U")),
    ("L(1,-1)", ("L(1,-1)",)),
    ("U3+Y", ("U3", "Y")),
    ("U3+Y+U", ("U3", "Y", "U")),
    ("X+U2", ("X", "U2")),
    ("L(1,-1)+Y", ("L(1,-1)", "Y")),
    ("X+U3", ("X", "U3")),
    ("X+U3+U", ("X", "U3", "U")),
)

_P2_TABLE = (
    ("W2", ("b1", "b2"), True),
    ("W3", ("b1", "b2", "b"), False),
    ("W4", ("b1", "b2", "v1", "u1"), False),
    ("W5", ("b1", "b2", "v1", "u1", "b"), False),
    ("W6", ("b1", "b2", "v1", "u1", "b3+v2", "b3+u2"), False),
    ("W7", ("b1", "b2", "v1", "u1", "v2", "u2", "b"), False),
)


def _make(name, family, param, minimal, rows, p) -> ClosedForm:
    rows = tuple(tuple(r) for r in rows)
    return ClosedForm(name, family, param, minimal, rows, span(rows, RANK, p))


def _closed_p2() -> list[ClosedForm]:
    v = basis_vectors(2)
    v["b3+v2"] = _lin(2, (1, v["b3"]), (1, v["v2"]))
    v["b3+u2"] = _lin(2, (1, v["b3"]), (1, v["u2"]))
    return [_make(name, name, None, minimal, [v[k] for k in keys], 2) for name, keys, minimal in _P2_TABLE]


def _odd_components(p: int) -> tuple[dict[str, tuple], str, str, list[tuple[tuple, tuple]]]:
    """Fixed components by name, the names of X and Y, and Y's (param, rows) list."""
    v = basis_vectors(p)
    comp = {
        "U3": (v["v1"], v["u1"], v["u2"]),
        "U2": (v["v2"], v["v3"]),
        "L(1,-1)": (v["v1"], v["v2"], v["v3"], v["u1"], v["u2"]),
    }
    if "v2+" in v:
        comp["U1"] = (v["v2+"],)
        comp["U1'"] = (v["v2-"],)
    if p == 3:
        comp["U"] = (v["v2"],)
    if p % 4 == 1:
        comp["X"] = (v["b1"], v["b2"], v["b3"], v["b4"])
        ys = [((s,), u_s_rows(s, p)) for s in range(p)] + [((p,), u_s_rows(None, p))]
        return comp, "L(i,-i)", "U_s", ys
    comp["X"] = (v["c1"], v["c2"], v["c3"], v["c4"])
    ys = [((a, b), w_alpha_beta_rows(a, b, p)) for a, b in solve_alpha_beta(p)]
    return comp, "Ker(R4+I)", "U_alpha_beta", ys


def _closed_odd(p: int) -> list[ClosedForm]:
    comp, xname, yname, ys = _odd_components(p)
    out = []

    def label(token: str) -> str:
        return {"X": xname, "Y": yname}.get(token, token)

    def emit(name_tokens: Sequence[str], minimal: bool):
        family = "+".join(label(t) for t in name_tokens)
        if "Y" in name_tokens:
            for param, yrows in ys:
                rows = [r for t in name_tokens for r in (yrows if t == "Y" else comp[t])]
                pname = f"{yname}({format_param(yname, param, p)})"
                name = "+".join(pname if t == "Y" else label(t) for t in name_tokens)
                out.append(_make(name, family, param, minimal, rows, p))
        else:
            rows = [r for t in name_tokens for r in comp[t]]
            out.append(_make(family, family, None, minimal, rows, p))

    if p == 3:
        for toks in (("U",), ("Y",), ("U3",)):
            emit(toks, True)
        for _, toks in _P3_NONMINIMAL:
            emit(toks, False)
        return out
    one_mod_3 = p % 3 == 1
    emit(("U3",), True)
    if one_mod_3:
        emit(("U1",), True)
        emit(("U1'",), True)
    else:
        emit(("U2",), True)
    emit(("Y",), True)
    for _, toks, cond in _ODD_NONMINIMAL:
        if cond is None or (cond == "1") == one_mod_3:
            emit(toks, False)
    return out


@functools.lru_cache(maxsize=None)
def closed_form_subspaces(p: int) -> tuple[ClosedForm, ...]:
    """Every tabulated proper nonzero invariant subspace of <R^2, O> for prime ``p``."""
    check_prime(p)
    return tuple(_closed_p2() if p == 2 else _closed_odd(p))


def closed_form_minimal(p: int) -> list[Subspace]:
    return sorted(c.subspace for c in closed_form_subspaces(p) if c.minimal)


def closed_form_lattice(p: int) -> list[Subspace]:
    out = {c.subspace for c in closed_form_subspaces(p)}
    out |= {Subspace.zero(RANK, p), Subspace.full(RANK, p)}
    return sorted(out)


# --------------------------------------------------------------------------
# census


def formula_count(p: int) -> int:
    """Expected number of minimal semisymmetric classes, by residue of p mod 24."""
    check_prime(p)
    if p == 2:
        return 0
    if p % 4 == 1:
        return (p - 1) // 4 + (1 if p % 24 == 1 else 0)
    return (p + 1) // 4 + (1 if p % 24 == 19 else 0)


@dataclass
class VoltageTable:
    class_name: str
    family: int | None
    rows: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def render(self) -> str:
        heads = ["z(x)"] + [f"z(x{j})" for j in range(1, RANK)]
        cols = [" ".join(str(a) for a in self.column(j)) for j in range(RANK)]
        width = [max(len(h), len(c)) for h, c in zip(heads, cols)]
        line1 = "  ".join(h.rjust(w) for h, w in zip(heads, width))
        line2 = "  ".join(c.rjust(w) for c, w in zip(cols, width))
        return f"{line1}\n{line2}"


@dataclass
class CensusReport:
    p: int
    classes: list[ProjectionClass]
    counts: dict[str, int]
    formula_expected: int
    lattice_size: int
    minimal_count: int
    notes: list[str] = field(default_factory=list)

    @property
    def semisymmetric_classes(self) -> list[ProjectionClass]:
        return [c for c in self.classes if c.minimal_semisymmetric]

    @property
    def matches_formula(self) -> bool:
        return self.counts["minimal_semisymmetric"] == self.formula_expected

    def find(self, name: str) -> ProjectionClass:
        return resolve_class(self, name)


_PARAM = re.compile(r"\(([^()]*)\)$")


def _family_of(name: str) -> str:
    return "+".join(_PARAM.sub("", part) if part.startswith("U_") else part for part in name.split("+"))


def _name_key(c: ClosedForm):
    # unprimed summands sort before primed ones
    return (c.family.replace("'", "~"), c.param_key())


def _family_index(p: int, dim: int) -> int | None:
    if p == 2 or p == 3 and dim != 2:
        return None
    if dim == 2:
        return 1 if p % 4 == 1 else 2
    if dim == 3:
        return 3 if p % 4 == 1 else 4
    return None


def _voltage_table(cls: ProjectionClass, form: ClosedForm | None, p: int) -> VoltageTable:
    rows = form.rows if form is not None else cls.representative.basis
    table = VoltageTable(cls.name or "", _family_index(p, cls.dim), tuple(rows))
    check_voltage_table(table, cls.representative if form is None else form.subspace, p)
    return table


def check_voltage_table(table: VoltageTable, target: Subspace, p: int) -> None:
    got = span(table.rows, RANK, p)
    if got != target or got.dim != table.d:
        raise CrossCheckError(f"voltage table for {table.class_name} does not span its class subspace")


def _s_fixed_note(p: int, classes: Iterable[ProjectionClass]) -> str | None:
    if p % 8 != 1:
        return None
    i = sqrt_minus_one(p)
    nu = fp_sqrt(-i, p)
    smat = paper_matrices(p)["S"]
    fixed = sorted(
        s for s in range(p + 1) if is_invariant(span(u_s_rows(None if s == p else s, p), RANK, p), smat)
    )
    cands = {}
    for label, sign in (("-1+nu-nu^2", (-1, 1)), ("-1-nu-nu^2", (-1, -1)), ("1+nu-nu^2", (1, 1))):
        cands[label] = (sign[0] + sign[1] * nu - nu * nu) % p
    hits = [k for k, v in cands.items() if v in fixed]
    return f"p={p}: S fixes U(s) exactly for s in {fixed}; matching candidate values: {', '.join(hits) or 'none'}"


@functools.lru_cache(maxsize=None)
def full_census(p: int, pmax: int = DEFAULT_PMAX) -> CensusReport:
    """Classify the minimal semisymmetric p-elementary abelian covers of GP(8, 3)."""
    check_prime(p)
    if p > pmax:
        raise ValueError(f"p={p} exceeds the configured bound {pmax}")
    ctx = corpus_context(p)
    gens = edge_matrices(p)
    minimal = minimal_common(gens)
    lattice = full_lattice(gens, group_order=matrix_group_order(gens))
    closed = closed_form_subspaces(p)
    _cross_check(minimal, closed_form_minimal(p), "minimal", p)
    _cross_check(lattice, closed_form_lattice(p), "lattice", p)

    by_space: dict[Subspace, ClosedForm] = {}
    for c in sorted(closed, key=_name_key):
        by_space.setdefault(c.subspace, c)
    proper = [s for s in lattice if 0 < s.dim < RANK]
    classes = orbit_reduce(proper, ctx)
    for cls in classes:
        cls.flags = classify_lifting(cls.representative, ctx)
        forms = [by_space[s] for s in cls.orbit if s in by_space]
        if forms:
            best = min(forms, key=_name_key)
            cls.name = best.name
            cls.info["form"] = best
        cls.info["cover_order"] = N_VERTICES * p**cls.dim
    minimal_semisymmetric(classes, lattice, ctx)
    minimal_set = set(minimal)
    for cls in classes:
        if cls.minimal_semisymmetric:
            cls.info["voltage_table"] = _voltage_table(cls, cls.info.get("form"), p)
    semis = [c for c in classes if c.minimal_semisymmetric]
    met = sum(1 for c in semis if c.representative in minimal_set)
    counts = {
        "minimal_semisymmetric": len(semis),
        "minimal_edge_transitive_semisymmetric": met,
        "extra_non_minimal_ET": len(semis) - met,
        "semisymmetric": sum(1 for c in classes if c.flags.semisymmetric),
    }
    notes = []
    note = _s_fixed_note(p, classes)
    if note:
        notes.append(note)
    return CensusReport(p, classes, counts, formula_count(p), len(lattice), len(minimal), notes)


def _cross_check(generic: Sequence[Subspace], closed: Sequence[Subspace], what: str, p: int) -> None:
    g, c = set(generic), set(closed)
    if g != c:
        extra = sorted(g - c)
        missing = sorted(c - g)
        parts = []
        if extra:
            parts.append(f"found but not tabulated: {extra[0].basis}")
        if missing:
            parts.append(f"tabulated but not found: {missing[0].basis}")
        raise CrossCheckError(f"{what} mismatch at p={p} ({len(g)} vs {len(c)}); " + "; ".join(parts))


def resolve_class(report: CensusReport, name: str) -> ProjectionClass:
    """Look up a class by exact name, by any orbit member's name, or by ``<family>_min``."""
    name = name.replace("prime", "'")
    for c in report.classes:
        if c.name == name:
            return c
    closed = {f.name: f.subspace for f in closed_form_subspaces(report.p)}
    if name in closed:
        target = closed[name]
        for c in report.classes:
            if target in c.orbit:
                return c
    if name.endswith("_min"):
        fam = name[: -len("_min")]
        pool = [c for c in report.classes if c.name and _family_of(c.name) == fam]
        semis = [c for c in pool if c.minimal_semisymmetric]
        for group in (semis, pool):
            if group:
                return min(group, key=lambda c: _name_key(c.info["form"]))
    known = ", ".join(c.name or "?" for c in report.classes)
    raise KeyError(f"no class {name!r} at p={report.p}; known: {known}")


def emit_voltage_tables(report: CensusReport) -> list[VoltageTable]:
    tables = []
    for c in report.semisymmetric_classes:
        t = c.info["voltage_table"]
        check_voltage_table(t, span(t.rows, RANK, report.p), report.p)
        if span(t.rows, RANK, report.p) not in c.orbit:
            raise CrossCheckError(f"voltage table for {c.name} spans a subspace outside its class")
        tables.append(t)
    return tables


@dataclass(frozen=True)
class FormulaRow:
    p: int
    computed: int
    expected: int

    @property
    def match(self) -> bool:
        return self.computed == self.expected


def primes_upto(n: int) -> list[int]:
    from .gfp import is_prime

    return [q for q in range(2, n + 1) if is_prime(q)]


def verify_formula(p_max: int, pmax_bound: int = DEFAULT_PMAX) -> list[FormulaRow]:
    if p_max > pmax_bound:
        raise ValueError(f"p_max={p_max} exceeds the configured bound {pmax_bound}")
    return [
        FormulaRow(q, r.counts["minimal_semisymmetric"], r.formula_expected)
        for q in primes_upto(p_max)
        for r in [full_census(q, pmax_bound)]
    ]


# --------------------------------------------------------------------------
# rendering


def class_record(c: ProjectionClass, p: int) -> dict:
    rec = {
        "name": c.name,
        "dimension": c.dim,
        "basis": [list(r) for r in c.representative.basis],
        "orbit_size": len(c.orbit),
        "flags": dict(c.flags.as_dict(), minimal_semisymmetric=c.minimal_semisymmetric),
        "largest_lift": c.flags.largest_lift,
        "cover_order": c.info["cover_order"],
    }
    t = c.info.get("voltage_table")
    rec["voltage_table"] = [list(r) for r in t.rows] if t else None
    return rec


def report_dict(report: CensusReport, all_classes: bool = False) -> dict:
    chosen = report.classes if all_classes else report.semisymmetric_classes
    return {
        "prime": report.p,
        "lattice_size": report.lattice_size,
        "minimal_invariant_subspaces": report.minimal_count,
        "counts": dict(report.counts),
        "formula_expected": report.formula_expected,
        "classes": [class_record(c, report.p) for c in chosen],
        "notes": list(report.notes),
    }


def render_json(report: CensusReport, all_classes: bool = False) -> str:
    return json.dumps(report_dict(report, all_classes), indent=2, sort_keys=True)


def render_text(report: CensusReport) -> str:
    lines = [
        f"prime: {report.p}",
        f"invariant subspaces: {report.lattice_size} (minimal: {report.minimal_count})",
        f"isomorphism classes of proper projections: {len(report.classes)}",
    ]
    for c in report.classes:
        tag = "minimal semisymmetric" if c.minimal_semisymmetric else (
            "semisymmetric" if c.flags.semisymmetric else "vertex-transitive"
        )
        lines.append(f"  {c.name:<28} dim {c.dim}  orbit {len(c.orbit)}  lift {c.flags.largest_lift:<2}  {tag}")
    lines.append(f"semisymmetric classes: {report.counts['minimal_semisymmetric']}")
    lines.append(f"expected by formula: {report.formula_expected}")
    for c in report.semisymmetric_classes:
        lines.append("")
        lines.append(f"{c.name}  (cover on {c.info['cover_order']} vertices, largest lift {c.flags.largest_lift})")
        lines.append(c.info["voltage_table"].render())
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines)
