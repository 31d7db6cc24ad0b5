"""Dense exact linear algebra over Z_p.

Vectors are tuples of ints in ``range(p)``.  Matrices act on column vectors
from the left.  A :class:`Subspace` stores the reduced row echelon form of a
basis (one basis vector per row), so two subspaces are equal exactly when
their stored grids are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .gfp import FpPoly, fp_inv, poly_factor, poly_lcm, signed

Vector = tuple


class FpMatrix:
    """Immutable ``rows x cols`` matrix over Z_p."""

    __slots__ = ("rows", "p", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], p: int, ncols: int | None = None):
        rows = tuple(tuple(x % p for x in r) for r in rows)
        self.rows = rows
        self.p = p
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else (ncols or 0)
        if any(len(r) != self.ncols for r in rows):
            raise ValueError("ragged matrix")
        self._hash = None

    @classmethod
    def identity(cls, n: int, p: int) -> FpMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, p: int) -> FpMatrix:
        return cls([[0] * ncols for _ in range(nrows)], p, ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.p, self.ncols))
        return self._hash

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"FpMatrix({[list(r) for r in self.rows]}, p={self.p})"

    def __str__(self):
        return "\n".join(" ".join(f"{x:>3d}" for x in r) for r in self.signed())

    def signed(self) -> list[list[int]]:
        return [[signed(x, self.p) for x in r] for r in self.rows]

    @property
    def T(self) -> FpMatrix:
        return FpMatrix(zip(*self.rows), self.p, self.nrows) if self.rows else FpMatrix.zeros(self.ncols, 0, self.p)

    def __add__(self, other: FpMatrix) -> FpMatrix:
        return FpMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.p)

    def __sub__(self, other: FpMatrix) -> FpMatrix:
        return FpMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.p)

    def scale(self, c: int) -> FpMatrix:
        return FpMatrix([[c * a for a in r] for r in self.rows], self.p)

    def __neg__(self):
        return self.scale(-1)

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            if self.ncols != other.nrows or self.p != other.p:
                raise ValueError("incompatible matrices")
            cols = list(zip(*other.rows))
            p = self.p
            return FpMatrix(
                [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in self.rows],
                p,
                other.ncols,
            )
        return self.apply(other)

    def apply(self, v: Sequence[int]) -> Vector:
        p = self.p
        return tuple(sum(a * b for a, b in zip(r, v)) % p for r in self.rows)

    def __pow__(self, e: int) -> FpMatrix:
        if e < 0:
            return self.inverse() ** (-e)
        result = FpMatrix.identity(self.nrows, self.p)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def inverse(self) -> FpMatrix:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("only square matrices are invertible")
        aug = FpMatrix([r + tuple(int(i == j) for j in range(n)) for i, r in enumerate(self.rows)], self.p)
        red, rank, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return FpMatrix([r[n:] for r in red.rows], self.p)

    @property
    def rank(self) -> int:
        return rref(self)[1]


def rref(m: FpMatrix) -> tuple[FpMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``."""
    p = m.p
    rows = [list(r) for r in m.rows]
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = fp_inv(rows[r][c], p)
        rows[r] = [x * inv % p for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return FpMatrix(rows, p, m.ncols), r, pivots


class _Echelon:
    """Incrementally grown echelon basis; used by spin and span."""

    __slots__ = ("p", "rows")

    def __init__(self, p: int):
        self.p = p
        self.rows: list[tuple[int, list[int]]] = []  # (pivot column, row with pivot entry 1)

    def reduce(self, v) -> list[int]:
        p = self.p
        v = list(v)
        for c, row in self.rows:
            f = v[c]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v) -> list[int] | None:
        """Insert ``v``; returns the reduced vector if it was new, else None."""
        v = self.reduce(v)
        for c, x in enumerate(v):
            if x:
                if x != 1:
                    inv = fp_inv(x, self.p)
                    v = [a * inv % self.p for a in v]
                self.rows.append((c, v))
                self.rows.sort(key=lambda cr: cr[0])
                return v
        return None

    def __len__(self):
        return len(self.rows)


class Subspace:
    """A subspace of Z_p^n held as its canonical (RREF) basis grid."""

    __slots__ = ("n", "p", "basis", "_hash", "_pivots")

    def __init__(self, basis: Iterable[Sequence[int]], n: int, p: int, *, canonical: bool = False):
        self.n = n
        self.p = p
        if canonical:
            self.basis = tuple(tuple(r) for r in basis)
        else:
            rows = [tuple(r) for r in basis]
            if rows:
                red, rank, _ = rref(FpMatrix(rows, p, n))
                self.basis = red.rows[:rank]
            else:
                self.basis = ()
        self._hash = None
        self._pivots = None

    @classmethod
    def zero(cls, n: int, p: int) -> Subspace:
        return cls((), n, p, canonical=True)

    @classmethod
    def full(cls, n: int, p: int) -> Subspace:
        return cls(FpMatrix.identity(n, p).rows, n, p, canonical=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        if self._pivots is None:
            self._pivots = tuple(next(c for c, x in enumerate(r) if x) for r in self.basis)
        return self._pivots

    def as_matrix(self) -> FpMatrix:
        return FpMatrix(self.basis, self.p, self.n)

    def key(self):
        return (self.p, self.n, self.basis)

    def sort_key(self):
        return (self.dim, self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __lt__(self, other: Subspace) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, p={self.p}, basis={[list(r) for r in self.basis]})"

    def _check(self, other: Subspace):
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError("subspaces live in different ambient spaces")

    def reduce(self, v: Sequence[int]) -> list[int]:
        p = self.p
        v = list(v)
        for c, row in zip(self.pivots, self.basis):
            f = v[c] % p
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    def contains_vector(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, item) -> bool:
        if isinstance(item, Subspace):
            return contains(self, item)
        return self.contains_vector(item)

    def coordinates(self, v: Sequence[int]) -> list[int]:
        """Coefficients of ``v`` in the canonical basis (``v`` must lie in the subspace)."""
        if not self.contains_vector(v):
            raise ValueError("vector not in subspace")
        return [v[c] % self.p for c in self.pivots]

    def vectors(self) -> Iterator[Vector]:
        p, n = self.p, self.n
        for coeffs in product(range(p), repeat=self.dim):
            yield tuple(sum(c * r[j] for c, r in zip(coeffs, self.basis)) % p for j in range(n))

    def projective_points(self) -> Iterator[Vector]:
        """One nonzero vector per 1-dimensional subspace, first nonzero coefficient 1."""
        p, n, k = self.p, self.n, self.dim
        basis = self.basis
        for lead in range(k):
            for tail in product(range(p), repeat=k - lead - 1):
                v = list(basis[lead])
                for c, r in zip(tail, basis[lead + 1:]):
                    if c:
                        v = [a + c * b for a, b in zip(v, r)]
                yield tuple(a % p for a in v)

    def num_projective_points(self) -> int:
        return (self.p ** self.dim - 1) // (self.p - 1)

    def complement_basis(self) -> list[Vector]:
        """Standard basis vectors completing the canonical basis to the full space."""
        piv = set(self.pivots)
        return [tuple(int(i == j) for i in range(self.n)) for j in range(self.n) if j not in piv]

    def annihilator(self) -> Subspace:
        return kernel(self.as_matrix()) if self.dim else Subspace.full(self.n, self.p)


def span(vectors: Iterable[Sequence[int]], n: int, p: int) -> Subspace:
    return Subspace(list(vectors), n, p)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if not b.dim:
        return a
    if not a.dim:
        return b
    return Subspace(a.basis + b.basis, a.n, a.p)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if not a.dim or not b.dim:
        return Subspace.zero(a.n, a.p)
    return subspace_sum(a.annihilator(), b.annihilator()).annihilator()


def contains(a: Subspace, b: Subspace) -> bool:
    """True when ``b`` is a subspace of ``a``."""
    a._check(b)
    if b.dim > a.dim:
        return False
    return all(a.contains_vector(v) for v in b.basis)


def image(m: FpMatrix, a: Subspace) -> Subspace:
    if m.ncols != a.n or m.p != a.p:
        raise ValueError("matrix and subspace are incompatible")
    return Subspace([m.apply(v) for v in a.basis], m.nrows, a.p)


def kernel(m: FpMatrix) -> Subspace:
    """``{v : m v = 0}`` as a subspace of Z_p^cols."""
    p, n = m.p, m.ncols
    red, rank, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = -red.rows[r][f] % p
        basis.append(v)
    return Subspace(basis, n, p)


def spin(v: Sequence[int], mats: Sequence[FpMatrix]) -> Subspace:
    """Least subspace containing ``v`` and closed under every matrix in ``mats``."""
    m0 = mats[0]
    p, n = m0.p, m0.ncols
    ech = _Echelon(p)
    first = ech.add(v)
    if first is None:
        return Subspace.zero(n, p)
    rows_of = [m.rows for m in mats]
    queue = [first]
    while queue:
        w = queue.pop()
        for rows in rows_of:
            img = [sum(a * b for a, b in zip(r, w)) % p for r in rows]
            new = ech.add(img)
            if new is not None:
                queue.append(new)
                if len(ech) == n:
                    return Subspace.full(n, p)
    return Subspace([r for _, r in ech.rows], n, p)


def is_invariant(s: Subspace, m: FpMatrix) -> bool:
    return all(s.contains_vector(m.apply(v)) for v in s.basis)


def matrix_poly(f: FpPoly, m: FpMatrix) -> FpMatrix:
    """Evaluate ``f`` at the square matrix ``m`` by Horner's rule."""
    n, p = m.nrows, m.p
    acc = FpMatrix.zeros(n, n, p)
    ident = FpMatrix.identity(n, p)
    for c in reversed(f.coeffs):
        acc = acc @ m + ident.scale(c)
    return acc


def _square(m: FpMatrix):
    if m.nrows != m.ncols:
        raise ValueError("square matrix required")


def charpoly(m: FpMatrix) -> FpPoly:
    """Monic characteristic polynomial via Hessenberg reduction."""
    _square(m)
    p, n = m.p, m.nrows
    h = [list(r) for r in m.rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = fp_inv(h[j + 1][j], p)
        for k in range(j + 2, n):
            u = h[k][j] * inv % p
            if u:
                h[k] = [(a - u * b) % p for a, b in zip(h[k], h[j + 1])]
                for row in h:
                    row[j + 1] = (row[j + 1] + u * row[k]) % p
    x = FpPoly.x(p)
    polys = [FpPoly((1,), p)]
    for k in range(n):
        pk = (x - h[k][k]) * polys[k]
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * h[i + 1][i] % p
            if not prod:
                break
            pk = pk - polys[i] * (h[i][k] * prod % p)
        polys.append(pk)
    return polys[n]


def _annihilator(m: FpMatrix, v: Sequence[int]) -> FpPoly:
    """Monic least-degree f with f(m) v = 0 (Krylov sequence)."""
    p, n = m.p, m.nrows
    rows: list[tuple[int, list[int], list[int]]] = []  # (pivot, vector, combination)
    w = list(v)
    k = 0
    while True:
        vec, comb = [x % p for x in w], [0] * (n + 1)
        comb[k] = 1
        for c, rv, rc in rows:
            f = vec[c]
            if f:
                vec = [(a - f * b) % p for a, b in zip(vec, rv)]
                comb = [(a - f * b) % p for a, b in zip(comb, rc)]
        lead = next((c for c, a in enumerate(vec) if a), None)
        if lead is None:
            return FpPoly(comb[: k + 1], p)
        inv = fp_inv(vec[lead], p)
        rows.append((lead, [a * inv % p for a in vec], [a * inv % p for a in comb]))
        rows.sort(key=lambda t: t[0])
        w = m.apply(w)
        k += 1


def minpoly(m: FpMatrix) -> FpPoly:
    """Monic minimal polynomial: lcm of the annihilators of the standard basis."""
    _square(m)
    p, n = m.p, m.nrows
    acc = FpPoly((1,), p)
    for i in range(n):
        e = [0] * n
        e[i] = 1
        acc = poly_lcm(acc, _annihilator(m, e))
    return acc


@dataclass(frozen=True)
class PrimaryComponent:
    factor: FpPoly
    char_mult: int
    min_mult: int
    kernel: Subspace

    @property
    def degree(self) -> int:
        return self.factor.degree


def primary_decomposition(m: FpMatrix) -> list[PrimaryComponent]:
    """Split Z_p^n into ``Ker f_j(m)^{n_j}`` over the irreducible factors of the charpoly."""
    _square(m)
    min_mults = dict(poly_factor(minpoly(m)))
    out = []
    for f, mult in poly_factor(charpoly(m)):
        out.append(PrimaryComponent(f, mult, min_mults.get(f, 0), kernel(matrix_poly(f**mult, m))))
    return out
