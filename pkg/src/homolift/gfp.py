"""Arithmetic in the prime field Z_p and in Z_p[x].

Scalars are plain Python ints reduced into ``range(p)``; the modulus travels
alongside them.  Polynomials are :class:`FpPoly` values holding a tuple of
coefficients, lowest degree first, with trailing zeros stripped.
"""

from __future__ import annotations

import functools
from itertools import count


class NotInvertible(ZeroDivisionError):
    pass


@functools.lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus {p!r} is not prime")
    return p


def fp_inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise NotInvertible(f"0 is not invertible mod {p}")
    return pow(a, p - 2, p)


def legendre(a: int, p: int) -> int:
    """Return 1, -1 or 0 according to whether ``a`` is a nonzero square mod ``p``."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return 1
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def fp_sqrt(a: int, p: int) -> int | None:
    """Square root of ``a`` mod ``p`` by Tonelli-Shanks.

    Returns the smaller of the two roots ``r``, ``p - r``, or ``None`` when
    ``a`` is a nonresidue.  The nonresidue used by the algorithm is the first
    one found scanning upward from 2, so the result is deterministic.
    """
    a %= p
    if a == 0 or p == 2:
        return a
    if legendre(a, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in count(2) if legendre(z, p) == -1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def signed(a: int, p: int) -> int:
    """Representative of ``a`` mod ``p`` in ``(-p/2, p/2]``."""
    a %= p
    return a - p if a > p // 2 else a


class FpPoly:
    """Immutable univariate polynomial over Z_p."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p: int):
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FpPoly is immutable")

    @classmethod
    def x(cls, p: int) -> FpPoly:
        return cls((0, 1), p)

    @classmethod
    def const(cls, c: int, p: int) -> FpPoly:
        return cls((c,), p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def monic(self) -> FpPoly:
        if not self.coeffs or self.lead == 1:
            return self
        inv = fp_inv(self.lead, self.p)
        return FpPoly([c * inv for c in self.coeffs], self.p)

    def _coerce(self, other) -> FpPoly:
        if isinstance(other, FpPoly):
            if other.p != self.p:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return FpPoly((other,), self.p)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = FpPoly((other,), self.p)
        if not isinstance(other, FpPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __lt__(self, other: FpPoly) -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.degree, tuple(reversed(self.coeffs)))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return FpPoly(out, self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpPoly([-c for c in self.coeffs], self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FpPoly((), self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return FpPoly(out, self.p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divmod(self, self._coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._coerce(other))[1]

    def __pow__(self, e: int):
        result = FpPoly((1,), self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, mod: FpPoly) -> FpPoly:
        result = FpPoly((1,), self.p)
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result

    def derivative(self) -> FpPoly:
        return FpPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.p)

    def __call__(self, value: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * value + c) % self.p
        return acc

    def __repr__(self):
        return f"FpPoly({list(self.coeffs)}, p={self.p})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = signed(self.coeffs[k], self.p)
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_divmod(f: FpPoly, g: FpPoly) -> tuple[FpPoly, FpPoly]:
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p = f.p
    rem = list(f.coeffs)
    dg = g.degree
    inv = fp_inv(g.lead, p)
    if len(rem) <= dg:
        return FpPoly((), p), f
    quot = [0] * (len(rem) - dg)
    gc = g.coeffs
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k] % p
        if c == 0:
            continue
        q = c * inv % p
        quot[k - dg] = q
        for j in range(dg + 1):
            rem[k - dg + j] -= q * gc[j]
    return FpPoly(quot, p), FpPoly(rem[:dg], p)


def poly_gcd(f: FpPoly, g: FpPoly) -> FpPoly:
    """Monic gcd of ``f`` and ``g``."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_lcm(f: FpPoly, g: FpPoly) -> FpPoly:
    return (f * g // poly_gcd(f, g)).monic()


def _pth_root(f: FpPoly) -> FpPoly:
    p = f.p
    return FpPoly(f.coeffs[::p], p)


def _squarefree(f: FpPoly) -> list[tuple[FpPoly, int]]:
    p = f.p
    out: list[tuple[FpPoly, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, m * p) for g, m in _squarefree(_pth_root(f))]
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z.monic(), i))
        i += 1
        w, c = y, c // y
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _squarefree(_pth_root(c.monic())))
    return out


def _distinct_degree(f: FpPoly) -> list[tuple[FpPoly, int]]:
    p = f.p
    x = FpPoly.x(p)
    out = []
    h = x
    d = 1
    while f.degree >= 2 * d:
        h = h.powmod(p, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
        d += 1
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _candidates(n: int, p: int):
    """Nonconstant polynomials of degree < n in increasing integer encoding."""
    for code in range(p, p**n):
        cs, k = [], code
        while k:
            cs.append(k % p)
            k //= p
        yield FpPoly(cs, p)


def _equal_degree(f: FpPoly, d: int) -> list[FpPoly]:
    if f.degree == d:
        return [f.monic()]
    p = f.p
    for a in _candidates(f.degree, p):
        if p == 2:
            t, acc = a % f, a % f
            for _ in range(d - 1):
                t = (t * t) % f
                acc = acc + t
            g = poly_gcd(f, acc)
        else:
            g = poly_gcd(f, a.powmod((p**d - 1) // 2, f) - 1)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d) + _equal_degree(f // g, d)
    raise ArithmeticError(f"failed to split {f}")  # unreachable for squarefree input


def poly_factor(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Factor ``f`` into monic irreducibles with multiplicities.

    Square-free decomposition, then distinct-degree, then equal-degree
    splitting with a deterministic sweep of candidate polynomials.  Output is
    sorted by ``(degree, coefficients)``.
    """
    if f.degree < 1:
        raise ValueError("cannot factor a constant polynomial")
    found: dict[FpPoly, int] = {}
    for sqf, mult in _squarefree(f.monic()):
        for block, d in _distinct_degree(sqf):
            for g in _equal_degree(block, d):
                found[g] = found.get(g, 0) + mult
    return sorted(found.items(), key=lambda gm: gm[0].sort_key())


def is_irreducible(f: FpPoly) -> bool:
    """Rabin-style test: gcd(f, x^(p^k) - x) = 1 for k < deg f and f | x^(p^n) - x."""
    n = f.degree
    if n < 1:
        return False
    p = f.p
    x = FpPoly.x(p)
    h = x
    for k in range(1, n):
        h = h.powmod(p, f)
        if poly_gcd(f, h - x).degree > 0:
            return False
    h = h.powmod(p, f)
    return (h - x) % f == FpPoly((), p)
