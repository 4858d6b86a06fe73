"""Polynomials over GF(q) and the canonical-form invariants of a matrix.

A polynomial is a tuple of field elements, constant term first, with no
trailing zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np

from .field import GF
from .matrix import FFMatrix, rank

Poly = tuple


def trim(a) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(int(x) for x in a)


def deg(a: Poly) -> int:
    return len(a) - 1


def padd(F: GF, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim(F.add[x, y] for x, y in zip(a, b))


def psub(F: GF, a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim(F.sub[x, y] for x, y in zip(a, b))


def pscale(F: GF, a: Poly, c: int) -> Poly:
    return trim(F.mul[x, c] for x in a)


def pmul(F: GF, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = int(F.add[out[i + j], F.mul[x, y]])
    return trim(out)


def pdivmod(F: GF, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    lead_inv = int(F.inv[b[-1]])
    while len(r) >= len(b) and any(r):
        shift = len(r) - len(b)
        c = int(F.mul[r[-1], lead_inv])
        quo[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = int(F.sub[r[shift + i], F.mul[c, y]])
        r = list(trim(r))
    return trim(quo), trim(r)


def monic(F: GF, a: Poly) -> Poly:
    return pscale(F, a, int(F.inv[a[-1]])) if a else a


def pgcd(F: GF, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    return monic(F, a)


def ppow(F: GF, a: Poly, n: int) -> Poly:
    out = (1,)
    for _ in range(n):
        out = pmul(F, out, a)
    return out


def linear(F: GF, root: int) -> Poly:
    """t - root."""
    return trim((int(F.neg[root]), 1))


def poly_str(F: GF, a: Poly, var: str = "t") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mon = var if i == 1 else f"{var}^{i}"
            terms.append(mon if c == 1 else f"{c}*{mon}")
    return "+".join(terms)


def monic_polys(F: GF, degree: int):
    for tail in product(range(F.q), repeat=degree):
        yield tuple(tail) + (1,)


def factor(F: GF, a: Poly) -> Counter:
    """Factor a monic polynomial into monic irreducibles by trial division."""
    a = monic(F, a)
    out = Counter()
    d = 1
    while deg(a) >= 2 * d:
        found = False
        for f in monic_polys(F, d):
            quo, rem = pdivmod(F, a, f)
            if not rem:
                out[f] += 1
                a = quo
                found = True
                break
        if not found:
            d += 1
    if deg(a) >= 1:
        out[a] += 1
    return out


@dataclass(frozen=True)
class InvariantFactors:
    field: GF
    factors: tuple[Poly, ...]

    def __post_init__(self):
        for f, g in zip(self.factors, self.factors[1:]):
            if pdivmod(self.field, g, f)[1]:
                raise ValueError("invariant factors must form a divisibility chain")

    def minimal_polynomial(self) -> Poly:
        return self.factors[-1] if self.factors else (1,)

    def characteristic_polynomial(self) -> Poly:
        out = (1,)
        for f in self.factors:
            out = pmul(self.field, out, f)
        return out

    def elementary_divisors(self) -> Counter:
        out = Counter()
        for f in self.factors:
            for g, e in factor(self.field, f).items():
                out[ppow(self.field, g, e)] += 1
        return out

    def multiset(self) -> Counter:
        return Counter(self.factors)

    def strings(self) -> list[str]:
        return [poly_str(self.field, f) for f in self.factors]


def smith_diagonal(F: GF, A: list[list[Poly]]) -> list[Poly]:
    """Diagonal of the Smith normal form over GF(q)[t].

    Pivot: nonzero entry of least degree in the trailing block, ties broken by
    (row, column) order.
    """
    A = [list(r) for r in A]
    n = len(A)
    m = len(A[0]) if A else 0
    diag = []
    for k in range(min(n, m)):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, m):
                    if A[i][j] and (best is None or deg(A[i][j]) < deg(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return diag + [()] * (min(n, m) - k)
            i, j = best
            A[k], A[i] = A[i], A[k]
            for row in A:
                row[k], row[j] = row[j], row[k]
            piv = A[k][k]
            dirty = False
            for i in range(k + 1, n):
                if A[i][k]:
                    quo, rem = pdivmod(F, A[i][k], piv)
                    A[i] = [psub(F, x, pmul(F, quo, y)) for x, y in zip(A[i], A[k])]
                    dirty = dirty or bool(rem)
            for j in range(k + 1, m):
                if A[k][j]:
                    quo, rem = pdivmod(F, A[k][j], piv)
                    for row in A:
                        row[j] = psub(F, row[j], pmul(F, quo, row[k]))
                    dirty = dirty or bool(rem)
            if dirty:
                continue
            bad = next(((i, j) for i in range(k + 1, n) for j in range(k + 1, m)
                        if A[i][j] and pdivmod(F, A[i][j], piv)[1]), None)
            if bad is None:
                break
            A[k] = [padd(F, x, y) for x, y in zip(A[k], A[bad[0]])]
        diag.append(monic(F, A[k][k]))
    return diag


def char_matrix(m: FFMatrix) -> list[list[Poly]]:
    """t*I - m as a matrix of polynomials."""
    F = m.field
    out = []
    for i, row in enumerate(m.tolist()):
        out.append([trim((int(F.neg[x]), 1)) if i == j else trim((int(F.neg[x]),))
                    for j, x in enumerate(row)])
    return out


def invariant_factors(m: FFMatrix) -> InvariantFactors:
    diag = smith_diagonal(m.field, char_matrix(m))
    return InvariantFactors(m.field, tuple(f for f in diag if deg(f) >= 1))


def minimal_polynomial(m: FFMatrix) -> Poly:
    return invariant_factors(m).minimal_polynomial()


def characteristic_polynomial(m: FFMatrix) -> Poly:
    return invariant_factors(m).characteristic_polynomial()


class NotUnipotent(ValueError):
    pass


def _minus_identity(m: FFMatrix) -> np.ndarray:
    F = m.field
    return F.sub[m.entries, np.eye(m.d, dtype=np.int64)]


def unipotent_shape(m: FFMatrix) -> Counter:
    """Jordan block sizes of a unipotent matrix, from ranks of (m - I)^j."""
    F = m.field
    N = FFMatrix(F, _minus_identity(m))
    ranks = [m.d]
    P = FFMatrix.identity(F, m.d)
    for _ in range(m.d):
        P = P * N
        ranks.append(P.rank())
    if ranks[-1] != 0:
        raise NotUnipotent("matrix is not unipotent")
    # blocks of size >= j: ranks[j-1] - ranks[j]
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, m.d + 1)] + [0]
    shape = Counter()
    for j in range(1, m.d + 1):
        count = at_least[j - 1] - at_least[j]
        if count:
            shape[j] = count
    return shape


def jordan_string(shape: Counter) -> str:
    return "".join(f"J{size}" + (f"^{shape[size]}" if shape[size] > 1 else "")
                   for size in sorted(shape, reverse=True))


def is_transvection(m: FFMatrix) -> bool:
    N = _minus_identity(m)
    if rank(m.field, N) != 1:
        return False
    from .matrix import matmul
    return not matmul(m.field, N, N).any()


def is_pseudoreflection(m: FFMatrix) -> bool:
    if m.det() == 0 or rank(m.field, _minus_identity(m)) != 1:
        return False
    mp = minimal_polynomial(m)
    return all(e == 1 for e in factor(m.field, mp).values())


def scalar_multiple_of(m: FFMatrix, predicate) -> int | None:
    """A scalar c with predicate(c^-1 m), or None."""
    F = m.field
    for c in range(1, F.q):
        if predicate(m.scale(int(F.inv[c]))):
            return c
    return None
