"""Square matrices over GF(q).

Matrices act on row vectors from the right (v -> vM), so the map from
matrices to permutations of vectors respects the left-to-right product used
in ``nonsolv.perm``.  Small dense linear algebra (rank, determinant, inverse,
solving) is plain Python over the field tables; products are vectorized.
"""

from __future__ import annotations

import math

import numpy as np

from .field import GF, field


def matmul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product over GF(q); broadcasts over leading batch axes."""
    if F.k == 1:
        return np.matmul(A, B) % F.p
    prod = F.mul[A[..., :, :, None], B[..., None, :, :]]
    return (F.digits[prod].sum(axis=-3) % F.p) @ F.weights


def vecmat(F: GF, V: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Rows of ``V`` times ``M``."""
    if F.k == 1:
        return (V @ M) % F.p
    prod = F.mul[V[:, :, None], M[None, :, :]]
    return (F.digits[prod].sum(axis=1) % F.p) @ F.weights


def _lists(F: GF):
    cached = getattr(F, "_py_tables", None)
    if cached is None:
        cached = (F.add.tolist(), F.sub.tolist(), F.mul.tolist(), F.inv.tolist())
        F._py_tables = cached
    return cached


def row_reduce(F: GF, rows: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """Reduced row echelon form; returns (rref, pivot columns, determinant factor).

    The determinant factor is the product of pivots divided out, signed by
    swaps, so det(A) = factor for square full-rank A.
    """
    add, sub, mul, inv = _lists(F)
    A = [list(r) for r in rows]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots = []
    det = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            det = F.neg[det].item()
        lead = A[r][c]
        det = mul[det][lead]
        li = inv[lead]
        A[r] = [mul[li][x] for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [sub[x][mul[f][y]] for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots, det


def rank(F: GF, A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(row_reduce(F, A.tolist())[1])


def det(F: GF, A: np.ndarray) -> int:
    rref, pivots, d = row_reduce(F, A.tolist())
    return d if len(pivots) == A.shape[0] else 0


def inverse(F: GF, A: np.ndarray) -> np.ndarray:
    d = A.shape[0]
    aug = [list(row) + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(A.tolist())]
    rref, pivots, _ = row_reduce(F, aug)
    if pivots[:d] != list(range(d)):
        raise ZeroDivisionError("singular matrix")
    return np.array([row[d:] for row in rref], dtype=np.int64)


def solve(F: GF, A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve x A = b for a row vector x (A square and invertible)."""
    return vecmat(F, b[None, :], inverse(F, A))[0]


def kernel(F: GF, A: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {v : v A = 0}."""
    At = A.T.tolist()
    rref, pivots, _ = row_reduce(F, At)
    n = A.shape[0]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(rref, pivots):
            v[pc] = int(F.neg[row[f]])
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


class FFMatrix:
    """An immutable d x d matrix over a finite field."""

    __slots__ = ("field", "entries", "_key")

    def __init__(self, F: GF, entries):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("expected a square matrix")
        if arr.size and (arr.min() < 0 or arr.max() >= F.q):
            raise ValueError(f"entries must lie in 0..{F.q - 1}")
        arr.setflags(write=False)
        self.field = F
        self.entries = arr
        self._key = None

    @classmethod
    def identity(cls, F: GF, d: int) -> "FFMatrix":
        return cls(F, np.eye(d, dtype=np.int64))

    @classmethod
    def scalar(cls, F: GF, d: int, c: int) -> "FFMatrix":
        return cls(F, np.eye(d, dtype=np.int64) * c)

    @classmethod
    def diag(cls, F: GF, values) -> "FFMatrix":
        return cls(F, np.diag(np.array(values, dtype=np.int64)))

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.entries.tobytes()
        return self._key

    def __eq__(self, other):
        return (isinstance(other, FFMatrix) and self.field == other.field
                and np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash(self.key())

    def __mul__(self, other: "FFMatrix") -> "FFMatrix":
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        return FFMatrix(self.field, matmul(self.field, self.entries, other.entries))

    def __add__(self, other):
        return FFMatrix(self.field, self.field.add[self.entries, other.entries])

    def __sub__(self, other):
        return FFMatrix(self.field, self.field.sub[self.entries, other.entries])

    def scale(self, c: int) -> "FFMatrix":
        return FFMatrix(self.field, self.field.mul[self.entries, c])

    def __pow__(self, n: int) -> "FFMatrix":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = FFMatrix.identity(self.field, self.d)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self) -> "FFMatrix":
        return FFMatrix(self.field, self.entries.T)

    def frobenius(self, power: int = 1) -> "FFMatrix":
        return FFMatrix(self.field, self.field.frobenius(self.entries, power))

    def inverse(self) -> "FFMatrix":
        return FFMatrix(self.field, inverse(self.field, self.entries))

    def det(self) -> int:
        return det(self.field, self.entries)

    def rank(self) -> int:
        return rank(self.field, self.entries)

    def is_identity(self) -> bool:
        return np.array_equal(self.entries, np.eye(self.d, dtype=np.int64))

    def is_scalar(self) -> bool:
        c = self.entries[0, 0]
        return c != 0 and np.array_equal(self.entries, np.eye(self.d, dtype=np.int64) * c)

    def order(self, limit: int | None = None) -> int:
        """Multiplicative order (bounded by |GL(d,q)| if no limit given)."""
        if self.det() == 0:
            raise ZeroDivisionError("singular matrix has no order")
        ident = FFMatrix.identity(self.field, self.d)
        # orders divide the exponent of GL(d,q); walk candidate divisors
        exponent = _gl_exponent(self.d, self.q)
        order = exponent
        for prime, mult in _factor(exponent).items():
            for _ in range(mult):
                if (self ** (order // prime)) == ident:
                    order //= prime
                else:
                    break
        return order

    def projective_order(self) -> int:
        """Least n with self^n scalar."""
        exponent = _gl_exponent(self.d, self.q)
        order = exponent
        for prime, mult in _factor(exponent).items():
            for _ in range(mult):
                if (self ** (order // prime)).is_scalar():
                    order //= prime
                else:
                    break
        return order

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __repr__(self):
        return f"FFMatrix(GF({self.q}), {self.tolist()})"

    def text(self) -> str:
        """Row-major report format, entries as base-p integers 0..q-1."""
        return "\n".join(" ".join(str(x) for x in row) for row in self.tolist())


def _factor(n: int) -> dict[int, int]:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _gl_exponent(d: int, q: int) -> int:
    """Exponent of GL(d,q): lcm of q^i - 1 (i <= d) times the unipotent part."""
    p = next(p for p in range(2, q + 1) if q % p == 0)
    e = math.lcm(*[q**i - 1 for i in range(1, d + 1)])
    pp = 1
    while pp < d:
        pp *= p
    return e * pp


def from_rows(q: int, rows) -> FFMatrix:
    return FFMatrix(field(q), rows)
