"""Finite fields GF(p^k) with table arithmetic.

Elements are integers 0..q-1 whose base-p digits are the coefficients of the
polynomial representative (least significant digit = constant term).  The
moduli are fixed Conway polynomials so encodings are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# coefficient lists, constant term first, monic
CONWAY = {
    (2, 1): (1, 1),
    (3, 1): (1, 1),
    (5, 1): (3, 1),
    (7, 1): (4, 1),
    (11, 1): (9, 1),
    (13, 1): (11, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
}

MAX_FIELD_SIZE = 16


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, k
    raise ValueError(f"{q} is not a prime power")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.k


def field_spec(q: int) -> FieldSpec:
    p, k = prime_power(q)
    if q > MAX_FIELD_SIZE:
        raise ValueError(f"GF({q}) is larger than the supported {MAX_FIELD_SIZE}")
    if (p, k) in CONWAY:
        return FieldSpec(p, k, CONWAY[(p, k)])
    # prime fields outside the table: modulus t - g for a primitive root g
    if k == 1:
        g = next(g for g in range(1, p) if _mult_order(g, p) == p - 1)
        return FieldSpec(p, 1, ((-g) % p, 1))
    raise ValueError(f"no modulus on record for GF({q})")


def _mult_order(a: int, n: int) -> int:
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def _polymulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * modulus[i]) % p
    return prod[:k]


def _is_irreducible(modulus, p) -> bool:
    """Brute-force check: no monic factor of degree 1..k/2."""
    k = len(modulus) - 1
    if k == 1:
        return True
    from itertools import product
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            f = list(tail) + [1]
            r = list(modulus)
            for deg in range(k, d - 1, -1):
                c = r[deg]
                if c:
                    for i in range(d + 1):
                        r[deg - d + i] = (r[deg - d + i] - c * f[i]) % p
            if not any(r[:d]):
                return False
    return True


class GF:
    """Arithmetic context for one field.

    Tables are numpy arrays so whole matrices can be pushed through
    ``add[a, b]`` / ``mul[a, b]`` at once.
    """

    def __init__(self, spec: FieldSpec):
        if len(spec.modulus) != spec.k + 1 or spec.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _is_irreducible(spec.modulus, spec.p):
            raise ValueError(f"modulus {spec.modulus} is reducible over GF({spec.p})")
        self.spec = spec
        self.p, self.k, self.q = spec.p, spec.k, spec.q
        p, k, q = self.p, self.k, self.q
        digits = np.array([[(a // p**i) % p for i in range(k)] for a in range(q)], dtype=np.int64)
        self.digits = digits
        self.weights = np.array([p**i for i in range(k)], dtype=np.int64)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ self.weights
        self.sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ self.weights
        self.neg = ((-digits) % p) @ self.weights
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                prod = _polymulmod(digits[a], digits[b], spec.modulus, p)
                mul[a, b] = mul[b, a] = sum(c * p**i for i, c in enumerate(prod))
        self.mul = mul
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv = inv
        self.frob = np.array([self.pow(a, p) for a in range(q)], dtype=np.int64)
        self.primitive = next(a for a in range(1, q) if self.mult_order(a) == q - 1)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = int(self.inv[a]), -n
        r = 1
        while n:
            if n & 1:
                r = int(self.mul[r, a])
            a = int(self.mul[a, a])
            n >>= 1
        return r

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n, x = 1, a
        while x != 1:
            x = int(self.mul[x, a])
            n += 1
        return n

    def frobenius(self, a, power: int = 1):
        """x -> x^(p^power); works on ints and arrays."""
        for _ in range(power % self.k if self.k > 1 else 0):
            a = self.frob[a]
        return a if not isinstance(a, np.integer) else int(a)

    def twist(self, a):
        """Unitary involution x -> x^sqrt(q) of GF(q), q a square."""
        if self.k % 2:
            raise ValueError(f"{self} has no unitary twist")
        return self.frobenius(a, self.k // 2)

    def subfield_elements(self, size: int) -> list[int]:
        return [a for a in range(self.q) if self.pow(a, size) == a]

    def elements(self) -> range:
        return range(self.q)

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(q)."""
        return n % self.p


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(field_spec(q))


def field_ops(spec: FieldSpec) -> GF:
    return GF(spec)
