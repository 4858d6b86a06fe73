"""Exact arithmetic in cyclotomic fields Q(zeta_n).

A value is a vector of rationals on the power basis 1, z, ..., z^(phi(n)-1),
reduced modulo the n-th cyclotomic polynomial.  Equality is coefficient
equality, so there is no floating point anywhere.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, cyclotomic_poly(d))
    return tuple(num)


def _exact_div(a: list[int], b: tuple[int, ...]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = a[shift + len(b) - 1]  # b is monic
        out[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return out


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def reduction_matrix(n: int) -> np.ndarray:
    """Row k holds z^k reduced to the power basis (k = 0..n-1)."""
    phi = cyclotomic_poly(n)
    m = len(phi) - 1
    R = np.zeros((n, m), dtype=np.int64)
    vec = [1] + [0] * (m - 1) if m else []
    for k in range(n):
        R[k] = vec
        # multiply by z: shift, then fold the overflow coefficient
        top = vec[-1]
        vec = [0] + vec[:-1]
        for i in range(m):
            vec[i] -= top * phi[i]
    R.setflags(write=False)
    return R


class Cyc:
    """An element of Q(zeta_n)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        m = euler_phi(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > m:
            # fold a longer vector (coefficients of z^k) through the reduction table
            cs = _reduce(n, cs)
        cs += [Fraction(0)] * (m - len(cs))
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def rational(cls, value, n: int = 1) -> "Cyc":
        return cls(n, [value])

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyc":
        """zeta_n^k."""
        full = [0] * n
        full[k % n] = 1
        return cls(n, _reduce(n, full))

    @classmethod
    def from_exponents(cls, n: int, counts: dict[int, int]) -> "Cyc":
        """Sum of counts[k] * zeta_n^k."""
        full = [0] * n
        for k, c in counts.items():
            full[k % n] += c
        return cls(n, _reduce(n, full))

    # -- field structure ----------------------------------------------------

    def embed(self, n: int) -> "Cyc":
        """The same number viewed in Q(zeta_n), n a multiple of self.n."""
        if n % self.n:
            raise ValueError(f"Q(zeta_{self.n}) is not a subfield of Q(zeta_{n})")
        step = n // self.n
        full = [Fraction(0)] * n
        for k, c in enumerate(self.coeffs):
            full[k * step] = c
        return Cyc(n, _reduce(n, full))

    def _common(self, other):
        if not isinstance(other, Cyc):
            other = Cyc.rational(other, self.n)
        if other.n == self.n:
            return self, other
        n = math.lcm(self.n, other.n)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        a, b = self._common(other)
        return Cyc(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyc) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyc):
            return Cyc(self.n, [x * Fraction(other) for x in self.coeffs])
        a, b = self._common(other)
        prod = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return Cyc(a.n, _reduce(a.n, prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyc):
            if not other.is_rational():
                raise ValueError("division by an irrational cyclotomic is not supported")
            other = other.to_fraction()
        return Cyc(self.n, [x / Fraction(other) for x in self.coeffs])

    def galois(self, k: int) -> "Cyc":
        """Image under zeta -> zeta^k (k coprime to n)."""
        if math.gcd(k, self.n) != 1:
            raise ValueError("galois exponent must be a unit mod n")
        full = [Fraction(0)] * self.n
        for i, c in enumerate(self.coeffs):
            full[(i * k) % self.n] += c
        return Cyc(self.n, _reduce(self.n, full))

    def conjugate(self) -> "Cyc":
        return self.galois(-1)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_integral_rational(self) -> bool:
        return self.is_rational() and self.to_fraction().denominator == 1

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.n)
        return complex(sum(float(c) * z**k for k, c in enumerate(self.coeffs)))

    def __eq__(self, other):
        if not isinstance(other, Cyc):
            try:
                other = Cyc.rational(other, self.n)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def normalized_trace(self) -> Fraction:
        """Tr(self)/[Q(zeta_n):Q]; independent of the field the value is written in."""
        total = Fraction(0)
        for k, c in enumerate(self.coeffs):
            if c:
                m = self.n // math.gcd(k, self.n)
                total += c * Fraction(_mobius(m), euler_phi(m))
        return total

    def __hash__(self):
        return hash(self.normalized_trace())

    def __repr__(self):
        if self.is_rational():
            return str(self.to_fraction())
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mon = "" if k == 0 else (f"z{self.n}" if k == 1 else f"z{self.n}^{k}")
                if not mon:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append(f"{c}*{mon}")
        return "+".join(terms).replace("+-", "-")

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Cyc":
        if isinstance(obj, (int, str)):
            return cls.rational(Fraction(obj))
        return cls(int(obj["n"]), [Fraction(c) for c in obj["coeffs"]])


def _mobius(n: int) -> int:
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    return -out if n > 1 else out


def _reduce(n: int, full) -> list[Fraction]:
    """Reduce coefficients of z^0, z^1, ... modulo Phi_n."""
    R = reduction_matrix(n)
    m = R.shape[1]
    out = [Fraction(0)] * m
    for k, c in enumerate(full):
        if c:
            row = R[k % n]
            for i in range(m):
                if row[i]:
                    out[i] += c * int(row[i])
    return out


# -- vectorized helpers over Z[z]/(z^n - 1) -------------------------------------

@lru_cache(maxsize=None)
def _shift_index(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[None, :] - a[:, None]) % n  # [a, k] -> k - a


def cyclic_convolve(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Products in Z[z]/(z^n - 1) along the last axis, broadcasting the rest."""
    n = X.shape[-1]
    return np.einsum("...a,...ak->...k", X, Y[..., _shift_index(n)])


def cyclic_conjugate(X: np.ndarray) -> np.ndarray:
    """z -> z^-1 along the last axis."""
    n = X.shape[-1]
    return X[..., (-np.arange(n)) % n]


def reduce_array(X: np.ndarray) -> np.ndarray:
    """Map vectors on z^0..z^(n-1) to the power basis modulo Phi_n."""
    return X @ reduction_matrix(X.shape[-1])
