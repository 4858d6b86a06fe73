"""Order polynomials of finite groups of Lie type and primitive prime divisors.

An order is stored as q^N * prod (q^d - eps)^mult, times a constant, divided by
gcd(n, q - eps0) for the centre of the simple group.  Negative multiplicities
let quotients such as q^8 + q^4 + 1 = (q^12 - 1)/(q^4 - 1) be written in the
same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import sympy
from sympy.ntheory import factorint, n_order

Q = sympy.Symbol("q")


class UnsupportedFamily(ValueError):
    pass


@dataclass(frozen=True)
class OrderPolynomial:
    family: str
    q_power: int
    factors: tuple[tuple[int, int, int], ...]   # (d, eps, mult): (q^d - eps)^mult
    constant: int = 1
    centre: tuple[int, int] | None = None       # (n, eps): divide by gcd(n, q - eps)

    @property
    def cyclotomic_exponents(self) -> list[int]:
        out = []
        for d, _, mult in self.factors:
            out += [d] * max(mult, 0)
        return sorted(out)

    def evaluate(self, q: int) -> int:
        num, den = self.constant * q**self.q_power, 1
        for d, eps, mult in self.factors:
            f = q**d - eps
            if mult >= 0:
                num *= f**mult
            else:
                den *= f ** (-mult)
        if self.centre:
            n, eps = self.centre
            den *= math.gcd(n, q - eps)
        if num % den:
            raise ArithmeticError(f"{self.family}: order formula not integral at q={q}")
        return num // den

    def as_expr(self) -> sympy.Expr:
        """The polynomial part (constant and centre dropped) as a sympy expression."""
        expr = Q**self.q_power
        for d, eps, mult in self.factors:
            expr *= (Q**d - eps) ** mult
        return sympy.cancel(expr)


def _prod(ds, eps=1):
    return tuple((d, eps, 1) for d in ds)


def _sl(n):
    return _prod(range(2, n + 1))


def _su(n):
    return tuple((i, (-1) ** i, 1) for i in range(2, n + 1))


def _sp(m):
    return _prod(2 * i for i in range(1, m + 1))


# exceptional and rank-one twisted families; E7 is the simply connected group
_FIXED = {
    "Sz": OrderPolynomial("Sz", 2, ((2, -1, 1), (1, 1, 1))),
    "2B2": OrderPolynomial("2B2", 2, ((2, -1, 1), (1, 1, 1))),
    "2G2": OrderPolynomial("2G2", 3, ((3, -1, 1), (1, 1, 1))),
    "G2": OrderPolynomial("G2", 6, _prod((2, 6))),
    "3D4": OrderPolynomial("3D4", 12, ((12, 1, 1), (4, 1, -1), (6, 1, 1), (2, 1, 1))),
    "2F4": OrderPolynomial("2F4", 12, ((6, -1, 1), (4, 1, 1), (3, -1, 1), (1, 1, 1))),
    "F4": OrderPolynomial("F4", 24, _prod((2, 6, 8, 12))),
    "E6": OrderPolynomial("E6", 36, _prod((2, 5, 6, 8, 9, 12)), centre=(3, 1)),
    "2E6": OrderPolynomial("2E6", 36, ((2, 1, 1), (5, -1, 1), (6, 1, 1), (8, 1, 1), (9, -1, 1), (12, 1, 1)),
                           centre=(3, -1)),
    "E7": OrderPolynomial("E7", 63, _prod((2, 6, 8, 10, 12, 14, 18))),
    "E8": OrderPolynomial("E8", 120, _prod((2, 8, 12, 14, 18, 20, 24, 30))),
    "PSL2": OrderPolynomial("PSL2", 1, ((2, 1, 1),), centre=(2, 1)),
}

# Classical families take the dimension n.  Unitary groups are parametrised by
# q0 with the natural module over GF(q0^2).
CLASSICAL = ("SL", "PSL", "GL", "SU", "PSU", "GU", "Sp", "PSp", "GSp", "GO", "GO+", "GO-",
             "Omega", "Omega+", "Omega-")

FAMILIES = tuple(_FIXED) + CLASSICAL


def order_polynomial(family: str, n: int | None = None) -> OrderPolynomial:
    if family in _FIXED:
        return _FIXED[family]
    if family not in CLASSICAL:
        raise UnsupportedFamily(f"no order formula for family {family!r}")
    if n is None or n < 1:
        raise UnsupportedFamily(f"family {family} needs a dimension")
    tri = n * (n - 1) // 2
    if family in ("SL", "PSL", "GL"):
        facs = _sl(n) + (((1, 1, 1),) if family == "GL" else ())
        return OrderPolynomial(family, tri, facs, centre=(n, 1) if family == "PSL" else None)
    if family in ("SU", "PSU", "GU"):
        facs = _su(n) + (((1, -1, 1),) if family == "GU" else ())
        return OrderPolynomial(family, tri, facs, centre=(n, -1) if family == "PSU" else None)
    if family in ("Sp", "PSp", "GSp"):
        if n % 2:
            raise UnsupportedFamily("symplectic groups need even dimension")
        m = n // 2
        facs = _sp(m) + (((1, 1, 1),) if family == "GSp" else ())
        return OrderPolynomial(family, m * m, facs, centre=(2, 1) if family == "PSp" else None)
    m = n // 2
    if n % 2:
        if family not in ("GO", "Omega"):
            raise UnsupportedFamily(f"{family} needs even dimension")
        # GO(2m+1, q) = {+-1} x SO(2m+1, q) for q odd; Omega has index 2 in SO
        if family == "GO":
            return OrderPolynomial(family, m * m, _sp(m), constant=2)
        return OrderPolynomial(family, m * m, _sp(m), centre=(2, 1))
    if family in ("GO", "Omega"):
        raise UnsupportedFamily(f"{family} in even dimension needs a sign: use {family}+ or {family}-")
    eps = 1 if family.endswith("+") else -1
    facs = ((m, eps, 1),) + _sp(m - 1)
    if family.startswith("GO"):
        return OrderPolynomial(family, m * (m - 1), facs, constant=2)
    # |GO : Omega| is 4 for q odd and 2 for q even
    return OrderPolynomial(family, m * (m - 1), facs, centre=(2, 1))


def order_poly_eval(family: str, q: int, n: int | None = None) -> int:
    """Exact group order.  Classical families take the dimension ``n``."""
    if q < 2:
        raise ValueError("q must be at least 2")
    poly = order_polynomial(family, n)
    if family == "GO" and n % 2 and q % 2 == 0:
        raise UnsupportedFamily("odd-dimensional GO is only tabulated for odd q")
    return poly.evaluate(q)


# -- primitive prime divisors ---------------------------------------------------

def multiplicative_order(q: int, p: int) -> int:
    return int(n_order(q, p))


def primitive_prime_divisors(q: int, e: int) -> list[int]:
    """All primes p with multiplicative order of q mod p equal to e, increasing."""
    if q < 2 or e < 1:
        raise ValueError("need q >= 2 and e >= 1")
    value = int(sympy.cyclotomic_poly(e, q))
    out = []
    for p in sorted(factorint(abs(value))):
        if q % p and multiplicative_order(q, p) == e:
            out.append(int(p))
    return out


def zsigmondy_ppd(q: int, e: int) -> int | None:
    """Smallest primitive prime divisor of q^e - 1, or None for a Zsigmondy exception."""
    ppds = primitive_prime_divisors(q, e)
    return ppds[0] if ppds else None


def p_part(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("p-part of 0 is undefined")
    n = abs(n)
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def catalog_order(family: str, d: int, q: int, name: str = "") -> int:
    """Order of a catalog matrix group from its (family, d, q) record.

    Unitary records store the field size q0^2; orthogonal records in even
    dimension carry the sign in the name, as in GO+(8,2).
    """
    if family in ("SU", "GU"):
        return order_poly_eval(family, math.isqrt(q), d)
    if family == "Sz":
        return order_poly_eval("Sz", q)
    if family in ("GO", "Omega") and d % 2 == 0:
        sign = "+" if "+" in name else "-" if "-" in name else ""
        if not sign:
            raise UnsupportedFamily(f"{name}: even-dimensional orthogonal group without a sign")
        return order_poly_eval(family + sign, q, d)
    if family in ("OmegaPlus", "OmegaMinus"):
        return order_poly_eval("Omega" + ("+" if family == "OmegaPlus" else "-"), q, d)
    return order_poly_eval(family, q, d)
