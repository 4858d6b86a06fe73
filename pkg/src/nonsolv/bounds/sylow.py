"""p-part identities behind the Sylow subgroup tables for exceptional groups.

Each row says: if p divides a given cyclotomic-type factor of q^k -+ 1, then
the p-part of |G| equals the p-part of a short polynomial in q, so a Sylow
p-subgroup sits in the named subgroup.  Only the arithmetic is checked here.
The rows are transcribed into ``data/sylow_tables.json``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor, implicit_multiplication, parse_expr, standard_transformations,
)

from .orders import Q, order_polynomial, p_part, primitive_prime_divisors

P = sympy.Symbol("p")
MIN_PRIME = 5          # x has prime order p >= 5 throughout
_GCD_RE = re.compile(r"\((\d+),\s*p\)")
_TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)


class pgcd(sympy.Function):
    """gcd(n, p), held unevaluated until p is a number."""

    @classmethod
    def eval(cls, n, p):
        if n.is_Integer and p.is_Integer:
            return sympy.Integer(math.gcd(int(n), int(p)))


@dataclass(frozen=True)
class PPartClaim:
    family: str
    e: int | None          # smallest degree d_i with p | q^d_i - 1 (absent for the rank-two tables)
    case: str              # "p divides" column, verbatim
    ppart_expr: str        # claimed p-part column, verbatim ("x" when intentionally empty)
    subgroup: str = ""
    order: int = 0         # multiplicative order of q modulo p in this case
    skip: bool = False

    @property
    def label(self) -> str:
        return f"{self.family}/{self.e if self.e is not None else '-'}/{self.case}"

    def expr(self) -> sympy.Expr:
        return parse_claim(self.ppart_expr)

    def polynomial_part(self) -> sympy.Expr:
        """The claim with the gcd(n, p) factors dropped."""
        expr = self.expr()
        return expr.subs({f: 1 for f in expr.atoms(pgcd)})


@dataclass
class PrimeCheck:
    p: int
    group_part: int
    claim_part: int

    @property
    def passes(self) -> bool:
        return self.group_part == self.claim_part


@dataclass
class PPartResult:
    claim: PPartClaim
    q: int
    passes: bool | None            # None when skipped
    reason: str = ""
    primes: list[PrimeCheck] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passes is True

    def to_json(self) -> dict:
        return {
            "row": self.claim.label, "q": self.q, "passes": self.passes, "reason": self.reason,
            "primes": [{"p": c.p, "group": str(c.group_part), "claim": str(c.claim_part)} for c in self.primes],
        }


@lru_cache(maxsize=None)
def parse_claim(text: str) -> sympy.Expr:
    """Read a table entry such as ``(7,p)(5,p)^2(q+1)^8``; (n,p) means gcd(n, p)."""
    if text.strip() == "x":
        raise ValueError("row is intentionally empty")
    src = _GCD_RE.sub(r"pgcd(\1, p)", text)
    return parse_expr(src, local_dict={"q": Q, "p": P, "pgcd": pgcd}, transformations=_TRANSFORMS)


def case_order(case: str) -> int | None:
    """q^k + 1 forces order 2k, q^k - 1 order k; other expressions carry no rule."""
    m = re.fullmatch(r"q(?:\^(\d+))?([+-])1", case.replace(" ", ""))
    if not m:
        return None
    k = int(m.group(1) or 1)
    return 2 * k if m.group(2) == "+" else k


def load_claims(path=None) -> list[PPartClaim]:
    if path is None:
        from ..ffmat.classical import data_dir
        path = data_dir() / "sylow_tables.json"
    with open(path) as fh:
        tables = json.load(fh)
    out = []
    for table in tables:
        for row in table["rows"]:
            order = int(row.get("order") or case_order(row["case"]) or 0)
            out.append(PPartClaim(table["family"], row.get("e"), row["case"], row["ppart_expr"],
                                  row.get("subgroup", ""), order, bool(row.get("skip"))))
    return out


def claims_for(family: str) -> list[PPartClaim]:
    return [c for c in load_claims() if c.family == family]


def _odd_power(q: int, base: int) -> bool:
    a = 0
    while q % base == 0:
        q //= base
        a += 1
    return q == 1 and a % 2 == 1


def _q_allowed(family: str, q: int) -> str:
    if family in ("2F4", "2B2", "Sz") and not _odd_power(q, 2):
        return "q is not an odd power of 2"
    if family == "2G2" and not _odd_power(q, 3):
        return "q is not an odd power of 3"
    return ""


def ppart_claim_check(claim: PPartClaim, q: int) -> PPartResult:
    """Compare p-parts for every primitive prime p >= 5 of the row's case at this q."""
    if claim.skip:
        return PPartResult(claim, q, None, "row marked x in the table")
    bad_q = _q_allowed(claim.family, q)
    if bad_q:
        return PPartResult(claim, q, None, bad_q)
    if not claim.order:
        return PPartResult(claim, q, None, "no congruence order recorded for this row")
    ppds = primitive_prime_divisors(q, claim.order)
    primes = [p for p in ppds if p >= MIN_PRIME]
    if not primes:
        why = "no primitive prime divisor" if not ppds else f"primitive primes {ppds} are below {MIN_PRIME}"
        return PPartResult(claim, q, None, f"{why} for order {claim.order} at q={q}")
    group_order = order_polynomial(claim.family).evaluate(q)
    expr = claim.expr()
    checks = []
    for p in primes:
        value = expr.subs({Q: q, P: p})
        if not value.is_integer:
            raise ArithmeticError(f"{claim.label}: claim is not an integer at q={q}")
        checks.append(PrimeCheck(p, p_part(group_order, p), p_part(int(value), p)))
    ok = all(c.passes for c in checks)
    return PPartResult(claim, q, ok, "" if ok else "p-parts differ", checks)


def divides_order_polynomial(claim: PPartClaim) -> bool:
    """The claimed expression (gcd factors dropped) divides the order polynomial in Z[q]."""
    num = sympy.Poly(order_polynomial(claim.family).as_expr(), Q)
    den = sympy.Poly(sympy.cancel(claim.polynomial_part()), Q)
    return num.rem(den).is_zero


def sweep(qs=(2, 3, 4, 5), claims=None) -> list[PPartResult]:
    claims = load_claims() if claims is None else claims
    return [ppart_claim_check(c, q) for c in claims for q in qs]
