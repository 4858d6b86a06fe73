"""Canonical-form checks for elements of order 6 and 9 in small classical groups.

Two facts are checked on explicit matrices:

* if x has order 6 modulo scalars and x^2 is a transvection (char 3), the invariant factors
  of x are t + e1 (any number of times), t^2 - 1 (any number of times) and
  (t^2 - 1)(t - e2) exactly once, with e1, e2 = +-1; in particular the minimal
  polynomial is never (t^2 - 1)^2;
* a unipotent x in SL(4,3) whose cube is a transvection is a single Jordan
  block J4.

Uniform samples are drawn through the permutation action: a uniform element
of the permutation group is lifted and multiplied by a uniform scalar that
puts the lift back in the matrix group.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .classical import MatGroupSpec, family_check, realize
from .field import GF
from .matrix import FFMatrix, det
from .polys import (
    Poly, invariant_factors, is_transvection, jordan_string, linear, pmul, poly_str, ppow,
    unipotent_shape,
)


def _t2_minus_1(F: GF) -> Poly:
    return pmul(F, linear(F, 1), linear(F, F.neg[1]))


def order6_shape(m: FFMatrix) -> tuple[bool, str]:
    """Do the invariant factors of ``m`` have the expected shape?  Also returns a label."""
    F = m.field
    one, minus = 1, int(F.neg[1])
    t2 = _t2_minus_1(F)
    fs = invariant_factors(m).factors
    label = " | ".join(poly_str(F, f) for f in fs)
    if not fs:
        return False, label
    last = fs[-1]
    if last not in (pmul(F, t2, linear(F, one)), pmul(F, t2, linear(F, minus))):
        return False, label
    linears = {f for f in fs[:-1] if len(f) == 2}
    if len(linears) > 1 or not linears <= {linear(F, one), linear(F, minus)}:
        return False, label
    return all(len(f) == 2 or f == t2 for f in fs[:-1]), label


def minpoly_is_square(m: FFMatrix) -> bool:
    return invariant_factors(m).factors[-1] == ppow(m.field, _t2_minus_1(m.field), 2)


@dataclass
class ShapeSweep:
    group: str
    examined: int = 0                  # elements (or samples) looked at
    qualifying: int = 0                # elements meeting the hypothesis
    failures: list[str] = field(default_factory=list)
    square_minpoly: int = 0            # qualifying elements with minimal polynomial (t^2-1)^2
    shapes: Counter = field(default_factory=Counter)
    skipped: Counter = field(default_factory=Counter)

    @property
    def passes(self) -> bool:
        return self.qualifying > 0 and not self.failures and self.square_minpoly == 0

    def to_json(self) -> dict:
        return {
            "group": self.group, "examined": self.examined, "qualifying": self.qualifying,
            "passes": self.passes, "failures": self.failures[:10], "square_minpoly": self.square_minpoly,
            "shapes": dict(sorted(self.shapes.items())), "skipped": dict(self.skipped),
        }


def _record6(sweep: ShapeSweep, y: FFMatrix):
    sweep.qualifying += 1
    ok, label = order6_shape(y)
    sweep.shapes[label] += 1
    if not ok:
        sweep.failures.append(label)
    if minpoly_is_square(y):
        sweep.square_minpoly += 1


def gl33_order6_sweep() -> ShapeSweep:
    """Every element of GL(3,3) of projective order 6 whose square is a transvection.

    Matrices -T with T a transvection also have order 6 with square a
    transvection, but they are transvections modulo scalars; they are counted
    under ``skipped``.
    """
    from .field import field as make_field
    F = make_field(3)
    sweep = ShapeSweep("GL(3,3)")
    for entries in product(range(3), repeat=9):
        A = np.array(entries, dtype=np.int64).reshape(3, 3)
        if det(F, A) == 0:
            continue
        sweep.examined += 1
        m = FFMatrix(F, A)
        sq = m * m
        if not is_transvection(sq):
            continue
        if m.projective_order() == 6:
            _record6(sweep, m)
        else:
            sweep.skipped["scalar times a transvection"] += 1
    return sweep


class GroupSampler:
    """Uniform matrices from a catalog group, through its permutation realization."""

    def __init__(self, name: str, seed: int = 0):
        self.realization = realize(name)
        self.spec: MatGroupSpec = self.realization.spec
        self.rng = random.Random(seed)
        F = self.spec.field
        self.scalars = [c for c in range(1, F.q)]

    def _matrix(self, pi) -> FFMatrix:
        m = self.realization.lift(pi)
        valid = [m.scale(c) for c in self.scalars if family_check(self.spec, m.scale(c))]
        return self.rng.choice(valid)

    def sample(self) -> FFMatrix:
        return self._matrix(self.realization.group.random_element(self.rng))

    def sample_of_order(self, n: int, projective: bool = False, tries: int = 1000) -> FFMatrix | None:
        """A power of a uniform sample of order exactly ``n`` (modulo scalars if ``projective``)."""
        for _ in range(tries):
            pi = self.realization.group.random_element(self.rng)
            if projective:
                o = pi.order()
                if o % n == 0:
                    return self._matrix(pi ** (o // n))
                continue
            m = self._matrix(pi)
            o = pi.order() * self.spec.field.mult_order(int((m ** pi.order()).entries[0, 0]))
            if o % n == 0:
                return m ** (o // n)
        return None


def sampled_order6_sweep(name: str, target: int = 1000, seed: int = 0, max_samples: int = 10**6) -> ShapeSweep:
    """Sample x of projective order 6 whose square is a scalar times a transvection.

    The scalar is absorbed first: y = mu x with mu^2 times that scalar equal to 1,
    so y^2 is a transvection and y has order 6.  Samples where no such mu
    exists in the field are counted under ``skipped``.
    """
    sampler = GroupSampler(name, seed)
    F = sampler.spec.field
    sweep = ShapeSweep(name)
    while sweep.qualifying < target and sweep.examined < max_samples:
        x = sampler.sample_of_order(6, projective=True)
        if x is None:
            break
        sweep.examined += 1
        sq = x * x
        lam = next((c for c in range(1, F.q) if is_transvection(sq.scale(int(F.inv[c])))), None)
        if lam is None:
            continue
        mus = [mu for mu in range(1, F.q) if F.mul[F.mul[mu, mu], lam] == 1]
        if not mus:
            sweep.skipped["no square root of the scalar"] += 1
            continue
        y = x.scale(mus[0])
        _record6(sweep, y)
    return sweep


@dataclass
class JordanSweep:
    group: str
    examined: int = 0
    qualifying: int = 0
    shapes: Counter = field(default_factory=Counter)

    @property
    def passes(self) -> bool:
        return self.qualifying > 0 and set(self.shapes) == {"J4"}

    def to_json(self) -> dict:
        return {"group": self.group, "examined": self.examined, "qualifying": self.qualifying,
                "passes": self.passes, "shapes": dict(self.shapes)}


def order9_jordan_sweep(name: str = "SL(4,3)", target: int = 1000, seed: int = 0,
                        max_samples: int = 10**6) -> JordanSweep:
    """Jordan types of sampled order-9 elements whose cube is a transvection."""
    sampler = GroupSampler(name, seed)
    sweep = JordanSweep(name)
    while sweep.qualifying < target and sweep.examined < max_samples:
        x = sampler.sample_of_order(9)
        if x is None:
            break
        sweep.examined += 1
        if not is_transvection(x ** 3):
            continue
        sweep.qualifying += 1
        sweep.shapes[jordan_string(unipotent_shape(x))] += 1
    return sweep
