"""A test corpus of small permutation groups (order at most 2000).

Mixes solvable groups (cyclic, dihedral, affine, wreath products, ...) with
nonsolvable ones (alternating groups, PSL(2,q), extensions and direct
products of these).  Each entry is a zero-argument builder so callers only
pay for the groups they touch.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..ffmat.classical import all_vectors, realize
from ..ffmat.field import field
from ..ffmat.matrix import FFMatrix, vecmat
from ..perm import (
    PermGroup, Permutation, alternating_group, cyclic_group, dihedral_group, direct_product,
    parse_cycles, symmetric_group,
)


def _g(degree: int, *cycles: str) -> PermGroup:
    return PermGroup([parse_cycles(c, degree) for c in cycles], degree)


def projective_line_group(q: int, maps: list[Callable[[int], int | None]]) -> PermGroup:
    """Group of maps on GF(q) u {inf}; None stands for the point at infinity."""
    inf = q

    def to_perm(f):
        images = []
        for x in list(range(q)) + [None]:
            y = f(x)
            images.append(inf if y is None else y)
        return Permutation(images)

    return PermGroup([to_perm(f) for f in maps], q + 1)


def _mobius(q: int, a: int, b: int, c: int, d: int, frob: int = 0):
    """x -> (a x^s + b) / (c x^s + d), s = p^frob."""
    F = field(q)

    def f(x):
        if x is None:
            return None if c == 0 else int(F.mul[a, F.inv[c]])
        xs = F.frobenius(x, frob) if frob else x
        num = int(F.add[F.mul[a, xs], b])
        den = int(F.add[F.mul[c, xs], d])
        return None if den == 0 else int(F.mul[num, F.inv[den]])

    return f


def pgl2(q: int, frobenius: bool = False, special: bool = False) -> PermGroup:
    F = field(q)
    w = F.primitive
    one, zero = 1, 0
    minus = int(F.neg[1])
    maps = [_mobius(q, one, one, zero, one), _mobius(q, zero, minus, one, zero)]
    maps.append(_mobius(q, int(F.mul[w, w]) if special else w, zero, zero, one))
    if frobenius:
        maps.append(_mobius(q, one, zero, zero, one, frob=1))
    return projective_line_group(q, maps)


def linear_on_vectors(q: int, mats: list[list[list[int]]]) -> PermGroup:
    """Matrix group acting on the nonzero row vectors of GF(q)^d."""
    F = field(q)
    d = len(mats[0])
    pts = all_vectors(F, d)
    w = q ** np.arange(d - 1, -1, -1)
    lookup = {int(c): i for i, c in enumerate(pts @ w)}
    perms = []
    for m in mats:
        img = vecmat(F, pts, FFMatrix(F, m).entries) @ w
        perms.append(Permutation([lookup[int(c)] for c in img]))
    return PermGroup(perms, len(pts))


def affine_group(q: int, mats: list[list[list[int]]]) -> PermGroup:
    """Translations of GF(q)^d together with the given linear maps."""
    F = field(q)
    d = len(mats[0])
    pts = np.vstack([np.zeros((1, d), dtype=np.int64), all_vectors(F, d)])
    w = q ** np.arange(d - 1, -1, -1)
    lookup = {int(c): i for i, c in enumerate(pts @ w)}
    perms = []
    for m in mats:
        img = vecmat(F, pts, FFMatrix(F, m).entries) @ w
        perms.append(Permutation([lookup[int(c)] for c in img]))
    for i in range(d):
        shift = np.zeros(d, dtype=np.int64)
        shift[i] = 1
        img = F.add[pts, shift[None, :]] @ w
        perms.append(Permutation([lookup[int(c)] for c in img]))
    return PermGroup(perms, len(pts))


def wreath_with_cyclic(base: PermGroup, k: int) -> PermGroup:
    """base wr C_k in the imprimitive action on k copies."""
    n = base.degree
    gens = []
    for g in base.generators:
        gens.append(Permutation(list(g.images) + list(range(n, n * k))))
    top = [(i + n) % (n * k) for i in range(n * k)]
    gens.append(Permutation(top))
    return PermGroup(gens, n * k)


def _catalog_projective(name: str) -> PermGroup:
    return realize(name).group


def _catalog_vector(name: str) -> PermGroup:
    """Faithful action of a catalog matrix group on nonzero vectors."""
    spec = realize(name).spec
    return linear_on_vectors(spec.q, [g.tolist() for g in spec.generators])


SOLVABLE: dict[str, Callable[[], PermGroup]] = {
    "C1": lambda: PermGroup([], 1),
    "C2": lambda: cyclic_group(2),
    "C3": lambda: cyclic_group(3),
    "C4": lambda: cyclic_group(4),
    "C6": lambda: cyclic_group(6),
    "C12": lambda: cyclic_group(12),
    "C2xC2": lambda: _g(4, "(12)", "(34)"),
    "C2^3": lambda: _g(6, "(12)", "(34)", "(56)"),
    "C3xC3": lambda: _g(6, "(123)", "(456)"),
    "S3": lambda: symmetric_group(3),
    "D8": lambda: dihedral_group(4),
    "D10": lambda: dihedral_group(5),
    "D12": lambda: dihedral_group(6),
    "D14": lambda: dihedral_group(7),
    "D20": lambda: dihedral_group(10),
    "Q8": lambda: _g(8, "(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"),
    "A4": lambda: alternating_group(4),
    "S4": lambda: symmetric_group(4),
    "S3xS3": lambda: direct_product(symmetric_group(3), symmetric_group(3)),
    "C3xS3": lambda: direct_product(cyclic_group(3), symmetric_group(3)),
    "S4xC2": lambda: direct_product(symmetric_group(4), cyclic_group(2)),
    "S4xS3": lambda: direct_product(symmetric_group(4), symmetric_group(3)),
    "A4xA4": lambda: direct_product(alternating_group(4), alternating_group(4)),
    "SL(2,3)": lambda: linear_on_vectors(3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]),
    "GL(2,3)": lambda: linear_on_vectors(3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]]),
    "AGL(1,5)": lambda: _g(5, "(12345)", "(2354)"),
    "AGL(1,7)": lambda: _g(7, "(1234567)", "(243756)"),
    "AGL(1,8)": lambda: affine_group(8, [[[field(8).primitive]]]),
    "AGL(1,9)": lambda: affine_group(9, [[[field(9).primitive]]]),
    "AGL(2,3)": lambda: affine_group(3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]]),
    "ASL(2,3)": lambda: affine_group(3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]]),
    "C2wrC3": lambda: wreath_with_cyclic(cyclic_group(2), 3),
    "C3wrC2": lambda: wreath_with_cyclic(cyclic_group(3), 2),
    "S3wrC2": lambda: wreath_with_cyclic(symmetric_group(3), 2),
    "S4wrC2": lambda: wreath_with_cyclic(symmetric_group(4), 2),
    "A4wrC2": lambda: wreath_with_cyclic(alternating_group(4), 2),
    "D8wrC2": lambda: wreath_with_cyclic(dihedral_group(4), 2),
    "C5:C4xS3": lambda: direct_product(_g(5, "(12345)", "(2354)"), symmetric_group(3)),
    "PSL(2,3)xC3": lambda: direct_product(pgl2(3, special=True), cyclic_group(3)),
    "PSU(3,2)": lambda: affine_group(3, [[[0, 1], [2, 0]], [[1, 1], [1, 2]]]),
}

NONSOLVABLE: dict[str, Callable[[], PermGroup]] = {
    "A5": lambda: alternating_group(5),
    "S5": lambda: symmetric_group(5),
    "A6": lambda: alternating_group(6),
    "S6": lambda: symmetric_group(6),
    "PSL(2,7)": lambda: _catalog_projective("SL(2,7)"),
    "PGL(2,7)": lambda: pgl2(7),
    "PSL(2,8)": lambda: _catalog_projective("SL(2,8)"),
    "PGammaL(2,8)": lambda: pgl2(8, frobenius=True),
    "PSL(2,11)": lambda: _catalog_projective("SL(2,11)"),
    "PSL(2,13)": lambda: _catalog_projective("SL(2,13)"),
    "PGL(2,9)": lambda: pgl2(9),
    "GL(2,4)": lambda: linear_on_vectors(4, [[[1, 2], [0, 1]], [[1, 0], [1, 1]], [[1, 1], [0, 1]], [[2, 0], [0, 1]]]),
    "SL(2,5)": lambda: _catalog_vector("SL(2,5)"),
    "A5xC2": lambda: direct_product(alternating_group(5), cyclic_group(2)),
    "A5xC3": lambda: direct_product(alternating_group(5), cyclic_group(3)),
    "A5xS3": lambda: direct_product(alternating_group(5), symmetric_group(3)),
    "A5xA4": lambda: direct_product(alternating_group(5), alternating_group(4)),
    "S5xC2": lambda: direct_product(symmetric_group(5), cyclic_group(2)),
    "S5xS3": lambda: direct_product(symmetric_group(5), symmetric_group(3)),
    "A5xD10": lambda: direct_product(alternating_group(5), dihedral_group(5)),
    "PSL(2,7)xC2": lambda: direct_product(_catalog_projective("SL(2,7)"), cyclic_group(2)),
    "2^4:A5": lambda: affine_group(4, [[[1, 2], [0, 1]], [[1, 0], [1, 1]], [[1, 1], [0, 1]]]),
}


def corpus() -> dict[str, Callable[[], PermGroup]]:
    return {**SOLVABLE, **NONSOLVABLE}
