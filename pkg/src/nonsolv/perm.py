"""Permutations and permutation groups backed by a stabilizer chain.

Points are numbered from 0 internally.  The text boundary (``parse_cycles`` /
``Permutation.cycle_string``) uses 1-based cycle notation, so ``"(1,2)(3,4)"``
and the compact ``"(12)(34)"`` both denote the same element of S_4.

Products compose left to right: ``a * b`` first applies ``a`` and then ``b``,
and ``x ** g`` (with ``g`` a Permutation) is the conjugate ``g^-1 x g``.
"""

from __future__ import annotations

import math
import random
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from operator import itemgetter
from typing import Iterable, Iterator, Sequence

MAX_DEGREE = 4096
MAX_CLASS_LISTING = 10**6


class DegreeError(ValueError):
    pass


class MembershipError(ValueError):
    pass


class ClassTooLarge(RuntimeError):
    pass


def _compose(a: tuple, b: tuple) -> tuple:
    # i -> b[a[i]]
    if len(a) == 1:
        return (b[a[0]],)
    return itemgetter(*a)(b)


def _inverse(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def _is_identity(a: tuple) -> bool:
    return all(i == j for i, j in enumerate(a))


def _cycle_lengths(a: tuple) -> list[int]:
    seen = bytearray(len(a))
    lengths = []
    for start in range(len(a)):
        if seen[start]:
            continue
        n = 0
        j = start
        while not seen[j]:
            seen[j] = 1
            j = a[j]
            n += 1
        lengths.append(n)
    return lengths


def _order(a: tuple) -> int:
    return math.lcm(*_cycle_lengths(a)) if a else 1


def _power(a: tuple, n: int) -> tuple:
    if n < 0:
        a, n = _inverse(a), -n
    result = tuple(range(len(a)))
    while n:
        if n & 1:
            result = _compose(result, a)
        a = _compose(a, a)
        n >>= 1
    return result


class Permutation:
    """A bijection of {0, ..., degree-1}, stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check:
            if len(images) > MAX_DEGREE:
                raise DegreeError(f"degree {len(images)} exceeds cap {MAX_DEGREE}")
            if sorted(images) != list(range(len(images))):
                raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-based cycles."""
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation(_compose(self.images, other.images), check=False)

    def __pow__(self, other):
        if isinstance(other, Permutation):
            return other.inverse() * self * other
        return Permutation(_power(self.images, other), check=False)

    def inverse(self) -> "Permutation":
        return Permutation(_inverse(self.images), check=False)

    def __invert__(self):
        return self.inverse()

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def is_identity(self) -> bool:
        return _is_identity(self.images)

    def order(self) -> int:
        return _order(self.images)

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths (fixed points included)."""
        return tuple(sorted(_cycle_lengths(self.images), reverse=True))

    def support(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point (0-based)."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cycles)

    def __repr__(self):
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"

    def __str__(self):
        return self.cycle_string()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-based disjoint-or-not cycle notation.

    Cycles with commas or whitespace are split on them; a cycle without either
    is read digit by digit, as in ``(12345)``.  Cycles are composed left to
    right.  ``degree`` defaults to the largest point mentioned.
    """
    stripped = text.strip()
    leftover = _CYCLE_RE.sub("", stripped).strip()
    if leftover:
        raise ValueError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[,\s]", body):
            pts = [int(t) for t in re.split(r"[,\s]+", body) if t]
        else:
            pts = [int(ch) for ch in body]
        if min(pts) < 1:
            raise ValueError(f"points are 1-based: {text!r}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle: {text!r}")
        cycles.append([p - 1 for p in pts])
    top = max((max(c) + 1 for c in cycles), default=0)
    if degree is None:
        degree = max(top, 1)
    elif top > degree:
        raise DegreeError(f"point {top} outside degree {degree}")
    result = Permutation.identity(degree)
    for c in cycles:
        result = result * Permutation.from_cycles([c], degree)
    return result


def compose(a: Permutation, b: Permutation) -> Permutation:
    return a * b


def order_of(a: Permutation) -> int:
    return a.order()


class _Chain:
    """Mutable stabilizer chain; ``PermGroup`` freezes one after construction."""

    def __init__(self, degree: int):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.strong: list[list[tuple]] = []
        # level -> {point: (u, u^-1)} with base[level]^u == point
        self.trans: list[dict[int, tuple[tuple, tuple]]] = []
        self.done: list[set] = []

    def _new_level(self, point: int):
        self.base.append(point)
        self.strong.append([])
        self.trans.append({point: (self.identity, self.identity)})
        self.done.append(set())

    def _extend_orbit(self, level: int):
        orbit = self.trans[level]
        gens = self.strong[level]
        queue = list(orbit)
        k = 0
        while k < len(queue):
            pt = queue[k]
            k += 1
            u, _ = orbit[pt]
            for s in gens:
                img = s[pt]
                if img not in orbit:
                    v = _compose(u, s)
                    orbit[img] = (v, _inverse(v))
                    queue.append(img)

    def strip(self, h: tuple, start: int = 0) -> tuple[tuple, int]:
        """Sift ``h`` from ``start``; return residue and the level where it stopped."""
        for level in range(start, len(self.base)):
            img = h[self.base[level]]
            entry = self.trans[level].get(img)
            if entry is None:
                return h, level
            if img != self.base[level]:
                h = _compose(h, entry[1])
        return h, len(self.base)

    def _insert(self, residue: tuple, first: int, last: int):
        if last == len(self.base):
            moved = next(i for i, j in enumerate(residue) if i != j)
            self._new_level(moved)
        for level in range(first, last + 1):
            self.strong[level].append(residue)
            self._extend_orbit(level)

    def add_generator(self, g: tuple) -> bool:
        """Add ``g`` to the group; return False if it was already a member."""
        residue, level = self.strip(g)
        if _is_identity(residue):
            return False
        self._insert(residue, 0, level)
        self._complete(level)
        return True

    def _complete(self, top: int):
        i = top
        while i >= 0:
            jumped = False
            orbit = self.trans[i]
            gens = self.strong[i]
            done = self.done[i]
            for beta in list(orbit):
                u, _ = orbit[beta]
                for k, s in enumerate(gens):
                    key = (beta, k)
                    if key in done:
                        continue
                    done.add(key)
                    img = s[beta]
                    h = _compose(_compose(u, s), orbit[img][1])
                    if _is_identity(h):
                        continue
                    residue, level = self.strip(h, i + 1)
                    if not _is_identity(residue):
                        self._insert(residue, i + 1, level)
                        i = level
                        jumped = True
                        break
                if jumped:
                    break
            if not jumped:
                i -= 1


@dataclass(frozen=True)
class ConjClass:
    representative: Permutation
    size: int
    elements: list[Permutation] | None = field(default=None, repr=False)


class PermGroup:
    """A permutation group with a base and strong generating set.

    The chain is built deterministically from the generators in the given
    order; the order and membership test are exact.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("need a generator or an explicit degree")
            degree = gens[0].degree
        if degree > MAX_DEGREE:
            raise DegreeError(f"degree {degree} exceeds cap {MAX_DEGREE}")
        for g in gens:
            if g.degree != degree:
                raise DegreeError(f"generator of degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        chain = _Chain(degree)
        for g in gens:
            chain.add_generator(g.images)
        self._chain = chain
        self._order = math.prod(len(t) for t in chain.trans)

    @classmethod
    def _from_raw(cls, gens: list[tuple], degree: int) -> "PermGroup":
        return cls([Permutation(g, check=False) for g in gens], degree)

    # -- basic data -----------------------------------------------------

    @property
    def base(self) -> list[int]:
        return list(self._chain.base)

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = {}
        for level in self._chain.strong:
            for s in level:
                seen.setdefault(s, None)
        return [Permutation(s, check=False) for s in seen]

    @property
    def basic_orbits(self) -> list[list[int]]:
        return [list(t) for t in self._chain.trans]

    def order(self) -> int:
        return self._order

    def __len__(self):
        return self._order

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return self._order == 1

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._chain.strip(g.images)
        return _is_identity(residue)

    contains = __contains__

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other):
        return (isinstance(other, PermGroup) and self.degree == other.degree
                and self._order == other._order and self.is_subgroup_of(other))

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<PermGroup degree={self.degree} order={self._order}>"

    # -- elements ---------------------------------------------------------

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once, as products of transversal elements."""
        trans = [[u for u, _ in t.values()] for t in self._chain.trans]

        def rec(level, acc):
            if level < 0:
                yield Permutation(acc, check=False)
                return
            for u in trans[level]:
                yield from rec(level - 1, _compose(acc, u))

        yield from rec(len(trans) - 1, self._chain.identity)

    def __iter__(self):
        return self.elements()

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniform random element: one transversal element per level."""
        g = self._chain.identity
        for t in reversed(self._chain.trans):
            keys = list(t)
            u, _ = t[keys[rng.randrange(len(keys))]]
            g = _compose(g, u)
        return Permutation(g, check=False)

    # -- subgroup constructions ------------------------------------------

    def subgroup(self, gens: Iterable[Permutation]) -> "PermGroup":
        return PermGroup(list(gens), self.degree)

    def normal_closure(self, gens: Iterable[Permutation]) -> "PermGroup":
        """Smallest subgroup normalized by ``self`` containing ``gens``."""
        chain = _Chain(self.degree)
        kept = []
        for g in gens:
            if chain.add_generator(g.images):
                kept.append(g.images)
        conj = [(g.images, _inverse(g.images)) for g in self.generators]
        k = 0
        while k < len(kept):
            n = kept[k]
            k += 1
            for g, ginv in conj:
                c = _compose(_compose(ginv, n), g)
                if chain.add_generator(c):
                    kept.append(c)
        group = PermGroup.__new__(PermGroup)
        group.degree = self.degree
        group.generators = [Permutation(g, check=False) for g in kept]
        group._chain = chain
        group._order = math.prod(len(t) for t in chain.trans)
        return group

    def derived_subgroup(self) -> "PermGroup":
        gens = [g.images for g in self.generators]
        comms = []
        seen = set()
        for i, a in enumerate(gens):
            ainv = _inverse(a)
            for b in gens[i + 1:]:
                c = _compose(_compose(ainv, _inverse(b)), _compose(a, b))
                if not _is_identity(c) and c not in seen:
                    seen.add(c)
                    comms.append(Permutation(c, check=False))
        return self.normal_closure(comms)

    def derived_series(self) -> list["PermGroup"]:
        series = [self]
        while True:
            last = series[-1]
            if last.is_trivial():
                return series
            nxt = last.derived_subgroup()
            if nxt.order() == last.order():
                return series
            series.append(nxt)

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].is_trivial()

    def is_perfect(self) -> bool:
        return self.derived_subgroup().order() == self._order

    def is_abelian(self) -> bool:
        gens = self.generators
        return all((a * b) == (b * a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def orbit(self, point: int) -> list[int]:
        orbit = [point]
        seen = {point}
        for pt in orbit:
            for g in self.generators:
                img = g.images[pt]
                if img not in seen:
                    seen.add(img)
                    orbit.append(img)
        return orbit

    # -- conjugacy --------------------------------------------------------

    def conjugacy_class(self, x: Permutation, cap: int = MAX_CLASS_LISTING,
                        listing: bool = True) -> ConjClass:
        """Class of ``x`` by orbit computation under conjugation.

        The orbit is always materialized, so ``cap`` bounds memory whether or
        not the caller keeps the elements.
        """
        if x not in self:
            raise MembershipError(f"{x} is not in the group")
        conj = [(g.images, _inverse(g.images)) for g in self.generators]
        orbit = [x.images]
        seen = {x.images}
        for y in orbit:
            for g, ginv in conj:
                z = _compose(_compose(ginv, y), g)
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
                    if len(orbit) > cap:
                        raise ClassTooLarge(f"class of {x} exceeds cap {cap}")
        elements = [Permutation(y, check=False) for y in orbit] if listing else None
        return ConjClass(x, len(orbit), elements)

    def conjugacy_classes(self, predicate=None) -> list[ConjClass]:
        """All classes (optionally only those whose elements satisfy ``predicate``).

        Walks the full element list, so meant for groups of modest order.
        """
        remaining = set()
        for g in self.elements():
            if predicate is None or predicate(g):
                remaining.add(g.images)
        classes = []
        for g in sorted(remaining):
            if g not in remaining:
                continue
            cls = self.conjugacy_class(Permutation(g, check=False))
            for y in cls.elements:
                remaining.discard(y.images)
            classes.append(cls)
        classes.sort(key=lambda c: (c.representative.order(), c.size, c.representative.images))
        return classes

    def involution_classes(self) -> list[ConjClass]:
        return self.conjugacy_classes(lambda g: g.order() == 2)

    def involution_count(self) -> int:
        return sum(c.size for c in self.involution_classes())

    def element_order_counts(self) -> Counter:
        return Counter(g.order() for g in self.elements())


def bsgs_build(gens: Sequence[Permutation]) -> PermGroup:
    if not gens:
        raise ValueError("need at least one generator")
    return PermGroup(gens)


def derived_series(G: PermGroup) -> list[PermGroup]:
    return G.derived_series()


def is_solvable(G: PermGroup) -> bool:
    return G.is_solvable()


def conjugacy_class(G: PermGroup, x: Permutation, cap: int = MAX_CLASS_LISTING) -> ConjClass:
    return G.conjugacy_class(x, cap)


def involution_count(G: PermGroup) -> int:
    return G.involution_count()


def random_element(G: PermGroup, rng: random.Random) -> Permutation:
    return G.random_element(rng)


def closure(gens: Sequence[Permutation], limit: int | None = None) -> set[Permutation]:
    """Brute-force closure of ``gens`` under multiplication (an independent oracle)."""
    if not gens:
        raise ValueError("need at least one generator")
    ident = Permutation.identity(gens[0].degree)
    seen = {ident.images}
    queue = deque([ident.images])
    raw = [g.images for g in gens]
    while queue:
        a = queue.popleft()
        for g in raw:
            b = _compose(a, g)
            if b not in seen:
                seen.add(b)
                queue.append(b)
                if limit is not None and len(seen) > limit:
                    raise RuntimeError(f"closure exceeds {limit} elements")
    return {Permutation(a, check=False) for a in seen}


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup([], degree=max(n, 1))
    gens = [Permutation.from_cycles([list(range(n))], n), Permutation.from_cycles([[0, 1]], n)]
    return PermGroup(gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], degree=max(n, 1))
    gens = [Permutation.from_cycles([[i, i + 1, i + 2]], n) for i in range(n - 2)]
    return PermGroup(gens)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles([list(range(n))], n)] if n > 1 else [], degree=max(n, 1))


def dihedral_group(n: int) -> PermGroup:
    """Dihedral group of order 2n acting on n points."""
    rot = Permutation.from_cycles([list(range(n))], n)
    ref = Permutation([(-i) % n for i in range(n)])
    return PermGroup([rot, ref])


def direct_product(*groups: PermGroup) -> PermGroup:
    """Intransitive direct product on the disjoint union of the domains."""
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            images = list(range(degree))
            for i, j in enumerate(g.images):
                images[offset + i] = offset + j
            gens.append(Permutation(images, check=False))
        offset += G.degree
    return PermGroup(gens, degree)
