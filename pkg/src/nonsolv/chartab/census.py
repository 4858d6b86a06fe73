"""Thompson's criterion against the derived series, over the group corpus."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import corpus
from .dixon import brute_structure_constant, character_table, element_data

BRUTE_MAX_ORDER = 400


@dataclass
class GroupCheck:
    name: str
    order: int
    n_classes: int
    solvable: bool
    triple: tuple[int, int, int] | None      # element orders of the Thompson triple
    constants_checked: int                   # structure constants compared with direct counts
    constants_mismatched: int

    @property
    def agrees(self) -> bool:
        return (self.triple is None) == self.solvable and self.constants_mismatched == 0

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "classes": self.n_classes,
                "solvable": self.solvable, "triple": list(self.triple) if self.triple else None,
                "constants_checked": self.constants_checked, "agrees": self.agrees}


def check_group(name: str, brute_max: int = BRUTE_MAX_ORDER) -> GroupCheck:
    G = corpus()[name]()
    data = element_data(G)
    T = character_table(G, name, data)
    trip = T.thompson_nonsolvable()
    checked = bad = 0
    if G.order() <= brute_max:
        r = T.n_classes
        for A in range(r):
            for B in range(r):
                row = T.structure_constants_for(A, B)
                for C in range(r):
                    checked += 1
                    bad += row[C] != brute_structure_constant(data, A, B, C)
    return GroupCheck(name, G.order(), T.n_classes, G.is_solvable(),
                      trip.orders if trip else None, checked, bad)


def corpus_census(names=None, brute_max: int = BRUTE_MAX_ORDER) -> list[GroupCheck]:
    names = sorted(corpus()) if names is None else names
    return [check_group(n, brute_max) for n in names]
