"""Character tables with exact cyclotomic values.

Tables are checked on load (class sizes, degrees, row orthogonality) and then
used to evaluate class-algebra structure constants and to search for a
coprime-order triple a*b*c = 1, the witness of nonsolvability in Thompson's
criterion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np

from .cyclotomic import Cyc, _shift_index, cyclic_conjugate, cyclic_convolve, reduce_array


class TableError(ValueError):
    """A character table failed one of its defining identities."""


@dataclass(frozen=True)
class CoprimeTriple:
    classes: tuple[int, int, int]
    orders: tuple[int, int, int]
    count: int
    names: tuple[str, str, str] = ("", "", "")


@dataclass
class CharacterTable:
    name: str
    group_order: int
    exponent: int
    class_names: list[str]
    class_sizes: list[int]
    element_orders: list[int]
    characters: list[list[Cyc]]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_classes(self) -> int:
        return len(self.class_sizes)

    @property
    def degrees(self) -> list[int]:
        return [int(row[0].to_fraction()) for row in self.characters]

    # -- exact integer arrays ---------------------------------------------------

    def _array(self) -> tuple[np.ndarray, int]:
        """Values as int64 vectors on z^0..z^(n-1), scaled by a common denominator."""
        if "array" not in self._cache:
            n = self.exponent
            den = 1
            vals = [[v.embed(n) for v in row] for row in self.characters]
            for row in vals:
                for v in row:
                    for c in v.coeffs:
                        den = math.lcm(den, c.denominator)
            X = np.zeros((len(vals), len(vals[0]), n), dtype=np.int64)
            for i, row in enumerate(vals):
                for j, v in enumerate(row):
                    for k, c in enumerate(v.coeffs):
                        X[i, j, k] = int(c * den)
            self._cache["array"] = (X, den)
        return self._cache["array"]

    def inverse_class(self) -> list[int]:
        """Index of the class of inverses, read off from complex conjugate columns."""
        if "inverse" not in self._cache:
            X, _ = self._array()
            cols = [reduce_array(X[:, j]).tobytes() for j in range(self.n_classes)]
            conj = [reduce_array(cyclic_conjugate(X[:, j])).tobytes() for j in range(self.n_classes)]
            lookup = {c: j for j, c in enumerate(cols)}
            if len(lookup) != self.n_classes:
                raise TableError(f"{self.name}: two classes have identical columns")
            try:
                self._cache["inverse"] = [lookup[c] for c in conj]
            except KeyError:
                raise TableError(f"{self.name}: conjugate column missing") from None
        return self._cache["inverse"]

    # -- validation ---------------------------------------------------------------

    def validate(self):
        r = self.n_classes
        if len(self.characters) != r or any(len(row) != r for row in self.characters):
            raise TableError(f"{self.name}: table must be square ({r} classes)")
        if len(self.element_orders) != r or len(self.class_names) != r:
            raise TableError(f"{self.name}: class data length mismatch")
        if sum(self.class_sizes) != self.group_order:
            raise TableError(f"{self.name}: class sizes sum to {sum(self.class_sizes)}, not {self.group_order}")
        if any(self.group_order % s for s in self.class_sizes):
            raise TableError(f"{self.name}: a class size does not divide the group order")
        if self.class_sizes[0] != 1 or self.element_orders[0] != 1:
            raise TableError(f"{self.name}: the first class must be the identity")
        if any(self.exponent % o for o in self.element_orders):
            raise TableError(f"{self.name}: exponent is not a multiple of every element order")
        for row in self.characters:
            for v in row:
                if self.exponent % v.n:
                    raise TableError(f"{self.name}: value {v} outside Q(zeta_{self.exponent})")
        for row in self.characters:
            d = row[0]
            if not d.is_integral_rational() or d.to_fraction() <= 0:
                raise TableError(f"{self.name}: degree {d} is not a positive integer")
        if sum(d * d for d in self.degrees) != self.group_order:
            raise TableError(f"{self.name}: squares of degrees do not sum to |G|")
        gram = self.inner_products()
        want = np.eye(r, dtype=np.int64) * self.group_order
        if not np.array_equal(gram, want):
            bad = np.argwhere(gram != want)[0]
            raise TableError(f"{self.name}: row orthogonality fails for characters {tuple(bad)}")
        return self

    def inner_products(self) -> np.ndarray:
        """Matrix of sum_C |C| chi(C) conj(psi(C)), asserted rational."""
        X, den = self._array()
        sizes = np.array(self.class_sizes, dtype=np.int64)
        conjX = cyclic_conjugate(X)
        out = np.zeros((self.n_classes, self.n_classes), dtype=object)
        for i in range(self.n_classes):
            prods = cyclic_convolve(X[i][None, :, :], conjX)  # [psi, C, n]
            summed = reduce_array(np.einsum("c,pck->pk", sizes, prods))
            if summed[:, 1:].any():
                raise TableError(f"{self.name}: inner product of character {i} is irrational")
            for j in range(self.n_classes):
                val = Fraction(int(summed[j, 0]), den * den)
                if val.denominator != 1:
                    raise TableError(f"{self.name}: non-integral inner product")
                out[i, j] = int(val)
        return out.astype(np.int64)

    # -- class algebra ------------------------------------------------------------

    def structure_constant(self, A: int, B: int, C: int) -> int:
        """#{(a, b) in A x B : ab = c} for a fixed c in class C."""
        return self.structure_constants_for(A, B)[C]

    def structure_constants_for(self, A: int, B: int) -> list[int]:
        """Structure constants n(A, B, C) for every class C."""
        key = ("sc", min(A, B), max(A, B))
        if key in self._cache:
            return self._cache[key]
        r = self.n_classes
        for idx in (A, B):
            if not 0 <= idx < r:
                raise IndexError(f"class index {idx} out of range")
        X, den = self._array()
        degs = self.degrees
        L = math.lcm(*degs)
        weights = np.array([L // d for d in degs], dtype=np.int64)
        AB = cyclic_convolve(X[:, A], X[:, B]) * weights[:, None]  # [chi, n]
        if "conj_shifted" not in self._cache:
            # [chi, C, a, k] = conj(chi(C)) coefficient at k - a
            self._cache["conj_shifted"] = cyclic_conjugate(X)[..., _shift_index(self.exponent)]
        total = reduce_array(np.einsum("xa,xcak->ck", AB, self._cache["conj_shifted"]))
        if total[:, 1:].any():
            raise TableError(f"{self.name}: irrational structure constant for ({A},{B})")
        scale = Fraction(self.class_sizes[A] * self.class_sizes[B], self.group_order * L * den**3)
        out = []
        for C in range(r):
            val = scale * int(total[C, 0])
            if val.denominator != 1 or val < 0:
                raise TableError(f"{self.name}: structure constant n({A},{B},{C}) = {val}")
            out.append(int(val))
        self._cache[key] = out
        return out

    # -- Thompson -------------------------------------------------------------------

    def coprime_triples(self):
        """Nontrivial class triples with pairwise coprime orders, in search order."""
        r = self.n_classes
        o, s = self.element_orders, self.class_sizes
        cands = []
        for A, B, C in combinations(range(1, r), 3):
            if math.gcd(o[A], o[B]) == math.gcd(o[A], o[C]) == math.gcd(o[B], o[C]) == 1:
                cands.append((s[A] * s[B] * s[C], A, B, C))
        cands.sort()
        return [(A, B, C) for _, A, B, C in cands]

    def thompson_nonsolvable(self) -> CoprimeTriple | None:
        inv = self.inverse_class()
        for A, B, C in self.coprime_triples():
            # abc = 1  <=>  ab = c^-1
            count = self.structure_constant(A, B, inv[C])
            if count > 0:
                o = self.element_orders
                names = self.class_names
                return CoprimeTriple((A, B, C), (o[A], o[B], o[C]), count, (names[A], names[B], names[C]))
        return None

    # -- serialization ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": str(self.group_order),
            "exponent": self.exponent,
            "classes": [{"name": nm, "size": str(sz), "element_order": o}
                        for nm, sz, o in zip(self.class_names, self.class_sizes, self.element_orders)],
            "irreducibles": [[v.to_json() for v in row] for row in self.characters],
        }


def table_from_json(obj: dict) -> CharacterTable:
    classes = obj["classes"]
    return CharacterTable(
        name=obj.get("name", "?"),
        group_order=int(obj["order"]),
        exponent=int(obj["exponent"]),
        class_names=[c.get("name", str(i)) for i, c in enumerate(classes)],
        class_sizes=[int(c["size"]) for c in classes],
        element_orders=[int(c["element_order"]) for c in classes],
        characters=[[Cyc.from_json(v) for v in row] for row in obj["irreducibles"]],
    )


def load_table(source) -> CharacterTable:
    """Load and verify a table from a dict, a JSON string, or a path."""
    if isinstance(source, CharacterTable):
        obj = source.to_json()
    elif isinstance(source, dict):
        obj = source
    elif isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        obj = json.loads(Path(source).read_text())
    else:
        obj = json.loads(source)
    try:
        table = table_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, TableError):
            raise
        raise TableError(f"malformed table: {exc}") from exc
    return table.validate()


def structure_constant(T: CharacterTable, A: int, B: int, C: int) -> int:
    return T.structure_constant(A, B, C)


def thompson_nonsolvable(T: CharacterTable) -> CoprimeTriple | None:
    return T.thompson_nonsolvable()


def shipped_table(name: str) -> CharacterTable:
    """One of the tables stored under the data directory (``tables/NAME.json``)."""
    from ..ffmat.classical import data_dir
    path = data_dir() / "tables" / f"{name}.json"
    if not path.exists():
        raise TableError(f"no shipped table named {name!r}")
    return load_table(path)
