"""Witnesses for nonsolvable generation, and exhaustive refutations.

Three questions are asked of an element x of a permutation group G:

* pair mode:        is <x, x^g> nonsolvable for some g?
* involution mode:  is <x, y> nonsolvable for some involution y?
* triple mode:      is <x, x^g1, x^g2> nonsolvable for some g1, g2?

Random searches are driven by ``random.Random(seed)`` and are reproducible.
Exhaustive sweeps fix x and let the remaining elements run over the class of
x; every triple of conjugates is conjugate to one with first entry x, and
solvability is a conjugacy invariant, so nothing is lost.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .ffmat.classical import CatalogError, PermRealization, catalog, realize
from .ffmat.matrix import FFMatrix
from .ffmat.polys import is_pseudoreflection, is_transvection, scalar_multiple_of
from .perm import PermGroup, Permutation, alternating_group, symmetric_group

DEFAULT_SEED = 0xBAE2
DEFAULT_BUDGET = 10**4
TRIPLE_DRAWS = 10**3
MODES = ("pair_conjugate", "involution_partner", "triple_conjugate")
MODE_ALIASES = {"pair": "pair_conjugate", "involution": "involution_partner", "triple": "triple_conjugate"}
PROPERTIES = ("any", "transvection", "pseudoreflection", "reflection")


class SearchError(ValueError):
    pass


def canonical_mode(mode: str) -> str:
    mode = MODE_ALIASES.get(mode, mode)
    if mode not in MODES:
        raise SearchError(f"unknown mode {mode!r}; expected one of {MODES}")
    return mode


# -- certificates ---------------------------------------------------------------

@dataclass
class Certificate:
    kind: str                                   # "derived_series_stabilizes" or "solvable"
    series_orders: list[int]
    triple_orders: tuple[int, int, int] | None = None
    triple_draws: int = 0

    @property
    def perfect_order(self) -> int:
        return self.series_orders[-1]

    def to_json(self) -> dict:
        out = {"kind": self.kind, "series_orders": [str(n) for n in self.series_orders],
               "perfect_order": str(self.perfect_order)}
        if self.kind != "solvable":
            out["thompson_triple"] = list(self.triple_orders) if self.triple_orders else None
            out["triple_draws"] = self.triple_draws
        return out


def nonsolvable_certificate(H: PermGroup, rng: random.Random | None = None,
                            draws: int = TRIPLE_DRAWS) -> Certificate:
    """Derived series evidence, plus a coprime-order triple abc = 1 when one turns up."""
    rng = rng or random.Random(DEFAULT_SEED)
    series = H.derived_series()
    orders = [G.order() for G in series]
    if series[-1].is_trivial():
        return Certificate("solvable", orders)
    cert = Certificate("derived_series_stabilizes", orders)
    for k in range(1, draws + 1):
        a, b = H.random_element(rng), H.random_element(rng)
        c = (a * b).inverse()
        oa, ob, oc = a.order(), b.order(), c.order()
        if min(oa, ob, oc) > 1 and math.gcd(oa, ob) == math.gcd(oa, oc) == math.gcd(ob, oc) == 1:
            cert.triple_orders = tuple(sorted((oa, ob, oc)))
            cert.triple_draws = k
            break
    else:
        cert.triple_draws = draws
    return cert


# -- tasks and witnesses -------------------------------------------------------------

@dataclass
class SearchTask:
    group: PermGroup
    x: Permutation
    mode: str = "pair_conjugate"
    budget: int = DEFAULT_BUDGET
    seed: int = DEFAULT_SEED
    exhaustive: bool = False
    partners: PermGroup | None = None   # where involution partners live (default: the group)
    name: str = ""

    def validate(self):
        self.mode = canonical_mode(self.mode)
        if self.budget < 1:
            raise SearchError("budget must be at least 1")
        if self.x not in self.group:
            raise SearchError("x is not in the group")
        return self


@dataclass
class Witness:
    x: Permutation
    mode: str
    elements: list[Permutation]         # conjugates x^g (pair, triple) or the involution y
    conjugators: list[Permutation]
    generated_order: int
    certificate: Certificate
    trials_used: int
    seed: int

    @property
    def generators(self) -> list[Permutation]:
        return [self.x] + self.elements

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "x": self.x.cycle_string(),
            "x_order": self.x.order(),
            "elements": [g.cycle_string() for g in self.elements],
            "conjugators": [g.cycle_string() for g in self.conjugators],
            "generated_order": str(self.generated_order),
            "certificate": self.certificate.to_json(),
            "trials_used": self.trials_used,
            "seed": self.seed,
        }


def _random_involution(G: PermGroup, rng: random.Random, tries: int = 200) -> Permutation | None:
    for _ in range(tries):
        g = G.random_element(rng)
        o = g.order()
        if o % 2 == 0:
            return g ** (o // 2)
    return None


def _witness(task: SearchTask, elements, conjugators, trials, rng) -> Witness | None:
    H = PermGroup([task.x] + list(elements), task.group.degree)
    if H.is_solvable():
        return None
    cert = nonsolvable_certificate(H, rng)
    return Witness(task.x, task.mode, list(elements), list(conjugators), H.order(), cert, trials, task.seed)


def find_nonsolvable(task: SearchTask) -> Witness | None:
    """Randomized (or exhaustive) search; the returned witness is always re-verified."""
    task.validate()
    rng = random.Random(task.seed)
    G, x = task.group, task.x
    if task.exhaustive:
        return _exhaustive_witness(task, rng)
    partners = task.partners or G
    for trial in range(1, task.budget + 1):
        if task.mode == "pair_conjugate":
            g = G.random_element(rng)
            w = _witness(task, [x ** g], [g], trial, rng)
        elif task.mode == "triple_conjugate":
            g1, g2 = G.random_element(rng), G.random_element(rng)
            w = _witness(task, [x ** g1, x ** g2], [g1, g2], trial, rng)
        else:
            y = _random_involution(partners, rng)
            if y is None:
                raise SearchError("no involutions found in the partner group")
            w = _witness(task, [y], [], trial, rng)
        if w is not None:
            return w
    return None


def _exhaustive_witness(task: SearchTask, rng: random.Random) -> Witness | None:
    G, x = task.group, task.x
    trials = 0
    if task.mode == "involution_partner":
        partners = task.partners or G
        pool = [y for cls in partners.involution_classes() for y in cls.elements]
        for y in pool:
            trials += 1
            w = _witness(task, [y], [], trials, rng)
            if w is not None:
                return w
        return None
    cls = G.conjugacy_class(x).elements
    if task.mode == "pair_conjugate":
        for y in cls:
            trials += 1
            w = _witness(task, [y], [], trials, rng)
            if w is not None:
                return w
        return None
    sweep = exhaustive_all_solvable(G, x, "triple_conjugate")
    if sweep.all_solvable:
        return None
    y, z = sweep.offending
    return _witness(task, [y, z], [], sweep.pairs_checked, rng)


# -- exhaustive sweeps ----------------------------------------------------------------

@dataclass
class SweepResult:
    mode: str
    class_size: int
    all_solvable: bool
    census: Counter = field(default_factory=Counter)
    pairs_checked: int = 0
    distinct_subgroups: int = 0
    offending: tuple | None = None      # the first (y, z) giving a nonsolvable group

    def to_json(self) -> dict:
        return {
            "mode": self.mode, "class_size": self.class_size, "all_solvable": self.all_solvable,
            "census": {str(k): v for k, v in sorted(self.census.items())},
            "pairs_checked": self.pairs_checked, "distinct_subgroups": self.distinct_subgroups,
            "offending": [p.cycle_string() for p in self.offending] if self.offending else None,
        }


def _solvable_order(gens: list[tuple], degree: int) -> tuple[bool, int]:
    H = PermGroup._from_raw(list(gens), degree)
    return H.is_solvable(), H.order()


# worker state for process pools: set once per worker by the initializer
_SWEEP: dict = {}


def _init_sweep(x, cls, degree, mode):
    _SWEEP.update(x=x, cls=cls, degree=degree, mode=mode)


def _sweep_rows(rows: list[int]) -> tuple[Counter, int, int, tuple | None]:
    x, cls, degree, mode = _SWEEP["x"], _SWEEP["cls"], _SWEEP["degree"], _SWEEP["mode"]
    memo: dict[frozenset, tuple[bool, int]] = {}
    census = Counter()
    checked = 0
    inner = range(len(cls)) if mode == "triple_conjugate" else [None]
    for i in rows:
        for j in inner:
            gens = {x, cls[i]} if j is None else {x, cls[i], cls[j]}
            key = frozenset(gens)
            if key not in memo:
                memo[key] = _solvable_order(sorted(gens), degree)
            ok, order = memo[key]
            census[order] += 1
            checked += 1
            if not ok:
                return census, checked, len(memo), (i, j)
    return census, checked, len(memo), None


def exhaustive_all_solvable(G: PermGroup, x: Permutation, mode: str = "triple_conjugate",
                            workers: int = 1, shuffle_seed: int | None = None,
                            cap: int = 10**5) -> SweepResult:
    """Is every <x, y> (pair) or <x, y, z> (triple), y, z in x^G, solvable?

    ``shuffle_seed`` permutes the iteration order (the answer must not change).
    """
    mode = canonical_mode(mode)
    if mode == "involution_partner":
        raise SearchError("exhaustive sweeps run over the class of x: use pair or triple mode")
    conj = G.conjugacy_class(x, cap=cap)
    cls = [c.images for c in conj.elements]
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(cls)
    n = len(cls)
    result = SweepResult(mode, n, True)
    if workers <= 1:
        _init_sweep(x.images, cls, G.degree, mode)
        chunks = [_sweep_rows(list(range(n)))]
    else:
        parts = [list(range(k, n, workers)) for k in range(workers)]
        with ProcessPoolExecutor(workers, initializer=_init_sweep,
                                 initargs=(x.images, cls, G.degree, mode)) as pool:
            chunks = list(pool.map(_sweep_rows, parts))
    bad = []
    for census, checked, distinct, offending in chunks:
        result.census += census
        result.pairs_checked += checked
        result.distinct_subgroups += distinct
        if offending is not None:
            bad.append(offending)
    if bad:
        i, j = min(bad, key=lambda ij: (ij[0], -1 if ij[1] is None else ij[1]))
        result.all_solvable = False
        pair = (cls[i],) if j is None else (cls[i], cls[j])
        result.offending = tuple(Permutation(p, check=False) for p in pair)
    return result


def unreduced_triple_sweep(G: PermGroup, x: Permutation) -> bool:
    """All (x1, x2, x3) in the class cubed, with no conjugacy reduction (an oracle)."""
    cls = G.conjugacy_class(x).elements
    seen = {}
    for a in cls:
        for b in cls:
            for c in cls:
                key = frozenset((a.images, b.images, c.images))
                if key not in seen:
                    seen[key] = _solvable_order(sorted(key), G.degree)[0]
                if not seen[key]:
                    return False
    return True


# -- named groups and element selection --------------------------------------------------

_PROJECTIVE_ALIASES = {"PSL": "SL", "PSU": "SU", "PSp": "Sp", "POmega": "Omega", "PGO": "GO"}


@dataclass
class NamedGroup:
    name: str
    group: PermGroup
    realization: PermRealization | None = None


def resolve_group(name: str) -> NamedGroup:
    """A catalog matrix group (as its projective action), S_n / A_n, or a corpus group."""
    text = name.strip()
    for prefix, target in _PROJECTIVE_ALIASES.items():
        if text.startswith((prefix + "(", prefix + "+(", prefix + "-(")):
            text = target + text[len(prefix):]
            break
    if text in catalog():
        r = realize(text)
        return NamedGroup(name, r.group, r)
    if len(text) > 1 and text[0] in "SA" and text[1:].isdigit():
        n = int(text[1:])
        return NamedGroup(name, symmetric_group(n) if text[0] == "S" else alternating_group(n))
    from .chartab.corpus import corpus
    groups = corpus()
    if name.strip() in groups:
        return NamedGroup(name, groups[name.strip()]())
    raise CatalogError(f"unknown group {name!r}")


def is_reflection(m: FFMatrix) -> bool:
    """rank(m - 1) = 1 and m^2 = 1: orthogonal reflections (transvections when q is even)."""
    return (m * m).is_identity() and (m - FFMatrix.identity(m.field, m.d)).rank() == 1


_PREDICATES = {
    "transvection": is_transvection,
    "pseudoreflection": is_pseudoreflection,
    "reflection": is_reflection,
}


def prime_power_part(order: int) -> int:
    """Exponent k with x^k of prime order r, r the largest prime dividing ``order``."""
    r = max(p for p in range(2, order + 1) if order % p == 0 and all(p % d for d in range(2, p)))
    return order // r


def has_property(named: NamedGroup, x: Permutation, prop: str) -> bool:
    """Does the prime-order power of x (lifted to matrices) satisfy ``prop`` up to a scalar?"""
    if prop == "any":
        return True
    if prop not in _PREDICATES:
        raise SearchError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    if named.realization is None:
        raise SearchError(f"{named.name} is not a matrix group: property {prop!r} cannot be tested")
    o = x.order()
    if o == 1:
        return False
    m = named.realization.lift(x ** prime_power_part(o))
    return scalar_multiple_of(m, _PREDICATES[prop]) is not None


def find_element(named: NamedGroup, order: int, prop: str = "any", seed: int = DEFAULT_SEED,
                 tries: int = 20000, exclude: str | None = None) -> Permutation:
    """A random element of the given order whose prime-order power has ``prop``.

    Powers of random elements are used, so elements of small order are found
    quickly even when rare.  ``exclude`` rejects elements having that property.
    """
    rng = random.Random(seed)
    G = named.group
    for k in range(tries):
        g = G.random_element(rng)
        o = g.order()
        if o % order:
            continue
        x = g ** (o // order)
        if has_property(named, x, prop) and not (exclude and has_property(named, x, exclude)):
            return x
    raise SearchError(f"no element of order {order} with property {prop!r} found in {tries} tries")


def property_classes(named: NamedGroup, order: int, prop: str, seed: int = DEFAULT_SEED,
                     tries: int = 4000, cap: int = 10**5) -> list:
    """Class representatives of elements of ``order`` with ``prop`` met in a random sample.

    The generators are tried first: catalog generators are root elements, so the
    classes of transvections and reflections are found without luck.
    """
    rng = random.Random(seed)
    G = named.group
    reps, members = [], set()
    candidates = list(G.generators)
    for _ in range(tries):
        g = G.random_element(rng)
        o = g.order()
        if o % order == 0:
            candidates.append(g ** (o // order))
    for x in candidates:
        if x.order() != order or x.images in members or not has_property(named, x, prop):
            continue
        cls = G.conjugacy_class(x, cap=cap)
        members.update(c.images for c in cls.elements)
        reps.append(cls)
    return reps


# -- Suzuki covering scenario computed in the group ----------------------------------------

def sz_exact_scenario(x: Permutation, named: NamedGroup | None = None):
    """The covering-lemma data for Sz(8) and x of prime order, counted in the group.

    Subgroups: the point stabiliser q^2:(q-1) (when x fixes an ovoid point) and
    N(<x>).  Sz(2) = 5:4 contains no element of order 7 or 13.
    """
    from .bounds import CountingScenario, SubgroupData
    named = named or resolve_group("Sz(8)")
    G = named.group
    N = G.order()
    xs = G.conjugacy_class(x)
    cls = {c.images for c in xs.elements}
    y0 = _random_involution(G, random.Random(DEFAULT_SEED))
    Y = G.conjugacy_class(y0).elements
    subs = []
    fixed = [i for i in range(G.degree) if x.images[i] == i]
    if fixed:
        pt = fixed[0]
        index = G.degree
        fusion = xs.size * len(fixed) // index
        invs = sum(1 for y in Y if y.images[pt] == pt)
        subs.append(SubgroupData("point stabiliser", index=index, fusion=fusion, involutions=invs))
    p = x.order()
    powers = [x ** k for k in range(1, p)]
    fusion = sum(1 for h in powers if h.images in cls)
    cent = N // xs.size
    norm = cent * fusion
    cyc = {h.images for h in powers}
    invs = sum(1 for y in Y if (x ** y).images in cyc)
    subs.append(SubgroupData("N(<x>)", index=N // norm, fusion=fusion, involutions=invs))
    return CountingScenario(f"Sz(8) exact, |x| = {p}", xs.size, len(Y), tuple(subs))
