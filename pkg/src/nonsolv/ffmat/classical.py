"""Classical matrix groups: forms, generator catalog, and permutation actions.

Forms use the row-vector convention: a bilinear or sesquilinear form is
f(u, v) = u B sigma(v)^T, and g preserves it when g B sigma(g)^T = B (sigma is
the unitary twist x -> x^sqrt(q) for unitary groups and the identity
otherwise).  Orthogonal groups carry a quadratic form stored as an upper
triangular matrix Qm with Q(v) = v Qm v^T.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from ..perm import MAX_DEGREE, DegreeError, Permutation, PermGroup
from .field import GF, field, prime_power
from .matrix import FFMatrix, matmul, vecmat, inverse, rank, solve

FAMILIES = ("SL", "SU", "Sp", "GO", "GU", "GL", "GSp", "Omega", "OmegaPlus", "OmegaMinus", "Sz")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class MatGroupSpec:
    name: str
    family: str
    d: int
    q: int
    generators: tuple[FFMatrix, ...]
    form: FFMatrix | None = None
    expected_order: int | None = None
    action: str = "projective"
    notes: str = ""

    @property
    def field(self) -> GF:
        return self.generators[0].field

    @property
    def form_q(self) -> int:
        """Order of the subfield the form lives over (q0 with q = q0^2 for unitary)."""
        return self.q

    def is_unitary(self) -> bool:
        return self.family in ("SU", "GU")


# -- forms ------------------------------------------------------------------

def symplectic_form(F: GF, d: int) -> FFMatrix:
    """Basis e_1..e_m, f_m..f_1 with f(e_i, f_i) = 1."""
    B = np.zeros((d, d), dtype=np.int64)
    m = d // 2
    for i in range(m):
        B[i, d - 1 - i] = 1
        B[d - 1 - i, i] = int(F.neg[1])
    return FFMatrix(F, B)


def quadratic_form(F: GF, d: int) -> FFMatrix:
    """Q = x_1 x_d + x_2 x_{d-1} + ... (+ x_m^2 in odd dimension); plus type."""
    Q = np.zeros((d, d), dtype=np.int64)
    for i in range(d // 2):
        Q[i, d - 1 - i] = 1
    if d % 2:
        Q[d // 2, d // 2] = 1
    return FFMatrix(F, Q)


def polar_form(Qm: FFMatrix) -> FFMatrix:
    return Qm + Qm.transpose()


def quad_value(F: GF, Qm: np.ndarray, v: np.ndarray) -> int:
    w = vecmat(F, v[None, :], Qm)[0]
    return int(vecmat(F, w[None, :], v[:, None])[0, 0])


def _twisted(g: FFMatrix, unitary: bool) -> FFMatrix:
    return g.frobenius(g.field.k // 2) if unitary else g


def preserves_form(g: FFMatrix, B: FFMatrix, unitary: bool = False) -> bool:
    return g * B * _twisted(g, unitary).transpose() == B


def similitude_multiplier(g: FFMatrix, B: FFMatrix) -> int | None:
    """lambda with g B g^T = lambda B, or None."""
    lhs = g * B * g.transpose()
    i, j = np.argwhere(B.entries != 0)[0]
    lam = int(g.field.mul[lhs.entries[i, j], g.field.inv[B.entries[i, j]]])
    return lam if lhs == B.scale(lam) else None


def preserves_quadratic(g: FFMatrix, Qm: FFMatrix) -> bool:
    """Q(vg) = Q(v) for all v, i.e. g Qm g^T and Qm agree as quadratic forms."""
    F = g.field
    M = (g * Qm * g.transpose()).entries
    Q = Qm.entries
    d = g.d
    for i in range(d):
        if M[i, i] != Q[i, i]:
            return False
        for j in range(i + 1, d):
            if F.add[M[i, j], M[j, i]] != F.add[Q[i, j], Q[j, i]]:
                return False
    return True


def family_check(spec: MatGroupSpec, g: FFMatrix) -> bool:
    """Form preservation and determinant constraint for one generator."""
    fam = spec.family
    F = g.field
    dt = g.det()
    if dt == 0:
        return False
    if fam in ("SL",):
        return dt == 1
    if fam == "GL":
        return True
    if fam in ("SU", "GU"):
        if not preserves_form(g, spec.form, unitary=True):
            return False
        return dt == 1 if fam == "SU" else True
    if fam in ("Sp", "Sz"):
        return preserves_form(g, spec.form)
    if fam == "GSp":
        return similitude_multiplier(g, spec.form) is not None
    if fam in ("GO", "Omega", "OmegaPlus", "OmegaMinus"):
        if not preserves_quadratic(g, spec.form):
            return False
        if fam != "GO" and F.p != 2:
            return dt == 1
        return True
    raise CatalogError(f"unknown family {fam}")


# -- generator pools --------------------------------------------------------

def normalized_vectors(F: GF, d: int) -> np.ndarray:
    """Projective point representatives: first nonzero coordinate 1, lex order."""
    q = F.q
    rows = []
    for lead in range(d):
        n_tail = d - lead - 1
        tails = np.array(np.unravel_index(np.arange(q**n_tail), (q,) * n_tail)).T \
            if n_tail else np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(tails), d), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tails
        rows.append(block)
    # lex order puts the leading-1-in-position-0 block last; sort numerically
    pts = np.concatenate(rows)
    codes = pts @ (q ** np.arange(d - 1, -1, -1))
    return pts[np.argsort(codes)]


def all_vectors(F: GF, d: int) -> np.ndarray:
    """Nonzero vectors in lex order."""
    q = F.q
    pts = np.array(np.unravel_index(np.arange(1, q**d), (q,) * d)).T
    return pts.astype(np.int64)


def elementary(F: GF, d: int, i: int, j: int, a: int) -> FFMatrix:
    M = np.eye(d, dtype=np.int64)
    M[i, j] = a
    return FFMatrix(F, M)


def rank_one_update(F: GF, col: np.ndarray, row: np.ndarray, a: int) -> FFMatrix:
    """I + a * col^T row."""
    d = len(row)
    outer = F.mul[col[:, None], row[None, :]]
    outer = F.mul[outer, a]
    return FFMatrix(F, F.add[np.eye(d, dtype=np.int64), outer])


def symplectic_transvection(F: GF, B: FFMatrix, v: np.ndarray, a: int) -> FFMatrix:
    """u -> u + a f(u, v) v."""
    col = vecmat(F, v[None, :], B.entries.T)[0]
    return rank_one_update(F, col, v, a)


def unitary_transvection(F: GF, v: np.ndarray, a: int) -> FFMatrix:
    """u -> u + a h(u, v) v for the identity hermitian form; needs h(v,v)=0, a+a^q0=0."""
    col = F.twist(v)
    return rank_one_update(F, col, v, a)


def orthogonal_reflection(F: GF, Qm: FFMatrix, v: np.ndarray) -> FFMatrix:
    """u -> u - f(u, v)/Q(v) v (a transvection in characteristic 2)."""
    B = polar_form(Qm)
    qv = quad_value(F, Qm.entries, v)
    if qv == 0:
        raise ValueError("reflection needs a nonsingular vector")
    col = vecmat(F, v[None, :], B.entries.T)[0]
    return rank_one_update(F, col, v, int(F.neg[F.inv[qv]]))


def hermitian_norm(F: GF, v: np.ndarray) -> int:
    tw = F.twist(v)
    acc = 0
    for x, y in zip(v.tolist(), tw.tolist()):
        acc = int(F.add[acc, F.mul[x, y]])
    return acc


def candidate_pool(family: str, d: int, q: int, sign: str = "") -> tuple[list[FFMatrix], FFMatrix | None]:
    """Deterministic list of group elements that generate the named group.

    The catalog builder greedily keeps the members that enlarge the group.
    """
    F = field(q)
    basis = [F.pow(F.primitive, i) for i in range(F.k)]
    pool: list[FFMatrix] = []
    form = None
    if family in ("SL", "GL"):
        for i in range(d):
            for j in range(d):
                if i != j:
                    pool += [elementary(F, d, i, j, a) for a in basis]
        if family == "GL":
            pool.append(FFMatrix.diag(F, [F.primitive] + [1] * (d - 1)))
    elif family in ("Sp", "GSp"):
        form = symplectic_form(F, d)
        for v in normalized_vectors(F, d):
            pool += [symplectic_transvection(F, form, v, a) for a in basis]
        if family == "GSp":
            m = d // 2
            pool.append(FFMatrix.diag(F, [F.primitive] * m + [1] * m))
    elif family in ("SU", "GU"):
        form = FFMatrix.identity(F, d)
        trace_zero = [a for a in range(1, F.q) if F.add[a, F.twist(a)] == 0]
        for v in normalized_vectors(F, d):
            if hermitian_norm(F, v) == 0:
                pool += [unitary_transvection(F, v, a) for a in trace_zero]
        # diagonal elements of SU/GU: entries of norm 1
        norm_one = [a for a in range(1, F.q) if F.mul[a, F.twist(a)] == 1]
        zeta = next(a for a in norm_one if F.mult_order(a) == len(norm_one))
        if family == "GU":
            pool.append(FFMatrix.diag(F, [zeta] + [1] * (d - 1)))
        else:
            pool.append(FFMatrix.diag(F, [zeta, int(F.inv[zeta])] + [1] * (d - 2)))
    elif family in ("GO", "Omega", "OmegaPlus", "OmegaMinus"):
        form = quadratic_form(F, d) if sign != "-" else minus_type_quadratic_form(F, d)
        refl = [orthogonal_reflection(F, form, v) for v in normalized_vectors(F, d)
                if quad_value(F, form.entries, v) != 0]
        if family == "GO":
            pool += refl
        else:
            # products of two reflections with square-class-matched norms
            for k, r in enumerate(refl):
                for s in refl[k + 1:k + 8]:
                    pool.append(r * s)
    else:
        raise CatalogError(f"no construction for family {family}")
    return pool, form


def minus_type_quadratic_form(F: GF, d: int) -> FFMatrix:
    """Hyperbolic pairs plus an anisotropic 2-space x^2 + xy + c y^2 in the middle."""
    Q = np.zeros((d, d), dtype=np.int64)
    m = d // 2
    for i in range(m - 1):
        Q[i, d - 1 - i] = 1
    a, b = m - 1, m
    # pick c with t^2 + t + c irreducible
    c = next(c for c in range(F.q)
             if all(F.add[F.add[F.mul[t, t], t], c] != 0 for t in range(F.q)))
    Q[a, a] = 1
    Q[a, b] = 1
    Q[b, b] = c
    return FFMatrix(F, Q)


def suzuki_generators(q: int) -> tuple[list[FFMatrix], FFMatrix]:
    """Generators of Sz(q) < Sp(4,q), q = 2^(2n+1).

    Lower unitriangular elements S(a, b), the torus element M(k) and the
    antidiagonal involution T; theta is the field automorphism x -> x^(2^(n+1)).
    """
    F = field(q)
    p, e = prime_power(q)
    if p != 2 or e % 2 == 0:
        raise ValueError("Suzuki groups need q = 2^(2n+1)")
    n = (e - 1) // 2
    theta = 2 ** (n + 1)

    def pw(x, k):
        return F.pow(x, k)

    def mul(*xs):
        out = 1
        for x in xs:
            out = int(F.mul[out, x])
        return out

    def add(*xs):
        out = 0
        for x in xs:
            out = int(F.add[out, x])
        return out

    def S(a, b):
        at = pw(a, theta)
        return FFMatrix(F, [
            [1, 0, 0, 0],
            [a, 1, 0, 0],
            [b, at, 1, 0],
            [add(mul(pw(a, 2), at), mul(a, b), pw(b, theta)), add(mul(a, at), b), a, 1],
        ])

    def M(k):
        s = 2 ** n
        return FFMatrix.diag(F, [pw(k, 1 + s), pw(k, s), pw(k, -s), pw(k, -1 - s)])

    T = FFMatrix(F, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    w = F.primitive
    gens = [S(1, 0), S(w, 0), S(0, 1), M(w), T]
    B = np.zeros((4, 4), dtype=np.int64)
    for i in range(4):
        B[i, 3 - i] = 1
    return gens, FFMatrix(F, B)


# -- permutation actions ----------------------------------------------------

@dataclass
class Action:
    """A permutation action of a matrix group on vectors or projective points."""
    field: GF
    d: int
    points: np.ndarray
    kind: str
    _index: np.ndarray = dc_field(repr=False, default=None)
    _frame: tuple | None = dc_field(repr=False, default=None)

    def __post_init__(self):
        q, d = self.field.q, self.d
        self._weights = q ** np.arange(d - 1, -1, -1)
        lookup = np.full(q**d, -1, dtype=np.int64)
        lookup[self.points @ self._weights] = np.arange(len(self.points))
        self._index = lookup

    @property
    def degree(self) -> int:
        return len(self.points)

    def normalize(self, V: np.ndarray) -> np.ndarray:
        F = self.field
        lead_pos = np.argmax(V != 0, axis=1)
        lead = V[np.arange(len(V)), lead_pos]
        return F.mul[V, F.inv[lead][:, None]]

    def index_of(self, V: np.ndarray) -> np.ndarray:
        if self.kind == "projective":
            V = self.normalize(V)
        idx = self._index[V @ self._weights]
        if (idx < 0).any():
            raise ValueError("image vector outside the point set")
        return idx

    def perm(self, g: FFMatrix) -> Permutation:
        images = self.index_of(vecmat(self.field, self.points, g.entries))
        return Permutation(images.tolist(), check=False)

    def frame(self) -> tuple[list[int], int]:
        """Indices of d independent points plus one point with all coordinates nonzero."""
        if self._frame is None:
            F, d = self.field, self.d
            chosen: list[int] = []
            for i in range(len(self.points)):
                if rank(F, self.points[chosen + [i]]) == len(chosen) + 1:
                    chosen.append(i)
                    if len(chosen) == d:
                        break
            if len(chosen) < d:
                raise ValueError("point set spans a proper subspace")
            basis_inv = inverse(F, self.points[chosen])
            coords = vecmat(F, self.points, basis_inv)
            extra = int(np.nonzero((coords != 0).all(axis=1))[0][0]) if self.kind != "vector" else -1
            self._frame = (chosen, extra)
        return self._frame

    def lift(self, pi: Permutation) -> FFMatrix:
        """A matrix inducing ``pi`` (unique for vector actions, up to scalars otherwise)."""
        F = self.field
        chosen, extra = self.frame()
        P = self.points[chosen]
        Q = self.points[[pi.images[i] for i in chosen]]
        if self.kind != "vector":
            # scale the image rows so the frame point lands on its image
            a = solve(F, P, self.points[extra])
            x = solve(F, Q, self.points[pi.images[extra]])
            c = F.mul[x, F.inv[a]]
            Q = F.mul[Q, c[:, None]]
        return FFMatrix(F, matmul(F, inverse(F, P), Q))


def restricted_action(F: GF, d: int, kind: str, gens: list[FFMatrix], start: np.ndarray) -> Action:
    """Action on the orbit of a single point (e.g. the Suzuki ovoid)."""
    full = Action(F, d, normalized_vectors(F, d) if kind == "projective" else all_vectors(F, d), kind)
    perms = [full.perm(g) for g in gens]
    first = int(full.index_of(start[None, :])[0])
    orbit = [first]
    seen = {first}
    for pt in orbit:
        for p in perms:
            img = p.images[pt]
            if img not in seen:
                seen.add(img)
                orbit.append(img)
    return Action(F, d, full.points[sorted(orbit)], kind)


def projective_action(F: GF, d: int) -> Action:
    return Action(F, d, normalized_vectors(F, d), "projective")


def vector_action(F: GF, d: int) -> Action:
    return Action(F, d, all_vectors(F, d), "vector")


# -- catalog ----------------------------------------------------------------

def data_dir() -> Path:
    env = os.environ.get("NONSOLV_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("nonsolv") / "data"))


def _matrix_from_json(F: GF, rows) -> FFMatrix:
    return FFMatrix(F, rows)


def spec_from_record(rec: dict) -> MatGroupSpec:
    q = int(rec["q"])
    p, k = prime_power(q)
    from .field import FieldSpec, GF as _GF
    modulus = tuple(rec.get("field_modulus") or field(q).spec.modulus)
    F = field(q) if modulus == field(q).spec.modulus else _GF(FieldSpec(p, k, modulus))
    gens = tuple(_matrix_from_json(F, g) for g in rec["generators"])
    form = _matrix_from_json(F, rec["form"]) if rec.get("form") else None
    return MatGroupSpec(
        name=rec["name"], family=rec["family"], d=int(rec["d"]), q=q, generators=gens,
        form=form, expected_order=int(rec["expected_order"]) if rec.get("expected_order") else None,
        action=rec.get("action", "projective"), notes=rec.get("notes", ""),
    )


def spec_to_record(spec: MatGroupSpec) -> dict:
    return {
        "name": spec.name,
        "family": spec.family,
        "d": spec.d,
        "q": spec.q,
        "field_modulus": list(spec.field.spec.modulus),
        "generators": [g.tolist() for g in spec.generators],
        "form": spec.form.tolist() if spec.form is not None else None,
        "expected_order": str(spec.expected_order) if spec.expected_order else None,
        "action": spec.action,
        "notes": spec.notes,
    }


@lru_cache(maxsize=None)
def _load_catalog(path: str) -> dict[str, dict]:
    with open(path) as fh:
        records = json.load(fh)
    out = {}
    for rec in records:
        if rec["name"] in out:
            raise CatalogError(f"duplicate catalog name {rec['name']}")
        out[rec["name"]] = rec
    return out


def catalog() -> dict[str, dict]:
    return _load_catalog(str(data_dir() / "catalog.json"))


def catalog_spec(name: str, verify: bool = True) -> MatGroupSpec:
    recs = catalog()
    if name not in recs:
        raise CatalogError(f"unknown catalog group {name!r}")
    spec = spec_from_record(recs[name])
    if verify:
        verify_generators(spec)
    return spec


def classical_group(family: str, d: int, q: int, verify: bool = True) -> MatGroupSpec:
    for rec in catalog().values():
        if rec["family"] == family and int(rec["d"]) == d and int(rec["q"]) == q:
            return catalog_spec(rec["name"], verify)
    raise CatalogError(f"no catalog entry for ({family}, {d}, {q})")


def verify_generators(spec: MatGroupSpec):
    if spec.family not in FAMILIES:
        raise CatalogError(f"unknown family {spec.family}")
    for k, g in enumerate(spec.generators):
        if g.d != spec.d:
            raise CatalogError(f"{spec.name}: generator {k} has wrong dimension")
        if not family_check(spec, g):
            raise CatalogError(f"{spec.name}: generator {k} violates the {spec.family} invariants")


def scalar_subgroup(spec: MatGroupSpec) -> list[int]:
    """Field elements c with cI in the group, by the family's rules."""
    F, d = spec.field, spec.d
    out = []
    for c in range(1, F.q):
        cd = F.pow(c, d)
        if spec.family == "SL" and cd != 1:
            continue
        if spec.family in ("SU", "GU"):
            if F.mul[c, F.twist(c)] != 1 or (spec.family == "SU" and cd != 1):
                continue
        if spec.family in ("Sp", "GO", "Omega", "OmegaPlus", "OmegaMinus", "Sz") and F.mul[c, c] != 1:
            continue
        if spec.family in ("Omega", "OmegaPlus", "OmegaMinus") and F.p != 2 and c != 1:
            # -I lies in Omega only for some (d, q); these groups are used with q = 2
            continue
        if spec.family == "Sz" and c != 1:
            continue
        out.append(c)
    return out


def make_action(spec: MatGroupSpec, kind: str | None = None) -> Action:
    kind = kind or spec.action
    F, d = spec.field, spec.d
    if kind == "projective":
        return projective_action(F, d)
    if kind == "vector":
        return vector_action(F, d)
    if kind == "ovoid":
        start = np.zeros(d, dtype=np.int64)
        start[0] = 1
        return restricted_action(F, d, "projective", list(spec.generators), start)
    raise CatalogError(f"unknown action {kind!r}")


def projectivize(spec: MatGroupSpec, kind: str | None = None) -> PermGroup:
    """Permutation group induced on projective points (or the stored action)."""
    action = make_action(spec, kind)
    if action.degree > MAX_DEGREE:
        raise DegreeError(f"{spec.name}: action of degree {action.degree} exceeds cap")
    return PermGroup([action.perm(g) for g in spec.generators], action.degree)


@dataclass
class PermRealization:
    """A catalog matrix group together with its permutation action."""
    spec: MatGroupSpec
    action: Action
    group: PermGroup

    def perm(self, g: FFMatrix) -> Permutation:
        return self.action.perm(g)

    def lift(self, pi: Permutation) -> FFMatrix:
        return self.action.lift(pi)

    @property
    def kernel_size(self) -> int:
        return len(scalar_subgroup(self.spec)) if self.action.kind != "vector" else 1


_REALIZATIONS: dict[tuple[str, str], PermRealization] = {}


def realize(name: str, kind: str | None = None) -> PermRealization:
    """Cached permutation realization of a catalog group."""
    spec = catalog_spec(name)
    key = (name, kind or spec.action)
    if key not in _REALIZATIONS:
        action = make_action(spec, kind)
        group = PermGroup([action.perm(g) for g in spec.generators], action.degree)
        _REALIZATIONS[key] = PermRealization(spec, action, group)
    return _REALIZATIONS[key]
