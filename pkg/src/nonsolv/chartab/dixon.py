"""Character tables of small permutation groups, computed from scratch.

Dixon's method: the class sums span a commutative algebra whose structure
constants are counted directly from the group elements.  Its common
eigenvectors modulo a prime p = 1 (mod exponent) give the central characters;
degrees follow from the standard norm formula, and exact cyclotomic values
are recovered from eigenvalue multiplicities using the power maps.

Only meant for groups of order up to a few thousand: the whole element list
is held in memory as a numpy array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..perm import PermGroup, Permutation
from .cyclotomic import Cyc
from .table import CharacterTable

MAX_ORDER = 5000


@dataclass
class ElementData:
    """All elements of a group, indexed, with the class partition."""
    group: PermGroup
    elems: np.ndarray           # [N, degree]
    inverse: np.ndarray         # [N]
    class_of: np.ndarray        # [N]
    classes: list[np.ndarray]   # element indices per class
    orders: list[int]           # element order per class

    @property
    def order(self) -> int:
        return len(self.elems)

    def index(self, rows: np.ndarray) -> np.ndarray:
        codes = rows[..., self._base] @ self._weights
        pos = np.searchsorted(self._sorted_codes, codes)
        return self._code_order[pos]

    def product_with(self, g: int) -> np.ndarray:
        """Indices of x*g for every element x (x applied first)."""
        return self.index(self.elems[g][self.elems])

    def left_product(self, g: int) -> np.ndarray:
        """Indices of g*x for every element x."""
        return self.index(np.take_along_axis(self.elems, np.broadcast_to(self.elems[g], self.elems.shape), 1))

    def representative(self, c: int) -> Permutation:
        return Permutation(self.elems[self.classes[c][0]].tolist(), check=False)


def element_data(G: PermGroup) -> ElementData:
    N = G.order()
    if N > MAX_ORDER:
        raise ValueError(f"group order {N} too large for explicit tables")
    elems = np.array([g.images for g in G.elements()], dtype=np.int64).reshape(N, G.degree)
    # elements are determined by the images of the base points
    base = np.array(G.base or [0], dtype=np.int64)
    weights = G.degree ** np.arange(len(base), dtype=np.int64)
    codes = elems[:, base] @ weights
    order = np.argsort(codes)
    data = ElementData(G, elems, None, None, [], [])
    data._base, data._weights = base, weights
    data._sorted_codes, data._code_order = codes[order], order
    if len(np.unique(codes)) != N:
        raise AssertionError("base images do not separate elements")
    inv = np.empty_like(elems)
    np.put_along_axis(inv, elems, np.arange(G.degree)[None, :].repeat(N, 0), 1)
    data.inverse = data.index(inv)
    # conjugacy classes: orbit of x is {g^-1 x g}; as maps, k -> g(x(g^-1(k)))
    class_of = np.full(N, -1, dtype=np.int64)
    ident = int(data.index(np.arange(G.degree)[None, :])[0])
    todo = [ident] + [i for i in range(N) if i != ident]
    for x in todo:
        if class_of[x] >= 0:
            continue
        xi = elems[x][inv]                      # x(g^-1(k)) for every g
        conj = np.take_along_axis(elems, xi, 1)  # g(x(g^-1(k)))
        members = np.unique(data.index(conj))
        class_of[members] = len(data.classes)
        data.classes.append(members)
        data.orders.append(Permutation(elems[x].tolist(), check=False).order())
    # canonical class order: element order, then size, then smallest member code
    key = [(o, len(c), int(codes[c].min())) for o, c in zip(data.orders, data.classes)]
    perm = sorted(range(len(key)), key=key.__getitem__)
    data.classes = [data.classes[i] for i in perm]
    data.orders = [data.orders[i] for i in perm]
    relabel = np.empty(len(perm), dtype=np.int64)
    relabel[perm] = np.arange(len(perm))
    data.class_of = relabel[class_of]
    return data


def class_structure_constants(data: ElementData) -> np.ndarray:
    """a[i, j, k] = #{x in C_i : x^-1 z_k in C_j} for a fixed z_k in C_k."""
    r = len(data.classes)
    a = np.zeros((r, r, r), dtype=np.int64)
    cls = data.class_of
    for k in range(r):
        z = int(data.classes[k][0])
        # (x^-1) * z for every x
        prods = data.product_with(z)[data.inverse]
        np.add.at(a[:, :, k], (cls, cls[prods]), 1)
    return a


def power_map(data: ElementData, m: int) -> list[int]:
    out = []
    for c in range(len(data.classes)):
        g = data.representative(c) ** m
        out.append(int(data.class_of[data.index(np.array(g.images)[None, :])[0]]))
    return out


# -- linear algebra modulo p ------------------------------------------------------

def _rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        i = r + nz[0]
        A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        A[others] = (A[others] - A[others, c][:, None] * A[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def _left_kernel(A: np.ndarray, p: int) -> np.ndarray:
    """Rows x with x A = 0 (mod p)."""
    R, pivots = _rref(A.T, p)
    n = A.shape[0]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for row, pc in enumerate(pivots):
            basis[t, pc] = (-R[row, f]) % p
    return basis


def _solve_rows(B: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """R with R B = Y, for B of full row rank."""
    m = B.shape[0]
    aug = np.concatenate([B.T, Y.T], axis=1)
    R, pivots = _rref(aug, p)
    if pivots[:m] != list(range(m)):
        raise ArithmeticError("basis is not of full rank")
    return R[:m, m:].T


def _charpoly(R: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial by Faddeev-LeVerrier (needs p > dimension)."""
    m = R.shape[0]
    coeffs = [1]
    M = np.zeros_like(R)
    ident = np.eye(m, dtype=np.int64)
    c = 1
    for k in range(1, m + 1):
        M = (R @ M + c * ident) % p
        c = (-int(np.trace(R @ M % p)) * pow(k, -1, p)) % p
        coeffs.append(c)
    return coeffs  # leading coefficient first


def _roots(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in poly:
        val = (val * xs + c) % p
    return np.nonzero(val == 0)[0].tolist()


def _split(spaces: list[np.ndarray], A: np.ndarray, p: int) -> list[np.ndarray]:
    out = []
    for B in spaces:
        if B.shape[0] == 1:
            out.append(B)
            continue
        R = _solve_rows(B, B @ A % p, p)
        roots = _roots(_charpoly(R, p), p)
        if len(roots) <= 1:
            out.append(B)
            continue
        m = R.shape[0]
        for lam in roots:
            K = _left_kernel((R - lam * np.eye(m, dtype=np.int64)) % p, p)
            out.append(K @ B % p)
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def dixon_prime(order: int, exponent: int, n_classes: int = 0) -> int:
    """Least prime p = 1 (mod exponent) with p > 2 sqrt|G| and p > number of classes."""
    p = exponent + 1
    while not (_is_prime(p) and p > 2 * math.isqrt(order) + 2 and p > n_classes):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factors))


def character_table(G: PermGroup, name: str = "G", data: ElementData | None = None) -> CharacterTable:
    data = data or element_data(G)
    N = data.order
    r = len(data.classes)
    sizes = [len(c) for c in data.classes]
    e = math.lcm(*data.orders)
    p = dixon_prime(N, e, r)
    a = class_structure_constants(data)
    # row eigenvectors: w M_i = omega_i w, with (M_i)[j, k] = a[i, j, k] acting on columns;
    # transpose so that the common eigenvectors become rows.
    spaces = [np.eye(r, dtype=np.int64)]
    order = list(range(1, r))
    for i in order:
        if all(B.shape[0] == 1 for B in spaces):
            break
        spaces = _split(spaces, a[i].T % p, p)
    if any(B.shape[0] != 1 for B in spaces) or len(spaces) != r:
        raise ArithmeticError("class algebra did not split into one-dimensional pieces")
    inv_class = [int(data.class_of[data.inverse[c[0]]]) for c in data.classes]
    z = pow(_primitive_root(p), (p - 1) // e, p)
    powers = {m: power_map(data, m) for m in range(e)}
    chars = []
    for B in spaces:
        w = B[0] * pow(int(B[0, 0]), -1, p) % p  # omega(K_1) = 1
        s = sum(int(w[i]) * int(w[inv_class[i]]) * pow(sizes[i], -1, p) for i in range(r)) % p
        d2 = N * pow(s, -1, p) % p
        deg = next(d for d in range(1, math.isqrt(N) + 1) if d * d % p == d2)
        vals_p = [int(w[i]) * deg * pow(sizes[i], -1, p) % p for i in range(r)]
        row = []
        for i in range(r):
            o = data.orders[i]
            zo = pow(z, e // o, p)
            counts = {}
            for k in range(o):
                tot = sum(vals_p[powers[l][i]] * pow(zo, (-k * l) % o, p) for l in range(o))
                mult = tot * pow(o, -1, p) % p
                if mult > deg:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                if mult:
                    counts[k * (e // o)] = mult
            row.append(Cyc.from_exponents(e, counts))
        chars.append(row)
    # order characters by degree, trivial character first
    chars.sort(key=lambda row: (row[0].to_fraction(), [str(v) for v in row]))
    names = [f"{o}{_letter(data.orders[:i].count(o))}" for i, o in enumerate(data.orders)]
    table = CharacterTable(name, N, e, names, sizes, list(data.orders), chars)
    return table.validate()


def _letter(k: int) -> str:
    s = ""
    k += 1
    while k:
        k, rem = divmod(k - 1, 26)
        s = chr(ord("a") + rem) + s
    return s


def brute_structure_constant(data: ElementData, A: int, B: int, C: int) -> int:
    """Direct count of pairs (a, b) in A x B with ab = c, c the representative of C."""
    c = data.representative(C)
    Bset = set(data.classes[B].tolist())
    count = 0
    for ai in data.classes[A].tolist():
        a = Permutation(data.elems[ai].tolist(), check=False)
        b = a.inverse() * c
        if int(data.index(np.array(b.images)[None, :])[0]) in Bset:
            count += 1
    return count
