"""Regenerate src/nonsolv/data/catalog.json.

Each group is built from a deterministic pool of root elements (elementary,
symplectic, unitary transvections; orthogonal reflections; Suzuki
generators).  Pool members are kept greedily while they enlarge the group, and
construction stops once the permutation image reaches the order given by the
classical order formula.  The loader re-verifies everything; nothing here is
trusted at run time.

    python tools/build_catalog.py
"""

import json
import math
import sys
from pathlib import Path

from nonsolv.ffmat.classical import (
    MatGroupSpec, candidate_pool, make_action, scalar_subgroup, spec_to_record, suzuki_generators,
)
from nonsolv.ffmat.field import field
from nonsolv.ffmat.matrix import FFMatrix
from nonsolv.perm import MAX_DEGREE, _Chain

OUT = Path(__file__).resolve().parents[1] / "src" / "nonsolv" / "data" / "catalog.json"


def sl_order(d, q):
    return q ** (d * (d - 1) // 2) * math.prod(q**i - 1 for i in range(2, d + 1))


def su_order(d, q0):
    return q0 ** (d * (d - 1) // 2) * math.prod(q0**i - (-1) ** i for i in range(2, d + 1))


def sp_order(d, q):
    m = d // 2
    return q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))


def go_order(d, q, sign=""):
    m = d // 2
    if d % 2:
        return 2 * sp_order(2 * m, q)
    eps = 1 if sign == "+" else -1
    return 2 * q ** (m * (m - 1)) * (q**m - eps) * math.prod(q ** (2 * i) - 1 for i in range(1, m))


ENTRIES = [
    # name, family, d, q, sign, order, action
    *[(f"SL(2,{q})", "SL", 2, q, "", sl_order(2, q), "projective") for q in (4, 5, 7, 8, 9, 11, 13, 16)],
    ("SL(3,3)", "SL", 3, 3, "", sl_order(3, 3), "projective"),
    ("SL(4,3)", "SL", 4, 3, "", sl_order(4, 3), "projective"),
    ("GL(3,3)", "GL", 3, 3, "", 2 * sl_order(3, 3), "projective"),
    ("GL(4,3)", "GL", 4, 3, "", 2 * sl_order(4, 3), "projective"),
    ("SU(3,3)", "SU", 3, 9, "", su_order(3, 3), "projective"),
    ("SU(4,2)", "SU", 4, 4, "", su_order(4, 2), "projective"),
    ("GU(4,3)", "GU", 4, 9, "", 4 * su_order(4, 3), "projective"),
    ("Sp(4,3)", "Sp", 4, 3, "", sp_order(4, 3), "projective"),
    ("GSp(4,3)", "GSp", 4, 3, "", 2 * sp_order(4, 3), "projective"),
    ("Sp(6,2)", "Sp", 6, 2, "", sp_order(6, 2), "projective"),
    ("Sp(4,4)", "Sp", 4, 4, "", sp_order(4, 4), "projective"),
    ("GO(5,3)", "GO", 5, 3, "", go_order(5, 3), "projective"),
    ("GO+(8,2)", "GO", 8, 2, "+", go_order(8, 2, "+"), "projective"),
    ("Omega+(8,2)", "OmegaPlus", 8, 2, "+", go_order(8, 2, "+") // 2, "projective"),
    ("GO-(8,2)", "GO", 8, 2, "-", go_order(8, 2, "-"), "projective"),
    ("Sz(8)", "Sz", 4, 8, "", 8**2 * (8**2 + 1) * (8 - 1), "ovoid"),
]


def build(name, family, d, q, sign, order, action):
    if family == "Sz":
        pool, form = suzuki_generators(q)
    else:
        pool, form = candidate_pool(family, d, q, sign)
    probe = MatGroupSpec(name, family, d, q, tuple(pool), form, order, action)
    F = field(q)
    if q**d - 1 <= MAX_DEGREE:
        # faithful: growth sees the whole matrix group
        act, target = make_action(probe, "vector"), order
    else:
        # projective image plus the full scalar subgroup as explicit generators
        scalars = [FFMatrix.scalar(F, d, c) for c in scalar_subgroup(probe) if c != 1]
        cyclic = [s for s in scalars if s.order() == len(scalars) + 1]
        pool = cyclic[:1] + list(pool)
        act = make_action(probe, action)
        target = order // (len(scalars) + 1)
    assert act.degree <= MAX_DEGREE
    chain = _Chain(act.degree)
    kept = []
    for g in pool:
        if g.is_scalar() and act.kind != "vector":
            kept.append(g)
            continue
        if chain.add_generator(act.perm(g).images):
            kept.append(g)
        size = math.prod(len(t) for t in chain.trans)
        if size == target:
            break
    size = math.prod(len(t) for t in chain.trans)
    if size != target:
        raise SystemExit(f"{name}: reached {size}, wanted {target}")
    print(f"{name}: {len(kept)} generators, degree {act.degree}, image order {size}", file=sys.stderr)
    return MatGroupSpec(name, family, d, q, tuple(kept), form, order, action)


def main():
    records = [spec_to_record(build(*e)) for e in ENTRIES]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w") as fh:
        json.dump(records, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
