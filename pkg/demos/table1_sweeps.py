"""Exhaustive sweeps behind the exception table.

For each class, x is fixed and (y, z) runs over the class squared; the census
shows which orders <x, y, z> takes.  Pass --big to add the two degree-255
orthogonal groups (about 10 to 20 seconds each).
"""

import argparse
import time

from nonsolv.perm import parse_cycles
from nonsolv.search import exhaustive_all_solvable, property_classes, resolve_group

ap = argparse.ArgumentParser()
ap.add_argument("--big", action="store_true")
ap.add_argument("--workers", type=int, default=1)
args = ap.parse_args()

rows = [("S5", "(1,2)"), ("S8", "(1,2)"), ("S6", "(1,2)(3,4)(5,6)"), ("S8", "(1,2)(3,4)(5,6)"),
        ("Sp(6,2)", "transvection"), ("PSU(4,2)", "transvection"), ("GO(5,3)", "reflection")]
if args.big:
    rows += [("GO+(8,2)", "transvection"), ("GO-(8,2)", "transvection")]

for group, what in rows:
    named = resolve_group(group)
    if what.startswith("("):
        classes = [named.group.conjugacy_class(parse_cycles(what, named.group.degree))]
    else:
        classes = property_classes(named, 2, what)
    for c in classes:
        t = time.perf_counter()
        r = exhaustive_all_solvable(named.group, c.representative, workers=args.workers)
        verdict = "all solvable" if r.all_solvable else f"nonsolvable after {r.pairs_checked} pairs"
        print(f"{group:9s} {what:18s} |class| = {r.class_size:4d}  {verdict:28s} "
              f"orders {sorted(r.census)}  {time.perf_counter() - t:.1f}s")
