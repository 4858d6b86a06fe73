"""The covering inequality for Sz(8), from displayed estimates and from the group.

The displayed estimates give a right-hand side of 86.5; counting inside the
degree-65 action gives the exact sums.  Either way |Y| = 455 is larger, so an
involution y with <x, y> = Sz(8) must exist, and a search finds one.
"""

from nonsolv.bounds import countinv_check, sz_scenario
from nonsolv.search import SearchTask, find_element, find_nonsolvable, resolve_group, sz_exact_scenario

res = countinv_check(sz_scenario(8))
print(f"displayed estimates: rhs = {res.rhs} = {float(res.rhs)}, |Y| = {res.lhs}, passes = {res.passes}")

named = resolve_group("Sz(8)")
for order in (7, 13):
    x = find_element(named, order)
    exact = countinv_check(sz_exact_scenario(x, named))
    w = find_nonsolvable(SearchTask(named.group, x, "involution"))
    print(f"|x| = {order}: exact rhs = {exact.rhs}, partner found after {w.trials_used} trial(s), "
          f"|<x, y>| = {w.generated_order}")
