"""The acceptance criteria, one test each, at their stated tolerances and time limits.

Every test records a single "criterion N: PASS/FAIL" line, printed in the
pytest summary (and directly when this file is run as a script).
"""

import time
from contextlib import contextmanager

from conftest import ACCEPTANCE_LINES
from nonsolv.bounds import (
    countinv_check, field_aut_gamma_bound, order_poly_eval, psl2_bounds, sweep, sz_scenario,
)
from nonsolv.bounds.orders import catalog_order
from nonsolv.chartab.census import corpus_census
from nonsolv.ffmat.classical import catalog, realize
from nonsolv.ffmat.lemmas import gl33_order6_sweep, order9_jordan_sweep, sampled_order6_sweep
from nonsolv.perm import PermGroup, closure, parse_cycles, symmetric_group
from nonsolv.search import (
    SearchTask, exhaustive_all_solvable, find_element, find_nonsolvable, has_property, property_classes,
    resolve_group, sz_exact_scenario,
)

PSL2_QS = [7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]


@contextmanager
def criterion(n: int, limit: float, title: str):
    """Run a block as criterion ``n``; fail on an assertion or on exceeding ``limit`` seconds."""
    start = time.perf_counter()
    details: list[str] = []
    ok = False
    try:
        yield details
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        slow = elapsed > limit
        status = "PASS" if ok and not slow else "FAIL"
        note = "; ".join(details)
        extra = f" [over the {limit:g}s limit]" if slow else ""
        line = f"criterion {n}: {status} {title} ({elapsed:.1f}s){extra}" + (f" -- {note}" if note else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert elapsed <= limit, f"criterion {n} took {elapsed:.1f}s, limit {limit}s"


def P(text, n):
    return parse_cycles(text, n)


def test_criterion_01_explicit_witnesses():
    with criterion(1, 1.0, "explicit witnesses") as notes:
        a5 = PermGroup([P("(12345)", 5), P("(12)(34)", 5)])
        assert a5.order() == 60 and not a5.is_solvable()
        x = P("(1,6)(2,5)(3,4)", 7)
        g1, g2 = P("(1,7,4,3,5,2,6)", 7), P("(2,3,6,5,4)", 7)
        assert x * x ** g1 == P("(1234567)", 7) and x * x ** g2 == P("(12)(56)", 7)
        s7 = PermGroup([x, x ** g1, x ** g2])
        assert s7.order() == 5040
        x = P("(12)(34)(56)(78)", 8)
        g1, g2 = P("(1,4,3)(2,8,5,6,7)", 8), P("(1,3)(2,6,5,8,7,4)", 8)
        assert x * x ** g1 == P("(1574)(2386)", 8) and x * x ** g2 == P("(375)(468)", 8)
        assert x * x ** g2 * x ** g1 == P("(1364725)", 8)
        h = PermGroup([x, x ** g1, x ** g2])
        assert h.order() == 168 and not h.is_solvable()
        notes.append("orders 60, 5040, 168")


TABLE1 = [
    ("S5", "(1,2)", None, [10]), ("S6", "(1,2)", None, [15]), ("S7", "(1,2)", None, [21]),
    ("S8", "(1,2)", None, [28]), ("S6", "(1,2)(3,4)(5,6)", None, [15]),
    ("Sp(6,2)", None, "transvection", [63]), ("PSU(4,2)", None, "transvection", [45]),
    ("GO(5,3)", None, "reflection", [36, 45]), ("GO+(8,2)", None, "transvection", [120]),
    ("GO-(8,2)", None, "transvection", [136]),
]


def test_criterion_02_table1_sweeps():
    with criterion(2, 600.0, "exhaustive sweeps all solvable") as notes:
        slowest = 0.0
        for group, x, prop, sizes in TABLE1:
            t0 = time.perf_counter()
            named = resolve_group(group)
            if x is not None:
                classes = [named.group.conjugacy_class(P(x, named.group.degree))]
            else:
                classes = property_classes(named, 2, prop)
            assert sorted(c.size for c in classes) == sizes, group
            for c in classes:
                r = exhaustive_all_solvable(named.group, c.representative, "triple")
                assert r.all_solvable and r.pairs_checked == c.size ** 2, group
            elapsed = time.perf_counter() - t0
            slowest = max(slowest, elapsed)
            assert elapsed < 600, group
        notes.append(f"{len(TABLE1)} sweeps, slowest {slowest:.1f}s")


def test_criterion_03_s8_census():
    with criterion(3, 300.0, "S8 odd involution census") as notes:
        S8 = symmetric_group(8)
        odd = [c for c in S8.involution_classes() if len(c.representative.support()) % 4 == 2]
        verdict = {}
        for c in odd:
            r = exhaustive_all_solvable(S8, c.representative, "triple")
            verdict[len(c.representative.support()) // 2] = r.all_solvable
            if not r.all_solvable:
                assert not PermGroup([c.representative, *r.offending]).is_solvable()
        assert verdict == {1: True, 3: False}
        notes.append("transpositions all solvable, 2^3 has a witness")


POSITIVE = [
    ("PSL(3,3)", 6, "transvection", "pair"), ("PSU(3,3)", 6, "transvection", "pair"),
    ("PSp(4,3)", 6, "transvection", "pair"), ("PSp(4,3)", 9, "transvection", "pair"),
    ("PSU(4,2)", 9, "pseudoreflection", "pair"), ("PSL(2,11)", 5, "any", "involution"),
    ("PSU(3,3)", 7, "any", "involution"), ("PSL(3,3)", 13, "any", "involution"),
]


def test_criterion_04_positive_cases():
    with criterion(4, 60.0 * (len(POSITIVE) + 1), "positive cases found within budget") as notes:
        for group, order, prop, mode in POSITIVE:
            t0 = time.perf_counter()
            named = resolve_group(group)
            x = find_element(named, order, prop)
            w = find_nonsolvable(SearchTask(named.group, x, mode, budget=10**4))
            assert w is not None and not PermGroup(w.generators).is_solvable(), (group, order)
            assert time.perf_counter() - t0 < 60
        named = resolve_group("Sp(6,2)")
        t0 = time.perf_counter()
        others = [c for c in property_classes(named, 2, "any")
                  if not has_property(named, c.representative, "transvection")]
        assert len(others) == 3
        for c in others:
            assert find_nonsolvable(SearchTask(named.group, c.representative, "triple", budget=10**4))
        assert time.perf_counter() - t0 < 60
        notes.append(f"{len(POSITIVE)} pair/involution cases, 3 Sp(6,2) involution classes")


def test_criterion_05_involution_counts():
    with criterion(5, 60.0, "involution counts") as notes:
        for q in (4, 8, 16):
            assert resolve_group(f"PSL(2,{q})").group.involution_count() == q * q - 1
        equal = []
        for q in (5, 7, 9, 11, 13):
            i2 = resolve_group(f"PSL(2,{q})").group.involution_count()
            assert i2 >= q * (q - 1) // 2
            assert i2 == q * (q + (1 if q % 4 == 1 else -1)) // 2
            if i2 == q * (q - 1) // 2:
                equal.append(q)
        assert equal == [q for q in (5, 7, 9, 11, 13) if q % 4 == 3]
        assert resolve_group("Sz(8)").group.involution_count() == 455
        notes.append(f"equality with q(q-1)/2 at q = {equal}")


def test_criterion_06_bounds():
    with criterion(6, 60.0, "bounds sweeps and Sz(8) partners") as notes:
        for q in PSL2_QS:
            for case in ("p_div_q_minus", "p_div_q_plus", "unipotent"):
                r = psl2_bounds(q, case)
                assert r.passes or r.status == "not_applicable", (q, case)
        grid = [(q0, p) for q0 in (2, 3, 4, 5, 8, 9) for p in (5, 7, 11) if q0 ** p <= 10 ** 10]
        assert all(field_aut_gamma_bound(q0, p).passes for q0, p in grid)
        for q0, p in ((2, 5), (2, 7), (8, 5)):
            assert field_aut_gamma_bound(q0, p, "Sz").passes
        res = countinv_check(sz_scenario(8))
        assert res.passes and res.lhs == 455
        named = resolve_group("Sz(8)")
        for order in (7, 13):
            x = find_element(named, order)
            assert countinv_check(sz_exact_scenario(x, named)).passes
            w = find_nonsolvable(SearchTask(named.group, x, "involution", budget=10**4))
            assert w is not None and w.generated_order == 29120
        notes.append(f"Sz(8) displayed RHS {res.rhs} < 455; partners for orders 7 and 13")


def test_criterion_07_sylow_rows():
    with criterion(7, 60.0, "Sylow p-part rows") as notes:
        results = sweep((2, 3, 4, 5))
        failed = [r.to_json() for r in results if r.passes is False]
        assert not failed, failed
        skipped = [r for r in results if r.passes is None]
        assert all(r.reason for r in skipped)
        notes.append(f"{len(results) - len(skipped)} checks pass, {len(skipped)} skipped with reasons")


def test_criterion_08_thompson():
    with criterion(8, 300.0, "Thompson criterion on the corpus") as notes:
        rows = corpus_census(brute_max=400)
        assert len(rows) >= 50 and all(r.order <= 2000 for r in rows)
        assert {r.solvable for r in rows} == {True, False}
        bad = [r.name for r in rows if not r.agrees]
        assert not bad, bad
        assert all(r.constants_checked > 0 for r in rows if r.order <= 400)
        notes.append(f"{len(rows)} groups, {sum(r.constants_checked for r in rows)} structure constants brute-forced")


def test_criterion_09_invariant_factors():
    with criterion(9, 300.0, "invariant factor lemmas") as notes:
        s = gl33_order6_sweep()
        assert s.passes and s.examined == 11232
        counts = [s.qualifying]
        for name in ("GL(4,3)", "GU(4,3)", "GSp(4,3)"):
            t = sampled_order6_sweep(name, target=1000)
            assert t.passes and t.qualifying == 1000, t.to_json()
            counts.append(t.qualifying)
        j = order9_jordan_sweep("SL(4,3)", target=1000)
        assert j.passes and j.shapes == {"J4": 1000}
        notes.append(f"order-6 elements checked {counts}; 1000 order-9 elements all J4")


def test_criterion_10_oracles():
    with criterion(10, 60.0, "BSGS against closure and order formulas") as notes:
        small = 0
        for name, rec in sorted(catalog().items()):
            r = realize(name)
            order = r.group.order()
            assert order * r.kernel_size == catalog_order(rec["family"], rec["d"], rec["q"], name), name
            if order <= 5000:
                assert len(closure(r.group.generators)) == order, name
                small += 1
        assert order_poly_eval("Sz", 8) == realize("Sz(8)").group.order()
        notes.append(f"{len(catalog())} catalog groups, {small} by closure")


if __name__ == "__main__":
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]:
        try:
            fn()
        except AssertionError:
            pass
