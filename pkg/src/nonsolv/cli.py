"""Command line entry point and the scenario catalog.

A scenario is a small JSON record (id, kind, params, expect) stored in
``data/scenarios.json``.  Running it dispatches to the owning module and
compares the resulting payload with ``expect`` field by field.
"""

from __future__ import annotations

import argparse
import fnmatch
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .ffmat.classical import data_dir

SPEC_VERSION = "1"
KINDS = ("witness", "exception_sweep", "bound_check", "ppart_check", "thompson_check",
         "invariant_factor_sweep", "oracle_check")


class ScenarioKindError(ValueError):
    pass


class Skip(Exception):
    pass


@dataclass(frozen=True)
class Scenario:
    id: str
    kind: str
    params: dict = field(default_factory=dict)
    expect: dict = field(default_factory=dict)
    criterion: int | None = None
    description: str = ""

    @classmethod
    def from_json(cls, obj: dict) -> "Scenario":
        if obj.get("kind") not in KINDS:
            raise ScenarioKindError(f"{obj.get('id')}: unknown scenario kind {obj.get('kind')!r}")
        return cls(obj["id"], obj["kind"], obj.get("params", {}), obj.get("expect", {}),
                   obj.get("criterion"), obj.get("description", ""))

    def to_json(self) -> dict:
        return {"id": self.id, "kind": self.kind, "criterion": self.criterion,
                "description": self.description, "params": self.params, "expect": self.expect}


@dataclass
class Report:
    scenario: str
    kind: str
    inputs: dict
    outcome: str                 # pass, fail or skipped
    payload: dict
    seed: int | None
    reason: str = ""
    seconds: float | None = None

    def to_json(self, timing: bool = False) -> dict:
        out = {"spec_version": SPEC_VERSION, "toolkit_version": __version__, "scenario": self.scenario,
               "kind": self.kind, "inputs": self.inputs, "outcome": self.outcome, "reason": self.reason,
               "seed": self.seed, "payload": self.payload}
        if timing:
            out["seconds"] = round(self.seconds or 0.0, 3)
        return out


def load_scenarios(path=None) -> list[Scenario]:
    path = path or data_dir() / "scenarios.json"
    with open(path) as fh:
        items = [Scenario.from_json(obj) for obj in json.load(fh)]
    ids = [s.id for s in items]
    dupes = {i for i in ids if ids.count(i) > 1}
    if dupes:
        raise ValueError(f"duplicate scenario ids: {sorted(dupes)}")
    return sorted(items, key=lambda s: s.id)


def select(scenarios: list[Scenario], suite: str) -> list[Scenario]:
    if suite == "all":
        return list(scenarios)
    patterns = [p for p in suite.split(",") if p]
    return [s for s in scenarios if any(fnmatch.fnmatchcase(s.id, p) for p in patterns)]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= 2**53:
        return str(obj)
    return obj


# -- kind handlers -------------------------------------------------------------------

def _parse_element(spec: str):
    order, _, prop = spec.partition(":")
    return int(order), prop or "any"


def _run_witness(p: dict, seed: int) -> dict:
    from .perm import PermGroup, parse_cycles
    if "generators" in p:
        gens = [parse_cycles(g, p["degree"]) for g in p["generators"]]
        H = PermGroup(gens, p["degree"])
        return {"order": H.order(), "nonsolvable": not H.is_solvable()}
    from .search import SearchTask, find_element, find_nonsolvable, resolve_group
    named = resolve_group(p["group"])
    if "x" in p:
        x = parse_cycles(p["x"], named.group.degree)
    else:
        order, prop = _parse_element(p["element"])
        x = find_element(named, order, prop, seed=seed, exclude=p.get("exclude"))
    task = SearchTask(named.group, x, p.get("mode", "pair"), p.get("budget", 10**4), seed,
                      p.get("exhaustive", False), name=p["group"])
    w = find_nonsolvable(task)
    out = {"found": w is not None, "x_order": x.order()}
    if w is not None:
        out.update(generated_order=w.generated_order, witness=w.to_json())
    return out


def _sweep_classes(named, p: dict, seed: int) -> list:
    from .perm import parse_cycles
    from .search import property_classes
    if "x" in p:
        return [named.group.conjugacy_class(parse_cycles(p["x"], named.group.degree))]
    order, prop = _parse_element(p["element"])
    return property_classes(named, order, prop, seed=seed)


def _run_exception_sweep(p: dict, seed: int, workers: int = 1) -> dict:
    from .search import exhaustive_all_solvable, resolve_group
    named = resolve_group(p["group"])
    mode = p.get("mode", "triple")
    if p.get("census") == "odd_involutions":
        G = named.group
        classes = [c for c in G.involution_classes()
                   if len(c.representative.support()) % 4 == 2]
        solvable, witnessed = [], []
        for c in classes:
            r = exhaustive_all_solvable(G, c.representative, mode, workers=workers)
            label = "2^%d" % (len(c.representative.support()) // 2)
            (solvable if r.all_solvable else witnessed).append(label)
        return {"all_solvable_classes": solvable, "witness_classes": witnessed}
    sweeps = []
    for cls in _sweep_classes(named, p, seed):
        r = exhaustive_all_solvable(named.group, cls.representative, mode, workers=workers)
        sweeps.append(r.to_json())
    return {"class_sizes": sorted(s["class_size"] for s in sweeps),
            "all_solvable": bool(sweeps) and all(s["all_solvable"] for s in sweeps),
            "sweeps": sweeps}


def _run_bound_check(p: dict, seed: int) -> dict:
    from . import bounds
    lemma = p["lemma"]
    records = []
    if lemma == "psl2":
        for q in p["qs"]:
            for case in p.get("cases", bounds.PSL2_CASES):
                records.append(bounds.psl2_bounds(q, case).to_json())
        ok = all(r["passes"] or r["status"] == "not_applicable" for r in records)
        return {"passes": ok, "records": records}
    if lemma == "fieldaut":
        for q0, pr, fam in p["grid"]:
            records.append(bounds.field_aut_gamma_bound(q0, pr, fam).to_json())
        return {"passes": all(r["passes"] for r in records), "records": records}
    if lemma == "sz":
        for q in p["qs"]:
            for case in p.get("cases", bounds.SZ_CASES):
                records.append(bounds.sz_bounds(q, case).to_json())
        return {"passes": all(r["passes"] for r in records), "records": records}
    if lemma == "countinv":
        s = bounds.sz_scenario(p["q"], p.get("case", "q_minus_1"), p.get("involutions"))
        res = bounds.countinv_check(s)
        out = {"passes": res.passes, "result": res.to_json()}
        if p.get("exact_orders"):
            from .search import find_element, resolve_group, sz_exact_scenario
            named = resolve_group(f"Sz({p['q']})")
            out["exact"] = {}
            for o in p["exact_orders"]:
                r = bounds.countinv_check(sz_exact_scenario(find_element(named, o, seed=seed), named))
                out["exact"][str(o)] = r.to_json()
                out["passes"] = out["passes"] and r.passes
        return out
    if lemma == "involutions":
        from .search import resolve_group
        rows, ok = [], True
        for name, want in p["groups"]:
            got = resolve_group(name).group.involution_count()
            rows.append({"group": name, "enumerated": got, "expected": want})
            ok = ok and got == want
        for q in p.get("psl2_lower_bound", []):
            got = resolve_group(f"PSL(2,{q})").group.involution_count()
            lower = q * (q - 1) // 2
            rows.append({"group": f"PSL(2,{q})", "enumerated": got, "lower_bound": lower,
                         "equality": got == lower, "q_mod_4": q % 4})
            ok = ok and got >= lower and (got == lower) == (q % 4 == 3)
        return {"passes": ok, "rows": rows}
    raise ScenarioKindError(f"unknown lemma {lemma!r}")


def _row_matches(claim, row: str | None) -> bool:
    if row is None:
        return True
    e, _, case = row.partition(",")
    want_e = None if e.strip() in ("", "-") else int(e)
    return claim.e == want_e and claim.case.replace(" ", "") == case.replace(" ", "")


def ppart_report(family: str | None, qs, row: str | None = None) -> dict:
    from .bounds import load_claims, ppart_claim_check
    claims = [c for c in load_claims() if (family is None or c.family == family) and _row_matches(c, row)]
    if not claims:
        raise Skip(f"no table row matches family={family} row={row}")
    results = [ppart_claim_check(c, q) for c in claims for q in qs]
    checked = [r for r in results if r.passes is not None]
    failed = [r.to_json() for r in results if r.passes is False]
    return {"passes": bool(checked) and not failed, "checked": len(checked),
            "skipped": len(results) - len(checked), "failures": failed,
            "results": [r.to_json() for r in results]}


def _run_ppart(p: dict, seed: int) -> dict:
    return ppart_report(p.get("family"), p.get("qs", [2, 3, 4, 5]), p.get("row"))


def _run_thompson(p: dict, seed: int) -> dict:
    from .chartab.census import corpus_census
    rows = corpus_census(p.get("groups"), p.get("brute_max", 400))
    return {"groups": len(rows), "agree": sum(r.agrees for r in rows),
            "nonsolvable": sum(not r.solvable for r in rows),
            "constants_checked": sum(r.constants_checked for r in rows),
            "passes": len(rows) >= p.get("min_groups", 1) and all(r.agrees for r in rows),
            "rows": [r.to_json() for r in rows]}


def _run_invariant_factor(p: dict, seed: int) -> dict:
    from .ffmat import lemmas
    sweep = p["sweep"]
    if sweep == "gl33":
        return lemmas.gl33_order6_sweep().to_json()
    if sweep == "order6":
        return lemmas.sampled_order6_sweep(p["group"], p.get("target", 1000), seed).to_json()
    if sweep == "order9":
        return lemmas.order9_jordan_sweep(p.get("group", "SL(4,3)"), p.get("target", 1000), seed).to_json()
    raise ScenarioKindError(f"unknown invariant factor sweep {sweep!r}")


def _run_oracle(p: dict, seed: int) -> dict:
    """BSGS orders against brute-force closure and against the order formulas."""
    from .bounds.orders import catalog_order
    from .ffmat.classical import catalog, realize
    from .perm import closure
    rows, ok = [], True
    for name, rec in sorted(catalog().items()):
        r = realize(name)
        order = r.group.order()
        row = {"group": name, "bsgs": order,
               "formula": catalog_order(rec["family"], rec["d"], rec["q"], name) // r.kernel_size}
        if order <= p.get("closure_max", 5000):
            row["closure"] = len(closure(r.group.generators))
        ok = ok and row["formula"] == order and row.get("closure", order) == order
        rows.append(row)
    return {"passes": ok, "closure_checked": sum("closure" in r for r in rows), "rows": rows}


_HANDLERS = {
    "witness": _run_witness,
    "exception_sweep": _run_exception_sweep,
    "bound_check": _run_bound_check,
    "ppart_check": _run_ppart,
    "thompson_check": _run_thompson,
    "invariant_factor_sweep": _run_invariant_factor,
    "oracle_check": _run_oracle,
}


def run_scenario(s: Scenario, seed: int | None = None) -> Report:
    from .search import DEFAULT_SEED
    if s.kind not in _HANDLERS:
        raise ScenarioKindError(f"unknown scenario kind {s.kind!r}")
    seed = s.params.get("seed", DEFAULT_SEED) if seed is None else seed
    start = time.perf_counter()
    try:
        payload = _jsonable(_HANDLERS[s.kind](s.params, seed))
    except Skip as exc:
        return Report(s.id, s.kind, s.params, "skipped", {}, seed, str(exc), time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    misses = [k for k, v in s.expect.items() if payload.get(k) != _jsonable(v)]
    outcome = "fail" if misses else "pass"
    reason = f"expectation not met for {', '.join(misses)}" if misses else ""
    return Report(s.id, s.kind, s.params, outcome, payload, seed, reason, elapsed)


def _run_one(args):
    scenario, seed = args
    return run_scenario(scenario, seed)


def run_suite(suite: str = "all", seed: int | None = None, workers: int = 1,
              scenarios: list[Scenario] | None = None) -> tuple[list[Report], int]:
    """Run the selected scenarios; reports come back ordered by scenario id."""
    chosen = select(load_scenarios() if scenarios is None else scenarios, suite)
    chosen.sort(key=lambda s: s.id)
    if workers > 1 and len(chosen) > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_run_one, [(s, seed) for s in chosen]))
    else:
        reports = [run_scenario(s, seed) for s in chosen]
    status = 0 if all(r.outcome != "fail" for r in reports) else 1
    return reports, status


# -- argparse ------------------------------------------------------------------------

def _emit(obj) -> None:
    print(json.dumps(_jsonable(obj), indent=2, sort_keys=True))


def cmd_run(args) -> int:
    reports, status = run_suite(args.suite, args.seed, args.workers)
    lines = [json.dumps(r.to_json(args.timing), sort_keys=True) for r in reports]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("".join(line + "\n" for line in lines))
    else:
        for line in lines:
            print(line)
    for r in reports:
        extra = f" ({r.reason})" if r.reason else ""
        print(f"{r.outcome.upper():7s} {r.scenario} {r.seconds:.2f}s{extra}", file=sys.stderr)
    return status


def cmd_list(args) -> int:
    for s in load_scenarios():
        crit = f"[{s.criterion}]" if s.criterion else "[-]"
        print(f"{s.id:40s} {s.kind:24s} {crit:5s} {s.description}")
    return 0


def cmd_show(args) -> int:
    match = [s for s in load_scenarios() if s.id == args.scenario_id]
    if not match:
        print(f"no scenario {args.scenario_id!r}", file=sys.stderr)
        return 2
    _emit(match[0].to_json())
    return 0


def cmd_bounds(args) -> int:
    from . import bounds
    if args.lemma == "psl2":
        rec = bounds.psl2_bounds(args.q, args.case or "p_div_q_minus").to_json()
    elif args.lemma == "fieldaut":
        if args.p is None:
            raise SystemExit("fieldaut needs --p")
        rec = bounds.field_aut_gamma_bound(args.q, args.p, args.family).to_json()
    elif args.lemma == "sz":
        rec = bounds.sz_bounds(args.q, args.case or "q_minus_1").to_json()
    else:
        s = bounds.sz_scenario(args.q, args.case or "q_minus_1")
        res = bounds.countinv_check(s)
        rec = {"lemma": "countinv", "inputs": {"q": args.q, "case": args.case or "q_minus_1"},
               "values": res.to_json(), "passes": res.passes}
    _emit(rec)
    return 0 if rec["passes"] is not False else 1


def cmd_ppart(args) -> int:
    try:
        out = ppart_report(args.family, [args.q], args.row)
    except Skip as exc:
        print(str(exc), file=sys.stderr)
        return 2
    out = {"inputs": {"family": args.family, "q": args.q, "row": args.row},
           "values": out["results"], "passes": out["passes"] if out["checked"] else None}
    _emit(out)
    return 0 if out["passes"] is not False else 1


def cmd_search(args) -> int:
    from .search import (
        SearchTask, exhaustive_all_solvable, find_element, find_nonsolvable, resolve_group,
    )
    named = resolve_group(args.group)
    order, prop = _parse_element(args.element)
    x = find_element(named, order, prop, seed=args.seed)
    if args.exhaustive and args.mode in ("pair", "triple"):
        r = exhaustive_all_solvable(named.group, x, args.mode, workers=args.workers)
        _emit({"group": args.group, "x": x.cycle_string(), "seed": args.seed, **r.to_json()})
        return 0
    w = find_nonsolvable(SearchTask(named.group, x, args.mode, args.budget, args.seed, args.exhaustive,
                                    name=args.group))
    _emit({"group": args.group, "x": x.cycle_string(), "seed": args.seed, "found": w is not None,
           "witness": w.to_json() if w else None})
    return 0 if w else 1


def build_parser() -> argparse.ArgumentParser:
    from .search import DEFAULT_BUDGET, DEFAULT_SEED
    ap = argparse.ArgumentParser(prog="nonsolv", description="Nonsolvable generation toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run scenarios and write JSON-lines reports")
    p.add_argument("--suite", default="all", help="'all' or comma-separated id patterns such as 'table1-*'")
    p.add_argument("--seed", type=int, default=None, help="override every scenario's seed")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write reports here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in reports")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("list", help="list scenario ids")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("show", help="print one scenario definition")
    p.add_argument("scenario_id")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("bounds", help="evaluate one counting inequality")
    p.add_argument("--lemma", required=True, choices=["countinv", "psl2", "fieldaut", "sz"])
    p.add_argument("--q", type=int, required=True, help="q (or q0 for fieldaut)")
    p.add_argument("--p", type=int)
    p.add_argument("--case")
    p.add_argument("--family", default="PSL2", choices=["PSL2", "Sz"])
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("ppart", help="check Sylow p-part rows")
    p.add_argument("--family", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--row", help="'e,case', for example '18,q^9+1'; '-' for tables without e")
    p.set_defaults(func=cmd_ppart)

    p = sub.add_parser("search", help="look for a nonsolvable subgroup")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True, help="ORDER[:PROPERTY]")
    p.add_argument("--mode", default="pair", choices=["pair", "involution", "triple"])
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
