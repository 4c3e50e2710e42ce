"""Command-line entry point: ``poset-dynamics <verb> ...``.

Exit codes: 0 when every verdict passes, 1 when a mathematical verdict
fails, 2 for input or usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import asm as asm_mod
from . import fpl as fpl_mod
from .homomesy import (
    antichain_size_statistic,
    check_homomesy,
    fraction_str,
    ideal_size_statistic,
    toggleability_statistic,
)
from .linkpatterns import rotate
from .poset import (
    Poset,
    PosetError,
    antichain,
    chain,
    chain_product,
    counterexample_poset,
    random_poset,
    random_ranked_poset,
)
from .rs import rs_check, s_vector, stationary_distribution, transfer_matrix
from .toggles import GYR, Action, orbit_decomposition, orbits_to_json, orbit_sizes


class UsageError(Exception):
    pass


DEFAULT_FPL_BOUND = 5
DEFAULT_IDEAL_BOUND = 6


def max_n(kind: str) -> int:
    env = os.environ.get("POSET_DYNAMICS_MAX_N")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"POSET_DYNAMICS_MAX_N must be an integer, got {env!r}") from None
    return DEFAULT_FPL_BOUND if kind == "fpl" else DEFAULT_IDEAL_BOUND


def check_bound(n: int, kind: str) -> None:
    bound = max_n(kind)
    if n > bound:
        raise UsageError(f"n = {n} exceeds the desk-scale bound {bound} (raise POSET_DYNAMICS_MAX_N to override)")
    if n < 1:
        raise UsageError("n must be >= 1")


@dataclass
class RunReport:
    command: str
    parameters: dict
    seed: int | None = None
    verdicts: dict[str, bool] = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def verdict(self, name: str, passed: bool, started: float) -> None:
        self.verdicts[name] = bool(passed)
        self.timings[name] = round(time.perf_counter() - started, 4)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self, timings: bool = False) -> dict:
        payload = json.dumps(self.data, sort_keys=True, separators=(",", ":"))
        out = {
            "command": self.command,
            "parameters": self.parameters,
            "seed": self.seed,
            "verdicts": self.verdicts,
            "passed": self.passed,
            "data": self.data,
            "artifacts": {"data_sha256": hashlib.sha256(payload.encode()).hexdigest()},
        }
        if timings:
            out["timings"] = self.timings
        return out


# poset sources

def load_poset(source: str, seed: int | None) -> Poset:
    name, _, arg = source.partition(":")
    try:
        if name == "asm":
            n = int(arg)
            check_bound(n, "ideal")
            return asm_mod.AsmPoset(n)
        if name == "chainproduct":
            a, b = (int(x) for x in arg.split(","))
            return chain_product(a, b)
        if name == "chain":
            return chain(int(arg))
        if name == "antichain":
            return antichain(int(arg))
        if name == "counterexample6":
            return counterexample_poset()
        if name in ("random", "random-ranked"):
            if seed is None:
                raise UsageError(f"{name} posets need an explicit --seed")
            rng = random.Random(seed)
            size = int(arg)
            return random_ranked_poset(rng, size) if name == "random-ranked" else random_poset(rng, size)
    except ValueError as exc:
        if isinstance(exc, PosetError):
            raise
        raise UsageError(f"bad poset family parameters in {source!r}") from None
    path = Path(source)
    if not path.exists():
        raise UsageError(f"unknown poset source {source!r}")
    return Poset.from_json(json.loads(path.read_text()))


def _element_names(P: Poset) -> list:
    if P.labels is None:
        return list(range(P.size))
    return [list(lab) if isinstance(lab, tuple) else lab for lab in P.labels]


def _statistics(spec: str, P: Poset):
    if spec == "ideal-size":
        return [ideal_size_statistic()]
    if spec == "antichain-size":
        return [antichain_size_statistic(P)]
    if spec.startswith("toggleability"):
        _, _, which = spec.partition(":")
        if which in ("", "all"):
            return [toggleability_statistic(P, p) for p in range(P.size)]
        return [toggleability_statistic(P, int(which))]
    raise UsageError(f"unknown statistic {spec!r}")


# commands

def cmd_enumerate(args) -> RunReport:
    P = load_poset(args.poset, args.seed)
    report = RunReport("enumerate", {"poset": args.poset}, args.seed)
    t = time.perf_counter()
    ideals = P.enumerate_ideals()
    report.data = {"count": len(ideals), "elements": _element_names(P), "ideals": ideals}
    report.verdict("all_ideals_down_closed", all(P.is_ideal(i) for i in ideals), t)
    print(f"{args.poset}: {len(ideals)} order ideals")
    return report


def _action(text: str, P: Poset) -> Action:
    try:
        action = Action.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if action.kind in ("gyr", "gyr-inverse") and not P.is_ranked():
        P.rank_function()  # raises NotRankedError with a witness
    return action


def cmd_orbits(args) -> RunReport:
    P = load_poset(args.poset, args.seed)
    action = _action(args.action, P)
    report = RunReport("orbits", {"poset": args.poset, "action": action.name}, args.seed)
    t = time.perf_counter()
    orbits = orbit_decomposition(action, P)
    report.data = orbits_to_json(orbits)
    report.data["sizes"] = sorted(len(o) for o in orbits)
    covered = sorted(i for o in orbits for i in o)
    report.verdict("orbits_partition_ideals", covered == P.enumerate_ideals(), t)
    sizes = orbit_sizes(orbits)
    print(f"{action.name} on {args.poset}: {len(orbits)} orbits, sizes {dict(sorted(sizes.items()))}")
    return report


def cmd_homomesy(args) -> RunReport:
    P = load_poset(args.poset, args.seed)
    action = _action(args.action, P)
    report = RunReport(
        "homomesy", {"poset": args.poset, "action": action.name, "statistic": args.statistic}, args.seed
    )
    orbits = orbit_decomposition(action, P)
    results = []
    for stat in _statistics(args.statistic, P):
        t = time.perf_counter()
        rep = check_homomesy(action, stat, P, orbits=orbits)
        results.append(rep.to_json())
        report.verdict(stat.name, rep.homomesic, t)
        verdict = f"{fraction_str(rep.c)}-mesic" if rep.homomesic else "NOT homomesic"
        print(f"{stat.name} under {action.name}: {verdict}")
    report.data = {"reports": results}
    return report


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from None


def cmd_asm_convert(args) -> RunReport:
    data = _read_json(args.input)
    report = RunReport("asm convert", {"from": args.src, "to": args.dst, "input": args.input})
    t = time.perf_counter()
    if args.src == "asm":
        h = asm_mod.asm_to_height(data)
    elif args.src == "height":
        h = tuple(tuple(r) for r in data)
    elif args.src == "cornersum":
        h = asm_mod.asm_to_height(asm_mod.asm_from_corner_sum(data))
    elif args.src == "ideal":
        A = asm_mod.AsmPoset(int(data["n"]))
        h = asm_mod.ideal_to_height(A, sum(1 << A.index_of(lab) for lab in data["ideal"]))
    else:
        F = fpl_mod.FplGrid.from_json(data)
        h = fpl_mod.fpl_to_height(F)
    n = len(h) - 1
    M = asm_mod.height_to_asm(h)
    if args.dst == "asm":
        out = [list(r) for r in M]
    elif args.dst == "height":
        out = [list(r) for r in h]
    elif args.dst == "cornersum":
        out = [list(r) for r in asm_mod.corner_sum(M)]
    elif args.dst == "ideal":
        A = asm_mod.AsmPoset(n)
        out = {"n": n, "ideal": [list(lab) for lab in asm_mod.ideal_labels(A, asm_mod.height_to_ideal(A, h))]}
    else:
        F = fpl_mod.height_to_fpl(h)
        out = F.to_json()
        if args.render:
            print(fpl_mod.render(F))
    report.data = {"result": out}
    report.verdict("round_trip", asm_mod.asm_to_height(M) == h, t)
    if not args.out:
        print(json.dumps(out))
    return report


def cmd_fpl(args) -> RunReport:
    F = fpl_mod.FplGrid.from_json(_read_json(args.input))
    report = RunReport(f"fpl {args.fpl_verb}", {"input": args.input})
    t = time.perf_counter()
    if args.fpl_verb == "gyrate":
        G = fpl_mod.fpl_gyration(F)
        report.data = {"result": G.to_json()}
        fpl_mod.validate_fpl(G)
        report.verdict("result_is_fpl", True, t)
        if args.render:
            print(fpl_mod.render(G))
    elif args.fpl_verb == "link":
        lp = fpl_mod.link_pattern(F)
        report.data = {"link_pattern": lp.to_json()}
        report.verdict("noncrossing", True, t)
        print(lp)
    else:
        print(fpl_mod.render(F))
        report.data = {"render": fpl_mod.render(F).splitlines()}
    return report


def _parse_fraction(text: str) -> Fraction:
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None
    if not 0 < p < 1:
        raise UsageError("p must lie strictly between 0 and 1")
    return p


def cmd_rs(args) -> RunReport:
    check_bound(args.n, "fpl")
    if args.mode == "dlm":
        return cmd_dlm(args)
    report = RunReport("rs check", {"n": args.n, "mode": "hamiltonian"})
    t = time.perf_counter()
    res = rs_check(args.n)
    report.data = res.to_json()
    report.verdict("rs_residual_zero", res.holds, t)
    print(f"RS_{args.n} = 0: {res.holds}")
    return report


def cmd_dlm(args) -> RunReport:
    check_bound(args.n, "fpl")
    ps = [_parse_fraction(args.p)] + [_parse_fraction(q) for q in args.compare_p or []]
    report = RunReport("dlm stationary", {"n": args.n, "p": [fraction_str(p) for p in ps]})
    t = time.perf_counter()
    s = s_vector(args.n)
    target = s.scale(Fraction(1) / s.total())
    vectors = [stationary_distribution(transfer_matrix(args.n, p)) for p in ps]
    report.data = {"stationary": vectors[0].to_json(), "fpl_distribution": target.to_json()}
    report.verdict("stationary_equals_fpl_distribution", vectors[0] == target, t)
    if len(vectors) > 1:
        report.verdict("p_independent", all(v == vectors[0] for v in vectors), t)
    for name, ok in report.verdicts.items():
        print(f"{name}: {ok}")
    return report


def cmd_corollary41(args) -> RunReport:
    check_bound(args.n, "fpl")
    n = args.n
    A = asm_mod.AsmPoset(n)
    report = RunReport("corollary41", {"n": n})
    t = time.perf_counter()
    orbits = orbit_decomposition(GYR, A)
    fpls = {I: fpl_mod.ideal_to_fpl(A, I) for I in A.enumerate_ideals()}
    toggle = {p: toggleability_statistic(A, p) for p in range(A.size)}
    rows = []
    balanced = True
    literal = signed = True
    for k, o in enumerate(orbits):
        for (i, j), chain_ in A.chains.items():
            values = [fpl_mod.n_alpha(fpls[I], i, j) for I in o]
            plus, minus = values.count(1), values.count(-1)
            balanced &= plus == minus
            rows.append({"orbit": k, "square": [i, j], "vertical": plus, "horizontal": minus})
            for I, na in zip(o, values):
                total = sum(toggle[p](I) for p in chain_)
                literal &= total == na
                signed &= total == (-1) ** (i + j + 1) * na
    report.data = {"orbit_sizes": [len(o) for o in orbits], "counts": rows}
    report.verdict("orbit_balance", balanced, t)
    report.verdict("refinement_sum_equals_n_alpha", literal, t)
    report.verdict("refinement_sum_equals_signed_n_alpha", signed, t)
    if args.render:
        for o in orbits:
            print(f"-- orbit of size {len(o)}")
            for I in o:
                print(fpl_mod.render(fpls[I]), end="\n\n")
    for name, ok in report.verdicts.items():
        print(f"{name}: {ok}")
    return report


def cmd_wieland(args) -> RunReport:
    check_bound(args.n, "fpl")
    report = RunReport("wieland", {"n": args.n})
    t = time.perf_counter()
    good = {1, -1}
    for F in fpl_mod.enumerate_fpls(args.n):
        lp, lg = fpl_mod.link_pattern(F), fpl_mod.link_pattern(fpl_mod.fpl_gyration(F))
        good &= {s for s in (1, -1) if rotate(lp, s) == lg}
    report.data = {"directions": sorted(good)}
    report.verdict("gyration_rotates_link_pattern", bool(good), t)
    print(f"link(gyr F) = R^s link(F) for s in {sorted(good)}")
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON run report here")
    common.add_argument("--seed", type=int, help="seed for randomized poset families")
    common.add_argument("--render", action="store_true", help="print ASCII pictures where available")
    common.add_argument("--timings", action="store_true", help="include per-check timings in the report")

    parser = argparse.ArgumentParser(prog="poset-dynamics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list J(P)")
    p.add_argument("poset", help="asm:N | chainproduct:A,B | chain:N | antichain:N | counterexample6 | random:M | random-ranked:M | file.json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("orbits", parents=[common], help="orbit decomposition of an action")
    p.add_argument("poset")
    p.add_argument("--action", default="row", help="row | gyr | gyr-inverse | word:i,j,...")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("homomesy", parents=[common], help="check a statistic for homomesy")
    p.add_argument("poset")
    p.add_argument("--action", default="row")
    p.add_argument("--statistic", default="toggleability:all", help="toggleability[:p|:all] | ideal-size | antichain-size")
    p.set_defaults(func=cmd_homomesy)

    p = sub.add_parser("asm", help="ASM conversions")
    asm_sub = p.add_subparsers(dest="asm_verb", required=True)
    q = asm_sub.add_parser("convert", parents=[common])
    kinds = ["asm", "height", "ideal", "cornersum", "fpl"]
    q.add_argument("--from", dest="src", choices=kinds, default="asm")
    q.add_argument("--to", dest="dst", choices=kinds, default="height")
    q.add_argument("--input", default="-", help="JSON file, '-' for stdin")
    q.set_defaults(func=cmd_asm_convert)

    p = sub.add_parser("fpl", parents=[common], help="fully-packed loop operations")
    p.add_argument("fpl_verb", choices=["gyrate", "link", "render"])
    p.add_argument("--input", default="-")
    p.set_defaults(func=cmd_fpl)

    p = sub.add_parser("rs", help="Razumov-Stroganov verification")
    rs_sub = p.add_subparsers(dest="rs_verb", required=True)
    q = rs_sub.add_parser("check", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--mode", choices=["hamiltonian", "dlm"], default="hamiltonian")
    q.add_argument("--p", default="1/2")
    q.add_argument("--compare-p", action="append")
    q.set_defaults(func=cmd_rs)

    p = sub.add_parser("dlm", help="dense loop model")
    dlm_sub = p.add_subparsers(dest="dlm_verb", required=True)
    q = dlm_sub.add_parser("stationary", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", default="1/2")
    q.add_argument("--compare-p", action="append", help="additional p values that must give the same vector")
    q.set_defaults(func=cmd_dlm)

    p = sub.add_parser("corollary41", parents=[common], help="orbit balance of N_alpha under gyration")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_corollary41)

    p = sub.add_parser("wieland", parents=[common], help="rotation of link patterns under FPL gyration")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_wieland)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (UsageError, PosetError, asm_mod.AsmError, fpl_mod.FplError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        text = json.dumps(report.to_json(timings=args.timings), indent=2, sort_keys=True)
        Path(args.out).write_text(text + "\n")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
