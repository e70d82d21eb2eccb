"""Command-line front end.

Exit codes: 0 yes/pass, 1 no/fail, 2 usage or input error, 3 unknown
(budget exhausted).  ``--format json`` prints one machine-readable report;
timings are left out of it so that reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from .counterexample import expand_counterexample, paper_fixtures, verify_counterexample
from .cyclo import zero_set
from .diff import DiffInstance, solve_diff
from .errors import FugledeError
from .group import PointSet, make_group
from .hadamard import (
    RationalMatrix,
    canonicalize_small,
    is_hadamard,
    is_log_hadamard,
    mod_rank,
    verify_decomposition,
)
from .reduction import independent_set_via_diff
from .tiling import (
    NO,
    UNKNOWN,
    YES,
    is_spectral,
    is_tile,
    scan_small_spectral_implies_tile,
    verify_spectrum,
    verify_tiling,
)

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    output: str = "human"
    budget: Optional[float] = None
    workers: int = 1
    seed: Optional[int] = None

    def __post_init__(self):
        if self.budget is not None and self.budget <= 0:
            raise FugledeError("--budget must be positive")
        if self.workers < 1:
            raise FugledeError("--workers must be at least 1")


@dataclass
class Outcome:
    verdict: str
    report: dict = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)


def _exit_code(verdict: str) -> int:
    return {YES: EXIT_YES, "pass": EXIT_YES, NO: EXIT_NO, "fail": EXIT_NO,
            UNKNOWN: EXIT_UNKNOWN}.get(verdict, EXIT_YES)


def _pts(S: Optional[PointSet]):
    if S is None:
        return None
    if S.group.dim == 1:
        return [p[0] for p in S.points]
    return [list(p) for p in S.points]


def _fmt_set(S: Optional[PointSet]) -> str:
    if S is None:
        return "-"
    items = _pts(S)
    if S.group.dim == 1:
        return "{" + ",".join(map(str, items)) + "}"
    return "{" + ", ".join("(" + ",".join(map(str, p)) + ")" for p in items) + "}"


def _public_stats(stats: dict) -> dict:
    return {k: v for k, v in stats.items() if k != "elapsed"}


def _group_and_set(args):
    group = formats.parse_moduli(args.group) if args.group else None
    S = formats.parse_set(args.set, group)
    return S.group, S


# --- subcommands ---------------------------------------------------------------


def cmd_check_hadamard(args, cfg):
    M = formats.as_rational(formats.load_matrix(args.matrix))
    if args.log:
        ok = is_log_hadamard(M)
        how = "exact log-Hadamard test"
    else:
        ok = is_hadamard(M.to_complex(), args.tol)
        how = f"floating Hadamard test (tol {args.tol:g})"
    v = YES if ok else NO
    return Outcome(v, {"hadamard": ok, "method": how},
                   [f"{how}: {'Hadamard' if ok else 'not Hadamard'}"])


def cmd_canonicalize(args, cfg):
    M = formats.as_rational(formats.load_matrix(args.matrix))
    c = canonicalize_small(M)
    rep = {
        "kind": c.kind,
        "parameter": None if c.parameter is None else str(c.parameter),
        "row_perm": list(c.row_perm) if c.row_perm else None,
        "col_perm": list(c.col_perm) if c.col_perm else None,
        "form": formats.matrix_to_doc(c.form) if c.form else None,
    }
    lines = [f"kind: {c}"]
    if c.form:
        lines.append(f"row order {list(c.row_perm)}, column order {list(c.col_perm)}")
        lines += ["  " + " ".join(f"{x}/{c.form.den}" for x in r) for r in c.form.rows]
    return Outcome(YES if c.kind != "none" else NO, rep, lines)


def cmd_mod_rank(args, cfg):
    M = formats.load_matrix(args.matrix)
    N = args.modulus
    if isinstance(M, RationalMatrix):
        M = M.reduced()
        if N % M.den:
            raise FugledeError(f"denominator {M.den} does not divide modulus {N}")
        M = M.scaled(N)
    else:
        M = formats.as_int(M, N)
    r = mod_rank(M)
    rep = {"rank": r.rank, "invariant_factors": list(r.invariant_factors),
           "L": formats.matrix_to_doc(r.L), "A": formats.matrix_to_doc(r.A)}
    lines = [f"mod-{N} rank: {r.rank}", f"invariant factors: {list(r.invariant_factors)}"]
    return Outcome("pass", rep, lines)


def cmd_verify_decomposition(args, cfg):
    H = formats.as_rational(formats.load_matrix(args.h))
    L = formats.as_int(formats.load_matrix(args.l))
    A = formats.as_int(formats.load_matrix(args.a))
    ok = verify_decomposition(H, L, A)
    return Outcome(YES if ok else NO, {"valid": ok},
                   [f"{L.modulus}H {'==' if ok else '!='} L A (mod {L.modulus})"])


def cmd_zero_set(args, cfg):
    g, S = _group_and_set(args)
    Z = zero_set(g, S)
    return Outcome("pass", {"zero_set": _pts(Z), "size": len(Z)},
                   [f"zero set ({len(Z)} characters): {_fmt_set(Z)}"])


def _decision_outcome(name: str, rep) -> Outcome:
    out = {"verdict": rep.verdict, "method": rep.method, "witness": _pts(rep.witness),
           "stats": _public_stats(rep.stats)}
    lines = [f"{name}: {rep.verdict} ({rep.method})"]
    if rep.witness is not None:
        lines.append(f"witness: {_fmt_set(rep.witness)}")
    if "reason" in rep.stats:
        lines.append(rep.stats["reason"])
    return Outcome(rep.verdict, out, lines)


def cmd_is_tile(args, cfg):
    g, S = _group_and_set(args)
    return _decision_outcome("tile", is_tile(g, S, cfg.budget))


def cmd_is_spectral(args, cfg):
    g, S = _group_and_set(args)
    return _decision_outcome("spectral", is_spectral(g, S, cfg.budget))


def cmd_verify_tiling(args, cfg):
    g, S = _group_and_set(args)
    T = formats.parse_set(args.witness, g)
    ok = verify_tiling(g, S, T)
    return Outcome(YES if ok else NO, {"valid": ok},
                   [f"{_fmt_set(T)} {'is' if ok else 'is not'} a tiling complement"])


def cmd_verify_spectrum(args, cfg):
    g, S = _group_and_set(args)
    L = formats.parse_set(args.witness, g)
    ok = verify_spectrum(g, S, L)
    return Outcome(YES if ok else NO, {"valid": ok},
                   [f"{_fmt_set(L)} {'is' if ok else 'is not'} a spectrum"])


def cmd_diff_solve(args, cfg):
    g = formats.parse_moduli(args.group)
    E = formats.parse_set(args.e, g)
    D = formats.parse_set(args.d, g)
    sol = solve_diff(DiffInstance(g, E, D, args.target), budget=cfg.budget)
    v = sol.verdict
    rep = {"k": sol.k, "witness": _pts(sol.witness), "status": sol.status,
           "nodes": sol.nodes, "stats": _public_stats(sol.stats)}
    lines = [f"k = {sol.k} ({sol.status})", f"witness: {_fmt_set(sol.witness)}"]
    if args.target is not None:
        lines.insert(0, f"size {args.target}: {v}")
    return Outcome(v if v != "optimal" else YES, rep, lines)


def cmd_scan(args, cfg):
    g = formats.parse_moduli(args.group)
    if args.sample is not None and cfg.seed is None:
        raise FugledeError("--sample requires --seed")
    mode = "sample" if args.sample is not None else "exhaustive"
    rep = scan_small_spectral_implies_tile(
        g, args.max_size, mode, count=args.sample or 0, seed=cfg.seed,
        workers=cfg.workers, budget=cfg.budget,
    )
    verdict = "pass" if rep.passed else (UNKNOWN if not rep.violations else "fail")
    out = {"group": list(rep.moduli), "max_size": rep.max_size, "mode": rep.mode,
           "examined": rep.examined, "spectral": rep.spectral, "tiles": rep.tiles,
           "unknown": rep.unknown, "violations": [[list(p) for p in v] for v in rep.violations]}
    lines = [
        f"Z{list(rep.moduli)}, sets of size <= {rep.max_size} ({rep.mode}): {rep.examined} examined",
        f"spectral: {rep.spectral}, tiles: {rep.tiles}, unknown: {rep.unknown}, "
        f"spectral non-tiles: {len(rep.violations)}",
    ]
    return Outcome(verdict, out, lines)


def cmd_verify_paper(args, cfg):
    rep = verify_counterexample()
    checks = [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks]
    lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in rep.checks]
    out = {"passed": rep.passed, "checks": checks}
    verdict = "pass" if rep.passed else "fail"
    if args.expand:
        ex = expand_counterexample(args.expand, budget=cfg.budget)
        spec = ex.spectral
        out["expansion"] = {
            "n": ex.n, "group": list(ex.group.moduli), "size": len(ex.points),
            "tile": ex.tile.verdict, "tile_reason": ex.tile.stats.get("reason"),
            "spectral": spec.verdict, "lifted_spectrum": ex.lifted_spectrum_ok,
        }
        lines += [
            f"expansion n={ex.n}: {len(ex.points)} points in Z_{ex.group.moduli[0]}^3",
            f"  tile: {ex.tile.verdict} ({ex.tile.stats.get('reason', ex.tile.method)})",
            f"  spectral (search): {spec.verdict}",
            f"  product spectrum nL + [0,n)^3 verifies: {ex.lifted_spectrum_ok}",
        ]
        if ex.tile.verdict != NO or not ex.lifted_spectrum_ok:
            verdict = "fail"
    return Outcome(verdict, out, lines)


def cmd_export_fixtures(args, cfg):
    H, L, A = paper_fixtures()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    formats.dump(formats.matrix_to_doc(H), out / "H.json")
    formats.dump(formats.matrix_to_doc(L), out / "L.json")
    formats.dump(formats.matrix_to_doc(A), out / "A.json")
    g = make_group([8, 8, 8])
    formats.dump(formats.set_to_doc(PointSet.from_columns(g, A.rows)), out / "A_set.json")
    formats.dump(formats.set_to_doc(PointSet(g, L.rows)), out / "L_set.json")
    names = ["H.json", "L.json", "A.json", "A_set.json", "L_set.json"]
    return Outcome("pass", {"files": names}, [f"wrote {', '.join(names)} to {out}"])


def cmd_ind_to_diff(args, cfg):
    G = formats.load_graph(args.graph)
    res = independent_set_via_diff(G, args.target, cfg.budget)
    rep = {"k": res.k, "witness": list(res.witness),
           "m": res.embedding.m, "phi": list(res.embedding.phi)}
    lines = [f"embedding into Z_{res.embedding.m}: phi = {list(res.embedding.phi)}",
             f"independent set of size {res.k}: {sorted(res.witness)}"]
    if args.target is not None:
        lines.insert(0, f"size {args.target}: {res.verdict}")
    return Outcome(res.verdict if res.verdict != "optimal" else YES, rep, lines)


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json"], default="human", dest="output")
    common.add_argument("--budget", type=float, help="wall-clock seconds for searches")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int)

    p = argparse.ArgumentParser(prog="fuglede", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("check-hadamard", cmd_check_hadamard, "Hadamard / log-Hadamard test")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--log", action="store_true", help="exact log-Hadamard test")
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = add("canonicalize", cmd_canonicalize, "canonical form of a log-Hadamard matrix of order <= 5")
    sp.add_argument("--matrix", required=True)

    sp = add("mod-rank", cmd_mod_rank, "minimal factorization width mod N")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--modulus", type=int, required=True)

    sp = add("verify-decomposition", cmd_verify_decomposition, "check N H == L A mod N")
    sp.add_argument("--h", required=True)
    sp.add_argument("--l", required=True)
    sp.add_argument("--a", required=True)

    for name, fn, help in [
        ("zero-set", cmd_zero_set, "zeros of the Fourier transform of a set"),
        ("is-tile", cmd_is_tile, "decide whether a set tiles the group"),
        ("is-spectral", cmd_is_spectral, "decide whether a set is spectral"),
    ]:
        sp = add(name, fn, help)
        sp.add_argument("--group")
        sp.add_argument("--set", required=True)

    for name, fn, help in [
        ("verify-tiling", cmd_verify_tiling, "check a tiling complement"),
        ("verify-spectrum", cmd_verify_spectrum, "check a spectrum"),
    ]:
        sp = add(name, fn, help)
        sp.add_argument("--group")
        sp.add_argument("--set", required=True)
        sp.add_argument("--witness", required=True)

    sp = add("diff-solve", cmd_diff_solve, "largest A in E with A - A in D")
    sp.add_argument("--group", required=True)
    sp.add_argument("--e", required=True)
    sp.add_argument("--d", required=True)
    sp.add_argument("--target", type=int)

    sp = add("scan-spectral-implies-tile", cmd_scan, "check spectral => tile on small sets")
    sp.add_argument("--group", required=True)
    sp.add_argument("--max-size", type=int, required=True)
    sp.add_argument("--sample", type=int)

    sp = add("verify-paper-counterexample", cmd_verify_paper, "machine-check the Z_8^3 counterexample")
    sp.add_argument("--expand", type=int, help="also check A + 8[0,n)^3 in Z_{8n}^3")

    sp = add("export-fixtures", cmd_export_fixtures, "write H, L, A in the file formats")
    sp.add_argument("--out", required=True)

    sp = add("ind-to-diff", cmd_ind_to_diff, "maximum independent set through DIFF")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--target", type=int)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.command, args.output, args.budget, args.workers, args.seed)
        outcome = args.func(args, cfg)
    except FugledeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output == "json":
        doc = {"command": cfg.command, "verdict": outcome.verdict, **outcome.report}
        print(json.dumps(doc, sort_keys=True))
    else:
        print("\n".join(outcome.lines))
    return _exit_code(outcome.verdict)


if __name__ == "__main__":
    sys.exit(main())
