"""Command-line entry point.

Exit codes: 0 success, 2 input error, 3 budget exceeded, 4 an exhaustive
cross-check disagreed with a closed form.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from . import linalg as la
from . import netcode, rparams, security
from .codes import LinearCode, dual, gabidulin
from .coset import NestedPair, decode_clean, encode, systematic_mrd_construction
from .errors import BudgetExceeded, TheoremViolation
from .fields import field
from .serialize import (
    dump_json,
    net_from_json,
    net_to_json,
    pair_from_json,
    pair_to_json,
    vector_from_json,
    vector_to_json,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VIOLATION = 0, 2, 3, 4


class InputError(Exception):
    pass


# -- fixtures -------------------------------------------------------------

def _example1() -> NestedPair:
    F = field(2, 3)
    return NestedPair.from_codes(dual(gabidulin(F, 3, 1)), dual(gabidulin(F, 3, 2)))


def _example2() -> NestedPair:
    return systematic_mrd_construction(field(2, 3), 1, 2)


def _example3() -> NestedPair:
    F = field(2, 3)
    return NestedPair.from_codes(gabidulin(F, 3, 1), LinearCode.zero(F, 3))


def _f4_ozarow() -> NestedPair:
    F = field(2, 2)
    return NestedPair.from_codes(LinearCode.full(F, 2), LinearCode.from_generator(F, [[1, F.alpha]], 2))


FIXTURES = {
    "example1": _example1,
    "example2": _example2,
    "example3": _example3,
    "f4-ozarow": _f4_ozarow,
}


def fixture_files(name: str) -> dict[str, dict]:
    """JSON documents for a named fixture, keyed by file name."""
    if name not in FIXTURES:
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    pair = FIXTURES[name]()
    files = {"pair.json": pair_to_json(pair)}
    if name == "example3":
        net = netcode.complete_network(pair.field.p, pair.n)
        files["net.json"] = net_to_json(net)
    return files


# -- plumbing -------------------------------------------------------------

def _read_json(path: str, inputs: dict, key: str) -> dict:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    inputs[key] = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def _inline_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: malformed JSON ({exc.msg})") from exc


def _load_pair(args, inputs) -> NestedPair:
    return pair_from_json(_read_json(args.pair, inputs, "pair"))


def _manifest(args, inputs: dict, t0: float) -> dict:
    skip = {"func", "format", "timing", "out"}
    params = {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}
    m = {
        "command": args.command,
        "args": params,
        "inputs": dict(sorted(inputs.items())),
        "seed": args.seed,
        "budgets": {"ops": args.budget_ops},
        "version": __version__,
    }
    if args.timing:
        m["wall_clock_s"] = round(time.perf_counter() - t0, 6)
    return m


def _num(x):
    """Exact value for JSON: int when integral, otherwise an "a/b" string."""
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _emit_csv(rows: list[dict], manifest: dict, out) -> None:
    out.write("# manifest " + dump_json(manifest) + "\n")
    if not rows:
        return
    w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)


def _emit(report: dict, table: list[dict], args, manifest: dict, out) -> None:
    if args.format == "csv":
        _emit_csv(table, manifest, out)
    else:
        report = dict(report, manifest=manifest)
        out.write(dump_json(report) + "\n")


def _profile_table(named: dict[str, list]) -> list[dict]:
    length = max(len(v) for v in named.values())
    rows = []
    for i in range(length):
        row = {"i": i}
        for k, v in named.items():
            row[k] = v[i] if i < len(v) else ""
        rows.append(row)
    return rows


# -- commands -------------------------------------------------------------

def cmd_params(args, inputs, out) -> dict:
    pair = _load_pair(args, inputs)
    c1, c2 = pair.c1, pair.c2
    b = args.budget_ops
    K = list(rparams.rdip_profile(c1, c2, b).values)
    M = list(rparams.rgrw_profile(c1, c2, b).values)
    d2, d1 = dual(c2), dual(c1)
    Kd = list(rparams.rdip_profile(d2, d1, b).values)
    Md = list(rparams.rgrw_profile(d2, d1, b).values)
    sing = rparams.singleton_profile(c1, c2)
    report = {
        "rdip": K,
        "rgrw": M,
        "singleton": [_num(s) for s in sing],
        "mrd_equality": all(M[i] == s for i, s in enumerate(sing, start=1)),
        "dual": {"rdip": Kd, "rgrw": Md},
    }
    if args.oracle:
        checks = {
            "rgrw_scan": [rparams.rgrw_scan(c1, c2, i, b) for i in range(pair.l + 1)],
            "rgrw_first_direct": rparams.rgrw_first_direct(c1, c2, b),
        }
        if checks["rgrw_scan"] != M or checks["rgrw_first_direct"] != M[1]:
            raise TheoremViolation(f"rgrw cross-check failed: {checks} vs {M}")
        report["oracle"] = checks
    table = _profile_table({"rdip": K, "rgrw": M, "dual_rdip": Kd, "dual_rgrw": Md})
    return report, table


def _dist_leakage(pair: NestedPair, dist, mu_max: int, budget: int) -> list[float]:
    """Max over row spaces of dim <= mu of I(S; BX^T); any S_Z leaks no more."""
    cost = la.gamma_count(pair.field.p, pair.n, mu_max)
    if cost > budget:
        raise BudgetExceeded(f"{cost} observations exceed budget {budget}")
    full = range(pair.l)
    out, best = [], 0.0
    for mu in range(mu_max + 1):
        for V in la.enumerate_gamma(pair.field.p, pair.n, mu):
            best = max(best, security.empirical_mi(pair, full, V.matrix, dist, budget))
        out.append(round(best, 12))
    return out


def cmd_security(args, inputs, out) -> dict:
    pair = _load_pair(args, inputs)
    b = args.budget_ops
    rep = security.security_report(pair, args.mu_max, args.omega, b)
    d = rep.to_dict()
    mu_max = len(rep.theta) - 1
    if args.dist:
        raw = _read_json(args.dist, inputs, "dist")
        if not isinstance(raw, dict) or "probs" not in raw:
            raise InputError("distribution file needs a 'probs' list")
        security.normalize_distribution(pair, raw["probs"])
        d["dist_max_leakage"] = _dist_leakage(pair, raw["probs"], mu_max, b)
    if args.oracle:
        oracle = [security.equivocation_oracle(pair, mu, b, b) for mu in range(mu_max + 1)]
        if [int(v) for v in oracle] != rep.theta:
            raise TheoremViolation(f"equivocation oracle {oracle} disagrees with {rep.theta}")
        d["oracle_theta"] = [int(v) for v in oracle]
        if args.omega:
            chk = security.verify_strong_security(pair, rep.omega, b)
            if not chk.holds or (chk.witness is None and not chk.capped):
                raise TheoremViolation(f"strong security order {rep.omega} not confirmed")
            d["oracle_omega"] = {"holds": chk.holds, "checked": chk.checked, "witness": chk.witness, "capped": chk.capped}
    table = _profile_table({"theta": rep.theta, "max_leakage": rep.max_leakage})
    return d, table


def _message_arg(pair: NestedPair, text: str) -> np.ndarray:
    msg = _inline_json(text, "--message")
    if not isinstance(msg, list):
        raise InputError("--message must be a JSON list of field elements")
    s = vector_from_json(pair.field, msg)
    if s.shape != (pair.l,):
        raise InputError(f"message needs {pair.l} symbols, got {s.size}")
    return s


def cmd_encode(args, inputs, out) -> dict:
    pair = _load_pair(args, inputs)
    s = _message_arg(pair, args.message)
    x = encode(pair, s, args.seed)
    F = pair.field
    report = {"message": vector_to_json(F, s), "word": vector_to_json(F, x)}
    return report, [{"j": j, "symbol": json.dumps(v)} for j, v in enumerate(report["word"])]


def cmd_decode(args, inputs, out) -> dict:
    pair = _load_pair(args, inputs)
    F = pair.field
    word = _inline_json(args.word, "--word")
    if not isinstance(word, list):
        raise InputError("--word must be a JSON list of field elements")
    y = vector_from_json(F, word)
    if args.A is None:
        s = decode_clean(pair, y)
        report = {"message": vector_to_json(F, s), "ambiguous": False}
    else:
        net = net_from_json(_read_json(args.A, inputs, "A"))
        if net.p != F.p or net.n != pair.n or y.size != net.N:
            raise InputError("transfer matrix does not fit the pair and received word")
        res = netcode.md_decode(pair, net.matrix, y, args.budget_ops)
        report = {
            "message": None if res.ambiguous else vector_to_json(F, res.message),
            "ambiguous": res.ambiguous,
            "discrepancy": res.discrepancy,
            "tied": [vector_to_json(F, t) for t in res.tied],
        }
    return report, [{"message": json.dumps(report["message"]), "ambiguous": report["ambiguous"]}]


_ELEMENT_KEYS = ("s", "x", "y", "error", "Z", "decoded")


def _trial_json(F, rec: dict) -> dict:
    rec = dict(rec)
    for k in _ELEMENT_KEYS:
        if rec.get(k) is not None:
            rec[k] = vector_to_json(F, rec[k])
    return rec


def cmd_simulate(args, inputs, out) -> dict:
    pair = _load_pair(args, inputs)
    F = pair.field
    lines = []
    if args.sweep_A:
        summary = netcode.decode_sweep(
            pair, args.t, args.rho, N=args.N, budget=args.budget_ops,
            on_trial=(lambda r: lines.append(_trial_json(F, r))) if args.trials_out else None,
        )
        report = summary.to_dict()
        if summary.first_witness is not None:
            report["first_witness"] = _trial_json(F, summary.first_witness)
        report["mode"] = "sweep"
    else:
        if args.A is None:
            raise InputError("simulate needs --A FILE or --sweep-A")
        net = net_from_json(_read_json(args.A, inputs, "A"))
        if net.p != F.p or net.n != pair.n:
            raise InputError("transfer matrix does not fit the pair")
        counts = {"success": 0, "ambiguous": 0, "failure": 0}
        first = None
        for rec in netcode.simulate(pair, net.matrix, args.t, args.trials, args.seed, args.budget_ops):
            counts[rec["result"]] += 1
            rec = _trial_json(F, rec)
            if first is None and rec["result"] != "success":
                first = rec
            lines.append(rec)
        report = {
            "trials": args.trials,
            "successes": counts["success"],
            "ambiguous": counts["ambiguous"],
            "failures": counts["failure"],
            "capability": netcode.correction_capability(pair, args.budget_ops),
            "rho": net.rho,
            "mode": "random",
        }
        if first is not None:
            report["first_witness"] = first
    return report, lines


def cmd_fixtures(args, inputs, out) -> dict:
    files = fixture_files(args.name)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for fname, doc in files.items():
            dump_json(doc, d / fname)
    return {"fixture": args.name, "files": files}, [
        {"file": k, "sha256": hashlib.sha256((dump_json(v) + "\n").encode()).hexdigest()}
        for k, v in files.items()
    ]


# -- argument parsing -----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--budget-ops", type=int, default=rparams.DEFAULT_SCAN_BUDGET,
                        help="cap on enumerated subspaces/codewords")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--oracle", action="store_true", help="add exhaustive cross-checks")
    common.add_argument("--timing", action="store_true", help="record wall-clock in the manifest")

    p = argparse.ArgumentParser(prog="ranksec", description="Rank-metric security of nested coset codes")
    p.add_argument("--version", action="version", version=f"ranksec {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("params", parents=[common], help="RDIP/RGRW profiles of a nested pair")
    s.add_argument("--pair", required=True)
    s.set_defaults(func=cmd_params)

    s = sub.add_parser("security", parents=[common], help="universal security report")
    s.add_argument("--pair", required=True)
    s.add_argument("--mu-max", type=int)
    s.add_argument("--omega", action="store_true", help="also compute the strong security order")
    s.add_argument("--dist", help='message distribution file {"probs": [...]}')
    s.set_defaults(func=cmd_security)

    s = sub.add_parser("encode", parents=[common], help="coset-encode a message")
    s.add_argument("--pair", required=True)
    s.add_argument("--message", required=True, help="JSON list of coefficient arrays")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", parents=[common], help="recover a message")
    s.add_argument("--pair", required=True)
    s.add_argument("--word", required=True, help="JSON list of coefficient arrays")
    s.add_argument("--A", help="network file; enables minimum-discrepancy decoding")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("simulate", parents=[common], help="network decoding trials")
    s.add_argument("--pair", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--A", help="network file with a fixed transfer matrix")
    g.add_argument("--sweep-A", action="store_true", help="exhaust all transfer matrices")
    s.add_argument("--t", type=int, default=0, help="error packets")
    s.add_argument("--rho", type=int, default=0, help="rank deficiency (sweep)")
    s.add_argument("--N", type=int, help="incoming links (sweep, default n)")
    s.add_argument("--trials", type=int, default=100, help="random trials (fixed A)")
    s.add_argument("--trials-out", action="store_true", help="in sweeps, list every non-successful trial")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("fixtures", parents=[common], help="write a named fixture")
    s.add_argument("name")
    s.add_argument("--out", help="directory to write into")
    s.set_defaults(func=cmd_fixtures)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    t0 = time.perf_counter()
    inputs: dict = {}
    buf = io.StringIO()
    try:
        if args.budget_ops <= 0:
            raise InputError("--budget-ops must be positive")
        report, table = args.func(args, inputs, buf)
        manifest = _manifest(args, inputs, t0)
        if args.command == "simulate" and args.format == "json":
            for rec in table:
                buf.write(dump_json(rec) + "\n")
            _emit(report, [], args, manifest, buf)
        else:
            _emit(report, table, args, manifest, buf)
    except TheoremViolation as exc:
        err.write(f"ranksec: cross-check failed: {exc}\n")
        return EXIT_VIOLATION
    except BudgetExceeded as exc:
        err.write(f"ranksec: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (InputError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        err.write(f"ranksec: input error: {exc}\n")
        return EXIT_INPUT
    # nothing is written until the whole report exists
    out.write(buf.getvalue())
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
