"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run standalone with ``python tests/test_acceptance.py`` or through pytest,
where the lines also appear in the terminal summary.
"""

import functools
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from helpers import nested_universe, to_slow  # noqa: E402
from ranksec import linalg as la  # noqa: E402
from ranksec import netcode as nc  # noqa: E402
from ranksec import rparams as rp  # noqa: E402
from ranksec import security as sec  # noqa: E402
from ranksec.cli import FIXTURES  # noqa: E402
from ranksec.codes import is_mrd  # noqa: E402
from ranksec.fields import field  # noqa: E402

RESULTS: dict[int, str] = {}


def report(n: int, ok: bool, detail: str) -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    RESULTS[n] = line
    print(line)
    return ok


class timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.s = time.perf_counter() - self.t0


def test_criterion_01_equivocation_oracle():
    details, ok = [], True
    for name in ("f4-ozarow", "example1"):
        pair = FIXTURES[name]()
        with timer() as t:
            closed = [sec.universal_equivocation(pair, mu) for mu in range(pair.n + 1)]
            oracle = [sec.equivocation_oracle(pair, mu) for mu in range(pair.n + 1)]
        good = closed == [int(v) for v in oracle] and all(float(v).is_integer() for v in oracle)
        ok &= good and t.s < 10
        details.append(f"{name} theta={closed} oracle={[int(v) for v in oracle]} ({t.s:.2f}s)")
    assert report(1, ok, "; ".join(details))


def test_criterion_02_example1_closed_form():
    pair = FIXTURES["example1"]()
    theta = [sec.universal_equivocation(pair, mu) for mu in range(pair.c1.k + 1)]
    want = [pair.l - max(0, mu - pair.c2.k) for mu in range(pair.c1.k + 1)]
    assert report(2, theta == want, f"theta={theta} closed form={want}")


@functools.lru_cache(maxsize=1)
def _criterion_3_clauses():
    counts = dict(pairs=0, steps=0, strict=0, agree=0, bound=0, iff=0, restricted=0)
    bound_cex = iff_cex = None
    for C1, C2 in nested_universe(ms=(1, 2, 3), ns=(1, 2, 3)):
        counts["pairs"] += 1
        l = C1.k - C2.k
        K = rp.rdip_profile(C1, C2).values
        M = rp.rgrw_profile(C1, C2).values
        counts["steps"] += K[0] == 0 and K[-1] == l and all(0 <= b - a <= 1 for a, b in zip(K, K[1:]))
        counts["strict"] += M[0] == 0 and all(b > a for a, b in zip(M, M[1:]))
        counts["agree"] += (
            [rp.rgrw_scan(C1, C2, i) for i in range(l + 1)] == list(M) and rp.rgrw_first_direct(C1, C2) == M[1]
        )
        bound = all(M[i] <= rp.singleton_bound(C1, C2, i) for i in range(1, l + 1))
        counts["bound"] += bound
        if not bound and bound_cex is None:
            bound_cex = (C1, C2, list(M))
        equal = all(M[i] == rp.singleton_bound(C1, C2, i) for i in range(1, l + 1))
        mrd_and_zero = C2.k == 0 and is_mrd(C1)
        counts["iff"] += equal == mrd_and_zero
        if equal != mrd_and_zero and iff_cex is None:
            iff_cex = (C1, C2, list(M))
        counts["restricted"] += C2.k != 0 or equal == is_mrd(C1)
    return counts, bound_cex, iff_cex


@pytest.mark.xfail(
    strict=True,
    reason="two clauses are false: the scaled bound fails for i >= 2 when m < n - dim C2, "
    "and equality also occurs with C2 != {0}",
)
def test_criterion_03_rdip_rgrw_structure():
    with timer() as t:
        c, bound_cex, iff_cex = _criterion_3_clauses()
    n = c["pairs"]
    ok = all(v == n for v in c.values()) and t.s < 300
    parts = [f"{k} {c[k]}/{n}" for k in ("steps", "strict", "agree", "bound", "iff", "restricted")]
    detail = ", ".join(parts) + f" ({t.s:.1f}s)"
    if bound_cex:
        C1, _, M = bound_cex
        detail += f"; bound counterexample m={C1.field.m} n={C1.n} C1={C1.gen} C2={{0}} M={M}"
    if iff_cex:
        C1, C2, M = iff_cex
        detail += f"; equality with C2={C2.gen} != {{0}}: C1={C1.gen} over m={C1.field.m}"
    assert report(3, ok, detail)


def test_criterion_03_true_clauses_hold():
    c, _, _ = _criterion_3_clauses()
    n = c["pairs"]
    assert n == 1025
    assert c["steps"] == c["strict"] == c["agree"] == c["restricted"] == n


def test_criterion_04_galois_closure():
    F = field(2, 3)
    S = oracles.SlowField(2, 3, F.params.modulus)
    with timer() as t:
        vecs = np.array(np.meshgrid(*[np.arange(8)] * 3, indexing="ij")).reshape(3, -1).T[1:]
        agree = sum(
            la.galois_closure(F, v[None, :]).dim == la.rank_fq(F, v) == oracles.rank_fq(S, to_slow(F, v))
            for v in vecs
        )
    ok = agree == len(vecs) == 511 and t.s < 10
    assert report(4, ok, f"{agree}/{len(vecs)} generators agree ({t.s:.2f}s)")


def test_criterion_05_strong_security():
    pair = FIXTURES["example2"]()
    with timer() as t:
        omega = sec.strong_security_order(pair)
        chk = sec.verify_strong_security(pair, omega)
    ok = omega == 1 == pair.n - 1 and chk.holds and chk.witness is not None and t.s < 60
    w = chk.witness
    detail = f"omega={omega}, zero leakage on {chk.checked} (Z, V) checks"
    if w:
        detail += f", witness Z={w['Z']} B={w['B']} I={w['mi']:.3f}"
    assert report(5, ok, detail + f" ({t.s:.2f}s)")


def test_criterion_06_nonuniform_messages():
    pair = FIXTURES["f4-ozarow"]()
    dist = sec.zero_heavy_distribution(pair)
    with timer() as t:
        thr = sec.leakage_threshold(pair, 1)
        spaces = sec.low_observation_subspaces(pair, thr)
        mis = [sec.empirical_mi(pair, [0], V.matrix, dist) for V in spaces]
    ok = all(abs(v) < sec.TOL for v in mis) and len(spaces) > 0 and t.s < 10
    assert report(6, ok, f"threshold={thr}, max I over {len(spaces)} row spaces = {max(mis)} ({t.s:.2f}s)")


def test_criterion_07_error_correction_both_directions():
    pair = FIXTURES["example3"]()
    parts, ok = [], True
    with timer() as t:
        assert nc.correction_capability(pair) == 3
        for t_, rho in ((1, 0), (0, 1), (0, 2)):
            s = nc.decode_sweep(pair, t_, rho, N=3, up_to_row_space=False)
            ok &= s.failures == 0 and s.ambiguous == 0 and s.trials > 0
            parts.append(f"(t={t_},rho={rho}) {s.successes}/{s.trials} ok")
        s = nc.decode_sweep(pair, 1, 1, N=3, up_to_row_space=False)
        ok &= s.first_witness is not None
        parts.append(f"(t=1,rho=1) {s.failures} failures, {s.ambiguous} ambiguous, witness {s.first_witness['result']}")
    ok &= t.s < 600
    assert report(7, ok, "; ".join(parts) + f" ({t.s:.1f}s)")


def test_criterion_08_delta_identity():
    pair = FIXTURES["example3"]()
    M = nc.correction_capability(pair)
    with timer() as t:
        got = {rho: nc.min_delta_over_rank(pair, pair.n - rho, up_to_row_space=False) for rho in (0, 1)}
    ok = all(got[rho] == M - rho for rho in got) and t.s < 300
    assert report(8, ok, f"M_R1={M}, min delta by rho={got} ({t.s:.2f}s)")


def test_criterion_09_normality():
    pair = FIXTURES["example3"]()
    As = [np.eye(3, dtype=np.int64), np.array([[1, 1, 0], [0, 1, 1], [0, 0, 0]])]
    msgs = pair.messages()
    count = 0
    with timer() as t:
        for A in As:
            for a in range(len(msgs)):
                for b in range(len(msgs)):
                    if a == b:
                        continue
                    d = nc.delta_distance(pair, msgs[a], msgs[b], A)
                    for i in range(d + 1):
                        # raises TheoremViolation unless both discrepancies check out
                        nc.normality_witness(pair, msgs[a], msgs[b], A, i)
                        count += 1
    ok = count > 0 and t.s < 60
    assert report(9, ok, f"{count} validated witnesses over 2 transfer matrices ({t.s:.2f}s)")


def _cli(args, cwd):
    r = subprocess.run([sys.executable, "-m", "ranksec", *args], capture_output=True, cwd=cwd)
    return r.returncode, r.stdout


def test_criterion_10_determinism(tmp_path):
    runs = {}
    for k in (0, 1):
        d = tmp_path / f"run{k}"
        d.mkdir()
        for name in FIXTURES:
            assert _cli(["fixtures", name, "--out", name], d)[0] == 0
        (d / "dist.json").write_text('{"probs": ["1/2", "1/6", "1/6", "1/6"]}\n')
        cmds = {
            "fixtures": ["fixtures", "example2"],
            "params": ["params", "--pair", "example1/pair.json", "--oracle"],
            "params-csv": ["params", "--pair", "f4-ozarow/pair.json", "--format", "csv"],
            "security": ["security", "--pair", "example2/pair.json", "--omega", "--oracle"],
            "security-dist": ["security", "--pair", "f4-ozarow/pair.json", "--dist", "dist.json"],
            "encode": ["encode", "--pair", "example1/pair.json", "--message", "[[1,0,1]]", "--seed", "42"],
            "decode": ["decode", "--pair", "example3/pair.json", "--word", "[[1,0,0],[0,1,0],[0,0,1]]"],
            "simulate": ["simulate", "--pair", "example3/pair.json", "--A", "example3/net.json",
                         "--t", "1", "--trials", "50", "--seed", "7"],
            "sweep": ["simulate", "--pair", "example3/pair.json", "--sweep-A", "--t", "1", "--rho", "1",
                      "--seed", "7", "--trials-out"],
        }
        out = {key: _cli(args, d) for key, args in cmds.items()}
        out["files"] = sorted((p.relative_to(d).as_posix(), p.read_bytes()) for p in d.rglob("*.json"))
        runs[k] = out
    bad = [k for k in runs[0] if runs[0][k] != runs[1][k]]
    codes_ok = all(v[0] == 0 for k, v in runs[0].items() if k != "files")
    ok = not bad and codes_ok
    detail = f"{len(runs[0]) - 1} commands plus fixture files byte-identical across runs"
    if bad:
        detail = f"differences in {bad}"
    elif not codes_ok:
        detail = "a command exited nonzero"
    assert report(10, ok, detail)


if __name__ == "__main__":
    import tempfile

    for name, fn in sorted(globals().items()):
        if not name.startswith("test_criterion") or name == "test_criterion_03_true_clauses_hold":
            continue
        try:
            if "tmp_path" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            pass
