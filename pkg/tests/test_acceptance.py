"""Acceptance criteria 1-9.

Each test prints one ``criterion N: PASS|FAIL ...`` line (visible under
``pytest -v``) and then asserts. Run the module directly to get the nine
lines without pytest.
"""

from __future__ import annotations

import sys
import time
from functools import lru_cache

import numpy as np
import pytest

from extraloop import (associator_subloop, center, hall_subloops, is_solvable, nucleus,
                       nucleus_realization, sylow_rmlt_correspondence, sylow_subloops)
from extraloop.catalog import catalog, census48_entries, example512_entry
from extraloop.cli import run
from extraloop.extension import alternating_group
from extraloop.loop import check_identities, cyclic, is_extra
from extraloop.properties import run_suite
from extraloop.structure import direct_product, enumerate_subloops, quotient
from extraloop.sylow import prime_factors

PROPERTY_TAGS = (
    "square", "assoc", "mlt", "t", "a-star", "assoc-conj", "assoc-commutes", "assoc-nuc",
    "assoc-index", "extension-loop", "assocpsi", "right-assoc", "inherit", "issemi",
    "p-loop", "sylow-b", "eqns",
)
SAMPLES = 100_000


@pytest.fixture
def say(capsys):
    def emit(line: str) -> None:
        with capsys.disabled():
            print("\n" + line)
    return emit


def _verdict(say, n: int, ok: bool, detail: str) -> None:
    say(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def _cli(*argv):
    t0 = time.perf_counter()
    status, text = run(list(argv))
    return status, text, time.perf_counter() - t0


def _class_count(text: str) -> int:
    last = [ln for ln in text.splitlines() if ln.strip().endswith("classes")][-1]
    return int(last.split()[0])


@lru_cache(maxsize=None)
def _catalog_results():
    t0 = time.perf_counter()
    out = [(e, run_suite(e.loop, e, seed=0, samples=SAMPLES)) for e in catalog(large=True)]
    return out, time.perf_counter() - t0


def test_census16(say):
    status, text, dt = _cli("census16")
    count = _class_count(text)
    ok = status == 0 and count == 5 and dt < 120
    _verdict(say, 1, ok, f"census16 classes={count} ({dt:.1f}s)")


@pytest.mark.slow
def test_census16p(say):
    found, times = {}, {}
    for p, limit in ((3, 300), (5, 900), (7, 900)):
        status, text, dt = _cli("census16p", "-p", str(p))
        found[p] = _class_count(text) if status == 0 else None
        times[p] = dt
        if dt > limit:
            found[p] = f"{found[p]} (over {limit}s)"
    ok = all(v == 16 for v in found.values())
    detail = ", ".join(f"p={p}: {found[p]} ({times[p]:.1f}s)" for p in found)
    _verdict(say, 2, ok, detail)


def test_example512(say):
    t0 = time.perf_counter()
    L = example512_entry().loop
    Z, A, N = center(L), associator_subloop(L), nucleus(L)
    QZ = quotient(L, Z)
    qz_assoc = check_identities(QZ).associative
    dt = time.perf_counter() - t0
    ok = (L.n == 512 and Z.order == 2 and A.order == N.order == 32 and A.elements == N.elements
          and L.n // N.order == 16 and not qz_assoc and dt < 60)
    _verdict(say, 3, ok, f"n={L.n} |Z|={Z.order} |A|={A.order} |N|={N.order} "
                         f"|Q:N|={L.n // N.order} Q/Z associative={qz_assoc} ({dt:.1f}s)")


def test_sharpness(say):
    L = example512_entry().loop
    Z, A, N = center(L), associator_subloop(L), nucleus(L)
    outside = sorted(set(A.elements) - set(Z.elements))
    # an explicit associator landing outside Z
    rng = np.random.default_rng(0)
    x, y, z = rng.integers(0, L.n, size=(3, 20_000))
    t = L.table
    vals = L.ld[t[x, t[y, z]], t[t[x, y], z]]
    seen_outside = bool(np.isin(vals, outside).any())
    ok = bool(outside) and seen_outside and A.order == 32 and L.n // N.order == 16
    _verdict(say, 4, ok, f"associators outside Z: {len(outside)} of |A|={A.order}, "
                         f"|Q:N|={L.n // N.order}")


def test_nonsolvable_960(say):
    t0 = time.perf_counter()
    G = direct_product(cyclic(2), alternating_group(5))
    Q = nucleus_realization(G)
    ids = check_identities(Q)
    solv = is_solvable(Q)
    dt = time.perf_counter() - t0
    ok = Q.n == 960 and not ids.associative and ids.extra and not solv.solvable and dt < 180
    _verdict(say, 5, ok, f"n={Q.n} associative={ids.associative} extra={ids.extra} "
                         f"solvable={solv.solvable} ({dt:.1f}s)")


def test_sylow_order48(say):
    t0 = time.perf_counter()
    bad = []
    entries = census48_entries()
    for e in entries:
        L = e.loop
        fam = sylow_subloops(L, 2, exhaustive=True)
        r = fam.report
        twos = enumerate_subloops(L, allowed=lambda k: k & (k - 1) == 0)
        extends = all(any(set(s.elements) <= set(m.elements) for m in fam.members) for s in twos)
        if not (fam.count % 2 == 1 and 3 % fam.count == 0 and extends and r["extends"]
                and r["transitive"]):
            bad.append(e.name)
    dt = time.perf_counter() - t0
    ok = len(entries) == 16 and not bad and dt < 300
    _verdict(say, 6, ok, f"{len(entries)} loops, failures={bad} ({dt:.1f}s)")


def test_rmlt_correspondence(say):
    rows, bad = [], []
    for e in census48_entries():
        for p in (2, 3):
            c = sylow_rmlt_correspondence(e.loop, p)
            rows.append(c)
            if not c.ok:
                bad.append((e.name, p))
    loops = len(rows) // 2
    ok = loops >= 3 and not bad
    _verdict(say, 7, ok, f"{loops} loops x p in (2, 3), mismatches={bad}")


@pytest.mark.slow
def test_property_catalog(say):
    results, dt = _catalog_results()
    failures, coverage, thin = [], {t: 0 for t in PROPERTY_TAGS}, []
    for e, rs in results:
        for r in rs:
            if r.status == "fail":
                failures.append(f"{e.name}:{r.tag}")
            if r.tag not in coverage or r.status != "pass":
                continue
            coverage[r.tag] += 1
            if e.loop.n <= 48 and r.mode != "exhaustive":
                thin.append(f"{e.name}:{r.tag} mode={r.mode}")
            if e.loop.n >= 256 and r.mode == "sampled" and r.tuples < SAMPLES:
                thin.append(f"{e.name}:{r.tag} tuples={r.tuples}")
    uncovered = [t for t, k in coverage.items() if k == 0]
    ok = not failures and not uncovered and not thin and dt < 1800
    _verdict(say, 8, ok, f"{len(results)} loops, failures={failures}, uncovered={uncovered}, "
                         f"undersampled={thin} ({dt:.1f}s)")


@pytest.mark.slow
def test_center_burnside_hall(say):
    results, _ = _catalog_results()
    problems = []
    for e, rs in results:
        L = e.loop
        by_tag = {r.tag: r for r in rs}
        nonassoc = not check_identities(L).associative
        extra = is_extra(L)
        if extra and nonassoc:
            Z, A = center(L), associator_subloop(L)
            if len(set(Z.elements) & set(A.elements)) < 2:
                problems.append(f"{e.name}: |Z n A| < 2")
        if len(prime_factors(L.n)) <= 2 and not is_solvable(L).solvable:
            problems.append(f"{e.name}: order {L.n} not solvable")
        if not extra or not is_solvable(L).solvable:
            continue
        if by_tag["hall"].status != "pass":
            problems.append(f"{e.name}: hall {by_tag['hall'].status}")
        primes = sorted(prime_factors(L.n))
        for mask in range(1 << len(primes)):
            pi = [p for i, p in enumerate(primes) if mask >> i & 1]
            fam = hall_subloops(L, pi, exhaustive=L.n <= 48)
            if not fam.report["transitive"]:
                problems.append(f"{e.name}: Hall {pi} not T_x-conjugate")
    _verdict(say, 9, not problems, f"{len(results)} loops, problems={problems}")


if __name__ == "__main__":
    def _print(line):
        print(line.strip())

    tests = [test_census16, test_census16p, test_example512, test_sharpness, test_nonsolvable_960,
             test_sylow_order48, test_rmlt_correspondence, test_property_catalog,
             test_center_burnside_hall]
    failed = 0
    for fn in tests:
        try:
            fn(_print)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
