"""Command-line front end.

Exit status: 0 when every check passes, 1 when a mathematical assertion
fails, 2 on bad input, 3 when an enumeration cap is hit.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import AssertionFailure, ExtraLoopError, InputError, ResourceCapError

EXIT_OK, EXIT_ASSERT, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class Report:
    """Ordered key/value lines rendered as ``key: value`` or ``key=value``."""

    def __init__(self, fmt: str = "text"):
        self.fmt = fmt
        self.lines: list[str] = []

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        sep = "=" if self.fmt == "kv" else ": "
        self.lines.append(f"{key}{sep}{value}")

    def raw(self, line: str) -> None:
        self.lines.append(line)

    def text(self) -> str:
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _load(path: str):
    from .catalog import named
    from .tableio import load_table

    if path.startswith("@"):
        try:
            return named(path[1:])
        except KeyError:
            raise InputError(f"unknown fixture {path[1:]!r}") from None
    return load_table(path)


def _profile(L) -> str:
    return " ".join(f"{o}:{c}" for o, c in L.order_profile())


def cmd_check(args, rep: Report) -> int:
    from .loop import check_identities

    L = _load(args.table)
    rep.add("order", L.n)
    for k, v in check_identities(L).flags().items():
        rep.add(k, v)
    return EXIT_OK


def cmd_analyze(args, rep: Report) -> int:
    from .loop import check_identities
    from .structure import associator_subloop, center, nucleus, quotient
    from .sylow import is_solvable

    L = _load(args.table)
    ids = check_identities(L)
    N = nucleus(L)
    Z = center(L, N)
    A = associator_subloop(L)
    rep.add("order", L.n)
    rep.add("extra", ids.extra1)
    rep.add("associative", ids.associative)
    rep.add("nucleus", N.order)
    rep.add("center", Z.order)
    rep.add("associator_subloop", A.order)
    rep.add("index_nucleus", L.n // N.order)
    rep.add("A_in_Z", set(A.elements) <= set(Z.elements))
    if ids.extra1:
        rep.add("quotient_by_center_associative", check_identities(quotient(L, Z)).associative)
    s = is_solvable(L)
    rep.add("solvable", s.solvable)
    rep.add("derived_series", s.orders)
    rep.add("order_profile", _profile(L))
    return EXIT_OK


def cmd_build(args, rep: Report) -> int:
    from .specfile import load_spec
    from .tableio import format_table

    spec = load_spec(args.spec)
    L = spec.build(verify=not args.no_verify, name=Path(args.spec).stem)
    text = format_table(L, header=[f"built from {Path(args.spec).name}"])
    if args.output:
        Path(args.output).write_text(text)
        rep.add("order", L.n)
        rep.add("written", args.output)
    else:
        rep.raw(text.rstrip("\n"))
    return EXIT_OK


def _members(rep: Report, fam) -> None:
    for i, m in enumerate(fam.members, 1):
        rep.raw(f"member {i}: order {m.order}: " + " ".join(str(x) for x in m.elements))


def cmd_sylow(args, rep: Report) -> int:
    from .sylow import sylow_subloops

    L = _load(args.table)
    fam = sylow_subloops(L, args.p, verify=not args.no_verify)
    _members(rep, fam)
    r = fam.report
    rep.raw(f"count={fam.count}, mod_p={fam.count % args.p}, divides_r={str(r.get('divides_r', '?')).lower()}")
    return EXIT_OK


def _parse_pi(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"bad prime list {text!r}") from None


def cmd_hall(args, rep: Report) -> int:
    from .sylow import hall_subloops

    L = _load(args.table)
    fam = hall_subloops(L, _parse_pi(args.pi), verify=not args.no_verify)
    _members(rep, fam)
    rep.add("count", fam.count)
    rep.add("order", fam.order)
    return EXIT_OK


def cmd_iso(args, rep: Report) -> int:
    from .iso import find_isomorphism

    L1, L2 = _load(args.first), _load(args.second)
    phi = find_isomorphism(L1, L2)
    rep.add("isomorphic", phi is not None)
    if phi is not None:
        rep.add("map", [int(v) for v in phi])
    return EXIT_OK


def _class_lines(rep: Report, classes) -> None:
    for i, c in enumerate(classes, 1):
        fp = c.fingerprint
        rep.raw(f"class {c.label or i}: members={c.count} nucleus={fp.nucleus} center={fp.center} "
                f"associator={fp.associator} profile={' '.join(f'{o}:{k}' for o, k in fp.order_profile)}")


def cmd_census16(args, rep: Report) -> int:
    from .census import census_order16, write_manifest

    c = census_order16()
    _class_lines(rep, c.classes)
    rep.add("candidates", c.candidates)
    rep.add("cocycle_dimension", c.cocycle_dim)
    rep.add("associative_classes", len(c.associative_classes))
    rep.add("separation_rate", f"{c.classification.separation_rate:.3f}")
    if args.outdir:
        rep.add("manifest", write_manifest(c.classes, args.outdir, "16"))
    rep.raw(f"{len(c.classes)} classes")
    return EXIT_OK if len(c.classes) == 5 else EXIT_ASSERT


def cmd_census16p(args, rep: Report) -> int:
    from .census import census_16p, write_manifest

    c = census_16p(args.p, cap=args.pcap)
    _class_lines(rep, c.classes)
    rep.add("loops", len(c.members))
    rep.add("tau_orbits", c.tau_orbits)
    rep.add("separation_rate", f"{c.classification.separation_rate:.3f}")
    if args.outdir:
        rep.add("manifest", write_manifest(c.classes, args.outdir, str(16 * args.p)))
    rep.raw(f"{len(c.classes)} classes")
    return EXIT_OK if len(c.classes) == 16 else EXIT_ASSERT


def cmd_rmlt(args, rep: Report) -> int:
    from .loop import is_extra
    from .multgroups import a_star, inner_mapping_group, rmlt
    from .sylow import prime_factors, sylow_rmlt_correspondence

    L = _load(args.table)
    G = rmlt(L)
    inner = inner_mapping_group(L, "right", mult=G)
    rep.add("rmlt_order", G.order)
    rep.add("inner_order", inner.order)
    rep.add("inner_boolean", inner.is_boolean())
    if is_extra(L):
        rep.add("a_star_order", a_star(L, mult=G, inner=inner).order)
        primes = [args.p] if args.p else sorted(prime_factors(L.n))
        status = EXIT_OK
        for p in primes:
            c = sylow_rmlt_correspondence(L, p, mult=G)
            rep.raw(f"p={p}: loop_count={c.loop_count}, group_count={c.group_count}, "
                    f"sylow_order={c.sylow_order}, bijection={str(c.ok).lower()}")
            if not c.ok:
                status = EXIT_ASSERT
        return status
    return EXIT_OK


def _suite_one(job):
    from .properties import run_suite

    name, loop, entry, seed, samples, tags = job
    return name, loop.n, run_suite(loop, entry=entry, tags=tags, seed=seed, samples=samples)


def cmd_suite(args, rep: Report) -> int:
    from .catalog import catalog

    tags = args.tags.split(",") if args.tags else None
    if args.target == "catalog":
        jobs = [(e.name, e.loop, e, args.seed, args.samples, tags) for e in catalog(large=not args.small)]
    else:
        L = _load(args.target)
        jobs = [(L.name or args.target, L, None, args.seed, args.samples, tags)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_suite_one, jobs))
    else:
        results = [_suite_one(j) for j in jobs]
    failed = 0
    for name, n, res in results:
        for r in res:
            if r.status == "fail":
                failed += 1
            line = f"{name} n={n} {r.tag} {r.status.upper()} tuples={r.tuples} mode={r.mode}"
            rep.raw(line + (f" ({r.detail})" if r.detail else ""))
    rep.add("failures", failed)
    return EXIT_ASSERT if failed else EXIT_OK


def cmd_examples(args, rep: Report) -> int:
    from .catalog import canonical16, cayley_loop, example512_entry, loop960_entry
    from .extension import canonical16_spec, example512_spec
    from .specfile import format_spec
    from .tableio import save_table

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    fixtures = {
        "cayley": (cayley_loop(), "Cayley loop of the octonion units"),
        "canonical16": (canonical16(), "central extension of Z2 by Z2^3, alpha(e1,e2,e3) = 1"),
        "example512": (example512_entry().loop, "order 512, associators outside the center"),
        "loop960": (loop960_entry().loop, "nonsolvable, nucleus Z2 x A5"),
    }
    for name, (L, note) in fixtures.items():
        path = out / f"{name}.tbl"
        save_table(L, path, header=[name, note])
        rep.add(name, str(path))
    for name, spec in (("canonical16", canonical16_spec()), ("example512", example512_spec())):
        path = out / f"{name}.spec"
        path.write_text(format_spec(spec, header=[name]))
        rep.add(f"{name}_spec", str(path))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extraloop", description="Finite extra loops: structure, Sylow theory, censuses.")
    p.add_argument("--format", choices=("text", "kv"), default="text", help="report style")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batch work")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap (overrides EXTRALOOP_CAP)")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def table_cmd(name, func, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("table", help="table file, or @name for a built-in fixture")
        s.set_defaults(func=func)
        return s

    table_cmd("check", cmd_check, "identity report")
    table_cmd("analyze", cmd_analyze, "nucleus, center, associator subloop, solvability")
    s = sub.add_parser("build", help="build an extension spec into a table")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.add_argument("--no-verify", action="store_true")
    s.set_defaults(func=cmd_build)
    s = table_cmd("sylow", cmd_sylow, "Sylow p-subloops")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--no-verify", action="store_true")
    s = table_cmd("hall", cmd_hall, "Hall pi-subloops")
    s.add_argument("--pi", required=True, help="comma-separated primes")
    s.add_argument("--no-verify", action="store_true")
    s = sub.add_parser("iso", help="isomorphism test")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_iso)
    s = sub.add_parser("census16", help="extra loops of order 16")
    s.add_argument("--outdir")
    s.set_defaults(func=cmd_census16)
    s = sub.add_parser("census16p", help="extra loops of order 16p")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--pcap", type=int, default=None, help="largest p accepted (default EXTRALOOP_PCAP or 13)")
    s.add_argument("--outdir")
    s.set_defaults(func=cmd_census16p)
    s = table_cmd("rmlt", cmd_rmlt, "right multiplication group and Sylow correspondence")
    s.add_argument("-p", type=int, default=None)
    s = sub.add_parser("suite", help="structural property suite")
    s.add_argument("target", help="table file, @fixture, or 'catalog'")
    s.add_argument("--tags", help="comma-separated subset of tags")
    s.add_argument("--samples", type=int, default=100_000)
    s.add_argument("--small", action="store_true", help="skip the order-512 and order-960 loops")
    s.set_defaults(func=cmd_suite)
    s = sub.add_parser("examples", help="write the fixture tables and specs")
    s.add_argument("--outdir", default="fixtures")
    s.set_defaults(func=cmd_examples)
    return p


def run(argv=None) -> tuple[int, str]:
    """Run one command; returns (exit status, report text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_INPUT), ""
    saved = os.environ.get("EXTRALOOP_CAP")
    if args.cap is not None:
        # workers inherit the environment, so the cap travels with --jobs
        os.environ["EXTRALOOP_CAP"] = str(args.cap)
    try:
        return _dispatch(args)
    finally:
        if saved is None:
            os.environ.pop("EXTRALOOP_CAP", None)
        else:
            os.environ["EXTRALOOP_CAP"] = saved


def _dispatch(args) -> tuple[int, str]:
    rep = Report(args.format)
    try:
        status = args.func(args, rep)
    except ResourceCapError as exc:
        rep.add("error", f"resource cap: {exc}")
        return EXIT_CAP, rep.text()
    except InputError as exc:
        rep.add("error", f"input: {exc}")
        return EXIT_INPUT, rep.text()
    except AssertionFailure as exc:
        rep.add("error", f"assertion failed: {exc}")
        return EXIT_ASSERT, rep.text()
    except ExtraLoopError as exc:
        rep.add("error", str(exc))
        return EXIT_ASSERT, rep.text()
    return status, rep.text()


def main(argv=None) -> int:
    status, text = run(argv)
    if text:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
