"""Text format for extension specs.

    [B]
    rank=3
    [G]
    boolean_rank=1          # or cyclic=m
    [tau]
    e1 = 1                  # boolean G: rows of the matrix, row j = image of q_j
    e2 = -1                 # cyclic G: a unit, normally +1 or -1
    [alpha]
    e1 e2 e3 = 1            # bit-string (char k = coefficient of q_k) or index
    [psi]
    3 5 = 1                 # explicit table cell psi(a, b); at most one of alpha/psi

``#`` starts a comment. Omitted tau entries are the identity, omitted alpha
and psi entries are 0; alpha entries are copied to all orderings.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .errors import InputError
from .extension import AbelianGroup, ExtensionSpec, seed_array

_SECTIONS = ("B", "G", "tau", "alpha", "psi")
_BASIS = re.compile(r"e(\d+)$")


def _basis(tok: str, rank: int, where: str) -> int:
    m = _BASIS.match(tok)
    if not m or not 1 <= int(m.group(1)) <= rank:
        raise InputError(f"{where}: bad basis element {tok!r} (rank {rank})")
    return int(m.group(1)) - 1


def _g_element(tok: str, G: AbelianGroup, where: str) -> int:
    """A G-element written as a bit-string over q_0.. or as an integer index."""
    tok = tok.strip()
    if G.is_boolean and len(tok) == len(G.moduli) and set(tok) <= {"0", "1"} and len(tok) > 1:
        return sum(1 << k for k, c in enumerate(tok) if c == "1")
    try:
        v = int(tok)
    except ValueError:
        raise InputError(f"{where}: bad G-element {tok!r}") from None
    if not 0 <= v < G.order:
        raise InputError(f"{where}: G-element {v} out of range 0..{G.order - 1}")
    return v


def _keyval(line: str, where: str) -> tuple[str, int]:
    if "=" not in line:
        raise InputError(f"{where}: expected key=value")
    k, v = (s.strip() for s in line.split("=", 1))
    try:
        return k, int(v)
    except ValueError:
        raise InputError(f"{where}: {k} needs an integer") from None


def parse_spec(text: str) -> ExtensionSpec:
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in _SECTIONS:
                raise InputError(f"line {lineno}: unknown section [{current}]")
            if current in sections:
                raise InputError(f"line {lineno}: duplicate section [{current}]")
            sections[current] = []
            continue
        if current is None:
            raise InputError(f"line {lineno}: content before the first section")
        sections[current].append((lineno, line))

    for need in ("B", "G"):
        if need not in sections:
            raise InputError(f"missing [{need}] section")
    if "alpha" in sections and "psi" in sections:
        raise InputError("give at most one of [alpha] and [psi]")

    rank = None
    for lineno, line in sections["B"]:
        k, v = _keyval(line, f"line {lineno}")
        if k != "rank" or v < 0:
            raise InputError(f"line {lineno}: expected rank=r with r >= 0")
        rank = v
    if rank is None:
        raise InputError("[B] needs rank=r")

    G = None
    for lineno, line in sections["G"]:
        k, v = _keyval(line, f"line {lineno}")
        if G is not None:
            raise InputError(f"line {lineno}: [G] takes a single line")
        if k == "boolean_rank" and v >= 0:
            G = AbelianGroup.boolean(v)
        elif k == "cyclic" and v >= 1:
            G = AbelianGroup.cyclic(v)
        else:
            raise InputError(f"line {lineno}: expected boolean_rank=s or cyclic=m")
    if G is None:
        raise InputError("[G] needs boolean_rank=s or cyclic=m")

    taus = [np.arange(G.order)] * rank
    seen = set()
    for lineno, line in sections.get("tau", []):
        where = f"line {lineno}"
        if "=" not in line:
            raise InputError(f"{where}: expected e<i> = ...")
        lhs, rhs = (s.strip() for s in line.split("=", 1))
        i = _basis(lhs, rank, where)
        if i in seen:
            raise InputError(f"{where}: tau for {lhs} given twice")
        seen.add(i)
        toks = rhs.split()
        if G.is_boolean and len(G.moduli) and all(set(t) <= {"0", "1"} and len(t) == len(G.moduli) for t in toks) \
                and len(toks) == len(G.moduli):
            rows = [sum(1 << k for k, c in enumerate(t) if c == "1") for t in toks]
            taus[i] = G.matrix_automorphism(rows)
        elif len(G.moduli) == 1 and len(toks) == 1:
            try:
                unit = int(toks[0])
            except ValueError:
                raise InputError(f"{where}: bad unit {toks[0]!r}") from None
            taus[i] = G.unit_automorphism(unit)
        else:
            raise InputError(f"{where}: tau needs {len(G.moduli)} bit-string rows or a unit")

    alpha = None
    if "alpha" in sections:
        entries = {}
        for lineno, line in sections["alpha"]:
            where = f"line {lineno}"
            if "=" not in line:
                raise InputError(f"{where}: expected e<i> e<j> e<k> = value")
            lhs, rhs = (s.strip() for s in line.split("=", 1))
            toks = lhs.split()
            if len(toks) != 3:
                raise InputError(f"{where}: alpha needs three basis elements")
            key = tuple(_basis(t, rank, where) for t in toks)
            val = _g_element(rhs, G, where)
            if key in entries and entries[key] != val:
                raise InputError(f"{where}: conflicting alpha value")
            entries[key] = val
        alpha = seed_array(rank, entries, symmetric=True)

    psi = None
    if "psi" in sections:
        nB = 1 << rank
        psi = np.zeros((nB, nB), dtype=np.int64)
        for lineno, line in sections["psi"]:
            where = f"line {lineno}"
            if "=" not in line:
                raise InputError(f"{where}: expected a b = value")
            lhs, rhs = (s.strip() for s in line.split("=", 1))
            toks = lhs.split()
            try:
                a, b = (int(t) for t in toks)
            except ValueError:
                raise InputError(f"{where}: psi needs two B-element indices") from None
            if not (0 <= a < nB and 0 <= b < nB):
                raise InputError(f"{where}: B-element out of range 0..{nB - 1}")
            psi[a, b] = _g_element(rhs, G, where)

    spec = ExtensionSpec(rank, G, taus, alpha, psi)
    spec.tau  # validates that the basis action extends to B
    return spec


def load_spec(path) -> ExtensionSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_spec(text)


def _format_g(u: int, G: AbelianGroup) -> str:
    if G.is_boolean and len(G.moduli) > 1:
        return "".join(str((u >> k) & 1) for k in range(len(G.moduli)))
    return str(int(u))


def format_spec(spec: ExtensionSpec, header: list[str] | None = None) -> str:
    G = spec.G
    out = [f"# {h}" for h in (header or [])]
    out += ["[B]", f"rank={spec.rank}", "[G]"]
    if G.is_boolean and len(G.moduli) != 1:
        out.append(f"boolean_rank={len(G.moduli)}")
    elif len(G.moduli) == 1:
        out.append(f"cyclic={G.moduli[0]}" if G.moduli[0] != 2 else "boolean_rank=1")
    else:
        raise InputError("only boolean or cyclic coefficient groups have a text form")
    ident = np.arange(G.order)
    lines = []
    for i, t in enumerate(spec.basis_tau):
        t = np.asarray(t)
        if (t == ident).all():
            continue
        if G.is_boolean and len(G.moduli) > 1:
            rows = [int(t[1 << j]) for j in range(len(G.moduli))]
            lines.append(f"e{i + 1} = " + " ".join(_format_g(r, G) for r in rows))
        else:
            m = G.moduli[0]
            unit = int(t[1]) if m > 1 else 1
            lines.append(f"e{i + 1} = {unit - m if unit > m // 2 else unit:+d}")
    if lines:
        out += ["[tau]"] + lines
    if spec.alpha is not None:
        r = spec.rank
        a = np.asarray(spec.alpha)
        if any((a != a.transpose(p)).any() for p in ((1, 0, 2), (0, 2, 1))):
            raise InputError("only symmetric alpha seeds have a text form")
        out.append("[alpha]")
        for i in range(r):
            for j in range(i, r):
                for k in range(j, r):
                    v = int(spec.alpha[i, j, k])
                    if v:
                        out.append(f"e{i + 1} e{j + 1} e{k + 1} = {_format_g(v, G)}")
    elif spec.psi is not None:
        out.append("[psi]")
        psi = np.asarray(spec.psi)
        for a, b in zip(*np.nonzero(psi)):
            out.append(f"{a} {b} = {_format_g(int(psi[a, b]), G)}")
    return "\n".join(out) + "\n"
