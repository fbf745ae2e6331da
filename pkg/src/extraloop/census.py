"""Isomorphism censuses: extra loops of order 16 and of order 16p."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import AssertionFailure, ConsistencyError, InputError, ResourceCapError
from .extension import (AbelianGroup, _extend_trilinear, _is_alternating, _is_symmetric, build_psi,
                        cayley_loop, canonical16, derived_associator, extension_loop, seed_array,
                        semidirect, sign_action, trivial_action)
from .iso import _search, automorphisms, element_invariants, find_isomorphism, fingerprint
from .loop import FiniteLoop, check_identities, cyclic, is_extra
from .structure import (Subloop, associator_subloop, commutator_value_mask, direct_product,
                        enumerate_subloops, image, is_normal, normal_closure, nucleus, quotient_map)
from .sylow import is_prime
from .tableio import format_table

P_CAP = 13


def gf2_nullspace(rows: list[int], nvars: int) -> list[int]:
    """Basis of {x : popcount(r & x) even for every row r}, as bitmasks."""
    pivots: dict[int, int] = {}
    for r in rows:
        for col, prow in pivots.items():
            if (r >> col) & 1:
                r ^= prow
        if r == 0:
            continue
        col = (r & -r).bit_length() - 1
        for c, prow in list(pivots.items()):
            if (prow >> col) & 1:
                pivots[c] = prow ^ r
        pivots[col] = r
    basis = []
    for free in range(nvars):
        if free in pivots:
            continue
        x = 1 << free
        for col, prow in pivots.items():
            if (prow >> free) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def gf2_span(basis: list[int]) -> list[int]:
    out = [0]
    for b in basis:
        out += [v ^ b for v in out]
    return out


def symmetric_alternating_forms(rank: int = 3) -> list[np.ndarray]:
    """All symmetric trilinear Z2-valued forms on Z2^rank that vanish on
    repeated arguments, found from every symmetric basis seed."""
    G = AbelianGroup.boolean(1)
    tau = trivial_action(rank, G)
    cells = [c for c in product(range(rank), repeat=3) if c[0] <= c[1] <= c[2]]
    found = []
    for bits in range(1 << len(cells)):
        seed = seed_array(rank, {c: (bits >> i) & 1 for i, c in enumerate(cells)})
        full = _extend_trilinear(rank, G, tau, seed)
        if _is_symmetric(full) and _is_alternating(full):
            found.append(full)
    return found


def cocycle_basis(rank: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Solutions of psi(a+b,c) + psi(a,b) + psi(a,b+c) + psi(b,c) = 0 over
    Z2 with psi zero on 0; returns (cells, nullspace basis over the cells)."""
    nB = 1 << rank
    cells = [(a, b) for a in range(1, nB) for b in range(1, nB)]
    pos = {c: i for i, c in enumerate(cells)}
    rows = []
    for a, b, c in product(range(nB), repeat=3):
        r = 0
        for cell in ((a ^ b, c), (a, b), (a, b ^ c), (b, c)):
            if cell in pos:
                r ^= 1 << pos[cell]
        if r:
            rows.append(r)
    return cells, gf2_nullspace(rows, len(cells))


@dataclass
class IsoClass:
    representative: FiniteLoop
    fingerprint: object
    members: list[int] = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    label: str = ""

    @property
    def count(self) -> int:
        return len(self.members)


@dataclass
class Classification:
    classes: list[IsoClass]
    comparisons: int = 0
    separated: int = 0
    backtracks: int = 0
    failed_backtracks: int = 0

    @property
    def separation_rate(self) -> float:
        """Share of comparisons between non-isomorphic loops decided by fingerprints alone."""
        distinct = self.separated + self.failed_backtracks
        return self.separated / distinct if distinct else 1.0


def classify(loops: list[FiniteLoop], certify: bool = True) -> Classification:
    """Partition loops into isomorphism classes.

    Candidates are compared with class representatives only when their
    fingerprints agree; with ``certify`` every pair of representatives that
    share a fingerprint is re-checked to be non-isomorphic.
    """
    invs = [element_invariants(L) for L in loops]
    fps = [fingerprint(L, inv) for L, inv in zip(loops, invs)]
    reps: list[int] = []
    classes: list[IsoClass] = []
    out = Classification(classes)
    for i, L in enumerate(loops):
        hit = None
        for k, r in enumerate(reps):
            out.comparisons += 1
            if fps[r] != fps[i]:
                out.separated += 1
                continue
            out.backtracks += 1
            if _search(L, loops[r], invs[i], invs[r], find_all=False):
                hit = k
                break
            out.failed_backtracks += 1
        if hit is None:
            reps.append(i)
            classes.append(IsoClass(L, fps[i], [i]))
        else:
            classes[hit].members.append(i)
    if certify:
        for a in range(len(reps)):
            for b in range(a + 1, len(reps)):
                ra, rb = reps[a], reps[b]
                if fps[ra] == fps[rb] and _search(loops[ra], loops[rb], invs[ra], invs[rb], find_all=False):
                    raise ConsistencyError("two class representatives are isomorphic")
    for c in classes:
        c.flags = check_identities(c.representative).flags()
    order = sorted(range(len(classes)),
                   key=lambda k: (repr(classes[k].fingerprint), classes[k].representative.table.tobytes()))
    out.classes = [classes[k] for k in order]
    return out


@dataclass
class Census16:
    classes: list[IsoClass]
    associative_classes: list[IsoClass]
    candidates: int
    forms: int
    cocycle_dim: int
    classification: Classification
    psis: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


def census_order16() -> Census16:
    """All extra loops of order 16, as central extensions of Z2 by Z2^3."""
    rank, G = 3, AbelianGroup.boolean(1)
    tau = trivial_action(rank, G)
    forms = symmetric_alternating_forms(rank)
    nonzero = [f for f in forms if f.any()]
    if len(nonzero) != 1:
        raise AssertionFailure(f"expected one nonzero symmetric alternating form, found {len(nonzero)}")
    seed = seed_array(rank, {(0, 1, 2): 1})
    if not (_extend_trilinear(rank, G, tau, seed) == nonzero[0]).all():
        raise AssertionFailure("the canonical seed does not extend to the unique form")
    psi0 = build_psi(rank, G, tau, seed)
    target = derived_associator(rank, G, tau, psi0)
    cells, basis = cocycle_basis(rank)
    loops, psis = [], []
    for z in gf2_span(basis):
        psi = psi0.copy()
        for i, (a, b) in enumerate(cells):
            if (z >> i) & 1:
                psi[a, b] ^= 1
        if not (derived_associator(rank, G, tau, psi) == target).all():
            raise ConsistencyError("cocycle shift changed the derived associator")
        L = extension_loop(rank, G, tau, psi, verify=False)
        if not is_extra(L):
            raise AssertionFailure("a cocycle twist is not an extra loop")
        loops.append(L)
        psis.append(psi)
    result = classify(loops)
    nonassoc = [c for c in result.classes if not c.flags["associative"]]
    assoc = [c for c in result.classes if c.flags["associative"]]
    _label16(nonassoc)
    return Census16(nonassoc, assoc, len(loops), len(forms), len(basis), result, psis)


def _label16(classes: list[IsoClass]) -> None:
    C = cayley_loop(verify=False)
    K = canonical16()
    for i, c in enumerate(classes):
        c.label = f"16.{i + 1}"
        if find_isomorphism(c.representative, C) is not None:
            c.label += " cayley"
        if find_isomorphism(c.representative, K) is not None:
            c.label += " canonical"


# --- order 16p -----------------------------------------------------------------


def sign_kernels(B: FiniteLoop, cross_check: bool = True) -> list[Subloop]:
    """Kernels of homomorphisms B -> {1,-1}: B itself and the index-2 normal
    subloops containing all squares."""
    t = B.table
    seeds = set(np.diag(t).tolist()) | set(np.flatnonzero(commutator_value_mask(B)).tolist())
    F = normal_closure(B, sorted(seeds | set(associator_subloop(B).elements)))
    labels = quotient_map(B, F)
    k = int(labels.max()) + 1
    rank = k.bit_length() - 1
    if 1 << rank != k:
        raise ConsistencyError("B / <squares> is not boolean")
    # cosets of F numbered by minimum; recover a boolean coordinate system
    from .structure import quotient
    Qb = quotient(B, F, check=False)
    gens = []
    span = {0}
    for x in range(k):
        if x not in span:
            gens.append(x)
            span |= {int(Qb.table[s, x]) for s in span}
    coords = {0: 0}
    for i, g in enumerate(gens):
        for s, c in list(coords.items()):
            coords[int(Qb.table[s, g])] = c ^ (1 << i)
    kernels = [Subloop(B, tuple(range(B.n)))]
    for chi in range(1, 1 << rank):
        keep = [x for x in range(B.n) if bin(coords[int(labels[x])] & chi).count("1") % 2 == 0]
        kernels.append(Subloop(B, tuple(keep)))
    if cross_check:
        squares = set(np.diag(t).tolist())
        subs = enumerate_subloops(B, allowed=lambda m: (B.n // 2) % m == 0)
        alt = {s.elements for s in subs
               if s.order == B.n // 2 and squares <= set(s.elements) and is_normal(B, s)}
        if alt != {K.elements for K in kernels[1:]}:
            raise ConsistencyError("sign-character kernels disagree with subloop enumeration")
    return kernels


def check_kernel(B: FiniteLoop, K) -> Subloop:
    K = K if isinstance(K, Subloop) else Subloop(B, tuple(sorted(int(v) for v in K)))
    if K.order == B.n:
        return K
    if 2 * K.order != B.n or not is_normal(B, K):
        raise InputError("kernel must be B or a normal subloop of index 2")
    if not set(np.diag(B.table).tolist()) <= set(K.elements):
        raise InputError("kernel misses a square; not a homomorphism to {1,-1}")
    return K


def tau_equivalent_kernels(B: FiniteLoop, K1, K2, auts=None) -> bool:
    auts = automorphisms(B) if auts is None else auts
    target = K1.elements
    return any(image(B, K2, phi).elements == target for phi in auts)


def tau_equivalence(B: FiniteLoop, ker_tau, ker_sigma, p: int = 3, check: bool = True, auts=None) -> bool:
    """Whether sign actions with the given kernels differ by an automorphism
    of B; with ``check`` the answer is compared with an isomorphism test on
    the semidirect products B x Z_p."""
    K1, K2 = check_kernel(B, ker_tau), check_kernel(B, ker_sigma)
    equiv = tau_equivalent_kernels(B, K1, K2, auts)
    if check:
        Zp = cyclic(p)
        L1 = semidirect(B, Zp, sign_action(B, K1.elements, p), require_extra=False)
        L2 = semidirect(B, Zp, sign_action(B, K2.elements, p), require_extra=False)
        if (find_isomorphism(L1, L2) is not None) != equiv:
            raise ConsistencyError("tau equivalence disagrees with isomorphism of the extensions")
    return equiv


def kernel_orbits(B: FiniteLoop, kernels: list[Subloop], auts=None) -> list[list[int]]:
    auts = automorphisms(B) if auts is None else auts
    orbits: list[list[int]] = []
    for i, K in enumerate(kernels):
        for orb in orbits:
            if tau_equivalent_kernels(B, kernels[orb[0]], K, auts):
                orb.append(i)
                break
        else:
            orbits.append([i])
    return orbits


@dataclass
class Census16p:
    p: int
    classes: list[IsoClass]
    members: list[tuple[int, tuple]]
    tau_orbits: int
    classification: Classification

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


def census_16p(p: int, base: Census16 | None = None, cap: int | None = None,
               decompose: bool = True) -> Census16p:
    """Extra loops B x_tau Z_p for the five order-16 B and all sign actions."""
    if not is_prime(p) or p == 2:
        raise InputError("p must be an odd prime")
    cap = int(os.environ.get("EXTRALOOP_PCAP", P_CAP)) if cap is None else cap
    if p > cap:
        raise ResourceCapError(f"p = {p} exceeds the configured cap {cap}", 0)
    base = census_order16() if base is None else base
    Zp = cyclic(p)
    N_expect = direct_product(cyclic(2), Zp)
    loops, members = [], []
    orbit_total = 0
    for bi, cls in enumerate(base.classes):
        B = cls.representative
        kernels = sign_kernels(B)
        auts = automorphisms(B)
        orbit_total += len(kernel_orbits(B, kernels, auts))
        for K in kernels:
            L = semidirect(B, Zp, sign_action(B, K.elements, p))
            N = nucleus(L)
            if find_isomorphism(N.as_loop(), N_expect) is None:
                raise AssertionFailure("nucleus is not Z2 x Zp")
            loops.append(L)
            members.append((bi, K.elements))
    result = classify(loops)
    if orbit_total != len(result.classes):
        raise ConsistencyError("tau-orbit count disagrees with the isomorphism classification")
    if decompose:
        from .extension import issemi_decompose

        for c in result.classes:
            if issemi_decompose(c.representative) is None:
                raise AssertionFailure("nucleus of an order-16p loop is not abelian")
    for i, c in enumerate(result.classes):
        bi, K = members[c.members[0]]
        c.label = f"{16 * p}.{i + 1} B=16.{bi + 1} ker={len(K)}"
    return Census16p(p, result.classes, members, orbit_total, result)


def write_manifest(classes: list[IsoClass], outdir: str, prefix: str) -> str:
    """Write representative tables and a manifest; returns the manifest path."""
    os.makedirs(outdir, exist_ok=True)
    lines = ["# class_id fingerprint table"]
    for i, c in enumerate(classes, 1):
        fname = f"{prefix}_{i:02d}.tbl"
        with open(os.path.join(outdir, fname), "w") as fh:
            fh.write(format_table(c.representative, header=[f"class {prefix}.{i} members={c.count}"]))
        fp = c.fingerprint.as_dict()
        desc = ";".join(f"{k}={v}".replace(" ", "") for k, v in fp.items())
        lines.append(f"{prefix}.{i} {desc} {fname}")
    path = os.path.join(outdir, "manifest.txt")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
