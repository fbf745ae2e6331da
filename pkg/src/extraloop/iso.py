"""Isomorphism and automorphism search by backtracking over generator images."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ResourceCapError
from .loop import FiniteLoop
from .structure import associator_subloop, commutant_mask, nucleus

AUT_SIZE_GUARD = 64


def element_invariants(L: FiniteLoop) -> list[tuple]:
    """Per-element isomorphism invariants used to prune candidate images."""
    t = L.table
    nuc = kernels.nucleus_mask(t)
    comm = (t == t.T)
    central = nuc & comm.all(axis=1)
    orders = [L.element_order(x) or 0 for x in range(L.n)]
    sq = np.diag(t)
    roots = np.bincount(sq, minlength=L.n)
    out = []
    for x in range(L.n):
        out.append((orders[x], bool(nuc[x]), bool(central[x]), int(comm[x].sum()),
                    int(roots[x]), orders[int(sq[x])]))
    return out


@dataclass(frozen=True)
class Fingerprint:
    n: int
    order_profile: tuple
    nucleus: int
    center: int
    associator: int
    associative: bool
    commutative: bool
    element_classes: tuple
    pair_subloops: tuple | None = None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "order_profile": self.order_profile,
            "nucleus": self.nucleus,
            "center": self.center,
            "associator": self.associator,
            "associative": self.associative,
            "commutative": self.commutative,
        }


PAIR_SUBLOOP_LIMIT = 64


def pair_subloop_profile(L: FiniteLoop) -> tuple:
    """Sorted (order, count) over the subloops <x, y> for all pairs x < y."""
    counts: dict[int, int] = {}
    empty = np.zeros(L.n, dtype=bool)
    for x in range(1, L.n):
        for y in range(x + 1, L.n):
            k = int(kernels.closure(L.table, empty, [x, y]).sum())
            counts[k] = counts.get(k, 0) + 1
    return tuple(sorted(counts.items()))


def fingerprint(L: FiniteLoop, invariants=None) -> Fingerprint:
    inv = invariants if invariants is not None else element_invariants(L)
    N = nucleus(L)
    A = associator_subloop(L)
    zc = sum(1 for i in inv if i[2])
    profile: dict[int, int] = {}
    for i in inv:
        profile[i[0]] = profile.get(i[0], 0) + 1
    classes: dict[tuple, int] = {}
    for i in inv:
        classes[i] = classes.get(i, 0) + 1
    return Fingerprint(
        n=L.n,
        order_profile=tuple(sorted(profile.items())),
        nucleus=N.order,
        center=zc,
        associator=A.order,
        associative=A.order == 1,
        commutative=bool(commutant_mask(L).all()),
        element_classes=tuple(sorted(classes.items())),
        pair_subloops=pair_subloop_profile(L) if L.n <= PAIR_SUBLOOP_LIMIT else None,
    )


def _plan(L: FiniteLoop, inv):
    """Choose generators greedily and record how each element arises.

    Returns a list of levels ``(generator, steps)``; each step ``(v, a, b)``
    says ``v = a * b`` with ``a`` and ``b`` known before ``v``.
    """
    t = L.table
    n = L.n
    bucket: dict[tuple, int] = {}
    for i in inv:
        bucket[i] = bucket.get(i, 0) + 1
    known = np.zeros(n, dtype=bool)
    known[0] = True
    members = [0]
    levels = []
    while len(members) < n:
        # prefer the generator that grows the subloop most, then the rarest class
        best = None
        for x in range(n):
            if known[x]:
                continue
            size = int(kernels.closure(t, known, [x]).sum())
            key = (-size, bucket[inv[x]], x)
            if best is None or key < best[0]:
                best = (key, x)
        g = best[1]
        steps = []
        head = len(members)
        known[g] = True
        members.append(g)
        while head < len(members):
            s = members[head]
            for i in range(head + 1):
                m = members[i]
                for a, b in ((s, m), (m, s)):
                    v = int(t[a, b])
                    if not known[v]:
                        known[v] = True
                        members.append(v)
                        steps.append((v, a, b))
            head += 1
        levels.append((g, steps, np.array(members[: len(members)])))
    return levels


def _search(L1: FiniteLoop, L2: FiniteLoop, inv1, inv2, find_all: bool, limit: int | None = None):
    n = L1.n
    t1, t2 = L1.table, L2.table
    levels = _plan(L1, inv1)
    cands: dict[tuple, list[int]] = {}
    for y in range(1, n):
        cands.setdefault(inv2[y], []).append(y)
    phi = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)
    phi[0] = 0
    used[0] = True
    found: list[np.ndarray] = []

    def assign(level):
        g, steps, dom = levels[level]
        for h in cands.get(inv1[g], []):
            if used[h]:
                continue
            touched = [g]
            phi[g] = h
            used[h] = True
            ok = True
            for v, a, b in steps:
                w = int(t2[phi[a], phi[b]])
                if used[w] or inv2[w] != inv1[v]:
                    ok = False
                    break
                phi[v] = w
                used[w] = True
                touched.append(v)
            if ok:
                sub = phi[dom]
                ok = bool((t2[np.ix_(sub, sub)] == phi[t1[np.ix_(dom, dom)]]).all())
            if ok:
                if level + 1 == len(levels):
                    found.append(phi.copy())
                    if not find_all:
                        return True
                    if limit is not None and len(found) > limit:
                        raise ResourceCapError("automorphism count exceeds guard", len(found))
                elif assign(level + 1) and not find_all:
                    return True
            for v in touched:
                used[phi[v]] = False
                phi[v] = -1
        return False

    if not levels:
        found.append(phi.copy())
    else:
        assign(0)
    return found


def find_isomorphism(L1: FiniteLoop, L2: FiniteLoop, check_fingerprints: bool = True):
    """An index array ``phi`` with phi[xy] = phi[x]phi[y], or None."""
    if L1.n != L2.n:
        return None
    inv1 = element_invariants(L1)
    inv2 = element_invariants(L2)
    if sorted(inv1) != sorted(inv2):
        return None
    if check_fingerprints and fingerprint(L1, inv1) != fingerprint(L2, inv2):
        return None
    found = _search(L1, L2, inv1, inv2, find_all=False)
    if not found:
        return None
    phi = found[0]
    if not (L2.table[np.ix_(phi, phi)] == phi[L1.table]).all():
        raise AssertionError("backtracking returned a non-homomorphism")
    return phi


def is_isomorphic(L1: FiniteLoop, L2: FiniteLoop) -> bool:
    return find_isomorphism(L1, L2) is not None


def automorphisms(L: FiniteLoop, guard: int | None = AUT_SIZE_GUARD, limit: int | None = None) -> np.ndarray:
    """All automorphisms of L as rows of an index array."""
    if guard is not None and L.n > guard:
        raise ResourceCapError(f"automorphism enumeration limited to n <= {guard}", 0)
    inv = element_invariants(L)
    found = _search(L, L, inv, inv, find_all=True, limit=limit)
    return np.array(found, dtype=np.int64)


def automorphism_group(L: FiniteLoop, guard: int | None = AUT_SIZE_GUARD):
    from .multgroups import PermGroup

    auts = automorphisms(L, guard=guard)
    return PermGroup.from_elements(auts)
