"""Sylow and Hall subloops of extra loops, solvability, and the Sylow
correspondence with subgroups of RMlt."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

from . import kernels
from .errors import ConsistencyError, InputError, PreconditionError
from .loop import FiniteLoop, is_extra, is_group
from .multgroups import PermGroup, inner_mapping_group, right_translations, rmlt
from .structure import (Subloop, associator_subloop, commutator_value_mask, enumerate_subloops,
                        normal_closure, nucleus, quotient, quotient_map)

EXHAUSTIVE_LIMIT = 256


def prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and prime_factors(p) == {p: 1}


def pi_part(n: int, primes) -> int:
    return prod(p ** k for p, k in prime_factors(n).items() if p in set(primes))


def is_pi_number(k: int, primes) -> bool:
    return all(p in set(primes) for p in prime_factors(k))


def _check_primes(primes) -> list[int]:
    primes = sorted(set(int(p) for p in primes))
    for p in primes:
        if not is_prime(p):
            raise InputError(f"{p} is not a prime")
    return primes


@dataclass
class SubloopFamily:
    parent: FiniteLoop
    members: list[Subloop]
    label: str
    primes: tuple[int, ...]
    report: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return self.members[0].order

    def keys(self) -> set[tuple]:
        return {m.elements for m in self.members}


# --- groups given as associative tables -------------------------------------


def _power(H: FiniteLoop, g: int, k: int) -> int:
    return H.power(g, k)


def grow_p_subgroup(H: FiniteLoop, p: int, start=None) -> np.ndarray:
    """A Sylow p-subgroup of the group H containing the p-subgroup ``start``.

    Adds an element g that normalizes P with g^p in P until |P| is the full
    p-part; such g exists while P is not Sylow (take a p-element of N(P)/P).
    """
    target = pi_part(H.n, [p])
    P = np.zeros(H.n, dtype=bool)
    P[0] = True
    if start is not None:
        P = kernels.closure(H.table, P, [int(s) for s in start])
    while P.sum() < target:
        elems = np.flatnonzero(P)
        for g in range(H.n):
            if P[g] or not P[_power(H, g, p)]:
                continue
            if P[H.T(g)[elems]].all():
                P = kernels.closure(H.table, P, [g])
                break
        else:
            raise ConsistencyError("p-subgroup cannot be enlarged below the Sylow order")
    if P.sum() != target:
        raise ConsistencyError("grown subgroup overshoots the p-part")
    return P


def conjugation_orbit(H: FiniteLoop, mask: np.ndarray, conjugators=None) -> list[tuple]:
    """Images of a subloop under T_x for x in ``conjugators`` (default all)."""
    elems = np.flatnonzero(mask)
    xs = range(H.n) if conjugators is None else conjugators
    seen = {}
    for x in xs:
        img = tuple(sorted(set(int(v) for v in H.T(int(x))[elems])))
        seen.setdefault(img, None)
    return sorted(seen)


def group_sylow(H: FiniteLoop, p: int) -> list[tuple]:
    """All Sylow p-subgroups of the group H, as sorted element tuples."""
    if not is_group(H):
        raise PreconditionError("group_sylow needs an associative table")
    return conjugation_orbit(H, grow_p_subgroup(H, p))


def group_hall(H: FiniteLoop, primes) -> list[tuple]:
    """All Hall pi-subgroups of a solvable group H.

    Picks one Sylow subgroup per prime so that each partial join has the
    product order (a Sylow basis), then takes the conjugacy class.
    """
    primes = [p for p in _check_primes(primes) if H.n % p == 0]
    if not primes:
        return [(0,)]
    fams = [group_sylow(H, p) for p in primes]
    parts = [pi_part(H.n, [p]) for p in primes]

    def search(i, mask, order):
        if i == len(primes):
            return mask
        for member in fams[i] if i else fams[i][:1]:
            grown = kernels.closure(H.table, mask, list(member))
            if grown.sum() == order * parts[i]:
                hit = search(i + 1, grown, order * parts[i])
                if hit is not None:
                    return hit
        return None

    start = np.zeros(H.n, dtype=bool)
    start[0] = True
    found = search(0, start, 1)
    if found is None:
        raise ConsistencyError("no Sylow basis found; group may not be solvable")
    return conjugation_orbit(H, found)


def o_p_elements(H: FiniteLoop, p: int) -> np.ndarray:
    """Mask of O^p(H), generated by the elements of order prime to p."""
    gens = [x for x in range(H.n) if gcd(H.element_order(x) or 0, p) == 1]
    return H.generated(gens)


def sylow_conjugate_in_op(H: FiniteLoop, p: int) -> bool:
    """Any two Sylow p-subgroups of H are conjugate by some x in O^p(H)."""
    fam = group_sylow(H, p)
    op = np.flatnonzero(o_p_elements(H, p))
    keyset = set(fam)
    for P in fam:
        mask = np.zeros(H.n, dtype=bool)
        mask[list(P)] = True
        reached = set(conjugation_orbit(H, mask, op))
        if reached != keyset:
            return False
    return True


# --- solvability -------------------------------------------------------------


@dataclass
class SolvabilityReport:
    solvable: bool
    series: list[Subloop]
    nucleus_solvable: bool | None = None

    def __bool__(self) -> bool:
        return self.solvable

    @property
    def orders(self) -> list[int]:
        return [s.order for s in self.series]


def derived_subloop(L: FiniteLoop) -> Subloop:
    """Smallest normal subloop containing all commutators and associators."""
    seeds = np.flatnonzero(commutator_value_mask(L) | kernels.associator_value_mask(L.table, L.ld))
    return normal_closure(L, seeds)


def is_solvable(L: FiniteLoop, cross_check: bool = True) -> SolvabilityReport:
    """Iterate the derived subloop; solvable iff it reaches {0}.

    ``series`` lists Q = D_0 > D_1 > ... as subloops of L. For extra loops the
    answer is compared with solvability of the nucleus as a group.
    """
    series = [Subloop(L, tuple(range(L.n)))]
    cur, embed = L, np.arange(L.n)
    while cur.n > 1:
        D = derived_subloop(cur)
        if D.order == cur.n:
            break
        Qd = quotient(cur, D, check=False)
        if not (is_group(Qd) and (Qd.table == Qd.table.T).all()):
            raise ConsistencyError("derived quotient is not an abelian group")
        series.append(Subloop(L, tuple(sorted(int(embed[e]) for e in D.elements))))
        embed = embed[list(D.elements)]
        cur = D.as_loop()
    solvable = series[-1].order == 1
    report = SolvabilityReport(solvable, series)
    if cross_check and L.n > 1 and is_extra(L) and not is_group(L):
        N = nucleus(L)
        report.nucleus_solvable = is_solvable(N.as_loop(), cross_check=False).solvable
        if report.nucleus_solvable != solvable:
            raise ConsistencyError("solvability of Q and of N(Q) disagree")
    return report


# --- Sylow and Hall subloops of extra loops ----------------------------------


def _require_extra(L: FiniteLoop) -> None:
    if not is_extra(L):
        raise PreconditionError("input is not an extra loop")


def _pullback(labels: np.ndarray, member) -> tuple:
    keep = np.isin(labels, np.asarray(member))
    return tuple(int(v) for v in np.flatnonzero(keep))


def _embed(sub: Subloop, member) -> tuple:
    return tuple(sorted(sub.elements[i] for i in member))


def _t_images(L: FiniteLoop, S: tuple, xs) -> set[tuple]:
    e = np.asarray(S)
    return {tuple(sorted(set(int(v) for v in L.T(int(x))[e]))) for x in xs}


def _family_members(L: FiniteLoop, primes: list[int]) -> list[tuple]:
    """Hall pi-subloops: from N when 2 is not in pi, else pulled back from Q/A."""
    if 2 not in primes:
        N = nucleus(L)
        return sorted(_embed(N, m) for m in group_hall(N.as_loop(), primes))
    A = associator_subloop(L)
    labels = quotient_map(L, A)
    QA = quotient(L, A)
    return sorted(_pullback(labels, m) for m in group_hall(QA, primes))


def _verify_family(L, fam: SubloopFamily, conjugators, exhaustive: bool | None) -> None:
    rep = fam.report
    primes = list(fam.primes)
    target = pi_part(L.n, primes)
    keys = fam.keys()
    if any(m.order != target for m in fam.members):
        raise ConsistencyError("family member has the wrong order")
    for m in fam.members:
        if not set(np.flatnonzero(L.generated(m.elements)).tolist()) == set(m.elements):
            raise ConsistencyError("family member is not a subloop")
    rep["transitive"] = all(_t_images(L, m.elements, conjugators) == keys for m in fam.members)
    if exhaustive is None:
        exhaustive = L.n <= EXHAUSTIVE_LIMIT
    if exhaustive:
        subs = enumerate_subloops(L, allowed=lambda k: is_pi_number(k, primes))
        tops = {s.elements for s in subs if s.order == target}
        rep["enumeration_agrees"] = tops == keys
        rep["extends"] = all(any(s.issubset(m.elements) for m in fam.members) for s in subs)
        rep["subloops_checked"] = len(subs)
    if not rep["transitive"]:
        raise ConsistencyError("family is not a single T_x-orbit")
    if exhaustive and not (rep["enumeration_agrees"] and rep["extends"]):
        raise ConsistencyError("family disagrees with subloop enumeration")


def sylow_subloops(L: FiniteLoop, p: int, verify: bool = True,
                   exhaustive: bool | None = None) -> SubloopFamily:
    """Syl_p(L) for an extra loop L.

    For odd p these are the Sylow subgroups of N; for p = 2 the pullbacks of
    Sylow subgroups of Q/A. Verification records in ``report``: the count
    mod p, whether it divides the p'-part of |N| (flagged, not enforced),
    T_x-transitivity for x in N, and (when exhaustive) that every p-subloop
    lies in a member.
    """
    _require_extra(L)
    (p,) = _check_primes([p])
    members = _family_members(L, [p])
    fam = SubloopFamily(L, [Subloop(L, m) for m in members], f"Syl_{p}", (p,))
    if verify:
        N = nucleus(L)
        r = N.order // pi_part(N.order, [p])
        fam.report["count"] = fam.count
        fam.report["mod_p"] = fam.count % p
        fam.report["divides_r"] = r % fam.count == 0
        _verify_family(L, fam, N.elements, exhaustive)
        if fam.report["mod_p"] != 1:
            raise ConsistencyError(f"|Syl_{p}| is not 1 mod {p}")
        fam.report["isomorphic_conjugates"] = _conjugates_isomorphic(L, fam, N)
    return fam


def _conjugates_isomorphic(L: FiniteLoop, fam: SubloopFamily, N: Subloop) -> bool:
    """Each member is P_0 T_x for some x in N, and that T_x restricts to an
    isomorphism P_0 -> member."""
    P0 = np.asarray(fam.members[0].elements)
    sub0 = L.table[np.ix_(P0, P0)]
    for m in fam.members:
        ok = False
        for x in N.elements:
            img = L.T(x)[P0]
            if tuple(sorted(img.tolist())) != m.elements:
                continue
            if (L.table[np.ix_(img, img)] == L.T(x)[sub0]).all():
                ok = True
                break
        if not ok:
            return False
    return True


def hall_subloops(L: FiniteLoop, primes, verify: bool = True,
                  exhaustive: bool | None = None) -> SubloopFamily:
    """Hall pi-subloops of a solvable extra loop."""
    _require_extra(L)
    primes = _check_primes(primes)
    used = [p for p in primes if L.n % p == 0]
    if not is_solvable(L, cross_check=False).solvable:
        raise PreconditionError("Hall subloops are only guaranteed for solvable extra loops")
    label = "Hall_{" + ",".join(map(str, primes)) + "}"
    if not used:
        members = [(0,)]
    elif set(used) == set(prime_factors(L.n)):
        members = [tuple(range(L.n))]
    else:
        members = _family_members(L, used)
    fam = SubloopFamily(L, [Subloop(L, m) for m in members], label, tuple(used))
    if verify:
        fam.report["count"] = fam.count
        _verify_family(L, fam, range(L.n), exhaustive)
    return fam


# --- subgroups of RMlt -------------------------------------------------------


def _powers(E: np.ndarray, k: int) -> np.ndarray:
    P = E
    for _ in range(k - 1):
        P = np.take_along_axis(P, E, axis=1)
    return P


def _conjugates(E: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Rows g^-1 h g for every row g of E."""
    EI = np.argsort(E, axis=1)
    return np.take_along_axis(E, h[EI], axis=1)


def perm_sylow(G: PermGroup, p: int, start: PermGroup | None = None) -> PermGroup:
    """A Sylow p-subgroup of an enumerated permutation group, grown from ``start``."""
    target = pi_part(G.order, [p])
    E = G.elements.astype(np.int64)
    P = start if start is not None else PermGroup(G.degree, np.empty((0, G.degree)), G.identity()[None, :])
    pw = _powers(E, p)
    while P.order < target:
        keys = P.index
        ok = np.array([r.astype(np.int16).tobytes() in keys for r in pw])
        for h in P.generators.astype(np.int64):
            conj = _conjugates(E, h)
            ok &= np.array([r.astype(np.int16).tobytes() in keys for r in conj])
        ok &= np.array([r.astype(np.int16).tobytes() not in keys for r in E])
        hits = np.flatnonzero(ok)
        if len(hits) == 0:
            raise ConsistencyError("p-subgroup of RMlt cannot be enlarged")
        gens = np.concatenate([P.generators, E[hits[0]][None, :].astype(np.int16)])
        P = PermGroup.from_generators(gens, G.degree)
    if P.order != target:
        raise ConsistencyError("grown subgroup of RMlt overshoots the p-part")
    return P


def perm_conjugacy_class(G: PermGroup, P: PermGroup) -> list[frozenset]:
    """Conjugates of P under G, by closing under conjugation by generators."""
    start = P.keys()
    seen = {start: P}
    todo = [P]
    while todo:
        H = todo.pop()
        for g in G.generators.astype(np.int64):
            C = H.conjugate(g)
            k = C.keys()
            if k not in seen:
                seen[k] = C
                todo.append(C)
    return list(seen)


@dataclass
class SylowCorrespondence:
    p: int
    loop_count: int
    group_count: int
    group_order: int
    sylow_order: int
    injective: bool
    into_family: bool
    surjective: bool

    @property
    def ok(self) -> bool:
        return self.injective and self.into_family and self.surjective and self.loop_count == self.group_count


def sylow_rmlt_correspondence(L: FiniteLoop, p: int, cap: int | None = None,
                              mult: PermGroup | None = None) -> SylowCorrespondence:
    """Match Syl_p(L) with Syl_p(RMlt(L)).

    Odd p: P -> R(P). p = 2: P -> RMlt_1 . R(P).
    """
    _require_extra(L)
    (p,) = _check_primes([p])
    G = rmlt(L, cap=cap) if mult is None else mult
    fam = sylow_subloops(L, p, verify=False)
    target = pi_part(G.order, [p])
    Rt = right_translations(L).astype(np.int64)
    if p == 2:
        inner = inner_mapping_group(L, "right")
        start = inner
    else:
        inner = None
        start = None
    S = perm_sylow(G, p, start=start)
    family = set(perm_conjugacy_class(G, S))
    images = []
    for m in fam.members:
        R = Rt[list(m.elements)]
        if inner is None:
            keys = frozenset(r.astype(np.int16).tobytes() for r in R)
        else:
            I = inner.elements.astype(np.int64)
            prods = np.take_along_axis(
                np.repeat(R[None, :, :], len(I), 0).reshape(-1, L.n),
                np.repeat(I, len(R), 0), axis=1)
            # rows are h r (h first): (h r)[x] = r[h[x]]
            keys = frozenset(r.astype(np.int16).tobytes() for r in prods)
        if len(keys) != target:
            raise ConsistencyError("image of a Sylow subloop has the wrong order")
        images.append(keys)
    return SylowCorrespondence(
        p=p,
        loop_count=fam.count,
        group_count=len(family),
        group_order=G.order,
        sylow_order=target,
        injective=len(set(images)) == len(images),
        into_family=all(k in family for k in images),
        surjective=set(images) == family,
    )
