"""Subloops, nuclei, centers, associator subloops, normality, quotients."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import AssertionFailure, ConsistencyError, NotNormalError
from .loop import FiniteLoop, is_extra


@dataclass(frozen=True, eq=False)
class Subloop:
    parent: FiniteLoop
    elements: tuple[int, ...]
    normal: bool | None = field(default=None, compare=False)

    @classmethod
    def from_mask(cls, parent: FiniteLoop, mask, normal=None) -> "Subloop":
        return cls(parent, tuple(int(v) for v in np.flatnonzero(mask)), normal)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return int(x) in self._set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subloop) and self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"Subloop(order={self.order}, of n={self.parent.n})"

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            self.__dict__["_cached_set"] = s
        return s

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.n, dtype=bool)
        m[list(self.elements)] = True
        return m

    def as_loop(self) -> FiniteLoop:
        """The subloop renumbered 0..k-1 in ascending element order."""
        return self.parent.subloop_table(self.elements)

    def issubset(self, other) -> bool:
        return self._set <= frozenset(other)


def generate_subloop(L: FiniteLoop, S=()) -> Subloop:
    return Subloop.from_mask(L, L.generated(S))


def is_closed(L: FiniteLoop, elements) -> bool:
    e = np.asarray(sorted(set(int(v) for v in elements)))
    if len(e) == 0 or e[0] != 0:
        return False
    mask = np.zeros(L.n, dtype=bool)
    mask[e] = True
    return bool(mask[L.table[np.ix_(e, e)]].all())


def _as_subloop(L, S) -> Subloop:
    if isinstance(S, Subloop):
        return S
    return Subloop(L, tuple(sorted(int(v) for v in S)))


def nucleus(L: FiniteLoop) -> Subloop:
    mask = kernels.nucleus_mask(L.table)
    if not is_closed(L, np.flatnonzero(mask)):
        raise ConsistencyError("nucleus is not closed")
    return Subloop.from_mask(L, mask)


def commutant_mask(L: FiniteLoop) -> np.ndarray:
    """Elements commuting with every element."""
    return (L.table == L.table.T).all(axis=1)


def center(L: FiniteLoop, N: Subloop | None = None) -> Subloop:
    N = nucleus(L) if N is None else N
    mask = N.mask & commutant_mask(L)
    if not is_closed(L, np.flatnonzero(mask)):
        raise ConsistencyError("center is not closed")
    return Subloop.from_mask(L, mask)


def associator_subloop(L: FiniteLoop, verify: bool = False) -> Subloop:
    """A(L), generated by all associators.

    With ``verify`` and an extra loop, also asserts A <= Z(N), that A is a
    boolean group and that A is normal.
    """
    vals = kernels.associator_value_mask(L.table, L.ld)
    A = Subloop.from_mask(L, L.generated(np.flatnonzero(vals)))
    if verify and is_extra(L):
        N = nucleus(L)
        NL = N.as_loop()
        ZN = center(NL)
        zn = {N.elements[i] for i in ZN.elements}
        if not set(A.elements) <= zn:
            raise AssertionFailure("A(Q) is not contained in Z(N(Q))")
        e = np.asarray(A.elements)
        if (L.table[e, e] != 0).any():
            raise AssertionFailure("A(Q) is not boolean")
        if not is_normal(L, A):
            raise AssertionFailure("A(Q) is not normal")
        A = Subloop(L, A.elements, True)
    return A


def commutator_value_mask(L: FiniteLoop) -> np.ndarray:
    t = L.table
    out = np.zeros(L.n, dtype=bool)
    out[L.ld[t.T, t]] = True
    return out


def coset_labels(L: FiniteLoop, S) -> np.ndarray | None:
    """Label elements by left coset xS, numbering cosets by their minimum.

    Returns None if the left cosets do not partition the loop.
    """
    S = _as_subloop(L, S)
    e = np.asarray(S.elements)
    labels = np.full(L.n, -1, dtype=np.int64)
    k = 0
    for x in range(L.n):
        if labels[x] >= 0:
            continue
        coset = L.table[x, e]
        if (labels[coset] >= 0).any():
            return None
        labels[coset] = k
        k += 1
    return labels


def _cosets_well_defined(L: FiniteLoop, S: Subloop) -> bool:
    labels = coset_labels(L, S)
    if labels is None:
        return False
    e = np.asarray(S.elements)
    # right cosets must equal left cosets
    for x in range(L.n):
        if (labels[L.table[e, x]] != labels[x]).any():
            return False
    k = labels.max() + 1
    prod = labels[L.table]
    table = np.full((k, k), -1, dtype=np.int64)
    a = np.broadcast_to(labels[:, None], prod.shape)
    b = np.broadcast_to(labels[None, :], prod.shape)
    table[a.ravel(), b.ravel()] = prod.ravel()
    return bool((table[a, b] == prod).all())


def is_normal(L: FiniteLoop, S) -> bool:
    """Normality via invariance under T_x, R(x,y), L(x,y), cross-checked
    against well-definedness of coset multiplication."""
    S = _as_subloop(L, S)
    if S.normal is not None:
        return S.normal
    closed = kernels.normal_closure(L.table, L.ld, L.rd, list(S.elements))
    by_inner = bool((closed == S.mask).all())
    by_cosets = _cosets_well_defined(L, S)
    if by_inner != by_cosets:
        raise ConsistencyError("inner-mapping and coset normality tests disagree")
    object.__setattr__(S, "normal", by_inner)
    return by_inner


def normal_closure(L: FiniteLoop, seeds) -> Subloop:
    mask = kernels.normal_closure(L.table, L.ld, L.rd, [int(s) for s in seeds])
    return Subloop.from_mask(L, mask, normal=True)


def quotient(L: FiniteLoop, S, check: bool = True) -> FiniteLoop:
    """L/S on cosets numbered by minimum representative."""
    S = _as_subloop(L, S)
    if check and not is_normal(L, S):
        raise NotNormalError("subloop is not normal")
    labels = coset_labels(L, S)
    if labels is None:
        raise NotNormalError("left cosets do not partition the loop")
    reps = np.array([np.flatnonzero(labels == i)[0] for i in range(labels.max() + 1)])
    table = labels[L.table[np.ix_(reps, reps)]]
    return FiniteLoop(table, name=f"{L.name}/{S.order}" if L.name else "")


def quotient_map(L: FiniteLoop, S) -> np.ndarray:
    labels = coset_labels(L, _as_subloop(L, S))
    if labels is None:
        raise NotNormalError("left cosets do not partition the loop")
    return labels


def direct_product(L1: FiniteLoop, L2: FiniteLoop) -> FiniteLoop:
    """Componentwise product; (a, b) has index a * |L2| + b."""
    n2 = L2.n
    t = L1.table[:, None, :, None] * n2 + L2.table[None, :, None, :]
    t = t.reshape(L1.n * n2, L1.n * n2)
    name = f"{L1.name}x{L2.name}" if L1.name and L2.name else ""
    return FiniteLoop(t, name=name)


def enumerate_subloops(L: FiniteLoop, allowed=None, max_order: int | None = None) -> list[Subloop]:
    """All subloops whose order is accepted by ``allowed(order)``.

    Subloops are grown one generator at a time, so ``allowed`` must be
    inherited by subloops; for Lagrange loops any "order divides" or
    "order is a pi-number" predicate qualifies. Elements whose cyclic
    subloop fails ``allowed`` are never used as generators.
    """
    allowed = allowed or (lambda k: True)
    cyc = [int(L.generated([x]).sum()) for x in range(L.n)]
    gens = [x for x in range(1, L.n) if allowed(cyc[x]) and (max_order is None or cyc[x] <= max_order)]
    start = np.zeros(L.n, dtype=bool)
    start[0] = True
    seen = {np.packbits(start).tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for mask in frontier:
            for x in gens:
                if mask[x]:
                    continue
                grown = kernels.closure(L.table, mask, [x])
                k = int(grown.sum())
                if not allowed(k) or (max_order is not None and k > max_order):
                    continue
                key = np.packbits(grown).tobytes()
                if key not in seen:
                    seen[key] = grown
                    nxt.append(grown)
        frontier = nxt
    subs = [Subloop.from_mask(L, m) for m in seen.values()]
    subs.sort(key=lambda s: (s.order, s.elements))
    return subs


def image(L: FiniteLoop, S, perm) -> Subloop:
    """Image of a subloop under a permutation of L's elements."""
    perm = np.asarray(perm)
    return Subloop(L, tuple(sorted(int(perm[s]) for s in _as_subloop(L, S).elements)))
