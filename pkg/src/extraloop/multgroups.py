"""Permutation groups generated by translations of a loop.

Permutations are index arrays acting on the right: ``x g = g[x]``. The
product ``g h`` applies ``g`` first, so ``(g h)[x] = h[g[x]]``.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .errors import AssertionFailure, PreconditionError, ResourceCapError
from .loop import FiniteLoop, is_extra
from .structure import associator_subloop, coset_labels

DEFAULT_CAP = 1 << 20


def enumeration_cap() -> int:
    env = os.environ.get("EXTRALOOP_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_CAP


def _key(p: np.ndarray) -> bytes:
    return p.astype(np.int16, copy=False).tobytes()


def compose(g: np.ndarray, h: np.ndarray) -> np.ndarray:
    """The product gh (g first)."""
    return h[g]


def inverse(g: np.ndarray) -> np.ndarray:
    return np.argsort(g).astype(g.dtype)


class PermGroup:
    """A finite permutation group with its elements fully enumerated."""

    def __init__(self, degree: int, generators, elements: np.ndarray):
        self.degree = degree
        self.generators = np.asarray(generators, dtype=np.int16).reshape(-1, degree)
        self.elements = np.asarray(elements, dtype=np.int16).reshape(-1, degree)
        self._index = None

    @classmethod
    def from_generators(cls, generators, degree: int | None = None, cap: int | None = None) -> "PermGroup":
        gens = np.asarray(generators, dtype=np.int16)
        if degree is None:
            degree = gens.shape[-1]
        gens = gens.reshape(-1, degree)
        cap = enumeration_cap() if cap is None else cap
        ident = np.arange(degree, dtype=np.int16)
        # drop duplicates and the identity from the generating set
        uniq = {}
        for g in gens:
            k = _key(g)
            if k != _key(ident) and k not in uniq:
                uniq[k] = g
        gens = np.array(list(uniq.values()), dtype=np.int16).reshape(-1, degree)
        seen = {_key(ident)}
        elems = [ident[None, :]]
        frontier = ident[None, :]
        total = 1
        while len(frontier):
            batch = []
            for g in gens:
                cand = g[frontier]
                for row in cand:
                    k = row.tobytes()
                    if k not in seen:
                        seen.add(k)
                        batch.append(row)
                if total + len(batch) > cap:
                    raise ResourceCapError(
                        f"group order exceeds enumeration cap {cap}", total + len(batch))
            frontier = np.array(batch, dtype=np.int16).reshape(-1, degree)
            total += len(frontier)
            elems.append(frontier)
        return cls(degree, gens, np.concatenate(elems))

    @classmethod
    def from_elements(cls, elements) -> "PermGroup":
        elems = np.asarray(elements, dtype=np.int16)
        degree = elems.shape[1]
        ident = np.arange(degree, dtype=np.int16)
        order = np.lexsort(elems.T[::-1])
        elems = elems[order]
        pos = [i for i, e in enumerate(elems) if (e == ident).all()]
        if pos and pos[0] != 0:
            elems = np.concatenate([elems[pos[0]:pos[0] + 1], np.delete(elems, pos[0], axis=0)])
        return cls(degree, elems, elems)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    @property
    def index(self) -> dict[bytes, int]:
        if self._index is None:
            self._index = {e.tobytes(): i for i, e in enumerate(self.elements)}
        return self._index

    def __contains__(self, g) -> bool:
        return _key(np.asarray(g)) in self.index

    def keys(self) -> frozenset:
        return frozenset(self.index)

    def identity(self) -> np.ndarray:
        return np.arange(self.degree, dtype=np.int16)

    def element_orders(self) -> np.ndarray:
        E = self.elements.astype(np.int64)
        ident = np.arange(self.degree)
        orders = np.zeros(len(E), dtype=np.int64)
        P = E.copy()
        k = 1
        while (orders == 0).any():
            hit = (orders == 0) & (P == ident).all(axis=1)
            orders[hit] = k
            P = np.take_along_axis(E, P, axis=1)
            k += 1
            if k > 10 ** 6:
                raise AssertionFailure("element order computation did not terminate")
        return orders

    def is_abelian(self) -> bool:
        G = self.generators.astype(np.int64)
        for g in G:
            for h in G:
                if not np.array_equal(h[g], g[h]):
                    return False
        return True

    def is_boolean(self) -> bool:
        E = self.elements.astype(np.int64)
        return bool((np.take_along_axis(E, E, axis=1) == np.arange(self.degree)).all())

    def stabilizer(self, point: int) -> "PermGroup":
        keep = self.elements[self.elements[:, point] == point]
        return PermGroup(self.degree, keep, keep)

    def subgroup(self, elements, cap: int | None = None) -> "PermGroup":
        """Subgroup generated by ``elements``, grown greedily so that
        redundant generators are skipped."""
        elems = np.asarray(elements, dtype=np.int16).reshape(-1, self.degree)
        H = PermGroup(self.degree, np.empty((0, self.degree)), self.identity()[None, :])
        gens: list[np.ndarray] = []
        for e in elems:
            if e in H:
                continue
            gens.append(e)
            H = PermGroup.from_generators(np.array(gens), self.degree, cap=cap)
        return H

    def conjugate(self, x: np.ndarray) -> "PermGroup":
        """x^-1 H x."""
        x = np.asarray(x, dtype=np.int64)
        xi = np.argsort(x)
        E = self.elements.astype(np.int64)
        conj = x[E[:, xi]]
        return PermGroup.from_elements(conj)

    def is_normal_in(self, G: "PermGroup") -> bool:
        mine = self.keys()
        for g in G.generators:
            if self.conjugate(g).keys() != mine:
                return False
        return True


def right_translations(L: FiniteLoop) -> np.ndarray:
    return L.table.T.copy()


def left_translations(L: FiniteLoop) -> np.ndarray:
    return L.table.copy()


def rmlt(L: FiniteLoop, cap: int | None = None) -> PermGroup:
    return PermGroup.from_generators(right_translations(L), L.n, cap=cap)


def lmlt(L: FiniteLoop, cap: int | None = None) -> PermGroup:
    return PermGroup.from_generators(left_translations(L), L.n, cap=cap)


def right_inner(L: FiniteLoop, x: int, y: int) -> np.ndarray:
    """R(x,y) = R_x R_y R_{xy}^-1 : t -> ((tx)y)/(xy)."""
    t = L.table
    return L.rd[t[t[:, x], y], t[x, y]]


def left_inner(L: FiniteLoop, x: int, y: int) -> np.ndarray:
    """L(x,y) = L_x L_y L_{yx}^-1 : t -> (yx)\\(y(xt))."""
    t = L.table
    return L.ld[t[y, x], t[y, t[x]]]


def middle_inner(L: FiniteLoop, x: int) -> np.ndarray:
    """T_x = R_x L_x^-1 : t -> x\\(tx)."""
    return L.T(x)


def all_right_inner(L: FiniteLoop) -> np.ndarray:
    """Array M with M[x, y] = R(x,y)."""
    t = L.table
    n = L.n
    tx = t.T[:, :, None]  # [x, t] -> tx, broadcast over y
    txy = t[tx, np.arange(n)[None, None, :]]  # [x, t, y]
    out = L.rd[txy, t[:, None, :]]
    return out.transpose(0, 2, 1)


def all_left_inner(L: FiniteLoop) -> np.ndarray:
    """Array M with M[x, y] = L(x,y)."""
    t = L.table
    n = L.n
    xt = t[:, None, :]  # [x, ., t]
    yxt = t[np.arange(n)[None, :, None], xt]  # [x, y, t]
    return L.ld[t.T[:, :, None], yxt]


def _distinct(perms: np.ndarray) -> np.ndarray:
    flat = perms.reshape(-1, perms.shape[-1]).astype(np.int16)
    return np.unique(flat, axis=0)


def inner_mapping_group(L: FiniteLoop, side: str = "right", mult: PermGroup | None = None,
                        cap: int | None = None) -> PermGroup:
    """RMlt_1 (or LMlt_1), generated by the R(x,y) (or L(x,y)).

    When the multiplication group is given (or small enough to build) the
    generated group is checked against its stabilizer of 0.
    """
    if side == "right":
        gens = _distinct(all_right_inner(L))
    elif side == "left":
        gens = _distinct(all_left_inner(L))
    else:
        raise ValueError("side must be 'right' or 'left'")
    H = PermGroup.from_generators(gens, L.n, cap=cap)
    if mult is not None:
        if H.keys() != mult.stabilizer(0).keys():
            raise AssertionFailure("inner mapping group differs from the stabilizer of 0")
    return H


def a_star(L: FiniteLoop, mult: PermGroup | None = None, inner: PermGroup | None = None,
           cap: int | None = None) -> PermGroup:
    """A* = {g in RMlt : xg in Ax for all x}, with the factorization checks."""
    if not is_extra(L):
        raise PreconditionError("A* is defined here for extra loops only")
    A = associator_subloop(L)
    G = rmlt(L, cap=cap) if mult is None else mult
    labels = coset_labels(L, A)
    E = G.elements.astype(np.int64)
    keep = (labels[E] == labels[None, :]).all(axis=1)
    S = PermGroup(L.n, E[keep], E[keep])
    inner = inner_mapping_group(L, "right", mult=G) if inner is None else inner
    RA = right_translations(L)[list(A.elements)].astype(np.int64)
    prods = {compose(h, r).astype(np.int16).tobytes()
             for h in inner.elements.astype(np.int64) for r in RA}
    if prods != S.keys():
        raise AssertionFailure("A* differs from RMlt_1 . R(A)")
    if S.order != inner.order * A.order:
        raise AssertionFailure("RMlt_1 . R(A) is not a direct product")
    if not S.is_boolean():
        raise AssertionFailure("A* is not boolean")
    if not S.is_normal_in(G):
        raise AssertionFailure("A* is not normal in RMlt")
    return S


def o_p_subgroup(G: PermGroup, p: int) -> PermGroup:
    """Subgroup generated by the elements of order prime to p."""
    if G.elements is None or len(G.elements) == 0:
        raise ResourceCapError("group is not enumerated", 0)
    orders = G.element_orders()
    keep = G.elements[np.array([math.gcd(int(o), p) == 1 for o in orders])]
    return G.subgroup(keep)


def format_permutation(g) -> str:
    return " ".join(str(int(v)) for v in g)


def format_group(G: PermGroup, header: list[str] | None = None) -> str:
    out = [f"# {h}" for h in (header or [])]
    out.append(f"# degree={G.degree} order={G.order}")
    out.extend(format_permutation(g) for g in G.generators)
    return "\n".join(out) + "\n"
