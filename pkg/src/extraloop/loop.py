"""Finite loops as Cayley tables, and exhaustive identity checking."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import InputError


@dataclass(frozen=True, eq=False)
class FiniteLoop:
    """A loop on ``0..n-1`` with identity 0 given by its Cayley table.

    ``table[x, y]`` is the product ``xy``. Translations are stored as index
    arrays acting on the right: ``R(y)[x] == L(x)[y] == xy``.
    """

    table: np.ndarray
    name: str = ""
    relabel: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        t = np.ascontiguousarray(self.table, dtype=np.int32)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise InputError(f"table must be a non-empty square array, got shape {t.shape}")
        if not kernels.is_latin(t):
            raise InputError("table is not a Latin square on 0..n-1")
        n = t.shape[0]
        ident = np.arange(n, dtype=np.int32)
        if not ((t[0] == ident).all() and (t[:, 0] == ident).all()):
            raise InputError("element 0 is not a two-sided identity")
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    @classmethod
    def from_rows(cls, rows, name: str = "") -> "FiniteLoop":
        """Build from an arbitrary Latin square with some identity element,
        renumbering so that the identity becomes 0."""
        t = np.asarray(rows, dtype=np.int64)
        n = t.shape[0]
        if t.ndim != 2 or t.shape[1] != n:
            raise InputError(f"table must be square, got shape {t.shape}")
        ident = np.arange(n)
        for e in range(n):
            if (t[e] == ident).all() and (t[:, e] == ident).all():
                break
        else:
            raise InputError("table has no two-sided identity element")
        if e == 0:
            return cls(t, name=name)
        perm = ident.copy()
        perm[0], perm[e] = e, 0
        # perm is an involution: new index i corresponds to old perm[i]
        new = perm[t[np.ix_(perm, perm)]]
        return cls(new, name=name, relabel=tuple(int(v) for v in perm))

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteLoop{label} n={self.n}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteLoop) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    @cached_property
    def ld(self) -> np.ndarray:
        """``ld[x, y] = x\\y``, the z with xz = y."""
        out = np.empty_like(self.table)
        rows = np.arange(self.n)[:, None]
        out[rows, self.table] = np.arange(self.n, dtype=np.int32)[None, :]
        out.flags.writeable = False
        return out

    @cached_property
    def rd(self) -> np.ndarray:
        """``rd[y, x] = y/x``, the z with zx = y."""
        out = np.empty_like(self.table)
        cols = np.arange(self.n)[None, :]
        out[self.table, cols] = np.arange(self.n, dtype=np.int32)[:, None]
        out.flags.writeable = False
        return out

    def _check(self, *elems: int) -> None:
        for e in elems:
            if not 0 <= e < self.n:
                raise InputError(f"element {e} out of range 0..{self.n - 1}")

    def mul(self, x: int, y: int) -> int:
        self._check(x, y)
        return int(self.table[x, y])

    def ldiv(self, x: int, y: int) -> int:
        """x\\y."""
        self._check(x, y)
        return int(self.ld[x, y])

    def rdiv(self, y: int, x: int) -> int:
        """y/x."""
        self._check(x, y)
        return int(self.rd[y, x])

    def inv(self, x: int) -> int:
        """Right inverse: the z with xz = 0."""
        self._check(x)
        return int(self.ld[x, 0])

    def R(self, y: int) -> np.ndarray:
        return self.table[:, y]

    def L(self, x: int) -> np.ndarray:
        return self.table[x]

    def T(self, x: int) -> np.ndarray:
        """Middle inner mapping ``t -> x\\(tx)``."""
        return self.ld[x, self.table[:, x]]

    def power(self, x: int, k: int) -> int:
        """Right-associated power x(x(...x)), with x^0 = 0."""
        self._check(x)
        v = 0
        for _ in range(k):
            v = int(self.table[x, v])
        return v

    def commutator(self, x: int, y: int) -> int:
        """[x,y] defined by xy = (yx)[x,y]."""
        return int(self.ld[self.table[y, x], self.table[x, y]])

    def associator(self, x: int, y: int, z: int) -> int:
        """(x,y,z) defined by (x.yz)(x,y,z) = xy.z."""
        t = self.table
        return int(self.ld[t[x, t[y, z]], t[t[x, y], z]])

    def associator_table(self) -> np.ndarray:
        """Full n x n x n associator array; only sensible for small n."""
        t = self.table
        xy_z = t[t[:, :, None], np.arange(self.n)[None, None, :]]
        x_yz = t[np.arange(self.n)[:, None, None], t[None, :, :]]
        return self.ld[x_yz, xy_z]

    def generated(self, seeds) -> np.ndarray:
        """Boolean mask of the subloop generated by ``seeds``."""
        seeds = [int(s) for s in seeds]
        self._check(*seeds)
        return kernels.closure(self.table, np.zeros(self.n, dtype=bool), seeds)

    def subloop_table(self, elements) -> "FiniteLoop":
        """The subloop on ``elements`` (sorted, containing 0) renumbered
        ``0..k-1`` in ascending order."""
        elems = np.asarray(sorted(int(e) for e in elements))
        index = np.full(self.n, -1, dtype=np.int64)
        index[elems] = np.arange(len(elems))
        sub = index[self.table[np.ix_(elems, elems)]]
        if (sub < 0).any():
            raise InputError("elements are not closed under multiplication")
        return FiniteLoop(sub)

    def is_associative_on(self, elements) -> bool:
        e = np.asarray(list(elements))
        t = self.table
        a = t[t[np.ix_(e, e)][:, :, None], e[None, None, :]]
        b = t[e[:, None, None], t[np.ix_(e, e)][None, :, :]]
        return bool((a == b).all())

    def element_order(self, x: int) -> int | None:
        """Order of x, or None when <x> is not a cyclic group."""
        self._check(x)
        gen = np.flatnonzero(self.generated([x]))
        powers = [0]
        v = int(self.table[x, 0])
        while v != 0 and len(powers) <= len(gen):
            powers.append(v)
            v = int(self.table[x, v])
        if v != 0 or sorted(powers) != gen.tolist():
            return None
        if not self.is_associative_on(gen):
            return None
        return len(powers)

    def order_profile(self) -> tuple[tuple[int, int], ...]:
        """Sorted (order, count) pairs; order 0 marks non-power-associative elements."""
        counts: dict[int, int] = {}
        for x in range(self.n):
            k = self.element_order(x) or 0
            counts[k] = counts.get(k, 0) + 1
        return tuple(sorted(counts.items()))


@dataclass(frozen=True)
class IdentityReport:
    extra1: bool
    extra2: bool
    extra3: bool
    moufang: bool
    cc: bool
    flexible: bool
    associative: bool
    commutative: bool
    boolean: bool
    power_associative: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def extra(self) -> bool:
        return self.extra1

    def flags(self) -> dict[str, bool]:
        return {
            "extra_eq1": self.extra1,
            "extra_eq2": self.extra2,
            "extra_eq3": self.extra3,
            "moufang": self.moufang,
            "cc": self.cc,
            "flexible": self.flexible,
            "associative": self.associative,
            "commutative": self.commutative,
            "boolean_group": self.boolean,
            "power_associative": self.power_associative,
        }


def check_identities(L: FiniteLoop) -> IdentityReport:
    """Exhaustively evaluate every identity flag on ``L``.

    Each failed flag records its first counterexample in ``witnesses``.
    """
    t = L.table
    w: dict[str, object] = {}

    def tri(code, key):
        hit = kernels.find_identity_failure(t, code)
        if hit is not None:
            w[key] = hit
        return hit is None

    assoc = tri(kernels.ASSOC, "associative")
    e1 = tri(kernels.EXTRA1, "extra_eq1")
    e2 = tri(kernels.EXTRA2, "extra_eq2")
    e3 = tri(kernels.EXTRA3, "extra_eq3")
    mouf = tri(kernels.MOUFANG, "moufang")
    cc_hit = kernels.find_cc_failure(t, L.ld, L.rd)
    if cc_hit is not None:
        w["cc"] = cc_hit
    diag = np.arange(L.n)
    xy_x = t[t, diag[:, None]]
    x_yx = t[diag[:, None], t.T]
    flex_bad = np.argwhere(xy_x != x_yx)
    if len(flex_bad):
        w["flexible"] = tuple(int(v) for v in flex_bad[0])
    comm_bad = np.argwhere(t != t.T)
    if len(comm_bad):
        w["commutative"] = tuple(int(v) for v in comm_bad[0])
    boolean = assoc and len(comm_bad) == 0 and bool((t[diag, diag] == 0).all())
    if not boolean:
        w["boolean_group"] = True
    pa = True
    for x in range(L.n):
        if L.element_order(x) is None:
            w["power_associative"] = x
            pa = False
            break
    return IdentityReport(
        extra1=e1,
        extra2=e2,
        extra3=e3,
        moufang=mouf,
        cc=cc_hit is None,
        flexible=len(flex_bad) == 0,
        associative=assoc,
        commutative=len(comm_bad) == 0,
        boolean=boolean,
        power_associative=pa,
        witnesses=w,
    )


def is_extra(L: FiniteLoop) -> bool:
    return kernels.find_identity_failure(L.table, kernels.EXTRA1) is None


def is_group(L: FiniteLoop) -> bool:
    return kernels.find_identity_failure(L.table, kernels.ASSOC) is None


def right_associated(L: FiniteLoop, elems) -> int:
    """x1(x2(...xn)); the empty product is 0."""
    v = 0
    for e in reversed(list(elems)):
        v = int(L.table[e, v])
    return v


def cyclic(m: int) -> FiniteLoop:
    a = np.arange(m)
    return FiniteLoop((a[:, None] + a[None, :]) % m, name=f"Z{m}")


def boolean_group(rank: int) -> FiniteLoop:
    a = np.arange(1 << rank)
    return FiniteLoop(a[:, None] ^ a[None, :], name=f"Z2^{rank}")


def group_from_permutations(perms) -> FiniteLoop:
    """Cayley table of a permutation group given by all its elements.

    Elements are sorted so the identity comes first; composition applies
    the left factor first.
    """
    perms = sorted(tuple(p) for p in perms)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    tab = np.empty((n, n), dtype=np.int32)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            tab[i, j] = index[tuple(q[v] for v in p)]
    return FiniteLoop.from_rows(tab)
