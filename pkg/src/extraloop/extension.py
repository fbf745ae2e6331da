"""Loop extensions B x_tau^psi G, associator seeds, and the named constructions.

``B`` is always a boolean group of rank r with elements 0..2^r-1 (bit i is
the coefficient of basis element e_{i+1}); addition is XOR. ``G`` is a finite
abelian group in mixed radix. An element (a, u) of an extension has index
``a * |G| + u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product
from math import prod

import numpy as np

from .errors import AssertionFailure, ConsistencyError, InputError
from .loop import FiniteLoop, cyclic, is_extra
from .structure import Subloop, center, direct_product, is_normal, nucleus, quotient


@dataclass(frozen=True)
class AbelianGroup:
    """Direct sum of cyclic groups Z_m1 + ... + Z_mk, first summand least significant."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if any(m < 1 for m in self.moduli):
            raise InputError("moduli must be positive")

    @classmethod
    def boolean(cls, rank: int) -> "AbelianGroup":
        return cls((2,) * rank)

    @classmethod
    def cyclic(cls, m: int) -> "AbelianGroup":
        return cls((m,))

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def is_boolean(self) -> bool:
        return all(m == 2 for m in self.moduli)

    def digits(self, u: int) -> list[int]:
        out = []
        for m in self.moduli:
            out.append(u % m)
            u //= m
        return out

    def encode(self, digits) -> int:
        u, scale = 0, 1
        for d, m in zip(digits, self.moduli):
            u += (d % m) * scale
            scale *= m
        return u

    @property
    def add(self) -> np.ndarray:
        cached = self.__dict__.get("_add")
        if cached is None:
            size = self.order
            D = np.array([self.digits(u) for u in range(size)], dtype=np.int64).reshape(size, -1)
            mods = np.array(self.moduli, dtype=np.int64)
            scale = np.cumprod(np.concatenate([[1], mods[:-1]])) if len(mods) else np.array([], dtype=np.int64)
            S = (D[:, None, :] + D[None, :, :]) % mods
            cached = (S * scale).sum(axis=-1).astype(np.int64)
            object.__setattr__(self, "_add", cached)
        return cached

    @property
    def neg(self) -> np.ndarray:
        return np.argmin(self.add, axis=1) if self.order else np.zeros(0, dtype=np.int64)

    def as_loop(self) -> FiniteLoop:
        return FiniteLoop(self.add)

    def is_automorphism(self, perm) -> bool:
        perm = np.asarray(perm)
        if sorted(perm.tolist()) != list(range(self.order)):
            return False
        return bool((perm[self.add] == self.add[perm[:, None], perm[None, :]]).all())

    def matrix_automorphism(self, rows) -> np.ndarray:
        """Automorphism of a boolean group from images of the basis (bitmasks)."""
        if not self.is_boolean:
            raise InputError("matrix automorphisms need a boolean coefficient group")
        perm = np.zeros(self.order, dtype=np.int64)
        for u in range(self.order):
            v = 0
            for j, r in enumerate(rows):
                if (u >> j) & 1:
                    v ^= r
            perm[u] = v
        if not self.is_automorphism(perm):
            raise InputError("matrix is not invertible")
        return perm

    def unit_automorphism(self, k: int) -> np.ndarray:
        if len(self.moduli) != 1:
            raise InputError("unit automorphisms need a cyclic coefficient group")
        m = self.moduli[0]
        perm = (np.arange(m) * k) % m
        if not self.is_automorphism(perm):
            raise InputError(f"{k} is not a unit mod {m}")
        return perm


def extend_action(rank: int, G: AbelianGroup, basis_autos) -> np.ndarray:
    """tau_b for every b in B from tau_e on the basis; row b is u -> u tau_b.

    Checks that each tau_e is an automorphism, that they commute pairwise and
    square to the identity, so that e -> tau_e extends to a homomorphism.
    """
    basis_autos = [np.asarray(t, dtype=np.int64) for t in basis_autos]
    if len(basis_autos) != rank:
        raise InputError(f"need {rank} basis automorphisms, got {len(basis_autos)}")
    ident = np.arange(G.order)
    for i, t in enumerate(basis_autos):
        if not G.is_automorphism(t):
            raise InputError(f"tau_e{i + 1} is not an automorphism of G")
        if not (t[t] == ident).all():
            raise InputError(f"tau_e{i + 1} is not an involution")
    for s, t in product(basis_autos, repeat=2):
        if not (s[t] == t[s]).all():
            raise InputError("basis automorphisms do not commute")
    out = np.empty((1 << rank, G.order), dtype=np.int64)
    out[0] = ident
    for b in range(1, 1 << rank):
        low = (b & -b).bit_length() - 1
        # u tau_b = (u tau_{b - e}) tau_e
        out[b] = basis_autos[low][out[b ^ (1 << low)]]
    return out


def trivial_action(rank: int, G: AbelianGroup) -> np.ndarray:
    return np.tile(np.arange(G.order), (1 << rank, 1))


def extension_loop(rank: int, G: AbelianGroup, tau: np.ndarray, psi, verify: bool = True,
                   name: str = "") -> FiniteLoop:
    """B x_tau^psi G with (a,u)(b,v) = (a+b, psi(a,b) + u tau_b + v)."""
    nB, nG = 1 << rank, G.order
    psi = np.asarray(psi, dtype=np.int64)
    tau = np.asarray(tau, dtype=np.int64)
    if psi.shape != (nB, nB):
        raise InputError(f"psi must be a {nB}x{nB} table")
    if psi.min() < 0 or psi.max() >= nG:
        raise InputError("psi values must be elements of G")
    if (psi[0] != 0).any() or (psi[:, 0] != 0).any():
        raise InputError("psi must vanish when either argument is 0")
    if tau.shape != (nB, nG):
        raise InputError(f"tau must have shape {(nB, nG)}")
    add = G.add
    a = np.arange(nB)
    c = a[:, None] ^ a[None, :]  # [a, b]
    part = add[psi[:, None, :, None], tau.T[None, :, :, None]]  # [a, u, b, 1]
    w = add[part, np.arange(nG)[None, None, None, :]]  # [a, u, b, v]
    table = c[:, None, :, None] * nG + w
    L = FiniteLoop(table.reshape(nB * nG, nB * nG), name=name)
    if verify:
        check_division_formulas(L, rank, G, tau, psi)
        sub = L.table[:nG, :nG]
        if not (sub == add).all():
            raise AssertionFailure("{0} x G is not a copy of G")
        if not is_normal(L, Subloop(L, tuple(range(nG)))):
            raise AssertionFailure("{0} x G is not normal")
    return L


def check_division_formulas(L: FiniteLoop, rank: int, G: AbelianGroup, tau, psi) -> None:
    """Compare L's divisions with the closed forms

    (a,u)\\(c,w) = (a+c, w - psi(a,a+c) - u tau_a tau_c)
    (c,w)/(b,v) = (b+c, w tau_b - psi(b+c,b) tau_b - v tau_b).
    """
    nB, nG = 1 << rank, G.order
    add, neg = G.add, G.neg
    a = np.arange(nB)[:, None, None, None]
    u = np.arange(nG)[None, :, None, None]
    c = np.arange(nB)[None, None, :, None]
    w = np.arange(nG)[None, None, None, :]
    ac = a ^ c
    val = add[add[w, neg[psi[a, ac]]], neg[tau[ac, u]]]
    expect = (ac * nG + val).reshape(nB * nG, nB * nG)
    if not (L.ld == expect).all():
        raise AssertionFailure("left division disagrees with the closed form")
    # y = (c, w) / (b, v): rows index (c, w), columns (b, v)
    b = np.arange(nB)[None, None, :, None]
    v = np.arange(nG)[None, None, None, :]
    cc = np.arange(nB)[:, None, None, None]
    ww = np.arange(nG)[None, :, None, None]
    bc = b ^ cc
    tb = tau[b]  # [1,1,b,1,nG] after indexing below
    term1 = tau[b, ww]
    term2 = neg[tau[b, psi[bc, b]]]
    term3 = neg[tau[b, v]]
    val = add[add[term1, term2], term3]
    del tb
    expect = (bc * nG + val).reshape(nB * nG, nB * nG)
    if not (L.rd == expect).all():
        raise AssertionFailure("right division disagrees with the closed form")


def derived_associator(rank: int, G: AbelianGroup, tau, psi) -> np.ndarray:
    """psi(a+b,c) + psi(a,b) tau_c - psi(a,b+c) - psi(b,c), indexed [a, b, c]."""
    nB = 1 << rank
    add, neg = G.add, G.neg
    a = np.arange(nB)[:, None, None]
    b = np.arange(nB)[None, :, None]
    c = np.arange(nB)[None, None, :]
    first = add[psi[a ^ b, c], tau[c, psi[a, b]]]
    second = add[psi[a, b ^ c], psi[b, c]]
    return add[first, neg[second]]


# --- associator seeds -------------------------------------------------------


def seed_array(rank: int, entries: dict, symmetric: bool = True) -> np.ndarray:
    """Basis seed alpha[i, j, k] (0-based basis indices) from a dict.

    With ``symmetric`` each entry is copied to all orderings of its indices;
    conflicting entries raise.
    """
    alpha = np.zeros((rank, rank, rank), dtype=np.int64)
    setby = {}
    for (i, j, k), val in entries.items():
        keys = set(permutations((i, j, k))) if symmetric else {(i, j, k)}
        for key in keys:
            if key in setby and setby[key] != val:
                raise InputError(f"conflicting alpha values for e{key[0] + 1} e{key[1] + 1} e{key[2] + 1}")
            setby[key] = val
            alpha[key] = val
    return alpha


def check_seed_hf(rank: int, G: AbelianGroup, tau, alpha) -> list[str]:
    """Violations of H1-H3 and F1-F3 on basis arguments."""
    add = G.add
    basis_tau = [tau[1 << i] for i in range(rank)]
    bad = []
    rng = range(rank)
    for a, b, c in product(rng, repeat=3):
        v = alpha[a, b, c]
        for pos, e in (("F1", a), ("F2", b), ("F3", c)):
            if basis_tau[e][v] != v:
                bad.append(f"{pos} at e{a + 1} e{b + 1} e{c + 1}")
    for x1, x2, b, c in product(rng, repeat=4):
        for tag, f in (("H1", lambda x: alpha[x, b, c]),
                       ("H2", lambda x: alpha[b, x, c]),
                       ("H3", lambda x: alpha[b, c, x])):
            lhs = add[basis_tau[x2][f(x1)], f(x2)]
            rhs = add[f(x1), basis_tau[x1][f(x2)]]
            if lhs != rhs:
                bad.append(f"{tag} at e{x1 + 1} e{x2 + 1} / e{b + 1} e{c + 1}")
    return bad


def _extend_trilinear(rank: int, G: AbelianGroup, tau, alpha) -> np.ndarray:
    """Extend a basis seed one argument at a time with P3, P2, P1."""
    nB = 1 << rank
    add = G.add
    lows = [(b & -b).bit_length() - 1 for b in range(nB)]
    # third argument
    a3 = np.zeros((rank, rank, nB), dtype=np.int64)
    for c in range(1, nB):
        e, rest = lows[c], c ^ (1 << lows[c])
        a3[:, :, c] = add[tau[rest][alpha[:, :, e]], a3[:, :, rest]]
    a2 = np.zeros((rank, nB, nB), dtype=np.int64)
    for b in range(1, nB):
        e, rest = lows[b], b ^ (1 << lows[b])
        a2[:, b, :] = add[tau[rest][a3[:, e, :]], a2[:, rest, :]]
    out = np.zeros((nB, nB, nB), dtype=np.int64)
    for a in range(1, nB):
        e, rest = lows[a], a ^ (1 << lows[a])
        out[a] = add[tau[rest][a2[e]], out[rest]]
    return out


def check_extended(rank: int, G: AbelianGroup, tau, abar) -> list[str]:
    """Violations of H, F and P identities over all of B."""
    nB = 1 << rank
    add = G.add
    bad = []
    x1 = np.arange(nB)[:, None, None, None]
    x2 = np.arange(nB)[None, :, None, None]
    b = np.arange(nB)[None, None, :, None]
    c = np.arange(nB)[None, None, None, :]
    views = {
        1: lambda x, y, z: abar[x, y, z],
        2: lambda x, y, z: abar[y, x, z],
        3: lambda x, y, z: abar[y, z, x],
    }
    for k, f in views.items():
        f1, f2 = f(x1, b, c), f(x2, b, c)
        if not (add[tau[x2, f1], f2] == add[f1, tau[x1, f2]]).all():
            bad.append(f"H{k}")
        if not (f(x1 ^ x2, b, c) == add[tau[x2, f1], f2]).all():
            bad.append(f"P{k}")
    a = np.arange(nB)[:, None, None]
    bb = np.arange(nB)[None, :, None]
    cc = np.arange(nB)[None, None, :]
    v = abar
    for tag, idx in (("F1", a), ("F2", bb), ("F3", cc)):
        if not (tau[idx, v] == v).all():
            bad.append(tag)
    return bad


def extend_alpha(rank: int, G: AbelianGroup, tau, alpha) -> np.ndarray:
    """The unique extension of a basis seed to B^3 satisfying H, F and P."""
    if not G.is_boolean:
        raise InputError("associator seeds need a boolean coefficient group")
    alpha = np.asarray(alpha, dtype=np.int64)
    if alpha.shape != (rank, rank, rank):
        raise InputError("seed must be indexed by basis triples")
    bad = check_seed_hf(rank, G, tau, alpha)
    if bad:
        raise InputError("seed inconsistent with tau: " + ", ".join(bad[:5]))
    abar = _extend_trilinear(rank, G, tau, alpha)
    bad = check_extended(rank, G, tau, abar)
    if bad:
        raise ConsistencyError("extended map violates " + ", ".join(bad))
    if _is_symmetric(alpha) and not _is_symmetric(abar):
        raise ConsistencyError("extension of a symmetric seed is not symmetric")
    if _is_alternating(alpha) and not _is_alternating(abar):
        raise ConsistencyError("extension of an alternating seed is not alternating")
    return abar


def _is_symmetric(x: np.ndarray) -> bool:
    return all((x == x.transpose(p)).all() for p in permutations(range(3)))


def _is_alternating(x: np.ndarray) -> bool:
    n = x.shape[0]
    i = np.arange(n)
    return bool((x[i, i, :] == 0).all())


def check_build_extra_hypotheses(rank: int, G: AbelianGroup, tau, alpha) -> list[str]:
    """Hypotheses 1-3 for constructing psi from a seed."""
    add = G.add
    bad = []
    if not _is_symmetric(alpha):
        bad.append("alpha is not symmetric")
    if not _is_alternating(alpha):
        bad.append("alpha(e, e, f) != 0")
    bt = [tau[1 << i] for i in range(rank)]
    for e1, e2, e3, e4 in product(range(rank), repeat=4):
        lhs = add[bt[e4][alpha[e1, e2, e3]], alpha[e1, e2, e4]]
        rhs = add[alpha[e1, e2, e3], bt[e3][alpha[e1, e2, e4]]]
        if lhs != rhs:
            bad.append(f"condition 3 fails at e{e1 + 1} e{e2 + 1} e{e3 + 1} e{e4 + 1}")
    return bad


def _psi_from_order(rank, G, abar, bits, c) -> int:
    """sum_j abar(e_j, e_1 + ... + e_{j-1}, c) over the listed basis indices."""
    add = G.add
    acc, prefix = 0, 0
    for i in bits:
        acc = add[acc, abar[1 << i, prefix, c]]
        prefix ^= 1 << i
    return int(acc)


def build_psi(rank: int, G: AbelianGroup, tau, alpha) -> np.ndarray:
    """The unique psi making B x_tau^psi G extra with the seed's associators
    on the basis, basis elements of order 2 commuting, and psi(e, .) = 0."""
    alpha = np.asarray(alpha, dtype=np.int64)
    bad = check_build_extra_hypotheses(rank, G, tau, alpha)
    if bad:
        raise InputError("; ".join(bad[:5]))
    abar = extend_alpha(rank, G, tau, alpha)
    nB = 1 << rank
    psi = np.zeros((nB, nB), dtype=np.int64)
    for a in range(nB):
        bits = [i for i in range(rank) if (a >> i) & 1]
        for c in range(nB):
            fwd = _psi_from_order(rank, G, abar, bits, c)
            rev = _psi_from_order(rank, G, abar, bits[::-1], c)
            if fwd != rev:
                raise ConsistencyError(f"psi({a},{c}) depends on the order of the basis sum")
            psi[a, c] = fwd
    return psi


def verify_built_psi(rank: int, G: AbelianGroup, tau, alpha, psi, L: FiniteLoop | None = None) -> FiniteLoop:
    """Check conditions (a)-(d) on a constructed psi; returns the loop."""
    nB, nG = 1 << rank, G.order
    if (psi[0] != 0).any() or (psi[:, 0] != 0).any():
        raise AssertionFailure("psi does not vanish on 0")
    for i in range(rank):
        if (psi[1 << i] != 0).any():
            raise AssertionFailure(f"psi(e{i + 1}, b) != 0")
    if L is None:
        L = extension_loop(rank, G, tau, psi)
    if not is_extra(L):
        raise AssertionFailure("constructed loop is not extra")
    basis = [(1 << i) * nG for i in range(rank)]
    for i, x in enumerate(basis):
        if L.table[x, x] != 0:
            raise AssertionFailure(f"(e{i + 1},0) does not have order 2")
        for j, y in enumerate(basis):
            if L.table[x, y] != L.table[y, x]:
                raise AssertionFailure(f"(e{i + 1},0) and (e{j + 1},0) do not commute")
            for k, z in enumerate(basis):
                if L.associator(x, y, z) != int(alpha[i, j, k]):
                    raise AssertionFailure(f"associator of e{i + 1} e{j + 1} e{k + 1} differs from alpha")
    del nB
    return L


@dataclass
class ExtensionSpec:
    """Inputs of B x_tau^psi G: rank of B, G, tau on the basis, and alpha or psi."""

    rank: int
    G: AbelianGroup
    basis_tau: list = field(default_factory=list)
    alpha: np.ndarray | None = None
    psi: np.ndarray | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise InputError("rank must be non-negative")
        if not self.basis_tau:
            self.basis_tau = [np.arange(self.G.order)] * self.rank
        if self.alpha is not None and self.psi is not None:
            raise InputError("give at most one of alpha and psi")

    @property
    def tau(self) -> np.ndarray:
        return extend_action(self.rank, self.G, self.basis_tau)

    def resolved_psi(self) -> np.ndarray:
        if self.psi is not None:
            return np.asarray(self.psi, dtype=np.int64)
        if self.alpha is not None:
            return build_psi(self.rank, self.G, self.tau, self.alpha)
        nB = 1 << self.rank
        return np.zeros((nB, nB), dtype=np.int64)

    def build(self, verify: bool = True, name: str = "") -> FiniteLoop:
        tau = self.tau
        psi = self.resolved_psi()
        L = extension_loop(self.rank, self.G, tau, psi, verify=verify, name=name)
        if verify and self.alpha is not None:
            verify_built_psi(self.rank, self.G, tau, self.alpha, psi, L)
        return L


# --- semidirect products ----------------------------------------------------


def extend_loop_action(B: FiniteLoop, G: FiniteLoop, gen_autos: dict) -> np.ndarray:
    """tau_b for all b from a dict on generators of B; row b is u -> u tau_b.

    Extension follows tau_{ag} = tau_a tau_g; the result is validated as a
    homomorphism on all pairs.
    """
    nB, nG = B.n, G.n
    out = np.full((nB, nG), -1, dtype=np.int64)
    out[0] = np.arange(nG)
    gens = {int(k): np.asarray(v, dtype=np.int64) for k, v in gen_autos.items()}
    stack = [0]
    while stack:
        a = stack.pop()
        for g, tg in gens.items():
            b = int(B.table[a, g])
            val = tg[out[a]]
            if out[b, 0] < 0:
                out[b] = val
                stack.append(b)
    if (out < 0).any():
        raise InputError("given elements do not generate B")
    check_action(B, G, out)
    return out


def check_action(B: FiniteLoop, G: FiniteLoop, tau: np.ndarray) -> None:
    nG = G.n
    for b in range(B.n):
        t = tau[b]
        if sorted(t.tolist()) != list(range(nG)) or not (t[G.table] == G.table[t[:, None], t[None, :]]).all():
            raise InputError(f"tau_{b} is not an automorphism of G")
    comp = np.take_along_axis(tau[None, :, :].repeat(B.n, 0), tau[:, None, :].repeat(B.n, 1), axis=2)
    # comp[a, b] = tau_a followed by tau_b
    if not (comp == tau[B.table]).all():
        raise InputError("tau is not a homomorphism B -> Aut(G)")


def semidirect(B: FiniteLoop, G: FiniteLoop, tau, require_extra: bool = True, name: str = "") -> FiniteLoop:
    """B x_tau G with (a,u)(b,v) = (ab, (u tau_b) v), index a * |G| + u.

    ``tau`` is either a full (|B|, |G|) array or a dict on generators of B.
    """
    if isinstance(tau, dict):
        tau = extend_loop_action(B, G, tau)
    else:
        tau = np.asarray(tau, dtype=np.int64)
        check_action(B, G, tau)
    nB, nG = B.n, G.n
    gt = G.table
    part = tau.T[None, :, :, None]  # [1, u, b, 1] -> u tau_b
    w = gt[part, np.arange(nG)[None, None, None, :]]
    w = np.broadcast_to(w, (nB, nG, nB, nG))
    table = B.table[:, None, :, None] * nG + w
    L = FiniteLoop(table.reshape(nB * nG, nB * nG), name=name)
    # (a,u)^-1 = (a^-1, (u^-1) tau_{a^-1})
    for a in range(nB):
        ai = int(B.ld[a, 0])
        for u in range(nG):
            ui = int(G.ld[u, 0])
            if L.inv(a * nG + u) != ai * nG + int(tau[ai, ui]):
                raise AssertionFailure("inverse formula fails in the semidirect product")
    if require_extra and not is_extra(L):
        raise AssertionFailure("semidirect product is not extra")
    return L


def sign_action(B: FiniteLoop, kernel, m: int) -> np.ndarray:
    """tau_b = identity on Z_m for b in ``kernel``, negation otherwise."""
    ker = set(int(k) for k in kernel)
    ident = np.arange(m)
    neg = (-ident) % m
    return np.array([ident if b in ker else neg for b in range(B.n)], dtype=np.int64)


# --- named constructions ----------------------------------------------------

FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


def octonion_signs(triples=FANO_TRIPLES):
    """(index, sign) tables for e_i e_j over i, j in 0..7."""
    idx = np.zeros((8, 8), dtype=np.int64)
    sgn = np.ones((8, 8), dtype=np.int64)
    for i in range(8):
        idx[0, i] = idx[i, 0] = i
    for i in range(1, 8):
        idx[i, i] = 0
        sgn[i, i] = -1
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            idx[x, y], sgn[x, y] = z, 1
            idx[y, x], sgn[y, x] = z, -1
    return idx, sgn


def cayley_loop(triples=FANO_TRIPLES, verify: bool = True) -> FiniteLoop:
    """The 16 units +-e_i of the octonions; +e_i has index 2i, -e_i index 2i+1."""
    idx, sgn = octonion_signs(triples)
    table = np.zeros((16, 16), dtype=np.int64)
    for x, y in product(range(16), repeat=2):
        i, s = divmod(x, 2)
        j, t = divmod(y, 2)
        neg = (s + t + (sgn[i, j] < 0)) % 2
        table[x, y] = 2 * idx[i, j] + neg
    L = FiniteLoop(table, name="cayley")
    if verify:
        if not is_extra(L):
            raise AssertionFailure("octonion sign convention does not give an extra loop")
        N = nucleus(L)
        if N.elements != (0, 1):
            raise AssertionFailure("Cayley loop nucleus is not {1, -1}")
        for x in range(2, 16):
            if L.element_order(x) != 4:
                raise AssertionFailure("an imaginary unit does not have order 4")
    return L


def canonical16_spec() -> ExtensionSpec:
    G = AbelianGroup.boolean(1)
    alpha = seed_array(3, {(0, 1, 2): 1})
    return ExtensionSpec(3, G, alpha=alpha)


def canonical16() -> FiniteLoop:
    """The order-16 extra loop in which every element outside the nucleus has order 2."""
    return canonical16_spec().build(name="canonical16")


def example512_spec() -> ExtensionSpec:
    G = AbelianGroup.boolean(5)
    basis_tau = []
    for k in range(1, 5):
        # q_0 fixed, q_j -> q_j + delta_{jk} q_0
        rows = [1 << j for j in range(5)]
        rows[k] |= 1
        basis_tau.append(G.matrix_automorphism(rows))
    entries = {}
    for i, j, k in product(range(4), repeat=3):
        if len({i, j, k}) == 3:
            (ell,) = set(range(4)) - {i, j, k}
            entries[(i, j, k)] = 1 << (ell + 1)
    return ExtensionSpec(4, G, basis_tau, alpha=seed_array(4, entries))


def example512(verify: bool = True) -> FiniteLoop:
    L = example512_spec().build(verify=verify, name="example512")
    if verify:
        Z = center(L)
        if Z.elements != (0, 1):
            raise AssertionFailure("Z(Q) is not {(0,0), (q0,0)}")
    return L


def alternating_group(k: int) -> FiniteLoop:
    from itertools import permutations as perms

    from .loop import group_from_permutations

    def parity(p):
        s, seen = 0, set()
        for i in range(len(p)):
            if i in seen:
                continue
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = p[j]
                length += 1
            s += length - 1
        return s % 2

    return group_from_permutations([p for p in perms(range(k)) if parity(p) == 0])


def central_involutions(G: FiniteLoop) -> list[int]:
    Z = center(G)
    return [z for z in Z.elements if z != 0 and G.table[z, z] == 0]


def nucleus_realization(G: FiniteLoop, involution: int | None = None, verify: bool = True) -> FiniteLoop:
    """(G x C)/M for the Cayley loop C and M = {(1,1), (-1,-1)}."""
    from .iso import find_isomorphism
    from .loop import is_group

    if not is_group(G):
        raise InputError("nucleus realization needs a group")
    choices = central_involutions(G)
    if not choices:
        raise InputError("group has no central element of order 2")
    z = choices[0] if involution is None else int(involution)
    if z not in choices:
        raise InputError(f"element {z} is not a central involution")
    C = cayley_loop(verify=False)
    P = direct_product(G, C)
    M = Subloop(P, (0, z * 16 + 1))
    Q = quotient(P, M)
    if verify:
        if Q.n != 8 * G.n:
            raise AssertionFailure("|Q : G| != 8")
        N = nucleus(Q)
        if find_isomorphism(N.as_loop(), G) is None:
            raise AssertionFailure("N(Q) is not isomorphic to G")
        if center(Q).order != center(G).order:
            raise AssertionFailure("|Z(Q)| != |Z(G)|")
    return Q


def loop960(verify: bool = True) -> FiniteLoop:
    G = direct_product(cyclic(2), alternating_group(5))
    Q = nucleus_realization(G, verify=verify)
    return FiniteLoop(Q.table, name="loop960")


@dataclass
class SemidirectDecomposition:
    B: Subloop
    G: Subloop
    tau: dict
    rebuilt: FiniteLoop
    isomorphism: np.ndarray


def issemi_decompose(L: FiniteLoop):
    """Split an extra loop with abelian nucleus as B x_tau G.

    B is a Sylow 2-subloop, G the odd part of N, tau_a = T_a on G. Returns
    None when the nucleus is not abelian.
    """
    from .iso import find_isomorphism
    from .sylow import sylow_subloops

    N = nucleus(L)
    e = np.asarray(N.elements)
    if (L.table[np.ix_(e, e)] != L.table[np.ix_(e, e)].T).any():
        return None
    odd = [x for x in N.elements if (L.element_order(x) or 0) % 2 == 1]
    G = Subloop.from_mask(L, L.generated(odd))
    fam = sylow_subloops(L, 2, verify=False)
    B = fam.members[0]
    Gl, Bl = G.as_loop(), B.as_loop()
    gpos = {g: i for i, g in enumerate(G.elements)}
    tau = np.zeros((B.order, G.order), dtype=np.int64)
    for i, a in enumerate(B.elements):
        Ta = L.T(a)
        img = [gpos.get(int(Ta[g]), -1) for g in G.elements]
        if -1 in img:
            raise AssertionFailure("T_a does not preserve O^2(N)")
        tau[i] = img
        if not (tau[i][tau[i]] == np.arange(G.order)).all():
            raise AssertionFailure("(tau_a)^2 != I")
    rebuilt = semidirect(Bl, Gl, tau)
    # explicit map (a, u) -> a u
    explicit = np.array([L.table[a, g] for a in B.elements for g in G.elements])
    if not (L.table[np.ix_(explicit, explicit)] == explicit[rebuilt.table]).all():
        raise AssertionFailure("(a, u) -> au is not an isomorphism")
    if len(np.unique(explicit)) != L.n:
        raise AssertionFailure("(a, u) -> au is not a bijection")
    phi = explicit
    # independent search on loops small enough for it
    if L.n <= 256 and find_isomorphism(rebuilt, L) is None:
        raise AssertionFailure("semidirect reconstruction is not isomorphic")
    return SemidirectDecomposition(B, G, {a: tau[i] for i, a in enumerate(B.elements)}, rebuilt, phi)


# --- the infinite example, checked on a finite basis ------------------------


def _span(vectors) -> set[int]:
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return span


def infinite_example_cases(rank: int) -> dict[str, list[int]]:
    """Check the seed-compatibility condition for the wreath-style example.

    B has rank ``rank``; G is Z_2^B encoded as bitmasks over B's elements,
    with (u tau_a)(b) = u(a + b). Returns case -> [count, failures].
    """
    if rank < 3:
        raise InputError("rank must be at least 3")
    nB = 1 << rank

    def shift(u: int, a: int) -> int:
        return sum(1 << b for b in range(nB) if (u >> (a ^ b)) & 1)

    def indicator(vectors) -> int:
        return sum(1 << s for s in _span(vectors))

    basis = [1 << i for i in range(rank)]

    def alpha(x, y, z):
        if len({x, y, z}) < 3:
            return 0
        return indicator([x, y, z])

    cases = {k: [0, 0] for k in ("e1=e2", "e3 in {e1,e2}", "e4 in {e1,e2}", "e3=e4", "distinct")}
    for e1, e2, e3, e4 in product(basis, repeat=4):
        u = shift(alpha(e1, e2, e3), e4) ^ alpha(e1, e2, e4)
        v = alpha(e1, e2, e3) ^ shift(alpha(e1, e2, e4), e3)
        if e1 == e2:
            case, expect = "e1=e2", 0
        elif e3 in (e1, e2):
            case, expect = "e3 in {e1,e2}", alpha(e1, e2, e4)
        elif e4 in (e1, e2):
            case, expect = "e4 in {e1,e2}", alpha(e1, e2, e3)
        elif e3 == e4:
            case, expect = "e3=e4", 0
        else:
            # supports overlap on e4 + <e1, e2>, leaving <e1, e2> and its e3 + e4 coset
            plane = _span([e1, e2])
            expect = sum(1 << s for s in plane | {x ^ e3 ^ e4 for x in plane})
            case = "distinct"
        cases[case][0] += 1
        if not (u == v == expect):
            cases[case][1] += 1
    return cases


def infinite_example_condition_check(rank: int) -> bool:
    return all(fail == 0 for _, fail in infinite_example_cases(rank).values())
