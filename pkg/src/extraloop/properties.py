"""Property suites for the structure theory of extra loops.

Each check takes a :class:`Context` and returns a :class:`CheckResult`.
Quantifiers are exhaustive for small loops and sampled with a seeded
generator otherwise; the result records which.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import chain, combinations, permutations

import numpy as np

from . import kernels
from .errors import AssertionFailure, ExtraLoopError, ResourceCapError
from .extension import check_division_formulas, derived_associator, issemi_decompose, semidirect
from .loop import FiniteLoop, check_identities, is_group, right_associated
from .multgroups import (PermGroup, a_star, all_left_inner, all_right_inner, inner_mapping_group,
                         right_inner, rmlt)
from .structure import (Subloop, associator_subloop, center, coset_labels, enumerate_subloops,
                        is_normal, nucleus, quotient, quotient_map)
from .sylow import (hall_subloops, is_solvable, prime_factors, sylow_conjugate_in_op,
                    sylow_rmlt_correspondence, sylow_subloops)

EXHAUSTIVE_LIMIT = 48
DEFAULT_SAMPLES = 100_000


@dataclass
class CheckResult:
    tag: str
    status: str  # "pass", "fail" or "n/a"
    tuples: int = 0
    mode: str = "exhaustive"
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status != "fail"


class Context:
    """Cached structure of one loop plus the sampling policy."""

    def __init__(self, loop: FiniteLoop, entry=None, seed: int = 0, samples: int = DEFAULT_SAMPLES,
                 exhaustive_limit: int = EXHAUSTIVE_LIMIT):
        self.L = loop
        self.entry = entry
        self.n = loop.n
        self.t = loop.table.astype(np.int64)
        self.ld = loop.ld.astype(np.int64)
        self.rd = loop.rd.astype(np.int64)
        self.seed = seed
        self.samples = samples
        self.exhaustive = loop.n <= exhaustive_limit
        self.rng = np.random.default_rng(seed)

    @property
    def mode(self) -> str:
        return "exhaustive" if self.exhaustive else "sampled"

    @cached_property
    def identities(self):
        return check_identities(self.L)

    @cached_property
    def extra(self) -> bool:
        return self.identities.extra1

    @cached_property
    def N(self) -> Subloop:
        return nucleus(self.L)

    @cached_property
    def A(self) -> Subloop:
        return associator_subloop(self.L)

    @cached_property
    def Z(self) -> Subloop:
        return center(self.L, self.N)

    @cached_property
    def inv(self) -> np.ndarray:
        return self.ld[:, 0]

    @cached_property
    def nuclear(self) -> np.ndarray:
        return self.N.mask

    def assoc(self, x, y, z):
        t = self.t
        return self.ld[t[x, t[y, z]], t[t[x, y], z]]

    def triples(self):
        """All triples (exhaustive) or ``samples`` random ones, as three arrays."""
        n = self.n
        if self.exhaustive:
            g = np.indices((n, n, n)).reshape(3, -1)
            return g[0], g[1], g[2]
        s = self.rng.integers(0, n, size=(3, self.samples))
        return s[0], s[1], s[2]

    def quadruples(self):
        n = self.n
        if self.exhaustive:
            g = np.indices((n, n, n, n)).reshape(4, -1)
            return g[0], g[1], g[2], g[3]
        s = self.rng.integers(0, n, size=(4, self.samples))
        return s[0], s[1], s[2], s[3]

    def pairs(self, k: int | None = None):
        n = self.n
        if self.exhaustive and k is None:
            g = np.indices((n, n)).reshape(2, -1)
            return g[0], g[1]
        k = k or self.samples
        s = self.rng.integers(0, n, size=(2, k))
        return s[0], s[1]

    def map_sample_size(self) -> int:
        return max(1, -(-self.samples // self.n))

    @cached_property
    def mult(self) -> PermGroup | None:
        if not self.exhaustive:
            return None
        try:
            return rmlt(self.L)
        except ResourceCapError:
            return None

    def is_auto(self, g: np.ndarray) -> bool:
        t = self.t
        return bool((g[t] == t[g[:, None], g[None, :]]).all())

    def T(self, x: int) -> np.ndarray:
        return self.ld[x, self.t[:, x]]


def _na(tag, why="not an extra loop") -> CheckResult:
    return CheckResult(tag, "n/a", 0, "-", why)


def _result(tag, failures: list[str], tuples: int, mode: str) -> CheckResult:
    return CheckResult(tag, "fail" if failures else "pass", int(tuples), mode, "; ".join(failures))


# --- identities -----------------------------------------------------------------


def check_eqns(ctx: Context) -> CheckResult:
    r = ctx.identities
    ok = r.extra1 == r.extra2 == r.extra3 == (r.moufang and r.cc)
    fails = [] if ok else [f"eq1={r.extra1} eq2={r.extra2} eq3={r.extra3} moufang={r.moufang} cc={r.cc}"]
    if r.associative and not all(v for k, v in r.flags().items() if k not in ("commutative", "boolean_group")):
        fails.append("associative table fails another identity")
    return _result("eqns", fails, 5 * ctx.n ** 3, "exhaustive")


def check_extra_assoc(ctx: Context) -> CheckResult:
    """Flexible + nuclear, involutive, symmetric, commuting associators => extra."""
    x, y, z = ctx.triples()
    a = ctx.assoc(x, y, z)
    t = ctx.t
    flexible = ctx.identities.flexible
    in_n = bool(ctx.nuclear[np.flatnonzero(kernels.associator_value_mask(ctx.L.table, ctx.L.ld))].all())
    sq = bool((t[a, a] == 0).all())
    sym = bool((a == ctx.assoc(y, x, z)).all() and (a == ctx.assoc(x, z, y)).all())
    comm = all(bool((t[a, w] == t[w, a]).all()) for w in (x, y, z))
    fails = []
    if flexible and in_n and sq and sym and comm and not ctx.extra:
        fails.append("associator conditions hold but the loop is not extra")
    if ctx.extra and not (flexible and in_n and sq and sym and comm):
        fails.append("extra loop violates an associator condition")
    return _result("extra-assoc", fails, 5 * len(x), ctx.mode)


def check_right_assoc(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("right-assoc")
    t = ctx.t
    comm = t == t.T
    fails, count = [], 0
    if ctx.exhaustive and ctx.n <= 16:
        tuples = [c for k in (2, 3) for c in combinations(range(ctx.n), k)
                  if all(comm[i, j] for i, j in combinations(c, 2))]
    else:
        tuples = []
    # 2! + 3! + 4! + 5! = 152 evaluations per round
    per_len = 200 if ctx.exhaustive else max(200, -(-ctx.samples // 152))
    for k in (4, 5) if ctx.exhaustive and ctx.n <= 16 else (2, 3, 4, 5):
        for _ in range(per_len):
            chosen = [int(ctx.rng.integers(ctx.n))]
            while len(chosen) < k:
                ok = np.flatnonzero(comm[chosen].all(axis=0))
                chosen.append(int(ctx.rng.choice(ok)))
            tuples.append(tuple(chosen))
    for tup in tuples:
        vals = {right_associated(ctx.L, p) for p in permutations(tup)}
        count += len(list(permutations(tup)))
        if len(vals) != 1:
            fails.append(f"commuting tuple {tup} has order-dependent products")
            break
    return _result("right-assoc", fails, count, ctx.mode)


# --- square, Lagrange, p-loop --------------------------------------------------


def check_square(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("square")
    L, t = ctx.L, ctx.t
    fails = []
    if not ctx.nuclear[np.diag(t)].all():
        fails.append("some square is not nuclear")
    QN = quotient(L, ctx.N)
    qt = QN.table
    if not (is_group(QN) and (np.diag(qt) == 0).all() and (qt == qt.T).all()):
        fails.append("Q/N is not boolean")
    odd = [x for x in range(ctx.n) if (L.element_order(x) or 0) % 2 == 1]
    if not ctx.nuclear[odd].all():
        fails.append("an odd-order element is not nuclear")
    tuples = 2 * ctx.n + QN.n ** 3
    # odd-order subloops consist of odd-order elements, so the element check
    # covers them; the explicit enumeration is a second route on small loops
    if ctx.exhaustive:
        subs = enumerate_subloops(L, allowed=lambda k: k % 2 == 1)
        if not all(ctx.nuclear[list(s.elements)].all() for s in subs):
            fails.append("an odd-order subloop leaves N")
        tuples += len(subs)
    return _result("square", fails, tuples, "exhaustive")


def check_lagrange(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("lagrange")
    empty = np.zeros(ctx.n, dtype=bool)
    if ctx.exhaustive:
        x, y = ctx.pairs()
    else:
        x, y = ctx.pairs(256)
    fails = []
    for a, b in zip(x.tolist(), y.tolist()):
        k = int(kernels.closure(ctx.L.table, empty, [a, b]).sum())
        if ctx.n % k:
            fails.append(f"<{a},{b}> has order {k}")
            break
    return _result("lagrange", fails, len(x), ctx.mode)


def check_p_loop(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("p-loop")
    orders = [ctx.L.element_order(x) for x in range(ctx.n)]
    if None in orders:
        return _result("p-loop", ["some element generates no cyclic group"], ctx.n, "exhaustive")
    fails = []
    for p in (2, 3, 5, 7, 11, 13):
        size_ok = set(prime_factors(ctx.n)) <= {p}
        elem_ok = all(set(prime_factors(o)) <= {p} for o in orders)
        if size_ok != elem_ok:
            fails.append(f"p={p}: |Q| p-power {size_ok}, element orders p-powers {elem_ok}")
    return _result("p-loop", fails, 6 * ctx.n, "exhaustive")


# --- associators -------------------------------------------------------------------


def check_assoc(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("assoc")
    t = ctx.t
    x, y, z = ctx.triples()
    a = ctx.assoc(x, y, z)
    fails = []
    for name, other in (("(y,x,z)", ctx.assoc(y, x, z)), ("(x,z,y)", ctx.assoc(x, z, y)),
                        ("(z,y,x)", ctx.assoc(z, y, x))):
        if (a != other).any():
            fails.append(f"(1) associator differs from {name}")
    Nel = np.asarray(ctx.N.elements)
    k = len(x)
    for pos in range(3):
        u = Nel[ctx.rng.integers(0, len(Nel), size=k)]
        args = [x, y, z]
        args[pos] = t[u, args[pos]]
        if (ctx.assoc(*args) != a).any():
            fails.append(f"(2) nuclear translation in position {pos + 1} changes the associator")
    if (ctx.assoc(ctx.inv[x], y, z) != a).any():
        fails.append("(3) (x^-1,y,z) != (x,y,z)")
    for w in (x, y, z):
        if (t[a, w] != t[w, a]).any():
            fails.append("(4) associator does not commute with its arguments")
            break
    NL = ctx.N.as_loop()
    ZN = center(NL)
    zn = {ctx.N.elements[i] for i in ZN.elements}
    if not set(ctx.A.elements) <= zn:
        fails.append("(5) A is not inside Z(N)")
    e = np.asarray(ctx.A.elements)
    if (t[np.ix_(e, e)] != t[np.ix_(e, e)].T).any() or (t[e, e] != 0).any():
        fails.append("(5) A is not boolean")
    return _result("assoc", fails, 9 * k, ctx.mode)


def check_assoc_conj(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("assoc-conj")
    t, ld = ctx.t, ctx.ld
    x, y, z, w = ctx.quadruples()
    a_zt = ctx.assoc(x, y, t[z, w])
    a_tz = ctx.assoc(x, y, t[w, z])
    a_z = ctx.assoc(x, y, z)
    a_t = ctx.assoc(x, y, w)
    # (x,y,t)T_z and (x,y,z)T_t with T_g(s) = g\(sg)
    Tz = ld[z, t[a_t, z]]
    Tt = ld[w, t[a_z, w]]
    fails = []
    if (a_zt != a_tz).any():
        fails.append("(x,y,zt) != (x,y,tz)")
    if (a_zt != t[a_z, Tz]).any():
        fails.append("(x,y,zt) != (x,y,z).(x,y,t)T_z")
    if (a_zt != t[Tt, a_t]).any():
        fails.append("(x,y,zt) != (x,y,z)T_t.(x,y,t)")
    return _result("assoc-conj", fails, len(x), ctx.mode)


def check_assoc_commutes(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("assoc-commutes")
    t = ctx.t
    x, y, z, w = ctx.quadruples()
    a_z = ctx.assoc(x, y, z)
    a_t = ctx.assoc(x, y, w)
    c1 = t[z, a_t] == t[a_t, z]
    c2 = t[w, a_z] == t[a_z, w]
    c3 = t[a_z, a_t] == ctx.assoc(x, y, t[z, w])
    fails = [] if ((c1 == c2) & (c2 == c3)).all() else ["the three conditions are not equivalent"]
    return _result("assoc-commutes", fails, len(x), ctx.mode)


def check_assoc_nuc(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("assoc-nuc")
    L, t = ctx.L, ctx.t
    labels = quotient_map(L, ctx.N)
    reps = [int(np.flatnonzero(labels == i)[0]) for i in range(labels.max() + 1)]
    if ctx.exhaustive:
        trips = [(a, b, c) for a in reps for b in reps for c in reps]
        if len(trips) > 4096:
            trips = [trips[i] for i in ctx.rng.choice(len(trips), 4096, replace=False)]
        mode = "exhaustive" if len(trips) == len(reps) ** 3 else "sampled"
    else:
        trips = [tuple(int(v) for v in ctx.rng.integers(0, ctx.n, 3)) for _ in range(48)]
        mode = "sampled"
    fails, count = [], 0
    cache: dict[bytes, set] = {}
    for x, y, z in trips:
        a = int(ctx.assoc(x, y, z))
        S = kernels.closure(L.table, ctx.N.mask.copy(), [x, y, z])
        e = np.flatnonzero(S)
        if len(e) <= 64:
            u, v, w = (m.ravel() for m in np.meshgrid(e, e, e, indexing="ij"))
        else:
            idx = ctx.rng.integers(0, len(e), size=(3, 4096))
            u, v, w = e[idx[0]], e[idx[1]], e[idx[2]]
        count += len(u)
        allowed = {0, a}
        vals = set(np.unique(ctx.assoc(u, v, w)).tolist())
        if not vals <= allowed:
            fails.append(f"A(<x,y,z,N>) not inside {{1, a}} at {(x, y, z)}")
            break
        if a != 0 and a not in vals:
            fails.append("a missing from A(<x,y,z,N>)")
            break
        # a central in S: commutes and associates with all of S
        if (t[a, e] != t[e, a]).any():
            fails.append("a does not commute with <x,y,z,N>")
            break
        pu, pv = (u, v)
        for args in ((np.full_like(pu, a), pu, pv), (pu, np.full_like(pu, a), pv), (pu, pv, np.full_like(pu, a))):
            if (ctx.assoc(*args) != 0).any():
                fails.append("a is not nuclear in <x,y,z,N>")
                break
        if fails:
            break
        del cache
        cache = {}
    return _result("assoc-nuc", fails, count, mode)


def check_assoc_index(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("assoc-index")
    L, t = ctx.L, ctx.t
    AZ = [a for a in ctx.A.elements if a in ctx.Z]
    index = ctx.A.order // len(AZ)
    fails = []
    if index in (2, 4, 8):
        fails.append(f"|A : A n Z| = {index}")
    tuples = ctx.A.order
    if index > 1:
        wit = _index_witness(ctx, set(AZ))
        tuples += ctx.n ** 3 if ctx.exhaustive else ctx.samples
        if wit is None:
            fails.append("no witnesses e1..e4 found")
        else:
            qs, es = wit
            cos = coset_labels(L, Subloop(L, tuple(sorted(AZ))))
            prods = []
            for S in chain.from_iterable(combinations(range(4), k) for k in range(5)):
                v = 0
                for i in S:
                    v = int(t[v, qs[i]])
                prods.append((S, v))
                for j in range(4):
                    fixed = int(ctx.T(es[j])[v]) == v
                    if fixed != (j not in S):
                        fails.append(f"q_S T(e_{j + 1}) fixed={fixed} for S={S}")
            if len({int(cos[v]) for _, v in prods}) != 16:
                fails.append("the 16 products q_S are not in distinct cosets of A n Z")
            tuples += 16 * 4
    # A and Z are exact; only the witness search samples
    return _result("assoc-index", fails, tuples, ctx.mode if index > 1 else "exhaustive")


def _index_witness(ctx: Context, AZ: set):
    x, y, z = ctx.triples()
    a = ctx.assoc(x, y, z)
    bad = np.flatnonzero(~np.isin(a, list(AZ)))
    for i in bad[:64]:
        e1, e2, e3 = int(x[i]), int(y[i]), int(z[i])
        q4 = int(a[i])
        for e4 in range(ctx.n):
            if int(ctx.T(e4)[q4]) != q4:
                q1 = int(ctx.assoc(e2, e3, e4))
                q2 = int(ctx.assoc(e1, e3, e4))
                q3 = int(ctx.assoc(e1, e2, e4))
                return [q1, q2, q3, q4], [e1, e2, e3, e4]
    return None


def check_center(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("center")
    if ctx.identities.associative:
        return CheckResult("center", "pass", 0, "exhaustive", "associative")
    za = len([a for a in ctx.A.elements if a in ctx.Z])
    return _result("center", [] if za >= 2 else [f"|Z n A| = {za}"], ctx.A.order, "exhaustive")


def check_assoc_512(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("assoc-512")
    outside = not set(ctx.A.elements) <= set(ctx.Z.elements)
    fails = []
    if outside and not (ctx.A.order >= 32 and ctx.n // ctx.N.order >= 16 and ctx.n % 512 == 0):
        fails.append(f"|A| = {ctx.A.order}, |Q:N| = {ctx.n // ctx.N.order}")
    detail = "associator outside Z" if outside else "A <= Z"
    r = _result("assoc-512", fails, ctx.A.order, "exhaustive")
    r.detail = r.detail or detail
    return r


# --- multiplication groups and inner maps --------------------------------------


def _inner_maps(ctx: Context):
    """(R maps, L maps with swapped arguments, pairs) for exhaustive or sampled (x, y)."""
    if ctx.exhaustive:
        R = all_right_inner(ctx.L).reshape(-1, ctx.n).astype(np.int64)
        Lm = all_left_inner(ctx.L).transpose(1, 0, 2).reshape(-1, ctx.n).astype(np.int64)
        x, y = np.indices((ctx.n, ctx.n)).reshape(2, -1)
        return R, Lm, x, y
    x, y = ctx.pairs(ctx.map_sample_size())
    t, ld, rd = ctx.t, ctx.ld, ctx.rd
    tt = np.arange(ctx.n)
    R = rd[t[t[tt[None, :], x[:, None]], y[:, None]], t[x, y][:, None]]
    # L(y, x): t -> (xy)\(x(yt))
    Lm = ld[t[x, y][:, None], t[x[:, None], t[y[:, None], tt[None, :]]]]
    return R, Lm, x, y


def check_mlt(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("mlt")
    fails = []
    R, Lyx, x, y = _inner_maps(ctx)
    Rd = np.unique(R, axis=0)
    ident = np.arange(ctx.n)
    if ctx.exhaustive:
        Lxy = all_left_inner(ctx.L).reshape(-1, ctx.n).astype(np.int64)
        Ryx = all_right_inner(ctx.L).transpose(1, 0, 2).reshape(-1, ctx.n).astype(np.int64)
        if not ((R == Lyx).all() and (R == Lxy).all() and (R == Ryx).all()):
            fails.append("(3) L(x,y) = R(x,y) = L(y,x) = R(y,x) fails")
        inner = inner_mapping_group(ctx.L, "right", mult=ctx.mult)
        innerL = inner_mapping_group(ctx.L, "left")
        if inner.keys() != innerL.keys():
            fails.append("(5) RMlt_1 != LMlt_1")
        if not inner.is_boolean():
            fails.append("(5) RMlt_1 is not boolean")
        group_elems = inner.elements.astype(np.int64)
        if not all(ctx.is_auto(g) for g in np.concatenate([group_elems, innerL.elements.astype(np.int64)])):
            fails.append("(1) an inner mapping is not an automorphism")
        # (2): all pairs of distinct R(x,y)
        for g in Rd:
            if (np.take_along_axis(Rd, g[None, :].repeat(len(Rd), 0), 1) != g[Rd]).any():
                fails.append("(2) two maps R(x,y) do not commute")
                break
        tuples = len(R) * ctx.n * 4 + len(Rd) ** 2 * ctx.n + len(group_elems) * ctx.n ** 2
    else:
        if not (R == Lyx).all():
            fails.append("(3) R(x,y) != L(y,x)")
        # R(y,x) for the sampled pairs
        t, rd = ctx.t, ctx.rd
        tt = np.arange(ctx.n)
        Ryx = rd[t[t[tt[None, :], y[:, None]], x[:, None]], t[y, x][:, None]]
        if not (R == Ryx).all():
            fails.append("(3) R(x,y) != R(y,x)")
        if not all(ctx.is_auto(g) for g in R[:64]):
            fails.append("(1) a sampled R(x,y) is not an automorphism")
        prods = R[:, R[::-1][:len(R)]] if False else None
        del prods
        P = np.take_along_axis(R, R[::-1], axis=1)  # R_i then R_{k-i}
        Q = np.take_along_axis(R[::-1], R, axis=1)
        if (P != Q).any():
            fails.append("(2) sampled maps R(x,y) do not commute")
        if (np.take_along_axis(P, P, axis=1) != ident).any():
            fails.append("(5) product of two maps is not an involution")
        tuples = len(R) * ctx.n * 4 + 64 * ctx.n ** 2
    if (np.take_along_axis(R, R, axis=1) != ident).any():
        fails.append("(4) R(x,y)^2 != I")
    # (6) z R(x,y) = z (x,y,z)
    z = np.arange(ctx.n)
    expect = ctx.t[z[None, :], ctx.assoc(x[:, None], y[:, None], z[None, :])]
    if (R != expect).any():
        fails.append("(6) zR(x,y) != z(x,y,z)")
    return _result("mlt", fails, tuples, ctx.mode)


def check_t(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("t")
    L, t = ctx.L, ctx.t
    fails = []
    nucl = ctx.nuclear
    if ctx.exhaustive:
        cand = range(ctx.n)
    else:
        non = np.flatnonzero(~nucl)
        pick = ctx.rng.choice(non, size=min(len(non), 64), replace=False) if len(non) else []
        cand = sorted(set(ctx.N.elements) | set(int(v) for v in pick))
    tuples = 0
    for a in cand:
        tuples += ctx.n ** 2
        if ctx.is_auto(ctx.T(a)) != bool(nucl[a]):
            fails.append(f"(1) T_{a} automorphism={not nucl[a]} but nuclear={bool(nucl[a])}")
            break
    Ne = np.asarray(ctx.N.elements)
    pos = np.full(ctx.n, -1)
    pos[Ne] = np.arange(len(Ne))
    Ttab = ctx.ld[np.arange(ctx.n)[:, None], t[:, np.arange(ctx.n)].T]  # Ttab[x, s] = x\(sx)
    TN = Ttab[:, Ne]  # restriction to N
    if (pos[TN] < 0).any():
        fails.append("(2) some T_x does not map N into N")
    else:
        NT = t[np.ix_(Ne, Ne)]
        for xx in range(ctx.n):
            g = TN[xx]
            if (pos[t[np.ix_(g, g)]] != pos[Ttab[xx][NT]]).any():
                fails.append("(2) T_x restricted to N is not an automorphism")
                break
        tuples += ctx.n * len(Ne) ** 2
    # (3) T_{xy}|N = T_x|N then T_y|N
    if ctx.exhaustive:
        x, y = ctx.pairs()
    else:
        x, y = ctx.pairs(max(1, ctx.samples // len(Ne)))
    lhs = TN[t[x, y]]
    rhs = np.take_along_axis(Ttab[y], TN[x], axis=1)
    if (lhs != rhs).any():
        fails.append("(3) x -> T_x|N is not a homomorphism")
    tuples += len(x) * len(Ne)
    Ae = np.asarray(ctx.A.elements)
    TA = Ttab[:, Ae]
    if not all(set(row.tolist()) == set(Ae.tolist()) for row in TA):
        fails.append("(4) some T_x does not map A onto A")
    if (Ttab[np.arange(ctx.n)[:, None], TA] != Ae[None, :]).any():
        fails.append("(5) (T_x)^2 is not the identity on A")
    tuples += 2 * ctx.n * len(Ae)
    return _result("t", fails, tuples, ctx.mode)


def check_inner_t(ctx: Context) -> CheckResult:
    """The T_x generate the same group as all inner mappings."""
    if not ctx.extra:
        return _na("inner-t")
    if not ctx.exhaustive or ctx.mult is None:
        return _na("inner-t", "multiplication group not enumerated")
    T = np.array([ctx.T(x) for x in range(ctx.n)])
    GT = PermGroup.from_generators(T, ctx.n)
    gens = np.concatenate([T, np.unique(all_right_inner(ctx.L).reshape(-1, ctx.n), axis=0),
                           np.unique(all_left_inner(ctx.L).reshape(-1, ctx.n), axis=0)])
    G = PermGroup.from_generators(gens, ctx.n)
    fails = [] if GT.keys() == G.keys() else [f"<T_x> has order {GT.order}, Inn has order {G.order}"]
    return _result("inner-t", fails, G.order, "exhaustive")


def check_a_star(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("a-star")
    L, t = ctx.L, ctx.t
    labels = coset_labels(L, ctx.A)
    fails = []
    inA = ctx.A.mask
    RinA = np.array([(labels[t[:, a]] == labels).all() for a in range(ctx.n)])
    if (RinA != inA).any():
        fails.append("R_a in A* does not match a in A")
    tuples = ctx.n * ctx.n
    if ctx.exhaustive and ctx.mult is not None:
        try:
            S = a_star(L, mult=ctx.mult)
            tuples += S.order * ctx.n
        except AssertionFailure as exc:
            fails.append(str(exc))
    else:
        R, _, _, _ = _inner_maps(ctx)
        k = min(len(R), 256)
        words = R[:k]
        for _ in range(3):
            words = np.take_along_axis(words, R[ctx.rng.integers(0, len(R), size=k)], axis=1)
        if not (labels[words] == labels[None, :]).all():
            fails.append("an element of RMlt_1 leaves some coset Ax")
        if not (np.take_along_axis(words, words, axis=1) == np.arange(ctx.n)).all():
            fails.append("an element of RMlt_1 is not an involution")
        Ae = np.asarray(ctx.A.elements)
        RA = t[:, Ae].T
        for g in words[:32]:
            hr = RA[:, g] if False else g[None, :]
            del hr
            lhs = RA[:, g]            # g then R_a: (xg)a
            rhs = g[RA]               # R_a then g: (xa)g
            if (lhs != rhs).any():
                fails.append("RMlt_1 and R(A) do not commute")
                break
        tuples += k * ctx.n * 3 + 32 * len(Ae) * ctx.n
    return _result("a-star", fails, tuples, ctx.mode)


def check_odd_presylow(ctx: Context) -> CheckResult:
    """Odd-order elements of RMlt are R_a with a in N; S -> R(S) matches
    odd-order subloops and odd-order subgroups."""
    if not ctx.extra:
        return _na("odd-presylow")
    G = ctx.mult
    if G is None:
        return _na("odd-presylow", "multiplication group not enumerated")
    orders = G.element_orders()
    odd = G.elements[orders % 2 == 1].astype(np.int64)
    RN = {ctx.t[:, a].astype(np.int16).tobytes() for a in ctx.N.elements}
    fails = []
    if not all(g.astype(np.int16).tobytes() in RN for g in odd):
        fails.append("(1) an odd-order element of RMlt is not R_a with a in N")
    subs = enumerate_subloops(ctx.L, allowed=lambda k: k % 2 == 1)
    odd_subgroups = _odd_subgroups(G, odd)
    images = {frozenset(ctx.t[:, a].astype(np.int16).tobytes() for a in s.elements) for s in subs}
    if images != odd_subgroups:
        fails.append("(4) S -> R(S) is not onto the odd-order subgroups")
    return _result("odd-presylow", fails, G.order + len(subs), "exhaustive")


def _odd_subgroups(G: PermGroup, odd: np.ndarray) -> set[frozenset]:
    ident = G.identity()
    start = PermGroup(G.degree, np.empty((0, G.degree)), ident[None, :])
    seen = {start.keys(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for H in frontier:
            for g in odd:
                if g in H:
                    continue
                K = PermGroup.from_generators(np.concatenate([H.generators, g[None, :].astype(np.int16)]), G.degree)
                if K.order % 2 == 0:
                    continue
                k = K.keys()
                if k not in seen:
                    seen[k] = K
                    nxt.append(K)
        frontier = nxt
    return set(seen)


# --- Sylow, Hall, solvability --------------------------------------------------


def check_sylow(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("sylow")
    fails, tuples = [], 0
    for p in sorted(prime_factors(ctx.n)):
        try:
            fam = sylow_subloops(ctx.L, p, exhaustive=ctx.n <= 256)
        except ExtraLoopError as exc:
            fails.append(f"p={p}: {exc}")
            continue
        rep = fam.report
        if not rep.get("isomorphic_conjugates", False):
            fails.append(f"p={p}: conjugating T_x is not an isomorphism")
        if not rep.get("divides_r", True):
            fails.append(f"p={p}: count {fam.count} does not divide r (flagged)")
        tuples += fam.count * ctx.N.order
    return _result("sylow", fails, tuples, "exhaustive" if ctx.n <= 256 else "sampled")


def check_sylow_b(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("sylow-b")
    groups = [("N", ctx.N.as_loop()), ("Q/A", quotient(ctx.L, ctx.A))]
    fails, tuples = [], 0
    for name, H in groups:
        for p in sorted(prime_factors(H.n)):
            tuples += H.n
            if not sylow_conjugate_in_op(H, p):
                fails.append(f"{name}, p={p}")
    return _result("sylow-b", fails, tuples, "exhaustive")


def check_rmlt_sylow(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("rmlt-sylow")
    if ctx.mult is None:
        return _na("rmlt-sylow", "multiplication group not enumerated")
    fails = []
    for p in sorted(prime_factors(ctx.n)):
        rep = sylow_rmlt_correspondence(ctx.L, p, mult=ctx.mult)
        if not rep.ok:
            fails.append(f"p={p}: {rep}")
    return _result("rmlt-sylow", fails, ctx.mult.order, "exhaustive")


def check_solvable(ctx: Context) -> CheckResult:
    """Burnside-type check: orders p^a q^b report solvable."""
    rep = is_solvable(ctx.L)
    primes = prime_factors(ctx.n)
    fails = []
    if len(primes) <= 2 and not rep.solvable:
        fails.append("order has at most two primes but the loop is not solvable")
    r = _result("burnside", fails, ctx.n, "exhaustive")
    r.detail = r.detail or f"solvable={rep.solvable} series={rep.orders}"
    return r


def check_hall(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("hall")
    if not is_solvable(ctx.L).solvable:
        return _na("hall", "not solvable")
    primes = sorted(prime_factors(ctx.n))
    fails, tuples = [], 0
    for k in range(len(primes) + 1):
        for pi in combinations(primes, k):
            try:
                fam = hall_subloops(ctx.L, pi, exhaustive=ctx.n <= 256)
            except ExtraLoopError as exc:
                fails.append(f"pi={pi}: {exc}")
                continue
            tuples += fam.count * ctx.n
    return _result("hall", fails, tuples, "exhaustive" if ctx.n <= 256 else "sampled")


# --- extensions and semidirect products -------------------------------------


def check_extension_loop(ctx: Context) -> CheckResult:
    ext = getattr(ctx.entry, "extension", None)
    if ext is None:
        return _na("extension-loop", "not built as an extension")
    fails = []
    try:
        check_division_formulas(ctx.L, ext.rank, ext.G, ext.tau, ext.psi)
    except AssertionFailure as exc:
        fails.append(str(exc))
    nG = ext.G.order
    if not (ctx.L.table[:nG, :nG] == ext.G.add).all():
        fails.append("{0} x G is not a copy of G")
    if not is_normal(ctx.L, Subloop(ctx.L, tuple(range(nG)))):
        fails.append("{0} x G is not normal")
    return _result("extension-loop", fails, 2 * ctx.n ** 2, "exhaustive")


def check_assocpsi(ctx: Context) -> CheckResult:
    ext = getattr(ctx.entry, "extension", None)
    if ext is None:
        return _na("assocpsi", "not built as an extension")
    nG = ext.G.order
    D = derived_associator(ext.rank, ext.G, ext.tau, ext.psi)
    x, y, z = ctx.triples()
    a = ctx.assoc(x, y, z)
    fails = []
    if (a != D[x // nG, y // nG, z // nG]).any():
        fails.append("associator is not (0, derived associator of the B-components)")
    nB = 1 << ext.rank
    if (D[0] != 0).any() or (D[:, 0] != 0).any() or (D[:, :, 0] != 0).any():
        fails.append("derived associator does not vanish on 0")
    if not ctx.nuclear[:nG].all():
        fails.append("{0} x G is not nuclear")
    del nB
    return _result("assocpsi", fails, len(x), ctx.mode)


def check_inherit(ctx: Context) -> CheckResult:
    sd = getattr(ctx.entry, "semidirect", None)
    if sd is None:
        return _na("inherit", "not built as a semidirect product")
    fails = []
    try:
        rebuilt = semidirect(sd.B, sd.G, sd.tau)
        if rebuilt != ctx.L:
            fails.append("rebuilt semidirect product differs")
    except AssertionFailure as exc:
        fails.append(str(exc))
    return _result("inherit", fails, ctx.n ** 3, "exhaustive")


def check_issemi(ctx: Context) -> CheckResult:
    if not ctx.extra:
        return _na("issemi")
    try:
        d = issemi_decompose(ctx.L)
    except AssertionFailure as exc:
        return _result("issemi", [str(exc)], ctx.n, "exhaustive")
    if d is None:
        return _na("issemi", "nucleus not abelian")
    fails = []
    if d.B.order * d.G.order != ctx.n:
        fails.append("|B||G| != |Q|")
    return _result("issemi", fails, ctx.n ** 2, "exhaustive")


SUITE = {
    "eqns": check_eqns,
    "extra-assoc": check_extra_assoc,
    "right-assoc": check_right_assoc,
    "square": check_square,
    "lagrange": check_lagrange,
    "p-loop": check_p_loop,
    "assoc": check_assoc,
    "assoc-conj": check_assoc_conj,
    "assoc-commutes": check_assoc_commutes,
    "assoc-nuc": check_assoc_nuc,
    "assoc-index": check_assoc_index,
    "center": check_center,
    "assoc-512": check_assoc_512,
    "mlt": check_mlt,
    "t": check_t,
    "inner-t": check_inner_t,
    "a-star": check_a_star,
    "odd-presylow": check_odd_presylow,
    "rmlt-sylow": check_rmlt_sylow,
    "sylow": check_sylow,
    "sylow-b": check_sylow_b,
    "burnside": check_solvable,
    "hall": check_hall,
    "extension-loop": check_extension_loop,
    "assocpsi": check_assocpsi,
    "inherit": check_inherit,
    "issemi": check_issemi,
}


def run_suite(loop: FiniteLoop, entry=None, tags=None, seed: int = 0,
              samples: int = DEFAULT_SAMPLES) -> list[CheckResult]:
    ctx = Context(loop, entry=entry, seed=seed, samples=samples)
    out = []
    for tag in tags or SUITE:
        if tag not in SUITE:
            raise KeyError(f"unknown suite tag {tag!r}")
        try:
            out.append(SUITE[tag](ctx))
        except ExtraLoopError as exc:
            out.append(CheckResult(tag, "fail", 0, "-", f"{type(exc).__name__}: {exc}"))
    return out
