"""Named loops used as fixtures and as the property-suite catalog."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .extension import (AbelianGroup, canonical16, cayley_loop, example512, example512_spec,
                        extension_loop, loop960, semidirect, sign_action, trivial_action)
from .loop import FiniteLoop, boolean_group, cyclic, group_from_permutations
from .structure import direct_product, generate_subloop
from .tableio import parse_table


@dataclass
class ExtensionData:
    """(rank, G, tau, psi) of a loop built as B x_tau^psi G."""

    rank: int
    G: AbelianGroup
    tau: np.ndarray
    psi: np.ndarray


@dataclass
class SemidirectData:
    B: FiniteLoop
    G: FiniteLoop
    tau: np.ndarray


@dataclass
class Entry:
    name: str
    loop: FiniteLoop
    kind: str
    extension: ExtensionData | None = None
    semidirect: SemidirectData | None = None


def symmetric_group(k: int) -> FiniteLoop:
    from itertools import permutations

    return group_from_permutations(permutations(range(k)))


def quaternion_group() -> FiniteLoop:
    C = cayley_loop(verify=False)
    return generate_subloop(C, [2, 4]).as_loop()


def cc6() -> FiniteLoop:
    text = resources.files("extraloop").joinpath("data/cc6.tbl").read_text()
    return parse_table(text, name="cc6")


def chein_double(G: FiniteLoop, name: str = "") -> FiniteLoop:
    """M(G, 2) on G x {0, 1}; g has index g, gu has index |G| + g.

    g.h = gh, g.(hu) = (hg)u, (gu).h = (gh^-1)u, (gu)(hu) = h^-1 g.
    """
    n = G.n
    t = G.table
    inv = G.ld[:, 0]
    T = np.empty((2 * n, 2 * n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            T[g, h] = t[g, h]
            T[g, n + h] = n + t[h, g]
            T[n + g, h] = n + t[g, inv[h]]
            T[n + g, n + h] = t[inv[h], g]
    return FiniteLoop(T, name=name)


def moufang12() -> FiniteLoop:
    """The Moufang loop M(S3, 2) of order 12, which is not extra."""
    return chein_double(symmetric_group(3), name="M(S3,2)")


def _semidirect_entry(name, B, G, tau, kind="extra") -> Entry:
    L = semidirect(B, G, tau, name=name)
    return Entry(name, L, kind, semidirect=SemidirectData(B, G, np.asarray(tau)))


def loop80() -> Entry:
    """Cayley loop x_tau Z5 with tau = -1 off the quaternion subgroup <e1, e2>."""
    C = cayley_loop(verify=False)
    K = generate_subloop(C, [2, 4])
    return _semidirect_entry("cayley x Z5", C, cyclic(5), sign_action(C, K.elements, 5))


def loop240() -> Entry:
    """Cayley loop x_tau Z15 with tau = -1 off <e1, e2>; N = Z2 x Z15."""
    C = cayley_loop(verify=False)
    K = generate_subloop(C, [2, 4])
    return _semidirect_entry("cayley x Z15", C, cyclic(15), sign_action(C, K.elements, 15))


@lru_cache(maxsize=None)
def census16_entries() -> tuple[Entry, ...]:
    from .census import census_order16

    c = census_order16()
    G = AbelianGroup.boolean(1)
    tau = trivial_action(3, G)
    out = []
    for cls in c.classes:
        psi = c.psis[cls.members[0]]
        L = FiniteLoop(cls.representative.table, name=cls.label.split()[0])
        out.append(Entry(L.name, L, "census16", extension=ExtensionData(3, G, tau, psi)))
    return tuple(out)


@lru_cache(maxsize=None)
def census48_entries() -> tuple[Entry, ...]:
    from .census import Census16, census_16p

    base = census16_entries()
    c16 = Census16([_as_class(e) for e in base], [], 0, 0, 0, None)
    result = census_16p(3, base=c16, decompose=False)
    Z3 = cyclic(3)
    out = []
    for cls in result.classes:
        bi, K = result.members[cls.members[0]]
        B = base[bi].loop
        name = cls.label.split()[0]
        tau = sign_action(B, K, 3)
        L = FiniteLoop(cls.representative.table, name=name)
        out.append(Entry(name, L, "census48", semidirect=SemidirectData(B, Z3, tau)))
    return tuple(out)


def _as_class(entry: Entry):
    from .census import IsoClass
    from .iso import fingerprint

    return IsoClass(entry.loop, fingerprint(entry.loop), [0])


@lru_cache(maxsize=None)
def example512_entry() -> Entry:
    spec = example512_spec()
    L = example512()
    return Entry("example512", L, "example",
                 extension=ExtensionData(spec.rank, spec.G, spec.tau, spec.resolved_psi()))


@lru_cache(maxsize=None)
def loop960_entry() -> Entry:
    return Entry("loop960", loop960(), "example")


def group_controls() -> list[Entry]:
    return [
        Entry("Z2^3", boolean_group(3), "group"),
        Entry("S3", symmetric_group(3), "group"),
        Entry("Q8", FiniteLoop(quaternion_group().table, name="Q8"), "group"),
    ]


def small_examples() -> list[Entry]:
    C = cayley_loop()
    K = canonical16()
    return [Entry("cayley", C, "example"), Entry("canonical16", K, "example")]


def catalog(large: bool = True) -> list[Entry]:
    """The property-suite catalog: census representatives of orders 16 and
    48, the Cayley and canonical loops, group controls, and (with ``large``)
    the order-512 and order-960 examples."""
    out = list(census16_entries()) + list(census48_entries()) + small_examples() + group_controls()
    if large:
        out += [example512_entry(), loop960_entry()]
    return out


def products_example() -> FiniteLoop:
    return direct_product(cyclic(4), cayley_loop(verify=False))


def named(name: str) -> FiniteLoop:
    """Look up a fixture by name."""
    builders = {
        "cayley": cayley_loop,
        "canonical16": canonical16,
        "example512": lambda: example512_entry().loop,
        "loop960": lambda: loop960_entry().loop,
        "cc6": cc6,
        "moufang12": moufang12,
        "loop80": lambda: loop80().loop,
        "loop240": lambda: loop240().loop,
    }
    if name in builders:
        return builders[name]()
    for e in list(census16_entries()) + list(census48_entries()) + group_controls():
        if e.name == name:
            return e.loop
    raise KeyError(name)


FIXTURES = ("cayley", "canonical16", "example512", "loop960")
