import numpy as np
import pytest

from extraloop.catalog import (census16_entries, census48_entries, cc6, example512_entry, loop80, loop240,
                               loop960_entry, moufang12, quaternion_group, symmetric_group)
from extraloop.extension import canonical16, cayley_loop
from extraloop.loop import boolean_group, cyclic


@pytest.fixture(scope="session")
def cayley():
    return cayley_loop()


@pytest.fixture(scope="session")
def canon16():
    return canonical16()


@pytest.fixture(scope="session")
def census16():
    return census16_entries()


@pytest.fixture(scope="session")
def census48():
    return census48_entries()


@pytest.fixture(scope="session")
def loop48(census48):
    """Cayley x Z3 with the sign action off <e1, e2>."""
    from extraloop.extension import semidirect, sign_action
    from extraloop.structure import generate_subloop

    C = cayley_loop(verify=False)
    K = generate_subloop(C, [2, 4])
    return semidirect(C, cyclic(3), sign_action(C, K.elements, 3))


@pytest.fixture(scope="session")
def ex512():
    return example512_entry()


@pytest.fixture(scope="session")
def l960():
    return loop960_entry()


@pytest.fixture(scope="session")
def l80():
    return loop80()


@pytest.fixture(scope="session")
def l240():
    return loop240()


@pytest.fixture(scope="session")
def m12():
    return moufang12()


@pytest.fixture(scope="session")
def groups():
    return {"Z2": cyclic(2), "Z3": cyclic(3), "Z4": cyclic(4), "Z6": cyclic(6), "Z2^2": boolean_group(2),
            "Z2^3": boolean_group(3), "S3": symmetric_group(3), "Q8": quaternion_group()}


@pytest.fixture(scope="session")
def cc6_loop():
    return cc6()


def random_extension(rng: np.random.Generator, rank: int = 3, m: int = 2, signs=None):
    """B x_tau^psi Z_m with an arbitrary normalized psi; usually neither
    extra nor a group."""
    from extraloop.extension import AbelianGroup, extension_loop, extend_action

    G = AbelianGroup.cyclic(m)
    nB = 1 << rank
    signs = [1] * rank if signs is None else signs
    tau = extend_action(rank, G, [G.unit_automorphism(s) for s in signs])
    psi = rng.integers(0, m, size=(nB, nB))
    psi[0] = 0
    psi[:, 0] = 0
    return extension_loop(rank, G, tau, psi, verify=False), tau, psi
