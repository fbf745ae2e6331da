import numpy as np

from extraloop.extension import cayley_loop
from extraloop.iso import automorphism_group, automorphisms, find_isomorphism, fingerprint, is_isomorphic
from extraloop.loop import FiniteLoop, boolean_group, cyclic
from extraloop.structure import direct_product

ALT_TRIPLES = tuple((i, i % 7 + 1, (i + 2) % 7 + 1) for i in range(1, 8))


def test_self_isomorphism_is_identity(cayley):
    phi = find_isomorphism(cayley, cayley)
    assert phi is not None
    t = cayley.table
    assert (phi[t] == t[phi[:, None], phi[None, :]]).all()


def test_z4_vs_klein():
    assert find_isomorphism(cyclic(4), boolean_group(2)) is None


def test_automorphism_counts():
    assert len(automorphisms(cyclic(2))) == 1
    assert len(automorphisms(cyclic(3))) == 2
    # (2^3 - 1)(2^3 - 2)(2^3 - 4)
    assert len(automorphisms(boolean_group(3), guard=None)) == 7 * 6 * 4
    assert automorphism_group(boolean_group(3), guard=None).order == 168


def test_sign_conventions_give_isomorphic_loops(cayley):
    alt = cayley_loop(ALT_TRIPLES)
    phi = find_isomorphism(alt, cayley)
    assert phi is not None
    t1, t2 = alt.table, cayley.table
    assert (phi[t1] == t2[phi[:, None], phi[None, :]]).all()


def test_relabelled_copy_found(canon16):
    rng = np.random.default_rng(1)
    perm = np.concatenate([[0], 1 + rng.permutation(15)])
    inv = np.argsort(perm)
    # new x corresponds to old inv[x]
    T = perm[canon16.table[np.ix_(inv, inv)]]
    L = FiniteLoop(T)
    phi = find_isomorphism(canon16, L)
    assert phi is not None and (phi[canon16.table] == T[phi[:, None], phi[None, :]]).all()


def test_fingerprint_separates(cayley, canon16):
    assert fingerprint(cayley) != fingerprint(canon16)
    assert not is_isomorphic(cayley, canon16)


def test_products_differ():
    a = direct_product(cyclic(4), cyclic(2))
    b = boolean_group(3)
    assert not is_isomorphic(a, b)
    assert is_isomorphic(a, direct_product(cyclic(2), cyclic(4)))
