import numpy as np
import pytest

from extraloop.errors import NotNormalError
from extraloop.iso import find_isomorphism
from extraloop.loop import boolean_group, check_identities, cyclic, is_extra, is_group
from extraloop.structure import (Subloop, associator_subloop, center, direct_product, enumerate_subloops,
                                 generate_subloop, is_closed, is_normal, normal_closure, nucleus, quotient,
                                 quotient_map)


def test_generate_empty_is_trivial(cayley):
    assert generate_subloop(cayley, []).elements == (0,)


def test_generate_in_klein_four():
    V = boolean_group(2)
    assert generate_subloop(V, [1]).order == 2


def test_quaternion_subgroup(cayley):
    S = generate_subloop(cayley, [2, 4])
    assert S.order == 8
    assert is_group(S.as_loop())


def test_group_nucleus_and_associators(groups):
    for G in groups.values():
        assert nucleus(G).order == G.n
        assert associator_subloop(G).elements == (0,)


def test_cayley_nucleus_center_associators(cayley):
    assert nucleus(cayley).elements == (0, 1)
    assert center(cayley).elements == (0, 1)
    assert associator_subloop(cayley, verify=True).elements == (0, 1)


def test_example512_center_and_associators(ex512):
    L = ex512.loop
    assert center(L).elements == (0, 1)
    A = associator_subloop(L)
    N = nucleus(L)
    assert A.order == 32 and A == N


def test_quotients(cayley, ex512):
    assert quotient(cayley, Subloop(cayley, tuple(range(16)))).n == 1
    QN = quotient(cayley, nucleus(cayley))
    assert QN.n == 8 and check_identities(QN).boolean
    QZ = quotient(ex512.loop, center(ex512.loop))
    assert QZ.n == 256 and not check_identities(QZ).associative
    assert is_extra(QZ)


def test_quotient_by_non_normal_raises(groups):
    S3 = groups["S3"]
    # a subgroup of order 2 in S3 is not normal
    two = next(x for x in range(1, 6) if S3.table[x, x] == 0)
    with pytest.raises(NotNormalError):
        quotient(S3, generate_subloop(S3, [two]))


def test_quotient_map_is_homomorphism(cayley):
    N = nucleus(cayley)
    lab = quotient_map(cayley, N)
    Q = quotient(cayley, N)
    t = cayley.table
    for x in range(16):
        for y in range(16):
            assert lab[t[x, y]] == Q.table[lab[x], lab[y]]


def test_direct_products(cayley):
    T = cyclic(1)
    assert find_isomorphism(direct_product(cayley, T), cayley) is not None
    V = direct_product(cyclic(2), cyclic(2))
    assert V.n == 4 and check_identities(V).boolean


def test_normal_closure_and_is_normal(cayley, groups):
    assert is_normal(cayley, nucleus(cayley))
    S3 = groups["S3"]
    two = next(x for x in range(1, 6) if S3.table[x, x] == 0)
    assert normal_closure(S3, [two]).order == 6
    three = next(x for x in range(1, 6) if S3.element_order(x) == 3)
    assert normal_closure(S3, [three]).order == 3


def test_is_closed(cayley):
    assert is_closed(cayley, [0, 1])
    assert not is_closed(cayley, [0, 2])


def test_enumerate_subloops_lagrange(cayley):
    subs = enumerate_subloops(cayley)
    orders = sorted({s.order for s in subs})
    assert orders == [1, 2, 4, 8, 16]
    assert all(16 % s.order == 0 for s in subs)
    # the seven quaternion subgroups over the Fano lines
    assert sum(1 for s in subs if s.order == 8) == 7


def test_center_inside_nucleus(census48):
    for e in census48:
        N = nucleus(e.loop)
        Z = center(e.loop, N)
        assert set(Z.elements) <= set(N.elements)
        assert np.array_equal(Z.mask & ~N.mask, np.zeros(e.loop.n, dtype=bool))
