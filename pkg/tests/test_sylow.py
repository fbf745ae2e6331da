import numpy as np
import pytest

from extraloop.errors import InputError, PreconditionError, ResourceCapError
from extraloop.loop import boolean_group, cyclic
from extraloop.multgroups import rmlt
from extraloop.structure import nucleus
from extraloop.sylow import (group_hall, group_sylow, hall_subloops, is_prime, is_solvable, perm_sylow,
                             prime_factors, sylow_conjugate_in_op, sylow_rmlt_correspondence, sylow_subloops)


def test_prime_helpers():
    assert prime_factors(960) == {2: 6, 3: 1, 5: 1}
    assert is_prime(13) and not is_prime(1) and not is_prime(15)


def test_boolean_group_sylow():
    V = boolean_group(3)
    fam = sylow_subloops(V, 2)
    assert fam.count == 1 and fam.order == 8


def test_order48_sylow(loop48):
    s3 = sylow_subloops(loop48, 3)
    assert s3.count == 1
    N = nucleus(loop48)
    assert set(s3.members[0].elements) <= set(N.elements) and s3.order == 3
    s2 = sylow_subloops(loop48, 2)
    assert s2.count in (1, 3) and s2.count % 2 == 1 and 3 % s2.count == 0
    assert s2.report["isomorphic_conjugates"] and s2.report["divides_r"]


def test_sylow_of_every_census48_loop(census48):
    for e in census48:
        fam = sylow_subloops(e.loop, 2, exhaustive=True)
        assert fam.count % 2 == 1 and 3 % fam.count == 0
        assert fam.report["mod_p"] == 1


def test_sylow_needs_extra(cc6_loop):
    with pytest.raises(PreconditionError):
        sylow_subloops(cc6_loop, 2)


def test_sylow_rejects_non_prime(cayley):
    with pytest.raises(InputError):
        sylow_subloops(cayley, 4)


def test_sylow_960(l960):
    L = l960.loop
    for p, count in ((3, 10), (5, 6)):
        fam = sylow_subloops(L, p)
        assert fam.count == count and fam.count % p == 1
    fam2 = sylow_subloops(L, 2)
    assert fam2.order == 64 and fam2.count % 2 == 1


def test_hall_all_primes(loop48):
    fam = hall_subloops(loop48, [2, 3])
    assert fam.count == 1 and fam.order == 48


def test_hall_two_is_sylow(loop48):
    assert hall_subloops(loop48, [2]).keys() == sylow_subloops(loop48, 2).keys()


def test_hall_240(l240):
    fam = hall_subloops(l240.loop, [2, 3])
    assert fam.order == 48 and fam.count >= 1
    fam35 = hall_subloops(l240.loop, [3, 5])
    assert fam35.order == 15 and fam35.count == 1


def test_hall_needs_solvable(l960):
    with pytest.raises(PreconditionError):
        hall_subloops(l960.loop, [2, 3])


def test_solvability(cayley, l960):
    assert is_solvable(boolean_group(3)).solvable
    assert len(is_solvable(boolean_group(3)).series) <= 2
    assert is_solvable(cayley).solvable
    r = is_solvable(l960.loop)
    assert not r.solvable and r.nucleus_solvable is False


def test_group_level_sylow(groups):
    S3 = groups["S3"]
    assert len(group_sylow(S3, 2)) == 3 and len(group_sylow(S3, 3)) == 1
    assert len(group_hall(S3, [2, 3])) == 1
    for p in (2, 3):
        assert sylow_conjugate_in_op(S3, p)


def test_perm_sylow(loop48):
    G = rmlt(loop48)
    P = perm_sylow(G, 3)
    assert P.order == 3
    P2 = perm_sylow(G, 2)
    assert P2.order == 128


def test_rmlt_correspondence(census48):
    for e in census48[:3]:
        for p in (2, 3):
            c = sylow_rmlt_correspondence(e.loop, p)
            assert c.ok, (e.name, p)
    c = sylow_rmlt_correspondence(census48[0].loop, 3)
    assert c.loop_count == c.group_count == 1


def test_rmlt_correspondence_group(groups):
    c = sylow_rmlt_correspondence(groups["S3"], 2)
    assert c.ok and c.loop_count == 3


def test_rmlt_correspondence_cap(loop48):
    with pytest.raises(ResourceCapError):
        sylow_rmlt_correspondence(loop48, 2, cap=100)
