import numpy as np
import pytest

from extraloop.errors import PreconditionError, ResourceCapError
from extraloop.multgroups import (PermGroup, a_star, all_left_inner, all_right_inner, compose, format_group,
                                  inner_mapping_group, inverse, left_inner, lmlt, middle_inner, o_p_subgroup,
                                  right_inner, rmlt)


def test_compose_applies_left_first():
    g = np.array([1, 2, 0])
    h = np.array([0, 2, 1])
    assert compose(g, h).tolist() == [h[g[x]] for x in range(3)]
    assert compose(g, inverse(g)).tolist() == [0, 1, 2]


def test_group_rmlt_is_regular(groups):
    for G in groups.values():
        M = rmlt(G)
        assert M.order == G.n
        assert M.stabilizer(0).order == 1


def test_cayley_rmlt(cayley):
    M = rmlt(cayley)
    inner = inner_mapping_group(cayley, "right", mult=M)
    assert M.order == 16 * inner.order
    assert inner.is_boolean()


def test_order48_rmlt(loop48):
    M = rmlt(loop48)
    inner = inner_mapping_group(loop48, "right", mult=M)
    assert M.order == 48 * inner.order == 384


def test_inner_maps_match_formulas(cayley):
    R = all_right_inner(cayley)
    Lm = all_left_inner(cayley)
    for x in range(16):
        for y in range(16):
            assert (R[x, y] == right_inner(cayley, x, y)).all()
            assert (Lm[x, y] == left_inner(cayley, x, y)).all()
    t = cayley.table
    T = middle_inner(cayley, 2)
    assert all(t[2, T[s]] == t[s, 2] for s in range(16))


def test_left_equals_right_inner_group(census48):
    for e in census48[:4]:
        r = inner_mapping_group(e.loop, "right")
        l = inner_mapping_group(e.loop, "left")
        assert r.keys() == l.keys() and r.is_boolean()


def test_inner_maps_are_automorphisms(canon16):
    t = canon16.table.astype(np.int64)
    for g in inner_mapping_group(canon16).elements.astype(np.int64):
        assert (g[t] == t[g[:, None], g[None, :]]).all()


def test_a_star(cayley, canon16, groups):
    S = a_star(cayley)
    assert S.order == 2 * inner_mapping_group(cayley).order
    C = a_star(canon16)
    assert C.is_boolean()
    G = a_star(groups["Z2^3"])
    assert G.order == 1


def test_a_star_needs_extra(cc6_loop):
    with pytest.raises(PreconditionError):
        a_star(cc6_loop)


def test_o_p(groups, loop48):
    Z2_3 = groups["Z2^3"]
    assert o_p_subgroup(rmlt(Z2_3), 2).order == 1
    assert o_p_subgroup(rmlt(groups["Z6"]), 2).order == 3
    M = rmlt(loop48)
    O = o_p_subgroup(M, 2)
    from extraloop.structure import nucleus

    RN = {loop48.table[:, a].astype(np.int16).tobytes() for a in nucleus(loop48).elements}
    assert O.keys() <= RN


def test_cap_raises(cayley):
    with pytest.raises(ResourceCapError) as exc:
        rmlt(cayley, cap=10)
    assert exc.value.lower_bound >= 10


def test_cap_env(monkeypatch, cayley):
    monkeypatch.setenv("EXTRALOOP_CAP", "5")
    with pytest.raises(ResourceCapError):
        lmlt(cayley)


def test_subgroup_and_normality(groups):
    M = rmlt(groups["S3"])
    three = M.elements[M.element_orders() == 3][:1]
    H = M.subgroup(three)
    assert H.order == 3 and H.is_normal_in(M)
    two = M.elements[M.element_orders() == 2][:1]
    K = M.subgroup(two)
    assert K.order == 2 and not K.is_normal_in(M)


def test_format_group(groups):
    text = format_group(rmlt(groups["Z3"]), header=["z3"])
    assert text.startswith("# z3\n# degree=3 order=3")


def test_from_elements_identity_first():
    G = PermGroup.from_elements([[1, 0, 2], [0, 1, 2]])
    assert G.elements[0].tolist() == [0, 1, 2]
