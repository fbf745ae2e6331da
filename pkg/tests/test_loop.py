import numpy as np
import pytest

from extraloop.errors import InputError
from extraloop.loop import FiniteLoop, check_identities, cyclic, is_extra, is_group, right_associated
from extraloop.structure import direct_product


def test_z2_product():
    Z2 = cyclic(2)
    assert Z2.mul(1, 1) == 0


def test_identity_row_and_column(cayley):
    for y in range(cayley.n):
        assert cayley.mul(0, y) == y
        assert cayley.ldiv(0, y) == y


def test_z3_inverse():
    assert cyclic(3).inv(1) == 2


def test_cayley_square_of_unit_is_minus_one(cayley):
    # +e1 has index 2, -1 has index 1
    assert cayley.mul(2, 2) == 1


def test_inverse_property_on_census16(census16):
    for e in census16:
        L = e.loop
        t, inv = L.table, L.ld[:, 0]
        x, y = np.indices((L.n, L.n))
        assert (t[inv[x], t[x, y]] == y).all()
        assert (t[t[y, x], inv[x]] == y).all()


def test_divisions_solve_equations(cayley):
    t = cayley.table
    for x in range(16):
        for y in range(16):
            assert t[x, cayley.ldiv(x, y)] == y
            assert t[cayley.rdiv(y, x), x] == y


def test_element_orders(cayley, canon16):
    assert cayley.element_order(0) == 1
    assert cayley.element_order(1) == 2
    assert all(cayley.element_order(x) == 4 for x in range(2, 16))
    # order 4 occurs only on the coset over e1 + e2 + e3 (B-component 7)
    fours = [x for x in range(16) if canon16.element_order(x) == 4]
    assert fours == [14, 15]


def test_no_order16_extra_loop_has_exponent_two(census16):
    # |N| = 2 forces every element to be an involution, which would make
    # the loop a commutative Moufang loop of exponent 2, hence a group
    for e in census16:
        assert dict(e.loop.order_profile()).get(4, 0) > 0
    involutions = [dict(e.loop.order_profile())[2] for e in census16]
    assert sorted(involutions)[-1] == 13 and involutions.count(13) == 1


def test_group_flags(groups):
    for name, G in groups.items():
        flags = check_identities(G).flags()
        assert all(v for k, v in flags.items() if k not in ("commutative", "boolean_group")), name


def test_cayley_flags(cayley):
    r = check_identities(cayley)
    assert r.moufang and r.cc and r.extra1 and r.extra2 and r.extra3
    assert not r.associative


def test_cc6_flags(cc6_loop):
    r = check_identities(cc6_loop)
    assert r.cc and not r.moufang and not r.extra and not r.associative


def test_moufang12_is_moufang_not_extra(m12):
    r = check_identities(m12)
    assert r.moufang and not r.cc and not r.extra and not r.associative


def test_failure_witness_recorded(cc6_loop):
    r = check_identities(cc6_loop)
    assert r.witnesses.get("moufang") is not None


def test_rejects_non_latin():
    with pytest.raises(InputError):
        FiniteLoop(np.array([[0, 1], [1, 1]]))


def test_rejects_missing_identity():
    with pytest.raises(InputError):
        FiniteLoop.from_rows([[1, 2, 0], [0, 1, 2], [2, 0, 1]][::-1][:1] * 3)


def test_from_rows_relabels_identity():
    # Z3 written with identity 2
    rows = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    L = FiniteLoop.from_rows(rows)
    assert is_group(L) and L.relabel is not None


def test_table_is_read_only(cayley):
    with pytest.raises(ValueError):
        cayley.table[0, 0] = 1


def test_element_order_none_without_power_associativity():
    L = FiniteLoop(np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 3, 4, 0, 1],
                             [3, 4, 1, 2, 0], [4, 2, 0, 1, 3]]))
    assert L.element_order(1) == 2
    assert L.element_order(2) is None
    assert not check_identities(L).power_associative


def test_right_associated_product(cayley):
    assert right_associated(cayley, [2, 4, 6]) == cayley.mul(cayley.mul(2, 4), 6)
    assert right_associated(cayley, []) == 0


def test_product_with_cayley_is_extra(cayley):
    P = direct_product(cyclic(4), cayley)
    assert P.n == 64 and is_extra(P)
