from itertools import product

import numpy as np
import pytest

from extraloop.census import census_order16, sign_kernels, tau_equivalent_kernels
from extraloop.errors import AssertionFailure, ConsistencyError, InputError
from extraloop.extension import (AbelianGroup, ExtensionSpec, build_psi, canonical16_spec, cayley_loop,
                                 derived_associator, example512_spec, extend_action, extend_alpha,
                                 extension_loop, infinite_example_cases, infinite_example_condition_check,
                                 issemi_decompose, nucleus_realization, seed_array, semidirect, sign_action,
                                 trivial_action, verify_built_psi)
from extraloop.iso import find_isomorphism
from extraloop.loop import boolean_group, check_identities, cyclic, is_extra
from extraloop.structure import Subloop, associator_subloop, center, direct_product, image, nucleus

from conftest import random_extension


def test_zero_psi_trivial_tau_is_direct_product():
    G = AbelianGroup.cyclic(3)
    L = extension_loop(3, G, trivial_action(3, G), np.zeros((8, 8), dtype=np.int64))
    assert L == direct_product(boolean_group(3), cyclic(3))


def test_associators_depend_on_b_components():
    rng = np.random.default_rng(11)
    for m, signs in ((2, None), (3, [1, -1, 1]), (4, [-1, -1, 1])):
        L, tau, psi = random_extension(rng, 3, m, signs)
        G = AbelianGroup.cyclic(m)
        D = derived_associator(3, G, tau, psi)
        A = L.associator_table()
        x = np.arange(L.n)
        bx = x // m
        assert (A == D[bx[:, None, None], bx[None, :, None], bx[None, None, :]]).all()
        assert A.max() < m  # inside {0} x G
        assert (D[0] == 0).all() and (D[:, 0] == 0).all() and (D[:, :, 0] == 0).all()


def test_division_formulas_checked_on_build():
    rng = np.random.default_rng(2)
    G = AbelianGroup.cyclic(5)
    tau = extend_action(2, G, [G.unit_automorphism(-1), G.unit_automorphism(1)])
    psi = rng.integers(0, 5, size=(4, 4))
    psi[0] = psi[:, 0] = 0
    L = extension_loop(2, G, tau, psi, verify=True)
    assert L.n == 20


def test_extension_input_errors():
    G = AbelianGroup.cyclic(3)
    tau = trivial_action(2, G)
    bad = np.zeros((4, 4), dtype=np.int64)
    bad[0, 1] = 1
    with pytest.raises(InputError):
        extension_loop(2, G, tau, bad)
    with pytest.raises(InputError):
        extension_loop(2, G, tau, np.zeros((3, 3)))
    with pytest.raises(InputError):
        # 2 is not an involution of Z5
        extend_action(1, AbelianGroup.cyclic(5), [AbelianGroup.cyclic(5).unit_automorphism(2)])
    with pytest.raises(InputError):
        AbelianGroup.boolean(2).matrix_automorphism([1, 1])


def test_example512_is_extra(ex512):
    L = ex512.loop
    assert L.n == 512 and is_extra(L)
    assert center(L).order == 2
    A = associator_subloop(L)
    assert A.order == 32 and L.n // nucleus(L).order == 16


def test_zero_seed_extends_to_zero():
    G = AbelianGroup.boolean(2)
    abar = extend_alpha(3, G, trivial_action(3, G), np.zeros((3, 3, 3), dtype=np.int64))
    assert (abar == 0).all()


def test_example512_seed_matches_associators(ex512):
    spec = example512_spec()
    tau = spec.tau
    abar = extend_alpha(4, spec.G, tau, spec.alpha)
    L = ex512.loop
    nG = spec.G.order
    for a, b, c in product(range(16), repeat=3):
        assert L.associator(a * nG, b * nG, c * nG) == abar[a, b, c]


def test_canonical_seed_is_determinant():
    G = AbelianGroup.boolean(1)
    abar = extend_alpha(3, G, trivial_action(3, G), seed_array(3, {(0, 1, 2): 1}))
    for a, b, c in product(range(8), repeat=3):
        M = np.array([[(v >> i) & 1 for i in range(3)] for v in (a, b, c)])
        assert abar[a, b, c] == round(np.linalg.det(M)) % 2


def test_psi_vanishes_on_basis_and_prefix_rule():
    spec = example512_spec()
    psi = spec.resolved_psi()
    abar = extend_alpha(4, spec.G, spec.tau, spec.alpha)
    for i in range(4):
        assert (psi[1 << i] == 0).all()
    # psi(e1 + e2, c) = abar(e2, e1, c)
    for c in range(16):
        assert psi[3, c] == abar[2, 1, c]


def test_canonical_is_census_class(census16):
    from extraloop.extension import canonical16

    L = canonical16()
    hits = [e.name for e in census16 if find_isomorphism(L, e.loop) is not None]
    assert len(hits) == 1


def test_single_cell_perturbation_breaks():
    spec = canonical16_spec()
    tau, psi = spec.tau, spec.resolved_psi()
    for a, b in product(range(1, 8), repeat=2):
        bad = psi.copy()
        bad[a, b] ^= 1
        with pytest.raises(AssertionFailure):
            verify_built_psi(3, spec.G, tau, spec.alpha, bad)


def test_build_psi_rejects_bad_seeds():
    G = AbelianGroup.boolean(1)
    tau = trivial_action(3, G)
    with pytest.raises(InputError):
        build_psi(3, G, tau, seed_array(3, {(0, 0, 1): 1}))  # not alternating
    with pytest.raises(InputError):
        build_psi(3, G, tau, seed_array(3, {(0, 1, 2): 1}, symmetric=False))


def test_seed_conflict():
    with pytest.raises(InputError):
        seed_array(3, {(0, 1, 2): 1, (2, 1, 0): 0})


def test_spec_alpha_and_psi_exclusive():
    G = AbelianGroup.boolean(1)
    with pytest.raises(InputError):
        ExtensionSpec(3, G, alpha=np.zeros((3, 3, 3)), psi=np.zeros((8, 8)))


def test_trivial_semidirect_is_direct_product(cayley):
    G = cyclic(3)
    L = semidirect(cayley, G, np.tile(np.arange(3), (16, 1)))
    assert L == direct_product(cayley, G)


def test_cayley_sign_actions_extra(cayley):
    for K in sign_kernels(cayley):
        L = semidirect(cayley, cyclic(3), sign_action(cayley, K.elements, 3))
        assert L.n == 48 and is_extra(L)


def test_order80(census16):
    for e in census16:
        for K in sign_kernels(e.loop)[:2]:
            L = semidirect(e.loop, cyclic(5), sign_action(e.loop, K.elements, 5))
            assert L.n == 80 and is_extra(L)


def test_semidirect_rejects_non_homomorphism(cayley):
    tau = sign_action(cayley, [0, 1], 3)
    with pytest.raises(InputError):
        semidirect(cayley, cyclic(3), tau)


def test_moufang_inherits(m12):
    # the index-2 subgroup S3 is the kernel of a sign action
    L = semidirect(m12, cyclic(3), sign_action(m12, range(6), 3), require_extra=False)
    r = check_identities(L)
    assert L.n == 36 and r.moufang and not r.extra


def test_dict_action_on_generators(cayley):
    neg = np.array([0, 2, 1])
    ident = np.arange(3)
    L = semidirect(cayley, cyclic(3), {2: ident, 4: ident, 8: neg})
    assert is_extra(L)


def test_nucleus_realization_small():
    Q = nucleus_realization(cyclic(2))
    assert Q.n == 16 and nucleus(Q).order == 2
    Q4 = nucleus_realization(cyclic(4))
    assert Q4.n == 32 and find_isomorphism(nucleus(Q4).as_loop(), cyclic(4)) is not None
    assert is_extra(Q4)


def test_nucleus_realization_needs_involution():
    with pytest.raises(InputError):
        nucleus_realization(cyclic(3))


def test_cayley_relations(cayley):
    # e1 = 2, e2 = 4, e3 = 6; odd index = negative
    assert cayley.mul(2, 4) == 6
    assert cayley.mul(4, 2) == 7
    assert cayley.mul(1, 1) == 0
    assert all(cayley.mul(1, x) == cayley.mul(x, 1) for x in range(16))
    r = check_identities(cayley)
    assert r.extra and not r.associative


def test_cayley_rejects_bad_convention():
    bad = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))
    L = cayley_loop(bad, verify=False)
    assert not is_extra(L)
    with pytest.raises(AssertionFailure):
        cayley_loop(bad)


def test_issemi_two_loop(cayley):
    d = issemi_decompose(cayley)
    assert d.G.order == 1 and d.B.order == 16


def test_issemi_order48(census48):
    for e in census48:
        d = issemi_decompose(e.loop)
        assert d.B.order == 16 and d.G.order == 3
        assert find_isomorphism(d.rebuilt, e.loop) is not None


def test_issemi_round_trip_order80(l80):
    L = l80.loop
    d = issemi_decompose(L)
    B1 = d.B.as_loop()
    C = l80.semidirect.B
    phi = find_isomorphism(C, B1)
    assert phi is not None
    ker_orig = Subloop(C, tuple(b for b in range(16) if (l80.semidirect.tau[b] == np.arange(5)).all()))
    pos = {a: i for i, a in enumerate(d.B.elements)}
    ker_new = Subloop(B1, tuple(sorted(pos[a] for a, t in d.tau.items() if (t == np.arange(5)).all())))
    assert tau_equivalent_kernels(B1, ker_new, image(C, ker_orig, phi))


def test_issemi_not_applicable(l960):
    assert issemi_decompose(l960.loop) is None


def test_infinite_example():
    assert infinite_example_condition_check(3)
    cases = infinite_example_cases(4)
    assert infinite_example_condition_check(4)
    assert cases["distinct"][0] > 0 and cases["distinct"][1] == 0
    assert cases["e1=e2"][0] > 0 and cases["e1=e2"][1] == 0
    with pytest.raises(InputError):
        infinite_example_condition_check(2)


def test_census_classes_by_construction():
    c = census_order16()
    assert len(c.classes) == 5 and c.cocycle_dim == 10
