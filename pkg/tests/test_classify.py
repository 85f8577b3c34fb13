import math

import numpy as np
import pytest

from cstarpow.algebra import (make_algebra, power_map, symmetric_power_basis,
                              tensor_power)
from cstarpow.classify import (_descriptor,
                               direct_sum_of_power_maps, enumerate_sn_irreps,
                               homogeneous_components, intertwining_cocycle,
                               isotropy_group, non_schur_weyl_witness,
                               realize_sn_irrep, schur_weyl_injectivity_check,
                               schur_weyl_labels, schur_weyl_rep,
                               wedderburn_comparison, wedderburn_crosscheck)
from cstarpow.crossed import spatial_pair, tensor_permutation_action
from cstarpow.linalg import op_norm
from cstarpow.structure import equivalent, is_irreducible


# ---------------------------------------------------------------------------
# descriptors and enumeration

def test_descriptor_validation(m23):
    desc = _descriptor(m23, (0, 1), (1, 1), ((1,), (1,)))
    assert desc.dim == 6
    assert desc.to_json() == {"blocks": [0, 1], "q": [1, 1],
                              "lambdas": [[1], [1]], "dim": 6}
    with pytest.raises(ValueError):
        _descriptor(m23, (1, 0), (1, 1), ((1,), (1,)))  # not ascending
    with pytest.raises(ValueError):
        _descriptor(m23, (0,), (2,), ((1, 1, 1),))  # wrong partition sum
    with pytest.raises(ValueError):
        _descriptor(m23, (0,), (3,), ((1, 1, 1),))  # too many rows for M_2


def test_enumerate_m2_degree2(m2):
    descs = enumerate_sn_irreps(m2, 2)
    assert sorted(d.dim for d in descs) == [1, 3]
    assert sum(d.dim ** 2 for d in descs) == 10
    lambdas = {d.lambdas[0] for d in descs}
    assert lambdas == {(2,), (1, 1)}


def test_enumerate_c2_degree3(c2):
    descs = enumerate_sn_irreps(c2, 3)
    assert len(descs) == 4
    assert all(d.dim == 1 for d in descs)
    assert sum(d.dim ** 2 for d in descs) == 4 == math.comb(4, 3)


def test_enumerate_m23_degree2(m23):
    descs = enumerate_sn_irreps(m23, 2)
    assert sorted(d.dim for d in descs) == [1, 3, 3, 6, 6]
    assert sum(d.dim ** 2 for d in descs) == 91 == math.comb(14, 2)


def test_enumerate_degree_one_gives_blocks(m23):
    descs = enumerate_sn_irreps(m23, 1)
    assert sorted(d.dim for d in descs) == [2, 3]
    assert all(d.q == (1,) and d.lambdas == ((1,),) for d in descs)


# ---------------------------------------------------------------------------
# realization

def test_realize_m2_symmetric_square(m2):
    sym = symmetric_power_basis(m2, 2)
    descs = enumerate_sn_irreps(m2, 2)
    by_dim = {d.dim: d for d in descs}
    top = realize_sn_irrep(m2, 2, by_dim[3], sym=sym)
    assert top.dim == 3
    assert is_irreducible(top.images)
    sign = realize_sn_irrep(m2, 2, by_dim[1], sym=sym)
    assert sign.dim == 1
    assert not equivalent(top.images, sign.images)


def test_realized_reps_are_homomorphisms(m2, rng):
    sym = symmetric_power_basis(m2, 2)
    desc = enumerate_sn_irreps(m2, 2)[1]
    rep = realize_sn_irrep(m2, 2, desc, sym=sym)
    power = sym.power
    # multiplicativity on random elements of the fixed span
    for _ in range(5):
        a = sym.vectors.T @ rng.standard_normal(sym.size)
        b = sym.vectors.T @ rng.standard_normal(sym.size)
        ab = power.multiply(a, b)
        coeff_a, *_ = np.linalg.lstsq(sym.vectors.T, a, rcond=None)
        coeff_b, *_ = np.linalg.lstsq(sym.vectors.T, b, rcond=None)
        coeff_ab, *_ = np.linalg.lstsq(sym.vectors.T, ab, rcond=None)
        img = np.tensordot
        lhs = img(coeff_ab, rep.images, axes=(0, 0))
        rhs = img(coeff_a, rep.images, axes=(0, 0)) \
            @ img(coeff_b, rep.images, axes=(0, 0))
        assert op_norm(lhs - rhs) < 1e-9


def test_realize_product_descriptor_is_tensor_of_blocks(m23):
    # the mixed descriptor acts like the tensor product of the two block
    # representations on the orbit-sum basis
    sym = symmetric_power_basis(m23, 2)
    desc = _descriptor(m23, (0, 1), (1, 1), ((1,), (1,)))
    rep = realize_sn_irrep(m23, 2, desc, sym=sym)
    assert rep.dim == 6
    pi1 = m23.block_images(0)
    pi2 = m23.block_images(1)
    direct = []
    for v in sym.vectors:
        acc = np.zeros((6, 6), dtype=complex)
        for flat in np.nonzero(v)[0]:
            i, j = divmod(int(flat), m23.dim)
            acc += v[flat] * np.kron(pi1[i], pi2[j])
        direct.append(acc)
    assert equivalent(rep.images, np.stack(direct))


def test_realize_all_dims_one_for_commutative(c3):
    sym = symmetric_power_basis(c3, 2)
    descs = enumerate_sn_irreps(c3, 2)
    assert len(descs) == 6
    for d in descs:
        rep = realize_sn_irrep(c3, 2, d, sym=sym)
        assert rep.dim == 1


def test_realized_descriptors_are_separating(m23):
    sym = symmetric_power_basis(m23, 2)
    reps = [realize_sn_irrep(m23, 2, d, sym=sym)
            for d in enumerate_sn_irreps(m23, 2)]
    assert all(is_irreducible(r.images) for r in reps)
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            assert not equivalent(reps[a].images, reps[b].images)


def test_realize_rejects_mismatched_degree(m2):
    desc = enumerate_sn_irreps(m2, 2)[0]
    with pytest.raises(ValueError):
        realize_sn_irrep(m2, 3, desc)


# ---------------------------------------------------------------------------
# crosscheck

def test_wedderburn_crosscheck_cases(m2, c3):
    assert wedderburn_comparison(m2, 2)[0] == [1, 3]
    assert wedderburn_crosscheck(m2, 2)
    assert wedderburn_comparison(c3, 2) == ([1] * 6, [1] * 6)
    enum, spec = wedderburn_comparison(m2, 3)
    assert enum == spec == [2, 4]
    assert sum(d * d for d in enum) == 20 == math.comb(6, 3)


# ---------------------------------------------------------------------------
# Schur-Weyl representations

def test_schur_weyl_dims(m2):
    sym = symmetric_power_basis(m2, 2)
    top = schur_weyl_rep(m2, 0, (2,), sym=sym)
    assert top.dim == 3
    sign = schur_weyl_rep(m2, 0, (1, 1), sym=sym)
    assert sign.dim == 1
    with pytest.raises(ValueError):
        schur_weyl_rep(m2, 0, (1, 1, 1))  # more rows than the block size


def test_schur_weyl_alternating_is_one_dimensional():
    m3 = make_algebra([3])
    rep = schur_weyl_rep(m3, 0, (1, 1, 1))
    assert rep.dim == 1


def test_schur_weyl_matches_realization(m2, m23):
    sym = symmetric_power_basis(m2, 2)
    for lam in [(2,), (1, 1)]:
        sw = schur_weyl_rep(m2, 0, lam, sym=sym)
        desc = _descriptor(m2, (0,), (2,), (lam,))
        assert equivalent(sw.images, realize_sn_irrep(m2, 2, desc, sym=sym).images)
    sym23 = symmetric_power_basis(m23, 2)
    sw = schur_weyl_rep(m23, 1, (2,), sym=sym23)
    desc = _descriptor(m23, (1,), (2,), ((2,),))
    assert equivalent(sw.images,
                      realize_sn_irrep(m23, 2, desc, sym=sym23).images)


def test_schur_weyl_injectivity(m2, m23):
    assert schur_weyl_injectivity_check(m2, 3)
    assert schur_weyl_injectivity_check(m23, 2)
    point = make_algebra([1])
    # one block: a single label per degree, nothing to collide
    assert schur_weyl_injectivity_check(point, 3)
    assert [lam for _, lam in schur_weyl_labels(point, 2)] == [(2,)]


def test_non_schur_weyl_witness_two_characters(c2):
    cert = non_schur_weyl_witness(c2, 0, 1)
    assert cert.witness.dim == 1
    assert cert.is_valid
    # evaluation oracle: the witness sends the mixed orbit sum to 1 and the
    # pure squares to 0
    sym = symmetric_power_basis(c2, 2)
    values = [cert.witness.images[i][0, 0] for i in range(sym.size)]
    expected = [1.0 if len(set(ms)) == 2 else 0.0 for ms in sym.index]
    assert np.allclose(values, expected)


def test_non_schur_weyl_witness_mixed_blocks():
    m2c = make_algebra([2, 1])
    cert = non_schur_weyl_witness(m2c, 0, 1)
    assert cert.witness.dim == 2
    assert cert.is_valid
    with pytest.raises(ValueError):
        non_schur_weyl_witness(m2c, 1, 1)


# ---------------------------------------------------------------------------
# isotropy groups and cocycles

def test_isotropy_full_for_power_of_one_block(m2):
    action = tensor_permutation_action(m2, 3)
    pi = spatial_pair(action, check=False).pi
    iso = isotropy_group(pi, action)
    assert iso.order == 6


def test_isotropy_trivial_for_distinct_blocks(m23):
    action = tensor_permutation_action(m23, 2)
    power = action.algebra
    pi1 = m23.block_images(0)
    pi2 = m23.block_images(1)
    images = np.stack([np.kron(pi1[i], pi2[j])
                       for i in range(m23.dim) for j in range(m23.dim)])
    iso = isotropy_group(images, action)
    assert iso.order == 1


def test_isotropy_partial_repeat(c2):
    # two copies of one character and one of the other: the swap of the
    # first two factors is the only symmetry
    action = tensor_permutation_action(c2, 3)
    images = np.zeros((8, 1, 1), dtype=complex)
    images[int(np.ravel_multi_index((0, 0, 1), (2, 2, 2))), 0, 0] = 1.0
    iso = isotropy_group(images, action)
    assert iso.order == 2
    swap_first_two = action.group.perms.index((1, 0, 2))
    assert swap_first_two in iso.elements


def test_intertwining_cocycle_permutation_case(m2):
    action = tensor_permutation_action(m2, 2)
    pair = spatial_pair(action, check=False)
    iso = isotropy_group(pair.pi, action)
    assert iso.order == 2
    data = intertwining_cocycle(pair.pi, action, iso)
    assert np.allclose(data.sigma, 1.0)
    assert data.rep.cocycle_identity_residual() < 1e-9
    # the intertwiners realize the factor swap up to the fixed phase
    tau = pair.unitary
    for local, amb in enumerate(iso.elements):
        v = data.rep.matrices[local]
        assert op_norm(v - tau.mat(amb)) < 1e-8


def test_intertwining_cocycle_trivial_action(c2):
    from cstarpow.crossed import trivial_action
    from cstarpow.groups import symmetric_group
    m2 = make_algebra([2])
    action = trivial_action(m2, symmetric_group(2))
    pi = m2.basis_matrices()
    iso = isotropy_group(pi, action)
    assert iso.order == 2
    data = intertwining_cocycle(pi, action, iso)
    for v in data.rep.matrices:
        assert op_norm(v - np.eye(2)) < 1e-9
    assert np.allclose(data.sigma, 1.0)


# ---------------------------------------------------------------------------
# homogeneous components

def test_homogeneous_pure_degree(m2, rng):
    power = tensor_power(m2, 2)

    def phi(x):
        return power.embed(power_map(m2, x, 2))

    comps = homogeneous_components(phi, m2, 2)
    x = m2.random_element(rng)
    x = x / m2.norm(x)
    assert op_norm(comps[2](x) - phi(x)) < 1e-9
    assert op_norm(comps[0](x)) < 1e-9
    assert op_norm(comps[1](x)) < 1e-9


def test_homogeneous_block_sum(m2, rng):
    phi = direct_sum_of_power_maps(m2, [1, 2])
    comps = homogeneous_components(phi, m2, 2)
    unit = m2.unit()
    p1 = comps[1](unit)
    p2 = comps[2](unit)
    assert np.allclose(p1, np.diag([1, 1, 0, 0, 0, 0]))
    assert np.allclose(p2, np.diag([0, 0, 1, 1, 1, 1]))
    assert op_norm(p1 @ p2) < 1e-12
    for _ in range(10):
        x = m2.random_element(rng)
        x = x / m2.norm(x)
        y = m2.random_element(rng)
        y = y / m2.norm(y)
        for deg in (1, 2):
            lhs = comps[deg](m2.multiply(x, y))
            rhs = comps[deg](x) @ comps[deg](y)
            assert op_norm(lhs - rhs) < 1e-9
            z = np.exp(0.7j)
            assert op_norm(comps[deg](z * x) - z ** deg * comps[deg](x)) < 1e-9
        total = sum(c(x) for c in comps)
        assert op_norm(total - phi(x)) < 1e-9


def test_homogeneous_constant_on_point():
    point = make_algebra([1])

    def phi(x):
        return np.eye(1, dtype=complex)

    comps = homogeneous_components(phi, point, 1)
    assert op_norm(comps[0](np.array([0.3 + 0.1j])) - np.eye(1)) < 1e-12
    assert op_norm(comps[1](np.array([0.3 + 0.1j]))) < 1e-12


def test_homogeneous_degree_bound_too_small(m2):
    phi = direct_sum_of_power_maps(m2, [1, 2])
    with pytest.raises(ValueError):
        homogeneous_components(phi, m2, 1)
