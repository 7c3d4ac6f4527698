import numpy as np
import pytest

import oracles
import torslat
from torslat import linalg, verify as verify_mod
from torslat.config import DEFAULT_CONFIG
from torslat.errors import DecomposeBlowup, SubspaceBlowup
from torslat.modrep import (
    Module,
    Morphism,
    all_extensions,
    decompose,
    direct_sum,
    hom_basis,
    identity_morphism,
    is_brick,
    is_isomorphic,
    kernel_image_cokernel,
    quotient_by,
    submodules,
    zero_module,
)
from torslat.quivalg import (
    Arrow,
    Quiver,
    build_algebra,
    projective_module,
    simple_module,
)


@pytest.fixture(scope="module")
def a2():
    return verify_mod.load_corpus_algebra("a2")


def test_module_rejects_relation_violation():
    alg = verify_mod.load_corpus_algebra("ppa2")
    one = np.array([[1]], dtype=np.int64)
    with pytest.raises(ValueError):
        Module(alg, (1, 1), (one, one))


def test_module_rejects_shape_mismatch(a2):
    with pytest.raises(ValueError):
        Module(a2, (1, 1), (np.zeros((2, 1), dtype=np.int64),))


def test_hom_dims_match_brute_force_everywhere():
    for name in ("a2", "a3s", "ppa2", "nak3"):
        alg = verify_mod.load_corpus_algebra(name)
        cat = torslat.build_catalog(alg)
        for i, x in enumerate(cat.ind):
            for j, y in enumerate(cat.ind):
                assert cat.hom_dim[i][j] == oracles.brute_hom_dim(x, y), (
                    name,
                    cat.names[i],
                    cat.names[j],
                )


def test_kernel_image_cokernel_exactness(a2):
    p1 = projective_module(a2, 0)
    s1 = simple_module(a2, 0)
    s2 = simple_module(a2, 1)
    (f,) = hom_basis(p1, s1)
    kic = kernel_image_cokernel(f)
    assert kic.kernel.dims == s2.dims
    assert is_isomorphic(kic.kernel, s2)
    assert kic.image.dims == s1.dims
    assert kic.cokernel.is_zero


def test_zero_and_identity_maps(a2):
    p1 = projective_module(a2, 0)
    z = Morphism(
        p1, p1, tuple(np.zeros((d, d), dtype=np.int64) for d in p1.dims)
    )
    kic = kernel_image_cokernel(z)
    assert kic.kernel.dims == p1.dims
    assert kic.image.is_zero
    assert kic.cokernel.dims == p1.dims
    kic_id = kernel_image_cokernel(identity_morphism(p1))
    assert kic_id.kernel.is_zero
    assert kic_id.cokernel.is_zero


def test_length_additivity_over_all_hom_bases():
    alg = verify_mod.load_corpus_algebra("a3")
    cat = torslat.build_catalog(alg)
    for x in cat.ind:
        for y in cat.ind:
            for f in hom_basis(x, y):
                kic = kernel_image_cokernel(f)
                assert kic.kernel.total_dim + kic.image.total_dim == x.total_dim
                assert kic.image.total_dim + kic.cokernel.total_dim == y.total_dim


def test_direct_sum_decomposes_back(a2):
    s1 = simple_module(a2, 0)
    p1 = projective_module(a2, 0)
    big = direct_sum(s1, p1, s1)
    parts = decompose(big)
    assert sorted(m.dims for m in parts) == [(1, 0), (1, 0), (1, 1)]


def test_decompose_zero_module(a2):
    assert decompose(zero_module(a2)) == []


def test_indecomposable_stays_whole(a2):
    p1 = projective_module(a2, 0)
    assert [m.dims for m in decompose(p1)] == [(1, 1)]


def test_local_endomorphisms_and_budget():
    q = Quiver(2, (Arrow("a", 0, 1), Arrow("b", 0, 1)))
    alg = build_algebra(q, (), 2)
    jordan = Module(
        alg,
        (2, 2),
        (
            np.eye(2, dtype=np.int64),
            np.array([[0, 1], [0, 0]], dtype=np.int64),
        ),
    )
    # indecomposable with a two-dimensional local endomorphism ring
    assert [m.dims for m in decompose(jordan)] == [(2, 2)]
    assert not is_brick(jordan)
    with pytest.raises(DecomposeBlowup):
        decompose(jordan, DEFAULT_CONFIG.with_overrides(iso_budget=2))


def test_is_isomorphic_distinguishes(a2):
    s1 = simple_module(a2, 0)
    s2 = simple_module(a2, 1)
    p1 = projective_module(a2, 0)
    assert is_isomorphic(s1, s1)
    assert not is_isomorphic(s1, s2)
    assert not is_isomorphic(direct_sum(s1, s2), p1)


def test_iso_invariant_under_base_change():
    alg = verify_mod.load_corpus_algebra("a3s")
    e = Module(
        alg,
        (1, 1, 1),
        (
            np.array([[1]], dtype=np.int64),
            np.array([[1]], dtype=np.int64),
        ),
    )
    twisted = Module(
        alg,
        (1, 1, 1),
        (
            np.array([[2]], dtype=np.int64),
            np.array([[3]], dtype=np.int64),
        ),
    )
    assert is_isomorphic(e, twisted)
    assert is_brick(e)


def test_bricks_in_ppa2():
    alg = verify_mod.load_corpus_algebra("ppa2")
    cat = torslat.build_catalog(alg)
    assert all(cat.bricks)


def test_submodule_count_against_subgroup_structure(a2):
    p1 = projective_module(a2, 0)
    subs = submodules(p1)
    # 0, socle, whole: the unique composition series
    assert len(subs) == 3
    dims = sorted(s.dims for s, _ in subs)
    assert dims == [(0, 0), (0, 1), (1, 1)]


def test_submodules_are_arrow_stable():
    alg = verify_mod.load_corpus_algebra("nak3")
    p = alg.prime
    for v in range(3):
        pv = projective_module(alg, v)
        for sub, incl in submodules(pv):
            for k, a in enumerate(alg.quiver.arrows):
                moved = (pv.mats[k] @ incl.comps[a.source]) % p
                span = np.hstack([incl.comps[a.target], moved])
                assert linalg.rank(span, p) == linalg.rank(incl.comps[a.target], p)


def test_submodule_budget(a2):
    p1 = projective_module(a2, 0)
    with pytest.raises(SubspaceBlowup):
        submodules(
            direct_sum(*([p1] * 8)),
            DEFAULT_CONFIG.with_overrides(subspace_budget=4),
        )


def test_quotient_by_submodule(a2):
    p1 = projective_module(a2, 0)
    for sub, incl in submodules(p1):
        q, proj = quotient_by(incl)
        assert q.total_dim == p1.total_dim - sub.total_dim
        if sub.dims == (0, 1):
            assert is_isomorphic(q, simple_module(a2, 0))


def test_extensions_of_simples_give_projective(a2):
    s1 = simple_module(a2, 0)
    s2 = simple_module(a2, 1)
    # middles of 0 -> S2 -> E -> S1 -> 0
    mids = all_extensions(s1, s2)
    kinds = sorted(tuple(m.dims) for m in mids)
    assert kinds == [(1, 1), (1, 1)]
    split = [m for m in mids if not is_isomorphic(m, projective_module(a2, 0))]
    assert len(split) == 1
    # the reversed direction only splits
    mids_rev = all_extensions(s2, s1)
    assert len(mids_rev) == 1


def test_extension_middles_contain_sub():
    alg = verify_mod.load_corpus_algebra("a3")
    s3 = simple_module(alg, 2)
    s2 = simple_module(alg, 1)
    for e in all_extensions(s2, s3):
        subs = [s for s, _ in submodules(e)]
        assert any(is_isomorphic(s, s3) for s in subs if s.total_dim == 1)


def test_extension_count_respects_prime():
    alg = verify_mod.load_corpus_algebra("a3s")
    s1 = simple_module(alg, 0)
    s2 = simple_module(alg, 1)
    # four nonsplit cocycle lines at p=5, all the same middle up to iso
    mids = all_extensions(s1, s2)
    assert len(mids) == 2
