"""Representation-level operations: hom spaces, subquotients, decomposition,
right minimalization and the right-factorization order."""

import numpy as np
import pytest

from auskit import ffmat, rep
from auskit.errors import VerificationFailure


def dv(m):
    return m.dim_vector()


def test_hom_dims_a2(a2):
    pa, pb, qa = a2.proj("a"), a2.proj("b"), a2.inj("a")
    assert len(rep.hom_space(pa, pb)) == 1
    assert len(rep.hom_space(pb, pa)) == 0
    assert len(rep.hom_space(pb, qa)) == 1
    assert len(rep.hom_space(qa, qa)) == 1
    for f in rep.hom_space(pa, pb):
        f.check()


def test_hom_dims_kron2(kron2):
    pa, pb = kron2.proj("a"), kron2.proj("b")
    assert len(rep.hom_space(pa, pb)) == 2
    assert len(rep.hom_space(pb, pa)) == 0
    d, _, _ = rep.direct_sum(kron2, [pa, pb])
    assert len(rep.end_algebra(d)) == 4


def test_kernel_image_cokernel(a2):
    r = a2.right_mult(0)
    k, _ = rep.kernel(r)
    assert dv(k) == (0, 0)
    i, incl, onto = rep.image(r)
    assert dv(i) == (1, 0)
    assert incl.compose(onto).key() == r.key()
    c, proj = rep.cokernel(r)
    assert dv(c) == (0, 1)
    proj.check()


def test_rad_soc_top(a3lin):
    pc = a3lin.proj("c")
    assert dv(rep.rad(pc)[0]) == (1, 1, 0)
    assert dv(rep.soc(pc)[0]) == (1, 0, 0)
    assert dv(rep.top(pc)[0]) == (0, 0, 1)
    st = rep.structure(pc)
    assert st["radical_series"] == [(1, 1, 1), (1, 1, 0), (1, 0, 0)]


def test_soc_of_injective(kron2):
    qa = kron2.inj("a")
    s, incl = rep.soc(qa)
    assert dv(s) == (1, 0)
    q, _ = rep.cokernel(incl)
    assert dv(q) == (0, 2)


def test_sub_closure(kron2):
    # a single line in Q(a) at vertex b generates a (1,1) submodule
    qa = kron2.inj("a")
    seeds = [np.zeros((0, 1), dtype=int), np.array([[1, 0]], dtype=int)]
    sub, incl = rep.sub_from_vectors(qa, seeds)
    assert dv(sub) == (1, 1)
    incl.check()


def test_decompose_projective_sum(a2):
    pa, pb = a2.proj("a"), a2.proj("b")
    d, _, _ = rep.direct_sum(a2, [pa, pb, pa])
    parts = rep.decompose(d)
    assert sorted(dv(s) for s, _, _ in parts) == [(1, 0), (1, 0), (1, 1)]
    classes = rep.iso_classes([s for s, _, _ in parts])
    assert sorted(mult for _, mult in classes) == [1, 2]


def test_decompose_indecomposable(loopb):
    qa = loopb.inj("a")
    parts = rep.decompose(qa)
    assert len(parts) == 1
    pb = loopb.proj("b")
    parts = rep.decompose(rep.direct_sum(loopb, [qa, pb])[0])
    assert sorted(dv(s) for s, _, _ in parts) == [(2, 1), (2, 2)]


def test_is_isomorphic(a2):
    pa, pb, qa = a2.proj("a"), a2.proj("b"), a2.inj("a")
    assert rep.is_isomorphic(pb, qa)
    assert rep.is_isomorphic(pa, a2.simple("a"))
    assert not rep.is_isomorphic(a2.simple("a"), a2.simple("b"))
    d1 = rep.direct_sum(a2, [pa, pb])[0]
    d2 = rep.direct_sum(a2, [pb, pa])[0]
    assert rep.is_isomorphic(d1, d2)
    assert not rep.is_isomorphic(d1, rep.direct_sum(a2, [pa, pa])[0])


def test_right_minimalize(a2):
    pa, pb, qa = a2.proj("a"), a2.proj("b"), a2.inj("a")
    f1 = a2.yoneda("b", qa, [1])
    d, incls, projs = rep.direct_sum(a2, [pb, pa])
    f = f1.compose(projs[0])
    fmin, split = rep.right_minimalize(f)
    assert dv(fmin.src) == (1, 1)
    assert split.is_epi() and dv(split.src) == (2, 1)
    assert fmin.compose(split).key() == f.key()
    assert fmin.is_iso()
    # an already-minimal map stays put
    g, split2 = rep.right_minimalize(f1)
    assert split2.is_iso() and dv(g.src) == (1, 1)


def test_right_leq_and_equivalence(a2):
    qa = a2.inj("a")
    f1 = a2.yoneda("b", qa, [1])
    s, incl = rep.soc(qa)
    ok, h = rep.right_leq(incl, f1)
    assert ok
    assert f1.compose(h).key() == incl.key()
    ok2, _ = rep.right_leq(f1, incl)
    assert not ok2
    assert rep.right_equivalent(f1, f1)
    assert not rep.right_equivalent(f1, incl)


def test_pullback_meet(a2):
    qa = a2.inj("a")
    s, incl = rep.soc(qa)
    pb, pX, pZ = rep.pullback(incl, incl)
    assert dv(pb) == (1, 0)
    m = rep.meet_map(incl, incl)
    assert dv(m.src) == (1, 0) and m.tgt is qa
    i, _, _ = rep.image(m)
    assert dv(i) == (1, 0)


def test_join_map(a2):
    qa = a2.inj("a")
    f1 = a2.yoneda("b", qa, [1])
    s, incl = rep.soc(qa)
    j = rep.join_map(f1, incl)
    assert j.is_epi()
    i, _, _ = rep.image(j)
    assert dv(i) == (1, 1)


def test_morphism_checks(a2):
    pb, qa = a2.proj("b"), a2.inj("a")
    f = a2.yoneda("b", qa, [1])
    assert f.check() is f
    bad = rep.Morphism(pb, qa, [np.array([[1]]), np.array([[0]])])
    with pytest.raises(VerificationFailure):
        bad.check()


def test_zero_and_identity(a3lin):
    pc = a3lin.proj("c")
    z = rep.zero_morphism(pc, pc)
    assert z.is_zero()
    e = rep.identity_morphism(pc)
    assert e.is_iso()
    assert e.compose(z).is_zero()
