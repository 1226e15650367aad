import pytest

from auskit import factor, kronecker as kr, lattice, rep
from auskit.errors import VerificationFailure


def test_preprojective_preinjective_dims(kron2):
    for i in range(5):
        assert tuple(kr.kP(kron2, i).dim_vector()) == (i + 1, i)
    for j in range(5):
        assert tuple(kr.kQ(kron2, j).dim_vector()) == (j, j + 1)
    assert rep.is_isomorphic(kr.kP(kron2, 0), kron2.simple(0))
    assert rep.is_isomorphic(kr.kP(kron2, 1), kron2.proj(1))
    assert rep.is_isomorphic(kr.kQ(kron2, 0), kron2.simple(1))
    assert rep.is_isomorphic(kr.kQ(kron2, 1), kron2.inj(0))


def test_three_arrow_preprojectives(kron3):
    assert tuple(kr.kP(kron3, 1).dim_vector()) == (3, 1)
    assert tuple(kr.kP(kron3, 2).dim_vector()) == (8, 3)
    assert tuple(kr.kQ(kron3, 2).dim_vector()) == (3, 8)


def test_defects(kron2):
    assert [kr.defect(kr.kP(kron2, i)) for i in range(3)] == [-1, -1, -1]
    assert [kr.defect(kr.kQ(kron2, j)) for j in range(3)] == [1, 1, 1]
    assert kr.defect(kr.kR(kron2, 0, 2)) == 0


def test_regular_modules(kron2):
    labels = kr.tube_labels(2, 2)
    assert labels == ["inf", 0, 1, (1, 1, 1)]
    for lab in labels:
        m = kr.kR(kron2, lab, 1)
        assert m.total_dim == 2 * kr.label_degree(lab)
        assert len(rep.decompose(m)) == 1
        assert kr.tube_of(kron2, m) == lab
    # quasi-length two in the same tube, still indecomposable
    r2 = kr.kR(kron2, 1, 2)
    assert tuple(r2.dim_vector()) == (2, 2)
    assert len(rep.decompose(r2)) == 1
    assert kr.tube_of(kron2, r2) == 1
    # distinct tubes are Hom-orthogonal
    assert not rep.hom_space(kr.kR(kron2, 0, 1), kr.kR(kron2, "inf", 1))


def test_regular_tube_needs_two_arrows(kron3):
    with pytest.raises(ValueError):
        kr.kR(kron3, 0, 1)


def test_monic_irreducibles():
    assert kr.monic_irreducibles(2, 1) == [(1, 0), (1, 1)]
    assert kr.monic_irreducibles(2, 2) == [(1, 1, 1)]
    assert len(kr.monic_irreducibles(3, 2)) == 3
    assert len(kr.monic_irreducibles(2, 3)) == 2


def test_strongly_regular_counts(kron2):
    assert len(kr.enumerate_strongly_regular(kron2, 2)) == 3
    assert len(kr.enumerate_strongly_regular(kron2, 4)) == 7
    a3 = kr.kronecker_algebra(2, 3)
    assert len(kr.enumerate_strongly_regular(a3, 2)) == 4
    # summands inside one sum are pairwise distinct tube positions
    for m, labs in kr.enumerate_strongly_regular(kron2, 4):
        assert len(set(labs)) == len(labs)
        assert m.total_dim == 4


def test_shape_table(kron2):
    rows, ok = kr.verify_table(2, max_sum=2, max_t=2)
    assert ok
    by_pair = {(r["c"], r["y"]): r for r in rows}
    assert by_pair[("P0", "P2")]["shape"] == ("G", 3, 2)
    assert by_pair[("P0", "Q1")]["hom_dim"] == 1
    assert by_pair[("R[inf,2]", "R[inf,2]")]["shape"] == ("I", 2)
    assert by_pair[("R[0,1]", "Q1")]["shape"] == ("I", 1)
    assert by_pair[("Q2", "Q0")]["shape"] == ("G", 3, 2)
    # a pair from different tubes
    assert by_pair[("R[0,1]", "R[1,1]")]["hom_dim"] == 0


def test_sigma_check(kron2):
    rpt = kr.sigma_check(kron2, 2, 0)
    assert rpt["ok"] and rpt["classes"] == 3 and rpt["family"] == 3

    rpt = kr.sigma_check(kron2, 0, 1)
    assert rpt["ok"] and rpt["classes"] == 1 and rpt["dim"] == 0


def test_maximal_submodules_of_q1_are_strongly_regular(kron2):
    q1 = kr.kQ(kron2, 1)
    maxes = lattice.maximal_submodules(q1)
    fam = kr.enumerate_strongly_regular(kron2, 2)
    assert len(maxes) == 3 and len(fam) == 3
    hits = [[rep.is_isomorphic(s, m) for m, _ in fam] for s, _ in maxes]
    assert all(sum(row) == 1 for row in hits)
    assert all(any(col) for col in zip(*hits))


def test_three_arrow_length_one_classes(kron3):
    c, y = kr.kP(kron3, 2), kr.kQ(kron3, 0)
    fl = factor.FactorizationLattice.build(c, y)
    assert len(fl.lat) == 16  # all subspaces of a 3-dim hom space over F_2
    ones = fl.length_one_indices()
    assert len(ones) == 7
    srcs = [fl.classes[k].f.src for k in ones]
    for s in srcs:
        assert tuple(s.dim_vector()) == (1, 1)
        assert len(rep.decompose(s)) == 1
    for a in range(len(srcs)):
        for b in range(a):
            assert not rep.is_isomorphic(srcs[a], srcs[b])
    assert factor.is_cofork([fl.classes[k].f for k in ones])
