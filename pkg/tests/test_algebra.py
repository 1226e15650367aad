"""Algebra construction: bases, projectives/injectives, parsing, module exprs."""

import numpy as np
import pytest

from auskit import algebra, rep
from auskit.errors import BadRelation, NotFiniteDimensional, ParseError


def dv(m):
    return m.dim_vector()


def test_a2_basis_and_modules(a2):
    assert a2.dim == 3
    assert dv(a2.proj("a")) == (1, 0)
    assert dv(a2.proj("b")) == (1, 1)
    assert dv(a2.inj("a")) == (1, 1)
    assert dv(a2.inj("b")) == (0, 1)
    assert dv(a2.simple("a")) == (1, 0)


def test_a3_linear_modules(a3lin):
    assert a3lin.dim == 6
    assert dv(a3lin.proj("a")) == (1, 0, 0)
    assert dv(a3lin.proj("b")) == (1, 1, 0)
    assert dv(a3lin.proj("c")) == (1, 1, 1)
    assert dv(a3lin.inj("a")) == (1, 1, 1)
    assert dv(a3lin.inj("b")) == (0, 1, 1)
    assert dv(a3lin.inj("c")) == (0, 0, 1)


def test_a3_radical_square_zero(a3rad):
    # alpha*beta = 0 kills the unique length-2 path
    assert a3rad.dim == 5
    assert dv(a3rad.proj("c")) == (0, 1, 1)
    assert dv(a3rad.inj("a")) == (1, 1, 0)
    ia = a3rad.quiver.arrow_index("alpha")
    ib = a3rad.quiver.arrow_index("beta")
    c = a3rad.quiver.vertex_index("c")
    assert not a3rad.nf((c, (ia, ib))).any()


def test_loop_b(loopb):
    assert loopb.dim == 5
    assert dv(loopb.proj("a")) == (2, 0)
    assert dv(loopb.proj("b")) == (2, 1)
    assert dv(loopb.inj("a")) == (2, 2)
    assert dv(loopb.inj("b")) == (0, 1)
    ia = loopb.quiver.arrow_index("alpha")
    a = loopb.quiver.vertex_index("a")
    assert not loopb.nf((a, (ia, ia))).any()
    assert loopb.nf((a, (ia,))).any()


def test_uniserial(uni4):
    assert uni4.dim == 4
    pa = uni4.proj("a")
    assert dv(pa) == (4,)
    st = rep.structure(pa)
    assert st["radical_series"] == [(4,), (3,), (2,), (1,)]
    assert st["socle_series"] == [(1,), (1,), (1,), (1,)]
    assert st["top"] == (1,)


def test_kron2_modules(kron2):
    assert kron2.dim == 4
    assert dv(kron2.proj("a")) == (1, 0)
    assert dv(kron2.proj("b")) == (2, 1)
    assert dv(kron2.inj("a")) == (1, 2)
    assert dv(kron2.inj("b")) == (0, 1)


def test_subspace3_modules(sub3):
    assert sub3.dim == 7
    assert dv(sub3.proj("a")) == (1, 0, 0, 0)
    assert dv(sub3.proj("b1")) == (1, 1, 0, 0)
    assert dv(sub3.inj("a")) == (1, 1, 1, 1)
    assert dv(sub3.inj("b2")) == (0, 0, 1, 0)


def test_commutativity_relation():
    text = """
    field 3
    vertices s x y t
    arrow a s x
    arrow b s y
    arrow c x t
    arrow d y t
    relation c*a - d*b
    """
    A = algebra.parse_algebra_file(text, name="square")
    assert A.dim == 9
    q = A.quiver
    s = q.vertex_index("s")
    ca = (s, (q.arrow_index("c"), q.arrow_index("a")))
    db = (s, (q.arrow_index("d"), q.arrow_index("b")))
    assert (A.nf(ca) == A.nf(db)).all()
    assert dv(A.proj("s")) == (1, 1, 1, 1)


def test_unit_and_products(a2):
    q = a2.quiver
    b = q.vertex_index("b")
    al = (b, (q.arrow_index("alpha"),))
    ea = a2.nf((q.vertex_index("a"), ()))
    eb = a2.nf((b, ()))
    v = a2.nf(al)
    assert (a2.mul_vec(a2.unit, v) == v).all()
    assert (a2.mul_vec(v, eb) == v).all()
    assert not a2.mul_vec(v, ea).any()
    assert not a2.mul_vec(v, v).any()


def test_opposite_involution(a3rad):
    op = a3rad.opposite()
    assert op.dim == a3rad.dim
    assert op.opposite() is a3rad
    # injectives of A are transposed projectives of A^op
    assert a3rad.inj("b").dims == op.proj("b").dims


def test_yoneda_and_right_mult(a2):
    qa = a2.inj("a")
    f = a2.yoneda("b", qa, [1])
    assert f.is_iso()
    r = a2.right_mult(a2.quiver.arrow_index("alpha"))
    assert dv(r.src) == (1, 0) and dv(r.tgt) == (1, 1)
    assert r.is_mono() and not r.is_epi()
    assert dv(rep.cokernel(r)[0]) == (0, 1)


def test_infinite_dimensional_detected():
    text = """
    field 2
    vertices a
    arrow x a a
    """
    with pytest.raises(NotFiniteDimensional):
        algebra.parse_algebra_file(text)


def test_parse_errors():
    with pytest.raises(ParseError):
        algebra.parse_algebra_file("field 2\nvertices a a\n")
    with pytest.raises(ParseError):
        algebra.parse_algebra_file("field 2\nvertices a\nfoo bar\n")
    with pytest.raises(ParseError):
        algebra.parse_algebra_file("field 2\nvertices a b\narrow x a q\n")
    with pytest.raises(ParseError):
        algebra.parse_algebra_file("field 4\nvertices a\n")
    with pytest.raises(ParseError):
        algebra.parse_algebra_file("vertices a\n")
    # beta after alpha is not composable in the linear A3 quiver
    with pytest.raises(BadRelation):
        algebra.parse_algebra_file(
            "field 2\nvertices a b c\narrow alpha b a\narrow beta c b\nrelation beta*alpha\n"
        )
    # mixing path lengths around an oriented cycle is rejected
    with pytest.raises(BadRelation):
        algebra.parse_algebra_file(
            "field 2\nvertices a\narrow x a a\nrelation x*x - x\n"
        )


def test_module_expr(a3lin):
    m = algebra.parse_module_expr(a3lin, "P(a) ++ S(b)^2")
    assert dv(m) == (1, 2, 0)
    assert dv(algebra.parse_module_expr(a3lin, "rad(P(c))")) == (1, 1, 0)
    assert dv(algebra.parse_module_expr(a3lin, "soc(P(c))")) == (1, 0, 0)
    assert dv(algebra.parse_module_expr(a3lin, "top(P(c))")) == (0, 0, 1)
    assert algebra.parse_module_expr(a3lin, "0").is_zero()
    assert dv(algebra.parse_module_expr(a3lin, "Q(b)^0")) == (0, 0, 0)
    env = {"M": a3lin.proj("b")}
    assert dv(algebra.parse_module_expr(a3lin, "M ++ M", env)) == (2, 2, 0)
    env2 = {"kP": lambda i: a3lin.proj("a" if i == 0 else "b")}
    assert dv(algebra.parse_module_expr(a3lin, "kP(1)", env2)) == (1, 1, 0)
    with pytest.raises(ParseError):
        algebra.parse_module_expr(a3lin, "X(a)")
    with pytest.raises(ParseError):
        algebra.parse_module_expr(a3lin, "P(a) extra")
    with pytest.raises(ParseError):
        algebra.parse_module_expr(a3lin, "P(a) + P(b)")
