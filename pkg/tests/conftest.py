import pytest

from auskit import algebra

A2 = """
field 2
vertices a b
arrow alpha b a
"""

A3_LINEAR = """
field 2
vertices a b c
arrow alpha b a
arrow beta c b
"""

A3_RADSQ = """
field 2
vertices a b c
arrow alpha b a
arrow beta c b
relation alpha*beta
"""

KRON2 = """
field 2
vertices a b
arrow x b a
arrow y b a
"""

LOOP_B = """
field 2
vertices a b
arrow alpha a a
arrow beta b a
relation alpha*alpha
"""

UNI4 = """
field 2
vertices a
arrow x a a
relation x*x*x*x
"""

SUBSPACE3 = """
field 2
vertices a b1 b2 b3
arrow g1 b1 a
arrow g2 b2 a
arrow g3 b3 a
"""

KRON3 = """
field 2
vertices a b
arrow x b a
arrow y b a
arrow z b a
"""


def _make(text, name):
    return algebra.parse_algebra_file(text, name=name)


@pytest.fixture(scope="session")
def a2():
    return _make(A2, "a2")


@pytest.fixture(scope="session")
def a3lin():
    return _make(A3_LINEAR, "a3-linear")


@pytest.fixture(scope="session")
def a3rad():
    return _make(A3_RADSQ, "a3-radsq")


@pytest.fixture(scope="session")
def kron2():
    return _make(KRON2, "kron2")


@pytest.fixture(scope="session")
def loopb():
    return _make(LOOP_B, "loop-b")


@pytest.fixture(scope="session")
def uni4():
    return _make(UNI4, "uniserial-4")


@pytest.fixture(scope="session")
def sub3():
    return _make(SUBSPACE3, "subspace3")


@pytest.fixture(scope="session")
def kron3():
    return _make(KRON3, "kron3")
