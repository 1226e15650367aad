"""Kronecker algebras: standard modules, regular classification, shape table.

For the 2-Kronecker algebra the indecomposables split into preprojectives P_i,
preinjectives Q_j and tubes of regular modules indexed by the projective line:
one tube per monic irreducible polynomial plus the tube at infinity.  The
shape table records, for each family pair (C, Y), the expected dimension of
Hom(C,Y) and the expected shape of its submodule lattice, and verify_table
recomputes both from scratch.
"""

import itertools
import warnings

import numpy as np

import sympy

from . import ar, determine, lattice, rep
from .algebra import parse_algebra_file
from .errors import VerificationFailure
from .ffmat import INT, identity, zeros

ARROW_NAMES = ["x", "y", "z"]


def kronecker_algebra(n, p, name=None):
    """The n-Kronecker algebra over F_p (arrows b -> a)."""
    if n <= 3:
        names = ARROW_NAMES[:n]
    else:
        names = ["x%d" % (i + 1) for i in range(n)]
    text = "field %d\nvertices a b\n" % p
    text += "".join("arrow %s b a\n" % nm for nm in names)
    return parse_algebra_file(text, name=name or ("kron%d" % n))


def kP(A, i):
    """Preprojective P_i (P_0 = S(a), P_1 = P(b), tau^- shifts by two)."""
    if i < 0:
        raise ValueError("preprojective index must be nonnegative")
    m = A.proj(0) if i % 2 == 0 else A.proj(1)
    for _ in range(i // 2):
        m = ar.tau_minus(m)
    return m


def kQ(A, j):
    """Preinjective Q_j (Q_0 = S(b), Q_1 = Q(a), tau shifts by two)."""
    if j < 0:
        raise ValueError("preinjective index must be nonnegative")
    m = A.inj(1) if j % 2 == 0 else A.inj(0)
    for _ in range(j // 2):
        m = ar.tau(m)
    return m


def _jordan(lam, t, p):
    m = (lam % p) * identity(t)
    for i in range(t - 1):
        m[i, i + 1] = 1
    return m % p


def _companion(coeffs, p):
    """Companion matrix of a monic polynomial given highest-first."""
    d = len(coeffs) - 1
    m = zeros(d, d)
    for i in range(d - 1):
        m[i + 1, i] = 1
    for i in range(d):
        m[i, d - 1] = (-coeffs[d - i]) % p
    return m


def _poly_jordan(coeffs, t, p):
    """Block Jordan matrix with t companion blocks of the polynomial."""
    d = len(coeffs) - 1
    m = zeros(t * d, t * d)
    c = _companion(coeffs, p)
    for b in range(t):
        m[b * d : (b + 1) * d, b * d : (b + 1) * d] = c
        if b + 1 < t:
            m[b * d : (b + 1) * d, (b + 1) * d : (b + 2) * d] = identity(d)
    return m


def kR(A, label, t=1):
    """Regular module of quasi-length t in the tube with the given label.

    Labels: an integer lam for the tube of t - lam, the string "inf" for the
    tube at infinity, or a highest-first tuple of coefficients of a monic
    irreducible polynomial.
    """
    if len(A.quiver.arrows) != 2:
        raise ValueError("regular tubes are classified only for two arrows")
    p = A.p
    if label == "inf":
        xm, ym = _jordan(0, t, p), identity(t)
        dims = [t, t]
    elif isinstance(label, (int, np.integer)):
        xm, ym = identity(t), _jordan(int(label), t, p)
        dims = [t, t]
    else:
        coeffs = tuple(int(c) % p for c in label)
        d = len(coeffs) - 1
        xm, ym = identity(t * d), _poly_jordan(coeffs, t, p)
        dims = [t * d, t * d]
    return rep.Rep(A, dims, {0: xm, 1: ym})


def defect(m):
    """dim at the source vertex minus dim at the sink; negative on P_i."""
    return m.dims[1] - m.dims[0]


def monic_irreducibles(p, d):
    """Highest-first coefficient tuples of the monic irreducibles of degree d."""
    t = sympy.symbols("t")
    out = []
    for tail in itertools.product(range(p), repeat=d):
        coeffs = (1,) + tail
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            poly = sympy.Poly(list(coeffs), t, modulus=p)
            if poly.is_irreducible:
                out.append(coeffs)
    return out


def tube_labels(p, max_deg):
    """All tube labels of degree up to max_deg: "inf", then linear, then higher."""
    labels = ["inf"] + list(range(p))
    for d in range(2, max_deg + 1):
        labels.extend(monic_irreducibles(p, d))
    return labels


def label_degree(label):
    if label == "inf" or isinstance(label, (int, np.integer)):
        return 1
    return len(label) - 1


def tube_of(A, m):
    """The tube label of a regular indecomposable (nonzero hom to its tube)."""
    half = m.total_dim // 2
    for label in tube_labels(A.p, max(1, half)):
        if label_degree(label) > half:
            continue
        if rep.hom_space(kR(A, label, 1), m):
            return label
    raise VerificationFailure("module does not lie in any tube")


def enumerate_strongly_regular(A, total_dim):
    """Direct sums of pairwise distinct regular indecomposables of given size.

    Returns (module, labels) pairs where labels lists the (tube, quasi-length)
    pairs; each pair has 2 * t * deg(tube) dimensions.
    """
    p = A.p
    pairs = []
    for label in tube_labels(p, max(1, total_dim // 2)):
        d = label_degree(label)
        t = 1
        while 2 * t * d <= total_dim:
            pairs.append((label, t, 2 * t * d))
            t += 1
    out = []

    def rec(start, left, chosen):
        if left == 0:
            mods = [kR(A, lab, t) for lab, t, _ in chosen]
            m, _, _ = rep.direct_sum(A, mods)
            out.append((m, [(lab, t) for lab, t, _ in chosen]))
            return
        for idx in range(start, len(pairs)):
            if pairs[idx][2] <= left:
                rec(idx + 1, left - pairs[idx][2], chosen + [pairs[idx]])

    rec(0, total_dim, [])
    return out


# -- the shape table -----------------------------------------------------------


def _shape_row(A, c, y, cdesc, ydesc, want_dim, want_shape):
    gh = determine.GammaHom(c, y)
    lat = lattice.SubmoduleLattice.build(gh)
    got = lattice.canonical_shape(lat.classify())
    want = lattice.canonical_shape(want_shape)
    return {
        "c": cdesc,
        "y": ydesc,
        "hom_dim": gh.n,
        "want_dim": want_dim,
        "shape": got,
        "want_shape": want,
        "nodes": len(lat),
        "ok": gh.n == want_dim and got == want,
    }


def verify_table(p, max_sum=3, max_t=3, include_deg2=True):
    """Recompute the whole (C, Y) shape table; returns (rows, all_ok)."""
    A = kronecker_algebra(2, p)
    rows = []
    tubes = list(range(p)) + ["inf"]
    if include_deg2:
        tubes += monic_irreducibles(p, 2)[:1]

    for i in range(max_sum + 1):
        for j in range(i, max_sum + 1):
            if i + j > max_sum and (i, j) != (0, max_sum):
                continue
            rows.append(
                _shape_row(
                    A, kP(A, i), kP(A, j), "P%d" % i, "P%d" % j,
                    j - i + 1, ("G", j - i + 1, p),
                )
            )
    for i in range(2):
        for lab in tubes:
            d = label_degree(lab)
            for t in range(1, max_t + 1):
                if t * d > max_t:
                    continue
                rows.append(
                    _shape_row(
                        A, kP(A, i), kR(A, lab, t), "P%d" % i, "R[%s,%d]" % (lab, t),
                        t * d, ("G", t * d, p),
                    )
                )
    for i in range(max_sum + 1):
        for j in range(max_sum + 1):
            if i + j > max_sum:
                continue
            rows.append(
                _shape_row(
                    A, kP(A, i), kQ(A, j), "P%d" % i, "Q%d" % j,
                    i + j, ("G", i + j, p),
                )
            )
    for lab in tubes:
        d = label_degree(lab)
        for s in range(1, max_t + 1):
            for t in range(1, max_t + 1):
                if s * d > max_t or t * d > max_t:
                    continue
                rows.append(
                    _shape_row(
                        A, kR(A, lab, s), kR(A, lab, t),
                        "R[%s,%d]" % (lab, s), "R[%s,%d]" % (lab, t),
                        min(s, t) * d, ("I", min(s, t)),
                    )
                )
    # distinct tubes have no homomorphisms between them
    rows.append(
        _shape_row(
            A, kR(A, tubes[0], 1), kR(A, tubes[1], 1),
            "R[%s,1]" % tubes[0], "R[%s,1]" % tubes[1], 0, ("I", 0),
        )
    )
    for lab in tubes:
        d = label_degree(lab)
        for s in range(1, max_t + 1):
            if s * d > max_t:
                continue
            for j in range(max_sum + 1):
                rows.append(
                    _shape_row(
                        A, kR(A, lab, s), kQ(A, j),
                        "R[%s,%d]" % (lab, s), "Q%d" % j, s * d, ("I", s),
                    )
                )
    for j in range(max_sum + 1):
        for i in range(j, max_sum + 1):
            if i + j > max_sum and (j, i) != (0, max_sum):
                continue
            rows.append(
                _shape_row(
                    A, kQ(A, i), kQ(A, j), "Q%d" % i, "Q%d" % j,
                    i - j + 1, ("G", i - j + 1, p),
                )
            )
    return rows, all(r["ok"] for r in rows)


def sigma_check(A, i, j):
    """Length-one classes from P_i to Q_j against the strongly regular family.

    The sources of the C-length-one factorization classes should realize, up
    to isomorphism, exactly the strongly regular modules of total dimension
    |P_i| + |Q_j| - 4, each exactly once.
    """
    from . import factor

    c, y = kP(A, i), kQ(A, j)
    fl = factor.FactorizationLattice.build(c, y)
    ones = fl.length_one_indices()
    want_dim = c.total_dim + y.total_dim - 4
    family = enumerate_strongly_regular(A, want_dim) if want_dim > 0 else []
    sources = [fl.classes[k].f.src for k in ones]
    report = {
        "classes": len(ones),
        "family": len(family),
        "dim": want_dim,
        "ok": True,
    }
    if want_dim == 0:
        # the unique length-one class must be the zero class [0 -> Y>
        report["ok"] = ones == [fl.lat.zero_i] and sources[0].total_dim == 0
        return report
    if len(ones) != len(family):
        report["ok"] = False
        return report
    used = set()
    for s in sources:
        match = None
        for k, (m, _) in enumerate(family):
            if k not in used and rep.is_isomorphic(s, m):
                match = k
                break
        if match is None:
            report["ok"] = False
            return report
        used.add(match)
    for a in range(len(sources)):
        for b in range(a):
            if rep.is_isomorphic(sources[a], sources[b]):
                report["ok"] = False
                return report
    return report
