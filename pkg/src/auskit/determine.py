"""Hom(C, Y) as a module over Gamma = End(C), and right determination.

GammaHom carries the coordinate action of End(C) on Hom(C,Y) by
precomposition.  Submodules are subspaces closed under that action; eta sends
a morphism f ending in Y to the image of Hom(C, f).  Composition factors are
labelled by the isomorphism classes of indecomposable summands of C, with the
radical of End(C) certified by exhaustive unit testing in each hom block.
"""

import itertools

import numpy as np

from . import ar, rep
from .errors import CapExceeded, VerificationFailure
from .ffmat import INT, Subspace, kernel, zeros

ENUM_CAP = 4096  # largest p**dim hom block we will enumerate exhaustively


def _rows_subspace(rows, n, p):
    return Subspace(np.array(rows, dtype=INT), n, p)


def factor_subspace(f, w, hom_wy):
    """Image of Hom(W, f): the maps W -> Y factoring through f, in coordinates."""
    rows = []
    for u in rep.hom_space(w, f.src):
        coords = rep.morphism_coords(f.compose(u), hom_wy)
        assert coords is not None
        rows.append(coords)
    return _rows_subspace(rows, len(hom_wy), f.p)


class GammaHom:
    """Hom(C, Y) with its right End(C)-action in fixed coordinates."""

    def __init__(self, c, y):
        assert c.A is y.A
        self.c, self.y = c, y
        self.p = c.p
        self.basis = rep.hom_space(c, y)
        self.n = len(self.basis)
        self.end = rep.end_algebra(c)
        self.act = [self.action_matrix(phi) for phi in self.end]
        self._act_stack = None
        self._simple = None

    def action_matrix(self, phi):
        """Matrix of h -> h o phi on Hom(C,Y) coordinates."""
        return rep.hom_matrix_precompose(self.basis, phi, self.basis)

    def zero_sub(self):
        return Subspace.zero(self.n, self.p)

    def full_sub(self):
        return Subspace.full(self.n, self.p)

    def close(self, rows):
        """Smallest submodule containing the given coordinate rows."""
        sub = _rows_subspace(list(rows), self.n, self.p)
        if not self.act:
            return sub
        if self._act_stack is None:
            self._act_stack = np.stack(self.act)
        while sub.dim:
            imgs = np.einsum("dj,eij->edi", sub.B, self._act_stack) % self.p
            grown = Subspace(
                np.concatenate([sub.B, imgs.reshape(-1, self.n)]), self.n, self.p
            )
            if grown.dim == sub.dim:
                return grown
            sub = grown
        return sub

    def is_submodule(self, sub):
        return all(
            sub.contains((row @ m.T) % self.p) for m in self.act for row in sub.B
        )

    def eta(self, f):
        """Image of Hom(C, f) as a submodule of Hom(C, Y)."""
        assert f.tgt.key() == self.y.key()
        return factor_subspace(f, self.c, self.basis)

    def through_proj(self):
        """The submodule of maps that factor through a projective."""
        p0, cover, _ = ar.proj_cover(self.y)
        rows = []
        for h in rep.hom_space(self.c, p0):
            coords = rep.morphism_coords(cover.compose(h), self.basis)
            assert coords is not None
            rows.append(coords)
        return _rows_subspace(rows, self.n, self.p)

    # -- composition factors --------------------------------------------------

    def simple_data(self):
        """(classes, eps_mats, rad_mats, residue_dims); classes index the labels."""
        if self._simple is not None:
            return self._simple
        p = self.p
        trips = rep.decompose(self.c)
        classes = []  # list of lists of summand indices
        for k, (s, _, _) in enumerate(trips):
            for cl in classes:
                if rep.is_isomorphic(trips[cl[0]][0], s):
                    cl.append(k)
                    break
            else:
                classes.append([k])

        eps = []
        for cl in classes:
            e = rep.zero_morphism(self.c, self.c)
            for k in cl:
                _, incl, proj = trips[k]
                e = e.add(incl.compose(proj))
            eps.append(e)
        total = eps[0]
        for e in eps[1:]:
            total = total.add(e)
        if (total.flat() != rep.identity_morphism(self.c).flat()).any():
            raise VerificationFailure("summand idempotents do not sum to the identity")

        # radical components, block by block
        rad_morphs = []
        residue = []
        class_of = {}
        for i, cl in enumerate(classes):
            for k in cl:
                class_of[k] = i
        for i, cl in enumerate(classes):
            s0 = trips[cl[0]][0]
            dend = len(rep.hom_space(s0, s0))
            dnon = self._nonunit_dim(s0, s0)
            residue.append(dend - dnon)
        for k in range(len(trips)):
            sk, _, projk = trips[k]
            for l in range(len(trips)):
                sl, incll, _ = trips[l]
                hom = rep.hom_space(sk, sl)
                if not hom:
                    continue
                if class_of[k] != class_of[l]:
                    use = hom
                else:
                    use = self._nonunit_basis(sk, sl, hom)
                for psi in use:
                    rad_morphs.append(incll.compose(psi).compose(projk))

        # certify nilpotency of the candidate radical
        if rad_morphs:
            mats = [_total(m) for m in rad_morphs]
            span = _matrix_span(mats, p)
            cur = span
            for _ in range(len(self.end) + 1):
                if cur.dim == 0:
                    break
                cur = _span_product(cur, span, mats[0].shape[0], p)
            else:
                raise VerificationFailure("candidate radical is not nilpotent")

        eps_mats = [self.action_matrix(e) for e in eps]
        rad_mats = [self.action_matrix(m) for m in rad_morphs]
        reps_ = [trips[cl[0]][0] for cl in classes]
        self._simple = (reps_, eps_mats, rad_mats, residue)
        return self._simple

    def _nonunit_basis(self, x, y, hom):
        """Basis of the non-isomorphisms X -> Y for isomorphic indecomposables."""
        p, d = self.p, len(hom)
        if p ** d > ENUM_CAP:
            raise CapExceeded("hom block too large to certify its radical")
        nonunits = []
        for coeffs in itertools.product(range(p), repeat=d):
            f = rep.zero_morphism(x, y)
            for c, b in zip(coeffs, hom):
                if c:
                    f = f.add(b.scale(c))
            if not f.is_iso():
                nonunits.append(np.array(coeffs, dtype=INT))
        sub = _rows_subspace(nonunits, d, p)
        if p ** sub.dim != len(nonunits):
            raise VerificationFailure("non-isomorphisms do not form a subspace")
        out = []
        for row in sub.B:
            f = rep.zero_morphism(x, y)
            for c, b in zip(row, hom):
                if c:
                    f = f.add(b.scale(int(c)))
            out.append(f)
        return out

    def _nonunit_dim(self, x, y):
        hom = rep.hom_space(x, y)
        return len(self._nonunit_basis(x, y, hom))

    def labels(self):
        """Dimension vectors of the class representatives (for display)."""
        reps_, _, _, _ = self.simple_data()
        return [r.dim_vector() for r in reps_]

    def jh_between(self, lo, hi):
        """Multiset {class index: multiplicity} of factors of hi/lo."""
        reps_, eps_mats, rad_mats, residue = self.simple_data()
        if not lo.leq(hi):
            raise VerificationFailure("not a subquotient pair")
        out = {}
        v = hi
        p = self.p
        while v.dim > lo.dim:
            t = lo
            for m in rad_mats:
                if v.dim:
                    t = t.sum(Subspace((v.B @ m.T) % p, self.n, p))
            if not t.leq(v):
                raise VerificationFailure("radical image escapes the submodule")
            gap = v.dim - t.dim
            if gap <= 0:
                raise VerificationFailure("radical peeling made no progress")
            acc = 0
            for i, m in enumerate(eps_mats):
                part = t.sum(Subspace((v.B @ m.T) % p, self.n, p))
                di = part.dim - t.dim
                if di % residue[i]:
                    raise VerificationFailure("isotypic block is not a multiple of the residue dimension")
                if di:
                    out[i] = out.get(i, 0) + di // residue[i]
                acc += di
            if acc != gap:
                raise VerificationFailure("isotypic parts do not fill the top")
            v = t
        return out

    def length_between(self, lo, hi):
        return sum(self.jh_between(lo, hi).values())

    def cover_label(self, lo, hi):
        """The class index i with hi/lo = S_i, for a cover pair."""
        jh = self.jh_between(lo, hi)
        if sum(jh.values()) != 1:
            raise VerificationFailure("not a cover: factor is not simple")
        return next(iter(jh))


def _total(f):
    """Block-diagonal total matrix of an endomorphism."""
    n = f.src.total_dim
    m = zeros(n, n)
    off = f.src.offsets()
    for v, b in enumerate(f.blocks):
        m[off[v] : off[v + 1], off[v] : off[v + 1]] = b
    return m


def _matrix_span(mats, p):
    rows = [m.reshape(-1) for m in mats]
    return _rows_subspace(rows, mats[0].size, p)


def _span_product(span, other, n, p):
    rows = []
    for a in span.B:
        am = a.reshape(n, n)
        for b in other.B:
            rows.append(((am @ b.reshape(n, n)) % p).reshape(-1))
    return _rows_subspace(rows, n * n, p)


# -- right determination -------------------------------------------------------


def almost_factors_strictly(f, pr):
    """True if some map P -> Y factors through f on rad P but not itself."""
    y = f.tgt
    hom_py = rep.hom_space(pr, y)
    if not hom_py:
        return False
    fp = factor_subspace(f, pr, hom_py)
    r, iota = rep.rad(pr)
    homry = rep.hom_space(r, y)
    if not homry:
        # everything restricts to zero on rad P; W is all of Hom(P,Y)
        return fp.dim < len(hom_py)
    fr = factor_subspace(f, r, homry)
    rmat = rep.hom_matrix_precompose(hom_py, iota, homry)
    # quotient projection modulo fr, as in a row-reduced complement
    free = [j for j in range(len(homry)) if j not in fr.pivots]
    pm = zeros(len(free), len(homry))
    for k, j in enumerate(free):
        pm[k, j] = 1
    for i, cpiv in enumerate(fr.pivots):
        for k, j in enumerate(free):
            pm[k, cpiv] = (-fr.B[i, j]) % f.p
    w = kernel((pm @ rmat) % f.p, f.p)
    wsub = _rows_subspace(list(w), len(hom_py), f.p)
    return not wsub.leq(fp)


def minimal_determiner(f, seed=0):
    """Indecomposables generating the minimal right determiner of f."""
    fmin, _ = rep.right_minimalize(f, seed)
    k, _ = rep.kernel(fmin)
    A = f.src.A
    parts = []
    if k.total_dim:
        for s, _mult in rep.iso_classes([t[0] for t in rep.decompose(k)]):
            t = ar.tau_minus(s)
            if t.total_dim:
                parts.append(t)
    for v in range(A.nv):
        if almost_factors_strictly(fmin, A.proj(v)):
            parts.append(A.proj(v))
    return parts


def is_right_determined(f, c, seed=0):
    """Whether f is right C-determined (minimal determiner inside add C)."""
    cparts = [s for s, _, _ in rep.decompose(c)]
    for s in minimal_determiner(f, seed):
        if not any(rep.is_isomorphic(s, t) for t in cparts):
            return False
    return True


def default_probes(f, c, count=20, seed=0):
    """Deterministic probe maps into the target of f."""
    import random

    y = f.tgt
    A = y.A
    sources = [f.src, c] + [A.proj(v) for v in range(A.nv)] + [y]
    probes = []
    for w in sources:
        probes.extend(rep.hom_space(w, y))
    rng = random.Random(seed)
    out = []
    seen = set()
    for _ in range(20 * count):
        if not probes or len(out) >= count:
            break
        g = probes[rng.randrange(len(probes))]
        if rng.random() < 0.5 and len(probes) > 1:
            h = probes[rng.randrange(len(probes))]
            if g.src.key() == h.src.key():
                g = g.add(h)
        if g.key() not in seen:
            seen.add(g.key())
            out.append(g)
    return out


def definitional_check(f, c, probes=None, count=20, seed=0):
    """Probe the defining property of right C-determination.

    Returns the list of probe maps g with eta(g) <= eta(f) that do not factor
    through f (empty when f is right C-determined, for any probe set).
    """
    gh = GammaHom(c, f.tgt)
    ef = gh.eta(f)
    if probes is None:
        probes = default_probes(f, c, count, seed)
    bad = []
    for g in probes:
        lhs = gh.eta(g).leq(ef)
        rhs, _ = rep.right_leq(g, f)
        if rhs and not lhs:
            raise VerificationFailure("factoring map with larger eta image")
        if lhs and not rhs:
            bad.append(g)
    return bad
