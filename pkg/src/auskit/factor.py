"""Right factorization classes ending in Y, indexed through eta.

A right equivalence class [f> of morphisms ending in Y is represented by a
right minimal map.  Candidates are built as submodule inclusions composed with
extensions: the kernel of a right minimal map determined by C lies in add of
tau C, so every class arises from a submodule Y' of Y together with a tuple of
extension classes of Y' by copies of the kernel candidates.  Tuples are taken
per kernel class as subspaces of Ext^1(Y', K_i), which enumerates each class
exactly once up to the base change group.

The bijection with the submodule lattice of Hom(C, Y) is certified during the
build: every submodule must be reached (surjectivity), candidates landing on
the same submodule must be right equivalent (injectivity), and optionally the
partial orders and meets are compared pairwise.
"""

import itertools

import numpy as np

from . import ar, determine, lattice, rep
from .errors import CapExceeded, VerificationFailure
from .ffmat import INT, Subspace, enumerate_subspaces

CAND_CAP = 20000


class RightClass:
    """One right equivalence class [f>, held by a right minimal representative."""

    def __init__(self, f, eta):
        self.f = f
        self.eta = eta
        self.source = f.src
        self.kernel = rep.kernel(f)[0]
        self.is_epi = f.is_epi()
        self.is_mono = f.is_mono()

    def __repr__(self):
        return "RightClass(%s -> %s, eta dim %d)" % (
            self.source.dim_vector(),
            self.f.tgt.dim_vector(),
            self.eta.dim,
        )


def _kernel_classes(c):
    """Iso classes of tau of the non-projective summands of C."""
    out = []
    for s, _, _ in rep.decompose(c):
        if ar.is_projective(s):
            continue
        t = ar.tau(s)
        if t.total_dim and not any(rep.is_isomorphic(t, u) for u in out):
            out.append(t)
    return out


def _is_generator(c):
    A = c.A
    parts = [s for s, _, _ in rep.decompose(c)]
    missing = []
    for v in range(A.nv):
        if not any(rep.is_isomorphic(A.proj(v), s) for s in parts):
            missing.append(v)
    return missing


def _ext_choices(ed):
    """All subspaces of Ext^1 in cocycle coordinates: (t, tuple of coord rows)."""
    reps_ = ed.class_reps()
    e = len(reps_)
    out = []
    for sub in enumerate_subspaces(e, ed.p):
        rows = []
        for r in sub.B:
            coords = np.zeros(len(ed.cocycles), dtype=INT)
            for m, cm in enumerate(r):
                if cm:
                    coords = (coords + int(cm) * reps_[m]) % ed.p
            rows.append(coords)
        out.append(rows)
    return out


class FactorizationLattice:
    """The lattice of right C-determined factorization classes over Y."""

    def __init__(self, c, y, gh, lat, classes):
        self.c, self.y = c, y
        self.gh = gh
        self.lat = lat
        self.classes = classes  # aligned with lat.nodes

    @classmethod
    def build(cls, c, y, certify=True, cand_cap=CAND_CAP):
        gh = determine.GammaHom(c, y)
        lat = lattice.SubmoduleLattice.build(gh)
        kclasses = _kernel_classes(c)
        missing_proj = _is_generator(c)
        A = y.A

        found = {}
        n_cand = 0
        for vt in lattice.rep_submodule_lattice(y):
            yprime, incl = lattice.sub_rep_of(y, vt)
            eds = [ar.ExtData(yprime, k) for k in kclasses]
            eds = [ed for ed in eds if ed.dim > 0]
            option_lists = [_ext_choices(ed) for ed in eds]
            for combo in itertools.product(*option_lists):
                n_cand += 1
                if n_cand > cand_cap:
                    raise CapExceeded("too many factorization candidates")
                f = _assemble(A, incl, eds, combo)
                ts = [len(rows) for rows in combo]
                if any(ts):
                    fmin, _ = rep.right_minimalize(f)
                else:
                    fmin = f  # submodule inclusions are right minimal
                if any(
                    determine.almost_factors_strictly(fmin, A.proj(v))
                    for v in missing_proj
                ):
                    continue
                sub = gh.eta(fmin)
                key = sub.key()
                if key in found:
                    if not rep.right_equivalent(fmin, found[key].f):
                        raise VerificationFailure(
                            "distinct classes share an eta image"
                        )
                else:
                    found[key] = RightClass(fmin, sub)

        classes = []
        for node in lat.nodes:
            rc = found.get(node.key())
            if rc is None:
                raise VerificationFailure(
                    "no right determined class found for a submodule"
                )
            classes.append(rc)
        out = cls(c, y, gh, lat, classes)
        if certify:
            out.check_order_isomorphism()
            out.check_meets()
        return out

    # -- structure -------------------------------------------------------------

    def __len__(self):
        return len(self.classes)

    @property
    def zero_class(self):
        return self.classes[self.lat.zero_i]

    @property
    def top_class(self):
        return self.classes[self.lat.full_i]

    def c_length(self, i):
        """The C-length |f>: length of Hom(C,Y)/eta(f) over End(C)."""
        return self.gh.length_between(self.lat.nodes[i], self.gh.full_sub())

    def c_type(self, i):
        """Multiset of composition factor labels of Hom(C,Y)/eta(f)."""
        return self.gh.jh_between(self.lat.nodes[i], self.gh.full_sub())

    def length_one_indices(self):
        return [i for i in range(len(self.classes)) if self.c_length(i) == 1]

    def epi_class_indices(self):
        """Classes of epimorphisms; certified against the projective criterion."""
        through = self.gh.through_proj()
        out = []
        for i, rc in enumerate(self.classes):
            criterion = through.leq(self.lat.nodes[i])
            if criterion != rc.is_epi:
                raise VerificationFailure(
                    "epi criterion disagrees with the representative"
                )
            if criterion:
                out.append(i)
        return out

    # -- certificates ----------------------------------------------------------

    def check_order_isomorphism(self):
        n = len(self.classes)
        for i in range(n):
            for j in range(n):
                ok, _ = rep.right_leq(self.classes[i].f, self.classes[j].f)
                if ok != bool(self.lat.leq[i, j]):
                    raise VerificationFailure("factorization order differs from eta order")

    def check_meets(self):
        n = len(self.classes)
        for i in range(n):
            for j in range(i):
                m = rep.meet_map(self.classes[i].f, self.classes[j].f)
                expect = self.lat.nodes[self.lat.meet(i, j)]
                if self.gh.eta(m).key() != expect.key():
                    raise VerificationFailure("meet of classes does not match eta meet")

    def to_json(self):
        data = self.lat.to_json()
        data["classes"] = [
            {
                "index": i,
                "source": list(rc.source.dim_vector()),
                "kernel": list(rc.kernel.dim_vector()),
                "epi": rc.is_epi,
                "mono": rc.is_mono,
                "c_length": self.c_length(i),
            }
            for i, rc in enumerate(self.classes)
        ]
        return data


def _assemble(A, incl, eds, combo):
    """Compose the submodule inclusion with the extension given by the cocycles."""
    parts = []
    morphs = []
    for ed, rows in zip(eds, combo):
        for coords in rows:
            parts.append(ed.k)
            morphs.append(ed.cocycle(coords))
    if not parts:
        return incl
    ktotal, kincls, _ = rep.direct_sum(A, parts)
    xi = rep.zero_morphism(eds[0].omega, ktotal)
    for ki, m in zip(kincls, morphs):
        xi = xi.add(ki.compose(m))
    x, u, g = _realize(eds[0], ktotal, xi)
    return incl.compose(g)


def _realize(ed, ktotal, xi):
    """Extension of ed.y by ktotal along the combined cocycle xi."""
    A = ed.y.A
    d, incls, projs = rep.direct_sum(A, [ktotal, ed.p0])
    m = incls[0].compose(xi).add(incls[1].compose(ed.incl).scale(ed.p - 1))
    x, proj = rep.cokernel(m)
    u = proj.compose(incls[0])
    g = ar._descend(ed.cover.compose(projs[1]), proj)
    if x.total_dim != ktotal.total_dim + ed.y.total_dim:
        raise VerificationFailure("extension has wrong dimension")
    if not u.is_mono() or not g.is_epi() or not g.compose(u).is_zero():
        raise VerificationFailure("realized sequence is not exact")
    return x, u, g


# -- forks, coforks, and the kernel comparison sequence ------------------------


def is_fork(gs):
    """Whether maps g_i: X -> M_i (M_i indecomposable) form a fork."""
    _check_prongs([g.tgt for g in gs], gs)
    for i, g in enumerate(gs):
        basis = rep.hom_space(g.src, g.tgt)
        rows = []
        for j, h in enumerate(gs):
            if j == i:
                continue
            for phi in rep.hom_space(h.tgt, g.tgt):
                rows.append(rep.morphism_coords(phi.compose(h), basis))
        span = Subspace(np.array(rows, dtype=INT), len(basis), g.p)
        if span.contains(rep.morphism_coords(g, basis)):
            return False
    return True


def is_cofork(fs):
    """Whether maps f_i: M_i -> Y (M_i indecomposable) form a cofork."""
    _check_prongs([f.src for f in fs], fs)
    for i, f in enumerate(fs):
        basis = rep.hom_space(f.src, f.tgt)
        rows = []
        for j, g in enumerate(fs):
            if j == i:
                continue
            for psi in rep.hom_space(f.src, g.src):
                rows.append(rep.morphism_coords(g.compose(psi), basis))
        span = Subspace(np.array(rows, dtype=INT), len(basis), f.p)
        if span.contains(rep.morphism_coords(f, basis)):
            return False
    return True


def _check_prongs(mods, maps):
    for m, f in zip(mods, maps):
        if f.is_zero():
            raise VerificationFailure("fork prongs must be nonzero")
        if len(rep.decompose(m)) != 1:
            raise VerificationFailure("fork prongs must be indecomposable")


def kernel_comparison(f, fp):
    """Exact 0 -> K -> K' + X -> X' -> 0 from [f> <= [f'> with isomorphic kernels.

    Both maps must be epimorphisms onto the same target.  Returns the verified
    pair (left, right) of morphisms.
    """
    if not (f.is_epi() and fp.is_epi()):
        raise VerificationFailure("kernel comparison needs epimorphisms")
    k, u = rep.kernel(f)
    kp, up = rep.kernel(fp)
    if not rep.is_isomorphic(k, kp):
        raise VerificationFailure("kernels are not isomorphic")
    ok, h = rep.right_leq(f, fp)
    if not ok:
        raise VerificationFailure("first map does not factor through the second")
    ok, phi = rep.right_leq(h.compose(u), up)
    if not ok:
        raise VerificationFailure("restricted map does not factor through the kernel")
    A = f.src.A
    d, incls, projs = rep.direct_sum(A, [kp, f.src])
    left = incls[0].compose(phi).add(incls[1].compose(u).scale(f.p - 1))
    right = up.compose(projs[0]).add(h.compose(projs[1]))
    if not right.compose(left).is_zero():
        raise VerificationFailure("comparison maps do not compose to zero")
    if not left.is_mono() or not right.is_epi():
        raise VerificationFailure("comparison sequence is not exact at the ends")
    if d.total_dim != k.total_dim + fp.src.total_dim:
        raise VerificationFailure("comparison sequence has wrong dimensions")
    return left, right
