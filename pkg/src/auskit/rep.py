"""Representations of a quiver algebra, morphisms, and module-level operations.

A Rep assigns to each vertex a column space F_p^d and to each arrow a matrix
acting tgt <- src.  Morphisms are vertexwise matrices intertwining the arrow
actions.  Everything downstream (kernels, direct summands, right
minimalization) reduces to exact linear algebra in ffmat.
"""

import itertools
import random
import warnings

import numpy as np
import sympy

from . import ffmat
from .errors import VerificationFailure
from .ffmat import INT, amod, identity, zeros


class Rep:
    """A finite-dimensional representation of a quiver algebra."""

    def __init__(self, algebra, dims, mats, check=True):
        self.A = algebra
        self.dims = [int(d) for d in dims]
        self.mats = {}
        q = algebra.quiver
        for ai, (_, u, v) in enumerate(q.arrows):
            m = mats.get(ai) if isinstance(mats, dict) else mats[ai]
            m = amod(m, algebra.p).reshape(self.dims[v], self.dims[u])
            self.mats[ai] = m
        self._cache = {}
        if check:
            self.check()

    @property
    def p(self):
        return self.A.p

    @property
    def total_dim(self):
        return sum(self.dims)

    def offsets(self):
        out = [0]
        for d in self.dims:
            out.append(out[-1] + d)
        return out

    def dim_vector(self):
        return tuple(self.dims)

    def key(self):
        parts = [tuple(self.dims)]
        for ai in range(len(self.A.quiver.arrows)):
            parts.append(ffmat.mat_key(self.mats[ai]))
        return tuple(parts)

    def is_zero(self):
        return self.total_dim == 0

    def check(self):
        """Verify every relation of the algebra acts as zero."""
        for rel in self.A.relations:
            acc = None
            for coef, path in rel:
                m = self.path_matrix(path)
                acc = (coef * m) % self.p if acc is None else (acc + coef * m) % self.p
            if acc is not None and acc.any():
                raise VerificationFailure("relation not satisfied by representation")

    def path_matrix(self, path):
        """Matrix of a path acting on this representation (composition order)."""
        src, names = path
        m = identity(self.dims[src])
        for ai in reversed(names):
            m = (self.mats[ai] @ m) % self.p
        return m

    def __repr__(self):
        return "Rep%s" % (self.dim_vector(),)


def zero_rep(algebra):
    n = len(algebra.quiver.vertices)
    return Rep(algebra, [0] * n, {ai: zeros(0, 0) for ai in range(len(algebra.quiver.arrows))}, check=False)


class Morphism:
    def __init__(self, src, tgt, blocks):
        self.src = src
        self.tgt = tgt
        p = src.p
        self.blocks = [
            amod(b, p).reshape(tgt.dims[v], src.dims[v]) for v, b in enumerate(blocks)
        ]

    @property
    def p(self):
        return self.src.p

    def flat(self):
        if not self.blocks:
            return np.array([], dtype=INT)
        return np.concatenate([b.reshape(-1) for b in self.blocks])

    def key(self):
        return (self.src.key(), self.tgt.key(), ffmat.mat_key(self.flat().reshape(1, -1)))

    def is_zero(self):
        return not any(b.any() for b in self.blocks)

    def compose(self, other):
        """self after other."""
        assert other.tgt is self.src or other.tgt.key() == self.src.key()
        return Morphism(
            other.src,
            self.tgt,
            [(a @ b) % self.p for a, b in zip(self.blocks, other.blocks)],
        )

    def add(self, other):
        return Morphism(
            self.src, self.tgt, [(a + b) % self.p for a, b in zip(self.blocks, other.blocks)]
        )

    def scale(self, c):
        return Morphism(self.src, self.tgt, [(c * b) % self.p for b in self.blocks])

    def is_mono(self):
        return all(ffmat.rank(b, self.p) == self.src.dims[v] for v, b in enumerate(self.blocks))

    def is_epi(self):
        return all(ffmat.rank(b, self.p) == self.tgt.dims[v] for v, b in enumerate(self.blocks))

    def is_iso(self):
        return (
            self.src.dim_vector() == self.tgt.dim_vector()
            and self.is_mono()
        )

    def check(self):
        for ai, (_, u, v) in enumerate(self.src.A.quiver.arrows):
            lhs = (self.tgt.mats[ai] @ self.blocks[u]) % self.p
            rhs = (self.blocks[v] @ self.src.mats[ai]) % self.p
            if (lhs != rhs).any():
                raise VerificationFailure("not a morphism")
        return self

    def __repr__(self):
        return "Morphism(%s -> %s)" % (self.src.dim_vector(), self.tgt.dim_vector())


def zero_morphism(x, y):
    return Morphism(x, y, [zeros(y.dims[v], x.dims[v]) for v in range(len(x.dims))])


def identity_morphism(x):
    return Morphism(x, x, [identity(d) for d in x.dims])


def morphism_from_flat(x, y, flat):
    blocks = []
    pos = 0
    for v in range(len(x.dims)):
        sz = y.dims[v] * x.dims[v]
        blocks.append(np.asarray(flat[pos : pos + sz], dtype=INT).reshape(y.dims[v], x.dims[v]))
        pos += sz
    return Morphism(x, y, blocks)


# --- hom spaces -------------------------------------------------------------


def hom_space(x, y):
    """Basis of Hom(X, Y) as a list of Morphisms (deterministic order)."""
    p = x.p
    nv = len(x.dims)
    sizes = [y.dims[v] * x.dims[v] for v in range(nv)]
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    nunk = starts[-1]
    rows = []
    for ai, (_, u, v) in enumerate(x.A.quiver.arrows):
        # vec(Y_a f_u) - vec(f_v X_a) = 0, row-major vec
        neq = y.dims[v] * x.dims[u]
        if neq == 0:
            continue
        block = zeros(neq, nunk)
        if sizes[u]:
            block[:, starts[u] : starts[u + 1]] = ffmat.kron(y.mats[ai], identity(x.dims[u]), p)
        if sizes[v]:
            block[:, starts[v] : starts[v + 1]] = (
                block[:, starts[v] : starts[v + 1]]
                - ffmat.kron(identity(y.dims[v]), x.mats[ai].T, p)
            ) % p
        rows.append(block)
    if nunk == 0:
        return []
    eqs = np.concatenate(rows, axis=0) if rows else zeros(0, nunk)
    basis = ffmat.kernel(eqs, p)
    return [morphism_from_flat(x, y, row) for row in basis]


def end_algebra(x):
    return hom_space(x, x)


def morphism_coords(f, basis):
    """Coordinates of f over a basis of morphisms; None if outside the span."""
    if not basis:
        return None if not f.is_zero() else np.array([], dtype=INT)
    mat = np.array([b.flat() for b in basis], dtype=INT).T
    return ffmat.solve(mat, f.flat(), f.p)


def hom_matrix_precompose(homxy, g, homzy):
    """Matrix of (- o g): Hom(X,Y) -> Hom(Z,Y) for g: Z -> X, in given bases."""
    p = g.p
    cols = []
    for f in homxy:
        coords = morphism_coords(f.compose(g), homzy)
        assert coords is not None
        cols.append(coords)
    if not cols:
        return zeros(len(homzy), 0)
    return np.array(cols, dtype=INT).T % p


# --- subobjects and quotients ------------------------------------------------


def _sub_rep_from_rows(x, rows_per_vertex):
    """Subrepresentation with given row-bases (must be arrow-closed)."""
    p = x.p
    subs = [ffmat.Subspace(rows_per_vertex[v], x.dims[v], p) for v in range(len(x.dims))]
    dims = [s.dim for s in subs]
    mats = {}
    for ai, (_, u, v) in enumerate(x.A.quiver.arrows):
        img = (x.mats[ai] @ subs[u].B.T) % p
        coords = ffmat.solve_mat(subs[v].B.T, img, p)
        if coords is None:
            raise VerificationFailure("vertex spans not closed under arrow action")
        mats[ai] = coords
    k = Rep(x.A, dims, mats, check=False)
    incl = Morphism(k, x, [subs[v].B.T for v in range(len(x.dims))])
    return k, incl.check()


def kernel(f):
    """(K, incl) with K = Ker f."""
    rows = [ffmat.kernel(f.blocks[v], f.p) for v in range(len(f.src.dims))]
    return _sub_rep_from_rows(f.src, rows)


def image(f):
    """(I, incl: I -> tgt, onto: src -> I) with incl o onto = f."""
    p = f.p
    rows = [f.blocks[v].T for v in range(len(f.src.dims))]
    i, incl = _sub_rep_from_rows(f.tgt, rows)
    onto_blocks = []
    for v in range(len(f.src.dims)):
        coords = ffmat.solve_mat(incl.blocks[v], f.blocks[v], p)
        assert coords is not None
        onto_blocks.append(coords)
    onto = Morphism(f.src, i, onto_blocks).check()
    return i, incl, onto


def quotient_by_subspaces(x, subs):
    """(Q, proj) where Q = X / U for arrow-stable vertexwise subspaces U.

    Quotient coordinates are the non-pivot coordinates of the subspace's
    echelon basis; proj(y) reads off those coordinates of y reduced mod U.
    """
    p = x.p
    projs = []
    for v in range(len(x.dims)):
        s = subs[v]
        d = x.dims[v]
        free = [j for j in range(d) if j not in s.pivots]
        pm = zeros(len(free), d)
        for k, j in enumerate(free):
            pm[k, j] = 1
        for i, c in enumerate(s.pivots):
            for k, j in enumerate(free):
                pm[k, c] = (-s.B[i, j]) % p
        projs.append(pm)
    dims = [m.shape[0] for m in projs]
    mats = {}
    for ai, (_, u, v) in enumerate(x.A.quiver.arrows):
        sec = zeros(x.dims[u], dims[u])
        free_u = [j for j in range(x.dims[u]) if j not in subs[u].pivots]
        for k, j in enumerate(free_u):
            sec[j, k] = 1
        mats[ai] = (projs[v] @ x.mats[ai] @ sec) % p
    q = Rep(x.A, dims, mats, check=False)
    proj = Morphism(x, q, projs).check()
    return q, proj


def cokernel(f):
    p = f.p
    subs = [
        ffmat.Subspace(f.blocks[v].T, f.tgt.dims[v], p) for v in range(len(f.tgt.dims))
    ]
    return quotient_by_subspaces(f.tgt, subs)


def sub_closure(x, seed_rows):
    """Smallest arrow-closed family of vertex subspaces containing the seeds."""
    p = x.p
    spans = [ffmat.Subspace(seed_rows[v], x.dims[v], p) for v in range(len(x.dims))]
    changed = True
    while changed:
        changed = False
        for ai, (_, u, v) in enumerate(x.A.quiver.arrows):
            if spans[u].dim == 0:
                continue
            img = ffmat.Subspace((spans[u].B @ x.mats[ai].T) % p, x.dims[v], p)
            newer = spans[v].sum(img)
            if newer.dim != spans[v].dim:
                spans[v] = newer
                changed = True
    return spans


def sub_from_vectors(x, seed_rows):
    spans = sub_closure(x, seed_rows)
    return _sub_rep_from_rows(x, [s.B for s in spans])


def rad(x):
    """(R, incl) with R the radical (sum of all arrow images)."""
    rows = [zeros(0, x.dims[v]) for v in range(len(x.dims))]
    for ai, (_, u, v) in enumerate(x.A.quiver.arrows):
        rows[v] = np.concatenate([rows[v], x.mats[ai].T], axis=0)
    return _sub_rep_from_rows(x, rows)


def soc(x):
    """(S, incl) with S the socle (joint kernel of all arrows)."""
    p = x.p
    rows = []
    for v in range(len(x.dims)):
        stacked = [x.mats[ai] for ai, (_, u, _w) in enumerate(x.A.quiver.arrows) if u == v]
        if stacked:
            rows.append(ffmat.kernel(np.concatenate(stacked, axis=0), p))
        else:
            rows.append(identity(x.dims[v]))
    return _sub_rep_from_rows(x, rows)


def top(x):
    """(T, proj) with T = X / rad X."""
    r, incl = rad(x)
    subs = [
        ffmat.Subspace(incl.blocks[v].T, x.dims[v], x.p) for v in range(len(x.dims))
    ]
    return quotient_by_subspaces(x, subs)


def direct_sum(algebra, reps):
    """(D, inclusions, projections)."""
    if not reps:
        z = zero_rep(algebra)
        return z, [], []
    p = algebra.p
    nv = len(algebra.quiver.vertices)
    dims = [sum(r.dims[v] for r in reps) for v in range(nv)]
    mats = {}
    for ai in range(len(algebra.quiver.arrows)):
        _, u, v = algebra.quiver.arrows[ai]
        m = zeros(dims[v], dims[u])
        ro = co = 0
        for r in reps:
            m[ro : ro + r.dims[v], co : co + r.dims[u]] = r.mats[ai]
            ro += r.dims[v]
            co += r.dims[u]
        mats[ai] = m
    d = Rep(algebra, dims, mats, check=False)
    incls, projs = [], []
    offs = [[0] * nv]
    for r in reps:
        offs.append([offs[-1][v] + r.dims[v] for v in range(nv)])
    for i, r in enumerate(reps):
        ib, pb = [], []
        for v in range(nv):
            inc = zeros(dims[v], r.dims[v])
            prj = zeros(r.dims[v], dims[v])
            o = offs[i][v]
            for j in range(r.dims[v]):
                inc[o + j, j] = 1
                prj[j, o + j] = 1
            ib.append(inc)
            pb.append(prj)
        incls.append(Morphism(r, d, ib))
        projs.append(Morphism(d, r, pb))
    return d, incls, projs


def structure(x):
    """Radical series, socle series and top, as dimension vectors."""
    series = []
    cur = x
    while cur.total_dim:
        series.append(cur.dim_vector())
        cur = rad(cur)[0]
    # ascending socle series: socles of successive quotients
    socs = []
    y = x
    while y.total_dim:
        s, incl = soc(y)
        socs.append(s.dim_vector())
        subs = [ffmat.Subspace(incl.blocks[v].T, y.dims[v], y.p) for v in range(len(y.dims))]
        y = quotient_by_subspaces(y, subs)[0]
    t, _ = top(x)
    return {
        "radical_series": series,
        "socle_series": socs,
        "top": t.dim_vector(),
    }


# --- endomorphism-ring utilities ---------------------------------------------


class EndData:
    """End(X) with multiplication in coordinates."""

    def __init__(self, x):
        self.x = x
        self.p = x.p
        self.basis = end_algebra(x)
        self.dim = len(self.basis)
        if self.dim:
            self._flat = np.array([b.flat() for b in self.basis], dtype=INT).T
        else:
            self._flat = zeros(max(x.total_dim, 1), 0)

    def coords(self, f):
        if self.dim == 0:
            return np.array([], dtype=INT)
        c = ffmat.solve(self._flat, f.flat(), self.p)
        assert c is not None
        return c

    def from_coords(self, c):
        f = zero_morphism(self.x, self.x)
        for i, ci in enumerate(c):
            if ci:
                f = f.add(self.basis[i].scale(int(ci)))
        return f

    def total_matrix(self, f):
        """Block-diagonal matrix of an endomorphism on the total space."""
        n = self.x.total_dim
        m = zeros(n, n)
        off = self.x.offsets()
        for v in range(len(self.x.dims)):
            m[off[v] : off[v + 1], off[v] : off[v + 1]] = f.blocks[v]
        return m


def _find_idempotent_in_nonunital(elements_matrices, p, rng):
    """Nonzero idempotent in the span, assuming the span is a non-nil algebra
    closed under multiplication.  Returns a matrix, or None if the span is nil.
    """
    basis = elements_matrices
    if not basis:
        return None
    n = basis[0].shape[0]
    # nil test: power up the whole span
    span = [b for b in basis]
    cur = ffmat.Subspace(np.array([b.reshape(-1) for b in span], dtype=INT), n * n, p)
    bs = np.stack(basis)
    for _ in range(n + 1):
        if cur.dim == 0:
            return None
        prods = np.einsum("dij,ejk->deik", cur.B.reshape(cur.dim, n, n), bs) % p
        nxt = ffmat.Subspace(prods.reshape(cur.dim * len(basis), n * n), n * n, p)
        if nxt.dim == 0:
            return None
        if nxt.dim == cur.dim:
            # the chain of power spans is descending; equal dimension means
            # it has stabilized at a nonzero algebra, so the span is not nil
            break
        cur = nxt
    # non-nil: find a non-nilpotent element, then the idempotent in F_p[a]a
    candidates = list(basis)
    for x, y in itertools.combinations(basis, 2):
        candidates.append((x + y) % p)
    for _ in range(200):
        coeffs = [rng.randrange(p) for _ in basis]
        m = zeros(n, n)
        for c, b in zip(coeffs, basis):
            m = (m + c * b) % p
        candidates.append(m)
    for a in candidates:
        mp = ffmat.minpoly(a, p)
        # strip t^s: a non-nilpotent iff g != const after removing the t-power
        s = 0
        while s < len(mp) and mp[s] == 0:
            s += 1
        if s == len(mp) - 1 and s > 0:
            continue  # nilpotent element
        if s == 0:
            # a invertible within its span; a itself generates a monoid with identity
            # e = a^r for r with a^r idempotent: use CRT with t^1? handle via t*g trick:
            # multiply by t: consider b = a, minpoly without t factor: then the
            # subalgebra F_p[a] is unital with identity e = g*(a) ... compute below.
            g = mp
            # identity of F_p[a]: since gcd(t, g(t)) = 1, write u t + v g = 1;
            # then e = u(a) a is the identity of F_p[a], an idempotent.
            gpoly, u, v = ffmat.poly_xgcd(np.array([0, 1], dtype=INT), g, p)
            assert gpoly.tolist() == [1]
            e = (ffmat.poly_eval_mat(u, a, p) @ a) % p
        else:
            tpow = np.zeros(s + 1, dtype=INT)
            tpow[s] = 1
            g = ffmat.poly_divmod(mp, tpow, p)[0]
            gpoly, u, v = ffmat.poly_xgcd(tpow, g, p)
            if ffmat.poly_deg(gpoly) != 0:
                continue
            e = (ffmat.poly_eval_mat(u, a, p) @ np.linalg.matrix_power(a, s).astype(INT)) % p
            e = e % p
        if not e.any():
            continue
        if (((e @ e) % p) == e).all():
            return e
    return None


def _split_idempotent(x, e):
    """Split X along the idempotent endomorphism e: X = Im(e) + Ker(e)."""
    i1, u1, r1 = image(e)
    one = identity_morphism(x)
    comp = one.add(e.scale(x.p - 1))
    i2, u2, r2 = image(comp)
    if (r1.compose(u1).flat() != identity_morphism(i1).flat()).any():
        raise VerificationFailure("idempotent image retraction failed")
    if (r2.compose(u2).flat() != identity_morphism(i2).flat()).any():
        raise VerificationFailure("idempotent image retraction failed")
    return (i1, u1, r1), (i2, u2, r2)


def _nontrivial_idempotent(x, seed=0):
    """A nontrivial idempotent of End(X), or None if X is indecomposable.

    None is only returned on a certificate: the quotient of End(X) by a
    verified nilpotent ideal is a commutative algebra whose fixed space under
    the Frobenius map has dimension 1 (hence a field, hence End(X) local).
    """
    p = x.p
    ed = EndData(x)
    rng = random.Random(seed)
    if ed.dim == 0:
        return None
    if ed.dim == 1:
        return None
    mats = [ed.total_matrix(b) for b in ed.basis]
    # try element-wise splitting via coprime minimal polynomial factors
    candidates = list(mats)
    for xm, ym in itertools.combinations(mats, 2):
        candidates.append((xm + ym) % p)
    for _ in range(80):
        m = zeros(x.total_dim, x.total_dim)
        for b in mats:
            m = (m + rng.randrange(p) * b) % p
        candidates.append(m)
    one = identity(x.total_dim)
    for a in candidates:
        e = _idempotent_from_element(a, one, p)
        if e is not None:
            return _verified_endo_idempotent(x, ed, e)
    # commutative certificate: Frobenius fixed space of End/N for N nilpotent
    nil = _max_nil_ideal(ed, mats)
    if nil is not None:
        comm, frob_dim, e = _berlekamp_split(ed, mats, nil)
        if comm and frob_dim == 1:
            return None
        if e is not None:
            return _verified_endo_idempotent(x, ed, e)
        if comm:
            raise VerificationFailure("commutative Berlekamp split failed")
    # last resort: exhaustive search over End(X) (small dimensions only)
    if p ** ed.dim <= 4096:
        for coeffs in itertools.product(range(p), repeat=ed.dim):
            m = zeros(x.total_dim, x.total_dim)
            for c, b in zip(coeffs, mats):
                m = (m + c * b) % p
            if not m.any() or ((m - one) % p == 0).all():
                continue
            if (((m @ m) % p) == m).all():
                return _verified_endo_idempotent(x, ed, m)
        return None
    raise VerificationFailure("could not split or certify local endomorphism ring")


def _idempotent_from_element(a, one, p):
    """Nontrivial idempotent from an element with a split minimal polynomial."""
    mp = ffmat.minpoly(a, p)
    t = sympy.symbols("t")
    poly = sum(int(c) * t ** i for i, c in enumerate(mp))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fac = sympy.factor_list(sympy.Poly(poly, t, modulus=p))[1]
    if len(fac) < 2:
        return None
    f1, e1 = fac[0]
    part1 = sympy.Poly(f1 ** e1, t, modulus=p)
    rest = sympy.Poly(1, t, modulus=p)
    for fi, ei in fac[1:]:
        rest = rest * sympy.Poly(fi ** ei, t, modulus=p)
    c1 = np.array([int(c) % p for c in reversed(part1.all_coeffs())], dtype=INT)
    c2 = np.array([int(c) % p for c in reversed(sympy.Poly(rest, t, modulus=p).all_coeffs())], dtype=INT)
    g, u, v = ffmat.poly_xgcd(c1, c2, p)
    if ffmat.poly_deg(g) != 0:
        return None
    # e = (u*c1)(a) kills the c1-primary part and is 1 on the rest
    e = (ffmat.poly_eval_mat(ffmat.poly_mul(u, c1, p), a, p)) % p
    if not e.any() or ((e - one) % p == 0).all():
        return None
    if (((e @ e) % p) != e).any():
        return None
    return e


def _verified_endo_idempotent(x, ed, e_mat):
    """Turn a total-space idempotent matrix back into a checked Morphism."""
    off = x.offsets()
    blocks = [e_mat[off[v] : off[v + 1], off[v] : off[v + 1]] for v in range(len(x.dims))]
    f = Morphism(x, x, blocks).check()
    if (f.compose(f).flat() != f.flat()).any():
        raise VerificationFailure("claimed idempotent is not idempotent")
    return f


def _max_nil_ideal(ed, mats):
    """A verified nilpotent two-sided ideal of End(X) (the radical when the
    characteristic-p coefficient chain succeeds), as a Subspace of coordinates.
    """
    p = ed.p
    n = mats[0].shape[0] if mats else 0
    dim = ed.dim
    cur = ffmat.Subspace(identity(dim), dim, p)
    i = 0
    while p ** i <= max(n, 1):
        rows = []
        cur_elems = [_coords_to_mat(ed, mats, c) for c in cur.B]
        for cm in cur_elems:
            row = []
            for b in cur.B:
                bm = _coords_to_mat(ed, mats, b)
                cp = ffmat.charpoly((cm @ bm) % p, p)
                row.append(int(cp[n - p ** i]) % p if n - p ** i >= 0 else 0)
            rows.append(row)
        if cur.dim == 0:
            break
        constraint = np.array(rows, dtype=INT)  # rows indexed by y, cols by x-basis of cur
        ker = ffmat.kernel(constraint, p)
        newb = (ker @ cur.B) % p
        cur = ffmat.Subspace(newb, dim, p)
        i += 1
    # verify: two-sided ideal and nilpotent
    for c in cur.B:
        cm = _coords_to_mat(ed, mats, c)
        for bm in mats:
            for prod in ((cm @ bm) % p, (bm @ cm) % p):
                pc = _mat_to_coords(ed, mats, prod)
                if pc is None or not cur.contains(pc):
                    return None
    power = [_coords_to_mat(ed, mats, c) for c in cur.B]
    for _ in range(dim + 1):
        if not power:
            break
        if all(not m.any() for m in power):
            break
        nxt = []
        for m in power:
            for c in cur.B:
                nxt.append((m @ _coords_to_mat(ed, mats, c)) % p)
        sp = ffmat.Subspace(np.array([m.reshape(-1) for m in nxt], dtype=INT), power[0].size, p)
        power = [row.reshape(power[0].shape) for row in sp.B]
    else:
        return None
    if power and any(m.any() for m in power):
        return None
    return cur


def _coords_to_mat(ed, mats, coords):
    m = zeros(mats[0].shape[0], mats[0].shape[1])
    for c, b in zip(coords, mats):
        if c:
            m = (m + int(c) * b) % ed.p
    return m


def _mat_to_coords(ed, mats, m):
    flat = np.array([b.reshape(-1) for b in mats], dtype=INT).T
    return ffmat.solve(flat, m.reshape(-1), ed.p)


def _berlekamp_split(ed, mats, nil):
    """(is_commutative, frobenius_fixed_dim, idempotent_or_None) for End/nil."""
    p = ed.p
    dim = ed.dim
    # basis of a complement of nil inside End (coordinates)
    comp_rows = []
    space = nil
    for i in range(dim):
        e = zeros(1, dim)[0]
        e[i] = 1
        if not space.contains(e):
            comp_rows.append(e)
            space = space.sum(ffmat.Subspace(e.reshape(1, -1), dim, p))
    q_basis = comp_rows  # coset representatives of End/nil
    qd = len(q_basis)

    def mul(cx, cy):
        mx = _coords_to_mat(ed, mats, cx)
        my = _coords_to_mat(ed, mats, cy)
        return _mat_to_coords(ed, mats, (mx @ my) % p)

    def reduce_mod_nil(c):
        return nil.reduce(c)

    # commutativity of the quotient
    comm = True
    for i in range(qd):
        for j in range(i + 1, qd):
            d = (mul(q_basis[i], q_basis[j]) - mul(q_basis[j], q_basis[i])) % p
            if reduce_mod_nil(d).any():
                comm = False
                break
        if not comm:
            break
    if not comm:
        return False, -1, None
    # coordinates of the quotient: express residues in terms of q_basis residues
    qmat = np.array([reduce_mod_nil(c) for c in q_basis], dtype=INT).T

    def qcoords(c):
        s = ffmat.solve(qmat, reduce_mod_nil(c), p)
        assert s is not None
        return s

    # Frobenius map s -> s^p on the quotient
    frob_cols = []
    for c in q_basis:
        m = _coords_to_mat(ed, mats, c)
        mp_ = np.linalg.matrix_power(m, p).astype(INT) % p
        cp = _mat_to_coords(ed, mats, mp_)
        frob_cols.append(qcoords(cp))
    frob = np.array(frob_cols, dtype=INT).T % p
    fixed = ffmat.kernel((frob - identity(qd)) % p, p)
    fdim = fixed.shape[0]
    if fdim <= 1:
        return True, fdim, None
    # an idempotent: pick a fixed element outside span(1), CRT-split its minpoly
    one_q = qcoords(_mat_to_coords(ed, mats, identity(mats[0].shape[0])))
    span1 = ffmat.Subspace(one_q.reshape(1, -1), qd, p)
    for row in fixed:
        if span1.contains(row):
            continue
        c = (row @ np.array(q_basis, dtype=INT)) % p
        a = _coords_to_mat(ed, mats, c)
        e = _idempotent_from_element(a, identity(a.shape[0]), p)
        if e is not None:
            return True, fdim, e
    return True, fdim, None


def decompose(x, seed=0):
    """Indecomposable direct summands as (rep, incl, proj) triples.

    The decomposition is certified: each returned projection/inclusion pair
    composes to the identity of the summand, their images sum to X, and each
    summand refused further splitting.
    """
    key = ("decompose", seed)
    if key in x._cache:
        return x._cache[key]
    out = []

    def walk(y, incl_to_x, proj_from_x):
        if y.total_dim == 0:
            return
        e = _nontrivial_idempotent(y, seed=seed)
        if e is None:
            out.append((y, incl_to_x, proj_from_x))
            return
        (i1, u1, r1), (i2, u2, r2) = _split_idempotent(y, e)
        if i1.total_dim == 0 or i2.total_dim == 0:
            raise VerificationFailure("trivial split from claimed nontrivial idempotent")
        if i1.total_dim + i2.total_dim != y.total_dim:
            raise VerificationFailure("split dimensions do not add up")
        walk(i1, incl_to_x.compose(u1), r1.compose(proj_from_x))
        walk(i2, incl_to_x.compose(u2), r2.compose(proj_from_x))

    walk(x, identity_morphism(x), identity_morphism(x))
    # certificate: the idempotents incl o proj sum to the identity
    total = zero_morphism(x, x)
    for (_, u, r) in out:
        total = total.add(u.compose(r))
    if (total.flat() != identity_morphism(x).flat()).any():
        raise VerificationFailure("summand idempotents do not sum to identity")
    x._cache[key] = out
    return out


def is_isomorphic(x, y):
    if x.dim_vector() != y.dim_vector():
        return False
    if x.total_dim == 0:
        return True
    dx = decompose(x)
    dy = decompose(y)
    if len(dx) != len(dy):
        return False
    used = [False] * len(dy)
    for (sx, _, _) in dx:
        found = False
        for j, (sy, _, _) in enumerate(dy):
            if not used[j] and _is_iso_indec(sx, sy):
                used[j] = True
                found = True
                break
        if not found:
            return False
    return True


def _is_iso_indec(x, y):
    """Isomorphism test for modules already known to be indecomposable."""
    if x.dim_vector() != y.dim_vector():
        return False
    if x.total_dim == 0:
        return True
    fwd = hom_space(x, y)
    bwd = hom_space(y, x)
    if not fwd or not bwd:
        return False
    for u in fwd:
        for v in bwd:
            w = v.compose(u)
            if w.is_iso():
                return True
    return False


def iso_classes(reps):
    """Group indecomposable reps into classes: list of (representative, count)."""
    classes = []
    for r in reps:
        for cl in classes:
            if _is_iso_indec(cl[0], r):
                cl.append(r)
                break
        else:
            classes.append([r])
    return [(cl[0], len(cl)) for cl in classes]


def krs_count(x):
    """Number of indecomposable direct summands, with multiplicity."""
    return len(decompose(x))


# --- right minimality and right equivalence ----------------------------------


def right_minimalize(f, seed=0):
    """(fmin, split) with f = fmin o split, fmin right minimal, split a split epi."""
    x = f.src
    if x.total_dim == 0:
        return f, identity_morphism(x)
    split_acc = identity_morphism(x)
    cur = f
    rng = random.Random(seed)
    for _ in range(x.total_dim + 1):
        src = cur.src
        if src.total_dim == 0:
            break
        ed = EndData(src)
        if ed.dim == 0:
            break
        # K0 = {h in End(src) : cur o h = 0}
        cols = [cur.compose(b).flat() for b in ed.basis]
        mat = np.array(cols, dtype=INT).T % f.p
        if mat.size == 0:
            k0 = identity(ed.dim)
        else:
            k0 = ffmat.kernel(mat, f.p)
        if k0.shape[0] == 0:
            break
        k0_mats = [ed.total_matrix(ed.from_coords(c)) for c in k0]
        e = _find_idempotent_in_nonunital(k0_mats, f.p, rng)
        if e is None:
            break  # K0 nil: right minimal
        em = _verified_endo_idempotent(src, ed, e)
        if cur.compose(em).flat().any():
            raise VerificationFailure("idempotent not killed by the map")
        one = identity_morphism(src)
        comp = one.add(em.scale(f.p - 1))  # 1 - e
        knew, uk, rk = image(comp)
        if (rk.compose(uk).flat() != identity_morphism(knew).flat()).any():
            raise VerificationFailure("retraction failure during minimalization")
        cur = cur.compose(uk)
        split_acc = rk.compose(split_acc)
    else:
        raise VerificationFailure("right minimalization did not terminate")
    return cur, split_acc


def right_leq(f, g):
    """(exists h with f = g o h, canonical h or None)."""
    p = f.p
    x, z = f.src, g.src
    nv = len(x.dims)
    sizes = [z.dims[v] * x.dims[v] for v in range(nv)]
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    nunk = starts[-1]
    rows = []
    rhs = []
    for ai, (_, u, v) in enumerate(x.A.quiver.arrows):
        neq = z.dims[v] * x.dims[u]
        if neq == 0:
            continue
        block = zeros(neq, nunk)
        if sizes[u]:
            block[:, starts[u] : starts[u + 1]] = ffmat.kron(z.mats[ai], identity(x.dims[u]), p)
        if sizes[v]:
            block[:, starts[v] : starts[v + 1]] = (
                block[:, starts[v] : starts[v + 1]] - ffmat.kron(identity(z.dims[v]), x.mats[ai].T, p)
            ) % p
        rows.append(block)
        rhs.append(zeros(1, neq)[0])
    for v in range(nv):
        neq = f.tgt.dims[v] * x.dims[v]
        if neq == 0:
            continue
        block = zeros(neq, nunk)
        if sizes[v]:
            block[:, starts[v] : starts[v + 1]] = ffmat.kron(g.blocks[v], identity(x.dims[v]), p)
        rows.append(block)
        rhs.append(f.blocks[v].reshape(-1))
    if nunk == 0:
        ok = all(not r.any() for r in rhs)
        return (True, zero_morphism(x, z)) if ok else (False, None)
    eqs = np.concatenate(rows, axis=0) if rows else zeros(0, nunk)
    b = np.concatenate(rhs) if rhs else zeros(1, 0)[0]
    sol = ffmat.solve(eqs, b, p)
    if sol is None:
        return False, None
    h = morphism_from_flat(x, z, sol).check()
    return True, h


def right_equivalent(f, g):
    a, _ = right_leq(f, g)
    if not a:
        return False
    b, _ = right_leq(g, f)
    return b


def left_leq(f, g):
    """(exists h with f = h o g, canonical h or None).  f: A->B, g: A->C."""
    p = f.p
    b, c = f.tgt, g.tgt
    nv = len(b.dims)
    sizes = [b.dims[v] * c.dims[v] for v in range(nv)]
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    nunk = starts[-1]
    rows = []
    rhs = []
    for ai, (_, u, v) in enumerate(b.A.quiver.arrows):
        neq = b.dims[v] * c.dims[u]
        if neq == 0:
            continue
        block = zeros(neq, nunk)
        if sizes[u]:
            block[:, starts[u] : starts[u + 1]] = ffmat.kron(b.mats[ai], identity(c.dims[u]), p)
        if sizes[v]:
            block[:, starts[v] : starts[v + 1]] = (
                block[:, starts[v] : starts[v + 1]] - ffmat.kron(identity(b.dims[v]), c.mats[ai].T, p)
            ) % p
        rows.append(block)
        rhs.append(zeros(1, neq)[0])
    for v in range(nv):
        neq = b.dims[v] * f.src.dims[v]
        if neq == 0:
            continue
        block = zeros(neq, nunk)
        if sizes[v]:
            block[:, starts[v] : starts[v + 1]] = ffmat.kron(identity(b.dims[v]), g.blocks[v].T, p)
        rows.append(block)
        rhs.append(f.blocks[v].reshape(-1))
    if nunk == 0:
        ok = all(not r.any() for r in rhs)
        return (True, zero_morphism(c, b)) if ok else (False, None)
    eqs = np.concatenate(rows, axis=0) if rows else zeros(0, nunk)
    vb = np.concatenate(rhs) if rhs else zeros(1, 0)[0]
    sol = ffmat.solve(eqs, vb, p)
    if sol is None:
        return False, None
    h = morphism_from_flat(c, b, sol).check()
    return True, h


def is_split_epi(g):
    return right_leq(identity_morphism(g.tgt), g)[0]


def is_split_mono(u):
    return left_leq(identity_morphism(u.src), u)[0]


def pullback(f, g):
    """(P, to_src_f, to_src_g) universal commutative square over f, g."""
    algebra = f.src.A
    d, incls, projs = direct_sum(algebra, [f.src, g.src])
    h = f.compose(projs[0]).add(g.compose(projs[1]).scale(f.p - 1))
    k, incl = kernel(h)
    px = projs[0].compose(incl)
    pz = projs[1].compose(incl)
    if (f.compose(px).flat() != g.compose(pz).flat()).any():
        raise VerificationFailure("pullback square does not commute")
    return k, px, pz


def meet_map(f, g):
    k, px, pz = pullback(f, g)
    return f.compose(px)


def join_map(f, g):
    algebra = f.src.A
    d, incls, projs = direct_sum(algebra, [f.src, g.src])
    return f.compose(projs[0]).add(g.compose(projs[1]))
