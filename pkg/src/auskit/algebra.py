"""Quiver path algebras with relations over a prime field.

An Algebra is kQ/I for a finite quiver Q and an ideal I presented by signed
sums of parallel paths.  A monomial basis is found by growing path length
until every path of the current maximal length reduces into shorter ones;
products are then tabulated once and checked for associativity.

Paths are pairs (src_vertex, names) where names is a tuple of arrow indices
in composition order: the leftmost arrow is applied last, so the path written
"a*b" acts as "first b, then a".
"""

import os
import re

import numpy as np
import sympy

from . import rep
from .errors import BadRelation, NotFiniteDimensional, ParseError
from .ffmat import INT, Subspace, amod, zeros


class Quiver:
    """Finite quiver: named vertices and named arrows (name, src, tgt)."""

    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("duplicate vertex name")
        self.arrows = []
        seen = set()
        nv = len(self.vertices)
        for name, u, v in arrows:
            if name in seen:
                raise ParseError("duplicate arrow name %r" % name)
            seen.add(name)
            u, v = int(u), int(v)
            if not (0 <= u < nv and 0 <= v < nv):
                raise ParseError("arrow %r endpoints out of range" % name)
            self.arrows.append((name, u, v))

    def vertex_index(self, name):
        try:
            return self.vertices.index(name)
        except ValueError:
            raise ParseError("unknown vertex %r" % name)

    def arrow_index(self, name):
        for i, (nm, _, _) in enumerate(self.arrows):
            if nm == name:
                return i
        raise ParseError("unknown arrow %r" % name)

    def has_oriented_cycle(self):
        nv = len(self.vertices)
        out = [[] for _ in range(nv)]
        for _, u, v in self.arrows:
            out[u].append(v)
        color = [0] * nv  # 0 unseen, 1 on stack, 2 done

        def visit(v):
            color[v] = 1
            for w in out[v]:
                if color[w] == 1:
                    return True
                if color[w] == 0 and visit(w):
                    return True
            color[v] = 2
            return False

        return any(color[v] == 0 and visit(v) for v in range(nv))

    def __repr__(self):
        return "Quiver(%s; %s)" % (
            " ".join(self.vertices),
            ", ".join("%s:%s->%s" % (n, self.vertices[u], self.vertices[v]) for n, u, v in self.arrows),
        )


def path_target(quiver, path):
    """Target vertex of a path, validating composability along the way."""
    v, names = path
    for ai in reversed(names):
        _, u, w = quiver.arrows[ai]
        if u != v:
            raise BadRelation("path is not composable")
        v = w
    return v


def path_str(quiver, path):
    v, names = path
    if not names:
        return "e_%s" % quiver.vertices[v]
    return "*".join(quiver.arrows[ai][0] for ai in names)


class Algebra:
    """kQ/I with a tabulated monomial basis.

    relations: list of relations, each a list of (coef, path) with all paths
    parallel (same source and target vertex) and of length >= 1.
    """

    def __init__(self, quiver, p, relations, name="", max_len=64, max_paths=200000):
        p = int(p)
        if not sympy.isprime(p):
            raise ParseError("field size %d is not prime" % p)
        self.quiver = quiver
        self.p = p
        self.name = name
        self._op = None
        self._proj_cache = {}
        self._inj_cache = {}
        self.relations = self._normalize_relations(relations)
        self._build_basis(max_len, max_paths)
        self._build_mult()
        self._self_check()

    # -- construction ----------------------------------------------------

    def _normalize_relations(self, relations):
        out = []
        for rel in relations:
            terms = []
            sig = None
            for coef, path in rel:
                coef = int(coef) % self.p
                if coef == 0:
                    continue
                src, names = path
                if len(names) < 1:
                    raise BadRelation("relation terms must have length >= 1")
                tgt = path_target(self.quiver, path)
                if sig is None:
                    sig = (src, tgt)
                elif sig != (src, tgt):
                    raise BadRelation("relation terms are not parallel")
                terms.append((coef, (src, tuple(int(a) for a in names))))
            if terms:
                out.append(terms)
        if self.quiver.has_oriented_cycle():
            for rel in out:
                lens = {len(path[1]) for _, path in rel}
                if len(lens) > 1:
                    raise BadRelation(
                        "relations mixing path lengths are not supported on quivers with oriented cycles"
                    )
        return out

    def _build_basis(self, max_len, max_paths):
        q = self.quiver
        nv = len(q.vertices)
        by_src = [[] for _ in range(nv)]  # arrows grouped by source vertex
        for ai, (_, u, v) in enumerate(q.arrows):
            by_src[u].append((ai, v))

        # paths[l] = list of (path, tgt)
        paths = [[((v, ()), v) for v in range(nv)]]
        maxrel = max((max(len(t[1][1]) for t in rel) for rel in self.relations), default=0)

        L = 0
        while True:
            L += 1
            new = []
            for path, tgt in paths[L - 1]:
                src, names = path
                for ai, w in by_src[tgt]:
                    new.append(((src, (ai,) + names), w))
            paths.append(new)
            allp = [pt for lvl in paths for pt in lvl]
            if len(allp) > max_paths:
                raise NotFiniteDimensional("path count exceeds cap (%d)" % max_paths)
            if L < maxrel:
                if L >= max_len:
                    raise NotFiniteDimensional("relation terms exceed length cap %d" % max_len)
                continue

            # column order: longest paths first, then deterministic tie-break
            order = sorted(range(len(allp)), key=lambda i: (-len(allp[i][0][1]), allp[i][0]))
            pos = {allp[i][0]: k for k, i in enumerate(order)}
            tgt_of = {pt[0]: pt[1] for pt in allp}
            ncols = len(allp)

            rows = []
            for rel in self.relations:
                rsrc = rel[0][1][0]
                rtgt = tgt_of[rel[0][1]]
                m = max(len(t[1][1]) for t in rel)
                lefts = [pt for pt, t in allp if pt[0] == rtgt]
                rights = [pt for pt, t in allp if t == rsrc]
                for u in lefts:
                    for v in rights:
                        if len(u[1]) + len(v[1]) + m > L:
                            continue
                        row = zeros(1, ncols)[0]
                        for coef, t in rel:
                            full = (v[0], u[1] + t[1] + v[1])
                            row[pos[full]] = (row[pos[full]] + coef) % self.p
                        rows.append(row)
            mat = np.array(rows, dtype=INT).reshape(-1, ncols)
            ideal = Subspace(mat, ncols, self.p)
            pivset = set(ideal.pivots)
            if all(pos[pt] in pivset for pt, _ in paths[L]):
                break
            if L >= max_len:
                raise NotFiniteDimensional("no basis stabilization up to length %d" % max_len)

        free = [k for k in range(ncols) if k not in pivset]
        inv_order = {k: i for k, i in enumerate(order)}
        free_paths = [allp[inv_order[k]][0] for k in free]
        basis = sorted(free_paths, key=lambda pt: (len(pt[1]), pt))
        self.basis = basis
        self.dim = len(basis)
        self._bindex = {pt: i for i, pt in enumerate(basis)}
        self.basis_src = [pt[0] for pt in basis]
        self.basis_tgt = [tgt_of[pt] for pt in basis]
        self._path_tgt = tgt_of
        self._max_len = L

        # normal form of every enumerated path, as a vector over the basis
        basis_col = {pos[pt]: i for pt, i in self._bindex.items()}
        self._nf = {}
        for pt, _t in allp:
            v = zeros(1, ncols)[0]
            v[pos[pt]] = 1
            r = ideal.reduce(v)
            out = zeros(1, self.dim)[0]
            for k in np.nonzero(r)[0]:
                out[basis_col[int(k)]] = r[k]
            self._nf[pt] = out

    def _build_mult(self):
        q = self.quiver
        d = self.dim
        self._arrow_left = []
        for ai, (_, u, w) in enumerate(q.arrows):
            m = zeros(d, d)
            for j, pt in enumerate(self.basis):
                if self.basis_tgt[j] != u:
                    continue
                m[:, j] = self._nf[(pt[0], (ai,) + pt[1])]
            self._arrow_left.append(m)

        mul = np.zeros((d, d, d), dtype=INT)
        for i, bi in enumerate(self.basis):
            for j in range(d):
                if self.basis_tgt[j] != self.basis_src[i]:
                    continue
                v = zeros(1, d)[0]
                v[j] = 1
                for ai in reversed(bi[1]):
                    v = (self._arrow_left[ai] @ v) % self.p
                mul[i, j] = v
        self.mul_table = mul
        unit = zeros(1, d)[0]
        for i, pt in enumerate(self.basis):
            if not pt[1]:
                unit[i] = 1
        self.unit = unit

    def _self_check(self):
        d, p = self.dim, self.p
        m = self.mul_table
        lhs = (np.einsum("ijm,mkl->ijkl", m, m) % p)
        rhs = (np.einsum("jkm,iml->ijkl", m, m) % p)
        if d <= 24:
            if (lhs != rhs).any():
                raise BadRelation("multiplication table is not associative")
        else:
            rng = np.random.default_rng(0)
            for _ in range(200):
                i, j, k = rng.integers(0, d, 3)
                if (lhs[i, j, k] != rhs[i, j, k]).any():
                    raise BadRelation("multiplication table is not associative")
        left = np.einsum("i,ijl->jl", self.unit, m) % p
        right = np.einsum("j,ijl->il", self.unit, m) % p
        if (left != np.eye(d, dtype=INT)).any() or (right != np.eye(d, dtype=INT)).any():
            raise BadRelation("unit is not a two-sided identity")

    # -- basic queries -----------------------------------------------------

    @property
    def nv(self):
        return len(self.quiver.vertices)

    def mul_vec(self, u, v):
        """Product of two algebra elements in basis coordinates."""
        return np.einsum("i,j,ijl->l", amod(u, self.p), amod(v, self.p), self.mul_table) % self.p

    def nf(self, path):
        """Normal form of an arbitrary path as a basis vector."""
        src, names = path
        pt = (src, tuple(names))
        if pt in self._nf:
            return self._nf[pt].copy()
        v = zeros(1, self.dim)[0]
        v[self._bindex[(src, ())]] = 1
        for ai in reversed(names):
            v = (self._arrow_left[ai] @ v) % self.p
        return v

    def _vertex_of(self, v):
        return v if isinstance(v, int) else self.quiver.vertex_index(v)

    # -- distinguished modules ----------------------------------------------

    def proj_paths(self, v):
        """Per-vertex ordered basis paths of P(v): paths with source v."""
        v = self._vertex_of(v)
        out = [[] for _ in range(self.nv)]
        for i, pt in enumerate(self.basis):
            if self.basis_src[i] == v:
                out[self.basis_tgt[i]].append(pt)
        return out

    def proj(self, v):
        """Indecomposable projective P(v): paths starting at v."""
        v = self._vertex_of(v)
        if v in self._proj_cache:
            return self._proj_cache[v]
        pp = self.proj_paths(v)
        loc = {pt: (w, k) for w in range(self.nv) for k, pt in enumerate(pp[w])}
        dims = [len(pp[w]) for w in range(self.nv)]
        mats = {}
        for ai, (_, u, w) in enumerate(self.quiver.arrows):
            m = zeros(dims[w], dims[u])
            for k, pt in enumerate(pp[u]):
                img = self._nf[(v, (ai,) + pt[1])]
                for gi in np.nonzero(img)[0]:
                    ww, kk = loc[self.basis[int(gi)]]
                    m[kk, k] = img[gi]
            mats[ai] = m
        r = rep.Rep(self, dims, mats)
        self._proj_cache[v] = r
        return r

    def simple(self, v):
        v = self._vertex_of(v)
        dims = [1 if w == v else 0 for w in range(self.nv)]
        mats = {ai: zeros(dims[w], dims[u]) for ai, (_, u, w) in enumerate(self.quiver.arrows)}
        return rep.Rep(self, dims, mats)

    def inj(self, v):
        """Indecomposable injective Q(v): dual of the opposite projective."""
        v = self._vertex_of(v)
        if v in self._inj_cache:
            return self._inj_cache[v]
        po = self.opposite().proj(v)
        mats = {ai: po.mats[ai].T.copy() for ai in range(len(self.quiver.arrows))}
        r = rep.Rep(self, po.dims, mats)
        self._inj_cache[v] = r
        return r

    def opposite(self):
        if self._op is not None:
            return self._op
        qop = Quiver(self.quiver.vertices, [(n, v, u) for n, u, v in self.quiver.arrows])
        rels = []
        for rel in self.relations:
            terms = []
            for coef, (src, names) in rel:
                tgt = self._path_tgt[(src, names)]
                terms.append((coef, (tgt, tuple(reversed(names)))))
            rels.append(terms)
        op = Algebra(qop, self.p, rels, name=self.name + "^op" if self.name else "")
        op._op = self
        self._op = op
        return op

    def yoneda(self, v, module, vec):
        """Morphism P(v) -> module sending e_v to vec (an element of module at v)."""
        v = self._vertex_of(v)
        pv = self.proj(v)
        pp = self.proj_paths(v)
        vec = amod(np.asarray(vec, dtype=INT), self.p).reshape(module.dims[v])
        blocks = []
        for w in range(self.nv):
            b = zeros(module.dims[w], pv.dims[w])
            for k, pt in enumerate(pp[w]):
                b[:, k] = (module.path_matrix(pt) @ vec) % self.p
            blocks.append(b)
        return rep.Morphism(pv, module, blocks)

    def right_mult(self, ai):
        """Right multiplication by arrow ai as a morphism P(tgt) -> P(src)."""
        _, u, w = self.quiver.arrows[ai]
        pw, pu = self.proj(w), self.proj(u)
        ppw, ppu = self.proj_paths(w), self.proj_paths(u)
        locu = {pt: (y, k) for y in range(self.nv) for k, pt in enumerate(ppu[y])}
        blocks = []
        for y in range(self.nv):
            b = zeros(pu.dims[y], pw.dims[y])
            for k, pt in enumerate(ppw[y]):
                img = self._nf[(u, pt[1] + (ai,))]
                for gi in np.nonzero(img)[0]:
                    yy, kk = locu[self.basis[int(gi)]]
                    b[kk, k] = img[gi]
            blocks.append(b)
        return rep.Morphism(pw, pu, blocks)

    def __repr__(self):
        return "Algebra(%s, p=%d, dim=%d)" % (self.name or self.quiver, self.p, self.dim)


# -- text formats ------------------------------------------------------------


def parse_algebra_file(text, name=""):
    """Parse an algebra description.

    Line oriented:  `field p`, `vertices a b c`, `arrow name src tgt`,
    `relation term [+|- term ...]` with term = arrowname(*arrowname)*.
    `#` starts a comment.
    """
    p = None
    vertices = None
    arrows = []
    rel_texts = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kw = toks[0]
        if kw == "field":
            if p is not None or len(toks) != 2:
                raise ParseError("bad field line: %r" % raw)
            p = int(toks[1])
        elif kw == "vertices":
            if vertices is not None or len(toks) < 2:
                raise ParseError("bad vertices line: %r" % raw)
            vertices = toks[1:]
        elif kw == "arrow":
            if len(toks) != 4:
                raise ParseError("bad arrow line: %r" % raw)
            arrows.append(toks[1:4])
        elif kw == "relation":
            rel_texts.append(" ".join(toks[1:]))
        else:
            raise ParseError("unknown keyword %r" % kw)
    if p is None or vertices is None:
        raise ParseError("algebra needs `field` and `vertices` lines")

    def vidx(nm):
        if nm not in vertices:
            raise ParseError("unknown vertex %r in arrow line" % nm)
        return vertices.index(nm)

    q = Quiver(vertices, [(n, vidx(s), vidx(t)) for n, s, t in arrows])

    relations = []
    for rt in rel_texts:
        terms = []
        for sign, term in re.findall(r"([+-]?)\s*([A-Za-z0-9_*]+)", rt):
            names = term.split("*")
            idxs = tuple(q.arrow_index(nm) for nm in names)
            src = q.arrows[idxs[-1]][1]
            path_target(q, (src, idxs))  # validates composability
            terms.append((-1 if sign == "-" else 1, (src, idxs)))
        if terms:
            relations.append(terms)
    return Algebra(q, p, relations, name=name)


def load_algebra(path):
    with open(path) as fh:
        text = fh.read()
    return parse_algebra_file(text, name=os.path.splitext(os.path.basename(path))[0])


_TOKEN = re.compile(r"\+\+|\^|\(|\)|,|[A-Za-z_][A-Za-z0-9_]*|\d+")


def parse_module_expr(algebra, text, env=None):
    """Build a module from an expression.

    Grammar: expr := atom ("++" atom)* ; atom := base ["^" n] ;
    base := P(v) | Q(v) | S(v) | tau(expr) | taum(expr) | rad(expr) |
            soc(expr) | top(expr) | 0 | IDENT | IDENT(scalar, ...).
    IDENTs resolve through env to a module or a callable.
    """
    env = env or {}
    toks = _TOKEN.findall(text)
    if "".join(toks).replace(" ", "") != re.sub(r"\s+", "", text):
        raise ParseError("unexpected characters in module expression %r" % text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take(expect=None):
        t = peek()
        if t is None or (expect is not None and t != expect):
            raise ParseError("bad module expression %r (at %r)" % (text, t))
        pos[0] += 1
        return t

    def parse_expr():
        parts = [parse_atom()]
        while peek() == "++":
            take()
            parts.append(parse_atom())
        if len(parts) == 1:
            return parts[0]
        return rep.direct_sum(algebra, parts)[0]

    def parse_atom():
        base = parse_base()
        if peek() == "^":
            take()
            n = int(take())
            return rep.direct_sum(algebra, [base] * n)[0]
        return base

    def parse_base():
        t = take()
        if t == "0":
            return rep.zero_rep(algebra)
        if t in ("P", "Q", "S"):
            take("(")
            v = take()
            take(")")
            fn = {"P": algebra.proj, "Q": algebra.inj, "S": algebra.simple}[t]
            return fn(v)
        if t in ("tau", "taum", "rad", "soc", "top"):
            take("(")
            m = parse_expr()
            take(")")
            if t in ("tau", "taum"):
                from . import ar

                return ar.tau(m) if t == "tau" else ar.tau_minus(m)
            return {"rad": rep.rad, "soc": rep.soc, "top": rep.top}[t](m)[0]
        if t in env:
            val = env[t]
            if callable(val):
                take("(")
                args = []
                while peek() != ")":
                    a = take()
                    args.append(int(a) if a.isdigit() else a)
                    if peek() == ",":
                        take(",")
                take(")")
                return val(*args)
            return val
        raise ParseError("unknown module name %r" % t)

    out = parse_expr()
    if peek() is not None:
        raise ParseError("trailing tokens in module expression %r" % text)
    return out
