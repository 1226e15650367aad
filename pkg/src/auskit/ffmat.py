"""Exact dense linear algebra over the prime fields F_p (p small).

Matrices are numpy int64 arrays with entries in {0, ..., p-1}; the modulus is
passed explicitly.  Reduced row echelon form is the canonical representative
used everywhere: two subspaces are equal iff their rref bases are bytewise
equal, which is what makes deduplication by key sound.
"""

import itertools

import numpy as np

from .errors import CapExceeded

INT = np.int64


def amod(a, p):
    return np.asarray(a, dtype=INT) % p


def zeros(m, n):
    return np.zeros((m, n), dtype=INT)


def identity(n):
    return np.eye(n, dtype=INT)


def inv_mod(a, p):
    """Inverse of a nonzero scalar mod the prime p."""
    return pow(int(a) % p, p - 2, p)


def mat_key(a):
    a = np.ascontiguousarray(a, dtype=INT)
    return (a.shape, a.tobytes())


def rref(a, p):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    r = amod(a, p).copy()
    if r.ndim != 2:
        r = r.reshape(1, -1)
    m, n = r.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        if r[row, col] != 1:
            r[row] = (r[row] * inv_mod(r[row, col], p)) % p
        colv = r[:, col].copy()
        colv[row] = 0
        others = np.nonzero(colv)[0]
        if others.size:
            r[others] = (r[others] - np.outer(r[others, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a, p):
    return len(rref(a, p)[1])


def _kernel_from_rref(r, pivots, n, p):
    free = [j for j in range(n) if j not in pivots]
    basis = zeros(len(free), n)
    for k, j in enumerate(free):
        basis[k, j] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-r[i, j]) % p
    return basis


def kernel(a, p):
    """Basis of {x : a @ x = 0}, as rows.  Shape (dim_ker, ncols)."""
    a = amod(a, p)
    n = a.shape[1]
    r, piv = rref(a, p)
    return _kernel_from_rref(r, piv, n, p)


def solve_all(a, b, p):
    """General solution of a @ x = b: (particular, kernel_rows), or None.

    The particular solution is the canonical one with all free variables
    set to zero, so repeated calls are reproducible.
    """
    a = amod(a, p)
    b = amod(b, p).reshape(-1)
    m, n = a.shape
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, piv = rref(aug, p)
    if n in piv:
        return None
    x0 = zeros(1, n)[0]
    for i, c in enumerate(piv):
        x0[c] = r[i, n]
    ker = _kernel_from_rref(r[:, :n], piv, n, p)
    return x0, ker


def solve(a, b, p):
    out = solve_all(a, b, p)
    return None if out is None else out[0]


def solve_mat(a, b, p):
    """Solve a @ x = b columnwise (b a matrix); None if any column fails."""
    a = amod(a, p)
    b = amod(b, p)
    n = a.shape[1]
    k = b.shape[1]
    r, piv = rref(np.concatenate([a, b], axis=1), p)
    if piv and piv[-1] >= n:
        return None
    x = zeros(n, k)
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x


def inv(a, p):
    """Matrix inverse; None if singular."""
    a = amod(a, p)
    n = a.shape[0]
    r, piv = rref(np.concatenate([a, identity(n)], axis=1), p)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return r[:, n:].copy()


def kron(a, b, p):
    return np.kron(amod(a, p), amod(b, p)) % p


# --- subspaces -------------------------------------------------------------


class Subspace:
    """A subspace of F_p^n held in reduced row echelon form (rows = basis)."""

    __slots__ = ("B", "n", "p", "pivots")

    def __init__(self, rows, n, p):
        rows = amod(rows, p)
        rows = zeros(0, n) if rows.size == 0 else rows.reshape(-1, n)
        r, piv = rref(rows, p)
        self.B = r[: len(piv)].copy()
        self.pivots = piv
        self.n = n
        self.p = p

    @classmethod
    def zero(cls, n, p):
        return cls(zeros(0, n), n, p)

    @classmethod
    def full(cls, n, p):
        return cls(identity(n), n, p)

    @property
    def dim(self):
        return len(self.pivots)

    def key(self):
        return (self.n, mat_key(self.B))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Subspace(dim=%d, n=%d, p=%d)" % (self.dim, self.n, self.p)

    def reduce(self, v):
        """Residue of v modulo this subspace (eliminate at pivot columns)."""
        v = amod(v, self.p).reshape(-1).copy()
        for i, c in enumerate(self.pivots):
            if v[c]:
                v = (v - v[c] * self.B[i]) % self.p
        return v

    def contains(self, v):
        return not self.reduce(v).any()

    def leq(self, other):
        if self.dim > other.dim:
            return False
        return all(other.contains(row) for row in self.B)

    def sum(self, other):
        return Subspace(np.concatenate([self.B, other.B], axis=0), self.n, self.p)

    def intersect(self, other):
        """Zassenhaus: rows of [[U,U],[W,0]] whose left half reduces to zero."""
        n, p = self.n, self.p
        top = np.concatenate([self.B, self.B], axis=1)
        bot = np.concatenate([other.B, zeros(other.dim, n)], axis=1)
        r, piv = rref(np.concatenate([top, bot], axis=0), p)
        rows = [r[i, n:] for i in range(len(piv)) if piv[i] >= n]
        if not rows:
            return Subspace.zero(n, p)
        return Subspace(np.array(rows, dtype=INT), n, p)

    def vectors(self):
        """All p^dim member vectors (deterministic order)."""
        d = self.dim
        for coeffs in itertools.product(range(self.p), repeat=d):
            yield (np.array(coeffs, dtype=INT) @ self.B) % self.p


def all_vectors(n, p):
    for coeffs in itertools.product(range(p), repeat=n):
        yield np.array(coeffs, dtype=INT)


def gaussian_binomial(n, k, q):
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def count_all_subspaces(n, q):
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def enumerate_subspaces(n, p, dim=None, cap=10 ** 6):
    """All subspaces of F_p^n (optionally of a fixed dimension).

    Enumerated directly by echelon pattern: choice of pivot columns plus the
    free entries to the right of each pivot.  Deterministic order.
    """
    dims = range(n + 1) if dim is None else [dim]
    total = sum(gaussian_binomial(n, d, p) for d in dims)
    if total > cap:
        raise CapExceeded("subspace enumeration: %d > cap %d" % (total, cap))
    out = []
    for d in dims:
        for piv in itertools.combinations(range(n), d):
            free = [
                (i, j)
                for i in range(d)
                for j in range(piv[i] + 1, n)
                if j not in piv
            ]
            for vals in itertools.product(range(p), repeat=len(free)):
                b = zeros(d, n)
                for i in range(d):
                    b[i, piv[i]] = 1
                for (i, j), v in zip(free, vals):
                    b[i, j] = v
                s = Subspace.__new__(Subspace)
                s.B, s.pivots, s.n, s.p = b, list(piv), n, p
                out.append(s)
    return out


# --- polynomials mod p (coefficient arrays, ascending degree) ---------------


def poly_trim(c):
    c = np.asarray(c, dtype=INT)
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return np.array([0], dtype=INT)
    return c[: nz[-1] + 1].copy()


def poly_deg(c):
    c = poly_trim(c)
    return -1 if (len(c) == 1 and c[0] == 0) else len(c) - 1


def poly_add(a, b, p):
    n = max(len(a), len(b))
    out = zeros(1, n)[0]
    out[: len(a)] += a
    out[: len(b)] += b
    return poly_trim(out % p)


def poly_scale(a, s, p):
    return poly_trim((np.asarray(a, dtype=INT) * (s % p)) % p)


def poly_mul(a, b, p):
    return poly_trim(np.convolve(a, b) % p)


def poly_divmod(a, b, p):
    a = poly_trim(amod(a, p))
    b = poly_trim(amod(b, p))
    db = poly_deg(b)
    assert db >= 0, "division by zero polynomial"
    q = zeros(1, max(len(a) - db, 1))[0]
    r = a.copy()
    binv = inv_mod(b[db], p)
    while poly_deg(r) >= db:
        d = poly_deg(r)
        c = (r[d] * binv) % p
        q[d - db] = c
        r = r.copy()
        r[d - db : d + 1] = (r[d - db : d + 1] - c * b) % p
    return poly_trim(q), poly_trim(r)


def poly_gcd(a, b, p):
    a, b = poly_trim(amod(a, p)), poly_trim(amod(b, p))
    while poly_deg(b) >= 0:
        a, b = b, poly_divmod(a, b, p)[1]
    if poly_deg(a) >= 0:
        a = poly_scale(a, inv_mod(a[poly_deg(a)], p), p)
    return a


def poly_xgcd(a, b, p):
    """(g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = poly_trim(amod(a, p)), poly_trim(amod(b, p))
    s0, s1 = np.array([1], dtype=INT), np.array([0], dtype=INT)
    t0, t1 = np.array([0], dtype=INT), np.array([1], dtype=INT)
    while poly_deg(r1) >= 0:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_add(s0, poly_scale(poly_mul(q, s1, p), -1, p), p)
        t0, t1 = t1, poly_add(t0, poly_scale(poly_mul(q, t1, p), -1, p), p)
    if poly_deg(r0) >= 0:
        c = inv_mod(r0[poly_deg(r0)], p)
        r0, s0, t0 = poly_scale(r0, c, p), poly_scale(s0, c, p), poly_scale(t0, c, p)
    return r0, s0, t0


def poly_eval_mat(c, a, p):
    """Evaluate the polynomial at a square matrix (Horner)."""
    n = a.shape[0]
    out = zeros(n, n)
    for coeff in reversed(poly_trim(c)):
        out = (out @ a + int(coeff) * identity(n)) % p
    return out


def charpoly(a, p):
    """det(xI - A) over F_p, ascending coefficients, length n+1 (monic)."""
    a = amod(a, p).copy()
    n = a.shape[0]
    if n == 0:
        return np.array([1], dtype=INT)
    # similarity reduction to upper Hessenberg form
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if a[i, j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            a[[j + 1, piv]] = a[[piv, j + 1]]
            a[:, [j + 1, piv]] = a[:, [piv, j + 1]]
        s = inv_mod(a[j + 1, j], p)
        for i in range(j + 2, n):
            if a[i, j]:
                t = (a[i, j] * s) % p
                a[i] = (a[i] - t * a[j + 1]) % p
                a[:, j + 1] = (a[:, j + 1] + t * a[:, i]) % p
    # p_k(x) = (x - a_kk) p_{k-1}(x) - sum_i a_{i,k} (prod subdiag) p_{i-1}(x)
    polys = [np.array([1], dtype=INT)]
    for k in range(1, n + 1):
        pk = poly_add(
            np.concatenate([[0], polys[k - 1]]),
            poly_scale(polys[k - 1], -int(a[k - 1, k - 1]), p),
            p,
        )
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = (prod * a[i, i - 1]) % p
            if a[i - 1, k - 1] and prod:
                pk = poly_add(
                    pk, poly_scale(polys[i - 1], -int(a[i - 1, k - 1] * prod), p), p
                )
        polys.append(pk)
    out = zeros(1, n + 1)[0]
    out[: len(polys[n])] = polys[n]
    return out


def minpoly(a, p):
    """Monic minimal polynomial, ascending coefficients."""
    a = amod(a, p)
    n = a.shape[0]
    if n == 0:
        return np.array([1], dtype=INT)
    cur = identity(n)
    stack = [cur.reshape(-1)]
    for k in range(1, n + 1):
        cur = (cur @ a) % p
        target = cur.reshape(-1)
        sol = solve_all(np.array(stack, dtype=INT).T, target, p)
        if sol is not None:
            coeffs = zeros(1, k + 1)[0]
            coeffs[:k] = (-sol[0]) % p
            coeffs[k] = 1
            return coeffs
        stack.append(target)
    raise AssertionError("minimal polynomial must have degree <= n")


def rand_mat(rng, m, n, p):
    return np.array([[rng.randrange(p) for _ in range(n)] for _ in range(m)], dtype=INT)
