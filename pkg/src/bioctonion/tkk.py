"""Graded dimensions of the TKK Lie algebra K(A,-) = S + A + V_{A,A} + A + S:
derivation algebras, the rank of the V-operator span and the type table.

Ranks over Fp use numpy: matrix products run in float64 (exact for the small
primes used here) and are reduced mod p; elimination is done on int64 arrays."""
import random

import flint
import numpy as np

from . import linalg as la
from .algebras import skew_indices
from .errors import InvariantViolation
from .fields import PrimeField, Rationals
from .structurable import D, V

# (max(m1, m2), min(m1, m2)) -> (type label, dimension)
TYPE_TABLE = {
    (1, 1): ("A1", 3), (2, 1): ("A2", 8), (4, 1): ("C3", 21), (8, 1): ("F4", 52),
    (4, 2): ("A5", 35), (8, 2): ("E6", 78), (8, 4): ("E7", 133), (8, 8): ("E8", 248),
    (4, 4): ("table-entry ambiguous", 66),
}
DER_DIM = {1: 0, 2: 0, 4: 3, 8: 14}

_PRIMES = (5, 7, 11, 13, 1009)


def expected_total(m1, m2):
    return 2 * (m1 + m2 - 2) + 3 * m1 * m2 + DER_DIM[m1] + DER_DIM[m2]


# ---------------------------------------------------------------- mod p engine

def _mod(F, c, p):
    if isinstance(F, PrimeField):
        return int(c) % p
    num, den = int(c.p), int(c.q)
    if den % p == 0:
        raise ZeroDivisionError
    return num * pow(den, -1, p) % p


def _modular_data(A, p):
    """Structure tensor c[i, j, k] and involution mod p, or None if p divides a denominator."""
    F, n = A.field, A.dim
    c = np.zeros((n, n, n), dtype=np.int64)
    try:
        for i in range(n):
            for j in range(n):
                for k, v in A.table[i][j]:
                    c[i, j, k] = _mod(F, v, p)
        sigma = np.array([[_mod(F, x, p) for x in r] for r in la.to_rows(A.sigma)], dtype=np.int64)
        unit = np.array([_mod(F, x, p) for x in A.unit], dtype=np.int64)
    except ZeroDivisionError:
        return None
    return c, sigma, unit


def _mm(a, b, p):
    return np.rint(np.matmul(a.astype(np.float64), b.astype(np.float64))).astype(np.int64) % p


def _td(a, b, axes, p):
    return np.rint(np.tensordot(a.astype(np.float64), b.astype(np.float64), axes=axes)).astype(np.int64) % p


def _rref_mod_p(M, p):
    """Reduced row echelon form of an int64 matrix mod p: (rows, pivot columns)."""
    M = M.copy() % p
    pivots = []
    r = 0
    nr, nc = M.shape
    for col in range(nc):
        if r == nr:
            break
        nz = np.nonzero(M[r:, col])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = M[r] * pow(int(M[r, col]), -1, p) % p
        f = M[:, col].copy()
        f[r] = 0
        rows = np.nonzero(f)[0]
        if rows.size:
            M[rows] = (M[rows] - np.outer(f[rows], M[r])) % p
        pivots.append(col)
        r += 1
    return M[:r], pivots


class _Echelon:
    """Incremental row space mod p kept in reduced form."""

    def __init__(self, ncols, p):
        self.p = p
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots = []

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, X):
        if self.rank:
            X = (X - _mm(X[:, self.pivots], self.rows, self.p)) % self.p
        return X

    def add(self, X):
        X = self.reduce(X % self.p)
        X = X[np.any(X != 0, axis=1)]
        if not X.shape[0]:
            return
        R, piv = _rref_mod_p(X, self.p)
        if self.rank:
            # clear the new pivot columns from the old rows
            self.rows = (self.rows - _mm(self.rows[:, piv], R, self.p)) % self.p
        self.rows = np.vstack([self.rows, R])
        self.pivots = self.pivots + piv
        order = np.argsort(self.pivots)
        self.rows = self.rows[order]
        self.pivots = [self.pivots[i] for i in order]


def nullspace_mod_p(M, p):
    """Basis (rows) of the right nullspace of M mod p."""
    R, piv = _rref_mod_p(M, p)
    nc = M.shape[1]
    free = [j for j in range(nc) if j not in set(piv)]
    out = np.zeros((len(free), nc), dtype=np.int64)
    for t, j in enumerate(free):
        out[t, j] = 1
        for r, pc in enumerate(piv):
            out[t, pc] = -R[r, j] % p
    return out


def _L_ops(c):
    # L_{e_i}[k, j] = c[i, j, k]
    return np.transpose(c, (0, 2, 1))


def _R_ops(c):
    # R_{e_j}[k, i] = c[i, j, k]
    return np.transpose(c, (1, 2, 0))


def _generated_words(A, c, p):
    """Generators G (basis indices) and n independent words in them, each word
    with D(word) as a linear map of the unknowns d(g), g in G (Leibniz rule)."""
    n = A.dim
    Ls, Rs = _L_ops(c), _R_ops(c)
    gens, words = [], []
    E = _Echelon(n, p)

    def extend(D, U):
        return np.concatenate([D, np.zeros((n, U - D.shape[1]), dtype=np.int64)], axis=1)

    queue = []
    for g in range(n):
        e = np.zeros(n, dtype=np.int64)
        e[g] = 1
        if E.rank and not np.any(E.reduce(e[None])):
            continue
        gens.append(g)
        U = n * len(gens)
        words = [(w, extend(D, U)) for w, D in words]
        Dg = np.zeros((n, U), dtype=np.int64)
        Dg[:, U - n:] = np.eye(n, dtype=np.int64)
        queue.append((e, Dg))
        while queue:
            w, Dw = queue.pop()
            if np.any(E.reduce(w[None])):
                E.add(w[None])
                words.append((w, Dw))
                for h in gens:
                    Dh = np.zeros((n, U), dtype=np.int64)
                    Dh[:, n * gens.index(h):n * gens.index(h) + n] = np.eye(n, dtype=np.int64)
                    Lw, Rw = np.tensordot(w, Ls, axes=([0], [0])) % p, np.tensordot(w, Rs, axes=([0], [0])) % p
                    # w h and h w with D(w h) = D(w) h + w D(h)
                    queue.append((_mm(Lw, np.eye(n, dtype=np.int64)[:, [h]], p)[:, 0],
                                  (_mm(Rs[h], Dw, p) + _mm(Lw, Dh, p)) % p))
                    queue.append((_mm(Rw, np.eye(n, dtype=np.int64)[:, [h]], p)[:, 0],
                                  (_mm(Ls[h], Dw, p) + _mm(Rw, Dh, p)) % p))
        if E.rank == n:
            break
    return gens, words


def _derivations_mod_p(A, p, data=None):
    """Basis of Der(A,-) mod p as an array (K, n, n)."""
    c, sigma, unit = data or _modular_data(A, p)
    n = A.dim
    Ls = _L_ops(c)
    gens, words = _generated_words(A, c, p)
    W = np.array([w for w, _ in words], dtype=np.int64).T             # columns are words
    Winv = np.array(flint.nmod_mat([[int(x) for x in r] for r in W], p).inv().entries(),
                    dtype=np.int64).reshape(n, n)
    U = n * len(gens)
    Dw = np.array([D for _, D in words], dtype=np.int64)                # (n words, n, U)
    # D(e_k) = sum_w Winv[w, k] D(w)
    Dk = np.tensordot(Winv.T, Dw, axes=([1], [0])) % p                  # (k, n, U)
    K = np.eye(U, dtype=np.int64)
    Rs = _R_ops(c)
    for i in range(-1, n):
        if not K.shape[0]:
            return np.zeros((0, n, n), dtype=np.int64)
        DK = _mm(Dk, K.T, p)                                               # (k, n, K)
        if i < 0:
            # sigma d(e_k) = d(sigma e_k)
            res = (_mm(sigma, DK, p) - _td(sigma.T, DK, ([1], [0]), p)) % p
        else:
            # d(e_i e_j) - d(e_i) e_j - e_i d(e_j) for all j
            res = (_td(c[i], DK, ([1], [0]), p) - _td(Rs, DK[i], ([2], [0]), p)
                   - _mm(Ls[i], DK, p)) % p
        res = res.reshape(-1, K.shape[0])
        if np.any(res):
            K = _mm(nullspace_mod_p(res, p), K, p)
    return _td(K, Dk, ([1], [2]), p).transpose(0, 2, 1)


def _v_rows_mod_p(A, p, data=None):
    """All vec(V_{e_a, e_b}) mod p, as an array (n*n, n*n)."""
    c, sigma, _ = data or _modular_data(A, p)
    n = A.dim
    Ls, Rs = _L_ops(c), _R_ops(c)
    bar = sigma.T                                   # bar[b] = coordinates of conj(e_b)
    Rbar = _td(bar, Rs, ([1], [0]), p)   # R_{conj e_b}
    out = np.zeros((n, n, n * n), dtype=np.int64)
    for a in range(n):
        prod = _mm(bar, c[a], p)                    # e_a conj(e_b), row b
        Lprod = _td(prod, Ls, ([1], [0]), p)
        t2 = _mm(Rs[a][None, :, :], Rbar, p)         # R_a R_{bar b}
        t3 = _mm(Rs, Rbar[a][None, :, :], p)         # R_b R_{bar a}
        out[a] = ((Lprod + t2 - t3) % p).reshape(n, n * n)
    return out.reshape(n * n, n * n)


def _prime_for(A, primes=_PRIMES):
    for p in primes:
        data = _modular_data(A, p)
        if data is not None:
            return p, data
    raise InvariantViolation("no usable prime for modular rank computations")


# ---------------------------------------------------------------- derivations

def _is_derivation(A, d, Ls):
    n = A.dim
    for i in range(n):
        de = la.col_of(d, i)
        if d * Ls[i] - Ls[i] * d != A.L(de):
            return False
    return d * A.sigma == A.sigma * d


def _small_random(F, idx, n, rng):
    v = [F.zero] * n
    for i in idx:
        v[i] = F(rng.randint(-3, 3))
    return v


def _independent(F, mats):
    """Indices of a maximal independent subset of the given matrices."""
    M = flint.fmpq_mat(len(mats), len(mats[0].entries()), [x for m in mats for x in m.entries()])
    R, rk = M.transpose().rref()
    return la.pivots(R, rk)


def derivations(A, rng=None, extra=4, rounds=4):
    """Basis of Der(A,-) = {d : d(xy) = d(x)y + x d(y), d sigma = sigma d}.

    Over Fp this is the exact nullspace. Over Q the nullity mod p bounds dim Der
    from above; inner derivations D_{x,y} on random skew pairs are verified to be
    derivations and collected until they reach that bound."""
    F, n = A.field, A.dim
    if isinstance(F, PrimeField):
        B = _derivations_mod_p(A, F.p)
        return [la.matrix(F, [[int(x) for x in r] for r in b]) for b in B]
    p, data = _prime_for(A)
    bound = _derivations_mod_p(A, p, data).shape[0]
    if bound == 0:
        return []
    rng = rng or random.Random(0)
    idx = skew_indices(A)
    samples = []
    for _ in range(rounds):
        for _ in range(bound + extra):
            samples.append(D(A, _small_random(F, idx, n, rng), _small_random(F, idx, n, rng)))
        keep = _independent(F, samples)
        if len(keep) >= bound:
            found = [samples[i] for i in keep]
            if len(found) > bound:
                raise InvariantViolation("more independent derivations than the modular bound")
            Ls = [A.L(A.basis(i)) for i in range(n)]
            for d in found:
                if not _is_derivation(A, d, Ls):
                    raise InvariantViolation("an inner derivation failed the derivation identity")
            return found
    raise InvariantViolation("inner derivations do not reach the modular bound")


def lie_closed(mats, trials=20, rng=None):
    """Whether random commutators of elements of span(mats) stay in the span."""
    if not mats:
        return True
    rng = rng or random.Random(0)
    k = len(mats)
    flat = [m.entries() for m in mats]
    for _ in range(trials):
        i, j = rng.randrange(k), rng.randrange(k)
        c = mats[i] * mats[j] - mats[j] * mats[i]
        rows = flat + [c.entries()]
        if _rank_entries(mats[0], rows) > k:
            return False
    return True


def _rank_entries(proto, rows):
    if isinstance(proto, flint.fmpq_mat):
        return flint.fmpq_mat(len(rows), len(rows[0]), [x for r in rows for x in r]).rank()
    return flint.nmod_mat(len(rows), len(rows[0]), [int(x) for r in rows for x in r], proto.modulus()).rank()


# ---------------------------------------------------------------- V_{A,A}

def vaa_rank_mod_p(A, p, data=None):
    E = _Echelon(A.dim ** 2, p)
    rows = _v_rows_mod_p(A, p, data)
    for s in range(0, rows.shape[0], 512):
        E.add(rows[s:s + 512])
    return E


def _vaa_rank_Q(A, target, rng, extra=8, rounds=3):
    """Exact rank over Q of V_{x,y} for random small-height x, y, grown until target."""
    F, n = A.field, A.dim
    rows = []
    rk = 0
    for _ in range(rounds):
        for _ in range(target + extra):
            x, y = _small_random(F, range(n), n, rng), _small_random(F, range(n), n, rng)
            rows.append(V(A, x, y).entries())
        rk = flint.fmpq_mat(len(rows), n * n, [v for r in rows for v in r]).rank()
        if rk >= target:
            break
    return rk


def vaa_span(A, rng=None):
    """dim V_{A,A}. Over Fp the rank of all basis pairs is computed exactly and
    must equal dim A + dim Der(A,-). Over Q the exact rank of a growing random
    sample must reach that value, which bounds V_{A,A} = T_A + Der(A,-) from above."""
    F, n = A.field, A.dim
    nder = len(derivations(A))
    target = n + nder
    if isinstance(F, PrimeField):
        rk = vaa_rank_mod_p(A, F.p).rank
    else:
        rk = _vaa_rank_Q(A, target, rng or random.Random(0))
    if rk != target:
        raise InvariantViolation(f"V_(A,A) has rank {rk}, expected {target}")
    return rk


def lie_closure_mod_p(A, p, trials=100, rng=None):
    """[V_{x,y}, V_{z,w}] in span V_{A,A} for random x, y, z, w mod p."""
    rng = rng or random.Random(0)
    data = _modular_data(A, p)
    E = vaa_rank_mod_p(A, p, data)
    c, sigma, _ = data
    n = A.dim
    Ls, Rs = _L_ops(c), _R_ops(c)

    def op(ops, v):
        return np.tensordot(v, ops, axes=([0], [0])) % p

    def Vop(x, y):
        xb, yb = _mm(sigma, x[:, None], p)[:, 0], _mm(sigma, y[:, None], p)[:, 0]
        xyb = _mm(op(Ls, x), yb[:, None], p)[:, 0]
        return (op(Ls, xyb) + _mm(op(Rs, x), op(Rs, yb), p) - _mm(op(Rs, y), op(Rs, xb), p)) % p

    for _ in range(trials):
        x, y, z, w = (np.array([rng.randrange(p) for _ in range(n)], dtype=np.int64) for _ in range(4))
        V1, V2 = Vop(x, y), Vop(z, w)
        br = (_mm(V1, V2, p) - _mm(V2, V1, p)) % p
        if np.any(E.reduce(br.reshape(1, -1))):
            return False
    return True


# ---------------------------------------------------------------- profile

class GradedProfile:
    def __init__(self, dims, type_label, der_dim):
        self.dims = tuple(dims)
        self.total = sum(dims)
        self.type_label = type_label
        self.der_dim = der_dim

    def to_json(self):
        return {"dims": list(self.dims), "total": self.total, "type": self.type_label}

    def __repr__(self):
        return f"GradedProfile({self.dims}, {self.total}, {self.type_label})"


def graded_profile(A, rng=None):
    m1, m2 = A.info["dims"]
    nS = len(skew_indices(A))
    nV = vaa_span(A, rng)
    dims = (nS, A.dim, nV, A.dim, nS)
    total = sum(dims)
    key = (max(m1, m2), min(m1, m2))
    label, table_total = TYPE_TABLE.get(key, ("Unknown", None))
    if total != expected_total(m1, m2):
        raise InvariantViolation("graded dimensions disagree with the dimension formula")
    if table_total is not None and table_total != total:
        label = "Unknown"
    return GradedProfile(dims, label, nV - A.dim)
