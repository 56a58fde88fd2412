"""Exact dense linear algebra over Q and Fp on top of flint matrices, plus a
small generic symmetric elimination used for forms over any supported field."""
import flint

from .errors import DegenerateGram, UnsupportedField
from .fields import PrimeField, Rationals


def _check(F):
    if not isinstance(F, (Rationals, PrimeField)):
        raise UnsupportedField(f"matrix algebra needs Q or Fp, got {F.name()}")


def matrix(F, rows):
    _check(F)
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    return from_flat(F, nr, nc, [F(x) for r in rows for x in r])


def from_flat(F, nr, nc, entries):
    if isinstance(F, PrimeField):
        return flint.nmod_mat(nr, nc, [int(x) for x in entries], F.p)
    return flint.fmpq_mat(nr, nc, list(entries))


def zeros(F, nr, nc):
    _check(F)
    if isinstance(F, PrimeField):
        return flint.nmod_mat(nr, nc, F.p)
    return flint.fmpq_mat(nr, nc)


def identity(F, n):
    M = zeros(F, n, n)
    for i in range(n):
        M[i, i] = 1
    return M


def scalar_matrix(F, n, c):
    M = zeros(F, n, n)
    for i in range(n):
        M[i, i] = c
    return M


def column(F, v):
    return from_flat(F, len(v), 1, [F(x) for x in v])


def row(F, v):
    return from_flat(F, 1, len(v), [F(x) for x in v])


def entries(M):
    return M.entries()


def to_rows(M):
    return M.tolist()


def col_of(M, j):
    return [M[i, j] for i in range(M.nrows())]


def is_zero(M):
    return all(x == 0 for x in M.entries())


def is_scalar(M, c):
    n = M.nrows()
    return all(M[i, j] == (c if i == j else 0) for i in range(n) for j in range(M.ncols()))


def matvec(M, v):
    F_is_nmod = isinstance(M, flint.nmod_mat)
    if F_is_nmod:
        c = flint.nmod_mat(len(v), 1, [int(x) for x in v], M.modulus())
    else:
        c = flint.fmpq_mat(len(v), 1, list(v))
    return (M * c).entries()


def vstack(F, mats):
    mats = [m for m in mats if m.nrows()]
    nc = mats[0].ncols()
    flat = []
    for m in mats:
        flat.extend(m.entries())
    return from_flat(F, sum(m.nrows() for m in mats), nc, flat)


def hstack(F, mats):
    nr = mats[0].nrows()
    rows = [[] for _ in range(nr)]
    for m in mats:
        for i, r in enumerate(m.tolist()):
            rows[i].extend(r)
    return from_flat(F, nr, sum(m.ncols() for m in mats), [x for r in rows for x in r])


def rref(M):
    R, rk = M.rref()
    return R, rk


def rank(M):
    return M.rank()


def pivots(R, rk):
    out, c = [], 0
    for i in range(rk):
        while R[i, c] == 0:
            c += 1
        out.append(c)
        c += 1
    return out


def nullspace(F, M):
    """Basis (list of vectors) of {x : M x = 0}."""
    nc = M.ncols()
    if M.nrows() == 0:
        return [[F.one if i == j else F.zero for i in range(nc)] for j in range(nc)]
    R, rk = M.rref()
    piv = pivots(R, rk)
    free = [j for j in range(nc) if j not in set(piv)]
    basis = []
    for f in free:
        v = [F.zero] * nc
        v[f] = F.one
        for i, pc in enumerate(piv):
            v[pc] = -R[i, f]
        basis.append(v)
    return basis


def row_basis(F, M):
    """Nonzero rows of the rref of M."""
    R, rk = M.rref()
    return from_flat(F, rk, M.ncols(), R.entries()[:rk * M.ncols()])


def solve(M, b):
    return M.solve(b)


def inverse(M):
    return M.inv()


def in_row_space(F, basis_rref, v, rk):
    """Whether the row vector v lies in the span of an rref matrix with rk rows."""
    R = basis_rref
    piv = pivots(R, rk)
    v = list(v)
    for i, pc in enumerate(piv):
        c = v[pc]
        if c != 0:
            for j in range(R.ncols()):
                v[j] -= c * R[i, j]
    return all(x == 0 for x in v)


def sym_diagonalize(F, G):
    """Diagonalize a symmetric Gram matrix (list of lists over F) by symmetric
    Gaussian elimination. Returns (diag, B) with B G B^T = diag(diag); the rows
    of B are the new basis vectors. Raises DegenerateGram if singular."""
    n = len(G)
    G = [[F(x) for x in r] for r in G]
    B = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    diag = []
    for k in range(n):
        if G[k][k] == 0:
            j = next((j for j in range(k + 1, n) if G[j][j] != 0), None)
            if j is not None:
                G[k], G[j] = G[j], G[k]
                for r in G:
                    r[k], r[j] = r[j], r[k]
                B[k], B[j] = B[j], B[k]
            else:
                j = next((j for j in range(k + 1, n) if G[k][j] != 0), None)
                if j is None:
                    raise DegenerateGram("singular Gram matrix")
                # replace e_k by e_k + e_j: new value 2 G_kj
                for c in range(n):
                    G[k][c] = G[k][c] + G[j][c]
                for r in range(n):
                    G[r][k] = G[r][k] + G[r][j]
                B[k] = [a + b for a, b in zip(B[k], B[j])]
        p = G[k][k]
        diag.append(p)
        for i in range(k + 1, n):
            if G[i][k] != 0:
                f = G[i][k] / p
                for c in range(n):
                    G[i][c] = G[i][c] - f * G[k][c]
                for r in range(n):
                    G[r][i] = G[r][i] - f * G[r][k]
                B[i] = [a - f * b for a, b in zip(B[i], B[k])]
    return diag, B


def coords_in(F, B, v):
    """Coordinates c with B c = v for B of full column rank, or None when v is
    outside the column span."""
    R, rk = B.transpose().rref()
    rows = pivots(R, rk)
    sub = from_flat(F, rk, B.ncols(), [B[r, j] for r in rows for j in range(B.ncols())])
    c = sub.solve(from_flat(F, rk, 1, [v[r] for r in rows])).entries()
    return c if matvec(B, c) == list(v) else None
