"""Composition algebras, their tensor products with involution, corestrictions,
structural subspaces and the centroid-based decomposition."""
import math

import flint

from . import linalg as la
from .errors import (InputError, InvalidDims, NotANonsquare, UnexpectedCentroidDim,
                     UnsupportedField, ZeroParameter, InvariantViolation)
from .fields import (PrimeField, QuadraticExtension, Rationals, SplitEtale, etale)
from .qforms import QuadraticForm


class Algebra:
    """Finite-dimensional algebra over Q or Fp given by a structure tensor
    (sparse table[i][j] = [(k, c_ijk)]), unit vector and involution matrix."""

    def __init__(self, F, table, unit, inv, info=None):
        if not isinstance(F, (Rationals, PrimeField)):
            raise UnsupportedField("algebras are built over Q or Fp only")
        self.field = F
        self.dim = n = len(table)
        self.table = table
        self.unit = [F(u) for u in unit]
        self.sigma = la.matrix(F, inv)
        self.info = dict(info or {})
        Lrows = [[F.zero] * (n * n) for _ in range(n)]
        Rrows = [[F.zero] * (n * n) for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, c in table[i][j]:
                    Lrows[i][k * n + j] = c
                    Rrows[j][k * n + i] = c
        self.Lmat = la.matrix(F, Lrows)
        self.Rmat = la.matrix(F, Rrows)

    def basis(self, i):
        F = self.field
        return [F.one if j == i else F.zero for j in range(self.dim)]

    def vec(self, xs):
        return [self.field(x) for x in xs]

    def _reshape(self, rowmat):
        return la.from_flat(self.field, self.dim, self.dim, rowmat.entries())

    def _ops(self, which):
        cache = self.__dict__.setdefault("_opcache", {})
        if which not in cache:
            M = self.Lmat if which == "L" else self.Rmat
            n = self.dim
            flat = M.entries()
            cache[which] = [la.from_flat(self.field, n, n, flat[i * n * n:(i + 1) * n * n]) for i in range(n)]
        return cache[which]

    def _int_table(self, which):
        """(integer matrix, denominator) for Lmat or Rmat over Q."""
        cache = self.__dict__.setdefault("_intcache", {})
        if which not in cache:
            M = self.Lmat if which == "L" else self.Rmat
            flat = M.entries()
            den = math.lcm(*[int(c.q) for c in flat])
            cache[which] = (flint.fmpz_mat(M.nrows(), M.ncols(), [int(c * den) for c in flat]), den)
        return cache[which]

    def _combine(self, which, x):
        if isinstance(self.field, Rationals):
            # clear denominators and do a single integer vector-matrix product
            Z, den = self._int_table(which)
            n = self.dim
            dx = math.lcm(*[int(c.q) for c in x])
            P = flint.fmpz_mat(1, n, [int(c * dx) for c in x]) * Z
            return flint.fmpq_mat(flint.fmpz_mat(n, n, P.entries())) / (dx * den)
        ops = self._ops(which)
        out = None
        for c, M in zip(x, ops):
            if c != 0:
                t = M if c == 1 else M * c
                out = t if out is None else out + t
        return out if out is not None else la.zeros(self.field, self.dim, self.dim)

    def L(self, x):
        return self._combine("L", x)

    def R(self, x):
        return self._combine("R", x)

    def mul(self, x, y):
        nx = [i for i, c in enumerate(x) if c != 0]
        ny = [j for j, c in enumerate(y) if c != 0]
        if len(nx) * len(ny) <= 4 * self.dim:
            out = [self.field.zero] * self.dim
            for i in nx:
                for j in ny:
                    c = x[i] * y[j]
                    for k, v in self.table[i][j]:
                        out[k] += c * v
            return out
        return la.matvec(self.L(x), y)

    def conj(self, x):
        return la.matvec(self.sigma, x)

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def sub(self, x, y):
        return [a - b for a, b in zip(x, y)]

    def smul(self, c, x):
        c = self.field(c)
        return [c * a for a in x]

    def zero(self):
        return [self.field.zero] * self.dim

    def random(self, rng, **kw):
        return [self.field.random(rng, **kw) for _ in range(self.dim)]

    def structure_tensor(self):
        n = self.dim
        c = [[[self.field.zero] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, v in self.table[i][j]:
                    c[i][j][k] = v
        return c

    def to_json(self):
        F = self.field
        return {
            "field": F.to_json(),
            "dim": self.dim,
            "structure": [[{str(k): F.fmt(c) for k, c in self.table[i][j]} for j in range(self.dim)]
                          for i in range(self.dim)],
            "unit": [F.fmt(u) for u in self.unit],
            "involution": [[F.fmt(x) for x in r] for r in la.to_rows(self.sigma)],
            "provenance": {k: v for k, v in self.info.items() if k in ("kind", "dims", "d")},
        }


def check_algebra(A):
    """Unit and involution axioms, checked as operator identities
    L_1 = R_1 = id, sigma^2 = id and sigma L_x = R_{sigma x} sigma on a basis."""
    n = A.dim
    if not la.is_scalar(A.L(A.unit), 1) or not la.is_scalar(A.R(A.unit), 1):
        raise InvariantViolation("unit is not two-sided")
    S = A.sigma
    if not la.is_scalar(S * S, 1):
        raise InvariantViolation("involution does not square to the identity")
    for i in range(n):
        e = A.basis(i)
        if S * A.L(e) != A.R(A.conj(e)) * S:
            raise InvariantViolation("involution is not anti-multiplicative")
    return True


# ---------------------------------------------------------------- Cayley-Dickson

def _cd_mul(F, mus, x, y):
    """Product in the iterated doubling with parameters mus (vectors of length 2^m)."""
    if not mus:
        return [x[0] * y[0]]
    mu = mus[-1]
    h = len(x) // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    inner = mus[:-1]
    cc = _cd_conj(c)
    dc = _cd_conj(d)
    first = [u + mu * v for u, v in zip(_cd_mul(F, inner, a, c), _cd_mul(F, inner, dc, b))]
    second = [u + v for u, v in zip(_cd_mul(F, inner, d, a), _cd_mul(F, inner, b, cc))]
    return first + second


def _cd_conj(x):
    return [x[0]] + [-v for v in x[1:]]


def cd_table(F, mus):
    """Sparse structure table of the doubling with parameters mus over a field
    or etale algebra F (scalars of F)."""
    n = 2 ** len(mus)
    basis = [[F.one if j == i else F.zero for j in range(n)] for i in range(n)]
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            p = _cd_mul(F, mus, basis[i], basis[j])
            row.append([(k, c) for k, c in enumerate(p) if not F.is_zero(c)])
        table.append(row)
    return table


def cd_norm_entries(F, mus):
    out = []
    for m in range(2 ** len(mus)):
        e = F.one
        for i, mu in enumerate(mus):
            if m >> i & 1:
                e = e * (-mu)
        out.append(e)
    return out


def cayley_dickson(F, mus):
    """Composition algebra of dim 2^m with its standard involution and norm form."""
    mus = [F(m) for m in mus]
    if len(mus) > 3:
        raise InputError("at most three doubling parameters")
    if any(F.is_zero(m) for m in mus):
        raise ZeroParameter("doubling parameters must be nonzero")
    n = 2 ** len(mus)
    table = cd_table(F, mus)
    inv = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        inv[i][i] = F.one if i == 0 else -F.one
    A = Algebra(F, table, [F.one] + [F.zero] * (n - 1), inv,
                {"kind": "composition", "mus": mus, "dims": [n]})
    return A, QuadraticForm(F, cd_norm_entries(F, mus))


def norm_of(C, x):
    """x * conj(x) read off the unit coordinate (composition algebras)."""
    return C.mul(x, C.conj(x))[0]


# ---------------------------------------------------------------- descriptors

class Decomposable:
    kind = "decomposable"

    def __init__(self, field, mu1, mu2):
        self.field = field
        self.mu1 = [field(m) for m in mu1]
        self.mu2 = [field(m) for m in mu2]

    @property
    def dims(self):
        return (2 ** len(self.mu1), 2 ** len(self.mu2))

    def to_json(self):
        F = self.field
        return {"kind": "decomposable", "field": F.to_json(),
                "mu1": [F.fmt(m) for m in self.mu1], "mu2": [F.fmt(m) for m in self.mu2]}

    def __repr__(self):
        return f"Decomposable({self.mu1}, {self.mu2})"


class Corestriction:
    """cor_{E/k}(C) with E = k(sqrt d) and C = CD(E; mu); E-scalars given as
    pairs (a, b) meaning a + b sqrt(d)."""
    kind = "corestriction"

    def __init__(self, field, d, mu):
        self.field = field
        self.d = field(d)
        if field.is_zero(self.d):
            raise NotANonsquare("d must be nonzero")
        self.E = etale(field, self.d)
        self.mu = [self._escalar(m) for m in mu]
        if any(field.is_zero(self.E.norm(m)) for m in self.mu):
            raise ZeroParameter("doubling parameters must be units of E")

    def _escalar(self, m):
        k, E = self.field, self.E
        if isinstance(m, str):
            m = _parse_pair_str(k, m)
        if not isinstance(m, (list, tuple)):
            m = (m, 0)
        a, b = k(m[0]), k(m[1])
        if isinstance(E, SplitEtale):
            r = k.sqrt(self.d)
            return E.elt(a + b * r, a - b * r)
        return E.elt(a, b)

    def pair(self, e):
        """Inverse of _escalar: coordinates (a, b) of e = a + b sqrt(d)."""
        k = self.field
        if isinstance(self.E, SplitEtale):
            r = k.sqrt(self.d)
            return (e.x + e.y) / 2, (e.x - e.y) / (2 * r)
        return e.a, e.b

    @property
    def dims(self):
        m = 2 ** len(self.mu)
        return (m, m)

    def to_json(self):
        k = self.field
        return {"kind": "corestriction", "field": k.to_json(), "d": k.fmt(self.d),
                "mu": [[k.fmt(x) for x in self.pair(m)] for m in self.mu]}

    def __repr__(self):
        return f"Corestriction(d={self.d}, {[self.pair(m) for m in self.mu]})"


def _parse_pair_str(k, s):
    s = s.strip()
    if s.endswith("sqrt"):
        E = QuadraticExtension(Rationals(), 2) if isinstance(k, Rationals) else None
        body = s[:-4].rstrip("*")
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            a, b = "0", body
        else:
            a, b = body[:cut], body[cut:]
        b = {"": "1", "+": "1", "-": "-1"}.get(b, b)
        return k.parse(a), k.parse(b)
    return k.parse(s), k.zero


def descriptor_from_json(obj, field=None):
    from .fields import field_from_json
    F = field if field is not None else field_from_json(obj.get("field", {"kind": "Q"}))
    kind = obj.get("kind")
    if kind == "decomposable":
        return Decomposable(F, [F.parse(str(m)) for m in obj["mu1"]], [F.parse(str(m)) for m in obj["mu2"]])
    if kind == "corestriction":
        mu = []
        for m in obj["mu"]:
            if isinstance(m, list):
                mu.append((F.parse(str(m[0])), F.parse(str(m[1]))))
            else:
                mu.append(str(m))
        return Corestriction(F, F.parse(str(obj["d"])), mu)
    raise InputError(f"unknown descriptor kind {kind!r}")


# ---------------------------------------------------------------- products

def tensor_product(C1, C2, info=None):
    F = C1.field
    m1, m2 = C1.dim, C2.dim
    n = m1 * m2
    table = [[None] * n for _ in range(n)]
    for i in range(m1):
        for j in range(m2):
            for k in range(m1):
                for l in range(m2):
                    out = {}
                    for p, a in C1.table[i][k]:
                        for q, b in C2.table[j][l]:
                            out[p * m2 + q] = out.get(p * m2 + q, F.zero) + a * b
                    table[i * m2 + j][k * m2 + l] = [(r, c) for r, c in sorted(out.items()) if c != 0]
    s1, s2 = la.to_rows(C1.sigma), la.to_rows(C2.sigma)
    inv = [[s1[i][k] * s2[j][l] for k in range(m1) for l in range(m2)]
           for i in range(m1) for j in range(m2)]
    unit = [a * b for a in C1.unit for b in C2.unit]
    return Algebra(F, table, unit, inv, info)


def _cor_basis(m):
    """Index list of the corestriction k-basis: ('s', i, j) for i <= j, then
    ('a', i, j) for i < j."""
    sym = [("s", i, j) for i in range(m) for j in range(i, m)]
    anti = [("a", i, j) for i in range(m) for j in range(i + 1, m)]
    return sym + anti


def _cor_field(desc):
    """Corestriction over a field E: basis f_ii, f_ij + f_ji, sqrt(d)(f_ij - f_ji)."""
    k, E = desc.field, desc.E
    m = 2 ** len(desc.mu)
    ctab = cd_table(E, desc.mu)
    basis = _cor_basis(m)
    g = E.gen

    def lam(b):
        t, i, j = b
        if t == "s":
            return {(i, j): E.one} if i == j else {(i, j): E.one, (j, i): E.one}
        return {(i, j): g, (j, i): -g}

    lams = [lam(b) for b in basis]
    index = {b: r for r, b in enumerate(basis)}

    def to_k(mu):
        out = {}
        for (p, q), c in mu.items():
            if E.is_zero(c):
                continue
            if p == q:
                if c.b != 0:
                    raise InvariantViolation("diagonal coefficient outside k")
                out[index[("s", p, p)]] = out.get(index[("s", p, p)], k.zero) + c.a
            elif p < q:
                if c.a != 0:
                    out[index[("s", p, q)]] = out.get(index[("s", p, q)], k.zero) + c.a
                if c.b != 0:
                    out[index[("a", p, q)]] = out.get(index[("a", p, q)], k.zero) + c.b
        return sorted((r, c) for r, c in out.items() if c != 0)

    return _cor_table(k, E, m, ctab, lams, to_k, basis)


def _cor_split(desc):
    """Corestriction over k x k: basis g_ij = (0,1) f_ij + (1,0) f_ji, ordered as i*m + j."""
    k, E = desc.field, desc.E
    m = 2 ** len(desc.mu)
    ctab = cd_table(E, desc.mu)
    basis = [("g", i, j) for i in range(m) for j in range(m)]
    lams = []
    for _, i, j in basis:
        if i == j:
            lams.append({(i, i): E.one})
        else:
            lams.append({(i, j): E.elt(0, 1), (j, i): E.elt(1, 0)})

    def to_k(mu):
        out = {}
        for (p, q), c in mu.items():
            # coefficient of f_pq is (lambda_qp, lambda_pq)
            if c.y != 0:
                out[p * m + q] = out.get(p * m + q, k.zero) + c.y
            if p != q and c.x != 0:
                out[q * m + p] = out.get(q * m + p, k.zero) + c.x
        return out

    def to_k_checked(mu):
        out = {}
        for (p, q), c in mu.items():
            if p == q:
                if c.x != c.y:
                    raise InvariantViolation("diagonal coefficient outside k")
                if c.y != 0:
                    out[p * m + p] = c.y
            else:
                if c.y != 0:
                    out[p * m + q] = out.get(p * m + q, k.zero) + c.y
        return sorted((r, v) for r, v in out.items() if v != 0)

    return _cor_table(k, E, m, ctab, lams, to_k_checked, basis)


def _cor_table(k, E, m, ctab, lams, to_k, basis):
    n = len(basis)
    table = []
    for r in range(n):
        row = []
        for s in range(n):
            mu = {}
            for (i, j), a in lams[r].items():
                for (kk, l), b in lams[s].items():
                    ab = a * b
                    for p, c1 in ctab[i][kk]:
                        for q, c2 in ctab[j][l]:
                            mu[(p, q)] = mu.get((p, q), E.zero) + ab * E.conj(c1) * c2
            row.append(to_k(mu))
        table.append(row)
    eps = [1] + [-1] * (m - 1)
    inv = [[k.zero] * n for _ in range(n)]
    for r, (_, i, j) in enumerate(basis):
        inv[r][r] = k(eps[i] * eps[j])
    unit = [k.one if r == 0 else k.zero for r in range(n)]
    return table, unit, inv


def build_product(desc, check=True):
    F = desc.field
    if not isinstance(F, (Rationals, PrimeField)):
        raise UnsupportedField("algebra construction needs Q or Fp")
    m1, m2 = desc.dims
    if (m1, m2) == (2, 2):
        raise InvalidDims("(2,2)-products are excluded")
    if desc.kind == "decomposable":
        C1, n1 = cayley_dickson(F, desc.mu1)
        C2, n2 = cayley_dickson(F, desc.mu2)
        A = tensor_product(C1, C2, {"kind": "decomposable", "dims": [m1, m2], "desc": desc,
                                   "factors": (C1, C2), "norms": (n1, n2)})
    else:
        if m1 not in (4, 8):
            raise InvalidDims("corestriction is built for quaternion or octonion C")
        if isinstance(desc.E, SplitEtale):
            table, unit, inv = _cor_split(desc)
        else:
            table, unit, inv = _cor_field(desc)
        A = Algebra(F, table, unit, inv, {"kind": "corestriction", "dims": [m1, m2], "desc": desc,
                                          "d": F.fmt(desc.d), "split": isinstance(desc.E, SplitEtale)})
    if check:
        check_algebra(A)
    return A


def cor_skew_to_E(A, s):
    """For a corestriction algebra: the element of C_0 (E-coordinates) whose image
    iota(s) (x) 1 + 1 (x) s is the skew vector s."""
    desc = A.info["desc"]
    E = desc.E
    m = desc.dims[0]
    idx = skew_indices(A)
    out = [E.zero] * m
    if isinstance(E, SplitEtale):
        # coefficient of f_0i is (lambda_i0, lambda_0i)
        for i in range(1, m):
            out[i] = E.elt(s[i * m], s[i])
        return out
    basis = _cor_basis(m)
    pos = {b: r for r, b in enumerate(basis)}
    for i in range(1, m):
        x = s[pos[("s", 0, i)]]
        y = s[pos[("a", 0, i)]]
        out[i] = E.elt(x, y)
    return out


def cor_E_to_skew(A, c0):
    desc = A.info["desc"]
    E = desc.E
    k = A.field
    m = desc.dims[0]
    v = [k.zero] * A.dim
    if isinstance(E, SplitEtale):
        for i in range(1, m):
            v[i * m] = c0[i].x
            v[i] = c0[i].y
        return v
    basis = _cor_basis(m)
    pos = {b: r for r, b in enumerate(basis)}
    for i in range(1, m):
        v[pos[("s", 0, i)]] = c0[i].a
        v[pos[("a", 0, i)]] = c0[i].b
    return v


# ---------------------------------------------------------------- subspaces

def _eigenspace(A, sign):
    n = A.dim
    M = A.sigma - la.scalar_matrix(A.field, n, sign)
    return la.nullspace(A.field, M)


def skew_indices(A):
    """Skew basis vectors are standard basis vectors for every construction here."""
    n = A.dim
    return [i for i in range(n) if A.sigma[i, i] == -1 and
            all(A.sigma[i, j] == 0 for j in range(n) if j != i)]


def _progressive_kernel(F, cands, residual_fns):
    """Common kernel of linear maps given on a candidate basis: returns a basis of
    {v in span(cands) : f(v) = 0 for all f}, each f returning a flat list."""
    N = cands
    for f in residual_fns:
        if not N:
            break
        cols = [f(v) for v in N]
        M = la.from_flat(F, len(cols[0]), len(cols), [cols[c][r] for r in range(len(cols[0]))
                                                      for c in range(len(cols))])
        ker = la.nullspace(F, M)
        N = [[sum((c * v[i] for c, v in zip(kv, N)), F.zero) for i in range(len(N[0]))] for kv in ker]
    return N


def nucleus(A):
    F, n = A.field, A.dim
    cands = [A.basis(i) for i in range(n)]
    Ls = [A.L(A.basis(j)) for j in range(n)]
    Rs = [A.R(A.basis(j)) for j in range(n)]

    def left(j):
        # [a, e_j, y] = 0 for all y: L_{a e_j} = L_a L_{e_j}
        return lambda a: (A.L(A.mul(a, A.basis(j))) - A.L(a) * Ls[j]).entries()

    def middle(j):
        # [e_j, a, y] = 0: L_{e_j a} = L_{e_j} L_a
        return lambda a: (A.L(A.mul(A.basis(j), a)) - Ls[j] * A.L(a)).entries()

    def right(j):
        # [x, e_j, a] = 0 for all x: R_a R_{e_j} = R_{e_j a}
        return lambda a: (A.R(a) * Rs[j] - A.R(A.mul(A.basis(j), a))).entries()

    fns = [f(j) for j in range(n) for f in (left, middle, right)]
    return _progressive_kernel(F, cands, fns)


def center(A):
    F, n = A.field, A.dim
    comm = la.nullspace(F, (A.Lmat - A.Rmat).transpose())
    if not comm:
        return []
    Ls = [A.L(A.basis(j)) for j in range(n)]
    fns = []
    for j in range(n):
        fns.append(lambda a, j=j: (A.L(A.mul(a, A.basis(j))) - A.L(a) * Ls[j]).entries())
        fns.append(lambda a, j=j: (A.L(A.mul(A.basis(j), a)) - Ls[j] * A.L(a)).entries())
    return _progressive_kernel(F, comm, fns)


def subspaces(A, which):
    if which == "skew":
        return _eigenspace(A, -1)
    if which == "hermitian":
        return _eigenspace(A, 1)
    if which == "nucleus":
        return nucleus(A)
    if which == "center":
        return center(A)
    raise InputError(f"unknown subspace {which!r}")


def associator(A, x, y, z):
    return A.sub(A.mul(A.mul(x, y), z), A.mul(x, A.mul(y, z)))


# ---------------------------------------------------------------- Malcev centroid

class MalcevSkew:
    """The skew space with the commutator bracket, in coordinates of the skew
    basis (a list of standard basis indices)."""

    def __init__(self, A):
        self.A = A
        self.idx = skew_indices(A)
        if len(self.idx) != len(_eigenspace(A, -1)):
            raise InvariantViolation("skew space is not spanned by basis vectors")
        self.dim = len(self.idx)
        F = A.field
        n = self.dim
        self.c = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                x, y = A.basis(self.idx[a]), A.basis(self.idx[b])
                br = A.sub(A.mul(x, y), A.mul(y, x))
                self.c[a][b] = [br[i] for i in self.idx]

    def embed(self, s):
        v = self.A.zero()
        for i, x in zip(self.idx, s):
            v[i] = x
        return v

    def restrict(self, v):
        return [v[i] for i in self.idx]

    def bracket(self, s, t):
        F = self.A.field
        n = self.dim
        out = [F.zero] * n
        for a in range(n):
            if s[a] == 0:
                continue
            for b in range(n):
                if t[b] == 0:
                    continue
                c = s[a] * t[b]
                for w in range(n):
                    out[w] += c * self.c[a][b][w]
        return out


def centroid_basis(M):
    """Basis of {phi : phi[x,y] = [phi x, y]} as n x n matrices (lists)."""
    F = M.A.field
    n = M.dim
    rows = []
    for x in range(n):
        for y in range(n):
            for w in range(n):
                r = [F.zero] * (n * n)
                for z in range(n):
                    r[w * n + z] += M.c[x][y][z]
                for u in range(n):
                    r[u * n + x] -= M.c[u][y][w]
                rows.append(r)
    ker = la.nullspace(F, la.matrix(F, rows))
    return [[v[w * n:(w + 1) * n] for w in range(n)] for v in ker]


def _key(F, x):
    return (int(x.p), int(x.q)) if isinstance(F, Rationals) else int(x)


class SplitCentroid:
    kind = "split"

    def __init__(self, idempotents):
        self.idempotents = idempotents

    def to_json(self, F):
        return {"kind": "split"}


class FieldCentroid:
    kind = "field"

    def __init__(self, d, phi):
        self.d = d
        self.phi = phi

    def to_json(self, F):
        return {"kind": "field", "d": F.fmt(self.d)}


def malcev_centroid(A):
    M = MalcevSkew(A)
    F = A.field
    n = M.dim
    basis = centroid_basis(M)
    if len(basis) != 2:
        raise UnexpectedCentroidDim(f"centroid has dimension {len(basis)}")
    I = la.identity(F, n)
    mats = [la.matrix(F, b) for b in basis]
    phi = next(m for m in mats if not la.is_scalar(m, m[0, 0]))
    tr = sum((phi[i, i] for i in range(n)), F.zero)
    phi = phi - la.scalar_matrix(F, n, tr / n)
    sq = phi * phi
    c = sq[0, 0]
    if not la.is_scalar(sq, c) or c == 0:
        raise InvariantViolation("centroid generator does not square to a nonzero scalar")
    if F.is_square(c):
        r = F.sqrt(c)
        e1 = (I + phi * (1 / r)) * (1 / F(2))
        e2 = I - e1
        es = sorted([e1, e2], key=lambda e: [_key(F, x) for x in e.entries()])
        return SplitCentroid(es)
    d = F(F.square_class(c))
    r = F.sqrt(c / d)
    return FieldCentroid(d, phi * (1 / r))


# ---------------------------------------------------------------- decomposition

class Factors:
    kind = "factors"

    def __init__(self, C1, C2, n1, n2, S1, S2):
        self.factors = (C1, C2)
        self.norms = (n1, n2)
        self.S = (S1, S2)


class CorestrictionData:
    kind = "corestriction"

    def __init__(self, d, E, C_table, norm_entries, kappa):
        self.d = d
        self.E = E
        self.table = C_table
        self.norm_entries = norm_entries
        self.kappa = kappa


def _image_basis(F, e):
    rows = la.to_rows(e.transpose())
    R = la.row_basis(F, la.matrix(F, rows))
    return la.to_rows(R)


def _subalgebra_from(A, vectors):
    """Structure of span(1, vectors) (assumed a subalgebra with 1 first) with
    involution x -> -x on the vectors."""
    F = A.field
    basis = [A.unit] + vectors
    m = len(basis)
    B = la.matrix(F, basis).transpose()
    table = []
    for i in range(m):
        row = []
        for j in range(m):
            p = A.mul(basis[i], basis[j])
            coords = la.coords_in(F, B, p)
            if coords is None:
                raise InvariantViolation("factor is not closed under multiplication")
            row.append([(k, c) for k, c in enumerate(coords) if c != 0])
        table.append(row)
    inv = [[F.zero] * m for _ in range(m)]
    for i in range(m):
        inv[i][i] = F.one if i == 0 else -F.one
    C = Algebra(F, table, [F.one] + [F.zero] * (m - 1), inv, {"kind": "composition"})
    # norm Gram: n(x, y) = (x conj(y) + y conj(x)) / 2 read off the unit coordinate
    G = [[(C.mul(C.basis(i), C.conj(C.basis(j)))[0] + C.mul(C.basis(j), C.conj(C.basis(i)))[0]) / 2
          for j in range(m)] for i in range(m)]
    diag, _ = la.sym_diagonalize(F, G)
    return C, QuadraticForm(F, diag)


_KILLING_RATIO = {}


def killing_ratio(m):
    """kappa(s,t) / n(s,t) on C_0 for a composition algebra of dimension m,
    where kappa is the Killing form of (C_0, commutator)."""
    if m not in _KILLING_RATIO:
        F = Rationals()
        C, _ = cayley_dickson(F, [-1] * {4: 2, 8: 3}[m])
        M = MalcevSkew(C)
        s = [F.one] + [F.zero] * (m - 2)
        ad = [[M.bracket(s, [F.one if j == i else F.zero for j in range(m - 1)])[w] for i in range(m - 1)]
              for w in range(m - 1)]
        ads = la.matrix(F, ad)
        kappa = sum(((ads * ads)[i, i] for i in range(m - 1)), F.zero)
        n_ss = norm_of(C, M.embed(s))
        _KILLING_RATIO[m] = kappa / n_ss
    return _KILLING_RATIO[m]


def _decompose_field(A, cen):
    """Rebuild C over E = k(sqrt d) from the Malcev skew space with the E-structure
    given by the centroid generator phi (phi^2 = d)."""
    F = A.field
    M = MalcevSkew(A)
    n = M.dim
    d = cen.d
    E = QuadraticExtension(F, d)
    phi = cen.phi
    # E-basis v_1..v_r with {v_i, phi v_i} a k-basis
    vs, span = [], []
    for i in range(n):
        e = [F.one if j == i else F.zero for j in range(n)]
        trial = span + [e, la.matvec(phi, e)]
        if la.rank(la.matrix(F, trial)) == len(trial):
            vs.append(e)
            span = trial
    r = len(vs)
    if 2 * r != n:
        raise InvariantViolation("skew space is not free over the centroid")
    B = la.matrix(F, span).transpose()

    def ecoords(w):
        c = la.coords_in(F, B, w)
        return [E.elt(c[2 * i], c[2 * i + 1]) for i in range(r)]

    br = [[ecoords(M.bracket(vs[a], vs[b])) for b in range(r)] for a in range(r)]
    # Killing form over E
    kap = [[E.zero] * r for _ in range(r)]
    for a in range(r):
        for b in range(r):
            # tr(ad_a ad_b) = sum_x coefficient of v_x in [v_a, [v_b, v_x]]
            tot = E.zero
            for x in range(r):
                inner = br[b][x]
                for y in range(r):
                    if not E.is_zero(inner[y]):
                        tot = tot + inner[y] * br[a][y][x]
            kap[a][b] = tot
    ratio = killing_ratio(r + 1)
    npol = [[kap[a][b] / ratio for b in range(r)] for a in range(r)]
    m = r + 1
    table = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i == 0 or j == 0:
                table[i][j] = [(i + j, E.one)]
                continue
            out = {0: -npol[i - 1][j - 1]}
            for y in range(r):
                out[y + 1] = br[i - 1][j - 1][y] / 2
            table[i][j] = [(k, c) for k, c in sorted(out.items()) if not E.is_zero(c)]
    diag, _ = la.sym_diagonalize(E, [[E.one] + [E.zero] * r] + [[E.zero] + npol[a] for a in range(r)])
    return CorestrictionData(d, E, table, diag, ratio)


def decompose(A):
    cen = malcev_centroid(A)
    F = A.field
    M = MalcevSkew(A)
    if cen.kind == "split":
        parts = []
        for e in cen.idempotents:
            vecs = [M.embed(v) for v in _image_basis(F, e)]
            parts.append(vecs)
        (C1, n1), (C2, n2) = (_subalgebra_from(A, p) for p in parts)
        if C1.dim < C2.dim:
            C1, C2, n1, n2 = C2, C1, n2, n1
            parts.reverse()
        return Factors(C1, C2, n1, n2, parts[0], parts[1])
    return _decompose_field(A, cen)


def etale_table_mul(E, table, x, y):
    m = len(table)
    out = [E.zero] * m
    for i in range(m):
        if E.is_zero(x[i]):
            continue
        for j in range(m):
            if E.is_zero(y[j]):
                continue
            for k, c in table[i][j]:
                out[k] = out[k] + x[i] * y[j] * c
    return out
