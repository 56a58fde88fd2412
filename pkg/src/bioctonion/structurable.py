"""Operator calculus of structurable algebras with involution: V, L, R, T, U, D,
psi, conjugate inverses, the Albert form with its natural map, the trace form,
the octic norm, the matrix factorization and P-operators. Every operator is an
exact dim x dim matrix over the ground field."""
from . import linalg as la
from .algebras import (Algebra, SplitEtale, cd_norm_entries, cor_E_to_skew, cor_skew_to_E,
                       skew_indices)
from .errors import BadBasepoint, MixedAlgebras, NotInvertible, UnknownProvenance
from .qforms import QuadraticForm


def _check(A, *xs):
    for x in xs:
        if len(x) != A.dim:
            raise MixedAlgebras("element does not belong to the algebra")


def V(A, x, y):
    """V_{x,y} z = (x ybar) z + (z ybar) x - (z xbar) y."""
    _check(A, x, y)
    xb, yb = A.conj(x), A.conj(y)
    return A.L(A.mul(x, yb)) + A.R(x) * A.R(yb) - A.R(y) * A.R(xb)


def triple(A, x, y, z):
    return la.matvec(V(A, x, y), z)


def T(A, x):
    return V(A, x, A.unit)


def U(A, x, y=None):
    """U_{x,y} z = V_{x,z} y; U_x = U_{x,x}."""
    y = x if y is None else y
    _check(A, x, y)
    return (A.R(y) * A.L(x) + A.R(x) * A.L(y)) * A.sigma - A.L(A.mul(y, A.conj(x)))


def D(A, x, y):
    """D_{x,y} z = 1/3 [[x,y] + [xbar,ybar], z] + [z,y,x] - [z,xbar,ybar]."""
    _check(A, x, y)
    F = A.field
    xb, yb = A.conj(x), A.conj(y)
    c = A.add(A.sub(A.mul(x, y), A.mul(y, x)), A.sub(A.mul(xb, yb), A.mul(yb, xb)))
    third = F(1) / 3
    return ((A.L(c) - A.R(c)) * third + A.R(x) * A.R(y) - A.R(A.mul(y, x))
            - (A.R(yb) * A.R(xb) - A.R(A.mul(xb, yb))))


def operator(A, kind, *args):
    table = {"V": V, "L": lambda A, x: A.L(x), "R": lambda A, x: A.R(x), "T": T,
             "U": U, "D": D}
    if kind not in table:
        raise ValueError(f"unknown operator {kind!r}")
    return table[kind](A, *args)


def psi(A, x, y):
    """psi(x, y) = x ybar - y xbar."""
    return A.sub(A.mul(x, A.conj(y)), A.mul(y, A.conj(x)))


def is_skew(A, x):
    return A.conj(x) == [-c for c in x]


def conjugate_inverse(A, x):
    """x-hat = U_x^{-1} x, or None when U_x is singular."""
    Ux = U(A, x)
    if Ux.rank() < A.dim:
        return None
    xh = la.matvec(Ux.inv(), x)
    if not la.is_scalar(V(A, x, xh), 1):
        raise NotInvertible("V_{x, xhat} is not the identity")
    return xh


# ---------------------------------------------------------------- Albert data

class AlbertData:
    """Albert form Q and natural map on the skew space, in coordinates given by
    the skew basis indices of A. natural_sq is the scalar with nat^2 = natural_sq id
    (1 for decomposable algebras, d for a corestriction over k(sqrt d))."""

    def __init__(self, A, idx, gram, natural, natural_sq, provenance):
        self.A = A
        self.idx = idx
        self.gram = gram
        self.natural = natural
        self.natural_sq = natural_sq
        self.provenance = provenance
        diag, B = la.sym_diagonalize(A.field, la.to_rows(gram))
        self.Q = QuadraticForm(A.field, diag)
        # rows of B are the skew coordinates of the diagonal basis of Q
        self.diag_basis = B

    @property
    def dim(self):
        return len(self.idx)

    def embed(self, s):
        v = self.A.zero()
        for i, c in zip(self.idx, s):
            v[i] = c
        return v

    def restrict(self, v):
        return [v[i] for i in self.idx]

    def q(self, s):
        """Q of skew coordinates s."""
        return la.matvec(la.row(self.A.field, s) * self.gram, s)[0]

    def q_elt(self, v):
        return self.q(self.restrict(v))

    def nat(self, s):
        return la.matvec(self.natural, s)

    def nat_elt(self, v):
        return self.embed(self.nat(self.restrict(v)))

    def from_diag(self, w):
        """Skew coordinates of the vector with coordinates w in the diagonal basis."""
        F = self.A.field
        out = [F.zero] * self.dim
        for c, b in zip(w, self.diag_basis):
            if c != 0:
                out = [o + c * x for o, x in zip(out, b)]
        return out

    def to_json(self):
        return {"Q": self.Q.to_json(), "provenance": self.provenance}


def _gram_from_values(F, n, qv):
    """Gram matrix of a quadratic map given on basis vectors via polarization."""
    basis = [[F.one if j == i else F.zero for j in range(n)] for i in range(n)]
    vals = [qv(b) for b in basis]
    G = [[F.zero] * n for _ in range(n)]
    for a in range(n):
        G[a][a] = vals[a]
        for b in range(a + 1, n):
            s = [x + y for x, y in zip(basis[a], basis[b])]
            G[a][b] = G[b][a] = (qv(s) - vals[a] - vals[b]) / 2
    return la.matrix(F, G)


def albert_data(A):
    kind = A.info.get("kind")
    F = A.field
    idx = skew_indices(A)
    n = len(idx)
    if kind == "decomposable":
        C1, C2 = A.info["factors"]
        n1, n2 = A.info["norms"]
        m2 = C2.dim
        G = la.zeros(F, n, n)
        Nat = la.zeros(F, n, n)
        for a, i in enumerate(idx):
            if i % m2 == 0:
                G[a, a] = n1.entries[i // m2]
                Nat[a, a] = 1
            else:
                G[a, a] = -n2.entries[i]
                Nat[a, a] = -1
        return AlbertData(A, idx, G, Nat, F.one, {"kind": "decomposable"})
    if kind == "corestriction":
        desc = A.info["desc"]
        E = desc.E
        norms = cd_norm_entries(E, desc.mu)
        g = E.gen

        def to_k(e):
            return e.x if isinstance(E, SplitEtale) else e.a

        def qv(s):
            c0 = cor_skew_to_E(A, _embed(A, idx, s))
            nn = E.zero
            for ni, si in zip(norms, c0):
                nn = nn + ni * si * si
            return to_k(g * (E.conj(nn) - nn))

        G = _gram_from_values(F, n, qv)
        cols = []
        for a in range(n):
            e = [F.one if j == a else F.zero for j in range(n)]
            c0 = cor_skew_to_E(A, _embed(A, idx, e))
            img = cor_E_to_skew(A, [-g * c for c in c0])
            cols.append([img[i] for i in idx])
        Nat = la.matrix(F, cols).transpose()
        sq = to_k(g * g)
        return AlbertData(A, idx, G, Nat, sq, {"kind": "corestriction", "d": F.fmt(desc.d)})
    raise UnknownProvenance("Albert data needs an algebra built from a descriptor")


def _embed(A, idx, s):
    v = A.zero()
    for i, c in zip(idx, s):
        v[i] = c
    return v


# ---------------------------------------------------------------- identities

def ls_identity_residual(ad, s):
    """L_s L_{s nat} + Q(s) id."""
    A = ad.A
    v = ad.embed(s)
    return A.L(v) * A.L(ad.nat_elt(v)) + la.scalar_matrix(A.field, A.dim, ad.q(s))


def inversion_residual(ad, s):
    """s-hat - Q(s)^{-1} s nat, or None when Q(s) = 0 (then s must be non-invertible)."""
    A = ad.A
    v = ad.embed(s)
    qs = ad.q(s)
    sh = conjugate_inverse(A, v)
    if qs == 0:
        return None if sh is None else [A.field.one]
    return A.sub(sh, A.smul(1 / qs, ad.nat_elt(v)))


def composition_residuals(ad, s, t):
    """(c Q(sts) - Q(s)^2 Q(t), L_{sts} - L_s L_t L_s) with c = natural_sq.
    For a corestriction the k-rational Q has nat of multiplier d, so the exact
    identity is the one for the E-normalized form Q / sqrt(d); clearing sqrt(d)^3
    gives the factor c."""
    A = ad.A
    vs, vt = ad.embed(s), ad.embed(t)
    sts = A.mul(A.mul(vs, vt), vs)
    r1 = ad.natural_sq * ad.q_elt(sts) - ad.q(s) ** 2 * ad.q(t)
    r2 = A.L(sts) - A.L(vs) * A.L(vt) * A.L(vs)
    return r1, r2


def theta_residuals(ad, r, s, t):
    """(-L_s L_{s nat} - Q(s) id, (-L_r L_{s nat})(-L_s L_{t nat}) + Q(s) L_r L_{t nat})."""
    A = ad.A
    vr, vs, vt = ad.embed(r), ad.embed(s), ad.embed(t)
    Lr, Ls = A.L(vr), A.L(vs)
    Lsn, Ltn = A.L(ad.nat_elt(vs)), A.L(ad.nat_elt(vt))
    qs = ad.q(s)
    one = -(Ls * Lsn) - la.scalar_matrix(A.field, A.dim, qs)
    two = (Lr * Lsn) * (Ls * Ltn) + Lr * Ltn * qs
    return one, two


def composition_property_check(ad, rng, trials=20):
    """Count of nonzero residuals of Q(sts) = Q(s)^2 Q(t) and L_{sts} = L_s L_t L_s."""
    bad = 0
    F = ad.A.field
    for _ in range(trials):
        s = [F.random(rng) for _ in range(ad.dim)]
        t = [F.random(rng) for _ in range(ad.dim)]
        r1, r2 = composition_residuals(ad, s, t)
        bad += int(r1 != 0 or not la.is_zero(r2))
    return {"trials": trials, "failures": bad}


# ---------------------------------------------------------------- trace form

def trace_gram(A):
    """Gram matrix of T_A(x, y) = tr L_{x ybar + y xbar} on the basis."""
    F = A.field
    n = A.dim
    tau = []
    for k in range(n):
        Lk = A.L(A.basis(k))
        tau.append(sum((Lk[i, i] for i in range(n)), F.zero))
    bars = [A.conj(A.basis(j)) for j in range(n)]
    G = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        ei = A.basis(i)
        for j in range(i, n):
            p = A.add(A.mul(ei, bars[j]), A.mul(A.basis(j), bars[i]))
            v = sum((a * b for a, b in zip(tau, p) if a != 0 and b != 0), F.zero)
            G[i][j] = G[j][i] = v
    return G


def trace_form(A):
    G = trace_gram(A)
    diag, _ = la.sym_diagonalize(A.field, G)
    return QuadraticForm(A.field, diag)


def trace_value(A, G, x, y):
    return la.matvec(la.row(A.field, x) * la.matrix(A.field, G), y)[0]


# ---------------------------------------------------------------- octic norm

def default_basepoint(ad):
    F = ad.A.field
    for a in range(ad.dim):
        s = [F.one if j == a else F.zero for j in range(ad.dim)]
        if ad.q(s) != 0:
            return s
    raise BadBasepoint("no skew basis vector with nonzero Q")


class _XOps:
    """Operators of a fixed element x reused across norm and factorization."""

    def __init__(self, A, x):
        self.A, self.x = A, x
        self.Ux = U(A, x)
        self.Lx = A.L(x)
        self.Rxb = A.R(A.conj(x))
        self.Rx = A.R(x)

    def psi_x(self, w):
        """psi(x, w) = x wbar - w xbar."""
        A = self.A
        return A.sub(la.matvec(self.Lx, A.conj(w)), la.matvec(self.Rxb, w))

    def m_image(self, s):
        """psi(x, U_x(s x)) for an element s."""
        return self.psi_x(la.matvec(self.Ux, la.matvec(self.Rx, s)))


def octic_norm(ad, x, s0=None):
    """N_A(x) = Q(psi(x, U_x(s0 x))) / (36 Q(s0))."""
    s0 = default_basepoint(ad) if s0 is None else s0
    q0 = ad.q(s0)
    if q0 == 0:
        raise BadBasepoint("basepoint has Q(s0) = 0")
    ops = _XOps(ad.A, x)
    return ad.q_elt(ops.m_image(ad.embed(s0))) / (36 * q0)


def matrix_factorization(ad, x):
    """M_x(s) = 1/6 psi(x, U_x(s nat x)) on skew coordinates, with the k-rational
    natural map. M_x^2 = natural_sq * N_A(x) id."""
    A = ad.A
    F = A.field
    ops = _XOps(A, x)
    sixth = F(1) / 6
    cols = []
    for a in range(ad.dim):
        e = [F.one if j == a else F.zero for j in range(ad.dim)]
        img = ops.m_image(ad.embed(ad.nat(e)))
        cols.append([sixth * c for c in ad.restrict(img)])
    return la.matrix(F, cols).transpose()


def sharp_factorization(ad, M):
    """M_x with sharp = nat / sqrt(natural_sq), as an E-matrix pair (P, R) meaning
    P + sqrt(natural_sq) R over E = k(sqrt natural_sq); for natural_sq = 1 this is (M, 0)."""
    F = ad.A.field
    c = ad.natural_sq
    Z = la.zeros(F, M.nrows(), M.ncols())
    if c == 1:
        return M, Z
    return Z, M * (1 / c)


def sharp_square(ad, P, R):
    """(P + sqrt(c) R)^2 as a pair."""
    c = ad.natural_sq
    return P * P + R * R * c, P * R + R * P


# ---------------------------------------------------------------- P-operators

def p_operator(A, x, mode="full", ad=None):
    F = A.field
    if mode == "skew_part":
        ad = albert_data(A) if ad is None else ad
        ops = _XOps(A, x)
        sixth = F(1) / 6
        cols = []
        for a in range(ad.dim):
            e = [F.one if j == a else F.zero for j in range(ad.dim)]
            cols.append([sixth * c for c in ad.restrict(ops.m_image(ad.embed(e)))])
        return la.matrix(F, cols).transpose()
    xh = conjugate_inverse(A, x)
    if xh is None:
        raise NotInvertible("P_x needs a conjugate-invertible x")
    xb = A.conj(x)
    Vax = A.R(xh) * A.R(xb) + A.L(A.mul(xh, xb)) - A.R(x) * A.L(xh) * A.sigma
    inner = la.scalar_matrix(F, A.dim, 5) - Vax * 2
    return U(A, x) * inner * (F(1) / 3)


def skew_restriction(ad, alpha):
    """alpha_S(s) = 1/2 psi(alpha(s), alpha(1)) on skew coordinates."""
    A = ad.A
    F = A.field
    a1 = la.matvec(alpha, A.unit)
    cols = []
    for a in range(ad.dim):
        e = [F.one if j == a else F.zero for j in range(ad.dim)]
        img = psi(A, la.matvec(alpha, ad.embed(e)), a1)
        cols.append([c / 2 for c in ad.restrict(img)])
    return la.matrix(F, cols).transpose()


def multiplier(ad, M):
    """mu with Q(M s) = mu Q(s), read off the Gram matrix; None if M is not a similitude."""
    G = ad.gram
    H = M.transpose() * G * M
    for a in range(ad.dim):
        for b in range(ad.dim):
            if G[a, b] != 0:
                mu = H[a, b] / G[a, b]
                return mu if H == G * mu else None
    return None
