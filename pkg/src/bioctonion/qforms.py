"""Diagonal quadratic forms and Witt-ring computations over Q, Fp, quadratic
etale extensions (transfers only) and monomial Laurent towers."""
import itertools
import math

import flint

from . import local
from .errors import (DegenerateFunctional, DimTooSmall, InputError, InvariantViolation,
                     MixedFields, NotInIdeal, UnsupportedField, ZeroEntry)
from .fields import (LaurentTower, PrimeField, QuadraticExtension, Rationals,
                     SplitEtale, squarefree_part)
from .linalg import nullspace, matrix, sym_diagonalize


class QuadraticForm:
    """Diagonal form <a_1, ..., a_n> with nonzero entries."""
    __slots__ = ("field", "entries")

    def __init__(self, field, entries):
        entries = tuple(field(a) for a in entries)
        for a in entries:
            if field.is_zero(a):
                raise ZeroEntry("diagonal entries must be nonzero")
        self.field = field
        self.entries = entries

    @property
    def dim(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def _same(self, other):
        if self.field != other.field:
            raise MixedFields("forms over different fields")

    def __add__(self, other):
        self._same(other)
        return QuadraticForm(self.field, self.entries + other.entries)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        return QuadraticForm(self.field, [c * a for a in self.entries])

    def tensor(self, other):
        self._same(other)
        return QuadraticForm(self.field, [a * b for a in self.entries for b in other.entries])

    def __mul__(self, other):
        return self.tensor(other)

    def times(self, m):
        return QuadraticForm(self.field, self.entries * m)

    def value(self, v):
        F = self.field
        out = F.zero
        for a, x in zip(self.entries, v):
            out = out + a * F(x) * F(x)
        return out

    def polar(self, v, w):
        F = self.field
        out = F.zero
        for a, x, y in zip(self.entries, v, w):
            out = out + a * F(x) * F(y)
        return out

    def to_json(self):
        return {"field": self.field.to_json(), "entries": [self.field.fmt(a) for a in self.entries]}

    def __repr__(self):
        return "<" + ", ".join(self.field.fmt(a) for a in self.entries) + ">"


def form_from_json(obj, field=None):
    from .fields import field_from_json
    F = field or field_from_json(obj["field"])
    return QuadraticForm(F, [F.parse(str(a)) if isinstance(a, str) else F(a) for a in obj["entries"]])


# ---------------------------------------------------------------- builders

def diagonal(F, entries):
    return QuadraticForm(F, entries)


def empty(F):
    return QuadraticForm(F, [])


def hyperbolic(F, m=1):
    return QuadraticForm(F, [F.one, -F.one] * m)


def pfister(F, cs):
    """<<c_1,...,c_n>> = tensor of <1,-c_i>, entry for bitmask m is prod_{i in m}(-c_i)."""
    cs = [F(c) for c in cs]
    for c in cs:
        if F.is_zero(c):
            raise ZeroEntry("Pfister slots must be nonzero")
    out = []
    for m in range(2 ** len(cs)):
        e = F.one
        for i, c in enumerate(cs):
            if m >> i & 1:
                e = e * (-c)
        out.append(e)
    return QuadraticForm(F, out)


def pure_part(q):
    if not q.entries or q.entries[0] != q.field.one:
        raise InputError("pure part needs a form starting with <1>")
    return QuadraticForm(q.field, q.entries[1:])


def from_gram(F, G):
    diag, _ = sym_diagonalize(F, G)
    return QuadraticForm(F, diag)


def build(kind, F, *args):
    if kind == "diagonal":
        return diagonal(F, args[0])
    if kind == "gram":
        return from_gram(F, args[0])
    if kind == "pfister":
        return pfister(F, args[0])
    if kind == "pure_part":
        return pure_part(args[0])
    if kind == "sum":
        return args[0] + args[1]
    if kind == "scale":
        return args[1].scale(args[0])
    if kind == "tensor":
        return args[0].tensor(args[1])
    raise InputError(f"unknown build kind {kind!r}")


# ---------------------------------------------------------------- Q invariants

def signature(q):
    if not isinstance(q.field, Rationals):
        raise UnsupportedField("signature is defined over Q")
    return sum(1 if a > 0 else -1 for a in q.entries)


def _ints(q):
    return [local.sqf(a) for a in q.entries]


def _prod_sqf(xs):
    out = 1
    for x in xs:
        out = squarefree_part(out * x)
    return out


def disc(q):
    """Plain discriminant prod a_i as a square class representative."""
    F = q.field
    out = F.one
    for a in q.entries:
        out = out * a
    return out


def signed_disc(q):
    n = q.dim
    return disc(q) * (-1) ** (n * (n - 1) // 2)


def hasse(ints, p):
    """prod_{i<j} (a_i, a_j)_p computed incrementally."""
    eps, d = 1, 1
    for a in ints:
        eps *= local.hilbert(d, a, p)
        d = squarefree_part(d * a)
    return eps


def _local_isotropic(ints, p):
    n = len(ints)
    if n <= 1:
        return False
    d = _prod_sqf(ints)
    if n == 2:
        return local.is_local_square(-d, p)
    eps = hasse(ints, p)
    if n == 3:
        return local.hilbert(-1, -d, p) == eps
    if n == 4:
        return (not local.is_local_square(d, p)) or eps == local.hilbert(-1, -1, p)
    if p == local.INF:
        return not (all(a > 0 for a in ints) or all(a < 0 for a in ints))
    return True


def _isotropic_Q_ints(ints):
    n = len(ints)
    if n <= 1:
        return False
    if n == 2:
        return squarefree_part(-ints[0] * ints[1]) == 1
    if n >= 5:
        return _local_isotropic(ints, local.INF)
    return all(_local_isotropic(ints, p) for p in local.support(ints))


def _coprime_ternary(a, b, c):
    """Pairwise coprime squarefree (a', b', c') and integer scalings (sx, sy, sz)
    so that a solution of the reduced form gives (sx x, sy y, sz z)."""
    coef, scal = [a, b, c], [1, 1, 1]
    changed = True
    while changed:
        changed = False
        g = math.gcd(math.gcd(coef[0], coef[1]), coef[2])
        if abs(g) > 1:
            coef = [x // g for x in coef]
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            g = math.gcd(coef[i], coef[j])
            if g > 1:
                # g | c z^2 forces g | z: substitute z = g z'
                coef[i] //= g
                coef[j] //= g
                coef[k] = squarefree_part(coef[k] * g)
                scal[k] *= g
                changed = True
                break
    return coef, scal


def _ternary_witness(a, b, c):
    """Nonzero integer (x,y,z) with a x^2 + b y^2 + c z^2 = 0 (assumed isotropic)."""
    from sympy.abc import x, y, z
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic_normal
    (a1, b1, c1), sc = _coprime_ternary(a, b, c)
    sol = diop_ternary_quadratic_normal(a1 * x ** 2 + b1 * y ** 2 + c1 * z ** 2)
    if sol[0] is not None and any(sol):
        sol = [int(s) * m for s, m in zip(sol, sc)]
    if sol[0] is not None and any(sol) and a * sol[0] ** 2 + b * sol[1] ** 2 + c * sol[2] ** 2 == 0:
        return [int(s) for s in sol]
    for B in (4, 12, 40):
        for u, v in itertools.product(range(-B, B + 1), repeat=2):
            r = -(a * u * u + b * v * v)
            if r % c == 0:
                w2 = r // c
                if w2 >= 0 and math.isqrt(w2) ** 2 == w2 and (u or v or w2):
                    return [u, v, math.isqrt(w2)]
    raise InvariantViolation(f"no witness found for isotropic <{a},{b},{c}>")


def _embed(n, idx, w):
    out = [0] * n
    for i, x in zip(idx, w):
        out[i] = x
    return out


def _witness_Q_ints(ints):
    """Integer witness for an isotropic form with squarefree integer entries."""
    n = len(ints)
    if n == 2:
        a, b = ints
        return [1, 1] if a == -b else None
    if n == 3:
        return _ternary_witness(*ints)
    if n > 5:
        pos = [i for i, a in enumerate(ints) if a > 0]
        neg = [i for i, a in enumerate(ints) if a < 0]
        idx = [pos[0], neg[0]]
        idx += [i for i in range(n) if i not in idx][:3]
        idx.sort()
        return _embed(n, idx, _witness_Q_ints([ints[i] for i in idx]))
    if n == 5:
        for v in itertools.product(range(-2, 3), repeat=n):
            if any(v) and sum(a * x * x for a, x in zip(ints, v)) == 0:
                v = list(v)
                if next(x for x in v if x) < 0:
                    v = [-x for x in v]
                return v
    for k in range(2, n):
        for idx in itertools.combinations(range(n), k):
            sub = [ints[i] for i in idx]
            if _isotropic_Q_ints(sub):
                return _embed(n, idx, _witness_Q_ints(sub))
    # halving: t = a1 x^2 + a2 y^2 with <a3, ..., an, t> isotropic
    a1, a2, rest = ints[0], ints[1], ints[2:]
    for B in range(1, 80):
        for x in range(0, B + 1):
            y = B - x
            for xx, yy in {(x, y), (x, -y)}:
                t = a1 * xx * xx + a2 * yy * yy
                if t == 0:
                    continue
                ts = squarefree_part(t)
                if _isotropic_Q_ints(rest + [ts]):
                    w = _witness_Q_ints(rest + [ts])
                    r = math.isqrt(t // ts)
                    return [xx * w[-1], yy * w[-1]] + [u * r for u in w[:-1]]
    raise InvariantViolation(f"no witness found for isotropic {ints}")


def _witness_Fp(q):
    F = q.field
    a = q.entries
    n = len(a)
    if n == 2:
        r = F.sqrt(-a[1] / a[0])
        return None if r is None else [r, F.one]
    # a0 x^2 + a1 y^2 = -a2 has a solution with x ranging over Fp
    for x in range(F.p):
        rhs = (-a[2] - a[0] * x * x) / a[1]
        y = F.sqrt(rhs)
        if y is not None:
            return [F(x), y, F.one] + [F.zero] * (n - 3)
    raise InvariantViolation("no witness found over Fp")


# ---------------------------------------------------------------- Laurent splitting

def springer_split(q):
    """q = q0 + t_n q1 with q0, q1 over the residue tower (last variable dropped)."""
    F = q.field
    R = F.drop_last()
    q0, q1 = [], []
    for a in q.entries:
        (q1 if a.e[-1] % 2 else q0).append(F.lower(a))
    return QuadraticForm(R, q0), QuadraticForm(R, q1)


def springer_join(F, q0, q1):
    t = F.t(F.n - 1)
    return QuadraticForm(F, [F.lift(a) for a in q0.entries] + [F.lift(a) * t for a in q1.entries])


# ---------------------------------------------------------------- isotropy

def _check_ground(F):
    if isinstance(F, (QuadraticExtension, SplitEtale)) or (
            isinstance(F, LaurentTower) and isinstance(F.base, QuadraticExtension)):
        raise UnsupportedField(f"form decisions are not available over {F.name()}")


def isotropic(q):
    """Returns (is_isotropic, witness or None)."""
    F = q.field
    _check_ground(F)
    if q.dim <= 1:
        return False, None
    if isinstance(F, Rationals):
        ints = _ints(q)
        if not _isotropic_Q_ints(ints):
            return False, None
        w = _witness_Q_ints(ints)
        # rescale: a_i = s_i r_i^2 so a witness for <s_i> maps to w_i / r_i
        v = []
        for a, s, x in zip(q.entries, ints, w):
            r2 = a / s
            v.append(flint.fmpq(x) / _rat_sqrt(r2))
        if q.value(v) != 0 or not any(v):
            raise InvariantViolation("isotropic witness check failed")
        return True, v
    if isinstance(F, PrimeField):
        if q.dim >= 3:
            return True, _witness_Fp(q)
        w = _witness_Fp(q)
        return (w is not None), w
    if isinstance(F, LaurentTower):
        q0, q1 = springer_split(q)
        return (isotropic(q0)[0] or isotropic(q1)[0]), None
    raise UnsupportedField(F.name())


def is_isotropic(q):
    return isotropic(q)[0]


def _rat_sqrt(x):
    r = Rationals().sqrt(x)
    if r is None:
        raise InvariantViolation("expected a rational square")
    return r


def represents(q, a):
    """Whether q represents the nonzero scalar a."""
    return is_isotropic(q + QuadraticForm(q.field, [-q.field(a)]))


# ---------------------------------------------------------------- Witt decomposition

class WittClass:
    """Witt class stored as an anisotropic kernel plus the number of hyperbolic
    planes split off from the input it was computed from."""

    def __init__(self, kernel, hyperbolic_count=0):
        self.kernel = kernel
        self.hyperbolic = hyperbolic_count

    @property
    def field(self):
        return self.kernel.field

    def is_zero(self):
        return self.kernel.dim == 0

    def __eq__(self, other):
        if not isinstance(other, WittClass):
            return NotImplemented
        return isometric(self.kernel, other.kernel)

    def __add__(self, other):
        return witt_decompose(self.kernel + other.kernel)

    def __neg__(self):
        return WittClass(self.kernel.scale(-1), self.hyperbolic)

    def __sub__(self, other):
        return self + (-other)

    def to_json(self):
        return {"kernel": [self.kernel.field.fmt(a) for a in self.kernel.entries],
                "hyperbolic": self.hyperbolic}

    def __repr__(self):
        return f"WittClass({self.kernel!r} + {self.hyperbolic}H)"


def _split_plane(q, v):
    """Given an isotropic vector v of q, return the orthogonal complement of a
    hyperbolic plane through v, diagonalized."""
    F = q.field
    n = q.dim
    i = next(i for i in range(n) if v[i] != 0)
    w = [F.zero] * n
    w[i] = F.one
    rows = [[q.entries[j] * v[j] for j in range(n)], [q.entries[j] * w[j] for j in range(n)]]
    basis = nullspace(F, matrix(F, rows))
    G = [[q.polar(x, y) for y in basis] for x in basis]
    diag, _ = sym_diagonalize(F, G)
    return QuadraticForm(F, diag)


def _cancel_pairs(F, classes):
    """Remove pairs of entries a, -a; returns (remaining, number of pairs)."""
    out, h = [], 0
    for a in classes:
        if -a in out:
            out.remove(-a)
            h += 1
        else:
            out.append(a)
    return out, h


def _witt_Q(q):
    F = q.field
    ints, h = _cancel_pairs(F, _ints(q))
    while True:
        n = len(ints)
        if n <= 1:
            break
        if all(a > 0 for a in ints) or all(a < 0 for a in ints):
            break
        if n == 2:
            if squarefree_part(-ints[0] * ints[1]) == 1:
                ints, h = [], h + 1
            break
        done = False
        # try an isotropic ternary among entries of mixed sign
        pos = [i for i, a in enumerate(ints) if a > 0][:4]
        neg = [i for i, a in enumerate(ints) if a < 0][:4]
        cand = sorted(set(pos + neg))
        for idx in itertools.combinations(cand, 3):
            sub = [ints[i] for i in idx]
            if _isotropic_Q_ints(sub):
                rest = [a for i, a in enumerate(ints) if i not in idx]
                ints = rest + [squarefree_part(-sub[0] * sub[1] * sub[2])]
                ints, h2 = _cancel_pairs(F, ints)
                h += 1 + h2
                done = True
                break
        if done:
            continue
        # split a plane from a small isotropic subform via a witness
        for k in (4, 5):
            if done:
                break
            for idx in itertools.combinations(cand, k):
                sub = [ints[i] for i in idx]
                if _isotropic_Q_ints(sub):
                    qs = QuadraticForm(F, sub)
                    _, v = isotropic(qs)
                    comp = _split_plane(qs, v)
                    rest = [a for i, a in enumerate(ints) if i not in idx]
                    ints, h2 = _cancel_pairs(F, rest + [local.sqf(a) for a in comp.entries])
                    h += 1 + h2
                    done = True
                    break
        if not done:
            if n >= 5:
                raise InvariantViolation("indefinite form of dim >= 5 without isotropic subform")
            break
    return WittClass(QuadraticForm(F, ints), h)


def _witt_Fp(q):
    F = q.field
    n = q.dim
    sd = signed_disc(q)
    if n % 2 == 0:
        if F.is_square(sd):
            return WittClass(QuadraticForm(F, []), n // 2)
        return WittClass(QuadraticForm(F, [F.one, -F(F.square_class(sd))]), n // 2 - 1)
    c = F.square_class(disc(q) * (-1) ** ((n - 1) // 2))
    return WittClass(QuadraticForm(F, [c]), (n - 1) // 2)


def _witt_laurent(q):
    F = q.field
    q0, q1 = springer_split(q)
    k0, k1 = witt_decompose(q0), witt_decompose(q1)
    kernel = springer_join(F, k0.kernel, k1.kernel)
    return WittClass(kernel, (q.dim - kernel.dim) // 2)


def witt_decompose(q):
    F = q.field
    _check_ground(F)
    if isinstance(F, Rationals):
        return _witt_Q(q)
    if isinstance(F, PrimeField):
        return _witt_Fp(q)
    if isinstance(F, LaurentTower):
        return _witt_laurent(q)
    raise UnsupportedField(F.name())


def witt_class(q):
    return witt_decompose(q)


def is_hyperbolic(q):
    if q.dim % 2:
        return False
    if isinstance(q.field, Rationals):
        # Hasse-Minkowski: compare invariants with the hyperbolic form
        return _q_isometric(q, hyperbolic(q.field, q.dim // 2))
    return witt_decompose(q).is_zero()


def witt_equal(q1, q2):
    """Equality of Witt classes of two forms (virtual differences allowed as forms)."""
    return is_hyperbolic(q1 - q2)


# ---------------------------------------------------------------- isometry

def _q_isometric(q1, q2):
    if q1.dim != q2.dim:
        return False
    if q1.dim == 0:
        return True
    if signature(q1) != signature(q2):
        return False
    a, b = _ints(q1), _ints(q2)
    if _prod_sqf(a) != _prod_sqf(b):
        return False
    return all(hasse(a, p) == hasse(b, p) for p in local.support(a + b))


def isometric(q1, q2):
    q1._same(q2)
    F = q1.field
    _check_ground(F)
    if q1.dim != q2.dim:
        return False
    if isinstance(F, Rationals):
        return _q_isometric(q1, q2)
    if isinstance(F, PrimeField):
        return q1.dim == 0 or F.is_square(disc(q1) * disc(q2))
    if isinstance(F, LaurentTower):
        return is_hyperbolic(q1 - q2)
    raise UnsupportedField(F.name())


# ---------------------------------------------------------------- similarity

class Similarity:
    def __init__(self, status, c=None):
        self.status = status
        self.c = c

    def __repr__(self):
        return f"Similar({self.c})" if self.status == "Similar" else self.status

    def __eq__(self, other):
        return isinstance(other, Similarity) and self.status == other.status

    def to_json(self, F=None):
        out = {"verdict": self.status}
        if self.c is not None:
            out["c"] = F.fmt(self.c) if F is not None else str(self.c)
        return out


NOT_SIMILAR = Similarity("NotSimilar")
UNDECIDED = Similarity("Undecided")


def _solve_gf2(rows, rhs, nvars):
    """Solve a linear system over GF(2); rows are lists of 0/1. Returns a
    solution list or None."""
    m = [r[:] + [b] for r, b in zip(rows, rhs)]
    piv = []
    r = 0
    for c in range(nvars):
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [x ^ y for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    if any(row[-1] and not any(row[:-1]) for row in m):
        return None
    sol = [0] * nvars
    for i, c in enumerate(piv):
        sol[c] = m[i][-1]
    return sol


def _similar_Q(q1, q2, aux_bound=40):
    F = q1.field
    n = q1.dim
    s1, s2 = signature(q1), signature(q2)
    if abs(s1) != abs(s2):
        return NOT_SIMILAR
    a, b = _ints(q1), _ints(q2)
    if n % 2:
        c = F(_prod_sqf(a) * _prod_sqf(b))
        return Similarity("Similar", c) if _q_isometric(q1.scale(c), q2) else NOT_SIMILAR
    delta = squarefree_part(_prod_sqf(a) * (-1) ** (n * (n - 1) // 2))
    if delta != squarefree_part(_prod_sqf(b) * (-1) ** (n * (n - 1) // 2)):
        return NOT_SIMILAR
    signs = [1] if s1 == 0 else ([1] if s1 == s2 else [-1])
    if s1 == 0:
        signs = [1, -1]
    places = local.support(a + b)
    eta = {p: hasse(a, p) * hasse(b, p) for p in places}
    if delta == 1:
        # scaling does not change the Hasse invariant when the signed discriminant is trivial
        if all(e == 1 for e in eta.values()):
            c = F(signs[0])
            if _q_isometric(q1.scale(c), q2):
                return Similarity("Similar", c)
        return NOT_SIMILAR
    # need c with (c, delta)_v = eta_v for all v and a prescribed sign
    for sign in signs:
        gens = [-1] + [p for p in places if p != local.INF]
        extra = 0
        pl = list(places)
        aux = 3
        while True:
            rows = [[1 if local.hilbert(g, delta, v) == -1 else 0 for g in gens] for v in pl]
            rhs = [1 if eta.get(v, 1) == -1 else 0 for v in pl]
            rows.append([1] + [0] * (len(gens) - 1))
            rhs.append(0 if sign > 0 else 1)
            sol = _solve_gf2(rows, rhs, len(gens))
            if sol is not None:
                c = 1
                for g, x in zip(gens, sol):
                    if x:
                        c *= g
                c = F(c)
                if _q_isometric(q1.scale(c), q2):
                    return Similarity("Similar", c)
                raise InvariantViolation("similarity factor failed verification")
            if extra >= aux_bound:
                break
            while True:
                aux = int(flint.fmpz(aux).next_prime())
                if aux not in gens:
                    break
            gens.append(aux)
            pl.append(aux)
            extra += 1
    # local obstruction check: decisive NotSimilar when some place cannot be matched
    for p in places:
        if eta[p] == -1 and local.is_local_square(delta, p):
            return NOT_SIMILAR
    prod = 1
    for p in places:
        prod *= eta[p]
    if prod == -1:
        return NOT_SIMILAR
    if delta < 0 and len(signs) == 1 and (eta[local.INF] == -1) != (signs[0] < 0):
        return NOT_SIMILAR
    return UNDECIDED


def _q_candidates(F, forms, limit=6):
    primes = set()
    for q in forms:
        for a in q.entries:
            for p, _ in flint.fmpz(abs(local.sqf(a))).factor():
                primes.add(int(p))
    primes = sorted(primes | {2})[:limit]
    out = []
    for sign in (1, -1):
        for k in range(len(primes) + 1):
            for sub in itertools.combinations(primes, k):
                out.append(F(sign * math.prod(sub)))
    return out


def _constants(q):
    base = q.field
    while isinstance(base, LaurentTower):
        base = base.base
    return QuadraticForm(base, [a.c for a in q.entries])


def _similar_laurent(q1, q2):
    """Search over square classes u * t^parity. Over an Fp base the candidate set
    is all of K^x/K^x2, so failure is decisive; over a Q base it is not."""
    F = q1.field
    base = _constants(q1).field
    if witt_decompose(q1).kernel.dim != witt_decompose(q2).kernel.dim:
        return NOT_SIMILAR
    if isinstance(base, PrimeField):
        units, decisive = [base.one, base(base.nonresidue)], True
    else:
        units, decisive = _q_candidates(base, [_constants(q1), _constants(q2)]), False
    for u in units:
        for par in itertools.product((0, 1), repeat=F.n):
            c = F.mono(u, par)
            if isometric(q1.scale(c), q2):
                return Similarity("Similar", c)
    return NOT_SIMILAR if decisive else UNDECIDED


def similar(q1, q2):
    q1._same(q2)
    F = q1.field
    _check_ground(F)
    if q1.dim != q2.dim:
        return NOT_SIMILAR
    if q1.dim == 0:
        return Similarity("Similar", F.one)
    if isinstance(F, Rationals):
        return _similar_Q(q1, q2)
    if isinstance(F, PrimeField):
        if q1.dim % 2:
            c = F(F.square_class(disc(q1) * disc(q2)))
            return Similarity("Similar", c)
        return Similarity("Similar", F.one) if isometric(q1, q2) else NOT_SIMILAR
    if isinstance(F, LaurentTower):
        return _similar_laurent(q1, q2)
    raise UnsupportedField(F.name())


# ---------------------------------------------------------------- ideal membership

def in_ideal(q, n):
    """Whether the Witt class of q lies in I^n."""
    F = q.field
    _check_ground(F)
    if n <= 0:
        return True
    if q.dim % 2:
        return False
    if n == 1:
        return True
    if isinstance(F, PrimeField):
        return is_hyperbolic(q)
    if isinstance(F, Rationals):
        if not F.is_square(signed_disc(q)):
            return False
        if n == 2:
            return True
        if not _e2_places(q) == []:
            return False
        if n == 3:
            return True
        return signature(q) % (2 ** n) == 0
    if isinstance(F, LaurentTower):
        q0, q1 = springer_split(q)
        return in_ideal(q1, n - 1) and in_ideal(q0 + q1, n)
    raise UnsupportedField(F.name())


def _e2_places(q):
    """Ramification places of e2(q) for q in I^2 over Q."""
    m = q.dim // 2
    ints = _ints(q)
    corr_exp = (m * (m - 1) // 2) % 2
    out = []
    for p in local.support(ints):
        v = hasse(ints, p) * (local.hilbert(-1, -1, p) if corr_exp else 1)
        if v == -1:
            out.append(p)
    return out


# ---------------------------------------------------------------- lambda^2 and P_n

def lambda2(q):
    if q.dim < 2:
        raise DimTooSmall("lambda^2 needs dim >= 2")
    a = q.entries
    return QuadraticForm(q.field, [a[i] * a[j] for i in range(len(a)) for j in range(i + 1, len(a))])


def P_form(n, q):
    """The form dim/2 <1> + lambda^2 q - 2^{n-1} q (as a diagonal form)."""
    F = q.field
    return hyperbolic_free_one(F, q.dim // 2) + lambda2(q) + q.scale(-1).times(2 ** (n - 1))


def hyperbolic_free_one(F, m):
    return QuadraticForm(F, [F.one] * m)


def P_n(n, q):
    if n < 1:
        raise InputError("n must be >= 1")
    if not in_ideal(q, n):
        raise NotInIdeal(f"form not in I^{n}")
    return witt_decompose(P_form(n, q))


# ---------------------------------------------------------------- transfers

def etale_coords(E, x):
    """Coordinates (alpha, beta) with x = alpha + beta * gen."""
    if isinstance(E, SplitEtale):
        return (x.x + x.y) / 2, (x.x - x.y) / 2
    return x.a, x.b


def _const_etale(E):
    """The constant quadratic etale algebra behind E and the k-tower (or None)."""
    if isinstance(E, LaurentTower):
        return E.base, E.restrict()
    return E, None


def _functional_gram(E0, s, e):
    """Gram of (x,y) -> s(x y e) on the k-basis {1, gen} of E0."""
    g = E0.gen
    vals = [s(e), s(g * e), s(g * g * e)]
    return [[vals[0], vals[1]], [vals[1], vals[2]]]


def _make_functional(E0, functional):
    if functional is None or functional == "trace":
        return lambda x: E0.trace(x)
    s1, sg = functional
    k = E0.base
    s1, sg = k(s1), k(sg)
    if s1 == 0 and sg == 0:
        raise DegenerateFunctional("the functional is zero")

    def s(x):
        a, b = etale_coords(E0, x)
        return a * s1 + b * sg
    return s


def transfer_additive(E, q, functional=None):
    """Scharlau transfer of a form over E along a k-linear functional (default trace)."""
    if q.field != E:
        raise MixedFields("form is not over E")
    E0, K = _const_etale(E)
    if isinstance(E0, SplitEtale) and functional in (None, "trace") and K is None:
        k = E0.base
        return QuadraticForm(k, [a.x for a in q.entries] + [a.y for a in q.entries])
    s = _make_functional(E0, functional)
    k = E0.base
    out = []
    for a in q.entries:
        c = a.c if K is not None else a
        diag, _ = sym_diagonalize(k, _functional_gram(E0, s, c))
        if K is not None:
            out.extend(K.mono(x, a.e) for x in diag)
        else:
            out.extend(diag)
    return QuadraticForm(K if K is not None else k, out)


def split_pair(q):
    """(q1, q2) for a form over k x k."""
    k = q.field.base
    return QuadraticForm(k, [a.x for a in q.entries]), QuadraticForm(k, [a.y for a in q.entries])


def transfer_mult(E, q, explicit=False):
    """Multiplicative transfer N_{E/k}(q): restriction of (iota q) (x)_E q to the
    switch-fixed subspace, computed blockwise on the fixed-space basis
    {f_ii} and {x f_ij + iota(x) f_ji : x in {1, gen}} (i < j)."""
    if q.field != E:
        raise MixedFields("form is not over E")
    E0, K = _const_etale(E)
    if isinstance(E0, SplitEtale) and K is None and not explicit:
        q1, q2 = split_pair(q)
        return q1.tensor(q2)
    k = K if K is not None else E0.base
    a = q.entries
    out = [E.norm(x) for x in a]
    tr = lambda x: E0.trace(x)
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            e = E.conj(a[i]) * a[j]
            c = e.c if K is not None else e
            diag, _ = sym_diagonalize(E0.base, _functional_gram(E0, tr, c))
            if K is not None:
                out.extend(K.mono(x, e.e) for x in diag)
            else:
                out.extend(diag)
    return QuadraticForm(k, out)


def stiefel_whitney(i, q):
    from .cohomology import stiefel_whitney as sw
    return sw(i, q)


def rediagonalize(q, rng, rounds=None):
    """Another diagonalization of q: random binary rotations
    <a, b> = <a + b, ab(a + b)> followed by a shuffle. Over a Laurent tower only
    pairs of monomials with equal exponents are rotated."""
    F = q.field
    e = list(q.entries)
    for _ in range(rounds if rounds is not None else 2 * len(e)):
        if len(e) < 2:
            break
        i, j = rng.sample(range(len(e)), 2)
        a, b = e[i], e[j]
        if isinstance(F, LaurentTower) and a.e != b.e:
            continue
        s = a + b
        if F.is_zero(s):
            continue
        e[i], e[j] = s, a * b * s
    rng.shuffle(e)
    return QuadraticForm(F, e)
