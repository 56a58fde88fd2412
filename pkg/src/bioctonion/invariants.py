"""Cohomological invariants of bi-octonion algebras and of forms in I^3_14 and
I^3_12, division and isotopy decisions, and Rost's form-to-algebra constructions."""
import itertools

from . import cohomology as coh
from . import linalg as la
from .algebras import (Corestriction, Decomposable, build_product, cd_norm_entries, center,
                       cor_skew_to_E, malcev_centroid)
from .errors import (DeltaNotTraceZero, HNotInJ1, InputError, InvalidDims, InvariantViolation,
                     MixedFields, NotI2, NotI12, NotI14, ParameterizationNotFound)
from .fields import LaurentTower, PrimeField, Rationals, SplitEtale, etale
from .qforms import (QuadraticForm, P_form, hyperbolic, in_ideal, is_hyperbolic, isometric,
                     isotropic, pfister, pure_part, signature, similar, transfer_additive,
                     transfer_mult, witt_decompose, witt_equal)
from .structurable import albert_data, trace_form


def _require_bioctonion(desc):
    if desc.dims != (8, 8):
        raise InvalidDims(f"bi-octonion descriptor expected, got {desc.dims}")


def _etale_norm(F, d):
    """Norm form <1, -d> of k(sqrt d); hyperbolic when d is a square."""
    return QuadraticForm(F, [F.one, -F(d)])


# ---------------------------------------------------------------- b-invariants

class BInvariants:
    def __init__(self, b1, b3, b6, d, albert_form):
        self.b1, self.b3, self.b6 = b1, b3, b6
        self.d = d
        self.albert_form = albert_form

    def __iter__(self):
        return iter((self.b1, self.b3, self.b6))


def _norm_over_E(desc):
    """(E, n_C over E, d) with A = C1 (x) C2 read as C over E = k x k when decomposable."""
    F = desc.field
    if desc.kind == "decomposable":
        E = SplitEtale(F)
        n1, n2 = cd_norm_entries(F, desc.mu1), cd_norm_entries(F, desc.mu2)
        return E, QuadraticForm(E, [E.elt(a, b) for a, b in zip(n1, n2)]), F.one
    return desc.E, QuadraticForm(desc.E, cd_norm_entries(desc.E, desc.mu)), desc.d


def b6_transfer(desc):
    """e_6(N_{E/k}(n) - 4 n_E)."""
    F = desc.field
    E, n, d = _norm_over_E(desc)
    return coh.e_n(6, transfer_mult(E, n) - _etale_norm(F, d).times(4))


def b6_trace(A, d):
    """e_6(<128> T_A - 4 n_Z) with n_Z the norm of the Malcev centroid."""
    F = A.field
    T = trace_form(A).scale(F(128))
    return coh.e_n(6, T - _etale_norm(F, d).times(4))


def b_invariants(desc):
    _require_bioctonion(desc)
    F = desc.field
    A = build_product(desc)
    cen = malcev_centroid(A)
    if cen.kind == "split":
        b1, d = coh.zero(F, 1), F.one
    else:
        b1, d = coh.symbol(F, [cen.d]), cen.d
    Q = albert_data(A).Q
    b3 = coh.e_n(3, Q)
    b6 = b6_transfer(desc)
    if b6 != b6_trace(A, d):
        raise InvariantViolation("b6 from the transfer and from the trace form disagree")
    return BInvariants(b1, b3, b6, d, Q)


# ---------------------------------------------------------------- forms in I^3_14

def _anisotropic_value(q):
    """Q(v) for the first basis vector with nonzero value (diagonal forms)."""
    return q.entries[0]


def _check_h(h):
    if h is not None and not coh.in_J(h, 1):
        raise HNotInJ1("h . (-1) must vanish")


def a_invariants(Q, h=None):
    if Q.dim != 14 or not in_ideal(Q, 3):
        raise NotI14("Albert-type form must be 14-dimensional and lie in I^3")
    _check_h(h)
    a3 = coh.e_n(3, Q)
    a6 = coh.e_n(6, P_form(3, Q))
    ah = None
    if h is not None:
        ah = h * coh.symbol(Q.field, [_anisotropic_value(Q)]) * a6
    return a3, a6, ah


# ---------------------------------------------------------------- forms in I^3_12

def _pair_up(F, entries, c):
    """Split entries into pairs (a, b) with b in the class of -c a, by backtracking.
    Returns the list of first members or None."""
    target = -F(c)

    def rec(rest):
        if not rest:
            return []
        a = rest[0]
        for j in range(1, len(rest)):
            if F.square_class_eq(rest[j], target * a):
                sub = rec(rest[1:j] + rest[j + 1:])
                if sub is not None:
                    return [a] + sub
        return None
    return rec(list(entries))


def _fix_disc(F, r, c):
    """Swap one member of a pair (a -> -c a) if that puts r into I^2."""
    if in_ideal(r, 2):
        return r
    for i in range(r.dim):
        e = list(r.entries)
        e[i] = -F(c) * e[i]
        r2 = QuadraticForm(F, e)
        if in_ideal(r2, 2):
            return r2
    return None


def _classes(q):
    """Residue-class forms: parity vector e -> form over the base field."""
    F = q.field
    out = {}
    for a in q.entries:
        e = tuple(x % 2 for x in a.e)
        out.setdefault(e, []).append(a.c)
    return {e: QuadraticForm(F.base, v) for e, v in out.items()}


def _candidate_c(q):
    F = q.field
    out = []

    def push(c):
        if not any(F.square_class_eq(c, x) for x in out):
            out.append(c)
    a = q.entries
    for i, j in itertools.combinations(range(len(a)), 2):
        push(-a[j] / a[i])
    # similarity factors between residue classes e and e + f
    cls = {e: witt_decompose(v).kernel for e, v in _classes(q).items()}
    for e, f in itertools.permutations(cls, 2):
        if cls[e].dim and cls[e].dim == cls[f].dim:
            s = similar(cls[e], cls[f])
            if s.status == "Similar":
                par = tuple((x + y) % 2 for x, y in zip(e, f))
                push(F.mono(-s.c, par))
    return out


def _laurent_factor(q, c):
    """r with <<c>> r Witt-equivalent to q, built class by class, or None."""
    F = q.field
    u, f = c.c, tuple(x % 2 for x in c.e)
    cls = _classes(q)
    parts = []
    if any(f):
        seen = set()
        for e in cls:
            if e in seen:
                continue
            g = tuple((x + y) % 2 for x, y in zip(e, f))
            seen |= {e, g}
            other = cls.get(g, QuadraticForm(F.base, []))
            if not witt_equal(other, cls[e].scale(-u)):
                return None
            parts += [F.mono(x, e) for x in cls[e].entries]
    else:
        for e, qe in cls.items():
            half = _pair_up(F.base, witt_decompose(qe).kernel.entries, u)
            if half is None:
                return None
            parts += [F.mono(x, e) for x in half]
    r = witt_decompose(QuadraticForm(F, parts)).kernel
    if r.dim > 6:
        return None
    return r + hyperbolic(F, (6 - r.dim) // 2)


def i12_parameterize(q):
    """(c, r) with q isometric to <<c>> r and r in I^2_6."""
    if q.dim != 12 or not in_ideal(q, 3):
        raise NotI12("form must be 12-dimensional and lie in I^3")
    F = q.field
    if is_hyperbolic(q):
        return F.one, hyperbolic(F, 3)
    if isinstance(F, Rationals):
        # I^3(Q) is detected by the signature, which is +-8 here
        sign = 1 if signature(q) > 0 else -1
        r = pfister(F, [-1, -1]).scale(F(sign)) + hyperbolic(F, 1)
        c = F(-1)
        if isometric(pfister(F, [c]).tensor(r), q):
            return c, r
    elif isinstance(F, LaurentTower):
        for c in _candidate_c(q):
            half = _pair_up(F, q.entries, c)
            r = QuadraticForm(F, half) if half is not None else _laurent_factor(q, c)
            if r is None or r.dim != 6:
                continue
            r = _fix_disc(F, r, c)
            if r is not None and isometric(pfister(F, [c]).tensor(r), q):
                return c, r
    raise ParameterizationNotFound("no factorization <<c>> r found within the search bound")


class ZInvariants:
    def __init__(self, z3, z5, zh, c, r):
        self.z3, self.z5, self.zh = z3, z5, zh
        self.c, self.r = c, r

    def __iter__(self):
        return iter((self.z3, self.z5, self.zh))


def z_invariants(q, h=None, param=None):
    if q.dim != 12 or not in_ideal(q, 3):
        raise NotI12("form must be 12-dimensional and lie in I^3")
    _check_h(h)
    F = q.field
    c, r = param if param is not None else i12_parameterize(q)
    z3 = coh.e_n(3, q)
    z5 = coh.symbol(F, [c]) * coh.e_n(4, P_form(2, r))
    zh = None
    if h is not None:
        zh = h * coh.symbol(F, [_anisotropic_value(q)]) * z5
    return ZInvariants(z3, z5, zh, c, r)


def serre_bh(q, h):
    """Serre's invariant h.(a_1)...(a_{n-1}) of q = <a_1,...,a_n> in I^2_n."""
    n = q.dim
    if n <= 2 or n % 2 or not in_ideal(q, 2):
        raise NotI2("form must be even-dimensional (> 2) and lie in I^2")
    _check_h(h)
    return h * coh.symbol(q.field, q.entries[:-1])


# ---------------------------------------------------------------- division

class DivisionVerdict:
    def __init__(self, division, certificate):
        self.division = division
        self.certificate = certificate

    def __bool__(self):
        return self.division

    def to_json(self):
        return {"division": self.division, "certificate": self.certificate}


def _center_is_field(A):
    """(is_field, certificate) for the center of A (k or a quadratic etale algebra)."""
    F = A.field
    Z = center(A)
    if len(Z) == 1:
        return True, {"center_dim": 1}
    if len(Z) != 2:
        raise InvariantViolation(f"center has dimension {len(Z)}")
    one = A.unit
    z = next(v for v in Z if la.coords_in(F, la.matrix(F, [[x] for x in one]), list(v)) is None)
    z = list(z)
    cols = la.matrix(F, [[u, w] for u, w in zip(one, z)])
    beta, alpha = la.coords_in(F, cols, A.mul(z, z))
    disc = alpha * alpha + 4 * beta
    if F.is_square(disc):
        return False, {"center_dim": 2, "disc": F.fmt(disc), "split": True}
    return True, {"center_dim": 2, "nonsquare": F.fmt(F(F.square_class(disc)))}


def _pure_norm_represents_k(desc):
    """Whether n' of C over E represents an element of k, via isotropy of
    T_{E/k}(<sqrt d> n')."""
    E = desc.E
    n = QuadraticForm(E, cd_norm_entries(E, desc.mu))
    return isotropic(transfer_additive(E, pure_part(n).scale(E.gen)))[0]


def _division_descriptor(desc):
    F = desc.field
    A = build_product(desc)
    ad = albert_data(A)
    cert = {}
    field_ok, cert["center"] = _center_is_field(A)
    iso, w = isotropic(ad.Q) if ad.Q.dim else (False, None)
    if iso:
        s = ad.from_diag(w)
        if ad.q(s) != 0 or not any(x != 0 for x in s):
            raise InvariantViolation("isotropic Albert witness does not check out")
        cert["isotropic_skew_vector"] = [F.fmt(x) for x in s]
    if desc.kind == "corestriction" and desc.dims[0] == 8:
        rep = _pure_norm_represents_k(desc)
        if rep != iso:
            raise InvariantViolation("corestriction criterion and Albert isotropy disagree")
        if iso:
            c0 = cor_skew_to_E(A, ad.embed(s))
            nn = sum((a * x * x for a, x in zip(cd_norm_entries(desc.E, desc.mu), c0)), desc.E.zero)
            if desc.E.conj(nn) != nn:
                raise InvariantViolation("witness norm is not in k")
        cert["pure_norm_represents_k"] = rep
    cert["albert_isotropic"] = iso
    return DivisionVerdict(field_ok and not iso, cert)


def _division_form(Q, center_d=None):
    F = Q.field
    if Q.dim == 0:
        raise InputError("an Albert form must be nonzero")
    cert = {}
    field_ok = True
    if center_d is not None:
        field_ok = not F.is_square(F(center_d))
        cert["center"] = {"d": F.fmt(F(center_d)), "split": not field_ok}
    iso, w = isotropic(Q) if Q.dim else (False, None)
    cert["albert_isotropic"] = iso
    if w is not None:
        cert["isotropic_vector"] = [F.fmt(x) for x in w]
    elif iso:
        cert["method"] = "springer"
    return DivisionVerdict(field_ok and not iso, cert)


def is_division(obj, center_d=None):
    """Division verdict for a product-algebra descriptor or for an Albert form."""
    if isinstance(obj, QuadraticForm):
        return _division_form(obj, center_d)
    if isinstance(obj, (Decomposable, Corestriction)):
        return _division_descriptor(obj)
    raise InputError("expected a descriptor or a quadratic form")


# ---------------------------------------------------------------- isotopy

class IsotopyVerdict:
    def __init__(self, status, factor=None):
        self.status = status
        self.factor = factor

    def __eq__(self, other):
        if isinstance(other, str):
            return self.status == other
        return isinstance(other, IsotopyVerdict) and self.status == other.status

    def __repr__(self):
        return self.status

    def to_json(self, F):
        out = {"verdict": self.status}
        if self.factor is not None:
            out["factor"] = F.fmt(self.factor)
        return out


def albert_form(desc):
    return albert_data(build_product(desc)).Q


def is_isotopic(d1, d2):
    if d1.field != d2.field:
        raise MixedFields("descriptors over different fields")
    if d1.dims[0] != 8 or d2.dims[0] != 8:
        raise InvalidDims("isotopy test needs (8,m)-product descriptors")
    Q1, Q2 = albert_form(d1), albert_form(d2)
    if Q1.dim != Q2.dim:
        return IsotopyVerdict("NotIsotopic")
    s = similar(Q1, Q2)
    return IsotopyVerdict({"Similar": "Isotopic", "NotSimilar": "NotIsotopic"}.get(s.status, "Undecided"),
                          s.c)


# ---------------------------------------------------------------- Rost's constructions

def two_pfister_form(F, c, phi1, phi2):
    """<c>(phi1' + <-1> phi2') for 3-Pfister forms with the given slots."""
    return (pure_part(pfister(F, phi1)) - pure_part(pfister(F, phi2))).scale(F(c))


def transfer_form(F, d, delta, phi):
    """T_{E/k}(<delta> phi') over E = k(sqrt d); delta must have trace zero."""
    desc = Corestriction(F, d, phi)
    E = desc.E
    dl = desc._escalar(delta)
    if E.trace(dl) != 0:
        raise DeltaNotTraceZero("delta must have trace zero")
    n = QuadraticForm(E, cd_norm_entries(E, desc.mu))
    return transfer_additive(E, pure_part(n).scale(dl)), desc


def rost_construct(spec, F):
    """spec: {"kind": "TwoPfister", "c", "phi1", "phi2"} or
    {"kind": "Transfer", "d", "delta", "phi"} with Pfister slots as lists."""
    kind = spec.get("kind")
    if kind == "TwoPfister":
        Q = two_pfister_form(F, spec["c"], spec["phi1"], spec["phi2"])
        return Q, Decomposable(F, spec["phi1"], spec["phi2"])
    if kind == "Transfer":
        return transfer_form(F, spec["d"], spec["delta"], spec["phi"])
    raise InputError(f"unknown construction {kind!r}")


def report(desc):
    """InvariantReport as a JSON-ready dict."""
    b = b_invariants(desc)
    div = is_division(desc)
    return {"descriptor": desc.to_json(),
            "b1": coh.to_json(b.b1), "b3": coh.to_json(b.b3), "b6": coh.to_json(b.b6),
            "division": div.division, "decomposable": coh.is_zero(b.b1),
            "albert_form": b.albert_form.to_json()}
