"""A decidable model of mod-2 Galois cohomology H(k) for k = Q, Fp and monomial
Laurent towers over them.

Payloads:
  Q:  degree 0 bit; degree 1 squarefree integer; degree 2 frozenset of
      ramified places (-1 is the real place); degree >= 3 bit (real place).
  Fp: degree 0 bit; degree 1 square-class representative; zero above.
  Laurent: dict frozenset(variable indices) -> base class of degree deg - |S|,
      meaning sum_S (t_S) h_S with zero terms dropped.
"""
import itertools

from . import local
from .errors import InputError, MixedFields, NotInIdeal, UnsupportedField, ZeroSlot
from .fields import LaurentTower, PrimeField, Rationals, squarefree_part
from . import qforms


class CohomologyClass:
    __slots__ = ("field", "degree", "payload")

    def __init__(self, field, degree, payload):
        self.field = field
        self.degree = degree
        self.payload = payload

    def _same(self, other):
        if self.field != other.field:
            raise MixedFields("classes over different fields")

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.field == other.field and self.degree == other.degree and self.payload == other.payload

    def __hash__(self):
        return hash((self.field, self.degree, _freeze(self.payload)))

    def __add__(self, other):
        return add(self, other)

    __sub__ = __add__

    def __mul__(self, other):
        return cup(self, other)

    def is_zero(self):
        return is_zero(self)

    def to_json(self):
        return to_json(self)

    def __repr__(self):
        return describe(self)


def _freeze(p):
    if isinstance(p, dict):
        return frozenset((k, v) for k, v in p.items())
    return p


def _backend(F):
    if isinstance(F, Rationals):
        return "Q"
    if isinstance(F, PrimeField):
        return "Fp"
    if isinstance(F, LaurentTower) and isinstance(F.base, (Rationals, PrimeField)):
        return "laurent"
    raise UnsupportedField(f"no cohomology backend for {F.name()}")


def zero(F, degree):
    b = _backend(F)
    if b == "laurent":
        return CohomologyClass(F, degree, {})
    if degree == 0 or degree >= 3 and b == "Q":
        return CohomologyClass(F, degree, 0)
    if degree == 1:
        return CohomologyClass(F, 1, 1)
    if degree == 2 and b == "Q":
        return CohomologyClass(F, 2, frozenset())
    return CohomologyClass(F, degree, 0)


def one(F):
    b = _backend(F)
    if b == "laurent":
        return CohomologyClass(F, 0, {frozenset(): one(F.base)})
    return CohomologyClass(F, 0, 1)


def is_zero(x):
    return x == zero(x.field, x.degree)


# ---------------------------------------------------------------- base field pieces

def _deg1(F, a):
    """The class (a) for a nonzero scalar a."""
    a = F(a)
    if F.is_zero(a):
        raise ZeroSlot("symbol slots must be nonzero")
    b = _backend(F)
    if b == "Q":
        return CohomologyClass(F, 1, local.sqf(a))
    if b == "Fp":
        return CohomologyClass(F, 1, F.square_class(a))
    terms = {}
    terms[frozenset()] = _deg1(F.base, a.c)
    for i, e in enumerate(a.e):
        if e % 2:
            terms[frozenset([i])] = one(F.base)
    return CohomologyClass(F, 1, _clean(terms))


def _clean(terms):
    return {k: v for k, v in terms.items() if not is_zero(v)}


def _real_res(x):
    """Restriction of a Q class to R, as a bit."""
    d, p = x.degree, x.payload
    if d == 0 or d >= 3:
        return p
    if d == 1:
        return 1 if p < 0 else 0
    return 1 if local.INF in p else 0


def add(x, y):
    x._same(y)
    if x.degree != y.degree:
        raise InputError("adding classes of different degree")
    F, d = x.field, x.degree
    b = _backend(F)
    if b == "laurent":
        terms = dict(x.payload)
        for k, v in y.payload.items():
            terms[k] = add(terms[k], v) if k in terms else v
        return CohomologyClass(F, d, _clean(terms))
    if d == 1:
        if b == "Q":
            return CohomologyClass(F, 1, squarefree_part(x.payload * y.payload))
        return CohomologyClass(F, 1, F.square_class(F(x.payload) * F(y.payload)))
    if d == 2 and b == "Q":
        return CohomologyClass(F, 2, x.payload ^ y.payload)
    return CohomologyClass(F, d, x.payload ^ y.payload)


def cup(x, y):
    x._same(y)
    F = x.field
    d = x.degree + y.degree
    b = _backend(F)
    if b == "laurent":
        minus1 = _deg1(F.base, -1)
        terms = {}
        for S, h in x.payload.items():
            for T, g in y.payload.items():
                c = cup(h, g)
                for _ in range(len(S & T)):
                    c = cup(c, minus1)
                key = S | T
                terms[key] = add(terms[key], c) if key in terms else c
        return CohomologyClass(F, d, _clean(terms))
    if x.degree == 0:
        return y if x.payload else zero(F, y.degree)
    if y.degree == 0:
        return x if y.payload else zero(F, x.degree)
    if b == "Fp":
        return zero(F, d)
    if d == 2:
        a, c = x.payload, y.payload
        return CohomologyClass(F, 2, frozenset(v for v in local.support([a, c])
                                               if local.hilbert(a, c, v) == -1))
    return CohomologyClass(F, d, _real_res(x) & _real_res(y))


def symbol(F, scalars):
    """The cup product (a_1)...(a_n); the empty symbol is 1."""
    out = one(F)
    for a in scalars:
        out = cup(out, _deg1(F, a))
    return out


def minus_one_power(F, m):
    return symbol(F, [-1] * m)


def coh_arith(op, x, y):
    if op == "add":
        return add(x, y)
    if op == "cup":
        return cup(x, y)
    raise InputError(f"unknown op {op!r}")


def t_class(F, i):
    """(t_i) in a Laurent tower."""
    return CohomologyClass(F, 1, {frozenset([i]): one(F.base)})


def base_class(F, h):
    """Embed a class of the base field into a Laurent tower."""
    return CohomologyClass(F, h.degree, _clean({frozenset(): h}))


# ---------------------------------------------------------------- e_n

def _as_form(w):
    return w.kernel if isinstance(w, qforms.WittClass) else w


def e_n(n, w):
    """e_n of a Witt class (or a form standing for its class) lying in I^n."""
    q = _as_form(w)
    F = q.field
    if not qforms.in_ideal(q, n):
        raise NotInIdeal(f"class not in I^{n}")
    return _e_n(n, q)


def _e_n(n, q):
    F = q.field
    b = _backend(F)
    if n == 0:
        return CohomologyClass(F, 0, q.dim % 2) if b != "laurent" else \
            base_class(F, CohomologyClass(F.base, 0, q.dim % 2))
    if b == "laurent":
        q0, q1 = qforms.springer_split(q)
        R = F.drop_last()
        first = _lift(F, R, _e_n(n, q0 + q1))
        second = _lift(F, R, _e_n(n - 1, q1))
        last = frozenset([F.n - 1])
        shifted = {k | last: v for k, v in second.payload.items()}
        return add(first, CohomologyClass(F, n, _clean(shifted)))
    if n == 1:
        return _deg1(F, qforms.signed_disc(q)) if q.dim else zero(F, 1)
    if b == "Fp":
        return zero(F, n)
    if n == 2:
        return CohomologyClass(F, 2, frozenset(qforms._e2_places(q)))
    return CohomologyClass(F, n, (qforms.signature(q) // 2 ** n) % 2)


def _lift(F, R, x):
    """A class over the residue tower R (or base field) viewed over F."""
    if R == F.base:
        return base_class(F, x)
    return CohomologyClass(F, x.degree, dict(x.payload))


# ---------------------------------------------------------------- Stiefel-Whitney

def total_stiefel_whitney(q):
    F = q.field
    w = [one(F)]
    for a in q.entries:
        cls = _deg1(F, a)
        new = w + [None]
        for k in range(len(w), 0, -1):
            term = cup(w[k - 1], cls)
            new[k] = add(new[k], term) if new[k] is not None else term
        w = new
    return w


def stiefel_whitney(i, q):
    w = total_stiefel_whitney(q)
    return w[i] if i < len(w) else zero(q.field, i)


# ---------------------------------------------------------------- ideal tests

def _q_in_minus_one_power_brute(x, m):
    F = x.field
    D = x.degree
    rest = D - m
    if rest < 0:
        return is_zero(x)
    if m == 0:
        return True
    base = minus_one_power(F, m)
    if rest == 0:
        return any(cup(base, c) == x for c in (zero(F, 0), one(F)))
    if D >= 3:
        return any(cup(base, c) == x for c in (zero(F, rest), minus_one_power(F, rest)))
    # D <= 2 with m = 1, rest = 1: multiplicands (a) with a in <-1, 2, support primes>
    primes = sorted({p for p in (x.payload if D == 2 else local.support([x.payload])[1:])
                     if p != local.INF} | {2})
    gens = [-1] + primes
    for mask in range(2 ** len(gens)):
        a = 1
        for i, g in enumerate(gens):
            if mask >> i & 1:
                a *= g
        if cup(base, _deg1(F, a)) == x:
            return True
    return False


def _q_in_minus_one_power_rule(x, m):
    D = x.degree
    if D < m:
        return is_zero(x)
    if m == 0 or D >= 3:
        return True
    if D == 1:
        return x.payload in (1, -1)
    if m == 2:
        return x.payload in (frozenset(), frozenset([local.INF, 2]))
    return all(p % 4 == 3 for p in x.payload if p not in (local.INF, 2))


def in_minus_one_power(x, m):
    """Whether x lies in (-1)^m H^{deg - m}."""
    F = x.field
    b = _backend(F)
    if b == "laurent":
        if x.degree < m:
            return is_zero(x)
        return all(in_minus_one_power(h, m) for h in x.payload.values())
    if b == "Fp":
        if x.degree < m:
            return is_zero(x)
        if m == 0 or x.degree >= 2:
            return True
        # degree 1, m = 1: x in {0, (-1)}
        return x == zero(F, 1) or x == _deg1(F, -1)
    rule = _q_in_minus_one_power_rule(x, m)
    brute = _q_in_minus_one_power_brute(x, m)
    if rule != brute:
        from .errors import InvariantViolation
        raise InvariantViolation("membership rule and enumeration disagree")
    return rule


def in_J(x, m):
    return is_zero(cup(x, minus_one_power(x.field, m)))


def ideal_tests(x, test, m=None):
    if test == "is_zero":
        return is_zero(x)
    if test == "in_minus_one_power":
        return in_minus_one_power(x, m)
    if test == "in_J":
        return in_J(x, m)
    raise InputError(f"unknown test {test!r}")


# ---------------------------------------------------------------- serialization

def _place_str(v):
    return "inf" if v == local.INF else str(v)


def to_json(x):
    F = x.field
    b = _backend(F)
    if b == "laurent":
        terms = []
        for S in sorted(x.payload, key=lambda s: (len(s), sorted(s))):
            terms.append({"vars": [F.vars[i] for i in sorted(S)], "base": to_json(x.payload[S])})
        return {"degree": x.degree, "backend": "laurent", "terms": terms}
    out = {"degree": x.degree, "backend": b}
    if b == "Fp":
        out["p"] = F.p
    if x.degree == 1:
        out["class"] = str(x.payload)
    elif x.degree == 2 and b == "Q":
        out["ramified"] = [_place_str(v) for v in sorted(x.payload)]
    else:
        out["bit"] = int(x.payload)
    return out


def from_json(obj, F):
    b = obj.get("backend")
    d = int(obj["degree"])
    if b == "laurent":
        terms = {}
        for t in obj["terms"]:
            S = frozenset(F.vars.index(v) for v in t["vars"])
            terms[S] = from_json(t["base"], F.base)
        return CohomologyClass(F, d, _clean(terms))
    if d == 1:
        return CohomologyClass(F, 1, int(obj["class"]))
    if d == 2 and b == "Q":
        return CohomologyClass(F, 2, frozenset(local.INF if v == "inf" else int(v)
                                               for v in obj["ramified"]))
    return CohomologyClass(F, d, int(obj.get("bit", 0)))


def describe(x):
    F = x.field
    b = _backend(F)
    if b == "laurent":
        if not x.payload:
            return "0"
        parts = []
        for S in sorted(x.payload, key=lambda s: (len(s), sorted(s))):
            ts = "".join(f"({F.vars[i]})" for i in sorted(S))
            parts.append(f"{ts}*[{describe(x.payload[S])}]" if ts else describe(x.payload[S]))
        return " + ".join(parts)
    if is_zero(x):
        return "0"
    if x.degree == 0:
        return "1"
    if x.degree == 1:
        return f"({x.payload})"
    if x.degree == 2 and b == "Q":
        return "ram{" + ",".join(_place_str(v) for v in sorted(x.payload)) + "}"
    return f"(-1)^{x.degree}"
