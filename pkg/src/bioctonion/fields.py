"""Exact ground fields: rationals, prime fields, quadratic etale extensions and
monomial Laurent towers.

Rational scalars are flint.fmpq, prime field scalars are flint.nmod; the other
backends use the small immutable classes below.
"""
import re
from fractions import Fraction

import flint

from .errors import (DivisionByZero, MixedFields, NonMonomialSum, NotANonsquare,
                     UnsupportedField, ZeroInput, InputError)


def squarefree_part(n):
    """Signed squarefree part of a nonzero integer."""
    n = int(n)
    if n == 0:
        raise ZeroInput("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in flint.fmpz(abs(n)).factor():
        if e % 2:
            out *= int(p)
    return sign * out


def odd_prime_support(n):
    return [int(p) for p, _ in flint.fmpz(abs(int(n))).factor() if int(p) != 2]


class Field:
    """Base class; subclasses define key(), element handling and square tests."""
    arithmetic_complete = True
    char = 0

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return self.name()

    def is_zero(self, x):
        return x == 0

    def square_class_eq(self, x, y):
        return self.is_square(self(x) * self(y))

    def random_nonzero(self, rng, **kw):
        while True:
            x = self.random(rng, **kw)
            if not self.is_zero(x):
                return x

    def vec(self, xs):
        return [self(x) for x in xs]


class Rationals(Field):
    kind = "Q"

    def key(self):
        return ("Q",)

    def name(self):
        return "Q"

    @property
    def zero(self):
        return flint.fmpq(0)

    @property
    def one(self):
        return flint.fmpq(1)

    def __call__(self, v):
        if isinstance(v, flint.fmpq):
            return v
        if isinstance(v, (int, flint.fmpz)):
            return flint.fmpq(v)
        if isinstance(v, Fraction):
            return flint.fmpq(v.numerator, v.denominator)
        if isinstance(v, str):
            return self.parse(v)
        raise MixedFields(f"cannot coerce {v!r} into Q")

    def contains(self, x):
        return isinstance(x, flint.fmpq)

    def parse(self, s):
        s = s.strip().replace(" ", "")
        try:
            if "/" in s:
                n, d = s.split("/")
                if int(d) == 0:
                    raise DivisionByZero("zero denominator")
                return flint.fmpq(int(n), int(d))
            return flint.fmpq(int(s))
        except ValueError as exc:
            raise InputError(f"bad rational {s!r}") from exc

    def fmt(self, x):
        return str(x)

    def is_square(self, x):
        x = self(x)
        if x == 0:
            return True
        return x > 0 and flint.fmpz(x.p).is_square() and flint.fmpz(x.q).is_square()

    def sqrt(self, x):
        x = self(x)
        if not self.is_square(x):
            return None
        return flint.fmpq(flint.fmpz(x.p).isqrt(), flint.fmpz(x.q).isqrt())

    def square_class(self, x):
        x = self(x)
        if x == 0:
            raise ZeroInput("zero has no square class")
        return squarefree_part(int(x.p) * int(x.q))

    def random(self, rng, height=6, den=3):
        return flint.fmpq(rng.randint(-height, height), rng.randint(1, den))

    def to_json(self):
        return {"kind": "Q"}


class PrimeField(Field):
    kind = "Fp"

    def __init__(self, p):
        p = int(p)
        if p < 5 or not flint.fmpz(p).is_prime():
            raise UnsupportedField(f"need a prime p >= 5, got {p}")
        self.p = p
        self.char = p
        self.nonresidue = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)

    def key(self):
        return ("Fp", self.p)

    def name(self):
        return f"F{self.p}"

    @property
    def zero(self):
        return flint.nmod(0, self.p)

    @property
    def one(self):
        return flint.nmod(1, self.p)

    def __call__(self, v):
        if isinstance(v, flint.nmod):
            if v.modulus() != self.p:
                raise MixedFields("residues modulo different primes")
            return v
        if isinstance(v, (int, flint.fmpz)):
            return flint.nmod(int(v), self.p)
        if isinstance(v, (Fraction, flint.fmpq)):
            n, d = (v.numerator, v.denominator) if isinstance(v, Fraction) else (int(v.p), int(v.q))
            if d % self.p == 0:
                raise DivisionByZero("denominator divisible by p")
            return flint.nmod(n, self.p) / flint.nmod(d, self.p)
        if isinstance(v, str):
            return self.parse(v)
        raise MixedFields(f"cannot coerce {v!r} into F{self.p}")

    def contains(self, x):
        return isinstance(x, flint.nmod) and x.modulus() == self.p

    def parse(self, s):
        return self(Rationals().parse(s))

    def fmt(self, x):
        return str(int(x))

    def is_square(self, x):
        v = int(self(x))
        return v == 0 or pow(v, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, x):
        v = int(self(x))
        if v == 0:
            return self.zero
        if not self.is_square(v):
            return None
        return flint.nmod(int(flint.fmpz(v).sqrtmod(self.p)), self.p)

    def square_class(self, x):
        if self(x) == 0:
            raise ZeroInput("zero has no square class")
        return 1 if self.is_square(x) else self.nonresidue

    def random(self, rng, **kw):
        return flint.nmod(rng.randrange(self.p), self.p)

    def to_json(self):
        return {"kind": "Fp", "p": self.p}


class QuadElt:
    """a + b*sqrt(d) in a quadratic field extension."""
    __slots__ = ("F", "a", "b")

    def __init__(self, F, a, b):
        self.F, self.a, self.b = F, a, b

    def _co(self, o):
        return self.F(o)

    def __add__(self, o):
        o = self._co(o)
        return QuadElt(self.F, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._co(o)
        return QuadElt(self.F, self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return self._co(o) - self

    def __neg__(self):
        return QuadElt(self.F, -self.a, -self.b)

    def __mul__(self, o):
        o = self._co(o)
        d = self.F.d
        return QuadElt(self.F, self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inv(self):
        n = self.a * self.a - self.F.d * self.b * self.b
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return QuadElt(self.F, self.a / n, -self.b / n)

    def __truediv__(self, o):
        return self * self._co(o).inv()

    def __rtruediv__(self, o):
        return self._co(o) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out, base = self.F.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        try:
            o = self._co(o)
        except (MixedFields, TypeError):
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((int(self.a.p), int(self.a.q), int(self.b.p), int(self.b.q))
                    if isinstance(self.a, flint.fmpq) else (int(self.a), int(self.b)))

    def conj(self):
        return QuadElt(self.F, self.a, -self.b)

    def norm(self):
        return self.a * self.a - self.F.d * self.b * self.b

    def trace(self):
        return 2 * self.a

    def __repr__(self):
        return self.F.fmt(self)


class QuadraticExtension(Field):
    """k(sqrt d) with d a nonsquare of k in {Q, Fp}."""
    kind = "quad"
    split = False

    def __init__(self, base, d):
        if not isinstance(base, (Rationals, PrimeField)):
            raise UnsupportedField("quadratic extensions are built over Q or Fp")
        self.base = base
        self.d = base(d)
        if base.is_square(self.d):
            raise NotANonsquare(f"{base.fmt(self.d)} is a square in {base.name()}")
        self.char = base.char
        self._nonsquare = None

    def key(self):
        return ("quad", self.base.key(), str(self.d))

    def name(self):
        return f"{self.base.name()}(sqrt {self.base.fmt(self.d)})"

    @property
    def zero(self):
        return QuadElt(self, self.base.zero, self.base.zero)

    @property
    def one(self):
        return QuadElt(self, self.base.one, self.base.zero)

    @property
    def gen(self):
        return QuadElt(self, self.base.zero, self.base.one)

    def elt(self, a, b=0):
        return QuadElt(self, self.base(a), self.base(b))

    def __call__(self, v):
        if isinstance(v, QuadElt):
            if v.F != self:
                raise MixedFields("elements of different quadratic extensions")
            return v
        if isinstance(v, (list, tuple)) and len(v) == 2:
            return self.elt(self.base(v[0]), self.base(v[1]))
        if isinstance(v, str):
            return self.parse(v)
        return QuadElt(self, self.base(v), self.base.zero)

    def contains(self, x):
        return isinstance(x, QuadElt) and x.F == self

    def is_zero(self, x):
        return x.a == 0 and x.b == 0

    def parse(self, s):
        s = s.strip().replace(" ", "")
        if not s.endswith("sqrt"):
            return self.elt(self.base.parse(s))
        body = s[:-4].rstrip("*")
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            a, b = "0", body
        else:
            a, b = body[:cut], body[cut:]
        if b in ("", "+"):
            b = "1"
        elif b == "-":
            b = "-1"
        return self.elt(self.base.parse(a), self.base.parse(b))

    def fmt(self, x):
        bf = self.base.fmt
        if x.b == 0:
            return bf(x.a)
        b = bf(x.b)
        if x.a == 0:
            return f"{b}*sqrt"
        sign = "" if b.startswith("-") else "+"
        return f"{bf(x.a)}{sign}{b}*sqrt"

    def conj(self, x):
        return self(x).conj()

    def norm(self, x):
        return self(x).norm()

    def trace(self, x):
        return self(x).trace()

    def sqrt(self, x):
        x = self(x)
        k = self.base
        if self.is_zero(x):
            return self.zero
        if x.b == 0:
            r = k.sqrt(x.a)
            if r is not None:
                return self.elt(r)
            r = k.sqrt(x.a / self.d)
            return None if r is None else self.elt(0, r)
        n = k.sqrt(x.norm())
        if n is None:
            return None
        for cand in ((x.a + n) / 2, (x.a - n) / 2):
            if cand != 0:
                u = k.sqrt(cand)
                if u is not None:
                    return self.elt(u, x.b / (2 * u))
        return None

    def is_square(self, x):
        return self.sqrt(x) is not None

    def nonsquare(self):
        if self._nonsquare is None:
            k = self.base
            for h in range(1, 50):
                for a in range(-h, h + 1):
                    for b in range(-h, h + 1):
                        x = self.elt(a, b)
                        if not self.is_zero(x) and not self.is_square(x):
                            self._nonsquare = x
                            return x
            raise UnsupportedField(f"no small nonsquare found in {self.name()}")
        return self._nonsquare

    def square_class(self, x):
        x = self(x)
        if self.is_zero(x):
            raise ZeroInput("zero has no square class")
        if self.is_square(x):
            return (1, 0)
        if isinstance(self.base, PrimeField):
            ns = self.nonsquare()
            return (int(ns.a), int(ns.b))
        # over Q: primitive integer pair with squarefree content; unique up to E-squares
        den = int(flint.fmpz(x.a.q).lcm(x.b.q))
        a, b = int(x.a * den), int(x.b * den)
        g = int(flint.fmpz(a).gcd(b))
        sq = 1
        for p, e in flint.fmpz(g).factor():
            sq *= int(p) ** (e // 2)
        return (a // (sq * sq), b // (sq * sq))

    def random(self, rng, **kw):
        return QuadElt(self, self.base.random(rng, **kw), self.base.random(rng, **kw))

    def to_json(self):
        return {"kind": "quad", "base": self.base.to_json(), "d": self.base.fmt(self.d)}


class SplitElt:
    """(x, y) in k x k; the nontrivial automorphism swaps coordinates."""
    __slots__ = ("F", "x", "y")

    def __init__(self, F, x, y):
        self.F, self.x, self.y = F, x, y

    def __add__(self, o):
        o = self.F(o)
        return SplitElt(self.F, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, o):
        o = self.F(o)
        return SplitElt(self.F, self.x - o.x, self.y - o.y)

    def __rsub__(self, o):
        return self.F(o) - self

    def __neg__(self):
        return SplitElt(self.F, -self.x, -self.y)

    def __mul__(self, o):
        o = self.F(o)
        return SplitElt(self.F, self.x * o.x, self.y * o.y)

    __rmul__ = __mul__

    def inv(self):
        if self.x == 0 or self.y == 0:
            raise DivisionByZero("non-invertible element of k x k")
        return SplitElt(self.F, 1 / self.x, 1 / self.y)

    def __truediv__(self, o):
        return self * self.F(o).inv()

    def __rtruediv__(self, o):
        return self.F(o) * self.inv()

    def __eq__(self, o):
        try:
            o = self.F(o)
        except (MixedFields, TypeError):
            return False
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((str(self.x), str(self.y)))

    def conj(self):
        return SplitElt(self.F, self.y, self.x)

    def norm(self):
        return self.x * self.y

    def trace(self):
        return self.x + self.y

    def __repr__(self):
        return self.F.fmt(self)


class SplitEtale(Field):
    """The split quadratic etale algebra k x k (not a field; arithmetic only)."""
    kind = "split"
    split = True

    def __init__(self, base):
        self.base = base
        self.char = base.char
        self.d = base.one

    def key(self):
        return ("split", self.base.key())

    def name(self):
        return f"{self.base.name()}x{self.base.name()}"

    @property
    def zero(self):
        return SplitElt(self, self.base.zero, self.base.zero)

    @property
    def one(self):
        return SplitElt(self, self.base.one, self.base.one)

    @property
    def gen(self):
        # plays the role of sqrt(d) with d = 1
        return SplitElt(self, self.base.one, -self.base.one)

    def elt(self, x, y):
        return SplitElt(self, self.base(x), self.base(y))

    def __call__(self, v):
        if isinstance(v, SplitElt):
            if v.F != self:
                raise MixedFields("elements of different etale algebras")
            return v
        if isinstance(v, (list, tuple)) and len(v) == 2:
            return self.elt(v[0], v[1])
        if isinstance(v, str) and v.strip().startswith("("):
            x, y = v.strip()[1:-1].split(",")
            return self.elt(self.base.parse(x), self.base.parse(y))
        c = self.base(v)
        return SplitElt(self, c, c)

    def contains(self, x):
        return isinstance(x, SplitElt) and x.F == self

    def is_zero(self, x):
        return x.x == 0 and x.y == 0

    def parse(self, s):
        return self(s)

    def fmt(self, x):
        return f"({self.base.fmt(x.x)},{self.base.fmt(x.y)})"

    def conj(self, x):
        return self(x).conj()

    def norm(self, x):
        return self(x).norm()

    def trace(self, x):
        return self(x).trace()

    def random(self, rng, **kw):
        return SplitElt(self, self.base.random(rng, **kw), self.base.random(rng, **kw))

    def to_json(self):
        return {"kind": "split", "base": self.base.to_json()}


def etale(base, d):
    """k(sqrt d) if d is a nonsquare, else k x k."""
    d = base(d)
    if d == 0:
        raise ZeroInput("d must be nonzero")
    return SplitEtale(base) if base.is_square(d) else QuadraticExtension(base, d)


class Mono:
    """Signed monomial c * t1^e1 ... tn^en; the zero monomial has c == 0."""
    __slots__ = ("F", "c", "e")

    def __init__(self, F, c, e):
        self.F, self.c, self.e = F, c, tuple(e)

    def is_zero(self):
        return self.F.base.is_zero(self.c)

    def __mul__(self, o):
        o = self.F(o)
        if self.is_zero() or o.is_zero():
            return self.F.zero
        return Mono(self.F, self.c * o.c, tuple(a + b for a, b in zip(self.e, o.e)))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return Mono(self.F, 1 / self.c, tuple(-a for a in self.e))

    def __truediv__(self, o):
        return self * self.F(o).inv()

    def __rtruediv__(self, o):
        return self.F(o) * self.inv()

    def __neg__(self):
        return Mono(self.F, -self.c, self.e)

    def __add__(self, o):
        o = self.F(o)
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if o.e != self.e:
            raise NonMonomialSum("sum of monomials with different exponents")
        c = self.c + o.c
        return self.F.zero if self.F.base.is_zero(c) else Mono(self.F, c, self.e)

    __radd__ = __add__

    def __sub__(self, o):
        return self + (-self.F(o))

    def __rsub__(self, o):
        return self.F(o) - self

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        if self.is_zero():
            return self.F.one if n == 0 else self
        return Mono(self.F, self.c ** n, tuple(a * n for a in self.e))

    def __eq__(self, o):
        try:
            o = self.F(o)
        except (MixedFields, TypeError, InputError):
            return False
        if self.is_zero() or o.is_zero():
            return self.is_zero() and o.is_zero()
        return self.c == o.c and self.e == o.e

    def __hash__(self):
        return hash((str(self.c), self.e))

    def conj(self):
        return self.F.conj(self)

    def norm(self):
        return self.F.norm(self)

    def trace(self):
        return self.F.trace(self)

    def __repr__(self):
        return self.F.fmt(self)


class LaurentTower(Field):
    """Signed monomials over k((t1))...((tn)); Springer splitting uses the last variable.

    The base is Q or Fp; a quadratic-extension base is allowed for arithmetic and
    transfers (the result of tower.extend(d)).
    """
    kind = "laurent"
    arithmetic_complete = False

    def __init__(self, base, vars):
        vars = list(vars)
        if len(set(vars)) != len(vars) or not vars:
            raise InputError("Laurent variables must be a nonempty duplicate-free list")
        for v in vars:
            if not re.fullmatch(r"[A-Za-z_]\w*", v) or v == "sqrt":
                raise InputError(f"bad variable name {v!r}")
        if not isinstance(base, (Rationals, PrimeField, QuadraticExtension)):
            raise UnsupportedField("Laurent towers are built over Q, Fp or k(sqrt d)")
        self.base = base
        self.vars = tuple(vars)
        self.n = len(vars)
        self.char = base.char

    def key(self):
        return ("laurent", self.base.key(), self.vars)

    def name(self):
        return f"{self.base.name()}(({','.join(self.vars)}))"

    @property
    def zero(self):
        return Mono(self, self.base.zero, (0,) * self.n)

    @property
    def one(self):
        return Mono(self, self.base.one, (0,) * self.n)

    def t(self, name_or_index, power=1):
        i = self.vars.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.n
        e[i] = power
        return Mono(self, self.base.one, e)

    def mono(self, c, e):
        c = self.base(c)
        if self.base.is_zero(c):
            return self.zero
        return Mono(self, c, e)

    def __call__(self, v):
        if isinstance(v, Mono):
            if v.F != self:
                raise MixedFields("monomials from different towers")
            return v
        if isinstance(v, str):
            return self.parse(v)
        return self.mono(v, (0,) * self.n)

    def contains(self, x):
        return isinstance(x, Mono) and x.F == self

    def is_zero(self, x):
        return self(x).is_zero()

    def parse(self, s):
        s = s.strip().replace(" ", "")
        sign = 1
        if s.startswith("-") and not re.match(r"-\d", s):
            sign, s = -1, s[1:]
        coeff = self.base.one
        e = [0] * self.n
        # split on '*' outside parentheses
        parts, depth, cur = [], 0, ""
        for ch in s:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "*" and depth == 0:
                parts.append(cur)
                cur = ""
            else:
                cur += ch
        parts.append(cur)
        for part in parts:
            m = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(-?\d+))?", part)
            if m and m.group(1) in self.vars:
                e[self.vars.index(m.group(1))] += int(m.group(2) or 1)
            else:
                if part.startswith("(") and part.endswith(")"):
                    part = part[1:-1]
                coeff = coeff * self.base.parse(part)
        return self.mono(sign * coeff, e)

    def fmt(self, x):
        x = self(x)
        if x.is_zero():
            return "0"
        c = self.base.fmt(x.c)
        if isinstance(self.base, QuadraticExtension) and x.c.b != 0:
            c = f"({c})"
        factors = []
        for v, k in zip(self.vars, x.e):
            if k == 1:
                factors.append(v)
            elif k:
                factors.append(f"{v}^{k}")
        if not factors:
            return c
        if c == "1":
            return "*".join(factors)
        if c == "-1":
            return "-" + "*".join(factors)
        return "*".join([c] + factors)

    def is_square(self, x):
        x = self(x)
        if x.is_zero():
            return True
        return all(a % 2 == 0 for a in x.e) and self.base.is_square(x.c)

    def sqrt(self, x):
        x = self(x)
        if not self.is_square(x):
            return None
        if x.is_zero():
            return self.zero
        return Mono(self, self.base.sqrt(x.c), tuple(a // 2 for a in x.e))

    def square_class(self, x):
        x = self(x)
        if x.is_zero():
            raise ZeroInput("zero has no square class")
        return (self.base.square_class(x.c), tuple(a % 2 for a in x.e))

    def split_last(self, x):
        """x = u * t_n^k -> (u restricted to the shorter tower, k)."""
        x = self(x)
        return x.c, x.e

    def drop_last(self):
        if self.n == 1:
            return self.base
        return LaurentTower(self.base, self.vars[:-1])

    def lift(self, y, last_exp=0):
        """Embed an element of drop_last() with an extra factor t_n^last_exp."""
        if self.n == 1:
            return self.mono(y, (last_exp,))
        return self.mono(y.c, tuple(y.e) + (last_exp,)) if not y.is_zero() else self.zero

    def lower(self, x):
        """Drop the last exponent of x (the image in the residue tower)."""
        x = self(x)
        if self.n == 1:
            return x.c
        return Mono(self.drop_last(), x.c, x.e[:-1])

    def random(self, rng, exp_range=2, **kw):
        c = self.base.random_nonzero(rng, **kw)
        return Mono(self, c, tuple(rng.randint(-exp_range, exp_range) for _ in range(self.n)))

    def to_json(self):
        return {"kind": "laurent", "base": self.base.to_json(), "vars": list(self.vars)}

    # quadratic etale structure when the base is k(sqrt d)
    def extend(self, d):
        """The tower over k(sqrt d) for a constant nonsquare d of the base."""
        return LaurentTower(QuadraticExtension(self.base, d), self.vars)

    def restrict(self):
        if not isinstance(self.base, QuadraticExtension):
            raise UnsupportedField("tower is not over a quadratic extension")
        return LaurentTower(self.base.base, self.vars)

    @property
    def d(self):
        return self.restrict()(self.base.d)

    def conj(self, x):
        x = self(x)
        return Mono(self, x.c.conj(), x.e) if not x.is_zero() else x

    def norm(self, x):
        x = self(x)
        k = self.restrict()
        if x.is_zero():
            return k.zero
        return k.mono(x.c.norm(), tuple(2 * a for a in x.e))

    def trace(self, x):
        x = self(x)
        k = self.restrict()
        if x.is_zero():
            return k.zero
        return k.mono(x.c.trace(), x.e)


def field_from_json(obj):
    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = obj.get("kind")
    if kind == "Q":
        return Rationals()
    if kind == "Fp":
        return PrimeField(obj["p"])
    if kind == "quad":
        base = field_from_json(obj["base"])
        return QuadraticExtension(base, base.parse(str(obj["d"])))
    if kind == "split":
        return SplitEtale(field_from_json(obj["base"]))
    if kind == "laurent":
        return LaurentTower(field_from_json(obj["base"]), obj["vars"])
    raise InputError(f"unknown field kind {kind!r}")


def parse_field_flag(s):
    """Short CLI syntax: Q, F5, F5((t1,t2)), Q((t1..t6)) or a JSON object."""
    import json
    s = s.strip()
    if s.startswith("{"):
        return field_from_json(json.loads(s))
    m = re.fullmatch(r"(Q|F\d+)(?:\(\((.*)\)\))?", s)
    if not m:
        raise InputError(f"bad field {s!r}")
    base = Rationals() if m.group(1) == "Q" else PrimeField(int(m.group(1)[1:]))
    if m.group(2) is None:
        return base
    spec = m.group(2)
    r = re.fullmatch(r"([A-Za-z_]+)(\d+)\.\.\1(\d+)", spec)
    if r:
        vars = [f"{r.group(1)}{i}" for i in range(int(r.group(2)), int(r.group(3)) + 1)]
    else:
        vars = [v for v in spec.split(",") if v]
    return LaurentTower(base, vars)


def field_arith(op, x, y=None):
    """Dispatch for the basic field operations."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / x
    raise InputError(f"unknown op {op!r}")


def etale_ops(E, op, x):
    if not E.contains(x):
        raise MixedFields("element does not belong to the etale algebra")
    return getattr(E, op)(x)
