"""Local arithmetic of Q: Hilbert symbols and square tests at the real place
(encoded as -1) and at primes."""
import flint

from .fields import squarefree_part

INF = -1


def sqf(x):
    """Signed squarefree integer representing the square class of a nonzero
    int or fmpq."""
    if isinstance(x, flint.fmpq):
        return squarefree_part(int(x.p) * int(x.q))
    return squarefree_part(int(x))


def _val(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def legendre(u, p):
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert(a, b, p):
    """Hilbert symbol (a,b)_p for nonzero rationals; p = INF for the real place."""
    a, b = sqf(a), sqf(b)
    if p == INF:
        return -1 if (a < 0 and b < 0) else 1
    al, u = _val(a, p)
    be, v = _val(b, p)
    if p == 2:
        eu, ev = ((u - 1) // 2) % 2, ((v - 1) // 2) % 2
        wu, wv = ((u * u - 1) // 8) % 2, ((v * v - 1) // 8) % 2
        e = (eu * ev + al * wv + be * wu) % 2
        return -1 if e else 1
    s = 1
    if al % 2 and be % 2 and p % 4 == 3:
        s = -s
    if be % 2:
        s *= legendre(u, p)
    if al % 2:
        s *= legendre(v, p)
    return s


def is_local_square(a, p):
    a = sqf(a)
    if p == INF:
        return a > 0
    v, u = _val(a, p)
    if v % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def support(xs):
    """Places relevant to a list of nonzero rationals: INF, 2 and odd primes of
    their squarefree parts."""
    primes = {2}
    for x in xs:
        for p, _ in flint.fmpz(abs(sqf(x))).factor():
            primes.add(int(p))
    return [INF] + sorted(primes)
