import random

import pytest
from hypothesis import given, strategies as st

from bioctonion.fields import (LaurentTower, PrimeField, Rationals, SplitEtale, etale,
                               etale_ops, field_arith, parse_field_flag, squarefree_part)

Q = Rationals()


def test_spec_arithmetic():
    assert field_arith("add", Q(1) / Q(2), Q(1) / Q(3)) == Q(5) / Q(6)
    assert field_arith("inv", PrimeField(7)(3)) == 5
    L = LaurentTower(Q, ["t"])
    assert L.parse("2*t") * L.parse("3*t^-1") == L.parse("6")


def test_square_classes():
    assert Q.square_class(Q(18)) == 2
    assert PrimeField(7).square_class(PrimeField(7)(2)) == 1
    L = LaurentTower(Q, ["t1", "t2"])
    assert L.square_class(L.parse("-12*t1^3*t2^2")) == (-3, (1, 0))


def test_etale_ops():
    E = etale(Q, -1)
    assert etale_ops(E, "norm", E.elt(2, 3)) == 13
    R2 = etale(Q, 2)
    assert etale_ops(R2, "trace", R2.elt(1, 1)) == 2
    S = SplitEtale(Q)
    assert etale_ops(S, "conj", S.elt(5, 7)) == S.elt(7, 5)


@given(st.integers(-10**6, 10**6).filter(bool))
def test_squarefree_part_divides_by_square(n):
    s = squarefree_part(n)
    assert n % s == 0
    r = round(abs(n // s) ** 0.5)
    assert r * r == abs(n // s)


@given(st.integers(1, 10**4), st.integers(1, 10**4))
def test_rational_square_class_multiplicative(a, b):
    x, y = Q(a), Q(b)
    assert Q.square_class(x * y) == squarefree_part(Q.square_class(x) * Q.square_class(y))


def test_prime_field_inverses():
    F = PrimeField(11)
    for a in range(1, 11):
        assert F(a) * (1 / F(a)) == 1


@pytest.mark.parametrize("flag", ["Q", "F5", "Q((t1..t3))", "F5((t1..t2))"])
def test_field_flags_parse(flag):
    F = parse_field_flag(flag)
    rng = random.Random(0)
    x = F.random(rng)
    assert x == x
