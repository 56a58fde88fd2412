import random

from hypothesis import given, settings, strategies as st

from bioctonion import cohomology as coh
from bioctonion import local
from bioctonion.fields import LaurentTower, PrimeField, Rationals
from bioctonion.qforms import diagonal, pfister

Q = Rationals()
F5 = PrimeField(5)
nonzero = st.integers(-200, 200).filter(bool)


def test_symbol_examples():
    x = coh.symbol(Q, [2, 3])
    assert not coh.is_zero(x)
    assert coh.to_json(x)["ramified"] == ["2", "3"]
    assert coh.is_zero(coh.symbol(Q, [2, 3, 5]))
    assert not coh.is_zero(coh.minus_one_power(Q, 3))


def test_quaternion_symbol_ramification_matches_hilbert_symbols():
    # (2)(3) and (-1)(3) are both ramified exactly at {2, 3}
    for p in (2, 3):
        assert local.hilbert(2, 3, p) == -1
        assert local.hilbert(-1, 3, p) == -1
    assert coh.symbol(Q, [2, 3]) == coh.symbol(Q, [-1, 3])


def test_ideal_tests():
    assert coh.in_minus_one_power(coh.zero(Q, 4), 2)
    assert coh.in_minus_one_power(coh.symbol(Q, [2, 3]), 1)
    # (3)(5) is ramified at {3, 5} while every (-1)(a) is ramified at 2 or at the real place
    assert not coh.in_minus_one_power(coh.symbol(Q, [3, 5]), 1)
    assert coh.in_J(coh.symbol(F5, [2]), 1)


@settings(max_examples=40, deadline=None)
@given(nonzero, nonzero)
def test_two_torsion_and_a_minus_a(a, b):
    x = coh.symbol(Q, [a, b])
    assert coh.is_zero(x + x)
    assert coh.is_zero(coh.symbol(Q, [a, -a]))


@settings(max_examples=40, deadline=None)
@given(nonzero, nonzero, nonzero)
def test_degree_one_linearity_and_bilinearity(a, b, c):
    assert coh.symbol(Q, [a * b]) == coh.symbol(Q, [a]) + coh.symbol(Q, [b])
    assert coh.symbol(Q, [a * b, c]) == coh.symbol(Q, [a, c]) + coh.symbol(Q, [b, c])


@settings(max_examples=60, deadline=None)
@given(nonzero, nonzero)
def test_hilbert_reciprocity(a, b):
    a, b = Q(a), Q(b)
    prod = 1
    for p in local.support([a, b]):
        prod *= local.hilbert(a, b, p)
    assert prod == 1


def test_e_n_examples():
    assert coh.e_n(1, pfister(Q, [7])) == coh.symbol(Q, [7])
    L = LaurentTower(Q, ["t1", "t2"])
    t1, t2 = L.parse("t1"), L.parse("t2")
    got = coh.e_n(3, pfister(L, [L(-1), t1, t2]))
    assert got == coh.symbol(L, [t1, t2, L(-1)])
    assert not coh.is_zero(got)
    assert coh.is_zero(coh.e_n(3, pfister(Q, [2, 3, 5])))


def test_e2_of_pfister_is_symbol():
    rng = random.Random(5)
    for _ in range(30):
        a, b = (rng.choice([-1, 1]) * rng.randint(1, 60) for _ in range(2))
        assert coh.e_n(2, pfister(Q, [a, b])) == coh.symbol(Q, [a, b])


def test_stiefel_whitney():
    assert coh.stiefel_whitney(1, diagonal(Q, [2, 3])) == coh.symbol(Q, [6])
    assert coh.stiefel_whitney(2, diagonal(Q, [5, 7])) == coh.symbol(Q, [5, 7])


def test_laurent_expansion_consistency():
    L = LaurentTower(Q, ["t1", "t2"])
    c, t = L.parse("3"), L.parse("t1")
    assert coh.symbol(L, [c * t, L.parse("t2")]) == \
        coh.symbol(L, [c, L.parse("t2")]) + coh.symbol(L, [t, L.parse("t2")])


def test_json_round_trip():
    L = LaurentTower(PrimeField(5), ["t1", "t2", "t3"])
    rng = random.Random(2)
    for F in (Q, F5, L):
        for deg in (1, 2, 3):
            slots = []
            while len(slots) < deg:
                a = F.random(rng)
                if not F.is_zero(a):
                    slots.append(a)
            x = coh.symbol(F, slots)
            assert coh.from_json(coh.to_json(x), F) == x
