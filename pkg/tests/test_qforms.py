import random

from hypothesis import given, settings, strategies as st

from bioctonion.fields import LaurentTower, PrimeField, Rationals, etale
from bioctonion.qforms import (P_n, diagonal, hyperbolic, is_hyperbolic, is_isotropic,
                               isometric, isotropic, lambda2, pfister, pure_part,
                               signature, similar, transfer_additive, transfer_mult,
                               witt_decompose, witt_equal)

Q = Rationals()
F5 = PrimeField(5)
nonzero = st.integers(-30, 30).filter(bool)


def test_builders():
    assert pfister(Q, [-1, -1, -1]).entries == (1,) * 8
    assert pure_part(pfister(Q, [3])).entries == (-3,)
    assert diagonal(Q, [1, -3]).scale(2).entries == (2, -6)


def test_isotropy_examples():
    ok, w = isotropic(diagonal(Q, [1, 1, 1, 1, -7]))
    assert ok and w == [2, 1, 1, 1, 1]
    assert not is_isotropic(pfister(Q, [-1, -1, -1]))
    L = LaurentTower(Q, ["t"])
    assert not is_isotropic(diagonal(L, [L.parse("1"), L.parse("-t")]))


def test_witt_examples():
    assert witt_decompose(diagonal(Q, [1, -1, 1, -1, 5])).to_json() == {"kernel": ["5"], "hyperbolic": 2}
    assert witt_decompose(pfister(Q, [1, 2, 3])).to_json() == {"kernel": [], "hyperbolic": 4}
    assert witt_decompose(diagonal(F5, [1, 1, 1, 1])).to_json() == {"kernel": [], "hyperbolic": 2}


def test_isometry_examples():
    assert isometric(diagonal(Q, [1, -1]), diagonal(Q, [2, -2]))
    assert not isometric(diagonal(F5, [1, 1]), diagonal(F5, [1, 2]))
    L = LaurentTower(Q, ["t1", "t2"])
    a = diagonal(L, [L.parse("t1"), L.parse("t2")])
    b = diagonal(L, [L.parse("t1"), L.parse("4*t1*t2")])
    assert not isometric(a, b)


def test_similarity_examples():
    assert similar(pfister(Q, [2, 3]), pfister(Q, [-1, -1])).status == "NotSimilar"
    q = pure_part(pfister(Q, [-1, -1, -1])) + pure_part(pfister(Q, [1, 1, 1])).scale(-1)
    s = similar(q, q.scale(-1))
    assert s.status == "Similar"
    assert isometric(q.scale(s.c), q.scale(-1))


@settings(max_examples=25, deadline=None)
@given(st.lists(nonzero, min_size=1, max_size=4), nonzero)
def test_similar_to_scaled_copy(entries, c):
    q = diagonal(Q, entries)
    assert similar(q, q.scale(c)).status == "Similar"


def test_transfers():
    E = etale(Q, 3)
    assert transfer_additive(E, diagonal(E, [1])).entries == (2, 6)
    e = E.elt(2, 5)
    assert transfer_mult(E, diagonal(E, [e])).entries == (E.norm(e),)
    assert witt_equal(transfer_mult(E, hyperbolic(E)), diagonal(Q, [2, -6, 1, -1]))


def test_lambda2_and_P_n():
    assert lambda2(diagonal(Q, [2, 3, 5])).entries == (6, 10, 15)
    assert lambda2(hyperbolic(Q)).entries == (-1,)
    assert P_n(2, pfister(Q, [2, 3])).is_zero()
    assert P_n(3, pfister(Q, [-1, 2, 5])).is_zero()


def test_signature():
    assert signature(diagonal(Q, [1, 1, -1])) == 1
    assert signature(pfister(Q, [-1, -1, -1])) == 8
    assert signature(hyperbolic(Q)) == 0


@settings(max_examples=30, deadline=None)
@given(st.lists(nonzero, min_size=1, max_size=5))
def test_q_minus_q_is_hyperbolic(entries):
    q = diagonal(Q, entries)
    assert is_hyperbolic(q + q.scale(-1))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=6))
def test_isotropy_matches_brute_force_mod5(entries):
    import itertools
    q = diagonal(F5, entries)
    brute = any(sum(a * x * x for a, x in zip(entries, v)) % 5 == 0
                for v in itertools.product(range(5), repeat=len(entries)) if any(v))
    assert is_isotropic(q) == brute


def test_witt_decompose_is_isometric():
    rng = random.Random(3)
    for _ in range(10):
        q = diagonal(Q, [rng.choice([-1, 1]) * rng.randint(1, 12) for _ in range(5)])
        w = witt_decompose(q)
        kern = diagonal(Q, [Q.parse(x) for x in w.to_json()["kernel"]])
        assert isometric(kern + hyperbolic(Q, w.to_json()["hyperbolic"]), q)
