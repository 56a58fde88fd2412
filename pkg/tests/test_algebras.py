import random

import pytest

from bioctonion import linalg as la
from bioctonion.algebras import (Corestriction, Decomposable, MalcevSkew, associator,
                                 build_product, cayley_dickson, center, check_algebra,
                                 decompose, descriptor_from_json, malcev_centroid,
                                 norm_of, nucleus, skew_indices, subspaces, tensor_product)
from bioctonion.errors import UnsupportedField
from bioctonion.fields import LaurentTower, PrimeField, Rationals
from bioctonion.qforms import diagonal, hyperbolic, isometric, pfister

Q = Rationals()
F5 = PrimeField(5)


def test_hamilton_quaternions():
    H, n = cayley_dickson(Q, [-1, -1])
    assert H.dim == 4
    assert n.entries == (1, 1, 1, 1)
    assert norm_of(H, H.vec([1, 2, 3, 4])) == 30


def test_split_octonion_norm_is_hyperbolic():
    _, n = cayley_dickson(Q, [1, 1, 1])
    assert isometric(n, hyperbolic(Q, 4))


@pytest.mark.parametrize("F,mus", [(Q, [-1, -1, -1]), (Q, [2, -3, 5]), (F5, [2, 3, 1])])
def test_composition_law_and_norm(F, mus):
    C, n = cayley_dickson(F, mus)
    assert isometric(n, pfister(F, mus))
    check_algebra(C)
    rng = random.Random(7)
    for _ in range(100):
        x, y = C.random(rng), C.random(rng)
        assert norm_of(C, C.mul(x, y)) == norm_of(C, x) * norm_of(C, y)
        assert la.is_zero(la.column(F, associator(C, x, x, y)))
        assert la.is_zero(la.column(F, associator(C, y, x, x)))


def test_skew_dimensions():
    assert len(skew_indices(build_product(Decomposable(F5, [1, 1, 1], [1, 1, 1])))) == 14
    assert len(skew_indices(build_product(Decomposable(F5, [1, 1, 1], [1, 1])))) == 10


def test_corestriction_involution_eigenspaces():
    A = build_product(Corestriction(Q, -1, [1, 1, 1]))
    assert A.dim == 64
    assert len(subspaces(A, "skew")) == 14
    assert len(subspaces(A, "hermitian")) == 50


def test_nucleus_and_center():
    assert len(nucleus(build_product(Decomposable(F5, [1, 1, 1], [2, 3])))) == 4
    assert len(center(build_product(Decomposable(F5, [1, 1, 1], [2])))) == 2


def test_octonion_products_are_not_alternative():
    rng = random.Random(1)
    for mu2 in ([1, 1], [1, 1, 1]):
        A = build_product(Decomposable(F5, [1, 1, 1], mu2))
        found = False
        for _ in range(20):
            x, y = A.random(rng), A.random(rng)
            if any(c != 0 for c in associator(A, x, x, y)):
                found = True
                break
        assert found


def test_split_corestriction_matches_tensor_product():
    F = Q
    mus = [2, -1, 3]
    A = build_product(Decomposable(F, mus, [5, 1, -2]))
    C1, _ = cayley_dickson(F, mus)
    C2, _ = cayley_dickson(F, [5, 1, -2])
    B = tensor_product(C1, C2)
    assert A.table == B.table


def test_centroid_kinds():
    assert malcev_centroid(build_product(Decomposable(Q, [1, 1, 1], [-1, 2, 1]))).kind == "split"
    c = malcev_centroid(build_product(Corestriction(Q, -1, [1, 1, 1])))
    assert c.kind == "field" and Q.square_class_eq(c.d, Q(-1))


def test_malcev_identity():
    A = build_product(Decomposable(F5, [1, 1, 1], [1, 2, 3]))
    M = MalcevSkew(A)
    rng = random.Random(4)
    br = M.bracket
    for _ in range(50):
        x, y, z = ([F5.random(rng) for _ in range(M.dim)] for _ in range(3))
        lhs = br(br(x, y), br(x, z))
        terms = [br(br(br(x, y), z), x), br(br(br(y, z), x), x), br(br(br(z, x), x), y)]
        assert lhs == [a + b + c for a, b, c in zip(*terms)]


def test_decompose_round_trip():
    phi1, phi2 = [-1, 2, 3], [1, 5, -2]
    D = decompose(build_product(Decomposable(Q, phi1, phi2)))
    assert D.kind == "factors"
    n1, n2 = D.norms
    want = (pfister(Q, phi1), pfister(Q, phi2))
    assert (isometric(n1, want[0]) and isometric(n2, want[1])) or \
        (isometric(n1, want[1]) and isometric(n2, want[0]))
    rng = random.Random(0)
    for C in D.factors:
        for _ in range(20):
            x, y = C.random(rng), C.random(rng)
            assert norm_of(C, C.mul(x, y)) == norm_of(C, x) * norm_of(C, y)


def test_decompose_corestriction():
    D = decompose(build_product(Corestriction(Q, 12, [1, (1, 1), 2])))
    assert D.kind == "corestriction"
    assert Q.square_class_eq(D.d, Q(3))


def test_descriptor_json_round_trip():
    d = Corestriction(Q, -1, [1, (1, 2), 3])
    back = descriptor_from_json(d.to_json())
    assert back.to_json() == d.to_json()


def test_algebras_refuse_laurent_fields():
    L = LaurentTower(Q, ["t"])
    with pytest.raises(UnsupportedField):
        build_product(Decomposable(L, [L.parse("t")], [1]))
