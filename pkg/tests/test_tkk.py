import random

import pytest

from bioctonion import tkk
from bioctonion.algebras import Decomposable, build_product
from bioctonion.fields import PrimeField

F5 = PrimeField(5)


def split(mu1, mu2):
    return build_product(Decomposable(F5, [1] * mu1, [1] * mu2))


@pytest.mark.parametrize("m1,m2,der,vaa", [(3, 3, 28, 92), (3, 0, 14, 22), (2, 1, 3, None)])
def test_derivations_and_vaa(m1, m2, der, vaa):
    A = split(m1, m2)
    assert len(tkk.derivations(A, random.Random(0))) == der
    if vaa is not None:
        assert tkk.vaa_span(A, random.Random(0)) == vaa


def test_expected_totals():
    assert tkk.expected_total(8, 8) == 248
    assert tkk.expected_total(8, 1) == 52
    assert tkk.expected_total(8, 4) == 133


@pytest.mark.parametrize("m1,m2,dims,label", [
    (3, 3, (14, 64, 92, 64, 14), "E8"),
    (3, 0, (7, 8, 22, 8, 7), "F4"),
])
def test_graded_profile(m1, m2, dims, label):
    p = tkk.graded_profile(split(m1, m2), random.Random(0))
    assert p.dims == dims and p.total == sum(dims) and p.type_label == label


def test_e7_profile():
    p = tkk.graded_profile(split(3, 2), random.Random(0))
    assert p.total == 133 and p.type_label == "E7"
    assert p.dims[0] == p.dims[4] and p.dims[1] == p.dims[3]


def test_lie_closure():
    A = split(3, 1)
    assert tkk.lie_closure_mod_p(A, 5, trials=30, rng=random.Random(1))
