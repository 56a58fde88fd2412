import random

import pytest

from bioctonion import cohomology as coh
from bioctonion import invariants as inv
from bioctonion.algebras import Corestriction, Decomposable
from bioctonion.errors import NotI12
from bioctonion.fields import LaurentTower, PrimeField, Rationals
from bioctonion.qforms import (hyperbolic, in_ideal, is_isotropic, isometric, pfister,
                               pure_part, signature)

Q = Rationals()
S, D = [1, 1, 1], [-1, -1, -1]


def tower(base, n):
    return LaurentTower(base, [f"t{i}" for i in range(1, n + 1)])


@pytest.mark.parametrize("mu1,mu2,bits", [(S, S, (0, 0)), (S, D, (1, 0)), (D, D, (0, 1))])
def test_reals_table_decomposable(mu1, mu2, bits):
    b = inv.b_invariants(Decomposable(Q, mu1, mu2))
    assert coh.is_zero(b.b1)
    for cls, deg, bit in zip((b.b3, b.b6), (3, 6), bits):
        assert cls == (coh.minus_one_power(Q, deg) if bit else coh.zero(Q, deg))


def test_reals_table_corestriction():
    b = inv.b_invariants(Corestriction(Q, -1, S))
    assert b.b1 == coh.symbol(Q, [-1])
    assert coh.is_zero(b.b3) and coh.is_zero(b.b6)


def test_b6_two_routes_agree():
    for desc in (Decomposable(Q, [-1, 2, 3], [-1, -1, 5]), Corestriction(Q, 5, [(1, 1), -1, -1])):
        from bioctonion.algebras import build_product
        A = build_product(desc)
        d = desc.d if desc.kind == "corestriction" else Q.one
        assert inv.b6_transfer(desc) == inv.b6_trace(A, d)


def test_a6_concrete_over_f5_tower():
    F = tower(PrimeField(5), 6)
    t = [F.t(i) for i in range(6)]
    _, a6, _ = inv.a_invariants(inv.two_pfister_form(F, 1, t[:3], t[3:]))
    assert a6 == coh.symbol(F, t)


def test_a6_decomposable_formula_and_scaling_over_q_tower():
    F = tower(Q, 6)
    t = [F.t(i) for i in range(6)]
    m1 = F(-1)
    rng = random.Random(3)
    for c in (F(1), F(3), F(-2) * t[0]):
        Qf = inv.two_pfister_form(F, c, t[:3], t[3:])
        a3, a6, _ = inv.a_invariants(Qf)
        e1, e2 = coh.symbol(F, t[:3]), coh.symbol(F, t[3:])
        assert a6 == e1 * e2 + coh.symbol(F, [m1, m1, c]) * e1 + coh.symbol(F, [m1, m1, -c]) * e2
        k = F(rng.choice([-3, 2, 5])) * t[rng.randrange(6)]
        _, a6k, _ = inv.a_invariants(Qf.scale(k))
        assert a6k + a6 == coh.symbol(F, [m1, m1, k]) * a3


def test_z_invariants_closed_forms_over_f5_tower():
    F = tower(PrimeField(5), 6)
    c, x1, y1, x2, y2, d = (F.t(i) for i in range(6))
    r = (pure_part(pfister(F, [x1, y1])) - pure_part(pfister(F, [x2, y2]))).scale(d)
    q = pfister(F, [c]).tensor(r)
    z = inv.z_invariants(q, coh.one(F))
    sym = lambda *xs: coh.symbol(F, list(xs))
    m1 = F(-1)
    assert z.z3 == sym(c, x1, y1) + sym(c, x2, y2)
    assert z.z5 == sym(c, x1, y1, x2, y2) + sym(m1, c, d, x1, y1) + sym(m1, c, -d, x2, y2)
    assert z.zh == sym(d, c, x1, y1, x2, y2)


def test_i12_parameterize_hyperbolic_and_wrong_input():
    c, r = inv.i12_parameterize(hyperbolic(Q, 6))
    assert c == 1 and isometric(r, hyperbolic(Q, 3))
    with pytest.raises(NotI12):
        inv.i12_parameterize(hyperbolic(Q, 5))


def test_i12_parameterize_recovers_factorization():
    F = tower(Q, 6)
    c, x1, y1, x2, y2, d = (F.t(i) for i in range(6))
    r = (pure_part(pfister(F, [x1, y1])) - pure_part(pfister(F, [x2, y2]))).scale(d)
    q = pfister(F, [c]).tensor(r)
    c2, r2 = inv.i12_parameterize(q)
    assert F.square_class_eq(c2, c)
    assert isometric(pfister(F, [c2]).tensor(r2), q)


def test_serre_bh():
    F = tower(PrimeField(5), 2)
    q = pfister(F, [F.t(0), F.t(1)])
    assert coh.is_zero(inv.serre_bh(q, coh.zero(F, 0)))
    # an isometric rediagonalization gives the same class
    q2 = pfister(F, [F.t(1), F.t(0)])
    assert isometric(q, q2)
    assert inv.serre_bh(q, coh.one(F)) == inv.serre_bh(q2, coh.one(F))


def test_division_examples():
    assert not inv.is_division(Decomposable(Q, S, D)).division
    assert not inv.is_division(Decomposable(Q, D, D)).division
    F = tower(Q, 4)
    t = [F.t(i) for i in range(4)]
    Qf = inv.two_pfister_form(F, 1, [F(-1), t[0], t[1]], [F(2), t[2], t[3]])
    assert not is_isotropic(Qf)
    assert inv.is_division(Qf).division


def test_isotopy_examples():
    assert inv.is_isotopic(Decomposable(Q, S, D), Decomposable(Q, S, D)) == "Isotopic"
    assert inv.is_isotopic(Decomposable(Q, S, S), Decomposable(Q, D, D)) == "Isotopic"
    assert inv.is_isotopic(Decomposable(Q, S, D), Decomposable(Q, S, S)) == "NotIsotopic"


def test_rost_construct():
    Qf, desc = inv.rost_construct({"kind": "TwoPfister", "c": Q(1), "phi1": [Q(-1)] * 3,
                                   "phi2": [Q(1)] * 3}, Q)
    assert Qf.dim == 14 and signature(Qf) == 8
    assert isinstance(desc, Decomposable)
    Qt, desc = inv.rost_construct({"kind": "Transfer", "d": Q(-1), "delta": [0, 1],
                                   "phi": [(1, 1), Q(2), Q(3)]}, Q)
    assert Qt.dim == 14 and in_ideal(Qt, 3)
    assert isinstance(desc, Corestriction)
