import random
from fractions import Fraction
from math import factorial

import pytest

from deltaexp.deltaring import (DeltaSeries, cp_series, delta_op, f1_expansion, flambda_mod_p,
                                sub_natural, sub_star, twisted_phi)
from deltaexp.errors import HasSecondDerivative, OrderOverflow
from deltaexp.qseries import ExactRational, ModPrimePower, PrimeField, QExpansion

QQ = ExactRational()


def dq(p, ring, N, terms, caps=None):
    """DeltaSeries from {(e1, e2): {n: c}}."""
    return DeltaSeries(p, ring, {k: QExpansion.from_dict(ring, v, N) for k, v in terms.items()}, caps, N)


def test_phi_of_generators():
    p, N = 5, 40
    R = ModPrimePower(p, 4)
    q = DeltaSeries.q(p, R, N)
    assert twisted_phi(q) == dq(p, R, N, {(0, 0): {p: 1}, (1, 0): {0: p}})
    assert twisted_phi(q * q) == dq(p, R, N, {(0, 0): {2 * p: 1}, (1, 0): {p: 2 * p}, (2, 0): {0: p * p}})
    c = DeltaSeries.constant(7, p, R, N)
    assert twisted_phi(c) == c


def test_delta_of_generators():
    p, N = 7, 40
    R = ModPrimePower(p, 4)
    q = DeltaSeries.q(p, R, N)
    low = ModPrimePower(p, 3)
    assert delta_op(q) == DeltaSeries.qprime(p, low, N)
    assert delta_op(q * q) == dq(p, low, N, {(1, 0): {p: 2}, (2, 0): {0: p}})


def test_phi_rejects_second_derivative_input():
    p = 5
    with pytest.raises(OrderOverflow):
        twisted_phi(DeltaSeries.qsecond(p, ModPrimePower(p, 3), 20))


@pytest.mark.parametrize("p", [5, 7])
def test_delta_axioms_on_series(p):
    N, M = 3 * p, 4
    R = ModPrimePower(p, M)
    rng = random.Random(p)
    for _ in range(3):
        F = dq(p, R, N, {(0, 0): {n: rng.randrange(p ** M) for n in range(1, N)}})
        G = dq(p, R, N, {(0, 0): {n: rng.randrange(p ** M) for n in range(1, N)}})
        dF, dG = delta_op(F), delta_op(G)
        low = dF.ring
        assert delta_op(F + G) == dF + dG + cp_series(F, G).change_ring(low)
        Fp = (F ** p).change_ring(low)
        Gp = (G ** p).change_ring(low)
        assert delta_op(F * G) == Fp * dG + Gp * dF + (dF * dG).scale(p)


def test_phi_is_a_ring_map_with_q_prime():
    p, N = 5, 30
    R = ModPrimePower(p, 5)
    q, qp = DeltaSeries.q(p, R, N), DeltaSeries.qprime(p, R, N)
    F = q * q + qp * q
    G = q + qp.scale(3)
    assert twisted_phi(F * G) == twisted_phi(F) * twisted_phi(G)
    assert twisted_phi(F + G) == twisted_phi(F) + twisted_phi(G)


def test_sub_natural():
    p, N = 5, 20
    q, qp, qs = (DeltaSeries.q(p, QQ, N), DeltaSeries.qprime(p, QQ, N), DeltaSeries.qsecond(p, QQ, N))
    assert sub_natural(qp * q.scale(4)).is_zero()
    assert sub_natural(q + qp * qs) == QExpansion.from_dict(QQ, {1: 1}, N)


def test_sub_star():
    p, N = 5, 30
    R = PrimeField(p)
    qp = DeltaSeries.qprime(p, R, N)
    assert sub_star(qp, 3) == QExpansion.from_dict(R, {p: 3}, N)
    F = DeltaSeries.q(p, R, N) * DeltaSeries.q(p, R, N)
    assert sub_star(F, 0) == sub_natural(F)
    s = DeltaSeries.sigma(p, R, N)
    assert sub_star(s, 2).trimmed() == QExpansion.from_dict(R, {0: 2}, N).trimmed()
    with pytest.raises(HasSecondDerivative):
        sub_star(DeltaSeries.qsecond(p, R, N), 1)


def test_f1_coefficients():
    p, N = 5, 10
    f1 = f1_expansion(p, QQ, N)
    assert f1.coefficient(1, 0)[-p] == 1
    assert f1.coefficient(2, 0)[-2 * p] == Fraction(-p, 2)
    assert f1_expansion(p, PrimeField(p), N) == DeltaSeries.sigma(p, PrimeField(p), N)


@pytest.mark.parametrize("p", [5, 7])
def test_f1_exponentiates_to_q_phi(p):
    # q^p exp(p f^1) = q^p (1 + p sigma) = q^phi, exact within the q'-degree cap
    caps = (6, 2)
    N = p * caps[0] ** 2 + 4   # Laurent factors eat known precision
    X = f1_expansion(p, QQ, N, caps).scale(p)
    total = DeltaSeries.constant(1, p, QQ, N, caps)
    power = DeltaSeries.constant(1, p, QQ, N, caps)
    for k in range(1, caps[0] + 1):
        power = power * X
        total = total + power.scale(Fraction(1, factorial(k)))
    expected = DeltaSeries.constant(1, p, QQ, N, caps) + DeltaSeries.sigma(p, QQ, N, caps).scale(p)
    assert total.N >= 4
    assert total == expected.truncate(total.N)


@pytest.mark.parametrize("p", [5, 7])
def test_flambda_roots(p):
    N = 3 * p
    assert flambda_mod_p(0, p, N) == DeltaSeries.sigma(p, PrimeField(p), N + p * p) ** p
    for lam in range(p):
        F = flambda_mod_p(lam, p, N)
        roots = [mu for mu in range(p) if sub_star(F, mu).is_zero()]
        assert roots == [mu for mu in range(p) if (mu ** p - lam * mu) % p == 0]
        for mu in range(p):
            value = sub_star(F, mu).trimmed()
            assert value == QExpansion.from_dict(PrimeField(p), {0: mu ** p - lam * mu}, N).trimmed()


def test_json_round_trip():
    p, N = 5, 15
    for ring in (QQ, PrimeField(p), ModPrimePower(p, 3), ModPrimePower(p, 3, 2)):
        F = dq(p, ring, N, {(0, 0): {1: 2, 4: 1}, (1, 0): {-3: 1}, (0, 1): {2: 3}})
        G = DeltaSeries.from_json(F.dumps())
        assert G == F and G.caps == F.caps and G.N == F.N
