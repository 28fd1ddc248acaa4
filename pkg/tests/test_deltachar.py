import random

import pytest

from deltaexp.deltachar import (ORDER1_CL, ORDER2, build_psi, order2_value, pdiv_test, psi_eval_formal,
                                multiple_parameter, point_parameter, psi_eval_point, rank_p_estimate, rank_p_of_values)
from deltaexp.ellcurve import builtin_curves, rational_torsion, reduced_order
from deltaexp.errors import BadPrime, PrecisionExhausted
from deltaexp.formalgroup import formal_add, formal_eval
from deltaexp.padic import UnramifiedRing

TABLE = builtin_curves()
M = 6


def test_modes():
    assert build_psi(TABLE["11a1"], 7, M).mode == ORDER2
    assert build_psi(TABLE["37a1"], 5, M).mode == ORDER2
    assert build_psi(TABLE["32a2"], 13, M).mode == ORDER1_CL
    assert build_psi(TABLE["36a1"], 7, M).mode == ORDER1_CL


@pytest.mark.parametrize("label,p,flag", [("32a2", 7, "supersingular"), ("11a1", 5, "anomalous"),
                                          ("37a1", 37, "bad"), ("14a1", 5, "supersingular")])
def test_bad_primes(label, p, flag):
    with pytest.raises(BadPrime) as info:
        build_psi(TABLE[label], p, M)
    assert info.value.flag == flag


def test_precision_floor():
    with pytest.raises(PrecisionExhausted):
        build_psi(TABLE["11a1"], 7, 2)


def test_zero_and_collapse_over_zp():
    for label, p in [("11a1", 7), ("37a1", 5), ("32a2", 13)]:
        psi = build_psi(TABLE[label], p, M)
        R = UnramifiedRing(p, 1, M)
        assert psi_eval_formal(psi, R(0)).is_zero()
        t = R(p * 17)
        L = formal_eval(psi.log, t)
        if psi.mode == ORDER2:
            expected = (L * (1 - psi.a_p + p)).divide_by_p()
        else:
            expected = (L - L * psi.r.lift()).divide_by_p()
        assert psi_eval_formal(psi, t) == expected


@pytest.mark.parametrize("label,p", [("11a1", 7), ("37a1", 11), ("32a2", 5), ("36a1", 13)])
def test_additive_over_unramified_extension(label, p):
    E = TABLE[label]
    psi = build_psi(E, p, M)
    R = UnramifiedRing(p, 2, M)
    rng = random.Random(p)
    for _ in range(10):
        t1 = R([p * rng.randrange(p ** (M - 1)) for _ in range(2)])
        t2 = R([p * rng.randrange(p ** (M - 1)) for _ in range(2)])
        lhs = psi_eval_formal(psi, formal_add(E, t1, t2))
        assert lhs == psi_eval_formal(psi, t1) + psi_eval_formal(psi, t2)


@pytest.mark.parametrize("label,p", [("32a2", 5), ("32a2", 13), ("36a1", 7), ("x3m2", 13)])
def test_order_one_factorization(label, p):
    # (phi - r') applied to the order-one value gives the order-two value
    psi = build_psi(TABLE[label], p, M)
    R = UnramifiedRing(p, 2, M)
    rng = random.Random(7 * p)
    for _ in range(5):
        t = R([p * rng.randrange(p ** (M - 1)) for _ in range(2)])
        v1 = psi_eval_formal(psi, t)
        rc = psi.r_conj.lift()
        assert v1.frobenius() - v1 * rc == order2_value(psi, t)


@pytest.mark.parametrize("label", sorted(TABLE))
def test_torsion_in_kernel(label):
    E = TABLE[label]
    for p in (7, 13):
        try:
            psi = build_psi(E, p, M)
        except BadPrime:
            continue
        for T, _ in rational_torsion(E):
            v = psi_eval_point(psi, T)
            assert v.valuation() >= M - 1
            assert pdiv_test(psi, [(T, 1)]).in_pdiv


@pytest.mark.parametrize("label,p", [("37a1", 5), ("389a1", 7), ("43a1", 11), ("14a1", 13)])
def test_homomorphism_on_rational_points(label, p):
    E = TABLE[label]
    psi = build_psi(E, p, M)
    pts = list(E.generators) or [T for T, n in rational_torsion(E) if n > 1]
    T = rational_torsion(E)[-1][0]
    P = pts[0]
    Q = E.add(pts[-1], T)
    assert psi_eval_point(psi, E.add(P, Q)) == psi_eval_point(psi, P) + psi_eval_point(psi, Q)
    assert psi_eval_point(psi, E.mul(3, P)) == psi_eval_point(psi, P) * 3
    assert pdiv_test(psi, [(E.mul(p, P), 1)]).in_pdiv
    assert pdiv_test(psi, [(P, p)]).in_pdiv


def test_rank_estimates():
    E = TABLE["37a1"]
    psi = build_psi(E, 5, M)
    G = E.generators[0]
    assert rank_p_estimate(psi, []) == 0
    assert rank_p_estimate(psi, [E.zero()]) == 0
    assert rank_p_estimate(psi, [G, E.mul(2, G)]) == 1
    # values live in Z_p here, so two independent points still span one F_p-line
    E = TABLE["389a1"]
    psi = build_psi(E, 7, M)
    P, Q = E.generators
    assert rank_p_estimate(psi, [P, Q]) == 1
    vp = psi_eval_point(psi, P).lift() % 7
    vq = psi_eval_point(psi, Q).lift() % 7
    assert pdiv_test(psi, [(P, vq), (Q, -vp)]).in_pdiv
    assert rank_p_of_values([psi_eval_point(psi, P)], 7) == 1


@pytest.mark.parametrize("label,p", [("37a1", 7), ("389a1", 5), ("x3m2", 13), ("11a1", 13), ("43a1", 17)])
def test_multiple_parameter_matches_exact_multiplication(label, p):
    E = TABLE[label]
    psi = build_psi(E, p, M)
    pts = list(E.generators) + [E.mul(2, G) for G in E.generators]
    pts += [T for T, n in rational_torsion(E) if n > 1]
    for P in pts:
        m = reduced_order(P, p, p + 1 - psi.a_p)
        if m > 1:
            assert multiple_parameter(P, m, p, M) == point_parameter(E.mul(m, P), p, M)
