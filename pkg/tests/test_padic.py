import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from deltaexp.errors import NonUnit, NoRoot, PrecisionExhausted, RingMismatch, SingularSeed
from deltaexp.padic import (UnramifiedRing, cp_polynomial, find_irreducible, hensel_root,
                            is_irreducible_mod_p, rational_mod, teichmuller)


def brute_roots(f, mod):
    return [x for x in range(mod) if sum(c * x ** i for i, c in enumerate(f)) % mod == 0]


def test_inverse_small():
    R = UnramifiedRing(5, 1, 4)
    assert R(1).inverse().lift() == 1
    assert R(2).inverse().lift() == 313
    assert pow(2, -1, 625) == 313


def test_inverse_of_nonunit_raises():
    R = UnramifiedRing(7, 2, 4)
    with pytest.raises(NonUnit):
        R(7).inverse()


def test_frobenius_fixes_zp():
    R = UnramifiedRing(7, 1, 5)
    rng = random.Random(1)
    for _ in range(50):
        x = R.random_element(rng)
        assert x.frobenius() == x


@pytest.mark.parametrize("p,d", [(5, 2), (7, 3), (11, 2)])
def test_frobenius_is_an_automorphism_of_order_d(p, d):
    R = UnramifiedRing(p, d, 5)
    rng = random.Random(p * d)
    for _ in range(100):
        x, y = R.random_element(rng), R.random_element(rng)
        z = x
        for _ in range(d):
            z = z.frobenius()
        assert z == x
        assert (x * y).frobenius() == x.frobenius() * y.frobenius()
        assert (x + y).frobenius() == x.frobenius() + y.frobenius()


def test_fermat_quotient_examples():
    R = UnramifiedRing(5, 1, 6)
    assert R(0).fermat_quotient().is_zero()
    assert R(1).fermat_quotient().is_zero()
    assert R(5).fermat_quotient() == R(-624, 5)
    for a in range(5):
        assert R.teichmuller(a).fermat_quotient().is_zero()


def test_fermat_quotient_over_extension_matches_definition():
    R = UnramifiedRing(5, 2, 5)
    x = R([3, 2])
    num = x.frobenius() - x ** 5
    assert all(c % 5 == 0 for c in num.coeffs)
    assert x.fermat_quotient() == R([c // 5 for c in num.coeffs], 4)


def test_teichmuller_values():
    R = UnramifiedRing(5, 1, 3)
    assert teichmuller(R, 0).is_zero()
    assert teichmuller(R, 1) == R(1)
    t = teichmuller(R, 2)
    assert t.lift() == 57
    # oracle: the unique 4th root of unity mod 125 reducing to 2
    assert [x for x in range(125) if pow(x, 4, 125) == 1 and x % 5 == 2] == [57]


@pytest.mark.parametrize("p,d", [(5, 1), (5, 2), (7, 3)])
def test_teichmuller_is_fixed_by_power(p, d):
    R = UnramifiedRing(p, d, 4)
    for a in [(1,) + (0,) * (d - 1), tuple(range(1, d + 1)), (2,) * d]:
        t = R.teichmuller(a)
        assert t ** (p ** d) == t
        assert t.frobenius() == t ** p


def test_hensel_linear():
    R = UnramifiedRing(7, 1, 5)
    assert hensel_root(R, [-12, 1], 5) == R(12)


def test_hensel_square_roots_of_six_match_brute_force():
    R = UnramifiedRing(5, 1, 3)
    roots = brute_roots([-6, 0, 1], 125)
    assert roots == [16, 109]
    assert hensel_root(R, [-6, 0, 1], 1).lift() == 16
    assert hensel_root(R, [-6, 0, 1], 4).lift() == 109


def test_hensel_errors():
    R = UnramifiedRing(5, 1, 3)
    with pytest.raises(NoRoot):
        hensel_root(R, [-6, 0, 1], 2)
    with pytest.raises(SingularSeed):
        hensel_root(R, [0, 0, 1], 0)


def test_rational_coercion():
    R = UnramifiedRing(5, 1, 4)
    x = R(Fraction(1, 3))
    assert (x * 3).lift() == 1
    assert rational_mod(Fraction(2, 7), 5, 4) * 7 % 625 == 2


def test_precision_tracking():
    R = UnramifiedRing(5, 1, 6)
    x = R(25 * 3)
    assert x.valuation() == 2
    assert x.divide_by_p(2) == R(3, 4)
    assert x.divide_by_p(2).prec == 4
    with pytest.raises(PrecisionExhausted):
        R(3, 2).with_prec(3)


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        UnramifiedRing(5, 1, 4)(1) + UnramifiedRing(7, 1, 4)(1)


def test_irreducible_moduli():
    for p, d in [(5, 2), (5, 3), (7, 4), (11, 2)]:
        h = find_irreducible(p, d)
        assert is_irreducible_mod_p(h, p)
        # no roots in F_p is necessary for irreducibility
        assert not brute_roots(h, p)


def _elements(p, d, prec):
    mod = p ** prec
    return st.lists(st.integers(0, mod - 1), min_size=d, max_size=d)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), pd=st.sampled_from([(5, 1), (7, 2), (13, 3)]))
def test_delta_axioms_property(data, pd):
    p, d = pd
    R = UnramifiedRing(p, d, 6)
    x = R(data.draw(_elements(p, d, 6)))
    y = R(data.draw(_elements(p, d, 6)))
    dx, dy = x.fermat_quotient(), y.fermat_quotient()
    assert (x + y).fermat_quotient() == dx + dy + cp_polynomial(x, y).with_prec(5)
    assert (x * y).fermat_quotient() == (x ** p * dy + y ** p * dx + dx * dy * p).with_prec(5)


def test_cp_polynomial_integer_oracle():
    R = UnramifiedRing(7, 1, 5)
    for a, b in [(2, 3), (10, 41), (-5, 8)]:
        expected = (a ** 7 + b ** 7 - (a + b) ** 7) // 7
        assert cp_polynomial(R(a), R(b)) == R(expected)
