"""The delta-character psi of an elliptic curve at a good ordinary non-anomalous prime.

Order2:   psi = (1/p) (phi^2 - a_p phi + p) L(T)
Order1CL: psi = (1/p) (phi - r) L(T),  r = u p the non-unit root of x^2 - a_p x + p

L is the formal logarithm (normalized by dx/(2y)).  Rational points are brought
into the formal group by multiplying by the order m of their reduction, and
psi(P) = psi(t(mP)) / m.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import (BadPrime, BadDenominator, CapExceeded, InsufficientTruncation,
                     IntegralityViolation, NotInFormalDomain, PrecisionExhausted)
from .ellcurve import classify_prime, reduced_order, unit_root
from .formalgroup import formal_log, formal_eval, required_truncation
from .padic import UnramifiedRing, PAdicElement, rational_mod

ORDER2 = "Order2"
ORDER1_CL = "Order1CL"
PSI_PRIME_CAP = 500


@dataclass(frozen=True)
class DeltaCharacter:
    curve: object
    p: int
    M: int
    mode: str
    a_p: int
    r: PAdicElement          # non-unit root u p of x^2 - a_p x + p
    u: PAdicElement
    ring: UnramifiedRing     # Z_p at precision M
    log: object = field(repr=False, default=None)

    @property
    def r_conj(self):
        """The unit root r' = a_p - r."""
        return self.ring(self.a_p) - self.r


def build_psi(curve, p, M, N_T=None):
    if M < 3:
        raise PrecisionExhausted("psi needs working precision M >= 3")
    if p > PSI_PRIME_CAP:
        raise CapExceeded(f"p = {p} beyond the psi evaluation cap {PSI_PRIME_CAP}")
    c = classify_prime(curve, p)
    if not c.good:
        raise BadPrime(f"{curve.label} has bad reduction at {p}", "bad")
    if c.supersingular:
        raise BadPrime(f"{p} is supersingular for {curve.label}", "supersingular")
    if c.anomalous:
        raise BadPrime(f"{p} is anomalous for {curve.label}", "anomalous")
    r, u = unit_root(c.a_p, p, M)
    ring = UnramifiedRing(p, 1, M)
    log = formal_log(curve, N_T or required_truncation(1, M, p))
    mode = ORDER1_CL if c.cl else ORDER2
    return DeltaCharacter(curve, p, M, mode, c.a_p, r, u, ring, log)


def _log_at(psi, t):
    """L(t), enlarging the stored truncation when needed (doubling retry)."""
    log = psi.log
    while True:
        try:
            return formal_eval(log, t)
        except InsufficientTruncation as exc:
            log = formal_log(psi.curve, max(2 * log.N_T, exc.needed))


def order2_value(psi, t):
    La, Lb, Lc = _log_at(psi, t), _log_at(psi, t.frobenius()), _log_at(psi, t.frobenius().frobenius())
    return _divide(Lc - Lb * psi.a_p + La * psi.p, psi.p)


def order1_value(psi, t):
    if psi.mode != ORDER1_CL:
        raise BadPrime("the order-one character exists only at CL primes", "not-CL")
    L0, L1 = _log_at(psi, t), _log_at(psi, t.frobenius())
    return _divide(L1 - L0 * psi.r.lift(), psi.p)


def _divide(num, p):
    if num.valuation() < 1:
        raise IntegralityViolation(f"numerator {num} is not divisible by {p}", None)
    return num.divide_by_p(1)


def psi_eval_formal(psi, t):
    """psi at a formal parameter t (v_p(t) >= 1) over any W(F_{p^d}); precision drops by one."""
    if t.ring.p != psi.p:
        raise ValueError("parameter lives over a different prime")
    if t.prec > psi.M:
        t = t.with_prec(psi.M)
    if not t.is_zero() and t.valuation() < 1:
        raise NotInFormalDomain("psi is evaluated on parameters with v_p(t) >= 1")
    if psi.mode == ORDER1_CL:
        return order1_value(psi, t)
    return order2_value(psi, t)


def point_parameter(P, p, M):
    """T = -x/y of a rational point in the formal group, as an element of Z_p mod p^M."""
    if P.is_zero():
        return UnramifiedRing(p, 1, M).zero()
    t = Fraction(-P.X, P.Y)
    if t.denominator % p == 0 or t.numerator % p:
        raise BadDenominator(f"{P} is not in the formal group at {p}")
    return UnramifiedRing(p, 1, M)(rational_mod(t, p, M))


def multiple_parameter(P, m, p, M):
    """Parameter of m*P, where m is the order of P mod p, computed mod p^M.

    Exact multiplication squares the height at every doubling, so the chain
    P, 2P, ..., (m-1)P is run in Z/p^M instead.  None of those steps meets a
    non-unit denominator; the last step does, and its denominator is exactly
    the parameter's valuation, so it is kept as a numerator/denominator pair.
    """
    E = P.curve
    mod = p ** M
    x0, y0 = rational_mod(P.x, p, M), rational_mod(P.y, p, M)
    x, y = x0, y0
    for k in range(1, m - 1):
        if k == 1:
            lam = (3 * x * x + E.a4) * pow(2 * y, -1, mod) % mod
        else:
            lam = (y - y0) * pow(x - x0, -1, mod) % mod
        x3 = (lam * lam - x - x0) % mod
        x, y = x3, (lam * (x - x3) - y) % mod
    if m == 2:
        num, den = 3 * x0 * x0 + E.a4, 2 * y0
    else:
        num, den = y - y0, x - x0
    # x(mP) = X / den^2, y(mP) = Y / den^3, and X, Y are units
    X = num * num - (x + x0) * den * den
    Y = -(y * den ** 3 + num * (X - x * den * den))
    t = -X * den * pow(Y, -1, mod) % mod
    return UnramifiedRing(p, 1, M)(t)


def psi_eval_point(psi, P):
    p = psi.p
    if P.is_zero():
        return psi.ring.zero().with_prec(psi.M - 1)
    if not P.curve.contains(P):
        raise BadDenominator(f"{P} is not on the curve")
    group_order = p + 1 - psi.a_p
    m = reduced_order(P, p, group_order)
    if m > p + 1 + 2 * isqrt(p) + 2:
        raise CapExceeded(f"reduction order {m} too large")
    if m == 1:
        t = point_parameter(P, p, psi.M)
    else:
        t = multiple_parameter(P, m, p, psi.M)
    val = psi_eval_formal(psi, t)
    return val * Fraction(1, m)


@dataclass(frozen=True)
class PDivResult:
    in_pdiv: bool
    value: PAdicElement

    def as_dict(self):
        v = self.value
        return {"in_pdiv": self.in_pdiv, "value": str(v.lift()), "precision": v.prec,
                "valuation": v.valuation(), "residue": v.lift() % v.ring.p}


def pdiv_test(psi, points):
    """Is sum m_i P_i in E_tors + pE?  Decided by v_p(sum m_i psi(P_i)) >= 1."""
    s = psi.ring.zero().with_prec(psi.M - 1)
    for P, m in points:
        s = s + psi_eval_point(psi, P) * m
    return PDivResult(s.valuation() >= 1, s)


def _rank_mod_p(rows, p):
    rows = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def rank_p_estimate(psi, points):
    """dim over F_p of the span of psi(P_i) mod p."""
    vectors = [psi_eval_point(psi, P).residue() for P in points]
    if not vectors:
        return 0
    return _rank_mod_p(vectors, psi.p)


def rank_p_of_values(values, p):
    """Same rank for values already computed (possibly over W(F_{p^d}))."""
    vectors = [v.residue() for v in values]
    return _rank_mod_p(vectors, p) if vectors else 0
