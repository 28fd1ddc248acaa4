"""Formal group of y^2 = x^3 + a4 x + a6 at the origin, in the parameter T = -x/y.

The invariant differential used is dx/(2y), so the logarithm starts L(T) = T + ...
(with dx/y it would start 2T; the two differ by the unit 2).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InsufficientTruncation, NotInFormalDomain
from .padic import PAdicElement


def _mul(a, b, N):
    out = [0] * N
    for i, x in enumerate(a[:N]):
        if x:
            for j, y in enumerate(b[:N - i]):
                if y:
                    out[i + j] += x * y
    return out


def _inverse_unit(u, N):
    """1/u for an integer series with u[0] = 1."""
    inv = [0] * N
    inv[0] = 1
    for n in range(1, N):
        inv[n] = -sum(u[k] * inv[n - k] for k in range(1, min(n, len(u) - 1) + 1))
    return inv


@lru_cache(maxsize=None)
def _w_series(a4, a6, N):
    w = [0] * N
    if N > 3:
        w[3] = 1
    while True:
        w2 = _mul(w, w, N)
        w3 = _mul(w2, w, N)
        new = [0] * N
        if N > 3:
            new[3] = 1
        for n in range(N - 1):
            new[n + 1] += a4 * w2[n]
        for n in range(N):
            new[n] += a6 * w3[n]
        if new == w:
            return tuple(w)
        w = new


def weierstrass_expansion(curve, N_T):
    """(x, y, w) with w = sum w[n] T^n, x = T/w, y = -1/w as Laurent dicts {exponent: int}.

    w is exact mod T^N_T; x is exact below T^(N_T - 5) and y below T^(N_T - 6).
    """
    if N_T < 5:
        raise ValueError("N_T must be at least 5")
    w = list(_w_series(curve.a4, curve.a6, N_T))
    u = w[3:]                       # w = T^3 u
    uinv = _inverse_unit(u, len(u))
    x = {n - 2: c for n, c in enumerate(uinv) if c and n - 2 < N_T - 5}
    y = {n - 3: -c for n, c in enumerate(uinv) if c and n - 3 < N_T - 6}
    return x, y, {n: c for n, c in enumerate(w) if c}


@dataclass(frozen=True)
class FormalLog:
    """L(T) = sum c_n T^n / n, known for n < N_T."""
    a4: int
    a6: int
    N_T: int
    c: tuple            # c[n] for 0 <= n < N_T; c[0] = 0, c[1] = 1
    normalization: str = "dx/(2y)"

    def coefficient(self, n):
        return Fraction(self.c[n], n) if n else Fraction(0)

    def derivative_coefficients(self):
        return list(self.c[1:])

    def evaluate(self, t):
        return formal_eval(self, t)


@lru_cache(maxsize=None)
def _log_coefficients(a4, a6, N_T):
    w = _w_series(a4, a6, N_T + 3)
    u = list(w[3:])
    n = len(u)
    uinv = _inverse_unit(u, n)
    du = [k * u[k] for k in range(n)]          # T u'
    r = _mul(du, uinv, n)
    # L' = 1 + T u' / (2u)
    c = [0] * N_T
    for k in range(N_T - 1):
        if r[k] % 2:
            raise ArithmeticError("invariant differential is not integral")
        c[k + 1] = (1 if k == 0 else 0) + r[k] // 2
    return tuple(c)


def formal_log(curve, N_T):
    if N_T < 5:
        raise ValueError("N_T must be at least 5")
    return FormalLog(curve.a4, curve.a6, N_T, _log_coefficients(curve.a4, curve.a6, N_T))


def _floor_log(n, p):
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


def required_truncation(v, M, p):
    """Smallest N with n v - floor(log_p n) >= M for every n >= N."""
    if v < 1:
        raise NotInFormalDomain("parameter must have positive valuation")
    N = 1
    while N * v - _floor_log(N, p) < M:
        N += 1
    return max(N, 5)


def formal_eval(L, t):
    """L(t) for v_p(t) >= 1, certified to the precision of t."""
    p = t.ring.p
    M = t.prec
    if t.is_zero() or t.valuation() >= M:
        return t.ring.zero().with_prec(M)
    v = t.valuation()
    if v < 1:
        raise NotInFormalDomain(f"v_p(t) = {v} < 1")
    need = required_truncation(v, M, p)
    if need > L.N_T:
        raise InsufficientTruncation(f"need N_T >= {need}, have {L.N_T}", need)
    K = _floor_log(L.N_T, p)
    big = t.ring.at_precision(M + K)
    tb = t.lift_to(big)
    acc = big.zero()
    power = big.one()
    for n in range(1, L.N_T):
        power = power * tb
        cn = L.c[n]
        if not cn:
            continue
        k, m = 0, n
        while m % p == 0:
            m //= p
            k += 1
        term = power * (cn * pow(m, -1, p ** (M + K)))
        if k:
            term = term.divide_by_p(k)
        acc = acc + term
    return PAdicElement(t.ring, acc.coeffs, M)


def formal_add(curve, t1, t2, N_T=None):
    """Parameter of the sum of the points with parameters t1, t2 (chord in the (z, w) chart)."""
    ring = t1.ring
    M = min(t1.prec, t2.prec)
    t1, t2 = t1.with_prec(M), t2.with_prec(M)
    v = min(t1.valuation(), t2.valuation())
    if v < 1:
        raise NotInFormalDomain("parameters must have positive valuation")
    if t1.is_zero() or t1.valuation() >= M:
        return t2
    if t2.is_zero() or t2.valuation() >= M:
        return t1
    # terms A_n * (degree n-1 in t1, t2) vanish once (n - 1) v >= M
    need = M // v + 2
    if N_T is not None and N_T < need:
        raise InsufficientTruncation(f"need N_T >= {need}, have {N_T}", need)
    w = _w_series(curve.a4, curve.a6, max(need, 5))
    p1 = [ring.one().with_prec(M)]
    p2 = [ring.one().with_prec(M)]
    for _ in range(len(w)):
        p1.append(p1[-1] * t1)
        p2.append(p2[-1] * t2)
    lam = ring.zero().with_prec(M)
    for n, A in enumerate(w):
        if A:
            h = ring.zero().with_prec(M)
            for j in range(n):
                h = h + p1[j] * p2[n - 1 - j]
            lam = lam + h * A
    w1 = ring.zero().with_prec(M)
    for n, A in enumerate(w):
        if A:
            w1 = w1 + p1[n] * A
    nu = w1 - lam * t1
    a4, a6 = curve.a4, curve.a6
    num = lam * nu * (2 * a4) + lam * lam * nu * (3 * a6)
    den = lam * lam * a4 + lam * lam * lam * a6 + 1
    z3 = -t1 - t2 - num / den
    return -z3
