"""Verifiers for the reciprocity expansions of a weight-2 newform attached to a curve.

Every verifier builds its series from point counts on the curve (optionally
mutated as a negative control), compares both sides coefficientwise and
returns a :class:`ReciprocityReport` naming the first discrepant monomial.
"""
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from math import gcd
import time

from .deltaring import DeltaSeries, default_caps, f1_expansion, flambda_mod_p
from .ellcurve import classify_prime, newform_coefficients, unit_root
from .errors import DeltaExpError, IntegralityViolation, InvalidLevel
from .padic import valuation
from .qseries import (ModPrimePower, PrimeField, QExpansion, eisenstein, resum,
                      twist_f0, twist_fminus1)

DEFAULT_Q_TRUNC = 200
DEFAULT_M = 3


@dataclass
class ReciprocityReport:
    identity: str
    curve: str
    p: int
    caps: object
    truncation: int
    verdict: str
    first_discrepancy: object = None
    millis: int = 0
    detail: str = ""

    @property
    def passed(self):
        return self.verdict == "pass"

    def as_dict(self, timing=True):
        d = {"identity": self.identity, "curve": self.curve, "p": self.p,
             "caps": list(self.caps) if self.caps else None, "truncation": self.truncation,
             "verdict": self.verdict}
        if self.first_discrepancy is not None:
            d["first_discrepancy"] = self.first_discrepancy
        if self.detail:
            d["detail"] = self.detail
        if timing:
            d["millis"] = self.millis
        return d


def _mono(n, e1=0, e2=0):
    parts = []
    if e1:
        parts.append(f"q'^{e1}")
    if e2:
        parts.append(f"q''^{e2}")
    parts.append(f"q^{n}")
    return " ".join(parts)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.millis = int(round(1000 * (time.perf_counter() - self.t0)))


# ---------------------------------------------------------------------------
# shared context
# ---------------------------------------------------------------------------

@dataclass
class _Context:
    curve: object
    p: int
    a: object                 # NewformCoefficients actually used (maybe mutated)
    a_p: int                  # from that table
    trace_a_p: int            # from the point count
    cl: bool


def _context(curve, p, nmax, mutate=False, a=None):
    c = classify_prime(curve, p)
    if not c.good:
        raise DeltaExpError(f"{p} is a bad prime for {curve.label}")
    if a is None:
        a = newform_coefficients(curve, nmax)
        if mutate:
            a = a.mutated()
    return _Context(curve, p, a, a.a(p), c.a_p, c.cl)


def mode_of(cl):
    return "Order1CL" if cl else "Order2"


def _max_val(N, p):
    v, pk = 0, p
    while pk < N:
        v += 1
        pk *= p
    return v


def _root_int(a_p, p, K):
    r, u = unit_root(a_p, p, K)
    return r.lift(), u.lift()


# ---------------------------------------------------------------------------
# (f#)_natural
# ---------------------------------------------------------------------------

def fsharp_natural_coefficients(a, p, mode, N_trunc, r=None):
    """Exact rational coefficients of (f#)_natural for 1 <= n < N_trunc (index 0 is 0).

    ``r`` is an integer representative of the non-unit root (Order1CL only).
    """
    a_p = a.a(p)
    out = [Fraction(0)] * N_trunc
    for n in range(1, N_trunc):
        if mode == "Order2":
            num = (a.a(Fraction(n, p * p)) * Fraction(p * p, n) - a_p * a.a(Fraction(n, p)) * Fraction(p, n)
                   + p * Fraction(a.a(n), n))
        else:
            num = a.a(Fraction(n, p)) * Fraction(p, n) - r * Fraction(a.a(n), n)
        out[n] = num / p
    return out


def fsharp_natural(a, p, mode, N_trunc=DEFAULT_Q_TRUNC, M=DEFAULT_M, r=None):
    """(f#)_natural in Z_p[[q]] mod p^M, stored with valuation shift 2; integrality is certified."""
    N_trunc = min(N_trunc, a.nmax + 1)
    if mode != "Order2" and r is None:
        r, _ = _root_int(a.a(p), p, M + 2 + _max_val(N_trunc, p))
    coeffs = fsharp_natural_coefficients(a, p, mode, N_trunc, r)
    ring = ModPrimePower(p, M, 2)
    for n, c in enumerate(coeffs):
        if c and valuation(c, p) < 0:
            raise IntegralityViolation(f"coefficient of q^{n} is not p-integral", n)
    return QExpansion(ring, [ring.coerce(c) for c in coeffs], N_trunc, 0)


def verify_floare(curve, p, M=DEFAULT_M, N_trunc=DEFAULT_Q_TRUNC, mutate=False, a=None):
    with _Timer() as tm:
        ctx = _context(curve, p, N_trunc, mutate, a)
        N = min(N_trunc, ctx.a.nmax + 1)
        K = M + 2 + _max_val(N, p)
        ring = ModPrimePower(p, M, 2)
        first, detail = None, ""
        try:
            if ctx.cl:
                r, u = _root_int(ctx.a_p, p, K)
                lhs = fsharp_natural_coefficients(ctx.a, p, "Order1CL", N, r)
                rhs = resum(twist_fminus1(ctx.a, p, ring, N), u, p).scale(-u)
            else:
                lhs = fsharp_natural_coefficients(ctx.a, p, "Order2", N)
                rhs = twist_fminus1(ctx.a, p, ring, N)
            for n in range(1, N):
                c = lhs[n]
                if c and valuation(c, p) < 0:
                    first, detail = _mono(n), "left side is not p-integral"
                    break
                if not ring.is_zero(ring.coerce(c) - rhs[n]):
                    first, detail = _mono(n), "coefficients differ"
                    break
        except DeltaExpError as exc:
            first, detail = "setup", str(exc)
    return ReciprocityReport("floare", curve.label, p, None, N, "fail" if first else "pass",
                             first, tm.millis, detail)


# ---------------------------------------------------------------------------
# f# as a delta series
# ---------------------------------------------------------------------------

def _accumulate_powers(base, coeff_of, n_lo, n_hi, out):
    """out += sum_{n_lo <= n < n_hi} coeff_of(n) * base^n, stopping once base^n vanishes."""
    power = base ** n_lo if n_lo > 1 else base
    n = n_lo
    while n < n_hi and not power.is_zero():
        c = coeff_of(n)
        if c:
            out = out + power.scale(c)
        power = power * base
        n += 1
    return out


def fsharp_delta(a, p, mode, caps=None, N_q=None, M=DEFAULT_M, r=None):
    """f# in R((q))[q', q''] mod p^M (valuation shift 2), from the binomial expansions of q^phi and q^{phi^2}."""
    caps = tuple(caps) if caps is not None else default_caps(p)
    N_q = N_q or 8 * p
    if N_q > a.nmax + 1:
        raise IntegralityViolation(f"need a_n up to {N_q - 1}", None)
    work = ModPrimePower(p, M + 1 + _max_val(N_q, p), 2)
    if mode != "Order2" and r is None:
        r, _ = _root_int(a.a(p), p, work.M + 2)
    q = DeltaSeries.q(p, work, N_q, caps)
    q_phi = q.twisted_phi().truncate(N_q)                  # q^p + p q'
    coeff = lambda n: Fraction(a.a(n), n)
    num = DeltaSeries.zero(p, work, N_q, caps)
    if mode == "Order2":
        q_phi2 = q_phi.twisted_phi().truncate(N_q)         # (q^p + p q')^p + p (q'^p + p q'')
        a_p = a.a(p)
        num = _accumulate_powers(q_phi2, coeff, 1, N_q, num)
        num = _accumulate_powers(q_phi, lambda n: -a_p * coeff(n), 1, N_q, num)
        num = num + _accumulate_powers(q, lambda n: p * coeff(n), 1, N_q,
                                       DeltaSeries.zero(p, work, N_q, caps))
    else:
        num = _accumulate_powers(q_phi, coeff, 1, N_q, num)
        num = num + _accumulate_powers(q, lambda n: -r * coeff(n), 1, N_q,
                                       DeltaSeries.zero(p, work, N_q, caps))
    return _certify_integral(num.divide_by_p(), M)


def fsharp_delta_via_phi(a, p, mode, caps=None, N_q=None, M=DEFAULT_M, r=None):
    """Second path: apply (phi^2 - a_p phi + p)/p (or (phi - r)/p) to F = sum (a_n/n) q^n."""
    caps = tuple(caps) if caps is not None else default_caps(p)
    N_q = N_q or 8 * p
    work = ModPrimePower(p, M + 1 + _max_val(N_q, p), 2)
    if mode != "Order2" and r is None:
        r, _ = _root_int(a.a(p), p, work.M + 2)
    E1 = caps[0]
    F = DeltaSeries.from_qexpansion(
        QExpansion.from_dict(work, {n: Fraction(a.a(n), n) for n in range(1, N_q)}, N_q, 0), p, caps)
    # phi(F) is needed below q^N_q: F must be known to N_q/p + E1
    need1 = -(-N_q // p) + E1 + 1
    F1 = DeltaSeries.from_qexpansion(
        QExpansion.from_dict(work, {n: Fraction(a.a(n), n) for n in range(1, need1)}, need1, 0), p, caps)
    phiF = F1.twisted_phi().truncate(N_q)
    if mode == "Order2":
        need2 = -(-need1 // p) + E1 + 1
        F2 = DeltaSeries.from_qexpansion(
            QExpansion.from_dict(work, {n: Fraction(a.a(n), n) for n in range(1, need2)}, need2, 0), p, caps)
        phi2F = F2.twisted_phi().truncate(need1).twisted_phi().truncate(N_q)
        num = phi2F - phiF.scale(a.a(p)) + F.scale(p)
    else:
        num = phiF - F.scale(r)
    return _certify_integral(num.divide_by_p(), M)


def _certify_integral(S, M):
    ring = S.ring
    for (e1, e2), f in S.terms.items():
        for i, v in enumerate(f.coeffs):
            if not ring.is_integral(v):
                raise IntegralityViolation(f"coefficient of {_mono(f.n0 + i, e1, e2)} is not p-integral",
                                           _mono(f.n0 + i, e1, e2))
    return S.change_ring(ModPrimePower(S.p, M, 2))


def floarenoua_rhs(a, p, cl, u_bar, N_q, caps=None):
    """Right side of the mod-p expansion, over F_p."""
    caps = tuple(caps) if caps is not None else default_caps(p)
    Fp = PrimeField(p)
    a_p = a.a(p) % p
    extra = N_q + p * p + 1
    f0 = resum(twist_f0(a, p, extra, Fp), a_p, p)          # f^(0)_[a_p]
    sigma = DeltaSeries.sigma(p, Fp, extra, caps)
    if cl:
        fm1u = resum(twist_fminus1(a, p, Fp, N_q), u_bar, p)
        base = DeltaSeries.from_qexpansion(fm1u.scale(-u_bar), p, caps)
        rhs = base + sigma * (f0 ** p)
    else:
        base = DeltaSeries.from_qexpansion(twist_fminus1(a, p, Fp, N_q), p, caps)
        rhs = base + (sigma ** p) * (f0 ** (p * p)) - (sigma * (f0 ** p)).scale(a_p)
    return rhs.truncate(N_q)


def verify_floarenoua(curve, p, caps=None, N_q=None, M=DEFAULT_M, mutate=False, a=None):
    caps = tuple(caps) if caps is not None else default_caps(p)
    N_q = N_q or 8 * p
    with _Timer() as tm:
        first, detail = None, ""
        try:
            ctx = _context(curve, p, N_q + p * p + 2, mutate, a)
            mode = mode_of(ctx.cl)
            u = _root_int(ctx.a_p, p, 2)[1] if ctx.cl else 0
            lhs = fsharp_delta(ctx.a, p, mode, caps, N_q, M).change_ring(PrimeField(p))
            rhs = floarenoua_rhs(ctx.a, p, ctx.cl, u % p, N_q, caps)
            d = lhs.first_difference(rhs)
            if d is not None:
                first, detail = _mono(d[2], d[0], d[1]), "monomials differ"
        except IntegralityViolation as exc:
            first, detail = exc.location or "integrality", str(exc)
        except DeltaExpError as exc:
            first, detail = "setup", str(exc)
    return ReciprocityReport("floarenoua", curve.label, p, caps, N_q, "fail" if first else "pass",
                             first, tm.millis, detail)


# ---------------------------------------------------------------------------
# identities in F_p[[q]]
# ---------------------------------------------------------------------------

def verify_fruct4(curve, p, N_trunc=DEFAULT_Q_TRUNC, mutate=False, a=None, root="u"):
    """-(F_u)^p + a_p F_u = a_p f^(-1) mod p, with F_u = f^(-1)_[u]."""
    with _Timer() as tm:
        first, detail = None, ""
        try:
            ctx = _context(curve, p, N_trunc, mutate, a)
            N = min(N_trunc, ctx.a.nmax + 1)
            Fp = PrimeField(p)
            r, u = unit_root(ctx.trace_a_p, p, 2)
            c = u.lift() % p if root == "u" else (ctx.trace_a_p - r.lift()) % p
            fm1 = twist_fminus1(ctx.a, p, Fp, N)
            Fu = resum(fm1, c, p)
            a_p = ctx.a_p % p
            lhs = -(Fu ** p) + Fu.scale(a_p)
            rhs = fm1.scale(a_p)
            d = lhs.first_difference(rhs)
            if d is not None:
                first, detail = _mono(d), "coefficients differ"
        except DeltaExpError as exc:
            first, detail = "setup", str(exc)
    return ReciprocityReport("fruct4", curve.label, p, None, N_trunc, "fail" if first else "pass",
                             first, tm.millis, detail)


def find_eigenvalue(f, g, p, probe=3):
    """Scalar c in F_p with g = c f on the first ``probe`` nonzero coefficients of f, by brute force."""
    idx = [n for n, _ in f.items()][:probe]
    for c in range(p):
        if all((g[n] - c * f[n]) % p == 0 for n in idx):
            return c
    return None


def verify_eigen(curve, p, l_list=(2, 3, 5, 7), N_trunc=DEFAULT_Q_TRUNC, mutate=False, a=None):
    """U f^(-1) = 0 and T(l) f^(-1) = (a_l / l) f^(-1) mod p."""
    with _Timer() as tm:
        first, detail = None, ""
        level = curve.conductor()
        try:
            ctx = _context(curve, p, N_trunc, mutate, a)
            N = min(N_trunc, ctx.a.nmax + 1)
            Fp = PrimeField(p)
            f = twist_fminus1(ctx.a, p, Fp, N)
            Uf = f.U(p)
            if not Uf.is_zero():
                first, detail = _mono(Uf.valuation()), "U does not annihilate"
            for l in l_list:
                if first or l == p:
                    continue
                Tf = f.T(l, p, level)
                expected = curve.trace_at(l) * pow(l, -1, p) % p
                brute = find_eigenvalue(f, Tf, p)
                target = f.truncate(Tf.N).scale(expected)
                d = Tf.first_difference(target)
                if d is not None:
                    first = _mono(d)
                    detail = f"T({l}) eigen check failed (brute-force eigenvalue {brute}, expected {expected})"
                elif brute != expected:
                    first, detail = "eigenvalue", f"T({l}) brute-force eigenvalue {brute} != {expected}"
        except DeltaExpError as exc:
            first, detail = "setup", str(exc)
    return ReciprocityReport("eigen", curve.label, p, None, N_trunc, "fail" if first else "pass",
                             first, tm.millis, detail)


def theta_power(f, k):
    for _ in range(k):
        f = f.theta()
    return f


def hasse_check(p, N_trunc=100):
    """First exponent where E_{p-1} mod p differs from 1, or None."""
    E = eisenstein(p - 1, N_trunc).change_ring(PrimeField(p))
    return E.first_difference(QExpansion.one(PrimeField(p), N_trunc))


def verify_theta_congruence(curve, p, N_trunc=DEFAULT_Q_TRUNC, mutate=False, a=None):
    with _Timer() as tm:
        first, detail = None, ""
        try:
            ctx = _context(curve, p, N_trunc, mutate, a)
            N = min(N_trunc, ctx.a.nmax + 1)
            Fp = PrimeField(p)
            lhs = theta_power(ctx.a.series(Fp, N), p - 2)
            rhs = twist_fminus1(ctx.a, p, Fp, N)
            d = lhs.first_difference(rhs)
            if d is not None:
                first, detail = _mono(d), "coefficients differ"
            elif p - 1 <= 200:
                h = hasse_check(p, min(N, 100))
                if h is not None:
                    first, detail = _mono(h), "E_{p-1} is not 1 mod p"
        except DeltaExpError as exc:
            first, detail = "setup", str(exc)
    return ReciprocityReport("theta", curve.label, p, None, N_trunc, "fail" if first else "pass",
                             first, tm.millis, detail)


def verify_f1_shadow(p, lam=1, caps=None, N_q=None, M=DEFAULT_M, label="-"):
    caps = tuple(caps) if caps is not None else default_caps(p)
    N_q = N_q or 8 * p
    with _Timer() as tm:
        first, detail = None, ""
        Fp = PrimeField(p)
        f1 = f1_expansion(p, ModPrimePower(p, M, 0), N_q, caps).change_ring(Fp)
        sigma = DeltaSeries.sigma(p, Fp, N_q, caps)
        d = f1.first_difference(sigma)
        if d is not None:
            first, detail = _mono(d[2], d[0], d[1]), "f^1 mod p is not sigma"
        if first is None:
            fl = flambda_mod_p(lam, p, N_q, caps)
            # independent route: phi(f^1) - lam f^1 with phi computed by the twisted Frobenius
            sig_wide = DeltaSeries.sigma(p, Fp, N_q + p * p, caps)
            other = (sig_wide.twisted_phi() - sig_wide.scale(lam)).truncate(N_q)
            d = fl.first_difference(other)
            if d is not None:
                first, detail = _mono(d[2], d[0], d[1]), "sigma^p - lam sigma differs from phi-twist"
        if first is None:
            lam_bar = lam % p
            for mu in range(p):
                val = fl.sub_star(mu)
                vanishes = val.is_zero()
                root = (pow(mu, p, p) - lam_bar * mu) % p == 0
                if vanishes != root:
                    first, detail = f"mu={mu}", "root set mismatch"
                    break
    return ReciprocityReport("f1shadow", label, p, caps, N_q, "fail" if first else "pass",
                             first, tm.millis, detail)


# ---------------------------------------------------------------------------
# finiteness bound
# ---------------------------------------------------------------------------

def _prime_divisors(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _phi(n):
    r = n
    for l in _prime_divisors(n):
        r = r // l * (l - 1)
    return r


@dataclass(frozen=True)
class BoundInputs:
    N: int
    g: int
    nu: int
    lam: int
    p: int
    r: int
    consistent: bool

    def as_dict(self):
        return asdict(self)


def level_invariants(N):
    """(g, nu, lambda) of X_1(N) from the product and divisor-sum formulas."""
    if N <= 4:
        raise InvalidLevel(f"level {N} <= 4")
    lam = Fraction(N * N, 2)
    for l in _prime_divisors(N):
        lam *= 1 - Fraction(1, l * l)
    nu = Fraction(sum(_phi(d) * _phi(N // d) for d in range(1, N + 1) if N % d == 0), 2)
    g = 1 + lam / 12 - nu / 2
    assert lam.denominator == nu.denominator == g.denominator == 1
    return int(g), int(nu), int(lam)


def level_invariants_enumerated(N):
    """(nu, lambda) by enumerating residues mod N (independent of the closed forms)."""
    prim = sum(1 for c in range(N) for d in range(N) if gcd(gcd(c, d), N) == 1)
    cusp = sum(_phi(gcd(c, N)) for c in range(N))
    return cusp // 2, prim // 2


def finiteness_bound(N, p, r):
    if N <= 4:
        raise InvalidLevel(f"level {N} <= 4")
    if N % p == 0:
        raise ValueError("p must not divide N")
    if r < 0:
        raise ValueError("r must be nonnegative")
    g, nu, lam = level_invariants(N)
    consistent = True
    if N <= 200:
        consistent = level_invariants_enumerated(N) == (nu, lam)
    bound = ((2 * g - 2 + nu) * (p * p - p) // 2 * p ** r + 2 * lam) * lam
    return BoundInputs(N, g, nu, lam, p, r, consistent), bound


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

IDENTITIES = ("floare", "floarenoua", "fruct4", "eigen", "theta", "f1shadow")


def run_identity(name, curve, p, M=DEFAULT_M, N_trunc=DEFAULT_Q_TRUNC, mutate=False, lam=1):
    if name == "floare":
        return verify_floare(curve, p, M, N_trunc, mutate)
    if name == "floarenoua":
        return verify_floarenoua(curve, p, None, None, M, mutate)
    if name == "fruct4":
        return verify_fruct4(curve, p, N_trunc, mutate)
    if name == "eigen":
        return verify_eigen(curve, p, (2, 3, 5, 7), N_trunc, mutate)
    if name == "theta":
        return verify_theta_congruence(curve, p, N_trunc, mutate)
    if name == "f1shadow":
        return verify_f1_shadow(p, lam, M=M, label=curve.label)
    raise ValueError(f"unknown identity {name!r}")
