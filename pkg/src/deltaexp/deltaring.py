"""Truncated delta-power-series rings R((q))[q', q''] with the twisted Frobenius.

An element is a finite sum of monomials (q')^e1 (q'')^e2 with q-expansion
coefficients.  Monomials with e1 > E1 or e2 > E2 are discarded; for p >= 5 and
E1 >= 2 the discarded set is an ideal stable under the twisted Frobenius
(phi(q')^(E1+1) = (q'^p + p q'')^(E1+1) stays inside it), so every operation here
is exact in the quotient.
"""
from fractions import Fraction
from math import comb
import json

from .errors import (CapExceeded, OrderOverflow, HasSecondDerivative, PrecisionExhausted,
                     RingMismatch, NotIntegral)
from .qseries import QExpansion, ModPrimePower, PrimeField, ExactRational, ring_from_json


def default_caps(p):
    return (p + 1, 2)


def _gbinom(n, k):
    """Binomial coefficient C(n, k) for any integer n (generalized for n < 0)."""
    if n >= 0:
        return comb(n, k)
    return (-1) ** k * comb(k - n - 1, k)


def _useful_powers(ring, kmax):
    """Largest k <= kmax with p^k not identically zero in ring."""
    if isinstance(ring, PrimeField):
        return 0
    if isinstance(ring, ModPrimePower):
        return min(kmax, ring.M - 1)
    return kmax


class DeltaSeries:
    """Element of R((q))[q', q''] truncated at q^N and at degree caps (E1, E2)."""

    __slots__ = ("p", "ring", "caps", "N", "terms")

    def __init__(self, p, ring, terms, caps=None, N=None):
        self.p = p
        self.ring = ring
        self.caps = tuple(caps) if caps is not None else default_caps(p)
        E1, E2 = self.caps
        kept = {}
        for (e1, e2), f in terms.items():
            if e1 > E1 or e2 > E2:
                continue
            if f.ring != ring:
                raise RingMismatch(f"{f.ring} vs {ring}")
            kept[(e1, e2)] = f
        Ns = [f.N for f in kept.values()]
        if N is None:
            N = min(Ns, default=0)
        else:
            N = min([N] + Ns)
        self.N = N
        trimmed = ((k, f.truncate(N)) for k, f in sorted(kept.items()))
        self.terms = {k: f for k, f in trimmed if not f.is_zero()}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p, ring, N, caps=None):
        return cls(p, ring, {}, caps, N)

    @classmethod
    def from_qexpansion(cls, f, p, caps=None, e1=0, e2=0):
        return cls(p, f.ring, {(e1, e2): f}, caps, f.N)

    @classmethod
    def constant(cls, c, p, ring, N, caps=None):
        return cls.from_qexpansion(QExpansion.monomial(ring, 0, N, c), p, caps)

    @classmethod
    def q(cls, p, ring, N, caps=None):
        return cls.from_qexpansion(QExpansion.monomial(ring, 1, N), p, caps)

    @classmethod
    def qprime(cls, p, ring, N, caps=None):
        return cls.from_qexpansion(QExpansion.monomial(ring, 0, N), p, caps, e1=1)

    @classmethod
    def qsecond(cls, p, ring, N, caps=None):
        return cls.from_qexpansion(QExpansion.monomial(ring, 0, N), p, caps, e2=1)

    @classmethod
    def sigma(cls, p, ring, N, caps=None):
        """sigma = q' / q^p."""
        return cls.from_qexpansion(QExpansion.monomial(ring, -p, N), p, caps, e1=1)

    # -- basic queries ------------------------------------------------------

    @property
    def order(self):
        if any(e2 for (_, e2) in self.terms):
            return 2
        return 1

    def coefficient(self, e1=0, e2=0):
        f = self.terms.get((e1, e2))
        return f if f is not None else QExpansion.zero(self.ring, self.N)

    def monomials(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        parts = [f"({f!r})*q'^{e1}*q''^{e2}" for (e1, e2), f in self.terms.items()]
        return " + ".join(parts) if parts else f"0 + O(q^{self.N})"

    def _check(self, other):
        if not isinstance(other, DeltaSeries):
            raise TypeError("expected a DeltaSeries")
        if other.ring != self.ring or other.p != self.p:
            raise RingMismatch("delta series over different rings")
        if other.caps != self.caps:
            raise RingMismatch(f"caps differ: {self.caps} vs {other.caps}")

    def first_difference(self, other):
        """First (e1, e2, n) where the two series differ below the common truncation, or None."""
        self._check(other)
        N = min(self.N, other.N)
        for key in sorted(set(self.terms) | set(other.terms)):
            d = self.coefficient(*key).truncate(N).first_difference(other.coefficient(*key).truncate(N))
            if d is not None:
                return (key[0], key[1], d)
        return None

    def __eq__(self, other):
        if not isinstance(other, DeltaSeries):
            return NotImplemented
        return (self.ring == other.ring and self.caps == other.caps
                and self.first_difference(other) is None)

    __hash__ = None

    # -- ring operations ----------------------------------------------------

    def truncate(self, N):
        return DeltaSeries(self.p, self.ring, self.terms, self.caps, min(N, self.N))

    def change_ring(self, ring):
        return DeltaSeries(self.p, ring, {k: f.change_ring(ring) for k, f in self.terms.items()},
                           self.caps, self.N)

    def _combine(self, other, sign):
        self._check(other)
        N = min(self.N, other.N)
        out = {k: f.truncate(N) for k, f in self.terms.items()}
        for k, g in other.terms.items():
            g = g.truncate(N)
            if sign < 0:
                g = -g
            out[k] = out[k] + g if k in out else g
        return DeltaSeries(self.p, self.ring, out, self.caps, N)

    def __add__(self, other):
        if not isinstance(other, DeltaSeries):
            other = DeltaSeries.constant(other, self.p, self.ring, self.N, self.caps)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, DeltaSeries):
            other = DeltaSeries.constant(other, self.p, self.ring, self.N, self.caps)
        return self._combine(other, -1)

    def __neg__(self):
        return DeltaSeries(self.p, self.ring, {k: -f for k, f in self.terms.items()}, self.caps, self.N)

    def scale(self, c):
        return DeltaSeries(self.p, self.ring, {k: f.scale(c) for k, f in self.terms.items()},
                           self.caps, self.N)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            other = DeltaSeries.from_qexpansion(other, self.p, self.caps)
        if not isinstance(other, DeltaSeries):
            return self.scale(other)
        self._check(other)
        E1, E2 = self.caps
        out = {}
        for (a, b), f in self.terms.items():
            for (c, d), g in other.terms.items():
                key = (a + c, b + d)
                if key[0] > E1 or key[1] > E2:
                    continue
                h = f * g
                out[key] = out[key] + h if key in out else h
        N = min([self.N, other.N] + [h.N for h in out.values()])
        return DeltaSeries(self.p, self.ring, out, self.caps, N)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        result = DeltaSeries.constant(1, self.p, self.ring, self.N, self.caps)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_qpower(self, k):
        """Multiply by q^k (k may be negative)."""
        return DeltaSeries(self.p, self.ring, {m: f.shift(k) for m, f in self.terms.items()},
                           self.caps, self.N + k)

    # -- Frobenius and delta ------------------------------------------------

    def twisted_phi(self):
        """q -> q^p + p q', q' -> q'^p + p q'', identity on Z_p scalars."""
        p, ring = self.p, self.ring
        E1, E2 = self.caps
        if any(e2 for (_, e2) in self.terms):
            raise OrderOverflow("phi of q'' would need q'''")
        kmax = _useful_powers(ring, E1)
        out = {}
        Ns = []
        for (e1, _), c in self.terms.items():
            # c(q^p + p q') = sum_k p^k q'^k sum_n C(n,k) c_n q^{p(n-k)}
            for k in range(kmax + 1):
                pk = p ** k
                n0 = p * (c.n0 - k)
                Nk = p * (c.N - k)
                coeffs = [0] * max(0, Nk - n0)
                for n, cn in c.items():
                    b = _gbinom(n, k)
                    if b:
                        coeffs[p * (n - k) - n0] = pk * b * cn
                Dk = QExpansion(ring, coeffs, Nk, n0)
                # times (q'^p + p q'')^e1 = sum_j C(e1,j) p^j q''^j q'^{p(e1-j)}
                for j in range(e1 + 1):
                    key = (k + p * (e1 - j), j)
                    if key[0] > E1 or key[1] > E2:
                        continue
                    mult = comb(e1, j) * p ** j
                    term = Dk if mult == 1 else QExpansion(ring, [mult * v for v in Dk.coeffs], Nk, n0)
                    Ns.append(Nk)
                    out[key] = out[key] + term if key in out else term
        N = min(Ns) if Ns else p * self.N
        if N < 1:
            raise CapExceeded("twisted Frobenius leaves no q-coefficients at this truncation")
        return DeltaSeries(p, ring, out, self.caps, N)

    def divide_by_p(self):
        """Exact division by p, certified coefficientwise; the ring loses one digit."""
        ring = self.ring
        if isinstance(ring, PrimeField):
            raise PrecisionExhausted("cannot divide by p over F_p")
        if isinstance(ring, ModPrimePower):
            if ring.M < 2:
                raise PrecisionExhausted("no precision left to divide by p")
            new = ring.lowered()
            out = {}
            for k, f in self.terms.items():
                cs = []
                for i, v in enumerate(f.coeffs):
                    v %= ring.mod
                    if v % self.p:
                        raise NotIntegral(f"coefficient of q^{f.n0 + i} at {k} not divisible by p")
                    cs.append(v // self.p)
                out[k] = QExpansion(new, cs, f.N, f.n0)
            return DeltaSeries(self.p, new, out, self.caps, self.N)
        return self.scale(ring.inverse_int(self.p))

    def delta(self):
        """(phi(F) - F^p) / p."""
        if isinstance(self.ring, PrimeField):
            raise PrecisionExhausted("delta needs at least two digits of precision")
        return (self.twisted_phi() - self ** self.p).divide_by_p()

    # -- substitutions ------------------------------------------------------

    def sub_natural(self):
        """Set q' = q'' = 0."""
        return self.coefficient(0, 0)

    def sub_star(self, lam):
        """Set q' = lam q^p; order-one input only."""
        for (e1, e2), f in self.terms.items():
            if e2 and not f.is_zero():
                raise HasSecondDerivative("sub_star needs an element without q''")
        ring, p = self.ring, self.p
        lam = ring.coerce(lam)
        total = QExpansion.zero(ring, self.N)
        for (e1, _), f in self.terms.items():
            c = lam if e1 else ring.coerce(1)
            for _ in range(e1 - 1):
                c = ring.fix_product(c * lam)
            total = total + f.scale(ring.value(c)).shift(p * e1)
        return total.truncate(self.N)

    # -- serialization ------------------------------------------------------

    def to_json(self):
        d = dict(self.ring.to_json())
        return {"p": self.p, "ring": d, "r": self.order, "caps": list(self.caps), "N": self.N,
                "monomials": [{"e1": e1, "e2": e2, "coeff": f.to_json()}
                              for (e1, e2), f in self.terms.items()]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, d):
        if isinstance(d, str):
            d = json.loads(d)
        ring = ring_from_json(d["ring"])
        terms = {(m["e1"], m["e2"]): QExpansion.from_json(m["coeff"]) for m in d["monomials"]}
        return cls(d["p"], ring, terms, d["caps"], d["N"])


# module-level spellings

def twisted_phi(F):
    return F.twisted_phi()


def delta_op(F):
    return F.delta()


def sub_natural(F):
    return F.sub_natural()


def sub_star(F, lam):
    return F.sub_star(lam)


def cp_series(X, Y):
    """C_p(X, Y) = (X^p + Y^p - (X + Y)^p) / p, expanded without division."""
    p = X.p
    out = None
    for k in range(1, p):
        term = (X ** k) * (Y ** (p - k))
        term = term.scale(-(comb(p, k) // p))
        out = term if out is None else out + term
    return out


def f1_expansion(p, ring, N, caps=None):
    """sum_{n>=1} (-1)^(n-1) p^(n-1)/n * (q'/q^p)^n, the terms surviving in ``ring``."""
    caps = tuple(caps) if caps is not None else default_caps(p)
    E1 = caps[0]
    if E1 < 1:
        raise CapExceeded("f^1 needs q'-degree at least 1")
    terms = {}
    for n in range(1, E1 + 1):
        c = Fraction((-1) ** (n - 1) * p ** (n - 1), n)
        if ring.is_zero(ring.coerce(c)):
            continue
        terms[(n, 0)] = QExpansion.monomial(ring, -p * n, N, c)
    return DeltaSeries(p, ring, terms, caps, N)


def flambda_mod_p(lam, p, N, caps=None):
    """sigma^p - lam sigma over F_p."""
    ring = PrimeField(p)
    caps = tuple(caps) if caps is not None else default_caps(p)
    # sigma is an exact monomial; give it slack so its powers stay known to q^N
    s = DeltaSeries.sigma(p, ring, N + p * p, caps)
    return (s ** p - s.scale(lam)).truncate(N)
