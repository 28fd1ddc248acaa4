"""Fixed-precision arithmetic in W(F_{p^d}) = Z_p[x]/(h), with Frobenius and Fermat quotient.

Elements are coefficient vectors over Z/p^M in the power basis of a root of a
monic polynomial ``h`` whose reduction mod p is irreducible.  Each element
carries its own absolute precision; binary operations use the smaller one.
"""
from fractions import Fraction
from functools import lru_cache
import random as _random

from .errors import (NonUnit, PrecisionExhausted, RingMismatch, SingularSeed,
                     NoRoot, DeltaExpError)

DEFAULT_MAX_DEGREE = 12


def is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def valuation(n, p):
    """p-adic valuation of a nonzero int or Fraction."""
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_mod(x, p, m):
    """Image of a p-integral rational in Z/p^m."""
    x = Fraction(x)
    mod = p ** m
    if x.denominator % p == 0:
        raise NonUnit(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, mod) % mod


# --- polynomials over Z/n, coefficient lists low degree first ---------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, h, n):
    """Remainder of a modulo monic h, coefficients mod n."""
    a = [c % n for c in a]
    d = len(h) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for i in range(d + 1):
                a[k - d + i] = (a[k - d + i] - c * h[i]) % n
    return a[:d] + [0] * max(0, d - len(a))


def _pmul(a, b, n):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % n for c in out]


def _mulmod(a, b, h, n):
    """Product of two length-d residues modulo monic h of degree d, as a tuple."""
    d = len(a)
    out = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    for k in range(2 * d - 2, d - 1, -1):
        c = out[k] % n
        if c:
            for i in range(d):
                out[k - d + i] -= c * h[i]
    return tuple(c % n for c in out[:d])


def _ppowmod(a, e, h, n):
    result = [1] + [0] * (len(h) - 2)
    base = _pmod(a, h, n)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, n), h, n)
        base = _pmod(_pmul(base, base, n), h, n)
        e >>= 1
    return result


def _pgcd_modp(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a:
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - c * y) % p
            a = _trim(a)
        a, b = b, a
    return a


def _prime_factors(n):
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


def is_irreducible_mod_p(h, p):
    """Rabin's test for a monic polynomial over F_p."""
    d = len(h) - 1
    if d <= 0 or h[-1] % p != 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _trim(_ppowmod(x, p ** d, h, p)) != [0, 1]:
        return False
    for q in _prime_factors(d):
        xq = _ppowmod(x, p ** (d // q), h, p)
        diff = [(xq[i] if i < len(xq) else 0) - (x[i] if i < 2 else 0) for i in range(d)]
        g = _pgcd_modp(diff, h, p)
        if len(g) > 1:
            return False
    return True


def find_irreducible(p, d):
    """Lexicographically first monic irreducible of degree d over F_p."""
    for k in range(p ** d):
        coeffs, m = [], k
        for _ in range(d):
            coeffs.append(m % p)
            m //= p
        h = coeffs + [1]
        if h[0] != 0 and is_irreducible_mod_p(h, p):
            return h
    raise DeltaExpError(f"no irreducible polynomial of degree {d} over F_{p}")


class UnramifiedRing:
    """W(F_{p^d}) truncated at absolute precision p^prec."""

    def __init__(self, p, d=1, prec=10, modulus=None, max_degree=DEFAULT_MAX_DEGREE):
        if not is_prime(p) or p < 5:
            raise ValueError(f"p must be a prime >= 5, got {p}")
        if d < 1 or d > max_degree:
            raise ValueError(f"residue degree must lie in [1, {max_degree}]")
        if prec < 1:
            raise ValueError("precision must be >= 1")
        self.p, self.d, self.prec = p, d, prec
        self.modulus_int = p ** prec
        if modulus is None:
            modulus = [0, 1] if d == 1 else find_irreducible(p, d)
        modulus = [int(c) % self.modulus_int for c in modulus]
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not is_irreducible_mod_p(modulus, p):
            raise ValueError("modulus is not irreducible mod p")
        self.modulus = tuple(modulus)
        self._frob_gen = self._lift_frobenius_generator()

    def __repr__(self):
        return f"UnramifiedRing(p={self.p}, d={self.d}, prec={self.prec})"

    def __eq__(self, other):
        return (isinstance(other, UnramifiedRing) and self.p == other.p and self.d == other.d
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    def at_precision(self, prec):
        """Same residue field and modulus, different working precision."""
        if prec == self.prec:
            return self
        return _ring_at(self.p, self.d, prec, self.modulus)

    def _lift_frobenius_generator(self):
        # x^p mod p is a root of h; Newton-lift it to a root mod p^prec.
        if self.d == 1:
            return (0,)
        xp = _ppowmod([0, 1], self.p, list(self.modulus), self.p)
        g = PAdicElement(self, xp, self.prec)
        return self._newton(list(self.modulus), g).coeffs

    # -- construction ---------------------------------------------------

    def __call__(self, x, prec=None):
        prec = self.prec if prec is None else min(prec, self.prec)
        if isinstance(x, PAdicElement):
            if x.ring != self:
                raise RingMismatch("element from a different ring")
            return PAdicElement(self, x.coeffs, min(prec, x.prec))
        if isinstance(x, (list, tuple)):
            return PAdicElement(self, list(x), prec)
        if isinstance(x, Fraction):
            return PAdicElement(self, [rational_mod(x, self.p, prec)], prec)
        return PAdicElement(self, [int(x)], prec)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        return self([0, 1]) if self.d > 1 else self(0)

    def random_element(self, rng=None, prec=None):
        rng = rng or _random
        mod = self.p ** (self.prec if prec is None else prec)
        return PAdicElement(self, [rng.randrange(mod) for _ in range(self.d)], prec or self.prec)

    # -- delta-ring structure --------------------------------------------

    def teichmuller(self, a):
        """Multiplicative representative of a residue (int or coefficient tuple)."""
        y = self(a)
        y = PAdicElement(self, [c % self.p for c in y.coeffs], self.prec)
        q = self.p ** self.d
        for _ in range(self.prec):
            y = y ** q
        return y

    def hensel_root(self, f, seed):
        """Root of f (coefficient list, low degree first) congruent to seed mod p."""
        seed = self(seed)
        fx = _poly_eval(f, seed)
        if fx.valuation() < 1:
            raise NoRoot("seed is not a root mod p")
        if _poly_eval(_poly_deriv(f), seed).valuation() > 0:
            raise SingularSeed("derivative vanishes at seed mod p")
        return self._newton(f, seed)

    def _newton(self, f, x):
        df = _poly_deriv(f)
        prec = 1
        while True:
            x = x - _poly_eval(f, x) / _poly_eval(df, x)
            prec *= 2
            if prec >= self.prec:
                break
        # two extra sweeps guard against seeds only accurate mod p
        x = x - _poly_eval(f, x) / _poly_eval(df, x)
        return x


@lru_cache(maxsize=256)
def _ring_at(p, d, prec, modulus):
    return UnramifiedRing(p, d, prec, modulus=list(modulus))


def _poly_deriv(f):
    return [i * c for i, c in enumerate(f)][1:]


def _poly_eval(f, x):
    acc = x.ring.zero()
    for c in reversed(f):
        acc = acc * x + c
    return acc


class PAdicElement:
    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs, prec):
        mod = ring.p ** prec
        coeffs = list(coeffs) + [0] * (ring.d - len(coeffs))
        if len(coeffs) > ring.d:
            coeffs = _pmod(coeffs, list(ring.modulus), mod)
        self.ring = ring
        self.coeffs = tuple(int(c) % mod for c in coeffs)
        self.prec = prec

    @classmethod
    def _raw(cls, ring, coeffs, prec):
        """Trusted constructor: coeffs is a reduced tuple of length d."""
        obj = object.__new__(cls)
        obj.ring, obj.coeffs, obj.prec = ring, coeffs, prec
        return obj

    # -- helpers ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PAdicElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other, self.prec)
        return NotImplemented

    def __repr__(self):
        p, m = self.ring.p, self.prec
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if i == 0 else (f"{c}*x" if i == 1 else f"{c}*x^{i}"))
        return f"{' + '.join(terms) or '0'} + O({p}^{m})"

    # -- ring arithmetic --------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        mod = self.ring.p ** prec
        return PAdicElement._raw(self.ring, tuple((a + b) % mod for a, b in zip(self.coeffs, other.coeffs)),
                                 prec)

    __radd__ = __add__

    def __neg__(self):
        mod = self.ring.p ** self.prec
        return PAdicElement._raw(self.ring, tuple(-a % mod for a in self.coeffs), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.prec, other.prec)
        mod = self.ring.p ** prec
        if self.ring.d == 1:
            return PAdicElement._raw(self.ring, (self.coeffs[0] * other.coeffs[0] % mod,), prec)
        return PAdicElement._raw(self.ring, _mulmod(self.coeffs, other.coeffs, self.ring.modulus, mod), prec)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = PAdicElement(self.ring, [1], self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.valuation() > 0:
            raise NonUnit(f"{self} is not a unit")
        p = self.ring.p
        if self.ring.d == 1:
            return PAdicElement(self.ring, [pow(self.coeffs[0], -1, p ** self.prec)], self.prec)
        # invert the residue in F_{p^d}, then Newton: y <- y(2 - a y)
        res = PAdicElement(self.ring, self.coeffs, 1)
        y = res ** (p ** self.ring.d - 2)
        y = PAdicElement(self.ring, y.coeffs, self.prec)
        k = 1
        while k < self.prec:
            y = y * (2 - self * y)
            k *= 2
        return y

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        mod = self.ring.p ** min(self.prec, other.prec)
        return all((a - b) % mod == 0 for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    # -- p-adic structure -------------------------------------------------

    def valuation(self):
        """Minimum coefficient valuation, capped at the precision."""
        v = self.prec
        for c in self.coeffs:
            if c:
                v = min(v, valuation(c, self.ring.p))
        return v

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def residue(self):
        return tuple(c % self.ring.p for c in self.coeffs)

    def lift(self):
        """Integer representative (d = 1 only)."""
        if self.ring.d != 1:
            raise ValueError("lift() needs residue degree 1")
        return self.coeffs[0]

    def with_prec(self, prec):
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision {self.prec} -> {prec}")
        return PAdicElement(self.ring, self.coeffs, prec)

    def lift_to(self, ring):
        """Same coefficient representative inside a higher-precision ring."""
        return PAdicElement(ring, self.coeffs, ring.prec)

    def divide_by_p(self, k=1):
        """Exact division by p^k; the numerator must be divisible and precision drops by k."""
        p = self.ring.p
        if self.prec <= k:
            raise PrecisionExhausted(f"precision {self.prec} too small to divide by p^{k}")
        pk = p ** k
        if any(c % pk for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {p}^{k}")
        return PAdicElement(self.ring, [c // pk for c in self.coeffs], self.prec - k)

    def frobenius(self):
        if self.ring.d == 1:
            return self
        g = PAdicElement(self.ring, self.ring._frob_gen, self.prec)
        acc = PAdicElement(self.ring, [0], self.prec)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def fermat_quotient(self):
        if self.prec < 2:
            raise PrecisionExhausted("Fermat quotient needs precision >= 2")
        num = self.frobenius() - self ** self.ring.p
        return num.divide_by_p()


def frobenius(x):
    return x.frobenius()


def fermat_quotient(x):
    return x.fermat_quotient()


def teichmuller(ring, a):
    return ring.teichmuller(a)


def hensel_root(ring, f, seed):
    return ring.hensel_root(f, seed)


def cp_polynomial(x, y):
    """C_p(x, y) = (x^p + y^p - (x+y)^p)/p via its integer coefficients."""
    p = x.ring.p
    prec = min(x.prec, y.prec)
    big = x.ring.at_precision(prec + 1)
    X, Y = x.lift_to(big), y.lift_to(big)
    # integer identity on representatives, so one extra digit makes the division exact
    c = (X ** p + Y ** p - (X + Y) ** p).divide_by_p()
    return PAdicElement._raw(x.ring, c.coeffs, prec)
