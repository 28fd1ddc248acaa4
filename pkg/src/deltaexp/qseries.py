"""Truncated Laurent q-series over exact coefficient rings.

Three coefficient rings are supported:

* ``ExactRational`` -- coefficients are :class:`fractions.Fraction`;
* ``PrimeField(p)`` -- ints in ``[0, p)``;
* ``ModPrimePower(p, M, s)`` -- the group ``p^-s Z_p / p^M Z_p``.  A value ``x``
  is stored as the int ``v = x * p^s`` reduced mod ``p^(M+s)``, so p-power
  denominators up to ``p^s`` are held exactly.  Sums are exact; a product is
  exact to ``p^M`` when both factors are p-integral, and loses one digit per
  power of p in a factor's denominator (standard fixed-absolute-precision
  behaviour).

A :class:`QExpansion` knows its coefficients for ``n0 <= n < N``.
"""
from fractions import Fraction
from functools import lru_cache
import json
import math

from .errors import (RingMismatch, NegativePower, NonInvertibleL, NonInvertibleIndex,
                     NotIntegral, CapExceeded, PrecisionExhausted)
from .padic import PAdicElement, valuation

DEFAULT_TRUNCATION = 256
BERNOULLI_CAP = 200


# ---------------------------------------------------------------------------
# coefficient rings
# ---------------------------------------------------------------------------

class ExactRational:
    name = "QQ"
    p = None

    def __eq__(self, other):
        return isinstance(other, ExactRational)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "ExactRational()"

    def coerce(self, x):
        if isinstance(x, PAdicElement):
            raise RingMismatch("p-adic elements have no exact rational value")
        return Fraction(x)

    def normalize(self, v):
        return v

    def fix_product(self, v):
        return v

    def is_zero(self, v):
        return v == 0

    def inverse_int(self, n):
        if n == 0:
            raise ZeroDivisionError("1/0")
        return Fraction(1, n)

    def divide_by_p(self, v, p):
        return Fraction(v) / p

    def value(self, v):
        return Fraction(v)

    def to_str(self, v):
        return str(Fraction(v))

    def from_str(self, s):
        return Fraction(s)

    def to_json(self):
        return {"ring": "QQ", "p": None, "M": None}


class PrimeField:
    name = "Fp"

    def __init__(self, p):
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def coerce(self, x):
        p = self.p
        if isinstance(x, PAdicElement):
            if x.ring.d != 1:
                raise RingMismatch("only residue degree 1 elements coerce into F_p")
            return x.coeffs[0] % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise NotIntegral(f"{x} has a {p} in its denominator")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def normalize(self, v):
        return v % self.p

    def fix_product(self, v):
        return v % self.p

    def is_zero(self, v):
        return v % self.p == 0

    def inverse_int(self, n):
        if n % self.p == 0:
            raise ZeroDivisionError(f"{n} is not invertible mod {self.p}")
        return pow(n, -1, self.p)

    def divide_by_p(self, v, p):
        raise PrecisionExhausted("cannot divide by p in F_p")

    def value(self, v):
        return Fraction(v % self.p)

    def to_str(self, v):
        return str(v % self.p)

    def from_str(self, s):
        return int(s) % self.p

    def to_json(self):
        return {"ring": "Fp", "p": self.p, "M": 1}


class ModPrimePower:
    name = "ZpM"

    def __init__(self, p, M, s=0):
        if M < 1:
            raise PrecisionExhausted("ModPrimePower needs M >= 1")
        if not 0 <= s <= 4:
            raise ValueError("valuation shift must lie in [0, 4]")
        self.p, self.M, self.s = p, M, s
        self.mod = p ** (M + s)
        self.scale = p ** s

    def __eq__(self, other):
        return (isinstance(other, ModPrimePower) and other.p == self.p and other.M == self.M
                and other.s == self.s)

    def __hash__(self):
        return hash(("ZpM", self.p, self.M, self.s))

    def __repr__(self):
        return f"ModPrimePower({self.p}, {self.M}, s={self.s})"

    def coerce(self, x):
        p = self.p
        if isinstance(x, PAdicElement):
            if x.ring.d != 1:
                raise RingMismatch("only residue degree 1 elements coerce into Z/p^M")
            if x.prec < self.M:
                raise PrecisionExhausted(f"element known mod {p}^{x.prec}, ring needs {self.M}")
            return x.coeffs[0] * self.scale % self.mod
        x = Fraction(x)
        if x == 0:
            return 0
        if valuation(x, p) < -self.s:
            raise NotIntegral(f"{x} has denominator beyond {p}^{self.s}")
        y = x * self.scale
        return y.numerator * pow(y.denominator, -1, self.mod) % self.mod

    def normalize(self, v):
        return v % self.mod

    def fix_product(self, v):
        # v is a sum of products of stored ints, i.e. value * p^(2s)
        if v % self.scale:
            raise NotIntegral(f"product leaves a denominator beyond {self.p}^{self.s}")
        return (v // self.scale) % self.mod

    def is_zero(self, v):
        return v % self.mod == 0

    def inverse_int(self, n):
        if n % self.p == 0:
            raise ZeroDivisionError(f"{n} is not a {self.p}-adic unit")
        return pow(n, -1, self.mod) * self.scale % self.mod

    def divide_by_p(self, v, p):
        if v % p:
            raise ArithmeticError("value not divisible by p at this shift")
        return v // p

    def lowered(self):
        """Ring one digit less precise, used after a division by p."""
        return ModPrimePower(self.p, self.M - 1, self.s)

    def value(self, v):
        """Rational representative in [0, p^M) / p^s."""
        return Fraction(v % self.mod, self.scale)

    def is_integral(self, v):
        return (v % self.mod) % self.scale == 0

    def to_str(self, v):
        return str(v % self.mod)

    def from_str(self, s):
        return int(s) % self.mod

    def to_json(self):
        return {"ring": "ZpM", "p": self.p, "M": self.M, "s": self.s}


def ring_from_json(d):
    if d["ring"] == "QQ":
        return ExactRational()
    if d["ring"] == "Fp":
        return PrimeField(d["p"])
    return ModPrimePower(d["p"], d["M"], d.get("s", 0))


def convert_value(v, src, dst):
    """Move a stored coefficient between rings along QQ -> Z/p^M -> F_p."""
    if src == dst:
        return v
    if isinstance(src, ExactRational):
        return dst.coerce(v)
    if isinstance(src, ModPrimePower):
        if isinstance(dst, ModPrimePower):
            if dst.p != src.p or dst.M > src.M:
                raise RingMismatch(f"cannot convert {src} -> {dst}")
            x = src.value(v)
            return dst.coerce(x)
        if isinstance(dst, PrimeField) and dst.p == src.p:
            if not src.is_integral(v):
                raise NotIntegral("coefficient is not p-integral")
            return (v % src.mod) // src.scale % src.p
    if isinstance(src, PrimeField) and isinstance(dst, PrimeField) and src.p == dst.p:
        return v
    raise RingMismatch(f"cannot convert {src} -> {dst}")


# ---------------------------------------------------------------------------
# q-expansions
# ---------------------------------------------------------------------------

class QExpansion:
    """Truncated Laurent series sum_{n0 <= n < N} c_n q^n."""

    __slots__ = ("ring", "n0", "N", "coeffs")

    def __init__(self, ring, coeffs, N, n0=0):
        self.ring = ring
        self.n0 = n0
        self.N = N
        width = max(0, N - n0)
        cs = [ring.normalize(c) for c in list(coeffs)[:width]]
        cs.extend([ring.normalize(ring.coerce(0))] * (width - len(cs)))
        self.coeffs = cs

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_dict(cls, ring, terms, N, n0=None):
        if n0 is None:
            n0 = min([n for n in terms] + [0])
        cs = [ring.coerce(0)] * max(0, N - n0)
        for n, c in terms.items():
            if n0 <= n < N:
                cs[n - n0] = ring.coerce(c)
        return cls(ring, cs, N, n0)

    @classmethod
    def from_list(cls, ring, values, N=None, n0=0):
        values = list(values)
        N = n0 + len(values) if N is None else N
        return cls(ring, [ring.coerce(v) for v in values], N, n0)

    @classmethod
    def zero(cls, ring, N=DEFAULT_TRUNCATION):
        return cls(ring, [], N, 0)

    @classmethod
    def one(cls, ring, N=DEFAULT_TRUNCATION):
        return cls.monomial(ring, 0, N)

    @classmethod
    def monomial(cls, ring, n, N=DEFAULT_TRUNCATION, c=1):
        return cls.from_dict(ring, {n: c}, N, n0=min(n, 0))

    # -- access -------------------------------------------------------------

    def __getitem__(self, n):
        if n >= self.N:
            raise IndexError(f"coefficient q^{n} beyond truncation {self.N}")
        if n < self.n0:
            return self.ring.normalize(self.ring.coerce(0))
        return self.coeffs[n - self.n0]

    def coefficient(self, n):
        return self.ring.value(self[n])

    def items(self):
        """(n, stored coefficient) for nonzero coefficients."""
        z = self.ring.is_zero
        return [(self.n0 + i, c) for i, c in enumerate(self.coeffs) if not z(c)]

    def valuation(self):
        for n, _ in self.items():
            return n
        return self.N

    def is_zero(self):
        return not self.items()

    def trimmed(self):
        """Drop known-zero leading coefficients (lowest exponent becomes the valuation)."""
        v = self.valuation()
        if v == self.n0:
            return self
        if v >= self.N:
            return QExpansion(self.ring, [], self.N, self.N)
        return QExpansion(self.ring, self.coeffs[v - self.n0:], self.N, v)

    def truncate(self, N):
        N = min(N, self.N)
        return QExpansion(self.ring, self.coeffs[:max(0, N - self.n0)], N, self.n0)

    def with_n0(self, n0):
        """Re-index with a lower starting exponent (pads zeros)."""
        if n0 > self.n0:
            return self.trimmed() if self.valuation() >= n0 else self
        pad = [self.ring.coerce(0)] * (self.n0 - n0)
        return QExpansion(self.ring, pad + self.coeffs, self.N, n0)

    def change_ring(self, ring):
        src = self.ring
        return QExpansion(ring, [convert_value(c, src, ring) for c in self.coeffs], self.N, self.n0)

    def __repr__(self):
        terms = [f"{self.ring.to_str(c)}*q^{n}" for n, c in self.items()[:8]]
        more = " + ..." if len(self.items()) > 8 else ""
        return f"{' + '.join(terms) or '0'}{more} + O(q^{self.N})"

    # -- comparison ---------------------------------------------------------

    def first_difference(self, other):
        """Smallest exponent below the common truncation where the two differ, or None."""
        self._check(other)
        N = min(self.N, other.N)
        lo = min(self.n0, other.n0)
        z = self.ring.is_zero
        for n in range(lo, N):
            if not z(self[n] - other[n]):
                return n
        return None

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self.ring == other.ring and self.first_difference(other) is None

    __hash__ = None

    def _check(self, other):
        if not isinstance(other, QExpansion):
            raise TypeError("expected a QExpansion")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    # -- arithmetic ---------------------------------------------------------

    def _binary(self, other, sign):
        self._check(other)
        N = min(self.N, other.N)
        n0 = min(self.n0, other.n0)
        out = [0] * max(0, N - n0)
        for i, c in enumerate(self.coeffs):
            n = self.n0 + i
            if n < N:
                out[n - n0] += c
        for i, c in enumerate(other.coeffs):
            n = other.n0 + i
            if n < N:
                out[n - n0] += sign * c
        return QExpansion(self.ring, out, N, n0)

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return self + QExpansion.monomial(self.ring, 0, self.N, other)
        return self._binary(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QExpansion):
            return self - QExpansion.monomial(self.ring, 0, self.N, other)
        return self._binary(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return QExpansion(self.ring, [-c for c in self.coeffs], self.N, self.n0)

    def scale(self, c):
        """Multiply by a scalar (int, Fraction, p-adic element, or stored ring value via coerce)."""
        c = self.ring.coerce(c)
        fix = self.ring.fix_product
        return QExpansion(self.ring, [fix(c * a) for a in self.coeffs], self.N, self.n0)

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return self.scale(other)
        self._check(other)
        f, g = self.trimmed(), other.trimmed()
        n0 = f.n0 + g.n0
        N = min(f.N + g.n0, g.N + f.n0)
        width = max(0, N - n0)
        out = [0] * width
        gi = [(j, b) for j, b in enumerate(g.coeffs) if b]
        for i, a in enumerate(f.coeffs):
            if not a or i >= width:
                continue
            lim = width - i
            for j, b in gi:
                if j >= lim:
                    break
                out[i + j] += a * b
        fix = self.ring.fix_product
        return QExpansion(self.ring, [fix(c) for c in out], N, n0)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise NegativePower("negative powers of q-series are not supported")
        if e == 0:
            return QExpansion.one(self.ring, self.N)
        result = None
        base = self
        first = True
        while e:
            if e & 1:
                result = base if first else result * base
                first = False
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by q^k."""
        return QExpansion(self.ring, self.coeffs, self.N + k, self.n0 + k)

    # -- operators on q-series ---------------------------------------------

    def V(self, p, max_trunc=None):
        N = self.N * p if self.N > 0 else self.N
        if max_trunc is not None:
            N = min(N, max_trunc)
        terms = {n * p: c for n, c in self.items() if n * p < N}
        zero = self.ring.coerce(0)
        n0 = self.n0 * p
        cs = [zero] * max(0, N - n0)
        for n, c in terms.items():
            cs[n - n0] = c
        return QExpansion(self.ring, cs, N, n0)

    def U(self, p):
        n0 = -((-self.n0) // p)
        N = -((-self.N) // p)
        return QExpansion(self.ring, [self[n * p] for n in range(n0, N)], N, n0)

    def T(self, l, p=None, level=1):
        if p is not None and l == p:
            raise NonInvertibleL("T(l) requires l != p")
        try:
            linv = self.ring.inverse_int(l)
        except ZeroDivisionError as exc:
            raise NonInvertibleL(str(exc)) from None
        eps = 0 if level % l == 0 else 1
        first = self.U(l)
        if not eps:
            return first
        second = self.V(l)
        fix = self.ring.fix_product
        second = QExpansion(self.ring, [fix(linv * c) for c in second.coeffs], second.N, second.n0)
        return first + second

    def theta(self):
        ring = self.ring
        return QExpansion(ring, [ring.normalize((self.n0 + i) * c) for i, c in enumerate(self.coeffs)],
                          self.N, self.n0)

    # -- serialization ------------------------------------------------------

    def to_json(self):
        d = dict(self.ring.to_json())
        d.update({"n0": self.n0, "N": self.N,
                  "coeffs": [self.ring.to_str(c) for c in self.coeffs]})
        return d

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, d):
        if isinstance(d, str):
            d = json.loads(d)
        ring = ring_from_json(d)
        return cls(ring, [ring.from_str(s) for s in d["coeffs"]], d["N"], d["n0"])


# module-level spellings of the operators

def op_V(f, p, max_trunc=None):
    return f.V(p, max_trunc)


def op_U(f, p):
    return f.U(p)


def op_T(f, l, p, level):
    return f.T(l, p, level)


def op_theta(f):
    return f.theta()


# ---------------------------------------------------------------------------
# newform coefficients and their twists
# ---------------------------------------------------------------------------

class NewformCoefficients:
    """a_1 .. a_N of a normalized weight-2 newform."""

    def __init__(self, values, level, provenance="user", bad_primes=None):
        values = [int(a) for a in values]
        if not values or values[0] != 1:
            raise ValueError("newform coefficients must start with a_1 = 1")
        self._a = [0] + values
        self.level = level
        self.provenance = provenance
        self.bad_primes = frozenset(bad_primes if bad_primes is not None else
                                    _prime_divisors(level) if level else ())

    @property
    def nmax(self):
        return len(self._a) - 1

    def a(self, n):
        """a_n, with a_gamma = 0 for non-integral gamma."""
        if isinstance(n, Fraction):
            if n.denominator != 1:
                return 0
            n = n.numerator
        if n < 1:
            return 0
        if n > self.nmax:
            raise IndexError(f"a_{n} beyond computed range {self.nmax}")
        return self._a[n]

    def __getitem__(self, n):
        return self.a(n)

    def values(self):
        return list(self._a[1:])

    def hecke_failures(self, p):
        """Index triples where the p-power Hecke relations fail (empty when consistent)."""
        bad = []
        a, N = self._a, self.nmax
        pk = p
        while pk <= N:
            for m in range(1, N // pk + 1):
                if m % p and a[pk * m] != a[pk] * a[m]:
                    bad.append(("multiplicative", pk, m))
            pk *= p
        i, pk = 2, p * p
        while pk <= N:
            if a[pk // p] * a[p] != a[pk] + p * a[pk // (p * p)]:
                bad.append(("recursion", p, i))
            pk *= p
            i += 1
        return bad

    def mutated(self):
        """Negative control: add 1 to every prime-indexed coefficient, leaving the rest."""
        vals = self.values()
        for l in range(2, len(vals) + 1):
            if _is_small_prime(l):
                vals[l - 1] += 1
        return NewformCoefficients(vals, self.level, provenance="mutated", bad_primes=self.bad_primes)

    def series(self, ring=None, N=None):
        ring = ring or ExactRational()
        N = self.nmax + 1 if N is None else min(N, self.nmax + 1)
        return QExpansion.from_dict(ring, {n: self._a[n] for n in range(1, N)}, N, 0)


def _is_small_prime(n):
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


def _prime_divisors(n):
    out, q = [], 2
    n = abs(n)
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def twist_f0(a, p, N_trunc, ring=None):
    ring = ring or ExactRational()
    N = min(N_trunc, a.nmax + 1)
    return QExpansion.from_dict(ring, {n: a.a(n) for n in range(1, N) if n % p}, N, 0)


def twist_fminus1(a, p, ring, N_trunc):
    N = min(N_trunc, a.nmax + 1)
    terms = {}
    for n in range(1, N):
        if n % p == 0:
            continue
        try:
            inv = ring.inverse_int(n)
        except ZeroDivisionError:
            raise NonInvertibleIndex(f"{n} is not invertible in {ring}") from None
        terms[n] = ring.fix_product(ring.coerce(a.a(n)) * inv)
    cs = [0] * N
    for n, c in terms.items():
        cs[n] = c
    return QExpansion(ring, cs, N, 0)


def resum(f, c, p):
    """sum_{i >= 0} c^i V^i f, finite because f has no constant or polar part."""
    f = f.trimmed()
    if f.valuation() < 1:
        raise ValueError("resummation needs a series with zero constant and polar part")
    out = f
    term = f
    while True:
        term = term.V(p, max_trunc=f.N).scale(c)
        if term.valuation() >= f.N:
            break
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Bernoulli numbers and Eisenstein series
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_table(n):
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return tuple(B)


def bernoulli(k, cap=BERNOULLI_CAP):
    if k > cap:
        raise CapExceeded(f"B_{k} beyond cap {cap}")
    if k < 0:
        raise ValueError("k must be nonnegative")
    return _bernoulli_table(k)[k]


def divisor_sigma(n, k):
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            if d * d != n:
                total += (n // d) ** k
        d += 1
    return total


def eisenstein(k, N_trunc=DEFAULT_TRUNCATION, cap=BERNOULLI_CAP):
    """Normalized weight-k Eisenstein series 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise ValueError("weight must be even and >= 4")
    c = Fraction(-2 * k) / bernoulli(k, cap)
    terms = {0: 1}
    for n in range(1, N_trunc):
        terms[n] = c * divisor_sigma(n, k - 1)
    return QExpansion.from_dict(ExactRational(), terms, N_trunc, 0)
