"""Elliptic curves y^2 = x^3 + a4 x + a6 over the rationals.

Local data at a bad prime l comes from Tate's algorithm (run with residue
brute force, so it is only used for small l) or, for l >= 5, from the short
model made minimal by removing l^4 | a4, l^6 | a6.  Traces at bad primes are
read off the point count of the minimal model, singular point included.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
import csv
import io
import os

from sympy import factorint

from .errors import (BadReduction, CapExceeded, SingularCurve, Supersingular, ParseError,
                     DeltaExpError)
from .padic import UnramifiedRing, is_prime
from .qseries import NewformCoefficients

POINT_COUNT_CAP = 10 ** 5
TORSION_ORDER_CAP = 16

# Class-number-one CM j-invariants: j -> (discriminant of the order, conductor of the order)
CM_TABLE = {
    Fraction(0): (-3, 1),
    Fraction(1728): (-4, 1),
    Fraction(-3375): (-7, 1),
    Fraction(8000): (-8, 1),
    Fraction(-32768): (-11, 1),
    Fraction(54000): (-12, 2),
    Fraction(287496): (-16, 2),
    Fraction(-884736): (-19, 1),
    Fraction(-12288000): (-27, 3),
    Fraction(16581375): (-28, 2),
    Fraction(-884736000): (-43, 1),
    Fraction(-147197952000): (-67, 1),
    Fraction(-262537412640768000): (-163, 1),
}


def kronecker(D, p):
    """Kronecker symbol (D/p) for an odd prime p."""
    D %= p
    if D == 0:
        return 0
    return 1 if pow(D, (p - 1) // 2, p) == 1 else -1


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

class CurvePoint:
    """Projective point (X : Y : Z) with coprime integer coordinates."""

    __slots__ = ("curve", "X", "Y", "Z")

    def __init__(self, curve, X, Y, Z, check=True):
        g = gcd(gcd(X, Y), Z)
        if g == 0:
            raise ValueError("(0:0:0) is not a point")
        X, Y, Z = X // g, Y // g, Z // g
        if Z < 0 or (Z == 0 and Y < 0):
            X, Y, Z = -X, -Y, -Z
        self.curve, self.X, self.Y, self.Z = curve, X, Y, Z
        if check and not curve.contains(self):
            raise ValueError(f"{self} is not on {curve}")

    @classmethod
    def affine(cls, curve, x, y, check=True):
        x, y = Fraction(x), Fraction(y)
        den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
        return cls(curve, int(x * den), int(y * den), den, check)

    @classmethod
    def infinity(cls, curve):
        return cls(curve, 0, 1, 0, check=False)

    def is_zero(self):
        return self.Z == 0

    @property
    def x(self):
        return Fraction(self.X, self.Z)

    @property
    def y(self):
        return Fraction(self.Y, self.Z)

    def __repr__(self):
        if self.is_zero():
            return "O"
        return f"({self.x}, {self.y})"

    def __eq__(self, other):
        return (isinstance(other, CurvePoint) and other.curve == self.curve
                and (self.X, self.Y, self.Z) == (other.X, other.Y, other.Z))

    def __hash__(self):
        return hash((self.X, self.Y, self.Z))

    def __neg__(self):
        return self.curve.neg(self)

    def __add__(self, other):
        return self.curve.add(self, other)

    def __sub__(self, other):
        return self.curve.add(self, self.curve.neg(other))

    def __rmul__(self, n):
        return self.curve.mul(n, self)

    def reduce(self, p):
        """Reduction mod p as an affine pair, or None for the identity."""
        if self.Z % p == 0:
            return None
        zi = pow(self.Z, -1, p)
        return (self.X * zi % p, self.Y * zi % p)


# ---------------------------------------------------------------------------
# long Weierstrass helpers (used for local data at bad primes)
# ---------------------------------------------------------------------------

def _invariants(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return b2, b4, b6, b8, c4, c6, disc


def _transform(a, r, s, t):
    a1, a2, a3, a4, a6 = a
    return [a1 + 2 * s,
            a2 - s * a1 + 3 * r - s * s,
            a3 + r * a1 + 2 * t,
            a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
            a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1]


def _vp(n, p):
    if n == 0:
        return 10 ** 9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _quad_distinct(A, B, C, p):
    if p == 2:
        return B % 2 != 0
    return (B * B - 4 * A * C) % p != 0


def _quad_root(A, B, C, p):
    for x in range(p):
        if (A * x * x + B * x + C) % p == 0:
            return x
    raise DeltaExpError("expected a repeated root")


@dataclass(frozen=True)
class LocalData:
    p: int
    model: tuple          # local minimal long Weierstrass model [a1, a2, a3, a4, a6]
    conductor_exponent: int
    kodaira: str
    split: object = None  # for multiplicative reduction: True/False


def tate(a, p):
    """Tate's algorithm at p (residues found by brute force; intended for small p)."""
    a = list(a)
    while True:
        b2, b4, b6, b8, c4, c6, disc = _invariants(a)
        n = _vp(disc, p)
        if n == 0:
            return LocalData(p, tuple(a), 0, "I0")
        sing = None
        for x0 in range(p):
            for y0 in range(p):
                a1, a2, a3, a4, a6 = a
                F = y0 * y0 + a1 * x0 * y0 + a3 * y0 - x0 ** 3 - a2 * x0 * x0 - a4 * x0 - a6
                Fx = a1 * y0 - 3 * x0 * x0 - 2 * a2 * x0 - a4
                Fy = 2 * y0 + a1 * x0 + a3
                if F % p == 0 and Fx % p == 0 and Fy % p == 0:
                    sing = (x0, y0)
                    break
            if sing:
                break
        a = _transform(a, sing[0], 0, sing[1])
        a1, a2, a3, a4, a6 = a
        b2, b4, b6, b8, c4, c6, disc = _invariants(a)
        if b2 % p:
            split = any((t * t + a1 * t - a2) % p == 0 for t in range(p))
            return LocalData(p, tuple(a), 1, f"I{n}", split)
        if a6 % (p * p):
            return LocalData(p, tuple(a), n, "II")
        if b8 % p ** 3:
            return LocalData(p, tuple(a), n - 1, "III")
        if b6 % p ** 3:
            return LocalData(p, tuple(a), n - 2, "IV")
        for r in range(0, p * p, p):
            for s in range(p):
                for t in range(0, p * p * p, p):
                    c = _transform(a, r, s, t)
                    if (c[0] % p == 0 and c[1] % p == 0 and c[2] % (p * p) == 0
                            and c[3] % (p * p) == 0 and c[5 - 1] % p ** 3 == 0):
                        a = c
                        break
                else:
                    continue
                break
            else:
                continue
            break
        else:
            raise DeltaExpError("Tate step 6 failed")
        a1, a2, a3, a4, a6 = a
        b, c, d = a2 // p, a4 // p ** 2, a6 // p ** 3
        cub_disc = b * b * c * c - 4 * c ** 3 - 4 * b ** 3 * d - 27 * d * d + 18 * b * c * d
        if cub_disc % p:
            return LocalData(p, tuple(a), n - 4, "I0*")
        alpha = None
        for x in range(p):
            if (x ** 3 + b * x * x + c * x + d) % p == 0 and (3 * x * x + 2 * b * x + c) % p == 0:
                alpha = x
                break
        a = _transform(a, p * alpha, 0, 0)
        a1, a2, a3, a4, a6 = a
        if (a2 // p) % p:
            # double root: I_m^*
            m, mx, my = 1, p * p, p * p
            while True:
                xa2, xa3, xa4, xa6 = a2 // p, a3 // my, a4 // (p * mx), a6 // (mx * my)
                if _quad_distinct(1, xa3, -xa6, p):
                    break
                y0 = _quad_root(1, xa3, -xa6, p)
                a = _transform(a, 0, 0, my * y0)
                a1, a2, a3, a4, a6 = a
                my *= p
                m += 1
                xa2, xa3, xa4, xa6 = a2 // p, a3 // my, a4 // (p * mx), a6 // (mx * my)
                if _quad_distinct(xa2, xa4, xa6, p):
                    break
                x0 = _quad_root(xa2, xa4, xa6, p)
                a = _transform(a, mx * x0, 0, 0)
                a1, a2, a3, a4, a6 = a
                mx *= p
                m += 1
            return LocalData(p, tuple(a), n - 4 - m, f"I{m}*")
        # triple root at 0
        if _quad_distinct(1, a3 // p ** 2, -(a6 // p ** 4), p):
            return LocalData(p, tuple(a), n - 6, "IV*")
        y0 = _quad_root(1, a3 // p ** 2, -(a6 // p ** 4), p)
        a = _transform(a, 0, 0, p * p * y0)
        a1, a2, a3, a4, a6 = a
        if a4 % p ** 4:
            return LocalData(p, tuple(a), n - 7, "III*")
        if a6 % p ** 6:
            return LocalData(p, tuple(a), n - 8, "II*")
        a = [a1 // p, a2 // p ** 2, a3 // p ** 3, a4 // p ** 4, a6 // p ** 6]


def count_long_model(a, l):
    """#E(F_l) for a long model, the singular point (if any) included."""
    a1, a2, a3, a4, a6 = (c % l for c in a)
    total = 1
    for x in range(l):
        rhs = (x ** 3 + a2 * x * x + a4 * x + a6) % l
        for y in range(l):
            if (y * y + a1 * x * y + a3 * y - rhs) % l == 0:
                total += 1
    return total


def short_from_long(a):
    """(A, B) with y^2 = x^3 + A x + B isomorphic to the long model, plus the point map."""
    b2, b4, b6, b8, c4, c6, disc = _invariants(a)
    a1, a2, a3, a4, a6 = a

    def to_short(x, y):
        x, y = Fraction(x), Fraction(y)
        return 36 * x + 3 * b2, 108 * (2 * y + a1 * x + a3)
    return -27 * c4, -54 * c6, to_short


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

class EllipticCurve:
    def __init__(self, a4, a6, label=None, generators=()):
        self.a4, self.a6 = int(a4), int(a6)
        self.disc = -16 * (4 * self.a4 ** 3 + 27 * self.a6 ** 2)
        if self.disc == 0:
            raise SingularCurve(f"y^2 = x^3 + {a4}x + {a6} is singular")
        self.label = label or f"[{self.a4},{self.a6}]"
        self.j = Fraction(-1728 * (4 * self.a4) ** 3, self.disc)
        cm = CM_TABLE.get(self.j)
        self.cm_disc, self.cm_conductor = cm if cm else (None, None)
        self.generators = tuple(CurvePoint.affine(self, x, y) for x, y in generators)

    def __repr__(self):
        return f"EllipticCurve({self.a4}, {self.a6}, label={self.label!r})"

    def __eq__(self, other):
        return isinstance(other, EllipticCurve) and (self.a4, self.a6) == (other.a4, other.a6)

    def __hash__(self):
        return hash((self.a4, self.a6))

    @property
    def has_cm(self):
        return self.cm_disc is not None

    def long_model(self):
        return (0, 0, 0, self.a4, self.a6)

    # -- points -----------------------------------------------------------

    def contains(self, P):
        X, Y, Z = P.X, P.Y, P.Z
        return Y * Y * Z == X ** 3 + self.a4 * X * Z * Z + self.a6 * Z ** 3

    def point(self, x, y):
        return CurvePoint.affine(self, x, y)

    def zero(self):
        return CurvePoint.infinity(self)

    def neg(self, P):
        if P.is_zero():
            return P
        return CurvePoint(self, P.X, -P.Y, P.Z, check=False)

    def add(self, P, Q):
        if P.is_zero():
            return Q
        if Q.is_zero():
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y1 + y2 == 0:
                return self.zero()
            lam = (3 * x1 * x1 + self.a4) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return CurvePoint.affine(self, x3, y3, check=False)

    def mul(self, n, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        result, base = self.zero(), P
        while n:
            if n & 1:
                result = self.add(result, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return result

    # -- reduction data ----------------------------------------------------

    def bad_primes(self):
        return sorted(l for l in factorint(abs(self.disc)) if self.local_data(l).conductor_exponent > 0)

    @lru_cache(maxsize=None)
    def local_data(self, l):
        if l in (2, 3):
            return tate(self.long_model(), l)
        a4, a6 = self.a4, self.a6
        while a4 % l ** 4 == 0 and a6 % l ** 6 == 0:
            a4, a6 = a4 // l ** 4, a6 // l ** 6
        disc = -16 * (4 * a4 ** 3 + 27 * a6 ** 2)
        model = (0, 0, 0, a4, a6)
        n = _vp(disc, l)
        if n == 0:
            return LocalData(l, model, 0, "I0")
        if a4 % l:   # c4 = -48 a4 is a unit: multiplicative
            # node tangents y^2 = (3 x0) (x - x0)^2 split iff 3 x0 is a square
            x0 = next(x for x in range(l) if (3 * x * x + a4) % l == 0 and (x ** 3 + a4 * x + a6) % l == 0)
            split = kronecker(3 * x0, l) == 1
            return LocalData(l, model, 1, f"I{n}", split)
        return LocalData(l, model, 2, "additive")

    def conductor(self):
        N = 1
        for l in factorint(abs(self.disc)):
            N *= l ** self.local_data(l).conductor_exponent
        return N

    def has_good_reduction(self, p):
        return self.local_data(p).conductor_exponent == 0

    def trace_at(self, l):
        """l + 1 - #E(F_l) on the minimal model at l; equals a_l for good and bad l."""
        if l >= 5 and self.disc % l:
            return self._short_trace(self.a4, self.a6, l)
        data = self.local_data(l)
        if l >= 5:
            _, _, _, a4, a6 = data.model
            return self._short_trace(a4, a6, l)
        return l + 1 - count_long_model(data.model, l)

    @staticmethod
    def _short_trace(a4, a6, p):
        # #E(F_p) = p + 1 + sum_x chi(x^3 + a4 x + a6)
        squares = bytearray(p)
        for y in range(1, (p + 1) // 2):
            squares[y * y % p] = 1
        s = 0
        a4 %= p
        a6 %= p
        for x in range(p):
            r = (x * x * x + a4 * x + a6) % p
            if r:
                s += 1 if squares[r] else -1
        return -s


def count_points(curve, p, cap=POINT_COUNT_CAP):
    """a_p = p + 1 - #E(F_p) at a good prime p >= 5."""
    if p > cap:
        raise CapExceeded(f"p = {p} exceeds point-count cap {cap}")
    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    if not curve.has_good_reduction(p):
        raise BadReduction(f"{curve.label} has bad reduction at {p}")
    a_p = curve.trace_at(p)
    if a_p * a_p > 4 * p:
        raise AssertionError(f"Hasse bound violated: a_{p} = {a_p}")
    return a_p


# ---------------------------------------------------------------------------
# prime classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeClassification:
    p: int
    good: bool
    a_p: object = None
    ordinary: bool = False
    supersingular: bool = False
    anomalous: bool = False
    cm_split: object = None     # None for curves without CM
    cl: bool = False

    def as_dict(self):
        return {"p": self.p, "good": self.good, "a_p": self.a_p, "ordinary": self.ordinary,
                "supersingular": self.supersingular, "anomalous": self.anomalous,
                "cm_split": self.cm_split, "cl": self.cl}


def classify_prime(curve, p):
    if p < 5 or not is_prime(p):
        raise ValueError("p must be a prime >= 5")
    if not curve.has_good_reduction(p):
        return PrimeClassification(p, False)
    a_p = count_points(curve, p)
    ordinary = a_p % p != 0
    split = None
    cl = False
    if curve.has_cm:
        split = kronecker(curve.cm_disc, p) == 1
        cl = ordinary and split and curve.cm_conductor % p != 0
    return PrimeClassification(p, True, a_p, ordinary, not ordinary, a_p % p == 1, split, cl)


_WANT = {
    "ordinary": lambda c: c.good and c.ordinary,
    "supersingular": lambda c: c.good and c.supersingular,
    "non-anomalous": lambda c: c.good and not c.anomalous,
    "anomalous": lambda c: c.good and c.anomalous,
    "CL": lambda c: c.cl,
    "not-CL": lambda c: c.good and not c.cl,
    "good": lambda c: c.good,
    "bad": lambda c: not c.good,
}


def find_good_primes(curve, lo, hi, want=("ordinary", "non-anomalous")):
    """Primes in [lo, hi] (p >= 5) whose classification meets every flag in ``want``."""
    if isinstance(want, str):
        want = (want,)
    unknown = [w for w in want if w not in _WANT]
    if unknown:
        raise ValueError(f"unknown flags {unknown}")
    out = []
    for p in range(max(lo, 5), hi + 1):
        if is_prime(p):
            c = classify_prime(curve, p)
            if all(_WANT[w](c) for w in want):
                out.append(c)
    return out


def fixture_primes(curve, count=4, start=5):
    """The first ``count`` good, ordinary, non-anomalous primes >= start."""
    out, p = [], start
    while len(out) < count:
        if is_prime(p):
            c = classify_prime(curve, p)
            if c.good and c.ordinary and not c.anomalous:
                out.append(p)
        p += 1
    return out


# ---------------------------------------------------------------------------
# torsion
# ---------------------------------------------------------------------------

def _integer_roots_cubic(a4, c):
    """Integer roots of x^3 + a4 x + c."""
    f = lambda x: x ** 3 + a4 * x + c
    B = 1 + max(abs(a4), abs(c))
    cuts = [-B]
    if a4 < 0:
        r = isqrt(-a4 // 3) if -a4 >= 3 else 0
        cuts += [-r - 1, -r, r, r + 1]
    cuts.append(B)
    cuts = sorted(set(cuts))
    roots = set()
    for lo, hi in zip(cuts, cuts[1:]):
        flo, fhi = f(lo), f(hi)
        for x in (lo, hi):
            if f(x) == 0:
                roots.add(x)
        if (flo < 0) == (fhi < 0):
            continue
        inc = flo < fhi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if (f(mid) < 0) == inc:
                lo = mid
            else:
                hi = mid
        for x in (lo, hi):
            if f(x) == 0:
                roots.add(x)
    return sorted(roots)


def point_order(P, cap=TORSION_ORDER_CAP):
    Q = P
    for n in range(1, cap + 1):
        if Q.is_zero():
            return n
        Q = Q + P
    return None


def rational_torsion(curve):
    """All rational torsion points as (point, order), via Lutz-Nagell candidates."""
    E = curve
    D = 4 * E.a4 ** 3 + 27 * E.a6 ** 2
    ys = [0]
    fac = factorint(abs(D))
    ys_pos = [1]
    for q, e in fac.items():
        ys_pos = [y * q ** k for y in ys_pos for k in range(e // 2 + 1)]
    ys += sorted(ys_pos)
    found = {E.zero(): 1}
    for y in ys:
        for x in _integer_roots_cubic(E.a4, E.a6 - y * y):
            for yy in {y, -y}:
                P = E.point(x, yy)
                n = point_order(P)
                if n is not None:
                    found[P] = n
    return sorted(found.items(), key=lambda t: (t[1], t[0].X, t[0].Y))


def reduced_order(P, p, group_order):
    """Order of the reduction of P in E(F_p), given #E(F_p)."""
    E = P.curve

    def mul_mod(n, pt):
        result, base = None, pt
        while n:
            if n & 1:
                result = _add_mod(E, result, base, p)
            n >>= 1
            if n:
                base = _add_mod(E, base, base, p)
        return result

    R = P.reduce(p)
    if R is None:
        return 1
    m = group_order
    for q in factorint(group_order):
        while m % q == 0 and mul_mod(m // q, R) is None:
            m //= q
    return m


def _add_mod(E, P, Q, p):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + E.a4) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


# ---------------------------------------------------------------------------
# unit root
# ---------------------------------------------------------------------------

def unit_root(a_p, p, M):
    """(r, u): r = u p is the root of x^2 - a_p x + p in p Z_p, u a unit; both mod p^M."""
    if a_p % p == 0:
        raise Supersingular(f"a_{p} = {a_p} is divisible by {p}")
    R = UnramifiedRing(p, 1, M)
    unit = R.hensel_root([p, -a_p, 1], a_p % p)
    u = unit.inverse()
    r = u * p
    return r, u


# ---------------------------------------------------------------------------
# newform coefficients from point counts
# ---------------------------------------------------------------------------

def newform_coefficients(curve, nmax):
    """a_1..a_nmax by multiplicativity from traces at primes <= nmax."""
    a = [0] * (nmax + 1)
    a[1] = 1
    spf = list(range(nmax + 1))
    for i in range(2, isqrt(nmax) + 1):
        if spf[i] == i:
            for j in range(i * i, nmax + 1, i):
                if spf[j] == j:
                    spf[j] = i
    bad = set()
    for n in range(2, nmax + 1):
        l = spf[n]
        m, k = n, 0
        while m % l == 0:
            m //= l
            k += 1
        if m > 1:
            a[n] = a[n // m] * a[m]
            continue
        # n = l^k
        if k == 1:
            a[n] = curve.trace_at(l)
            if not curve.has_good_reduction(l):
                bad.add(l)
        elif l in bad:
            a[n] = a[l] * a[n // l]
        else:
            a[n] = a[l] * a[n // l] - l * a[n // (l * l)]
    level = curve.conductor()
    return NewformCoefficients(a[1:], level, provenance="curve",
                               bad_primes=[l for l in factorint(level)])


# ---------------------------------------------------------------------------
# curve tables
# ---------------------------------------------------------------------------

def parse_curve_spec(text):
    """'a4,a6' or a table label."""
    parts = [s.strip() for s in text.replace("−", "-").split(",")]
    if len(parts) == 2:
        try:
            return EllipticCurve(int(parts[0]), int(parts[1]))
        except ValueError:
            raise ParseError(f"cannot parse curve {text!r}") from None
    table = builtin_curves()
    if text in table:
        return table[text]
    raise ParseError(f"cannot parse curve {text!r}")


def load_curves(source):
    """Read the curve CSV format ``label,a4,a6[,gen_x,gen_y,...]``."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source) as fh:
            text = fh.read()
    curves = {}
    for row in csv.reader(io.StringIO(text)):
        if not row or row[0].startswith("#") or row[0] == "label":
            continue
        row = [c.strip() for c in row]
        if len(row) < 3 or (len(row) - 3) % 2:
            raise ParseError(f"bad curve row {row}")
        try:
            a4, a6 = int(row[1]), int(row[2])
            gens = [(Fraction(row[i]), Fraction(row[i + 1])) for i in range(3, len(row), 2)]
        except ValueError:
            raise ParseError(f"bad curve row {row}") from None
        curves[row[0]] = EllipticCurve(a4, a6, label=row[0], generators=gens)
    return curves


BUILTIN_PATH = os.path.join(os.path.dirname(__file__), "data", "curves.csv")


@lru_cache(maxsize=None)
def _builtin():
    return load_curves(BUILTIN_PATH)


def builtin_curves():
    return dict(_builtin())
