"""Exact arithmetic in the cyclotomic field Q(w_N).

Elements are stored as an integer numerator vector in the power basis
1, w, ..., w^(d-1) (d = phi(N)) together with one positive common
denominator, kept in lowest terms. Equal elements therefore have equal
representations, which is what the rest of the package relies on for
hashing and equality.
"""
from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConductorMismatch, DivisionByZero, ZeroDenominator


def _poly_divexact(num, den):
    """Exact quotient of integer polynomials (low-to-high coefficients), den monic."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Phi_n as a tuple of integer coefficients, constant term first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


class CyclotomicField:
    """The field Q(w_N); use :func:`field` to get the shared instance."""

    def __init__(self, conductor: int):
        if not isinstance(conductor, int) or conductor < 1:
            raise ValueError(f"invalid conductor {conductor!r}")
        self.conductor = conductor
        self.phi = cyclotomic_poly(conductor)
        self.degree = d = len(self.phi) - 1
        # x^d = -sum(phi[i] x^i): rows for x^k, d <= k <= 2d-2
        self._tail = [(i, -c) for i, c in enumerate(self.phi[:-1]) if c]
        self._powers = self._power_table()
        self.zero = CycNum(self, (0,) * d, 1)
        self.one = CycNum(self, (1,) + (0,) * (d - 1), 1)
        self._vander_inv = None

    def _power_table(self):
        d, n = self.degree, self.conductor
        vec = [1] + [0] * (d - 1)
        out = []
        for _ in range(n):
            out.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i, c in self._tail:
                    vec[i] += top * c
        return out

    def __repr__(self):
        return f"Q(w_{self.conductor})"

    # construction -----------------------------------------------------
    def __call__(self, value) -> "CycNum":
        if isinstance(value, CycNum):
            if value.field is not self:
                raise ConductorMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return CycNum._make(self, [value] + [0] * (self.degree - 1), 1)
        if isinstance(value, Fraction):
            return CycNum._make(self, [value.numerator] + [0] * (self.degree - 1), value.denominator)
        raise TypeError(f"cannot convert {value!r} into {self}")

    def omega(self, k: int = 1) -> "CycNum":
        return CycNum(self, self._powers[k % self.conductor], 1)

    def root_of_unity(self, n: int, k: int = 1) -> "CycNum":
        """w_n^k as an element of this field, if it lies here."""
        N = self.conductor
        if N % n == 0:
            return self.omega(k * (N // n))
        if N % 2 == 1 and (2 * N) % n == 0:
            # w_{2N}^j = -w_N^{(j + N)/2}
            j = (k * (2 * N // n)) % (2 * N)
            if j % 2 == 0:
                return self.omega(j // 2)
            return -self.omega((j + N) // 2)
        raise ConductorMismatch(f"w_{n} does not lie in {self}")

    def canonicalize(self, terms) -> "CycNum":
        """Sum of (p/q) * w^e over ``terms`` given as (p, q, e) triples."""
        den = 1
        for p, q, e in terms:
            if q == 0:
                raise ZeroDenominator(f"zero denominator in term {(p, q, e)}")
            den = den * abs(q) // math.gcd(den, abs(q))
        acc = [0] * self.degree
        for p, q, e in terms:
            scale = p * (den // abs(q)) * (1 if q > 0 else -1)
            if scale:
                for i, c in enumerate(self._powers[e % self.conductor]):
                    if c:
                        acc[i] += scale * c
        return CycNum._make(self, acc, den)

    def roots_of_unity(self):
        """All roots of unity in the field (w^k, and -w^k for odd N)."""
        out = [self.omega(k) for k in range(self.conductor)]
        if self.conductor % 2:
            out += [-r for r in out]
        return out

    # numeric helpers used by the square-root search ------------------
    def _units(self):
        return [k for k in range(1, self.conductor + 1) if math.gcd(k, self.conductor) == 1]

    def _vandermonde_inverse(self):
        if self._vander_inv is None:
            N, d = self.conductor, self.degree
            V = np.array([[cmath.exp(2j * math.pi * j * k / N) for j in range(d)]
                          for k in self._units()])
            self._vander_inv = np.linalg.inv(V)
        return self._vander_inv

    def embeddings(self, a: "CycNum"):
        N = self.conductor
        return [sum(c * cmath.exp(2j * math.pi * j * k / N) for j, c in enumerate(a.num)) / a.den
                for k in self._units()]


@lru_cache(maxsize=None)
def field(conductor: int) -> CyclotomicField:
    return CyclotomicField(conductor)


class CycNum:
    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, fld: CyclotomicField, num, den: int):
        # trusted constructor: num/den already reduced
        self.field = fld
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, fld, num, den):
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        return cls(fld, num, den)

    # basic properties -------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.field.conductor

    @property
    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.num[0], self.den)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.conductor, self.num, self.den))
        return self._hash

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}" if i == 0 else f"{c}*w^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"CycNum[{self.field.conductor}]({body})"

    def __str__(self):
        """Compact form in powers of w = exp(2 pi i / N)."""
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.field is not self.field:
                raise ConductorMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return CycNum._make(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        return CycNum._make(self.field,
                            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
                            self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.field, [-c for c in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return multiply(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return multiply(self, invert(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return multiply(other, invert(self))

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def multiply(a: CycNum, b: CycNum) -> CycNum:
    if a.field is not b.field:
        raise ConductorMismatch(f"{a.field} vs {b.field}")
    fld = a.field
    d = fld.degree
    if a.is_rational():
        s = a.num[0]
        return CycNum._make(fld, [s * c for c in b.num], a.den * b.den)
    if b.is_rational():
        s = b.num[0]
        return CycNum._make(fld, [s * c for c in a.num], a.den * b.den)
    prod = [0] * (2 * d - 1)
    bn = [(j, y) for j, y in enumerate(b.num) if y]
    for i, x in enumerate(a.num):
        if x:
            for j, y in bn:
                prod[i + j] += x * y
    tail = fld._tail
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[k]
        if c:
            base = k - d
            for i, t in tail:
                prod[base + i] += c * t
    return CycNum._make(fld, prod[:d], a.den * b.den)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] -= c * x
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _poly_trim(out)


@lru_cache(maxsize=65536)
def _invert_cached(conductor, num, den):
    fld = field(conductor)
    # extended Euclid on (phi, a): track s with s*a = r (mod phi)
    r0 = [Fraction(c) for c in fld.phi]
    r1 = _poly_trim([Fraction(c) for c in num])
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    # r1 is a nonzero constant c; a^{-1} = s1 / c  (times den for the scaling)
    c = r1[0]
    coeffs = [x * den / c for x in s1]
    coeffs += [Fraction(0)] * (fld.degree - len(coeffs))
    common = math.lcm(*(x.denominator for x in coeffs))
    return CycNum._make(fld, [int(x * common) for x in coeffs], common)


def invert(a: CycNum) -> CycNum:
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    if a.is_rational():
        return CycNum._make(a.field, [a.den] + [0] * (a.field.degree - 1), a.num[0])
    return _invert_cached(a.field.conductor, a.num, a.den)


def canonicalize(conductor: int, terms) -> CycNum:
    return field(conductor).canonicalize(terms)


def embed_complex(a: CycNum) -> complex:
    """Image under w_N -> exp(2 pi i / N). Diagnostic use only."""
    N = a.field.conductor
    return sum(c * cmath.exp(2j * math.pi * k / N) for k, c in enumerate(a.num)) / a.den


def galois(a: CycNum, k: int) -> CycNum:
    """Apply the automorphism w -> w^k (k a unit mod N)."""
    fld = a.field
    if math.gcd(k, fld.conductor) != 1:
        raise ValueError("k must be coprime to the conductor")
    acc = [0] * fld.degree
    for j, c in enumerate(a.num):
        if c:
            for i, x in enumerate(fld._powers[(j * k) % fld.conductor]):
                if x:
                    acc[i] += c * x
    return CycNum._make(fld, acc, a.den)


def to_terms(a: CycNum):
    """Inverse of ``canonicalize``: a list of (p, q, e) triples in lowest terms."""
    out = []
    for e, c in enumerate(a.coeffs):
        if c:
            out.append((c.numerator, c.denominator, e))
    return out


# square roots ---------------------------------------------------------

def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _sqrt_via_roots(a: CycNum):
    fld = a.field
    for root in fld.roots_of_unity():
        # a = q * root with q rational?
        q = a * invert(root)
        if not q.is_rational():
            continue
        for sign in (1, -1):
            r = _rational_sqrt(sign * q.rational())
            if r is None:
                continue
            # need a square root of sign*root
            target = root * sign
            for s in fld.roots_of_unity():
                if s * s == target:
                    return s * r
        return None
    return None


MAX_SIGN_SEARCH_DEGREE = 16


def _sqrt_via_embeddings(a: CycNum):
    fld = a.field
    d = fld.degree
    if d > MAX_SIGN_SEARCH_DEGREE:
        return None
    units = fld._units()
    vals = fld.embeddings(a)
    roots = [cmath.sqrt(v) for v in vals]
    pos = {k: i for i, k in enumerate(units)}
    free = []
    for i, k in enumerate(units):
        partner = pos.get((fld.conductor - k) % fld.conductor or fld.conductor, i)
        if partner > i:
            free.append((i, partner))
        elif partner == i:
            free.append((i, i))
    inv = fld._vandermonde_inverse()
    for signs in itertools.product((1, -1), repeat=max(len(free) - 1, 0)):
        signs = (1,) + signs
        v = [0j] * d
        for s, (i, j) in zip(signs, free):
            v[i] = s * roots[i]
            if j != i:
                v[j] = v[i].conjugate()
        coeffs = inv @ np.array(v)
        if np.max(np.abs(coeffs.imag)) > 1e-6:
            continue
        fr = [Fraction(float(c)).limit_denominator(10 ** 6) for c in coeffs.real]
        den = math.lcm(*(f.denominator for f in fr))
        cand = CycNum._make(fld, [int(f * den) for f in fr], den)
        if cand * cand == a:
            return cand
    return None


def sqrt(a: CycNum):
    """An exact square root of ``a`` in its field, or None if none was found."""
    if a.is_zero():
        return a
    root = _sqrt_via_roots(a)
    if root is None:
        root = _sqrt_via_embeddings(a)
    return root
