"""Exact arithmetic in the cyclotomic field Q(zeta_E) and q-combinatorics.

One cyclotomic order E is active per session; every Scalar lives in that
field.  Elements are stored as coefficient tuples in the power basis
1, z, ..., z^(phi(E)-1), reduced modulo the E-th cyclotomic polynomial, so
structural equality of tuples is field equality.

Rational coefficients are Python ints where possible and ``gmpy2.mpq``
otherwise.
"""
from __future__ import annotations

import re
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from math import gcd

import gmpy2
import sympy

from .errors import ConfigError, InputError

mpq = gmpy2.mpq
_RATIONAL_TYPES = (int, Fraction, type(mpq(1, 2)))


def _rat(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else mpq(x.numerator, x.denominator)
    q = mpq(x)
    return int(q.numerator) if q.denominator == 1 else q


class CyclotomicField:
    """The field Q(zeta_E) with cached powers of zeta and cached inverses."""

    def __init__(self, E: int):
        if E < 1:
            raise ConfigError(f"cyclotomic order must be positive, got {E}")
        self.E = E
        poly = sympy.Poly(sympy.cyclotomic_poly(E, sympy.Symbol("t")))
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]  # low to high, monic
        self.phi = len(coeffs) - 1
        # zeta^phi = -sum_{i<phi} p_i zeta^i
        self._tail = [(i, c) for i, c in enumerate(coeffs[:-1]) if c]
        self.zero = Scalar._make(self, (0,) * self.phi)
        self.one = self.from_rational(1)
        self._roots = tuple(self._power(k) for k in range(E))
        self._inv_cache: dict = {}

    def __repr__(self):
        return f"CyclotomicField({self.E})"

    def _reduce(self, r: list) -> tuple:
        phi = self.phi
        for k in range(len(r) - 1, phi - 1, -1):
            ck = r[k]
            if ck:
                base = k - phi
                for i, pi in self._tail:
                    r[base + i] -= ck * pi
        return tuple(r[:phi]) if len(r) >= phi else tuple(r) + (0,) * (phi - len(r))

    def _power(self, k: int) -> Scalar:
        k %= self.E
        r = [0] * max(k + 1, self.phi)
        r[k] = 1
        return Scalar._make(self, self._reduce(r))

    def root(self, k: int) -> Scalar:
        return self._roots[k % self.E]

    def from_rational(self, x) -> Scalar:
        return Scalar._make(self, (_rat(x),) + (0,) * (self.phi - 1))

    def coerce(self, x) -> Scalar:
        if isinstance(x, Scalar):
            if x.F is not self:
                raise ConfigError(f"scalar from Q(zeta_{x.F.E}) used in session Q(zeta_{self.E})")
            return x
        if isinstance(x, _RATIONAL_TYPES):
            return self.from_rational(x)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot coerce {x!r} to a cyclotomic scalar")

    def inverse(self, a: Scalar) -> Scalar:
        hit = self._inv_cache.get(a.c)
        if hit is not None:
            return hit
        if not any(a.c):
            raise ZeroDivisionError("inverse of zero in the cyclotomic field")
        phi = self.phi
        # columns: a * zeta^j; solve M x = e_0 over Q
        cols = []
        for j in range(phi):
            r = [0] * (2 * phi)
            for i, ai in enumerate(a.c):
                r[i + j] = ai
            cols.append(self._reduce(r))
        m = [[mpq(cols[j][i]) for j in range(phi)] + [mpq(1 if i == 0 else 0)] for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            pv = m[col][col]
            m[col] = [v / pv for v in m[col]]
            for r in range(phi):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        res = Scalar._make(self, tuple(_rat(m[i][phi]) for i in range(phi)))
        if len(self._inv_cache) < 200000:
            self._inv_cache[a.c] = res
        return res


class Scalar:
    """Immutable element of the session field Q(zeta_E)."""

    __slots__ = ("c", "F")

    @classmethod
    def _make(cls, F: CyclotomicField, c: tuple) -> Scalar:
        s = object.__new__(cls)
        s.c = c
        s.F = F
        return s

    @property
    def E(self) -> int:
        return self.F.E

    @property
    def coeffs(self) -> tuple:
        return self.c

    def _other(self, o):
        if isinstance(o, Scalar):
            if o.F is not self.F:
                raise ConfigError("scalars from different cyclotomic sessions")
            return o
        if isinstance(o, _RATIONAL_TYPES):
            return self.F.from_rational(o)
        return None

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return Scalar._make(self.F, tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return Scalar._make(self.F, tuple(x - y for x, y in zip(self.c, o.c)))

    def __rsub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar._make(self.F, tuple(-x for x in self.c))

    def __mul__(self, o):
        if isinstance(o, _RATIONAL_TYPES):
            o = _rat(o)
            return Scalar._make(self.F, tuple(x * o for x in self.c))
        o = self._other(o)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if not any(a[1:]):
            a0 = a[0]
            return Scalar._make(self.F, tuple(a0 * y for y in b))
        if not any(b[1:]):
            b0 = b[0]
            return Scalar._make(self.F, tuple(x * b0 for x in a))
        phi = self.F.phi
        r = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        r[i + j] += ai * bj
        return Scalar._make(self.F, self.F._reduce(r))

    __rmul__ = __mul__

    def inv(self) -> Scalar:
        return self.F.inverse(self)

    def __truediv__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result, base = self.F.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, o):
        if isinstance(o, Scalar):
            return o.F is self.F and o.c == self.c
        if isinstance(o, _RATIONAL_TYPES):
            return self.c[0] == o and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def root_exponent(self) -> int | None:
        """k with self == zeta_E^k, or None when self is not an E-th root of unity."""
        for k, r in enumerate(self.F._roots):
            if r.c == self.c:
                return k
        return None

    def multiplicative_order(self) -> int | None:
        k = self.root_exponent()
        if k is None:
            return None
        return self.F.E // gcd(self.F.E, k)

    def __reduce__(self):
        return (_unpickle_scalar, (self.F.E, self.c))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)


# ---------------------------------------------------------------- session

_session: CyclotomicField | None = None


@lru_cache(maxsize=None)
def _field(E: int) -> CyclotomicField:
    return CyclotomicField(E)


def _unpickle_scalar(E: int, c: tuple) -> Scalar:
    return Scalar._make(_field(E), c)


def set_cyclotomic_order(E: int) -> CyclotomicField:
    """Make Q(zeta_E) the session field and return it."""
    global _session
    _session = _field(int(E))
    return _session


def get_field() -> CyclotomicField:
    if _session is None:
        raise ConfigError("no cyclotomic order configured; call set_cyclotomic_order(E) first")
    return _session


def cyclotomic_order() -> int:
    return get_field().E


@contextmanager
def cyclotomic_session(E: int):
    """Temporarily switch the session field."""
    global _session
    previous = _session
    set_cyclotomic_order(E)
    try:
        yield _session
    finally:
        _session = previous


def root_of_unity(E: int, k: int) -> Scalar:
    F = get_field()
    if E != F.E:
        raise ConfigError(f"requested zeta_{E} but the session order is {F.E}")
    return F.root(k)


def zeta(k: int = 1) -> Scalar:
    """zeta_E^k for the session order E."""
    return get_field().root(k)


def S(x) -> Scalar:
    """Coerce an int, fraction, literal string or Scalar into the session field."""
    return get_field().coerce(x)


def zero() -> Scalar:
    return get_field().zero


def one() -> Scalar:
    return get_field().one


def field_ops(a: Scalar, b: Scalar | None, op: str):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "eq":
        return a == b
    raise InputError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------- literals

_TERM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*(?:\*?\s*z(\d+)(?:\^(-?\d+))?)?\s*$")


def format_scalar(s: Scalar) -> str:
    E = s.F.E
    terms = []
    for k, c in enumerate(s.c):
        if not c:
            continue
        cs = str(c)
        if k == 0:
            terms.append(cs)
        else:
            mono = f"z{E}" if k == 1 else f"z{E}^{k}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(terms) if terms else "0"


def parse_scalar(text: str) -> Scalar:
    """Parse the output of format_scalar, e.g. '-1/2 + 3*z12^3 + z12'."""
    F = get_field()
    total = F.zero
    for part in text.split(" + "):
        m = _TERM.match(part)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise InputError(f"cannot parse scalar term {part!r}")
        coeff = Fraction(m.group(1)) if m.group(1) is not None else Fraction(1)
        value = F.from_rational(coeff)
        if m.group(2) is not None:
            E = int(m.group(2))
            k = int(m.group(3)) if m.group(3) is not None else 1
            if F.E % E:
                raise ConfigError(f"zeta_{E} is not in the session field Q(zeta_{F.E})")
            value = value * F.root(k * (F.E // E))
        total = total + value
    return total


# ---------------------------------------------------------------- q-combinatorics


def qint(j: int, q: Scalar) -> Scalar:
    """j_q = 1 + q + ... + q^(j-1)."""
    F = q.F
    total, p = F.zero, F.one
    for _ in range(j):
        total = total + p
        p = p * q
    return total


def qfactorial(m: int, q: Scalar) -> Scalar:
    out = q.F.one
    for j in range(1, m + 1):
        out = out * qint(j, q)
    return out


_pascal_cache: dict = {}


def _pascal_row(n: int, q: Scalar) -> list:
    key = (q.F.E, q.c, n)
    row = _pascal_cache.get(key)
    if row is not None:
        return row
    F = q.F
    if n == 0:
        row = [F.one]
    else:
        prev = _pascal_row(n - 1, q)
        row = [F.one]
        qi = F.one
        for i in range(1, n):
            qi = qi * q
            row.append(prev[i - 1] + qi * prev[i])
        row.append(F.one)
    _pascal_cache[key] = row
    return row


def qbinom(n: int, i: int, q: Scalar) -> Scalar:
    """Gaussian binomial (n choose i)_q via the q-Pascal rule; 0 when i is out of range."""
    if i < 0 or i > n or n < 0:
        return q.F.zero
    return _pascal_row(n, q)[i]
