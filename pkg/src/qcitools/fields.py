"""Exact coefficient fields: the rationals, prime fields and their extensions.

Elements are plain Python values where possible (``Fraction`` for QQ, ``int``
in ``[0, p)`` for F_p) so that polynomial code can stay cheap.  Extension
fields GF(p^m) use :class:`GFElement`, which carries its field and supports
the arithmetic operators so numpy object arrays work on it.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import FieldError

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in small:
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


class Field:
    """Common interface; concrete fields override the arithmetic."""

    characteristic: int = 0
    order: int | None = None
    name: str = "?"
    dtype: object = object

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> tuple:
        return (self.name,)

    # arithmetic -- generic fallbacks through Python operators
    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def array(self, data) -> np.ndarray:
        """Build a 2-d (or 1-d) numpy array of field elements."""
        return np.array(data, dtype=self.dtype)

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def reduce_array(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def to_str(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return self.to_str(a)

    def sqrt(self, a):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0
    order = None
    name = "QQ"
    dtype = object

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x.strip())
        raise FieldError(f"cannot coerce {x!r} into QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def sqrt(self, a):
        """Exact rational square root, or None."""
        if a < 0:
            return None
        num, den = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def to_str(self, a) -> str:
        return str(a)


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


class PrimeField(Field):
    dtype = np.int64

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p >= MAX_PRIME:
            raise FieldError(f"prime {p} exceeds 2^31")
        self.p = p
        self.characteristic = p
        self.order = p
        self.name = f"F{p}"

    def key(self) -> tuple:
        return ("F", self.p)

    def __call__(self, x):
        p = self.p
        if isinstance(x, (int, np.integer)):
            return int(x) % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError(f"{x} has denominator divisible by {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, str):
            return self(Fraction(x.strip()))
        if isinstance(x, GFElement) and x.field.p == p and x.is_base():
            return x.c[0]
        raise FieldError(f"cannot coerce {x!r} into {self.name}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return int(a + b) % self.p

    def sub(self, a, b):
        return int(a - b) % self.p

    def mul(self, a, b):
        return int(a) * int(b) % self.p

    def neg(self, a):
        return -int(a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.p)

    def div(self, a, b):
        return int(a) * self.inv(b) % self.p

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(int(a), e, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def reduce_array(self, arr: np.ndarray) -> np.ndarray:
        return np.mod(arr, self.p)

    def array(self, data) -> np.ndarray:
        return np.mod(np.array(data, dtype=np.int64), self.p)

    def to_str(self, a) -> str:
        # symmetric representative reads better in reports
        a = int(a) % self.p
        return str(a - self.p if a > self.p // 2 else a)

    def to_json(self, a):
        return int(a) % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random_element(self, rng: random.Random):
        return rng.randrange(self.p)

    def is_square(self, a) -> bool:
        a = int(a) % self.p
        return a == 0 or self.p == 2 or pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        """Tonelli-Shanks; returns None for non-residues."""
        p = self.p
        a = int(a) % p
        if a == 0 or p == 2:
            return a
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
        return r


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int, m: int = 1) -> Field:
    """The finite field with ``p**m`` elements (deterministic modulus)."""
    if m == 1:
        return PrimeField(p)
    return ExtensionField(p, _find_irreducible(p, m))


# ---------------------------------------------------------------------------
# univariate polynomial helpers over an arbitrary field
# polynomials are lists of field elements, lowest degree first, trimmed


def utrim(f: list, field: Field) -> list:
    f = list(f)
    while f and field.is_zero(f[-1]):
        f.pop()
    return f


def uadd(f: list, g: list, field: Field) -> list:
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else field.zero
        b = g[i] if i < len(g) else field.zero
        out.append(field.add(a, b))
    return utrim(out, field)


def usub(f: list, g: list, field: Field) -> list:
    return uadd(f, [field.neg(c) for c in g], field)


def umul(f: list, g: list, field: Field) -> list:
    if not f or not g:
        return []
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if field.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return utrim(out, field)


def udivmod(f: list, g: list, field: Field) -> tuple[list, list]:
    g = utrim(g, field)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = utrim(f, field)
    if len(r) < len(g):
        return [], r
    inv_lead = field.inv(g[-1])
    q = [field.zero] * (len(r) - len(g) + 1)
    while len(r) >= len(g):
        c = field.mul(r[-1], inv_lead)
        shift = len(r) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] = field.sub(r[shift + i], field.mul(c, b))
        r = utrim(r, field)
    return utrim(q, field), r


def umod(f: list, g: list, field: Field) -> list:
    return udivmod(f, g, field)[1]


def umonic(f: list, field: Field) -> list:
    if not f:
        return f
    inv = field.inv(f[-1])
    return [field.mul(c, inv) for c in f]


def ugcd(f: list, g: list, field: Field) -> list:
    a, b = utrim(f, field), utrim(g, field)
    while b:
        a, b = b, umod(a, b, field)
    return umonic(a, field)


def upowmod(f: list, e: int, m: list, field: Field) -> list:
    result = [field.one]
    base = umod(f, m, field)
    while e:
        if e & 1:
            result = umod(umul(result, base, field), m, field)
        base = umod(umul(base, base, field), m, field)
        e >>= 1
    return result


def ueval(f: list, x, field: Field):
    acc = field.zero
    for c in reversed(f):
        acc = field.add(field.mul(acc, x), c)
    return acc


def _x_power_minus_x(q: int, m: list, field: Field) -> list:
    """X^q - X reduced modulo m."""
    xq = upowmod([field.zero, field.one], q, m, field)
    return usub(xq, [field.zero, field.one], field)


def roots_in_field(f: list, field: Field, seed: int = 0) -> list:
    """All distinct roots of ``f`` lying in the finite ``field`` (sorted for determinism)."""
    q = field.order
    if q is None:
        raise FieldError("root finding needs a finite field")
    f = utrim(f, field)
    if len(f) <= 1:
        return []
    g = ugcd(f, _x_power_minus_x(q, f, field), field)
    rng = random.Random(seed)
    roots: list = []
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append(field.neg(field.div(h[0], h[1])))
            continue
        if q % 2 == 0:
            raise FieldError("characteristic 2 root splitting unsupported")
        while True:
            a = field.random_element(rng)
            t = upowmod([a, field.one], (q - 1) // 2, h, field)
            d = ugcd(usub(t, [field.one], field), h, field)
            if 1 < len(d) < len(h):
                break
        stack.append(d)
        stack.append(udivmod(h, d, field)[0])
    return sorted(roots, key=_sort_key)


def min_root_degree(f: list, field: "PrimeField") -> int | None:
    """Least k such that ``f`` (over F_p) has a root in GF(p^k); None if f is constant."""
    f = utrim(f, field)
    if len(f) <= 1:
        return None
    p = field.p
    xpk = [field.zero, field.one]
    for k in range(1, len(f)):
        xpk = upowmod(xpk, p, f, field)
        if len(ugcd(f, usub(xpk, [field.zero, field.one], field), field)) > 1:
            return k
    raise AssertionError("unreachable: a nonconstant polynomial has some root")


def is_irreducible_fp(f: Sequence[int], p: int) -> bool:
    """Rabin-style test for a monic polynomial over F_p."""
    field = PrimeField(p)
    f = utrim([c % p for c in f], field)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    xpk = [0, 1]
    for _ in range(1, n // 2 + 1):
        xpk = upowmod(xpk, p, f, field)
        if len(ugcd(f, usub(xpk, [0, 1], field), field)) > 1:
            return False
    return True


def _find_irreducible(p: int, m: int) -> tuple[int, ...]:
    # deterministic search: X^m + (low coefficients in lexicographic order)
    for n in range(1, p**m):
        low = []
        k = n
        for _ in range(m):
            low.append(k % p)
            k //= p
        f = low + [1]
        if f[0] != 0 and is_irreducible_fp(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over F{p}")


def _sort_key(a):
    if isinstance(a, GFElement):
        return a.c
    return a


# ---------------------------------------------------------------------------


class GFElement:
    __slots__ = ("field", "c")

    def __init__(self, field: "ExtensionField", c: tuple):
        self.field = field
        self.c = c

    def is_base(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def _coerce(self, other):
        if isinstance(other, GFElement):
            return other
        return self.field(other)

    def __add__(self, other):
        return self.field.add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field.sub(self, self._coerce(other))

    def __rsub__(self, other):
        return self.field.sub(self._coerce(other), self)

    def __mul__(self, other):
        return self.field.mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.field.div(self, self._coerce(other))

    def __rtruediv__(self, other):
        return self.field.div(self._coerce(other), self)

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.c == other.c
        if isinstance(other, (int, np.integer)):
            return self.c == self.field(other).c
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(self.c)

    def __repr__(self):
        return self.field.to_str(self)


class ExtensionField(Field):
    """GF(p^m) as F_p[t]/(modulus)."""

    dtype = object

    def __init__(self, p: int, modulus: Sequence[int]):
        self.p = p
        self.modulus = tuple(int(c) % p for c in modulus)
        self.m = len(self.modulus) - 1
        if self.modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        if not is_irreducible_fp(self.modulus, p):
            raise FieldError(f"modulus {self.modulus} is reducible over F{p}")
        self.characteristic = p
        self.order = p**self.m
        self.name = f"GF({p}^{self.m})"
        self._zero = GFElement(self, (0,) * self.m)
        self._one = GFElement(self, (1,) + (0,) * (self.m - 1))

    def key(self) -> tuple:
        return ("GF", self.p, self.modulus)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    @property
    def generator(self) -> GFElement:
        """The class of t."""
        if self.m == 1:
            return self(-self.modulus[0])
        return GFElement(self, (0, 1) + (0,) * (self.m - 2))

    def __call__(self, x):
        if isinstance(x, GFElement):
            if x.field == self:
                return x
            if x.is_base():
                return self(x.c[0])
            raise FieldError("cannot coerce between distinct extension fields")
        if isinstance(x, (int, np.integer)):
            return GFElement(self, (int(x) % self.p,) + (0,) * (self.m - 1))
        if isinstance(x, Fraction):
            return self(PrimeField(self.p)(x))
        if isinstance(x, (list, tuple)):
            c = [int(v) % self.p for v in x] + [0] * self.m
            if any(c[self.m :]):
                raise FieldError("coefficient vector longer than extension degree")
            return GFElement(self, tuple(c[: self.m]))
        raise FieldError(f"cannot coerce {x!r} into {self.name}")

    def add(self, a, b):
        p = self.p
        return GFElement(self, tuple((x + y) % p for x, y in zip(a.c, b.c)))

    def sub(self, a, b):
        p = self.p
        return GFElement(self, tuple((x - y) % p for x, y in zip(a.c, b.c)))

    def neg(self, a):
        p = self.p
        return GFElement(self, tuple(-x % p for x in a.c))

    def mul(self, a, b):
        p, m, mod = self.p, self.m, self.modulus
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(m):
                    prod[k - m + i] -= c * mod[i]
        return GFElement(self, tuple(v % p for v in prod[:m]))

    def inv(self, a):
        if not any(a.c):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def is_zero(self, a) -> bool:
        return not any(a.c)

    def to_str(self, a) -> str:
        terms = []
        for i, x in enumerate(a.c):
            if x:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(str(x) if i == 0 else (f"{x}*{mono}" if x != 1 else mono))
        return "+".join(terms) if terms else "0"

    def to_json(self, a):
        return list(a.c)

    def random_element(self, rng: random.Random):
        return GFElement(self, tuple(rng.randrange(self.p) for _ in range(self.m)))

    def elements(self) -> Iterator[GFElement]:
        for n in range(self.order):
            c = []
            for _ in range(self.m):
                c.append(n % self.p)
                n //= self.p
            yield GFElement(self, tuple(c))

    def is_square(self, a) -> bool:
        return self.is_zero(a) or self.pow(a, (self.order - 1) // 2) == self.one

    def sqrt(self, a):
        """Tonelli-Shanks over GF(q); None for non-squares."""
        if self.is_zero(a):
            return a
        q = self.order
        if self.pow(a, (q - 1) // 2) != self.one:
            return None
        s, t = 0, q - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        z = None
        for cand in self.elements():
            if not self.is_zero(cand) and self.pow(cand, (q - 1) // 2) != self.one:
                z = cand
                break
        m, c = s, self.pow(z, t)
        u, r = self.pow(a, t), self.pow(a, (t + 1) // 2)
        while u != self.one:
            i, u2 = 0, u
            while u2 != self.one:
                u2 = self.mul(u2, u2)
                i += 1
            b = self.pow(c, 1 << (m - i - 1))
            m, c = i, self.mul(b, b)
            u, r = self.mul(u, c), self.mul(r, b)
        return r

    def embed_subfield_root(self, f: Sequence[int], seed: int = 0) -> GFElement:
        """A root in this field of an F_p polynomial (raises if none)."""
        coeffs = [self(c) for c in f]
        roots = roots_in_field(coeffs, self, seed)
        if not roots:
            raise FieldError(f"polynomial has no root in {self.name}")
        return roots[0]


_FIELD_RE = re.compile(r"^(QQ|F(\d+)|GF\((\d+)\^(\d+)\))$")


def parse_field(text: str) -> Field:
    """``QQ``, ``F101`` or ``GF(101^2)``."""
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise FieldError(f"unknown field descriptor {text!r}")
    if m.group(1) == "QQ":
        return QQ
    if m.group(2):
        return GF(int(m.group(2)))
    return GF(int(m.group(3)), int(m.group(4)))


def require_odd_characteristic(field: Field, what: str) -> None:
    if field.characteristic == 2:
        raise FieldError(f"characteristic 2 is unsupported for {what}")
