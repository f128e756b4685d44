"""Exact arithmetic in small finite fields GF(p^e).

Elements are stored as integers packing their coefficient vector in base p,
least-degree coefficient in the lowest digit.  The coefficient vector is the
source of truth: every product is computed by polynomial multiplication and
reduction, and the log/antilog tables used by the hot loops are derived from
that arithmetic (and cross-checked against it in the tests).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

MAX_ORDER = 1 << 20


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Long division of coefficient lists over GF(p); b must be nonzero."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] * inv_lead % p
        quot[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] = (a[i + shift] - f * bc) % p
        _poly_trim(a)
    return quot, a


def find_factor(modulus: list[int], p: int) -> list[int] | None:
    """Return a monic factor of degree 1..deg/2 by trial division, or None."""
    deg = len(modulus) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            cand = list(low) + [1]
            _, r = _poly_divmod(modulus, cand, p)
            if not r:
                return cand
    return None


def is_irreducible(modulus: list[int], p: int) -> bool:
    return len(modulus) > 1 and find_factor(modulus, p) is None


def poly_str(coeffs, var: str = "X") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i > 0 and c == 1:
            terms.append(mono)
        elif i == 0:
            terms.append(str(c))
        else:
            terms.append(f"{c}{mono}")
    return "+".join(terms) if terms else "0"


class GF:
    """The field GF(p^e) = GF(p)[X]/(modulus).

    ``modulus`` is the coefficient list of a monic irreducible polynomial,
    least-degree first, so X^3+X+1 is ``[1, 1, 0, 1]``.
    """

    def __init__(self, p: int, e: int, modulus):
        modulus = [int(c) for c in modulus]
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError("degree must be positive")
        if p**e > MAX_ORDER:
            raise FieldError(f"field order {p}^{e} exceeds desk-scale bound {MAX_ORDER}")
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}")
        if any(not 0 <= c < p for c in modulus):
            raise FieldError("modulus coefficients must be reduced mod p")
        factor = find_factor(modulus, p)
        if factor is not None:
            raise FieldError(
                f"modulus {poly_str(modulus)} is reducible over GF({p}): "
                f"divisible by {poly_str(factor)}"
            )
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        self._build_tables()

    # -- vector arithmetic (source of truth) ---------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, c) -> int:
        c = [x % self.p for x in c]
        if len(c) > self.e:
            _, c = _poly_divmod(c, list(self.modulus), self.p)
        val = 0
        for x in reversed(c):
            val = val * self.p + x % self.p
        return val

    def vec_add(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.from_coeffs([(x + y) % self.p for x, y in zip(ca, cb)])

    def vec_mul(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.from_coeffs(prod)

    def _build_tables(self):
        q, p = self.q, self.p
        if p == 2:
            self._add = None
        else:
            self._add = [[self.vec_add(a, b) for b in range(q)] for a in range(q)]
        self._neg = [self.from_coeffs([(-x) % p for x in self.coeffs(a)]) for a in range(q)]
        self.gen = self.from_coeffs([0, 1]) if self.e > 1 else (-self.modulus[0]) % p
        # the generator X if it is primitive, else the least primitive element
        order = [self.gen] + sorted((x for x in range(1, q) if x != self.gen), key=self.coeffs)
        for g in order:
            if g == 0:
                continue
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self.vec_mul(x, g)
            if len(exp) == q - 1:
                break
        self.primitive = g
        self._exp = exp + exp
        self._log = [0] * q
        for i, x in enumerate(exp):
            self._log[x] = i

    # -- fast arithmetic on packed ints --------------------------------------

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self._add is None:
            return a ^ b
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        return self.pow(a, self.p ** (k % self.e))

    def log(self, a: int) -> int:
        """Discrete log to the base of ``self.primitive``."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def trace(self, a: int) -> int:
        """Absolute trace a + a^p + ... + a^(p^(e-1)); lands in the prime field."""
        t = 0
        x = a
        for _ in range(self.e):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        return t

    def key(self, a: int) -> tuple[int, ...]:
        """Canonical ordering: lexicographic on coefficient vectors, least degree first."""
        return self.coeffs(a)

    # -- presentation ---------------------------------------------------------

    @property
    def name(self) -> str:
        return f"GF({self.p}^{self.e})"

    def spec_string(self) -> str:
        return f"GF({self.p}^{self.e}; {','.join(map(str, self.modulus))})"

    def format(self, a: int, style: str = "power", var: str = "g") -> str:
        if style == "power" and self.gen == self.primitive and self.e > 1:
            if a == 0:
                return "0"
            k = self._log[a]
            return "1" if k == 0 else (var if k == 1 else f"{var}^{k}")
        return poly_str(self.coeffs(a), var)

    def element(self, a) -> "FieldElement":
        if isinstance(a, FieldElement):
            return a
        if isinstance(a, (list, tuple)):
            a = self.from_coeffs(a)
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element code of {self.name}")
        return FieldElement(self, a)

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return self.spec_string()


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    def _check(self, other) -> int:
        if isinstance(other, int):
            return self.field.from_coeffs([other % self.field.p])
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldError(f"mixed fields: {self.field.name} and {other.field.name}")
        return other.value

    def __add__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._check(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return self.field.format(self.value)


def arith(a: FieldElement, b: FieldElement | int | None, kind: str) -> FieldElement:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {kind!r}")


def make_field(p: int, e: int, modulus) -> GF:
    return _cached_field(p, e, tuple(modulus))


@lru_cache(maxsize=None)
def _cached_field(p, e, modulus) -> GF:
    return GF(p, e, modulus)


def gf8() -> GF:
    """GF(8) with generator a root of X^3+X+1."""
    return make_field(2, 3, (1, 1, 0, 1))


_CONWAY_LIKE = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
}


def field_of_order(q: int) -> GF:
    """A default presentation of GF(q); q must be a prime power."""
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise FieldError(f"{q} is not a prime power")
    if (p, e) in _CONWAY_LIKE:
        return make_field(p, e, _CONWAY_LIKE[(p, e)])
    if e == 1:
        return make_field(p, 1, ((-1) % p, 1))
    for low in product(range(p), repeat=e):
        mod = list(low) + [1]
        if mod[0] and is_irreducible(mod, p):
            return make_field(p, e, mod)
    raise FieldError(f"no irreducible polynomial found for GF({q})")


_SPEC_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*\^\s*(\d+)\s*;\s*([\d\s,]+)\)\s*$")


def parse_field(text: str) -> GF:
    """Parse the ``GF(p^e; c0,c1,...,ce)`` form (a bare order like ``9`` also works)."""
    text = text.strip()
    if text.isdigit():
        return field_of_order(int(text))
    m = _SPEC_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse field spec {text!r}")
    p, e = int(m.group(1)), int(m.group(2))
    coeffs = [int(c) for c in m.group(3).replace(" ", "").split(",") if c]
    return make_field(p, e, coeffs)


def subfield_embed(sub: GF, sup: GF) -> list[int] | None:
    """Field embedding sub -> sup as a lookup list, or None if e(sub) does not divide e(sup).

    The generator of ``sub`` goes to the least root (coefficient order) of
    its modulus in ``sup``.
    """
    if sub.p != sup.p:
        raise FieldError("fields have different characteristic")
    if sup.e % sub.e:
        return None
    roots = [x for x in sup.elements() if evaluate_poly(sup, sub.modulus, x) == 0]
    root = min(roots, key=sup.key)
    images = []
    for a in sub.elements():
        acc = 0
        for c in reversed(sub.coeffs(a)):
            acc = sup.add(sup.mul(acc, root), sup.from_coeffs([c]))
        images.append(acc)
    return images


def evaluate_poly(field: GF, coeffs, x: int) -> int:
    """Evaluate an integer-coefficient polynomial (least degree first) at x."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = field.add(field.mul(acc, x), field.from_coeffs([c % field.p]))
    return acc
