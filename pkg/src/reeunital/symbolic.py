"""Sparse polynomials in u, v with integer coefficients, and the determinant
identities behind the order-8 embedding argument.

Everything is compared after full expansion; nothing is ever factored.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from .field import GF, is_irreducible


class MultiPoly:
    """Immutable polynomial sum c_ij u^i v^j, stored as {(i, j): c} without zeros."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        for k, c in (terms or {}).items():
            c = int(c)
            if c:
                t[(int(k[0]), int(k[1]))] = t.get((int(k[0]), int(k[1])), 0) + c
        self._terms = MappingProxyType({k: c for k, c in sorted(t.items()) if c})
        self._hash = hash(tuple(self._terms.items()))

    # constructors
    @classmethod
    def const(cls, c: int) -> "MultiPoly":
        return cls({(0, 0): c})

    @classmethod
    def u(cls) -> "MultiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> "MultiPoly":
        return cls({(0, 1): 1})

    @property
    def terms(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((i + j for i, j in self._terms), default=-1)

    def __eq__(self, other):
        other = _lift(other)
        return isinstance(other, MultiPoly) and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        other = _lift(other)
        t = dict(self._terms)
        for k, c in other._terms.items():
            t[k] = t.get(k, 0) + c
        return MultiPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        t: dict = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, 0) + c1 * c2
        return MultiPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def mod(self, p: int) -> "MultiPoly":
        """Reduce coefficients into [0, p)."""
        return MultiPoly({k: c % p for k, c in self._terms.items()})

    def subs_u(self, repl: "MultiPoly") -> "MultiPoly":
        """Substitute u <- repl (a polynomial, typically in v alone)."""
        out = MultiPoly()
        for (i, j), c in self._terms.items():
            out = out + c * (repl**i) * MultiPoly({(0, j): 1})
        return out

    def eval(self, F: GF, u0: int, v0: int) -> int:
        """Value at (u0, v0) in F; integer coefficients are reduced mod p."""
        acc = 0
        for (i, j), c in self._terms.items():
            coef = F.from_coeffs([c % F.p])
            acc = F.add(acc, F.mul(coef, F.mul(F.pow(u0, i), F.pow(v0, j))))
        return acc

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), key=lambda kc: (-(kc[0][0] + kc[0][1]), -kc[0][0])):
            mono = "*".join(x for x in (_pw("u", i), _pw("v", j)) if x)
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _pw(x: str, n: int) -> str:
    return "" if n == 0 else x if n == 1 else f"{x}^{n}"


def _lift(x) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.const(x)


def poly_arith(a: MultiPoly, b: MultiPoly, kind: str) -> MultiPoly:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def det3(m) -> MultiPoly:
    """Cofactor expansion along the first row."""
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


@dataclass(frozen=True)
class PolyVector3:
    x: MultiPoly
    y: MultiPoly
    z: MultiPoly

    def __post_init__(self):
        if self.x.is_zero() and self.y.is_zero() and self.z.is_zero():
            raise ValueError("symbolic point with all coordinates zero")

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def cross(self, other: "PolyVector3") -> tuple[MultiPoly, MultiPoly, MultiPoly]:
        a1, a2, a3 = self
        b1, b2, b3 = other
        return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)

    def eval(self, F: GF, u0: int, v0: int) -> tuple[int, int, int]:
        return tuple(c.eval(F, u0, v0) for c in self)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


u, v = MultiPoly.u(), MultiPoly.v()
ONE = MultiPoly.const(1)
ZERO = MultiPoly()

# frame: c1: X+Y+Z=0, c2: X=0, c3: Y=0, c4: Z=0, a: uX+vY+Z=0
FRAME_LINES = {
    "a": (u, v, ONE),
    "c1": (ONE, ONE, ONE),
    "c2": (ONE, ZERO, ZERO),
    "c3": (ZERO, ONE, ZERO),
    "c4": (ZERO, ZERO, ONE),
}

# Third coordinate of D1234 is uv - v^2: that is the sign the join/meet
# construction forces (see d_point_identities); with v^2 - uv instead the
# first factorization picks up an even, nonzero residual.
D_POINTS = {
    (1, 2, 3, 4): PolyVector3(v * v - v, v - u, u * v - v * v),
    (2, 1, 4, 3): PolyVector3(u - u * v, u - 1, v - u),
    (3, 4, 1, 2): PolyVector3(v, u * v - u, -(u * v)),
    (4, 3, 2, 1): PolyVector3(v - u, u * u - u, u - u * v),
}


def symbolic_d_point(pi) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """D_ijkl from the frame lines by joins and meets (cross products)."""
    L = FRAME_LINES
    i, j, k, l = (f"c{n}" for n in pi)
    X = _cross(_cross(L["a"], L[i]), _cross(L[j], L[l]))
    Y = _cross(_cross(L["a"], L[j]), _cross(L[k], L[l]))
    return _cross(X, Y)


PRINTED_D1234 = PolyVector3(v * v - v, v - u, v * v - u * v)


def _proportional(a, b) -> bool:
    return all(c.is_zero() for c in _cross(a, b))


@dataclass
class Identity:
    name: str
    lhs: MultiPoly
    rhs: MultiPoly
    modulus: int | None = None

    @property
    def residual(self) -> MultiPoly:
        r = self.lhs - self.rhs
        return r.mod(self.modulus) if self.modulus else r

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "over": f"GF({self.modulus})" if self.modulus else "Z",
            "lhs": str(self.lhs.mod(self.modulus) if self.modulus else self.lhs),
            "rhs": str(self.rhs.mod(self.modulus) if self.modulus else self.rhs),
            "residual": str(self.residual),
            "ok": self.ok,
        }


def thm1_identities() -> list[Identity]:
    D1, D2, D3, D4 = (tuple(D_POINTS[k]) for k in ((1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1)))
    base = u * (u - 1) * v * (v - 1)
    det_a = det3([D1, D2, D3])
    det_b = det3([D1, D2, D4])
    f_a = base * (v * v - u * v + 2 * u - 3 * v)
    f_b = base * (u * v - u * u + 2 * u - 3 * v + 1)
    out = [
        Identity("a1: det(D1234, D2143, D3412) factorization", det_a, f_a),
        Identity("a2: det(D1234, D2143, D4321) factorization", det_b, f_b),
        Identity("b: difference of the two determinants", det_a - det_b, base * ((u - v) ** 2 - 1)),
    ]
    v1 = v + 1
    out += [
        Identity("c1: first determinant at u = v+1", det_a.mod(2).subs_u(v1), ZERO, 2),
        Identity("c2: second determinant at u = v+1", det_b.mod(2).subs_u(v1), ZERO, 2),
    ]
    m = [(v, v + 1, ZERO), (v * v + v, ONE, v), (v + 1, ONE, v * v)]
    out.append(Identity("d: det(a^c4, D1234, D3241) at u = v+1", det3(m), v * (v + 1) * (v**3 + v**2 + 1), 2))
    return out


def d_point_identities() -> list[tuple[str, bool]]:
    """The displayed D-point coordinates agree (projectively) with join/meet computations."""
    out = []
    for pi, D in D_POINTS.items():
        out.append((f"D{''.join(map(str, pi))}", _proportional(tuple(D), symbolic_d_point(pi))))
    # in characteristic 2 with u = v+1: a meet c4 and D3241
    a_c4 = _cross(FRAME_LINES["a"], FRAME_LINES["c4"])
    d3241 = symbolic_d_point((3, 2, 4, 1))

    def red(vec):
        return tuple(c.mod(2).subs_u(v + 1).mod(2) for c in vec)

    def prop2(a, b):
        return all(c.mod(2).is_zero() for c in _cross(a, b))

    out.append(("a^c4 (char 2)", prop2(red(a_c4), (v, v + 1, ZERO))))
    out.append(("D3241 (char 2)", prop2(red(d3241), (v + 1, ONE, v * v))))
    return out


def sign_variant_check() -> dict:
    """Diagnostic: D1234 with third coordinate v^2 - uv instead of uv - v^2."""
    D2, D3 = tuple(D_POINTS[2, 1, 4, 3]), tuple(D_POINTS[3, 4, 1, 2])
    base = u * (u - 1) * v * (v - 1)
    res = det3([tuple(PRINTED_D1234), D2, D3]) - base * (v * v - u * v + 2 * u - 3 * v)
    return {
        "coordinates": [str(c) for c in PRINTED_D1234],
        "matches_construction": _proportional(tuple(PRINTED_D1234), symbolic_d_point((1, 2, 3, 4))),
        "factorization_residual": str(res),
        "residual_vanishes_mod_2": res.mod(2).is_zero(),
    }


def verify_thm1_identities() -> dict:
    ids = thm1_identities()
    irreducible = is_irreducible([1, 0, 1, 1], 2)  # 1 + v^2 + v^3, low degree first
    dpts = d_point_identities()
    return {
        "identities": [i.as_dict() for i in ids],
        "d_points": [{"name": n, "ok": ok} for n, ok in dpts],
        "v3_v2_1_irreducible_over_GF2": irreducible,
        "d1234_sign_variant": sign_variant_check(),
        "ok": all(i.ok for i in ids) and irreducible and all(ok for _, ok in dpts),
    }
