"""The desarguesian plane PG(2,q): points, lines, incidence, semilinear collineations.

Coordinates are triples of packed field ints (see ``field.GF``).  Both points
and lines are normalized so that the last nonzero coordinate is 1; a line
[a, b, c] is the set of points with aX + bY + cZ = 0.  Heavy code works on
integer indices into ``Plane.points`` / ``Plane.lines``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .field import GF, FieldError, field_of_order


# -- coordinate helpers ------------------------------------------------------

def normalize(F: GF, v) -> tuple[int, int, int]:
    for c in reversed(v):
        if c:
            s = F.inv(c)
            return tuple(F.mul(x, s) for x in v)
    raise ValueError("zero vector has no projective normalization")


def dot(F: GF, a, b) -> int:
    return F.add(F.add(F.mul(a[0], b[0]), F.mul(a[1], b[1])), F.mul(a[2], b[2]))


def cross(F: GF, a, b) -> tuple[int, int, int]:
    m, s = F.mul, F.sub
    return (
        s(m(a[1], b[2]), m(a[2], b[1])),
        s(m(a[2], b[0]), m(a[0], b[2])),
        s(m(a[0], b[1]), m(a[1], b[0])),
    )


def det3(F: GF, rows) -> int:
    return dot(F, rows[0], cross(F, rows[1], rows[2]))


def mat_mul(F: GF, A, B) -> tuple:
    """Product of 3x3 matrices stored row-major as 9-tuples."""
    out = []
    for i in range(3):
        for j in range(3):
            acc = 0
            for k in range(3):
                acc = F.add(acc, F.mul(A[3 * i + k], B[3 * k + j]))
            out.append(acc)
    return tuple(out)


def mat_vec(F: GF, A, v) -> tuple[int, int, int]:
    return tuple(
        F.add(F.add(F.mul(A[3 * i], v[0]), F.mul(A[3 * i + 1], v[1])), F.mul(A[3 * i + 2], v[2]))
        for i in range(3)
    )


def vec_mat(F: GF, v, A) -> tuple[int, int, int]:
    return tuple(
        F.add(F.add(F.mul(v[0], A[j]), F.mul(v[1], A[3 + j])), F.mul(v[2], A[6 + j]))
        for j in range(3)
    )


def mat_det(F: GF, A) -> int:
    return det3(F, (A[0:3], A[3:6], A[6:9]))


def mat_inv(F: GF, A) -> tuple:
    d = mat_det(F, A)
    if d == 0:
        raise ValueError("singular matrix")
    rows = (A[0:3], A[3:6], A[6:9])
    # columns of the adjugate are cross products of rows
    c0 = cross(F, rows[1], rows[2])
    c1 = cross(F, rows[2], rows[0])
    c2 = cross(F, rows[0], rows[1])
    di = F.inv(d)
    return tuple(F.mul(x, di) for x in (c0[0], c1[0], c2[0], c0[1], c1[1], c2[1], c0[2], c1[2], c2[2]))


def mat_frob(F: GF, A, k: int) -> tuple:
    if k % F.e == 0:
        return tuple(A)
    return tuple(F.frob(x, k) for x in A)


def mat_normalize(F: GF, A) -> tuple:
    for x in A:
        if x:
            s = F.inv(x)
            return tuple(F.mul(y, s) for y in A)
    raise ValueError("zero matrix")


def transpose(A) -> tuple:
    return (A[0], A[3], A[6], A[1], A[4], A[7], A[2], A[5], A[8])


IDENTITY = (1, 0, 0, 0, 1, 0, 0, 0, 1)


def frame_matrix(F: GF, pts) -> tuple | None:
    """Matrix sending e1, e2, e3, (1,1,1) to the four given points (projectively).

    Returns None when the points are not in general position.
    """
    p1, p2, p3, p4 = pts
    A = (p1[0], p2[0], p3[0], p1[1], p2[1], p3[1], p1[2], p2[2], p3[2])
    if mat_det(F, A) == 0:
        return None
    lam = mat_vec(F, mat_inv(F, A), p4)
    if 0 in lam:
        return None
    return tuple(F.mul(A[3 * i + j], lam[j]) for i in range(3) for j in range(3))


# -- value types ---------------------------------------------------------------

@dataclass(frozen=True)
class ProjPoint:
    field: GF
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", normalize(self.field, tuple(self.coords)))

    def __str__(self):
        return "(" + ":".join(self.field.format(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class ProjLine:
    field: GF
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", normalize(self.field, tuple(self.coords)))

    @classmethod
    def slope_intercept(cls, F: GF, m: int, b: int) -> "ProjLine":
        """The line Y = mX + bZ, i.e. mX - Y + bZ = 0."""
        return cls(F, (m, F.neg(1), b))

    def as_slope_intercept(self) -> tuple[int, int] | None:
        """(m, b) with the line equal to Y = mX + bZ, or None for lines parallel to the Y-axis."""
        a, b, c = self.coords
        if b == 0:
            return None
        F = self.field
        s = F.neg(F.inv(b))
        return F.mul(a, s), F.mul(c, s)

    def __str__(self):
        return "[" + ":".join(self.field.format(c) for c in self.coords) + "]"


def _same_field(objs):
    F = objs[0].field
    for o in objs[1:]:
        if o.field != F:
            raise FieldError(f"mixed fields: {F.name} and {o.field.name}")
    return F


def incidence(P: ProjPoint, L: ProjLine) -> bool:
    F = _same_field([P, L])
    return dot(F, P.coords, L.coords) == 0


def join(P: ProjPoint, Q: ProjPoint) -> ProjLine:
    F = _same_field([P, Q])
    if P == Q:
        raise ValueError("join of a point with itself")
    return ProjLine(F, cross(F, P.coords, Q.coords))


def meet(L: ProjLine, M: ProjLine) -> ProjPoint:
    F = _same_field([L, M])
    if L == M:
        raise ValueError("meet of a line with itself")
    return ProjPoint(F, cross(F, L.coords, M.coords))


def _all_on_one(F: GF, vecs) -> bool:
    vecs = list(dict.fromkeys(normalize(F, v) for v in vecs))
    if len(vecs) <= 2:
        return True
    c = cross(F, vecs[0], vecs[1])
    return all(dot(F, c, v) == 0 for v in vecs[2:])


def collinear(points) -> bool:
    points = list(points)
    if len(points) < 3:
        raise ValueError("collinearity needs at least 3 points")
    F = _same_field(points)
    return _all_on_one(F, [p.coords for p in points])


def concurrent(lines) -> bool:
    lines = list(lines)
    if len(lines) < 3:
        raise ValueError("concurrency needs at least 3 lines")
    F = _same_field(lines)
    return _all_on_one(F, [l.coords for l in lines])


# -- collineations -------------------------------------------------------------

@dataclass(frozen=True)
class Collineation:
    """x -> M . x^(p^frob) on point coordinates (column vectors).

    Composition ``g * h`` applies h first.
    """

    field: GF
    matrix: tuple
    frob: int = 0

    def __post_init__(self):
        F = self.field
        M = tuple(self.matrix)
        if len(M) != 9:
            raise ValueError("matrix must have 9 entries")
        if mat_det(F, M) == 0:
            raise ValueError("singular collineation matrix")
        object.__setattr__(self, "matrix", mat_normalize(F, M))
        object.__setattr__(self, "frob", self.frob % F.e)

    def to_json(self) -> dict:
        return {"matrix": [list(self.matrix[i : i + 3]) for i in (0, 3, 6)], "frob": self.frob}

    def __mul__(self, other: "Collineation") -> "Collineation":
        F = self.field
        M = mat_mul(F, self.matrix, mat_frob(F, other.matrix, self.frob))
        return Collineation(F, M, self.frob + other.frob)

    def inverse(self) -> "Collineation":
        F = self.field
        # (M, f)^-1 = (Phi^-f(M^-1), -f)
        return Collineation(F, mat_frob(F, mat_inv(F, self.matrix), -self.frob), -self.frob)

    def point(self, v) -> tuple[int, int, int]:
        F = self.field
        if self.frob:
            v = tuple(F.frob(x, self.frob) for x in v)
        return normalize(F, mat_vec(F, self.matrix, v))

    def line(self, v) -> tuple[int, int, int]:
        F = self.field
        if self.frob:
            v = tuple(F.frob(x, self.frob) for x in v)
        return normalize(F, vec_mat(F, v, mat_inv(F, self.matrix)))

    def apply(self, obj):
        if isinstance(obj, ProjPoint):
            return ProjPoint(self.field, self.point(obj.coords))
        if isinstance(obj, ProjLine):
            return ProjLine(self.field, self.line(obj.coords))
        raise TypeError(f"cannot apply a collineation to {type(obj).__name__}")

    def is_identity(self) -> bool:
        return self.frob == 0 and self.matrix == IDENTITY

    def order(self) -> int:
        g, n = self, 1
        while not g.is_identity():
            g = g * self
            n += 1
        return n

    def dual(self) -> "Collineation":
        """The collineation induced on the dual plane (line coordinates read as points)."""
        F = self.field
        return Collineation(F, transpose(mat_inv(F, self.matrix)), self.frob)


def identity(F: GF) -> Collineation:
    return Collineation(F, IDENTITY, 0)


def tau(F: GF, c: int) -> Collineation:
    """The elation (x, y, z) -> (x + cz, y + c^2 z, z) with axis Z = 0."""
    return Collineation(F, (1, 0, c, 0, 1, F.mul(c, c), 0, 0, 1), 0)


def frobenius_collineation(F: GF) -> Collineation:
    return Collineation(F, IDENTITY, 1)


def collineation_from_frames(F: GF, src, dst, frob: int = 0) -> Collineation | None:
    """The collineation with Frobenius part ``frob`` mapping the 4 points src to dst, if any."""
    src = [tuple(F.frob(x, frob) for x in v) for v in src]
    A = frame_matrix(F, src)
    B = frame_matrix(F, dst)
    if A is None or B is None:
        return None
    return Collineation(F, mat_mul(F, B, mat_inv(F, A)), frob)


# -- the plane -----------------------------------------------------------------

class Plane:
    """PG(2, q) with enumerated points and lines and incidence tables."""

    def __init__(self, F: GF):
        if F.q > 1024:
            raise ValueError("planes of order > 1024 are out of scope")
        self.field = F
        self.q = F.q
        q = F.q
        coords = [(x, y, 1) for y in range(q) for x in range(q)]
        coords += [(x, 1, 0) for x in range(q)]
        coords.append((1, 0, 0))
        self.points = coords
        self.lines = list(coords)
        self.point_index = {c: i for i, c in enumerate(coords)}
        self.line_index = self.point_index
        self.n = len(coords)
        pts_on = [[] for _ in range(self.n)]
        lines_on = [[] for _ in range(self.n)]
        for li, l in enumerate(self.lines):
            for pi in self._points_on_coords(l):
                pts_on[li].append(pi)
                lines_on[pi].append(li)
        self.pts_on_line = [tuple(sorted(x)) for x in pts_on]
        self.lines_on_pt = [tuple(sorted(x)) for x in lines_on]
        self.line_mask = [sum(1 << p for p in pts) for pts in self.pts_on_line]
        self.point_mask = [sum(1 << l for l in ls) for ls in self.lines_on_pt]

    def _points_on_coords(self, l):
        F = self.field
        out = []
        for v in self._solutions(*l):
            out.append(self.point_index[normalize(F, v)])
        return sorted(set(out))

    def _solutions(self, a, b, c):
        F, q = self.field, self.q
        # two independent solutions span the line
        basis = []
        for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            w = cross(F, (a, b, c), v)
            if any(w) and (not basis or any(cross(F, basis[0], w))):
                basis.append(w)
            if len(basis) == 2:
                break
        u, w = basis
        yield u
        for t in range(q):
            yield tuple(F.add(F.mul(t, x), y) for x, y in zip(u, w))

    # -- index-level operations --

    def incident(self, p: int, l: int) -> bool:
        return (self.line_mask[l] >> p) & 1 == 1

    def join(self, p: int, r: int) -> int:
        if p == r:
            raise ValueError("join of a point with itself")
        F = self.field
        return self.line_index[normalize(F, cross(F, self.points[p], self.points[r]))]

    def meet(self, l: int, m: int) -> int:
        if l == m:
            raise ValueError("meet of a line with itself")
        F = self.field
        return self.point_index[normalize(F, cross(F, self.lines[l], self.lines[m]))]

    def point_of(self, coords) -> int:
        return self.point_index[normalize(self.field, coords)]

    def line_of(self, coords) -> int:
        return self.line_index[normalize(self.field, coords)]

    def collinear(self, pts) -> bool:
        pts = list(dict.fromkeys(pts))
        if len(pts) <= 2:
            return True
        return all(self.incident(p, self.join(pts[0], pts[1])) for p in pts[2:])

    def concurrent(self, lines) -> bool:
        lines = list(dict.fromkeys(lines))
        if len(lines) <= 2:
            return True
        P = self.meet(lines[0], lines[1])
        return all(self.incident(P, l) for l in lines[2:])

    def point_perm(self, g: Collineation) -> tuple[int, ...]:
        return tuple(self.point_index[g.point(c)] for c in self.points)

    def line_perm(self, g: Collineation) -> tuple[int, ...]:
        return tuple(self.line_index[g.line(c)] for c in self.lines)

    def fmt_point(self, p: int, style: str = "power") -> str:
        return "(" + ":".join(self.field.format(c, style) for c in self.points[p]) + ")"

    def fmt_line(self, l: int, style: str = "power") -> str:
        return "[" + ":".join(self.field.format(c, style) for c in self.lines[l]) + "]"


@lru_cache(maxsize=None)
def pg(F: GF) -> Plane:
    return Plane(F)


def enumerate_plane(q: int) -> Plane:
    """PG(2, q) over the default presentation of GF(q)."""
    return pg(field_of_order(q))
