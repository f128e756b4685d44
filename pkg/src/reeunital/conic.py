"""The conic X^2 + YZ = 0 in PG(2,8), its nucleus and the hyperoval.

Line types are decided by counting conic points on the line; the trace
criterion for lines Y = mX + bZ is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .field import GF, gf8
from .groups import PermGroup
from .plane import Collineation, Plane, collineation_from_frames, pg

SECANT, TANGENT, EXTERNAL = "secant", "tangent", "external"


def conic_form(F: GF, v) -> int:
    x, y, z = v
    return F.add(F.mul(x, x), F.mul(y, z))


@dataclass(frozen=True)
class HyperovalContext:
    plane: Plane
    conic: tuple[int, ...]
    nucleus: int
    hyperoval: frozenset
    line_type: tuple[str, ...]
    external_points: tuple[int, ...]
    external_lines: tuple[int, ...]
    tangents: tuple[int, ...]

    @property
    def field(self) -> GF:
        return self.plane.field

    def census(self) -> dict:
        types = self.line_type
        P = self.plane
        per_point = {
            len([l for l in P.lines_on_pt[p] if types[l] == EXTERNAL]) for p in self.external_points
        }
        return {
            "points": P.n,
            "lines": P.n,
            "conic_points": len(self.conic),
            "nucleus": list(P.points[self.nucleus]),
            "hyperoval_points": len(self.hyperoval),
            "secant_lines": types.count(SECANT),
            "tangent_lines": types.count(TANGENT),
            "external_lines": types.count(EXTERNAL),
            "external_points": len(self.external_points),
            "external_lines_per_external_point": sorted(per_point),
        }


def _count_type(n: int) -> str:
    return {2: SECANT, 1: TANGENT, 0: EXTERNAL}[n]


def build_context(F: GF | None = None) -> HyperovalContext:
    F = F or gf8()
    if F.p != 2:
        raise ValueError("the nucleus/hyperoval construction needs characteristic 2")
    return _build(F)


@lru_cache(maxsize=None)
def _build(F: GF) -> HyperovalContext:
    P = pg(F)
    conic = tuple(i for i, v in enumerate(P.points) if conic_form(F, v) == 0)
    cset = set(conic)
    counts = [len(cset.intersection(P.pts_on_line[l])) for l in range(P.n)]
    types = tuple(_count_type(c) for c in counts)
    tangents = tuple(l for l in range(P.n) if types[l] == TANGENT)
    # nucleus: meet of two tangents; the gradient of x^2+yz at (x0,y0,z0) is (0, z0, y0)
    N = P.meet(tangents[0], tangents[1])
    hyper = frozenset(cset | {N})
    ext_pts = tuple(p for p in range(P.n) if p not in hyper)
    ext_lines = tuple(l for l in range(P.n) if types[l] == EXTERNAL)
    return HyperovalContext(P, conic, N, hyper, types, ext_pts, ext_lines, tangents)


def classify_line(ctx: HyperovalContext, line: int) -> str:
    return ctx.line_type[line]


def tangent_at(ctx: HyperovalContext, point: int) -> int:
    """The gradient line (0, z0, y0) at a conic point."""
    x, y, z = ctx.plane.points[point]
    return ctx.plane.line_of((0, z, y))


def external_by_trace(F: GF, m: int, b: int) -> bool:
    """Trace criterion for Y = mX + bZ (m != 0) to miss X^2 + YZ = 0."""
    return F.trace(F.div(b, F.mul(m, m))) == 1


def _hyperoval_stabilizer_collineations(ctx: HyperovalContext) -> list[Collineation]:
    """Every collineation preserving O, by brute force over frames of O.

    A collineation preserving O sends 4 fixed points of O to an ordered
    4-tuple of points of O (any 4 are in general position), so every one
    is found by solving for the frame map and filtering.
    """
    F, P = ctx.field, ctx.plane
    hyper = sorted(ctx.hyperoval)
    coords = [P.points[i] for i in hyper]
    ref = coords[:4]
    hset = set(ctx.hyperoval)
    out = []
    seen = set()
    for f in range(F.e):
        for tup in permutations(coords, 4):
            g = collineation_from_frames(F, ref, list(tup), f)
            if g is None:
                continue
            if all(P.point_of(g.point(c)) in hset for c in coords):
                key = (g.matrix, g.frob)
                if key not in seen:
                    seen.add(key)
                    out.append(g)
    return out


def hyperoval_stabilizer(ctx: HyperovalContext) -> tuple[list[Collineation], PermGroup]:
    """All collineations preserving O, and the group they form acting on plane points."""
    return _stabilizer_cached(ctx)


@lru_cache(maxsize=None)
def _stabilizer_cached(ctx):
    colls = _hyperoval_stabilizer_collineations(ctx)
    colls.sort(key=lambda g: (g.frob, g.matrix))
    P = ctx.plane
    perms = [P.point_perm(g) for g in colls]
    return colls, PermGroup.from_elements(perms, P.n)


def line_action(P: Plane, point_perm) -> tuple[int, ...]:
    """Action on lines induced by a point permutation that is a collineation."""
    out = []
    for l in range(P.n):
        a, b = P.pts_on_line[l][:2]
        out.append(P.join(point_perm[a], point_perm[b]))
    return tuple(out)


def count_conics_by_forms(F: GF) -> int:
    """Number of conics, counted as projective quadratic forms whose zero set is a (q+1)-arc."""
    P = pg(F)
    q = F.q
    addt = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    mult = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    mons = np.array(
        [(F.mul(x, x), F.mul(y, y), F.mul(z, z), F.mul(x, y), F.mul(x, z), F.mul(y, z)) for x, y, z in P.points],
        dtype=np.int64,
    )
    forms = np.array(list(product(range(q), repeat=6)), dtype=np.int64)
    # one representative per projective class: last nonzero coefficient equal to 1
    nz = forms != 0
    has = nz.any(axis=1)
    last = 5 - np.argmax(nz[:, ::-1], axis=1)
    forms = forms[has & (forms[np.arange(len(forms)), last] == 1)]
    total = 0
    for chunk in np.array_split(forms, max(1, len(forms) // 4096)):
        acc = np.zeros((len(chunk), P.n), dtype=np.int64)
        for k in range(6):
            acc = addt[acc, mult[chunk[:, k][:, None], mons[None, :, k]]]
        zero = acc == 0
        for row in np.nonzero(zero.sum(axis=1) == q + 1)[0]:
            if _is_arc(P, np.nonzero(zero[row])[0].tolist()):
                total += 1
    return total


def _is_arc(P: Plane, pts) -> bool:
    pts = list(pts)
    seen = set()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            l = P.join(pts[i], pts[j])
            if l in seen:
                return False
            seen.add(l)
    return True


def pgl3_order(q: int) -> int:
    return (q**3 - 1) * (q**3 - q) * (q**3 - q**2) // (q - 1)
