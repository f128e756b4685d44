"""Embeddings of designs into desarguesian planes.

An embedding sends design points to plane points and blocks to lines,
injectively, such that incidence holds exactly when it holds in the design.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .conic import HyperovalContext
from .design import IncidenceDesign, build_ree_unital, onan_configurations
from .field import GF, subfield_embed
from .groups import PermGroup
from .plane import Collineation, Plane, collineation_from_frames, frame_matrix, pg
from .search import BudgetExceeded, MapSearch, PlaneTarget, run_parallel

DEFAULT_BUDGET = int(os.environ.get("REEUNITAL_BUDGET", 10**9))


@dataclass(frozen=True)
class Embedding:
    design: IncidenceDesign
    plane: Plane
    point_map: tuple[int, ...]
    block_map: tuple[int, ...]

    def point_coords(self, p: int):
        return self.plane.points[self.point_map[p]]

    def block_coords(self, b: int):
        return self.plane.lines[self.block_map[b]]

    def to_json(self) -> dict:
        P = self.plane
        return {
            "point_map": [list(P.points[x]) for x in self.point_map],
            "block_map": [list(P.lines[x]) for x in self.block_map],
        }


@dataclass
class Verification:
    ok: bool
    counterexample: dict | None = None

    def __bool__(self):
        return self.ok


def verify(e: Embedding) -> Verification:
    d, P = e.design, e.plane
    if len(e.point_map) != d.v or len(e.block_map) != d.b:
        return Verification(False, {"kind": "partial map"})
    if len(set(e.point_map)) != d.v:
        return Verification(False, {"kind": "point map not injective"})
    if len(set(e.block_map)) != d.b:
        return Verification(False, {"kind": "block map not injective"})
    masks = d.block_masks
    for b in range(d.b):
        lm = P.line_mask[e.block_map[b]]
        for p in range(d.v):
            if ((masks[b] >> p) & 1) != ((lm >> e.point_map[p]) & 1):
                return Verification(
                    False,
                    {"kind": "incidence", "point": p, "block": b, "in_design": bool((masks[b] >> p) & 1)},
                )
    return Verification(True)


def dual_embedding(ctx: HyperovalContext) -> Embedding:
    """R(3) into PG(2,8): an external line [a:b:c] becomes the point (a:b:c),
    an external point (x:y:z) becomes the line [x:y:z]."""
    d = build_ree_unital(ctx)
    P = ctx.plane
    pm = tuple(P.point_index[P.lines[l]] for l in ctx.external_lines)
    bm = tuple(P.line_index[P.points[p]] for p in ctx.external_points)
    return Embedding(d, P, pm, bm)


def compose(g: Collineation, e: Embedding) -> Embedding:
    P = e.plane
    pm = tuple(P.point_index[g.point(P.points[x])] for x in e.point_map)
    bm = tuple(P.line_index[g.line(P.lines[x])] for x in e.block_map)
    return Embedding(e.design, P, pm, bm)


def lift(e: Embedding, k: int, big: GF | None = None) -> Embedding:
    """Push an embedding into PG(2, q^k) through the subfield embedding."""
    F = e.plane.field
    if k == 1 and big is None:
        return e
    if big is None:
        from .field import field_of_order

        big = field_of_order(F.q**k)
    img = subfield_embed(F, big)
    if img is None:
        raise ValueError(f"{F.name} is not a subfield of {big.name}")
    Q = pg(big)
    pm = tuple(Q.point_of(tuple(img[c] for c in e.plane.points[x])) for x in e.point_map)
    bm = tuple(Q.line_of(tuple(img[c] for c in e.plane.lines[x])) for x in e.block_map)
    return Embedding(e.design, Q, pm, bm)


def in_subplane(e: Embedding, sub: GF) -> bool:
    """Are all image points and lines coordinatized over the image of ``sub``?"""
    big = e.plane.field
    img = subfield_embed(sub, big)
    if img is None:
        return False
    S = set(img)
    P = e.plane
    return all(set(P.points[x]) <= S for x in e.point_map) and all(set(P.lines[x]) <= S for x in e.block_map)


# -- solving for collineations -------------------------------------------------------

def _general_position(P: Plane, pts) -> tuple[int, ...] | None:
    """Indices of 4 entries of ``pts`` (point indices) in general position."""
    F = P.field
    n = len(pts)
    coords = [P.points[x] for x in pts]
    for a in range(n):
        for b in range(a + 1, n):
            l = P.join(pts[a], pts[b])
            for c in range(b + 1, n):
                if P.incident(pts[c], l):
                    continue
                for d in range(c + 1, n):
                    if frame_matrix(F, [coords[a], coords[b], coords[c], coords[d]]) is not None:
                        return a, b, c, d
    return None


def find_collineation(P: Plane, src, dst, semilinear: bool = True, frame=None) -> Collineation | None:
    """A collineation mapping point src[i] to dst[i] for every i, if one exists."""
    if frame is None:
        frame = _general_position(P, dst)
        if frame is None:
            raise RuntimeError("no 4 target points in general position")
    F = P.field
    s4 = [P.points[src[i]] for i in frame]
    d4 = [P.points[dst[i]] for i in frame]
    for f in range(F.e if semilinear else 1):
        g = collineation_from_frames(F, s4, d4, f)
        if g is None:
            continue
        if all(P.point_index[g.point(P.points[s])] == t for s, t in zip(src, dst)):
            return g
    return None


@dataclass
class Admissibility:
    ok: bool
    betas: list = field(default_factory=list)
    failing: tuple | None = None


def admissibility(e: Embedding, aut: PermGroup, hyperoval: frozenset | None = None) -> Admissibility:
    """For each generator alpha of Aut(design) find beta with e(alpha(p)) = beta(e(p))."""
    P = e.plane
    src = list(e.point_map)
    frame = _general_position(P, src)
    if frame is None:
        raise RuntimeError("embedded points contain no frame")
    betas = []
    for alpha in aut.gens:
        dst = [e.point_map[alpha[p]] for p in range(e.design.v)]
        g = find_collineation(P, src, dst, frame=frame)
        if g is None:
            return Admissibility(False, betas, alpha)
        # beta must also carry image blocks to image blocks
        for b, B in enumerate(e.design.blocks):
            nb = e.design.pair_block[alpha[B[0]], alpha[B[1]]]
            if P.line_index[g.line(P.lines[e.block_map[b]])] != e.block_map[nb]:
                return Admissibility(False, betas, alpha)
        betas.append(g)
    return Admissibility(True, betas)


def beta_preserves_hyperoval(beta: Collineation, ctx: HyperovalContext) -> bool:
    """The dual of beta, acting on the original plane, preserves O."""
    P = ctx.plane
    dual = beta.dual()
    return all(P.point_index[dual.point(P.points[x])] in ctx.hyperoval for x in ctx.hyperoval)


def involution_block(design: IncidenceDesign, g) -> int | None:
    """The block formed by the fixed points of an automorphism, if they form one."""
    fixed = tuple(x for x in range(design.v) if g[x] == x)
    try:
        return design.blocks.index(fixed)
    except ValueError:
        return None


# -- exhaustive search -------------------------------------------------------------------

@dataclass
class SearchConfig:
    level: int = 2
    budget: int = DEFAULT_BUDGET
    fanout: int = 1
    cert_path: str | None = None
    first_only: bool = False

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("node budget must be positive")
        if self.level not in (0, 1, 2):
            raise ValueError("symmetry level must be 0, 1 or 2")


@dataclass
class SearchOutcome:
    status: str  # "found" | "none" | "inconclusive"
    embeddings: list
    digest: dict
    level: int
    certificate: dict


def _fixings(d: IncidenceDesign, P: Plane, level: int) -> tuple[dict, dict, dict]:
    """Initial images that are free to choose up to the plane's collineation group."""
    if level == 2:
        confs = onan_configurations(d)
        if confs:
            c1, c2, c3, c4 = confs[0].blocks
            # PGL(3,q) is regular on ordered quadrilaterals
            lines = [(1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
            bf = {b: P.line_of(l) for b, l in zip((c1, c2, c3, c4), lines)}
            return {}, bf, {"onan_blocks": [c1, c2, c3, c4], "lines": [list(l) for l in lines]}
        level = 1
    if level == 1:
        p0 = 0
        b0 = d.point_blocks[p0][0]
        pt = P.point_of((0, 0, 1))
        ln = P.line_of((1, 0, 0))
        return {p0: pt}, {b0: ln}, {"flag": [p0, b0], "point": [0, 0, 1], "line": [1, 0, 0]}
    return {}, {}, {}


class _PlaneFactory:
    def __init__(self, F: GF):
        self.F = F

    def __call__(self):
        return PlaneTarget(pg(self.F))


def search(d: IncidenceDesign, plane: Plane, cfg: SearchConfig | None = None) -> SearchOutcome:
    """All embeddings of d into the plane, up to the plane's linear collineation group.

    Level 2 fixes the images of the four blocks of one O'Nan configuration
    (they go to a quadrilateral), level 1 fixes one flag, level 0 fixes
    nothing.  A budget overrun yields status "inconclusive".
    """
    cfg = cfg or SearchConfig()
    pf, bf, fix_info = _fixings(d, plane, cfg.level)
    limit = 1 if cfg.first_only else None
    complete = True
    try:
        if cfg.fanout > 1 and limit is None:
            res = run_parallel(d, _PlaneFactory(plane.field), cfg.budget, pf, bf, cfg.fanout)
            complete = res.complete
        else:
            res = MapSearch(d, PlaneTarget(plane), cfg.budget, limit).run(pf, bf)
    except BudgetExceeded as exc:
        complete = False
        res = None
        nodes = exc.nodes
    embeddings = []
    if res is not None:
        for img, bimg in res.solutions:
            e = Embedding(d, plane, img, bimg)
            if not verify(e):
                raise RuntimeError("internal consistency: search produced an invalid embedding")
            embeddings.append(e)
        digest = res.digest()
        digest["complete"] = complete
    else:
        digest = {"nodes": nodes, "complete": False}
    if not complete:
        status = "inconclusive"
    else:
        status = "found" if embeddings else "none"
    cert = {
        "schema": "reeunital.embedding-certificate/1",
        "design_sha256": d.digest(),
        "plane": plane.field.spec_string(),
        "plane_order": plane.q,
        "symmetry_level": cfg.level,
        "fixed_images": fix_info,
        "budget": cfg.budget,
        "first_only": cfg.first_only,
        "status": status,
        "search": digest,
        "embeddings": [dict(e.to_json(), verified=True) for e in embeddings],
    }
    if cfg.cert_path:
        write_certificate(cert, cfg.cert_path)
    return SearchOutcome(status, embeddings, digest, cfg.level, cert)


def write_certificate(cert: dict, path) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(cert, indent=1, sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write certificate to {path}: {exc}") from exc


def check_certificate(cert: dict, d: IncidenceDesign, plane: Plane) -> bool:
    """Re-verify every embedding recorded in a certificate."""
    if cert["design_sha256"] != d.digest():
        return False
    for rec in cert["embeddings"]:
        pm = tuple(plane.point_of(tuple(c)) for c in rec["point_map"])
        bm = tuple(plane.line_of(tuple(c)) for c in rec["block_map"])
        if not verify(Embedding(d, plane, pm, bm)):
            return False
    return True


# -- classification up to (collineation, automorphism) -------------------------------------

@dataclass
class Transporter:
    source: int
    target: int
    beta: Collineation
    alpha: tuple


@dataclass
class Classification:
    orbits: list
    transporters: list


def find_transporter(e1: Embedding, e2: Embedding, aut: PermGroup, semilinear: bool = True):
    """(beta, alpha) with beta(e1(alpha(p))) = e2(p) for all points p, or None."""
    P = e1.plane
    dst = list(e2.point_map)
    frame = _general_position(P, dst)
    for alpha in aut.elements:
        src = [e1.point_map[alpha[p]] for p in range(e1.design.v)]
        g = find_collineation(P, src, dst, semilinear, frame)
        if g is not None:
            return g, alpha
    return None


def transported(e: Embedding, beta: Collineation, alpha) -> Embedding:
    """The embedding p -> beta(e(alpha(p))), with blocks mapped accordingly."""
    d, P = e.design, e.plane
    pm = tuple(P.point_index[beta.point(P.points[e.point_map[alpha[p]]])] for p in range(d.v))
    bm = []
    for B in d.blocks:
        bm.append(P.join(pm[B[0]], pm[B[1]]))
    return Embedding(d, P, pm, tuple(bm))


def classify(embeddings, aut: PermGroup, semilinear: bool = True) -> Classification:
    """Orbits of embeddings under (collineations, design automorphisms) with checked transporters."""
    reps: list[int] = []
    orbits: list[list[int]] = []
    transporters = []
    for i, e in enumerate(embeddings):
        for k, r in enumerate(reps):
            t = find_transporter(embeddings[r], e, aut, semilinear)
            if t is not None:
                beta, alpha = t
                moved = transported(embeddings[r], beta, alpha)
                if moved.point_map != e.point_map or moved.block_map != e.block_map:
                    raise RuntimeError("internal consistency: transporter does not re-verify")
                orbits[k].append(i)
                transporters.append(Transporter(r, i, beta, alpha))
                break
        else:
            reps.append(i)
            orbits.append([i])
    return Classification(orbits, transporters)
