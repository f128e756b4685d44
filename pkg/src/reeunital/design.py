"""Incidence designs, the Ree unital R(3), and O'Nan-type configurations."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

from .conic import HyperovalContext


class DesignError(ValueError):
    pass


@dataclass(frozen=True)
class IncidenceDesign:
    """v points 0..v-1 and a list of blocks (sorted point tuples, no repeats)."""

    v: int
    blocks: tuple
    point_labels: tuple | None = field(default=None, compare=False)
    block_labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        blocks = tuple(tuple(sorted(set(B))) for B in self.blocks)
        for B in blocks:
            if any(not 0 <= x < self.v for x in B):
                raise DesignError(f"block {B} has entries outside [0, {self.v})")
        if len(set(blocks)) != len(blocks):
            raise DesignError("repeated block")
        object.__setattr__(self, "blocks", blocks)

    @property
    def b(self) -> int:
        return len(self.blocks)

    @cached_property
    def block_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << x for x in B) for B in self.blocks)

    @cached_property
    def point_blocks(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.v)]
        for j, B in enumerate(self.blocks):
            for x in B:
                out[x].append(j)
        return tuple(tuple(x) for x in out)

    @cached_property
    def pair_block(self) -> dict:
        """(p, q) -> the block through p and q, for a partial linear space."""
        out = {}
        for j, B in enumerate(self.blocks):
            for p, q in combinations(B, 2):
                if (p, q) in out:
                    raise DesignError(f"points {p},{q} lie on more than one block")
                out[p, q] = out[q, p] = j
        return out

    def block_through(self, p: int, q: int) -> int | None:
        return self.pair_block.get((p, q))

    def block_meet(self, i: int, j: int) -> int | None:
        """The unique common point of blocks i and j, or None if disjoint."""
        m = self.block_masks[i] & self.block_masks[j]
        if not m:
            return None
        if m & (m - 1):
            raise DesignError(f"blocks {i} and {j} share more than one point")
        return m.bit_length() - 1

    def relabel(self, perm) -> "IncidenceDesign":
        return IncidenceDesign(self.v, tuple(tuple(perm[x] for x in B) for B in self.blocks))

    def to_text(self) -> str:
        lines = [f"{self.v} {self.b}"]
        lines += [" ".join(map(str, B)) for B in self.blocks]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IncidenceDesign":
        rows = [r.split() for r in text.strip().splitlines() if r.strip()]
        try:
            v, b = int(rows[0][0]), int(rows[0][1])
            blocks = [tuple(int(x) for x in r) for r in rows[1:]]
        except (IndexError, ValueError) as exc:
            raise DesignError(f"malformed design file: {exc}") from None
        if len(blocks) != b:
            raise DesignError(f"header announces {b} blocks, found {len(blocks)}")
        return cls(v, tuple(blocks))

    def save(self, path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path) -> "IncidenceDesign":
        return cls.from_text(Path(path).read_text())

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()


@dataclass
class ValidationReport:
    ok: bool
    params: dict
    counterexample: dict | None = None

    def __bool__(self):
        return self.ok


def validate(d: IncidenceDesign, t: int, k: int, lam: int) -> ValidationReport:
    """Check that d is a t-(v, k, lam) design for t in {1, 2}."""
    if t not in (1, 2):
        raise ValueError("only t = 1 and t = 2 are supported")
    params = {"v": d.v, "b": d.b, "k": k, "t": t, "lambda": lam}
    for j, B in enumerate(d.blocks):
        if len(B) != k:
            return ValidationReport(False, params, {"kind": "block size", "block": j, "size": len(B)})
    if t == 1:
        counts = [len(x) for x in d.point_blocks]
        for p, c in enumerate(counts):
            if c != lam:
                return ValidationReport(False, params, {"kind": "point", "point": p, "count": c})
        params["r"] = lam
        return ValidationReport(True, params)
    cover = {}
    for B in d.blocks:
        for pq in combinations(B, 2):
            cover[pq] = cover.get(pq, 0) + 1
    for pq in combinations(range(d.v), 2):
        c = cover.get(pq, 0)
        if c != lam:
            return ValidationReport(False, params, {"kind": "pair", "pair": list(pq), "count": c})
    params["r"] = lam * (d.v - 1) // (k - 1)
    return ValidationReport(True, params)


def design_parameters(v: int, k: int, lam: int) -> tuple[int, int]:
    """(b, r) of a 2-(v, k, lam) design."""
    return v * (v - 1) * lam // (k * (k - 1)), lam * (v - 1) // (k - 1)


def fano() -> IncidenceDesign:
    return IncidenceDesign(7, ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)))


def build_ree_unital(ctx: HyperovalContext) -> IncidenceDesign:
    """Points: the external lines of the conic; blocks: the external points.

    Block j consists of the external lines through external point j, so
    block indices follow ``ctx.external_points`` and point indices follow
    ``ctx.external_lines``.
    """
    P = ctx.plane
    line_pos = {l: i for i, l in enumerate(ctx.external_lines)}
    blocks = []
    for p in ctx.external_points:
        blocks.append(tuple(line_pos[l] for l in P.lines_on_pt[p] if l in line_pos))
    d = IncidenceDesign(
        len(ctx.external_lines),
        tuple(blocks),
        point_labels=tuple(P.lines[l] for l in ctx.external_lines),
        block_labels=tuple(P.points[p] for p in ctx.external_points),
    )
    rep = validate(d, 2, 4, 1)
    if not rep.ok:
        raise RuntimeError(f"internal consistency: dual unital failed validation: {rep.counterexample}")
    return d


# -- configurations ---------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    blocks: tuple[int, ...]
    points: dict = field(compare=False, hash=False, repr=False)

    def meet(self, i: int, j: int) -> int:
        return self.points[min(i, j), max(i, j)]


def _configurations(d: IncidenceDesign, size: int) -> list[Configuration]:
    masks = d.block_masks
    nb = d.b
    adj = [[j for j in range(nb) if j != i and masks[i] & masks[j]] for i in range(nb)]
    adjset = [set(a) for a in adj]
    out = []

    def extend(chosen, cands):
        if len(chosen) == size:
            pts = {}
            for i, j in combinations(chosen, 2):
                pts[i, j] = d.block_meet(i, j)
            out.append(Configuration(tuple(chosen), pts))
            return
        for idx, c in enumerate(cands):
            mc = masks[c]
            # no three blocks through a common point
            if any(masks[a] & masks[b] & mc for a, b in combinations(chosen, 2)):
                continue
            chosen.append(c)
            extend(chosen, [x for x in cands[idx + 1 :] if x in adjset[c]])
            chosen.pop()

    for i in range(nb):
        extend([i], [j for j in adj[i] if j > i])
    return out


def onan_configurations(d: IncidenceDesign) -> list[Configuration]:
    """Four pairwise intersecting blocks, no three through one point."""
    return _configurations(d, 4)


def super_onan_configurations(d: IncidenceDesign) -> list[Configuration]:
    """Five pairwise intersecting blocks, no three through one point."""
    out = _configurations(d, 5)
    for c in out:
        if len(set(c.points.values())) != 10:
            raise RuntimeError("internal consistency: intersection points not distinct")
    return out


# -- automorphisms and isomorphisms (search engine lives in search.py) -------------

def automorphism_group(d: IncidenceDesign, node_limit: int = 10**7):
    from .search import design_automorphisms

    return design_automorphisms(d, node_limit)


def isomorphic(d1: IncidenceDesign, d2: IncidenceDesign, node_limit: int = 10**7):
    """A point bijection carrying the blocks of d1 onto those of d2, or None."""
    from .search import design_isomorphism

    if d1.v != d2.v or d1.b != d2.b:
        return None
    if sorted(map(len, d1.blocks)) != sorted(map(len, d2.blocks)):
        return None
    return design_isomorphism(d1, d2, node_limit)
