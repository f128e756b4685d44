"""Backtracking search for incidence-preserving maps of a design into a target.

The target is any point/block structure in which two points span at most
one block: a projective plane (embeddings) or a linear-space design
(automorphisms, isomorphisms).  A map sends design points to target points
and design blocks to target blocks, injectively on both, with

    p on B  <=>  img(p) on img(B)     for every point p and block B.

Block images are forced as soon as a block has two placed points; point
candidates are kept as bitmasks and unit-propagated.  Branching picks the
unplaced point with fewest candidates.
"""

from __future__ import annotations

import hashlib
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .design import IncidenceDesign
from .groups import PermGroup, closure


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


# -- targets ---------------------------------------------------------------------

class PlaneTarget:
    def __init__(self, plane):
        self.plane = plane
        self.n_points = plane.n
        self.n_blocks = plane.n
        self.block_mask = plane.line_mask
        self._join = {}

    def join(self, a: int, b: int) -> int | None:
        key = (a, b) if a < b else (b, a)
        l = self._join.get(key)
        if l is None:
            l = self._join[key] = self.plane.join(a, b)
        return l


class DesignTarget:
    def __init__(self, d: IncidenceDesign):
        self.n_points = d.v
        self.n_blocks = d.b
        self.block_mask = d.block_masks
        self._pairs = d.pair_block

    def join(self, a: int, b: int) -> int | None:
        return self._pairs.get((a, b))


# -- search state ------------------------------------------------------------------

class _State:
    __slots__ = ("img", "bimg", "cand", "used_pts", "used_blk")

    def copy(self) -> "_State":
        s = _State()
        s.img = self.img[:]
        s.bimg = self.bimg[:]
        s.cand = self.cand[:]
        s.used_pts = self.used_pts
        s.used_blk = self.used_blk
        return s


@dataclass
class SearchResult:
    solutions: list = field(default_factory=list)
    nodes: int = 0
    depth_profile: dict = field(default_factory=dict)
    trace_digest: str = ""
    complete: bool = True

    def digest(self) -> dict:
        return {
            "nodes": self.nodes,
            "depth_profile": {str(k): v for k, v in sorted(self.depth_profile.items())},
            "trace_sha256": self.trace_digest,
            "complete": self.complete,
        }


class MapSearch:
    def __init__(self, design: IncidenceDesign, target, budget: int = 10**9, limit: int | None = None):
        for B in design.blocks:
            if len(B) < 2:
                raise ValueError("blocks of size < 2 cannot be placed by joins")
        self.d = design
        self.t = target
        self.budget = budget
        self.limit = limit
        self.nodes = 0
        self.profile: dict[int, int] = {}
        self.solutions: list = []
        self._hash = None

    # -- propagation --

    def _propagate(self, st: _State, pts: list, blks: list) -> bool:
        d, t = self.d, self.t
        v = d.v
        bmasks = d.block_masks
        while pts or blks:
            if blks:
                B, L = blks.pop()
                if st.bimg[B] >= 0:
                    if st.bimg[B] != L:
                        return False
                    continue
                if (st.used_blk >> L) & 1:
                    return False
                st.bimg[B] = L
                st.used_blk |= 1 << L
                mask = t.block_mask[L]
                bm = bmasks[B]
                for r in range(v):
                    inB = (bm >> r) & 1
                    x = st.img[r]
                    if x >= 0:
                        if ((mask >> x) & 1) != inB:
                            return False
                        continue
                    c = st.cand[r] & mask if inB else st.cand[r] & ~mask
                    if not c:
                        return False
                    if c != st.cand[r]:
                        st.cand[r] = c
                        if not c & (c - 1):
                            pts.append((r, c.bit_length() - 1))
                continue
            p, x = pts.pop()
            if st.img[p] >= 0:
                if st.img[p] != x:
                    return False
                continue
            if not (st.cand[p] >> x) & 1:
                return False
            st.img[p] = x
            bit = 1 << x
            st.used_pts |= bit
            for r in range(v):
                if st.img[r] < 0 and st.cand[r] & bit:
                    c = st.cand[r] & ~bit
                    if not c:
                        return False
                    st.cand[r] = c
                    if not c & (c - 1):
                        pts.append((r, c.bit_length() - 1))
            for B in d.point_blocks[p]:
                if st.bimg[B] >= 0:
                    continue
                for q in d.blocks[B]:
                    y = st.img[q]
                    if q != p and y >= 0:
                        L = t.join(x, y)
                        if L is None:
                            return False
                        blks.append((B, L))
                        break
        return True

    def _initial(self, point_fix: dict, block_fix: dict) -> _State | None:
        st = _State()
        st.img = [-1] * self.d.v
        st.bimg = [-1] * self.d.b
        full = (1 << self.t.n_points) - 1
        st.cand = [full] * self.d.v
        st.used_pts = 0
        st.used_blk = 0
        ok = self._propagate(st, list(point_fix.items())[::-1], list(block_fix.items())[::-1])
        return st if ok else None

    @staticmethod
    def _pick(st: _State) -> int:
        best, best_n = -1, None
        for r, x in enumerate(st.img):
            if x < 0:
                n = st.cand[r].bit_count()
                if best_n is None or n < best_n:
                    best, best_n = r, n
                    if n == 2:
                        break
        return best

    @staticmethod
    def _bits(m: int):
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def _dfs(self, st: _State, depth: int) -> bool:
        """Returns True when the solution limit has been reached."""
        r = self._pick(st)
        if r < 0:
            self.solutions.append((tuple(st.img), tuple(st.bimg)))
            return self.limit is not None and len(self.solutions) >= self.limit
        for x in self._bits(st.cand[r]):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(self.nodes)
            self.profile[depth] = self.profile.get(depth, 0) + 1
            self._hash.update(struct.pack("<HHH", depth, r, x))
            child = st.copy()
            if self._propagate(child, [(r, x)], []) and self._dfs(child, depth + 1):
                return True
        return False

    def run(self, point_fix: dict | None = None, block_fix: dict | None = None) -> SearchResult:
        """Enumerate solutions extending the given fixed images (up to ``limit``)."""
        root = self._initial(point_fix or {}, block_fix or {})
        branch_digests = []
        if root is not None:
            r = self._pick(root)
            if r < 0:
                self.solutions.append((tuple(root.img), tuple(root.bimg)))
            else:
                for x in self._bits(root.cand[r]):
                    self.nodes += 1
                    if self.nodes > self.budget:
                        raise BudgetExceeded(self.nodes)
                    self.profile[0] = self.profile.get(0, 0) + 1
                    self._hash = hashlib.sha256(struct.pack("<HH", r, x))
                    child = root.copy()
                    done = self._propagate(child, [(r, x)], []) and self._dfs(child, 1)
                    branch_digests.append(self._hash.hexdigest())
                    if done:
                        break
        return SearchResult(
            solutions=self.solutions,
            nodes=self.nodes,
            depth_profile=dict(self.profile),
            trace_digest=_combine(branch_digests),
        )

    def top_branches(self, point_fix: dict, block_fix: dict) -> tuple[int, list[int]] | None:
        root = self._initial(point_fix, block_fix)
        if root is None:
            return None
        r = self._pick(root)
        return (r, list(self._bits(root.cand[r]))) if r >= 0 else (r, [])


def _combine(digests) -> str:
    h = hashlib.sha256()
    for dg in digests:
        h.update(bytes.fromhex(dg))
    return h.hexdigest()


def _branch_worker(args):
    design, target_factory, budget, point_fix, block_fix, r, x = args
    s = MapSearch(design, target_factory(), budget)
    pf = dict(point_fix)
    pf[r] = x
    # one node for the top-level decision itself, matching the sequential count
    s.nodes = 1
    s.profile[0] = 1
    s._hash = hashlib.sha256(struct.pack("<HH", r, x))
    root = s._initial(pf, block_fix)
    complete = True
    try:
        if root is not None:
            s._dfs(root, 1)
    except BudgetExceeded:
        complete = False
    return s.solutions, s.nodes, s.profile, s._hash.hexdigest(), complete


def run_parallel(design, target_factory, budget, point_fix, block_fix, workers: int) -> SearchResult:
    """Split the search over the candidates of the first branching point.

    Solutions, node counts and the trace digest equal those of the
    sequential ``MapSearch.run`` with no solution limit; the budget applies
    to each top-level branch and to the total.
    """
    probe = MapSearch(design, target_factory(), budget)
    tb = probe.top_branches(point_fix, block_fix)
    if tb is None:
        return SearchResult(trace_digest=_combine([]))
    r, xs = tb
    if r < 0:
        return probe.run(point_fix, block_fix)
    jobs = [(design, target_factory, budget, point_fix, block_fix, r, x) for x in xs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_branch_worker, jobs))
    res = SearchResult()
    digests = []
    for sols, nodes, prof, dg, complete in parts:
        res.solutions.extend(sols)
        res.nodes += nodes
        for k, c in prof.items():
            res.depth_profile[k] = res.depth_profile.get(k, 0) + c
        digests.append(dg)
        res.complete &= complete
    res.trace_digest = _combine(digests)
    if res.nodes > budget:
        res.complete = False
    return res


# -- design automorphisms and isomorphisms --------------------------------------------

class ResourceError(RuntimeError):
    pass


def design_automorphisms(d: IncidenceDesign, node_limit: int = 10**7) -> PermGroup:
    """Aut(d) for a linear-space design, as a permutation group on points.

    Walks a base point by point; for each candidate image of the next base
    point (with earlier base points fixed) a single extension is searched
    for.  Successful extensions are the generators (coset representatives)
    and the group order is the product of the basic orbit lengths.
    """
    target = DesignTarget(d)
    gens = []
    order = 1
    fixed: dict[int, int] = {}
    spent = 0
    for p in range(d.v):
        orbit = []
        for c in range(d.v):
            if c in fixed:
                continue
            s = MapSearch(d, target, node_limit - spent, limit=1)
            try:
                res = s.run({**fixed, p: c})
            except BudgetExceeded as exc:
                raise ResourceError(f"automorphism search exceeded {node_limit} nodes") from exc
            spent += res.nodes
            if res.solutions:
                orbit.append(c)
                img = res.solutions[0][0]
                if c != p:
                    gens.append(img)
        order *= len(orbit)
        fixed[p] = p
        root = MapSearch(d, target)._initial(fixed, {})
        if root is not None and all(x >= 0 for x in root.img) and list(root.img) == list(range(d.v)):
            break
    elems = closure(gens, d.v)
    if len(elems) != order:
        raise RuntimeError(f"internal consistency: closure order {len(elems)} != {order}")
    return PermGroup(gens, d.v, elems)


def design_isomorphism(d1: IncidenceDesign, d2: IncidenceDesign, node_limit: int = 10**7):
    s = MapSearch(d1, DesignTarget(d2), node_limit, limit=1)
    try:
        res = s.run()
    except BudgetExceeded as exc:
        raise ResourceError(f"isomorphism search exceeded {node_limit} nodes") from exc
    if not res.solutions:
        return None
    return res.solutions[0][0]
