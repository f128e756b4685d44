"""Small permutation groups by full element materialization.

Permutations are tuples of images of 0..n-1.  Products compose right to
left: ``mul(g, h)`` is "apply h, then g", so ``mul(g, h)[x] == g[h[x]]``.
Every group in scope has order at most ``MAX_ORDER``; beyond that a
stabilizer-chain (Schreier-Sims) implementation would be needed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .field import GF, field_of_order

MAX_ORDER = 100_000


class GroupTooLarge(RuntimeError):
    pass


def mul(g, h):
    return tuple(g[x] for x in h)


def inverse(g):
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)


def identity(n: int):
    return tuple(range(n))


def perm_order(g) -> int:
    seen = [False] * len(g)
    order = 1
    for i in range(len(g)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = g[j]
            n += 1
        order = order * n // _gcd(order, n)
    return order


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def cycles(g) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(g)):
        if i in seen or g[i] == i:
            continue
        c = [i]
        seen.add(i)
        j = g[i]
        while j != i:
            c.append(j)
            seen.add(j)
            j = g[j]
        out.append(tuple(c))
    return out


def cycle_str(g) -> str:
    cs = cycles(g)
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cs) or "()"


def is_perm(g, n: int) -> bool:
    return len(g) == n and sorted(g) == list(range(n))


def closure(gens, degree: int | None = None, cap: int = MAX_ORDER) -> list:
    """All elements of <gens>, breadth-first from the identity."""
    gens = [tuple(g) for g in gens]
    if degree is None:
        if not gens:
            raise ValueError("degree needed for an empty generator list")
        degree = len(gens[0])
    e = identity(degree)
    elems = [e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = mul(g, a)
                if c not in seen:
                    seen.add(c)
                    elems.append(c)
                    nxt.append(c)
                    if len(elems) > cap:
                        raise GroupTooLarge(
                            f"group closure exceeded {cap} elements (reached {len(elems)}); "
                            "use a Schreier-Sims stabilizer chain for groups this large"
                        )
        frontier = nxt
    return elems


class PermGroup:
    """A permutation group of degree n, given by generators."""

    def __init__(self, gens, degree: int | None = None, elements=None):
        gens = [tuple(g) for g in gens]
        if degree is None:
            if not gens:
                raise ValueError("degree needed for an empty generator list")
            degree = len(gens[0])
        for g in gens:
            if not is_perm(g, degree):
                raise ValueError("generator is not a permutation of the right degree")
        self.degree = degree
        self.gens = gens
        self._elements = list(elements) if elements is not None else None
        self._set = None

    @classmethod
    def from_elements(cls, elements, degree: int | None = None) -> "PermGroup":
        elements = [tuple(g) for g in elements]
        if degree is None:
            degree = len(elements[0])
        return cls(small_generating_set(elements, degree), degree, elements)

    @property
    def elements(self) -> list:
        if self._elements is None:
            self._elements = closure(self.gens, self.degree)
        return self._elements

    @property
    def element_set(self) -> frozenset:
        if self._set is None:
            self._set = frozenset(self.elements)
        return self._set

    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order()

    def __contains__(self, g):
        return tuple(g) in self.element_set

    def is_closed(self) -> bool:
        S = self.element_set
        return all(mul(a, b) in S for a in self.elements for b in self.gens) and all(
            inverse(a) in S for a in self.elements
        )

    def orbit(self, x: int) -> list[int]:
        seen = {x}
        out = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in self.gens:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    out.append(z)
                    queue.append(z)
        return out

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for x in range(self.degree):
            if x not in seen:
                o = self.orbit(x)
                seen.update(o)
                out.append(sorted(o))
        return out

    def set_orbit(self, s) -> list[frozenset]:
        """Orbit of a subset under the group (via generators)."""
        s = frozenset(s)
        seen = {s}
        out = [s]
        queue = deque([s])
        while queue:
            t = queue.popleft()
            for g in self.gens:
                u = frozenset(g[x] for x in t)
                if u not in seen:
                    seen.add(u)
                    out.append(u)
                    queue.append(u)
        return out

    def stabilizer(self, x: int) -> "PermGroup":
        return self.subgroup(lambda g: g[x] == x)

    def set_stabilizer(self, s) -> "PermGroup":
        s = frozenset(s)
        return self.subgroup(lambda g: frozenset(g[x] for x in s) == s)

    def subgroup(self, pred) -> "PermGroup":
        return PermGroup.from_elements([g for g in self.elements if pred(g)], self.degree)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree if self.degree else True

    def is_2_transitive(self) -> bool:
        if not self.is_transitive():
            return False
        st = self.stabilizer(0)
        rest = [x for x in range(1, self.degree)]
        return not rest or sorted(st.orbit(rest[0])) == rest

    def action(self, images) -> "PermGroup":
        """The induced action given a function g -> image permutation."""
        gens = [images(g) for g in self.gens]
        degree = len(gens[0]) if gens else None
        return PermGroup(gens, degree)

    def element_orders(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.elements:
            o = perm_order(g)
            out[o] = out.get(o, 0) + 1
        return dict(sorted(out.items()))

    def is_abelian(self) -> bool:
        return all(mul(a, b) == mul(b, a) for a, b in combinations(self.gens, 2))

    def is_elementary_abelian_2(self) -> bool:
        return self.is_abelian() and all(perm_order(g) <= 2 for g in self.gens)


def small_generating_set(elements, degree: int) -> list:
    """Greedy generating set: add an element whenever it is outside the current span."""
    elements = [tuple(g) for g in elements]
    target = len(elements)
    gens = []
    span = {identity(degree)}
    for g in elements:
        if len(span) == target:
            break
        if g not in span:
            gens.append(g)
            span = set(closure(gens, degree))
    return gens


# -- involutions, Sylow 2-subgroups, A4 -----------------------------------------

def involutions(G: PermGroup) -> list:
    return [g for g in G.elements if perm_order(g) == 2]


def conjugacy_class(G: PermGroup, x) -> list:
    x = tuple(x)
    seen = {x}
    out = [x]
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for g in G.gens:
            z = mul(mul(g, y), inverse(g))
            if z not in seen:
                seen.add(z)
                out.append(z)
                queue.append(z)
    return out


def _two_part(n: int) -> int:
    t = 1
    while n % 2 == 0:
        n //= 2
        t *= 2
    return t


def _is_2_power(n: int) -> bool:
    return n & (n - 1) == 0


def sylow2(G: PermGroup) -> list[frozenset]:
    """All Sylow 2-subgroups, as frozensets of elements.

    One Sylow subgroup is grown greedily (a non-Sylow 2-subgroup always has a
    2-element in its normalizer outside it); the rest are its conjugates.
    """
    target = _two_part(G.order())
    if target > 64:
        raise GroupTooLarge("2-part of the group order exceeds 64")
    n = G.degree
    H = [identity(n)]
    Hset = set(H)
    two_elems = [g for g in G.elements if _is_2_power(perm_order(g)) and perm_order(g) > 1]
    while len(H) < target:
        for g in two_elems:
            if g in Hset:
                continue
            gi = inverse(g)
            if all(mul(mul(g, h), gi) in Hset for h in H):
                cand = closure(list(H) + [g], n)
                if _is_2_power(len(cand)):
                    H = cand
                    Hset = set(H)
                    break
        else:
            raise RuntimeError("failed to extend a 2-subgroup")
    S = frozenset(H)
    found = {S}
    out = [S]
    queue = deque([S])
    while queue:
        T = queue.popleft()
        for g in G.gens:
            gi = inverse(g)
            U = frozenset(mul(mul(g, h), gi) for h in T)
            if U not in found:
                found.add(U)
                out.append(U)
                queue.append(U)
    return sorted(out, key=lambda s: sorted(s))


def is_A4(G: PermGroup) -> bool:
    """Order 12, exactly three involutions and no element of order 6."""
    if G.order() != 12:
        return False
    orders = G.element_orders()
    return orders.get(2, 0) == 3 and orders.get(6, 0) == 0


# -- block systems ------------------------------------------------------------------

def _minimal_block(gens, n: int, a: int, b: int) -> list[int]:
    """Finest block system in which a and b share a block (union-find closure)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        rx, ry = find(x), find(y)
        if rx == ry:
            continue
        parent[ry] = rx
        for g in gens:
            queue.append((g[x], g[y]))
    return [find(x) for x in range(n)]


@dataclass
class Primitivity:
    primitive: bool
    blocks: list[list[int]] = field(default_factory=list)


def primitivity(G: PermGroup) -> Primitivity:
    """Decide primitivity; for imprimitive groups return a block system with smallest blocks."""
    n = G.degree
    if n == 0 or not G.is_transitive():
        raise ValueError("primitivity needs a transitive action")
    best = None
    for b in range(1, n):
        roots = _minimal_block(G.gens, n, 0, b)
        size = roots.count(roots[0])
        if size < n and (best is None or size < best[0]):
            best = (size, roots)
    if best is None:
        return Primitivity(True)
    roots = best[1]
    groups: dict[int, list[int]] = {}
    for x, r in enumerate(roots):
        groups.setdefault(r, []).append(x)
    return Primitivity(False, sorted(groups.values()))


# -- commuting involution graphs --------------------------------------------------

@dataclass
class CommutingGraph:
    vertices: list
    edges: list[tuple[int, int]]
    components: list[list[int]]

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def component_sizes(self) -> list[int]:
        return sorted(len(c) for c in self.components)

    def is_clique(self, comp) -> bool:
        es = set(self.edges)
        return all((min(a, b), max(a, b)) in es for a, b in combinations(comp, 2))


def components(n: int, edges) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def commuting_graph(G: PermGroup, verts=None) -> CommutingGraph:
    verts = involutions(G) if verts is None else list(verts)
    edges = []
    for i, j in combinations(range(len(verts)), 2):
        a, b = verts[i], verts[j]
        if mul(a, b) == mul(b, a):
            edges.append((i, j))
    return CommutingGraph(verts, edges, components(len(verts), edges))


def conjugation_action(G: PermGroup, verts) -> PermGroup:
    """G acting by conjugation on a conjugation-invariant list of elements."""
    index = {v: i for i, v in enumerate(verts)}

    def image(g):
        gi = inverse(g)
        return tuple(index[mul(mul(g, v), gi)] for v in verts)

    return PermGroup([image(g) for g in G.gens], len(verts))


# -- PSL(2, q) ----------------------------------------------------------------------

def psl2(q: int, F: GF | None = None) -> PermGroup:
    """PSL(2, q) on the q+1 points of the projective line (index q is infinity)."""
    if q > 32:
        raise ValueError("psl2 is limited to q <= 32")
    F = F or field_of_order(q)
    inf = q

    def mobius(a, b, c, d):
        # x -> (a x + b) / (c x + d)
        img = []
        for x in range(q + 1):
            if x == inf:
                num, den = a, c
            else:
                num, den = F.add(F.mul(a, x), b), F.add(F.mul(c, x), d)
            img.append(inf if den == 0 else F.div(num, den))
        return tuple(img)

    w = F.primitive
    lam = F.mul(w, w)
    gens = [mobius(1, 1, 0, 1), mobius(lam, 0, 0, 1), mobius(0, F.neg(1), 1, 0)]
    return PermGroup(gens, q + 1)
