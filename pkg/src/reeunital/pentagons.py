"""External pentagons of PG(2,8) and the dual super O'Nan configurations of R(3).

Pentagon vertices carry labels A, C1..C4.  The fundamental pentagon is
labelled from its coordinates; any other pentagon inherits labels from the
first element (in group element order) of the hyperoval stabilizer that
carries the fundamental pentagon onto it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .conic import EXTERNAL, HyperovalContext, hyperoval_stabilizer, line_action
from .design import Configuration, IncidenceDesign
from .groups import PermGroup, is_A4, perm_order
from .plane import frobenius_collineation, tau

EVEN_PERMS = tuple(
    p for p in permutations((1, 2, 3, 4)) if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0
)
KLEIN = ((1, 2, 3, 4), (2, 1, 4, 3), (3, 4, 1, 2), (4, 3, 2, 1))


def klein_cosets() -> list[list[tuple]]:
    """The three cosets of the Klein four-group in A4, as index tuples."""
    seen = set()
    out = []
    for pi in EVEN_PERMS:
        if pi in seen:
            continue
        coset = sorted(tuple(t[i - 1] for i in pi) for t in KLEIN)
        seen.update(coset)
        out.append(coset)
    return out


@dataclass(frozen=True)
class Pentagon:
    apex: int
    others: tuple[int, int, int, int]
    stabilizer_order: int = 0
    a4_type: bool = False

    @property
    def points(self) -> frozenset:
        return frozenset((self.apex,) + self.others)

    def vertex(self, i: int) -> int:
        """0 is A, 1..4 are C1..C4."""
        return self.apex if i == 0 else self.others[i - 1]


def gamma_group(ctx: HyperovalContext) -> list:
    """The elations tau_c with tr(c) = 0, as collineations."""
    F = ctx.field
    return [tau(F, c) for c in F.elements() if F.trace(c) == 0]


def g0_group(ctx: HyperovalContext) -> PermGroup:
    P = ctx.plane
    gens = [P.point_perm(t) for t in gamma_group(ctx) if not t.is_identity()]
    gens.append(P.point_perm(frobenius_collineation(ctx.field)))
    return PermGroup(gens, P.n)


def fundamental_pentagon(ctx: HyperovalContext) -> Pentagon:
    F, P = ctx.field, ctx.plane
    g = lambda k: F.pow(F.gen, k)  # noqa: E731
    A = P.point_of((1, 1, 0))
    C = [P.point_of(c) for c in ((0, 1, 1), (g(1), g(6), 1), (g(2), g(5), 1), (g(4), g(3), 1))]
    _, G = hyperoval_stabilizer(ctx)
    st = G.set_stabilizer([A] + C)
    return Pentagon(A, tuple(C), st.order(), is_A4(st))


def is_external_pentagon(ctx: HyperovalContext, pts) -> bool:
    P = ctx.plane
    pts = list(pts)
    if len(set(pts)) != 5 or any(p in ctx.hyperoval for p in pts):
        return False
    lines = set()
    for a, b in combinations(pts, 2):
        l = P.join(a, b)
        if ctx.line_type[l] != EXTERNAL or l in lines:
            return False
        lines.add(l)
    return True


def _external_pentagon_sets(ctx: HyperovalContext) -> list[tuple[int, ...]]:
    P = ctx.plane
    ext = ctx.external_points
    adj = {p: set() for p in ext}
    for a, b in combinations(ext, 2):
        if ctx.line_type[P.join(a, b)] == EXTERNAL:
            adj[a].add(b)
            adj[b].add(a)
    out = []

    def extend(chosen, cands):
        if len(chosen) == 5:
            out.append(tuple(chosen))
            return
        for i, c in enumerate(cands):
            # general position: c off every line through two chosen points
            if any(P.incident(c, P.join(a, b)) for a, b in combinations(chosen, 2)):
                continue
            chosen.append(c)
            extend(chosen, [x for x in cands[i + 1 :] if x in adj[c]])
            chosen.pop()

    for p in ext:
        extend([p], sorted(x for x in adj[p] if x > p))
    return out


def enumerate_pentagons(ctx: HyperovalContext) -> list[Pentagon]:
    """All external pentagons, labelled by transport from the fundamental one."""
    return list(_enumerate_cached(ctx))


@lru_cache(maxsize=None)
def _enumerate_cached(ctx):
    _, G = hyperoval_stabilizer(ctx)
    F0 = fundamental_pentagon(ctx)
    base = (F0.apex,) + F0.others
    found = {}
    for g in G.elements:
        img = frozenset(g[x] for x in base)
        if img not in found:
            found[img] = g
    out = []
    for pts in _external_pentagon_sets(ctx):
        key = frozenset(pts)
        st = G.set_stabilizer(key)
        if key in found:
            g = found[key]
            apex, others = g[F0.apex], tuple(g[c] for c in F0.others)
        else:
            # not in the orbit of the fundamental pentagon: label by sorted order
            fixed = [p for p in pts if all(h[p] == p for h in st.gens)]
            apex = fixed[0] if len(fixed) == 1 else pts[0]
            others = tuple(p for p in pts if p != apex)
        out.append(Pentagon(apex, others, st.order(), is_A4(st)))
    return tuple(out)


def transporter(ctx: HyperovalContext, pent: Pentagon):
    """First element of the hyperoval stabilizer carrying the labelled fundamental pentagon onto pent."""
    _, G = hyperoval_stabilizer(ctx)
    F0 = fundamental_pentagon(ctx)
    for g in G.elements:
        if g[F0.apex] == pent.apex and tuple(g[c] for c in F0.others) == pent.others:
            return g
    return None


def d_lines(ctx: HyperovalContext, pent: Pentagon) -> dict[tuple, int]:
    """d_ijkl = join(AC_i meet C_jC_l, AC_j meet C_kC_l) for the 12 even permutations."""
    P = ctx.plane
    A = pent.apex
    C = {i: pent.others[i - 1] for i in range(1, 5)}
    out = {}
    for i, j, k, l in EVEN_PERMS:
        x = P.meet(P.join(A, C[i]), P.join(C[j], C[l]))
        y = P.meet(P.join(A, C[j]), P.join(C[k], C[l]))
        if x == y:
            raise RuntimeError(f"degenerate d-line for {(i, j, k, l)}")
        out[i, j, k, l] = P.join(x, y)
    return out


def d_line_points(ctx: HyperovalContext, pent: Pentagon, pi) -> tuple[int, int]:
    P = ctx.plane
    i, j, k, l = pi
    A = pent.apex
    C = {n: pent.others[n - 1] for n in range(1, 5)}
    return P.meet(P.join(A, C[i]), P.join(C[j], C[l])), P.meet(P.join(A, C[j]), P.join(C[k], C[l]))


@dataclass
class ClaimReport:
    claims: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.claims.values())


def verify_penta_props(ctx: HyperovalContext, pent: Pentagon) -> ClaimReport:
    """Claims (i)-(iv) on the twelve d-lines of an A4-type pentagon."""
    P = ctx.plane
    _, G = hyperoval_stabilizer(ctx)
    d = d_lines(ctx, pent)
    rep = ClaimReport()
    lines = list(d.values())

    # (i) distinct, and the stabilizer permutes them regularly
    st = G.set_stabilizer(pent.points)
    base = d[1, 2, 3, 4]
    orbit = sorted(line_action(P, g)[base] for g in st.elements)
    rep.claims["i_distinct"] = len(set(lines)) == 12
    rep.claims["i_regular"] = orbit == sorted(lines)
    label = {pent.vertex(n): n for n in range(1, 5)}
    equivariant = True
    for g in st.elements:
        sigma = {n: label[g[pent.vertex(n)]] for n in range(1, 5)}
        la = line_action(P, g)
        for pi, l in d.items():
            if la[l] != d[tuple(sigma[n] for n in pi)]:
                equivariant = False
    rep.claims["i_equivariant"] = equivariant

    # (ii) external
    rep.claims["ii_external"] = all(ctx.line_type[l] == EXTERNAL for l in lines)

    # (iii) three concurrent quadruples on the tangent through A
    axis = P.join(pent.apex, ctx.nucleus)
    groups: dict[int, list] = {}
    for pi, l in d.items():
        groups.setdefault(P.meet(l, axis), []).append(pi)
    rep.claims["iii_partition"] = sorted(len(g) for g in groups.values()) == [4, 4, 4]
    rep.claims["iii_cosets"] = sorted(sorted(g) for g in groups.values()) == sorted(klein_cosets())
    rep.witness["iii_points"] = sorted(P.points[x] for x in groups)

    # (iv) AC4, d_1234, d_3241 concurrent
    ac4 = P.join(pent.apex, pent.others[3])
    rep.claims["iv_concurrent"] = P.concurrent([ac4, d[1, 2, 3, 4], d[3, 2, 4, 1]])
    rep.witness["iv_point"] = P.points[P.meet(ac4, d[1, 2, 3, 4])]
    return rep


def d1234_infinity_point_not_fixed_by_order3(ctx: HyperovalContext) -> bool:
    """d_1234 meets Z=0 in a point moved by every element of order 3 of G0."""
    P = ctx.plane
    pent = fundamental_pentagon(ctx)
    d = d_lines(ctx, pent)
    x = P.meet(d[1, 2, 3, 4], P.line_of((0, 0, 1)))
    return all(g[x] != x for g in g0_group(ctx).elements if perm_order(g) == 3)


# -- the dual side: D-points of super O'Nan configurations ---------------------------------

def block_action(d: IncidenceDesign, g) -> tuple[int, ...]:
    return tuple(d.pair_block[g[B[0]], g[B[1]]] for B in d.blocks)


@dataclass
class SocReport:
    apex_block: int
    labelling: tuple | None
    d_points: dict
    claims: dict
    valid_labellings: int

    @property
    def ok(self) -> bool:
        return self.labelling is not None and all(self.claims.values())


def _d_points(d: IncidenceDesign, a: int, c: dict) -> dict | None:
    out = {}
    for pi in EVEN_PERMS:
        i, j, k, l = pi
        X = d.pair_block[d.block_meet(a, c[i]), d.block_meet(c[j], c[l])]
        Y = d.pair_block[d.block_meet(a, c[j]), d.block_meet(c[k], c[l])]
        if X == Y:
            return None
        D = d.block_meet(X, Y)
        if D is None:
            return None
        out[pi] = D
    return out


def _soc_claims(d: IncidenceDesign, a: int, c: dict, D: dict) -> dict:
    claims = {"i_distinct": len(set(D.values())) == 12}
    blocks = set(d.blocks)
    claims["ii_blocks"] = all(tuple(sorted(D[pi] for pi in coset)) in blocks for coset in klein_cosets())
    p = d.block_meet(a, c[4])
    x, y = D[1, 2, 3, 4], D[3, 2, 4, 1]
    if len({p, x, y}) < 3:
        claims["iii_common_block"] = False
    else:
        claims["iii_common_block"] = y in d.blocks[d.pair_block[p, x]]
    return claims


def block_actions(d: IncidenceDesign, aut: PermGroup) -> dict:
    """Element of aut -> its action on blocks."""
    return {g: block_action(d, g) for g in aut.elements}


def soc_stabilizer(d: IncidenceDesign, aut: PermGroup, conf: Configuration, actions: dict | None = None) -> PermGroup:
    actions = actions or block_actions(d, aut)
    S = frozenset(conf.blocks)
    return PermGroup.from_elements(
        [g for g in aut.elements if frozenset(actions[g][b] for b in S) == S], d.v
    )


def soc_d_points(
    d: IncidenceDesign,
    aut: PermGroup,
    conf: Configuration,
    labels: tuple | None = None,
    actions: dict | None = None,
) -> SocReport:
    """D-points of a super O'Nan configuration.

    The apex block is the one fixed by the configuration's stabilizer.  With
    ``labels=None`` every ordering of the other four blocks is tried and
    the first one (lexicographically) satisfying (i)-(iii) is reported.
    """
    actions = actions or block_actions(d, aut)
    st = soc_stabilizer(d, aut, conf, actions)
    fixed = [b for b in conf.blocks if all(actions[g][b] == b for g in st.elements)]
    if len(fixed) != 1:
        return SocReport(-1, None, {}, {"unique_fixed_block": False}, 0)
    a = fixed[0]
    rest = [b for b in conf.blocks if b != a]
    orders = [labels] if labels is not None else list(permutations(rest))
    first = None
    count = 0
    for order in orders:
        c = dict(zip((1, 2, 3, 4), order))
        D = _d_points(d, a, c)
        if D is None:
            continue
        claims = _soc_claims(d, a, c, D)
        if all(claims.values()):
            count += 1
            if first is None:
                first = (tuple(order), D, claims)
    if first is None:
        return SocReport(a, None, {}, {"labelling_exists": False}, 0)
    order, D, claims = first
    claims = dict(claims, stabilizer_A4=is_A4(st))
    return SocReport(a, order, D, claims, count)


def soc_from_pentagon(ctx: HyperovalContext, d: IncidenceDesign, pent: Pentagon) -> tuple[int, tuple]:
    """(apex block, labelled other blocks) of the configuration dual to a pentagon.

    Uses the dual unital: block j is external point ``ctx.external_points[j]``.
    """
    pos = {p: j for j, p in enumerate(ctx.external_points)}
    return pos[pent.apex], tuple(pos[c] for c in pent.others)


def soc_dual_check(ctx: HyperovalContext, d: IncidenceDesign, pent: Pentagon) -> ClaimReport:
    """Transport the pentagon claims to the design and compare with a design-level computation."""
    a, others = soc_from_pentagon(ctx, d, pent)
    c = dict(zip((1, 2, 3, 4), others))
    rep = ClaimReport()
    D = _d_points(d, a, c)
    rep.claims["unique_intersections"] = D is not None
    if D is None:
        return rep
    lines = d_lines(ctx, pent)
    rep.claims["d_points_are_d_lines"] = all(ctx.external_lines[D[pi]] == lines[pi] for pi in EVEN_PERMS)
    rep.claims.update(_soc_claims(d, a, c, D))
    return rep


def pentagon_soc_correspondence(ctx: HyperovalContext, d: IncidenceDesign, socs) -> dict:
    """External pentagons <-> super O'Nan configurations under the dual unital."""
    P = ctx.plane
    ext = ctx.external_points
    # two blocks meet iff the corresponding external points span an external line
    meets_ok = all(
        (d.block_meet(i, j) is not None) == (ctx.line_type[P.join(ext[i], ext[j])] == EXTERNAL)
        for i, j in combinations(range(d.b), 2)
    )
    pent_sets = {frozenset(p.points) for p in enumerate_pentagons(ctx)}
    soc_sets = {frozenset(ext[j] for j in c.blocks) for c in socs}
    return {"blocks_meet_iff_external_join": meets_ok, "bijection": pent_sets == soc_sets}
