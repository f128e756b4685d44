import pytest

from reeunital.conic import (
    EXTERNAL,
    SECANT,
    TANGENT,
    build_context,
    classify_line,
    conic_form,
    count_conics_by_forms,
    external_by_trace,
    hyperoval_stabilizer,
    line_action,
    pgl3_order,
    tangent_at,
)
from reeunital.field import field_of_order, gf8
from reeunital.groups import PermGroup


def test_census(ctx):
    c = ctx.census()
    assert c["points"] == c["lines"] == 73
    assert c["conic_points"] == 9
    assert c["nucleus"] == [1, 0, 0]
    assert c["hyperoval_points"] == 10
    assert (c["secant_lines"], c["tangent_lines"], c["external_lines"]) == (36, 9, 28)
    assert c["external_points"] == 63
    assert c["external_lines_per_external_point"] == [4]


def test_hyperoval_is_hyperoval(ctx):
    P = ctx.plane
    for l in range(P.n):
        k = len(ctx.hyperoval.intersection(P.pts_on_line[l]))
        assert k in (0, 2)
        assert (k == 0) == (classify_line(ctx, l) == EXTERNAL)


def test_tangents(ctx):
    P = ctx.plane
    for c in ctx.conic:
        t = tangent_at(ctx, c)
        assert ctx.line_type[t] == TANGENT
        assert P.incident(c, t) and P.incident(ctx.nucleus, t)
    assert sorted(tangent_at(ctx, c) for c in ctx.conic) == sorted(ctx.tangents)


def test_trace_criterion(ctx):
    F, P = ctx.field, ctx.plane
    for m in F.elements():
        if m == 0:
            continue
        for b in F.elements():
            l = P.line_of((m, F.neg(1), b))
            assert external_by_trace(F, m, b) == (ctx.line_type[l] == EXTERNAL)


def test_line_types_sum(ctx):
    assert ctx.line_type.count(SECANT) == 9 * 8 // 2


def test_odd_characteristic_rejected():
    with pytest.raises(ValueError):
        build_context(field_of_order(9))


def test_hyperoval_stabilizer(ctx):
    colls, G = hyperoval_stabilizer(ctx)
    assert len(colls) == G.order() == 1512
    assert sum(1 for g in colls if g.frob == 0) == 504
    F, P = ctx.field, ctx.plane
    for g in colls[::37]:
        assert {P.point_index[g.point(P.points[x])] for x in ctx.hyperoval} == ctx.hyperoval
        # the linear ones preserve the conic form up to a scalar
        if g.frob == 0:
            vals = {conic_form(F, g.point(P.points[x])) for x in ctx.conic}
            assert vals == {0}
    # the nucleus is fixed by everything
    assert all(g[ctx.nucleus] == ctx.nucleus for g in G.gens)
    # acting on the 9 conic points the group is 3-transitive (PGammaL(2,8))
    pos = {c: i for i, c in enumerate(ctx.conic)}
    H = PermGroup.from_elements({tuple(pos[g[c]] for c in ctx.conic) for g in G.elements}, 9)
    assert H.order() == 1512
    assert H.is_2_transitive()
    st01 = H.subgroup(lambda g: g[0] == 0 and g[1] == 1)
    assert sorted(st01.orbit(2)) == list(range(2, 9))


def test_line_action_is_collineation(ctx):
    _, G = hyperoval_stabilizer(ctx)
    P = ctx.plane
    for g in G.gens[:5]:
        la = line_action(P, g)
        for l in range(P.n):
            assert sorted(g[x] for x in P.pts_on_line[l]) == list(P.pts_on_line[la[l]])


@pytest.mark.parametrize("q", [2, 4])
def test_conic_count_small(q):
    # number of conics = |PGL(3,q)| / |PGL(2,q)|
    pgl2 = q * (q * q - 1)
    assert count_conics_by_forms(field_of_order(q)) == pgl3_order(q) // pgl2


def test_conic_count_q8():
    assert count_conics_by_forms(gf8()) == pgl3_order(8) // 504 == 32704
