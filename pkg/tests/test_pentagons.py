from itertools import combinations, permutations

from reeunital.conic import EXTERNAL, hyperoval_stabilizer
from reeunital.groups import is_A4
from reeunital.pentagons import (
    EVEN_PERMS,
    KLEIN,
    d1234_infinity_point_not_fixed_by_order3,
    d_line_points,
    d_lines,
    enumerate_pentagons,
    fundamental_pentagon,
    g0_group,
    gamma_group,
    is_external_pentagon,
    klein_cosets,
    pentagon_soc_correspondence,
    soc_d_points,
    soc_dual_check,
    soc_stabilizer,
    transporter,
    verify_penta_props,
)


def brute_external_pentagons(ctx):
    """Independent count: 5-subsets of external points whose 10 joins are distinct external lines."""
    P = ctx.plane
    ext = ctx.external_points
    good = {}
    for a, b in combinations(ext, 2):
        good[a, b] = ctx.line_type[P.join(a, b)] == EXTERNAL
    out = 0
    for s in combinations(ext, 3):
        if not all(good[x] for x in combinations(s, 2)) or P.collinear(list(s)):
            continue
        for t in combinations([e for e in ext if e > s[2]], 2):
            pts = s + t
            if all(good[x] for x in combinations(pts, 2)) and len({P.join(*x) for x in combinations(pts, 2)}) == 10:
                out += 1
    return out


def test_even_perms():
    assert len(EVEN_PERMS) == 12
    assert (1, 2, 3, 4) in EVEN_PERMS and (3, 2, 4, 1) in EVEN_PERMS and (2, 1, 3, 4) not in EVEN_PERMS
    cos = klein_cosets()
    assert len(cos) == 3 and sorted(sum(cos, [])) == sorted(EVEN_PERMS)
    assert set(KLEIN) <= set(EVEN_PERMS)


def test_fundamental_pentagon(ctx):
    F, P = ctx.field, ctx.plane
    g = lambda k: F.pow(F.gen, k)  # noqa: E731
    F0 = fundamental_pentagon(ctx)
    assert P.points[F0.apex] == (1, 1, 0)
    assert [P.points[c] for c in F0.others] == [(0, 1, 1), (g(1), g(6), 1), (g(2), g(5), 1), (g(4), g(3), 1)]
    assert is_external_pentagon(ctx, F0.points)
    assert F0.stabilizer_order == 12 and F0.a4_type
    # AC1 : Y = X + Z and C1C2 : Y = gamma X + Z are external
    assert ctx.line_type[P.join(F0.apex, F0.others[0])] == EXTERNAL
    assert P.join(F0.apex, F0.others[0]) == P.line_of((1, F.neg(1), 1))
    assert P.join(F0.others[0], F0.others[1]) == P.line_of((g(1), F.neg(1), 1))


def test_g0(ctx):
    F0 = fundamental_pentagon(ctx)
    G0 = g0_group(ctx)
    _, G = hyperoval_stabilizer(ctx)
    assert G0.order() == 12 and is_A4(G0)
    assert G0.element_set == G.set_stabilizer(F0.points).element_set
    assert len(gamma_group(ctx)) == 4
    # Gamma-orbit of C1 is {C1..C4}; Phi fixes A and C1
    P = ctx.plane
    orbit = {P.point_index[t.point(P.points[F0.others[0]])] for t in gamma_group(ctx)}
    assert orbit == set(F0.others)


def test_d1234(ctx):
    F, P = ctx.field, ctx.plane
    g = lambda k: F.pow(F.gen, k)  # noqa: E731
    F0 = fundamental_pentagon(ctx)
    x, y = d_line_points(ctx, F0, (1, 2, 3, 4))
    assert P.points[x] == (g(6), g(2), 1)
    assert P.points[y] == (1, g(4), 1)
    d = d_lines(ctx, F0)
    assert d[1, 2, 3, 4] == P.line_of((g(6), 1, g(3)))
    assert P.meet(d[1, 2, 3, 4], P.line_of((0, 0, 1))) == P.point_of((1, g(6), 0))
    assert F.trace(g(6)) == 1
    assert d1234_infinity_point_not_fixed_by_order3(ctx)
    # the displayed determinant for (iv)
    from reeunital.plane import det3

    assert det3(F, [(1, 1, g(6)), (g(6), 1, g(3)), (g(3), 1, g(4))]) == 0
    ac4 = P.join(F0.apex, F0.others[3])
    assert P.lines[ac4] == P.lines[P.line_of((1, 1, g(6)))]
    assert d[3, 2, 4, 1] == P.line_of((g(3), 1, g(4)))


def test_pentagon_count_independent(ctx):
    pents = enumerate_pentagons(ctx)
    assert len(pents) == 126 == brute_external_pentagons(ctx)
    assert all(p.a4_type for p in pents)
    assert len({p.points for p in pents}) == 126


def test_pentagon_one_orbit(ctx):
    _, G = hyperoval_stabilizer(ctx)
    F0 = fundamental_pentagon(ctx)
    assert set(G.set_orbit(F0.points)) == {p.points for p in enumerate_pentagons(ctx)}


def test_labels_by_transport(ctx):
    F0 = fundamental_pentagon(ctx)
    for p in enumerate_pentagons(ctx)[::17]:
        g = transporter(ctx, p)
        assert g[F0.apex] == p.apex
        assert tuple(g[c] for c in F0.others) == p.others


def test_proposition_all(ctx):
    for p in enumerate_pentagons(ctx):
        rep = verify_penta_props(ctx, p)
        assert rep.ok, rep.claims


def test_proposition_fails_for_odd_labelling(ctx):
    # swapping two C labels breaks the coset structure of (iii) or (iv) for some pentagon
    from reeunital.pentagons import Pentagon

    F0 = fundamental_pentagon(ctx)
    c = F0.others
    swapped = Pentagon(F0.apex, (c[1], c[0], c[2], c[3]), F0.stabilizer_order, True)
    assert not verify_penta_props(ctx, swapped).ok


def test_soc_claims(ctx, r3, aut):
    from reeunital.design import super_onan_configurations
    from reeunital.pentagons import block_actions

    socs = super_onan_configurations(r3)
    acts = block_actions(r3, aut)
    for c in socs[::9]:
        st = soc_stabilizer(r3, aut, c, acts)
        assert is_A4(st)
        rep = soc_d_points(r3, aut, c, actions=acts)
        assert rep.ok and rep.valid_labellings == 12
        assert len(set(rep.d_points.values())) == 12


def test_soc_dual(ctx, r3):
    for p in enumerate_pentagons(ctx):
        assert soc_dual_check(ctx, r3, p).ok


def test_correspondence(ctx, r3):
    from reeunital.design import super_onan_configurations

    corr = pentagon_soc_correspondence(ctx, r3, super_onan_configurations(r3))
    assert corr == {"blocks_meet_iff_external_join": True, "bijection": True}


def test_valid_labellings_form_stabilizer_orbit(r3, aut):
    from reeunital.design import super_onan_configurations
    from reeunital.pentagons import block_actions

    c = super_onan_configurations(r3)[0]
    acts = block_actions(r3, aut)
    rep = soc_d_points(r3, aut, c, actions=acts)
    rest = [b for b in c.blocks if b != rep.apex_block]
    good = {order for order in permutations(rest) if soc_d_points(r3, aut, c, labels=order, actions=acts).ok}
    st = soc_stabilizer(r3, aut, c, acts)
    orbit = {tuple(acts[g][b] for b in rep.labelling) for g in st.elements}
    assert good == orbit and len(good) == 12
