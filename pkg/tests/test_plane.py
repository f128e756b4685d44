import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeunital.field import FieldError, field_of_order, gf8
from reeunital.plane import (
    Collineation,
    ProjLine,
    ProjPoint,
    collinear,
    collineation_from_frames,
    concurrent,
    enumerate_plane,
    frame_matrix,
    frobenius_collineation,
    identity,
    incidence,
    join,
    meet,
    pg,
    tau,
)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_plane_axioms(q):
    P = enumerate_plane(q)
    n = q * q + q + 1
    assert P.n == n == len(set(P.points))
    assert all(len(x) == q + 1 for x in P.pts_on_line)
    assert all(len(x) == q + 1 for x in P.lines_on_pt)
    # any two lines meet in exactly one point (exhaustive)
    for l in range(n):
        for m in range(l + 1, n):
            assert (P.line_mask[l] & P.line_mask[m]).bit_count() == 1


@pytest.mark.parametrize("q", [4, 8, 9])
def test_join_meet_duality(q):
    P = enumerate_plane(q)
    rng = random.Random(q)
    for _ in range(300):
        a, b = rng.sample(range(P.n), 2)
        l = P.join(a, b)
        assert P.incident(a, l) and P.incident(b, l)
        m = P.meet(l, P.join(a, rng.choice([x for x in range(P.n) if x not in (a, b) and not P.incident(x, l)])))
        assert m == a


def test_example_join_meet():
    F = gf8()
    g = lambda k: F.pow(F.gen, k)  # noqa: E731
    A = ProjPoint(F, (1, 1, 0))
    C1 = ProjPoint(F, (0, 1, 1))
    assert join(A, C1) == ProjLine(F, (1, 1, 1))
    d1234 = ProjLine.slope_intercept(F, g(6), g(3))
    linf = ProjLine(F, (0, 0, 1))
    assert meet(d1234, linf) == ProjPoint(F, (1, g(6), 0))
    assert d1234.as_slope_intercept() == (g(6), g(3))
    assert incidence(ProjPoint(F, (g(6), g(2), 1)), d1234)
    assert incidence(ProjPoint(F, (1, g(4), 1)), d1234)


def test_value_type_errors():
    F, K = gf8(), field_of_order(9)
    with pytest.raises(FieldError):
        join(ProjPoint(F, (1, 0, 0)), ProjPoint(K, (0, 1, 0)))
    with pytest.raises(ValueError):
        join(ProjPoint(F, (1, 0, 0)), ProjPoint(F, (1, 0, 0)))
    with pytest.raises(ValueError):
        collinear([ProjPoint(F, (1, 0, 0)), ProjPoint(F, (0, 1, 0))])
    with pytest.raises(ValueError):
        ProjPoint(F, (0, 0, 0))
    pts = [ProjPoint(F, (x, 0, 1)) for x in range(3)]
    assert collinear(pts)
    assert concurrent([ProjLine(F, (1, 0, x)) for x in range(3)])


def test_normalization_last_nonzero_one():
    P = pg(field_of_order(9))
    for c in P.points:
        nz = [x for x in c if x]
        assert nz[-1] == 1


def _random_collineation(F, rng):
    while True:
        M = tuple(rng.randrange(F.q) for _ in range(9))
        try:
            return Collineation(F, M, rng.randrange(F.e))
        except ValueError:
            continue


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 8, 9, 27]), st.integers(0, 10**6))
def test_collineations_preserve_incidence(q, seed):
    F = field_of_order(q)
    P = pg(F)
    rng = random.Random(seed)
    g = _random_collineation(F, rng)
    h = _random_collineation(F, rng)
    gp, gl = P.point_perm(g), P.line_perm(g)
    assert sorted(gp) == list(range(P.n))
    for l in rng.sample(range(P.n), 5):
        assert sorted(gp[x] for x in P.pts_on_line[l]) == list(P.pts_on_line[gl[l]])
    # composition is an action: (g*h)(x) = g(h(x))
    gh = P.point_perm(g * h)
    hp = P.point_perm(h)
    assert gh == tuple(gp[hp[x]] for x in range(P.n))
    assert (g * g.inverse()).is_identity()
    # the dual collineation maps line coordinates like g maps lines
    d = g.dual()
    for l in rng.sample(range(P.n), 5):
        assert d.point(P.lines[l]) == g.line(P.lines[l])


def test_frames():
    F = gf8()
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    assert frame_matrix(F, e) == (1, 0, 0, 0, 1, 0, 0, 0, 1)
    assert frame_matrix(F, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 1, 1)]) is None
    rng = random.Random(5)
    for _ in range(30):
        g = _random_collineation(F, rng)
        dst = [g.point(v) for v in e]
        h = collineation_from_frames(F, e, dst, g.frob)
        assert h == g


def test_tau_and_frobenius():
    F = gf8()
    P = pg(F)
    conic = {i for i, (x, y, z) in enumerate(P.points) if F.add(F.mul(x, x), F.mul(y, z)) == 0}
    for c in F.elements():
        t = tau(F, c)
        assert {P.point_perm(t)[x] for x in conic} == conic
        assert (t * t).is_identity()
    phi = frobenius_collineation(F)
    assert phi.order() == 3
    assert identity(F).is_identity()
