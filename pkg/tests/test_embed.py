import json

import pytest

from reeunital.embed import (
    Embedding,
    SearchConfig,
    admissibility,
    beta_preserves_hyperoval,
    check_certificate,
    classify,
    compose,
    dual_embedding,
    find_transporter,
    in_subplane,
    involution_block,
    lift,
    search,
    transported,
    verify,
)
from reeunital.field import field_of_order, gf8
from reeunital.groups import involutions, sylow2
from reeunital.plane import Collineation, pg


@pytest.fixture(scope="module")
def dual(ctx):
    return dual_embedding(ctx)


def test_dual_embedding_verifies(dual):
    assert verify(dual).ok


def test_verify_detects_broken_incidence(dual):
    pm = list(dual.point_map)
    # move point 0 to a plane point not used by the embedding
    unused = next(x for x in range(dual.plane.n) if x not in pm)
    pm[0] = unused
    v = verify(Embedding(dual.design, dual.plane, tuple(pm), dual.block_map))
    assert not v.ok and v.counterexample["kind"] == "incidence"
    pm = list(dual.point_map)
    pm[1] = pm[0]
    assert verify(Embedding(dual.design, dual.plane, tuple(pm), dual.block_map)).counterexample["kind"].startswith(
        "point map"
    )


def test_lift_into_pg64(dual):
    big = lift(dual, 2, field_of_order(64))
    assert big.plane.q == 64
    assert verify(big).ok
    assert in_subplane(big, gf8())
    assert not in_subplane(big, field_of_order(4))


def test_compose_with_collineation(dual):
    F = gf8()
    g = Collineation(F, (1, 2, 3, 0, 1, 5, 7, 0, 1), 1)
    assert verify(compose(g, dual)).ok


def test_admissibility(ctx, dual, aut):
    adm = admissibility(dual, aut)
    assert adm.ok and len(adm.betas) == len(aut.gens)
    P = dual.plane
    for alpha, beta in zip(aut.gens, adm.betas):
        for p in range(dual.design.v):
            assert P.point_index[beta.point(P.points[dual.point_map[p]])] == dual.point_map[alpha[p]]
        assert beta_preserves_hyperoval(beta, ctx)


def test_involutions_fix_blocks(r3, aut):
    invs = involutions(aut)
    assert sorted(involution_block(r3, g) for g in invs) == list(range(63))


def test_sylow_images_concurrent(dual, aut):
    P = dual.plane
    for S in sylow2(aut):
        blocks = [involution_block(dual.design, g) for g in S if any(g[x] != x for x in range(28))]
        assert len(blocks) == 7
        assert P.concurrent([dual.block_map[b] for b in blocks])
        # dually: the 7 external points lie on one tangent of the conic
        assert len({dual.block_map[b] for b in blocks}) == 7


def test_search_pg8_one_orbit(r3, dual, aut):
    out = search(r3, pg(gf8()), SearchConfig(level=2))
    assert out.status == "found" and out.embeddings
    cls = classify([dual] + out.embeddings, aut)
    assert len(cls.orbits) == 1
    for t in cls.transporters:
        src = ([dual] + out.embeddings)[t.source]
        dst = ([dual] + out.embeddings)[t.target]
        assert transported(src, t.beta, t.alpha).point_map == dst.point_map


@pytest.mark.parametrize("level", [0, 1])
def test_lower_levels_find_pg8(r3, level):
    out = search(r3, pg(gf8()), SearchConfig(level=level, first_only=True))
    assert out.status == "found"


def test_search_pg9_none(r3, tmp_path):
    path = tmp_path / "pg9.json"
    out = search(r3, pg(field_of_order(9)), SearchConfig(level=2, cert_path=str(path)))
    assert out.status == "none"
    cert = json.loads(path.read_text())
    assert cert["status"] == "none" and cert["search"]["complete"]
    assert cert["schema"] == "reeunital.embedding-certificate/1"


def test_search_budget_inconclusive(r3):
    out = search(r3, pg(field_of_order(9)), SearchConfig(level=2, budget=2))
    assert out.status == "inconclusive"


def test_certificate_roundtrip(r3):
    P = pg(gf8())
    out = search(r3, P, SearchConfig(level=2))
    assert check_certificate(out.certificate, r3, P)
    bad = json.loads(json.dumps(out.certificate))
    bad["embeddings"][0]["point_map"][0], bad["embeddings"][0]["point_map"][1] = (
        bad["embeddings"][0]["point_map"][1],
        bad["embeddings"][0]["point_map"][0],
    )
    assert not check_certificate(bad, r3, P)


def test_fanout_matches_sequential(r3):
    P = pg(field_of_order(9))
    a = search(r3, P, SearchConfig(level=2))
    b = search(r3, P, SearchConfig(level=2, fanout=2))
    assert a.digest["trace_sha256"] == b.digest["trace_sha256"]
    assert a.status == b.status == "none"


def test_transporter_to_self(dual, aut):
    # a transporter from an embedding to itself is always found
    assert find_transporter(dual, dual, aut) is not None


def test_bad_search_config():
    with pytest.raises(ValueError):
        SearchConfig(budget=0)
    with pytest.raises(ValueError):
        SearchConfig(level=5)


@pytest.mark.slow
def test_pg9_flag_level_agrees(r3):
    out = search(r3, pg(field_of_order(9)), SearchConfig(level=1))
    assert out.status == "none"
