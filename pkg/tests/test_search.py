import pytest

from reeunital.design import fano
from reeunital.field import field_of_order
from reeunital.plane import pg
from reeunital.search import BudgetExceeded, MapSearch, PlaneTarget, run_parallel


class Factory:
    def __init__(self, q):
        self.q = q

    def __call__(self):
        return PlaneTarget(pg(field_of_order(self.q)))


@pytest.mark.parametrize("q,exists", [(2, True), (3, False), (4, True), (5, False)])
def test_fano_subplanes(q, exists):
    # the Fano plane embeds in PG(2,q) iff q is even
    P = pg(field_of_order(q))
    res = MapSearch(fano(), PlaneTarget(P), limit=1).run()
    assert bool(res.solutions) == exists


def test_fano_into_pg2_count():
    # embeddings of Fano into PG(2,2) are its 168 automorphisms
    res = MapSearch(fano(), Factory(2)()).run()
    assert len(res.solutions) == 168


def test_budget():
    with pytest.raises(BudgetExceeded):
        MapSearch(fano(), Factory(3)(), budget=5).run()


def test_parallel_matches_sequential():
    d = fano()
    seq = MapSearch(d, Factory(4)()).run({0: 0})
    par = run_parallel(d, Factory(4), 10**6, {0: 0}, {}, workers=2)
    assert par.trace_digest == seq.trace_digest
    assert par.nodes == seq.nodes
    assert sorted(par.solutions) == sorted(seq.solutions)
    assert par.depth_profile == seq.depth_profile


def test_deterministic_digest():
    a = MapSearch(fano(), Factory(3)()).run()
    b = MapSearch(fano(), Factory(3)()).run()
    assert a.digest() == b.digest()
    assert a.complete and not a.solutions
