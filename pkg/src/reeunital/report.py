"""Check suite: runs the verifications and assembles a versioned JSON report.

Each check returns a status (pass / fail / inconclusive) and a small
witness payload.  Records come out in fixed selector order; timing fields
are the only nondeterministic content and can be dropped with
``timing=False``.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from . import __version__
from .conic import EXTERNAL, build_context, external_by_trace, hyperoval_stabilizer, line_action
from .design import automorphism_group, build_ree_unital, onan_configurations, super_onan_configurations, validate
from .embed import (
    DEFAULT_BUDGET,
    SearchConfig,
    admissibility,
    beta_preserves_hyperoval,
    classify,
    dual_embedding,
    in_subplane,
    involution_block,
    lift,
    search,
    verify,
    write_certificate,
)
from .field import field_of_order, gf8
from .groups import (
    PermGroup,
    commuting_graph,
    conjugacy_class,
    conjugation_action,
    involutions,
    is_A4,
    primitivity,
    psl2,
    sylow2,
)
from .pentagons import (
    block_actions,
    d1234_infinity_point_not_fixed_by_order3,
    d_line_points,
    d_lines,
    enumerate_pentagons,
    fundamental_pentagon,
    g0_group,
    is_external_pentagon,
    pentagon_soc_correspondence,
    soc_d_points,
    soc_dual_check,
    soc_stabilizer,
    verify_penta_props,
)
from .plane import pg
from .symbolic import D_POINTS, FRAME_LINES, symbolic_d_point, verify_thm1_identities

REPORT_SCHEMA = "reeunital.suite-report/1"
SCHEMA_PATH = Path(__file__).parent / "schema" / "suite-report.schema.json"
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

SELECTORS = ("census", "groups", "pentagons", "soc", "thm1", "embed-pg8", "embed-pg9", "embed-pg16")
LONG_SELECTORS = ("embed-pg9", "embed-pg16")
OPTIONAL_SELECTORS = ("embed-pg16",)


class UsageError(ValueError):
    pass


@dataclass
class CheckRecord:
    id: str
    claim: str
    status: str
    witness: dict
    wall_time_s: float = 0.0
    optional: bool = False
    certificate: str | None = None

    def as_dict(self, timing: bool = True) -> dict:
        d = {
            "id": self.id,
            "claim": self.claim,
            "status": self.status,
            "optional": self.optional,
            "witness": self.witness,
        }
        if self.certificate is not None:
            d["certificate"] = self.certificate
        if timing:
            d["wall_time_s"] = round(self.wall_time_s, 3)
        return d


@dataclass
class SuiteReport:
    selector: str
    flags: dict
    records: list = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def status(self) -> str:
        required = [r for r in self.records if not r.optional]
        if any(r.status == FAIL for r in required):
            return FAIL
        if any(r.status == INCONCLUSIVE for r in required):
            return INCONCLUSIVE
        return PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}[self.status]

    def as_dict(self, timing: bool = True) -> dict:
        d = {
            "schema": REPORT_SCHEMA,
            "tool_version": __version__,
            "selector": self.selector,
            "flags": self.flags,
            "status": self.status,
            "checks": [r.as_dict(timing) for r in self.records],
        }
        if timing:
            d["wall_time_s"] = round(self.wall_time_s, 3)
        return d


def to_json(report: SuiteReport, timing: bool = True) -> str:
    return json.dumps(report.as_dict(timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def to_text(report: SuiteReport, timing: bool = True) -> str:
    lines = []
    for r in report.records:
        t = f" ({r.wall_time_s:.2f}s)" if timing else ""
        opt = " [optional]" if r.optional else ""
        lines.append(f"{r.status.upper():<12} {r.id}{opt}: {r.claim}{t}")
    lines.append(f"overall: {report.status}")
    return "\n".join(lines) + "\n"


def emit_report(report: SuiteReport, fmt: str, path, timing: bool = True) -> None:
    text = to_json(report, timing) if fmt == "json" else to_text(report, timing)
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


# -- shared objects, built once per run -------------------------------------------------

class Workspace:
    def __init__(self, budget: int = DEFAULT_BUDGET, cert_dir=None, cert_prefix: str = "report"):
        self.budget = budget
        self.cert_dir = Path(cert_dir) if cert_dir else None
        self.cert_prefix = cert_prefix

    @cached_property
    def ctx(self):
        return build_context(gf8())

    @cached_property
    def design(self):
        return build_ree_unital(self.ctx)

    @cached_property
    def aut(self) -> PermGroup:
        return automorphism_group(self.design)

    @cached_property
    def stabilizer(self):
        return hyperoval_stabilizer(self.ctx)

    @cached_property
    def pentagons(self):
        return enumerate_pentagons(self.ctx)

    @cached_property
    def socs(self):
        return super_onan_configurations(self.design)

    @cached_property
    def block_actions(self):
        return block_actions(self.design, self.aut)

    def save_certificate(self, name: str, cert: dict) -> str | None:
        """Write a certificate beside the report; returns its file name (or None)."""
        if self.cert_dir is None:
            return None
        fname = f"{self.cert_prefix}.{name}.cert.json"
        write_certificate(cert, self.cert_dir / fname)
        return fname


def _cert_sha(cert: dict) -> str:
    return hashlib.sha256(json.dumps(cert, sort_keys=True).encode()).hexdigest()


# -- checks -----------------------------------------------------------------------------

def check_census(ws: Workspace):
    ctx = ws.ctx
    P, F = ctx.plane, ctx.field
    c = ctx.census()
    tangents_meet = all(P.incident(ctx.nucleus, t) for t in ctx.tangents)
    # trace criterion for lines Y = mX + bZ with m != 0 against the intersection count
    trace_ok = True
    for l in range(P.n):
        a, b_, cc = P.lines[l]
        if b_ == 0 or a == 0:
            continue
        # aX + bY + cZ = 0  <=>  Y = (a/b) X + (c/b) Z in characteristic 2
        m, b = F.div(a, b_), F.div(cc, b_)
        if external_by_trace(F, m, b) != (ctx.line_type[l] == EXTERNAL):
            trace_ok = False
    ok = (
        c["points"] == 73
        and c["lines"] == 73
        and c["conic_points"] == 9
        and len(ctx.tangents) == 9
        and tangents_meet
        and P.points[ctx.nucleus] == (1, 0, 0)
        and c["external_points"] == 63
        and c["external_lines"] == 28
        and c["external_lines_per_external_point"] == [4]
        and trace_ok
    )
    return ok, dict(c, tangents_concurrent_at_nucleus=tangents_meet, trace_criterion_agrees=trace_ok)


def check_design(ws: Workspace):
    rep = validate(ws.design, 2, 4, 1)
    ok = rep.ok and rep.params.get("r") == 9 and ws.design.b == 63 and ws.design.v == 28
    return ok, {"params": rep.params, "counterexample": rep.counterexample, "sha256": ws.design.digest()}


def check_aut(ws: Workspace):
    d = ws.design
    G = ws.aut
    invs = involutions(G)
    cls = conjugacy_class(G, invs[0]) if invs else []
    syl = sylow2(G)
    syl_ok = len(syl) == 9 and all(
        len(S) == 8 and PermGroup.from_elements(list(S), d.v).is_elementary_abelian_2() for S in syl
    )
    # cross-check: the hyperoval stabilizer acting on the 28 external lines
    _, H = ws.stabilizer
    ctx = ws.ctx
    pos = {l: i for i, l in enumerate(ctx.external_lines)}
    P = ctx.plane
    induced = set()
    for h in H.elements:
        la = line_action(P, h)
        induced.add(tuple(pos[la[l]] for l in ctx.external_lines))
    blocks_from_involutions = sorted(involution_block(d, g) for g in invs)
    ok = (
        G.order() == 1512
        and G.is_2_transitive()
        and len(invs) == 63
        and len(cls) == 63
        and syl_ok
        and induced == G.element_set
        and blocks_from_involutions == list(range(63))
    )
    return ok, {
        "order": G.order(),
        "two_transitive": G.is_2_transitive(),
        "involutions": len(invs),
        "involution_class_size": len(cls),
        "sylow2_count": len(syl),
        "sylow2_elementary_abelian_8": syl_ok,
        "equals_hyperoval_stabilizer_action": induced == G.element_set,
        "involution_fixed_blocks_bijective": blocks_from_involutions == list(range(63)),
    }


def check_commuting_ree3(ws: Workspace):
    G = ws.aut
    invs = involutions(G)
    cg = commuting_graph(G, invs)
    syl = sylow2(G)
    comp_sets = sorted(sorted(frozenset(invs[i] for i in c)) for c in cg.components)
    syl_sets = sorted(sorted(S - {tuple(range(G.degree))}) for S in syl)
    act = conjugation_action(G, invs)
    prim = primitivity(act)
    blocks = sorted(map(sorted, prim.blocks))
    comps = sorted(map(sorted, cg.components))
    ok = (
        len(cg.components) == 9
        and all(len(c) == 7 and cg.is_clique(c) for c in cg.components)
        and comp_sets == syl_sets
        and not prim.primitive
        and blocks == comps
    )
    return ok, {
        "vertices": len(invs),
        "edges": len(cg.edges),
        "component_sizes": cg.component_sizes(),
        "components_are_cliques": all(cg.is_clique(c) for c in cg.components),
        "components_match_sylow2": comp_sets == syl_sets,
        "conjugation_action_primitive": prim.primitive,
        "components_form_block_system": blocks == comps,
    }


def check_commuting_psl2_27(ws: Workspace):
    G = psl2(27)
    invs = involutions(G)
    cg = commuting_graph(G, invs)
    prim = primitivity(conjugation_action(G, invs))
    ok = G.order() == 9828 and len(invs) == 351 and cg.is_connected() and prim.primitive
    return ok, {
        "group_order": G.order(),
        "vertices": len(invs),
        "edges": len(cg.edges),
        "connected": cg.is_connected(),
        "conjugation_action_primitive": prim.primitive,
    }


def check_pentagons(ws: Workspace):
    ctx = ws.ctx
    P = ctx.plane
    _, G = ws.stabilizer
    pents = ws.pentagons
    F0 = fundamental_pentagon(ctx)
    orbit = G.set_orbit(F0.points)
    fund_stab = G.set_stabilizer(F0.points)
    g0 = g0_group(ctx)
    all_external = all(is_external_pentagon(ctx, p.points) for p in pents)
    ok = (
        len(pents) == 126
        and all(p.a4_type and p.stabilizer_order == 12 for p in pents)
        and len(orbit) == 126
        and set(orbit) == {p.points for p in pents}
        and fund_stab.element_set == g0.element_set
        and all_external
    )
    return ok, {
        "count": len(pents),
        "all_A4_type": all(p.a4_type for p in pents),
        "orbit_of_fundamental": len(orbit),
        "all_external_general_position": all_external,
        "fundamental": [P.fmt_point(F0.vertex(i)) for i in range(5)],
        "fundamental_stabilizer_is_G0": fund_stab.element_set == g0.element_set,
        "G0_order": g0.order(),
    }


def check_pentagon_props(ws: Workspace):
    ctx = ws.ctx
    P, F = ctx.plane, ctx.field
    F0 = fundamental_pentagon(ctx)
    d = d_lines(ctx, F0)
    g = lambda k: F.pow(F.gen, k)  # noqa: E731
    x, y = d_line_points(ctx, F0, (1, 2, 3, 4))
    fund = {
        "meet_points": [P.fmt_point(x), P.fmt_point(y)],
        "meet_points_as_expected": (P.points[x], P.points[y]) == ((g(6), g(2), 1), (1, g(4), 1)),
        "d1234": P.fmt_line(d[1, 2, 3, 4]),
        "d1234_as_expected": d[1, 2, 3, 4] == P.line_of((g(6), 1, g(3))),
        "d1234_infinity_point": P.fmt_point(P.meet(d[1, 2, 3, 4], P.line_of((0, 0, 1)))),
        "infinity_point_moved_by_order3": d1234_infinity_point_not_fixed_by_order3(ctx),
        "trace_gamma6": F.trace(g(6)),
    }
    failing = []
    counts = {}
    for i, p in enumerate(ws.pentagons):
        rep = verify_penta_props(ctx, p)
        for k, v in rep.claims.items():
            counts[k] = counts.get(k, 0) + bool(v)
        if not rep.ok:
            failing.append({"pentagon": i, "claims": rep.claims})
    ok = not failing and all(v is True for k, v in fund.items() if isinstance(v, bool))
    return ok, {"pentagons": len(ws.pentagons), "claims_passed": counts, "fundamental": fund, "failing": failing[:3]}


def check_socs(ws: Workspace):
    d = ws.design
    socs = ws.socs
    acts = ws.block_actions
    base = frozenset(socs[0].blocks)
    orbit = {frozenset(a[b] for b in base) for a in acts.values()}
    stabs_ok = True
    for c in socs:
        st = soc_stabilizer(d, ws.aut, c, acts)
        sa = {g: acts[g] for g in st.elements}
        fixed = [b for b in c.blocks if all(a[b] == b for a in sa.values())]
        rest = [b for b in c.blocks if b not in fixed]
        # 2-transitivity on the remaining four blocks: all 12 ordered pairs reached
        pairs = {(a[rest[0]], a[rest[1]]) for a in sa.values()}
        if not (is_A4(st) and len(fixed) == 1 and len(pairs) == 12):
            stabs_ok = False
            break
    corr = pentagon_soc_correspondence(ws.ctx, d, socs)
    ok = (
        len(socs) == 126
        and len(orbit) == 126
        and orbit == {frozenset(c.blocks) for c in socs}
        and stabs_ok
        and all(corr.values())
    )
    return ok, {
        "count": len(socs),
        "onan_configurations": len(onan_configurations(d)),
        "aut_orbit_size": len(orbit),
        "stabilizers_A4_fix_one_block_2transitive": stabs_ok,
        **corr,
    }


def check_soc_props(ws: Workspace):
    d = ws.design
    acts = ws.block_actions
    failing = []
    labellings = set()
    for i, c in enumerate(ws.socs):
        rep = soc_d_points(d, ws.aut, c, actions=acts)
        labellings.add(rep.valid_labellings)
        if not rep.ok:
            failing.append({"soc": i, "claims": rep.claims})
    dual_fail = [i for i, p in enumerate(ws.pentagons) if not soc_dual_check(ws.ctx, d, p).ok]
    ok = not failing and not dual_fail
    return ok, {
        "configurations": len(ws.socs),
        "valid_labellings_per_configuration": sorted(labellings),
        "failing": failing[:3],
        "dual_transport_failures": dual_fail[:3],
    }


def check_thm1(ws: Workspace):
    r = verify_thm1_identities()
    return r["ok"], r


def check_thm1_gf8(ws: Workspace):
    """Evaluate the symbolic D-points at the GF(8) solutions and test the collinearities."""
    F = gf8()
    P = pg(F)
    sols = []
    for v0 in F.elements():
        if F.add(F.add(F.pow(v0, 3), F.pow(v0, 2)), 1) == 0:
            sols.append((F.add(v0, 1), v0))
    results = []
    for u0, v0 in sols:
        pts = {pi: P.point_of(D.eval(F, u0, v0)) for pi, D in D_POINTS.items()}
        lines = {k: P.line_of(tuple(c.eval(F, u0, v0) for c in L)) for k, L in FRAME_LINES.items()}
        quad = P.collinear(list(pts.values()))
        a_c4 = P.meet(lines["a"], lines["c4"])
        d3241 = P.point_of(tuple(c.eval(F, u0, v0) for c in symbolic_d_point((3, 2, 4, 1))))
        iii = P.collinear([a_c4, pts[1, 2, 3, 4], d3241])
        results.append({"u": F.format(u0), "v": F.format(v0), "coset_collinear": quad, "a_c4_D1234_D3241": iii})
    ok = len(sols) == 3 and all(r["coset_collinear"] and r["a_c4_D1234_D3241"] for r in results)
    return ok, {"solutions": results}


def check_embed_dual(ws: Workspace):
    ctx = ws.ctx
    e = dual_embedding(ctx)
    ver = verify(e)
    F64 = field_of_order(64)
    big = lift(e, 2, F64)
    lifted_ok = bool(verify(big)) and in_subplane(big, gf8())
    adm = admissibility(e, ws.aut)
    betas_ok = adm.ok and all(beta_preserves_hyperoval(b, ctx) for b in adm.betas)
    # Sylow 2-subgroups: image lines of the 7 involution blocks are concurrent
    syl = sylow2(ws.aut)
    P = e.plane
    conc = []
    for S in syl:
        blocks = [involution_block(e.design, g) for g in S if any(g[x] != x for x in range(len(g)))]
        conc.append(len(blocks) == 7 and P.concurrent([e.block_map[b] for b in blocks]))
    ok = ver.ok and lifted_ok and betas_ok and len(conc) == 9 and all(conc)
    return ok, {
        "verified": ver.ok,
        "counterexample": ver.counterexample,
        "lifted_to": F64.spec_string(),
        "lift_verified_in_order8_subplane": lifted_ok,
        "generators": len(ws.aut.gens),
        "betas_found": len(adm.betas),
        "betas_preserve_hyperoval": betas_ok,
        "sylow2_image_lines_concurrent": conc,
    }


def _search_check(ws: Workspace, q: int, name: str, level: int = 2):
    F = field_of_order(q)
    P = pg(F)
    out = search(ws.design, P, SearchConfig(level=level, budget=ws.budget))
    cert_file = ws.save_certificate(name, out.certificate)
    witness = {
        "plane": F.spec_string(),
        "symmetry_level": level,
        "status": out.status,
        "search": out.digest,
        "certificate_sha256": _cert_sha(out.certificate),
        "embeddings_found": len(out.embeddings),
    }
    return out, witness, cert_file


def check_embed_pg8(ws: Workspace):
    out, witness, cert = _search_check(ws, 8, "embed-pg8")
    if out.status == "inconclusive":
        return None, witness, cert
    emb = [dual_embedding(ws.ctx)] + out.embeddings
    cls = classify(emb, ws.aut, semilinear=True)
    witness["orbits"] = cls.orbits
    witness["transporters"] = [
        {"source": t.source, "target": t.target, "beta": t.beta.to_json(), "alpha": list(t.alpha)}
        for t in cls.transporters
    ]
    ok = out.status == "found" and len(cls.orbits) == 1
    return ok, witness, cert


def check_embed_pg9(ws: Workspace):
    out, witness, cert = _search_check(ws, 9, "embed-pg9")
    if out.status == "inconclusive":
        return None, witness, cert
    return out.status == "none", witness, cert


def check_embed_pg9_flag(ws: Workspace):
    out, witness, cert = _search_check(ws, 9, "embed-pg9-level1", level=1)
    if out.status == "inconclusive":
        return None, witness, cert
    return out.status == "none", witness, cert


def check_embed_pg16(ws: Workspace):
    out, witness, cert = _search_check(ws, 16, "embed-pg16")
    if out.status == "inconclusive":
        return None, witness, cert
    return out.status == "none", witness, cert


# (id, claim, function, optional)
CHECKS = {
    "census": [
        ("census.plane", "PG(2,8): 73 points/lines, 9 conic points, 9 tangents through N=(1,0,0), "
         "63 external points, 28 external lines, 4 external lines per external point", check_census, False),
        ("census.design", "external lines/points form a 2-(28,4,1) design with r=9, b=63", check_design, False),
    ],
    "groups": [
        ("groups.aut", "|Aut R(3)|=1512, 2-transitive, 63 conjugate involutions, "
         "9 elementary abelian Sylow 2-subgroups of order 8", check_aut, False),
        ("groups.commuting_ree3", "commuting-involution graph of Ree(3): 9 components, each a 7-clique "
         "equal to a Sylow 2-subgroup minus 1; components are a block system", check_commuting_ree3, False),
        ("groups.commuting_psl2_27", "commuting-involution graph of PSL(2,27) on 351 involutions is connected",
         check_commuting_psl2_27, False),
    ],
    "pentagons": [
        ("pentagons.enumerate", "126 external pentagons, all of A4 type, one orbit under the hyperoval stabilizer",
         check_pentagons, False),
        ("pentagons.proposition", "for every external pentagon: 12 distinct external d-lines permuted regularly, "
         "3 concurrent quadruples on the tangent through A, AC4/d1234/d3241 concurrent", check_pentagon_props, False),
    ],
    "soc": [
        ("soc.enumerate", "126 super O'Nan configurations, one Aut-orbit, stabilizer A4 fixing one block "
         "and 2-transitive on the rest", check_socs, False),
        ("soc.proposition", "for every super O'Nan configuration: 12 distinct D-points, coset quadruples are blocks, "
         "a^c4, D1234, D3241 on a block", check_soc_props, False),
    ],
    "thm1": [
        ("thm1.identities", "determinant factorizations, their difference, the GF(2) reduction at u=v+1 and "
         "v(v+1)(v^3+v^2+1); v^3+v^2+1 irreducible over GF(2)", check_thm1, False),
        ("thm1.gf8_specialization", "symbolic D-points at the GF(8) solutions satisfy the collinearities",
         check_thm1_gf8, False),
    ],
    "embed-pg8": [
        ("embed.dual", "dual embedding verifies, lifts into the order-8 subplane of PG(2,64), every Aut generator "
         "is induced by a collineation, Sylow 2-subgroup image lines concurrent", check_embed_dual, False),
        ("embed.pg8_uniqueness", "all embeddings into PG(2,8) form one orbit under collineations and Aut",
         check_embed_pg8, False),
    ],
    "embed-pg9": [
        ("embed.pg9_nonexistence", "no embedding into PG(2,9) (completed search)", check_embed_pg9, False),
        ("embed.pg9_flag_level", "no embedding into PG(2,9) with only a flag fixed (cross-check of the reduction)",
         check_embed_pg9_flag, False),
    ],
    "embed-pg16": [
        ("embed.pg16_nonexistence", "no embedding into PG(2,16) (completed search)", check_embed_pg16, True),
    ],
}


def selectors_for(selector: str, include_long: bool) -> list[str]:
    if selector == "all":
        return [s for s in SELECTORS if include_long or s not in LONG_SELECTORS]
    if selector not in SELECTORS:
        raise UsageError(f"unknown selector {selector!r}; choose from all, {', '.join(SELECTORS)}")
    return [selector]


def run_suite(
    selector: str = "all",
    include_long: bool = False,
    budget: int = DEFAULT_BUDGET,
    cert_dir=None,
    cert_prefix: str = "report",
) -> SuiteReport:
    sels = selectors_for(selector, include_long)
    if budget <= 0:
        raise UsageError("budget must be positive")
    ws = Workspace(budget, cert_dir, cert_prefix)
    report = SuiteReport(selector, {"include_long": include_long, "budget": budget})
    t_all = time.perf_counter()
    for sel in sels:
        for cid, claim, fn, optional in CHECKS[sel]:
            t = time.perf_counter()
            cert = None
            try:
                res = fn(ws)
                if len(res) == 3:
                    ok, witness, cert = res
                else:
                    ok, witness = res
            except Exception as exc:  # a crashing check is a failing check, with its reason
                ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
            status = INCONCLUSIVE if ok is None else PASS if ok else FAIL
            report.records.append(
                CheckRecord(cid, claim, status, witness, time.perf_counter() - t, optional, cert)
            )
    report.wall_time_s = time.perf_counter() - t_all
    return report
