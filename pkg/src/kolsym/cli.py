"""Command-line driver for the verification suites and data export.

Exit codes: 0 when every check in scope passes, 1 on a verification failure,
2 on a usage error (unknown family, malformed grid or config).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import catalog as cat
from . import group as grp
from . import heatisq as hq
from . import jetcalc as jc
from . import kramers as kr
from . import liealg as la
from . import reduce as rd
from . import specfun as sf
from . import sympoly as sp

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("algebra", "group", "reductions", "solutions", "heatisq", "kramers", "specfun")
CSV_HEADER = ("t", "x", "y", "u", "u_t", "u_x", "u_y", "residual_rel")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    seed: int = 42
    tol_rel: float = 1e-8
    tol_abs: float = 1e-9
    samples: int = 200
    fmt: str = "json"
    boxes: Dict[str, List[List[float]]] = field(default_factory=dict)

    def __post_init__(self):
        if not (self.tol_rel > 0 and self.tol_abs > 0):
            raise UsageError("tolerances must be positive")
        if self.samples < 1:
            raise UsageError("--samples must be at least 1")
        if self.fmt not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.fmt!r}")

    def box(self, fid: str, default):
        b = self.boxes.get(fid)
        return tuple(tuple(float(c) for c in r) for r in b) if b else default


# ---------------------------------------------------------------------------
# report helpers


def check(name: str, passed: bool, **data) -> dict:
    return {"name": name, "passed": bool(passed), **data}


def suite(name: str, checks: List[dict]) -> dict:
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dump_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (str, Fraction)):
        return json.dumps(str(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dump_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + dump_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(type(obj))


def render(report: dict, fmt: str) -> str:
    suites = report["suites"] if "suites" in report else [report]
    if fmt == "json":
        return dump_json(report) + "\n"
    if fmt == "text":
        lines = []
        for s in suites:
            for c in s["checks"]:
                extra = " ".join(f"{k}={fmt_float(v) if isinstance(v, float) else v}" for k, v in c.items()
                                 if k not in ("name", "passed") and not isinstance(v, (list, dict)))
                lines.append(f"{'PASS' if c['passed'] else 'FAIL'} {s['suite']}/{c['name']} {extra}".rstrip())
            lines.append(f"{'PASS' if s['passed'] else 'FAIL'} {s['suite']}")
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("suite", "check", "passed"))
    for s in suites:
        for c in s["checks"]:
            w.writerow((s["suite"], c["name"], int(c["passed"])))
    return buf.getvalue()


# ---------------------------------------------------------------------------
# suites


def levi_matrices_up_to_k_sign() -> la.LeviReport:
    """Levi action compared with the K block negated."""
    B = la.kolmogorov_basis()
    rb = [B[k] for k in ("P3", "P2", "P1", "P0", "I")]
    found = {a: la.ad_matrix(B[a], rb) for a in ("Pt", "D", "K")}
    found["K"] = [[-v for v in row] for row in found["K"]]
    return la.compare_levi_matrices(found)


def suite_algebra(cfg: RunConfig) -> dict:
    B = la.kolmogorov_basis()
    table = la.structure_table([B[k] for k in la.KOLMOGOROV_LABELS], la.KOLMOGOROV_LABELS)
    rel = table.nonzero_relations()
    checks = [
        check("structure_constants", rel == la.KOLMOGOROV_RELATIONS, nonzero_relations=len(rel),
              expected=len(la.KOLMOGOROV_RELATIONS)),
        check("antisymmetry", table.is_antisymmetric()),
        check("jacobi", not table.jacobi_failures(), triples=len(B) ** 3),
    ]
    kol = sp.kolmogorov_pde()
    checks.append(check("kolmogorov_symmetries", all(la.check_symmetry(V, kol).is_zero() for V in B.values()),
                        fields=len(B)))
    mu = Fraction(5, 36)
    H = la.heat_isq_basis(mu)
    checks.append(check("heat_isq_symmetries",
                        all(la.check_symmetry(V, sp.heat_isq_pde(mu)).is_zero() for V in H.values()), fields=len(H)))
    for row in ("1.2_0", "1.5", "1.6", "1.7"):
        fx = la.reduced_fixture(row)
        checks.append(check(f"induced_algebra[{row}]",
                            all(la.check_symmetry(V, fx).is_zero() for V in la.induced_algebra(row))))
    fb = {k: B[k] for k in ("Pt", "D", "K")}
    rb = [B[k] for k in ("P3", "P2", "P1", "P0", "I")]
    levi = la.verify_levi_action(fb, rb)
    checks.append(check("levi_action", levi.passed, mismatches=levi.to_dict()["mismatches"]))
    checks.append(check("levi_action_up_to_K_sign", levi_matrices_up_to_k_sign().passed))
    subs = {**la.one_dim_subalgebras(), **la.two_dim_subalgebras(),
            **{f"eps=-1:{k}": v for k, v in la.two_dim_subalgebras(eps=-1).items()}}
    checks.append(check("subalgebra_closure", all(la.closure_check(s) for s in subs.values()), count=len(subs)))
    hs = la.heat_isq_subalgebras()
    checks.append(check("heat_isq_subalgebra_closure", all(la.closure_check(s) for s in hs.values()), count=len(hs)))
    basis = [B[k] for k in la.KOLMOGOROV_LABELS]
    norms = {r: la.same_span(la.normalizer(s, basis).basis, want)
             for r, (s, want) in la.normalizer_expectations().items()}
    checks.append(check("normalizers", all(norms.values()), rows=sorted(norms)))
    q_ok = all(la.quartic_invariants(Fraction(al), e).delta == -Fraction(1, 432) * (Fraction(al) ** 2 + 16 * e) ** 4
               for e in (1, -1) for al in range(-8, 9))
    checks.append(check("quartic_delta_closed_form", q_ok))
    sign_ok = all((la.quartic_invariants(Fraction(al), e).delta < 0) == (not (e == -1 and abs(al) == 4))
                  for e in (1, -1) for al in range(-8, 9))
    degenerate = [la.quartic_invariants(Fraction(al), -1) for al in (4, -4)]
    sign_ok = sign_ok and all(q.delta == 0 and q.L == 0 and q.p < 0 for q in degenerate)
    checks.append(check("quartic_sign_pattern", sign_ok))
    return suite("algebra", checks)


def suite_group(cfg: RunConfig) -> dict:
    checks = []
    rep = grp.verify_pushforward_table(0.4, tol=1e-7)
    checks.append(check("pushforward_table", all(r.passed for _, r in rep), identities=len(rep),
                        max_gap=max(r.max_gap for _, r in rep)))
    src = (0.2, 0.3, -0.1)
    fs = grp.act_on_solution(grp.fundamental_from_constant(*src), grp.constant_solution(1.0))
    pts = [p for p in grp.generic_points(40, cfg.seed, ((0.4, 1.2), (-1.0, 1.0), (-1.0, 1.0)))][:20]
    gap = max(abs(fs.value(*p) - grp.fundamental_solution_value(*p, *src))
              / abs(grp.fundamental_solution_value(*p, *src)) for p in pts)
    checks.append(check("fundamental_from_constant", gap <= 1e-12, max_rel=gap))
    jk = grp.compose(grp.elementary("J"), grp.elementary("Kprime"))
    fac = grp.compose(grp.elementary("Pt", 1.0), grp.compose(grp.elementary("K", 1.0), grp.elementary("Pt", 1.0)))
    gap = grp.max_pointwise_gap(jk, fac, grp.generic_points(25, cfg.seed))
    checks.append(check("J_Kprime_factorization", gap <= 1e-10, max_gap=gap))
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    pts = grp.generic_points(5, cfg.seed + 1)
    for _ in range(500):
        g1, g2, g3 = (random_element(rng) for _ in range(3))
        lhs = grp.compose(grp.compose(g1, g2), g3)
        rhs = grp.compose(g1, grp.compose(g2, g3))
        worst = max(worst, grp.max_pointwise_gap(lhs, rhs, pts),
                    grp.max_pointwise_gap(grp.compose(g1, grp.inverse(g1)), grp.IDENTITY, pts),
                    grp.compose_maps_gap(g1, g2, pts))
    checks.append(check("group_axioms", worst <= 1e-9, triples=500, max_gap=worst))
    tags = ("Pt", "D", "K", "P3", "P2", "P1", "P0", "I", "rotation")
    gaps = {t: max(grp.exponential_gap(t, p) for p in grp.generic_points(5, cfg.seed)) for t in tags}
    checks.append(check("one_parameter_subgroups", max(gaps.values()) <= 1e-6, max_gap=max(gaps.values())))
    return suite("group", checks)


def random_element(rng: np.random.Generator) -> grp.GroupElement:
    """A group element near the identity, away from the singular hyperplane on the sample box."""
    a, b, c = rng.uniform(-0.15, 0.15, 3)
    alpha, beta, gamma = 1 + a, b, c
    delta = (1 + beta * gamma) / alpha
    lam = tuple(float(v) for v in rng.uniform(-0.3, 0.3, 4))
    return grp.GroupElement(alpha, beta, gamma, delta, lam, float(rng.uniform(0.5, 2.0)))


def suite_reductions(cfg: RunConfig) -> dict:
    checks = []
    n = min(cfg.samples, 200)
    for s in rd.specs() + [rd.gauss_spec_1_3()]:
        for w in s.solutions.values():
            r = rd.consistency_check(s, w, n=n, seed_value=cfg.seed, tol=cfg.tol_rel)
            checks.append(check(f"{s.instance}/{w.name}", r.passed, max_reduced=r.max_reduced,
                                max_kolmogorov=r.max_kolmogorov, max_perturbed=r.max_perturbed))
    rows = {s.row for s in rd.specs()}
    checks.append(check("rows_covered", rows == set(rd.ROWS), rows=len(rows)))
    for src, params in (("1.1", {}), ("1.2", {"delta": 1}), ("1.2", {"delta": -1}), ("1.2", {"delta": 0}),
                        ("1.3", {"eps_p": 1}), ("1.3", {"eps_p": -1}), ("1.4", {})):
        for br in (1, -1):
            form, w, box = rd.mapped_solutions(src, br, **params)
            rep = rd.mapped_check(form, w, box, tol=cfg.tol_rel)
            tag = ",".join(f"{k}={v}" for k, v in params.items())
            checks.append(check(f"mapped[{src}{'(' + tag + ')' if tag else ''},branch={br:+d}]", rep.passed,
                                max_rel=rep.max_rel))
    mu = rd.mapped_potential_mu()
    checks.append(check("mapped_1.2_0_mu", abs(mu - 5 / 36) <= 1e-14, mu=mu))
    return suite("reductions", checks)


def suite_solutions(cfg: RunConfig) -> dict:
    checks = []
    for fid in cat.ids():
        fam = cat.get(fid)
        vals = fam.defaults()
        sol = cat.instantiate(fid, smoke=False)
        box = cfg.box(fid, fam.box_for(vals))
        eq = fam.equation_for(vals)
        r = jc.sample_residuals(eq, sol, box, n=cfg.samples, seed_value=cfg.seed, tol_rel=cfg.tol_rel)
        neg = jc.sample_residuals(eq, cat.perturbed(sol), box, n=cfg.samples, seed_value=cfg.seed,
                                  tol_rel=cfg.tol_rel)
        checks.append(check(fid, r.passed and neg.max_rel > 1e-3, max_rel=r.max_rel, negative_control=neg.max_rel,
                            points=r.points))
    checks.append(check("family_count", len(cat.ids()) >= 18, families=len(cat.ids())))
    for gap in (0.5, 1.0, 2.0):
        val = cat.normalization_integral(gap)
        checks.append(check(f"normalization[gap={gap:g}]", abs(val - 1) <= 1e-10, integral=val))
    return suite("solutions", checks)


def suite_heatisq(cfg: RunConfig) -> dict:
    checks = []
    for mu in (hq.DEFAULT_MU, 0.05):
        for eps in (1, -1):
            res = hq.resolve_cylinder(mu, eps)
            checks.append(check(f"cylinder_resolution[mu={mu:.6g},eps={eps:+d}]", res.unique,
                                passing=res.passing, residuals=res.residuals))
    for fam in hq.FAMILIES:
        sol = hq.family_solution(fam)
        box = hq.CYLINDER_BOX if fam != "s12" else ((0.3, 1.5), (0.3, 2.0))
        r = jc.sample_residuals(hq.EQ, sol, box, n=min(cfg.samples, 100), seed_value=cfg.seed, tol_rel=cfg.tol_rel)
        checks.append(check(f"family[{fam}]", r.passed, max_rel=r.max_rel))
    closure = hq.subalgebra_closure()
    checks.append(check("subalgebra_closure", all(closure.values()), count=len(closure)))
    gaps = [hq.hisq_exponential_gap(t, (0.7, 0.9)) for t in ("Pt", "D", "K", "I")]
    checks.append(check("one_parameter_subgroups", max(gaps) <= 1e-6, max_gap=max(gaps)))
    return suite("heatisq", checks)


def suite_kramers(cfg: RunConfig) -> dict:
    checks = []
    pts = kr.sample_points(30, cfg.seed)
    for name in kr.VARIANTS:
        for g in (1.0, 2.0, -0.5):
            v = kr.KramersVariant(name, g)
            tag = f"{name}[gamma={g:g}]"
            sg = kr.structure_gap(v, pts)
            checks.append(check(f"{tag}/structure_constants", sg <= 1e-7, max_gap=sg))
            pg = max(kr.pushforward_gap(v, lab, pts[:10]) for lab in la.KOLMOGOROV_LABELS)
            checks.append(check(f"{tag}/pushforward", pg <= 1e-7, max_gap=pg))
            rt = max(kr.round_trip_gap(v, (*p, 1.5)) for p in pts)
            checks.append(check(f"{tag}/round_trip", rt <= 1e-12, max_gap=rt))
            worst, covered, skipped = 0.0, 0, []
            for fid in cat.ids():
                fam = cat.get(fid)
                if fam.equation_for(fam.defaults()) != "kolmogorov":
                    continue
                try:
                    r = kr.pullback_residuals(v, cat.instantiate(fid, smoke=False), n=min(cfg.samples, 60),
                                              seed_value=cfg.seed, tol_rel=cfg.tol_rel)
                except jc.DomainTooThinError:
                    skipped.append(fid)
                    continue
                covered += 1
                worst = max(worst, r.max_rel)
            checks.append(check(f"{tag}/pullbacks", worst <= cfg.tol_rel, families=covered, max_rel=worst,
                                outside_image=skipped))
    return suite("kramers", checks)


def suite_specfun(cfg: RunConfig) -> dict:
    ode = sf.max_ode_residuals()
    wr = sf.wronskian_gaps()
    kt = sf.kummer_transformation_gap()
    return suite("specfun", [
        check("ode_residuals", max(ode.values()) <= 1e-8, max_rel=max(ode.values()), cases=len(ode)),
        check("wronskians", max(wr.values()) <= 1e-9, max_rel=max(wr.values()), cases=len(wr)),
        check("kummer_transformation", kt <= 1e-12, max_rel=kt),
    ])


SUITE_FUNCS: Dict[str, Callable[[RunConfig], dict]] = {
    "algebra": suite_algebra, "group": suite_group, "reductions": suite_reductions,
    "solutions": suite_solutions, "heatisq": suite_heatisq, "kramers": suite_kramers, "specfun": suite_specfun,
}


# ---------------------------------------------------------------------------
# eval and kramers gen


def parse_grid(spec: str) -> Dict[str, np.ndarray]:
    """``t=1:2:5,x=0.5:1.5:5,y=1`` into per-axis arrays."""
    out: Dict[str, np.ndarray] = {}
    for part in spec.split(","):
        if "=" not in part:
            raise UsageError(f"malformed grid axis {part!r}")
        name, rng = part.split("=", 1)
        name = name.strip()
        try:
            bits = [float(b) for b in rng.split(":")]
        except ValueError:
            raise UsageError(f"malformed grid axis {part!r}") from None
        if len(bits) == 1:
            out[name] = np.array(bits)
        elif len(bits) == 3 and bits[2] >= 1 and float(bits[2]).is_integer():
            out[name] = np.linspace(bits[0], bits[1], int(bits[2]))
        else:
            raise UsageError(f"axis {name!r} needs lo:hi:n or a single value")
    return out


def parse_pairs(items: Optional[Sequence[str]], numeric: bool = True) -> dict:
    out = {}
    for it in items or ():
        if "=" not in it:
            raise UsageError(f"expected key=value, got {it!r}")
        k, v = it.split("=", 1)
        if numeric:
            try:
                out[k] = float(v)
            except ValueError:
                raise UsageError(f"{k} needs a number") from None
        else:
            out[k] = v
    return out


def grid_points(grid: Dict[str, np.ndarray], arity: int) -> List[Tuple[float, ...]]:
    names = ("t", "x", "y")[:arity]
    for n in grid:
        if n not in names:
            raise UsageError(f"unknown grid axis {n!r}")
    axes = [grid.get(n, np.array([0.0])) for n in names]
    mesh = np.meshgrid(*axes, indexing="ij")
    return [tuple(float(m.flat[i]) for m in mesh) for i in range(mesh[0].size)]


def evaluate_rows(sol: jc.Solution, eq, points: Sequence[Tuple[float, ...]]) -> List[Tuple[float, ...]]:
    fn = jc.equation(eq)
    rows = []
    for p in points:
        if not sol.domain(*p):
            rows.append((*p, *(0.0,) * (3 - len(p)), math.nan, math.nan, math.nan, math.nan, math.nan))
            continue
        jet = sol.at(*p)
        padded = tuple(p) + (0.0,) * (3 - len(p))
        r, scale = fn(jet, padded)
        rows.append((*padded, jet.v, *jet.g, abs(r) / max(1.0, scale)))
    return rows


def rows_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([fmt_float(v) for v in r])
    return buf.getvalue()


def _family_solution(fid: str, params: dict, plugins: dict) -> Tuple[jc.Solution, object]:
    try:
        fam = cat.get(fid)
        sol = cat.instantiate(fid, params, plugins, smoke=False)
    except cat.CatalogError as e:
        raise UsageError(str(e)) from None
    vals = {**fam.defaults(), **params}
    return sol, fam.equation_for(vals)


def cmd_eval(args, cfg: RunConfig) -> Tuple[int, str]:
    sol, eq = _family_solution(args.family, parse_pairs(args.param), parse_pairs(args.plugin, numeric=False))
    rows = evaluate_rows(sol, eq, grid_points(parse_grid(args.grid), sol.arity))
    ok = all(r[-1] <= cfg.tol_rel for r in rows if not math.isnan(r[-1]))
    if cfg.fmt == "json":
        return (EXIT_OK if ok else EXIT_FAIL,
                dump_json({"family": args.family, "columns": list(CSV_HEADER), "rows": [list(r) for r in rows]}) + "\n")
    return EXIT_OK if ok else EXIT_FAIL, rows_csv(rows)


def cmd_kramers_gen(args, cfg: RunConfig) -> Tuple[int, str]:
    sol, eq = _family_solution(args.family, parse_pairs(args.param), parse_pairs(args.plugin, numeric=False))
    if eq != "kolmogorov":
        raise UsageError(f"{args.family} is not a Kolmogorov family")
    v = kr.KramersVariant(args.variant, args.gamma)
    u = kr.kramers_solution_from(v, sol)
    rows = evaluate_rows(u, v.equation, grid_points(parse_grid(args.grid), 3))
    ok = all(r[-1] <= cfg.tol_rel for r in rows if not math.isnan(r[-1]))
    return EXIT_OK if ok else EXIT_FAIL, rows_csv(rows)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--tol-rel", type=float, default=None)
    common.add_argument("--tol-abs", type=float, default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default=None)
    common.add_argument("--config", default=None, help="JSON file with seed, tol_rel, tol_abs, samples, boxes")

    p = argparse.ArgumentParser(prog="kolsym", description="Verification harness for the Kolmogorov toolkit.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run one verification suite")
    v.add_argument("suite", choices=SUITES)
    e = sub.add_parser("eval", parents=[common], help="evaluate a catalog family on a grid")
    e.add_argument("--family", required=True)
    e.add_argument("--grid", required=True, help="axis=lo:hi:n or axis=value, comma separated")
    e.add_argument("--param", action="append", help="name=value")
    e.add_argument("--plugin", action="append", help="slot=plugin")
    k = sub.add_parser("kramers", help="Kramers-equation tools")
    ksub = k.add_subparsers(dest="kramers_command", required=True)
    g = ksub.add_parser("gen", parents=[common], help="pull a catalog family back to a Kramers equation")
    g.add_argument("--variant", choices=kr.VARIANTS, required=True)
    g.add_argument("--gamma", type=float, required=True)
    g.add_argument("--family", required=True)
    g.add_argument("--grid", required=True)
    g.add_argument("--param", action="append")
    g.add_argument("--plugin", action="append")
    sub.add_parser("manifest", parents=[common], help="catalog manifest as JSON")
    sub.add_parser("report", parents=[common], help="run every suite")
    return p


def load_config(args) -> RunConfig:
    data: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(data) - {"seed", "tol_rel", "tol_abs", "samples", "format", "boxes"}
        if unknown:
            raise UsageError(f"unknown config keys {sorted(unknown)}")
    flags = {"seed": args.seed, "tol_rel": args.tol_rel, "tol_abs": args.tol_abs, "samples": args.samples,
             "format": args.fmt}
    for k, v in flags.items():
        if v is not None:
            data[k] = v
    default_fmt = "csv" if args.command in ("eval", "kramers") else "json"
    try:
        return RunConfig(seed=int(data.get("seed", 42)), tol_rel=float(data.get("tol_rel", 1e-8)),
                         tol_abs=float(data.get("tol_abs", 1e-9)), samples=int(data.get("samples", 200)),
                         fmt=data.get("format", default_fmt), boxes=data.get("boxes", {}))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"malformed config: {exc}") from None


def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, str, Optional[str]]:
    """Parse ``argv`` and run; returns ``(exit code, output, out path)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), "", None
    try:
        cfg = load_config(args)
        if args.command == "verify":
            rep = SUITE_FUNCS[args.suite](cfg)
            return (EXIT_OK if rep["passed"] else EXIT_FAIL), render(rep, cfg.fmt), args.out
        if args.command == "report":
            suites = [SUITE_FUNCS[s](cfg) for s in SUITES]
            rep = {"passed": all(s["passed"] for s in suites), "seed": cfg.seed, "suites": suites}
            return (EXIT_OK if rep["passed"] else EXIT_FAIL), render(rep, cfg.fmt), args.out
        if args.command == "manifest":
            return EXIT_OK, cat.manifest_json() + "\n", args.out
        if args.command == "eval":
            code, text = cmd_eval(args, cfg)
            return code, text, args.out
        code, text = cmd_kramers_gen(args, cfg)
        return code, text, args.out
    except UsageError as exc:
        return EXIT_USAGE, f"error: {exc}\n", None


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text, out = run(argv)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        stream = sys.stderr if code == EXIT_USAGE else sys.stdout
        stream.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
