"""Command-line entry point: ``tango-workbench <command> ...``.

Exit codes:

    0  success
    1  a reported claim failed, a WSpace check failed, or a sweep row errored
    2  parse error, invalid parameters, malformed JSON or bad arguments
    3  expression the engine cannot resolve
    4  inconsistent cohomology table
    5  stability verdict Unknown
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from .bundles import FBundle, Dual, Twist, c1_f, c1_tango_formula, canonical_key, render
from .chase import SCHEMA, Engine, InconsistentTable, UnresolvableExpression, default_cache_path
from .combinatorics import binom
from .deformation import FAIL, INDETERMINATE, PASS, smoothness_report
from .params import InvalidParams, TangoParams, is_valid
from .parser import ParseError, parse
from .stability import NOT_STABLE, STABLE, UNKNOWN, analyze_stability
from .weights import (WSpace, sample_wspace, wspace_no_decomposable_check, wspace_validate)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_UNRESOLVABLE, EXIT_INCONSISTENT, EXIT_UNKNOWN = 0, 1, 2, 3, 4, 5
SWEEP_LIMIT = 10_000


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    params: Optional[TangoParams] = None
    expr: Optional[str] = None
    twist: int = 0
    q: Optional[int] = None
    seed: int = 0
    cache: Optional[str] = None
    fmt: str = "text"
    extra: dict = field(default_factory=dict)


def make_engine(cfg: RunConfig) -> Engine:
    return Engine(cfg.params, cache_path=cfg.cache)


def _finish_engine(engine: Engine):
    if engine.cache_path:
        engine.save_cache()


def _envelope(kind: str, body: dict) -> dict:
    return {"schema": SCHEMA, "kind": kind, **body}


# -- cohom -------------------------------------------------------------------------------------

def cmd_cohom(cfg: RunConfig):
    expr = parse(cfg.expr)
    engine = make_engine(cfg)
    table = engine.cohomology(expr, cfg.twist)
    _finish_engine(engine)
    body = {"params": cfg.params.to_json(), "expr": render(expr), "twist": cfg.twist,
            "normal_form": canonical_key(Twist(expr, cfg.twist) if cfg.twist else expr, cfg.params),
            "table": table.to_json(), "exact": table.is_exact}
    lines = [f"params {cfg.params}", f"expression {render(expr)} twisted by {cfg.twist}",
             f"normal form {body['normal_form']}"]
    for i, d in enumerate(table.dims):
        mark = "exact" if d.is_exact else "interval"
        lines.append(f"  h^{i} = {d}  ({mark})")
    lines.append(f"  chi = {table.euler}")
    return EXIT_OK, _envelope("cohom", body), lines


# -- stability -------------------------------------------------------------------------------

def cmd_stability(cfg: RunConfig):
    engine = make_engine(cfg)
    v = analyze_stability(cfg.params, engine)
    _finish_engine(engine)
    body = {"params": cfg.params.to_json(), **v.to_json()}
    lines = [f"params {cfg.params}", f"verdict {v.verdict}"]
    for claim, ev in v.certificates:
        lines.append(f"  {claim}: {json.dumps(ev, sort_keys=True)}")
    code = EXIT_UNKNOWN if v.verdict == UNKNOWN else EXIT_OK
    return code, _envelope("stability", body), lines


# -- report ----------------------------------------------------------------------------------

def _claim(name, status, **numbers) -> dict:
    return {"claim": name, "status": status, "values": numbers}


def _bool_status(ok: bool) -> str:
    return PASS if ok else FAIL


def build_report(params: TangoParams, engine: Engine, wspace: Optional[WSpace] = None,
                 seed: int = 0) -> dict:
    claims = []
    c1 = c1_f(params)
    formula = c1_tango_formula(params)
    claims.append(_claim("c1(F) equals n(alpha+beta)(2n-1-(n+1)/2)", _bool_status(c1 == formula),
                         c1=c1, formula=str(formula)))

    if params.is_classical:
        n = params.n
        h0 = engine.cohomology(FBundle(), params.gamma).h(0)
        h1 = engine.cohomology(Dual(Twist(FBundle(), params.gamma))).h(1)
        want0, want1 = 2 * n - 1, binom(n + 1, 2) - (2 * n - 1)
        claims.append(_claim("h0(F(1)) = 2n-1", _status_eq(h0, want0),
                             h0=h0.to_json(), expected=want0))
        claims.append(_claim("h1(F(1)*) = dim W", _status_eq(h1, want1),
                             h1=h1.to_json(), expected=want1))

    verdict = analyze_stability(params, engine)
    st = PASS if verdict.verdict in (STABLE, NOT_STABLE) else INDETERMINATE
    claims.append(_claim("stability verdict", st, verdict=verdict.verdict))
    threshold = verdict.certificates[0][1]
    if threshold["holds"]:
        claims.append(_claim("threshold implies stable", _bool_status(verdict.verdict == STABLE),
                             gamma=threshold["gamma"], bound=threshold["bound"]))

    rep = smoothness_report(params, engine)
    quantities = {k: getattr(rep, k).to_json() for k in rep.QUANTITIES}
    for name, status in rep.identities:
        claims.append(_claim(name, status))

    if wspace is None:
        wspace = sample_wspace(params.n, seed)
        origin = f"sampled (seed {seed})"
    else:
        origin = "supplied"
    wrep = wspace_validate(wspace)
    claims.append(_claim(f"WSpace {origin}: dim W and no decomposable vectors",
                         _bool_status(wrep.valid), dim=wrep.dim, expected=wrep.expected_dim))

    return {"params": params.to_json(), "seed": seed, "claims": claims,
            "deformation": quantities,
            "summary": {s: sum(c["status"] == s for c in claims) for s in (PASS, FAIL, INDETERMINATE)}}


def _status_eq(d, want: int) -> str:
    if d.is_exact:
        return _bool_status(d.value == want)
    return INDETERMINATE if want in d else FAIL


def cmd_report(cfg: RunConfig):
    engine = make_engine(cfg)
    wspace = None
    if cfg.extra.get("wspace"):
        wspace = _load_wspace(cfg.extra["wspace"])
        if wspace.n != cfg.params.n:
            raise UsageError(f"WSpace is for n={wspace.n}, parameters have n={cfg.params.n}")
    body = build_report(cfg.params, engine, wspace, cfg.seed)
    _finish_engine(engine)
    lines = [f"params {cfg.params}  seed {cfg.seed}"]
    for c in body["claims"]:
        vals = ", ".join(f"{k}={v}" for k, v in c["values"].items())
        lines.append(f"  [{c['status']}] {c['claim']}" + (f"  ({vals})" if vals else ""))
    lines.append("  deformation quantities: "
                 + ", ".join(f"{k}={v}" for k, v in body["deformation"].items()))
    s = body["summary"]
    lines.append(f"summary: {s[PASS]} pass, {s[FAIL]} fail, {s[INDETERMINATE]} indeterminate")
    code = EXIT_FAILED if s[FAIL] else EXIT_OK
    return code, _envelope("report", body), lines


# -- wspace ----------------------------------------------------------------------------------

def _load_wspace(path: str) -> WSpace:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return WSpace.from_json(json.loads(text))
    except (json.JSONDecodeError, TypeError, KeyError, AttributeError) as exc:
        raise UsageError(f"malformed WSpace JSON: {exc}") from exc
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def cmd_wspace(cfg: RunConfig):
    action = cfg.extra["action"]
    if action == "sample":
        if cfg.extra.get("n") is None:
            raise UsageError("wspace sample needs -n")
        w = sample_wspace(cfg.extra["n"], cfg.seed)
        lines = [f"seed {cfg.seed}", f"sampled WSpace for n={w.n}"]
    else:
        w = _load_wspace(cfg.extra["file"])
        lines = [f"WSpace check for n={w.n}"]
    rep = wspace_validate(w)
    evidence = wspace_no_decomposable_check(w, seed=cfg.seed)
    body = {"seed": cfg.seed, "wspace": w.to_json(), "validation": rep.to_json(),
            "decomposability": evidence.to_json()}
    for k, phi in w.functionals.items():
        lines.append(f"  phi_{k} = ({', '.join(str(x) for x in phi)})")
    lines.append(f"  dim W = {rep.dim} (expected {rep.expected_dim})")
    for k, (p, q) in rep.decomposable_witnesses:
        lines.append(f"  decomposable vector z_{{{p},{q}}} lies in W_{k}")
    if rep.missing_grades:
        lines.append(f"  missing grades {rep.missing_grades}")
    lines.append(f"  {'pass' if rep.valid and evidence.ok else 'fail'}")
    code = EXIT_OK if rep.valid and evidence.ok else EXIT_FAILED
    return code, _envelope("wspace", body), lines


# -- sweep -----------------------------------------------------------------------------------

def parse_range(text: str) -> list:
    """'3', '1:8' (inclusive) or '0,2,5'."""
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}; use 'a:b' or 'a,b,c'") from exc


def sweep_grid(ns, gammas, alphas, betas=None) -> list:
    """All (n, gamma, alpha, beta); beta runs over -alpha..alpha when not given."""
    grid = []
    for n in ns:
        for a in alphas:
            bs = betas if betas is not None else range(-a, a + 1)
            for b in bs:
                for g in gammas:
                    grid.append((n, g, a, b))
                    if len(grid) > SWEEP_LIMIT:
                        raise UsageError(f"sweep grid exceeds {SWEEP_LIMIT} parameter tuples")
    return grid


def sweep_row(point) -> dict:
    n, g, a, b = point
    row = {"n": n, "gamma": g, "alpha": a, "beta": b}
    try:
        p = TangoParams(n, g, a, b)
        engine = Engine(p)
        row["c1"] = c1_f(p)
        row["verdict"] = analyze_stability(p, engine).verdict
        row["kuranishi_dim"] = smoothness_report(p, engine).kuranishi_dim.to_json()
        row["error"] = None
    except (UnresolvableExpression, InconsistentTable, ValueError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def cmd_sweep(cfg: RunConfig):
    ex = cfg.extra
    betas = parse_range(ex["betas"]) if ex.get("betas") else None
    grid = sweep_grid(parse_range(ex["ns"]), parse_range(ex["gammas"]),
                      parse_range(ex["alphas"]), betas)
    grid = [pt for pt in grid if is_valid(*pt)]
    rows = [sweep_row(pt) for pt in grid]
    errors = sum(r["error"] is not None for r in rows)
    body = {"rows": rows, "count": len(rows), "errors": errors}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "gamma", "alpha", "beta", "c1", "verdict", "kuranishi_dim", "error"])
    for r in rows:
        kd = r.get("kuranishi_dim")
        kd = "" if kd is None else (kd if isinstance(kd, int) else f"[{kd[0]},{kd[1]}]")
        writer.writerow([r["n"], r["gamma"], r["alpha"], r["beta"], r.get("c1", ""),
                         r.get("verdict", ""), kd, r["error"] or ""])
    lines = buf.getvalue().splitlines() if rows else []
    return (EXIT_FAILED if errors else EXIT_OK), _envelope("sweep", body), lines


# -- argument handling ------------------------------------------------------------------------

def _add_params(p, required=True):
    p.add_argument("-n", type=int, required=required, help="dimension of the projective space")
    p.add_argument("-g", "--gamma", type=int, required=required)
    p.add_argument("-a", "--alpha", type=int, required=required)
    p.add_argument("-b", "--beta", type=int, required=required)


def _add_common(p):
    p.add_argument("--cache", default=None, help="cohomology cache file (default: $TANGO_CACHE)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tango-workbench",
                                 description="Cohomology, stability and deformation checks for "
                                             "weighted Tango bundles on P^n.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohom", help="cohomology table of a bundle expression")
    _add_params(p)
    p.add_argument("-e", "--expr", required=True)
    p.add_argument("-m", "--twist", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("stability", help="stability verdict with certificates")
    _add_params(p)
    _add_common(p)

    p = sub.add_parser("report", help="check every claim at one parameter set")
    _add_params(p)
    p.add_argument("--wspace", default=None, help="WSpace JSON file to validate (default: sampled)")
    _add_common(p)

    p = sub.add_parser("wspace", help="validate or sample an admissible subspace W")
    p.add_argument("action", choices=("check", "sample"))
    p.add_argument("file", nargs="?", default=None, help="WSpace JSON for check ('-' for stdin)")
    p.add_argument("-n", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("sweep", help="evaluate a grid of parameters")
    p.add_argument("-n", dest="ns", default="3", help="values of n: 'a:b' or 'a,b'")
    p.add_argument("-g", "--gamma", dest="gammas", default="1:8")
    p.add_argument("-a", "--alpha", dest="alphas", default="0:1")
    p.add_argument("-b", "--beta", dest="betas", default=None, help="default: -alpha..alpha")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    return ap


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, seed=getattr(args, "seed", 0),
                    cache=getattr(args, "cache", None) or default_cache_path(),
                    fmt=args.format)
    if args.command in ("cohom", "stability", "report"):
        cfg.params = TangoParams(args.n, args.gamma, args.alpha, args.beta)
    if args.command == "cohom":
        cfg.expr, cfg.twist = args.expr, args.twist
    elif args.command == "report":
        cfg.extra["wspace"] = args.wspace
    elif args.command == "wspace":
        if args.action == "check" and args.file is None:
            raise UsageError("wspace check needs a JSON file")
        cfg.extra.update(action=args.action, file=args.file, n=args.n)
    elif args.command == "sweep":
        cfg.extra.update(ns=args.ns, gammas=args.gammas, alphas=args.alphas, betas=args.betas)
    return cfg


COMMANDS = {"cohom": cmd_cohom, "stability": cmd_stability, "report": cmd_report,
            "wspace": cmd_wspace, "sweep": cmd_sweep}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        cfg = config_from_args(args)
        code, payload, lines = COMMANDS[cfg.command](cfg)
    except (ParseError, InvalidParams, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnresolvableExpression as exc:
        print(f"error: cannot resolve {exc}", file=sys.stderr)
        return EXIT_UNRESOLVABLE
    except InconsistentTable as exc:
        print(f"error: inconsistent table: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        # remaining ValueErrors come from malformed user input (bad powers, WSpace shapes)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif lines:
        out.write("\n".join(lines) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
