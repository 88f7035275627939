"""Command-line front end.

Every subcommand prints one deterministic report (JSON by default) and
exits 0 when all checks match, 1 on a mathematical mismatch and 2 on bad
input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .census import enumerate_gamma, star_census_even, star_census_odd
from .equiv_mrd import DEFAULT_SAMPLE, frobenius_orbits, mrd_check
from .errors import OracleDisagreement, ScatteredLabError
from .field_tower import FieldSpec, TowerCtx, tower
from .numtheory import prime_power
from .scatter_criteria import brute_is_scattered, criterion, is_scattered

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    e: int = 1
    modulus_override: list[int] | None = None
    qs: list[int] = field(default_factory=list)
    b: str | None = None
    N: str | None = None
    oracle: bool = False
    exhaustive: bool = False
    sample: int = DEFAULT_SAMPLE
    scan: int | None = None
    sweep: bool = False
    workers: int = 1
    output_format: str = "json"


# -- parsing helpers -------------------------------------------------------------------

def parse_digits(text: str) -> list[int]:
    text = text.strip().strip("[]()")
    parts = [s for s in re.split(r"[,\s]+", text) if s]
    try:
        return [int(s) for s in parts]
    except ValueError as exc:
        raise UsageError(f"cannot parse digit array {text!r}") from exc


def parse_q_list(text: str) -> list[int]:
    qs = parse_digits(text)
    for q in qs:
        try:
            prime_power(q)
        except ScatteredLabError as exc:
            raise UsageError(str(exc)) from exc
    return qs


def parse_element(ctx: TowerCtx, text: str):
    m = re.fullmatch(r"\s*g\s*\^\s*(-?\d+)\s*", text)
    if m:
        return ctx.g ** int(m.group(1))
    digits = parse_digits(text)
    if len(digits) != ctx.d:
        raise UsageError(f"expected {ctx.d} digits, got {len(digits)}")
    if any(not 0 <= v < ctx.p for v in digits):
        raise UsageError(f"digits must lie in [0, {ctx.p})")
    return ctx.elt(digits)


def build_tower(cfg: RunConfig) -> TowerCtx:
    if cfg.p is None:
        raise UsageError("--p is required")
    if cfg.modulus_override is None:
        return tower(cfg.p, cfg.e)
    return TowerCtx(FieldSpec(cfg.p, cfg.e, tuple(cfg.modulus_override)))


def field_json(ctx: TowerCtx) -> dict:
    return {**ctx.spec.to_json(), "q": ctx.q, "generator": list(ctx.g.coeffs)}


# -- commands ---------------------------------------------------------------------------

def cmd_field_info(cfg: RunConfig) -> tuple[dict, bool]:
    ctx = build_tower(cfg)
    out = field_json(ctx)
    out["degree"] = ctx.d
    out["irreducible"] = True
    out["generator_primitive"] = ctx.is_primitive(ctx.g)
    return out, out["generator_primitive"]


def _norm_representative(ctx: TowerCtx, N):
    bs, Ns = ctx.norm_fiber_table()
    hit = np.nonzero(Ns == N)[0]
    return bs[int(hit[0])] if hit.size else None


def cmd_scattered(cfg: RunConfig) -> tuple[dict, bool]:
    ctx = build_tower(cfg)
    if cfg.sweep:
        bs, _ = ctx.norm_fiber_table()
        targets = [bs[k] for k in range(len(bs))]
    elif cfg.b is not None:
        targets = [parse_element(ctx, cfg.b)]
    elif cfg.N is not None:
        N = parse_element(ctx, cfg.N)
        if N.is_zero():
            raise UsageError("N must be nonzero")
        if not ctx.in_subfield(N, 3):
            raise UsageError("N must lie in F_{q^3}")
        b = _norm_representative(ctx, N)
        targets = [b]
    else:
        raise UsageError("give --b, --N or --sweep")
    verdicts = []
    ok = True
    for b in targets:
        if b.is_zero():
            raise UsageError("b must be nonzero")
        v = is_scattered(b)
        rec = v.to_json()
        if cfg.oracle:
            brute = brute_is_scattered(b)
            rec["oracle"] = brute.to_json()
            rec["agree"] = brute.scattered == v.scattered
            ok = ok and rec["agree"]
        verdicts.append(rec)
    out = {"field": field_json(ctx)}
    if cfg.sweep:
        out["verdicts"] = verdicts
        out["scattered_count"] = sum(r["scattered"] for r in verdicts)
    else:
        out.update(verdicts[0])
    return out, ok


def _gamma_row(q: int, oracle: bool) -> dict:
    ctx = tower(*prime_power(q))
    return enumerate_gamma(ctx, oracle=oracle).to_json(with_members=False)


def _cubic_row(q: int) -> dict:
    p, _ = prime_power(q)
    rep = star_census_even(q) if p == 2 else star_census_odd(q)
    return rep.to_json()


def _orbit_row(q: int) -> dict:
    ctx = tower(*prime_power(q))
    rep = enumerate_gamma(ctx)
    orb = frobenius_orbits(ctx, rep.gamma)
    return {"q": q, **orb.to_json()}


def _run_many(fn, args: list, workers: int) -> list:
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, *zip(*args)))
    return [fn(*a) for a in args]


def _need_qs(cfg: RunConfig) -> list[int]:
    if cfg.qs:
        return cfg.qs
    if cfg.p is not None:
        return [cfg.p**cfg.e]
    raise UsageError("--q (or --p/--e) is required")


def cmd_gamma(cfg: RunConfig) -> tuple[dict, bool]:
    rows = _run_many(_gamma_row, [(q, cfg.oracle) for q in _need_qs(cfg)], cfg.workers)
    return {"rows": rows}, all(r["match"] for r in rows)


def cmd_cubics(cfg: RunConfig) -> tuple[dict, bool]:
    rows = _run_many(_cubic_row, [(q,) for q in _need_qs(cfg)], cfg.workers)
    return {"rows": rows}, all(r["match"] for r in rows)


def cmd_orbits(cfg: RunConfig) -> tuple[dict, bool]:
    rows = _run_many(_orbit_row, [(q,) for q in _need_qs(cfg)], cfg.workers)
    return {"rows": rows}, all(r["match"] for r in rows)


def cmd_mrd(cfg: RunConfig) -> tuple[dict, bool]:
    ctx = build_tower(cfg)
    if cfg.b is not None:
        targets = [parse_element(ctx, cfg.b)]
    elif cfg.scan is not None:
        bs, Ns = ctx.norm_fiber_table()
        good = np.nonzero(np.asarray(criterion(Ns)))[0][: cfg.scan]
        targets = [bs[int(k)] for k in good]
    else:
        raise UsageError("give --b or --scan")
    reports = []
    for b in targets:
        if b.is_zero():
            raise UsageError("b must be nonzero")
        reports.append(mrd_check(b, exhaustive=cfg.exhaustive, sample=cfg.sample).to_json())
    return {"field": field_json(ctx), "reports": reports}, all(r["match"] for r in reports)


COMMANDS = {
    "field-info": cmd_field_info,
    "scattered": cmd_scattered,
    "gamma": cmd_gamma,
    "cubics": cmd_cubics,
    "orbits": cmd_orbits,
    "mrd": cmd_mrd,
}


# -- output -----------------------------------------------------------------------------

TABLE_COLUMNS = {
    "gamma": ("q", "size", "conjecture_value", "closed_form_value", "match"),
    "cubics": ("q", "parity", "total", "gamma0", "gamma1", "gamma2", "gamma3", "rooted_pairs", "match"),
    "orbits": ("q", "gamma_size", "orbit_count", "lower_bound", "frobenius_closed", "match"),
}


def render_table(command: str, report: dict) -> str:
    if command in TABLE_COLUMNS:
        cols = TABLE_COLUMNS[command]
        rows = [[str(r.get(c)) for c in cols] for r in report["rows"]]
    elif command == "mrd":
        cols = ("b", "scattered", "min_rank", "is_mrd", "codewords_checked")
        rows = [[str(r[c]) for c in cols] for r in report["reports"]]
    elif command == "scattered" and "verdicts" in report:
        cols = ("N", "scattered", "route")
        rows = [[str(r[c]) for c in cols] for r in report["verdicts"]]
    else:
        return "\n".join(f"{k}: {v}" for k, v in report.items())
    widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--e", type=int, default=1, help="q = p^e")
    common.add_argument("--modulus", help="override modulus, digits constant term first")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--workers", type=int, default=None, help="processes for q sweeps")
    common.add_argument("--serial", action="store_true", help="force a single process")

    parser = argparse.ArgumentParser(prog="scattered-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("field-info", parents=[common], help="modulus and generator of F_{q^6}")

    sc = sub.add_parser("scattered", parents=[common], help="closed-form verdict for b or N")
    sc.add_argument("--b", help='digit array or "g^k"')
    sc.add_argument("--N", help='norm in F_{q^3}, digit array or "g^k"')
    sc.add_argument("--sweep", action="store_true", help="one verdict per norm")
    sc.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")

    for name, text in (("gamma", "size of the set of good norms"),
                       ("cubics", "cubic polynomial census"),
                       ("orbits", "Frobenius orbits of the good norms")):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("--q", help="comma-separated prime powers")
        if name == "gamma":
            sp.add_argument("--oracle", action="store_true")

    mr = sub.add_parser("mrd", parents=[common], help="rank distribution of the code C_b")
    mr.add_argument("--b", help='digit array or "g^k"')
    mr.add_argument("--scan", type=int, help="check the first K scattered representatives")
    mr.add_argument("--exhaustive", action="store_true")
    mr.add_argument("--sample", type=int, default=DEFAULT_SAMPLE)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    workers = 1 if ns.serial else (ns.workers or os.cpu_count() or 1)
    cfg = RunConfig(
        command=ns.command,
        p=ns.p,
        e=ns.e,
        modulus_override=parse_digits(ns.modulus) if ns.modulus else None,
        output_format=ns.format,
        workers=max(1, workers),
    )
    if getattr(ns, "q", None):
        cfg.qs = parse_q_list(ns.q)
    for name in ("b", "N", "oracle", "exhaustive", "sample", "scan", "sweep"):
        if hasattr(ns, name) and getattr(ns, name) is not None:
            setattr(cfg, name, getattr(ns, name))
    if cfg.sample < 0:
        raise UsageError("--sample must be nonnegative")
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report, ok = COMMANDS[cfg.command](cfg)
    except OracleDisagreement as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (UsageError, ScatteredLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.output_format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render_table(cfg.command, report))
    return EXIT_OK if ok else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
