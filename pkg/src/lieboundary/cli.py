"""Command-line entry point.

Exit codes: 0 everything checked passed, 1 a verification failed, 2 the
configuration was invalid, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import spectral
from .gf import FieldError, field_of_order
from .orbits import verify_series_orbit
from .rootsys import MIN_RANK, RANK_CAP, SeriesType
from .slcayley.boundary import ResourceCapError, boundary_exact
from .slcayley.export import cayley_graph, write_edgelist
from .slcayley.group import DEFAULT_MAX_ORDER, check_generation, sl_generators, sl_order
from .twistsys import KINDS, TwistedSeries

log = logging.getLogger("lieboundary")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CAP = 0, 1, 2, 3
SERIES = ("A", "B", "C", "D") + KINDS
SPECTRAL_MAX_ORDER = 100_000


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Everything that determines a run's primary output."""

    command: str
    series: list[str] = field(default_factory=list)
    min_rank: int | None = None
    max_rank: int | None = None
    l: list[int] = field(default_factory=list)
    q: list[int] = field(default_factory=list)
    output: str | None = None
    format: str = "json"
    threads: int | None = None
    max_order: int = DEFAULT_MAX_ORDER
    max_spectral_order: int = SPECTRAL_MAX_ORDER
    seed: int = 0
    mode: str = "iter"
    check_order: bool = False
    sweep_oracle: bool = False
    timing: bool = False


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _q_value(text: str) -> int:
    """An order ``q`` or ``p^k``; validated as a prime power."""
    try:
        if "^" in text:
            p, k = text.split("^")
            q = int(p) ** int(k)
        else:
            q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad field order {text!r}")
    return q


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lieboundary", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the primary output here instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $LIEBOUNDARY_WORKERS or the CPU count)")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                        help="cap on the number of group elements enumerated")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-orbits", parents=[common], help="check the root-system orbit identities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--series", action="append", help=f"one of {', '.join(SERIES)}; repeatable")
    g.add_argument("--all", action="store_true", help="every series")
    p.add_argument("--max-rank", type=int, required=True, help="largest rank (twisted series: largest n)")
    p.add_argument("--min-rank", type=int, default=None)

    p = sub.add_parser("slgen", parents=[common], help="BFS closure of the generating set")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q", type=_q_value, required=True)
    p.add_argument("--check-order", action="store_true", help="compare with |SL(l+1, q)|")

    p = sub.add_parser("boundary", parents=[common], help="exact boundary of the subset S")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q", type=_q_value, required=True)
    p.add_argument("--sweep-oracle", action="store_true", help="also run the brute-force sweep")
    p.add_argument("--timing", action="store_true", help="include the wall time in the report")

    p = sub.add_parser("spectrum", parents=[common], help="second eigenvalue and the Cheeger check")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q", type=_q_value, required=True)
    p.add_argument("--mode", choices=spectral.MODES, default="iter")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("export", parents=[common], help="write the Cayley graph")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q", type=_q_value, required=True)
    p.add_argument("--format", choices=["edgelist"], default="edgelist")

    p = sub.add_parser("report", parents=[common], help="CSV sweep over l and q")
    p.add_argument("--csv", action="store_true", required=True)
    p.add_argument("--l", type=_int_list, required=True)
    p.add_argument("--q", type=_int_list, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-spectral-order", type=int, default=SPECTRAL_MAX_ORDER,
                   help="leave lambda2 empty for larger groups")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, output=ns.output, threads=ns.threads, max_order=ns.max_order)
    if cfg.threads is not None and cfg.threads < 1:
        raise ConfigError("--threads must be >= 1")
    if ns.command == "verify-orbits":
        names = list(SERIES) if ns.all else ns.series
        bad = [s for s in names if s not in SERIES]
        if bad:
            raise ConfigError(f"unknown series {bad}; expected {', '.join(SERIES)}")
        cfg.series, cfg.max_rank, cfg.min_rank = names, ns.max_rank, ns.min_rank
    elif ns.command == "report":
        cfg.l, cfg.q, cfg.format = ns.l, ns.q, "csv"
        cfg.seed, cfg.max_spectral_order = ns.seed, ns.max_spectral_order
    else:
        cfg.l, cfg.q = [ns.l], [ns.q]
        cfg.check_order = getattr(ns, "check_order", False)
        cfg.sweep_oracle = getattr(ns, "sweep_oracle", False)
        cfg.timing = getattr(ns, "timing", False)
        cfg.mode = getattr(ns, "mode", "iter")
        cfg.seed = getattr(ns, "seed", 0)
        if ns.command == "export":
            cfg.format = ns.format
    for l in cfg.l:
        if l < 1:
            raise ConfigError(f"l must be >= 1, got {l}")
    for q in cfg.q:
        field_of_order(q)  # raises FieldError for non prime powers
    return cfg


# -- commands ---------------------------------------------------------------

def _rank_range(name: str, lo: int | None, hi: int, clip: bool) -> range:
    """Ranks (or twisted n) to run for one series."""
    if name in KINDS:
        first = 4 if name == "D1" else 3
        top = {"A1odd": (RANK_CAP + 1) // 2, "A1even": RANK_CAP // 2, "D1": RANK_CAP}[name]
    else:
        first, top = MIN_RANK[name], RANK_CAP
    if hi > top:
        if not clip:
            raise ConfigError(f"{name} supports at most {top} here, got --max-rank {hi}")
        hi = top
    return range(max(first, lo or first), hi + 1)


def cmd_verify_orbits(cfg: RunConfig) -> tuple[dict, int]:
    reports = []
    for name in cfg.series:
        for r in _rank_range(name, cfg.min_rank, cfg.max_rank, clip=len(cfg.series) > 1):
            if name in KINDS:
                from .twistsys import verify_twisted_orbit

                rep = verify_twisted_orbit(TwistedSeries(name, r))
            else:
                rep = verify_series_orbit(SeriesType(name, r))
            reports.append(rep.to_json())
    ok = all(r["pass"] for r in reports)
    out = {
        "pass": ok,
        "reports": reports,
        "equations": sum(len(r["equations"]) for r in reports),
    }
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_slgen(cfg: RunConfig) -> tuple[dict, int]:
    (l,), (q,) = cfg.l, cfg.q
    rep = check_generation(l, q, cfg.max_order)
    if cfg.check_order:
        out = rep.to_json()
    else:
        out = {"l": l, "q": rep.q, "order": rep.order, "conclusive": rep.conclusive,
               "degree": rep.degree, "connection": rep.connection}
    if not rep.conclusive:
        out["partial"] = True
        return out, EXIT_CAP
    if cfg.check_order and not rep.match:
        return out, EXIT_FAIL
    return out, EXIT_OK


def cmd_boundary(cfg: RunConfig) -> tuple[dict, int]:
    (l,), (q,) = cfg.l, cfg.q
    rep = boundary_exact(l, q, sweep_oracle=cfg.sweep_oracle, workers=cfg.threads, cap=cfg.max_order)
    return rep.to_json(timing=cfg.timing), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_spectrum(cfg: RunConfig) -> tuple[dict, int]:
    (l,), (q,) = cfg.l, cfg.q
    if sl_order(l + 1, q) > cfg.max_order:
        raise ResourceCapError(f"|SL({l + 1},{q})| exceeds --max-order {cfg.max_order}")
    g = spectral.from_cayley(cayley_graph(l, q, cfg.max_order))
    if cfg.mode == "dense" and g.n > spectral.DENSE_MAX:
        raise ResourceCapError(f"dense mode needs n <= {spectral.DENSE_MAX}, got {g.n}")
    sp = spectral.lambda2(g, cfg.mode, seed=cfg.seed, workers=cfg.threads)
    b = boundary_exact(l, q, sweep_oracle=False, workers=cfg.threads, cap=cfg.max_order)
    ok = spectral.cheeger_consistency(sp, b)
    out = {"l": l, "q": q, **sp.to_json(), "cheeger_consistent": ok}
    return out, EXIT_OK if ok and sp.converged else EXIT_FAIL


def cmd_export(cfg: RunConfig) -> tuple[str, int]:
    (l,), (q,) = cfg.l, cfg.q
    buf = io.StringIO()
    write_edgelist(cayley_graph(l, q, cfg.max_order), buf)
    return buf.getvalue(), EXIT_OK


REPORT_COLUMNS = ["l", "q", "n", "d", "lambda2", "gap", "ratio_num", "ratio_den"]


def cmd_report(cfg: RunConfig) -> tuple[str, int]:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    ok = True
    for q in cfg.q:
        for l in cfg.l:
            b = boundary_exact(l, q, sweep_oracle=False, workers=cfg.threads, cap=cfg.max_order)
            ok &= b.passed
            lam = gap = ""
            if b.group_order <= min(cfg.max_spectral_order, cfg.max_order):
                sp = spectral.lambda2(spectral.from_cayley(cayley_graph(l, q, cfg.max_order)), "iter",
                                      seed=cfg.seed, workers=cfg.threads)
                ok &= sp.converged and spectral.cheeger_consistency(sp, b)
                lam, gap = f"{sp.lambda2:.10f}", f"{sp.gap:.10f}"
            else:
                log.info("SL(%d,%d): %d vertices, lambda2 skipped", l + 1, q, b.group_order)
            w.writerow([l, b.q, b.group_order, b.degree, lam, gap,
                        b.ratio.numerator, b.ratio.denominator])
    return buf.getvalue(), EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "verify-orbits": cmd_verify_orbits,
    "slgen": cmd_slgen,
    "boundary": cmd_boundary,
    "spectrum": cmd_spectrum,
    "export": cmd_export,
    "report": cmd_report,
}


def _emit(payload, path: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    if cfg.threads:
        os.environ["LIEBOUNDARY_WORKERS"] = str(cfg.threads)
    payload, code = COMMANDS[cfg.command](cfg)
    _emit(payload, cfg.output)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on bad usage, which is our config-error code
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except (ConfigError, FieldError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (ResourceCapError, spectral.SpectralError) as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
