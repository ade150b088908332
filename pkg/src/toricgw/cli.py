"""Command-line front end.

    toricgw presets
    toricgw compute --surface p2 --max-degree 2 --output json [--cross-check] [--xi-order N]
    toricgw verify --suite chemistry --seed 7
    toricgw gv --surface p1xp1 --max-degree 3

Exit status is 0 iff every requested check passed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coefrings import NovikovSeries, QCoefficient, lambda_expand
from .suites import SUITES, run_suite
from .toric import (
    PRESET_NAMES,
    DegenerateTorusError,
    IntegralityError,
    SurfaceError,
    ToricSurface,
    derive_tau,
    gv_extract,
    load_surface,
    preset,
    z_localization,
    z_product,
)

OUTPUTS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    command: str
    surface: str = "p2"
    max_degree: int = 2
    torus_c: Fraction = Fraction(2)
    output: str = "text"
    seed: int = 0
    suite: str | None = None
    cross_check: bool = False
    xi_order: int | None = None

    def __post_init__(self) -> None:
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        if self.output not in OUTPUTS:
            raise ValueError(f"output must be one of {OUTPUTS}")


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------

def _common_root_order(series: NovikovSeries) -> int:
    m = 1
    for c in series.terms.values():
        m = max(m, QCoefficient.coerce(c).minimal_root_order())
    return m


def series_document(surf: ToricSurface, series: NovikovSeries, xi_order: int | None = None) -> dict:
    """JSON-ready document; every coefficient is written at one common root of ``q``."""
    m = _common_root_order(series)
    terms = []
    for (e, lam), c in series.items():
        qc = QCoefficient.coerce(c).rescale(m)
        entry = {"monomial": list(e), "coefficient": qc.to_json()}
        if lam:
            entry["lambda"] = lam
        if xi_order is not None:
            entry["xi"] = str(lambda_expand(qc, xi_order))
        terms.append(entry)
    header = {
        "surface": surf.name,
        "root_order": 2 * m,
        "q": f"w^{2 * m}",
        "variables": list(surf.variables),
        "grading": list(surf.grading),
        "truncation": series.truncation,
    }
    return {"header": header, "terms": terms}


def series_from_document(doc: dict) -> NovikovSeries:
    """Inverse of :func:`series_document` (the ``xi`` entries are ignored)."""
    h = doc["header"]
    m = int(h["root_order"]) // 2
    terms = {}
    for t in doc["terms"]:
        key = (tuple(t["monomial"]), int(t.get("lambda", 0)))
        terms[key] = QCoefficient.from_json(t["coefficient"], m)
    return NovikovSeries(tuple(h["variables"]), int(h["truncation"]), terms, tuple(h["grading"]))


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def _series_csv(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    variables = doc["header"]["variables"]
    has_xi = any("xi" in t for t in doc["terms"])
    writer.writerow(list(variables) + ["numerator", "denominator"] + (["xi"] if has_xi else []))
    for t in doc["terms"]:
        row = list(t["monomial"]) + [" + ".join(t["coefficient"]["num"]), " + ".join(t["coefficient"]["den"])]
        if has_xi:
            row.append(t.get("xi", ""))
        writer.writerow(row)
    return buf.getvalue()


def _monomial_text(variables: Sequence[str], e: Sequence[int]) -> str:
    parts = [(v if x == 1 else f"{v}^{x}") for v, x in zip(variables, e) if x]
    return "*".join(parts) or "1"


def _series_text(doc: dict) -> str:
    h = doc["header"]
    lines = [f"# {h['surface']}: q = {h['q']}, truncation {h['truncation']}, grading {h['grading']}"]
    for t in doc["terms"]:
        num = " + ".join(t["coefficient"]["num"])
        den = " + ".join(t["coefficient"]["den"])
        line = f"{_monomial_text(h['variables'], t['monomial'])}: ({num})/({den})"
        if "xi" in t:
            line += f"    [xi: {t['xi']}]"
        lines.append(line)
    return "\n".join(lines) + "\n"


def render_series(doc: dict, output: str) -> str:
    if output == "json":
        return _dump_json(doc) + "\n"
    if output == "csv":
        return _series_csv(doc)
    return _series_text(doc)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _presets(cfg: RunConfig, out) -> int:
    rows = [preset(n) for n in PRESET_NAMES]
    if cfg.output == "json":
        out.write(_dump_json({"presets": [s.to_json() for s in rows]}) + "\n")
    elif cfg.output == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["name", "k", "s", "variables"])
        for s in rows:
            writer.writerow([s.name, s.k, " ".join(map(str, s.s)), " ".join(s.variables)])
    else:
        for s in rows:
            out.write(f"{s.name:6s} k={s.k}  s={list(s.s)}  variables={list(s.variables)}\n")
    return 0


def _compute(cfg: RunConfig, out, err) -> int:
    surf = load_surface(cfg.surface)
    Z = z_product(surf, cfg.max_degree)
    doc = series_document(surf, Z, cfg.xi_order)
    status = 0
    if cfg.cross_check:
        tau = derive_tau(surf, cfg.torus_c)
        loc = z_localization(surf, tau, cfg.max_degree)
        agree = loc == Z
        doc["cross_check"] = {
            "torus_c": str(cfg.torus_c),
            "tau": [str(t) for t in tau.tau],
            "agree": agree,
        }
        if not agree:
            err.write("cross-check failed: localization and product formula differ\n")
            status = 1
    out.write(render_series(doc, cfg.output))
    return status


def _verify(cfg: RunConfig, out) -> int:
    report = run_suite(cfg.suite, cfg.seed)
    if cfg.output == "json":
        out.write(_dump_json(report.to_json()) + "\n")
    else:
        for c in report.checks:
            tag = "PASS" if c.passed else "FAIL"
            detail = f"  ({c.detail})" if c.detail and not c.passed else ""
            out.write(f"{tag}  {c.name}{detail}\n")
        out.write(f"suite {report.suite}: {'PASS' if report.passed else 'FAIL'}\n")
    return 0 if report.passed else 1


def _gv(cfg: RunConfig, out) -> int:
    surf = load_surface(cfg.surface)
    table = gv_extract(surf, cfg.max_degree)
    if cfg.output == "json":
        doc = {
            "surface": surf.name,
            "variables": list(surf.variables),
            "invariants": [{"class": list(c), "genus": g, "n": n} for (c, g), n in table.items()],
        }
        out.write(_dump_json(doc) + "\n")
    elif cfg.output == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(list(surf.variables) + ["genus", "n"])
        for (c, g), n in table.items():
            writer.writerow(list(c) + [g, n])
    else:
        for (c, g), n in table.items():
            out.write(f"{_monomial_text(surf.variables, c):16s} g={g}  n={n}\n")
    return 0


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if cfg.command == "presets":
            return _presets(cfg, out)
        if cfg.command == "compute":
            return _compute(cfg, out, err)
        if cfg.command == "verify":
            return _verify(cfg, out)
        if cfg.command == "gv":
            return _gv(cfg, out)
    except (SurfaceError, DegenerateTorusError, FileNotFoundError, json.JSONDecodeError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except IntegralityError as exc:
        err.write(f"integrality failure: {exc}\n")
        return 1
    raise ValueError(f"unknown command {cfg.command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricgw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("presets", help="list the built-in surfaces")
    p.add_argument("--output", choices=OUTPUTS, default="text")

    for name, text in (("compute", "partition function from the product formula"),
                       ("gv", "integer invariants from the free energy")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--surface", default="p2", help=f"preset ({', '.join(PRESET_NAMES)}) or JSON file")
        p.add_argument("--max-degree", type=int, default=2)
        p.add_argument("--output", choices=OUTPUTS, default="text")
        if name == "compute":
            p.add_argument("--torus-c", type=Fraction, default=Fraction(2))
            p.add_argument("--cross-check", action="store_true",
                           help="also run the localization graph sum and require equality")
            p.add_argument("--xi-order", type=int, default=None,
                           help="add the expansion in xi = log q through this order")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=OUTPUTS, default="text")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        surface=getattr(args, "surface", "p2"),
        max_degree=getattr(args, "max_degree", 2),
        torus_c=getattr(args, "torus_c", Fraction(2)),
        output=args.output,
        seed=getattr(args, "seed", 0),
        suite=getattr(args, "suite", None),
        cross_check=getattr(args, "cross_check", False),
        xi_order=getattr(args, "xi_order", None),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
