"""Command-line frontend.

Every subcommand builds a report (inputs echo, results, citation tags with
their resolved text, version) and prints it as ``key: value`` text or as one
JSON document.  Exit codes: 0 ok, 2 violated hypothesis, 3 Indeterminate
under ``--strict``, 64 unparsable input.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import time
from dataclasses import dataclass, field, fields, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from . import classifier as cl
from . import dichotomy as dc
from . import netmeasure as nm
from . import systems as sy
from .citations import resolve
from .gauge import (DomainError, GaugeContext, GaugeError, RangeError, dimension_index, epsilon_of,
                    eval_gauge, parse_gauge, precedes, pseudo_inverse, regularize)
from .textform import ParseError, rat, rat_vector

EXIT_OK, EXIT_PRECONDITION, EXIT_INDETERMINATE, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass
class RunConfig:
    subcommand: str
    args: Dict[str, Any]
    json: bool = False
    strict: bool = False
    timing: bool = False
    seed: int = 0
    threads: int = 1


@dataclass
class Report:
    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    citations: List[str] = field(default_factory=list)
    indeterminate: bool = False


# ---------------------------------------------------------------- rendering

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def plain(obj):
    """Reduce results to str/int/bool/None/float/list/dict."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str, float)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if is_dataclass(obj):
        return {f.name: plain(getattr(obj, f.name)) for f in fields(obj)}
    if isinstance(obj, tuple) and hasattr(obj, "_fields"):
        return {k: plain(v) for k, v in zip(obj._fields, obj)}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    return str(obj)


def to_json(obj, indent: int = 0) -> str:
    """JSON writer with floats at 17 significant digits."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _fmt_float(obj) if math.isfinite(obj) else json.dumps(_fmt_float(obj))
    if isinstance(obj, (int, str)):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if not obj:
        return "[]"
    if all(not isinstance(v, (dict, list)) for v in obj):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    return "[\n" + ",\n".join(inner + to_json(v, indent + 1) for v in obj) + "\n" + pad + "]"


def _text_value(v) -> str:
    if isinstance(v, float):
        return _fmt_float(v)
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    return str(v)


def _text_lines(obj, prefix: str = "") -> List[str]:
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            key = f"{prefix}{k}"
            if isinstance(v, dict) or (isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)):
                out += _text_lines(v, key + ".")
            else:
                out.append(f"{key}: {_text_value(v)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            if isinstance(v, dict) and all(not isinstance(x, (dict, list)) or
                                           (isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x))
                                           for x in v.values()):
                out.append(f"{prefix}{i}: " + " ".join(f"{k}={_text_value(x)}" for k, x in v.items()))
            else:
                out += _text_lines(v, f"{prefix}{i}.")
    else:
        out.append(f"{prefix.rstrip('.')}: {_text_value(obj)}")
    return out


def render(report: Report, cfg: RunConfig, wall: Optional[float]) -> str:
    doc = {
        "version": __version__,
        "command": report.command,
        "inputs": plain(report.inputs),
        "results": plain(report.results),
        "citations": {tag: resolve(tag) for tag in dict.fromkeys(report.citations)},
    }
    if wall is not None:
        doc["wall_time_s"] = wall
    if cfg.json:
        return to_json(doc) + "\n"
    lines = [f"# dioph {__version__} {report.command}"]
    lines += _text_lines(doc["inputs"], "input.")
    lines += _text_lines(doc["results"])
    for tag, text in doc["citations"].items():
        lines.append(f"cite [{tag}] {text}")
    if wall is not None:
        lines.append(f"wall_time_s: {_fmt_float(wall)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- argument helpers

def _split_at(tokens: Sequence[str], key: str):
    """Split ``... key=<gauge tokens>`` into the leading tokens and the gauge."""
    idx = [i for i, t in enumerate(tokens) if t.startswith(key + "=")]
    if not idx:
        raise ParseError(f"missing {key}=<gauge>")
    i = idx[-1]
    head = list(tokens[:i])
    gauge_toks = [tokens[i].partition("=")[2]] + list(tokens[i + 1:])
    return head, parse_gauge(gauge_toks)


def _positive(name: str, v):
    if v is not None and v <= 0:
        raise UsageError(f"{name} must be positive")
    return v


def _omega_list(text: str):
    return cl.parse_omega(text)


# ---------------------------------------------------------------- subcommands

def cmd_gauge(cfg: RunConfig) -> Report:
    a = cfg.args
    g = parse_gauge(a["spec"])
    ctx = GaugeContext(a["d"])
    rep = Report(f"gauge {a['op']}", {"gauge": str(g), "d": a["d"]})
    op = a["op"]
    if op == "eval":
        if a["r"] is None:
            raise UsageError("gauge eval needs --r")
        r = rat(a["r"])
        rep.inputs["r"] = r
        rep.results["value"] = eval_gauge(g, r)
    elif op == "regularize":
        rep.results["regularized"] = str(regularize(g, ctx))
    elif op == "epsilon":
        rep.results["epsilon"] = epsilon_of(g, ctx)
    elif op == "precedes":
        if not a["other"]:
            raise UsageError("gauge precedes needs --other <gauge>")
        h = parse_gauge(a["other"])
        rep.inputs["other"] = str(h)
        res = precedes(g, h)
        rep.results["precedes"] = "undetermined" if res is None else res
        rep.citations.append("gauge-monotonicity")
    elif op == "pseudoinv":
        if a["r"] is None:
            raise UsageError("gauge pseudoinv needs --r")
        r = float(rat(a["r"]))
        rep.inputs["r"] = r
        rep.results["value"] = pseudo_inverse(g, ctx, r)
    elif op == "sg":
        v = dimension_index(g, ctx)
        rep.results["s_g"] = v if isinstance(v, Fraction) else {"value": v.value, "lower": v.lower,
                                                                 "upper": v.upper}
    return rep


def _verdict_results(v: dc.Verdict) -> Dict[str, Any]:
    out = {
        "series": v.series,
        "hausdorff": v.hausdorff,
        "large_intersection": v.large_intersection,
        "gauge_factorization_ok": v.gauge_factorization_ok,
        "h": str(v.h) if v.h is not None else None,
        "dimension": v.dimension,
    }
    if v.classification is not None:
        out["method"] = v.classification.method
    out["trace"] = list(v.trace)
    return out


def cmd_verdict(cfg: RunConfig) -> Report:
    a = cfg.args
    head, G = _split_at(a["spec"], "gauge")
    desc = dc.parse_set(head)
    v = dc.verdict(desc, G, a["method"], a["qmax"])
    rep = Report("verdict", {"set": dc.describe(desc), "gauge": str(G), "method": a["method"],
                             "qmax": a["qmax"]})
    rep.results = _verdict_results(v)
    rep.citations = list(v.citations)
    rep.indeterminate = v.large_intersection == dc.Membership.INDETERMINATE
    return rep


def cmd_dimension(cfg: RunConfig) -> Report:
    a = cfg.args
    desc = dc.parse_set(a["spec"])
    d = dc.dimension_of(desc, a["qmax"])
    rep = Report("dimension", {"set": dc.describe(desc)})
    rep.results = {"dimension": d.value}
    if d.bracket is not None:
        rep.results["bracket"] = list(d.bracket)
    rep.results["trace"] = list(d.trace)
    rep.citations = list(d.citations)
    rep.indeterminate = d.value is None and d.bracket is None
    return rep


def cmd_series(cfg: RunConfig) -> Report:
    a = cfg.args
    head, h = _split_at(a["spec"], "h")
    desc = dc.parse_set(head)
    dc.validate(desc)
    c = dc.classify_series(desc, h, a["method"], a["qmax"])
    rep = Report("series", {"set": dc.describe(desc), "h": str(h), "method": a["method"], "qmax": a["qmax"]})
    rep.results = {"verdict": c.verdict, "method": c.method, "a": c.a, "b": c.b, "c": c.c}
    if c.partial_sums is not None:
        rep.results["partial_sums"] = list(c.partial_sums)
        rep.results["increment_ratio"] = c.increment_ratio
    if c.fit is not None:
        rep.results["fit"] = list(c.fit)
    rep.results["trace"] = list(c.trace)
    rep.citations = list(c.citations)
    rep.indeterminate = c.verdict == dc.Series.INDETERMINATE
    return rep


def cmd_netmeasure(cfg: RunConfig) -> Report:
    a = cfg.args
    try:
        with open(a["target"], encoding="utf-8") as fh:
            E = nm.CubeSet.parse(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read target: {exc}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    g = parse_gauge(a["gauge"])
    res = nm.net_measure(E, g, GaugeContext(E.d))
    rep = Report("netmeasure", {"target": f"c={E.c} d={E.d} J={E.J} leaves={len(E.leaves)}",
                                "gauge": str(g)})
    rep.results = {"value": res.value, "exact": res.exact, "optimal": res.optimal,
                   "cover": [str(cube) for cube in res.cover]}
    rep.citations = ["net-measure-tree-dp"]
    return rep


def cmd_cover(cfg: RunConfig) -> Report:
    a = cfg.args
    nu = rat(a["nu"])
    rep = Report("cover", {"n": a["n"], "nu": nu})
    if a["q"]:
        q = tuple(int(x) for x in a["q"].split(","))
        sc = nm.slab_cover(q, nu)
        rep.inputs["q"] = list(q)
        rep.results = {"count": sc.count, "side": sc.side if sc.exact_side else float(sc.side),
                       "exact_side": sc.exact_side}
    else:
        shells = [int(x) for x in a["shells"].split(",")]
        rep.inputs["shells"] = shells
        r = nm.slab_exponent(a["n"], nu, shells)
        rep.results = {
            "expected_exponent": (a["n"] - 1) * (nu + 1),
            "table": [{"Q": Q, "max_count": c, "beta": b} for Q, c, b in zip(r.shells, r.max_counts, r.betas)],
            "slope": r.slope,
            "beta_spread": r.beta_spread,
        }
    rep.citations = ["slab-cover-count"]
    return rep


def _random_omegas(n: int, count: int, seed: int) -> List[List[Fraction]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        w = [Fraction(1)]
        for _ in range(n - 1):
            D = rng.randrange(2 ** 31, 2 ** 32)
            w.append(Fraction(rng.randrange(1, D), D))
        out.append(w)
    return out


def cmd_classify(cfg: RunConfig) -> Report:
    a = cfg.args
    qmax = a["qmax"]
    if a["real"]:
        x = cl.parse_real(a["real"])
        sigma = rat(a["sigma"])
        rep = Report("classify real", {"real": a["real"], "sigma": sigma, "qmax": qmax})
        cf = cl.continued_fraction(x, a["terms"])
        dt = cl.diophantine_type(x, sigma, qmax)
        ie = cl.irrationality_exponent(x, a["terms"])
        rep.results = {
            "continued_fraction": cf.quotients,
            "cf_complete": cf.complete,
            "K_Q": [{"Q": r.Q, "k_min": r.k_min, "argmin": r.argmin, "k_tail": r.k_tail,
                     "tail_argmin": r.tail_argmin} for r in dt.rows],
            "irrationality_exponent": ie.estimate,
            "raw_tail_max": ie.raw_tail_max,
        }
        if dt.caveat:
            rep.results["caveat"] = dt.caveat
        rep.citations = ["hurwitz-constant"]
        return rep
    if a["omega"] or a["random_omega"]:
        nus = [rat(x) for x in a["nu"].split(",")]
        if a["omega"]:
            omegas = [_omega_list(a["omega"])]
            rep = Report("classify omega", {"omega": a["omega"], "nu": nus, "qmax": qmax})
        else:
            omegas = _random_omegas(a["random_omega"], a["count"], cfg.seed)
            rep = Report("classify omega", {"random_n": a["random_omega"], "count": a["count"],
                                            "seed": cfg.seed, "nu": nus, "qmax": qmax})
        table = []
        for w in omegas:
            for nu, label, r in cl.classify_frequency(w, nus, qmax):
                table.append({"omega": [str(x) for x in w], "nu": nu, "trend": r.trend, "label": label,
                              "gamma_at_qmax": r.rows[-1].gamma if r.rows else None,
                              "slope": r.slope, "hit_zero_at": r.hit_zero_at})
        rep.results = {"table": table}
        if len(omegas) > 1:
            tally: Dict[str, int] = {}
            for row in table:
                tally[row["trend"]] = tally.get(row["trend"], 0) + 1
            rep.results["tally"] = dict(sorted(tally.items()))
        rep.citations = ["siegel-condition"]
        return rep
    if a["circle"]:
        kind, _, body = a["circle"].partition(":")
        if kind == "translation":
            f = cl.PureTranslation(rat(body))
        elif kind == "standard":
            Om, K = body.split(",")
            f = cl.StandardMap(rat(Om), rat(K))
        else:
            raise ParseError(f"unknown circle map {kind!r}")
        est = cl.rotation_number(f, 0, a["iterations"])
        rep = Report("classify circle", {"circle": a["circle"], "iterations": a["iterations"]})
        rep.results = {"rotation_number": est.value, "error_bound": est.error_bound, "exact": est.exact}
        rep.citations = ["rotation-number"]
        return rep
    raise UsageError("classify needs one of --real, --omega, --random-omega, --circle")


def _element_row(e: sy.ApproxElement) -> Dict[str, Any]:
    s = e.subspace
    if isinstance(s, sy.Point):
        where = {"point": [str(x) for x in s.coords]}
    else:
        where = {"q": list(s.q), "offsets": [str(x) for x in s.offsets]}
    return {**where, "radius": e.radius, "index": list(e.index)}


def cmd_enumerate(cfg: RunConfig) -> Report:
    a = cfg.args
    f = sy.parse_family(a["spec"])
    elems = sy.enumerate_family(f, a["bound"], cap=a["cap"])
    rep = Report("enumerate", {"family": " ".join(a["spec"]), "bound": a["bound"]})
    rep.results = {"count": len(elems), "elements": [_element_row(e) for e in elems[:a["limit"]]]}
    return rep


def cmd_dirichlet(cfg: RunConfig) -> Report:
    a = cfg.args
    x = rat_vector(a["x"])
    w = sy.dirichlet_witness(x, a["qmax"])
    d = len(x)
    rep = Report("dirichlet", {"x": [str(v) for v in x], "qmax": a["qmax"]})
    if w is None:
        rep.results = {"found": False}
        rep.indeterminate = True
    else:
        rep.results = {"found": True, "p": list(w.p), "q": w.q, "distance": w.distance,
                       "bound": float(w.q) ** (-1 - 1 / d)}
    rep.citations = ["dirichlet-theorem"]
    return rep


COMMANDS = {
    "gauge": cmd_gauge, "verdict": cmd_verdict, "dimension": cmd_dimension, "series": cmd_series,
    "netmeasure": cmd_netmeasure, "cover": cmd_cover, "classify": cmd_classify,
    "enumerate": cmd_enumerate, "dirichlet": cmd_dirichlet,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dioph", description="Gauge dichotomies, net measures and Diophantine classifiers.")
    p.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON document instead of text")
    common.add_argument("--strict", action="store_true", help="exit 3 on Indeterminate")
    common.add_argument("--timing", action="store_true", help="append wall time (breaks byte identity)")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    g = sub.add_parser("gauge", parents=[common], help="gauge operations")
    g.add_argument("op", choices=["eval", "regularize", "precedes", "epsilon", "pseudoinv", "sg"])
    g.add_argument("spec", nargs="+", help="powerlog s=.. t=.. c0=.. | tabulated r:v,...")
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--r")
    g.add_argument("--other", nargs="+")

    for name, helptext in (("verdict", "set descriptor then gauge=<gauge>"),
                           ("series", "set descriptor then h=<gauge>")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("spec", nargs="+")
        s.add_argument("--method", choices=["auto", "symbolic", "numeric"], default="auto")
        s.add_argument("--qmax", type=int, default=dc.NUMERIC_QMAX)

    s = sub.add_parser("dimension", parents=[common], help="dimension of a set descriptor")
    s.add_argument("spec", nargs="+")
    s.add_argument("--qmax", type=int, default=10 ** 5)

    s = sub.add_parser("netmeasure", parents=[common], help="exact c-adic net measure of a cube set")
    s.add_argument("--target", required=True)
    s.add_argument("--gauge", nargs="+", required=True)

    s = sub.add_parser("cover", parents=[common], help="slab cover counts and exponent regression")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--nu", default="2")
    s.add_argument("--q")
    s.add_argument("--shells", default="4,8,16,32")

    s = sub.add_parser("classify", parents=[common], help="reals, frequency vectors, circle maps")
    s.add_argument("--real")
    s.add_argument("--sigma", default="0")
    s.add_argument("--terms", type=int, default=20)
    s.add_argument("--omega")
    s.add_argument("--random-omega", type=int, metavar="N")
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--nu", default="1")
    s.add_argument("--circle", help="translation:<rho> | standard:<Omega>,<K>")
    s.add_argument("--iterations", type=int, default=10 ** 5)
    s.add_argument("--qmax", type=int, default=10 ** 4)

    s = sub.add_parser("enumerate", parents=[common], help="truncated approximation family")
    s.add_argument("spec", nargs="+")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--limit", type=int, default=50, help="elements listed in the report")
    s.add_argument("--cap", type=int, default=2_000_000)

    s = sub.add_parser("dirichlet", parents=[common], help="Dirichlet witness for a rational point")
    s.add_argument("--x", required=True)
    s.add_argument("--qmax", type=int, default=1000)
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(list(argv))
    args = {k: v for k, v in vars(ns).items() if k not in ("json", "strict", "timing", "seed", "subcommand")}
    for key in ("qmax", "bound", "iterations", "terms", "count", "cap", "limit", "d", "n"):
        _positive(key, args.get(key))
    try:
        threads = int(os.environ.get("DIOPH_THREADS", "1"))
    except ValueError:
        raise UsageError("DIOPH_THREADS must be an integer")
    return RunConfig(ns.subcommand, args, ns.json, ns.strict, ns.timing, ns.seed, max(threads, 1))


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    t0 = time.perf_counter()
    try:
        cfg = parse_config(argv)
        report = COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except (ParseError, GaugeError) as exc:
        err.write(f"{build_parser().format_usage()}parse error: {exc}\n")
        return EXIT_USAGE
    except (dc.PreconditionError, DomainError, RangeError, nm.InfeasibleCover) as exc:
        err.write(f"precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    except (sy.ResourceError, sy.UnsupportedStructure) as exc:
        err.write(f"precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    except SystemExit as exc:
        return int(exc.code or 0)
    wall = time.perf_counter() - t0 if cfg.timing else None
    out.write(render(report, cfg, wall))
    if cfg.strict and report.indeterminate:
        return EXIT_INDETERMINATE
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
