"""Command line front end.

Every command writes one JSON report (or a plain-text rendering of it) and
exits with 0 when all checks pass, 1 when any fails, 2 on a bad
configuration.  Reports are deterministic apart from the ``timing`` block.
"""

from __future__ import annotations

import argparse
import json
import platform
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .coeffs import is_prime
from .suites import (
    ANCHORS,
    Recorder,
    SuiteConfig,
    compose_suite,
    jordan_suite,
    mult_suite,
    poset_suite,
    rescale_suite,
    vancrit_suite,
)

COMMANDS = ("rescale", "jordan", "mult", "compose", "poset", "vancrit", "verify-all")


class ConfigError(ValueError):
    pass


def _parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*[:,]\s*(-?\d+)\s*", text)
    if not m:
        raise ConfigError(f"--n-range expects LO:HI, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ConfigError(f"--n-range is empty: {text!r}")
    return lo, hi


def _parse_t_set(text: str) -> tuple:
    try:
        ts = tuple(Fraction(s.strip()) for s in text.split(",") if s.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--t-set expects comma-separated rationals, got {text!r}") from None
    if not ts or any(t == 0 for t in ts):
        raise ConfigError("--t-set needs non-zero values")
    return ts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unipotent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--l", type=int, default=None, help="also work over F_l (l prime)")
    common.add_argument("--a-max", type=int, default=5, help="largest module dimension")
    common.add_argument("--r-max", type=int, default=10, help="largest index for rescaling tables")
    common.add_argument("--n-range", default="-3:3", help="monodromy parameters LO:HI")
    common.add_argument("--t-set", default="2,1/3,3", help="Galois parameters, comma separated")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--p-size", type=int, default=3, help="ground-set size for the poset")
    common.add_argument("--instances", type=int, default=100, help="random instances per window")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")

    helps = {
        "rescale": "binomial-basis and rescaling coefficient checks",
        "jordan": "Jordan-module actions, sequences and the Frobenius witness",
        "mult": "multiplication maps",
        "compose": "pointed maps, degree windows and composition data",
        "poset": "the refinement poset and its Hasse diagram",
        "vancrit": "vanishing of composites of cohomologically zero maps",
        "verify-all": "every suite",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "jordan":
            p.add_argument("--witness", type=int, default=None, metavar="P", help="emit Frobenius at P on L_3 over F_2")
        if name == "vancrit":
            p.add_argument("--instance", default=None, metavar="FILE", help="check a JSON instance file")
    return parser


def config_from_args(args) -> SuiteConfig:
    if args.l is not None and not is_prime(args.l):
        raise ConfigError(f"--l must be prime, got {args.l}")
    if args.a_max < 1:
        raise ConfigError("--a-max must be >= 1")
    if args.r_max < 0:
        raise ConfigError("--r-max must be >= 0")
    if args.instances < 0:
        raise ConfigError("--instances must be >= 0")
    if not 0 <= args.p_size <= 5:
        raise ConfigError("--p-size must be between 0 and 5")
    if getattr(args, "witness", None) is not None and args.witness % 4 != 3:
        raise ConfigError(f"--witness needs a prime p = 3 mod 4, got {args.witness}")
    if getattr(args, "witness", None) is not None and not is_prime(args.witness):
        raise ConfigError(f"--witness must be prime, got {args.witness}")
    return SuiteConfig(
        l=args.l,
        a_max=args.a_max,
        r_max=args.r_max,
        n_range=_parse_range(args.n_range),
        t_set=_parse_t_set(args.t_set),
        seed=args.seed,
        p_size=args.p_size,
        p_max=3,
        instances=args.instances,
    )


def _instance_suite(path: str, rec: Recorder) -> dict:
    from .homotopy.complexes import ChainMap
    from .homotopy.vanishing import TWindow, vancrit_check

    try:
        obj = json.loads(Path(path).read_text())
        window = TWindow(*obj["window"])
        maps = [ChainMap.from_obj(m) for m in obj["maps"]]
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"cannot read instance {path}: {exc}") from None
    verdict = vancrit_check(maps, window)
    chk = rec.start("vanishing.instance", "vanishing-composite")
    chk.cases = 1
    if not verdict.vanishes:
        chk.status = "fail"
        chk.witness = verdict.to_obj()
    return {"verdict": verdict.to_obj()}


def run(command: str, cfg: SuiteConfig, witness: Optional[int] = None, instance: Optional[str] = None) -> dict:
    rec = Recorder()
    results = {}
    if command in ("rescale", "verify-all"):
        results["rescale"] = rescale_suite(cfg, rec)
    if command in ("jordan", "verify-all"):
        results["jordan"] = jordan_suite(cfg, rec, witness=witness)
    if command in ("mult", "verify-all"):
        results["mult"] = mult_suite(cfg, rec)
    if command in ("compose", "verify-all"):
        results["compose"] = compose_suite(cfg, rec)
    if command in ("poset", "verify-all"):
        results["poset"] = poset_suite(cfg, rec)
    if command == "vancrit" and instance:
        results["vancrit"] = _instance_suite(instance, rec)
    elif command in ("vancrit", "verify-all"):
        results["vancrit"] = vancrit_suite(cfg, rec)
    checks = [c.to_obj() for c in rec.records()]
    summary = {s: sum(1 for c in checks if c["status"] == s) for s in ("pass", "fail", "skip")}
    return {"checks": checks, "summary": summary, "results": results}


def _echo(command: str, cfg: SuiteConfig, args) -> dict:
    echo = {
        "command": command,
        "l": cfg.l,
        "a_max": cfg.a_max,
        "r_max": cfg.r_max,
        "n_range": list(cfg.n_range),
        "t_set": [str(t) for t in cfg.t_set],
        "seed": cfg.seed,
        "p_size": cfg.p_size,
        "instances": cfg.instances,
    }
    if getattr(args, "witness", None) is not None:
        echo["witness"] = args.witness
    if getattr(args, "instance", None):
        echo["instance"] = Path(args.instance).name
    return echo


def versions() -> dict:
    import numpy

    return {"artifact": __version__, "python": platform.python_version(), "numpy": numpy.__version__}


def render_table(report: dict) -> str:
    lines = [f"{report['command']['command']}: " + ", ".join(f"{v} {k}" for k, v in report["summary"].items())]
    width = max((len(c["name"]) for c in report["checks"]), default=0)
    for c in report["checks"]:
        lines.append(f"{c['status'].upper():4}  {c['name']:<{width}}  {c['cases']:>6}  {ANCHORS[c['anchor']]}")
        if c["status"] == "fail":
            lines.append(f"      {json.dumps(c.get('witness'), sort_keys=True)}")
    return "\n".join(lines) + "\n"


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        start = time.perf_counter()
        body = run(args.command, cfg, witness=getattr(args, "witness", None), instance=getattr(args, "instance", None))
    except ConfigError as exc:
        print(f"unipotent: error: {exc}", file=sys.stderr)
        return 2
    report = {
        "command": _echo(args.command, cfg, args),
        **body,
        "timing": {"seconds": round(time.perf_counter() - start, 3)},
        "versions": versions(),
    }
    text = dumps(report) if args.format == "json" else render_table(report)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 1 if report["summary"]["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
