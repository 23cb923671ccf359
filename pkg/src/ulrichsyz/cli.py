"""Command-line driver.

    ulrichsyz coh --model p2 --sheaf dualsyz:1:-2
    ulrichsyz check-ulrich --model p2 --sheaf dualsyz:1:1 --H 2
    ulrichsyz classify curves-dual
    ulrichsyz verify-theorem --out report.json

Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import (
    AbstractModelError,
    DualSyzygy,
    Line,
    NotVeryAmpleError,
    Sum,
    Syzygy,
    model_from_label,
)
from .report import (
    ConfigError,
    config_snapshot,
    dumps,
    golden_path,
    load_config,
    make_document,
    render_markdown,
)
from .ulrich import SERIAL_ENV
from .verify import CLASSIFIERS, compare_golden, run_check_ulrich, run_coh, run_verify_theorem

GRAMMAR = """sheaf grammar:
  line:<c>            line bundle O(c)
  syz:<L>:<t>         M_L (x) O(t), V = H^0(L)
  dualsyz:<L>:<t>     M_L^v (x) O(t)
  sum:<e1>+<e2>+...   direct sum
classes are comma-separated integers: 2 on p1/p<n>, 1,4 on the quadric"""

CONFIG_HELP = """config file: flat key = lo..hi entries under [section] headers
  sections: curves, surfaces, p1xp1, prop52, cor54, sweep
  --set section.key=lo..hi overrides the file
environment: {env}=1 disables process parallelism""".format(env=SERIAL_ENV)

ABSTRACT_LABELS = ("curve", "surface", "abstract")


class UsageError(ValueError):
    pass


def parse_class(model, text: str):
    try:
        coords = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad class {text!r}\n{GRAMMAR}") from None
    if len(coords) != len(model.factors):
        raise UsageError(f"class {text!r} needs {len(model.factors)} component(s) on {model.label}")
    return model.O(*coords)


def parse_sheaf(model, text: str):
    text = text.strip()
    kind, _, rest = text.partition(":")
    try:
        if kind == "sum":
            return Sum(tuple(parse_sheaf(model, part) for part in rest.split("+")))
        if kind == "line":
            return Line(parse_class(model, rest))
        if kind in ("syz", "dualsyz"):
            L, sep, t = rest.partition(":")
            if not sep:
                raise UsageError(f"{kind} needs two classes\n{GRAMMAR}")
            cls = Syzygy if kind == "syz" else DualSyzygy
            return cls(parse_class(model, L), parse_class(model, t))
    except NotVeryAmpleError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"malformed sheaf expression {text!r}\n{GRAMMAR}")


def _model(label: str):
    if label.lower() in ABSTRACT_LABELS:
        raise AbstractModelError(
            f"{label} is an abstract model: use `classify curves-dual|curves-syz|surfaces-dual`")
    try:
        return model_from_label(label)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config file ([section] key = lo..hi)")
    common.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=LO..HI",
                        help="override one range")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "md"), default="json")

    parser = argparse.ArgumentParser(
        prog="ulrichsyz", description=__doc__.split("\n")[0],
        epilog=GRAMMAR + "\n\n" + CONFIG_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coh", parents=[common], help="cohomology vector of a sheaf",
                       epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--model", required=True)
    p.add_argument("--sheaf", required=True)

    p = sub.add_parser("check-ulrich", parents=[common], help="direct Ulrich test",
                       epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--model", required=True)
    p.add_argument("--sheaf", required=True)
    p.add_argument("--H", required=True, dest="H", help="polarization class")

    p = sub.add_parser("classify", parents=[common], help="run a classification solver",
                       epilog=CONFIG_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("which", choices=sorted(CLASSIFIERS))
    p.add_argument("--raw", action="store_true",
                   help="disable the geometric side constraints (diagnostic)")
    p.add_argument("--widen", type=int, default=1, help="stretch every range by this factor")

    p = sub.add_parser("verify-theorem", parents=[common], help="run every check",
                       epilog=CONFIG_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--golden", help="golden JSON to compare against (default: shipped file)")
    p.add_argument("--no-golden", action="store_true")
    p.add_argument("--widen", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _emit(doc: dict, args) -> None:
    text = dumps(doc) if args.format == "json" else render_markdown(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> dict:
    if args.command == "coh":
        model = _model(args.model)
        E = parse_sheaf(model, args.sheaf)
        results, checks = run_coh(E)
        return make_document("coh", {"model": args.model, "sheaf": args.sheaf}, results, checks)

    if args.command == "check-ulrich":
        model = _model(args.model)
        E = parse_sheaf(model, args.sheaf)
        H = parse_class(model, args.H)
        if not all(x >= 1 for x in H.coords):
            raise UsageError(f"polarization {args.H} is not very ample")
        results, checks = run_check_ulrich(E, H)
        cfg = {"model": args.model, "sheaf": args.sheaf, "H": args.H}
        return make_document("check-ulrich", cfg, results, checks)

    if args.widen < 1:
        raise ConfigError("--widen must be a positive integer")
    configs = load_config(args.config, args.set)
    if args.widen > 1:
        configs = {k: v.widened(args.widen) for k, v in configs.items()}

    if args.command == "classify":
        section, fn = CLASSIFIERS[args.which]
        results, checks = fn(configs[section], raw=args.raw)
        snap = config_snapshot(configs, [section])
        snap["raw"] = args.raw
        return make_document(f"classify {args.which}", snap, results, checks)

    results, checks = run_verify_theorem(configs, jobs=args.jobs)
    snap = config_snapshot(configs, sorted(configs))
    if not args.no_golden:
        path = args.golden or golden_path("verify-theorem")
        try:
            with open(path) as fh:
                golden = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read golden file {path}: {exc}") from exc
        if golden.get("manifest", {}).get("config") == snap:
            diff = compare_golden(results, golden)
            results["golden"] = {"differing_sections": diff}
            checks["golden"] = not diff
        else:
            results["golden"] = {"differing_sections": [], "skipped": "config differs from golden"}
    return make_document("verify-theorem", snap, results, checks)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = _run(args)
    except (UsageError, ConfigError, AbstractModelError) as exc:
        print(f"ulrichsyz: error: {exc}", file=sys.stderr)
        return 2
    _emit(doc, args)
    return 0 if doc["summary"]["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
