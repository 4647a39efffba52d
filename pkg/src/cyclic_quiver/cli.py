"""Command line: ``cyclic-quiver {verify,dims,matrix,strata,components,heis}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .config import ALL_SUITES, ConfigError, Geometry, RunConfig, load_params_file
from .heisenberg import heis_a
from .operators import chevalley
from .polynomial import matrix_of
from .quiver import CompositionError
from .runner import emit_components, emit_dims, emit_strata, run_suites

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("()[]").split(",") if x != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _common(p: argparse.ArgumentParser, max_degree: int = 4) -> None:
    p.add_argument("--n", type=int, help="rank of the cyclic quiver (inferred from --params when possible)")
    p.add_argument("--params", help="JSON file with {\"c\": [...]} or {\"genus\": g, \"d\": d, \"degL\": [...]}")
    p.add_argument("--max-degree", type=int, default=max_degree, dest="max_degree")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json", dest="fmt")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclic-quiver", description="Exact verification for the cyclic-quiver module.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    v = sub.add_parser("verify", help="run verification suites")
    _common(v)
    v.add_argument("--suites", default=",".join(ALL_SUITES), help="comma-separated subset of " + ",".join(ALL_SUITES))
    v.add_argument("--pmax", type=int, default=2)
    v.add_argument("--fold-k", type=int, default=2, dest="fold_k")
    v.add_argument("--cycles", type=int, default=1)
    v.add_argument("--rep-count", type=int, default=200, dest="rep_count")
    v.add_argument("--literal", action="store_true", help="check the commutator lemmas and semismall bound verbatim")

    d = sub.add_parser("dims", help="weight-space and stratum dimension table")
    _common(d)

    m = sub.add_parser("matrix", help="exact matrix of one operator on one piece")
    _common(m)
    m.add_argument("--op", choices=("e", "f", "h", "a"), required=True)
    m.add_argument("--i", type=int, default=0)
    m.add_argument("--p", type=int, default=1, help="mode of a_p for --op a")
    m.add_argument("--alpha", type=_int_list, required=True)

    s = sub.add_parser("strata", help="strata of one piece")
    _common(s)
    s.add_argument("--alpha", type=_int_list, required=True)

    c = sub.add_parser("components", help="components of the Hecke correspondence over one piece")
    _common(c)
    c.add_argument("--alpha", type=_int_list, required=True)
    c.add_argument("--i", type=int, default=0)

    h = sub.add_parser("heis", help="Heisenberg relations")
    _common(h, max_degree=8)
    h.add_argument("--pmax", type=int, default=2)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    kwargs: dict = {}
    if args.params:
        kwargs.update(load_params_file(args.params))
    if args.n is not None:
        if "n" in kwargs and kwargs["n"] != args.n:
            raise ConfigError(f"--n {args.n} disagrees with the params file (n={kwargs['n']})")
        kwargs["n"] = args.n
    if "n" not in kwargs:
        raise ConfigError("--n is required unless the params file determines it")
    if "c" not in kwargs and "geometry" not in kwargs:
        kwargs["geometry"] = Geometry(0, 1)
    alpha = getattr(args, "alpha", None)
    if alpha is not None and len(alpha) != kwargs["n"]:
        raise ConfigError(f"--alpha needs {kwargs['n']} entries, got {len(alpha)}")
    if alpha is not None and min(alpha) < 0:
        raise ConfigError("--alpha entries must be nonnegative")
    if getattr(args, "i", None) is not None and not 0 <= args.i < kwargs["n"]:
        raise ConfigError(f"--i must lie in 0..{kwargs['n'] - 1}")
    suites = ALL_SUITES
    if args.command == "verify":
        suites = tuple(s for s in args.suites.split(",") if s)
        kwargs.update(fold_k=args.fold_k, cycles=args.cycles, rep_count=args.rep_count, literal=args.literal)
    elif args.command == "heis":
        suites = ("heisenberg",)
    return RunConfig(
        max_degree=args.max_degree,
        pmax=getattr(args, "pmax", 2),
        suites=suites,
        fmt=args.fmt,
        workers=args.workers,
        seed=args.seed,
        **kwargs,
    )


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0])
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: json.dumps(v, sort_keys=True, ensure_ascii=False) if isinstance(v, (list, dict)) else v
                         for k, v in row.items()})
    return buf.getvalue()


def _text_rows(rows: list[dict]) -> str:
    return "".join("  ".join(f"{k}={v}" for k, v in row.items()) + "\n" for row in rows)


def render_table(rows: list[dict], fmt: str) -> str:
    if fmt == "csv":
        return _csv(rows)
    if fmt == "text":
        return _text_rows(rows)
    return dumps(rows)


def render_report(report: dict, timings: dict, fmt: str) -> str:
    """JSON and CSV carry no wall times, so identical configs give identical bytes; text shows them."""
    if fmt == "json":
        return dumps(report)
    rows = []
    for s in report["suites"]:
        row = {"suite": s["suite"], "status": s["status"], "tasks": s["tasks"],
               "checked": s["checked"], "failures": s["failures"]}
        if fmt == "text":
            row["seconds"] = f"{timings.get(s['suite'], 0.0):.2f}"
            if s.get("witness"):
                row["witness"] = json.dumps(s["witness"], sort_keys=True, ensure_ascii=False)
        else:
            row["witness"] = s.get("witness")
        rows.append(row)
    out = render_table(rows, fmt)
    if fmt == "text":
        out += f"overall: {report['status']}\n"
    return out


def _matrix(args, config: RunConfig) -> dict:
    params = config.params()
    if args.op == "a":
        if args.p == 0:
            raise ConfigError("--p must be nonzero")
        op = heis_a(args.p, params)
    else:
        op = chevalley(args.op, args.i, params)
    return matrix_of(op, args.alpha).to_json()


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = config_from_args(args)
    except (UsageError, ConfigError, CompositionError) as exc:
        print(f"cyclic-quiver: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command in ("verify", "heis"):
            report, timings = run_suites(config)
            _write(render_report(report, timings, config.fmt), args.output)
            if config.fmt != "text":
                for name, secs in timings.items():
                    print(f"{name}: {secs:.2f}s", file=sys.stderr)
            return EXIT_PASS if report["status"] == "pass" else EXIT_FAIL
        if args.command == "dims":
            rows = emit_dims(config.params(), config.max_degree)
        elif args.command == "strata":
            rows = emit_strata(args.alpha, config.n)
        elif args.command == "components":
            rows = emit_components(args.alpha, args.i, config.params())
        else:
            out = _matrix(args, config)
            _write(dumps(out) if config.fmt != "csv" else _csv(
                [{"row": r, "col": c, "value": v} for r, c, v in _triplets(out)]), args.output)
            return EXIT_PASS
        _write(render_table(rows, config.fmt), args.output)
        return EXIT_PASS
    except ConfigError as exc:
        print(f"cyclic-quiver: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _triplets(out: dict):
    if out.get("format") == "sparse":
        return out["entries"]
    return [(r, c, v) for r, row in enumerate(out["entries"]) for c, v in enumerate(row) if v != "0"]


if __name__ == "__main__":
    sys.exit(main())
