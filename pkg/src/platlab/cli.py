"""
Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage, file or parse error,
3 the spec failed validation.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor

from . import curves, labyrinth, oracle, plat, render

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INVALID = 3

CHECKS = ("n-inequalities", "crossing-convention", "flower", "signatures", "oracle-compare")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# -- helpers --------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    """Parse "3,4,5" or "3-6" (or a mix) into a sorted list."""
    out: set[int] = set()
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part[1:]:
                lo, hi = part.split("-", 1) if not part.startswith("-") else (part, part)
                out.update(range(int(lo), int(hi) + 1))
            elif part:
                out.add(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return sorted(out)


def _check_list(text: str) -> list[str]:
    names = [c.strip() for c in text.split(",") if c.strip()]
    if names == ["all"]:
        return list(CHECKS)
    unknown = [c for c in names if c not in CHECKS]
    if unknown or not names:
        raise argparse.ArgumentTypeError(f"unknown check(s) {unknown}; choose from {', '.join(CHECKS)}")
    return names


def _read_spec(path: str) -> plat.PlatSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return plat.loads(text)
    except ValueError as exc:
        raise CliError(f"cannot parse {path}: {exc}") from None


def _spec_from_args(args) -> plat.PlatSpec:
    if getattr(args, "spec", None):
        return _read_spec(args.spec)
    if args.b is None:
        raise CliError("give a spec file or --b")
    try:
        if getattr(args, "k", None) is not None:
            return plat.family_for_k(args.b, args.k, abs(args.t))
        if args.h is not None and args.h != 2 * args.b - 4:
            return _uniform_grid(args.b, args.h, args.t)
        if args.b < 3:
            raise ValueError(f"b must be >= 3 (got {args.b})")
        return plat.uniform_square(args.b, args.t)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _uniform_grid(b: int, h: int, t: int) -> plat.PlatSpec:
    if b < 3 or h < 1:
        raise ValueError(f"need b >= 3 and h >= 1 (got b={b}, h={h})")
    return plat.PlatSpec(b, h, tuple(
        tuple(plat.row_sign(r) * abs(t) for _ in range(plat.row_width(b, r))) for r in range(1, h)))


def _require(spec: plat.PlatSpec, strict: bool) -> None:
    report = plat.validate(spec, strict)
    if not report.ok:
        raise CliError("invalid spec: " + "; ".join(report.violations), EXIT_INVALID)


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            with open(out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


# -- checks ---------------------------------------------------------------

def run_check(name: str, spec: plat.PlatSpec, strict: bool) -> labyrinth.CheckReport:
    sid = spec.spec_id()
    try:
        if name == "n-inequalities":
            return labyrinth.verify_N_inequalities(labyrinth.chain_recurrence(spec, strict), sid)
        if name == "crossing-convention":
            return labyrinth.verify_crossing_convention(labyrinth.chain_recurrence(spec, strict), sid)
        if name == "flower":
            return labyrinth.verify_flower(spec, strict)
        if name == "signatures":
            return labyrinth.verify_signatures(spec.b)
        if name == "oracle-compare":
            return labyrinth.verify_oracle_agreement(spec, strict)
    except (labyrinth.ChainTemplateError, oracle.OracleBudgetError, ValueError) as exc:
        return labyrinth.CheckReport(name, sid, False, [f"{type(exc).__name__}: {exc}"])
    raise KeyError(name)


def _reports_text(reports) -> str:
    return "\n".join(r.to_text() for r in reports)


def _reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "spec-id", "result", "witnesses"])
    for r in reports:
        w.writerow([r.check, r.spec_id, "pass" if r.passed else "fail", "; ".join(map(str, r.witnesses))])
    return buf.getvalue()


# -- commands -------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.b is None:
        raise CliError("gen needs --b")
    if args.k is not None and args.h is not None:
        raise CliError("--k and --h cannot be combined")
    _emit(plat.dumps(_spec_from_args(args)), args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    specs = [_read_spec(p) for p in args.specs] if args.specs else [_spec_from_args(args)]
    for s in specs:
        if not plat.validate(s, strict=False).shape_ok:
            raise CliError(f"invalid spec {s.spec_id()}: " + "; ".join(plat.validate(s, False).violations),
                           EXIT_INVALID)
    if args.format == "csv":
        _emit(plat.invariants_csv(specs), args.out)
    else:
        blocks = []
        for s in specs:
            row = plat.invariant_row(s)
            row["crossings"] = s.crossing_count()
            blocks.append("".join(f"{k}: {v}\n" for k, v in row.items()))
        _emit("\n".join(blocks), args.out)
    return EXIT_OK


def cmd_propagate(args) -> int:
    spec = _spec_from_args(args)
    _require(spec, args.strict)
    if args.engine == "oracle":
        try:
            text = oracle.dumps(labyrinth.oracle_propagate(spec, args.strict))
        except oracle.OracleBudgetError as exc:
            raise CliError(str(exc), EXIT_CHECK_FAILED) from None
    else:
        text = curves.dumps(labyrinth.propagate(spec, args.strict))
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _spec_from_args(args)
    _require(spec, args.strict)
    reports = [run_check(name, spec, args.strict) for name in args.checks]
    text = _reports_csv(reports) if args.format == "csv" else _reports_text(reports)
    _emit(text, args.out)
    return EXIT_OK if all(reports) else EXIT_CHECK_FAILED


def cmd_render(args) -> int:
    spec = _spec_from_args(args)
    try:
        plan = render.RenderPlan(args.target, args.width, args.height, not args.no_boxes)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _require(spec, args.target == "labyrinth")
    try:
        svg = render.render(spec, plan)
    except labyrinth.ChainTemplateError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    _emit(svg, args.out)
    return EXIT_OK


def _sweep_one(job):
    b, t, checks, strict = job
    spec = plat.uniform_square(b, t)
    row = plat.invariant_row(spec)
    for name in checks:
        row[name] = "pass" if run_check(name, spec, strict) else "fail"
    return row


def cmd_sweep(args) -> int:
    bs = args.b or [3, 4, 5, 6]
    ts = args.t or [2, 3]
    if any(b < 3 for b in bs) or any(abs(t) < 2 for t in ts):
        raise CliError("sweep needs b >= 3 and |t| >= 2")
    jobs = [(b, t, args.checks, True) for b in bs for t in ts]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    columns = list(plat.CSV_COLUMNS) + list(args.checks)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = "\n".join(" ".join(f"{c}={row[c]}" for c in columns) for row in rows) + "\n"
    _emit(text, args.out)
    ok = all(row[c] == "pass" for row in rows for c in args.checks)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# -- parser ---------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_spec_source(p, positional: bool = True):
    if positional:
        p.add_argument("spec", nargs="?", help="spec file (JSON)")
    p.add_argument("--b", type=int, help="bridge number, builds a spec when no file is given")
    p.add_argument("--h", type=int, help="height (defaults to 2b-4)")
    p.add_argument("--t", type=int, default=2, help="half twists per region (default 2)")
    p.add_argument("--k", type=int, help="component count, uses the k-component family")


def _add_strict(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strict", dest="strict", action="store_true", default=True,
                   help="require square, alternating, |t| >= 2 (default)")
    g.add_argument("--lax", dest="strict", action="store_false", help="only check the grid shape")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="platlab", description="Plat links, curve propagation and labyrinth checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a spec file")
    _add_spec_source(p, positional=False)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("invariants", help="components, bridge distance, validity")
    p.add_argument("specs", nargs="*")
    _add_spec_source(p, positional=False)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("propagate", help="push the boundary curve through the plat")
    _add_spec_source(p)
    _add_strict(p)
    p.add_argument("--engine", choices=("coords", "oracle"), default="coords")
    p.add_argument("--out")
    p.set_defaults(func=cmd_propagate)

    p = sub.add_parser("verify", help="run labyrinth checks")
    _add_spec_source(p)
    _add_strict(p)
    p.add_argument("--checks", type=_check_list, default=list(CHECKS),
                   help="comma list from: " + ", ".join(CHECKS))
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="SVG of the plat or the labyrinth")
    _add_spec_source(p)
    p.add_argument("--target", choices=("plat", "labyrinth"), default="plat")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=600)
    p.add_argument("--no-boxes", action="store_true", help="plain multiplicity labels")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("sweep", help="checks over uniform square specs")
    p.add_argument("--b", type=_int_list, help="e.g. 3-6 or 3,5")
    p.add_argument("--t", type=_int_list, help="e.g. 2,3")
    p.add_argument("--checks", type=_check_list, default=["n-inequalities", "crossing-convention", "signatures"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "csv"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"platlab: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
