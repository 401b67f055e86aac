"""Command line front end.

Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage or
configuration error, 3 inconclusive within the budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .alcoves import alcove_svg
from .identities import run_identities
from .report import (ALL_METHODS, RunConfig, component_report, dumps, header, validate_report)
from .springer import SpectralParameters
from .weyl import (_scan_box, enumerate_F, in_fundamental_box, length, parse_element,
                   reduced_word, scan_window)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
STATUS_EXIT = {"pass": EXIT_OK, "fail": EXIT_MISMATCH, "inconclusive": EXIT_INCONCLUSIVE}


class UsageError(ValueError):
    pass


def _progress(enabled: bool, **event) -> None:
    if enabled:
        print(json.dumps(event, sort_keys=True), file=sys.stderr, flush=True)


def _methods(text: str) -> tuple[str, ...]:
    if text == "all":
        return ALL_METHODS
    names = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in names if m not in ALL_METHODS]
    if bad or not names:
        raise UsageError(f"unknown method(s) {bad}; choose from {', '.join(ALL_METHODS)} or all")
    return names


def _spectral(text: str | None, n: int) -> SpectralParameters | None:
    if text is None:
        return None
    vals = [v.strip() for v in text.split(",")]
    if len(vals) != n:
        raise UsageError(f"--spectral needs {n} values")
    return SpectralParameters(tuple(vals))


def config_from_args(args) -> RunConfig:
    try:
        return RunConfig(
            n=args.n, methods=_methods(args.method), seed=args.seed, trials=args.trials,
            precision=args.precision, spectral=_spectral(args.spectral, args.n),
            size_limit=args.size_limit, budget_seconds=args.budget_seconds, window=args.window,
            workers=args.workers, timings=args.timings, inject_fault=getattr(args, "inject_fault", False))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _element(text: str, n: int):
    try:
        return parse_element(text, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(doc: dict, args) -> None:
    validate_report(doc)
    text = dumps(doc)
    if args.json:
        Path(args.json).write_text(text)
    else:
        sys.stdout.write(text)


# subcommands

def cmd_enumerate_f(args) -> int:
    cfg = config_from_args(args)
    box, window = scan_window(cfg.n, _scan_box)
    if cfg.window is not None:
        at_window = _scan_box(cfg.n, cfg.window)
        if at_window != box:
            _progress(True, event="warning", message=f"window {cfg.window} finds {len(at_window)} "
                      f"elements, stable window {window} finds {len(box)}")
        box = at_window
    results = [{"x": w.encode(), "word": " ".join(f"s{k}" for k in reduced_word(w)),
                "length": length(w), "vertices": [list(v) for v in w.vertex_images()]}
               for w in sorted(box, key=lambda w: (length(w), w))]
    doc = header("enumerate-f", cfg)
    doc.update(status="pass", window=window, results=results,
               summary={"count": len(results), "stable_window": window})
    if args.json or args.format == "json":
        _emit(doc, args)
    else:
        validate_report(doc)
        for r in results:
            print(f"{r['x']}  length={r['length']}  word={r['word'] or '-'}")
        print(f"{len(results)} elements (window {window})")
    return EXIT_OK


def _summary(components: list[dict]) -> dict:
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for c in components:
        counts[c["status"]] += 1
    return {"components": len(components), **counts}


def _overall(components: list[dict], partial: bool) -> str:
    statuses = [c["status"] for c in components]
    if "fail" in statuses:
        return "fail"
    if partial or "inconclusive" in statuses:
        return "inconclusive"
    return "pass"


def _print_components(components: list[dict]) -> None:
    for c in components:
        print(f"[{c['status'].upper()}] x={c['x']} ({c['word'] or 'identity'}): "
              f"{len(c['bound'])} fixed points expected; "
              + ", ".join(f"{m}={'match' if ok else 'MISMATCH'}" for m, ok in sorted(c["match"].items())))


def cmd_fixed_points(args) -> int:
    cfg = config_from_args(args)
    if not args.x:
        raise UsageError("--x is required")
    x = _element(args.x, cfg.n)
    if not in_fundamental_box(x):
        raise UsageError(f"{x} is not in the fundamental box")
    comp = component_report(x, cfg, inject_fault=cfg.inject_fault)
    if args.y:
        y = _element(args.y, cfg.n).encode()
        comp["records"] = [r for r in comp["records"] if r["y"] == y]
    doc = header("fixed-points", cfg)
    status = _overall([comp], False)
    doc.update(status=status, results=[comp], summary=_summary([comp]))
    if args.json or args.format == "json":
        _emit(doc, args)
    else:
        validate_report(doc)
        _print_components([comp])
        for method, pts in sorted(comp["fixed_points"].items()):
            print(f"  {method}: {len(pts)} fixed points")
    return STATUS_EXIT[status]


def _component_task(payload):
    x_text, cfg, fault = payload
    return component_report(parse_element(x_text), cfg, inject_fault=fault)


def cmd_verify_theorem(args) -> int:
    cfg = config_from_args(args)
    if cfg.n > 3 and cfg.budget_seconds is None:
        raise UsageError("n > 3 needs --budget-seconds")
    deadline = None if cfg.budget_seconds is None else time.monotonic() + cfg.budget_seconds
    box = enumerate_F(cfg.n)
    tasks = [(x.encode(), cfg, cfg.inject_fault and k == 0) for k, x in enumerate(box)]
    progress = not args.quiet
    _progress(progress, event="start", command="verify-theorem", n=cfg.n, components=len(tasks))
    components, partial = [], False
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_component_task, t) for t in tasks]
            for fut in futures:
                remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
                try:
                    comp = fut.result(timeout=remaining)
                except TimeoutError:
                    partial = True
                    for f in futures:
                        f.cancel()
                    break
                components.append(comp)
                _progress(progress, event="component", x=comp["x"], status=comp["status"])
    else:
        for t in tasks:
            if deadline is not None and time.monotonic() > deadline:
                partial = True
                break
            comp = _component_task(t)
            components.append(comp)
            _progress(progress, event="component", x=comp["x"], status=comp["status"])
    components.sort(key=lambda c: (c["length"], c["x"]))
    status = _overall(components, partial)
    _progress(progress, event="done", status=status, completed=len(components), total=len(tasks))
    doc = header("verify-theorem", cfg)
    doc.update(status=status, partial=partial, results=components,
               summary={**_summary(components), "total": len(tasks)})
    if args.json or args.format == "json":
        _emit(doc, args)
    else:
        validate_report(doc)
        _print_components(components)
        print(f"verify-theorem n={cfg.n}: {status.upper()} "
              f"({len(components)}/{len(tasks)} components checked)")
    return STATUS_EXIT[status]


def cmd_identities(args) -> int:
    cfg = config_from_args(args)
    results, resolution = run_identities(n_max=cfg.n, seed=cfg.seed)
    ok = all(r["passed"] for r in results)
    doc = header("identities", cfg)
    doc.update(status="pass" if ok else "fail", results=results,
               summary={"c_prime_reading": resolution["chosen"],
                        "readings": resolution["outcome"],
                        "failures": sum(r["failures"] for r in results)})
    if args.json or args.format == "json":
        _emit(doc, args)
    else:
        validate_report(doc)
        print(f"inverse-constant reading: {resolution['chosen']} "
              f"(outcome per reading: {resolution['outcome']})")
        for r in results:
            mark = "PASS" if r["passed"] else "FAIL"
            print(f"[{mark}] {r['name']} n={r['n']}: {r['checks']} checks, {r['failures']} failures, "
                  f"degree bound {r['degree_bound']}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_alcove_svg(args) -> int:
    if args.n not in (2, 3):
        raise UsageError("alcove-svg supports n = 2 and n = 3")
    x = _element(args.x, args.n) if args.x else None
    if x is not None and not in_fundamental_box(x):
        raise UsageError(f"{x} is not in the fundamental box")
    svg = alcove_svg(args.n, x)
    if args.svg:
        Path(args.svg).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="rank (default 2)")
    common.add_argument("--x", help="component: canonical encoding or a word 's0 s1 ...'")
    common.add_argument("--y", help="restrict the report to one candidate fixed point")
    common.add_argument("--method", default="certificate",
                        help="comma separated subset of certificate,symbolic,randomized,oracle or 'all'")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--precision", type=int, default=None, help="oracle truncation degree")
    common.add_argument("--spectral", default=None, help="comma separated s values (default 0,1,3,7,..)")
    common.add_argument("--size-limit", type=int, default=12, help="largest symbolic determinant")
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--svg", metavar="PATH", help="write the SVG figure to PATH")
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--window", type=int, default=None, help="translation window for enumeration")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--timings", action="store_true", help="include wall-clock timings")
    common.add_argument("--quiet", action="store_true", help="no progress events on stderr")

    parser = argparse.ArgumentParser(prog="affspringer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate-f", parents=[common], help="list the fundamental box").set_defaults(
        func=cmd_enumerate_f)
    fp = sub.add_parser("fixed-points", parents=[common], help="fixed points of one component")
    fp.add_argument("--inject-fault", action="store_true", help="flip one verdict (self-test)")
    fp.set_defaults(func=cmd_fixed_points)
    vt = sub.add_parser("verify-theorem", parents=[common], help="sweep every component")
    vt.add_argument("--inject-fault", action="store_true", help="flip one verdict (self-test)")
    vt.set_defaults(func=cmd_verify_theorem)
    sub.add_parser("identities", parents=[common], help="identity suites").set_defaults(
        func=cmd_identities)
    sub.add_parser("alcove-svg", parents=[common], help="SVG alcove picture").set_defaults(
        func=cmd_alcove_svg)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
