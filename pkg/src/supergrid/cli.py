"""Command-line front end.

    supergrid solve    [INPUT] [--mode hamiltonian|longest|cycle]
    supergrid classify [INPUT]
    supergrid bound    [INPUT]
    supergrid verify   [--family O] [--max-vertices 16]
    supergrid enumerate [--family O] [--max-vertices 16]
    supergrid render   [INPUT] [--mode ...] [--svg-out PATH]

INPUT is a file of instance documents, one per line ("-" or nothing reads
stdin); ``--instance JSON`` or ``--shape LABEL --s X,Y --t X,Y`` give a single
instance instead.  ``--format structured`` prints one JSON object per input
line with the fields listed in docs/format.md.

Exit codes: 0 success, 2 input error, 3 no Hamiltonian path (or cycle), 4
contract violation or failed verification.  In batch mode the most severe
code wins (4 > 2 > 3 > 0).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .conditions import check_o_forbidden, check_rlc_forbidden, classify_longest_case, rlc_has_cycle
from .documents import DocumentError, InstanceDocument, from_dict, parse, parse_label, parse_point
from .grid import GridError, PathSeq, ShapeSpec, validate_path
from .oracle import DP_CAP, InstanceFilter, OracleError, brute_hamiltonian_exists, brute_longest_path, \
    enumerate_instances, enumerate_specs, oracle_cap
from .osolver import ContractViolation, o_hamiltonian_cycle, o_hamiltonian_result, o_longest_st_path, upper_bound
from .render import render_svg, render_text
from .subsolvers import SIDES, SubsolverError, lc_hamiltonian_cycle, lc_hamiltonian_st_path, \
    rect_hamiltonian_cycle, rect_hamiltonian_st_path, rlc_longest_st_path

EXIT_OK, EXIT_INPUT, EXIT_NO_PATH, EXIT_CONTRACT = 0, 2, 3, 4
_SEVERITY = {EXIT_OK: 0, EXIT_NO_PATH: 1, EXIT_INPUT: 2, EXIT_CONTRACT: 3}
MODES = ("hamiltonian", "longest", "cycle")


@dataclass
class Outcome:
    code: int
    record: dict
    text: str
    extra: dict = field(default_factory=dict)


def _point_list(path) -> list | None:
    return None if path is None else [[p[0], p[1]] for p in path]


def _pt(p) -> str:
    return f"({p[0]},{p[1]})"


def _error(command: str, line: int | None, exc: GridError, code: int) -> Outcome:
    record = {"command": command, "line": line, "status": "error",
              "error": {"code": exc.code, "field": getattr(exc, "field", None),
                        "message": getattr(exc, "detail", str(exc))}}
    where = f"line {line}: " if line is not None and not isinstance(exc, DocumentError) else ""
    return Outcome(code, record, f"error: {where}{exc}")


def _need_endpoints(doc: InstanceDocument) -> None:
    for name in ("s", "t"):
        if getattr(doc, name) is None:
            raise DocumentError("missing (required by this command)", field=name)


def _gate(spec: ShapeSpec, path: PathSeq, s=None, t=None, full: bool = True) -> None:
    """The self-check every emitted path passes."""
    check = validate_path(spec, path, s, t)
    if not check:
        raise ContractViolation("output", check.reason)
    if full and len(path) != spec.vertex_count():
        raise ContractViolation("output", "path does not cover the shape")


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _rlc_verdict(cond: str | None) -> dict:
    return {"class": "HP" if cond is None else cond, "condition": cond}


def _rlc_cycle(spec: ShapeSpec) -> PathSeq | None:
    if spec.family == "R":
        for side in ("bottom", "right", "top", "left"):
            try:
                return rect_hamiltonian_cycle(spec.m, spec.n, side)
            except SubsolverError:
                continue
        return None
    if not rlc_has_cycle(spec.region()):
        return None
    for side in SIDES:
        try:
            return lc_hamiltonian_cycle(spec, side)
        except SubsolverError:
            continue
    raise ContractViolation("cycle", f"no cycle built for {spec.label()}")


def solve_document(doc: InstanceDocument, mode: str) -> dict:
    """Result fields of one solve; raises on input errors and contract violations."""
    spec = doc.spec
    out = {"verdict": None, "condition": None, "bound": None, "length": None, "path": None,
           "closed": mode == "cycle", "trace": []}
    if mode == "cycle":
        cyc = o_hamiltonian_cycle(spec) if spec.family == "O" else _rlc_cycle(spec)
        if cyc is not None:
            _gate(spec, cyc)
            out.update(length=len(cyc), bound=spec.vertex_count(), path=_point_list(cyc))
        return out
    _need_endpoints(doc)
    s, t = doc.s, doc.t
    if spec.family == "O":
        res = o_longest_st_path(spec, s, t) if mode == "longest" else o_hamiltonian_result(spec, s, t)
        out.update(verdict=res.verdict.as_dict(), condition=res.verdict.condition, bound=res.bound,
                   trace=[r.as_dict() for r in res.subproblem_trace])
        path = res.path
        if mode == "longest" and (path is None or len(path) != res.bound):
            raise ContractViolation(res.verdict.cls, "longest path does not reach the bound")
    else:
        cond = check_rlc_forbidden(spec, s, t)
        out.update(verdict=_rlc_verdict(cond), condition=cond)
        if mode == "longest":
            path = rlc_longest_st_path(spec, s, t)
            out["bound"] = len(path)
        elif cond is None:
            try:
                path = (rect_hamiltonian_st_path(spec.m, spec.n, s, t) if spec.family == "R"
                        else lc_hamiltonian_st_path(spec, s, t))
            except SubsolverError as exc:
                raise ContractViolation("rlc", str(exc)) from None
            out["bound"] = len(path)
        else:
            path = None
    if path is not None:
        _gate(spec, path, s, t, full=mode == "hamiltonian")
        out.update(length=len(path), path=_point_list(path))
    return out


def _solve_text(doc: InstanceDocument, mode: str, res: dict) -> str:
    parts = [doc.describe(), f"mode={mode}"]
    if res["verdict"] is not None:
        parts.append(f"verdict={res['verdict']['class']}")
    if res["condition"] is not None:
        parts.append(f"condition={res['condition']}")
    if res["bound"] is not None:
        parts.append(f"bound={res['bound']}")
    if res["path"] is None:
        parts.append("path=none")
    else:
        parts.append(f"length={res['length']}")
        parts.append("path=" + " ".join(_pt(p) for p in res["path"]))
    return " ".join(parts)


def cmd_solve(doc: InstanceDocument, line: int | None, mode: str) -> Outcome:
    res = solve_document(doc, mode)
    status = "ok" if res["path"] is not None else "no-path"
    record = {"command": "solve", "line": line, "status": status, "instance": doc.as_dict(), "mode": mode, **res}
    return Outcome(EXIT_OK if status == "ok" else EXIT_NO_PATH, record, _solve_text(doc, mode, res),
                   {"path": res["path"]})


# ---------------------------------------------------------------------------
# classify / bound
# ---------------------------------------------------------------------------

def cmd_classify(doc: InstanceDocument, line: int | None) -> Outcome:
    _need_endpoints(doc)
    spec, s, t = doc.spec, doc.s, doc.t
    if spec.family == "O":
        verdict = classify_longest_case(spec, s, t).as_dict()
        cond = check_o_forbidden(spec, s, t)
    else:
        cond = check_rlc_forbidden(spec, s, t)
        verdict = _rlc_verdict(cond)
    record = {"command": "classify", "line": line, "status": "ok", "instance": doc.as_dict(),
              "verdict": verdict, "condition": cond, "hamiltonian": cond is None}
    text = f"{doc.describe()} verdict={verdict['class']} condition={cond or 'none'} " \
           f"hamiltonian={'yes' if cond is None else 'no'}"
    return Outcome(EXIT_OK, record, text)


def cmd_bound(doc: InstanceDocument, line: int | None) -> Outcome:
    _need_endpoints(doc)
    if doc.spec.family != "O":
        raise DocumentError("the bound is defined for O-shapes only", field="family")
    bound, verdict = upper_bound(doc.spec, doc.s, doc.t)
    record = {"command": "bound", "line": line, "status": "ok", "instance": doc.as_dict(),
              "verdict": verdict.as_dict(), "bound": bound}
    return Outcome(EXIT_OK, record, f"{doc.describe()} bound={bound} verdict={verdict.cls}")


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------

def cmd_render(doc: InstanceDocument, line: int | None, mode: str | None) -> Outcome:
    path = list(doc.path) if doc.path is not None else None
    s, t = doc.s, doc.t
    if path is None and mode is not None:
        path = solve_document(doc, mode)["path"]
    try:
        art = render_text(doc.spec, path, s, t)
    except GridError as exc:
        if exc.code == "invalid-path":
            raise DocumentError(str(exc), field="path") from None
        raise
    record = {"command": "render", "line": line, "status": "ok", "instance": doc.as_dict(), "text": art}
    return Outcome(EXIT_OK, record, art.rstrip("\n"), {"svg": (doc.spec, path, s, t)})


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_pair(spec: ShapeSpec, s, t, budget: int) -> dict:
    doc = InstanceDocument(spec, s, t)
    expected = brute_hamiltonian_exists(spec, s, t)
    record = {"command": "verify", "instance": doc.as_dict(), "hamiltonian": {"expected": expected, "found": None},
              "longest": {"length": None, "bound": None, "brute": None}, "path_valid": None, "pass": False,
              "reason": None}
    try:
        brute, _ = brute_longest_path(spec, s, t, budget)
    except OracleError as exc:
        record["reason"] = f"oracle: {exc}"
        return record
    record["longest"]["brute"] = brute
    try:
        ham = solve_document(doc, "hamiltonian")
        lon = solve_document(doc, "longest")
    except GridError as exc:
        record["reason"] = str(exc)
        return record
    found = ham["path"] is not None
    record["hamiltonian"]["found"] = found
    record["longest"]["length"] = lon["length"]
    record["longest"]["bound"] = lon["bound"]
    # solve_document already gated both paths through validate_path
    record["path_valid"] = True
    reasons = []
    if found != expected:
        reasons.append("existence differs from the oracle")
    if not (lon["length"] == lon["bound"] == brute):
        reasons.append("longest length, bound and oracle disagree")
    record["pass"] = not reasons
    record["reason"] = "; ".join(reasons) or None
    return record


def _verify_spec(args: tuple) -> list[dict]:
    label_fields, budget = args
    spec = ShapeSpec(**label_fields)
    cells = sorted(spec.cells())
    return [_verify_pair(spec, s, t, budget) for i, s in enumerate(cells) for t in cells[i + 1:]]


def _verify_text(rec: dict) -> str:
    doc = from_dict(rec["instance"])
    ham, lon = rec["hamiltonian"], rec["longest"]
    head = "PASS" if rec["pass"] else "FAIL"
    text = (f"{head} {doc.describe()} hp={'yes' if ham['found'] else 'no'} "
            f"length={lon['length']} bound={lon['bound']} brute={lon['brute']}")
    return text if rec["pass"] else f"{text} reason={rec['reason']}"


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

def _families(text: str) -> tuple[str, ...]:
    fams = tuple(dict.fromkeys(f.strip().upper() for f in text.split(",") if f.strip()))
    bad = [f for f in fams if f not in ("R", "L", "C", "O")]
    if bad or not fams:
        raise DocumentError(f"unknown family {','.join(bad) or text!r}", field="family")
    return fams


def _documents(args) -> Iterator[tuple[int | None, str | None, InstanceDocument | None]]:
    """(line number, raw text, parsed doc) per instance; single-instance flags come first."""
    if args.shape is not None:
        spec = parse_label(args.shape)
        s = parse_point(args.s, "s") if args.s else None
        t = parse_point(args.t, "t") if args.t else None
        doc = from_dict({**InstanceDocument(spec).as_dict(),
                         **({"s": list(s)} if s else {}), **({"t": list(t)} if t else {})})
        yield None, None, doc
        return
    if args.instance is not None:
        yield None, args.instance, None
        return
    stream = sys.stdin if args.input in (None, "-") else open(args.input, encoding="utf-8")
    try:
        for i, raw in enumerate(stream, 1):
            if raw.strip():
                yield i, raw, None
    finally:
        if stream is not sys.stdin:
            stream.close()


def _run_one(job: tuple) -> Outcome:
    command, line, raw, doc, options = job
    try:
        if doc is None:
            doc = parse(raw, line)
        if command == "solve":
            return cmd_solve(doc, line, options["mode"])
        if command == "classify":
            return cmd_classify(doc, line)
        if command == "bound":
            return cmd_bound(doc, line)
        return cmd_render(doc, line, options.get("mode"))
    except ContractViolation as exc:
        return _error(command, line, exc, EXIT_CONTRACT)
    except DocumentError as exc:
        if exc.line is None and line is not None:
            exc = DocumentError(exc.detail, line, exc.field)
        return _error(command, line, exc, EXIT_INPUT)
    except GridError as exc:
        return _error(command, line, exc, EXIT_INPUT)


def _map(fn: Callable, jobs: Iterable, workers: int) -> Iterator:
    if workers <= 1:
        yield from map(fn, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, jobs, chunksize=8)


def _emit(args, record: dict, text: str) -> None:
    if args.format == "structured":
        sys.stdout.write(json.dumps(record) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _worse(a: int, b: int) -> int:
    return a if _SEVERITY[a] >= _SEVERITY[b] else b


def _instances_command(args) -> int:
    options = {"mode": args.mode}
    code = EXIT_OK
    try:
        docs = list(_documents(args))
    except DocumentError as exc:
        out = _error(args.command, None, exc, EXIT_INPUT)
        _emit(args, out.record, out.text)
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(f"error: cannot read input: {exc}\n")
        return EXIT_INPUT
    if args.command == "render" and args.svg_out and len(docs) != 1:
        sys.stderr.write("error: --svg-out needs exactly one instance\n")
        return EXIT_INPUT
    jobs = [(args.command, line, raw, doc, options) for line, raw, doc in docs]
    for out in _map(_run_one, jobs, args.jobs):
        if out.record["status"] == "error" and args.format == "text":
            sys.stderr.write(out.text + "\n")
        else:
            _emit(args, out.record, out.text)
        code = _worse(out.code, code)
        if args.command == "render" and args.svg_out and out.code == EXIT_OK:
            with open(args.svg_out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(render_svg(*out.extra["svg"]))
    return code


def _cmd_verify(args) -> int:
    try:
        families = _families(args.family)
    except DocumentError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    cap = min(oracle_cap(), DP_CAP)
    if args.max_vertices > cap:
        msg = f"cap-exceeded: --max-vertices {args.max_vertices} is above the oracle cap {cap}"
        _emit(args, {"command": "verify", "status": "error",
                     "error": {"code": "cap-exceeded", "field": "max-vertices", "message": msg}}, f"error: {msg}")
        return EXIT_INPUT
    flt = InstanceFilter(max_vertices=args.max_vertices, families=families)
    specs = [({"family": sp.family, "m": sp.m, "n": sp.n, "k": sp.k, "l": sp.l,
               "a": sp.a, "b": sp.b, "c": sp.c, "d": sp.d}, args.budget) for sp in enumerate_specs(flt)]
    total = passed = 0
    for records in _map(_verify_spec, specs, args.jobs):
        for rec in records:
            total += 1
            passed += rec["pass"]
            _emit(args, rec, _verify_text(rec))
    failed = total - passed
    summary = {"command": "verify", "summary": {"families": list(families), "max_vertices": args.max_vertices,
                                                "instances": total, "passed": passed, "failed": failed}}
    _emit(args, summary, f"checked {total} instances: {passed} passed, {failed} failed")
    return EXIT_CONTRACT if failed else EXIT_OK


def _cmd_enumerate(args) -> int:
    try:
        flt = InstanceFilter(max_vertices=args.max_vertices, max_m=args.max_m, max_n=args.max_n,
                             families=_families(args.family))
    except GridError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    if args.shapes_only:
        for sp in enumerate_specs(flt):
            doc = InstanceDocument(sp)
            _emit(args, doc.as_dict(), doc.describe())
        return EXIT_OK
    for sp, s, t in enumerate_instances(flt):
        doc = InstanceDocument(sp, s, t)
        _emit(args, doc.as_dict(), doc.describe())
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batch input")
    p.add_argument("--seed", type=int, default=None, help="reserved; every computation is deterministic")
    p.add_argument("--budget", type=int, default=0, metavar="STEPS",
                   help="step budget of the brute-force oracle (0 = unlimited)")


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="file of instance documents, one per line ('-' = stdin)")
    p.add_argument("--instance", help="a single instance document")
    p.add_argument("--shape", help="a shape label such as O(5,3;3,1;1,1,1,1)")
    p.add_argument("--s", help="x,y of s (with --shape)")
    p.add_argument("--t", help="x,y of t (with --shape)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supergrid", description="Hamiltonian and longest paths in "
                                     "rectangular supergrid graphs with one rectangular hole.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("solve", help="build a Hamiltonian path, longest path or Hamiltonian cycle")
    _instance_args(p)
    p.add_argument("--mode", choices=MODES, default="longest")
    _common(p)
    for name, text in (("classify", "report the case class and any forbidden condition"),
                       ("bound", "report the upper bound on the longest (s, t)-path")):
        p = sub.add_parser(name, help=text)
        _instance_args(p)
        _common(p)
        p.set_defaults(mode=None)
    p = sub.add_parser("render", help="draw a shape and a path as text (and optionally SVG)")
    _instance_args(p)
    p.add_argument("--mode", choices=MODES, default=None, help="solve first when the document has no path")
    p.add_argument("--svg-out", metavar="PATH")
    _common(p)
    for name, text in (("verify", "check the solvers against the brute-force oracles"),
                       ("enumerate", "list instances as documents")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--family", default="O", help="comma-separated subset of R,L,C,O")
        p.add_argument("--max-vertices", type=int, default=16)
        _common(p)
        if name == "enumerate":
            p.add_argument("--max-m", type=int, default=24)
            p.add_argument("--max-n", type=int, default=24)
            p.add_argument("--shapes-only", action="store_true", help="list shapes without endpoint pairs")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        sys.stderr.write("error: --jobs must be at least 1\n")
        return EXIT_INPUT
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "enumerate":
        return _cmd_enumerate(args)
    return _instances_command(args)


if __name__ == "__main__":
    sys.exit(main())
