"""Command-line interface.

Input documents contain statements, one per line (a statement may continue
onto following lines):

    ring F101[x1..x5]/(x1^2-x2*x3, x4^2, ...)
    ideal (x1+x2+x4, x2+x3+x5)

Exit status: 0 success, 1 negative result under --assert (or a failed
regression check), 2 input error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field as dc_field

from . import __version__
from .errors import FieldError, InternalInconsistency, ParseError, QciError
from .fields import Field, parse_field
from .generic import run_experiment
from .groebner import buchberger
from .homotopy import ambient_betti, degree2_center, deviations, is_complete_intersection, minimal_resolution, poincare_from_koszul, quadratic_dual
from .koszul import build_koszul, ezd_search, homology_report, is_certified, qci_check
from .polynomials import GREVLEX, LEX, MonomialOrder, PolyRing, Polynomial
from .quotient import GradedQuotientRing, loewy_length
from .regression import run_all

SCHEMA = "qcitools.report/1"


# ---------------------------------------------------------------------------
# input grammar


@dataclass
class JobSpec:
    command: str
    field: Field | None = None
    ring: PolyRing | None = None
    relations: list = dc_field(default_factory=list)
    ideal: list | None = None
    source: str = ""
    flags: dict = dc_field(default_factory=dict)


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _split_top(text: str, start: int, end: int) -> list[tuple[int, int]]:
    """Comma-separated spans of text[start:end] at parenthesis depth zero."""
    spans, depth, s = [], 0, start
    for i in range(start, end):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            spans.append((s, i))
            s = i + 1
    spans.append((s, end))
    return spans


def _matching_paren(text: str, open_at: int) -> int:
    depth = 0
    for i in range(open_at, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i
    line, col = _position(text, open_at)
    raise ParseError("unbalanced '('", line, col)


def _parse_polys(text: str, start: int, end: int, ring: PolyRing) -> list[Polynomial]:
    out = []
    for a, b in _split_top(text, start, end):
        frag = text[a:b]
        if not frag.strip():
            if start == end or text[start:end].strip() == "":
                return []
            line, col = _position(text, a)
            raise ParseError("empty polynomial", line, col)
        flat = frag.replace("\n", " ")
        try:
            out.append(ring.parse(flat))
        except ParseError as exc:
            msg = str(exc).rsplit(" (line", 1)[0]
            line, col = _position(text, a + exc.column - 1)
            raise ParseError(msg, line, col) from None
    return out


_VAR_RANGE = re.compile(r"^([A-Za-z_]+)(\d+)\.\.\1?(\d+)$")
_VAR_NAME = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


def _parse_vars(text: str, start: int, end: int) -> tuple[str, ...]:
    names: list[str] = []
    for a, b in _split_top(text, start, end):
        item = text[a:b].strip()
        line, col = _position(text, a + len(text[a:b]) - len(text[a:b].lstrip()))
        m = _VAR_RANGE.match(item)
        if m:
            lo, hi = int(m.group(2)), int(m.group(3))
            if hi < lo:
                raise ParseError(f"empty variable range {item!r}", line, col)
            names.extend(f"{m.group(1)}{i}" for i in range(lo, hi + 1))
        elif _VAR_NAME.match(item):
            names.append(item)
        else:
            raise ParseError(f"bad variable {item!r}", line, col)
    if len(set(names)) != len(names):
        raise ParseError("repeated variable name", *_position(text, start))
    if not names:
        raise ParseError("no variables", *_position(text, start))
    return tuple(names)


def parse_input(text: str, command: str = "", order: MonomialOrder = GREVLEX) -> JobSpec:
    """Parse ``ring`` and ``ideal`` statements into a JobSpec."""
    job = JobSpec(command, source=text)
    pos = 0
    n = len(text)
    stmt = re.compile(r"\s*(ring|ideal)\b")
    while pos < n:
        if not text[pos:].strip():
            break
        if text[pos:].lstrip().startswith("#"):
            nl = text.find("\n", pos)
            pos = n if nl < 0 else nl + 1
            continue
        m = stmt.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError("expected 'ring' or 'ideal'", *_position(text, pos + skip))
        kw = m.group(1)
        pos = m.end()
        if kw == "ring":
            if job.ring is not None:
                raise ParseError("second ring statement", *_position(text, m.start(1)))
            lb = text.find("[", pos)
            if lb < 0:
                raise ParseError("expected '[' after the field", *_position(text, pos))
            fname = text[pos:lb].strip()
            try:
                field = parse_field(fname)
            except FieldError:
                raise ParseError(f"unknown field {fname!r}", *_position(text, pos + len(text[pos:lb]) - len(text[pos:lb].lstrip()))) from None
            rb = text.find("]", lb)
            if rb < 0:
                raise ParseError("missing ']'", *_position(text, lb))
            names = _parse_vars(text, lb + 1, rb)
            ring = PolyRing(len(names), field, order, names)
            rest = rb + 1
            while rest < n and text[rest] in " \t":
                rest += 1
            rels: list = []
            if rest < n and text[rest] == "/":
                rest += 1
                while rest < n and text[rest] in " \t\n":
                    rest += 1
                if rest >= n or text[rest] != "(":
                    raise ParseError("expected '(' after '/'", *_position(text, rest))
                close = _matching_paren(text, rest)
                rels = _parse_polys(text, rest + 1, close, ring)
                rest = close + 1
            job.field, job.ring, job.relations = field, ring, rels
            pos = rest
        else:
            if job.ring is None:
                raise ParseError("'ideal' needs a preceding 'ring'", *_position(text, m.start(1)))
            op = pos
            while op < n and text[op] in " \t":
                op += 1
            if op >= n or text[op] != "(":
                raise ParseError("expected '(' after 'ideal'", *_position(text, op))
            close = _matching_paren(text, op)
            job.ideal = _parse_polys(text, op + 1, close, job.ring)
            pos = close + 1
        # anything else on the line is an error
        nl = text.find("\n", pos)
        tail_end = n if nl < 0 else nl
        tail = text[pos:tail_end]
        if tail.strip() and not tail.strip().startswith("#"):
            skip = len(tail) - len(tail.lstrip())
            raise ParseError(f"unexpected {tail.strip()[0]!r}", *_position(text, pos + skip))
        pos = tail_end
    return job


# ---------------------------------------------------------------------------
# commands


def _need_ring(job: JobSpec):
    if job.ring is None:
        raise QciError("a 'ring' statement is required")
    if not job.relations:
        raise QciError("the ring needs at least one relation")
    return GradedQuotientRing(job.relations)


def _need_ideal(job: JobSpec, R):
    if job.ideal is None:
        raise QciError("an 'ideal' statement is required")
    return [R.element(g) for g in job.ideal]


def _capability_notes(job: JobSpec) -> list[str]:
    F = job.field
    if F is not None and F.characteristic == 2:
        return ["characteristic 2: Hessian, quadric and commutant computations are unavailable"]
    return []


def cmd_hilbert(job: JobSpec, args) -> tuple[dict, str, bool]:
    R = _need_ring(job)
    doc = {"hilbert": R.hilbert, "dim": R.dim, "loewy_length": loewy_length(R)}
    text = [f"Hilbert series: {R.hilbert}", f"dimension: {R.dim}", f"Loewy length: {doc['loewy_length']}"]
    if job.ideal is not None:
        I = R.ideal(_need_ideal(job, R))
        doc["quotient_hilbert"] = I.quotient_hilbert()
        doc["nu"] = I.nu()
        text.append(f"Hilbert series of R/I: {doc['quotient_hilbert']}")
        text.append(f"minimal generators of I: {doc['nu']}")
    return doc, "\n".join(text), True


def cmd_gb(job: JobSpec, args) -> tuple[dict, str, bool]:
    if job.ring is None or not job.relations:
        raise QciError("a ring with relations is required")
    gb = buchberger(job.relations)
    doc = {"groebner_basis": gb.as_strings(), "zero_dimensional": gb.is_zero_dimensional()}
    lines = ["reduced Groebner basis:"] + [f"  {g}" for g in doc["groebner_basis"]]
    if gb.is_zero_dimensional() and all(g.is_homogeneous() for g in job.relations):
        hf = gb.hilbert_function()
        doc["standard_monomials"] = {
            str(d): [str(job.ring.monomial(m)) for m in gb.standard_monomials(d)] for d in range(len(hf))
        }
        for d, ms in doc["standard_monomials"].items():
            lines.append(f"degree {d}: {', '.join(ms)}")
    return doc, "\n".join(lines), True


def cmd_koszul(job: JobSpec, args) -> tuple[dict, str, bool]:
    R = _need_ring(job)
    K = build_koszul(R, _need_ideal(job, R))
    rep = homology_report(K)
    doc = rep.to_dict()
    doc["euler_characteristic"] = rep.euler_characteristic()
    lines = [
        f"Z: {rep.totals('z')}",
        f"B: {rep.totals('b')}",
        f"H: {rep.totals('h')}",
        f"Euler characteristic: {doc['euler_characteristic']}",
    ]
    for p in range(1, K.n + 1):
        lines.append(f"Z_{p} by degree: {rep.per_degree('z', p)}  B_{p}: {rep.per_degree('b', p)}  H_{p}: {rep.per_degree('h', p)}")
    return doc, "\n".join(lines), True


def cmd_qci(job: JobSpec, args) -> tuple[dict, str, bool]:
    R = _need_ring(job)
    res = qci_check(R, _need_ideal(job, R))
    doc = res.to_dict()
    ok = is_certified(res)
    if res.ok:
        lines = [
            "q.c.i.: " + ("certified" if ok else "homology checks pass, duality evidence fails"),
            f"nu(I) = {len(res.f)}, grade = {res.grade}, H_1 generator degrees = {res.cycle_degrees}",
            f"Delta = {res.delta}",
        ]
        lines += [f"  {k}: {v}" for k, v in sorted(res.evidence.items())]
        for p, v in sorted(res.lambda_evidence.items()):
            lines.append(f"  lambda_{p}: {v}")
    else:
        lines = [f"not q.c.i.: {res.check} at {res.bidegree}: {res.detail}"]
    return doc, "\n".join(lines), ok


def cmd_ezd(job: JobSpec, args) -> tuple[dict, str, bool]:
    R = _need_ring(job)
    ideal = R.ideal(_need_ideal(job, R)) if job.ideal is not None else None
    res = ezd_search(R, ideal, deg_bound=args.deg_bound, mode=args.mode)
    doc = res.to_dict()
    if args.mode == "symbolic":
        found = not res.certified
        lines = [f"no exact zero-divisor (symbolic certificate): {res.certified}"]
        for s in doc["splits"]:
            lines.append(f"factor degrees {s['factor_degrees']}: containment exponent {s['containment_exponent']}")
            lines += [f"  {e}" for e in s["expressions"]]
    else:
        found = bool(res.pairs)
        lines = [f"candidates by degree: {res.candidates}", f"exact pairs found: {len(res.pairs)}"]
        lines += [f"  {x}  |  {y}" for x, y in res.pairs[:20]]
    return doc, "\n".join(lines), found


def cmd_dual(job: JobSpec, args) -> tuple[dict, str, bool]:
    R = _need_ring(job)
    D = quadratic_dual(R)
    dims = list(D.dims)
    cdim, _ = degree2_center(D)
    P = poincare_from_koszul(R.hilbert, 6).as_ints()
    eps = deviations(P, 5) if all(c >= 0 for c in P) else None
    doc = {"dual_dims": dims, "degree2_center_dim": cdim, "poincare_if_koszul": P, "deviations": eps}
    lines = [
        f"quadratic dual dimensions (degrees 1..3): {dims}",
        f"degree-2 commutant dimension: {cdim}",
        f"Poincare series assuming Koszulness: {P}",
        f"deviations: {eps}",
    ]
    return doc, "\n".join(lines), True


def cmd_resolve(job: JobSpec, args) -> tuple[dict, str, bool]:
    R = _need_ring(job)
    J = R.ideal(_need_ideal(job, R)) if job.ideal is not None else R.maximal_ideal()
    table = minimal_resolution(R, J, args.hd_bound)
    doc = table.to_dict()
    doc["linear"] = table.is_linear()
    return doc, table.render(), True


def cmd_betti_ambient(job: JobSpec, args) -> tuple[dict, str, bool]:
    R = _need_ring(job)
    b = ambient_betti(R)
    graded = ambient_betti(R, graded=True)
    ci = is_complete_intersection(R)
    doc = {"betti": b, "graded": [[i, j, v] for (i, j), v in graded.items()], "complete_intersection": ci}
    lines = [f"betti numbers over the ambient ring: {b}", f"complete intersection: {ci}"]
    return doc, "\n".join(lines), ci


def cmd_quadrics(job: JobSpec, args) -> tuple[dict, str, bool]:
    rep = run_experiment(args.n, args.prime, args.trials, args.seed, pencil_mode=args.pencil_mode)
    doc = rep.to_dict()
    s = rep.summary()
    lines = [f"n={args.n} p={args.prime} trials={args.trials} seed={args.seed}"]
    lines += [f"  {k}: {v}" for k, v in s.items()]
    ok = not s["anomalies"]
    if args.n <= 4:
        ok = s["verified_linear_exact_pairs"] == len(rep.records)
    return doc, "\n".join(lines), ok


def cmd_paper(job: JobSpec, args) -> tuple[dict, str, bool]:
    only = [int(x) for x in args.only.split(",")] if args.only else None
    checks = run_all(args.prime, only)
    doc = {"checks": [c.to_dict() for c in checks], "passed": sum(c.passed for c in checks), "total": len(checks)}
    lines = [c.line() for c in checks]
    lines.append(f"{doc['passed']}/{doc['total']} checks passed")
    return doc, "\n".join(lines), all(c.passed for c in checks)


COMMANDS = {
    "hilbert": (cmd_hilbert, "Hilbert series, dimension and Loewy length"),
    "gb": (cmd_gb, "reduced Groebner basis and standard monomials"),
    "koszul": (cmd_koszul, "Koszul homology of an ideal's generators"),
    "qci": (cmd_qci, "certify or refute the q.c.i. property"),
    "ezd": (cmd_ezd, "search for exact zero-divisors"),
    "dual": (cmd_dual, "quadratic dual and degree-2 commutant"),
    "resolve": (cmd_resolve, "graded minimal resolution of R/J (default: the residue field)"),
    "betti-ambient": (cmd_betti_ambient, "betti numbers over the ambient polynomial ring"),
    "quadrics": (cmd_quadrics, "random quadric experiment"),
    "paper": (cmd_paper, "pinned regression suite for the worked example"),
}
NEEDS_INPUT = {"hilbert", "gb", "koszul", "qci", "ezd", "dual", "resolve", "betti-ambient"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcitools", description="Exact computations with graded artinian rings.")
    parser.add_argument("--version", action="version", version=f"qcitools {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        if name in NEEDS_INPUT:
            p.add_argument("statements", nargs="*", help="'ring ...' and 'ideal ...' statements")
            p.add_argument("-f", "--file", help="read statements from a file ('-' for stdin)")
            p.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
        p.add_argument("--json", action="store_true", help="emit a deterministic JSON document")
        p.add_argument("--assert", dest="assert_", action="store_true", help="exit 1 on a negative result")
        if name == "ezd":
            p.add_argument("--deg-bound", type=int, default=1)
            p.add_argument("--mode", choices=["enumerate", "symbolic"], default="enumerate")
        if name == "resolve":
            p.add_argument("--hd-bound", type=int, default=4)
        if name == "quadrics":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--prime", type=int, default=101)
            p.add_argument("--trials", type=int, default=25)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--pencil-mode", choices=["exact", "enumerate"], default="exact")
        if name == "paper":
            p.add_argument("--prime", type=int, default=101)
            p.add_argument("--only", default="", help="comma-separated check numbers")
    return parser


def _read_source(args) -> str:
    parts = []
    if getattr(args, "file", None):
        if args.file == "-":
            parts.append(sys.stdin.read())
        else:
            with open(args.file, encoding="utf-8") as fh:
                parts.append(fh.read())
    parts.extend(getattr(args, "statements", []) or [])
    return "\n".join(parts)


def _envelope(args, job: JobSpec, result: dict) -> dict:
    doc = {
        "schema": SCHEMA,
        "tool": "qcitools",
        "version": __version__,
        "command": args.command,
        "result": result,
    }
    if job.ring is not None:
        doc["input"] = {
            "field": job.field.name,
            "variables": list(job.ring.names),
            "relations": [str(g) for g in job.relations],
            "ideal": None if job.ideal is None else [str(g) for g in job.ideal],
            "order": job.ring.order.kind,
        }
    for key in ("seed", "prime", "trials", "n", "hd_bound", "deg_bound", "mode", "pencil_mode"):
        if hasattr(args, key):
            doc.setdefault("parameters", {})[key] = getattr(args, key)
    notes = _capability_notes(job)
    if notes:
        doc["notes"] = notes
    return doc


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        if args.command in NEEDS_INPUT:
            order = LEX if args.order == "lex" else GREVLEX
            job = parse_input(_read_source(args), args.command, order)
        else:
            job = JobSpec(args.command)
        result, text, positive = handler(job, args)
    except InternalInconsistency as exc:
        print(f"internal inconsistency [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_status
    except QciError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_status
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error [E_INPUT]: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(_envelope(args, job, result), sort_keys=True, indent=2, default=str))
    else:
        for note in _capability_notes(job):
            print(f"note: {note}")
        print(text)
    if args.command == "paper" and not positive:
        return 1
    if args.assert_ and not positive:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
