"""Command-line front end.

Subcommands cover the expression side (normal ordering, generator
expansion, the partition-basis action), the verification suites of every
module, and the diagram calculi (evaluation of a diagram from JSON, and
the diagram identity checks). Reports are plain text by default and
versioned JSON with --json; exit status is 0 when everything passes,
1 when a verification fails, and 2 for usage or parse errors.
"""

import argparse
import json
import re
import sys

from .diagrams import (
    Diagram,
    DiagramError,
    eval_closed,
    normalize,
    verify_biproduct,
    verify_circle_evaluations,
    verify_degree_table,
    verify_psi_relations,
)
from .fock import FockElem, apply_ncpoly, parse_partition, verify_q_split
from .heisenberg import NCPoly, a_as_pq, normal_order, tilde_p_as_p, verify_a_commutator, verify_tilde_relation
from .k0 import faithfulness_rank, verify_gamma_generation
from .reporting import all_pass
from .scalars import LaurentPoly
from .symgroups import dimension, verify_symmetrizers, young_symmetrizer

SCHEMA = 1


class ExprError(ValueError):
    """Expression syntax error carrying the offending position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"tp(?P<tpk>\d+)"
    r"|p(?P<pk>\d+)"
    r"|q(?P<qk>\d+)"
    r"|a(?P<ak>-?\d+)"
    r"|(?P<t>t)"
    r"|(?P<int>\d+)"
    r"|(?P<op>[-+*^()])"
)


def tokenize(text):
    """Longest-match lexer for the expression grammar."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "tpk":
            tokens.append(("tp", int(m.group("tpk")), pos))
        elif m.lastgroup == "pk":
            tokens.append(("p", int(m.group("pk")), pos))
        elif m.lastgroup == "qk":
            tokens.append(("q", int(m.group("qk")), pos))
        elif m.lastgroup == "ak":
            tokens.append(("a", int(m.group("ak")), pos))
        elif m.lastgroup == "t":
            tokens.append(("t", None, pos))
        elif m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), pos))
        else:
            tokens.append(("op", m.group("op"), pos))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent over the token list; precedence ^ > * > unary -
    > binary +/-."""

    def __init__(self, tokens, length):
        self.tokens = tokens
        self.i = 0
        self.length = length

    def _peek_op(self, *ops):
        if self.i < len(self.tokens):
            kind, value, _ = self.tokens[self.i]
            if kind == "op" and value in ops:
                return value
        return None

    def _pos(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i][2]
        return self.length

    def parse(self):
        x = self.expr()
        if self.i < len(self.tokens):
            raise ExprError("unexpected trailing input", self._pos())
        return x

    def expr(self):
        x = self.term()
        while True:
            op = self._peek_op("+", "-")
            if op is None:
                return x
            self.i += 1
            y = self.term()
            x = x + y if op == "+" else x - y

    def term(self):
        negate = False
        while self._peek_op("-"):
            self.i += 1
            negate = not negate
        x = self.product()
        return x.scale(-1) if negate else x

    def product(self):
        x = self.power()
        while self._peek_op("*"):
            self.i += 1
            x = x * self.power()
        return x

    def power(self):
        x = self.atom()
        while self._peek_op("^"):
            self.i += 1
            pos = self._pos()
            if self.i >= len(self.tokens) or self.tokens[self.i][0] != "int":
                raise ExprError("exponent must be a nonnegative integer", pos)
            e = self.tokens[self.i][1]
            self.i += 1
            out = NCPoly.one()
            for _ in range(e):
                out = out * x
            x = out
        return x

    def atom(self):
        pos = self._pos()
        if self.i >= len(self.tokens):
            raise ExprError("expected a value", pos)
        kind, value, pos = self.tokens[self.i]
        self.i += 1
        if kind == "int":
            return NCPoly.coerce(value)
        if kind == "t":
            return NCPoly.coerce(LaurentPoly.t())
        if kind == "p":
            return NCPoly.letter("p", value)
        if kind == "q":
            return NCPoly.letter("q", value)
        if kind == "tp":
            return tilde_p_as_p(value)
        if kind == "a":
            if value == 0:
                raise ExprError("a0 is not a generator", pos)
            return a_as_pq(value)
        if kind == "op" and value == "(":
            x = self.expr()
            if not self._peek_op(")"):
                raise ExprError("expected ')'", self._pos())
            self.i += 1
            return x
        raise ExprError(f"expected a value, got {value!r}", pos)


def parse_expr(text):
    """Parse an expression in the p/q/a/tp letters to a word polynomial."""
    return _Parser(tokenize(text), len(text)).parse()


# --- suites -------------------------------------------------------------------


def _suite_a_commutators(max_index, deformed):
    return [
        verify_a_commutator(n, -m, deformed=deformed)
        for n in range(1, max_index + 1)
        for m in range(1, max_index + 1)
    ]


def _suite_tilde(max_index):
    return [
        verify_tilde_relation(n, m)
        for n in range(1, max_index + 1)
        for m in range(1, max_index + 1)
    ]


SUITE_DEFAULTS = {
    "a-commutators": {"max": 6},
    "tilde": {"max": 5},
    "fock": {"size_bound": 8},
    "symmetrizers": {"max": 5},
    "gamma": {"max": 6},
    "faithfulness": {"max": 4, "size_bound": 12},
}


def run_suite(name, max_index=None, size_bound=None, deformed=True):
    """Run one named verification suite and return its records."""
    defaults = SUITE_DEFAULTS[name]
    max_index = max_index if max_index is not None else defaults.get("max")
    size_bound = size_bound if size_bound is not None else defaults.get("size_bound")
    if name == "a-commutators":
        return _suite_a_commutators(max_index, deformed)
    if name == "tilde":
        return _suite_tilde(max_index)
    if name == "fock":
        return verify_q_split(size_bound)
    if name == "symmetrizers":
        return verify_symmetrizers(n_max=max_index)
    if name == "gamma":
        return verify_gamma_generation(max_index)
    if name == "faithfulness":
        return [faithfulness_rank(max_index, size_bound)]
    raise ValueError(f"unknown suite {name!r}")


DIAGRAM_CHECKS = ("biproduct", "psi", "degrees", "circles")


def run_diagram_check(check, calculus):
    if check == "biproduct":
        return verify_biproduct(calculus)
    if check == "psi":
        return verify_psi_relations()
    if check == "degrees":
        return verify_degree_table()
    if check == "circles":
        return verify_circle_evaluations(calculus)
    raise ValueError(f"unknown check {check!r}")


# --- output -------------------------------------------------------------------


def _record_label(record):
    if hasattr(record, "id"):
        return record.id
    extras = " ".join(f"{k}={v}" for k, v in sorted(record.parameters.items()))
    return f"{record.check}({extras})" if extras else record.check


def _records_text(records):
    lines = []
    for r in records:
        line = f"{_record_label(r)}: {r.status}"
        residual = getattr(r, "residual_terms", None) or getattr(r, "residual", None)
        if residual:
            line += f"  [{residual}]"
        lines.append(line)
    lines.append(f"{len(records)} checks, {'all pass' if all_pass(records) else 'FAILURES'}")
    return "\n".join(lines)


def _emit(args, text, data):
    payload = json.dumps(data, indent=2) if args.json else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


# --- subcommand handlers --------------------------------------------------------


def _cmd_normal_order(args):
    nf = normal_order(
        parse_expr(args.expr), deformed=args.deformed, strategy=args.strategy
    )
    _emit(
        args,
        nf.render(),
        {
            "schema": SCHEMA,
            "command": "normal-order",
            "input": args.expr,
            "deformed": args.deformed,
            "normal_form": nf.render(),
        },
    )
    return 0


def _cmd_a_expand(args):
    x = a_as_pq(args.n)
    _emit(
        args,
        x.render(),
        {"schema": SCHEMA, "command": "a-expand", "n": args.n, "expansion": x.render()},
    )
    return 0


def _cmd_tilde_expand(args):
    x = tilde_p_as_p(args.m)
    _emit(
        args,
        x.render(),
        {"schema": SCHEMA, "command": "tilde-expand", "m": args.m, "expansion": x.render()},
    )
    return 0


def _cmd_fock_act(args):
    lam = parse_partition(args.partition)
    image = apply_ncpoly(parse_expr(args.expr), FockElem.basis(lam))
    _emit(
        args,
        image.render(),
        {
            "schema": SCHEMA,
            "command": "fock-act",
            "input": args.expr,
            "partition": list(lam),
            "image": image.render(),
        },
    )
    return 0


def _cmd_verify(args):
    records = run_suite(
        args.suite,
        max_index=args.max,
        size_bound=args.size_bound,
        deformed=args.deformed,
    )
    ok = all_pass(records)
    _emit(
        args,
        _records_text(records),
        {
            "schema": SCHEMA,
            "command": "verify",
            "suite": args.suite,
            "records": [r.as_json() for r in records],
            "all_pass": ok,
        },
    )
    return 0 if ok else 1


def _cmd_symmetrizer(args):
    lam = parse_partition(args.partition)
    elem = young_symmetrizer(lam)
    _emit(
        args,
        f"{elem.render()}\ndimension: {dimension(lam)}",
        {
            "schema": SCHEMA,
            "command": "symmetrizer",
            "partition": list(lam),
            "element": elem.render(),
            "dimension": dimension(lam),
        },
    )
    return 0


def _cmd_diagram_eval(args):
    if (args.diagram is None) == (args.infile is None):
        raise ExprError("provide a diagram as JSON text or via --in, not both", 0)
    if args.infile is not None:
        with open(args.infile) as fh:
            blob = fh.read()
    else:
        blob = args.diagram
    try:
        data = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"diagram is not valid JSON: {exc}") from exc
    try:
        diagram = Diagram.from_json(data)
    except (TypeError, KeyError, AttributeError) as exc:
        raise DiagramError(f"malformed diagram JSON: {exc!r}") from exc
    if diagram.is_closed():
        value = eval_closed(diagram, args.calculus)
        _emit(
            args,
            str(value),
            {
                "schema": SCHEMA,
                "command": "diagram-eval",
                "calculus": args.calculus,
                "closed": True,
                "value": str(value),
            },
        )
    else:
        nf = normalize(diagram, calculus=args.calculus)
        _emit(
            args,
            nf.render(),
            {
                "schema": SCHEMA,
                "command": "diagram-eval",
                "calculus": args.calculus,
                "closed": False,
                "normal_form": nf.render(),
            },
        )
    return 0


def _cmd_diagram_verify(args):
    records = run_diagram_check(args.check, args.calculus)
    ok = all_pass(records)
    _emit(
        args,
        _records_text(records),
        {
            "schema": SCHEMA,
            "command": "diagram-verify",
            "check": args.check,
            "calculus": args.calculus,
            "records": [r.as_json() for r in records],
            "all_pass": ok,
        },
    )
    return 0 if ok else 1


def _report_sections():
    sections = [
        ("a-commutators", run_suite("a-commutators")),
        ("a-commutators-classical", run_suite("a-commutators", deformed=False)),
        ("tilde", run_suite("tilde")),
        ("fock", run_suite("fock")),
        ("symmetrizers", run_suite("symmetrizers")),
        ("gamma", run_suite("gamma")),
        ("faithfulness", run_suite("faithfulness")),
        ("degrees", run_diagram_check("degrees", "DH")),
        ("psi", run_diagram_check("psi", "DH")),
    ]
    for calculus in ("DH", "KH"):
        sections.append((f"biproduct-{calculus}", run_diagram_check("biproduct", calculus)))
        sections.append((f"circles-{calculus}", run_diagram_check("circles", calculus)))
    return sections


def _cmd_report(args):
    sections = _report_sections()
    ok = all(all_pass(records) for _, records in sections)
    lines = []
    for name, records in sections:
        status = "pass" if all_pass(records) else "FAIL"
        lines.append(f"{name}: {len(records)} checks, {status}")
        for r in records:
            if r.status != "pass":
                lines.append(f"  {_record_label(r)}: {r.status}")
    lines.append("report: " + ("all sections pass" if ok else "FAILURES"))
    _emit(
        args,
        "\n".join(lines),
        {
            "schema": SCHEMA,
            "command": "report",
            "sections": {
                name: {
                    "records": [r.as_json() for r in records],
                    "all_pass": all_pass(records),
                }
                for name, records in sections
            },
            "all_pass": ok,
        },
    )
    return 0 if ok else 1


# --- argument plumbing ------------------------------------------------------------


def _add_common(sub):
    sub.add_argument("--json", action="store_true", help="emit a JSON report")
    sub.add_argument("--out", metavar="FILE", help="write the report to a file")


def _add_deformed_flags(sub):
    group = sub.add_mutually_exclusive_group()
    group.add_argument(
        "--deformed", dest="deformed", action="store_true", default=True,
        help="use the deformed coefficients (default)",
    )
    group.add_argument(
        "--classical", dest="deformed", action="store_false",
        help="specialize the deformation parameter to 0",
    )


def build_parser():
    ap = argparse.ArgumentParser(
        prog="heisencalc",
        description="Exact calculator and verifier for the deformed "
        "Heisenberg algebra, its partition-basis action, and its "
        "planar diagram calculi.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normal-order", help="rewrite an expression to normal form")
    s.add_argument("expr")
    s.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    _add_deformed_flags(s)
    _add_common(s)
    s.set_defaults(handler=_cmd_normal_order)

    s = sub.add_parser("a-expand", help="expand a log-derivative generator in letters")
    s.add_argument("n", type=int)
    _add_common(s)
    s.set_defaults(handler=_cmd_a_expand)

    s = sub.add_parser("tilde-expand", help="expand a dual power sum in the p letters")
    s.add_argument("m", type=int)
    _add_common(s)
    s.set_defaults(handler=_cmd_tilde_expand)

    s = sub.add_parser("fock-act", help="apply an expression to a partition basis vector")
    s.add_argument("expr")
    s.add_argument("partition", help="partition like [3,1]; [] is the vacuum")
    _add_common(s)
    s.set_defaults(handler=_cmd_fock_act)

    s = sub.add_parser("verify", help="run a named verification suite")
    s.add_argument("--suite", required=True, choices=sorted(SUITE_DEFAULTS))
    s.add_argument("--max", type=int, help="largest generator index or partition size")
    s.add_argument("--size-bound", type=int, dest="size_bound")
    _add_deformed_flags(s)
    _add_common(s)
    s.set_defaults(handler=_cmd_verify)

    s = sub.add_parser("symmetrizer", help="print a Young symmetrizer and its dimension")
    s.add_argument("partition")
    _add_common(s)
    s.set_defaults(handler=_cmd_symmetrizer)

    s = sub.add_parser("diagram-eval", help="normalize or evaluate a diagram from JSON")
    s.add_argument("diagram", nargs="?", help="diagram as inline JSON")
    s.add_argument("--in", dest="infile", metavar="FILE", help="read the diagram JSON from a file")
    s.add_argument("--calculus", choices=("DH", "KH"), default="DH")
    _add_common(s)
    s.set_defaults(handler=_cmd_diagram_eval)

    s = sub.add_parser("diagram-verify", help="run a diagram identity check")
    s.add_argument("--check", required=True, choices=DIAGRAM_CHECKS)
    s.add_argument("--calculus", choices=("DH", "KH"), default="DH")
    _add_common(s)
    s.set_defaults(handler=_cmd_diagram_verify)

    s = sub.add_parser("report", help="run every suite and check, with defaults")
    _add_common(s)
    s.set_defaults(handler=_cmd_report)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ExprError, DiagramError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
