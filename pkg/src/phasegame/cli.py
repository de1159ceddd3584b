"""Command line front end.

Verbs: verify, solve, eval, simulate, oracle, facts.  Exit codes follow a
fixed contract: 0 success, 1 domain failure (a law or search failed), 2
usage or parse failure.
"""

import argparse
import json
import os
import sys

from .data import resolve_path
from .dot import trace_to_dot
from .errors import (
    ExprSyntaxError,
    NoSolution,
    CapExceeded,
    NotClosedClass,
    PhasegameError,
    SizeExceeded,
)
from .expr import eval_expr
from .lattice import load_lattice
from .phase import classify, load_phase, verify_laws
from .planner import load_scenario, run_cognition
from .solver import solve_table
from .subset_oracle import oracle_report


class Report:
    """Aggregated command outcome.  exit_code is 0 exactly when every item
    passed; warnings do not change the status."""

    def __init__(self, command):
        self.command = command
        self.status = "pass"
        self.items = []

    def add(self, claim, status, detail=""):
        if status not in ("pass", "fail", "warn"):
            raise ValueError(status)
        self.items.append({"claim": claim, "status": status,
                           "detail": str(detail)})
        if status == "fail":
            self.status = "fail"

    @property
    def exit_code(self):
        return 0 if self.status == "pass" else 1

    def to_doc(self):
        return {
            "command": self.command,
            "status": self.status,
            "exit_code": self.exit_code,
            "items": self.items,
        }

    def emit(self, args):
        if not args.quiet:
            for item in self.items:
                line = "%-4s %s" % (item["status"].upper(), item["claim"])
                if item["detail"]:
                    line += ": " + item["detail"]
                print(line)
        print("%s: %s" % (self.command, self.status))
        if args.out_dir:
            path = os.path.join(args.out_dir, "%s_report.json" % self.command)
            _write_json(path, self.to_doc())
            if not args.quiet:
                print("wrote %s" % path)
        return self.exit_code


def _write_json(path, doc):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        fh.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _write_text(path, text):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        fh.write(text)


def _need(args, attr, flag):
    value = getattr(args, attr, None)
    if value is None:
        print("error: %s requires %s" % (args.verb, flag), file=sys.stderr)
        raise SystemExit(2)
    return value


def _stem(path):
    if path.startswith("data:"):
        path = path[len("data:"):]
    return os.path.splitext(os.path.basename(path))[0]


# verbs -----------------------------------------------------------------

def cmd_verify(args):
    if args.lattice is None and args.phase is None:
        print("error: verify needs --lattice and/or --phase", file=sys.stderr)
        raise SystemExit(2)
    report = Report("verify")

    lattice = None
    if args.lattice is not None:
        try:
            lattice = load_lattice(args.lattice)
        except PhasegameError as exc:
            report.add("lattice_wellformed", "fail",
                       "%s: %s" % (type(exc).__name__, exc))
        else:
            report.add("lattice_wellformed", "pass",
                       "%d elements" % len(lattice.elements))
            distributive = lattice.is_distributive()
            report.add("lattice_distributive",
                       "pass" if distributive else "fail",
                       "" if distributive else "NotHeyting: no residuals")

    if args.phase is not None:
        try:
            ps = load_phase(args.phase, lattice=lattice, validate=False)
        except PhasegameError as exc:
            report.add("phase_loadable", "fail",
                       "%s: %s" % (type(exc).__name__, exc))
        else:
            audit = verify_laws(ps)
            for law in audit["laws"]:
                detail = "%d checked, %d skipped" % (law["checked"],
                                                     law["skipped"])
                if law["witnesses"]:
                    detail += "; witness %r" % (law["witnesses"][0],)
                status = law["status"] if law["status"] != "skipped" else "warn"
                report.add(law["law"], status, detail)
            try:
                cls = classify(ps)
            except NotClosedClass as exc:
                report.add("fact_classification", "fail", str(exc))
            else:
                report.add("fact_classification", "pass",
                           "open {%s} closed {%s}"
                           % (",".join(cls.open_class),
                              ",".join(cls.closed_class)))
    return report.emit(args)


def cmd_solve(args):
    table = args.table or _need(args, "phase", "--phase or a table argument")
    report = Report("solve")
    out_dir = args.out_dir or "."
    capped = False
    try:
        solutions = solve_table(table, max_solutions=args.max_solutions)
    except NoSolution as exc:
        report.add("completions", "fail", "no solution: %s" % exc)
        return report.emit(args)
    except CapExceeded as exc:
        solutions = exc.solutions
        capped = True

    stem = _stem(table) if isinstance(table, str) else "table"
    for i, doc in enumerate(solutions, 1):
        path = os.path.join(out_dir, "%s_solution_%03d.json" % (stem, i))
        _write_json(path, doc)
        report.add("solution_%03d" % i, "pass", path)
    report.add("completions", "pass", "%d found" % len(solutions))
    if capped:
        report.add("solution_cap", "warn",
                   "stopped at --max-solutions %d; more exist"
                   % args.max_solutions)
    return report.emit(args)


def cmd_eval(args):
    phase = _need(args, "phase", "--phase")
    text = " ".join(args.expr).strip()
    if not text:
        print("error: eval needs an expression", file=sys.stderr)
        raise SystemExit(2)
    ps = load_phase(phase)
    value = eval_expr(ps, text)
    print(value)
    if args.out_dir:
        _write_json(os.path.join(args.out_dir, "eval_report.json"),
                    {"command": "eval", "expression": text, "value": value})
    return 0


def cmd_simulate(args):
    sc = load_scenario(args.scenario)
    trace = run_cognition(sc, max_steps=args.max_steps, mode=args.mode,
                          dual_payoff=args.dual_payoff, seed=args.seed)
    report = Report("simulate")
    doc = trace.to_doc()

    if doc["selections"]:
        first = doc["selections"][0]
        named = ["{%s}" % ",".join(s["elements"]) for s in first["sets"]]
        report.add("top_goal_sets", "pass", " and ".join(named))
        for s in first["sets"]:
            report.add("goal_set {%s}" % ",".join(s["goals"]), "pass",
                       "elements {%s}, priority %s"
                       % (",".join(s["elements"]), s["priority"]))
    for ev in doc["shrink_events"]:
        report.add("shrink@step%d" % ev["step"], "pass",
                   "{%s} -> {%s}" % (",".join(ev["from"]), ",".join(ev["to"])))
    for obj_id in sorted(doc["final_images"]):
        report.add("image %s" % obj_id, "pass",
                   "{%s}" % ",".join(doc["final_images"][obj_id]))

    if doc["complete"]:
        report.add("termination", "pass",
                   "complete after %d steps" % len(doc["entries"]))
    elif doc["step_limit"]:
        status = "fail" if args.strict_termination else "warn"
        report.add("termination", status,
                   "step limit %d reached" % args.max_steps)

    out_dir = args.out_dir or "."
    stem = _stem(args.scenario)
    if args.emit in ("json", "both"):
        path = os.path.join(out_dir, "%s_trace.json" % stem)
        _write_text(path, trace.to_json())
        report.add("trace_json", "pass", path)
    if args.emit in ("dot", "both"):
        path = os.path.join(out_dir, "%s_trace.dot" % stem)
        _write_text(path, trace_to_dot(doc, name=stem))
        report.add("trace_dot", "pass", path)
    return report.emit(args)


def cmd_oracle(args):
    with open(resolve_path(args.monoid)) as fh:
        doc = json.load(fh)
    pole = frozenset(doc["falsum_subset"])
    elements, mult, unit = (doc["elements"],
                            {(x, y): v for x, y, v in doc["mult"]},
                            doc["unit"])
    sym = dict(mult)
    for (x, y), v in mult.items():
        sym.setdefault((y, x), v)
    audit = oracle_report(elements, sym, unit, pole)
    report = Report("oracle")
    for law in audit["laws"]:
        detail = "%d checked" % law["checked"]
        if law["witnesses"]:
            detail += "; witness %s" % law["witnesses"][0]
        report.add(law["law"], law["status"], detail)
    report.add("fact_census", "pass",
               "%d facts among %d subsets" % (audit["facts"],
                                              audit["subsets"]))
    return report.emit(args)


def cmd_facts(args):
    phase = _need(args, "phase", "--phase")
    ps = load_phase(phase)
    report = Report("facts")
    facts = ps.facts()
    report.add("facts", "pass",
               "%d of %d elements: {%s}" % (len(facts),
                                            len(ps.lattice.elements),
                                            ",".join(facts)))
    for x in facts:
        report.add("dual %s" % x, "pass", ps.dual(x))
    try:
        cls = classify(ps)
    except NotClosedClass as exc:
        report.add("classification", "fail", str(exc))
    else:
        report.add("open_class", "pass", "{%s}" % ",".join(cls.open_class))
        report.add("closed_class", "pass", "{%s}" % ",".join(cls.closed_class))
        report.add("neutral", "pass", cls.neutral)
        report.add("falsum", "pass", ps.falsum)
    return report.emit(args)


# wiring ----------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", metavar="FILE",
                        help="lattice JSON (file path or data:NAME)")
    common.add_argument("--phase", metavar="FILE",
                        help="phase structure JSON")
    common.add_argument("--out-dir", metavar="DIR",
                        help="directory for emitted files")
    common.add_argument("--quiet", action="store_true",
                        help="print only the final status line")

    parser = argparse.ArgumentParser(
        prog="phasegame",
        description="Lattice-valued phase semantics, games and planning.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="audit lattice and phase laws")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common],
                       help="complete an ambiguous multiplication table")
    p.add_argument("table", nargs="?",
                   help="candidates JSON (defaults to --phase)")
    p.add_argument("--max-solutions", type=int, metavar="N")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate a connective expression")
    p.add_argument("expr", nargs=argparse.REMAINDER,
                   help="expression; quote it or pass flags first")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("simulate", parents=[common],
                       help="run the cognition loop on a scenario")
    p.add_argument("scenario", help="scenario JSON")
    p.add_argument("--mode", choices=("practical", "strict"),
                   default="practical")
    p.add_argument("--dual-payoff", choices=("copy", "negate"),
                   default="copy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=50)
    p.add_argument("--emit", choices=("json", "dot", "both"), default="json")
    p.add_argument("--strict-termination", action="store_true",
                   help="treat a step-limit stop as failure")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", parents=[common],
                       help="exhaustive subset-level law check on a monoid")
    p.add_argument("monoid", help="monoid JSON with falsum_subset")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("facts", parents=[common],
                       help="print the fact census and classification")
    p.set_defaults(func=cmd_facts)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (ExprSyntaxError, SizeExceeded) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (json.JSONDecodeError, FileNotFoundError, IsADirectoryError,
            KeyError, ValueError) as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2
    except PhasegameError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
