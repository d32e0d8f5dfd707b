"""Command-line interface: instance files in, deterministic reports out.

    trunclab <command> [object names] --file <path> [--seed N] [--cases N] [--json]

Exit codes: 0 all checks pass, 1 a check failed, 2 input error.
"""

import argparse
import sys
from fractions import Fraction

from .elements import (GoodSequence, SimpleElement, SimpleTrunc, apply_op,
                       bound_witness, dini_check, element_from_good,
                       good_from_element, normal_form, pointwise_sup,
                       truncation_sequence, truncation_sequence_check, uc)
from .equivalences import equivalence_witness
from .errors import ParseError, TruncLabError
from .frames import (FrameReal, FrameSurjection, OpenInterval, drop,
                     e0q_member, frame_dini, frame_pointwise_sup,
                     frame_uc_check, induced_op, surjection_tools)
from .instances import Instance, Sequence, parse_instance
from .kernels import KernelSpec, kernel_closure, kernel_conditions, pointwise_closed
from .rat import format_label, format_rational, parse_extended
from .report import Report
from .seqspace import SeqTrunc, TailElement, ex1_report, tail_apply_op
from .spaces import PointedBooleanSpace

COMMANDS = ("check", "normal-form", "good-seq", "trunc-seq", "uc", "equivalence",
            "frame-eval", "induced-op", "drop", "e0q", "kernel-check",
            "kernel-close", "pointwise", "dini", "ex1-report", "suite")


def _element_repr(g):
    if isinstance(g, SimpleElement):
        return {str(p): format_rational(v) for p, v in g.items()}
    if isinstance(g, TailElement):
        return {"correction": {str(n): format_rational(v)
                               for n, v in sorted(g.correction.items())},
                "tail": [format_rational(c) for c in g.tail]}
    if isinstance(g, FrameReal):
        return {format_rational(v): format_label(c) for v, c in g.cells}
    return repr(g)


def cmd_check(inst, names, args, report):
    targets = names or list(inst.order)
    for name in targets:
        obj = inst.get(name)
        report.add_check(f"{inst.kinds[name]} {name}", True, "validated")
    report.put("objects", {n: inst.kinds[n] for n in targets})


def cmd_normal_form(inst, names, args, report):
    for name in names:
        g = inst.get(name, "element")
        nf = normal_form(g)
        report.add_check(f"normal-form {name}", True,
                         f"{len(nf)} components")
        report.put(name, [[format_rational(r), sorted(map(str, c))]
                          for r, c in nf])


def cmd_good_seq(inst, names, args, report):
    for name in names:
        obj = inst.get(name)
        if isinstance(obj, SimpleElement):
            gs = good_from_element(obj)
            report.add_check(f"good-seq {name}", True, f"{len(gs)} terms")
            report.put(name, [_element_repr(t) for t in gs.terms])
        elif isinstance(obj, GoodSequence):
            g = element_from_good(obj)
            report.add_check(f"good-seq {name} reconstructs", True)
            report.put(name, _element_repr(g))
        else:
            raise TruncLabError(f"{name} is not an element or good sequence")


def cmd_trunc_seq(inst, names, args, report):
    for name in names:
        obj = inst.get(name)
        if isinstance(obj, SimpleElement):
            seq = truncation_sequence(obj)
            report.add_check(f"trunc-seq {name}", True, f"{len(seq)} terms")
            report.put(name, [_element_repr(t) for t in seq])
        elif isinstance(obj, Sequence):
            ok, result = truncation_sequence_check(list(obj.terms))
            report.add_check(f"trunc-seq {name}", ok,
                             "reconstructed" if ok else f"fails at index {result}")
            if ok:
                report.put(name, _element_repr(result))
        else:
            raise TruncLabError(f"{name} is not an element or sequence")


def cmd_uc(inst, names, args, report):
    for name in names:
        obj = inst.get(name)
        if isinstance(obj, SimpleTrunc):
            alg = uc(obj)
            report.add_check(f"uc {name}", True, f"{len(alg)} components")
            report.put(name, [sorted(map(str, c)) for c in sorted(
                alg.carrier, key=lambda s: (len(s), sorted(map(str, s))))])
        elif isinstance(obj, FrameReal):
            ok, witness = frame_uc_check(obj)
            report.add_check(f"uc {name}", ok,
                             f"witness {format_label(witness)}" if ok else
                             "not a unital component")
        else:
            raise TruncLabError(f"{name} is not a trunc or frame real")


def cmd_equivalence(inst, names, args, report):
    for name in names:
        x = inst.get(name, "space")
        rep = equivalence_witness(x)
        for trip in rep.trips:
            report.add_check(f"{name}: {trip.name}", trip.verified, trip.detail)
        if not rep.complete:
            report.add_check(f"{name}: complete", False, "budget exceeded")


def cmd_frame_eval(inst, names, args, report):
    # interval as one token "(lo,hi)" or two tokens lo hi
    if len(names) == 2:
        lo, hi = names[1].strip("()").split(",")
    else:
        lo, hi = names[1], names[2]
    name = names[0]
    g = inst.get(name, "framereal")
    interval = OpenInterval(parse_extended(lo), parse_extended(hi))
    value = g.eval(interval)
    report.add_check(f"frame-eval {name} {interval!r}", True,
                     format_label(value))
    report.put("value", format_label(value))


def _parse_tag(token):
    if ":" in token:
        tag, param = token.split(":", 1)
        return tag, Fraction(param)
    return token, None


def cmd_induced_op(inst, names, args, report):
    tag_token, operand_names = names[0], names[1:]
    tag, param = _parse_tag(tag_token)
    operands = [inst.get(n) for n in operand_names]
    kinds = {type(o) for o in operands}
    if kinds <= {SimpleElement}:
        result = apply_op(tag, operands, param=param)
    elif kinds <= {TailElement}:
        result = tail_apply_op(tag, operands, param=param)
    elif kinds <= {FrameReal}:
        result = induced_op(tag, operands, param=param)
        report.add_check("join-of-meets oracle", True, "verified")
    else:
        raise TruncLabError("operands must share a model")
    report.add_check(f"induced-op {tag_token}", True)
    report.put("result", _element_repr(result))


def cmd_drop(inst, names, args, report):
    qname, hname = names[0], names[1]
    q = inst.get(qname, "surjection")
    hp = inst.get(hname, "framereal")
    result = drop(q, hp)
    report.add_check(f"drop {hname} along {qname}", result.ok,
                     "" if result.ok else
                     f"condition value {format_label(result.condition_value)}")
    if result.ok:
        report.put("result", _element_repr(result.result))


def cmd_e0q(inst, names, args, report):
    qname, hname = names[0], names[1]
    q = inst.get(qname, "surjection")
    h = inst.get(hname, "framereal")
    tools = surjection_tools(q)
    report.add_check(f"{qname} dense", tools["dense"])
    result = e0q_member(q, h)
    report.add_check(f"e0q {hname}", result.ok,
                     result.method if result.ok else result.note)
    if result.ok:
        report.put("witness", _element_repr(result.witness))


def cmd_kernel_check(inst, names, args, report):
    for name in names:
        k = inst.get(name, "kernel")
        conds = kernel_conditions(k, budget=args.cases, seed=args.seed)
        for label, verdict in (("(1)", conds.cond1), ("(2)", conds.cond2),
                               ("(3)", conds.cond3)):
            detail = "exact" if verdict.exact else f"{verdict.samples} samples"
            if not verdict.passed:
                detail += f", witness {verdict.witness!r}"
            report.add_check(f"{name} condition {label}", verdict.passed, detail)


def cmd_kernel_close(inst, names, args, report):
    for name in names:
        k = inst.get(name, "kernel")
        closed = kernel_closure(k)
        report.add_check(f"kernel-close {name}", True,
                         "already closed" if closed == k else "enlarged")
        report.put(name, {str(key): repr(val)
                          for key, val in closed.describe().items()})


def cmd_pointwise(inst, names, args, report):
    objs = [inst.get(n) for n in names]
    if len(objs) == 1 and isinstance(objs[0], KernelSpec):
        verdict = pointwise_closed(objs[0], budget=args.cases, seed=args.seed)
        report.add_check(f"pointwise-closed {names[0]}", verdict.closed,
                         "" if verdict.closed else
                         f"{verdict.family_kind} sup escapes")
        return
    if all(isinstance(o, SimpleElement) for o in objs):
        sup = pointwise_sup(objs)
    elif all(isinstance(o, FrameReal) for o in objs):
        sup = frame_pointwise_sup(objs)
    else:
        raise TruncLabError("pointwise needs elements, frame reals, or one kernel")
    report.add_check("pointwise-sup verified on the cut grid", True)
    report.put("sup", _element_repr(sup))


def cmd_dini(inst, names, args, report):
    for name in names:
        seq = inst.get(name, "sequence")
        terms = list(seq.terms)
        if terms and isinstance(terms[0], FrameReal):
            rep = frame_dini(terms)
        else:
            rep = dini_check(terms)
        report.add_check(f"dini {name}: limit zero", rep.limit_is_zero)
        if rep.limit_is_zero:
            report.add_check(f"dini {name}: uniform", rep.uniform)
            report.put(name, {format_rational(e): m
                              for e, m in rep.index_map.items()})


def cmd_ex1_report(inst, names, args, report):
    rep = ex1_report(seed=args.seed, samples=max(args.cases, 500))
    report.add_check("(a) hyperarchimedean on samples", rep.hyper_ok,
                     f"{rep.hyper_samples} pairs")
    report.add_check("(b) not simple: 1/n not bounded away from 0", True,
                     "values " + ", ".join(format_rational(v)
                                           for v in rep.clearance_values))
    report.add_check("(c) kernel conditions (1),(2) on samples", rep.kernel12_ok,
                     f"{rep.kernel12_samples} samples")
    report.add_check("(d) kernel condition (3) fails exactly",
                     bool(rep.kernel3_witness.tail),
                     f"witness tminus(1/3) = {_element_repr(rep.kernel3_example)}")
    report.add_check("(e) not pointwise closed", rep.pointwise_sup_ok,
                     "filtration sup is the 1/n element")
    report.put("witness", _element_repr(rep.kernel3_witness))


def cmd_suite(inst, names, args, report):
    from .suites import SUITES, run_all
    if names:
        results = []
        for name in names:
            if name not in SUITES:
                raise TruncLabError(f"unknown suite {name!r}")
            results.append(SUITES[name](seed=args.seed, cases=args.cases))
    else:
        results = run_all(seed=args.seed, cases=args.cases)
    for res in results:
        detail = f"{res.cases} cases"
        if res.failures:
            detail += f"; first failure: {res.failures[0]}"
        report.add_check(f"suite {res.name}", res.passed, detail)
    report.put("totals", {res.name: res.cases for res in results})


HANDLERS = {
    "check": cmd_check,
    "normal-form": cmd_normal_form,
    "good-seq": cmd_good_seq,
    "trunc-seq": cmd_trunc_seq,
    "uc": cmd_uc,
    "equivalence": cmd_equivalence,
    "frame-eval": cmd_frame_eval,
    "induced-op": cmd_induced_op,
    "drop": cmd_drop,
    "e0q": cmd_e0q,
    "kernel-check": cmd_kernel_check,
    "kernel-close": cmd_kernel_close,
    "pointwise": cmd_pointwise,
    "dini": cmd_dini,
    "ex1-report": cmd_ex1_report,
    "suite": cmd_suite,
}

_NEEDS_FILE = {"check", "normal-form", "good-seq", "trunc-seq", "uc",
               "equivalence", "frame-eval", "induced-op", "drop", "e0q",
               "kernel-check", "kernel-close", "pointwise", "dini"}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="trunclab",
        description="Exact computation in truncated archimedean vector lattices")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("names", nargs="*",
                        help="object names (and tag/interval arguments)")
    parser.add_argument("--file", help="instance file")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--cases", type=int, default=200)
    parser.add_argument("--json", action="store_true",
                        help="emit the machine-readable report")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(command=" ".join([args.command] + list(args.names)))
    try:
        if args.command in _NEEDS_FILE:
            if not args.file:
                print(f"error: {args.command} requires --file", file=sys.stderr)
                return 2
            inst = parse_instance(args.file)
        else:
            inst = Instance()
        HANDLERS[args.command](inst, list(args.names), args, report)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (TruncLabError, OSError, ValueError, IndexError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    print(report.to_json() if args.json else report.to_text())
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
