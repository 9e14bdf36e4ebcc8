"""Command-line front end.

    floercone <verb> [--knot NAME | --file PATH] [--n INT] [--spinc INT]
              [--flavor hat|minus] [--r RAT] [--genus INT] [--format human|machine]

Exit status is 0 on success, 1 on domain errors and 2 on usage errors.
Machine output is JSON with every rational written as an exact ``p/q`` string.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence, TextIO

from . import cone, contact, library
from .errors import FloerconeError
from .knot import KnotComplex, load_knot_file, validate
from .rational import fmt_rat, parse_rat

VERBS = (
    "validate",
    "hf-surgery",
    "dual-knot",
    "top-grading",
    "check-injectivity",
    "plan",
    "certify",
    "list-knots",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # let main() map usage problems to exit status 2
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _rat(text: str):
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="floercone", description="Knot Floer mapping-cone and contact-surgery toolkit.")
    p.add_argument("verb", choices=VERBS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--knot", help="bundled complex name (see list-knots)")
    src.add_argument("--file", help="path to a .kfc complex")
    p.add_argument("--n", type=int, help="positive surgery coefficient")
    p.add_argument("--spinc", type=int, help="spin^c class mod n")
    p.add_argument("--flavor", choices=cone.FLAVORS, default="hat")
    p.add_argument("--r", type=_rat, help="rational surgery parameter, p/q or integer")
    p.add_argument("--genus", type=int)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None,
         err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        handler = _HANDLERS[args.verb]
        _check_flags(args)
    except _UsageError as exc:
        print(f"floercone: usage error: {exc}", file=err)
        return 2
    try:
        report, text, status = handler(args)
    except (FloerconeError, ValueError, OSError) as exc:
        print(f"floercone: error: {exc}", file=err)
        return 1
    if args.format == "machine":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")
    return status


_NEEDS = {
    "validate": {"source"},
    "hf-surgery": {"source", "n"},
    "dual-knot": {"source", "n"},
    "top-grading": {"source", "n"},
    "check-injectivity": {"source"},
    "plan": {"r"},
    "certify": {"genus", "r"},
    "list-knots": set(),
}


def _check_flags(args) -> None:
    need = _NEEDS[args.verb]
    if "source" in need and args.knot is None and args.file is None:
        raise _UsageError(f"{args.verb} needs --knot or --file")
    for flag in ("n", "r", "genus"):
        if flag in need and getattr(args, flag) is None:
            raise _UsageError(f"{args.verb} needs --{flag}")
    if args.n is not None and args.n < 1:
        raise _UsageError("--n must be a positive integer")
    if args.spinc is not None and args.n is None:
        raise _UsageError("--spinc requires --n")
    if args.flavor != "hat" and args.verb != "dual-knot":
        raise _UsageError("--flavor only applies to dual-knot")


def _source(args) -> KnotComplex:
    if args.file is not None:
        return load_knot_file(args.file)
    return library.load(args.knot)


def _table(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [list(map(str, header))] + [["" if c is None else str(c) for c in r] for r in rows]
    widths = [max(len(row[k]) for row in cells) for k in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verbs


def _do_validate(args):
    if args.file is not None:
        path = args.file
    elif args.knot in library.list_knots():
        # read the file directly so problems are reported rather than raised
        path = library.data_dir() / f"{args.knot}.kfc"
    else:
        raise FloerconeError(f"unknown knot {args.knot!r}; available: {', '.join(library.list_knots())}")
    cx = load_knot_file(path)
    problems = validate(cx)
    report = {
        "knot": cx.name,
        "generators": len(cx.generators),
        "valid": not problems,
        "violations": [
            {"code": v.code, "message": v.message,
             "witness": list(v.witness) if v.witness is not None else None}
            for v in problems
        ],
    }
    if problems:
        text = f"{cx.name}: INVALID\n" + "\n".join(f"  {v}" for v in problems)
    else:
        text = f"{cx.name}: ok ({len(cx.generators)} generators, genus {cx.genus})"
    return report, text, 1 if problems else 0


def _do_hf_surgery(args):
    cx = _source(args)
    dims = cone.hf_hat_surgery(cx, args.n, args.spinc)
    rows = [(args.n, s, fmt_rat(m), d) for s, _, m, d in dims.rows()]
    report = {
        "knot": cx.name,
        "n": args.n,
        "flavor": "hat",
        "total": dims.total(),
        "rows": [{"n": n, "spinc": s, "maslov": m, "dim": d} for n, s, m, d in rows],
    }
    text = f"HF-hat of {args.n}-surgery on {cx.name} (total {dims.total()})\n"
    text += _table(("n", "spinc", "maslov", "dim"), rows)
    return report, text, 0


def _do_dual_knot(args):
    cx = _source(args)
    classes = range(args.n) if args.spinc is None else [args.spinc % args.n]
    rows = []
    u_rows = []
    note = None
    for s in classes:
        dims = cone.hfk_dual(cx, args.n, s, args.flavor)
        note = note or dims.note
        rows += [(args.n, sc, fmt_rat(a), fmt_rat(m), d) for sc, a, m, d in dims.rows()]
        u_rows += [(args.n, sc, fmt_rat(a), r) for (sc, a), r in sorted(dims.u_ranks.items())]
    report = {
        "knot": cx.name,
        "n": args.n,
        "flavor": args.flavor,
        "rows": [{"n": n, "spinc": s, "alexander": a, "maslov": m, "dim": d}
                 for n, s, a, m, d in rows],
    }
    text = f"{args.flavor} knot Floer homology of the dual knot in {args.n}-surgery on {cx.name}\n"
    text += _table(("n", "spinc", "alexander", "maslov", "dim"), rows)
    if args.flavor == "minus":
        report["u_ranks"] = [{"n": n, "spinc": s, "alexander": a, "rank": r}
                             for n, s, a, r in u_rows]
        report["note"] = note
        text += "\n\nrank of U from each level to the one below\n"
        text += _table(("n", "spinc", "alexander", "rank"), u_rows)
        if note:
            text += f"\n({note})"
    return report, text, 0


def _do_top_grading(args):
    cx = _source(args)
    top = cone.top_alexander(cx, args.n)
    formula = cone.top_grading(cx.genus, args.n)
    report = {
        "knot": cx.name,
        "genus": cx.genus,
        "n": args.n,
        "spinc": cx.genus % args.n,
        "top_alexander": fmt_rat(top),
        "formula": fmt_rat(formula),
        "agrees": top == formula,
    }
    text = (f"{cx.name}, n = {args.n}, spin^c {cx.genus % args.n}: top Alexander grading "
            f"{fmt_rat(top)} (formula (2g+n-1)/(2n) = {fmt_rat(formula)})")
    return report, text, 0


def _do_check_injectivity(args):
    cx = _source(args)
    ns = [args.n] if args.n is not None else list(range(1, 2 * cx.genus + 5))
    results = []
    for n in ns:
        v = cone.check_top_injectivity(cx, n)
        results.append((n, v))
    report = {
        "knot": cx.name,
        "genus": cx.genus,
        "results": [
            {"n": n, "spinc": cx.genus % n, "top": fmt_rat(v.top), "injective": v.injective,
             "witness": list(v.witness) if v.witness else None}
            for n, v in results
        ],
    }
    rows = [(n, cx.genus % n, fmt_rat(v.top), "yes" if v.injective else "no",
             " -> ".join(v.witness) if v.witness else "") for n, v in results]
    text = f"injectivity at the top Alexander grading for {cx.name}\n"
    text += _table(("n", "spinc", "top", "injective", "witness"), rows)
    return report, text, 0


def _do_plan(args):
    plan = contact.dgs_plan(args.r)
    report = plan.to_dict()
    lines = [f"contact ({fmt_rat(args.r)})-surgery"]
    if plan.pushoff_plus_count:
        lines.append(f"  {plan.pushoff_plus_count} Legendrian push-off(s) with contact +1")
    if plan.cf_expansion:
        lines.append(f"  continued fraction {list(plan.cf_expansion)}")
    for k, (s, c) in enumerate(plan.chain, 1):
        lines.append(f"  chain {k}: {s} negative stabilization(s), contact {c:+d}")
    if plan.degenerate:
        lines.append("  degenerate: push-offs only, empty chain")
    return report, "\n".join(lines), 0


def _do_certify(args):
    cert = contact.certify_tight(args.genus, args.r, args.knot)
    report = cert.to_dict()
    if args.knot is not None and args.genus >= 1:
        cx = library.load(args.knot)
        if cx.genus != args.genus:
            raise FloerconeError(f"{args.knot} has genus {cx.genus}, not {args.genus}")
        top = cone.top_alexander(cx, cert.n_effective)
        report["top_alexander"] = fmt_rat(top)
        report["cross_check"] = top == cert.loss_alexander
    first = cert.first_surgery_legendrian
    lines = [
        f"tight structure on ({fmt_rat(-cert.r)})-surgery, genus {cert.genus}",
        f"  base Legendrian         tb {fmt_rat(cert.base_legendrian.tb)}, "
        f"rot {fmt_rat(cert.base_legendrian.rot)}",
        f"  continued fraction      {list(cert.plan.cf_expansion)}",
        f"  stabilizations          {list(cert.plan.stabilizations)}",
        f"  first surgery on        tb {fmt_rat(first.tb)}, rot {fmt_rat(first.rot)}",
        f"  admissible              {'yes' if cert.admissibility else 'no'}",
        f"  effective n             {cert.n_effective}",
        f"  spin^c label            {cert.spinc_label}",
        f"  LOSS Alexander grading  {fmt_rat(cert.loss_alexander)}",
    ]
    if "top_alexander" in report:
        lines.append(f"  top Alexander ({args.knot})  {report['top_alexander']}")
    lines += [f"  note: {n}" for n in cert.notes]
    return report, "\n".join(lines), 0


def _do_list_knots(args):
    names = library.list_knots()
    rows = []
    for name in names:
        e = library.ENTRIES.get(name)
        rows.append((name, e.genus if e else "", e.klass if e else "", e.file if e else ""))
    report = {
        "data_version": library.DATA_VERSION,
        "knots": [{"name": n, "genus": g if g != "" else None, "class": k or None}
                  for n, g, k, _ in rows],
    }
    return report, _table(("name", "genus", "class", "file"), rows), 0


_HANDLERS = {
    "validate": _do_validate,
    "hf-surgery": _do_hf_surgery,
    "dual-knot": _do_dual_knot,
    "top-grading": _do_top_grading,
    "check-injectivity": _do_check_injectivity,
    "plan": _do_plan,
    "certify": _do_certify,
    "list-knots": _do_list_knots,
}


if __name__ == "__main__":
    raise SystemExit(main())
