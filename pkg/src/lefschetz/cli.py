"""Command-line interface: ``lefschetz <command> ...``.

Reports are key=value lines on stdout.  Exit codes: 0 success, 1 validation
failure, 2 parse error (or unreadable input), 3 unsupported input.

``LEFSCHETZ_WORKERS`` sets the number of worker processes used for
signatures; 1 disables parallelism.  Without it the CLI uses up to 4.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import cobordism, fibration, meyer, textio, universal
from .exceptions import LefschetzError, ParseError, UnsupportedError, ValidationError
from .mcg import word_to_matrix

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class _Fail(Exception):
    def __init__(self, code, lines=()):
        super().__init__(code)
        self.code = code
        self.lines = list(lines)


def _load(path: str) -> textio.Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Fail(EXIT_PARSE, ["error=io", f"message={exc}"]) from None
    return textio.parse(text)


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return args.workers
    if meyer.WORKERS_ENV in os.environ:
        return meyer.default_workers()
    return min(4, os.cpu_count() or 1)


def _invariant_lines(f) -> list[str]:
    plus, minus = fibration.critical_counts(f)
    return [f"chi={fibration.euler_characteristic(f)}", f"n_plus={plus}", f"n_minus={minus}",
            f"eta={plus - minus}"]


def _write(doc, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(textio.to_text(doc))


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    f = _load(args.file).fibration(args.index)
    rep = fibration.validate(f)
    return (EXIT_OK if rep.ok else EXIT_INVALID), rep.lines()


def cmd_invariants(args):
    f = _load(args.file).fibration(args.index)
    lines = [f"fiber_genus={f.fiber.genus}", f"fiber_bdry={f.fiber.boundary_count}",
             f"base_genus={f.base.genus}", f"base_bdry={f.base.boundary_count}"]
    return EXIT_OK, lines + _invariant_lines(f)


def cmd_signature(args):
    f = _load(args.file).fibration(args.index)
    return EXIT_OK, [f"sigma={meyer.fibration_signature(f, _workers(args))}"]


def cmd_fibersum(args):
    d1, d2 = _load(args.first), _load(args.second)
    glue = d1.words[args.glue] if args.glue else ()
    s = fibration.fiber_sum(d1.fibration(), d2.fibration(), glue)
    rep = fibration.validate(s)
    lines = rep.lines() + _invariant_lines(s)
    if args.signature:
        lines.append(f"sigma={meyer.fibration_signature(s, _workers(args))}")
    _write(textio.fibration_document(s), args.output)
    return (EXIT_OK if rep.ok else EXIT_INVALID), lines


def cmd_hurwitz(args):
    f = _load(args.file).fibration(args.index)
    g = fibration.hurwitz_move(f, args.at, args.direction)
    same = word_to_matrix(f.lefschetz, f.genus) == word_to_matrix(g.lefschetz, g.genus)
    lines = [f"lefschetz={textio.format_word(g.lefschetz)}", f"monodromy_preserved={int(same)}"]
    lines += _invariant_lines(g)
    _write(textio.fibration_document(g), args.output)
    return EXIT_OK, lines


def _perm(s):
    return tuple(int(v) for v in s.split(","))


def cmd_cover(args):
    f = _load(args.file).fibration(args.index)
    perms = [_perm(p) for p in args.perm]
    lifted = fibration.pullback_cover(f, perms)
    comps = lifted if isinstance(lifted, list) else [lifted]
    lines = [f"components={len(comps)}"]
    for k, c in enumerate(comps, start=1):
        lines += [f"component.{k}.base_genus={c.base.genus}", f"component.{k}.base_bdry={c.base.boundary_count}"]
        lines += [f"component.{k}.{x}" for x in _invariant_lines(c)]
    _write(textio.fibration_document(*comps), args.output)
    return EXIT_OK, lines


def cmd_universal2(args):
    u = universal.build_universal_dim2(_load(args.file).get_presentation())
    rep = universal.universality_report_dim2(u)
    lines = [f"critical_disks={u.critical_disks}", f"two_handles={len(u.relator_loops)}",
             f"framings={','.join(str(v) for v in u.framings)}", f"h2_rank={u.h2_rank}",
             f"torus_amendment={int(u.torus_amendment)}"]
    return (EXIT_OK if rep.ok else EXIT_INVALID), lines + rep.lines()


def _labels(s):
    return [v for v in (s or "").split(",") if v]


def cmd_universal3(args):
    doc = _load(args.file)
    if args.marked is None:
        # report on a PLAN stored in the file
        if doc.plan is None:
            raise _Fail(EXIT_INVALID, ["error=invalid", "message=no PLAN in file and no --marked given"])
        rep = universal.universality_report_dim3(doc.plan)
        return (EXIT_OK if rep.ok else EXIT_INVALID), doc.plan.lines() + rep.lines()
    plan = universal.build_universal_dim3_plan(
        doc.get_presentation(), _labels(args.marked), _labels(args.kernel), _labels(args.spheres))
    rep = universal.universality_report_dim3(plan)
    if args.output:
        out = textio.presentation_document(doc.get_presentation())
        out.plan = plan
        _write(out, args.output)
    return (EXIT_OK if rep.ok else EXIT_INVALID), plan.lines() + rep.lines()


def cmd_cobordism(args):
    reps = []
    for path in args.files:
        doc = _load(path)
        reps += [doc.fibration(i) for i in range(len(doc.fibrations))]
    if not reps:
        raise _Fail(EXIT_INVALID, ["error=empty", "message=no fibrations given"])
    lines = []
    classes = []
    for k, f in enumerate(reps, start=1):
        x = cobordism.CobordismClass.of(f)
        classes.append(x)
        lines += [f"fibration.{k}.sigma={cobordism.sigma_class(x)}", f"fibration.{k}.eta={cobordism.eta(x)}"]
    total = classes[0]
    for x in classes[1:]:
        total = cobordism.class_sum(total, x)
    s, e = cobordism.forgetful_phi(total)
    lattice = cobordism.invariant_image_lattice(classes)
    lines += [f"sum.sigma={s}", f"sum.eta={cobordism.eta(total)}", f"sum.phi={s},{e}",
              "lattice=" + ";".join(f"{a},{b}" for a, b in lattice)]
    return EXIT_OK, lines


def cmd_calibrate(args):
    return EXIT_OK, meyer.calibrate_local_terms().lines()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lefschetz", description="Lefschetz fibration data tools")
    sub = p.add_subparsers(dest="command", required=True)

    def fib(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("file")
        s.add_argument("--index", type=int, default=0, help="which FIBRATION in the file (0-based)")
        s.set_defaults(func=fn)
        return s

    fib("validate", cmd_validate, "check fiber, allowability, closure and structure twist")
    fib("invariants", cmd_invariants, "Euler characteristic and critical point counts")
    s = fib("signature", cmd_signature, "signature of the total space")
    s.add_argument("--workers", type=int)
    s = fib("hurwitz", cmd_hurwitz, "apply an elementary Hurwitz move")
    s.add_argument("--at", type=int, required=True, help="1-based position")
    s.add_argument("--direction", type=int, default=1, choices=(1, -1))
    s.add_argument("--output")
    s = fib("cover", cmd_cover, "pull back along a finite cover of a bounded base")
    s.add_argument("--perm", action="append", default=[], help="permutation of one base generator, e.g. 1,0")
    s.add_argument("--output")

    s = sub.add_parser("fibersum", help="fiber sum of two closed-base fibrations")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--glue", help="name of a WORD in the first file")
    s.add_argument("--signature", action="store_true")
    s.add_argument("--workers", type=int)
    s.add_argument("--output")
    s.set_defaults(func=cmd_fibersum)

    s = sub.add_parser("universal2", help="dimension-2 universal data from a PRESENTATION")
    s.add_argument("file")
    s.set_defaults(func=cmd_universal2)

    s = sub.add_parser("universal3-plan", help="dimension-3 handle plan from a PRESENTATION")
    s.add_argument("file")
    s.add_argument("--marked", help="comma separated marked generator labels; omit to check a stored PLAN")
    s.add_argument("--kernel", default="")
    s.add_argument("--spheres", default="")
    s.add_argument("--output")
    s.set_defaults(func=cmd_universal3)

    s = sub.add_parser("cobordism-report", help="(sigma, eta) of fibrations and the lattice they span")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_cobordism)

    s = sub.add_parser("calibrate", help="local signature constants and their checks")
    s.set_defaults(func=cmd_calibrate)
    return p


def run_command(argv) -> tuple[int, list[str]]:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        return exc.code, exc.lines
    except ParseError as exc:
        return EXIT_PARSE, ["error=parse", f"code={exc.code}", f"line={exc.line}", f"message={exc.message}"]
    except UnsupportedError as exc:
        return EXIT_UNSUPPORTED, ["error=unsupported", f"message={exc}"]
    except ValidationError as exc:
        lines = ["error=validation", f"message={exc}"]
        if hasattr(exc.report, "lines"):
            lines += exc.report.lines()
        return EXIT_INVALID, lines
    except (LefschetzError, ValueError, IndexError, KeyError) as exc:
        return EXIT_INVALID, ["error=invalid", f"message={exc}"]


def main(argv=None) -> int:
    code, lines = run_command(sys.argv[1:] if argv is None else argv)
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
