"""Command-line entry points.

Every subcommand prints a deterministic report (JSON is byte-stable for
identical inputs) and exits 0 when all checks pass, 1 on any failure, 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import FibcatError, chain_category, show_name
from .constructions import comma
from .arrowcat import fibre, op_bundle
from .street import verify_L_monad, verify_K_lemmas
from .algebra import (
    cleavage_to_algebra, direct_supine_oracle, is_fibration, is_opfibration,
    is_pseudo_fibration, is_pseudo_opfibration,
    verify_chevalley_vs_oracle, verify_duality, verify_pseudoalgebra,
)
from .transport import (
    check_preservation, const_fiber, fiber_power, identity_endofunctor,
    lift_algebra, verify_transition,
)
from .report import (
    Report, all_ok, emit_csv, emit_report, render_figure, timed_check, vacuous,
)
from . import dsl
from . import corpus


class UsageError(Exception):
    pass


def resolve_functor_spec(spec):
    """Endofunctor names: identity, const_fiber:<n|NAME>, fiber_power:<n>."""
    if spec == "identity":
        return identity_endofunctor()
    if spec.startswith("const_fiber:"):
        arg = spec.split(":", 1)[1]
        cats = corpus.base_categories()
        if arg in cats:
            return const_fiber(cats[arg], arg)
        if arg.isdigit():
            return const_fiber(chain_category(arg, int(arg)), arg)
        raise UsageError("unknown fibre category %r" % arg)
    if spec.startswith("fiber_power:"):
        arg = spec.split(":", 1)[1]
        if not arg.isdigit() or int(arg) < 1:
            raise UsageError("fiber_power needs a positive integer")
        return fiber_power(int(arg))
    raise UsageError("unknown endofunctor spec %r" % spec)


def _cat_files(paths):
    out = []
    for path in paths:
        if os.path.isdir(path):
            out.extend(sorted(
                os.path.join(path, f) for f in os.listdir(path)
                if f.endswith(".cat")))
        elif not os.path.exists(path):
            raise UsageError("no such file: %s" % path)
        else:
            out.append(path)
    if not out:
        raise UsageError("no .cat files found")
    return out


def _load_contexts(paths):
    ctxs = []
    for path in _cat_files(paths):
        doc = dsl.parse_file(path)
        stem = os.path.splitext(os.path.basename(path))[0]
        ctxs.append((stem, dsl.elaborate(doc)))
    return ctxs


def _gather_bundles(ctxs):
    """Bundles from all files, keyed file-stem/name, deterministically."""
    bundles = {}
    for stem, ctx in ctxs:
        for name in sorted(ctx.bundles):
            key = name if len(ctxs) == 1 else "%s/%s" % (stem, name)
            bundles[key] = ctx.bundles[name]
    if not bundles:
        raise UsageError("no bundles declared in the given files")
    return bundles


# ---------------------------------------------------------------------------
# per-subcommand runners; each returns a list of Reports


def _run_validate(args):
    reports = []
    for path in _cat_files(args.paths):
        def check(path=path):
            dsl.elaborate(dsl.parse_file(path))
            return True

        reports.append(timed_check("validate[%s]" % os.path.basename(path),
                                   "description-file-wellformed", check))
    return reports


def _run_comma(args):
    (stem, ctx), = _load_contexts([args.path])
    r = ctx.functors.get(args.r)
    s = ctx.functors.get(args.s)
    if r is None or s is None:
        raise UsageError("both functors must be declared in the file")
    cr = comma(r, s)

    def summary():
        return True, ["objects=%d" % len(cr.apex.objects),
                      "morphisms=%d" % len(cr.apex.morphisms)]

    return [timed_check("comma[%s/%s]" % (args.r, args.s),
                        "comma-object-universal-property", summary)]


def _run_fibre(args):
    (stem, ctx), = _load_contexts([args.path])
    p = ctx.bundles.get(args.bundle)
    if p is None:
        raise UsageError("unknown bundle %r" % args.bundle)
    if not p.base.has_object(args.obj):
        raise UsageError("unknown base object %r" % args.obj)
    f = fibre(p, args.obj)

    def summary():
        return True, ["objects=%d" % len(f.objects),
                      "morphisms=%d" % len(f.morphisms)]

    return [timed_check("fibre[%s@%s]" % (args.bundle, args.obj),
                        "fibre-by-pullback", summary)]


def _mode_checks(name, p, want_op, want_fib, pseudo):
    reports = []
    if want_op:
        mode = "pseudo-opfibration" if pseudo else "opfibration"

        def run_op(p=p, pseudo=pseudo):
            ok = (is_pseudo_opfibration(p) if pseudo else is_opfibration(p)[0])
            if ok:
                return True
            _, _, witness = direct_supine_oracle(p)
            return False, [witness] if witness else []

        reports.append(timed_check("check-%s[%s]" % (mode, name),
                                   "chevalley-criterion", run_op))
    if want_fib:
        mode = "pseudo-fibration" if pseudo else "fibration"

        def run_fib(p=p, pseudo=pseudo):
            ok = (is_pseudo_fibration(p) if pseudo else is_fibration(p)[0])
            if ok:
                return True
            _, _, witness = direct_supine_oracle(op_bundle(p))
            return False, [witness] if witness else []

        reports.append(timed_check("check-%s[%s]" % (mode, name),
                                   "chevalley-criterion-dual", run_fib))
    return reports


def _run_check(args):
    ctxs = _load_contexts(args.paths)
    bundles = _gather_bundles(ctxs)
    if args.bundle:
        if args.bundle not in bundles:
            raise UsageError("unknown bundle %r" % args.bundle)
        bundles = {args.bundle: bundles[args.bundle]}
    if not args.opfibration and not args.fibration:
        raise UsageError("pick at least one of --opfibration/--fibration")
    reports = []
    for name in sorted(bundles):
        reports.extend(_mode_checks(name, bundles[name],
                                    args.opfibration, args.fibration,
                                    args.pseudo))
    return reports


def _run_monad_laws(args):
    ctxs = _load_contexts(args.paths)
    bundles = _gather_bundles(ctxs)
    squares = [sq for _, ctx in ctxs for _, sq in sorted(ctx.squares.items())]
    return verify_L_monad([bundles[k] for k in sorted(bundles)], squares)


def _run_k_lemmas(args):
    bundles = _gather_bundles(_load_contexts(args.paths))
    return verify_K_lemmas([bundles[k] for k in sorted(bundles)])


def _run_transition(args):
    t = resolve_functor_spec(args.functor)
    ctxs = _load_contexts(args.paths)
    bundles = _gather_bundles(ctxs)
    squares = {}
    for stem, ctx in ctxs:
        for name in sorted(ctx.squares):
            squares["%s/%s" % (stem, name)] = ctx.squares[name]
    return verify_transition(t, bundles, squares)


def _run_lift(args):
    t = resolve_functor_spec(args.functor)
    bundles = _gather_bundles(_load_contexts(args.paths))
    reports = []
    for name in sorted(bundles):
        p = bundles[name]
        ok, cl = is_opfibration(p)
        if not ok:
            reports.append(vacuous("lift[%s:%s]" % (t.name, name),
                                   "lifted-pseudoalgebra",
                                   "bundle is not an opfibration"))
            continue
        alg = cleavage_to_algebra(p, cl)
        lifted = lift_algebra(t, alg)
        reports.extend(verify_pseudoalgebra(
            lifted, label="%s:%s" % (t.name, name)))
    return reports


def _run_preserve(args):
    t = resolve_functor_spec(args.functor)
    bundles = _gather_bundles(_load_contexts(args.paths))
    reports = []
    for name in sorted(bundles):
        reports.extend(check_preservation(t, bundles[name], args.mode,
                                          label="%s:%s:%s" % (t.name, name, args.mode)))
    return reports


def _default_battery(bundles):
    ordered = [bundles[k] for k in sorted(bundles)]
    reports = []
    reports.extend(verify_L_monad(ordered))
    reports.extend(verify_K_lemmas(ordered))
    reports.extend(verify_chevalley_vs_oracle(ordered))
    reports.extend(verify_duality(ordered))
    return reports


def _execute_suite_item(ctx, words):
    verb = words[0]
    if verb == "check":
        mode, names = words[1], words[2:]
        want_op = mode in ("opfibration", "pseudo-opfibration")
        want_fib = mode in ("fibration", "pseudo-fibration")
        pseudo = mode.startswith("pseudo")
        out = []
        for n in names:
            out.extend(_mode_checks(n, ctx.bundles[n], want_op, want_fib, pseudo))
        return out
    if verb == "monad-laws":
        return verify_L_monad([ctx.bundles[n] for n in words[1:]])
    if verb == "k-lemmas":
        return verify_K_lemmas([ctx.bundles[n] for n in words[1:]])
    if verb == "transition":
        t = resolve_functor_spec(words[1])
        return verify_transition(t, {n: ctx.bundles[n] for n in words[2:]})
    if verb == "preserve":
        t = resolve_functor_spec(words[1])
        mode = words[2]
        out = []
        for n in words[3:]:
            out.extend(check_preservation(t, ctx.bundles[n], mode,
                                          label="%s:%s:%s" % (t.name, n, mode)))
        return out
    if verb == "comma":
        cr = comma(ctx.functors[words[1]], ctx.functors[words[2]])
        return [Report("comma[%s/%s]" % (words[1], words[2]),
                       "comma-object-universal-property", "pass",
                       ["objects=%d" % len(cr.apex.objects),
                        "morphisms=%d" % len(cr.apex.morphisms)])]
    raise UsageError("unknown suite verb %r" % verb)


def _run_report(args):
    reports = []
    if args.paths:
        ctxs = _load_contexts(args.paths)
        any_suite = False
        for stem, ctx in ctxs:
            for name in sorted(ctx.suites):
                any_suite = True
                for words in ctx.suites[name]:
                    reports.extend(_execute_suite_item(ctx, words))
        if not any_suite:
            reports.extend(_default_battery(_gather_bundles(ctxs)))
    else:
        reports.extend(_default_battery(corpus.corpus_bundles()))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "report.json"), "wb") as fh:
            fh.write(emit_report(reports, "json"))
        with open(os.path.join(args.out, "report.csv"), "wb") as fh:
            fh.write(emit_csv(reports))
        render_figure(reports, os.path.join(args.out, "report.png"))
    return reports


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    top = argparse.ArgumentParser(
        prog="fibcat",
        description="finite 2-category engine: bundles, fibrations, "
                    "indexed endofunctors",
        parents=[common])
    sub = top.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("validate", help="parse and elaborate .cat files")
    p.add_argument("paths", nargs="+")
    p.set_defaults(run=_run_validate)

    p = add_parser("comma", help="comma category of two functors")
    p.add_argument("path")
    p.add_argument("r")
    p.add_argument("s")
    p.set_defaults(run=_run_comma)

    p = add_parser("fibre", help="fibre of a bundle over a base object")
    p.add_argument("path")
    p.add_argument("bundle")
    p.add_argument("obj")
    p.set_defaults(run=_run_fibre)

    p = add_parser("check", help="(op)fibration checks for bundles")
    p.add_argument("paths", nargs="+")
    p.add_argument("--opfibration", action="store_true")
    p.add_argument("--fibration", action="store_true")
    p.add_argument("--pseudo", action="store_true")
    p.add_argument("--bundle")
    p.set_defaults(run=_run_check)

    p = add_parser("monad-laws", help="slice monad laws over bundles")
    p.add_argument("paths", nargs="+")
    p.set_defaults(run=_run_monad_laws)

    p = add_parser("k-lemmas", help="two-level slice lemmas")
    p.add_argument("paths", nargs="+")
    p.set_defaults(run=_run_k_lemmas)

    p = add_parser("transition", help="transition laws along an endofunctor")
    p.add_argument("--functor", required=True)
    p.add_argument("paths", nargs="+")
    p.set_defaults(run=_run_transition)

    p = add_parser("lift", help="lift opfibration algebras along an endofunctor")
    p.add_argument("--functor", required=True)
    p.add_argument("paths", nargs="+")
    p.set_defaults(run=_run_lift)

    p = add_parser("preserve", help="mode preservation for one endofunctor")
    p.add_argument("--functor", required=True)
    p.add_argument("--mode", required=True,
                   choices=("opfibration", "fibration",
                            "pseudo-opfibration", "pseudo-fibration"))
    p.add_argument("paths", nargs="+")
    p.set_defaults(run=_run_preserve)

    p = add_parser("report", help="run suites (or the stock battery) and "
                                      "write JSON/CSV/PNG artifacts")
    p.add_argument("paths", nargs="*")
    p.add_argument("--out")
    p.set_defaults(run=_run_report)

    return top


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        reports = args.run(args)
    except (UsageError, dsl.ParseError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except FibcatError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    sys.stdout.buffer.write(emit_report(reports, args.format))
    sys.stdout.buffer.flush()
    return 0 if all_ok(reports) else 1


if __name__ == "__main__":
    sys.exit(main())
