"""Command-line interface: ``glat <command> ...``.

Exit status is 0 whenever a computation finishes (whatever the verdict),
2 for bad input and 3 when an internal self-check fails.
"""

import argparse
import sys

from . import fileformat, gallery, report
from .cohomology import h1_profile
from .errors import GlatError, InputError, InvalidParameter, InvariantViolation
from .groups import DEFAULT_ELEMENT_CAP
from .lattices import dual, equivariant_iso_search, identify_groups, is_permutation_in_basis, transport
from .resolutions import (DEFAULT_COEFF_BOUND, DEFAULT_MAX_TRIALS, DEFAULT_RANK_PADDING, default_rank_bound,
                          flasque_resolution, is_coflasque, is_flasque, similarity_verdict, stably_permutation_verdict)

GALLERY = ("torus-pi", "torus-w", "trepalin")


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _gallery_lattice(name, n=1):
    if name == "torus-pi":
        return gallery.torus_pi_lattice()
    if name == "torus-w":
        return gallery.torus_w_lattice()
    if name == "trepalin":
        return gallery.trepalin_lattice(n)
    if name.startswith("trepalin-"):
        try:
            return gallery.trepalin_lattice(int(name[len("trepalin-"):]))
        except ValueError:
            pass
    raise InvalidParameter(f"unknown gallery lattice {name!r} (choose torus-pi, torus-w, trepalin-N)")


def _load(args, path=None):
    path = path if path is not None else getattr(args, "path", None)
    if getattr(args, "gallery", None):
        if path not in (None, "-"):
            raise InvalidParameter("give either a lattice file or --gallery, not both")
        return _gallery_lattice(args.gallery)
    if path in (None, "-"):
        return fileformat.loads(sys.stdin.read(), element_cap=args.element_cap)
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return fileformat.loads(text, element_cap=args.element_cap)


def _obstruction(args, lat):
    rank_bound = args.rank_bound or default_rank_bound(lat)
    rep = stably_permutation_verdict(lat, rank_bound=rank_bound, coeff_bound=args.coeff_bound,
                                     max_trials=args.max_trials)
    return report.obstruction_report(rep, args.max_trials, rank_bound, args.coeff_bound)


def cmd_show(args):
    return report.show_report(_load(args))


def cmd_cohomology(args):
    lat = _load(args)
    which = None
    if args.subgroup is not None:
        count = len(lat.group.subgroups())
        if not 0 <= args.subgroup < count:
            raise InvalidParameter(f"subgroup index {args.subgroup} out of range 0..{count - 1}")
        which = args.subgroup
    elif not args.all_subgroups:
        which = len(lat.group.subgroups()) - 1
    return report.cohomology_report(lat, which, use_dual=args.dual)


def cmd_flasque_resolution(args):
    res = flasque_resolution(_load(args))
    if args.emit == "s":
        return fileformat.dumps(res.s)
    if args.emit == "f":
        return fileformat.dumps(res.f)
    return report.resolution_report(res)


def cmd_check(args):
    lat = _load(args)
    if args.property == "permutation":
        return report.check_report(lat, "permutation (in the given basis)", is_permutation_in_basis(lat))
    if args.property in ("coflasque", "flasque"):
        fn = is_coflasque if args.property == "coflasque" else is_flasque
        ok, wit = fn(lat)
        value = None
        if wit is not None:
            target = lat if args.property == "coflasque" else dual(lat)
            value = h1_profile(target)[wit]
        return report.check_report(lat, args.property, ok, wit, value)
    return _obstruction(args, lat)


def cmd_similar(args):
    a = _load(args, args.a)
    b = _load(args, args.b)
    rank_bound = args.rank_bound or max(a.rank, b.rank) + DEFAULT_RANK_PADDING
    res = similarity_verdict(a, b, rank_bound=rank_bound, coeff_bound=args.coeff_bound,
                             max_trials=args.max_trials)
    return report.similarity_report(a, b, res, args.max_trials, rank_bound, args.coeff_bound)


def cmd_conjugacy(args):
    a = _load(args, args.a)
    b = _load(args, args.b)
    if a.group is not b.group:
        b = transport(b, a.group, identify_groups(a.group, b.group))
    res = equivariant_iso_search(a, b, args.coeff_bound, max_trials=args.max_trials)
    return report.iso_report(a, b, res, args.coeff_bound, args.max_trials)


def cmd_gallery(args):
    if args.name == "trepalin":
        return fileformat.dumps(gallery.trepalin_lattice(args.n))
    return fileformat.dumps(_gallery_lattice(args.name))


def cmd_report(args):
    lat = _load(args)
    if args.flasque_part:
        lat = flasque_resolution(lat).f
    return _obstruction(args, lat)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank-bound", type=_positive, default=None,
                        help="largest padded rank tried by searches (default: rank + 8)")
    common.add_argument("--coeff-bound", type=_positive, default=DEFAULT_COEFF_BOUND,
                        help="coefficient box for isomorphism searches (default: 3)")
    common.add_argument("--max-trials", type=_positive, default=DEFAULT_MAX_TRIALS,
                        help="total candidate maps tried by searches")
    common.add_argument("--element-cap", type=_positive, default=DEFAULT_ELEMENT_CAP,
                        help="abort group generation beyond this many elements")
    common.add_argument("--format", choices=("human", "kv"), default="human")
    common.add_argument("--gallery", metavar="NAME",
                        help="use a built-in lattice (torus-pi, torus-w, trepalin-N) instead of a file")

    p = argparse.ArgumentParser(prog="glat", description="Cohomology and flasque resolutions of G-lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, path=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if path:
            sp.add_argument("path", nargs="?", help="lattice file ('-' or omitted: standard input)")
        sp.set_defaults(fn=fn)
        return sp

    add("show", cmd_show, "describe a lattice")
    sp = add("cohomology", cmd_cohomology, "H1 over the whole group or its subgroups")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--subgroup", type=int, metavar="INDEX")
    g.add_argument("--all-subgroups", action="store_true")
    sp.add_argument("--dual", action="store_true", help="use the dual lattice")
    sp = add("flasque-resolution", cmd_flasque_resolution, "build 0 -> M -> S -> F -> 0")
    sp.add_argument("--emit", choices=("report", "s", "f"), default="report",
                    help="print the report, or the lattice file of S or F")
    sp = sub.add_parser("check", help="test a lattice property")
    csub = sp.add_subparsers(dest="property", required=True)
    for prop in ("permutation", "coflasque", "flasque", "stably-permutation"):
        cp = csub.add_parser(prop, parents=[common])
        cp.add_argument("path", nargs="?")
        cp.set_defaults(fn=cmd_check)
    for name, fn, help_ in (("similar", cmd_similar, "compare two lattices up to permutation padding"),
                            ("conjugacy", cmd_conjugacy,
                             "bounded search for an equivariant unimodular map, generators matched by position")):
        sp = add(name, fn, help_, path=False)
        sp.add_argument("a")
        sp.add_argument("b")
    sp = sub.add_parser("gallery", help="print a built-in lattice file")
    sp.add_argument("name", choices=GALLERY)
    sp.add_argument("--n", type=_positive, default=1)
    sp.set_defaults(fn=cmd_gallery, format="human")
    sp = sub.add_parser("report", help="obstruction reports")
    rsub = sp.add_subparsers(dest="kind", required=True)
    rp = rsub.add_parser("theorem-b", parents=[common],
                         help="stable-permutation obstruction report with bounded search")
    rp.add_argument("path", nargs="?")
    rp.add_argument("--flasque-part", action="store_true",
                    help="analyse F from the flasque resolution instead of the lattice")
    rp.set_defaults(fn=cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        out = args.fn(args)
    except InvariantViolation as exc:
        print(f"glat: internal check failed: {exc}", file=sys.stderr)
        return 3
    except GlatError as exc:
        print(f"glat: error: {exc}", file=sys.stderr)
        return 2
    if isinstance(out, report.Report):
        out = out.render(args.format)
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
