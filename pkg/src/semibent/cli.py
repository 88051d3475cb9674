"""Command-line entry point: ``semibent <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import boolfun as bf
from .constructions import (
    construction1, construction2, construction3, hadamard_partition, semibent_audit,
)
from .errors import SemibentError
from .hexassign import (
    BUILTIN_LAYOUTS, Assignment, builtin_layout, family_of, verify,
)
from .ortho import cyclic_order, ortho_table, orthogonality_matrix
from .window import analyze_family_depth, semibent_depth

FAMILY_KEYS = ("construction", "m", "s", "t", "u", "d", "poly", "bent_poly", "offset")


def _family_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("family")
    g.add_argument("--construction", type=int, choices=(1, 2, 3), default=None)
    g.add_argument("--m", type=int, default=None, help="number of base variables")
    g.add_argument("--s", type=int, default=None)
    g.add_argument("--t", type=int, default=None)
    g.add_argument("--u", type=int, default=None, help="bent extension variables (construction 2)")
    g.add_argument("--d", type=int, default=None, help="alpha length (construction 3)")
    g.add_argument("--poly", default=None,
                   help="primitive polynomial, e.g. 0xB or x^3+x+1 (default: built-in table)")
    g.add_argument("--bent-poly", default=None, help="polynomial for the bent extension field")
    g.add_argument("--offset", type=int, default=None, help="exponent offset of the MM map")


def make_family(args):
    cons = args.construction or 1
    if args.m is None:
        raise SemibentError("--m is required")
    offset = args.offset or 0
    if cons == 3:
        return construction3(args.m, args.d if args.d is not None else 2, args.poly, offset)[1]
    _, fam = construction1(args.m, args.s, args.t, args.poly, offset)
    if cons == 2:
        if args.u is None:
            raise SemibentError("--u is required for construction 2")
        _, fam = construction2(fam, args.u, bent_field=args.bent_poly)
    return fam


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def _sequence_lines(family) -> str:
    lines = []
    for sid in family.ids():
        for j, seq in enumerate(family.get(sid).sequences):
            lines.append(f"{sid} {j} {bf.format_sequence(seq)}")
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------------

def cmd_generate(args) -> int:
    fam = make_family(args)
    audit = semibent_audit(fam)
    man = fam.manifest()
    man["audit"] = audit
    print(f"{fam!r}: {fam.n_sets} sets x {fam.set_size} sequences x length {fam.length}")
    print(f"nonzero combinations semi-bent: {audit['all_semibent']}; parseval: {audit['parseval']}")
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "manifest.json").write_text(json.dumps(man, indent=2) + "\n")
        if args.sequences:
            (out / "sequences.txt").write_text(_sequence_lines(fam))
    return 0 if audit["all_semibent"] and audit["parseval"] else 1


def cmd_table(args) -> int:
    fam = make_family(args)
    table = ortho_table(fam, "cyclic" if args.cyclic_order else "lex")
    text = table.to_csv() if args.format == "csv" else table.to_grid(ascii=args.format == "ascii")
    _write(args.output, text)
    if args.figure:
        from .plotting import save_ortho_table
        save_ortho_table(table, args.figure, title=repr(fam))
    return 0


def _load_layout(args) -> Assignment:
    if args.layout_file:
        return Assignment.loads(Path(args.layout_file).read_text())
    if args.layout:
        return builtin_layout(args.layout)
    raise SemibentError("give --layout or --layout-file")


def cmd_verify(args) -> int:
    lay = _load_layout(args)
    fam = family_of(lay)
    rep = verify(lay, fam)
    out = rep.to_dict()
    out["layout"] = lay.name
    ok = rep.passes
    if args.method in ("closed", "both"):
        brute = orthogonality_matrix(fam, "brute_force")
        closed = orthogonality_matrix(fam, "closed_form")
        bad = np.argwhere(brute != closed)
        ids = fam.ids()
        out["closed_form_disagreements"] = [[str(ids[i]), str(ids[j])] for i, j in bad[:20]]
        ok = ok and bad.size == 0
    out["passes"] = ok
    text = json.dumps(out, indent=2) + "\n"
    _write(args.output, text)
    if args.output not in (None, "-"):
        print(f"{lay.name}: {'PASS' if ok else 'FAIL'}  min reuse distance "
              f"{rep.measured_min_reuse_distance:g} (claimed {rep.claimed_D}), "
              f"{len(rep.adjacent_violations)} adjacent violations")
    return 0 if ok else 1


def cmd_depth(args) -> int:
    fam = make_family(args)
    if args.c is not None:
        sid = fam.make_id(args.c, args.alpha or "0" * fam.alpha_len)
        f = bf.function_of(fam.get(sid).sequences[args.index])
        rep = semibent_depth(f, f"{sid}[{args.index}]")
        text = rep.to_json() + "\n" if args.json else rep.to_table() + "\n"
        _write(args.output, text)
        if args.figure:
            from .plotting import save_depth
            save_depth(rep, args.figure)
        return 0
    prof = analyze_family_depth(fam)
    out = prof.to_dict()
    ok = True
    if fam.construction == 2:
        u = fam.params["u"]
        out["endpoint_order_0"] = prof.semibent_at(0)
        out["endpoint_order_u"] = prof.semibent_at(u)
        ok = out["endpoint_order_0"] and out["endpoint_order_u"]
    text = json.dumps(out, indent=2) + "\n" if args.json else prof.to_table() + "\n"
    if not args.json and fam.construction == 2:
        text += (f"endpoints: order 0 {'ok' if out['endpoint_order_0'] else 'FAIL'}, "
                 f"order {fam.params['u']} {'ok' if out['endpoint_order_u'] else 'FAIL'}\n")
    _write(args.output, text)
    if args.figure:
        from .plotting import save_depth
        save_depth(prof, args.figure)
    return 0 if ok else 1


def cmd_plot(args) -> int:
    from .plotting import assignment_svg
    lay = _load_layout(args)
    assignment_svg(lay, periods=args.periods, path=args.output)
    return 0


def partition_text(m: int, s: int | None = None, t: int | None = None) -> str:
    _, fam = construction1(m, s, t)
    s, t = fam.params["s"], fam.params["t"]
    parts = hadamard_partition(m, s, t)
    _, order = cyclic_order(fam)
    lines = []
    for a in order:
        seqs = parts[a].sequences
        lines.append(f"H_{a}")
        lines.extend(bf.format_sequence(row) for row in seqs)
    return "\n".join(lines) + "\n"


def cmd_partition(args) -> int:
    _write(args.output, partition_text(args.m, args.s, args.t))
    return 0


def cmd_export(args) -> int:
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    if args.layout or args.layout_file:
        lay = _load_layout(args)
        (out / f"{lay.name or 'layout'}.hex").write_text(lay.dumps())
        from .plotting import assignment_svg
        assignment_svg(lay, path=out / f"{lay.name or 'layout'}.svg")
        return 0
    fam = make_family(args)
    (out / "manifest.json").write_text(json.dumps(fam.manifest(), indent=2) + "\n")
    (out / "sequences.txt").write_text(_sequence_lines(fam))
    (out / "table.csv").write_text(ortho_table(fam, "lex").to_csv())
    return 0


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semibent", description="Orthogonal semi-bent sequence sets for cellular CDMA.")
    parser.add_argument("--config", help="JSON file whose keys mirror the command-line flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a family and audit it")
    _family_args(p)
    p.add_argument("-o", "--output", help="directory for manifest.json (and sequences.txt)")
    p.add_argument("--sequences", action="store_true", help="also write every sequence")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("table", help="orthogonality of f_c against each Hadamard part")
    _family_args(p)
    p.add_argument("--cyclic-order", "--paper-order", dest="cyclic_order", action="store_true",
                   help="cyclic power order instead of lexicographic")
    p.add_argument("--format", choices=("csv", "grid", "ascii"), default="csv")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--figure", help="also render a heatmap (.svg or .png)")
    p.set_defaults(func=cmd_table)

    for name, helptext, func in (("verify", "check a hexagonal assignment", cmd_verify),
                                 ("plot", "draw a hexagonal assignment", cmd_plot)):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--layout", choices=BUILTIN_LAYOUTS)
        p.add_argument("--layout-file", help="assignment file written by export")
        if name == "verify":
            p.add_argument("--method", choices=("brute", "closed", "both"), default="brute",
                           help="also cross-check the closed-form test over the whole family")
            p.add_argument("-o", "--output", default="-", help="report JSON path")
        else:
            p.add_argument("-o", "--output", required=True, help="SVG or PNG path")
            p.add_argument("--periods", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("depth", help="semi-bent depth of codewords")
    _family_args(p)
    p.add_argument("--c", help="single codeword: combination c")
    p.add_argument("--alpha", help="single codeword: set alpha")
    p.add_argument("--index", type=int, default=0, help="single codeword: index inside the set")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--figure", help="bar chart of semi-bent fractions per order")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("partition", help="the Hadamard partition as sign strings")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("export", help="write manifest, sequences and table (or a layout)")
    _family_args(p)
    p.add_argument("--layout", choices=BUILTIN_LAYOUTS)
    p.add_argument("--layout-file")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_export)
    return parser


def _apply_config(args, parser):
    """Fill options left at their defaults from the JSON config."""
    cfg = json.loads(Path(args.config).read_text())
    for key, val in cfg.items():
        attr = key.replace("-", "_")
        if attr == "command":
            continue
        if not hasattr(args, attr):
            parser.error(f"config key {key!r} is not an option of {args.command}")
        if getattr(args, attr) in (None, False):
            setattr(args, attr, val)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        _apply_config(args, parser)
    try:
        return args.func(args)
    except (SemibentError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
