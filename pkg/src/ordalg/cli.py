"""Command-line front end.

Exit codes: 0 means the command succeeded and every requested check passed;
1 means a check failed (stdout carries one stable machine-readable line,
``FAIL axiom=<label> witness=(<elements>) lhs=<v> rhs=<v>``); 2 means the
input or usage was bad.  Human-oriented prose goes to stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from pathlib import Path

from . import search as search_mod
from .congruence import congruence_lattice, maltsev_report
from .core import (Algebra, ClassTag, OrdalgError, ParseError, Report,
                   StructureError, UNDEF_TOKEN, first_table_difference,
                   project_to_class)
from .fileio import parse_algebra, serialize_algebra
from .implication import (check_ncis_properties, derive_implication,
                          derive_sections, validate_ncis)
from .residuated import (BridgeError, check_divisible, check_rrs_properties,
                         ncis_rrs_bridge, rrs_from_srs, srs_from_rrs,
                         validate_rrs, validate_srs)
from .sectioned import validate_sectioned
from .search import SearchSpec, count_models, enumerate_models, find_counterexample
from .varieties import (ialgebra_from_ncis, ncis_from_ialgebra,
                        ralgebra_from_rrs, rrs_from_ralgebra,
                        validate_ialgebra, validate_ralgebra)
from .core import validate_join_semilattice

_CLASS_NAMES = [t.value for t in ClassTag]


def _load(path: str) -> Algebra:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StructureError(f"cannot read {path}: {exc}") from exc
    return parse_algebra(text)


def _report_exit(rep: Report, what: str) -> int:
    if rep.ok:
        print(f"PASS {what}")
        if rep.note:
            print(rep.note, file=sys.stderr)
        return 0
    print(rep.fail_line())
    if rep.note:
        print(rep.note, file=sys.stderr)
    return 1


def _validator_chain(alg: Algebra, tag: ClassTag, props: bool, subvariety: bool):
    """Reports to run, in order, for `check --class <tag>`."""
    reps: list[tuple[Report, str]] = []
    if tag == ClassTag.JSL:
        reps.append((validate_join_semilattice(alg), "class=jsl"))
    elif tag == ClassTag.SECTIONED:
        reps.append((validate_join_semilattice(alg), "class=jsl"))
        if reps[-1][0].ok:
            reps.append((validate_sectioned(alg), "class=sectioned"))
    elif tag == ClassTag.NCIS:
        reps.append((validate_ncis(alg), "class=ncis"))
        if props and reps[-1][0].ok:
            reps.append((check_ncis_properties(alg), "props=ncis"))
    elif tag == ClassTag.SRS:
        reps.append((validate_srs(srs_from_rrs(alg)), "class=srs"))
    elif tag == ClassTag.RRS:
        reps.append((validate_rrs(alg), "class=rrs"))
        if props and reps[-1][0].ok:
            reps.append((check_rrs_properties(alg), "props=rrs"))
        if subvariety and reps[-1][0].ok:
            reps.append((check_divisible(alg), "divisible=rrs"))
    elif tag == ClassTag.IALG:
        reps.append((validate_ialgebra(alg), "class=ialg"))
    elif tag == ClassTag.RALG:
        reps.append((validate_ralgebra(alg, subvariety=subvariety), "class=ralg"))
    return reps


def cmd_check(args) -> int:
    alg = _load(args.file)
    tag = ClassTag(args.klass) if args.klass else alg.class_tag
    rc = 0
    for rep, what in _validator_chain(alg, tag, args.props, args.subvariety):
        rc = _report_exit(rep, what)
        if rc:
            return rc
    return rc


_MAPS = {
    # code: (source validator, map, target validator, target description)
    "I": ("sectioned", validate_sectioned, derive_implication, validate_ncis),
    "S": ("ncis", validate_ncis, derive_sections, validate_sectioned),
    "A": ("ncis", validate_ncis, ialgebra_from_ncis, validate_ialgebra),
    "J": ("ialg", validate_ialgebra, ncis_from_ialgebra, validate_ncis),
    "B": ("rrs", validate_rrs, ralgebra_from_rrs, validate_ralgebra),
    "Q": ("ralg", validate_ralgebra, rrs_from_ralgebra, validate_rrs),
    "R": ("srs", lambda a: validate_srs(srs_from_rrs(a)),
          lambda a: rrs_from_srs(srs_from_rrs(a)), validate_rrs),
}


def cmd_derive(args) -> int:
    alg = _load(args.file)
    source_name, source_check, mapper, target_check = _MAPS[args.map]
    rep = source_check(alg)
    if not rep.ok:
        print(rep.fail_line())
        print(f"input is not a valid {source_name} algebra", file=sys.stderr)
        return 1
    derived = mapper(alg)
    text = serialize_algebra(derived)
    reparsed = parse_algebra(text)
    rep = target_check(reparsed)
    if not rep.ok:
        print(rep.fail_line())
        print("derived output failed target validation", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


_PAIRS = {
    "sectioned-ncis": (ClassTag.SECTIONED, validate_sectioned,
                       derive_implication, derive_sections),
    "ncis-ialg": (ClassTag.NCIS, validate_ncis,
                  ialgebra_from_ncis, ncis_from_ialgebra),
    "rrs-ralg": (ClassTag.RRS, validate_rrs, ralgebra_from_rrs, rrs_from_ralgebra),
    "srs-rrs": (ClassTag.SRS, lambda a: validate_srs(srs_from_rrs(a)),
                lambda a: rrs_from_srs(srs_from_rrs(a)), lambda a: a),
    "ncis-rrs": (ClassTag.NCIS, validate_ncis,
                 lambda a: ncis_rrs_bridge(a, "to_rrs"),
                 lambda a: ncis_rrs_bridge(a, "to_ncis")),
}


def cmd_roundtrip(args) -> int:
    source_tag, source_check, forward, backward = _PAIRS[args.pair]
    alg = project_to_class(_load(args.file), source_tag)
    rep = source_check(alg)
    if not rep.ok:
        print(rep.fail_line())
        print(f"input is not a valid {args.pair.split('-')[0]} algebra",
              file=sys.stderr)
        return 1
    back = backward(forward(alg))
    diff = first_table_difference(alg, dataclasses.replace(
        back, class_tag=alg.class_tag, name=alg.name))
    if diff is None:
        print("IDENTICAL")
        return 0
    table, coords, left, right = diff
    cell = ",".join(coords)
    print(f"DIFFER table={table} cell=({cell}) left={left} right={right}")
    return 1


def cmd_con(args) -> int:
    alg = _load(args.file)
    try:
        lat = congruence_lattice(alg)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    rep = maltsev_report(alg, lat)
    print(f"congruences: {lat.size}")
    print(f"three_permutable: {'true' if rep.three_permutable else 'false'}")
    print(f"con_distributive: {'true' if rep.con_distributive else 'false'}")
    print(f"weakly_regular: {'true' if rep.weakly_regular else 'false'}")
    if args.report == "full":
        for part in lat.congruences:
            print(part.notation(alg.labels))
    if rep.witness:
        print(rep.witness, file=sys.stderr)
    return 0


def cmd_search(args) -> int:
    try:
        tag = ClassTag(args.klass)
    except ValueError:
        print(f"unknown class {args.klass!r}", file=sys.stderr)
        return 2
    spec = SearchSpec(tag, args.size, upto=args.upto, violate=args.violate,
                      limit=args.limit, free_imp=args.free_imp)
    if os.environ.get(search_mod.ENV_MAX_SIZE) and \
            args.size > search_mod.DEFAULT_MAX_SIZE:
        print(f"warning: size {args.size} above the default cap of "
              f"{search_mod.DEFAULT_MAX_SIZE}; identity scans are O(n^4) and "
              "canonicalization is factorial, expect a long run",
              file=sys.stderr)
    if args.violate:
        model = find_counterexample(spec)
        if model is None:
            print("NONE")
        else:
            sys.stdout.write(serialize_algebra(model))
        return 0
    if args.count:
        for n in spec.sizes():
            sub = SearchSpec(tag, n, free_imp=args.free_imp)
            print(f"class={tag.value} size={n} count={count_models(sub)}")
        return 0
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        written = 0
        for model in enumerate_models(spec):
            (outdir / f"{model.name}.alg").write_text(serialize_algebra(model),
                                                      encoding="utf-8")
            written += 1
        print(f"wrote {written} models to {outdir}", file=sys.stderr)
        return 0
    first = True
    for model in enumerate_models(spec):
        if not first:
            print()
        sys.stdout.write(serialize_algebra(model))
        first = False
    return 0


def render_table(alg: Algebra, name: str) -> str:
    """Paper-style rendering: label header row/column, '-' for undefined."""
    table = getattr(alg, name)
    if table is None:
        raise StructureError(f"no {name} table present")
    n = alg.n
    width = max(len(lab) for lab in alg.labels)
    corner = max(width, len(name))

    def tok(v: int | None) -> str:
        return UNDEF_TOKEN if v is None else alg.label(v)

    header_cells = " ".join(lab.ljust(width) for lab in alg.labels).rstrip()
    lines = [f"{name.ljust(corner)} | {header_cells}"]
    lines.append("-" * (corner + 1) + "+" + "-" * (len(header_cells) + 1))
    for i in range(n):
        cells = " ".join(tok(table.values[i][j]).ljust(width)
                         for j in range(n)).rstrip()
        lines.append(f"{alg.label(i).ljust(corner)} | {cells}")
    return "\n".join(lines)


def cmd_tables(args) -> int:
    alg = _load(args.file)
    names = [args.op] if args.op else [name for name, t in
                                       (("join", alg.join), ("meet", alg.meet),
                                        ("imp", alg.imp), ("prod", alg.prod))
                                       if t is not None]
    chunks = []
    for name in names:
        if getattr(alg, name, None) is None:
            print(f"no {name} table in {args.file}", file=sys.stderr)
            return 2
        chunks.append(render_table(alg, name))
    print("\n\n".join(chunks))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordalg",
        description="Finite join-semilattice workbench: validation, "
                    "derivations, congruences, model search, table printing.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="validate an algebra file against a class")
    p.add_argument("file")
    p.add_argument("--class", dest="klass", choices=_CLASS_NAMES,
                   help="axiom system to check (default: inferred from tables)")
    p.add_argument("--props", action="store_true",
                   help="also check the derived-property suite")
    p.add_argument("--subvariety", action="store_true",
                   help="also check the divisibility identity (ralg/rrs)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", help="apply a conversion map and print the result")
    p.add_argument("file")
    p.add_argument("--map", required=True, choices=sorted(_MAPS),
                   help="I: sectioned->ncis  S: ncis->sectioned  A: ncis->ialg  "
                        "J: ialg->ncis  B: rrs->ralg  Q: ralg->rrs  R: srs->rrs")
    p.add_argument("--out", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("roundtrip", help="map forward and back, compare tables")
    p.add_argument("file")
    p.add_argument("--pair", required=True, choices=sorted(_PAIRS))
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("con", help="congruence lattice and Maltsev verdicts")
    p.add_argument("file")
    p.add_argument("--report", choices=["summary", "full"], default="summary")
    p.set_defaults(func=cmd_con)

    p = sub.add_parser("search", help="enumerate models up to isomorphism")
    p.add_argument("--class", dest="klass", required=True, choices=_CLASS_NAMES)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--upto", action="store_true", help="sizes 1..N")
    p.add_argument("--count", action="store_true", help="print counts only")
    p.add_argument("--violate", help="search for a property counterexample")
    p.add_argument("--free-imp", dest="free_imp", action="store_true",
                   help="enumerate arrow tables by constraint search instead "
                        "of sectional derivation")
    p.add_argument("--limit", type=int)
    p.add_argument("--out", help="write models as .alg files into a directory")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("tables", help="print operation tables")
    p.add_argument("file")
    p.add_argument("--op", choices=["join", "meet", "imp", "prod"])
    p.set_defaults(func=cmd_tables)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BridgeError as exc:
        print(exc.report.fail_line())
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (StructureError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except OrdalgError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
