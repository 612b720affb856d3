"""Command-line front end.

Exit status: 0 on success or a true verdict, 1 on a false verdict, 2 on bad input
or usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import corpus as corpus_mod
from . import report
from .exceptions import LatinSquareError
from .oracle import verify_wedderburn
from .quasigroup import LatinSquare, parse_latin_square
from .scheme import base_point, orthogonal_array
from .search import criterion_search
from .subconstituent import (
    fixed_point_profile,
    moufang_fixed_prediction,
    pi_via_division,
    properties,
    right_bol_certificate,
    root_label,
)
from .transforms import Conjugacy, Isotopy, apply_conjugacy, apply_isotopy

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def read_square(source: str) -> LatinSquare:
    """Load from a path, ``-`` for stdin, or ``corpus:NAME``."""
    if source.startswith("corpus:"):
        return corpus_mod.square(source[len("corpus:"):])
    if source == "-":
        return parse_latin_square(sys.stdin.read())
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    return parse_latin_square(text)


def parse_base(L: LatinSquare, text: str):
    try:
        r, c = (int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--base expects ROW,COLUMN, got {text!r}") from None
    return base_point(L, r, c)


def _emit(args, doc: dict, text: str) -> None:
    if args.json:
        json.dump(doc, sys.stdout, indent=2, sort_keys=False)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _fmt_table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_validate(args) -> int:
    L = read_square(args.file)
    doc = report.envelope("validate", L)
    doc["valid"] = True
    _emit(args, doc, f"valid Latin square of order {L.order}")
    return EXIT_OK


def cmd_properties(args) -> int:
    L = read_square(args.file)
    doc = report.envelope("properties", L)
    props = properties(L).as_dict()
    lines = [f"{k:15s} {props[k]}" for k in properties(L).FLAGS]
    for k, v in props["reasons"].items():
        w = props["witnesses"].get(k)
        lines.append(f"  {k}: {v}" + (f" at {tuple(w)}" if w else ""))
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_pi(args) -> int:
    L = read_square(args.file)
    p = parse_base(L, args.base)
    perm = pi_via_division(L, p)
    doc = report.envelope("pi", L)
    doc["pi"] = report.perm_json(perm)
    doc["base_records"] = [report.base_record(L, p)]
    _emit(args, doc, str(perm))
    return EXIT_OK


def _label_text(label: str) -> str:
    if "/" in label:
        return "eps = " + root_label(Fraction(label))
    return label


def cmd_modules(args) -> int:
    L = read_square(args.file)
    p = parse_base(L, args.base)
    rec = report.base_record(L, p)
    doc = report.envelope("modules", L)
    doc["base_records"] = [rec]
    if rec["module_table"] is None:
        if args.json:
            _emit(args, doc, "")
        print(f"no module table for n = {L.order} (needs n >= 5)", file=sys.stderr)
        return EXIT_INPUT
    rows = [["dim", "mult", "label"]] + [
        [str(e["dimension"]), str(e["multiplicity"]), _label_text(e["label"])]
        for e in rec["module_table"]
    ]
    text = (
        f"base {tuple(p)}  pi {rec['pi']}  cycles {rec['cycle_structure']}\n"
        + _fmt_table(rows)
        + f"\nbalance {rec['balance']} = {L.order}^2\n"
        + f"signature {rec['signature']['text']}  (N = {rec['signature']['N']}, dim {rec['predicted_dim']})"
    )
    _emit(args, doc, text)
    return EXIT_OK


def cmd_profile(args) -> int:
    L = read_square(args.file)
    prof = fixed_point_profile(L, jobs=args.jobs)
    doc = report.envelope("profile", L)
    doc["profile"] = report.profile_json(prof)
    records = [report.base_record(L, p) for p in orthogonal_array(L)]
    doc["base_records"] = records
    try:
        cert = right_bol_certificate(L)
        doc["certificate"] = report.certificate_json(cert)
    except LatinSquareError:
        pass
    if properties(L).is_moufang:
        pred = moufang_fixed_prediction(L)
        holds = all(c == pred for row in prof.fixed_counts for c in row)
        doc["moufang"] = {"applicable": True, "predicted_fixed": pred, "holds": holds}
    else:
        doc["moufang"] = {"applicable": False, "predicted_fixed": None, "holds": None}

    if args.tsv and not args.json:
        out = ["row\tcol\tentry\tcycle_structure\tfixed_count\tN\tpredicted_dim"]
        for rec in records:
            r, c, e = rec["base"]
            N = "" if rec["signature"] is None else str(rec["signature"]["N"])
            dim = "" if rec["predicted_dim"] is None else str(rec["predicted_dim"])
            out.append(f"{r}\t{c}\t{e}\t{rec['cycle_structure']}\t{rec['fixed_count']}\t{N}\t{dim}")
        sys.stdout.write("\n".join(out) + "\n")
        return EXIT_OK

    counts = prof.fixed_counts
    rows = [[""] + [f"c{c}" for c in L.symbols]]
    rows += [[f"r{r}"] + [str(x) for x in counts[r - 1]] for r in L.symbols]
    cols = prof.column_structures()
    text = "fixed points of pi per base point\n" + _fmt_table(rows) + "\n\ncolumn cycle structures\n"
    text += "\n".join(f"  c{j}: {'varies' if cs is None else cs}" for j, cs in enumerate(cols, 1))
    text += f"\nrow-constant: {prof.row_constant}"
    _emit(args, doc, text)
    return EXIT_OK


def _verify_one(job):
    L, p, center = job
    return verify_wedderburn(L, p, center=center)


def cmd_verify(args) -> int:
    L = read_square(args.file)
    if args.all:
        points = orthogonal_array(L)
    else:
        points = [parse_base(L, args.base or "1,1")]
    jobs = args.jobs or os.cpu_count() or 1
    work = [(L, p, args.center) for p in points]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            reps = list(pool.map(_verify_one, work))
    else:
        reps = [_verify_one(w) for w in work]
    doc = report.envelope("verify", L)
    doc["oracle"] = [report.oracle_json(r) for r in reps]
    lines = []
    for r in reps:
        line = f"base {r.base}: predicted {r.predicted_dim if r.predicted_dim is not None else 'n/a'}, oracle {r.oracle_dim}"
        if r.center_dim is not None:
            line += f", center {r.center_dim}"
        line += {True: ", match", False: ", MISMATCH", None: ""}[r.match]
        lines.append(line)
    _emit(args, doc, "\n".join(lines))
    return EXIT_FALSE if any(r.match is False for r in reps) else EXIT_OK


def cmd_certify(args) -> int:
    L = read_square(args.file)
    cert = right_bol_certificate(L)
    doc = report.envelope("certify", L)
    doc["certificate"] = report.certificate_json(cert)
    text = str(cert) + (f": {cert.detail}" if cert.detail else "")
    _emit(args, doc, text)
    return EXIT_OK if cert.certified else EXIT_FALSE


def cmd_transform(args) -> int:
    L = read_square(args.file)
    if args.isotopy:
        try:
            with open(args.isotopy) as fh:
                iso = Isotopy.parse(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.isotopy}: {exc.strerror}") from None
        out = apply_isotopy(L, iso)
        meta = {"isotopy": [list(iso.sigma_r), list(iso.sigma_c), list(iso.sigma_e)]}
    else:
        conj = Conjugacy.from_word(args.conjugacy)
        out = apply_conjugacy(L, conj)
        meta = {"conjugacy": conj.word}
    doc = report.envelope("transform", L)
    doc["transform"] = meta
    doc["square"] = out.to_text()
    if args.json:
        _emit(args, doc, "")
    else:
        sys.stdout.write(out.to_text())
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.name:
        entry = corpus_mod.load(args.name)
        doc = report.envelope("corpus", entry.square)
        doc["square"] = entry.square.to_text()
        doc["corpus"] = [_corpus_json(entry)]
        if args.json:
            _emit(args, doc, "")
        else:
            sys.stdout.write(entry.text)
        return EXIT_OK
    entries = corpus_mod.corpus()
    doc = report.envelope("corpus")
    doc["corpus"] = [_corpus_json(e) for e in entries]
    _emit(args, doc, "\n".join(f"{e.name:10s} n={e.square.order:<3d} {e.description}" for e in entries))
    return EXIT_OK


def _corpus_json(e) -> dict:
    return {"name": e.name, "order": e.square.order, "description": e.description,
            "boxed": [list(b) for b in sorted(e.boxed)]}


def cmd_criterion_search(args) -> int:
    try:
        orders = tuple(int(t) for t in args.orders.split(","))
    except ValueError:
        raise UsageError(f"--orders expects comma-separated integers, got {args.orders!r}") from None
    if any(n < 2 for n in orders) or args.budget < 0:
        raise UsageError("orders must be at least 2 and the budget non-negative")
    res = criterion_search(args.budget, orders, args.seed)
    doc = report.envelope("criterion-search", seed=args.seed)
    doc["criterion_search"] = {
        "loops": res.loops,
        "checks": res.checks,
        "agreements": res.agreements,
        "all_agree": res.all_agree,
        "non_bol_loops": res.non_bol_loops,
        "both_false": [[n, list(p), c] for n, p, c in res.both_false],
    }
    text = (
        f"seed {res.seed}: {res.loops} RIP loops ({res.non_bol_loops} not right Bol), "
        f"{res.checks} checks, {res.agreements} agree; "
        f"{len(res.both_false)} recorded cases with pi^2(c) != c"
    )
    _emit(args, doc, text)
    return EXIT_OK if res.all_agree else EXIT_FALSE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")

    parser = argparse.ArgumentParser(
        prog="latin-terwilliger",
        description="Quasigroup properties, base-point permutations and Terwilliger algebras of Latin squares.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, file=True):
        sp = sub.add_parser(name, parents=[common], help=help)
        if file:
            sp.add_argument("file", help="square file, '-' for stdin, or corpus:NAME")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "parse and check the Latin property")
    add("properties", cmd_properties, "loop-theoretic property flags")
    sp = add("pi", cmd_pi, "the permutation pi at one base point")
    sp.add_argument("--base", required=True, metavar="R,C")
    sp = add("profile", cmd_profile, "cycle structure of pi at every base point")
    sp.add_argument("--tsv", action="store_true", help="one tab-separated row per base point")
    sp.add_argument("--jobs", type=int, default=None, help="worker threads (default: all cores)")
    sp = add("modules", cmd_modules, "module table and Wedderburn signature")
    sp.add_argument("--base", required=True, metavar="R,C")
    sp = add("verify", cmd_verify, "compare the prediction with the exact algebra oracle")
    where = sp.add_mutually_exclusive_group()
    where.add_argument("--base", metavar="R,C", help="base point (default 1,1)")
    where.add_argument("--all", action="store_true", help="every base point")
    sp.add_argument("--center", action="store_true", help="also compare center dimensions")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    add("certify", cmd_certify, "right Bol certificate from the converse criterion")
    sp = add("transform", cmd_transform, "apply an isotopy or conjugacy")
    how = sp.add_mutually_exclusive_group(required=True)
    how.add_argument("--isotopy", metavar="FILE", help="three lines of permutation images")
    how.add_argument("--conjugacy", metavar="WORD", help="word over r,c,e, e.g. cre")
    sp = add("corpus", cmd_corpus, "list built-in squares or print one", file=False)
    sp.add_argument("name", nargs="?")
    sp = add("criterion-search", cmd_criterion_search,
             "random RIP loops: check the pi^2 criterion agrees everywhere", file=False)
    sp.add_argument("--budget", type=int, default=20, help="number of random RIP loops")
    sp.add_argument("--orders", default="5,6,7,8", help="comma-separated loop orders")
    sp.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (LatinSquareError, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
