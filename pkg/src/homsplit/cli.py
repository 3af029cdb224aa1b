"""Command-line interface: ``homsplit {poset,summands,homology,modp,classify,generate,selftest}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from . import checks, modp, numstrat, series
from .errors import (
    ClassificationError,
    ConsistencyError,
    HomsplitError,
    SingularityError,
)
from .poset import (
    IndexedPartition,
    bitstring,
    binary_sequences,
    enumerate_partitions,
    hasse,
    in_S,
    inverted_primes,
    weight,
)
from .weyl import family

EXIT_OK, EXIT_USAGE, EXIT_CONSISTENCY, EXIT_NUMERICAL = 0, 1, 2, 3
FAMILIES = ("U", "Sp", "SOodd", "SOeven")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _tolerances(args) -> numstrat.Tolerances:
    kw = {}
    if args.tol_one is not None:
        kw["one"] = args.tol_one
    if args.tol_commute is not None:
        kw["commute"] = args.tol_commute
    return numstrat.Tolerances(**kw)


def _group(args, default_m=None):
    name = args.family_pos or args.family or "U"
    m = args.m_pos if args.m_pos is not None else args.m
    m = default_m if m is None else m
    if m is None:
        raise UsageError("rank --m is required")
    return family(name, m)


def _arity(args, default=None) -> int:
    n = args.n_pos if args.n_pos is not None else args.n
    n = default if n is None else n
    if n is None:
        raise UsageError("arity --n is required")
    return n


# -- subcommands -----------------------------------------------------------------


def cmd_poset(args) -> tuple[str, int]:
    n, m = _arity(args), args.m
    if m is None:
        raise UsageError("--m is required")
    elems = enumerate_partitions(n, m)
    edges = hasse(n, m)
    if args.format == "json":
        return _dump({
            "n": n, "m": m,
            "elements": [
                {**lam.to_json(), "weight": weight(lam), "in_S": in_S(lam),
                 "inverted_primes": sorted(inverted_primes(lam))}
                for lam in elems
            ],
            "hasse": [[lo.label(), hi.label()] for lo, hi in edges],
        }), EXIT_OK
    header = [bitstring(a) for a in binary_sequences(n)]
    rows = [["index", *header, "weight", "in_S", "inverted_primes"]]
    for i, lam in enumerate(elems):
        primes = " ".join(map(str, sorted(inverted_primes(lam))))
        rows.append([i, *lam.parts, weight(lam), int(in_S(lam)), primes])
    rows.append([])
    rows.append(["lower", "upper"])
    rows.extend([lo.label(), hi.label()] for lo, hi in edges)
    if args.format == "pretty":
        widths = [max(len(str(r[k])) for r in rows if len(r) > k) for k in range(len(rows[0]))]
        lines = ["  ".join(str(c).rjust(widths[k]) if k < len(widths) else str(c)
                           for k, c in enumerate(r)) for r in rows]
        return "\n".join(lines) + "\n", EXIT_OK
    return _csv(rows), EXIT_OK


def cmd_summands(args) -> tuple[str, int]:
    g, n = _group(args), _arity(args)
    table = series.splitting_table(g, n, workers=args.workers)
    caveat = series.localization_caveat(g)
    identity = "holds" if table.identity_holds else "FAILS"
    status = EXIT_OK
    problems = [r.partition.label() for r in table.reports if not r.agree]
    if problems or not table.identity_holds:
        status = EXIT_CONSISTENCY
    seqs = [bitstring(a) for a in binary_sequences(n)]
    if args.format == "json":
        out = _dump({
            "group": str(g), "n": n,
            "summands": [r.to_json() for r in table.reports],
            "summand_total": table.summand_total.render(),
            "hom_series": table.hom.render(),
            "identity_holds": table.identity_holds,
            "models_agree": table.all_agree,
            "caveat": caveat,
        })
    elif args.format == "pretty":
        header = [*seqs, "flag", "D", "summand"]
        body = [[*map(str, r.partition.parts), r.flag_poly.render(), str(r.total_sphere_dim),
                 r.series_equivariant.render()] for r in table.reports]
        widths = [max(len(x[k]) for x in [header, *body]) for k in range(len(header))]
        fmt = lambda row: " | ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
        lines = [f"Stable summands of Hom(Z^{n}, {g})", fmt(header), "-+-".join("-" * w for w in widths)]
        lines += [fmt(b) for b in body]
        lines.append(f"sum = {table.summand_total.render()}")
        lines.append(f"Hom = {table.hom.render()} (identity {identity})")
        lines.append(caveat)
        out = "\n".join(lines) + "\n"
    else:
        rows = [["partition", "flag_poly", "D", "series", "agree"]]
        rows += [[r.partition.label(), r.flag_poly.render(), r.total_sphere_dim,
                  r.series_equivariant.render(), str(r.agree).lower()] for r in table.reports]
        out = _csv(rows)
        out += f"# identity {identity}: sum = {table.summand_total.render()}; hom = {table.hom.render()}\n"
        out += f"# {caveat}\n"
    if problems:
        out += f"# models disagree at: {' '.join(problems)}\n"
    return out, status


def cmd_homology(args) -> tuple[str, int]:
    g, n = _group(args), _arity(args)
    p = series.hom_series(g, n)
    if args.format == "json":
        return _dump({"group": str(g), "n": n, "series": p.render(), "coefficients": p.to_list()}), EXIT_OK
    if args.format == "csv":
        return _csv([["degree", "betti"], *enumerate(p.to_list())]), EXIT_OK
    return p.render() + "\n", EXIT_OK


def cmd_modp(args) -> tuple[str, int]:
    p = args.p_pos if args.p_pos is not None else args.p
    n = _arity(args)
    if p is None:
        raise UsageError("--p is required")
    if n == 2:
        rank = modp.h2p_c2_rank(p)
        msg = (f"n = 2 is not covered: the Euler class is nonzero. "
               f"Known: rank H^{2 * p}(C_2(u_{p})^+; F_{p}) = {rank}.\n")
        return msg, EXIT_USAGE
    closed = modp.cnup_modp_closed(p, n)
    gysin = modp.cnup_modp_gysin(p, n)
    agree = closed == gysin
    if args.format == "json":
        out = _dump({"p": p, "n": n, "closed": closed.render(), "gysin": gysin.render(),
                     "agree": agree, "provenance": {"closed": modp.CLOSED, "gysin": modp.GYSIN}})
    elif args.format == "csv":
        out = _csv([["p", "n", "closed", "gysin", "agree"],
                    [p, n, closed.render(), gysin.render(), str(agree).lower()]])
    else:
        out = (f"closed: {closed.render()}\ngysin:  {gysin.render()}\nagree={str(agree).lower()}\n"
               f"provenance: {modp.CLOSED}; {modp.GYSIN}\n")
    return out, EXIT_OK if agree else EXIT_CONSISTENCY


def _read_input(args) -> str:
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def cmd_classify(args) -> tuple[str, int]:
    tol = _tolerances(args)
    try:
        t = numstrat.UnitaryTuple.from_json(json.loads(_read_input(args)))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HomsplitError):
            raise
        raise UsageError(f"cannot read tuple JSON: {exc}") from None
    t.validate(tol)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = numstrat.classify(t, args.seed, tol)
    out = report.to_json()
    out["label"] = report.partition.label()
    out["messages"] = [str(w.message) for w in caught]
    return _dump(out), EXIT_OK


def cmd_generate(args) -> tuple[str, int]:
    if not args.partition:
        raise UsageError("--partition is required, e.g. --partition 1,1,2,2")
    try:
        parts = [int(x) for x in args.partition.split(",")]
    except ValueError:
        raise UsageError(f"bad partition {args.partition!r}") from None
    lam = IndexedPartition.from_parts(parts)
    n = args.n if args.n is not None else lam.n
    if n != lam.n:
        raise UsageError(f"{len(parts)} parts do not match n = {n}")
    t = numstrat.random_commuting_tuple(lam, args.seed, _tolerances(args))
    return _dump({**t.to_json(), "partition": lam.to_json(), "seed": args.seed}), EXIT_OK


def cmd_selftest(args) -> tuple[str, int]:
    outcomes = checks.run_all(seeds=args.seeds)
    lines = [o.line() for o in outcomes]
    failed = [o for o in outcomes if not o.passed]
    lines.append(f"{len(outcomes) - len(failed)} passed, {len(failed)} failed")
    if not failed:
        status = EXIT_OK
    elif all(o.number == 10 for o in failed):
        status = EXIT_NUMERICAL
    else:
        status = EXIT_CONSISTENCY
    return "\n".join(lines) + "\n", status


COMMANDS = {
    "poset": cmd_poset,
    "summands": cmd_summands,
    "homology": cmd_homology,
    "modp": cmd_modp,
    "classify": cmd_classify,
    "generate": cmd_generate,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--p", type=int)
    common.add_argument("--format", choices=("csv", "json", "pretty"), default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol-one", type=float)
    common.add_argument("--tol-commute", type=float)
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--in", dest="input", metavar="FILE")

    parser = _Parser(prog="homsplit", description="Stable splittings of commuting-tuple spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_cmd(name, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("family_pos", nargs="?", choices=FAMILIES, metavar="FAMILY")
        p.add_argument("m_pos", nargs="?", type=int, metavar="M")
        p.add_argument("n_pos", nargs="?", type=int, metavar="N")
        return p

    sub.add_parser("poset", parents=[common], help="enumerate partitions and the Hasse diagram") \
        .set_defaults(n_pos=None)
    s = group_cmd("summands", "stable summands with the splitting identity")
    s.add_argument("--workers", type=int, default=1)
    group_cmd("homology", "rational Poincare polynomial of Hom(Z^n, G)")
    mp = sub.add_parser("modp", parents=[common], help="mod-p series of the compactified commuting variety")
    mp.add_argument("p_pos", nargs="?", type=int, metavar="P")
    mp.add_argument("n_pos", nargs="?", type=int, metavar="N")
    sub.add_parser("classify", parents=[common], help="stratum of a commuting unitary tuple (JSON)")
    gen = sub.add_parser("generate", parents=[common], help="random commuting tuple in a stratum")
    gen.add_argument("--partition", help="comma-separated parts in binary-index order")
    st = sub.add_parser("selftest", parents=[common], help="run every acceptance check")
    st.add_argument("--seeds", type=int, default=100)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "pretty" if args.command in ("homology", "modp") else "csv"
    try:
        out, status = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"homsplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"homsplit: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ClassificationError, SingularityError) as exc:
        print(f"homsplit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (HomsplitError, ValueError) as exc:
        print(f"homsplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"homsplit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
