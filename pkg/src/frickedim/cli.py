"""Command-line front end.

    frickedim dim --group gamma0+ --level 221 --weight 6 --chi p13,p17 --sign -1
    frickedim table --group gamma0+ --level 2..10 --weight 2..12 --chi all --sign all --format csv
    frickedim genera --level 65
    frickedim verify --suite sum-identity --max-level 300

Exit codes: 0 success, 1 verification or internal failure, 2 invalid input,
3 unsupported weight.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .arith import InvalidInput
from .characters import (
    GAMMA0,
    GAMMA0_PLUS,
    GAMMA0_STAR,
    GROUP_KINDS,
    QuadChar,
    extends_to_star,
    extensions,
    list_chars,
    make_char,
    parse_sign,
    parse_star_signs,
)
from .dims import ConsistencyError, DimReport, UnsupportedWeight, dim_report
from .elliptic import InternalLimit
from .qforms import genus_partition
from .verify import SUITES, run_suite

MAX_LEVEL = 10**5
MAX_WEIGHT = 10**3
CSV_COLUMNS = ("group", "N", "chi", "sign", "k", "dim_cusp", "dim_eis", "dim_mod", "parity_vanishing")

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_WEIGHT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INVALID)


def parse_range(text: str, what: str, upper: int) -> range:
    """``7`` or ``A..B`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise InvalidInput(f"bad {what} {text!r}; expected an integer or A..B") from None
    if lo > hi:
        raise InvalidInput(f"empty {what} range {text!r}")
    if hi > upper:
        raise InvalidInput(f"{what} {hi} exceeds the limit {upper}")
    return range(lo, hi + 1)


def _chars(N: int, spec: str) -> list[QuadChar]:
    if spec == "all":
        return list(list_chars(N))
    if spec in ("", "triv"):
        return [QuadChar(N)]
    return [make_char(N, spec)]


def _select(chi: QuadChar, group: str, sign: str, signs: str, explicit: bool):
    """Extensions of chi matching the sign filters.

    With ``explicit`` false (``--chi all``) characters that do not extend are
    skipped instead of raising.
    """
    if group == GAMMA0:
        return extensions(chi, GAMMA0)
    if group == GAMMA0_PLUS:
        if sign == "all":
            return extensions(chi, GAMMA0_PLUS)
        s = parse_sign(sign)
        found = [x for x in extensions(chi, GAMMA0_PLUS) if x.sign == s]
        if not found:
            if explicit:
                raise InvalidInput(f"sign {sign} is not admissible for {chi.label} (chi(-1) = {chi.parity})")
        return found
    if not explicit and not extends_to_star(chi):
        return []
    exts = extensions(chi, GAMMA0_STAR)
    if signs == "all":
        return exts
    want = dict(parse_star_signs(signs))
    found = [x for x in exts if dict(x.star_signs) == want]
    if not found and explicit:
        raise InvalidInput(f"sign assignment {signs} is not admissible for {chi.label} mod {chi.level}")
    return found


def _reports(args, levels, weights, skip_weight_one: bool) -> list[DimReport]:
    out = []
    explicit = args.chi != "all"
    for N in levels:
        if N < 1:
            raise InvalidInput(f"level must be positive, got {N}")
        for chi in _chars(N, args.chi):
            for x in _select(chi, args.group, args.sign, args.signs, explicit):
                for k in weights:
                    if k == 1 and skip_weight_one:
                        continue
                    if k == 1:
                        raise UnsupportedWeight("weight 1 is not covered by these dimension formulas")
                    out.append(dim_report(x, k))
    return out


def _render_text(rep: DimReport) -> str:
    lines = [f"group {rep.group}  N={rep.level}  k={rep.weight}  chi={rep.chi or 'triv'}  signs={rep.signs or '-'}"]
    for name, val in rep.to_dict()["terms"].items():
        lines.append(f"  {name:<6} {val}")
    lines.append(f"  dim S_k = {rep.dim_cusp}")
    lines.append(f"  dim E_k = {rep.dim_eisenstein}")
    lines.append(f"  dim M_k = {rep.dim_modular}")
    if rep.flags:
        lines.append(f"  flags: {', '.join(rep.flags)}")
    return "\n".join(lines)


def _csv_row(rep: DimReport) -> list:
    return [
        rep.group, rep.level, rep.chi or "triv", rep.signs, rep.weight,
        rep.dim_cusp, rep.dim_eisenstein, rep.dim_modular,
        int("parity_vanishing" in rep.flags),
    ]  # fmt: skip


def _emit_reports(reports: list[DimReport], fmt: str, single: bool) -> str:
    if fmt == "json":
        data = [r.to_dict() for r in reports]
        return json.dumps(data[0] if single and len(data) == 1 else data)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in reports:
            w.writerow(_csv_row(r))
        return buf.getvalue().rstrip("\n")
    if single:
        return "\n\n".join(_render_text(r) for r in reports)
    head = f"{'group':<7} {'N':>6} {'chi':<14} {'sign':<16} {'k':>4} {'cusp':>7} {'eis':>5} {'mod':>7}"
    rows = [head]
    for r in reports:
        flag = " parity" if "parity_vanishing" in r.flags else ""
        rows.append(
            f"{r.group:<7} {r.level:>6} {r.chi or 'triv':<14} {r.signs or '-':<16} {r.weight:>4} "
            f"{r.dim_cusp:>7} {r.dim_eisenstein:>5} {r.dim_modular:>7}{flag}"
        )
    return "\n".join(rows)


def cmd_dim(args) -> int:
    level = parse_range(args.level, "level", MAX_LEVEL)
    weight = parse_range(args.weight, "weight", MAX_WEIGHT)
    if len(level) != 1 or len(weight) != 1:
        raise InvalidInput("dim takes a single level and weight; use table for ranges")
    if args.chi == "all":
        raise InvalidInput("dim needs a single character; use table for --chi all")
    reports = _reports(args, level, weight, skip_weight_one=False)
    print(_emit_reports(reports, args.format, single=True))
    return EXIT_OK


def cmd_table(args) -> int:
    levels = parse_range(args.level, "level", MAX_LEVEL)
    weights = parse_range(args.weight, "weight", MAX_WEIGHT)
    reports = _reports(args, levels, weights, skip_weight_one=True)
    print(_emit_reports(reports, args.format, single=False))
    return EXIT_OK


_CHAR_NAMES = {"m4": "(-1/.)", "p8": "(2/.)", "m8": "(-2/.)"}


def char_name(label: str) -> str:
    return _CHAR_NAMES.get(label) or f"(./{label[1:]})"


def cmd_genera(args) -> int:
    if args.disc is not None:
        D = args.disc
    elif args.level is not None:
        N = parse_range(args.level, "level", MAX_LEVEL)
        if len(N) != 1 or N[0] < 1:
            raise InvalidInput("genera takes a single positive level")
        D = -4 * N[0]
    else:
        raise InvalidInput("genera needs --level N or --disc D")
    table = genus_partition(D)
    # 2-adic characters first, then the odd primes, with rows in descending sign order
    perm = sorted(range(len(table.characters)), key=lambda i: table.characters[i][0] == "p" and table.characters[i] not in _CHAR_NAMES)
    names = [char_name(table.characters[i]) for i in perm]
    rows = sorted(((tuple(vec[i] for i in perm), forms) for vec, forms in table.genera()), reverse=True)
    if args.format == "json":
        data = {
            "disc": D,
            "characters": names,
            "genera": [{"signs": list(v), "forms": [list(q) for q in fs]} for v, fs in rows],
        }
        print(json.dumps(data))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([*names, "forms"])
        for v, fs in rows:
            w.writerow([*(f"{s:+d}" for s in v), " ".join(str(q) for q in fs)])
        print(buf.getvalue().rstrip("\n"))
    else:
        print(f"disc {D}: {sum(len(fs) for _, fs in rows)} classes in {len(rows)} genera")
        print("  ".join(f"{n:>7}" for n in names) + "  forms")
        for v, fs in rows:
            print("  ".join(f"{s:>+7d}" for s in v) + "  " + ", ".join(str(q) for q in fs))
    return EXIT_OK


def cmd_verify(args) -> int:
    name = args.suite or "all"
    if name != "all" and name not in SUITES:
        raise InvalidInput(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    results = run_suite(name, args.max_level)
    return _report_suites(results)


def cmd_selftest(args) -> int:
    results = [
        SUITES["worked-example"](None),
        SUITES["genus"](None),
        SUITES["sum-identity"](40),
        SUITES["oracle"](60),
    ]
    return _report_suites(results)


def _report_suites(results) -> int:
    for r in results:
        print(r.summary())
        for f in r.failures[:10]:
            print(f"    {f}")
        if len(r.failures) > 10:
            print(f"    ... {len(r.failures) - 10} more")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="frickedim", description="Dimensions of modular form spaces for Gamma0(N), Gamma0+(N), Gamma0*(N).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, level_default=None, weight=True):
        sp.add_argument("--group", choices=GROUP_KINDS, default=GAMMA0)
        sp.add_argument("--level", default=level_default, help="N or A..B")
        if weight:
            sp.add_argument("--weight", required=True, help="k or A..B")
        sp.add_argument("--chi", default="triv", help="p<prime>,m4,p8,m8 tokens, 'triv' or 'all'")
        sp.add_argument("--sign", default="all", help="+1|-1|+i|-i|all (gamma0+)")
        sp.add_argument("--signs", default="all", help="p:s,... or all (gamma0*)")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")

    common(sub.add_parser("dim", help="one dimension query"))
    common(sub.add_parser("table", help="sweep over levels, characters, signs and weights"))
    g = sub.add_parser("genera", help="genus table of discriminant -4N or D")
    g.add_argument("--level")
    g.add_argument("--disc", type=int)
    g.add_argument("--format", choices=("text", "json", "csv"), default="text")
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", default="all", help=f"all or one of {', '.join(SUITES)}")
    v.add_argument("--max-level", type=int)
    sub.add_parser("selftest", help="quick end-to-end check")
    return p


COMMANDS = {"dim": cmd_dim, "table": cmd_table, "genera": cmd_genera, "verify": cmd_verify, "selftest": cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for attr in ("level", "weight"):
        if getattr(args, attr, "x") is None and args.command in ("dim", "table"):
            print(f"frickedim: error: --{attr} is required", file=sys.stderr)
            return EXIT_INVALID
    try:
        return COMMANDS[args.command](args)
    except UnsupportedWeight as exc:
        print(f"frickedim: unsupported weight: {exc}", file=sys.stderr)
        return EXIT_WEIGHT
    except InvalidInput as exc:
        print(f"frickedim: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ConsistencyError, InternalLimit) as exc:
        print(f"frickedim: internal failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
