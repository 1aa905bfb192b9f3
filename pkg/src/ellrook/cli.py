"""Command-line interface.

    ellrook check <identity> --board <heights|key=val,...> --family <tag>
                  --trials N --tol T --seed S [--z re[,im]] [--J j] [--I i]
                  [--r r] [--m m] [--json]
    ellrook table <family> --nmax N --family <tag> --out PATH --format csv|json
                  [--r r] [--m m] [--seed S]
    ellrook demo <bijection> --input "<board part>|<cells part>"

Exit status is 0 exactly when every requested check passed.
"""

from __future__ import annotations

import argparse
import sys

from . import biject, special
from .errors import BadBoardSpec, EllrookError
from .harness import identity_names, run_check
from .weights import FAMILY_TAGS, PlainQ, random_family
import random


def _parse_z(text: str):
    parts = text.split(",")
    try:
        if len(parts) == 1:
            value = float(parts[0])
            return int(value) if value.is_integer() else value
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise BadBoardSpec(f"bad --z value {text!r}; expected re or re,im")


def _parse_cells(text: str):
    text = text.strip()
    if not text:
        return ()
    cells = []
    for chunk in text.replace("),(", ");(").split(";"):
        chunk = chunk.strip().strip("()")
        col, row = chunk.split(",")
        cells.append((int(col), int(row)))
    return tuple(cells)


def _parse_demo_input(text: str):
    if "|" not in text:
        raise BadBoardSpec("demo input must look like '<board part>|<cells part>'")
    board_part, cells_part = text.split("|", 1)
    params = {}
    for part in board_part.split(","):
        if "=" not in part:
            raise BadBoardSpec(f"bad demo board part {board_part!r}")
        key, value = part.split("=")
        params[key.strip()] = int(value)
    return params, _parse_cells(cells_part)


def _cmd_check(args) -> int:
    report = run_check(
        args.identity,
        board=args.board,
        family=args.family,
        trials=args.trials,
        tol=args.tol,
        seed=args.seed,
        z=_parse_z(args.z) if args.z is not None else None,
        jump=args.J,
        offset=args.I,
        restriction=args.r,
        general_m=args.m,
    )
    if args.json:
        print(report.to_json())
    else:
        status = "PASS" if report.passed else "FAIL"
        print(
            f"{status} {report.identity_name} board={report.board or '-'} "
            f"family={report.family} trials={report.trials} "
            f"max_rel_err={report.max_rel_err:.3e} resamples={report.resamples} "
            f"seed={report.seed}"
        )
    return 0 if report.passed else 1


def _cmd_table(args) -> int:
    if args.family == "trivial":
        fam = PlainQ(1)
    else:
        fam = random_family(random.Random(args.seed), args.family)
    table = special.SpecialNumberTable.build(
        args.table_family, args.nmax, fam, r=args.r or 1, m=args.m or 1
    )
    if args.format == "csv":
        table.write_csv(args.out)
    else:
        table.write_json(args.out)
    print(f"wrote {args.table_family} table (n <= {args.nmax}) to {args.out}")
    return 0


def _cmd_demo(args) -> int:
    params, cells = _parse_demo_input(args.input)
    n = params.get("n")
    if n is None:
        raise BadBoardSpec("demo input needs n=<size>")
    r = params.get("r", 1)
    m = params.get("m")
    if args.bijection == "partition":
        part = biject.rooks_to_partition(cells, n)
        print("{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in part) + "}")
    elif args.bijection == "cycles":
        print(biject.file_to_cycles(cells, n).render())
    elif args.bijection == "tubes":
        print(biject.rooks_to_tubes(cells, n, r).render())
    elif args.bijection == "forest":
        print(biject.file_to_forest(cells, n, m, r).render())
    else:
        raise BadBoardSpec(f"unknown bijection {args.bijection!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ellrook", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="verify one identity at random points")
    check.add_argument("identity", choices=identity_names())
    check.add_argument("--board", help="heights '0,2,3,5,5' or params 'n=5,r=2'")
    check.add_argument("--family", default="elliptic", choices=FAMILY_TAGS)
    check.add_argument("--trials", type=int)
    check.add_argument("--tol", type=float)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--z", help="evaluation argument: re or re,im")
    check.add_argument("--J", type=int, help="jump parameter")
    check.add_argument("--I", type=int, help="offset parameter")
    check.add_argument("--r", type=int, help="restriction parameter")
    check.add_argument("--m", type=int, help="tall-board height parameter")
    check.add_argument("--json", action="store_true")
    check.set_defaults(func=_cmd_check)

    table = sub.add_parser("table", help="emit a special-number table")
    table.add_argument("table_family", choices=special.TABLE_FAMILIES)
    table.add_argument("--nmax", type=int, required=True)
    table.add_argument("--family", default="trivial", choices=FAMILY_TAGS)
    table.add_argument("--out", required=True)
    table.add_argument("--format", default="csv", choices=("csv", "json"))
    table.add_argument("--r", type=int)
    table.add_argument("--m", type=int)
    table.add_argument("--seed", type=int, default=0)
    table.set_defaults(func=_cmd_table)

    demo = sub.add_parser("demo", help="run one bijection on a placement")
    demo.add_argument("bijection", choices=("partition", "cycles", "tubes", "forest"))
    demo.add_argument("--input", required=True, help="'n=8,r=3|(4,1),(5,2),...'")
    demo.set_defaults(func=_cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EllrookError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
