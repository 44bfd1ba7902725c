"""Command-line interface.

Exit codes: 0 on success (every checked bound holds), 1 when a bound fails or
an inverse-system computation falls short, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .compressed import (
    NotCompressedError,
    betti_edge,
    compressed_mc_bounds,
    fl_numbers,
    multiplicity_formula,
    recover_socle,
)
from .hilbert_core import HVector, SocleVector, invariants, parse_vector
from .invsys import (
    GenericityError,
    PolySyntaxError,
    hvector_from_invsys,
    parse_polys,
    power_hvector_with_retry,
)
from .level_bounds import (
    CSV_HEADER,
    check_bounds,
    format_fraction,
    forced_shifts,
    mc_bounds_from_shifts,
)
from .verify import (
    enumerate_osequences,
    family_iii_list,
    read_hvector_file,
    run_batch,
    type2_grid,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _hvector(text: str) -> HVector:
    try:
        return HVector(parse_vector(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _codim3(text: str) -> HVector:
    h = _hvector(text)
    if h.c < 1 or h[1] != 3:
        raise UsageError(f"expected h_1 = 3, got {h}")
    return h


def _opt(x) -> str:
    return "absent" if x is None else str(x)


def _decimal(x: Optional[Fraction]) -> str:
    return "n/a" if x is None else f"{float(x):.6g}"


def _emit(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_invariants(args) -> int:
    h = _hvector(args.h)
    inv = invariants(h)
    profile = list(inv.profile.values)
    obj = {"h": list(h), "e": h.e, "c": h.c, **inv.as_dict(), "f": profile}
    text = (
        f"h=({h}) c={h.c} e={h.e}\n"
        f"t={inv.t} i={_opt(inv.i)} j={_opt(inv.j)} m={_opt(inv.m)}\n"
        f"f(1..{h.c + 3})=({','.join(map(str, profile))})"
    )
    _emit(obj, args.format, text)
    return EXIT_OK


def cmd_compressed_gen(args) -> int:
    try:
        s = SocleVector(parse_vector(args.socle))
        prof = fl_numbers(args.r, s)
    except NotCompressedError as exc:
        raise UsageError(f"not a compressed socle vector: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    obj = {
        "r": prof.r,
        "socle": list(s),
        "H": list(prof.H),
        "r_values": list(prof.r_values),
        "b": prof.b,
        "t": prof.t,
        "extremely_compressed": prof.extremely_compressed,
        "e": prof.H.e,
    }
    lines = [
        f"socle=({s}) r={prof.r}",
        f"H=({prof.H}) e={prof.H.e}",
        "r_d=" + " ".join(f"r_{d}={v}" for d, v in enumerate(prof.r_values)),
        f"b={prof.b} t={prof.t} extremely_compressed={str(prof.extremely_compressed).lower()}",
    ]
    if prof.r == 3:
        edge = betti_edge(prof)
        pair = compressed_mc_bounds(prof)
        multiplicity_formula(prof)
        obj.update(
            beta_2_t_plus_2=edge.beta_2_t_plus_2,
            D=edge.D,
            case=pair.case_tag.value,
            mc_lower=format_fraction(pair.lower),
            mc_upper=format_fraction(pair.upper),
        )
        lines.append(f"beta_2,t+2={edge.beta_2_t_plus_2} D={edge.D} case={pair.case_tag.value}")
        lines.append(
            f"MC bounds: {format_fraction(pair.lower)} <= e={prof.H.e} <= {format_fraction(pair.upper)}"
        )
    _emit(obj, args.format, "\n".join(lines))
    return EXIT_OK


def cmd_compressed_recover(args) -> int:
    h = _hvector(args.h)
    s = recover_socle(h)
    obj = {"h": list(h), "compressed": s is not None, "socle": None if s is None else list(s)}
    _emit(obj, args.format, "not compressed" if s is None else str(s))
    return EXIT_OK


def _load_shifts(path: str) -> dict[int, list[int]]:
    try:
        raw = json.loads(Path(path).read_text())
        return {int(k): [int(x) for x in v] for k, v in raw.items()}
    except (OSError, ValueError, AttributeError, TypeError) as exc:
        raise UsageError(f"cannot read shifts file {path}: {exc}") from None


def cmd_bounds(args) -> int:
    h = _codim3(args.h)
    rep = check_bounds(h, assume_level=args.level)
    obj = rep.to_json()
    lines = [f"h=({h}) c={h.c} e={h.e}"]
    inv = rep.inv
    lines.append(f"t={inv.t} i={_opt(inv.i)} j={_opt(inv.j)} m={_opt(inv.m)}")
    for name, value, verdict, sharp in (
        ("lower", rep.lower, rep.lower_holds, rep.lower_sharp),
        ("upper", rep.upper, rep.upper_holds, rep.upper_sharp),
    ):
        line = f"{name}={format_fraction(value) or 'inapplicable'} {verdict.value.upper()}"
        if sharp:
            line += " sharp"
        if args.decimal:
            line += f" ~{_decimal(value)}"
        lines.append(line)
    lines.append(f"mc_lower_implied={str(rep.mc_lower_implied).lower()}")
    lines.append("tags=" + (",".join(rep.sorted_tags()) or "-"))

    shifts = forced_shifts(h, assume_level=args.level)
    if args.shifts:
        for k, extra in _load_shifts(args.shifts).items():
            shifts.setdefault(k, set()).update(extra)
    if all(shifts.get(k) for k in (1, 2, 3)):
        lo, hi = mc_bounds_from_shifts(shifts)
        obj["mc_shifts"] = {str(k): sorted(v) for k, v in sorted(shifts.items())}
        obj["mc_lower"] = format_fraction(lo)
        obj["mc_upper"] = format_fraction(hi)
        line = f"MC: {format_fraction(lo)} <= e={h.e} <= {format_fraction(hi)}"
        if args.decimal:
            line += f" (~{_decimal(lo)} .. ~{_decimal(hi)})"
        lines.append(line)

    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerow(rep.csv_row())
        sys.stdout.write(buf.getvalue())
    else:
        _emit(obj, args.format, "\n".join(lines))
    return EXIT_FAIL if rep.failed else EXIT_OK


def _verify_source(args):
    if args.input:
        try:
            vectors, errors = read_hvector_file(args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
        return vectors, errors
    if args.family == "type2":
        ps = [int(p) for p in args.p.split(",")]
        return list(type2_grid(ps, args.max_c)), []
    if args.family == "iii":
        return [h for pat in family_iii_list() for h in pat.instantiate(args.max_c)], []
    if args.enumerate:
        prefix = parse_vector(args.prefix) if args.prefix else (1, 3)
        if len(prefix) < 2 or prefix[1] != 3:
            raise UsageError("enumeration prefix must start with (1,3)")
        return enumerate_osequences(args.max_c, args.max_entry, prefix), []
    raise UsageError("verify needs --input, --family or --enumerate")


def cmd_verify(args) -> int:
    try:
        source, errors = _verify_source(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = run_batch(
        source, assume_level=args.level, jobs=args.jobs, keep_reports=args.format == "csv"
    )
    result.errors = errors
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rep in result.reports:
            writer.writerow(rep.csv_row())
        sys.stdout.write(buf.getvalue())
    elif args.format == "json":
        print(json.dumps(result.to_json(), indent=2, sort_keys=True))
    else:
        print(f"total={result.total}")
        for name in ("lower", "upper"):
            print(
                f"{name}: holds={result.holds[name]} fails={result.fails[name]}"
                f" inapplicable={result.inapplicable[name]}"
            )
        print(f"sharp_hits={len(result.sharp_hits)}")
        for h, rep in result.failures:
            bad = [
                n for n, v in (("lower", rep.lower_holds), ("upper", rep.upper_holds))
                if v.value == "fails"
            ]
            print(f"FAIL ({h}) {' '.join(bad)}")
    for line, msg in errors:
        print(f"{args.input}:{line}: {msg}", file=sys.stderr)
    return EXIT_FAIL if result.any_failure else EXIT_OK


def cmd_invsys(args) -> int:
    if args.file:
        try:
            M = parse_polys(Path(args.file).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from None
        except PolySyntaxError as exc:
            raise UsageError(f"{args.file}: {exc}") from None
        try:
            h = hvector_from_invsys(M)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        obj = {"h": list(h), "generators": [str(g) for g in M]}
    else:
        try:
            degrees = list(parse_vector(args.powers))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if any(d < 0 for d in degrees):
            raise UsageError("degrees must be nonnegative")
        try:
            h, seed = power_hvector_with_retry(degrees, seed=args.seed, attempts=args.attempts)
        except GenericityError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        obj = {"h": list(h), "seed": seed, "degrees": degrees}
    _emit(obj, args.format, str(h))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcbounds",
        description="h-vector invariants and multiplicity bounds for codimension 3 artinian algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("text", "json")):
        p.add_argument("--format", choices=choices, default="text")

    p = sub.add_parser("invariants", help="f-profile and the invariants t, i, j, m")
    p.add_argument("--h", required=True, help="h-vector, e.g. 1,3,4,4,3,1")
    fmt(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compressed", help="compressed h-vectors")
    csub = p.add_subparsers(dest="action", required=True)
    g = csub.add_parser("gen", help="upper bound H and pivot data for (r, s)")
    g.add_argument("--r", type=int, default=3)
    g.add_argument("--socle", required=True, help="socle vector, e.g. 0,0,0,0,0,0,0,0,2")
    fmt(g)
    g.set_defaults(func=cmd_compressed_gen)
    rcv = csub.add_parser("recover", help="socle vector of the compressed algebra with this h")
    rcv.add_argument("--h", required=True)
    fmt(rcv)
    rcv.set_defaults(func=cmd_compressed_recover)

    p = sub.add_parser("bounds", help="check both conjectural bounds for one h-vector")
    p.add_argument("--h", required=True)
    p.add_argument("--level", action="store_true", help="assert the algebra is level")
    p.add_argument("--decimal", action="store_true", help="append approximate decimals")
    p.add_argument("--shifts", help="JSON file {module: [extra shifts]} for the MC comparison")
    fmt(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="batch check h-vectors from a file, family or enumeration")
    p.add_argument("--input", help="file with one h-vector per line")
    p.add_argument("--family", choices=("type2", "iii"))
    p.add_argument("--p", default="3,4,5", help="comma-separated p values for --family type2")
    p.add_argument("--enumerate", action="store_true", help="enumerate O-sequences")
    p.add_argument("--prefix", help="enumeration prefix (default 1,3)")
    p.add_argument("--max-c", type=int, default=8)
    p.add_argument("--max-entry", type=int, default=20)
    p.add_argument("--level", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    fmt(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invsys", help="h-vector of an inverse system")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="generator file, one polynomial per line")
    src.add_argument("--powers", help="degrees of powers of random linear forms, e.g. 8,8,7")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=3)
    fmt(p)
    p.set_defaults(func=cmd_invsys)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
