"""Command-line front end: ``ladder-asym <command> --spec FILE | --preset NAME``.

Every command writes CSV (header row first, floats with 17 significant
digits) to stdout or ``--out``. Exit codes: 0 ok, 2 bad input, 3 an
internal cross-check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import extract_profile
from .errors import ConsistencyError, DomainError, LadderError
from .expansion import critical_point, eval_expansion, general_expansion
from .integral import DEFAULT_CONFIG, enclose_E, eval_E_negative, eval_scaled_E
from .ladder import Ladder, mirror, new_ladder

PRESETS = {
    "cantor": {"segments": [[0, "1/3"], ["2/3", 1]], "weights": ["1/2", "1/2"]},
    "cantor3": {"segments": [[0, "1/9"], ["2/9", "1/3"], ["2/3", 1]],
                "weights": ["1/4", "1/4", "1/2"]},
    "rho13-23": {"segments": [[0, "1/3"], ["2/3", 1]], "weights": ["1/3", "2/3"]},
    "identity": {"segments": [[0, 1]], "weights": [1]},
    "asym": {"segments": [[0, "1/4"], ["1/2", 1]], "weights": ["1/3", "2/3"]},
}

EXIT_INPUT = 2
EXIT_CONSISTENCY = 3


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def ladder_from_dict(data: dict, default_name: str | None = None) -> Ladder:
    if not isinstance(data, dict) or "segments" not in data or "weights" not in data:
        raise LadderError("spec needs 'segments' and 'weights'")
    return new_ladder(data["segments"], data["weights"], data.get("name", default_name))


def load_ladder(args) -> Ladder:
    if args.preset:
        return ladder_from_dict(PRESETS[args.preset], args.preset)
    path = Path(args.spec)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LadderError(f"{path}: not a valid spec document ({exc})") from exc
    return ladder_from_dict(data, path.stem)


def write_tables(tables: list[tuple[list[str], list[list]]], out) -> None:
    buf = io.StringIO()
    for i, (header, rows) in enumerate(tables):
        if i:
            buf.write("\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    text = buf.getvalue()
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _lambda_grid(args) -> list[float]:
    if args.lambdas:
        return [float(x) for x in args.lambdas]
    if args.lmin is None or args.lmax is None:
        raise LadderError("give --lambda values or --lmin/--lmax")
    if args.steps < 1:
        raise LadderError("--steps must be >= 1")
    if args.log:
        if args.lmin <= 0:
            raise LadderError("--log needs --lmin > 0")
        return [float(x) for x in np.geomspace(args.lmin, args.lmax, args.steps)]
    return [float(x) for x in np.linspace(args.lmin, args.lmax, args.steps)]


def cmd_eval(ladder: Ladder, args):
    lams = _lambda_grid(args)
    target = mirror(ladder) if args.neg else ladder
    header = ["lambda", "E_neg" if args.neg else "scaled_E"]
    if args.enclose is not None:
        header += ["lo", "hi"]
    rows = []
    for lam in lams:
        if args.neg:
            val = eval_E_negative(ladder, lam)
        else:
            val = eval_scaled_E(ladder, lam)
        row = [lam, val]
        if args.enclose is not None:
            box = enclose_E(target, lam, args.enclose)
            if val not in box:
                raise ConsistencyError(f"value {val!r} at lambda={lam!r} outside enclosure {box}")
            row += [box.lo, box.hi]
        rows.append(row)
    return [(header, rows)]


def cmd_asym(ladder: Ladder, args):
    prof = extract_profile(ladder, DEFAULT_CONFIG, args.grid)
    tables = [(["x", "phi"], [[x, p] for x, p in zip(prof.x, prof.phi)])]
    if args.fourier is not None:
        prof = prof.with_fourier(args.fourier)
        rows = [[n, prof.fourier[n].real + 0.0, prof.fourier[n].imag + 0.0]
                for n in range(-args.fourier, args.fourier + 1)]
        tables.append((["n", "c_re", "c_im"], rows))
    return tables


def cmd_expand(ladder: Ladder, args):
    if args.smax is None and args.count is None:
        raise LadderError("give --smax or --count")
    prof = extract_profile(ladder, DEFAULT_CONFIG, args.grid) if args.at is not None else None
    state = general_expansion(ladder, prof, sigma_max=args.smax, count=args.count)
    n_atoms = max([1] + [len(t.coefficient.h_atoms) for t in state])
    header = ["sigma", "const_coef"]
    for i in range(1, n_atoms + 1):
        header += [f"atom{i}_scale", f"atom{i}_coef"]
    if args.at is not None:
        header += ["value", "partial_sum", "reference"]
        lam = args.at
        ref = eval_scaled_E(ladder, lam)
        # fail early on the threshold check, before any output
        eval_expansion(state, prof, lam, 0, strict=not args.loose)

    def pad(atoms):
        cells = []
        for b, c in atoms:
            cells += [b, c]
        return cells + [""] * (2 * n_atoms - len(cells))

    rows = []
    lead = [0.0, 0.0] + pad([(1.0, 1.0)])
    if args.at is not None:
        h1 = float(prof.h1(lam))
        lead += [h1, h1, ref]
    rows.append(lead)
    for k, term in enumerate(state, start=1):
        row = [term.exponent, term.coefficient.const_part] + pad(term.coefficient.h_atoms)
        if args.at is not None:
            value = term.coefficient.evaluate(prof, lam)
            part = eval_expansion(state, prof, lam, k, strict=not args.loose)
            row += [value, part, ref]
        rows.append(row)
    return [(header, rows)]


def cmd_critical(ladder: Ladder, args):
    c = critical_point(ladder)
    return [(["critical_point"], [["none" if c is None else c]])]


def cmd_mirror(ladder: Ladder, args):
    text = json.dumps(mirror(ladder).to_dict(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return None


COMMANDS = {
    "eval": cmd_eval,
    "asym": cmd_asym,
    "expand": cmd_expand,
    "critical": cmd_critical,
    "mirror": cmd_mirror,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", help="ladder spec file (JSON with segments, weights, optional name)")
    src.add_argument("--preset", choices=sorted(PRESETS), help="built-in ladder")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--meta", action="store_true", help="print run metadata (JSON) to stderr")

    p = argparse.ArgumentParser(
        prog="ladder-asym",
        description="Integrals of exp(lambda*C(t)) over generalized Cantor ladders and their asymptotics.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="exp(-lambda) E(lambda) on a lambda grid")
    ev.add_argument("--lambda", dest="lambdas", nargs="+", type=float, metavar="LAM")
    ev.add_argument("--lmin", type=float)
    ev.add_argument("--lmax", type=float)
    ev.add_argument("--steps", type=int, default=11)
    ev.add_argument("--log", action="store_true", help="log-spaced grid")
    ev.add_argument("--neg", action="store_true", help="report E(-lambda) instead")
    ev.add_argument("--enclose", type=int, metavar="DEPTH", help="add rigorous bounds and check them")

    asy = sub.add_parser("asym", parents=[common], help="periodic profile and Fourier coefficients")
    asy.add_argument("--grid", type=int, default=256)
    asy.add_argument("--fourier", type=int, metavar="N_MAX", help="closed-form c_n, |n| <= N_MAX (regular ladders)")

    ex = sub.add_parser("expand", parents=[common], help="higher-order terms of the expansion")
    ex.add_argument("--smax", type=float, help="largest exponent to emit")
    ex.add_argument("--count", type=int, help="number of terms to emit")
    ex.add_argument("--at", type=float, metavar="LAM", help="add partial sums at this lambda")
    ex.add_argument("--grid", type=int, default=256, help="profile grid used with --at")
    ex.add_argument("--loose", action="store_true", help="allow --at below the validity threshold")

    sub.add_parser("critical", parents=[common], help="critical point of the exponent maps")
    sub.add_parser("mirror", parents=[common], help="spec of the mirrored ladder C1(t) = 1 - C(1-t)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        ladder = load_ladder(args)
        tables = COMMANDS[args.command](ladder, args)
        if tables is not None:
            write_tables(tables, args.out)
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (LadderError, DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.meta:
        meta = {"version": __version__, "command": args.command,
                "ladder": ladder.to_dict(), "seconds": round(time.perf_counter() - t0, 6)}
        print(json.dumps(meta), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
