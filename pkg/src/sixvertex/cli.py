"""Command-line front end: scriptable tables of the library's computations.

Every command prints a small table.  ``--format text`` (default) gives
``key: value`` summary lines followed by aligned columns, ``json`` a single
object, ``csv`` only the rows with a header.  Decimals are printed with 30
significant digits so output is byte-identical across runs.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from mpmath import mp, mpf

from . import asymptotics, izergin, lattice, orthopoly
from .precision import DEFAULT_PRECISION, DomainError, fmt, relative_difference, to_ext
from .weights import FerroParams, LineParams

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3
AGREEMENT_TOL = mpf(10) ** -30
MAX_NORMS_KMAX = 24


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK


def _cell(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return fmt(x)


def render(table: Table, fmt_name: str) -> str:
    if fmt_name == "json":
        obj = {k: _cell(v) for k, v in table.meta.items()}
        obj["rows"] = [dict(zip(table.columns, map(_cell, r))) for r in table.rows]
        return json.dumps(obj, indent=2) + "\n"
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for r in table.rows:
            w.writerow([_cell(x) for x in r])
        return buf.getvalue()
    lines = [f"{k}: {_cell(v)}" for k, v in table.meta.items()]
    cells = [table.columns] + [[_cell(x) for x in r] for r in table.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(table.columns))]
    for r in cells:
        lines.append("  ".join(c.rjust(wd) for c, wd in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _params(args, required: bool = True) -> FerroParams | None:
    if args.ref:
        return FerroParams.ref()
    if args.t is None and args.gamma is None and not required:
        return None
    if args.t is None or args.gamma is None:
        raise DomainError("give --t and --gamma, or --ref")
    return FerroParams.parse(mpf(args.t), mpf(args.gamma))


def _asm_text(m) -> str:
    return ";".join(" ".join(str(v) for v in row) for row in m)


def cmd_enumerate(args) -> Table:
    n = args.n
    if not 1 <= n <= lattice.MAX_ENUMERATION_SIZE:
        raise DomainError(f"enumeration needs 1 <= n <= {lattice.MAX_ENUMERATION_SIZE}")
    p = _params(args, required=False)
    columns = ["index", "N1", "N2", "N3", "N4", "N5", "N6", "asm"]
    if p is not None:
        a, b, c = mp.sinh(p.t - p.gamma), mp.sinh(p.t + p.gamma), mp.sinh(2 * p.gamma)
        columns.append("weight")
    table = Table(columns)
    for idx, conf in enumerate(lattice.enumerate_dwbc(n)):
        row = [idx, *lattice.vertex_counts(conf).as_tuple(), _asm_text(lattice.asm_from_config(conf))]
        if p is not None:
            row.append(lattice.config_weight(conf, a, b, c))
        table.rows.append(row)
    table.meta["count"] = len(table.rows)
    return table


def _partition_values(p: FerroParams, n: int, method: str) -> dict:
    out = {}
    if method in ("brute", "all"):
        if n <= lattice.MAX_ENUMERATION_SIZE:
            a, b, c = mp.sinh(p.t - p.gamma), mp.sinh(p.t + p.gamma), mp.sinh(2 * p.gamma)
            out["brute"] = to_ext(lattice.brute_force_partition(n, a, b, c))
        elif method == "brute":
            raise DomainError(f"brute force needs n <= {lattice.MAX_ENUMERATION_SIZE}")
    if method in ("izergin", "all"):
        out["izergin"] = to_ext(izergin.partition_izergin(p, n))
    if method in ("norms", "all"):
        out["norms"] = to_ext(orthopoly.partition_from_norms(orthopoly.build(p, n - 1), n))
    return out


def cmd_partition(args) -> Table:
    if args.n < 1:
        raise DomainError("n must be positive")
    p = _params(args)
    values = _partition_values(p, args.n, args.method)
    names = list(values)
    worst = mpf(0)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            worst = max(worst, relative_difference(values[names[i]], values[names[j]]))
    table = Table(["method", "Z"], [[k, v] for k, v in values.items()])
    table.meta["n"] = args.n
    table.meta["max_relative_difference"] = worst
    ok = worst <= AGREEMENT_TOL
    table.meta["agreement"] = "OK" if ok else "DISAGREE"
    if not ok:
        table.exit_code = EXIT_DISAGREE
    return table


def cmd_norms(args) -> Table:
    if not 0 <= args.kmax <= MAX_NORMS_KMAX:
        raise DomainError(f"kmax must lie in 0..{MAX_NORMS_KMAX}")
    sys_ = orthopoly.build(_params(args), args.kmax)
    cols = ["k", "h", "hQ", "epsilon", "delta", "slack"]
    return Table(cols, [[r[c] for c in cols] for r in orthopoly.norms_table(sys_)])


def cmd_asymptotics(args) -> Table:
    if args.nmax < 1:
        raise DomainError("nmax must be positive")
    p = _params(args)
    k = asymptotics.constants(p)
    rows = [[r.n, r.Z, r.leading, r.ratio] for r in asymptotics.asymptotic_table(p, args.nmax)]
    return Table(["n", "Z", "CGnFn2", "ratio"], rows, {"C": k.C, "G": k.G, "F": k.F})


def cmd_phase_curve(args) -> Table:
    alpha = mpf(args.alpha)
    if args.beta is not None:
        betas = [mpf(args.beta)]
    else:
        lo, hi = mpf(args.beta_min), mpf(args.beta_max)
        if args.samples < 2 or not lo < hi:
            raise DomainError("need samples >= 2 and beta-min < beta-max")
        betas = [lo + (hi - lo) * i / (args.samples - 1) for i in range(args.samples)]
    for b in (betas[0], betas[-1]):
        LineParams(alpha, b)  # range check before the sweep
    rows = [list(r) for r in asymptotics.free_energy_curve(alpha, betas, mpf(args.step))]
    return Table(["beta", "F0", "dF0"], rows, {"alpha": alpha})


def _n_range(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise DomainError(f"bad n range {text!r}; use N or A..B") from exc
    if lo > hi:
        raise DomainError(f"empty n range {text!r}")
    return list(range(lo, hi + 1))


def cmd_toda(args) -> Table:
    p = _params(args)
    table = Table(["n", "r1", "r2"], meta={"step": mpf(args.step), "form": args.form})
    for n in _n_range(args.n):
        r1, r2 = asymptotics.toda_residuals(p, n, mpf(args.step), form=args.form)
        table.rows.append([n, r1, r2])
    return table


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", help="spectral parameter t (decimal)")
    common.add_argument("--gamma", help="crossing parameter gamma (decimal)")
    common.add_argument("--ref", action="store_true", help="use t = ln 2, gamma = ln 2 / 2")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working bits")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write output to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="sixvertex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common], help="list DWBC configurations")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("partition", parents=[common], help="Z_n by several routes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=("brute", "izergin", "norms", "all"), default="all")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("norms", parents=[common], help="orthogonal polynomial norms vs Meixner")
    s.add_argument("--kmax", type=int, default=MAX_NORMS_KMAX)
    s.set_defaults(func=cmd_norms)

    s = sub.add_parser("asymptotics", parents=[common], help="Z_n against C G^n F^{n^2}")
    s.add_argument("--nmax", type=int, default=12)
    s.set_defaults(func=cmd_asymptotics)

    s = sub.add_parser("phase-curve", parents=[common], help="F0 and F0' along (a+b)/c = alpha")
    s.add_argument("--alpha", default="2")
    s.add_argument("--beta", help="evaluate a single beta instead of a range")
    s.add_argument("--beta-min", dest="beta_min", default="-0.999")
    s.add_argument("--beta-max", default="1.5")
    s.add_argument("--samples", type=int, default=101)
    s.add_argument("--step", default="1e-6", help="central difference step for F0'")
    s.set_defaults(func=cmd_phase_curve)

    s = sub.add_parser("toda", parents=[common], help="Toda identity residuals")
    s.add_argument("--n", default="2..6", help="N or A..B")
    s.add_argument("--step", default="1e-4")
    s.add_argument("--form", choices=("log", "direct"), default="log")
    s.set_defaults(func=cmd_toda)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 64:
        parser.error("--precision must be at least 64 bits")
    try:
        with mp.workprec(args.precision):
            table = args.func(args)
            text = render(table, args.format)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return table.exit_code


if __name__ == "__main__":
    sys.exit(main())
