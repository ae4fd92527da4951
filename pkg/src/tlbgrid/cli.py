"""Command-line front end: ``sweep``, ``simulate`` and ``gain``.

Exit codes: 0 success, 1 usage or configuration error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import itertools
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .config import DEFAULTS, ConfigError, converter_params, grid_params, load_config
from .inverter_dq import DqCurrents, InvalidPowerFactor, NoRealRoot
from .simulation import (
    NumericBlowup,
    SimConfig,
    SimulationResult,
    section4_preset,
    simulate_converter,
    simulate_inverter_dq,
)
from .steady_state import CSV_COLUMNS, LAGGING_PFS, OperatingPoint, pf_sweep, solve_point
from .tlb_converter import DutyPair, average_current_ratio, voltage_gain

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", default=default, help="flat key = value parameter file")
    p.add_argument("--out", default=default, help="output CSV path (stdout if omitted)")
    g = p.add_argument_group("parameter overrides")
    for key in DEFAULTS:
        g.add_argument(_flag(key), dest=key, default=default, metavar="X", help=f"default {DEFAULTS[key]:g}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tlbgrid", description=__doc__.splitlines()[0])
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="steady-state power-factor sweep")
    _add_globals(sw, suppress=True)
    sw.add_argument("--pf", default=",".join(map(str, LAGGING_PFS)), help="comma-separated power factors in (0, 1]")
    sw.add_argument("--leading", action="store_true", help="treat the power factors as leading")
    sw.add_argument("--plot", action="store_true", help="also write a gnuplot script next to --out")

    sim = sub.add_parser("simulate", help="time-domain simulation")
    _add_globals(sim, suppress=True)
    sim.add_argument("target", choices=("converter", "inverter", "chain"))
    sim.add_argument("--d1", type=float, default=0.5)
    sim.add_argument("--d4", type=float, default=0.5)
    sim.add_argument("--pf", type=float, default=0.8, help="inverter power factor in (0, 1]")
    sim.add_argument("--leading", action="store_true")
    sim.add_argument("--start", choices=("zero", "steady"), default="zero", help="initial dq currents")
    sim.add_argument("--preset", choices=("section4",), help="160 V, pi/36 rad, 2 ms inverter scenario")
    sim.add_argument("--dt", type=float, help="step size in seconds")
    sim.add_argument("--t-end", type=float, help="run length in seconds")
    sim.add_argument("--integrator", choices=("rk4", "euler"), default="rk4")
    sim.add_argument("--decimation", type=int, default=1, help="keep every n-th sample")
    sim.add_argument("--plot", action="store_true")

    gn = sub.add_parser("gain", help="tabulate converter gain over a duty grid")
    _add_globals(gn, suppress=True)
    gn.add_argument("--duties", help="symmetric grid, d1 = d4 in the list")
    gn.add_argument("--d1", help="d1 values (cartesian with --d4)")
    gn.add_argument("--d4", help="d4 values (cartesian with --d1)")
    return parser


def _float_list(text: str, what: str) -> list[float]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    try:
        return [float(s) for s in items]
    except ValueError:
        raise UsageError(f"{what}: cannot parse {text!r}") from None


def _fmt(x: float, digits: int = 9) -> str:
    return f"{x:.{digits}f}"


def write_atomic(path: Optional[str], text: str) -> None:
    """Write ``text`` to ``path`` via a temp file and rename; stdout if no path."""
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: Sequence[str], rows: Iterable[Sequence[float]], digits: int = 9) -> str:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v, digits) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def waveform_csv(result: SimulationResult) -> str:
    names = list(result.waveforms)
    first = result.waveforms[names[0]]
    cols = [first.t] + [result.waveforms[n].samples for n in names]
    lines = [",".join(["t", *names])]
    for row in zip(*cols):
        lines.append(",".join([_fmt(row[0], 12), *(_fmt(v) for v in row[1:])]))
    return "\n".join(lines) + "\n"


def _gnuplot(csv_path: str, plots: Sequence[tuple[str, str, str, int, int]]) -> str:
    """Script with one PNG per ``(name, xlabel, ylabel, xcol, ycol)``."""
    stem = Path(csv_path).with_suffix("")
    out = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set grid",
        "set terminal pngcairo size 800,500",
    ]
    for name, xl, yl, xc, yc in plots:
        out += [
            f"set output '{stem}_{name}.png'",
            f"set xlabel '{xl}'",
            f"set ylabel '{yl}'",
            f"plot '{csv_path}' using {xc}:{yc} with linespoints",
        ]
    return "\n".join(out) + "\n"


def _write_plot(out: Optional[str], plots) -> None:
    if out is None:
        raise UsageError("--plot needs --out")
    write_atomic(str(Path(out).with_suffix(".gp")), _gnuplot(out, plots))


def cmd_sweep(args, cfg) -> int:
    pfs = _float_list(args.pf, "--pf")
    if not pfs:
        raise UsageError("--pf: empty list")
    for pf in pfs:
        if not 0.0 < pf <= 1.0:
            raise UsageError(f"power factor out of range: {pf}")
    signed = [-pf if args.leading else pf for pf in pfs]
    rows = pf_sweep(signed, cfg["p_target_watts"], grid_params(cfg))
    good = [r for r in rows if r.ok]
    write_atomic(args.out, csv_text(CSV_COLUMNS, (r.as_tuple() for r in good)))
    if args.plot:
        _write_plot(args.out, [
            ("mq_md", "Md", "Mq", 3, 2),
            ("ipeak_pf", "pF", "Ipeak (A)", 1, 6),
            ("pg_pf", "pF", "Pg (W)", 1, 7),
        ])
    failed = [r for r in rows if not r.ok]
    for r in failed:
        print(f"sweep failed at pf={r.pf:g}: {r.error}", file=sys.stderr)
    return EXIT_NUMERIC if failed else EXIT_OK


def _sim_config(args, cfg, dt_default: float, t_end_default: float) -> SimConfig:
    return SimConfig(
        dt=args.dt if args.dt is not None else dt_default,
        t_end=args.t_end if args.t_end is not None else t_end_default,
        f_sw=cfg["f_sw_hz"],
        integrator=args.integrator,
        record_decimation=args.decimation,
    )


def _run_converter(args, cfg) -> SimulationResult:
    d = DutyPair(args.d1, args.d4)
    for name, v in zip(("d1", "d4"), d):
        if not 0.0 <= v <= 1.0:
            raise UsageError(f"duty {name}={v} out of range [0, 1]")
    vo_target = cfg["vs_volts"] * voltage_gain(d)
    p = converter_params(cfg, vo_target)
    c = _sim_config(args, cfg, 1.0 / (200 * cfg["f_sw_hz"]), 0.05)
    return simulate_converter(p, d, c)


def _run_inverter(args, cfg, vdc: Optional[float] = None) -> SimulationResult:
    if args.preset == "section4":
        g, pf, p_target, preset_cfg = section4_preset()
        g = grid_params(cfg, vdc) if vdc is not None else g
        dt_default, t_end_default = preset_cfg.dt, preset_cfg.t_end
    else:
        if not 0.0 < args.pf <= 1.0:
            raise UsageError(f"power factor out of range: {args.pf}")
        g, pf, p_target = grid_params(cfg, vdc), args.pf, cfg["p_target_watts"]
        dt_default, t_end_default = 1e-5, 0.1
    pf = -pf if args.leading else pf
    row = solve_point(OperatingPoint(pf, p_target), g)
    i0 = row.currents if args.start == "steady" else DqCurrents(0.0, 0.0)
    c = _sim_config(args, cfg, dt_default, t_end_default)
    return simulate_inverter_dq(g, row.modulation, i0, c)


def _sim_plots(result: SimulationResult):
    return [(name, "t (s)", name, 1, k + 2) for k, name in enumerate(result.waveforms)]


def cmd_simulate(args, cfg) -> int:
    if args.target == "chain":
        if args.out is None:
            raise UsageError("simulate chain needs --out")
        conv = _run_converter(args, cfg)
        vdc = conv.metrics["vo"].mean if conv.metrics else float(conv["vo"].samples[-1])
        inv_args = argparse.Namespace(**{**vars(args), "dt": None, "t_end": None})
        inv = _run_inverter(inv_args, cfg, vdc=vdc)
        stem = Path(args.out).with_suffix("")
        for tag, res in (("converter", conv), ("inverter", inv)):
            path = f"{stem}_{tag}.csv"
            write_atomic(path, waveform_csv(res))
            if args.plot:
                _write_plot(path, _sim_plots(res))
            print(f"{tag}: {res.summary()}", file=sys.stderr)
        return EXIT_OK

    result = _run_converter(args, cfg) if args.target == "converter" else _run_inverter(args, cfg)
    write_atomic(args.out, waveform_csv(result))
    if args.plot:
        _write_plot(args.out, _sim_plots(result))
    print(f"{args.target}: {result.summary()}", file=sys.stderr)
    return EXIT_OK


def cmd_gain(args, cfg) -> int:
    if args.duties is not None:
        grid = [(d, d) for d in _float_list(args.duties, "--duties")]
    elif args.d1 is not None and args.d4 is not None:
        grid = list(itertools.product(_float_list(args.d1, "--d1"), _float_list(args.d4, "--d4")))
    else:
        raise UsageError("give --duties, or both --d1 and --d4")
    if not grid:
        raise UsageError("empty duty grid")
    rows = []
    for d1, d4 in grid:
        d = DutyPair(d1, d4)
        rows.append((d1, d4, voltage_gain(d), average_current_ratio(d)))
    write_atomic(args.out, csv_text(("d1", "d4", "gain", "io_over_il"), rows))
    return EXIT_OK


_COMMANDS = {"sweep": cmd_sweep, "simulate": cmd_simulate, "gain": cmd_gain}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        overrides = {k: getattr(args, k, None) for k in DEFAULTS}
        cfg = load_config(getattr(args, "config", None), overrides)
        return _COMMANDS[args.command](args, cfg)
    except (UsageError, ConfigError, InvalidPowerFactor) as exc:
        print(f"tlbgrid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericBlowup, NoRealRoot, ArithmeticError) as exc:
        print(f"tlbgrid: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"tlbgrid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
