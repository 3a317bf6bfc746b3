"""Command-line entry point: ``wgqed <subcommand> [options]``.

Exit codes: 0 success, 1 internal error or failed check, 2 invalid
parameters or config, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import amplitudes as amp
from .errors import BadConfig, InvalidParams, NoValidSolution, WgqedError
from .memory import retrieve, round_trip_fidelity, store
from .oracle import agreement_suite
from .params import (
    MemoryParams,
    load_params,
    reference_params_3ls,
    reference_params_4ls,
    solve_gate_conditions,
    validate_params,
)
from .protocol import three_ls_photon_atom_gate, three_ls_photon_photon_gate, truth_table
from .pulses import QuadratureGrid, fidelity_sweep, leakage_sweep_4ls

EX_USAGE = 64


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.12g}"
    return str(v)


def _round(obj):
    """Fix float output to 12 significant digits for byte-stable JSON."""
    if isinstance(obj, complex):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, float):
        return None if math.isinf(obj) or math.isnan(obj) else float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.generic):
        return _round(obj.item())
    return obj


class Output:
    """A result with a tabular form (CSV) and a structured form (JSON)."""

    def __init__(self, header, rows, payload):
        self.header = header
        self.rows = rows
        self.payload = payload

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(_round(self.payload), indent=2) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for r in self.rows:
            w.writerow([_fmt(v) for v in r])
        return buf.getvalue()


def _purcell(s: str) -> float:
    return math.inf if s.lower() in ("inf", "infinity") else float(s)


def _params(args, kind):
    if args.config:
        return load_params(args.config, kind)
    if kind == "3ls":
        return reference_params_3ls()
    if kind == "memory":
        return MemoryParams()
    return reference_params_4ls()


def _grid(args) -> QuadratureGrid:
    return QuadratureGrid(args.half_width, args.grid_points, args.grid_scheme)


def cmd_amplitudes(args) -> Output:
    p = _params(args, "4ls")
    validate_params(p).raise_if_failed()
    lo = p.omega1 - 5 * p.gamma if args.omega_min is None else args.omega_min
    hi = p.omega1 + 5 * p.gamma if args.omega_max is None else args.omega_max
    header = ["omega"] + [f"{k}_{part}" for k in ("r11", "r13", "r33", "r31", "R3") for part in ("re", "im")]
    rows, records = [], []
    for w in np.linspace(lo, hi, args.points):
        rs = amp.reflection_set(p, float(w), check=False).as_dict()
        rows.append([float(w)] + [x for v in rs.values() for x in (v.real, v.imag)])
        records.append({"omega": float(w), **rs})
    return Output(header, rows, {"amplitudes": records})


def cmd_truth_table(args) -> Output:
    if args.scheme == "3ls":
        p3 = _params(args, "3ls")
        table = three_ls_photon_photon_gate(p3)
        atom = three_ls_photon_atom_gate(p3)
        payload = dict(table.to_json())
        payload["photon_atom"] = {f"{i}{s}": [v.real, v.imag] for (i, s), v in atom.entries.items()}
    else:
        p = _params(args, "4ls")
        table = truth_table(p, c_trivial_phase=args.c_trivial_phase, normalize=args.normalize)
        payload = table.to_json()
    rows = [[f"{i}{j}", v.real, v.imag] for (i, j), v in table.entries.items()]
    return Output(["input", "re", "im"], rows, payload)


def _sweep_output(res) -> Output:
    header = ["delta_t", "purcell", "fidelity", "leakage", "grid_residual"]
    rows = [[r[k] for k in header] for r in res.rows]
    return Output(header, rows, {"scheme": res.scheme, "rows": [{k: r[k] for k in header} for r in res.rows]})


def cmd_fidelity_sweep(args) -> Output:
    p = _params(args, args.scheme)
    validate_params(p).raise_if_failed()
    kw = {"c_trivial_phase": args.c_trivial_phase} if args.scheme == "4ls" else {}
    res = fidelity_sweep(p, args.delta_t, args.purcell, _grid(args), **kw)
    return _sweep_output(res)


def cmd_leakage_sweep(args) -> Output:
    p = _params(args, args.scheme)
    validate_params(p).raise_if_failed()
    if args.scheme == "4ls":
        res = leakage_sweep_4ls(p, args.delta_t, args.purcell, _grid(args), c_trivial_phase=args.c_trivial_phase)
    else:
        res = fidelity_sweep(p, [args.delta_t], args.purcell, _grid(args))
    out = _sweep_output(res)
    out.payload["monotone_leakage"] = res.monotone_leakage
    return out


def cmd_memory_demo(args) -> Output:
    mp = _params(args, "memory")
    validate_params(mp).raise_if_failed()
    alpha, beta = complex(args.alpha), complex(args.beta)
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1) > 1e-9:
        raise BadConfig("|alpha|^2 + |beta|^2 must equal 1")
    q, wc = store(mp, alpha, beta)
    a2, b2 = retrieve(mp, q)
    fid = round_trip_fidelity(mp, alpha, beta)
    payload = {
        "stored": {"alpha": q.alpha, "beta": q.beta},
        "c_photon_freq": wc,
        "retrieved": {"alpha": a2, "beta": b2},
        "fidelity": fid,
    }
    rows = [["stored", q.alpha.real, q.alpha.imag, q.beta.real, q.beta.imag],
            ["retrieved", a2.real, a2.imag, b2.real, b2.imag],
            ["fidelity", fid, 0.0, 0.0, 0.0]]
    return Output(["quantity", "alpha_re", "alpha_im", "beta_re", "beta_im"], rows, payload)


def cmd_oracle_check(args) -> Output:
    worst = agreement_suite(args.samples, args.seed)
    payload = {"samples": args.samples, "seed": args.seed, "max_deviation": worst,
               "tolerance": 1e-10, "ok": max(worst.values()) <= 1e-10}
    return Output(["family", "max_deviation"], [[k, v] for k, v in worst.items()], payload)


def cmd_solve_conditions(args) -> Output:
    sol = solve_gate_conditions(args.omega12, args.omega32, args.omega0, args.a,
                                detuning_floor=args.detuning_floor)
    payload = asdict(sol)
    payload["m"] = sol.m
    rows = [[k, v] for k, v in payload.items() if k != "residuals"]
    rows += [[f"residual_{k}", v] for k, v in sol.residuals.items()]
    return Output(["field", "value"], rows, payload)


COMMANDS = {
    "amplitudes": cmd_amplitudes,
    "truth-table": cmd_truth_table,
    "fidelity-sweep": cmd_fidelity_sweep,
    "leakage-sweep": cmd_leakage_sweep,
    "memory-demo": cmd_memory_demo,
    "oracle-check": cmd_oracle_check,
    "solve-conditions": cmd_solve_conditions,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON parameter file (field names as in the parameter types)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--seed", type=int, default=0)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--grid-points", type=int, default=301)
    grid.add_argument("--grid-scheme", choices=("gauss-legendre", "trapezoid"), default="gauss-legendre")
    grid.add_argument("--half-width", type=float, default=6.0)
    grid.add_argument("--scheme", choices=("4ls", "3ls"), default="4ls")
    grid.add_argument("--c-trivial-phase", action="store_true")

    parser = _Parser(prog="wgqed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("amplitudes", parents=[common])
    s.add_argument("--omega-min", type=float)
    s.add_argument("--omega-max", type=float)
    s.add_argument("--points", type=int, default=201)

    s = sub.add_parser("truth-table", parents=[common])
    s.add_argument("--scheme", choices=("4ls", "3ls"), default="4ls")
    s.add_argument("--c-trivial-phase", action="store_true")
    s.add_argument("--normalize", action="store_true", help="divide by the decoupled-emitter table")

    s = sub.add_parser("fidelity-sweep", parents=[common, grid])
    s.add_argument("--delta-t", type=float, nargs="+", default=[1, 2, 5, 10, 20, 50])
    s.add_argument("--purcell", type=_purcell, nargs="+", default=[10, 20, 40, math.inf])

    s = sub.add_parser("leakage-sweep", parents=[common, grid])
    s.add_argument("--delta-t", type=float, default=10.0)
    s.add_argument("--purcell", type=_purcell, nargs="+", default=[5, 10, 20, 40, 60, 80, 100])

    s = sub.add_parser("memory-demo", parents=[common])
    s.add_argument("--alpha", default="0.6")
    s.add_argument("--beta", default="0.8j")

    s = sub.add_parser("oracle-check", parents=[common])
    s.add_argument("--samples", type=int, default=1000)

    s = sub.add_parser("solve-conditions", parents=[common])
    s.add_argument("--omega12", type=float, required=True)
    s.add_argument("--omega32", type=float, required=True, help="target")
    s.add_argument("--omega0", type=float, required=True, help="target")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--detuning-floor", type=float, default=100.0)
    return parser


_DEFAULT_FORMAT = {"truth-table": "json", "memory-demo": "json", "oracle-check": "json",
                   "solve-conditions": "json"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or _DEFAULT_FORMAT.get(args.command, "csv")
    try:
        out = COMMANDS[args.command](args)
    except InvalidParams as exc:
        print(json.dumps(_round(exc.report.to_dict()), indent=2), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BadConfig, NoValidSolution, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WgqedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = out.render(fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.command == "oracle-check" and not out.payload["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
