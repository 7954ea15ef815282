"""Command-line front end.

Angles are in degrees at this boundary.  Exit codes: 0 success, 1 unexpected
error, 2 usage error, 3 schema error, 4 physically out of range, 5
verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import analysis
from . import compiler as c
from .compiler import OutOfRangeError
from .ir import SchemaError, instruction_to_dict, sequence_from_json
from .rewrite import TerminalPolicy, WrapStyle, normalize
from .simulate import Mode, NonPhysicalError, SpinSystem, simulate, total_duration
from . import spin

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SCHEMA = 3
EXIT_RANGE = 4
EXIT_VERIFY = 5

OUT_DIR_ENV = "JUMPRETURN_OUT_DIR"


def parse_system(text: Optional[str]) -> SpinSystem:
    """Parse ``delta_omega_hz=500,j_hz=0,omega1_hz=2500,mode=finite``.

    Frequencies are in Hz and converted to rad/s for `delta_omega` and
    `omega1`; J stays in Hz.  Missing ``omega1_hz`` means ideal hard pulses.
    """
    values = {"delta_omega_hz": "500", "j_hz": "0", "omega1_hz": "inf", "mode": "instantaneous"}
    if text:
        for item in text.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in values:
                raise SchemaError(f"bad --system entry {item!r}; keys are {sorted(values)}")
            values[key] = value.strip()
    try:
        return SpinSystem(
            2 * math.pi * float(values["delta_omega_hz"]),
            float(values["j_hz"]),
            2 * math.pi * float(values["omega1_hz"]),
            Mode(values["mode"]),
        )
    except ValueError as exc:
        raise SchemaError(f"bad --system: {exc}") from exc


def parse_grid(text: str) -> list[float]:
    try:
        lo, hi, steps = text.split(":")
        return analysis.linear_grid(float(lo), float(hi), int(steps))
    except ValueError as exc:
        raise SchemaError(f"bad --grid {text!r}, expected min:max:steps ({exc})") from exc


def _read_json_arg(text: str):
    path = Path(text)
    if not text.lstrip().startswith(("{", "[")) and path.exists():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc


def load_gate(text: str) -> c.GateSpec:
    return c.gate_from_dict(_read_json_arg(text))


def _emit(text: str, out: Optional[str], default_name: str) -> None:
    if out is None and os.environ.get(OUT_DIR_ENV):
        out = str(Path(os.environ[OUT_DIR_ENV]) / default_name)
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _matrix(u: np.ndarray) -> dict:
    return {"re": np.real(u).tolist(), "im": np.imag(u).tolist()}


def cmd_compile(args) -> int:
    spec = load_gate(args.gate)
    system = parse_system(args.system)
    f = None
    if isinstance(spec, c.CORRECTED):
        f = spec.f if spec.f is not None else system.f
    sequence = normalize(c.compile_gate(spec, f), args.wrap, args.terminal)
    doc = {
        "gate": c.gate_to_dict(spec),
        "name": sequence.name,
        "f": f,
        "sequence": [instruction_to_dict(x) for x in sequence],
        "duration_s": total_duration(sequence, system),
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out, "compiled.json")
    return EXIT_OK


def cmd_simulate(args) -> int:
    data = _read_json_arg(args.sequence)
    if isinstance(data, dict):
        data = data.get("sequence", data)
    sequence = sequence_from_json(json.dumps(data))
    system = parse_system(args.system)
    result = simulate(sequence, system, args.g)
    doc = {"mode": system.mode.value, "g": args.g, "duration_s": result.duration,
           "full": _matrix(result.full)}
    if result.pair is not None:
        doc["uI"] = _matrix(result.pair.uI)
        doc["uS"] = _matrix(result.pair.uS)
    if args.gate:
        target = c.target_pair(load_gate(args.gate))
        if target is not None:
            if result.pair is not None:
                doc["fidelity_I"] = spin.fidelity(result.pair.uI, target.uI)
                doc["fidelity_S"] = spin.fidelity(result.pair.uS, target.uS)
            doc["fidelity_full"] = spin.fidelity(result.full, target.full())
    _emit(json.dumps(doc, indent=2) + "\n", args.out, "simulation.json")
    return EXIT_OK


def cmd_sweep_g(args) -> int:
    spec = load_gate(args.gate)
    report = analysis.sweep_g(spec, parse_grid(args.grid), parse_system(args.system))
    _emit(report.to_csv(), args.out, "sweep_g.csv")
    return EXIT_OK


def cmd_sweep_f(args) -> int:
    spec = load_gate(args.gate)
    system = parse_system(args.system)
    report = analysis.sweep_f(spec, parse_grid(args.grid), system.delta_omega)
    _emit(report.to_csv(), args.out, "sweep_f.csv")
    return EXIT_OK


def cmd_compare_1331(args) -> int:
    report = analysis.compare_1331(parse_grid(args.grid))
    _emit(report.to_csv(), args.out, "compare_1331.csv")
    return EXIT_OK


def cmd_verify(args) -> int:
    steps = args.steps
    f_values = list(analysis.DEFAULT_F_GRID)
    if args.config:
        cfg = _read_json_arg(args.config)
        if not isinstance(cfg, dict):
            raise SchemaError("verify config must be a JSON object")
        steps = int(cfg.get("angle_steps", steps))
        f_values = [float(x) for x in cfg.get("f_values", f_values)]
    report = analysis.run_verification(steps, f_values)
    for line in report.lines():
        print(line, file=sys.stderr)
    print(f"{len(report.entries)} identities, {'all passed' if report.passed else 'FAILURES'}",
          file=sys.stderr)
    _emit(json.dumps(report.as_dict(), indent=2) + "\n", args.out, "verification.json")
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jumpreturn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gate=True, grid=None):
        p.add_argument("--system", help="delta_omega_hz=...,j_hz=...,omega1_hz=...,mode=...")
        p.add_argument("--out", help=f"output path (default: stdout, or ${OUT_DIR_ENV})")
        if gate:
            p.add_argument("--gate", required=True, help="gate spec JSON or path to a JSON file")
        if grid:
            p.add_argument("--grid", default=grid, help="min:max:steps")

    p = sub.add_parser("compile", help="synthesize a physical pulse sequence")
    common(p)
    p.add_argument("--wrap", default="wrap4tau", choices=[w.value for w in WrapStyle])
    p.add_argument("--terminal", default="keep", choices=[t.value for t in TerminalPolicy])
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("simulate", help="propagators of a sequence")
    common(p, gate=False)
    p.add_argument("--sequence", required=True, help="sequence JSON or path")
    p.add_argument("--gate", help="optional gate spec to score against")
    p.add_argument("--g", type=float, default=1.0, help="actual/nominal offset ratio")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep-g", help="fidelity against offset ratio")
    common(p, grid="0.5:1.5:101")
    p.set_defaults(func=cmd_sweep_g)

    p = sub.add_parser("sweep-f", help="corrected vs uncorrected over off-resonance fraction")
    common(p, grid="0:1:11")
    p.set_defaults(func=cmd_sweep_f)

    p = sub.add_parser("verify", help="run the identity suite")
    common(p, gate=False)
    p.add_argument("--steps", type=int, default=24, help="angle grid points per 360 degrees")
    p.add_argument("--config", help="JSON {angle_steps, f_values}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare-1331", help="Jump-and-Return vs 1-3-3-1 selective 90")
    common(p, gate=False, grid="0.9:1.1:21")
    p.set_defaults(func=cmd_compare_1331)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (OutOfRangeError, NonPhysicalError) as exc:
        print(f"out of range: {exc}", file=sys.stderr)
        return EXIT_RANGE


if __name__ == "__main__":
    sys.exit(main())
