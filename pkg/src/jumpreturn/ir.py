"""Pulse-sequence instructions.

A sequence is written in time order: the first instruction acts first.  Delays
are stored as contra-axial precession angles rather than seconds.  A
``Delay(angle)`` rotates spin I by ``+angle`` and spin S by ``-angle`` about z,
so its physical length is ``angle / delta_omega`` once bound to a system.  The
Jump-and-Return delay ``tau = pi / (2 delta_omega)`` is ``Delay(pi / 2)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class HardPulse:
    nutation: float
    phase: float = 0.0

    def __post_init__(self):
        if self.nutation < 0:
            raise ValueError("negative nutation; use phase + pi instead")


@dataclass(frozen=True)
class Delay:
    angle: float


@dataclass(frozen=True)
class FrameRotation:
    """Zero-length z-rotation applied to both spins by shifting the reference phase."""

    angle: float


Instruction = Union[HardPulse, Delay, FrameRotation]


@dataclass(frozen=True)
class PulseSequence:
    instructions: tuple = ()
    name: str = ""
    target: str = ""

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))

    def __iter__(self) -> Iterator[Instruction]:
        return iter(self.instructions)

    def __len__(self) -> int:
        return len(self.instructions)

    def __getitem__(self, i):
        return self.instructions[i]

    def __add__(self, other: "PulseSequence") -> "PulseSequence":
        return self.replace(self.instructions + tuple(other.instructions))

    def replace(self, instructions: Iterable[Instruction]) -> "PulseSequence":
        return PulseSequence(tuple(instructions), self.name, self.target)

    @property
    def pulses(self) -> list[HardPulse]:
        return [x for x in self.instructions if isinstance(x, HardPulse)]

    @property
    def delays(self) -> list[Delay]:
        return [x for x in self.instructions if isinstance(x, Delay)]

    @property
    def frames(self) -> list[FrameRotation]:
        return [x for x in self.instructions if isinstance(x, FrameRotation)]

    @property
    def is_physical(self) -> bool:
        """True when no delay runs backwards in time.

        Frame rotations are allowed: they cost no time and are realized by the
        phase bookkeeping of the rf source.
        """
        return all(d.angle >= 0 for d in self.delays)

    @property
    def total_delay_angle(self) -> float:
        return sum(d.angle for d in self.delays)


def seq(*instructions: Instruction, name: str = "", target: str = "") -> PulseSequence:
    return PulseSequence(instructions, name, target)


# --- JSON boundary (degrees) -------------------------------------------------

class SchemaError(ValueError):
    """Malformed sequence or gate description."""


def instruction_to_dict(ins: Instruction) -> dict:
    if isinstance(ins, HardPulse):
        return {"kind": "pulse", "nutation_deg": math.degrees(ins.nutation),
                "phase_deg": math.degrees(ins.phase)}
    if isinstance(ins, Delay):
        return {"kind": "delay", "angle_deg": math.degrees(ins.angle)}
    if isinstance(ins, FrameRotation):
        return {"kind": "frame", "angle_deg": math.degrees(ins.angle)}
    raise TypeError(f"not an instruction: {ins!r}")


def _number(obj: dict, key: str, default=None) -> float:
    if key not in obj:
        if default is None:
            raise SchemaError(f"missing field {key!r} in {obj!r}")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"field {key!r} must be a number, got {value!r}")
    return float(value)


def instruction_from_dict(obj: dict) -> Instruction:
    if not isinstance(obj, dict):
        raise SchemaError(f"instruction must be an object, got {obj!r}")
    kind = obj.get("kind")
    if kind == "pulse":
        nutation = _number(obj, "nutation_deg")
        if nutation < 0:
            raise SchemaError("nutation_deg must be non-negative")
        return HardPulse(math.radians(nutation), math.radians(_number(obj, "phase_deg", 0.0)))
    if kind == "delay":
        return Delay(math.radians(_number(obj, "angle_deg")))
    if kind == "frame":
        return FrameRotation(math.radians(_number(obj, "angle_deg")))
    raise SchemaError(f"unknown instruction kind {kind!r}")


def sequence_to_json(sequence: PulseSequence, **kwargs) -> str:
    return json.dumps([instruction_to_dict(x) for x in sequence], **kwargs)


def sequence_from_json(text: str) -> PulseSequence:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise SchemaError("sequence JSON must be an array")
    return PulseSequence(instruction_from_dict(x) for x in data)


def format_sequence(sequence: PulseSequence) -> str:
    """Shorthand like ``90_{-90} D(45) 90_{45} F(45)`` with angles in degrees."""
    parts = []
    for ins in sequence:
        if isinstance(ins, HardPulse):
            parts.append(f"{math.degrees(ins.nutation):.6g}_{{{math.degrees(ins.phase):.6g}}}")
        elif isinstance(ins, Delay):
            parts.append(f"D({math.degrees(ins.angle):.6g})")
        else:
            parts.append(f"F({math.degrees(ins.angle):.6g})")
    return " ".join(parts) if parts else "(identity)"
