"""Selective rotations for two-spin systems from hard pulses, delays and frame shifts."""

from .compiler import (
    OutOfRangeError,
    DegenerateError,
    SandwichAngles,
    compile_gate,
    gate_from_dict,
    sandwich_angles,
    sandwich_angles_90,
    target_pair,
)
from .ir import Delay, FrameRotation, HardPulse, PulseSequence, SchemaError
from .simulate import Mode, NonPhysicalError, SpinSystem, simulate, total_duration

__all__ = [
    "Delay", "FrameRotation", "HardPulse", "PulseSequence", "SchemaError",
    "SpinSystem", "Mode", "simulate", "total_duration", "NonPhysicalError",
    "OutOfRangeError", "DegenerateError", "SandwichAngles", "compile_gate",
    "gate_from_dict", "sandwich_angles", "sandwich_angles_90", "target_pair",
]
