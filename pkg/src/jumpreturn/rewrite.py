"""Semantics-preserving rewrites over pulse sequences.

Every pass returns a new sequence whose per-spin propagators equal the input's
up to a global phase on each spin.  Frame passing and delay merging are exact;
the wrap passes may flip the sign of a spinor.
"""

from __future__ import annotations

import math
from enum import Enum

from .ir import Delay, FrameRotation, HardPulse, PulseSequence


class WrapStyle(str, Enum):
    WRAP4TAU = "wrap4tau"   # add full turns of contra-axial precession
    HALFWRAP = "halfwrap"   # add half turns plus a 180 degree frame rotation


class TerminalPolicy(str, Enum):
    DROP = "drop"
    KEEP = "keep"
    COMPOSITE = "composite"


def merge_delays(sequence: PulseSequence, atol: float = 0.0) -> PulseSequence:
    """Sum runs of adjacent delays and remove those that vanish."""
    out = []
    for ins in sequence:
        if isinstance(ins, Delay) and out and isinstance(out[-1], Delay):
            out[-1] = Delay(out[-1].angle + ins.angle)
        else:
            out.append(ins)
    return sequence.replace(
        x for x in out if not (isinstance(x, Delay) and abs(x.angle) <= atol)
    )


def commute_frame_rotations_to_end(sequence: PulseSequence) -> PulseSequence:
    """Move every frame rotation to the end of the sequence.

    A z-rotation by ``beta`` followed by a pulse at phase ``phi`` equals the
    pulse at phase ``phi - beta`` followed by the same z-rotation.  Delays are
    diagonal and commute with frame rotations.
    """
    out = []
    beta = 0.0
    seen = False
    for ins in sequence:
        if isinstance(ins, FrameRotation):
            beta += ins.angle
            seen = True
        elif isinstance(ins, HardPulse) and beta != 0.0:
            out.append(HardPulse(ins.nutation, ins.phase - beta))
        else:
            out.append(ins)
    if seen and beta != 0.0:
        out.append(FrameRotation(beta))
    return sequence.replace(out)


def frames_are_terminal(sequence: PulseSequence) -> bool:
    ins = list(sequence)
    while ins and isinstance(ins[-1], FrameRotation):
        ins.pop()
    return not any(isinstance(x, FrameRotation) for x in ins)


def drop_terminal_frame_rotations(
    sequence: PulseSequence, policy: TerminalPolicy | str = TerminalPolicy.DROP
) -> PulseSequence:
    """Handle the trailing frame rotations of a sequence.

    Dropping is only legitimate when the computation ends with the spins in
    z eigenstates.  Expansion into composite z-pulses is not supported.
    """
    policy = TerminalPolicy(policy)
    if not frames_are_terminal(sequence):
        raise ValueError("frame rotations must be terminal; run commute_frame_rotations_to_end first")
    if policy is TerminalPolicy.KEEP:
        return sequence
    if policy is TerminalPolicy.COMPOSITE:
        raise NotImplementedError("composite z-pulse expansion of terminal frame rotations")
    ins = list(sequence)
    while ins and isinstance(ins[-1], FrameRotation):
        ins.pop()
    return sequence.replace(ins)


def normalize_negative_delays(
    sequence: PulseSequence, style: WrapStyle | str = WrapStyle.WRAP4TAU
) -> PulseSequence:
    """Make every delay non-negative.

    ``wrap4tau`` adds ``2 pi`` of contra-axial precession (a ``4 tau`` block)
    as often as needed, so each spin goes the long way round.  ``halfwrap``
    adds ``pi`` (a ``2 tau`` block) together with a ``pi`` frame rotation, so one
    spin stays put and the other turns through a full circle.
    """
    style = WrapStyle(style)
    out = []
    for ins in sequence:
        if not isinstance(ins, Delay) or ins.angle >= 0:
            out.append(ins)
        elif style is WrapStyle.WRAP4TAU:
            k = math.ceil(-ins.angle / (2 * math.pi))
            out.append(Delay(ins.angle + 2 * math.pi * k))
        else:
            k = math.ceil(-ins.angle / math.pi)
            out.append(Delay(ins.angle + math.pi * k))
            out.append(FrameRotation(math.pi * k))
    return sequence.replace(out)


def normalize(
    sequence: PulseSequence,
    style: WrapStyle | str = WrapStyle.WRAP4TAU,
    terminal: TerminalPolicy | str = TerminalPolicy.KEEP,
) -> PulseSequence:
    """Full pipeline producing a physical sequence with terminal frames."""
    out = merge_delays(commute_frame_rotations_to_end(sequence))
    out = normalize_negative_delays(out, style)
    out = merge_delays(commute_frame_rotations_to_end(out))
    return drop_terminal_frame_rotations(out, terminal)
