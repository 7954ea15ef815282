"""Bind pulse sequences to a two-spin system and compute propagators."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import spin
from .ir import Delay, FrameRotation, HardPulse, PulseSequence
from .spin import SpinPairPropagator


class Mode(str, Enum):
    INSTANTANEOUS = "instantaneous"
    FINITE = "finite"
    COUPLED = "coupled"


class NonPhysicalError(ValueError):
    """A delay would have to run backwards in time."""


class WeakCouplingWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SpinSystem:
    """Two spins at offsets +delta_omega (I) and -delta_omega (S).

    Attributes
    ----------
    delta_omega : float
        Half the resonance frequency difference, rad/s.
    J : float
        Scalar coupling, Hz.
    omega1 : float
        Nutation rate of the hard pulses, rad/s.  ``math.inf`` means
        infinitely short pulses.  Ignored in instantaneous mode.
    mode : Mode
    """

    delta_omega: float
    J: float = 0.0
    omega1: float = math.inf
    mode: Mode = Mode.INSTANTANEOUS

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not self.delta_omega > 0:
            raise ValueError("delta_omega must be positive")
        if self.J < 0:
            raise ValueError("J must be non-negative")
        if not self.omega1 > 0:
            raise ValueError("omega1 must be positive")
        if self.J > 0 and abs(self.delta_omega) <= 10 * math.pi * self.J:
            warnings.warn(
                f"delta_omega={self.delta_omega:g} rad/s is not large against J={self.J:g} Hz",
                WeakCouplingWarning,
                stacklevel=2,
            )

    @classmethod
    def from_fraction(cls, f: float, delta_omega: float = 2 * math.pi * 500.0,
                      J: float = 0.0, mode: Mode | str = Mode.FINITE) -> "SpinSystem":
        """System whose off-resonance fraction ``delta_omega / omega1`` is `f`."""
        if f < 0:
            raise ValueError("f must be non-negative; spin S carries the negative fraction")
        omega1 = math.inf if f == 0 else delta_omega / f
        return cls(delta_omega, J, omega1, mode)

    @property
    def f(self) -> float:
        return self.delta_omega / self.omega1

    @property
    def tau(self) -> float:
        """Delay giving +-90 degrees of precession."""
        return math.pi / (2 * self.delta_omega)

    @property
    def t90(self) -> float:
        return (math.pi / 2) / self.omega1


@dataclass(frozen=True)
class SimulationResult:
    pair: Optional[SpinPairPropagator]
    full: np.ndarray
    duration: float


def total_duration(sequence: PulseSequence, system: SpinSystem) -> float:
    """Wall-clock length of `sequence` in seconds.

    Pulses take ``nutation / omega1`` except in instantaneous mode; frame
    rotations take no time.
    """
    if not sequence.is_physical:
        raise NonPhysicalError("sequence contains negative delays")
    pulses = sum(p.nutation for p in sequence.pulses)
    pulse_time = 0.0 if system.mode is Mode.INSTANTANEOUS else pulses / system.omega1
    return sequence.total_delay_angle / system.delta_omega + pulse_time


def _coupled_pulse(p: HardPulse, delta_omega: float, J: float, omega1: float) -> np.ndarray:
    c, s = math.cos(p.phase), math.sin(p.phase)
    if math.isinf(omega1):
        return spin.kron(spin.rot(p.nutation, p.phase), spin.rot(p.nutation, p.phase))
    H = (omega1 * (c * (spin.I_X + spin.S_X) + s * (spin.I_Y + spin.S_Y))
         + delta_omega * (spin.I_Z - spin.S_Z)
         + math.pi * J * 2 * spin.I_Z @ spin.S_Z)
    return spin.expm_hermitian(H, p.nutation / omega1)


def simulate(sequence: PulseSequence, system: SpinSystem, g: float = 1.0) -> SimulationResult:
    """Time-ordered propagator of `sequence` on `system`.

    `g` scales the actual offset relative to the nominal ``delta_omega`` the
    sequence was compiled for: delays keep their nominal length, so their
    precession angles scale by `g`, and in finite and coupled modes the
    off-resonance fraction seen by the pulses scales by `g` too.  J is not
    scaled.
    """
    mode = system.mode
    if mode is not Mode.INSTANTANEOUS and not sequence.is_physical:
        raise NonPhysicalError(f"negative delay in {mode.value} mode")
    duration = 0.0
    for ins in sequence:
        if isinstance(ins, Delay):
            duration += ins.angle / system.delta_omega
        elif isinstance(ins, HardPulse) and mode is not Mode.INSTANTANEOUS:
            duration += ins.nutation / system.omega1

    if mode is Mode.COUPLED:
        U = spin.ID4.copy()
        dw = g * system.delta_omega
        for ins in sequence:
            if isinstance(ins, HardPulse):
                step = _coupled_pulse(ins, dw, system.J, system.omega1)
            elif isinstance(ins, Delay):
                step = spin.free_precession(dw, system.J, ins.angle / system.delta_omega)
            else:
                rz = spin.rot_z(ins.angle)
                step = spin.kron(rz, rz)
            U = step @ U
        return SimulationResult(None, U, duration)

    f = g * system.f if mode is Mode.FINITE else 0.0
    uI = spin.ID2.copy()
    uS = spin.ID2.copy()
    for ins in sequence:
        if isinstance(ins, HardPulse):
            if mode is Mode.FINITE:
                aI = spin.off_resonance_propagator(f, ins.nutation, ins.phase)
                aS = spin.off_resonance_propagator(-f, ins.nutation, ins.phase)
            else:
                aI = aS = spin.rot(ins.nutation, ins.phase)
        elif isinstance(ins, Delay):
            aI = spin.rot_z(g * ins.angle)
            aS = spin.rot_z(-g * ins.angle)
        elif isinstance(ins, FrameRotation):
            aI = aS = spin.rot_z(ins.angle)
        else:
            raise TypeError(f"not an instruction: {ins!r}")
        uI = aI @ uI
        uS = aS @ uS
    pair = SpinPairPropagator(uI, uS)
    return SimulationResult(pair, pair.full(), duration)


def effective_offset_ratio_sim(sequence: PulseSequence, system: SpinSystem, g: float) -> SimulationResult:
    return simulate(sequence, system, g)


def ideal_pair(sequence: PulseSequence, g: float = 1.0) -> SpinPairPropagator:
    """Instantaneous-pulse propagator pair; negative delays allowed."""
    return simulate(sequence, SpinSystem(1.0), g).pair
