"""Synthesis of selective and hard rotations from pulses, delays and frame shifts.

Every ``synth_*`` function returns a :class:`PulseSequence` in the angle form
of :mod:`jumpreturn.ir`.  Sequences built for a nonzero off-resonance fraction
may contain negative delays; run :func:`jumpreturn.rewrite.normalize` before
handing them to a finite-pulse simulation or to hardware.
"""

from __future__ import annotations

import math
from dataclasses import MISSING, dataclass, fields, replace
from enum import Enum
from typing import Optional, Union

from . import spin
from .ir import Delay, FrameRotation, HardPulse, PulseSequence, SchemaError, seq
from .rewrite import commute_frame_rotations_to_end
from .spin import SpinPairPropagator

HALF_PI = math.pi / 2
TWO_PI = 2 * math.pi
BINOMIAL_UNIT = math.pi / 16  # eight units make a 90 degree excitation


class OutOfRangeError(ValueError):
    """No real solution exists for the requested off-resonance fraction."""


class DegenerateError(OutOfRangeError):
    pass


class Target(str, Enum):
    I = "I"
    S = "S"


class SelectiveStyle(str, Enum):
    EXTRA_PULSE = "extra_pulse"
    FRAME_ROTATION = "frame_rotation"


class InversionForm(str, Enum):
    PLAIN = "plain"
    FRAMEWRAPPED = "framewrapped"
    PHASE_TOGGLED = "phase_toggled"


# --- z-rotation sandwich angles -----------------------------------------------

@dataclass(frozen=True)
class SandwichAngles:
    """Angles making ``Rz(phi) U_f(theta_nominal) Rz(phi)`` an ideal rotation.

    `tau_factor` is the matching free-precession time in units of the 90 degree
    pulse length; as a contra-axial delay angle it is simply `phi`.
    """

    phi: float
    theta_nominal: float
    tau_factor: float


def _clip_unit(x: float) -> float:
    return max(-1.0, min(1.0, x))


def sandwich_angles_90(f: float) -> SandwichAngles:
    if abs(f) > 1:
        raise OutOfRangeError(f"|f| = {abs(f):g} > 1: sandwich angles are not real")
    phi = -math.asin(f)
    theta = math.acos(-f * f) / math.sqrt(1 + f * f)
    tau_factor = 2 * phi / (math.pi * f) if f != 0 else -2 / math.pi
    return SandwichAngles(phi, theta, tau_factor)


def max_fraction(theta: float) -> float:
    """Largest |f| for which a sandwich of angle `theta` exists, ``cot(theta/2)``."""
    t = math.tan(theta / 2)
    return math.inf if t == 0 else 1 / t


def sandwich_angles(theta: float, f: float) -> SandwichAngles:
    """Sandwich angles for an arbitrary target nutation ``0 <= theta < pi``."""
    if theta == HALF_PI:
        return sandwich_angles_90(f)
    if theta >= math.pi:
        raise DegenerateError("a 180 degree sandwich does not exist; use synth_corrected_180")
    if theta < 0:
        raise ValueError("theta must be non-negative")
    if abs(f) > max_fraction(theta):
        raise OutOfRangeError(
            f"|f| = {abs(f):g} exceeds cot(theta/2) = {max_fraction(theta):g}"
        )
    t = math.tan(theta / 2)
    if f == 0:
        return SandwichAngles(0.0, theta, -2 / math.pi * t)
    phi = -math.asin(_clip_unit(f * t))
    arg = _clip_unit(-f * f + (1 + f * f) * math.cos(theta))
    theta_n = math.acos(arg) / math.sqrt(1 + f * f)
    tau_factor = 2 * phi / (math.pi * f)
    return SandwichAngles(phi, theta_n, tau_factor)


# --- on-resonance constructions -----------------------------------------------

def synth_jump_return(theta: float, phase: float = 0.0) -> PulseSequence:
    """Solvent-suppression pair of 90 degree pulses around a delay.

    The spin precessing by `theta` ends up rotated by `theta` about the axis at
    ``phase - 90``; the spin precessing by ``-theta`` about ``phase + 90``.
    """
    return seq(
        HardPulse(HALF_PI, phase + math.pi), Delay(theta), HardPulse(HALF_PI, phase),
        name="jump_return",
    )


def synth_contra_axial(theta: float, phase: float = 0.0) -> PulseSequence:
    return seq(
        HardPulse(HALF_PI, phase - HALF_PI), Delay(theta), HardPulse(HALF_PI, phase + HALF_PI),
        name="contra_axial",
    )


def _selective_outer_phases(target: Target, phase: float) -> tuple[float, float]:
    # spin S precesses the other way, so its outer pulses swap axes
    if target is Target.I:
        return phase - HALF_PI, phase + HALF_PI
    return phase + HALF_PI, phase - HALF_PI


def synth_selective_uncommuted(target: Target | str, theta: float, phase: float = 0.0) -> PulseSequence:
    """Frame-rotation form with the z-rotation still between the pulses."""
    target = Target(target)
    first, second = _selective_outer_phases(target, phase)
    sign = 1 if target is Target.I else -1
    return seq(
        HardPulse(HALF_PI, first), Delay(theta / 2), FrameRotation(sign * theta / 2),
        HardPulse(HALF_PI, second),
        name=f"selective_{target.value}_uncommuted",
    )


def synth_selective(
    target: Target | str,
    theta: float,
    phase: float = 0.0,
    style: SelectiveStyle | str = SelectiveStyle.FRAME_ROTATION,
) -> PulseSequence:
    """Rotate one spin by `theta` about `phase`, leaving the other untouched."""
    target = Target(target)
    style = SelectiveStyle(style)
    if style is SelectiveStyle.FRAME_ROTATION:
        out = commute_frame_rotations_to_end(synth_selective_uncommuted(target, theta, phase))
        return PulseSequence(out.instructions, f"selective_{target.value}_frame")
    first, second = _selective_outer_phases(target, phase)
    return seq(
        HardPulse(HALF_PI, first), Delay(theta / 2), HardPulse(HALF_PI, second),
        HardPulse(theta / 2, phase),
        name=f"selective_{target.value}_extra_pulse",
    )


def synth_phase_pair(theta: float, phase: float, alpha: float) -> PulseSequence:
    """Equal rotations on both spins about axes `alpha` apart."""
    return seq(
        FrameRotation(-alpha / 2), Delay(alpha / 2),
        HardPulse(theta, phase),
        FrameRotation(-(TWO_PI - alpha / 2)), Delay(TWO_PI - alpha / 2),
        name="phase_pair",
    )


def synth_hard(theta: float, phase: float = 0.0) -> PulseSequence:
    return seq(HardPulse(theta, phase), name="hard")


def synth_binomial_1331(phase: float = 0.0) -> PulseSequence:
    """The 1-3-3-1 binomial excitation sequence, delays of ``2 tau``.

    Pulse lengths are one, three, three and one eighth of 90 degrees with
    alternating phase.  Each ``Delay(pi)`` turns the excited spin by 180
    degrees relative to the reference.
    """
    a = BINOMIAL_UNIT
    return seq(
        HardPulse(a, phase), Delay(math.pi),
        HardPulse(3 * a, phase + math.pi), Delay(math.pi),
        HardPulse(3 * a, phase), Delay(math.pi),
        HardPulse(a, phase + math.pi),
        name="binomial_1331",
    )


def synth_binomial_1331_selective(target: Target | str = Target.I, phase: float = 0.0) -> PulseSequence:
    """Selective 90 degree rotation built on the 1-3-3-1 sequence.

    With the reference frequency midway between the spins, each binomial
    period is a ``tau`` delay plus a 90 degree frame rotation chosen so that
    the untouched spin stands still and the target spin turns by 180 degrees.
    The three binomial periods leave the target with a residual z-rotation of
    180 degrees, which a fourth period removes.
    """
    target = Target(target)
    a = BINOMIAL_UNIT
    frame = HALF_PI if target is Target.I else -HALF_PI
    block = (Delay(HALF_PI), FrameRotation(frame))
    return seq(
        HardPulse(a, phase), *block,
        HardPulse(3 * a, phase + math.pi), *block,
        HardPulse(3 * a, phase), *block,
        HardPulse(a, phase + math.pi), *block,
        name=f"binomial_1331_selective_{target.value}",
    )


# --- off-resonance corrected constructions ------------------------------------

def synth_corrected_pulse(theta: float, phase: float, f: float) -> PulseSequence:
    """One pulse with precession periods either side making it ideal at fraction `f`."""
    s = sandwich_angles(theta, f)
    return seq(
        Delay(s.phi), HardPulse(s.theta_nominal, phase), Delay(s.phi),
        name="corrected_pulse",
    )


def synth_corrected_double(theta: float, phase: float, f: float) -> PulseSequence:
    """A ``2 theta`` rotation split into two corrected `theta` pulses."""
    s = sandwich_angles(theta, f)
    return seq(
        Delay(s.phi), HardPulse(s.theta_nominal, phase),
        Delay(TWO_PI + 2 * s.phi),
        HardPulse(s.theta_nominal, phase), Delay(s.phi),
        name="corrected_double",
    )


def synth_corrected_180(phase: float, f: float,
                        form: InversionForm | str = InversionForm.PHASE_TOGGLED) -> PulseSequence:
    """Inversion of both spins valid for ``|f| <= 1``.

    The outer precession periods of the two sandwiches are refocused by the
    inversion and omitted.
    """
    form = InversionForm(form)
    s = sandwich_angles_90(f)
    th = s.theta_nominal
    if form is InversionForm.PLAIN:
        body = (HardPulse(th, phase), Delay(TWO_PI + 2 * s.phi), HardPulse(th, phase))
    elif form is InversionForm.FRAMEWRAPPED:
        body = (HardPulse(th, phase), FrameRotation(HALF_PI), Delay(math.pi + 2 * s.phi),
                FrameRotation(HALF_PI), HardPulse(th, phase))
    else:
        body = (HardPulse(th, phase - HALF_PI), Delay(math.pi + 2 * s.phi),
                HardPulse(th, phase + HALF_PI))
    return PulseSequence(body, f"corrected_180_{form.value}")


def synth_corrected_selective_90(target: Target | str, phase: float, f: float) -> PulseSequence:
    """Selective 90 degree rotation with both hard pulses corrected for fraction `f`."""
    target = Target(target)
    s = sandwich_angles_90(f)
    first, second = _selective_outer_phases(target, phase)
    frame = math.pi / 4 if target is Target.I else -math.pi / 4
    return seq(
        Delay(s.phi), HardPulse(s.theta_nominal, first),
        Delay(math.pi / 4 + 2 * s.phi), FrameRotation(frame),
        HardPulse(s.theta_nominal, second), Delay(s.phi),
        name=f"corrected_selective_90_{target.value}",
    )


# --- gate specifications ---------------------------------------------------------

def _angle_range(name: str, value: float) -> None:
    if not 0 <= value < TWO_PI:
        raise ValueError(f"{name} must lie in [0, 2pi), got {value!r}")


@dataclass(frozen=True)
class ContraAxial:
    theta: float
    phase: float = 0.0
    kind = "contra_axial"


@dataclass(frozen=True)
class Selective:
    target: Target
    theta: float
    phase: float = 0.0
    style: SelectiveStyle = SelectiveStyle.FRAME_ROTATION
    kind = "selective"

    def __post_init__(self):
        object.__setattr__(self, "target", Target(self.target))
        object.__setattr__(self, "style", SelectiveStyle(self.style))


@dataclass(frozen=True)
class PhasePair:
    theta: float
    phase: float
    alpha: float
    kind = "phase_pair"


@dataclass(frozen=True)
class HardRotation:
    theta: float
    phase: float = 0.0
    kind = "hard"


@dataclass(frozen=True)
class JumpReturn:
    theta: float
    phase: float = 0.0
    kind = "jump_return"


@dataclass(frozen=True)
class Binomial1331Excite:
    phase: float = 0.0
    kind = "binomial_1331"


@dataclass(frozen=True)
class Binomial1331Selective:
    target: Target = Target.I
    phase: float = 0.0
    kind = "binomial_1331_selective"

    def __post_init__(self):
        object.__setattr__(self, "target", Target(self.target))


@dataclass(frozen=True)
class CorrectedPulse:
    theta: float
    phase: float = 0.0
    f: Optional[float] = None
    kind = "corrected_pulse"


@dataclass(frozen=True)
class CorrectedDouble:
    theta: float
    phase: float = 0.0
    f: Optional[float] = None
    kind = "corrected_double"


@dataclass(frozen=True)
class Corrected180:
    phase: float = 0.0
    form: InversionForm = InversionForm.PHASE_TOGGLED
    f: Optional[float] = None
    kind = "corrected_180"

    def __post_init__(self):
        object.__setattr__(self, "form", InversionForm(self.form))


@dataclass(frozen=True)
class CorrectedSelective90:
    target: Target = Target.I
    phase: float = 0.0
    f: Optional[float] = None
    kind = "corrected_selective_90"

    def __post_init__(self):
        object.__setattr__(self, "target", Target(self.target))


GateSpec = Union[
    ContraAxial, Selective, PhasePair, HardRotation, JumpReturn, Binomial1331Excite,
    Binomial1331Selective, CorrectedPulse, CorrectedDouble, Corrected180, CorrectedSelective90,
]
GATE_KINDS = {cls.kind: cls for cls in GateSpec.__args__}
CORRECTED = (CorrectedPulse, CorrectedDouble, Corrected180, CorrectedSelective90)


def validate(spec: GateSpec) -> None:
    for name in ("theta", "phase", "alpha"):
        if hasattr(spec, name):
            _angle_range(name, getattr(spec, name))


def compile_gate(spec: GateSpec, f: Optional[float] = None) -> PulseSequence:
    """Raw synthesized sequence for `spec`.

    For the corrected kinds an explicit `f` overrides ``spec.f``; passing
    ``f=0`` yields the uncorrected counterpart.
    """
    validate(spec)
    if isinstance(spec, CORRECTED):
        f = spec.f if f is None else f
        if f is None:
            raise ValueError(f"{spec.kind} needs an off-resonance fraction")
    if isinstance(spec, ContraAxial):
        out = synth_contra_axial(spec.theta, spec.phase)
    elif isinstance(spec, Selective):
        out = synth_selective(spec.target, spec.theta, spec.phase, spec.style)
    elif isinstance(spec, PhasePair):
        out = synth_phase_pair(spec.theta, spec.phase, spec.alpha)
    elif isinstance(spec, HardRotation):
        out = synth_hard(spec.theta, spec.phase)
    elif isinstance(spec, JumpReturn):
        out = synth_jump_return(spec.theta, spec.phase)
    elif isinstance(spec, Binomial1331Excite):
        out = synth_binomial_1331(spec.phase)
    elif isinstance(spec, Binomial1331Selective):
        out = synth_binomial_1331_selective(spec.target, spec.phase)
    elif isinstance(spec, CorrectedPulse):
        out = synth_corrected_pulse(spec.theta, spec.phase, f)
    elif isinstance(spec, CorrectedDouble):
        out = synth_corrected_double(spec.theta, spec.phase, f)
    elif isinstance(spec, Corrected180):
        out = synth_corrected_180(spec.phase, f, spec.form)
    elif isinstance(spec, CorrectedSelective90):
        out = synth_corrected_selective_90(spec.target, spec.phase, f)
    else:
        raise TypeError(f"not a gate spec: {spec!r}")
    return PulseSequence(out.instructions, out.name, spec.kind)


def _selective_pair(target: Target, u) -> SpinPairPropagator:
    if target is Target.I:
        return SpinPairPropagator(u, spin.ID2)
    return SpinPairPropagator(spin.ID2, u)


def target_pair(spec: GateSpec) -> Optional[SpinPairPropagator]:
    """Ideal per-spin unitaries the spec asks for, or None for pure excitation."""
    if isinstance(spec, ContraAxial):
        return SpinPairPropagator(spin.rot(spec.theta, spec.phase), spin.rot(-spec.theta, spec.phase))
    if isinstance(spec, Selective):
        return _selective_pair(spec.target, spin.rot(spec.theta, spec.phase))
    if isinstance(spec, PhasePair):
        return SpinPairPropagator(spin.rot(spec.theta, spec.phase),
                                  spin.rot(spec.theta, spec.phase + spec.alpha))
    if isinstance(spec, (HardRotation, CorrectedPulse)):
        u = spin.rot(spec.theta, spec.phase)
        return SpinPairPropagator(u, u)
    if isinstance(spec, JumpReturn):
        return SpinPairPropagator(spin.rot(spec.theta, spec.phase - HALF_PI),
                                  spin.rot(spec.theta, spec.phase + HALF_PI))
    if isinstance(spec, CorrectedDouble):
        u = spin.rot(2 * spec.theta, spec.phase)
        return SpinPairPropagator(u, u)
    if isinstance(spec, Corrected180):
        u = spin.rot(math.pi, spec.phase)
        return SpinPairPropagator(u, u)
    if isinstance(spec, (CorrectedSelective90, Binomial1331Selective)):
        return _selective_pair(spec.target, spin.rot(HALF_PI, spec.phase))
    return None


def target_spin(spec: GateSpec) -> Target:
    return getattr(spec, "target", Target.I)


# --- JSON boundary (degrees) --------------------------------------------------

_DEGREE_FIELDS = {"theta": "theta_deg", "phase": "phase_deg", "alpha": "alpha_deg"}


def gate_from_dict(obj: dict) -> GateSpec:
    """Parse ``{"kind": ..., "theta_deg": ..., ...}``.

    Phases and alpha are reduced modulo 360 degrees; theta must already lie in
    ``[0, 360)``.
    """
    if not isinstance(obj, dict):
        raise SchemaError("gate spec must be a JSON object")
    kind = obj.get("kind")
    cls = GATE_KINDS.get(kind)
    if cls is None:
        raise SchemaError(f"unknown gate kind {kind!r}; expected one of {sorted(GATE_KINDS)}")
    allowed = {"kind"}
    kwargs = {}
    for fld in fields(cls):
        key = _DEGREE_FIELDS.get(fld.name, fld.name)
        allowed.add(key)
        if key not in obj:
            if fld.default is MISSING and fld.default_factory is MISSING:
                raise SchemaError(f"{kind}: missing field {key!r}")
            continue
        value = obj[key]
        if fld.name in _DEGREE_FIELDS or fld.name == "f":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaError(f"{kind}: field {key!r} must be a number")
            value = float(value)
            if fld.name in ("phase", "alpha"):
                value = value % 360.0
            if fld.name != "f":
                value = math.radians(value)
        kwargs[fld.name] = value
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(f"{kind}: unexpected fields {sorted(extra)}")
    try:
        spec = cls(**kwargs)
        validate(spec)
    except ValueError as exc:
        raise SchemaError(f"{kind}: {exc}") from exc
    return spec


def gate_to_dict(spec: GateSpec) -> dict:
    out = {"kind": spec.kind}
    for fld in fields(spec):
        value = getattr(spec, fld.name)
        if fld.name in _DEGREE_FIELDS:
            out[_DEGREE_FIELDS[fld.name]] = math.degrees(value)
        elif isinstance(value, Enum):
            out[fld.name] = value.value
        elif value is not None:
            out[fld.name] = value
    return out


def with_fraction(spec: GateSpec, f: float) -> GateSpec:
    return replace(spec, f=f) if isinstance(spec, CORRECTED) else spec
