"""Parameter sweeps and the identity-verification suite."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import compiler as c
from . import spin
from .compiler import GateSpec, OutOfRangeError
from .ir import PulseSequence
from .rewrite import normalize
from .simulate import Mode, SpinSystem, ideal_pair, simulate
from .spin import SpinPairPropagator

DEFAULT_DELTA_OMEGA = 2 * math.pi * 500.0
VERIFY_TOL = 1e-10


@dataclass
class SweepReport:
    """Columns of a sweep, first column is the swept parameter."""

    parameter: str
    grid: list
    columns: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")

    def column(self, name: str) -> np.ndarray:
        return np.array([np.nan if v is None else v for v in self.columns[name]], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        names = [self.parameter, *self.columns]
        buf.write(",".join(names) + "\n")
        for i, x in enumerate(self.grid):
            row = [_fmt(x)] + [_fmt(self.columns[n][i]) for n in self.columns]
            buf.write(",".join(row) + "\n")
        return buf.getvalue()


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{float(value):.12g}"


def linear_grid(lo: float, hi: float, steps: int) -> list[float]:
    if steps < 2:
        raise ValueError("a grid needs at least two points")
    return [float(x) for x in np.linspace(lo, hi, steps)]


def physical_sequence(spec: GateSpec, f: Optional[float] = None) -> PulseSequence:
    """Synthesize `spec` and rewrite it into a physical sequence."""
    return normalize(c.compile_gate(spec, f))


def _spin_fidelities(pair: SpinPairPropagator, spec: GateSpec):
    target = c.target_pair(spec)
    if c.target_spin(spec) is c.Target.I:
        mine, other, mine_t, other_t = pair.uI, pair.uS, target.uI, target.uS
    else:
        mine, other, mine_t, other_t = pair.uS, pair.uI, target.uS, target.uI
    return (spin.fidelity(mine, mine_t), spin.fidelity(mine, spin.ID2),
            spin.fidelity(other, other_t))


def reference_curves(spec: GateSpec, g: float) -> tuple[Optional[float], Optional[float]]:
    """Analytic instantaneous-pulse fidelities of a selective rotation at offset ratio `g`.

    The target spin ends up rotated by ``(1 + g) theta / 2``, so against the
    intended rotation the fidelity is ``|cos((1 - g) theta / 4)|`` and against
    the identity ``|cos((1 + g) theta / 4)|``.
    """
    if not isinstance(spec, c.Selective):
        return None, None
    th = spec.theta
    return abs(math.cos((1 - g) * th / 4)), abs(math.cos((1 + g) * th / 4))


def sweep_g(spec: GateSpec, grid: Sequence[float], system: Optional[SpinSystem] = None) -> SweepReport:
    """Fidelities of `spec` as the actual offset deviates from its nominal value."""
    system = system or SpinSystem(DEFAULT_DELTA_OMEGA)
    if c.target_pair(spec) is None:
        raise ValueError(f"{spec.kind} has no target unitary to compare against")
    sequence = physical_sequence(spec, system.f if isinstance(spec, c.CORRECTED) else None)
    cols = {k: [] for k in ("fid_vs_target", "fid_vs_identity", "other_vs_target",
                            "ref_vs_target", "ref_vs_identity")}
    with_ref = system.mode is Mode.INSTANTANEOUS
    for g in grid:
        pair = _pair(simulate(sequence, system, g), system)
        fid_t, fid_id, other = _spin_fidelities(pair, spec)
        ref_t, ref_id = reference_curves(spec, g) if with_ref else (None, None)
        for k, v in zip(cols, (fid_t, fid_id, other, ref_t, ref_id)):
            cols[k].append(v)
    return SweepReport("g", list(grid), cols, {"gate": c.gate_to_dict(spec), "mode": system.mode.value})


def _pair(result, system: SpinSystem) -> SpinPairPropagator:
    if result.pair is not None:
        return result.pair
    raise ValueError("coupled-mode results have no per-spin factorization")


def sweep_f(spec: GateSpec, grid: Sequence[float], delta_omega: float = DEFAULT_DELTA_OMEGA) -> SweepReport:
    """Corrected against uncorrected construction of `spec` over off-resonance fractions.

    Both are simulated with finite pulses at the swept fraction; the corrected
    sequence is compiled for exactly that fraction, the uncorrected one for
    ``f = 0``.  Fractions with no real correction are marked ``out_of_range``.
    """
    if not isinstance(spec, c.CORRECTED):
        raise ValueError(f"{spec.kind} has no off-resonance corrected form")
    target = c.target_pair(spec)
    uncorrected = physical_sequence(spec, 0.0)
    cols = {k: [] for k in ("status", "corrected_I", "corrected_S", "uncorrected_I", "uncorrected_S")}
    for f in grid:
        if f < 0:
            row = ["negative_f", None, None, None, None]
        else:
            system = SpinSystem.from_fraction(f, delta_omega)
            unc = simulate(uncorrected, system).pair
            unc_fids = [spin.fidelity(unc.uI, target.uI), spin.fidelity(unc.uS, target.uS)]
            try:
                cor = simulate(physical_sequence(spec, f), system).pair
                row = ["ok", spin.fidelity(cor.uI, target.uI), spin.fidelity(cor.uS, target.uS)]
            except OutOfRangeError:
                row = ["out_of_range", None, None]
            row += unc_fids
        for k, v in zip(cols, row):
            cols[k].append(v)
    return SweepReport("f", list(grid), cols, {"gate": c.gate_to_dict(spec)})


def compare_1331(grid: Sequence[float], phase: float = 0.0) -> SweepReport:
    """Jump-and-Return against 1-3-3-1 selective 90 degree rotations of spin I."""
    jr_spec = c.Selective(c.Target.I, math.pi / 2, phase, c.SelectiveStyle.EXTRA_PULSE)
    b_spec = c.Binomial1331Selective(c.Target.I, phase)
    jr = c.compile_gate(jr_spec)
    b = c.compile_gate(b_spec)
    cols = {k: [] for k in ("jr_target", "jr_other", "b1331_target", "b1331_other",
                            "jr_pair", "b1331_pair")}
    for g in grid:
        jf = _spin_fidelities(ideal_pair(jr, g), jr_spec)
        bf = _spin_fidelities(ideal_pair(b, g), b_spec)
        for k, v in zip(cols, (jf[0], jf[2], bf[0], bf[2], min(jf[0], jf[2]), min(bf[0], bf[2]))):
            cols[k].append(v)
    binomial_periods = sum(d.angle for d in c.synth_binomial_1331().delays) / 2
    meta = {
        "jr_delay_angle": jr.total_delay_angle,
        "b1331_binomial_delay_angle": binomial_periods,
        "b1331_total_delay_angle": b.total_delay_angle,
    }
    return SweepReport("g", list(grid), cols, meta)


# --- verification suite ---------------------------------------------------------

@dataclass(frozen=True)
class VerificationEntry:
    name: str
    construct: str
    max_error: float
    points: int

    @property
    def passed(self) -> bool:
        return self.max_error < VERIFY_TOL

    def as_dict(self) -> dict:
        return {"name": self.name, "construct": self.construct, "max_error": self.max_error,
                "points": self.points, "passed": self.passed}


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def as_dict(self) -> dict:
        return {"tolerance": VERIFY_TOL, "passed": self.passed,
                "entries": [e.as_dict() for e in self.entries]}

    def lines(self) -> list[str]:
        return [f"{'PASS' if e.passed else 'FAIL'}  {e.name:<32} {e.construct:<44} "
                f"max_err={e.max_error:.3e}  n={e.points}" for e in self.entries]


DEFAULT_F_GRID = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 1.0)


def _finite_pair(sequence: PulseSequence, f: float) -> SpinPairPropagator:
    return simulate(normalize(sequence), SpinSystem.from_fraction(f)).pair


def run_verification(
    angle_steps: int = 24,
    f_values: Sequence[float] = DEFAULT_F_GRID,
    theta_prime_offset: float = 0.0,
) -> VerificationReport:
    """Check every construction against its ideal target over parameter grids.

    Angles run over ``k * 2 pi / angle_steps``.  Corrected constructions are
    simulated with finite pulses at each fraction in `f_values` (non-negative;
    spin S covers the negative fractions).  `theta_prime_offset` perturbs the
    nominal pulse angle of the 90 degree sandwich and exists to show the suite
    detects errors.
    """
    angles = [2 * math.pi * k / angle_steps for k in range(angle_steps)] if angle_steps > 0 else []
    fs = [f for f in f_values if f >= 0]
    entries: list[VerificationEntry] = []

    def add(name: str, construct: str, errors: list[float]) -> None:
        if errors:
            entries.append(VerificationEntry(name, construct, max(errors), len(errors)))

    def ideal_err(sequence, target) -> float:
        return spin.pair_distance(ideal_pair(sequence), target)

    add("jump_return", "90_{phi+180} D(theta) 90_{phi}",
        [ideal_err(c.synth_jump_return(t, p), c.target_pair(c.JumpReturn(t, p)))
         for t in angles for p in angles])
    add("contra_axial", "90_{phi-90} D(theta) 90_{phi+90}",
        [ideal_err(c.synth_contra_axial(t, p), c.target_pair(c.ContraAxial(t, p)))
         for t in angles for p in angles])
    extra = c.SelectiveStyle.EXTRA_PULSE
    add("selective_extra_pulse", "90 D(theta/2) 90 (theta/2)_phi",
        [ideal_err(c.synth_selective(tg, t, p, extra), c.target_pair(c.Selective(tg, t, p, extra)))
         for tg in c.Target for t in angles for p in angles])
    add("selective_frame_uncommuted", "90 D(theta/2) F(theta/2) 90",
        [ideal_err(c.synth_selective_uncommuted(tg, t, p), c.target_pair(c.Selective(tg, t, p)))
         for tg in c.Target for t in angles for p in angles])
    add("selective_frame_rotation", "90_{phi-90} D(theta/2) 90_{phi+90-theta/2} F(theta/2)",
        [ideal_err(c.synth_selective(tg, t, p), c.target_pair(c.Selective(tg, t, p)))
         for tg in c.Target for t in angles for p in angles])
    add("phase_pair", "F(-a/2) D(a/2) theta_phi F(a/2-360) D(360-a/2)",
        [ideal_err(c.synth_phase_pair(t, p, a), c.target_pair(c.PhasePair(t, p, a)))
         for t in angles for p in angles for a in angles])

    # sandwich of a single pulse, exact propagator algebra plus finite simulation
    errs = []
    for f in sorted({*fs, *(-f for f in fs)}):
        if abs(f) > 1:
            continue
        s = c.sandwich_angles_90(f)
        th = s.theta_nominal + theta_prime_offset
        for p in angles:
            u = spin.rot_z(s.phi) @ spin.off_resonance_propagator(f, th, p) @ spin.rot_z(s.phi)
            errs.append(spin.phase_distance(u, spin.rot(math.pi / 2, p)))
    add("sandwich_90", "phi'_z theta'_phi phi'_z", errs)

    errs = []
    thetas = [t for t in angles if 0 < t < math.pi]
    for f in fs:
        for t in thetas:
            if f > c.max_fraction(t):
                continue
            for p in angles[:: max(1, len(angles) // 4)]:
                spec = c.CorrectedPulse(t, p, f)
                errs.append(spin.pair_distance(_finite_pair(c.compile_gate(spec), f), c.target_pair(spec)))
    add("sandwich_general", "phi''_z theta''_phi phi''_z", errs)

    errs = []
    for f in fs:
        for t in thetas:
            if f > c.max_fraction(t):
                continue
            spec = c.CorrectedDouble(t, 0.0, f)
            errs.append(spin.pair_distance(_finite_pair(c.compile_gate(spec), f), c.target_pair(spec)))
    add("corrected_double", "tau'' theta'' (4tau+2tau'') theta'' tau''", errs)

    for form, construct in (
        (c.InversionForm.PLAIN, "theta'_x (4tau+2tau') theta'_x"),
        (c.InversionForm.FRAMEWRAPPED, "theta'_x 90_z (2tau+2tau') 90_z theta'_x"),
        (c.InversionForm.PHASE_TOGGLED, "theta'_-y (2tau+2tau') theta'_y"),
    ):
        errs = []
        for f in fs:
            if f > 1:
                continue
            for p in angles[:: max(1, len(angles) // 4)]:
                spec = c.Corrected180(p, form, f)
                errs.append(spin.pair_distance(_finite_pair(c.compile_gate(spec), f), c.target_pair(spec)))
        add(f"corrected_180_{form.value}", construct, errs)

    errs = []
    for f in fs:
        if f > 1:
            continue
        for tg in c.Target:
            for p in angles[:: max(1, len(angles) // 4)]:
                spec = c.CorrectedSelective90(tg, p, f)
                errs.append(spin.pair_distance(_finite_pair(c.compile_gate(spec), f), c.target_pair(spec)))
    add("corrected_selective_90", "tau' theta'_-y (tau/2+2tau') 45_z theta'_y tau'", errs)

    return VerificationReport(entries)
