"""Acceptance gate.  Each test prints one PASS/FAIL line, then asserts it."""

import math
import time

import numpy as np
import pytest

from jumpreturn import analysis as a
from jumpreturn import compiler as c
from jumpreturn import rewrite as rw
from jumpreturn import spin
from jumpreturn.compiler import OutOfRangeError, Target
from jumpreturn.simulate import Mode, SpinSystem, ideal_pair, simulate
from jumpreturn.spin import pair_distance, phase_distance
from strategies import random_sequence

PI = math.pi
GRID12 = [k * PI / 12 for k in range(24)]
F_SIGNED = [-0.99, -0.9, -0.8, -0.7, -0.6, -0.5, -0.4, -0.3, -0.2, -0.1, 0.0,
            0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99]
F_POS = [f for f in F_SIGNED if f >= 0]


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
        return ok
    return emit


def finite(sequence, f):
    return simulate(rw.normalize(sequence), SpinSystem.from_fraction(f)).pair


def test_criterion_1_offset_sweep(report):
    start = time.perf_counter()
    spec = c.Selective(Target.I, PI / 2, 0.0, c.SelectiveStyle.EXTRA_PULSE)
    grid = a.linear_grid(0.5, 1.5, 101)
    r = a.sweep_g(spec, grid)
    elapsed = time.perf_counter() - start
    g = np.array(grid)
    err_t = np.abs(r.column("fid_vs_target") - np.cos(PI * (1 - g) / 8)).max()
    err_i = np.abs(r.column("fid_vs_identity") - np.cos(PI * (1 + g) / 8)).max()
    ok = err_t < 1e-10 and err_i < 1e-10 and elapsed < 1.0
    report(1, ok, f"max err vs target curve {err_t:.2e}, vs identity curve {err_i:.2e}, "
                  f"{elapsed * 1e3:.0f} ms")
    assert ok


def test_criterion_2_identity_suite(report):
    start = time.perf_counter()
    worst = {}

    def check(name, sequence, target):
        worst[name] = max(worst.get(name, 0.0), pair_distance(ideal_pair(sequence), target))

    for t in GRID12:
        for p in GRID12:
            check("jump_return", c.synth_jump_return(t, p), c.target_pair(c.JumpReturn(t, p)))
            check("contra_axial", c.synth_contra_axial(t, p), c.target_pair(c.ContraAxial(t, p)))
            for tg in Target:
                sel = c.target_pair(c.Selective(tg, t, p))
                check("extra_pulse", c.synth_selective(tg, t, p, "extra_pulse"), sel)
                check("frame_uncommuted", c.synth_selective_uncommuted(tg, t, p), sel)
                check("frame_passed", c.synth_selective(tg, t, p, "frame_rotation"), sel)
            for al in GRID12:
                check("phase_pair", c.synth_phase_pair(t, p, al), c.target_pair(c.PhasePair(t, p, al)))
    elapsed = time.perf_counter() - start
    err = max(worst.values())
    ok = err < 1e-12 and elapsed < 10.0
    report(2, ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f"; {elapsed:.2f} s")
    assert ok


def test_criterion_3_sandwich_exactness(report):
    err = 0.0
    count = 0
    thetas = [t for t in GRID12 if 0 < t < PI]
    for f in F_SIGNED:
        for t in thetas:
            if abs(f) > c.max_fraction(t):
                continue
            for p in GRID12[::4]:
                # propagator algebra at the signed fraction
                s = c.sandwich_angles(t, f)
                u = spin.rot_z(s.phi) @ spin.off_resonance_propagator(f, s.theta_nominal, p) @ spin.rot_z(s.phi)
                err = max(err, phase_distance(u, spin.rot(t, p)))
                # finite-mode simulation: spin I sees +|f|, spin S sees -|f|
                spec = c.CorrectedPulse(t, p, abs(f))
                err = max(err, pair_distance(finite(c.compile_gate(spec), abs(f)), c.target_pair(spec)))
                count += 1
    boundary_ok = True
    for t in thetas:
        edge = c.max_fraction(t)
        for sign in (1, -1):
            c.sandwich_angles(t, sign * (edge - 1e-9))
            try:
                c.sandwich_angles(t, sign * (edge + 1e-9))
                boundary_ok = False
            except OutOfRangeError:
                pass
    ok = err < 1e-12 and boundary_ok
    report(3, ok, f"max err {err:.2e} over {count} (f, theta, phase) points; "
                  f"boundary cot(theta/2) +-1e-9 {'respected' if boundary_ok else 'VIOLATED'}")
    assert ok


def test_criterion_4_corrected_180(report):
    fs = [k / 10 for k in range(11)]
    worst_fid = 0.0
    worst_equiv = 0.0
    for f in fs:
        for p in GRID12[::3]:
            pairs = []
            for form in c.InversionForm:
                spec = c.Corrected180(p, form, f)
                pair = finite(c.compile_gate(spec), f)
                tgt = c.target_pair(spec)
                worst_fid = max(worst_fid, 1 - spin.fidelity(pair.uI, tgt.uI),
                                1 - spin.fidelity(pair.uS, tgt.uS))
                pairs.append(pair)
            worst_equiv = max(worst_equiv, *(pair_distance(q, pairs[0]) for q in pairs[1:]))
    ok = worst_fid < 1e-10 and worst_equiv < 1e-10
    report(4, ok, f"worst 1-fidelity {worst_fid:.2e}, worst cross-form distance {worst_equiv:.2e} "
                  f"(|f| <= 1 via spins I and S)")
    assert ok


def test_criterion_5_corrected_selective(report):
    worst = 0.0
    margin = math.inf
    for f in F_POS:
        for tg in Target:
            spec = c.CorrectedSelective90(tg, 0.0, f)
            tgt = c.target_pair(spec)
            cor = finite(c.compile_gate(spec), f)
            unc = finite(c.compile_gate(c.Selective(tg, PI / 2, 0.0)), f)
            pair_fid = min(spin.fidelity(cor.uI, tgt.uI), spin.fidelity(cor.uS, tgt.uS))
            unc_fid = min(spin.fidelity(unc.uI, tgt.uI), spin.fidelity(unc.uS, tgt.uS))
            worst = max(worst, 1 - pair_fid)
            if f >= 0.1:
                margin = min(margin, pair_fid - unc_fid)
    ok = worst < 1e-10 and margin > 0
    report(5, ok, f"worst 1-pair fidelity {worst:.2e}; corrected beats uncorrected by >= {margin:.3e} "
                  f"for |f| >= 0.1")
    assert ok


def test_criterion_6_rewrite_soundness(report):
    rng = np.random.default_rng(6)
    passes = {
        "merge": rw.merge_delays,
        "commute": rw.commute_frame_rotations_to_end,
        "wrap4tau": lambda s: rw.normalize_negative_delays(s, "wrap4tau"),
        "halfwrap": lambda s: rw.normalize_negative_delays(s, "halfwrap"),
        "normalize_wrap4tau": lambda s: rw.normalize(s, "wrap4tau"),
        "normalize_halfwrap": lambda s: rw.normalize(s, "halfwrap"),
    }
    worst = {k: 0.0 for k in passes}
    physical = True
    for _ in range(1000):
        s = random_sequence(rng)
        ref = ideal_pair(s)
        for name, fn in passes.items():
            out = fn(s)
            worst[name] = max(worst[name], pair_distance(ideal_pair(out), ref))
            if name.startswith("normalize"):
                physical &= out.is_physical and rw.frames_are_terminal(out)
    ok = max(worst.values()) < 1e-12 and physical
    report(6, ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
                  + ("" if physical else "; normalize left negative delays"))
    assert ok


def test_criterion_7_small_fraction(report):
    # Read as the excitation the approximation describes: z magnetization
    # through the finite pulse against ideal pulse plus precession.
    worst_state = 0.0
    worst_prop = 0.0
    z_up = np.array([1.0, 0.0])
    for f in np.linspace(0.0, 0.05, 11):
        system = SpinSystem.from_fraction(f)
        pair = simulate(c.synth_hard(PI / 2, 0.0), system).pair
        a_ = system.delta_omega * (2 / PI) * system.t90 if f > 0 else 0.0
        for u, sign in ((pair.uI, 1), (pair.uS, -1)):
            approx = spin.rot_z(sign * a_) @ spin.rot(PI / 2)
            worst_state = max(worst_state, 1 - abs(np.vdot(approx @ z_up, u @ z_up)) ** 2)
            worst_prop = max(worst_prop, 1 - spin.fidelity(u, approx))
    ok = 1 - worst_state >= 0.9999
    report(7, ok, f"excitation fidelity >= {1 - worst_state:.8f}; "
                  f"(full propagator fidelity >= {1 - worst_prop:.6f}, see README)")
    assert ok


def test_criterion_8_binomial(report):
    grid = [g for g in a.linear_grid(0.9, 1.1, 21) if abs(g - 1) > 1e-12]
    r = a.compare_1331(grid)
    jr, b = r.column("jr_pair"), r.column("b1331_pair")
    jt, bt = r.column("jr_target"), r.column("b1331_target")
    ok = bool(np.all(jr >= b) and np.all(jt >= bt))
    i = int(np.argmin(jr - b))
    report(8, ok, f"JR >= 1-3-3-1 at all {len(grid)} offsets; tightest g={grid[i]:.2f}: "
                  f"JR {jr[i]:.5f} vs 1331 {b[i]:.5f}")
    assert ok


def test_criterion_9_coupled(report):
    dw = 2 * PI * 500
    omega1 = 2 * PI * 5000
    s = rw.normalize(c.compile_gate(c.Selective(Target.I, PI / 2, 0.0, "extra_pulse")))
    finite_pair = simulate(s, SpinSystem(dw, 0.0, omega1, Mode.FINITE)).pair
    free = simulate(s, SpinSystem(dw, 0.0, omega1, Mode.COUPLED)).full
    factor_err = phase_distance(free, finite_pair.full())
    coupled = simulate(s, SpinSystem(dw, 10.0, omega1, Mode.COUPLED)).full
    dev = phase_distance(coupled, free)
    fid = spin.fidelity(coupled, free)
    ok = factor_err < 1e-10 and dev > 1e-6 and fid >= 0.99
    report(9, ok, f"J=0 vs kron(finite) {factor_err:.1e}; J=10 Hz deviation {dev:.3e}, fidelity {fid:.6f}")
    assert ok
